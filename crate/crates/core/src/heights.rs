//! Mahler measure by simultaneous root iteration, and the height-based
//! thresholds attached to a family: N₁, the divisor exponent bound, the
//! non-cyclotomic factor count, and the comparison bounds.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factor::{is_reciprocal, squarefree_decomposition};
use crate::poly::IntPoly;

/// Lehmer's constant: the real root > 1 of Lehmer's degree-10 polynomial.
pub const THETA: f64 = 1.176_280_818_259_917;
/// Smyth's constant: the real root of `x^3 - x - 1`.
pub const THETA0: f64 = 1.324_717_957_244_746;

const ITERATION_CAP: usize = 500;

/// Residuals of the stored constants in their minimal polynomials.
pub fn constant_residuals() -> (f64, f64) {
    let lehmer = [1.0, 1.0, 0.0, -1.0, -1.0, -1.0, -1.0, -1.0, 0.0, 1.0, 1.0];
    let r1 = lehmer.iter().rev().fold(0.0, |acc, &a| acc * THETA + a);
    let r2 = THETA0 * THETA0 * THETA0 - THETA0 - 1.0;
    (r1.abs(), r2.abs())
}

fn check_constants() {
    use std::sync::Once;
    static CHECK: Once = Once::new();
    CHECK.call_once(|| {
        let (r1, r2) = constant_residuals();
        assert!(r1 < 1e-12 && r2 < 1e-12, "stored height constants are corrupt");
    });
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MahlerResult {
    pub measure: f64,
    pub certified_radius: f64,
    pub roots_outside_unit_circle: usize,
}

impl MahlerResult {
    /// Certified lower end of the measure interval.
    pub fn lower(&self) -> f64 {
        self.measure - self.certified_radius
    }

    pub fn upper(&self) -> f64 {
        self.measure + self.certified_radius
    }
}

struct Roots {
    roots: Vec<Complex64>,
    radii: Vec<f64>,
}

/// `p(z)` and `p'(z)` by Horner, with a running bound on rounding error.
fn horner(a: &[f64], z: Complex64) -> (Complex64, Complex64, f64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    let mut err = 0.0;
    let r = z.norm();
    for &c in a.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
        err = err * r + p.norm();
    }
    (p, dp, err * 4.0 * f64::EPSILON)
}

/// Newton correction `p(z)/p'(z)`, evaluated on the reversed polynomial when
/// `|z| > 1` to keep the powers bounded.
fn newton_ratio(a: &[f64], rev: &[f64], z: Complex64) -> Complex64 {
    let n = (a.len() - 1) as f64;
    if z.norm() <= 1.0 {
        let (p, dp, _) = horner(a, z);
        p / dp
    } else {
        let y = z.inv();
        let (q, dq, _) = horner(rev, y);
        // p(z) = z^n q(y), p'(z) = z^(n-1) (n q(y) - y q'(y))
        z * q / (q * n - y * dq)
    }
}

/// All complex roots of a squarefree polynomial with simple roots, with a
/// per-root inclusion radius.
fn aberth(p: &IntPoly, tol: f64) -> Result<Roots> {
    let n = p.deg0();
    let a = p.to_f64s();
    let rev: Vec<f64> = a.iter().rev().copied().collect();
    if n == 1 {
        let z = Complex64::new(-a[0] / a[1], 0.0);
        let rad = z.norm() * 4.0 * f64::EPSILON;
        return Ok(Roots { roots: vec![z], radii: vec![rad] });
    }
    let lead = a[n].abs();
    let cauchy = 1.0 + a[..n].iter().map(|c| c.abs() / lead).fold(0.0, f64::max);
    // Start inside the Cauchy disk at the geometric-mean root modulus; the
    // iteration is insensitive to the radius but converges faster near it.
    let gm = (a[0].abs() / lead).powf(1.0 / n as f64).clamp(1e-3, cauchy);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
            Complex64::from_polar(gm, t)
        })
        .collect();
    let mut converged = false;
    for _ in 0..ITERATION_CAP {
        let mut max_corr: f64 = 0.0;
        for k in 0..n {
            let w = newton_ratio(&a, &rev, z[k]);
            let s: Complex64 = (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let corr = w / (Complex64::one() - w * s);
            if corr.is_finite() {
                z[k] -= corr;
                max_corr = max_corr.max(corr.norm() / z[k].norm().max(1.0));
            }
        }
        if max_corr < tol {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence { iterations: ITERATION_CAP, degree: n });
    }
    // Two polishing Newton steps, then inclusion radii n |p(z)| / |p'(z)|.
    for zk in z.iter_mut() {
        for _ in 0..2 {
            let w = newton_ratio(&a, &rev, *zk);
            if w.is_finite() {
                *zk -= w;
            }
        }
    }
    let nf = n as f64;
    let radii = z
        .iter()
        .map(|&zk| {
            let (val, dval, err) = if zk.norm() <= 1.0 {
                horner(&a, zk)
            } else {
                // Scale both by |z|^-n and |z|^-(n-1); the ratio is what matters.
                let y = zk.inv();
                let (q, dq, err) = horner(&rev, y);
                (q, (q * nf - y * dq) * y, err)
            };
            let d = dval.norm();
            if d == 0.0 || !d.is_finite() {
                f64::INFINITY
            } else {
                nf * (val.norm() + err) / d
            }
        })
        .collect();
    Ok(Roots { roots: z, radii })
}

/// Mahler measure `|lc| Π max(1, |α|)` with a conservative error radius.
pub fn mahler_measure(p: &IntPoly, tol: f64) -> Result<MahlerResult> {
    check_constants();
    if p.is_zero() {
        return Err(Error::ZeroPolynomial("mahler_measure"));
    }
    let tol = tol.clamp(1e-15, 1e-3);
    let (_, q) = p.strip_x_power();
    let (content, q) = q.content_and_primitive()?;
    let mut log_m = content.to_f64().unwrap_or(f64::INFINITY).ln();
    let mut log_lo = log_m;
    let mut log_hi = log_m;
    let mut outside = 0;
    for (g, mult) in squarefree_decomposition(&q) {
        if g.is_constant() {
            continue;
        }
        let k = mult as f64;
        let lc = g.lc().abs().to_f64().unwrap_or(f64::INFINITY).ln();
        log_m += k * lc;
        log_lo += k * lc;
        log_hi += k * lc;
        let roots = aberth(&g, tol)?;
        for (z, r) in roots.roots.iter().zip(&roots.radii) {
            let m = z.norm();
            if m > 1.0 {
                outside += mult;
            }
            log_m += k * m.max(1.0).ln();
            log_lo += k * (m - r).max(1.0).ln();
            log_hi += k * (m + r).max(1.0).ln();
        }
    }
    let measure = log_m.exp();
    let radius = (log_hi.exp() - measure).max(measure - log_lo.exp());
    Ok(MahlerResult {
        measure,
        certified_radius: radius.max(measure * 4.0 * f64::EPSILON),
        roots_outside_unit_circle: outside,
    })
}

fn budget(c: &IntPoly, d: &IntPoly) -> f64 {
    (c.weight() + d.weight()).to_f64().unwrap_or(f64::INFINITY)
}

/// Threshold beyond which every reciprocal factor of `f_N` is cyclotomic.
pub fn n1_bound(c: &IntPoly, d: &IntPoly) -> f64 {
    check_constants();
    let m = c.deg0().max(d.deg0()) as f64;
    let base = (c.deg0() + d.deg0()) as f64;
    let lw = budget(c, d).ln();
    if m <= 27.0 {
        base + 2.0 * m / THETA.ln() * lw
    } else {
        base + m * (6.0 * m).ln().powi(3) * lw
    }
}

/// Largest `N` for which the irreducible non-cyclotomic `p` can divide
/// `f_N`, from a certified lower bound on `M(p)`.
pub fn divisor_exponent_bound(p: &IntPoly, c: &IntPoly, d: &IntPoly) -> Result<f64> {
    let mr = mahler_measure(p, 1e-12)?;
    let lo = mr.lower();
    if lo <= 1.0 {
        return Err(Error::CannotCertifyNonCyclotomic(p.clone()));
    }
    let base = (c.deg0() + d.deg0()) as f64;
    Ok(base + p.deg0() as f64 / lo.ln() * budget(c, d).ln())
}

/// The same bound with `M(p)` replaced by the unconditional lower bounds
/// (Smyth for non-reciprocal `p`, Lehmer up to degree 54, Voutier beyond).
pub fn divisor_exponent_bound_unconditional(p: &IntPoly, c: &IntPoly, d: &IntPoly) -> f64 {
    let base = (c.deg0() + d.deg0()) as f64;
    let n = p.deg0() as f64;
    let lw = budget(c, d).ln();
    if !is_reciprocal(p) {
        base + n / THETA0.ln() * lw
    } else if p.deg0() <= 54 {
        base + n / THETA.ln() * lw
    } else {
        base + 0.5 * n * (3.0 * n).ln().powi(3) * lw
    }
}

/// Upper bound on the number of non-cyclotomic irreducible factors of
/// `f_N` for large `N`: the largest `n >= 1` with `θ₀^(2n) <= ‖c‖ + ‖d‖`.
pub fn factor_count_bound(c: &IntPoly, d: &IntPoly) -> u64 {
    check_constants();
    let w = budget(c, d);
    let mut n = 1u64;
    while THETA0.powi(2 * (n as i32 + 1)) <= w {
        n += 1;
    }
    n
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundSet {
    pub n1: f64,
    #[serde(with = "crate::bigstr")]
    pub n_main: BigInt,
    #[serde(with = "crate::bigstr")]
    pub n_ffk: BigInt,
    /// Natural log of the Schinzel bound; `None` once it overflows a double.
    pub n_schinzel_log: Option<f64>,
    /// `log2` of `n_schinzel_log`, always finite.
    pub n_schinzel_log2_log: f64,
    pub factor_count_bound: u64,
}

/// `(1 + deg c + deg d) 2^(‖c‖+‖d‖)`.
pub fn main_bound(c: &IntPoly, d: &IntPoly) -> Result<BigInt> {
    let w = (c.weight() + d.weight())
        .to_usize()
        .ok_or_else(|| Error::BudgetTooLarge((c.weight() + d.weight()).to_string()))?;
    Ok(BigInt::from(1 + c.deg0() + d.deg0()) << w)
}

pub fn ffk_bound(c: &IntPoly, d: &IntPoly) -> Result<BigInt> {
    let wt = c.weight() + d.weight();
    let w = (&wt + c.term_count() + d.term_count())
        .to_u32()
        .ok_or_else(|| Error::BudgetTooLarge(wt.to_string()))?;
    let m = BigInt::from(c.deg0().max(d.deg0()));
    let five = BigInt::from(5);
    let first: BigInt = five.pow(4 * w - 15) * 2;
    // 2 m (5^(2w-8) + 1/4), floored
    let second = &m * five.pow(2 * w - 8) * 2 + m.div_floor(&BigInt::from(2));
    Ok(BigInt::from(c.deg0()) + first.max(second))
}

pub fn comparison_bounds(c: &IntPoly, d: &IntPoly) -> Result<BoundSet> {
    let w = budget(c, d);
    let loglog2 = w * w + (5.0f64 / 16.0).log2();
    let log = if loglog2 < 1000.0 {
        Some(5.0 / 16.0 * (w * w).exp2())
    } else {
        None
    };
    Ok(BoundSet {
        n1: n1_bound(c, d),
        n_main: main_bound(c, d)?,
        n_ffk: ffk_bound(c, d)?,
        n_schinzel_log: log,
        n_schinzel_log2_log: loglog2,
        factor_count_bound: factor_count_bound(c, d),
    })
}

/// `⌈x⌉` as an integer, saturating.
pub fn ceil_to_u64(x: f64) -> u64 {
    if x.is_finite() && x > 0.0 {
        x.ceil().min(u64::MAX as f64) as u64
    } else if x > 0.0 {
        u64::MAX
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::cyclotomic;
    use crate::poly::poly;

    fn lehmer() -> IntPoly {
        poly(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])
    }

    #[test]
    fn constants_self_check() {
        let (a, b) = constant_residuals();
        assert!(a < 1e-12 && b < 1e-12);
    }

    #[test]
    fn known_measures() {
        let m = mahler_measure(&lehmer(), 1e-12).unwrap();
        assert!((m.measure - 1.17628).abs() < 1e-4);
        assert!((m.measure - THETA).abs() < 1e-10);
        assert_eq!(m.roots_outside_unit_circle, 1);
        let m = mahler_measure(&poly(&[-1, -1, 0, 1]), 1e-12).unwrap();
        assert!((m.measure - THETA0).abs() < 1e-10);
        let m = mahler_measure(&poly(&[-2, 1]), 1e-12).unwrap();
        assert!((m.measure - 2.0).abs() < 1e-12);
        let m = mahler_measure(&poly(&[6]), 1e-12).unwrap();
        assert!((m.measure - 6.0).abs() < 1e-12);
        // repeated roots and an x-power
        let p = &(&poly(&[-1, -1, 0, 1]) * &poly(&[-1, -1, 0, 1])) * &poly(&[0, 0, 3]);
        let m = mahler_measure(&p, 1e-12).unwrap();
        assert!((m.measure - 3.0 * THETA0 * THETA0).abs() < 1e-9);
    }

    #[test]
    fn cyclotomic_measure_is_one() {
        for n in 1..=100 {
            let m = mahler_measure(&cyclotomic(n), 1e-14).unwrap();
            assert!((m.measure - 1.0).abs() < 1e-8, "n={n}: {}", m.measure);
            assert!(m.lower() <= 1.0);
        }
    }

    #[test]
    fn n1_values() {
        let v = n1_bound(&poly(&[1]), &poly(&[1, 1]));
        assert!((v - 14.5327).abs() < 1e-3, "{v}");
        let v = n1_bound(&poly(&[1]), &poly(&[1, 0, -7]));
        assert!((v - (2.0 + 4.0 / THETA.ln() * 51f64.ln())).abs() < 1e-9);
        let mut d = vec![0i64; 31];
        d[0] = 1;
        d[30] = 1;
        let v = n1_bound(&poly(&[1]), &poly(&d));
        let want = 30.0 + 30.0 * 180f64.ln().powi(3) * 3f64.ln();
        assert!((v - want).abs() < 1e-6);
    }

    #[test]
    fn divisor_bounds() {
        let c = poly(&[1]);
        let d = poly(&[1, 0, -7]);
        let v = divisor_exponent_bound(&poly(&[-2, 1]), &c, &d).unwrap();
        assert!((v - (2.0 + 51f64.ln() / 2f64.ln())).abs() < 1e-9);
        assert!(matches!(
            divisor_exponent_bound(&cyclotomic(5), &c, &d),
            Err(Error::CannotCertifyNonCyclotomic(_))
        ));
        let v = divisor_exponent_bound(&poly(&[-1, -1, 0, 1]), &c, &poly(&[-1, 2, 0, 1]));
        let want = 3.0 + 3.0 * 7f64.ln() / THETA0.ln();
        assert!((v.unwrap() - want).abs() < 1e-8);
        let u = divisor_exponent_bound_unconditional(&poly(&[-1, -1, 0, 1]), &c, &poly(&[-1, 2, 0, 1]));
        assert!((u - want).abs() < 1e-8);
    }

    #[test]
    fn factor_counts() {
        let one = poly(&[1]);
        assert_eq!(factor_count_bound(&one, &poly(&[1, 1])), 1);
        assert_eq!(factor_count_bound(&one, &poly(&[1, 0, -7])), 6);
        assert_eq!(factor_count_bound(&one, &poly(&[1])), 1);
    }

    #[test]
    fn comparison_values() {
        let one = poly(&[1]);
        let b = comparison_bounds(&one, &poly(&[1, 0, -7])).unwrap();
        assert_eq!(b.n_main, BigInt::from(3) << 51);
        let b = comparison_bounds(&one, &poly(&[1, 1])).unwrap();
        assert_eq!(b.n_main, BigInt::from(16));
        assert_eq!(b.n_ffk, BigInt::from(5).pow(9) * 2);
        assert!((b.n_schinzel_log.unwrap() - 5.0 / 16.0 * 512.0).abs() < 1e-9);
        let b = comparison_bounds(&one, &poly(&[1, 0, -7])).unwrap();
        assert!(b.n_schinzel_log.is_none());
        assert!(b.n1 >= 2.0);
    }

    #[test]
    fn invariances() {
        let p = poly(&[3, -1, 4, 1, -5, 9, 2]);
        let q = poly(&[-2, 7, 1, 8]);
        let mp = mahler_measure(&p, 1e-12).unwrap();
        let mq = mahler_measure(&q, 1e-12).unwrap();
        let mpq = mahler_measure(&(&p * &q), 1e-12).unwrap();
        assert!((mpq.measure - mp.measure * mq.measure).abs() < 1e-8 * mpq.measure);
        let mr = mahler_measure(&p.reverse().unwrap(), 1e-12).unwrap();
        assert!((mr.measure - mp.measure).abs() < 1e-9 * mp.measure);
        let w = p.weight().to_f64().unwrap();
        assert!(mp.measure <= w.sqrt() + 1e-9);
    }
}
