//! Factorization over the rationals (Zassenhaus: squarefree decomposition,
//! modular factorization, Hensel lifting, subset recombination) and the
//! cyclotomic helpers built on it.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{divisors, euler_phi, factor_u64, sqrt_ceil};
use crate::error::{Error, Result};
use crate::hensel::{multifactor_lift, ModRing, PolyM};
use crate::modp::{self, primes_from, subset_sums, PolyP, Zp};
use crate::poly::IntPoly;

pub const DEFAULT_DEGREE_CAP: usize = 512;
pub const DEFAULT_SUBSET_CAP: u64 = 1 << 20;
const MAX_PRIMES: usize = 5;
const FIRST_PRIME: u64 = 101;

#[derive(Clone, Copy, Debug)]
pub struct FactorOptions {
    pub degree_cap: usize,
    pub subset_cap: u64,
}

impl Default for FactorOptions {
    fn default() -> Self {
        FactorOptions {
            degree_cap: DEFAULT_DEGREE_CAP,
            subset_cap: DEFAULT_SUBSET_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    pub poly: IntPoly,
    pub multiplicity: usize,
}

/// `unit * content * Π poly^multiplicity`, factors primitive with positive
/// leading coefficient, sorted by degree then coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub unit: i8,
    #[serde(with = "crate::bigstr")]
    pub content: BigInt,
    pub factors: Vec<Factor>,
}

impl Factorization {
    pub fn reconstruct(&self) -> IntPoly {
        let mut acc = IntPoly::constant(&self.content * BigInt::from(self.unit));
        for f in &self.factors {
            acc = &acc * &crate::poly::pow(&f.poly, f.multiplicity);
        }
        acc
    }

    /// Irreducible in `Q[x]`: exactly one factor, multiplicity one.
    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].multiplicity == 1
    }

    /// Irreducible in `Z[x]`: additionally content one.
    pub fn is_irreducible_over_z(&self) -> bool {
        self.is_irreducible() && self.content.is_one()
    }

    pub fn factor_count(&self) -> usize {
        self.factors.iter().map(|f| f.multiplicity).sum()
    }

    /// Renders like `(x + 1)*(x^2 - x - 1)^2`.
    pub fn render(&self) -> String {
        let mut parts = Vec::new();
        let scalar = &self.content * BigInt::from(self.unit);
        if !scalar.is_one() || self.factors.is_empty() {
            parts.push(if scalar == -BigInt::one() && !self.factors.is_empty() {
                "-1".to_string()
            } else {
                scalar.to_string()
            });
        }
        for f in &self.factors {
            let base = format!("({})", f.poly);
            if f.multiplicity == 1 {
                parts.push(base);
            } else {
                parts.push(format!("{base}^{}", f.multiplicity));
            }
        }
        parts.join("*")
    }
}

fn canonical_sort(factors: &mut Vec<Factor>) {
    factors.sort_by(|a, b| a.poly.cmp(&b.poly));
    // Merge equal factors that arrived from different squarefree parts.
    let mut merged: Vec<Factor> = Vec::with_capacity(factors.len());
    for f in factors.drain(..) {
        match merged.last_mut() {
            Some(last) if last.poly == f.poly => last.multiplicity += f.multiplicity,
            _ => merged.push(f),
        }
    }
    *factors = merged;
}

pub fn factor(p: &IntPoly) -> Result<Factorization> {
    factor_with(p, &FactorOptions::default())
}

pub fn factor_with(p: &IntPoly, opts: &FactorOptions) -> Result<Factorization> {
    let deg = p.deg().ok_or(Error::ZeroPolynomial("factor"))?;
    if deg > opts.degree_cap {
        return Err(Error::DegreeCapExceeded {
            degree: deg,
            cap: opts.degree_cap,
        });
    }
    let unit: i8 = if p.lc().is_negative() { -1 } else { 1 };
    let (content, prim) = p.content_and_primitive()?;
    let (k, core) = prim.strip_x_power();
    let mut factors = Vec::new();
    if k > 0 {
        factors.push(Factor {
            poly: IntPoly::x(),
            multiplicity: k,
        });
    }
    if !core.is_constant() {
        for (part, mult) in squarefree_decomposition(&core) {
            for g in factor_squarefree(&part, opts)? {
                factors.push(Factor {
                    poly: g,
                    multiplicity: mult,
                });
            }
        }
    }
    canonical_sort(&mut factors);
    Ok(Factorization {
        unit,
        content,
        factors,
    })
}

pub fn is_irreducible(p: &IntPoly) -> Result<bool> {
    if p.deg().unwrap_or(0) == 0 {
        return Err(Error::ConstantPolynomial("is_irreducible"));
    }
    Ok(factor(p)?.is_irreducible_over_z())
}

/// Squarefree decomposition of a primitive polynomial with positive leading
/// coefficient: pairs `(a_i, i)` with `p = Π a_i^i`, each `a_i` squarefree,
/// primitive, non-constant and pairwise coprime.
pub fn squarefree_decomposition(p: &IntPoly) -> Vec<(IntPoly, usize)> {
    if p.deg0() <= 1 || squarefree_mod_some_prime(p) {
        return vec![(p.clone(), 1)];
    }
    // Yun's algorithm.
    let mut out = Vec::new();
    let dp = p.derivative();
    let a0 = p.gcd(&dp).primitive_part();
    let mut b = p.exact_div(&a0).unwrap().unwrap();
    let c = dp.exact_div(&a0).unwrap().unwrap();
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while !b.is_constant() {
        let a = b.gcd(&d).primitive_part();
        let nb = b.exact_div(&a).unwrap().unwrap();
        let nc = d.exact_div(&a).unwrap().unwrap();
        if !a.is_constant() {
            out.push((a, i));
        }
        d = &nc - &nb.derivative();
        b = nb;
        i += 1;
    }
    out
}

fn squarefree_mod_some_prime(p: &IntPoly) -> bool {
    let lc = p.lc();
    primes_from(FIRST_PRIME)
        .filter(|&q| modp::coprime_to(q, &lc))
        .take(8)
        .any(|q| {
            let zp = Zp::new(q);
            zp.is_squarefree(&zp.reduce(p))
        })
}

struct PrimeData {
    zp: Zp,
    ddf: Vec<(usize, PolyP)>,
    count: usize,
}

/// Factors a squarefree primitive polynomial with positive leading
/// coefficient and nonzero constant term.
fn factor_squarefree(f: &IntPoly, opts: &FactorOptions) -> Result<Vec<IntPoly>> {
    let n = f.deg0();
    if n <= 1 {
        return Ok(vec![f.clone()]);
    }
    let lc = f.lc();
    let mut allowed = vec![true; n + 1];
    let mut data: Vec<PrimeData> = Vec::new();
    for q in primes_from(FIRST_PRIME).take(400) {
        if !modp::coprime_to(q, &lc) {
            continue;
        }
        let zp = Zp::new(q);
        let fp = zp.monic(&zp.reduce(f));
        if !zp.is_squarefree(&fp) {
            continue;
        }
        let parts = modp::ddf(&zp, &fp);
        let degrees = modp::ddf_degrees(&parts);
        let sums = subset_sums(&degrees);
        let before = allowed.clone();
        for (a, s) in allowed.iter_mut().zip(&sums) {
            *a &= *s;
        }
        let stalled = !data.is_empty() && allowed == before;
        let count = degrees.len();
        data.push(PrimeData {
            zp,
            ddf: parts,
            count,
        });
        if count == 1 || (1..n).all(|d| !allowed[d]) {
            return Ok(vec![f.clone()]);
        }
        if data.len() == MAX_PRIMES || stalled {
            break;
        }
    }
    assert!(!data.is_empty(), "no suitable prime for a squarefree polynomial");
    data.sort_by_key(|d| (d.count, d.zp.p));

    // Recombination only ever reconstructs the side of degree <= n/2.
    let bound = {
        let b = (BigInt::one() << (n / 2)) * sqrt_ceil(&f.weight()) * lc.abs();
        b * 2 + 1
    };
    let mut tried_total = 0u64;
    for pd in &data {
        let fp = pd.zp.monic(&pd.zp.reduce(f));
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ pd.zp.p);
        let mut modular = Vec::new();
        for (d, g) in &pd.ddf {
            modular.extend(modp::edf(&pd.zp, g, *d, &mut rng));
        }
        debug_assert_eq!(
            modular.iter().fold(vec![1u64], |acc, g| pd.zp.mul(&acc, g)),
            fp
        );
        let (lifted, modulus) = multifactor_lift(f, &pd.zp, &modular, &bound);
        match recombine(f, &lifted, &modulus, &allowed, opts.subset_cap) {
            Ok(mut facs) => {
                facs.sort();
                return Ok(facs);
            }
            Err(tried) => tried_total += tried,
        }
    }
    Err(Error::RecombinationLimit {
        subsets: tried_total,
        primes: data.len(),
    })
}

/// Zassenhaus subset recombination. On exceeding `cap` subsets returns the
/// number tried as the error.
fn recombine(
    f: &IntPoly,
    lifted: &[PolyM],
    modulus: &BigInt,
    allowed: &[bool],
    cap: u64,
) -> std::result::Result<Vec<IntPoly>, u64> {
    let ring = ModRing::new(modulus.clone());
    let mut remaining: Vec<usize> = (0..lifted.len()).collect();
    let mut cur = f.clone();
    let mut out = Vec::new();
    let mut tried = 0u64;
    let mut s = 1;
    'outer: while 2 * s <= remaining.len() {
        let r = remaining.len();
        let mut idx: Vec<usize> = (0..s).collect();
        loop {
            // When s = r/2 only subsets containing the first index are needed.
            if !(2 * s == r && idx[0] != 0) {
                tried += 1;
                if tried > cap {
                    return Err(tried);
                }
                let deg: usize = idx.iter().map(|&i| lifted[remaining[i]].len() - 1).sum();
                if allowed[deg] {
                    // Work with whichever side of the split has degree <= n/2.
                    let chosen: Vec<usize> = if 2 * deg <= cur.deg0() {
                        idx.iter().map(|&i| remaining[i]).collect()
                    } else {
                        (0..r)
                            .filter(|i| !idx.contains(i))
                            .map(|i| remaining[i])
                            .collect()
                    };
                    let lc = cur.lc();
                    let c0 = chosen
                        .iter()
                        .fold(lc.clone(), |acc, &i| (acc * &lifted[i][0]).mod_floor(modulus));
                    let c0 = ring.symmetric(&c0);
                    let target = &lc * cur.constant_term();
                    if !c0.is_zero() && target.is_multiple_of(&c0) {
                        let prod = chosen
                            .iter()
                            .fold(vec![lc.clone()], |acc, &i| ring.mul(&acc, &lifted[i]));
                        let g = ring.to_symmetric_poly(&prod).primitive_part();
                        if let Ok(Some(q)) = cur.exact_div(&g) {
                            out.push(g);
                            cur = q;
                            remaining.retain(|j| !chosen.contains(j));
                            continue 'outer;
                        }
                    }
                }
            }
            // Next combination in lexicographic order.
            let mut i = s;
            loop {
                if i == 0 {
                    s += 1;
                    continue 'outer;
                }
                i -= 1;
                if idx[i] < r - s + i {
                    idx[i] += 1;
                    for j in i + 1..s {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
    if !cur.is_constant() {
        out.push(cur.primitive_part());
    }
    Ok(out)
}

fn cyclotomic_cache() -> &'static Mutex<HashMap<u64, IntPoly>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, IntPoly>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The `n`-th cyclotomic polynomial.
pub fn cyclotomic(n: u64) -> IntPoly {
    assert!(n >= 1, "cyclotomic index must be positive");
    if let Some(p) = cyclotomic_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    let fac = factor_u64(n);
    let rad: u64 = fac.iter().map(|&(p, _)| p).product();
    let phi = if rad == n {
        // Φ_{n} = (x^n - 1) / Π_{d | n, d < n} Φ_d, computed by exact division.
        let mut q = &IntPoly::monomial(BigInt::one(), n as usize) - &IntPoly::one();
        for d in divisors(n) {
            if d < n {
                q = q.exact_div(&cyclotomic(d)).unwrap().expect("cyclotomic division");
            }
        }
        q
    } else {
        cyclotomic(rad).compose_power((n / rad) as usize)
    };
    cyclotomic_cache().lock().unwrap().insert(n, phi.clone());
    phi
}

/// `Some(n)` iff `p = Φ_n` (up to sign).
pub fn cyclotomic_index(p: &IntPoly) -> Result<Option<u64>> {
    let d = match p.deg() {
        None => return Err(Error::ZeroPolynomial("cyclotomic_index")),
        Some(0) => return Err(Error::ConstantPolynomial("cyclotomic_index")),
        Some(d) => d,
    };
    let p = p.sign_normalized();
    if !p.is_monic() || !p.constant_term().abs().is_one() {
        return Ok(None);
    }
    if d == 1 {
        return Ok(match p.constant_term().to_string().as_str() {
            "-1" => Some(1),
            "1" => Some(2),
            _ => None,
        });
    }
    // Φ_n is palindromic with constant term 1 for n >= 2.
    if !p.constant_term().is_one() || p.reverse()? != p {
        return Ok(None);
    }
    // φ(n) >= sqrt(n/2) bounds the search.
    let limit = 2 * (d as u64) * (d as u64);
    let zq = Zp::new(1_000_003);
    let pq = zq.reduce(&p);
    for n in 3..=limit {
        if euler_phi(n) as usize != d {
            continue;
        }
        if zq.x_pow_mod(n, &pq) != vec![1] {
            continue;
        }
        if cyclotomic(n) == p {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// Perron's criterion: for monic `p` with `p(0) != 0`, irreducibility follows
/// from `|a_{n-1}| > 1 + |a_0| + ... + |a_{n-2}|`. `false` means inconclusive.
pub fn perron_irreducible(p: &IntPoly) -> Result<bool> {
    let n = p.deg().ok_or(Error::ZeroPolynomial("perron_irreducible"))?;
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    if p.constant_term().is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    if n < 2 {
        return Ok(n == 1);
    }
    let rest: BigInt = p.coeffs()[..n - 1].iter().map(|c| c.abs()).sum();
    Ok(p.coeffs()[n - 1].abs() > rest + 1)
}

pub fn is_reciprocal(p: &IntPoly) -> bool {
    match p.reverse() {
        Ok(r) => r == *p || r == -p,
        Err(_) => false,
    }
}

fn split_factors(
    p: &IntPoly,
    name: &'static str,
    mut pred: impl FnMut(&IntPoly) -> Result<bool>,
) -> Result<(IntPoly, IntPoly)> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial(name));
    }
    if p.constant_term().is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let fac = factor(p)?;
    let mut yes = IntPoly::one();
    let mut no = IntPoly::constant(&fac.content * BigInt::from(fac.unit));
    for f in &fac.factors {
        let power = crate::poly::pow(&f.poly, f.multiplicity);
        if pred(&f.poly)? {
            yes = &yes * &power;
        } else {
            no = &no * &power;
        }
    }
    Ok((yes, no))
}

/// `(product of reciprocal irreducible factors, remaining part)`; the two
/// multiply to `p`.
pub fn reciprocal_part(p: &IntPoly) -> Result<(IntPoly, IntPoly)> {
    split_factors(p, "reciprocal_part", |g| Ok(is_reciprocal(g)))
}

/// `(product of cyclotomic irreducible factors, remaining part)`; the two
/// multiply to `p`.
pub fn cyclotomic_part(p: &IntPoly) -> Result<(IntPoly, IntPoly)> {
    split_factors(p, "cyclotomic_part", |g| Ok(cyclotomic_index(g)?.is_some()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::poly;
    use proptest::prelude::*;

    fn facs(f: &Factorization) -> Vec<(IntPoly, usize)> {
        f.factors.iter().map(|x| (x.poly.clone(), x.multiplicity)).collect()
    }

    #[test]
    fn fourteen_four_three() {
        let mut c = vec![0i64; 15];
        c[14] = 1;
        c[1] = 4;
        c[0] = 3;
        let f = factor(&poly(&c)).unwrap();
        assert_eq!(
            facs(&f),
            vec![
                (poly(&[1, 1]), 1),
                (poly(&[1, 0, -1, 1]), 1),
                (poly(&[3, 1, 2, -1, 0, -2, 0, -1, 1, 0, 1]), 1),
            ]
        );
        assert_eq!(f.reconstruct(), poly(&c));
    }

    #[test]
    fn h7_factorization() {
        let mut h = vec![0i64; 36];
        for i in [35, 34, 33, 32, 16, 15, 3, 0] {
            h[i] = 1;
        }
        let f = factor(&poly(&h)).unwrap();
        let mut big = vec![0i64; 35];
        for (i, v) in [(34, 1), (32, 1), (15, 1), (2, 1), (1, -1), (0, 1)] {
            big[i] = v;
        }
        assert_eq!(facs(&f), vec![(poly(&[1, 1]), 1), (poly(&big), 1)]);
    }

    #[test]
    fn repeated_factor() {
        let f = factor(&poly(&[1, 2, 0, 0, 0, -2, 1])).unwrap();
        assert_eq!(facs(&f), vec![(poly(&[-1, -1, 1]), 2), (poly(&[1, 0, 1]), 1)]);
        assert_eq!(f.render(), "(x^2 - x - 1)^2*(x^2 + 1)");
    }

    #[test]
    fn content_sign_and_x_power() {
        let f = factor(&poly(&[0, 0, -6, -6])).unwrap();
        assert_eq!(f.unit, -1);
        assert_eq!(f.content, BigInt::from(6));
        assert_eq!(facs(&f), vec![(poly(&[0, 1]), 2), (poly(&[1, 1]), 1)]);
        assert_eq!(f.reconstruct(), poly(&[0, 0, -6, -6]));
        assert!(factor(&IntPoly::zero()).is_err());
    }

    #[test]
    fn degree_cap() {
        let p = IntPoly::monomial(BigInt::one(), 600);
        assert_eq!(
            factor(&p),
            Err(Error::DegreeCapExceeded { degree: 600, cap: 512 })
        );
    }

    #[test]
    fn irreducibility() {
        assert!(is_irreducible(&poly(&[-1, -1, 0, 1])).unwrap());
        assert!(!is_irreducible(&poly(&[1, 0, -7, 0, 1])).unwrap());
        assert!(!is_irreducible(&poly(&[0, 0, 1])).unwrap());
        assert!(!is_irreducible(&poly(&[2, 4])).unwrap());
        assert!(is_irreducible(&poly(&[5])).is_err());
    }

    #[test]
    fn cyclotomic_values() {
        assert_eq!(cyclotomic(1), poly(&[-1, 1]));
        assert_eq!(cyclotomic(3), poly(&[1, 1, 1]));
        assert_eq!(cyclotomic(12), poly(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic(105).coeff(7), BigInt::from(-2));
        assert_eq!(cyclotomic_index(&poly(&[1, -1, 1])).unwrap(), Some(6));
        assert_eq!(cyclotomic_index(&poly(&[-1, -1, 1])).unwrap(), None);
        assert_eq!(cyclotomic_index(&poly(&[1, 1])).unwrap(), Some(2));
        assert_eq!(cyclotomic_index(&poly(&[1, -1])).unwrap(), Some(1));
    }

    #[test]
    fn cyclotomic_round_trip() {
        for n in 1..=200 {
            assert_eq!(cyclotomic_index(&cyclotomic(n)).unwrap(), Some(n), "n = {n}");
        }
    }

    #[test]
    fn perron_examples() {
        assert!(perron_irreducible(&poly(&[1, 1, 0, 0, 7, 1])).unwrap());
        // x^6 + 3x + 1 reversed: x^6 + 3x^5 + 1
        assert!(perron_irreducible(&poly(&[1, 0, 0, 0, 0, 3, 1])).unwrap());
        assert!(!perron_irreducible(&poly(&[1, 1, 1])).unwrap());
        assert_eq!(perron_irreducible(&poly(&[1, 2])), Err(Error::NotMonic));
    }

    #[test]
    fn parts() {
        let f = poly(&[1, 2, 0, 0, 0, -2, 1]);
        let (rec, non) = reciprocal_part(&f).unwrap();
        assert_eq!(rec, poly(&[1, 0, 1]));
        assert_eq!(non, crate::poly::pow(&poly(&[-1, -1, 1]), 2));
        let (cyc, non) = cyclotomic_part(&f).unwrap();
        assert_eq!(cyc, poly(&[1, 0, 1]));
        assert_eq!(&cyc * &non, f);
        assert_eq!(reciprocal_part(&poly(&[-1, -1, 0, 1])).unwrap(), (IntPoly::one(), poly(&[-1, -1, 0, 1])));
        assert_eq!(reciprocal_part(&poly(&[1, 1, 1])).unwrap(), (poly(&[1, 1, 1]), IntPoly::one()));
        let phi7 = cyclotomic(7);
        assert_eq!(cyclotomic_part(&phi7).unwrap(), (phi7.clone(), IntPoly::one()));
    }

    /// Irreducible factors of degree > 1 have no rational roots.
    fn no_rational_root(g: &IntPoly) -> bool {
        let (lc, c0) = (g.lc().abs(), g.constant_term().abs());
        let ds = |n: &BigInt| crate::arith::divisors_bigint(n).unwrap();
        for num in ds(&c0) {
            for den in ds(&lc) {
                for sign in [1, -1] {
                    // den^deg g(num/den) = Σ a_i num^i den^(deg-i)
                    let numv = &num * BigInt::from(sign);
                    let n = g.deg0();
                    let v: BigInt = g
                        .coeffs()
                        .iter()
                        .enumerate()
                        .map(|(i, a)| a * numv.pow(i as u32) * den.pow((n - i) as u32))
                        .sum();
                    if v.is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn small_irreducible() -> impl Strategy<Value = IntPoly> {
        prop::collection::vec(-4i64..=4, 2..=5).prop_filter_map("irreducible", |v| {
            let p = poly(&v);
            if p.deg0() == 0 || p.constant_term().is_zero() {
                return None;
            }
            let pp = p.primitive_part();
            match is_irreducible(&pp) {
                Ok(true) => Some(pp),
                _ => None,
            }
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]

        #[test]
        fn reconstruction(parts in prop::collection::vec(small_irreducible(), 1..=4), k in prop_oneof![-3i64..=-1, 1i64..=3]) {
            let mut p = IntPoly::constant(BigInt::from(k));
            for q in &parts {
                p = &p * q;
            }
            let f = factor(&p).unwrap();
            prop_assert_eq!(f.reconstruct(), p.clone());
            let mut expected: Vec<IntPoly> = parts.iter().map(|q| q.clone()).collect();
            expected.sort();
            let mut got = Vec::new();
            for x in &f.factors {
                for _ in 0..x.multiplicity {
                    got.push(x.poly.clone());
                }
            }
            prop_assert_eq!(got, expected);
            prop_assert_eq!(f.content, BigInt::from(k.abs()));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn factor_is_multiplicative(a in prop::collection::vec(-5i64..=5, 1..=7), b in prop::collection::vec(-5i64..=5, 1..=7)) {
            let (a, b) = (poly(&a), poly(&b));
            prop_assume!(!a.is_zero() && !b.is_zero());
            let fa = factor(&a).unwrap();
            let fb = factor(&b).unwrap();
            let fab = factor(&(&a * &b)).unwrap();
            let mut merged: Vec<Factor> = fa.factors.iter().chain(&fb.factors).cloned().collect();
            canonical_sort(&mut merged);
            prop_assert_eq!(&fab.factors, &merged);
            prop_assert_eq!(fab.content, &fa.content * &fb.content);
            for x in &fab.factors {
                prop_assert!(factor(&x.poly).unwrap().is_irreducible_over_z());
                if x.poly.deg0() > 1 {
                    prop_assert!(no_rational_root(&x.poly));
                }
            }
        }

        #[test]
        fn perron_implies_irreducible(v in prop::collection::vec(-3i64..=3, 2..=20), lead in 5i64..40) {
            let mut c = v.clone();
            if c[0] == 0 { c[0] = 1; }
            c.push(lead);
            c.push(1);
            let p = poly(&c);
            if perron_irreducible(&p).unwrap() {
                prop_assert!(is_irreducible(&p).unwrap());
            }
        }
    }
}
