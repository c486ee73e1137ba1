//! Dense univariate polynomials over the integers.
//!
//! Coefficient `i` of the backing vector is the coefficient of `x^i`; the
//! vector never ends in a zero, so the zero polynomial is the empty vector.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Below this length schoolbook multiplication is used.
const KARATSUBA_CUTOFF: usize = 33;

/// Degree of a polynomial; the zero polynomial has degree `NegInfinity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<String>", try_from = "Vec<String>")]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn x() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn coeff_ref(&self, i: usize) -> Option<&BigInt> {
        self.coeffs.get(i)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    /// Degree as a number, `None` for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0; for callers that have
    /// already excluded zero.
    pub fn deg0(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    /// Splits off the largest power of `x` dividing `self`: returns `(k, q)`
    /// with `self = x^k q` and `q(0) != 0` (or `q = 0`).
    pub fn strip_x_power(&self) -> (usize, Self) {
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if k == self.coeffs.len() {
            return (0, Self::zero());
        }
        (
            k,
            IntPoly {
                coeffs: self.coeffs[k..].to_vec(),
            },
        )
    }

    /// `x^{deg p} p(1/x)`.
    pub fn reverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("reverse"));
        }
        Ok(Self::new(self.coeffs.iter().rev().cloned().collect()))
    }

    /// Sum of squared coefficients.
    pub fn weight(&self) -> BigInt {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    /// Sum of absolute values of the coefficients.
    pub fn sum_abs_coeffs(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    /// Remainder on division by `x^m`.
    pub fn truncate(&self, m: usize) -> Self {
        Self::new(self.coeffs.iter().take(m).cloned().collect())
    }

    /// Number of nonzero coefficients.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// `p(x^n)`.
    pub fn compose_power(&self, n: usize) -> Self {
        assert!(n >= 1);
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); (self.coeffs.len() - 1) * n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * n] = c.clone();
        }
        IntPoly { coeffs }
    }

    /// `p(-x)`.
    pub fn negate_variable(&self) -> Self {
        IntPoly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    /// Horner evaluation in double precision complex arithmetic.
    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| {
            acc * z + Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0)
        })
    }

    pub fn to_f64s(&self) -> Vec<f64> {
        self.coeffs
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect()
    }

    /// Coefficients as `i64`, if they all fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(ToPrimitive::to_i64).collect()
    }

    /// Euclidean division over the integers.
    ///
    /// When `lc(q) = ±1` this is ordinary division with remainder. Otherwise
    /// division proceeds as long as each quotient coefficient is integral; the
    /// returned remainder is zero iff `q` divides `self` in `Z[x]`, and a
    /// nonzero remainder is a witness of non-divisibility.
    pub fn divrem(&self, q: &IntPoly) -> Result<(IntPoly, IntPoly)> {
        let dq = q.deg().ok_or(Error::DivisionByZero)?;
        let lq = q.coeffs.last().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dq {
            return Ok((IntPoly::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dq];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dq];
            if top.is_zero() {
                continue;
            }
            let (t, r) = top.div_rem(lq);
            if !r.is_zero() {
                // Stop early: the remaining dividend witnesses non-divisibility.
                let rest = IntPoly::new(rem);
                return Ok((IntPoly::new(quot), rest));
            }
            for (i, qc) in q.coeffs.iter().enumerate() {
                rem[k + i] -= &t * qc;
            }
            quot[k] = t;
        }
        Ok((IntPoly::new(quot), IntPoly::new(rem)))
    }

    /// Exact quotient `self / q` if `q` divides `self` in `Z[x]`.
    pub fn exact_div(&self, q: &IntPoly) -> Result<Option<IntPoly>> {
        if q.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Some(IntPoly::zero()));
        }
        if self.coeffs.len() < q.coeffs.len() {
            return Ok(None);
        }
        // Cheap necessary conditions before the full division.
        let (k, q_stripped) = q.strip_x_power();
        let (j, _) = self.strip_x_power();
        if j < k {
            return Ok(None);
        }
        if j == k && !self.coeffs[j].is_multiple_of(&q_stripped.coeffs[0]) {
            return Ok(None);
        }
        if !self.lc().is_multiple_of(&q.lc()) {
            return Ok(None);
        }
        let (quot, rem) = self.divrem(q)?;
        Ok(if rem.is_zero() { Some(quot) } else { None })
    }

    /// Divides every coefficient by `k`, which must divide them exactly.
    pub fn div_scalar_exact(&self, k: &BigInt) -> IntPoly {
        IntPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| {
                    debug_assert!(c.is_multiple_of(k));
                    c / k
                })
                .collect(),
        }
    }

    /// Non-negative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// `(content, primitive part)` with the primitive part having positive
    /// leading coefficient.
    pub fn content_and_primitive(&self) -> Result<(BigInt, IntPoly)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("content_and_primitive"));
        }
        let mut g = self.content();
        if self.lc().is_negative() {
            g = -g;
        }
        let pp = self.div_scalar_exact(&g);
        Ok((g.abs(), pp))
    }

    /// Primitive part with positive leading coefficient (zero stays zero).
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        self.content_and_primitive().unwrap().1
    }

    /// `self` or `-self`, whichever has positive leading coefficient.
    pub fn sign_normalized(&self) -> IntPoly {
        if self.lc().is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Pseudo-remainder `lc(q)^(deg p - deg q + 1) p mod q`.
    pub fn pseudo_rem(&self, q: &IntPoly) -> IntPoly {
        let dq = q.deg().expect("pseudo_rem by zero");
        let lq = q.lc();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dq {
            return self.clone();
        }
        let steps = rem.len() - dq;
        let mut applied = 0usize;
        for k in (0..steps).rev() {
            let top = rem[k + dq].clone();
            for c in rem.iter_mut().take(k + dq + 1) {
                *c *= &lq;
            }
            applied += 1;
            if !top.is_zero() {
                for (i, qc) in q.coeffs.iter().enumerate() {
                    rem[k + i] -= &top * qc;
                }
            }
            rem.truncate(k + dq);
        }
        debug_assert_eq!(applied, steps);
        IntPoly::new(rem)
    }

    /// Greatest common divisor in `Z[x]`: gcd of contents times the primitive
    /// gcd, with positive leading coefficient. Uses the subresultant PRS.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.sign_normalized();
        }
        if other.is_zero() {
            return self.sign_normalized();
        }
        let (ca, mut a) = self.content_and_primitive().unwrap();
        let (cb, mut b) = other.content_and_primitive().unwrap();
        let content = ca.gcd(&cb);
        if a.deg0() < b.deg0() {
            std::mem::swap(&mut a, &mut b);
        }
        if b.is_constant() {
            return IntPoly::constant(content);
        }
        let mut g = BigInt::one();
        let mut h = BigInt::one();
        loop {
            let delta = a.deg0() - b.deg0();
            let r = a.pseudo_rem(&b);
            if r.is_zero() {
                break;
            }
            if r.is_constant() {
                return IntPoly::constant(content);
            }
            a = b;
            let denom = &g * num_traits::pow(h.clone(), delta);
            b = r.div_scalar_exact(&denom);
            g = a.lc();
            h = if delta == 0 {
                h
            } else {
                let num = num_traits::pow(g.clone(), delta);
                let den = num_traits::pow(h.clone(), delta - 1);
                num / den
            };
        }
        b.primitive_part().scale(&content)
    }

    /// Renders with the variable name `x`, highest power first
    /// (`-7*x^2 + 1`).
    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{mag}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl From<IntPoly> for Vec<String> {
    fn from(p: IntPoly) -> Self {
        p.coeffs.iter().map(ToString::to_string).collect()
    }
}

impl TryFrom<Vec<String>> for IntPoly {
    type Error = String;

    fn try_from(v: Vec<String>) -> std::result::Result<Self, Self::Error> {
        v.iter()
            .map(|s| s.parse::<BigInt>().map_err(|e| format!("bad coefficient {s:?}: {e}")))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(IntPoly::new)
    }
}

/// Canonical order: by degree, then lexicographically on the coefficients
/// from the leading one down.
impl Ord for IntPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for IntPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn add_slices(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o += s;
    }
    out
}

fn schoolbook(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn mul_slices(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if a.len().min(b.len()) < KARATSUBA_CUTOFF {
        return schoolbook(a, b);
    }
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let half = long.len().div_ceil(2);
    if short.len() <= half {
        // Unbalanced: multiply the long operand chunkwise.
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (ci, chunk) in long.chunks(short.len()).enumerate() {
            let part = mul_slices(chunk, short);
            let off = ci * short.len();
            for (i, c) in part.into_iter().enumerate() {
                out[off + i] += c;
            }
        }
        return out;
    }
    let (a0, a1) = long.split_at(half);
    let (b0, b1) = short.split_at(half);
    let z0 = mul_slices(a0, b0);
    let z2 = mul_slices(a1, b1);
    let z1 = mul_slices(&add_slices(a0, a1), &add_slices(b0, b1));
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, c) in z0.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in z2.iter().enumerate() {
        out[i + 2 * half] += c;
    }
    for (i, c) in z1.into_iter().enumerate() {
        let mid = c - z0.get(i).cloned().unwrap_or_default() - z2.get(i).cloned().unwrap_or_default();
        out[i + half] += mid;
    }
    out
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        IntPoly::new(add_slices(&self.coeffs, &rhs.coeffs))
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = self.coeffs.clone();
        out.resize(n, BigInt::zero());
        for (o, r) in out.iter_mut().zip(&rhs.coeffs) {
            *o -= r;
        }
        IntPoly::new(out)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        IntPoly::new(mul_slices(&self.coeffs, &rhs.coeffs))
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: &IntPoly) -> IntPoly {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

impl std::iter::Product for IntPoly {
    fn product<I: Iterator<Item = IntPoly>>(iter: I) -> IntPoly {
        iter.fold(IntPoly::one(), |acc, p| &acc * &p)
    }
}

impl<'a> std::iter::Product<&'a IntPoly> for IntPoly {
    fn product<I: Iterator<Item = &'a IntPoly>>(iter: I) -> IntPoly {
        iter.fold(IntPoly::one(), |acc, p| &acc * p)
    }
}

/// `p^e` by repeated squaring.
pub fn pow(p: &IntPoly, mut e: usize) -> IntPoly {
    let mut base = p.clone();
    let mut acc = IntPoly::one();
    while e > 0 {
        if e & 1 == 1 {
            acc = &acc * &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    acc
}

/// Shorthand for building test and fixture polynomials.
pub fn poly(coeffs: &[i64]) -> IntPoly {
    IntPoly::from_i64s(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn add_normalizes() {
        assert_eq!(&p(&[1, 1]) + &p(&[1, -1]), p(&[2]));
        assert_eq!(&p(&[3, 4]) + &IntPoly::zero(), p(&[3, 4]));
        assert_eq!(&p(&[0, 0, 1]) + &p(&[0, 1, -1]), p(&[0, 1]));
        assert_eq!(p(&[0, 1]).degree(), Degree::Finite(1));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&p(&[1, -3, 1]) * &p(&[1, 3, 1]), p(&[1, 0, -7, 0, 1]));
        assert_eq!(&p(&[5, 0, 2]) * &IntPoly::one(), p(&[5, 0, 2]));
        assert_eq!(&p(&[1, -1]) * &p(&[1, 1, 1]), p(&[1, 0, 0, -1]));
    }

    #[test]
    fn karatsuba_matches_schoolbook() {
        let a: Vec<BigInt> = (0..97).map(|i| BigInt::from((i * 37 % 23) as i64 - 11)).collect();
        let b: Vec<BigInt> = (0..61).map(|i| BigInt::from((i * 13 % 17) as i64 - 8)).collect();
        assert_eq!(mul_slices(&a, &b), schoolbook(&a, &b));
        assert_eq!(mul_slices(&b, &a[..40]), schoolbook(&b, &a[..40]));
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(p(&[1, 0, -7]).reverse().unwrap(), p(&[-7, 0, 1]));
        assert_eq!(p(&[1, 1, 1]).reverse().unwrap(), p(&[1, 1, 1]));
        // x^3 - x - 1 -> -x^3 - x^2 + 1
        let q = p(&[-1, -1, 0, 1]);
        let r = q.reverse().unwrap();
        assert_eq!(r, p(&[1, 0, -1, -1]));
        // rev(q)(2) = 2^3 q(1/2)
        assert_eq!(r.eval(&BigInt::from(2)) * 1, BigInt::from(-11));
        // q(1/2) = 1/8 - 1/2 - 1 = -11/8
        assert!(IntPoly::zero().reverse().is_err());
    }

    #[test]
    fn weight_and_abs_sum() {
        for (e1, e2) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            let f = &IntPoly::monomial(BigInt::one(), 17) + &p(&[e2, e1]);
            assert_eq!(f.weight(), BigInt::from(3));
            assert_eq!(f.sum_abs_coeffs(), BigInt::from(3));
        }
        assert_eq!(p(&[1, 0, -7]).weight(), BigInt::from(50));
        assert_eq!(p(&[1, 0, -7]).sum_abs_coeffs(), BigInt::from(8));
        assert_eq!(IntPoly::zero().weight(), BigInt::zero());
        assert_eq!(IntPoly::zero().sum_abs_coeffs(), BigInt::zero());
    }

    #[test]
    fn truncate_examples() {
        let q = p(&[1, 2, 0, 5]);
        assert_eq!(q.truncate(2), p(&[1, 2]));
        assert_eq!(q.truncate(0), IntPoly::zero());
        assert_eq!(q.truncate(4), q);
    }

    #[test]
    fn divrem_examples() {
        let (q, r) = p(&[1, 0, 0, -1]).divrem(&p(&[1, 1, 1])).unwrap();
        assert_eq!((q, r), (p(&[1, -1]), IntPoly::zero()));
        let (q, r) = p(&[1, 0, -7, 0, 1]).divrem(&p(&[1, -3, 1])).unwrap();
        assert_eq!((q, r), (p(&[1, 3, 1]), IntPoly::zero()));
        let (_, r) = p(&[0, 0, 1]).divrem(&p(&[1, 1])).unwrap();
        assert!(!r.is_zero());
        // non-monic divisor that does not divide over Z
        let (_, r) = p(&[1, 0, 1]).divrem(&p(&[1, 2])).unwrap();
        assert!(!r.is_zero());
        assert_eq!(p(&[1]).divrem(&IntPoly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn content_examples() {
        assert_eq!(p(&[12]).content_and_primitive().unwrap(), (BigInt::from(12), p(&[1])));
        assert_eq!(p(&[4, 2]).content_and_primitive().unwrap(), (BigInt::from(2), p(&[2, 1])));
        assert_eq!(
            p(&[7, 0, -49, 0, 7]).content_and_primitive().unwrap(),
            (BigInt::from(7), p(&[1, 0, -7, 0, 1]))
        );
        assert_eq!(p(&[-4, -2]).content_and_primitive().unwrap(), (BigInt::from(2), p(&[2, 1])));
        assert!(IntPoly::zero().content_and_primitive().is_err());
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[-1, 0, 0, 1])), p(&[-1, 1]));
        let f = p(&[3, -1, 0, 2]);
        assert_eq!(f.gcd(&f), f);
        assert_eq!((-&f).gcd(&f), f);
        assert_eq!(p(&[1, 0, -7, 0, 1]).gcd(&p(&[1, -3, 1])), p(&[1, -3, 1]));
        assert_eq!(p(&[6, 12]).gcd(&p(&[4, 8])), p(&[2, 4]));
        assert_eq!(p(&[1, 1]).gcd(&p(&[1, -1])), IntPoly::one());
    }

    #[test]
    fn eval_complex_examples() {
        let i = Complex64::new(0.0, 1.0);
        assert!(p(&[1, 0, 1]).eval_complex(i).norm() < 1e-15);
        assert_eq!(p(&[5, 3]).eval_complex(Complex64::new(0.0, 0.0)), Complex64::new(5.0, 0.0));
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!(p(&[-1, -1, 1]).eval_complex(Complex64::new(phi, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, 0, -7]).to_string(), "-7*x^2 + 1");
        assert_eq!(p(&[3, 4, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]).to_string(), "x^14 + 4*x + 3");
        assert_eq!(p(&[0, -1]).to_string(), "-x");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }

    #[test]
    fn canonical_order() {
        let mut v = vec![p(&[1, 1, 1]), p(&[0, 1]), p(&[-1, 1]), p(&[1, -1, 1])];
        v.sort();
        assert_eq!(v, vec![p(&[-1, 1]), p(&[0, 1]), p(&[1, -1, 1]), p(&[1, 1, 1])]);
    }

    fn arb_poly(max_len: usize, bound: i64) -> impl Strategy<Value = IntPoly> {
        prop::collection::vec(-bound..=bound, 0..=max_len).prop_map(|v| IntPoly::from_i64s(&v))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]

        #[test]
        fn ring_axioms(a in arb_poly(33, 1_000_000), b in arb_poly(33, 1_000_000), c in arb_poly(33, 1_000_000)) {
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn evaluation_homomorphism(a in arb_poly(33, 1_000_000), b in arb_poly(33, 1_000_000), t in -1000i64..1000) {
            let t = BigInt::from(t);
            prop_assert_eq!((&a * &b).eval(&t), a.eval(&t) * b.eval(&t));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2_000))]

        #[test]
        fn reverse_is_multiplicative(a in arb_poly(12, 50), b in arb_poly(12, 50)) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            prop_assume!(!a.constant_term().is_zero() && !b.constant_term().is_zero());
            let lhs = (&a * &b).reverse().unwrap();
            let rhs = &a.reverse().unwrap() * &b.reverse().unwrap();
            prop_assert!(lhs == rhs || lhs == -&rhs);
            if a.constant_term().is_positive() && b.constant_term().is_positive() {
                prop_assert_eq!(lhs, rhs);
            }
            prop_assert_eq!(a.reverse().unwrap().weight(), a.weight());
        }

        #[test]
        fn weight_is_central_autocorrelation(a in arb_poly(16, 100)) {
            prop_assume!(!a.is_zero());
            // x^d a(x) a(1/x) = a(x) * rev(a) with d = deg a
            let prod = &a * &a.reverse().unwrap();
            prop_assert_eq!(prod.coeff(a.deg0()), a.weight());
        }

        #[test]
        fn gcd_divides_inputs(a in arb_poly(8, 20), b in arb_poly(8, 20), g in arb_poly(4, 5)) {
            let pa = &a * &g;
            let pb = &b * &g;
            prop_assume!(!pa.is_zero() || !pb.is_zero());
            let d = pa.gcd(&pb);
            prop_assert!(pa.exact_div(&d).unwrap().is_some());
            prop_assert!(pb.exact_div(&d).unwrap().is_some());
            if !g.is_zero() && !pa.is_zero() && !pb.is_zero() {
                prop_assert!(d.exact_div(&g.primitive_part()).unwrap().is_some());
            }
        }
    }
}
