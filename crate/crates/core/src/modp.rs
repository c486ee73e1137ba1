//! Polynomials over `Z/p` for word-sized primes `p < 2^31`, with
//! distinct-degree and equal-degree factorization.
//!
//! A polynomial is a `Vec<u64>` of reduced coefficients, lowest degree first,
//! without trailing zeros.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::poly::IntPoly;

pub type PolyP = Vec<u64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Zp {
    pub p: u64,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Primes `>= start`, in increasing order.
pub fn primes_from(start: u64) -> impl Iterator<Item = u64> {
    (start..).filter(|&n| is_prime(n))
}

fn trim(v: &mut PolyP) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

impl Zp {
    pub fn new(p: u64) -> Self {
        debug_assert!(p < (1 << 31) && is_prime(p));
        Zp { p }
    }

    pub fn reduce_int(&self, c: &BigInt) -> u64 {
        let r = c.mod_floor(&BigInt::from(self.p));
        r.to_u64().unwrap()
    }

    pub fn reduce(&self, f: &IntPoly) -> PolyP {
        let mut v: PolyP = f.coeffs().iter().map(|c| self.reduce_int(c)).collect();
        trim(&mut v);
        v
    }

    /// Symmetric lift to the integers.
    pub fn lift(&self, f: &PolyP) -> IntPoly {
        let half = self.p / 2;
        IntPoly::new(
            f.iter()
                .map(|&c| {
                    if c > half {
                        BigInt::from(c as i64 - self.p as i64)
                    } else {
                        BigInt::from(c)
                    }
                })
                .collect(),
        )
    }

    #[inline]
    pub fn mulm(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    #[inline]
    pub fn addm(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn subm(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn powm(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mulm(acc, a);
            }
            a = self.mulm(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0);
        self.powm(a, self.p - 2)
    }

    pub fn add(&self, a: &PolyP, b: &PolyP) -> PolyP {
        let n = a.len().max(b.len());
        let mut out: PolyP = (0..n)
            .map(|i| self.addm(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        trim(&mut out);
        out
    }

    pub fn sub(&self, a: &PolyP, b: &PolyP) -> PolyP {
        let n = a.len().max(b.len());
        let mut out: PolyP = (0..n)
            .map(|i| self.subm(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        trim(&mut out);
        out
    }

    pub fn scale(&self, a: &PolyP, k: u64) -> PolyP {
        let mut out: PolyP = a.iter().map(|&c| self.mulm(c, k)).collect();
        trim(&mut out);
        out
    }

    pub fn mul(&self, a: &PolyP, b: &PolyP) -> PolyP {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        // Accumulate in u128 and reduce once per output coefficient.
        let mut acc = vec![0u128; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                acc[i + j] += (x * y) as u128;
            }
        }
        let p = self.p as u128;
        let mut out: PolyP = acc.into_iter().map(|c| (c % p) as u64).collect();
        trim(&mut out);
        out
    }

    pub fn monic(&self, a: &PolyP) -> PolyP {
        match a.last() {
            None => Vec::new(),
            Some(&lc) => self.scale(a, self.inv(lc)),
        }
    }

    /// Division with remainder; `b` must be nonzero.
    pub fn divrem(&self, a: &PolyP, b: &PolyP) -> (PolyP, PolyP) {
        assert!(!b.is_empty(), "division by zero polynomial mod p");
        if a.len() < b.len() {
            return (Vec::new(), a.clone());
        }
        let db = b.len() - 1;
        let inv_lc = self.inv(*b.last().unwrap());
        let mut rem = a.clone();
        let mut quot = vec![0u64; a.len() - db];
        for k in (0..quot.len()).rev() {
            let top = rem[k + db];
            if top == 0 {
                continue;
            }
            let t = self.mulm(top, inv_lc);
            quot[k] = t;
            for (i, &bc) in b.iter().enumerate() {
                rem[k + i] = self.subm(rem[k + i], self.mulm(t, bc));
            }
        }
        rem.truncate(db);
        trim(&mut rem);
        trim(&mut quot);
        (quot, rem)
    }

    pub fn rem(&self, a: &PolyP, b: &PolyP) -> PolyP {
        self.divrem(a, b).1
    }

    /// Monic gcd.
    pub fn gcd(&self, a: &PolyP, b: &PolyP) -> PolyP {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// Returns `(g, s, t)` with `s a + t b = g`, `g` monic.
    pub fn ext_gcd(&self, a: &PolyP, b: &PolyP) -> (PolyP, PolyP, PolyP) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1);
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.last() {
            None => (r0, s0, t0),
            Some(&lc) => {
                let inv = self.inv(lc);
                (self.scale(&r0, inv), self.scale(&s0, inv), self.scale(&t0, inv))
            }
        }
    }

    pub fn derivative(&self, a: &PolyP) -> PolyP {
        let mut out: PolyP = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| self.mulm(c, i as u64 % self.p))
            .collect();
        trim(&mut out);
        out
    }

    pub fn powmod(&self, base: &PolyP, mut e: u64, modulus: &PolyP) -> PolyP {
        let mut acc = self.rem(&vec![1], modulus);
        let mut b = self.rem(base, modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.rem(&self.mul(&acc, &b), modulus);
            }
            e >>= 1;
            if e > 0 {
                b = self.rem(&self.mul(&b, &b), modulus);
            }
        }
        acc
    }

    pub fn is_squarefree(&self, f: &PolyP) -> bool {
        if f.len() <= 2 {
            return true;
        }
        let d = self.derivative(f);
        if d.is_empty() {
            return false;
        }
        self.gcd(f, &d).len() == 1
    }

    /// `x^n mod f`, by repeated squaring.
    pub fn x_pow_mod(&self, n: u64, f: &PolyP) -> PolyP {
        self.powmod(&vec![0, 1], n, f)
    }
}

/// The matrix of the Frobenius map `h -> h^p` on `Z/p[x]/(f)`: row `i` holds
/// `x^{ip} mod f`.
struct Frobenius {
    rows: Vec<PolyP>,
    n: usize,
}

impl Frobenius {
    fn new(zp: &Zp, f: &PolyP) -> Self {
        let n = f.len() - 1;
        let xp = zp.x_pow_mod(zp.p, f);
        let mut rows = Vec::with_capacity(n);
        let mut cur = vec![1u64];
        for _ in 0..n {
            rows.push(cur.clone());
            cur = zp.rem(&zp.mul(&cur, &xp), f);
        }
        Frobenius { rows, n }
    }

    fn apply(&self, zp: &Zp, h: &PolyP) -> PolyP {
        let mut acc = vec![0u128; self.n];
        for (i, &hi) in h.iter().enumerate() {
            if hi == 0 {
                continue;
            }
            for (j, &r) in self.rows[i].iter().enumerate() {
                acc[j] += (hi * r) as u128;
            }
        }
        let p = zp.p as u128;
        let mut out: PolyP = acc.into_iter().map(|c| (c % p) as u64).collect();
        trim(&mut out);
        out
    }
}

/// Distinct-degree factorization of a monic squarefree `f`: pairs
/// `(d, g)` where `g` is the product of all irreducible factors of degree `d`.
pub fn ddf(zp: &Zp, f: &PolyP) -> Vec<(usize, PolyP)> {
    let mut out = Vec::new();
    if f.len() <= 1 {
        return out;
    }
    let frob = Frobenius::new(zp, f);
    let x = vec![0u64, 1];
    let mut cur = f.clone();
    let mut h = zp.rem(&x, f);
    let mut d = 0;
    while cur.len() > 1 {
        d += 1;
        if 2 * d > cur.len() - 1 {
            let deg = cur.len() - 1;
            out.push((deg, cur));
            break;
        }
        h = frob.apply(zp, &h);
        let g = zp.gcd(&zp.sub(&h, &x), &cur);
        if g.len() > 1 {
            cur = zp.divrem(&cur, &g).0;
            h = zp.rem(&h, &cur);
            out.push((d, g));
        }
    }
    out
}

/// Splits a monic squarefree `f`, all of whose irreducible factors have
/// degree `d`, into those factors (Cantor–Zassenhaus). Requires odd `p`.
pub fn edf(zp: &Zp, f: &PolyP, d: usize, rng: &mut ChaCha8Rng) -> Vec<PolyP> {
    let n = f.len() - 1;
    if n == d {
        return vec![f.clone()];
    }
    let frob = Frobenius::new(zp, f);
    loop {
        let a: PolyP = {
            let mut v: PolyP = (0..n).map(|_| rng.gen_range(0..zp.p)).collect();
            trim(&mut v);
            v
        };
        if a.len() <= 1 {
            continue;
        }
        // Norm a * a^p * ... * a^{p^{d-1}} lies in F_p[x]/(g) for each factor g,
        // so raising it to (p-1)/2 gives ±1 on each component.
        let mut norm = a.clone();
        let mut conj = a.clone();
        for _ in 1..d {
            conj = frob.apply(zp, &conj);
            norm = zp.rem(&zp.mul(&norm, &conj), f);
        }
        let b = zp.powmod(&norm, (zp.p - 1) / 2, f);
        let g = zp.gcd(&zp.sub(&b, &vec![1]), f);
        if g.len() > 1 && g.len() < f.len() {
            let h = zp.divrem(f, &g).0;
            let mut out = edf(zp, &g, d, rng);
            out.extend(edf(zp, &zp.monic(&h), d, rng));
            return out;
        }
    }
}

/// Full factorization of a monic squarefree polynomial into monic
/// irreducibles, sorted by (degree, coefficients).
pub fn factor_squarefree(zp: &Zp, f: &PolyP, seed: u64) -> Vec<PolyP> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ zp.p);
    let mut out = Vec::new();
    for (d, g) in ddf(zp, f) {
        out.extend(edf(zp, &g, d, &mut rng));
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.iter().rev().cmp(b.iter().rev())));
    out
}

/// Degrees of the irreducible factors (with repetition) from a DDF result.
pub fn ddf_degrees(parts: &[(usize, PolyP)]) -> Vec<usize> {
    let mut out = Vec::new();
    for (d, g) in parts {
        let count = (g.len() - 1) / d;
        out.extend(std::iter::repeat(*d).take(count));
    }
    out
}

/// Set of attainable subset sums of `degrees`, as a boolean table `0..=total`.
pub fn subset_sums(degrees: &[usize]) -> Vec<bool> {
    let total: usize = degrees.iter().sum();
    let mut ok = vec![false; total + 1];
    ok[0] = true;
    for &d in degrees {
        for s in (d..=total).rev() {
            if ok[s - d] {
                ok[s] = true;
            }
        }
    }
    ok
}

/// Whether `p` does not divide the integer `c`.
pub fn coprime_to(p: u64, c: &BigInt) -> bool {
    !(c.abs() % BigInt::from(p)).is_zero_big()
}

trait IsZeroBig {
    fn is_zero_big(&self) -> bool;
}

impl IsZeroBig for BigInt {
    fn is_zero_big(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::poly;

    #[test]
    fn arithmetic_mod_p() {
        let z = Zp::new(101);
        let a = z.reduce(&poly(&[1, -3, 1]));
        let b = z.reduce(&poly(&[1, 3, 1]));
        assert_eq!(z.lift(&z.mul(&a, &b)), poly(&[1, 0, -7, 0, 1]));
        let (q, r) = z.divrem(&z.mul(&a, &b), &a);
        assert_eq!((q, r), (b.clone(), vec![]));
        let (g, s, t) = z.ext_gcd(&a, &b);
        assert_eq!(g, vec![1]);
        assert_eq!(z.add(&z.mul(&s, &a), &z.mul(&t, &b)), vec![1]);
    }

    #[test]
    fn ddf_and_edf() {
        let z = Zp::new(103);
        // (x^2+1)(x^3-x-1)(x-5) mod 103
        let f = z.reduce(&(&(&poly(&[1, 0, 1]) * &poly(&[-1, -1, 0, 1])) * &poly(&[-5, 1])));
        let parts = ddf(&z, &f);
        let prod = parts.iter().fold(vec![1u64], |acc, (_, g)| z.mul(&acc, g));
        assert_eq!(prod, f);
        let facs = factor_squarefree(&z, &f, 7);
        let prod = facs.iter().fold(vec![1u64], |acc, g| z.mul(&acc, g));
        assert_eq!(prod, f);
        for g in &facs {
            assert_eq!(factor_squarefree(&z, g, 1).len(), 1);
        }
    }

    #[test]
    fn subset_sum_table() {
        let s = subset_sums(&[1, 3, 3]);
        assert_eq!(s, vec![true, true, false, true, true, false, true, true]);
    }

    #[test]
    fn squarefree_detection() {
        let z = Zp::new(101);
        assert!(z.is_squarefree(&z.reduce(&poly(&[-1, 0, 1]))));
        assert!(!z.is_squarefree(&z.reduce(&poly(&[1, 2, 1]))));
    }
}
