//! Quadratic Hensel lifting of a modular factorization `f ≡ Π g_i (mod p)`
//! of an integer polynomial to a factorization modulo `p^(2^k)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::modp::{PolyP, Zp};
use crate::poly::IntPoly;

/// Polynomial arithmetic modulo an integer `m`, coefficients kept in `[0, m)`.
#[derive(Clone, Debug)]
pub struct ModRing {
    pub m: BigInt,
}

pub type PolyM = Vec<BigInt>;

fn trim(v: &mut PolyM) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

impl ModRing {
    pub fn new(m: BigInt) -> Self {
        ModRing { m }
    }

    pub fn reduce(&self, f: &[BigInt]) -> PolyM {
        let mut v: PolyM = f.iter().map(|c| c.mod_floor(&self.m)).collect();
        trim(&mut v);
        v
    }

    pub fn add(&self, a: &PolyM, b: &PolyM) -> PolyM {
        let n = a.len().max(b.len());
        let zero = BigInt::zero();
        let v: PolyM = (0..n)
            .map(|i| a.get(i).unwrap_or(&zero) + b.get(i).unwrap_or(&zero))
            .collect();
        self.reduce(&v)
    }

    pub fn sub(&self, a: &PolyM, b: &PolyM) -> PolyM {
        let n = a.len().max(b.len());
        let zero = BigInt::zero();
        let v: PolyM = (0..n)
            .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
            .collect();
        self.reduce(&v)
    }

    pub fn mul(&self, a: &PolyM, b: &PolyM) -> PolyM {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let prod = &IntPoly::new(a.clone()) * &IntPoly::new(b.clone());
        self.reduce(prod.coeffs())
    }

    /// Division by a monic `b`.
    pub fn divrem_monic(&self, a: &PolyM, b: &PolyM) -> (PolyM, PolyM) {
        debug_assert!(b.last().is_some_and(One::is_one));
        if a.len() < b.len() {
            return (Vec::new(), a.clone());
        }
        let db = b.len() - 1;
        let mut rem = a.clone();
        let mut quot = vec![BigInt::zero(); a.len() - db];
        for k in (0..quot.len()).rev() {
            let t = rem[k + db].mod_floor(&self.m);
            if t.is_zero() {
                continue;
            }
            for (i, bc) in b.iter().enumerate() {
                rem[k + i] -= &t * bc;
            }
            quot[k] = t;
        }
        rem.truncate(db);
        (self.reduce(&quot), self.reduce(&rem))
    }

    /// Symmetric representative in `(-m/2, m/2]`.
    pub fn symmetric(&self, c: &BigInt) -> BigInt {
        let r = c.mod_floor(&self.m);
        if &r + &r > self.m {
            r - &self.m
        } else {
            r
        }
    }

    pub fn to_symmetric_poly(&self, f: &PolyM) -> IntPoly {
        IntPoly::new(f.iter().map(|c| self.symmetric(c)).collect())
    }
}

fn to_big(f: &PolyP) -> PolyM {
    f.iter().map(|&c| BigInt::from(c)).collect()
}

/// One quadratic step: from `f ≡ g h`, `s g + t h ≡ 1 (mod m)` to the same
/// relations modulo `m^2`. `h` is monic; `f` and `g` are monic too here.
fn lift_step(
    ring: &ModRing,
    f: &PolyM,
    g: &PolyM,
    h: &PolyM,
    s: &PolyM,
    t: &PolyM,
) -> (PolyM, PolyM, PolyM, PolyM) {
    let e = ring.sub(&ring.reduce(f), &ring.mul(g, h));
    let (q, r) = ring.divrem_monic(&ring.mul(s, &e), h);
    let g2 = ring.add(&ring.add(g, &ring.mul(t, &e)), &ring.mul(&q, g));
    let h2 = ring.add(h, &r);
    let b = ring.sub(&ring.add(&ring.mul(s, &g2), &ring.mul(t, &h2)), &vec![BigInt::one()]);
    let (c, d) = ring.divrem_monic(&ring.mul(s, &b), &h2);
    let s2 = ring.sub(s, &d);
    let t2 = ring.sub(&ring.sub(t, &ring.mul(t, &b)), &ring.mul(&c, &g2));
    (g2, h2, s2, t2)
}

/// Lifts the monic factorization `f ≡ Π factors (mod p)` to modulus
/// `p^(2^k)`, where `k` is the least exponent with `p^(2^k) >= bound`.
/// `f mod p` must be squarefree with `p` not dividing `lc(f)`; the lifted
/// factors are monic and multiply to `lc(f)^(-1) f` modulo `M`. Returns the
/// lifted factors (reduced into `[0, M)`) and `M`.
pub fn multifactor_lift(
    f: &IntPoly,
    zp: &Zp,
    factors: &[PolyP],
    bound: &BigInt,
) -> (Vec<PolyM>, BigInt) {
    let p = BigInt::from(zp.p);
    let mut modulus = p.clone();
    let mut steps = 0;
    while &modulus < bound {
        modulus = &modulus * &modulus;
        steps += 1;
    }
    let ring = ModRing::new(modulus.clone());
    let lc_inv = mod_inverse(&f.lc(), &modulus);
    let fm = ring.reduce(f.scale(&lc_inv).coeffs());
    let lifted = lift_tree(&fm, zp, factors, steps);
    (lifted, modulus)
}

/// Inverse of `a` modulo `m`; `a` must be a unit.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

fn lift_tree(f: &PolyM, zp: &Zp, factors: &[PolyP], steps: usize) -> Vec<PolyM> {
    if factors.len() == 1 {
        return vec![f.clone()];
    }
    let mid = factors.len() / 2;
    let g0 = factors[..mid].iter().fold(vec![1u64], |acc, g| zp.mul(&acc, g));
    let h0 = factors[mid..].iter().fold(vec![1u64], |acc, g| zp.mul(&acc, g));
    let (one, s0, t0) = zp.ext_gcd(&g0, &h0);
    debug_assert_eq!(one, vec![1]);
    let p = BigInt::from(zp.p);
    let mut m = p;
    let (mut g, mut h, mut s, mut t) = (to_big(&g0), to_big(&h0), to_big(&s0), to_big(&t0));
    for _ in 0..steps {
        m = &m * &m;
        let ring = ModRing::new(m.clone());
        (g, h, s, t) = lift_step(&ring, f, &g, &h, &s, &t);
    }
    let mut out = lift_tree(&g, zp, &factors[..mid], steps);
    out.extend(lift_tree(&h, zp, &factors[mid..], steps));
    out
}
