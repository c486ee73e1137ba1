//! Small integer helpers: trial-division factorization, divisors, totient.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Prime factorization of `n > 0` as `(prime, exponent)` pairs.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    factor_u64(n)
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

pub fn mobius(n: u64) -> i32 {
    let f = factor_u64(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Positive divisors of `n > 0`, increasing.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factor_u64(n) {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Prime factorization of a nonzero big integer's absolute value by trial
/// division. Intended for the small contents met in practice; returns `None`
/// if a cofactor above `2^64` survives trial division up to `limit`.
pub fn factor_bigint(n: &BigInt, limit: u64) -> Option<Vec<(BigInt, u32)>> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return None;
    }
    let mut d = 2u64;
    while d <= limit {
        let bd = BigInt::from(d);
        if &bd * &bd > n {
            break;
        }
        if n.is_multiple_of(&bd) {
            let mut e = 0;
            while n.is_multiple_of(&bd) {
                n /= &bd;
                e += 1;
            }
            out.push((bd, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n.is_one() {
        return Some(out);
    }
    let bd = BigInt::from(d);
    if &bd * &bd > n {
        out.push((n, 1));
        return Some(out);
    }
    match n.to_u64() {
        Some(small) => {
            for (p, e) in factor_u64(small) {
                out.push((BigInt::from(p), e));
            }
            Some(out)
        }
        None => None,
    }
}

/// Positive divisors of a nonzero big integer, increasing.
pub fn divisors_bigint(n: &BigInt) -> Option<Vec<BigInt>> {
    let fac = factor_bigint(n, 1 << 20)?;
    let mut out = vec![BigInt::one()];
    for (p, e) in fac {
        let len = out.len();
        let mut pk = BigInt::one();
        for _ in 0..e {
            pk *= &p;
            for i in 0..len {
                let v = &out[i] * &pk;
                out.push(v);
            }
        }
    }
    out.sort();
    Some(out)
}

/// Integer square root rounded up.
pub fn sqrt_ceil(n: &BigInt) -> BigInt {
    let r = n.sqrt();
    if &r * &r == *n {
        r
    } else {
        r + 1
    }
}
