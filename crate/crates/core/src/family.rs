//! The family `f_N = x^N c(1/x) + d(x)`: validation, the auxiliary
//! polynomial `r`, the Capellian test, and robustness of the pair `(c, d)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::divisors_bigint;
use crate::error::{Error, Result};
use crate::factor::{factor, Factorization};
use crate::modp::is_prime;
use crate::poly::{pow, IntPoly};

/// A validated pair `(c, d)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapFamily {
    c: IntPoly,
    d: IntPoly,
    c_rev: IntPoly,
    r: IntPoly,
    weight_budget: u64,
    deg_sum: usize,
    /// Integer common divisor of `content(c)` and `content(d)`, if any.
    content_warning: Option<String>,
}

impl GapFamily {
    pub fn new(c: IntPoly, d: IntPoly) -> Result<Self> {
        if c.is_zero() || c.constant_term().is_zero() {
            return Err(Error::FamilyZeroConstant { which: "c" });
        }
        if d.is_zero() || d.constant_term().is_zero() {
            return Err(Error::FamilyZeroConstant { which: "d" });
        }
        if c == d || c == -&d {
            return Err(Error::FamilyReciprocal);
        }
        let c_rev = c.reverse()?;
        let g = c_rev.primitive_part().gcd(&d.primitive_part());
        if !g.is_constant() {
            return Err(Error::FamilyCommonFactor(g.sign_normalized()));
        }
        let common = c.content().gcd(&d.content());
        let content_warning = (!common.is_one()).then(|| common.to_string());
        let budget = c.weight() + d.weight();
        let weight_budget = budget
            .to_u64()
            .filter(|&w| w < 1 << 40)
            .ok_or_else(|| Error::BudgetTooLarge(budget.to_string()))?;
        let r = compute_r(&c, &d);
        debug_assert!(!r.is_zero());
        Ok(GapFamily {
            deg_sum: c.deg0() + d.deg0(),
            c,
            d,
            c_rev,
            r,
            weight_budget,
            content_warning,
        })
    }

    pub fn from_i64s(c: &[i64], d: &[i64]) -> Result<Self> {
        GapFamily::new(IntPoly::from_i64s(c), IntPoly::from_i64s(d))
    }

    pub fn c(&self) -> &IntPoly {
        &self.c
    }

    pub fn d(&self) -> &IntPoly {
        &self.d
    }

    pub fn c_rev(&self) -> &IntPoly {
        &self.c_rev
    }

    pub fn r(&self) -> &IntPoly {
        &self.r
    }

    pub fn cd(&self) -> IntPoly {
        &self.c * &self.d
    }

    /// `‖c‖ + ‖d‖`.
    pub fn budget(&self) -> u64 {
        self.weight_budget
    }

    pub fn deg_c(&self) -> usize {
        self.c.deg0()
    }

    pub fn deg_d(&self) -> usize {
        self.d.deg0()
    }

    pub fn deg_sum(&self) -> usize {
        self.deg_sum
    }

    pub fn content_warning(&self) -> Option<&str> {
        self.content_warning.as_deref()
    }

    /// `x^(N - deg c) reverse(c) + d`, defined for `N > deg c + deg d`.
    pub fn f_n(&self, n: usize) -> Result<IntPoly> {
        if n <= self.deg_sum {
            return Err(Error::ExponentTooSmall { n, min: self.deg_sum + 1 });
        }
        Ok(&self.c_rev.shift(n - self.deg_c()) + &self.d)
    }
}

/// `r` with `x^(deg c) d d~ - x^(deg d) c c~ = x^k r`, `r(0) != 0`,
/// positive leading coefficient.
pub fn compute_r(c: &IntPoly, d: &IntPoly) -> IntPoly {
    let dd = &d.shift(c.deg0()) * &d.reverse().expect("nonzero d");
    let cc = &c.shift(d.deg0()) * &c.reverse().expect("nonzero c");
    let (_, r) = (&dd - &cc).strip_x_power();
    r.sign_normalized()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CapellianWitness {
    /// `-d(x)/c(1/x)` is a `p`-th power.
    Power(u64),
    /// `d(x)/c(1/x)` is four times a fourth power.
    FourTimesFourth,
}

/// `-d(x)/c(1/x) = -x^(deg c) d / c~` as `u * x^(deg c) * Π g^e` with
/// exponents positive for factors of `d` and negative for those of `c~`;
/// `u` as `(numerator, denominator)` with positive denominator.
struct RationalShape {
    num: BigInt,
    den: BigInt,
    exponents: Vec<i64>,
}

fn shape(fam: &GapFamily) -> Result<RationalShape> {
    let fd = factor(fam.d())?;
    let fc = factor(fam.c_rev())?;
    let mut num = -(&fd.content * BigInt::from(fd.unit));
    let mut den = &fc.content * BigInt::from(fc.unit);
    if den.is_negative() {
        num = -num;
        den = -den;
    }
    let g = num.gcd(&den);
    let mut exponents: Vec<i64> = fd.factors.iter().map(|f| f.multiplicity as i64).collect();
    exponents.extend(fc.factors.iter().map(|f| -(f.multiplicity as i64)));
    if fam.deg_c() > 0 {
        exponents.push(fam.deg_c() as i64);
    }
    Ok(RationalShape {
        num: num / &g,
        den: den / &g,
        exponents,
    })
}

fn is_int_power(n: &BigInt, p: u32) -> bool {
    if n.is_negative() {
        return p % 2 == 1 && is_int_power(&-n, p);
    }
    let r = n.nth_root(p);
    r.pow(p) == *n
}

fn is_rational_power(num: &BigInt, den: &BigInt, p: u32) -> bool {
    is_int_power(num, p) && is_int_power(den, p)
}

/// The prime witnessing that `-d(x)/c(1/x)` is a `p`-th power, or the
/// four-times-fourth-power tag; `None` if the pair is not Capellian.
pub fn is_capellian(fam: &GapFamily) -> Result<Option<CapellianWitness>> {
    let s = shape(fam)?;
    let g = s.exponents.iter().fold(0i64, |acc, &e| acc.gcd(&e)).unsigned_abs();
    let candidates: Vec<u64> = if g == 0 {
        // Constant ratio: any prime up to the bit length of the constant.
        let bits = s.num.bits().max(s.den.bits()).max(2);
        (2..=bits).filter(|&p| is_prime(p)).collect()
    } else {
        (2..=g).filter(|&p| is_prime(p) && g % p == 0).collect()
    };
    for p in candidates {
        if is_rational_power(&s.num, &s.den, p as u32) {
            return Ok(Some(CapellianWitness::Power(p)));
        }
    }
    // General rational test: (-num/den)/4 = t^4 for rational t.
    if g % 4 == 0 {
        let n = -&s.num;
        let (qn, qd) = reduce(&n, &(&s.den * 4));
        if qn.is_positive() && is_rational_power(&qn, &qd, 4) {
            return Ok(Some(CapellianWitness::FourTimesFourth));
        }
    }
    Ok(None)
}

fn reduce(n: &BigInt, d: &BigInt) -> (BigInt, BigInt) {
    let g = n.gcd(d);
    (n / &g, d / &g)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationPair {
    pub a: IntPoly,
    pub b: IntPoly,
    #[serde(with = "crate::bigstr")]
    pub weight_sum: BigInt,
}

impl FactorizationPair {
    fn new(a: IntPoly, b: IntPoly) -> Self {
        let weight_sum = a.weight() + b.weight();
        FactorizationPair { a, b, weight_sum }
    }
}

/// Least element of the orbit of `(a, b)` under swapping and global sign.
pub fn canonical_pair(a: &IntPoly, b: &IntPoly) -> (IntPoly, IntPoly) {
    let na = -a;
    let nb = -b;
    [
        (a.clone(), b.clone()),
        (b.clone(), a.clone()),
        (na.clone(), nb.clone()),
        (nb, na),
    ]
    .into_iter()
    .min()
    .expect("nonempty orbit")
}

/// All `(a, b)` with `a b = c d`, one representative per orbit under
/// swapping and global sign, sorted.
pub fn enumerate_factorization_pairs(fam: &GapFamily) -> Result<Vec<FactorizationPair>> {
    let cd = fam.cd();
    let fac = factor(&cd)?;
    pairs_from_factorization(&cd, &fac)
}

fn pairs_from_factorization(cd: &IntPoly, fac: &Factorization) -> Result<Vec<FactorizationPair>> {
    let divisors = divisors_bigint(&fac.content)
        .ok_or_else(|| Error::BudgetTooLarge(fac.content.to_string()))?;
    let unit = BigInt::from(fac.unit);
    // Every split of the factor multiset: a takes e_i' of each g_i^e_i.
    let mut splits: Vec<(IntPoly, IntPoly)> = vec![(IntPoly::one(), IntPoly::one())];
    for f in &fac.factors {
        let mut next = Vec::with_capacity(splits.len() * (f.multiplicity + 1));
        for (a, b) in &splits {
            for k in 0..=f.multiplicity {
                next.push((
                    a * &pow(&f.poly, k),
                    b * &pow(&f.poly, f.multiplicity - k),
                ));
            }
        }
        splits = next;
    }
    let mut out = Vec::new();
    for (pa, pb) in &splits {
        for k in &divisors {
            let rest = &fac.content / k;
            let a = pa.scale(k);
            let b = pb.scale(&(&rest * &unit));
            assert_eq!(&a * &b, *cd, "pair enumeration lost exactness");
            let (a, b) = canonical_pair(&a, &b);
            out.push(FactorizationPair::new(a, b));
            let (a2, b2) = canonical_pair(&-&pa.scale(k), &-&pb.scale(&(&rest * &unit)));
            out.push(FactorizationPair::new(a2, b2));
        }
    }
    out.sort_by(|x, y| (&x.a, &x.b).cmp(&(&y.a, &y.b)));
    out.dedup_by(|x, y| x.a == y.a && x.b == y.b);
    Ok(out)
}

/// `x^(D - deg a) a ã + x^(D - deg b) b b̃`: the coefficient vector of
/// `a(x)a(1/x) + b(x)b(1/x)` centred at `D`.
pub fn autocorrelation(a: &IntPoly, b: &IntPoly, center: usize) -> Result<IntPoly> {
    let one = |p: &IntPoly| -> Result<IntPoly> {
        let k = p.deg0();
        Ok((p * &p.reverse()?).shift(center - k))
    };
    Ok(&one(a)? + &one(b)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Robustness {
    Robust,
    WeaklyRobustOnly { witness: FactorizationPair },
    NotWeaklyRobust { witness: FactorizationPair },
}

impl Robustness {
    pub fn is_robust(&self) -> bool {
        matches!(self, Robustness::Robust)
    }

    pub fn is_weakly_robust(&self) -> bool {
        !matches!(self, Robustness::NotWeaklyRobust { .. })
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RobustnessOptions {
    /// Only count a pair `(a, -a)` of weight `budget - 1` against robustness
    /// when `2 a(x)a(1/x) + 1 = c(x)c(1/x) + d(x)d(1/x)`.
    pub relaxed: bool,
}

pub fn robustness(fam: &GapFamily) -> Result<Robustness> {
    robustness_with(fam, RobustnessOptions::default())
}

pub fn robustness_with(fam: &GapFamily, opts: RobustnessOptions) -> Result<Robustness> {
    let pairs = enumerate_factorization_pairs(fam)?;
    let budget = BigInt::from(fam.budget());
    if let Some(p) = pairs.iter().find(|p| p.weight_sum < &budget - 1) {
        return Ok(Robustness::NotWeaklyRobust { witness: p.clone() });
    }
    let center = pairs
        .iter()
        .map(|p| p.a.deg0().max(p.b.deg0()))
        .max()
        .unwrap_or(0)
        .max(fam.deg_c().max(fam.deg_d()));
    let target = autocorrelation(fam.c(), fam.d(), center)?;
    let trivial = canonical_pair(fam.c(), fam.d());
    for p in &pairs {
        if (p.a.clone(), p.b.clone()) == trivial {
            continue;
        }
        if autocorrelation(&p.a, &p.b, center)? == target {
            return Ok(Robustness::WeaklyRobustOnly { witness: p.clone() });
        }
        if p.weight_sum == &budget - 1 && (&p.a + &p.b).is_zero() {
            let violates = if opts.relaxed {
                let lhs = &autocorrelation(&p.a, &p.a, center)? + &IntPoly::monomial(BigInt::one(), 2 * center);
                lhs == target
            } else {
                true
            };
            if violates {
                return Ok(Robustness::WeaklyRobustOnly { witness: p.clone() });
            }
        }
    }
    Ok(Robustness::Robust)
}

/// Whether some `a b = c d` has `‖a‖ + ‖b‖ < ‖c‖ + ‖d‖`; for weakly robust
/// pairs this means weight exactly `budget - 1`.
pub fn has_weight_deficient_factorization(fam: &GapFamily) -> Result<bool> {
    let budget = BigInt::from(fam.budget());
    Ok(enumerate_factorization_pairs(fam)?
        .iter()
        .any(|p| p.weight_sum < budget))
}
