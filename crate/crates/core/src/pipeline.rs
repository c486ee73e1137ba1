//! The decision procedure for a family: cyclotomic progressions from `r`,
//! exclusion of the other factors of `r`, the thresholds, the sweep over
//! small `N`, and a brute-force cross-check.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factor::{cyclotomic, cyclotomic_index, factor, is_reciprocal, Factorization};
use crate::family::{has_weight_deficient_factorization, is_capellian, robustness, CapellianWitness, GapFamily, Robustness};
use crate::heights::{
    ceil_to_u64, comparison_bounds, divisor_exponent_bound, divisor_exponent_bound_unconditional, n1_bound, BoundSet,
};
use crate::modp::{primes_from, Zp};
use crate::poly::IntPoly;
use crate::search::{compute_m0, n0_formula, SearchLimits, Strategy};

/// Cyclotomic `Φ_n` dividing `f_N` exactly for `N` in the listed classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProgressionFactor {
    pub n: u64,
    pub residues: Vec<u64>,
    pub poly: IntPoly,
    /// `(N, multiplicity of Φ_n in f_N)` at the checked representatives.
    pub multiplicity_note: Vec<(usize, usize)>,
    /// The single `N` (if any) where `Φ_n^2 | f_N`.
    pub double_root_at: Option<usize>,
}

impl ProgressionFactor {
    pub fn active(&self, n: usize) -> bool {
        self.residues.contains(&(n as u64 % self.n))
    }
}

/// `x^e c~ + d (mod Φ_n)` for `e = N - deg c`, as a reduced remainder.
fn residue_poly(fam: &GapFamily, phi: &IntPoly, e: usize) -> Result<IntPoly> {
    let x_e = IntPoly::monomial(BigInt::one(), e);
    let (_, r) = (&(&x_e * fam.c_rev()) + fam.d()).divrem(phi)?;
    Ok(r)
}

fn multiplicity(f: &IntPoly, g: &IntPoly) -> Result<usize> {
    let mut k = 0;
    let mut cur = f.clone();
    while let Some(q) = cur.exact_div(g)? {
        k += 1;
        cur = q;
    }
    Ok(k)
}

/// The one exponent `e` (if any) with `Φ_n | f'_N` given `Φ_n | f_N` and
/// `e ≡ rho (mod n)`: writing `x^e ≡ x^rho`, `f'_N ≡ e U + V` with
/// `U = x^(rho-1) c~` and `V = x^rho c~' + d'`.
fn double_root_exponent(fam: &GapFamily, phi: &IntPoly, n: u64, rho: u64) -> Result<Option<usize>> {
    let rho_m1 = (rho + n - 1) % n;
    let u = (&IntPoly::monomial(BigInt::one(), rho_m1 as usize) * fam.c_rev()).divrem(phi)?.1;
    let v = (&(&IntPoly::monomial(BigInt::one(), rho as usize) * &fam.c_rev().derivative()) + &fam.d().derivative())
        .divrem(phi)?
        .1;
    if u.is_zero() {
        return Ok(None);
    }
    let j = u.coeffs().iter().position(|c| !c.is_zero()).expect("nonzero");
    let num = -v.coeff(j);
    let den = u.coeff(j);
    if !(&num % &den).is_zero() {
        return Ok(None);
    }
    let e = &num / &den;
    if e.is_negative() || &u.scale(&e) + &v != IntPoly::zero() {
        return Ok(None);
    }
    let Some(e) = e.to_usize() else { return Ok(None) };
    Ok(((e as u64) % n == rho % n).then_some(e))
}

pub fn cyclotomic_progressions(fam: &GapFamily) -> Result<Vec<ProgressionFactor>> {
    let fr = factor(fam.r())?;
    let deg_c = fam.deg_c() as u64;
    let first = fam.deg_sum() + 1;
    let mut out = Vec::new();
    for f in &fr.factors {
        let Some(n) = cyclotomic_index(&f.poly)? else { continue };
        let phi = cyclotomic(n);
        let mut residues = Vec::new();
        for rho in 0..n {
            let e = ((rho + n - deg_c % n) % n) as usize;
            if residue_poly(fam, &phi, e)?.is_zero() {
                residues.push(rho);
            }
        }
        if residues.is_empty() {
            continue;
        }
        let mut note = Vec::new();
        let mut double_root_at = None;
        for &rho in &residues {
            let rep = first + ((rho + n - first as u64 % n) % n) as usize;
            for k in 0..3 {
                let big_n = rep + k * n as usize;
                let m = multiplicity(&fam.f_n(big_n)?, &phi)?;
                assert!(m >= 1, "progression representative N = {big_n} lost Φ_{n}");
                note.push((big_n, m));
            }
            let e_rho = (rho + n - deg_c % n) % n;
            if let Some(e) = double_root_exponent(fam, &phi, n, e_rho)? {
                let big_n = e + fam.deg_c();
                if big_n > fam.deg_sum() {
                    double_root_at = Some(big_n);
                }
            }
        }
        out.push(ProgressionFactor {
            n,
            residues,
            poly: phi,
            multiplicity_note: note,
            double_root_at,
        });
    }
    out.sort_by_key(|p| p.n);
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WindowSource {
    /// From a certified numerical lower bound on `M(p)`.
    MahlerMeasure,
    /// From the unconditional lower bounds on `M(p)`.
    Unconditional,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Exclusion {
    pub factor: IntPoly,
    pub reciprocal: bool,
    /// Every `N` with `p | f_N` satisfies `N <= window`.
    pub window: usize,
    pub source: WindowSource,
    /// The `N` in `(deg c + deg d, window]` with `p | f_N`.
    pub hits: Vec<usize>,
}

/// A word-sized prime modulo which `p` keeps its degree and is squarefree.
fn test_prime(p: &IntPoly) -> Zp {
    for q in primes_from((1 << 31) - 10_000) {
        let zq = Zp::new(q);
        let pq = zq.reduce(p);
        if pq.len() == p.deg0() + 1 && zq.is_squarefree(&pq) {
            return zq;
        }
    }
    unreachable!("infinitely many good primes")
}

/// All `N` in `(lo, hi]` with `p | f_N`: a running `x^(N - deg c) mod (p, q)`
/// flags candidates, which are then confirmed exactly.
fn divisibility_hits(fam: &GapFamily, p: &IntPoly, lo: usize, hi: usize) -> Result<Vec<usize>> {
    if hi <= lo {
        return Ok(Vec::new());
    }
    let zq = test_prime(p);
    let pq = zq.reduce(p);
    let cq = zq.reduce(fam.c_rev());
    let dq = zq.rem(&zq.reduce(fam.d()), &pq);
    let x = zq.rem(&vec![0, 1], &pq);
    let mut xe = zq.x_pow_mod((lo + 1 - fam.deg_c()) as u64, &pq);
    let mut hits = Vec::new();
    for n in lo + 1..=hi {
        let val = zq.add(&zq.rem(&zq.mul(&xe, &cq), &pq), &dq);
        if zq.rem(&val, &pq).is_empty() && fam.f_n(n)?.exact_div(p)?.is_some() {
            hits.push(n);
        }
        xe = zq.rem(&zq.mul(&xe, &x), &pq);
    }
    Ok(hits)
}

/// For each non-cyclotomic irreducible factor `p` of `r`: a window outside
/// of which `p ∤ f_N`, and the `N` inside it where `p | f_N`.
pub fn exclude_noncyclotomic_r_factors(fam: &GapFamily) -> Result<Vec<Exclusion>> {
    let fr = factor(fam.r())?;
    let n1 = ceil_to_u64(n1_bound(fam.c(), fam.d()));
    let mut out = Vec::new();
    for f in &fr.factors {
        let p = &f.poly;
        if cyclotomic_index(p)?.is_some() {
            continue;
        }
        let reciprocal = is_reciprocal(p);
        let (bound, source) = match divisor_exponent_bound(p, fam.c(), fam.d()) {
            Ok(b) => (b, WindowSource::MahlerMeasure),
            Err(Error::CannotCertifyNonCyclotomic(_) | Error::NoConvergence { .. }) => (
                divisor_exponent_bound_unconditional(p, fam.c(), fam.d()),
                WindowSource::Unconditional,
            ),
            Err(e) => return Err(e),
        };
        let mut window = bound.floor().max(0.0).min(u64::MAX as f64) as u64;
        if reciprocal {
            window = window.min(n1);
        }
        let window = usize::try_from(window).map_err(|_| Error::ResourceLimit {
            reason: format!("divisor window for {p} too large"),
            lower_bound: 0,
        })?;
        let hits = divisibility_hits(fam, p, fam.deg_sum(), window)?;
        out.push(Exclusion {
            factor: p.clone(),
            reciprocal,
            window,
            source,
            hits,
        });
    }
    Ok(out)
}

/// Factorizations of `f_N` for every `N` in `ns`, in parallel, keyed by `N`.
pub fn sweep(fam: &GapFamily, ns: &[usize]) -> Result<BTreeMap<usize, Factorization>> {
    ns.par_iter()
        .map(|&n| {
            let f = fam.f_n(n)?;
            factor(&f).map(|fac| (n, fac)).map_err(|e| e.at("small-N sweep"))
        })
        .collect()
}

/// `small_n_sweep(fam, horizon)`: every `N` in `(deg c + deg d, horizon]`.
pub fn small_n_sweep(fam: &GapFamily, horizon: usize) -> Result<BTreeMap<usize, Factorization>> {
    let ns: Vec<usize> = (fam.deg_sum() + 1..=horizon).collect();
    sweep(fam, &ns)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Robust, non-Capellian: the rule holds for every `N` past the sweep.
    Certified,
    /// Only bounds are available past the sweep horizon.
    BoundsOnly { reason: String },
}

#[derive(Clone, Debug)]
pub struct AnalyzeOptions {
    /// Sweep horizon when the family cannot be certified.
    pub horizon: usize,
    /// Upper limit on the exhaustive part of the sweep below `⌈N₁⌉`; beyond
    /// it, reciprocal factors are handled by the exclusion windows.
    pub full_sweep_cap: usize,
    pub strategy: Strategy,
    pub limits: SearchLimits,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            horizon: 60,
            full_sweep_cap: 160,
            strategy: Strategy::BestFirst,
            limits: SearchLimits::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyEcho {
    pub c: IntPoly,
    pub d: IntPoly,
    pub r: IntPoly,
    pub weight_budget: u64,
    pub deg_sum: usize,
    pub content_warning: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdicts {
    pub robustness: Robustness,
    pub capellian: Option<CapellianWitness>,
    pub weight_deficient_factorization: Option<bool>,
    pub mode: Mode,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub family: FamilyEcho,
    pub verdicts: Verdicts,
    pub m0: Option<usize>,
    pub n0: Option<usize>,
    pub n1: f64,
    pub n1_ceil: u64,
    pub bounds: BoundSet,
    pub progressions: Vec<ProgressionFactor>,
    pub exclusions: Vec<Exclusion>,
    /// Every `N` in `(deg_sum, sweep_horizon]` was factored.
    pub sweep_horizon: usize,
    /// Extra `N` beyond the horizon that were factored (double roots,
    /// divisibility hits).
    pub extra_checked: Vec<usize>,
    /// The factored `N` whose factorization does not follow the rule.
    pub exceptional: BTreeMap<usize, Factorization>,
    /// Certified range of the rule: every `N > rule_certified_from` not in
    /// `exceptional`. `None` in bounds-only mode.
    pub rule_certified_from: Option<usize>,
    pub rule: String,
}

/// Whether `fac` is `Π_{active} Φ_n` (each once) times a unit or one
/// irreducible non-reciprocal factor.
pub fn follows_rule(n: usize, fac: &Factorization, progressions: &[ProgressionFactor]) -> bool {
    if !fac.content.is_one() {
        return false;
    }
    let mut expected: BTreeSet<u64> = progressions.iter().filter(|p| p.active(n)).map(|p| p.n).collect();
    let mut others = 0;
    for f in &fac.factors {
        match cyclotomic_index(&f.poly) {
            Ok(Some(k)) => {
                if f.multiplicity != 1 || !expected.remove(&k) {
                    return false;
                }
            }
            Ok(None) => {
                if f.multiplicity != 1 || is_reciprocal(&f.poly) {
                    return false;
                }
                others += 1;
            }
            Err(_) => return false,
        }
    }
    expected.is_empty() && others <= 1
}

fn rule_text(progressions: &[ProgressionFactor]) -> String {
    if progressions.is_empty() {
        return "f_N is irreducible".to_string();
    }
    let parts: Vec<String> = progressions
        .iter()
        .map(|p| {
            let rs: Vec<String> = p.residues.iter().map(|r| r.to_string()).collect();
            format!("Phi_{} if N = {} (mod {})", p.n, rs.join(","), p.n)
        })
        .collect();
    format!(
        "f_N = (product of {}) times an irreducible non-reciprocal factor",
        parts.join("; ")
    )
}

pub fn analyze(fam: &GapFamily, opts: &AnalyzeOptions) -> Result<FamilyReport> {
    let rob = robustness(fam).map_err(|e| e.at("robustness"))?;
    let cap = is_capellian(fam).map_err(|e| e.at("capellian"))?;
    let bounds = comparison_bounds(fam.c(), fam.d()).map_err(|e| e.at("bounds"))?;
    let n1 = n1_bound(fam.c(), fam.d());
    let n1_ceil = ceil_to_u64(n1);
    let mode = match (&rob, &cap) {
        _ if fam.content_warning().is_some() => Mode::BoundsOnly {
            reason: "c and d share an integer factor".to_string(),
        },
        (_, Some(CapellianWitness::Power(p))) => Mode::BoundsOnly {
            reason: format!("Capellian pair: -d/c(1/x) is a {p}-th power"),
        },
        (_, Some(CapellianWitness::FourTimesFourth)) => Mode::BoundsOnly {
            reason: "Capellian pair: d/c(1/x) is 4 times a fourth power".to_string(),
        },
        (Robustness::Robust, None) => Mode::Certified,
        (Robustness::WeaklyRobustOnly { witness }, None) => Mode::BoundsOnly {
            reason: format!("pair is weakly robust but not robust, witness ({}, {})", witness.a, witness.b),
        },
        (Robustness::NotWeaklyRobust { witness }, None) => Mode::BoundsOnly {
            reason: format!("pair is not weakly robust, witness ({}, {})", witness.a, witness.b),
        },
    };
    let (m0, n0, deficient) = if mode == Mode::Certified {
        let res = compute_m0(fam, opts.strategy, opts.limits).map_err(|e| e.at("m0 search"))?;
        let deficient = has_weight_deficient_factorization(fam).map_err(|e| e.at("robustness"))?;
        (Some(res.m0), Some(n0_formula(fam, res.m0, deficient)), Some(deficient))
    } else {
        (None, None, None)
    };
    let progressions = cyclotomic_progressions(fam).map_err(|e| e.at("progressions"))?;
    let exclusions = exclude_noncyclotomic_r_factors(fam).map_err(|e| e.at("exclusions"))?;

    let base = fam.deg_sum();
    let horizon = match n0 {
        Some(n0) => n0.max((n1_ceil as usize).min(opts.full_sweep_cap)).max(base),
        None => opts.horizon.max(base),
    };
    let mut extra: BTreeSet<usize> = BTreeSet::new();
    for p in &progressions {
        extra.extend(p.double_root_at);
    }
    for e in &exclusions {
        extra.extend(e.hits.iter().copied());
    }
    let extra_checked: Vec<usize> = extra.into_iter().filter(|&n| n > horizon).collect();
    let mut ns: Vec<usize> = (base + 1..=horizon).collect();
    ns.extend(&extra_checked);
    let facs = sweep(fam, &ns)?;
    let exceptional: BTreeMap<usize, Factorization> = facs
        .into_iter()
        .filter(|(n, fac)| !follows_rule(*n, fac, &progressions))
        .collect();
    let rule_certified_from = (mode == Mode::Certified).then_some(horizon);
    Ok(FamilyReport {
        family: FamilyEcho {
            c: fam.c().clone(),
            d: fam.d().clone(),
            r: fam.r().clone(),
            weight_budget: fam.budget(),
            deg_sum: base,
            content_warning: fam.content_warning().map(str::to_string),
        },
        verdicts: Verdicts {
            robustness: rob,
            capellian: cap,
            weight_deficient_factorization: deficient,
            mode,
        },
        m0,
        n0,
        n1,
        n1_ceil,
        bounds,
        rule: rule_text(&progressions),
        progressions,
        exclusions,
        sweep_horizon: horizon,
        extra_checked,
        exceptional,
        rule_certified_from,
    })
}

impl FamilyReport {
    /// The report's claim about `f_N`: its exceptional factorization, or
    /// `None` when `N` follows the rule.
    pub fn exceptional_at(&self, n: usize) -> Option<&Factorization> {
        self.exceptional.get(&n)
    }

    /// Human-readable summary.
    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let f = &self.family;
        let _ = writeln!(s, "family   f_N = x^N*c(1/x) + d(x),  c = {},  d = {}", f.c, f.d);
        let _ = writeln!(s, "r        {}", f.r);
        let _ = writeln!(s, "budget   {}    deg c + deg d = {}", f.weight_budget, f.deg_sum);
        if let Some(w) = &f.content_warning {
            let _ = writeln!(s, "warning  c and d share the integer factor {w}");
        }
        let rob = match &self.verdicts.robustness {
            Robustness::Robust => "robust".to_string(),
            Robustness::WeaklyRobustOnly { witness } => {
                format!("weakly robust only (witness ({}, {}))", witness.a, witness.b)
            }
            Robustness::NotWeaklyRobust { witness } => format!(
                "not weakly robust (witness ({}, {}), weight {})",
                witness.a, witness.b, witness.weight_sum
            ),
        };
        let _ = writeln!(s, "pair     {rob}");
        let cap = match &self.verdicts.capellian {
            None => "no".to_string(),
            Some(CapellianWitness::Power(p)) => format!("yes (-d/c(1/x) is a {p}-th power)"),
            Some(CapellianWitness::FourTimesFourth) => "yes (d/c(1/x) is 4 times a fourth power)".to_string(),
        };
        let _ = writeln!(s, "capelli  {cap}");
        match (self.m0, self.n0) {
            (Some(m0), Some(n0)) => {
                let _ = writeln!(s, "m0       {m0}");
                let _ = writeln!(s, "N0       {n0}");
            }
            _ => {
                let _ = writeln!(s, "m0       not computed");
            }
        }
        let _ = writeln!(s, "N1       {:.6} (ceil {})", self.n1, self.n1_ceil);
        let _ = writeln!(s, "bounds   main {}  FFK {}", self.bounds.n_main, self.bounds.n_ffk);
        let _ = writeln!(s, "         at most {} non-cyclotomic factors for large N", self.bounds.factor_count_bound);
        let _ = writeln!(s);
        if self.progressions.is_empty() {
            let _ = writeln!(s, "no cyclotomic factors for N > {}", f.deg_sum);
        } else {
            let _ = writeln!(s, "cyclotomic factors:");
            for p in &self.progressions {
                for r in &p.residues {
                    let _ = writeln!(s, "  {:<32} if N = {} mod {}", p.poly.to_string(), r, p.n);
                }
                if let Some(n) = p.double_root_at {
                    let _ = writeln!(s, "  {:<32} twice at N = {}", "", n);
                }
            }
        }
        for e in &self.exclusions {
            let hits = if e.hits.is_empty() {
                "never".to_string()
            } else {
                e.hits.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(", ")
            };
            let _ = writeln!(s, "  r-factor {} divides f_N for N in {{{}}} (window N <= {})", e.factor, hits, e.window);
        }
        let _ = writeln!(s);
        if self.exceptional.is_empty() {
            let _ = writeln!(s, "no exceptional N up to {}", self.sweep_horizon);
        } else {
            let _ = writeln!(s, "exceptional factorizations:");
            for (n, fac) in &self.exceptional {
                let _ = writeln!(s, "  N = {n:<4} {}", fac.render());
            }
        }
        let _ = writeln!(s);
        match (&self.verdicts.mode, self.rule_certified_from) {
            (Mode::Certified, Some(h)) => {
                let _ = writeln!(
                    s,
                    "for every other N > {}: {} (swept to N = {h}, certified beyond)",
                    f.deg_sum, self.rule
                );
            }
            _ => {
                let reason = match &self.verdicts.mode {
                    Mode::BoundsOnly { reason } => reason.clone(),
                    Mode::Certified => String::new(),
                };
                let _ = writeln!(
                    s,
                    "checked N <= {} only; not certified beyond ({reason})",
                    self.sweep_horizon
                );
            }
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Mismatch {
    pub n: usize,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub horizon: usize,
    pub checked: usize,
    pub mismatches: Vec<Mismatch>,
    /// Reciprocal irreducible factors seen in the sweep that do not divide `r`.
    pub stray_reciprocal_factors: Vec<(usize, IntPoly)>,
    /// Per-`N` ground truth (only recorded in bounds-only mode).
    pub ground_truth: BTreeMap<usize, Factorization>,
}

impl VerificationRecord {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty() && self.stray_reciprocal_factors.is_empty()
    }
}

/// Factors every `f_N` up to `horizon` and compares with the report.
pub fn oracle_verify(fam: &GapFamily, report: &FamilyReport, horizon: usize) -> Result<VerificationRecord> {
    let facs = small_n_sweep(fam, horizon)?;
    let mut mismatches = Vec::new();
    let mut stray = Vec::new();
    for (&n, fac) in &facs {
        for f in &fac.factors {
            if f.poly.deg0() > 0 && is_reciprocal(&f.poly) && fam.r().exact_div(&f.poly)?.is_none() {
                stray.push((n, f.poly.clone()));
            }
        }
        let covered = n <= report.sweep_horizon || report.extra_checked.contains(&n);
        match report.exceptional_at(n) {
            Some(claimed) => {
                if claimed != fac {
                    mismatches.push(Mismatch {
                        n,
                        expected: claimed.render(),
                        actual: fac.render(),
                    });
                }
            }
            None => {
                let certified = report.rule_certified_from.is_some() || covered;
                if certified && !follows_rule(n, fac, &report.progressions) {
                    mismatches.push(Mismatch {
                        n,
                        expected: report.rule.clone(),
                        actual: fac.render(),
                    });
                }
            }
        }
    }
    let ground_truth = if report.rule_certified_from.is_none() {
        facs
    } else {
        BTreeMap::new()
    };
    Ok(VerificationRecord {
        horizon,
        checked: horizon.saturating_sub(fam.deg_sum()),
        mismatches,
        stray_reciprocal_factors: stray,
        ground_truth,
    })
}
