//! The truncated-factorization search: the sets `T_m` of pairs `(a, b)` with
//! `deg a, deg b < m`, `a b ≡ c d (mod x^m)` and `‖a‖ + ‖b‖ <= ‖c‖ + ‖d‖`,
//! and the level `m₀` after which they only contain exact factorizations.

use std::cmp::{Ordering, Reverse};
use std::collections::{BTreeMap, BinaryHeap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{enumerate_factorization_pairs, has_weight_deficient_factorization, robustness, GapFamily, Robustness};
use crate::poly::IntPoly;

/// Safety factor applied to the floating-point pruning bound.
const PRUNE_SAFETY: f64 = 1.0 - 1.0 / (1u64 << 20) as f64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    LevelSweep,
    PrunedLevelSweep,
    BestFirst,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PruneArithmetic {
    Float,
    Exact,
}

#[derive(Clone, Copy, Debug)]
pub struct SearchLimits {
    /// Abort once this many nodes have been generated.
    pub max_nodes: Option<u64>,
    /// Best-first frontier size that triggers the switch to a level sweep.
    pub max_frontier: usize,
    /// Beam width of the lower-bound bootstrap.
    pub beam: usize,
    pub arithmetic: PruneArithmetic,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_nodes: None,
            max_frontier: 1 << 22,
            beam: 1000,
            arithmetic: PruneArithmetic::Float,
        }
    }
}

/// A pair alive at level `m`: `a b = c d + x^m h`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidatePair {
    pub a: IntPoly,
    pub b: IntPoly,
    pub level: usize,
    pub defect: IntPoly,
    pub weight_sum: u64,
}

impl CandidatePair {
    pub fn is_exact(&self) -> bool {
        self.defect.is_zero()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub generated: u64,
    pub expanded: u64,
    pub pruned: u64,
    pub widest_level: usize,
    pub bootstrap_mu: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct M0Result {
    pub m0: usize,
    /// The exact factorizations `a b = c d` the sets stabilize to.
    pub terminal_pairs: Vec<CandidatePair>,
    /// Least-weight pair with `a b != c d` alive at level `m0`.
    pub deepest_defective: Option<CandidatePair>,
    pub stats: SearchStats,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Node {
    a: Vec<i64>,
    b: Vec<i64>,
    weight: u64,
}

impl Node {
    fn level(&self) -> usize {
        self.a.len()
    }

    fn key(&self) -> (u64, &[i64], &[i64]) {
        (self.weight, &self.a, &self.b)
    }
}

fn neg(v: &[i64]) -> Vec<i64> {
    v.iter().map(|x| -x).collect()
}

fn canonical(a: Vec<i64>, b: Vec<i64>) -> (Vec<i64>, Vec<i64>) {
    let na = neg(&a);
    let nb = neg(&b);
    let mut best = (a, b);
    for cand in [(best.1.clone(), best.0.clone()), (nb.clone(), na.clone()), (na, nb)] {
        if cand < best {
            best = cand;
        }
    }
    best
}

fn last_nonzero(v: &[i64]) -> Option<usize> {
    v.iter().rposition(|&x| x != 0)
}

fn to_poly(v: &[i64]) -> IntPoly {
    IntPoly::from_i64s(v)
}

struct Ctx {
    cd: Vec<i64>,
    deg_cd: usize,
    budget: u64,
}

impl Ctx {
    fn new(fam: &GapFamily) -> Result<Self> {
        let cd = fam.cd();
        let coeffs = cd
            .to_i64s()
            .ok_or_else(|| Error::BudgetTooLarge(fam.budget().to_string()))?;
        Ok(Ctx {
            deg_cd: cd.deg0(),
            cd: coeffs,
            budget: fam.budget(),
        })
    }

    fn cd_at(&self, k: usize) -> i64 {
        self.cd.get(k).copied().unwrap_or(0)
    }

    /// Coefficient `k` of `a b`.
    fn prod_at(&self, a: &[i64], b: &[i64], k: usize) -> i64 {
        let lo = (k + 1).saturating_sub(b.len());
        let hi = k.min(a.len() - 1);
        (lo..=hi).map(|i| a[i] * b[k - i]).sum()
    }

    fn is_exact(&self, n: &Node) -> bool {
        let (Some(da), Some(db)) = (last_nonzero(&n.a), last_nonzero(&n.b)) else {
            return false;
        };
        if da + db != self.deg_cd || n.a[da] * n.b[db] != self.cd[self.deg_cd] {
            return false;
        }
        (n.level()..=self.deg_cd).all(|k| self.prod_at(&n.a, &n.b, k) == self.cd_at(k))
    }

    /// Coefficients `m .. m + len` of `a b - c d`.
    fn defect(&self, n: &Node, len: usize) -> Vec<i64> {
        let m = n.level();
        (m..m + len)
            .map(|k| {
                let p = if k <= 2 * (m - 1) { self.prod_at(&n.a, &n.b, k) } else { 0 };
                p - self.cd_at(k)
            })
            .collect()
    }

    fn seeds(&self) -> Vec<Node> {
        let t = self.cd[0];
        let mut out = Vec::new();
        let s = (self.budget as f64).sqrt() as i64 + 1;
        for a0 in -s..=s {
            if a0 == 0 || t % a0 != 0 {
                continue;
            }
            let b0 = t / a0;
            let w = (a0 * a0 + b0 * b0) as u64;
            if w > self.budget {
                continue;
            }
            let (a, b) = canonical(vec![a0], vec![b0]);
            if a == [a0] && b == [b0] {
                out.push(Node { a, b, weight: w });
            }
        }
        out.sort_by(|x, y| x.key().cmp(&y.key()));
        out
    }

    /// All children at level `m + 1`, one per orbit among siblings.
    fn children(&self, n: &Node) -> Vec<Node> {
        let m = n.level();
        let target = self.cd_at(m) - self.prod_at(&n.a, &n.b, m);
        let room = self.budget - n.weight;
        let (a0, b0) = (n.a[0], n.b[0]);
        let s = (room as f64).sqrt() as i64 + 1;
        let swap_fixed = n.a == n.b;
        let flip_fixed = n.a.iter().zip(&n.b).all(|(x, y)| *x == -*y);
        let mut out = Vec::new();
        for alpha in -s..=s {
            let rest = target - b0 * alpha;
            if rest % a0 != 0 {
                continue;
            }
            let beta = rest / a0;
            let extra = (alpha * alpha + beta * beta) as u64;
            if extra > room {
                continue;
            }
            // Among siblings of a parent fixed by a symmetry keep one of each
            // mirrored pair.
            if swap_fixed && (beta, alpha) < (alpha, beta) {
                continue;
            }
            if flip_fixed && (-beta, -alpha) < (alpha, beta) {
                continue;
            }
            let mut a = n.a.clone();
            let mut b = n.b.clone();
            a.push(alpha);
            b.push(beta);
            out.push(Node { a, b, weight: n.weight + extra });
        }
        out
    }

    /// Number of correction coefficients the pruning bound looks ahead.
    fn lookahead(&self, n: &Node, mu: usize) -> Option<usize> {
        let m = n.level();
        if m <= self.deg_cd || m >= mu {
            return None;
        }
        Some(m.min(mu - m))
    }

    fn prune_eta(&self, n: &Node, mu: usize, arith: PruneArithmetic) -> f64 {
        let Some(m1) = self.lookahead(n, mu) else {
            return 0.0;
        };
        let h = self.defect(n, m1);
        match arith {
            PruneArithmetic::Float => eta_float(&n.a, &n.b, &h) * PRUNE_SAFETY,
            PruneArithmetic::Exact => eta_exact(&n.a, &n.b, &h).to_f64().unwrap_or(0.0),
        }
    }

    fn pruned(&self, n: &Node, mu: usize, arith: PruneArithmetic) -> bool {
        let room = (self.budget - n.weight) as f64;
        match arith {
            PruneArithmetic::Float => {
                let Some(m1) = self.lookahead(n, mu) else {
                    return false;
                };
                let h = self.defect(n, m1);
                eta_float_exceeds(&n.a, &n.b, &h, room)
            }
            PruneArithmetic::Exact => {
                let Some(m1) = self.lookahead(n, mu) else {
                    return false;
                };
                let h = self.defect(n, m1);
                eta_exact(&n.a, &n.b, &h) > BigRational::from_integer(BigInt::from(self.budget - n.weight))
            }
        }
    }

    fn candidate(&self, n: &Node) -> CandidatePair {
        let a = to_poly(&n.a);
        let b = to_poly(&n.b);
        let diff = &(&a * &b) - &IntPoly::from_i64s(&self.cd);
        let m = n.level();
        let defect = IntPoly::new(diff.coeffs().iter().skip(m).cloned().collect());
        CandidatePair {
            a,
            b,
            level: m,
            defect,
            weight_sum: n.weight,
        }
    }
}

/// Gram matrix `T_b T_bᵀ + T_a T_aᵀ` of the lower-triangular Toeplitz
/// matrices built from the first `k` coefficients.
fn gram(a: &[i64], b: &[i64], k: usize) -> Vec<Vec<i64>> {
    let mut g = vec![vec![0i64; k]; k];
    for i in 0..k {
        for j in 0..=i {
            let s: i64 = (0..=j).map(|t| a[i - t] * a[j - t] + b[i - t] * b[j - t]).sum();
            g[i][j] = s;
            g[j][i] = s;
        }
    }
    g
}

/// `hᵀ G⁻¹ h` by Cholesky; `0` if `G` is numerically singular.
fn eta_float(a: &[i64], b: &[i64], h: &[i64]) -> f64 {
    let k = h.len();
    if h.iter().all(|&x| x == 0) {
        return 0.0;
    }
    let g = gram(a, b, k);
    let mut l = vec![vec![0f64; k]; k];
    for i in 0..k {
        for j in 0..=i {
            let mut s = g[i][j] as f64;
            for t in 0..j {
                s -= l[i][t] * l[j][t];
            }
            if i == j {
                if s <= 0.0 {
                    return 0.0;
                }
                l[i][i] = s.sqrt();
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    let mut z = vec![0f64; k];
    for i in 0..k {
        let mut s = h[i] as f64;
        for t in 0..i {
            s -= l[i][t] * z[t];
        }
        z[i] = s / l[i][i];
    }
    z.iter().map(|v| v * v).sum()
}

/// Whether `hᵀ G⁻¹ h` (times the safety factor) exceeds `room`. The
/// Cholesky factor and the forward solve are built row by row; the partial
/// sums are the bounds for the leading constraints, so they only grow and
/// the loop stops at the first one above `room`.
fn eta_float_exceeds(a: &[i64], b: &[i64], h: &[i64], room: f64) -> bool {
    let k = h.len();
    let mut l: Vec<Vec<f64>> = Vec::with_capacity(k);
    let mut z = Vec::with_capacity(k);
    let mut eta = 0.0;
    for i in 0..k {
        let mut row = vec![0f64; i + 1];
        for j in 0..=i {
            let g: i64 = (0..=j).map(|t| a[i - t] * a[j - t] + b[i - t] * b[j - t]).sum();
            let mut s = g as f64;
            for t in 0..j {
                s -= row[t] * if j == i { row[t] } else { l[j][t] };
            }
            if j == i {
                if s <= 0.0 {
                    return false;
                }
                row[i] = s.sqrt();
            } else {
                row[j] = s / l[j][j];
            }
        }
        let mut s = h[i] as f64;
        for t in 0..i {
            s -= row[t] * z[t];
        }
        let zi = s / row[i];
        z.push(zi);
        l.push(row);
        eta += zi * zi;
        if eta * PRUNE_SAFETY > room {
            return true;
        }
    }
    false
}

/// `hᵀ G⁻¹ h` in exact rational arithmetic; `0` if `G` is singular.
fn eta_exact(a: &[i64], b: &[i64], h: &[i64]) -> BigRational {
    let k = h.len();
    let q = |v: i64| BigRational::from_integer(BigInt::from(v));
    let g = gram(a, b, k);
    let mut m: Vec<Vec<BigRational>> = (0..k)
        .map(|i| {
            let mut row: Vec<BigRational> = g[i].iter().map(|&v| q(v)).collect();
            row.push(q(h[i]));
            row
        })
        .collect();
    for col in 0..k {
        let Some(p) = (col..k).find(|&r| !m[r][col].is_zero()) else {
            return BigRational::zero();
        };
        m.swap(col, p);
        let pivot = m[col][col].clone();
        for r in col + 1..k {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &pivot;
            for c in col..=k {
                let v = &f * &m[col][c];
                m[r][c] -= v;
            }
        }
    }
    let mut y = vec![BigRational::zero(); k];
    for i in (0..k).rev() {
        let mut s = m[i][k].clone();
        for j in i + 1..k {
            s -= &m[i][j] * &y[j];
        }
        y[i] = s / &m[i][i];
    }
    y.iter().zip(h).map(|(yi, &hi)| yi * q(hi)).sum()
}

/// Pairs at level 1: `a₀ b₀ = c(0) d(0)` within the budget, one per orbit.
pub fn seed_level(fam: &GapFamily) -> Result<Vec<CandidatePair>> {
    let ctx = Ctx::new(fam)?;
    Ok(ctx.seeds().iter().map(|n| ctx.candidate(n)).collect())
}

fn node_of(p: &CandidatePair) -> Node {
    let pad = |q: &IntPoly| {
        let mut v = q.to_i64s().expect("search coefficients fit in i64");
        v.resize(p.level, 0);
        v
    };
    Node {
        a: pad(&p.a),
        b: pad(&p.b),
        weight: p.weight_sum,
    }
}

/// All extensions of `pair` to level `m + 1`.
pub fn extend(pair: &CandidatePair, fam: &GapFamily) -> Result<Vec<CandidatePair>> {
    let ctx = Ctx::new(fam)?;
    Ok(ctx.children(&node_of(pair)).iter().map(|n| ctx.candidate(n)).collect())
}

/// Real lower bound η on the weight any descendant of `pair` must add to
/// reach level `m + min(m, mu - m)`; zero when the bound does not apply.
pub fn prune_bound(pair: &CandidatePair, fam: &GapFamily, mu: usize) -> Result<f64> {
    let ctx = Ctx::new(fam)?;
    Ok(ctx.prune_eta(&node_of(pair), mu, PruneArithmetic::Float))
}

/// η for an explicit defect vector, in exact arithmetic.
pub fn prune_bound_exact(a: &[i64], b: &[i64], h: &[i64]) -> BigRational {
    eta_exact(a, b, h)
}

/// `(1 + deg c + deg d) 2^(budget - 1)`, saturating.
pub fn level_ceiling(fam: &GapFamily) -> u128 {
    let e = fam.budget().saturating_sub(1);
    if e >= 100 {
        u128::MAX
    } else {
        (1 + fam.deg_sum() as u128) << e
    }
}

/// Fails when some exact factorization admits the infinite chain
/// `(a + αx^M, b + βx^M)`, which makes `m₀` infinite.
fn check_finite(fam: &GapFamily) -> Result<()> {
    for p in enumerate_factorization_pairs(fam)? {
        let (Some(a0), Some(b0)) = (p.a.constant_term().to_i64(), p.b.constant_term().to_i64()) else {
            continue;
        };
        let Some(w) = p.weight_sum.to_u64() else { continue };
        if w > fam.budget() {
            continue;
        }
        let g = num_integer::gcd(a0, b0);
        let step = ((a0 / g).pow(2) + (b0 / g).pow(2)) as u64;
        if step <= fam.budget() - w {
            return Err(Error::WeakRobustnessViolated {
                level: p.a.deg0() + p.b.deg0() + 1,
                a: p.a,
                b: p.b,
                weight: w,
            });
        }
    }
    Ok(())
}

fn trivial_lower_bound(fam: &GapFamily) -> usize {
    fam.deg_c().max(fam.deg_d())
}

/// Lower bound on `m₀` from a sweep keeping only the `beam` lightest
/// defective pairs per level.
pub fn bootstrap_lower_bound(fam: &GapFamily, beam: usize) -> Result<usize> {
    check_finite(fam)?;
    let ctx = Ctx::new(fam)?;
    Ok(beam_sweep(&ctx, beam.max(1)).max(trivial_lower_bound(fam)))
}

fn beam_sweep(ctx: &Ctx, beam: usize) -> usize {
    let mut frontier: Vec<Node> = ctx.seeds().into_iter().filter(|n| !ctx.is_exact(n)).collect();
    let mut mu = 0;
    while !frontier.is_empty() {
        mu = frontier[0].level();
        let mut next: Vec<Node> = frontier
            .par_iter()
            .flat_map_iter(|n| ctx.children(n))
            .filter(|n| !ctx.is_exact(n))
            .collect();
        if next.len() > beam {
            next.par_sort_unstable_by(|x, y| x.key().cmp(&y.key()));
            next.truncate(beam);
        }
        frontier = next;
    }
    mu
}

struct Search<'a> {
    ctx: &'a Ctx,
    limits: SearchLimits,
    stats: SearchStats,
    m0: usize,
    witness: Option<Node>,
    exact: Vec<Node>,
}

impl<'a> Search<'a> {
    fn note_defective(&mut self, n: &Node) {
        let m = n.level();
        let better = match &self.witness {
            None => true,
            Some(w) => match m.cmp(&w.level()) {
                Ordering::Greater => true,
                Ordering::Equal => n.key() < w.key(),
                Ordering::Less => false,
            },
        };
        if better {
            self.m0 = m;
            self.witness = Some(n.clone());
        }
    }

    fn count(&mut self, generated: usize) -> Result<()> {
        self.stats.generated += generated as u64;
        if let Some(cap) = self.limits.max_nodes {
            if self.stats.generated > cap {
                return Err(Error::ResourceLimit {
                    reason: format!("more than {cap} nodes"),
                    lower_bound: self.m0.max(self.stats.bootstrap_mu),
                });
            }
        }
        Ok(())
    }

    /// Level-by-level sweep over a pool of nodes keyed by level.
    fn level_sweep(&mut self, mut pool: BTreeMap<usize, Vec<Node>>, mu: Option<usize>) -> Result<()> {
        while let Some((level, mut frontier)) = pool.pop_first() {
            if level as u128 > u128::MAX / 2 {
                break;
            }
            frontier.sort_by(|x, y| x.key().cmp(&y.key()));
            frontier.dedup();
            self.stats.widest_level = self.stats.widest_level.max(frontier.len());
            let ctx = self.ctx;
            let (exact, live): (Vec<Node>, Vec<Node>) = frontier.into_iter().partition(|n| ctx.is_exact(n));
            self.exact.extend(exact);
            if let Some(first) = live.first() {
                self.note_defective(first);
            } else {
                continue;
            }
            let arith = self.limits.arithmetic;
            let expanded: Vec<(bool, Vec<Node>)> = live
                .par_iter()
                .map(|n| match mu {
                    Some(mu) if ctx.pruned(n, mu, arith) => (true, Vec::new()),
                    _ => (false, ctx.children(n)),
                })
                .collect();
            let mut next = pool.remove(&(level + 1)).unwrap_or_default();
            let mut generated = 0;
            for (pruned, kids) in expanded {
                if pruned {
                    self.stats.pruned += 1;
                } else {
                    self.stats.expanded += 1;
                }
                generated += kids.len();
                next.extend(kids);
            }
            self.count(generated)?;
            if !next.is_empty() {
                pool.insert(level + 1, next);
            }
        }
        Ok(())
    }

    fn best_first(&mut self, seeds: Vec<Node>, mut mu: usize) -> Result<()> {
        // (weight, deeper first, canonical coefficients)
        type Key = Reverse<(u64, Reverse<usize>, Vec<i64>, Vec<i64>)>;
        let key = |n: Node| -> Key { Reverse((n.weight, Reverse(n.level()), n.a, n.b)) };
        let mut heap: BinaryHeap<Key> = seeds.into_iter().map(key).collect();
        while let Some(Reverse((weight, Reverse(_), a, b))) = heap.pop() {
            let n = Node { a, b, weight };
            if self.ctx.is_exact(&n) {
                self.exact.push(n);
                continue;
            }
            self.note_defective(&n);
            mu = mu.max(n.level());
            if self.ctx.pruned(&n, mu, self.limits.arithmetic) {
                self.stats.pruned += 1;
                continue;
            }
            self.stats.expanded += 1;
            let kids = self.ctx.children(&n);
            self.count(kids.len())?;
            heap.extend(kids.into_iter().map(key));
            if heap.len() > self.limits.max_frontier {
                let mut pool: BTreeMap<usize, Vec<Node>> = BTreeMap::new();
                for Reverse((weight, Reverse(level), a, b)) in heap.drain() {
                    pool.entry(level).or_default().push(Node { a, b, weight });
                }
                return self.level_sweep(pool, Some(mu));
            }
        }
        Ok(())
    }
}

/// The largest level `m` at which `T_m` holds a pair with `a b != c d`.
pub fn compute_m0(fam: &GapFamily, strategy: Strategy, limits: SearchLimits) -> Result<M0Result> {
    check_finite(fam)?;
    let ctx = Ctx::new(fam)?;
    let mut search = Search {
        ctx: &ctx,
        limits,
        stats: SearchStats::default(),
        m0: 0,
        witness: None,
        exact: Vec::new(),
    };
    let seeds = ctx.seeds();
    match strategy {
        Strategy::LevelSweep => {
            search.level_sweep(BTreeMap::from([(1, seeds)]), None)?;
        }
        Strategy::PrunedLevelSweep => {
            let mu = beam_sweep(&ctx, limits.beam).max(trivial_lower_bound(fam));
            search.stats.bootstrap_mu = mu;
            search.level_sweep(BTreeMap::from([(1, seeds)]), Some(mu))?;
        }
        Strategy::BestFirst => {
            let mu = beam_sweep(&ctx, limits.beam).max(trivial_lower_bound(fam));
            search.stats.bootstrap_mu = mu;
            search.best_first(seeds, mu)?;
        }
    }
    let ceiling = level_ceiling(fam);
    if search.m0 as u128 > ceiling {
        return Err(Error::LevelCeilingExceeded {
            ceiling: ceiling.to_string(),
        });
    }
    let mut exact: Vec<(Vec<i64>, Vec<i64>, u64)> = search
        .exact
        .iter()
        .map(|n| {
            let mut a = n.a.clone();
            let mut b = n.b.clone();
            a.truncate(last_nonzero(&a).map_or(0, |k| k + 1));
            b.truncate(last_nonzero(&b).map_or(0, |k| k + 1));
            let (a, b) = canonical(a, b);
            (a, b, n.weight)
        })
        .collect();
    exact.sort();
    exact.dedup();
    let terminal_pairs = exact
        .into_iter()
        .map(|(a, b, weight)| {
            let level = search.m0 + 1;
            let mut n = Node { a, b, weight };
            n.a.resize(level.max(n.a.len()), 0);
            n.b.resize(level.max(n.b.len()), 0);
            ctx.candidate(&n)
        })
        .collect();
    Ok(M0Result {
        m0: search.m0,
        terminal_pairs,
        deepest_defective: search.witness.as_ref().map(|n| ctx.candidate(n)),
        stats: search.stats,
    })
}

/// The full set `T_level`, one representative per orbit, with no pruning and
/// no finiteness check (useful for families whose sets never stabilize).
pub fn sweep_to_level(fam: &GapFamily, level: usize) -> Result<Vec<CandidatePair>> {
    let ctx = Ctx::new(fam)?;
    let mut frontier = ctx.seeds();
    for _ in 1..level {
        frontier = frontier.par_iter().flat_map_iter(|n| ctx.children(n)).collect();
    }
    frontier.sort_by(|x, y| x.key().cmp(&y.key()));
    Ok(frontier.iter().map(|n| ctx.candidate(n)).collect())
}

/// Whether `(a, b)` lies in `T_m` for the family.
pub fn in_t_m(fam: &GapFamily, a: &IntPoly, b: &IntPoly, m: usize) -> bool {
    if a.deg0() >= m || b.deg0() >= m || a.is_zero() || b.is_zero() {
        return false;
    }
    let w = a.weight() + b.weight();
    w <= BigInt::from(fam.budget()) && (a * b).truncate(m) == fam.cd().truncate(m)
}

/// The threshold beyond which the non-reciprocal part of `f_N` is
/// irreducible, for robust pairs.
pub fn derive_n0(fam: &GapFamily, m0: usize) -> Result<usize> {
    match robustness(fam)? {
        Robustness::Robust => {}
        Robustness::WeaklyRobustOnly { witness } | Robustness::NotWeaklyRobust { witness } => {
            return Err(Error::NotRobust {
                a: witness.a,
                b: witness.b,
            })
        }
    }
    Ok(n0_formula(fam, m0, has_weight_deficient_factorization(fam)?))
}

pub fn n0_formula(fam: &GapFamily, m0: usize, deficient: bool) -> usize {
    if deficient {
        (4 * fam.deg_sum()).max(2 * m0)
    } else {
        2 * fam.deg_c().max(fam.deg_d()).max(m0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::poly;
    use num_rational::Ratio;

    fn fam(c: &[i64], d: &[i64]) -> GapFamily {
        GapFamily::from_i64s(c, d).unwrap()
    }

    fn m0(c: &[i64], d: &[i64], s: Strategy) -> usize {
        compute_m0(&fam(c, d), s, SearchLimits::default()).unwrap().m0
    }

    #[test]
    fn seeds() {
        let pairs = |c: &[i64], d: &[i64]| -> Vec<(i64, i64)> {
            seed_level(&fam(c, d))
                .unwrap()
                .iter()
                .map(|p| (p.a.coeff(0).to_i64().unwrap(), p.b.coeff(0).to_i64().unwrap()))
                .collect()
        };
        assert_eq!(pairs(&[1], &[1, 1]), vec![(-1, -1)]);
        // c(0)d(0) = -4 within budget 51: (1,-4) and (2,-2) up to symmetry
        let s = pairs(&[1], &[-4, 0, 5, 0, 1]);
        assert_eq!(s.len(), 2);
        assert!(s.contains(&(-2, 2)) && s.contains(&(-4, 1)));
        assert_eq!(pairs(&[2], &[3, 0, 1]).len(), 1);
    }

    #[test]
    fn exact_pairs_persist() {
        let f = fam(&[1], &[1, 0, -7]);
        let p = CandidatePair {
            a: poly(&[1]),
            b: poly(&[1, 0, -7]),
            level: 5,
            defect: IntPoly::zero(),
            weight_sum: 51,
        };
        let kids = extend(&p, &f).unwrap();
        assert_eq!(kids.len(), 1);
        assert!(kids[0].is_exact());
        assert_eq!(prune_bound(&p, &f, 20).unwrap(), 0.0);
    }

    #[test]
    fn eta_small_case() {
        let e = prune_bound_exact(&[1], &[1], &[-4]);
        assert_eq!(e, Ratio::from_integer(BigInt::from(8)));
        assert!((eta_float(&[1], &[1], &[-4]) - 8.0).abs() < 1e-12);
        assert!(eta_exact(&[1, 2], &[1, -3], &[0, 0]).is_zero());
        let f = eta_float(&[1, 2, -1], &[2, 0, 1], &[3, -1, 4]);
        let x = eta_exact(&[1, 2, -1], &[2, 0, 1], &[3, -1, 4]).to_f64().unwrap();
        assert!((f - x).abs() < 1e-9 * x);
        assert!(eta_float_exceeds(&[1, 2, -1], &[2, 0, 1], &[3, -1, 4], x * 0.99));
        assert!(!eta_float_exceeds(&[1, 2, -1], &[2, 0, 1], &[3, -1, 4], x * 1.01));
    }

    #[test]
    fn known_m0() {
        for s in [Strategy::LevelSweep, Strategy::PrunedLevelSweep, Strategy::BestFirst] {
            assert_eq!(m0(&[1], &[1, 2], s), 4);
            assert_eq!(m0(&[1, 2], &[1, -1], s), 5);
            assert_eq!(m0(&[1, 2], &[1, -2], s), 4);
            assert_eq!(m0(&[1, 1], &[1, -1], s), 2);
            assert_eq!(m0(&[1, 1], &[1, 7], s), 2);
            assert_eq!(m0(&[1], &[1, 0, -7], s), 20);
        }
    }

    #[test]
    fn witnesses_agree() {
        let f = fam(&[1], &[1, 0, -3]);
        let a = compute_m0(&f, Strategy::LevelSweep, SearchLimits::default()).unwrap();
        let b = compute_m0(&f, Strategy::BestFirst, SearchLimits::default()).unwrap();
        assert_eq!(a.m0, 11);
        assert_eq!(a.deepest_defective, b.deepest_defective);
        assert_eq!(a.terminal_pairs, b.terminal_pairs);
        assert_eq!(a.terminal_pairs.len(), 1);
        let w = a.deepest_defective.unwrap();
        assert!(!w.is_exact());
        assert_eq!(w.level, 11);
        assert!(in_t_m(&f, &w.a, &w.b, 11));
    }

    #[test]
    fn infinite_sets_rejected() {
        let f = fam(&[1], &[1, 0, -4]);
        match compute_m0(&f, Strategy::BestFirst, SearchLimits::default()) {
            Err(Error::WeakRobustnessViolated { weight, .. }) => assert_eq!(weight, 10),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn non_robust_set_stabilizes_to_six_patterns() {
        let f = fam(&[1], &[1, 0, -4]);
        for m in [13usize, 15] {
            let t = sweep_to_level(&f, m).unwrap();
            let mut got: Vec<(IntPoly, IntPoly)> = t
                .iter()
                .map(|p| crate::family::canonical_pair(&p.a, &p.b))
                .collect();
            got.sort();
            let mut want = vec![
                crate::family::canonical_pair(&poly(&[1]), &poly(&[1, 0, -4])),
                crate::family::canonical_pair(&poly(&[1, 2]), &poly(&[1, -2])),
            ];
            for e in [1i64, -1, 2, -2] {
                let mut a = vec![0i64; m];
                let mut b = vec![0i64; m];
                a[0] = 1;
                a[1] = 2;
                a[m - 1] = e;
                b[0] = 1;
                b[1] = -2;
                b[m - 1] = -e;
                want.push(crate::family::canonical_pair(&poly(&a), &poly(&b)));
            }
            want.sort();
            assert_eq!(got, want, "m = {m}");
        }
    }

    #[test]
    fn limits_construction_in_t() {
        // k = 1 degenerates: deg(1 - x) = 1 is not below m = 1
        for k in (-12..=-2i64).chain(2..=12) {
            let f = fam(&[1], &[k + 1, -k]);
            let m = (k * k) as usize;
            let a = poly(&[1, -1]);
            let mut b = vec![1i64; m];
            b[0] += k;
            assert!(in_t_m(&f, &a, &poly(&b), m), "k = {k}");
        }
    }

    #[test]
    fn n0_values() {
        assert_eq!(derive_n0(&fam(&[1], &[1, 0, -7]), 20).unwrap(), 40);
        assert_eq!(derive_n0(&fam(&[1, 3], &[1, 9]), 3).unwrap(), 6);
        assert!(matches!(derive_n0(&fam(&[1], &[1, 0, -4]), 12), Err(Error::NotRobust { .. })));
    }

    #[test]
    fn node_cap() {
        let limits = SearchLimits {
            max_nodes: Some(10),
            ..SearchLimits::default()
        };
        match compute_m0(&fam(&[1], &[1, 0, -7]), Strategy::LevelSweep, limits) {
            Err(Error::ResourceLimit { lower_bound, .. }) => assert!(lower_bound <= 20),
            other => panic!("{other:?}"),
        }
    }
}
