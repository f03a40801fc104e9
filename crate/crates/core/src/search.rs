//! Enumeration of reciprocal polynomials of degree `2g` whose Perron root lies
//! strictly below a bound.
//!
//! The primary method walks trace vectors `(p_1, …, p_g)` inside the box
//! `|p_k| ≤ trace_bound(2g, r, k)` with `p_1 ≥ 0`, choosing at each level only
//! the residue class that keeps `a_k` integral. The oracle walks the
//! half-coefficient box instead.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::poly::IntPoly;
use crate::polycore::{
    analyze_roots, trace_bound, PerronConfig, PerronError, ReciprocalPolynomial,
};
use crate::roots::complex_roots;

/// Candidates this close to the bound are treated as the bound itself.
pub const BOUNDARY_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum SearchError {
    #[error("bound {0} must exceed 1")]
    BoundTooLow(f64),
    #[error("defining polynomial has no real dominant root")]
    NoDominantRoot,
    #[error("genus {0} outside the supported range")]
    GenusOutOfRange(usize),
    #[error("coefficient oracle limited to genus ≤ 4, got {0}")]
    OracleScaleExceeded(usize),
}

/// Upper bound `r` on the Perron root.
#[derive(Clone, Debug, PartialEq)]
pub struct RootBound {
    pub defining_poly: Option<IntPoly>,
    pub value: f64,
    pub strict: bool,
}

impl RootBound {
    pub fn from_value(value: f64) -> Result<Self, SearchError> {
        if value.is_nan() || value <= 1.0 {
            return Err(SearchError::BoundTooLow(value));
        }
        Ok(RootBound {
            defining_poly: None,
            value,
            strict: true,
        })
    }

    /// The bound is the largest root modulus of `p`, which must be a real root.
    pub fn from_poly(p: IntPoly) -> Result<Self, SearchError> {
        let value = dominant_real_root(&p).ok_or(SearchError::NoDominantRoot)?;
        if value.is_nan() || value <= 1.0 {
            return Err(SearchError::BoundTooLow(value));
        }
        Ok(RootBound {
            defining_poly: Some(p),
            value,
            strict: true,
        })
    }

    /// Seed bound from the family `x^{2g+1} − 2x^{g+1} − 2x^g + 1`.
    pub fn seed_for_genus(genus: usize) -> Self {
        RootBound::from_poly(seed_polynomial(genus)).expect("seed family has a Perron root above 1")
    }
}

/// `x^{2g+1} − 2x^{g+1} − 2x^g + 1`; its largest root is the default search
/// bound in genus `g`.
pub fn seed_polynomial(genus: usize) -> IntPoly {
    let mut c = vec![0i64; 2 * genus + 2];
    c[0] = 1;
    c[genus] = -2;
    c[genus + 1] = -2;
    c[2 * genus + 1] = 1;
    IntPoly::new(c)
}

/// Largest root modulus of `p`, if it is attained by a real root; polished
/// by bisection to full precision.
pub fn dominant_real_root(p: &IntPoly) -> Option<f64> {
    let mut roots = complex_roots(p);
    roots.sort_by(|a, b| b.norm().total_cmp(&a.norm()));
    let top = *roots.first()?;
    if top.im.abs() > 1e-7 * top.norm().max(1.0) {
        return None;
    }
    let m = top.norm();
    let oriented = if top.re >= 0.0 {
        p.clone()
    } else {
        p.negate_variable()
    };
    let lo = m * (1.0 - 1e-6);
    let hi = m * (1.0 + 1e-6);
    Some(crate::roots::bisect(&oriented, lo, hi, 1e-16).unwrap_or(m))
}

/// A Perron-normalized polynomial and its Perron root.
#[derive(Clone, Debug, PartialEq)]
pub struct Candidate {
    pub poly: ReciprocalPolynomial,
    pub root: f64,
}

impl Candidate {
    fn order(&self, other: &Self) -> Ordering {
        self.root
            .total_cmp(&other.root)
            .then_with(|| self.poly.cmp(&other.poly))
    }
}

/// Counters from a trace-vector run.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SearchStats {
    /// Trace vectors in the box.
    pub total: u64,
    /// Vectors rejected because some `a_k` is fractional.
    pub fractional: u64,
    /// Integral vectors reaching root analysis.
    pub surviving: u64,
    /// Rejected by the trace bounds on `p_{g+1}..p_{3g}` or by the sign of
    /// `P(±r)`.
    pub bound_rejections: u64,
    /// Rejected by root analysis.
    pub root_rejections: u64,
    /// Newton failures (rejected).
    pub no_convergence: u64,
    /// Polynomials whose Perron root equals the bound within tolerance.
    pub boundary_hits: Vec<Candidate>,
    /// Polynomials with an unresolved modulus tie at the top.
    pub review: Vec<ReciprocalPolynomial>,
}

impl SearchStats {
    fn absorb(&mut self, other: SearchStats) {
        self.total += other.total;
        self.fractional += other.fractional;
        self.surviving += other.surviving;
        self.bound_rejections += other.bound_rejections;
        self.root_rejections += other.root_rejections;
        self.no_convergence += other.no_convergence;
        self.boundary_hits.extend(other.boundary_hits);
        self.review.extend(other.review);
    }

    fn normalize(&mut self) {
        self.boundary_hits.sort_by(|a, b| a.order(b));
        self.boundary_hits.dedup_by(|a, b| a.poly == b.poly);
        self.review.sort();
        self.review.dedup();
    }
}

/// Sorted, deduplicated candidates below a bound.
#[derive(Clone, Debug, PartialEq)]
pub struct CandidateSet {
    pub genus: usize,
    pub bound: RootBound,
    pub candidates: Vec<Candidate>,
    pub stats: SearchStats,
}

/// Trace-case counts: total = fractional + surviving.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TraceCounts {
    pub total: u64,
    pub fractional: u64,
    pub surviving: u64,
}

/// A slice of the trace box: fixed `p_1`, optionally a range of `p_2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shard {
    pub p1: i64,
    pub p2_range: Option<(i64, i64)>,
}

/// Result of one shard.
#[derive(Clone, Debug, PartialEq)]
pub struct ShardResult {
    pub shard: Shard,
    pub candidates: Vec<Candidate>,
    pub stats: SearchStats,
}

/// Per-genus search parameters derived from the bound.
#[derive(Clone, Debug)]
pub struct SearchPlan {
    pub genus: usize,
    pub bound: RootBound,
    /// `t_k` for `k = 1..=3g`.
    bounds: Vec<i64>,
    pub perron: PerronConfig,
}

impl SearchPlan {
    pub fn new(genus: usize, bound: RootBound) -> Result<Self, SearchError> {
        if !(1..=10).contains(&genus) {
            return Err(SearchError::GenusOutOfRange(genus));
        }
        if bound.value.is_nan() || bound.value <= 1.0 {
            return Err(SearchError::BoundTooLow(bound.value));
        }
        let n = 2 * genus;
        let bounds = (1..=3 * genus)
            .map(|k| trace_bound(n, bound.value, k))
            .collect();
        let perron = PerronConfig {
            seed: Some(bound.value),
            ..PerronConfig::default()
        };
        Ok(SearchPlan {
            genus,
            bound,
            bounds,
            perron,
        })
    }

    /// `t_k` for `1 ≤ k ≤ 3g`.
    pub fn trace_bound(&self, k: usize) -> i64 {
        self.bounds[k - 1]
    }

    /// Size of the box `(t_1 + 1)·∏_{k≥2} (2t_k + 1)`.
    pub fn box_size(&self) -> u64 {
        let mut total = (self.bounds[0] + 1) as u64;
        for k in 2..=self.genus {
            total *= (2 * self.bounds[k - 1] + 1) as u64;
        }
        total
    }

    /// Shards keyed by `p_1`, and additionally by `p_2` ranges from genus 7 on.
    pub fn shards(&self) -> Vec<Shard> {
        let t1 = self.bounds[0];
        let mut out = Vec::new();
        for p1 in 0..=t1 {
            if self.genus >= 7 {
                let t2 = self.bounds[1];
                let width = 2 * t2 + 1;
                let pieces = 8.min(width);
                for i in 0..pieces {
                    let lo = -t2 + i * width / pieces;
                    let hi = -t2 + (i + 1) * width / pieces - 1;
                    out.push(Shard {
                        p1,
                        p2_range: Some((lo, hi)),
                    });
                }
            } else {
                out.push(Shard { p1, p2_range: None });
            }
        }
        out
    }

    fn shard_box(&self, shard: &Shard) -> u64 {
        let mut total = 1u64;
        for k in 2..=self.genus {
            let width = if k == 2 {
                match shard.p2_range {
                    Some((lo, hi)) => (hi - lo + 1) as u64,
                    None => (2 * self.bounds[1] + 1) as u64,
                }
            } else {
                (2 * self.bounds[k - 1] + 1) as u64
            };
            total *= width;
        }
        total
    }

    fn level_range(&self, shard: &Shard, k: usize) -> (i64, i64) {
        match k {
            1 => (shard.p1, shard.p1),
            2 => shard.p2_range.unwrap_or((-self.bounds[1], self.bounds[1])),
            _ => (-self.bounds[k - 1], self.bounds[k - 1]),
        }
    }

    /// Counts the integral vectors of a shard without analyzing them.
    pub fn count_shard(&self, shard: &Shard) -> TraceCounts {
        let total = self.shard_box(shard);
        let mut walker = Walker::new(self, shard);
        let surviving = walker.count(1);
        TraceCounts {
            total,
            fractional: total - surviving,
            surviving,
        }
    }

    /// Runs a shard fully: integral vectors, prefilters and root analysis.
    pub fn run_shard(&self, shard: &Shard) -> ShardResult {
        let total = self.shard_box(shard);
        let mut walker = Walker::new(self, shard);
        walker.collect(1);
        let mut stats = walker.stats;
        stats.total = total;
        stats.fractional = total - stats.surviving;
        stats.normalize();
        let mut candidates: Vec<Candidate> = walker.found.into_values().collect();
        candidates.sort_by(|a, b| a.order(b));
        ShardResult {
            shard: shard.clone(),
            candidates,
            stats,
        }
    }

    /// Analyzes one polynomial the way the enumerator does.
    pub fn classify(&self, half: &[i64], stats: &mut SearchStats) -> Option<Candidate> {
        let n = 2 * self.genus;
        let a: Vec<i64> = (0..=n)
            .map(|k| {
                let k = if k > self.genus { n - k } else { k };
                if k == 0 {
                    1
                } else {
                    half[k - 1]
                }
            })
            .collect();
        if !extended_traces_ok(&a, &self.bounds) {
            stats.bound_rejections += 1;
            return None;
        }
        let poly = ReciprocalPolynomial::new(half.to_vec()).expect("nonempty");
        let ip = poly.to_int_poly();
        let r = self.bound.value;
        let scale = a.iter().map(|c| c.unsigned_abs() as f64).sum::<f64>() * libm::pow(r, n as f64);
        if ip.eval_f64(r) < -1e-12 * scale || ip.eval_f64(-r) < -1e-12 * scale {
            stats.bound_rejections += 1;
            return None;
        }
        match analyze_roots(&ip, &self.perron) {
            Err(PerronError::AmbiguousDominance { .. }) => {
                stats.review.push(poly);
                None
            }
            Err(_) => {
                stats.no_convergence += 1;
                None
            }
            Ok(profile) => {
                if !profile.is_perron() {
                    stats.root_rejections += 1;
                    return None;
                }
                let rho = profile.dominant_modulus;
                let normalized = if profile.dominant_value < 0.0 {
                    poly.negate_variable()
                } else {
                    poly
                };
                let cand = Candidate {
                    poly: normalized,
                    root: rho,
                };
                if (rho - r).abs() <= BOUNDARY_TOL * r {
                    stats.boundary_hits.push(cand);
                    None
                } else if rho > r {
                    stats.root_rejections += 1;
                    None
                } else {
                    Some(cand)
                }
            }
        }
    }
}

/// Checks `|p_k| ≤ t_k` for `k = g+1..=3g` using the full recurrence on the
/// descending coefficient list `a_0..a_n`.
fn extended_traces_ok(a: &[i64], bounds: &[i64]) -> bool {
    let n = a.len() - 1;
    let mut p = vec![0i64; bounds.len() + 1];
    for k in 1..=bounds.len() {
        let mut s: i64 = if k <= n { -(k as i64) * a[k] } else { 0 };
        let top = k.min(n + 1);
        for m in 1..top {
            s -= a[m] * p[k - m];
        }
        if k > n {
            s -= a[n] * p[k - n];
        }
        if s.abs() > bounds[k - 1] {
            return false;
        }
        p[k] = s;
    }
    true
}

struct Walker<'a> {
    plan: &'a SearchPlan,
    shard: &'a Shard,
    // a[0..=g], p[0..=g] (index 0 unused for p)
    a: Vec<i64>,
    p: Vec<i64>,
    stats: SearchStats,
    found: BTreeMap<ReciprocalPolynomial, Candidate>,
}

impl<'a> Walker<'a> {
    fn new(plan: &'a SearchPlan, shard: &'a Shard) -> Self {
        let g = plan.genus;
        let mut a = vec![0; g + 1];
        a[0] = 1;
        Walker {
            plan,
            shard,
            a,
            p: vec![0; g + 1],
            stats: SearchStats::default(),
            found: BTreeMap::new(),
        }
    }

    /// First value `≥ lo` congruent to the residue that makes `a_k` integral,
    /// along with `S_k = Σ_{m<k} a_m p_{k−m}`.
    fn start(&self, k: usize, lo: i64) -> (i64, i64) {
        let mut s = 0i64;
        for m in 1..k {
            s += self.a[m] * self.p[k - m];
        }
        let kk = k as i64;
        // k·a_k = −p_k − S  ⇒  p_k ≡ −S (mod k)
        let residue = (-s).rem_euclid(kk);
        let first = lo + (residue - lo).rem_euclid(kk);
        (first, s)
    }

    fn count(&mut self, k: usize) -> u64 {
        let g = self.plan.genus;
        let (lo, hi) = self.plan.level_range(self.shard, k);
        let (first, s) = self.start(k, lo);
        if first > hi {
            return 0;
        }
        let kk = k as i64;
        if k == g {
            return ((hi - first) / kk + 1) as u64;
        }
        let mut total = 0;
        let mut pk = first;
        while pk <= hi {
            self.p[k] = pk;
            self.a[k] = (-pk - s) / kk;
            total += self.count(k + 1);
            pk += kk;
        }
        total
    }

    fn collect(&mut self, k: usize) {
        let g = self.plan.genus;
        let (lo, hi) = self.plan.level_range(self.shard, k);
        let (first, s) = self.start(k, lo);
        let kk = k as i64;
        let mut pk = first;
        while pk <= hi {
            self.p[k] = pk;
            self.a[k] = (-pk - s) / kk;
            if k == g {
                self.stats.surviving += 1;
                let half = self.a[1..].to_vec();
                if let Some(c) = self.plan.classify(&half, &mut self.stats) {
                    self.found.entry(c.poly.clone()).or_insert(c);
                }
            } else {
                self.collect(k + 1);
            }
            pk += kk;
        }
    }
}

/// Deterministic merge of shard results in any order.
pub fn merge_shards(genus: usize, bound: RootBound, results: Vec<ShardResult>) -> CandidateSet {
    let mut stats = SearchStats::default();
    let mut found: BTreeMap<ReciprocalPolynomial, Candidate> = BTreeMap::new();
    let mut results = results;
    results.sort_by(|a, b| a.shard.cmp(&b.shard));
    for r in results {
        stats.absorb(r.stats);
        for c in r.candidates {
            found.entry(c.poly.clone()).or_insert(c);
        }
    }
    stats.normalize();
    let mut candidates: Vec<Candidate> = found.into_values().collect();
    candidates.sort_by(|a, b| a.order(b));
    CandidateSet {
        genus,
        bound,
        candidates,
        stats,
    }
}

/// All allowable reciprocal polynomials of degree `2g` with Perron root in
/// `(1, bound)`, Perron-normalized and sorted by root, then coefficients.
pub fn enumerate_candidates(genus: usize, bound: &RootBound) -> Result<CandidateSet, SearchError> {
    let plan = SearchPlan::new(genus, bound.clone())?;
    let results = plan.shards().iter().map(|s| plan.run_shard(s)).collect();
    Ok(merge_shards(genus, bound.clone(), results))
}

/// `(total, fractional, surviving)` over the trace box.
pub fn count_trace_cases(genus: usize, bound: &RootBound) -> Result<TraceCounts, SearchError> {
    let plan = SearchPlan::new(genus, bound.clone())?;
    let mut out = TraceCounts {
        total: 0,
        fractional: 0,
        surviving: 0,
    };
    for s in plan.shards() {
        let c = plan.count_shard(&s);
        out.total += c.total;
        out.fractional += c.fractional;
        out.surviving += c.surviving;
    }
    Ok(out)
}

/// Coefficient bounds: the `k`-th coefficient of `(x² + t x + 1)^g` with
/// `t = r + 1/r`, floored, for `k = 1..=g`.
pub fn coefficient_bounds(genus: usize, r: f64) -> Vec<i64> {
    let t = r + 1.0 / r;
    let mut c = vec![1.0f64];
    for _ in 0..genus {
        let mut next = vec![0.0; c.len() + 2];
        for (i, &x) in c.iter().enumerate() {
            next[i] += x;
            next[i + 1] += t * x;
            next[i + 2] += x;
        }
        c = next;
    }
    (1..=genus)
        .map(|k| libm::floor(c[k] * (1.0 + 1e-12) + 1e-9) as i64)
        .collect()
}

/// Oracle enumeration over the half-coefficient box. Keeps one of each
/// `P(X)`, `P(−X)` pair: `a_1 > 0`, or `a_1 = 0` and the first nonzero
/// odd-index coefficient positive, or every odd-index coefficient zero.
/// Returns the candidate set and the number of boxes points visited.
pub fn coefficient_enumerate(
    genus: usize,
    bound: &RootBound,
) -> Result<(CandidateSet, u64), SearchError> {
    if genus > 4 {
        return Err(SearchError::OracleScaleExceeded(genus));
    }
    let plan = SearchPlan::new(genus, bound.clone())?;
    let limits = coefficient_bounds(genus, bound.value);
    let mut stats = SearchStats::default();
    let mut found: BTreeMap<ReciprocalPolynomial, Candidate> = BTreeMap::new();
    let mut half = vec![0i64; genus];
    let mut cases = 0u64;
    coefficient_walk(
        &plan, &limits, 0, &mut half, &mut cases, &mut stats, &mut found,
    );
    stats.total = cases;
    stats.surviving = cases;
    stats.normalize();
    let mut candidates: Vec<Candidate> = found.into_values().collect();
    candidates.sort_by(|a, b| a.order(b));
    Ok((
        CandidateSet {
            genus,
            bound: bound.clone(),
            candidates,
            stats,
        },
        cases,
    ))
}

fn sign_normalized(half: &[i64]) -> bool {
    // Odd-index coefficients are a_1, a_3, ... i.e. half[0], half[2], ...
    for k in (0..half.len()).step_by(2) {
        match half[k].cmp(&0) {
            Ordering::Greater => return true,
            Ordering::Less => return false,
            Ordering::Equal => {}
        }
    }
    true
}

fn coefficient_walk(
    plan: &SearchPlan,
    limits: &[i64],
    level: usize,
    half: &mut Vec<i64>,
    cases: &mut u64,
    stats: &mut SearchStats,
    found: &mut BTreeMap<ReciprocalPolynomial, Candidate>,
) {
    if level == half.len() {
        if !sign_normalized(half) {
            return;
        }
        *cases += 1;
        if let Some(c) = plan.classify(half, stats) {
            found.entry(c.poly.clone()).or_insert(c);
        }
        return;
    }
    let b = limits[level];
    for v in -b..=b {
        half[level] = v;
        coefficient_walk(plan, limits, level + 1, half, cases, stats, found);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(desc: &[i64]) -> IntPoly {
        IntPoly::from_descending(desc)
    }

    #[test]
    fn seed_family_roots() {
        let r3 = RootBound::seed_for_genus(3).value;
        assert!((r3 - 1.465_571_231_876_768).abs() < 1e-12);
        let r4 = RootBound::seed_for_genus(4).value;
        assert!((r4 - 1.343_719_995_6).abs() < 1e-9);
    }

    #[test]
    fn box_formula() {
        let plan = SearchPlan::new(3, RootBound::seed_for_genus(3)).unwrap();
        let t: Vec<i64> = (1..=3).map(|k| plan.trace_bound(k)).collect();
        assert_eq!(
            plan.box_size(),
            ((t[0] + 1) * (2 * t[1] + 1) * (2 * t[2] + 1)) as u64
        );
        let counts = count_trace_cases(3, &RootBound::seed_for_genus(3)).unwrap();
        assert_eq!(counts.total, plan.box_size());
        assert_eq!(counts.total, counts.fractional + counts.surviving);
    }

    #[test]
    fn genus_one_counts_by_hand() {
        let b = RootBound::from_value(1.01).unwrap();
        let c = count_trace_cases(1, &b).unwrap();
        let t1 = libm::floor(1.01 + 1.0 / 1.01) as u64;
        assert_eq!(c.total, t1 + 1);
        assert_eq!(c.surviving, t1 + 1);
    }

    #[test]
    fn genus_three_table() {
        let set =
            enumerate_candidates(3, &RootBound::from_poly(poly(&[1, -1, 0, -1])).unwrap()).unwrap();
        let polys: Vec<IntPoly> = set
            .candidates
            .iter()
            .map(|c| c.poly.to_int_poly())
            .collect();
        let p1 = poly(&[1, 0, -1, -1]).mul(&poly(&[1, 1, 0, -1]));
        assert_eq!(polys, vec![p1, poly(&[1, 0, -1, -1, -1, 0, 1])]);
        assert!((set.candidates[0].root - 1.324_72).abs() < 1e-5);
        assert!((set.candidates[1].root - 1.401_27).abs() < 1e-5);
    }

    #[test]
    fn sign_normalization() {
        assert!(sign_normalized(&[1, -5, -3]));
        assert!(!sign_normalized(&[-1, 5, 3]));
        assert!(sign_normalized(&[0, -5, 3]));
        assert!(!sign_normalized(&[0, 5, -3]));
        assert!(sign_normalized(&[0, 5, 0]));
    }

    #[test]
    fn coefficient_bound_formulas() {
        let r: f64 = 1.3;
        let t = r + 1.0 / r;
        let b = coefficient_bounds(3, r);
        assert_eq!(b[0], libm::floor(3.0 * t) as i64);
        assert_eq!(b[1], libm::floor(3.0 * (t * t + 1.0)) as i64);
        assert_eq!(b[2], libm::floor(t * (t * t + 6.0)) as i64);
    }
}
