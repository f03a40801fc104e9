//! Interval exchanges, Rauzy–Veech induction and pseudo-Anosov certificates
//! built from closed loops in a Rauzy class.
//!
//! A permutation is stored as its bottom row, with the top row relabeled to
//! read `1..d`. Transition matrices act on lengths by `λ_old = A·λ_new` and a
//! loop's matrix is the ordered product `A₁A₂⋯Aₙ`.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_rational::BigRational;

use crate::factor;
use crate::lefschetz::{LefschetzError, Stratum};
use crate::matrix::IntMatrix;
use crate::numfield::{solve_eigenvector, FieldElement, NumFieldError, NumberField};
use crate::poly::IntPoly;
use crate::roots::complex_roots;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RauzyError {
    #[error("not a permutation of 1..{0}")]
    NotPermutation(usize),
    #[error("permutation is reducible at {0}")]
    Reducible(usize),
    #[error("compared lengths are equal")]
    DegenerateStep,
    #[error("length vector has {got} entries, expected {expected}")]
    LengthCount { expected: usize, got: usize },
    #[error("path does not return to its base permutation")]
    NotClosed,
    #[error("loop matrix is not primitive")]
    NotPrimitive,
    #[error("eigenvectors violate the suspension inequalities")]
    SuspensionFails,
    #[error("broken lines intersect")]
    SelfIntersection,
    #[error("piece {0} lists vertex tuples of different lengths or bad indices")]
    MalformedTable(usize),
    #[error("matrix entries overflow")]
    Overflow,
    #[error("no dominant eigenvalue")]
    NoPerronRoot,
    #[error(transparent)]
    Field(#[from] NumFieldError),
    #[error(transparent)]
    Stratum(#[from] LefschetzError),
}

/// Edge type of a Rauzy–Veech step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StepType {
    /// The top interval is longer.
    Top,
    /// The bottom interval is longer.
    Bottom,
}

impl StepType {
    pub fn from_digit(d: u8) -> Option<StepType> {
        match d {
            0 => Some(StepType::Top),
            1 => Some(StepType::Bottom),
            _ => None,
        }
    }

    pub fn digit(self) -> u8 {
        match self {
            StepType::Top => 0,
            StepType::Bottom => 1,
        }
    }
}

impl fmt::Display for StepType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.digit())
    }
}

/// Irreducible permutation given by its bottom row.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    bottom: Vec<usize>,
}

impl Permutation {
    pub fn new(bottom: Vec<usize>) -> Result<Self, RauzyError> {
        let d = bottom.len();
        let mut seen = vec![false; d + 1];
        for &l in &bottom {
            if l == 0 || l > d || seen[l] {
                return Err(RauzyError::NotPermutation(d));
            }
            seen[l] = true;
        }
        if d < 2 {
            return Err(RauzyError::NotPermutation(d));
        }
        let mut max = 0;
        for (k, &l) in bottom.iter().enumerate().take(d - 1) {
            max = max.max(l);
            if max == k + 1 {
                return Err(RauzyError::Reducible(k + 1));
            }
        }
        Ok(Permutation { bottom })
    }

    pub fn size(&self) -> usize {
        self.bottom.len()
    }

    pub fn bottom(&self) -> &[usize] {
        &self.bottom
    }

    /// 0-based position of `label` in the bottom row.
    pub fn bottom_position(&self, label: usize) -> usize {
        self.bottom
            .iter()
            .position(|&l| l == label)
            .expect("label in range")
    }

    /// Induced permutation and transition matrix for one step.
    pub fn step(&self, kind: StepType) -> (Permutation, IntMatrix) {
        let d = self.size();
        let beta = self.bottom[d - 1];
        let mut a = IntMatrix::identity(d);
        match kind {
            StepType::Top => {
                a.set(d - 1, beta - 1, 1);
                let mut bottom = self.bottom[..d - 1].to_vec();
                let pos = bottom
                    .iter()
                    .position(|&l| l == d)
                    .expect("d in bottom row");
                bottom.insert(pos + 1, beta);
                (Permutation { bottom }, a)
            }
            StepType::Bottom => {
                a.set(beta - 1, d - 1, 1);
                let mut p = IntMatrix::zeros(d, d);
                for old in 1..=d {
                    p.set(old - 1, relabel_bottom_step(old, beta, d) - 1, 1);
                }
                let bottom = self
                    .bottom
                    .iter()
                    .map(|&l| relabel_bottom_step(l, beta, d))
                    .collect();
                (Permutation { bottom }, a.mul(&p))
            }
        }
    }
}

/// After a bottom step the top row reads 1..β, d, β+1..d−1; this maps each
/// old label to its position there.
fn relabel_bottom_step(label: usize, beta: usize, d: usize) -> usize {
    if label <= beta {
        label
    } else if label == d {
        beta + 1
    } else {
        label + 1
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.bottom.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", l)?;
        }
        Ok(())
    }
}

/// Interval lengths that induction can compare and subtract.
pub trait Length: Clone {
    fn compare(&self, other: &Self) -> Ordering;
    fn minus(&self, other: &Self) -> Self;
}

impl Length for f64 {
    fn compare(&self, other: &Self) -> Ordering {
        self.partial_cmp(other).unwrap_or(Ordering::Equal)
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
}

impl Length for i64 {
    fn compare(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
}

impl Length for BigRational {
    fn compare(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
}

impl Length for FieldElement {
    fn compare(&self, other: &Self) -> Ordering {
        self.cmp_value(other)
    }
    fn minus(&self, other: &Self) -> Self {
        self.sub(other)
    }
}

/// Interval exchange; `lengths[l − 1]` is the length of interval `l`.
#[derive(Clone, Debug, PartialEq)]
pub struct IntervalExchange<L> {
    pub perm: Permutation,
    pub lengths: Vec<L>,
}

impl<L: Length> IntervalExchange<L> {
    pub fn new(perm: Permutation, lengths: Vec<L>) -> Result<Self, RauzyError> {
        if lengths.len() != perm.size() {
            return Err(RauzyError::LengthCount {
                expected: perm.size(),
                got: lengths.len(),
            });
        }
        Ok(IntervalExchange { perm, lengths })
    }
}

/// One induction step on an interval exchange.
pub fn rauzy_step<L: Length>(
    iet: &IntervalExchange<L>,
) -> Result<(IntervalExchange<L>, StepType, IntMatrix), RauzyError> {
    let d = iet.perm.size();
    let beta = iet.perm.bottom[d - 1];
    let top = &iet.lengths[d - 1];
    let bot = &iet.lengths[beta - 1];
    let kind = match top.compare(bot) {
        Ordering::Greater => StepType::Top,
        Ordering::Less => StepType::Bottom,
        Ordering::Equal => return Err(RauzyError::DegenerateStep),
    };
    let (perm, matrix) = iet.perm.step(kind);
    let mut lengths = iet.lengths.clone();
    match kind {
        StepType::Top => lengths[d - 1] = top.minus(bot),
        StepType::Bottom => {
            lengths[beta - 1] = bot.minus(top);
            let old = lengths.clone();
            for (o, v) in old.into_iter().enumerate() {
                lengths[relabel_bottom_step(o + 1, beta, d) - 1] = v;
            }
        }
    }
    Ok((IntervalExchange { perm, lengths }, kind, matrix))
}

/// Rauzy class: permutations reachable by induction, with typed edges.
#[derive(Clone, Debug)]
pub struct RauzyClass {
    pub perms: Vec<Permutation>,
    /// `edges[i][t]` is the target of the type-`t` edge out of node `i`.
    pub edges: Vec<[usize; 2]>,
    index: BTreeMap<Permutation, usize>,
}

impl RauzyClass {
    pub fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }

    pub fn index_of(&self, perm: &Permutation) -> Option<usize> {
        self.index.get(perm).copied()
    }

    pub fn contains(&self, perm: &Permutation) -> bool {
        self.index.contains_key(perm)
    }
}

/// Breadth-first closure under both step types.
pub fn build_rauzy_class(perm: &Permutation) -> RauzyClass {
    let mut perms = vec![perm.clone()];
    let mut index = BTreeMap::new();
    index.insert(perm.clone(), 0);
    let mut edges: Vec<[usize; 2]> = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let mut out = [0usize; 2];
        for (t, kind) in [StepType::Top, StepType::Bottom].into_iter().enumerate() {
            let (next, _) = perms[i].step(kind);
            let j = match index.get(&next) {
                Some(&j) => j,
                None => {
                    let j = perms.len();
                    index.insert(next.clone(), j);
                    perms.push(next);
                    queue.push_back(j);
                    j
                }
            };
            out[t] = j;
        }
        if edges.len() <= i {
            edges.resize(i + 1, [0, 0]);
        }
        edges[i] = out;
    }
    RauzyClass {
        perms,
        edges,
        index,
    }
}

/// Closed path in a Rauzy class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RauzyLoop {
    pub base: Permutation,
    pub path: Vec<StepType>,
}

impl RauzyLoop {
    /// Walks the path, returning the end permutation and the product matrix.
    pub fn walk(&self) -> Result<(Permutation, IntMatrix), RauzyError> {
        let mut cur = self.base.clone();
        let mut r = IntMatrix::identity(cur.size());
        for &kind in &self.path {
            let (next, a) = cur.step(kind);
            r = r.checked_mul(&a).map_err(|_| RauzyError::Overflow)?;
            cur = next;
        }
        Ok((cur, r))
    }

    pub fn path_string(&self) -> alloc::string::String {
        let mut s = alloc::string::String::new();
        for (i, t) in self.path.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            s.push(if t.digit() == 0 { '0' } else { '1' });
        }
        s
    }
}

/// Ordered product of the transition matrices along a closed loop.
pub fn loop_matrix(lp: &RauzyLoop) -> Result<IntMatrix, RauzyError> {
    let (end, r) = lp.walk()?;
    if end != lp.base {
        return Err(RauzyError::NotClosed);
    }
    Ok(r)
}

/// Largest modulus among the roots of `p`.
fn spectral_radius(p: &IntPoly) -> f64 {
    complex_roots(p)
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

/// True when `target(±X)` divides `charpoly(X^k)` for some `k ≤ 4`.
pub fn matches_target(charpoly: &IntPoly, target: &IntPoly) -> bool {
    let neg = target.negate_variable();
    (1..=4).any(|k| {
        let c = charpoly.compose_power(k);
        c.div_exact(target).is_some() || c.div_exact(&neg).is_some()
    })
}

/// Closed loops of length `1..=max_len` whose matrix matches `target`
/// (see [`matches_target`]), from every base in the class or only from
/// `base`. Branches whose partial product already has a smallest row sum
/// above `ρ(target)⁴` are pruned, so loops with a larger Perron root are not
/// reported.
pub fn search_loops(
    class: &RauzyClass,
    target: &IntPoly,
    max_len: usize,
    base: Option<usize>,
) -> Vec<RauzyLoop> {
    let mut out = Vec::new();
    if max_len == 0 || class.is_empty() {
        return out;
    }
    let limit = libm::pow(spectral_radius(target), 4.0) * (1.0 + 1e-9);
    let bases: Vec<usize> = match base {
        Some(b) => vec![b],
        None => (0..class.len()).collect(),
    };
    // Reverse adjacency for distance-to-base pruning.
    let mut reverse: Vec<Vec<usize>> = vec![Vec::new(); class.len()];
    for (i, e) in class.edges.iter().enumerate() {
        for &j in e {
            reverse[j].push(i);
        }
    }
    for b in bases {
        let dist = distances_to(&reverse, b);
        let d = class.perms[b].size();
        let mut path = Vec::new();
        let mut stack_m = vec![IntMatrix::identity(d)];
        dfs(
            class,
            b,
            b,
            max_len,
            limit,
            &dist,
            &mut path,
            &mut stack_m,
            target,
            &mut out,
        );
    }
    out
}

fn distances_to(reverse: &[Vec<usize>], target: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; reverse.len()];
    dist[target] = 0;
    let mut q = VecDeque::from([target]);
    while let Some(v) = q.pop_front() {
        for &u in &reverse[v] {
            if dist[u] == usize::MAX {
                dist[u] = dist[v] + 1;
                q.push_back(u);
            }
        }
    }
    dist
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    class: &RauzyClass,
    base: usize,
    node: usize,
    remaining: usize,
    limit: f64,
    dist: &[usize],
    path: &mut Vec<StepType>,
    mats: &mut Vec<IntMatrix>,
    target: &IntPoly,
    out: &mut Vec<RauzyLoop>,
) {
    if remaining == 0 {
        return;
    }
    for (t, kind) in [StepType::Top, StepType::Bottom].into_iter().enumerate() {
        let next = class.edges[node][t];
        if dist[next] == usize::MAX || dist[next] > remaining - 1 {
            continue;
        }
        let (_, a) = class.perms[node].step(kind);
        let Ok(m) = mats.last().expect("stack").checked_mul(&a) else {
            continue;
        };
        if m.min_row_sum() as f64 > limit {
            continue;
        }
        path.push(kind);
        if next == base {
            if let Ok(chi) = m.charpoly() {
                if matches_target(&chi, target) {
                    out.push(RauzyLoop {
                        base: class.perms[base].clone(),
                        path: path.clone(),
                    });
                }
            }
        }
        mats.push(m);
        dfs(
            class,
            base,
            next,
            remaining - 1,
            limit,
            dist,
            path,
            mats,
            target,
            out,
        );
        mats.pop();
        path.pop();
    }
}

/// A point of the plane with exact coordinates.
pub type Vertex = (FieldElement, FieldElement);

fn vadd(a: &Vertex, b: &Vertex) -> Vertex {
    (a.0.add(&b.0), a.1.add(&b.1))
}

fn vsub(a: &Vertex, b: &Vertex) -> Vertex {
    (a.0.sub(&b.0), a.1.sub(&b.1))
}

/// Translation surface polygon of a suspension.
#[derive(Clone, Debug)]
pub struct Polygon {
    /// `vertices[0]` is the origin; the top broken line runs through
    /// `vertices[0..=d]`, the bottom one comes back through `vertices[d..]`.
    pub vertices: Vec<Vertex>,
    /// Vertex classes under the edge gluings, with cone angles in units of π.
    pub corners: Vec<(Vec<usize>, i64)>,
    pub stratum: Stratum,
}

/// Checks the suspension inequalities for `ζ = (λ, τ)` over `perm`.
pub fn is_suspension(perm: &Permutation, lambda: &[FieldElement], tau: &[FieldElement]) -> bool {
    let d = perm.size();
    if lambda.iter().any(|l| l.sign_of() <= 0) {
        return false;
    }
    let field = tau[0].field().clone();
    let mut top = FieldElement::zero(&field);
    let mut bot = FieldElement::zero(&field);
    for k in 0..d - 1 {
        top = top.add(&tau[k]);
        bot = bot.add(&tau[perm.bottom[k] - 1]);
        if top.sign_of() <= 0 || bot.sign_of() >= 0 {
            return false;
        }
    }
    true
}

/// Polygon of the suspension `ζ_j = (λ_j, τ_j)` with its vertex classes and
/// stratum.
pub fn build_polygon(
    perm: &Permutation,
    lambda: &[FieldElement],
    tau: &[FieldElement],
) -> Result<Polygon, RauzyError> {
    let d = perm.size();
    if lambda.len() != d || tau.len() != d {
        return Err(RauzyError::LengthCount {
            expected: d,
            got: lambda.len().min(tau.len()),
        });
    }
    if !is_suspension(perm, lambda, tau) {
        return Err(RauzyError::SelfIntersection);
    }
    let field = lambda[0].field().clone();
    let zeta: Vec<Vertex> = (0..d)
        .map(|j| (lambda[j].clone(), tau[j].clone()))
        .collect();
    let origin = (FieldElement::zero(&field), FieldElement::zero(&field));
    let mut vertices = vec![origin];
    for z in &zeta {
        let next = vadd(vertices.last().expect("nonempty"), z);
        vertices.push(next);
    }
    for k in 1..d {
        let prev = vertices.last().expect("nonempty").clone();
        vertices.push(vsub(&prev, &zeta[perm.bottom[d - k] - 1]));
    }

    // Polygon index of the point after `m` bottom edges from the origin.
    let bottom_vertex = |m: usize| if m == 0 || m == d { m } else { 2 * d - m };
    let mut uf: Vec<usize> = (0..2 * d).collect();
    fn find(uf: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while uf[r] != r {
            r = uf[r];
        }
        let mut c = x;
        while uf[c] != r {
            let n = uf[c];
            uf[c] = r;
            c = n;
        }
        r
    }
    for j in 1..=d {
        let m = perm.bottom_position(j);
        for (a, b) in [(j - 1, bottom_vertex(m)), (j, bottom_vertex(m + 1))] {
            let (ra, rb) = (find(&mut uf, a), find(&mut uf, b));
            uf[ra] = rb;
        }
    }

    // Interior angles, walking counterclockwise: origin, bottom line, then
    // the top line backwards.
    let pts: Vec<(f64, f64)> = vertices
        .iter()
        .map(|(x, y)| (x.to_f64(), y.to_f64()))
        .collect();
    let mut order: Vec<usize> = vec![0];
    order.extend((d + 1..2 * d).rev());
    order.extend((1..=d).rev());
    let n = order.len();
    let mut angle = vec![0.0f64; 2 * d];
    for i in 0..n {
        let prev = pts[order[(i + n - 1) % n]];
        let cur = pts[order[i]];
        let next = pts[order[(i + 1) % n]];
        let e1 = (cur.0 - prev.0, cur.1 - prev.1);
        let e2 = (next.0 - cur.0, next.1 - cur.1);
        let turn = libm::atan2(e1.0 * e2.1 - e1.1 * e2.0, e1.0 * e2.0 + e1.1 * e2.1);
        angle[order[i]] = core::f64::consts::PI - turn;
    }
    let mut classes: BTreeMap<usize, (Vec<usize>, f64)> = BTreeMap::new();
    for (v, a) in angle.iter().enumerate() {
        let r = find(&mut uf, v);
        let e = classes.entry(r).or_insert((Vec::new(), 0.0));
        e.0.push(v);
        e.1 += a;
    }
    let mut corners = Vec::new();
    let mut degrees = Vec::new();
    for (_, (members, total)) in classes {
        let units = libm::round(total / core::f64::consts::PI) as i64;
        let k = units - 2;
        if k > 0 {
            degrees.push(k as u32);
        }
        corners.push((members, units));
    }
    let stratum = Stratum::new(degrees)?;
    Ok(Polygon {
        vertices,
        corners,
        stratum,
    })
}

/// Image of the vertices under `(x, y) ↦ (x/a, a·y)`.
pub fn apply_derivative(vertices: &[Vertex], a: &FieldElement) -> Result<Vec<Vertex>, RauzyError> {
    let inv = a.inv()?;
    Ok(vertices
        .iter()
        .map(|(x, y)| (x.mul(&inv), y.mul(a)))
        .collect())
}

/// Corresponding pieces of two polygons, as 1-based vertex indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub source: Vec<usize>,
    pub image: Vec<usize>,
}

/// True when each piece of `image` maps onto the matching piece of `source`
/// by a single translation.
pub fn verify_translation_pieces(
    source: &[Vertex],
    image: &[Vertex],
    table: &[Piece],
) -> Result<bool, RauzyError> {
    for (i, piece) in table.iter().enumerate() {
        let ok_idx = |v: &[usize], n: usize| v.iter().all(|&k| k >= 1 && k <= n);
        if piece.source.len() != piece.image.len()
            || piece.source.is_empty()
            || !ok_idx(&piece.source, source.len())
            || !ok_idx(&piece.image, image.len())
        {
            return Err(RauzyError::MalformedTable(i + 1));
        }
    }
    Ok(table.iter().all(|piece| {
        let shift = vsub(&source[piece.source[0] - 1], &image[piece.image[0] - 1]);
        piece
            .source
            .iter()
            .zip(&piece.image)
            .all(|(&p, &q)| vsub(&source[p - 1], &image[q - 1]) == shift)
    }))
}

/// Field in which to express a certificate: the root of `minpoly` near
/// `approx` is `α`, and the loop's Perron eigenvalue is `α^power`.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldSpec {
    pub minpoly: IntPoly,
    pub approx: f64,
    pub power: u32,
}

/// Exact certificate for the pseudo-Anosov map of a Rauzy loop.
#[derive(Clone, Debug)]
pub struct PseudoAnosovCertificate {
    pub rauzy_loop: RauzyLoop,
    pub matrix: IntMatrix,
    pub charpoly: IntPoly,
    pub field: Arc<NumberField>,
    /// Generator `α` of the field.
    pub generator: FieldElement,
    /// Perron eigenvalue of the loop matrix.
    pub dilatation: FieldElement,
    /// Derivative `diag(dilatation⁻¹, dilatation)`.
    pub derivative: (FieldElement, FieldElement),
    pub lambda: Vec<FieldElement>,
    pub tau: Vec<FieldElement>,
    pub polygon: Polygon,
}

impl PseudoAnosovCertificate {
    pub fn stratum(&self) -> &Stratum {
        &self.polygon.stratum
    }

    pub fn dilatation_f64(&self) -> f64 {
        self.dilatation.to_f64()
    }
}

/// Builds the Veech certificate of a closed loop: exact Perron eigenvectors
/// for `ρ` and `ρ⁻¹` (last coordinate normalized to `±1`), the suspension
/// check and the polygon with its stratum.
pub fn veech_certificate(
    lp: &RauzyLoop,
    spec: Option<&FieldSpec>,
) -> Result<PseudoAnosovCertificate, RauzyError> {
    let r = loop_matrix(lp)?;
    if !r.is_primitive() {
        return Err(RauzyError::NotPrimitive);
    }
    let chi = r.charpoly().map_err(|_| RauzyError::Overflow)?;
    let rho = complex_roots(&chi)
        .into_iter()
        .filter(|z| z.im.abs() < 1e-7 && z.re > 0.0)
        .map(|z| z.re)
        .fold(f64::NAN, f64::max);
    if !rho.is_finite() {
        return Err(RauzyError::NoPerronRoot);
    }
    let (field, generator, dilatation) = match spec {
        Some(s) => {
            let field = NumberField::from_approx(s.minpoly.clone(), s.approx)?;
            let g = FieldElement::generator(&field);
            let dil = g.pow(s.power as i32)?;
            (field, g, dil)
        }
        None => {
            let minpoly =
                factor::irreducible_factor_at(&chi, rho).ok_or(RauzyError::NoPerronRoot)?;
            let field = NumberField::from_approx(minpoly, rho)?;
            let g = FieldElement::generator(&field);
            (field, g.clone(), g)
        }
    };
    let d = r.rows();
    let lambda = solve_eigenvector(&r, &dilatation, d - 1)?;
    let inv = dilatation.inv()?;
    let tau_pos = solve_eigenvector(&r, &inv, d - 1)?;
    let tau_neg: Vec<FieldElement> = tau_pos.iter().map(|t| t.neg()).collect();
    let tau = if is_suspension(&lp.base, &lambda, &tau_pos) {
        tau_pos
    } else if is_suspension(&lp.base, &lambda, &tau_neg) {
        tau_neg
    } else {
        return Err(RauzyError::SuspensionFails);
    };
    let polygon = build_polygon(&lp.base, &lambda, &tau)?;
    Ok(PseudoAnosovCertificate {
        rauzy_loop: lp.clone(),
        matrix: r,
        charpoly: chi,
        derivative: (inv, dilatation.clone()),
        field,
        generator,
        dilatation,
        lambda,
        tau,
        polygon,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn validation() {
        assert_eq!(Permutation::new(vec![1, 2]), Err(RauzyError::Reducible(1)));
        assert_eq!(
            Permutation::new(vec![2, 2]),
            Err(RauzyError::NotPermutation(2))
        );
        assert!(Permutation::new(vec![2, 1]).is_ok());
        assert_eq!(
            Permutation::new(vec![3, 1, 2, 4]),
            Err(RauzyError::Reducible(3))
        );
    }

    #[test]
    fn torus_step() {
        let iet = IntervalExchange::new(perm(&[2, 1]), vec![2i64, 1]).unwrap();
        let (next, kind, m) = rauzy_step(&iet).unwrap();
        assert_eq!(kind, StepType::Bottom);
        assert_eq!(next.lengths, vec![1, 1]);
        assert_eq!(m.mul_vec(&next.lengths), iet.lengths);
        assert_eq!(rauzy_step(&next).unwrap_err(), RauzyError::DegenerateStep);
    }

    #[test]
    fn torus_class() {
        let c = build_rauzy_class(&perm(&[2, 1]));
        assert_eq!(c.len(), 1);
        assert_eq!(c.edges[0], [0, 0]);
    }

    #[test]
    fn empty_loop_is_identity() {
        let lp = RauzyLoop {
            base: perm(&[4, 3, 2, 1]),
            path: vec![],
        };
        assert_eq!(loop_matrix(&lp).unwrap(), IntMatrix::identity(4));
        let lp = RauzyLoop {
            base: perm(&[4, 3, 2, 1]),
            path: vec![StepType::Top],
        };
        assert_eq!(loop_matrix(&lp).unwrap_err(), RauzyError::NotClosed);
    }

    #[test]
    fn torus_loop_has_no_certificate() {
        let lp = RauzyLoop {
            base: perm(&[2, 1]),
            path: vec![StepType::Top],
        };
        assert_eq!(
            veech_certificate(&lp, None).unwrap_err(),
            RauzyError::NotPrimitive
        );
    }
}
