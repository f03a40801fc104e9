//! Dehn twist words acting on first homology.
//!
//! The basis is `(a₁, b₁, …, a_g, b_g)` with `⟨a_i, b_i⟩ = 1`. The curve
//! `c_i` joining the `i`-th and `(i+1)`-th handles has class `a_i − a_{i+1}`.
//! A twist of power `p` about a curve of class `v` acts by
//! `x ↦ x + p⟨x, v⟩v`, and the leftmost letter of a word acts first.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::matrix::IntMatrix;
use crate::poly::IntPoly;
use crate::polycore::{has_root_of_unity, symplectically_irreducible, ReciprocalPolynomial};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TwistError {
    #[error("bad letter {text:?} at position {position}")]
    BadLetter { position: usize, text: String },
    #[error("generator {0} is out of range for genus {1}")]
    OutOfRange(String, usize),
    #[error("genus must be at least 1")]
    BadGenus,
}

/// Twist curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Curve {
    A(usize),
    B(usize),
    C(usize),
}

impl Curve {
    /// Position in the order a₁, b₁, c₁, a₂, b₂, c₂, …
    fn rank(self) -> usize {
        match self {
            Curve::A(i) => 3 * (i - 1),
            Curve::B(i) => 3 * (i - 1) + 1,
            Curve::C(i) => 3 * (i - 1) + 2,
        }
    }

    fn in_range(self, genus: usize) -> bool {
        match self {
            Curve::A(i) | Curve::B(i) => (1..=genus).contains(&i),
            Curve::C(i) => i >= 1 && i < genus,
        }
    }

    /// Smallest genus containing the curve.
    fn min_genus(self) -> usize {
        match self {
            Curve::A(i) | Curve::B(i) => i,
            Curve::C(i) => i + 1,
        }
    }

    /// Homology class in the basis `(a₁, b₁, …)`.
    pub fn class(self, genus: usize) -> Vec<i64> {
        let mut v = vec![0; 2 * genus];
        match self {
            Curve::A(i) => v[2 * (i - 1)] = 1,
            Curve::B(i) => v[2 * (i - 1) + 1] = 1,
            Curve::C(i) => {
                v[2 * (i - 1)] = 1;
                v[2 * i] = -1;
            }
        }
        v
    }

    fn letter(self) -> (char, usize) {
        match self {
            Curve::A(i) => ('a', i),
            Curve::B(i) => ('b', i),
            Curve::C(i) => ('c', i),
        }
    }
}

/// Twist about a curve with a nonzero power.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub curve: Curve,
    pub power: i32,
}

impl Letter {
    pub fn inverse(self) -> Letter {
        Letter {
            curve: self.curve,
            power: -self.power,
        }
    }

    /// Order used for normal forms: by curve, positive twist first, then by
    /// absolute power.
    fn key(&self) -> (usize, bool, u32) {
        (self.curve.rank(), self.power < 0, self.power.unsigned_abs())
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (c, i) = self.curve.letter();
        let c = if self.power < 0 {
            c.to_ascii_uppercase()
        } else {
            c
        };
        write!(f, "{}{}", c, i)?;
        if self.power.abs() != 1 {
            write!(f, "^{}", self.power.abs())?;
        }
        Ok(())
    }
}

/// Word of twists on a genus-`g` surface.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwistWord {
    pub genus: usize,
    pub letters: Vec<Letter>,
}

impl TwistWord {
    pub fn new(genus: usize, letters: Vec<Letter>) -> Result<Self, TwistError> {
        if genus == 0 {
            return Err(TwistError::BadGenus);
        }
        for l in &letters {
            if !l.curve.in_range(genus) {
                return Err(TwistError::OutOfRange(alloc::format!("{}", l), genus));
            }
        }
        Ok(TwistWord { genus, letters })
    }

    /// Parses `"a1.a1.b1.c1.A2"`; capitals are inverse twists and `x^k`
    /// repeats a letter. Without an explicit genus the smallest one holding
    /// every curve is used.
    pub fn parse(text: &str, genus: Option<usize>) -> Result<Self, TwistError> {
        let mut letters = Vec::new();
        let mut offset = 0;
        let text = text.trim();
        if !text.is_empty() {
            for part in text.split('.') {
                letters.push(parse_letter(part.trim(), offset)?);
                offset += part.len() + 1;
            }
        }
        let needed = letters
            .iter()
            .map(|l| l.curve.min_genus())
            .max()
            .unwrap_or(1);
        TwistWord::new(genus.unwrap_or(needed), letters)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Formal inverse: letters reversed and inverted.
    pub fn inverse(&self) -> TwistWord {
        TwistWord {
            genus: self.genus,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn concat(&self, other: &TwistWord) -> TwistWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        TwistWord {
            genus: self.genus.max(other.genus),
            letters,
        }
    }
}

fn parse_letter(part: &str, offset: usize) -> Result<Letter, TwistError> {
    let bad = || TwistError::BadLetter {
        position: offset,
        text: String::from(part),
    };
    let mut chars = part.chars();
    let head = chars.next().ok_or_else(bad)?;
    let rest: &str = chars.as_str();
    let (index, exp) = match rest.split_once('^') {
        Some((i, e)) => (i, e.parse::<i32>().map_err(|_| bad())?),
        None => (rest, 1),
    };
    let i: usize = index.parse().map_err(|_| bad())?;
    if i == 0 || exp == 0 {
        return Err(bad());
    }
    let curve = match head.to_ascii_lowercase() {
        'a' => Curve::A(i),
        'b' => Curve::B(i),
        'c' => Curve::C(i),
        _ => return Err(bad()),
    };
    let sign = if head.is_ascii_uppercase() { -1 } else { 1 };
    Ok(Letter {
        curve,
        power: sign * exp,
    })
}

impl fmt::Display for TwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            if l.power.abs() == 1 {
                write!(f, "{}", l)?;
            } else {
                // Spelled out so the text round-trips letter by letter.
                let unit = Letter {
                    curve: l.curve,
                    power: l.power.signum(),
                };
                for k in 0..l.power.unsigned_abs() {
                    if k > 0 {
                        f.write_str(".")?;
                    }
                    write!(f, "{}", unit)?;
                }
            }
        }
        Ok(())
    }
}

/// `⟨x, y⟩` in the symplectic basis.
pub fn intersection(x: &[i64], y: &[i64]) -> i64 {
    x.chunks(2)
        .zip(y.chunks(2))
        .map(|(p, q)| p[0] * q[1] - p[1] * q[0])
        .sum()
}

/// Standard symplectic form `J`.
pub fn symplectic_form(genus: usize) -> IntMatrix {
    let mut j = IntMatrix::zeros(2 * genus, 2 * genus);
    for i in 0..genus {
        j.set(2 * i, 2 * i + 1, 1);
        j.set(2 * i + 1, 2 * i, -1);
    }
    j
}

/// Matrix of a single twist.
pub fn letter_matrix(letter: Letter, genus: usize) -> IntMatrix {
    let v = letter.curve.class(genus);
    let n = 2 * genus;
    let mut m = IntMatrix::identity(n);
    for col in 0..n {
        let mut e = vec![0; n];
        e[col] = 1;
        let pair = intersection(&v, &e);
        if pair != 0 {
            for (row, &vr) in v.iter().enumerate() {
                m.set(row, col, m.get(row, col) - letter.power as i64 * pair * vr);
            }
        }
    }
    m
}

/// Homology action `T_last ⋯ T_first`; columns are images of basis vectors.
pub fn word_action(word: &TwistWord) -> IntMatrix {
    word.letters
        .iter()
        .fold(IntMatrix::identity(2 * word.genus), |acc, &l| {
            letter_matrix(l, word.genus).mul(&acc)
        })
}

/// `Mᵀ J M = J`.
pub fn preserves_form(m: &IntMatrix, genus: usize) -> bool {
    let j = symplectic_form(genus);
    m.transpose().mul(&j).mul(m) == j
}

pub fn word_charpoly(word: &TwistWord) -> IntPoly {
    word_action(word)
        .charpoly()
        .expect("twist matrices stay small")
}

/// Largest root modulus of the homology action. A lower bound for the
/// dilatation of any map in the class and equal to it when the invariant
/// foliations are orientable.
pub fn homology_spectral_radius(word: &TwistWord) -> f64 {
    crate::roots::complex_roots(&word_charpoly(word))
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

/// Clause that kept a polynomial from passing the candidacy test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FailedClause {
    NotReciprocal,
    SymplecticallyReducible,
    RootOfUnity,
    /// The polynomial is `Q(X^k)`.
    PolynomialInPower(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    PaCandidate,
    Inconclusive(Vec<FailedClause>),
}

/// Smallest `k > 1` with `p = Q(X^k)`, if any.
fn power_structure(p: &IntPoly) -> Option<usize> {
    let g = p
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(i, &c)| c != 0 && *i > 0)
        .fold(0usize, |g, (i, _)| gcd(g, i));
    if g > 1 {
        (2..=g).find(|k| g % k == 0)
    } else {
        None
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Pseudo-Anosov candidacy of a homology characteristic polynomial:
/// symplectically irreducible, free of roots of unity, and not a polynomial
/// in `X^k` for `k > 1`. Every failed clause is reported.
pub fn casson_bleiler(p: &IntPoly) -> Verdict {
    let mut failed = Vec::new();
    match ReciprocalPolynomial::from_int_poly(p) {
        Ok(r) => {
            if !symplectically_irreducible(&r) {
                failed.push(FailedClause::SymplecticallyReducible);
            }
        }
        Err(_) => failed.push(FailedClause::NotReciprocal),
    }
    if has_root_of_unity(p) {
        failed.push(FailedClause::RootOfUnity);
    }
    if let Some(k) = power_structure(p) {
        failed.push(FailedClause::PolynomialInPower(k));
    }
    if failed.is_empty() {
        Verdict::PaCandidate
    } else {
        Verdict::Inconclusive(failed)
    }
}

/// Unit twists available in genus `g`, in normal-form order.
pub fn alphabet(genus: usize) -> Vec<Letter> {
    let mut out = Vec::new();
    for i in 1..=genus {
        for curve in [Curve::A(i), Curve::B(i), Curve::C(i)] {
            if curve.in_range(genus) {
                out.push(Letter { curve, power: 1 });
                out.push(Letter { curve, power: -1 });
            }
        }
    }
    out.sort();
    out
}

/// Letters whose curves have zero pairing commute in homology.
fn commute_table(letters: &[Letter], genus: usize) -> Vec<Vec<bool>> {
    let classes: Vec<Vec<i64>> = letters.iter().map(|l| l.curve.class(genus)).collect();
    classes
        .iter()
        .map(|x| classes.iter().map(|y| intersection(x, y) == 0).collect())
        .collect()
}

/// Lexicographic normal form in the trace monoid where letters with zero
/// pairing commute.
fn lex_normal_form(word: &[usize], commute: &[Vec<bool>]) -> Vec<usize> {
    let mut rest: Vec<usize> = word.to_vec();
    let mut out = Vec::with_capacity(word.len());
    while !rest.is_empty() {
        // Letters that can be moved to the front; take the smallest.
        let mut best: Option<usize> = None;
        for i in 0..rest.len() {
            if (0..i).all(|j| commute[rest[j]][rest[i]]) && best.is_none_or(|b| rest[i] < rest[b]) {
                best = Some(i);
            }
        }
        let b = best.expect("first letter is always movable");
        out.push(rest.remove(b));
    }
    out
}

/// Representative of the cyclic class: smallest normal form reachable by
/// repeatedly moving a front letter to the back.
fn cyclic_canonical(word: &[usize], commute: &[Vec<bool>]) -> Vec<usize> {
    let start = lex_normal_form(word, commute);
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut stack = vec![start.clone()];
    seen.insert(start);
    while let Some(w) = stack.pop() {
        for i in 0..w.len() {
            if (0..i).all(|j| commute[w[j]][w[i]]) {
                let mut v = w.clone();
                let x = v.remove(i);
                v.push(x);
                let v = lex_normal_form(&v, commute);
                if seen.insert(v.clone()) {
                    stack.push(v);
                }
            }
        }
    }
    seen.into_iter().next().unwrap_or_default()
}

/// Canonical cyclic representative of a word of unit twists; words with
/// larger powers are first spelled out.
pub fn canonical_word(word: &TwistWord) -> TwistWord {
    let letters = alphabet(word.genus);
    let commute = commute_table(&letters, word.genus);
    let idx: Vec<usize> = word
        .letters
        .iter()
        .flat_map(|l| {
            let unit = Letter {
                curve: l.curve,
                power: l.power.signum(),
            };
            let i = letters
                .iter()
                .position(|x| *x == unit)
                .expect("letter in alphabet");
            core::iter::repeat_n(i, l.power.unsigned_abs() as usize)
        })
        .collect();
    let canon = cyclic_canonical(&idx, &commute);
    TwistWord {
        genus: word.genus,
        letters: canon.iter().map(|&i| letters[i]).collect(),
    }
}

/// Cyclically reduced words of length `1..=max_len` over the unit twists
/// whose homology characteristic polynomial is `target` or `target(−X)`.
/// Each conjugacy class in the trace monoid is reported once, by its
/// canonical representative, in sorted order.
///
/// Only words that are their own canonical representative are visited. That
/// representative is lex-minimal among its plain rotations, so the search
/// walks prenecklaces in normal form and checks necklaces.
pub fn search_words(genus: usize, target: &IntPoly, max_len: usize) -> Vec<TwistWord> {
    let mut found = BTreeSet::new();
    for first in 0..alphabet(genus).len() {
        found.extend(search_words_from(genus, target, max_len, first));
    }
    found.into_iter().collect()
}

/// The part of [`search_words`] whose words start with `alphabet(genus)[first]`.
/// Shards can run independently; their union is the full result.
pub fn search_words_from(
    genus: usize,
    target: &IntPoly,
    max_len: usize,
    first: usize,
) -> BTreeSet<TwistWord> {
    let letters = alphabet(genus);
    if max_len == 0 || target.degree() != 2 * genus || first >= letters.len() {
        return BTreeSet::new();
    }
    let n = 2 * genus;
    let commute = commute_table(&letters, genus);
    let sparse: Vec<SparseTwist> = letters
        .iter()
        .map(|&l| SparseTwist::new(l, genus))
        .collect();
    let targets = [target.clone(), target.negate_variable()];
    let traces: Vec<(i64, i64)> = targets
        .iter()
        .map(|t| {
            let d = t.degree();
            let (a1, a2) = (t.coeff(d - 1), t.coeff(d - 2));
            (-a1, a1 * a1 - 2 * a2)
        })
        .collect();
    let mut ctx = SearchCtx {
        n,
        letters: &letters,
        commute: &commute,
        sparse: &sparse,
        targets: &targets,
        traces: &traces,
        max_len,
        stack: vec![0; n * n * (max_len + 1)],
        found: BTreeSet::new(),
    };
    for i in 0..n {
        ctx.stack[i * n + i] = 1;
    }
    let mut word = Vec::with_capacity(max_len);
    ctx.push(&mut word, first, n as i64, 1);
    ctx.found
        .into_iter()
        .map(|w| TwistWord {
            genus,
            letters: w.iter().map(|&i| letters[i]).collect(),
        })
        .collect()
}

/// A unit twist as a rank-one update: `M ↦ M − p·v·(wᵀM)` where
/// `wᵀx = ⟨v, x⟩`.
struct SparseTwist {
    power: i64,
    v: Vec<(usize, i64)>,
    w: Vec<(usize, i64)>,
}

impl SparseTwist {
    fn new(letter: Letter, genus: usize) -> Self {
        let class = letter.curve.class(genus);
        let v: Vec<(usize, i64)> = class
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i, c))
            .collect();
        let mut w = Vec::new();
        for &(i, c) in &v {
            // ⟨v, x⟩ = Σ v₂ₖ x₂ₖ₊₁ − v₂ₖ₊₁ x₂ₖ
            if i % 2 == 0 {
                w.push((i + 1, c));
            } else {
                w.push((i - 1, -c));
            }
        }
        SparseTwist {
            power: letter.power as i64,
            v,
            w,
        }
    }
}

struct SearchCtx<'a> {
    n: usize,
    letters: &'a [Letter],
    commute: &'a [Vec<bool>],
    sparse: &'a [SparseTwist],
    targets: &'a [IntPoly],
    /// `(tr M, tr M²)` of each target.
    traces: &'a [(i64, i64)],
    max_len: usize,
    /// Row-major matrices, one per depth; slot 0 is the identity.
    stack: Vec<i64>,
    found: BTreeSet<Vec<usize>>,
}

impl SearchCtx<'_> {
    /// Applies letter `x` on top of the matrix at the current depth and
    /// explores from there. `trace` is the trace before the letter and
    /// `period` the prenecklace period of the word including `x`.
    fn push(&mut self, word: &mut Vec<usize>, x: usize, trace: i64, period: usize) {
        let n = self.n;
        let depth = word.len();
        let (prev, next) = self.stack.split_at_mut((depth + 1) * n * n);
        let prev = &prev[depth * n * n..];
        let next = &mut next[..n * n];
        next.copy_from_slice(prev);
        let t = &self.sparse[x];
        let mut trace = trace;
        for col in 0..n {
            let pair: i64 = t.w.iter().map(|&(i, c)| c * prev[i * n + col]).sum();
            if pair != 0 {
                let k = t.power * pair;
                for &(i, c) in &t.v {
                    next[i * n + col] -= k * c;
                    if i == col {
                        trace -= k * c;
                    }
                }
            }
        }
        word.push(x);
        let len = word.len();
        if len % period == 0 && self.traces.iter().any(|t| t.0 == trace) {
            let square: i64 = (0..n * n)
                .map(|k| next[k] * next[(k % n) * n + k / n])
                .sum();
            if self.traces.contains(&(trace, square)) {
                let m = IntMatrix::from_rows(&next.chunks(n).collect::<Vec<_>>());
                if m.charpoly().is_ok_and(|chi| self.targets.contains(&chi))
                    && cyclic_canonical(word, self.commute) == *word
                {
                    self.found.insert(word.clone());
                }
            }
        }
        if len < self.max_len {
            let floor = word[len - period];
            for y in floor..self.letters.len() {
                if self.extends(word, y) {
                    self.push(word, y, trace, if y == floor { period } else { len + 1 });
                }
            }
        }
        word.pop();
    }

    /// Appending `x` keeps the word reduced and in lexicographic normal form.
    fn extends(&self, word: &[usize], x: usize) -> bool {
        let inv = self.letters[x].inverse();
        for &y in word.iter().rev() {
            if self.letters[y] == inv {
                return false;
            }
            if !self.commute[y][x] {
                return true;
            }
            if y > x {
                return false;
            }
        }
        true
    }
}
