//! Reciprocal polynomials: Newton conversions between traces and
//! coefficients, Perron-root analysis, Mahler measure, cyclotomic and
//! symplectic-irreducibility checks.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::factor;
use crate::poly::IntPoly;
use crate::roots;

/// Monic reciprocal integer polynomial of degree `2g`, stored by its first
/// half `a_1..a_g` (with `a_0 = 1` implied and `a_{2g−k} = a_k`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReciprocalPolynomial {
    half: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("degree must be even and at least 2")]
    BadDegree,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("coefficients are not palindromic")]
    NotReciprocal,
    #[error("trace vector gives a non-integer coefficient a_{0}")]
    NonInteger(usize),
    #[error("trace vector length {len} does not match degree {degree}")]
    LengthMismatch { len: usize, degree: usize },
}

impl ReciprocalPolynomial {
    /// From the half coefficients `a_1..a_g`; `g ≥ 1`.
    pub fn new(half: Vec<i64>) -> Result<Self, PolyError> {
        if half.is_empty() {
            return Err(PolyError::BadDegree);
        }
        Ok(ReciprocalPolynomial { half })
    }

    pub fn from_int_poly(p: &IntPoly) -> Result<Self, PolyError> {
        let n = p.degree();
        if n < 2 || n % 2 == 1 {
            return Err(PolyError::BadDegree);
        }
        if !p.is_monic() {
            return Err(PolyError::NotMonic);
        }
        if !p.is_palindromic() {
            return Err(PolyError::NotReciprocal);
        }
        let c = p.descending();
        Ok(ReciprocalPolynomial {
            half: c[1..=n / 2].to_vec(),
        })
    }

    pub fn genus(&self) -> usize {
        self.half.len()
    }

    pub fn degree(&self) -> usize {
        2 * self.half.len()
    }

    /// Half coefficients `a_1..a_g`.
    pub fn half_coeffs(&self) -> &[i64] {
        &self.half
    }

    /// Coefficient `a_k` of `x^{n−k}`, for `0 ≤ k ≤ n`.
    pub fn a(&self, k: usize) -> i64 {
        let n = self.degree();
        let k = if k > n / 2 { n - k } else { k };
        if k == 0 {
            1
        } else {
            self.half[k - 1]
        }
    }

    /// Full coefficient list `a_0..a_n` in descending powers.
    pub fn full_descending(&self) -> Vec<i64> {
        (0..=self.degree()).map(|k| self.a(k)).collect()
    }

    pub fn to_int_poly(&self) -> IntPoly {
        IntPoly::from_descending(&self.full_descending())
    }

    /// `P(−X)`; monic since the degree is even.
    pub fn negate_variable(&self) -> ReciprocalPolynomial {
        let half = self
            .half
            .iter()
            .enumerate()
            .map(|(i, &a)| if (i + 1) % 2 == 1 { -a } else { a })
            .collect();
        ReciprocalPolynomial { half }
    }

    /// Power sums `p_1..p_count` of the roots.
    pub fn traces(&self, count: usize) -> Vec<i128> {
        traces_from_coeffs(self, count)
    }

    /// Trace polynomial `q` with `x^{−g} P(x) = q(x + 1/x)`, ascending.
    pub fn trace_polynomial(&self) -> IntPoly {
        let g = self.genus();
        // Chebyshev-like basis: T_0 = 2, T_1 = y, T_{k+1} = y·T_k − T_{k−1}.
        let mut t_prev = IntPoly::new(vec![2]);
        let mut t_cur = IntPoly::monomial(1);
        let mut q = IntPoly::new(vec![self.a(g)]);
        let y = IntPoly::monomial(1);
        for k in 1..=g {
            q = q.add(&t_cur.scale(self.a(g - k)));
            let next = y.mul(&t_cur).sub(&t_prev);
            t_prev = t_cur;
            t_cur = next;
        }
        q
    }
}

impl fmt::Display for ReciprocalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_int_poly(), f)
    }
}

/// Power sums `p_1..p_count` from Newton's identities. Beyond the degree the
/// full linear recurrence with all coefficients applies.
pub fn traces_from_coeffs(poly: &ReciprocalPolynomial, count: usize) -> Vec<i128> {
    let n = poly.degree();
    let a: Vec<i128> = (0..=n).map(|k| poly.a(k) as i128).collect();
    let mut p: Vec<i128> = vec![0; count + 1];
    for k in 1..=count {
        let mut s: i128 = if k <= n { -(k as i128) * a[k] } else { 0 };
        for m in 1..k.min(n + 1) {
            s -= a[m] * p[k - m];
        }
        p[k] = s;
    }
    p.remove(0);
    p
}

/// Inverts Newton's identities: `k·a_k = −p_k − Σ_{m<k} a_m p_{k−m}` for
/// `k ≤ g`, then fills the second half by reciprocity.
pub fn coeffs_from_traces(
    traces: &[i128],
    degree: usize,
) -> Result<ReciprocalPolynomial, PolyError> {
    if degree < 2 || degree % 2 == 1 {
        return Err(PolyError::BadDegree);
    }
    if traces.len() * 2 != degree {
        return Err(PolyError::LengthMismatch {
            len: traces.len(),
            degree,
        });
    }
    let g = traces.len();
    let mut a: Vec<i128> = vec![0; g + 1];
    a[0] = 1;
    for k in 1..=g {
        let mut s = -traces[k - 1];
        for m in 1..k {
            s -= a[m] * traces[k - m - 1];
        }
        if s % k as i128 != 0 {
            return Err(PolyError::NonInteger(k));
        }
        a[k] = s / k as i128;
    }
    let half = a[1..].iter().map(|&x| x as i64).collect();
    ReciprocalPolynomial::new(half)
}

/// `floor((degree/2)·(r^k + r^{−k}))`, with a tiny upward nudge so that
/// rounding in `pow` never loses a lattice point sitting on the bound.
pub fn trace_bound(degree: usize, r: f64, k: usize) -> i64 {
    let v = (degree as f64 / 2.0) * (libm::pow(r, k as f64) + libm::pow(r, -(k as f64)));
    libm::floor(v * (1.0 + 1e-12) + 1e-9) as i64
}

/// Settings for [`perron_analysis`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PerronConfig {
    /// Relative tolerance of the Newton polish.
    pub tol: f64,
    /// Newton iteration cap before falling back to bisection.
    pub max_iter: usize,
    /// Newton seed for the dominant modulus; usually the search bound.
    pub seed: Option<f64>,
    /// Root moduli closer than this to the maximum count as ties.
    pub gap_threshold: f64,
}

impl Default for PerronConfig {
    fn default() -> Self {
        PerronConfig {
            tol: 1e-9,
            max_iter: 50,
            seed: None,
            gap_threshold: 1e-7,
        }
    }
}

/// Description of the largest roots of a polynomial.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootProfile {
    /// The dominant root when real (signed), else its modulus.
    pub dominant_value: f64,
    pub dominant_modulus: f64,
    pub dominant_is_real: bool,
    pub strictly_dominant: bool,
    pub simple: bool,
    /// `|ρ| − |next root|`.
    pub modulus_gap: f64,
    pub outside_unit_circle: bool,
}

impl RootProfile {
    /// Real, simple, strictly dominant, outside the unit circle.
    pub fn is_perron(&self) -> bool {
        self.dominant_is_real && self.strictly_dominant && self.simple && self.outside_unit_circle
    }
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum PerronError {
    #[error("Newton iteration for the dominant root did not converge")]
    NoConvergence,
    #[error("two root moduli within {gap:e} of the maximum {modulus}")]
    AmbiguousDominance { modulus: f64, gap: f64 },
    #[error("constant polynomial has no roots")]
    NoRoots,
}

/// Perron analysis of a reciprocal polynomial.
pub fn perron_analysis(
    poly: &ReciprocalPolynomial,
    config: &PerronConfig,
) -> Result<RootProfile, PerronError> {
    analyze_roots(&poly.to_int_poly(), config)
}

/// Perron analysis for any integer polynomial of positive degree.
///
/// Roots are computed on the squarefree part, where Aberth iteration is
/// accurate; multiplicity is read off `gcd(P, P')`. The top modulus cluster
/// is then classified: a lone root is polished by Newton from the seed; a
/// conjugate pair or a `±r` pair (confirmed exactly through
/// `gcd(P, P(−X))`) is reported as non-dominant; anything else is ambiguous.
pub fn analyze_roots(p: &IntPoly, config: &PerronConfig) -> Result<RootProfile, PerronError> {
    if p.degree() == 0 {
        return Err(PerronError::NoRoots);
    }
    let repeated = p.repeated_part();
    let sqf = match &repeated {
        None => p.clone(),
        Some(_) => p.squarefree_part(),
    };
    let mut rts = roots::complex_roots(&sqf);
    rts.sort_by(|a, b| b.norm().total_cmp(&a.norm()));
    let top = rts[0];
    let m0 = top.norm();
    let thr = config.gap_threshold * m0.max(1.0);
    let cluster: Vec<Complex64> = rts
        .iter()
        .copied()
        .filter(|z| m0 - z.norm() <= thr)
        .collect();
    let next_modulus = rts
        .iter()
        .map(|z| z.norm())
        .find(|&m| m0 - m > thr)
        .unwrap_or(0.0);
    let is_real = |z: &Complex64| z.im.abs() <= 1e-7 * z.norm().max(1.0);
    let is_multiple = |x: f64| match &repeated {
        None => false,
        Some(r) => roots::complex_roots(r)
            .iter()
            .any(|z| (*z - Complex64::new(x, 0.0)).norm() <= 1e-6 * x.abs().max(1.0)),
    };

    if cluster.len() == 1 {
        let sign = if top.re >= 0.0 { 1.0 } else { -1.0 };
        let oriented = if sign > 0.0 {
            sqf.clone()
        } else {
            sqf.negate_variable()
        };
        let hi = config
            .seed
            .map_or(m0 * (1.0 + 1e-3) + 1e-3, |s| s.max(m0 * (1.0 + 1e-9)));
        let lo = next_modulus.max(m0 * (1.0 - 1e-4));
        let root = roots::newton_real(&oriented, hi, lo, hi, config.tol, config.max_iter)
            .ok_or(PerronError::NoConvergence)?;
        if (root.value - m0).abs() > 1e-6 * m0.max(1.0) {
            return Err(PerronError::NoConvergence);
        }
        let rho = root.value;
        let simple = !is_multiple(sign * rho);
        return Ok(RootProfile {
            dominant_value: sign * rho,
            dominant_modulus: rho,
            dominant_is_real: true,
            strictly_dominant: true,
            simple,
            modulus_gap: rho - next_modulus,
            outside_unit_circle: rho > 1.0 + config.tol,
        });
    }

    let non_dominant = |real: bool| RootProfile {
        dominant_value: if real {
            cluster.iter().map(|z| z.re).fold(f64::MIN, f64::max)
        } else {
            m0
        },
        dominant_modulus: m0,
        dominant_is_real: real,
        strictly_dominant: false,
        simple: !cluster.iter().any(|z| is_real(z) && is_multiple(z.re)),
        modulus_gap: 0.0,
        outside_unit_circle: m0 > 1.0 + config.tol,
    };

    let reals = cluster.iter().filter(|z| is_real(z)).count();
    if reals == 0 {
        // Only nonreal roots share the top modulus.
        return Ok(non_dominant(false));
    }
    let opposite = sqf.to_qpoly().gcd(&sqf.negate_variable().to_qpoly());
    if opposite.degree() > 0 {
        if let Some(r) = opposite.to_int_poly() {
            let rr = roots::complex_roots(&r);
            if rr
                .iter()
                .any(|z| (z.norm() - m0).abs() <= 1e-6 * m0.max(1.0))
            {
                return Ok(non_dominant(true));
            }
        }
    }
    Err(PerronError::AmbiguousDominance {
        modulus: m0,
        gap: m0 - cluster.iter().map(|z| z.norm()).fold(f64::MAX, f64::min),
    })
}

/// Product of `max(1, |z|)` over the roots.
pub fn mahler_measure(poly: &ReciprocalPolynomial) -> f64 {
    mahler_measure_int(&poly.to_int_poly())
}

/// Mahler measure of an integer polynomial. Repeated factors are peeled off
/// as `M(P) = M(P_sqf)·M(P / P_sqf)` so every root set handed to the root
/// finder is simple.
pub fn mahler_measure_int(p: &IntPoly) -> f64 {
    let lead = (p.leading() as f64).abs();
    let mut rest = p.clone();
    let mut m = 1.0;
    while rest.degree() > 0 {
        let sqf = rest.squarefree_part();
        m *= roots::complex_roots(&sqf)
            .iter()
            .map(|z| z.norm().max(1.0))
            .product::<f64>()
            / (sqf.leading() as f64).abs().max(1.0);
        match rest.div_exact(&sqf) {
            Some(q) => rest = q,
            None => break,
        }
    }
    m * lead
}

/// True iff some cyclotomic polynomial divides `p`.
pub fn has_root_of_unity(p: &IntPoly) -> bool {
    if p.is_zero() {
        return false;
    }
    factor::cyclotomic_indices(p.degree())
        .into_iter()
        .any(|k| p.div_exact(&factor::cyclotomic(k)).is_some())
}

/// True iff `P` is not a product of two nontrivial monic reciprocal integer
/// polynomials. Such factorizations correspond to factorizations of the
/// trace polynomial `q`, so this reduces to irreducibility of `q`.
pub fn symplectically_irreducible(poly: &ReciprocalPolynomial) -> bool {
    factor::is_irreducible(&poly.trace_polynomial())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rp(desc: &[i64]) -> ReciprocalPolynomial {
        ReciprocalPolynomial::from_int_poly(&IntPoly::from_descending(desc)).unwrap()
    }

    #[test]
    fn traces_of_genus_two_minimum() {
        assert_eq!(rp(&[1, -1, -1, -1, 1]).traces(4), vec![1, 3, 7, 7]);
        assert_eq!(rp(&[1, -3, 1]).traces(1), vec![3]);
        // Lucas numbers continue past the degree.
        assert_eq!(rp(&[1, -3, 1]).traces(5), vec![3, 7, 18, 47, 123]);
    }

    #[test]
    fn coefficient_inversion() {
        assert_eq!(
            coeffs_from_traces(&[1, 3], 4).unwrap(),
            rp(&[1, -1, -1, -1, 1])
        );
        assert_eq!(
            coeffs_from_traces(&[0, 0, 0], 6).unwrap(),
            rp(&[1, 0, 0, 0, 0, 0, 1])
        );
        assert_eq!(
            coeffs_from_traces(&[1, 2], 4),
            Err(PolyError::NonInteger(2))
        );
    }

    #[test]
    fn trace_bounds() {
        let r = 1.465_571_231_876_768;
        assert_eq!(trace_bound(6, r, 1), 6);
        assert_eq!(trace_bound(8, 1.000_000_1, 3), 8);
    }

    #[test]
    fn perron_roots() {
        let c = PerronConfig::default();
        let p = perron_analysis(&rp(&[1, -1, -1, -1, 1]), &c).unwrap();
        assert!(p.is_perron());
        assert!((p.dominant_value - 1.722_08).abs() < 1e-5);
        let p = perron_analysis(&rp(&[1, -3, 1]), &c).unwrap();
        assert!((p.dominant_value - 2.618_033_988_749_895).abs() < 1e-12);
        let neg = perron_analysis(&rp(&[1, 0, -1, 1, -1, 0, 1]), &c).unwrap();
        assert!((neg.dominant_value + 1.401_268_367).abs() < 1e-8);
    }

    #[test]
    fn perron_rejects_ties() {
        let c = PerronConfig::default();
        // x^4 - 3x^2 + 1 has roots ±φ, ±1/φ.
        let p = perron_analysis(&rp(&[1, 0, -3, 0, 1]), &c).unwrap();
        assert!(!p.strictly_dominant);
        // (x^2 - 3x + 1)^2: double root.
        let sq = IntPoly::from_descending(&[1, -3, 1]).pow(2);
        let p = analyze_roots(&sq, &c).unwrap();
        assert!(!p.simple);
        // Cyclotomic: all roots on the unit circle, complex top cluster.
        let p = perron_analysis(&rp(&[1, 0, 1, 0, 1]), &c).unwrap();
        assert!(!p.is_perron());
    }

    #[test]
    fn mahler_values() {
        let lehmer = rp(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
        assert!((mahler_measure(&lehmer) - 1.176_280_818).abs() < 1e-8);
        assert!((mahler_measure(&rp(&[1, -3, 1])) - 2.618_033_988).abs() < 1e-8);
        assert!((mahler_measure(&rp(&[1, 1, 1])) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn roots_of_unity() {
        let p1 = IntPoly::from_descending(&[1, 0, -1, -1])
            .mul(&IntPoly::from_descending(&[1, 1, 0, -1]));
        let p2 = p1.mul(&IntPoly::from_descending(&[1, -2, 1]));
        assert!(has_root_of_unity(&p2));
        assert!(!has_root_of_unity(&IntPoly::from_descending(&[
            1, -1, -1, -1, 1
        ])));
        assert!(has_root_of_unity(&IntPoly::from_descending(&[1, 1, 1])));
    }

    #[test]
    fn symplectic_irreducibility() {
        let p1 = IntPoly::from_descending(&[1, 0, -1, -1])
            .mul(&IntPoly::from_descending(&[1, 1, 0, -1]));
        let r1 = ReciprocalPolynomial::from_int_poly(&p1).unwrap();
        assert!(symplectically_irreducible(&r1));
        let p2 = p1.mul(&IntPoly::from_descending(&[1, -2, 1]));
        assert!(!symplectically_irreducible(
            &ReciprocalPolynomial::from_int_poly(&p2).unwrap()
        ));
        assert!(symplectically_irreducible(&rp(&[1, -3, 1])));
    }

    #[test]
    fn trace_polynomial_expands_back() {
        let p = rp(&[1, 0, -1, -1, -1, 0, 1]);
        let q = p.trace_polynomial();
        // x^3 q(x + 1/x) for cubic q, expanded by hand: y^3 - 4y - 1 here.
        assert_eq!(q, IntPoly::from_descending(&[1, 0, -4, -1]));
    }
}
