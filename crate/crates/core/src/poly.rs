//! Dense univariate polynomials over `i64` and over the rationals.
//!
//! Coefficients are stored in ascending order of degree and kept trimmed, so
//! the zero polynomial is the empty vector.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Integer polynomial with ascending coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPoly {
    coeffs: Vec<i64>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    /// Builds a polynomial from coefficients listed from the leading term down.
    pub fn from_descending(coeffs: &[i64]) -> Self {
        let mut v = coeffs.to_vec();
        v.reverse();
        IntPoly::new(v)
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly { coeffs: vec![1] }
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![0; k + 1];
        c[k] = 1;
        IntPoly { coeffs: c }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn descending(&self) -> Vec<i64> {
        let mut v = self.coeffs.clone();
        v.reverse();
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn leading(&self) -> i64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    /// True when the coefficient sequence reads the same in both directions.
    pub fn is_palindromic(&self) -> bool {
        let c = &self.coeffs;
        let n = c.len();
        (0..n / 2).all(|i| c[i] == c[n - 1 - i])
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * x + c as f64)
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| {
                acc * z + Complex64::new(c as f64, 0.0)
            })
    }

    pub fn eval_big(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, &c| acc * x + BigInt::from(c))
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as i64)
                .collect(),
        )
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn scale(&self, s: i64) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn pow(&self, e: u32) -> IntPoly {
        let mut acc = IntPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `P(-X)`.
    pub fn negate_variable(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, &c)| if k % 2 == 1 { -c } else { c })
                .collect(),
        )
    }

    /// `P(X^k)`.
    pub fn compose_power(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![0; self.degree() * k + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i * k] = c;
        }
        IntPoly::new(out)
    }

    /// Quotient and remainder by a divisor with leading coefficient ±1.
    pub fn divrem_unit(&self, divisor: &IntPoly) -> Option<(IntPoly, IntPoly)> {
        let lead = divisor.leading();
        if lead != 1 && lead != -1 {
            return None;
        }
        let dd = divisor.degree();
        if self.is_zero() || self.degree() < dd {
            return Some((IntPoly::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0i64; self.degree() - dd + 1];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd] * lead;
            quot[k] = c;
            if c != 0 {
                for (j, &d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= c * d;
                }
            }
        }
        Some((IntPoly::new(quot), IntPoly::new(rem)))
    }

    /// Exact quotient by a unit-leading divisor, or `None` when it does not divide.
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let (q, r) = self.divrem_unit(divisor)?;
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    pub fn to_qpoly(&self) -> QPoly {
        QPoly::new(
            self.coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    /// Writes the polynomial in the variable `var`, e.g. `x^4 - x^3 + 1`.
    pub fn display_with(&self, var: &str) -> String {
        use core::fmt::Write;
        if self.is_zero() {
            return String::from("0");
        }
        let mut s = String::new();
        for k in (0..self.coeffs.len()).rev() {
            let c = self.coeffs[k];
            if c == 0 {
                continue;
            }
            let first = s.is_empty();
            if first {
                if c < 0 {
                    s.push('-');
                }
            } else {
                s.push_str(if c < 0 { " - " } else { " + " });
            }
            let a = c.unsigned_abs();
            if a != 1 || k == 0 {
                let _ = write!(s, "{}", a);
            }
            match k {
                0 => {}
                1 => s.push_str(var),
                _ => {
                    let _ = write!(s, "{}^{}", var, k);
                }
            }
        }
        s
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("x"))
    }
}

/// Polynomial with arbitrary-precision rational coefficients, ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPoly {
    coeffs: Vec<BigRational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        QPoly::new(vec![c])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        QPoly::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        QPoly::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn neg(&self) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, s: &BigRational) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, divisor: &QPoly) -> (QPoly, QPoly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.degree();
        if self.is_zero() || self.degree() < dd {
            return (QPoly::zero(), self.clone());
        }
        let lead_inv = divisor.leading().recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); self.degree() - dd + 1];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * d;
                }
            }
            quot[k] = c;
        }
        (QPoly::new(quot), QPoly::new(rem))
    }

    pub fn rem(&self, divisor: &QPoly) -> QPoly {
        self.divrem(divisor).1
    }

    pub fn monic(&self) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let inv = self.leading().recip();
        self.scale(&inv)
    }

    /// Monic greatest common divisor (zero when both inputs are zero).
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Returns `(g, s)` with `g = gcd(self, m)` monic and `s·self ≡ g (mod m)`.
    pub fn gcd_cofactor(&self, m: &QPoly) -> (QPoly, QPoly) {
        let (mut r0, mut r1) = (m.clone(), self.rem(m));
        let (mut s0, mut s1) = (QPoly::zero(), QPoly::constant(BigRational::one()));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.is_zero() {
            return (QPoly::zero(), QPoly::zero());
        }
        let inv = r0.leading().recip();
        (r0.scale(&inv), s0.scale(&inv))
    }

    pub fn derivative(&self) -> QPoly {
        QPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Sign of the value at a rational point, as -1, 0 or 1.
    pub fn sign_at(&self, x: &BigRational) -> i32 {
        sign_of_rational(&self.eval(x))
    }

    /// Sign of the leading coefficient, and of the value at -∞.
    fn signs_at_infinity(&self) -> (i32, i32) {
        let s = sign_of_rational(&self.leading());
        let at_neg = if self.degree() % 2 == 0 { s } else { -s };
        (s, at_neg)
    }

    /// Integer polynomial if every coefficient is integral.
    pub fn to_int_poly(&self) -> Option<IntPoly> {
        let mut v = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            if !c.is_integer() {
                return None;
            }
            v.push(c.to_integer().to_i64()?);
        }
        Some(IntPoly::new(v))
    }
}

pub(crate) fn sign_of_rational(x: &BigRational) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

const MOD_P: u64 = 1_000_000_007;

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1u64;
    b %= MOD_P;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % MOD_P;
        }
        b = b * b % MOD_P;
        e >>= 1;
    }
    r
}

fn trim_mod(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Degree of `gcd(P, P')` reduced modulo a large prime. Zero proves `P`
/// squarefree over the rationals when the leading coefficient is a unit
/// modulo the prime.
fn derivative_gcd_degree_mod_p(p: &IntPoly) -> usize {
    let red = |c: i64| c.rem_euclid(MOD_P as i64) as u64;
    let mut a: Vec<u64> = p.coeffs().iter().map(|&c| red(c)).collect();
    let mut b: Vec<u64> = p
        .coeffs()
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| red(c) * (k as u64 % MOD_P) % MOD_P)
        .collect();
    trim_mod(&mut a);
    trim_mod(&mut b);
    while !b.is_empty() {
        // a mod b
        let inv = pow_mod(*b.last().unwrap(), MOD_P - 2);
        while a.len() >= b.len() && !a.is_empty() {
            let shift = a.len() - b.len();
            let c = a.last().unwrap() * inv % MOD_P;
            for (j, &bj) in b.iter().enumerate() {
                a[shift + j] = (a[shift + j] + MOD_P - c * bj % MOD_P) % MOD_P;
            }
            trim_mod(&mut a);
        }
        core::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

impl IntPoly {
    /// `gcd(P, P')` over the rationals, made monic and integral, when it is
    /// nontrivial; `None` for squarefree input.
    pub fn repeated_part(&self) -> Option<IntPoly> {
        if self.degree() < 2 {
            return None;
        }
        let lead = self.leading().rem_euclid(MOD_P as i64);
        if lead != 0 && derivative_gcd_degree_mod_p(self) == 0 {
            return None;
        }
        let q = self.to_qpoly();
        let g = q.gcd(&q.derivative());
        if g.degree() == 0 {
            None
        } else {
            Some(g.to_int_poly().unwrap_or_else(IntPoly::one))
        }
    }

    /// `P / gcd(P, P')`, the product of the distinct irreducible factors.
    pub fn squarefree_part(&self) -> IntPoly {
        match self.repeated_part() {
            None => self.clone(),
            Some(g) => match self.div_exact(&g) {
                Some(s) => s,
                None => {
                    let q = self.to_qpoly();
                    let s = q.divrem(&g.to_qpoly()).0;
                    s.monic().to_int_poly().unwrap_or_else(|| self.clone())
                }
            },
        }
    }
}

/// Sturm chain of a polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<QPoly>,
}

impl SturmChain {
    pub fn new(p: &QPoly) -> Self {
        let mut chain = vec![p.clone()];
        if p.degree() == 0 {
            return SturmChain { chain };
        }
        chain.push(p.derivative());
        loop {
            let n = chain.len();
            let r = chain[n - 2].rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(r.neg());
        }
        SturmChain { chain }
    }

    fn variations(signs: impl Iterator<Item = i32>) -> usize {
        let mut count = 0;
        let mut last = 0;
        for s in signs {
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    fn variations_at(&self, x: &BigRational) -> usize {
        Self::variations(self.chain.iter().map(|p| p.sign_at(x)))
    }

    /// Number of distinct real roots in the half-open interval `(lo, hi]`.
    pub fn count_in(&self, lo: &BigRational, hi: &BigRational) -> usize {
        self.variations_at(lo)
            .saturating_sub(self.variations_at(hi))
    }

    /// Number of distinct real roots.
    pub fn count_real(&self) -> usize {
        let lo = Self::variations(self.chain.iter().map(|p| p.signs_at_infinity().1));
        let hi = Self::variations(self.chain.iter().map(|p| p.signs_at_infinity().0));
        lo.saturating_sub(hi)
    }
}

/// Converts a float to an exact rational (dyadic) value.
pub fn rational_from_f64(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite float")
}

/// Converts a rational to the nearest float.
pub fn rational_to_f64(x: &BigRational) -> f64 {
    let n = x.numer();
    let d = x.denom();
    // Shift both sides so the quotient keeps full precision without overflow.
    let nb = n.bits() as i64;
    let db = d.bits() as i64;
    let shift = nb - db - 60;
    let (n2, d2) = if shift > 0 {
        (n.clone(), d.clone() << (shift as usize))
    } else {
        (n.clone() << ((-shift) as usize), d.clone())
    };
    let q = n2.div_floor(&d2);
    let qf = q.to_f64().unwrap_or(0.0);
    qf * libm::pow(2.0, shift as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn display_round_trip() {
        let p = IntPoly::from_descending(&[1, 0, -1, -1, -1, 0, 1]);
        assert_eq!(p.to_string(), "x^6 - x^4 - x^3 - x^2 + 1");
        assert_eq!(IntPoly::from_descending(&[2, -3]).to_string(), "2x - 3");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }

    #[test]
    fn exact_division() {
        let a = IntPoly::from_descending(&[1, 0, -1, -1]);
        let b = IntPoly::from_descending(&[1, 1, 0, -1]);
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.add(&IntPoly::one()).div_exact(&a), None);
    }

    #[test]
    fn negate_and_compose() {
        let p = IntPoly::from_descending(&[1, 0, 0, -1, -1, -1, 0, 0, 1]);
        assert_eq!(
            p.negate_variable(),
            IntPoly::from_descending(&[1, 0, 0, 1, -1, 1, 0, 0, 1])
        );
        let c = IntPoly::from_descending(&[1, -1]).compose_power(3);
        assert_eq!(c, IntPoly::from_descending(&[1, 0, 0, -1]));
    }

    #[test]
    fn sturm_counts_roots() {
        // (x - 1)(x - 2)(x + 3)
        let p = IntPoly::from_descending(&[1, 0, -7, 6]).to_qpoly();
        let s = SturmChain::new(&p);
        assert_eq!(s.count_real(), 3);
        assert_eq!(s.count_in(&q(0, 1), &q(3, 2)), 1);
        assert_eq!(s.count_in(&q(-4, 1), &q(5, 2)), 3);
        assert_eq!(s.count_in(&q(1, 1), &q(2, 1)), 1);
    }

    #[test]
    fn gcd_cofactor_inverts() {
        let m = IntPoly::from_descending(&[1, 0, -2]).to_qpoly();
        let a = IntPoly::from_descending(&[1, 1]).to_qpoly();
        let (g, s) = a.gcd_cofactor(&m);
        assert_eq!(g.degree(), 0);
        let check = s.mul(&a).rem(&m);
        assert_eq!(check, QPoly::constant(BigRational::one()));
    }

    #[test]
    fn squarefree_parts() {
        let p = IntPoly::from_descending(&[1, -1])
            .pow(4)
            .mul(&IntPoly::from_descending(&[1, 1, 1]));
        assert_eq!(
            p.squarefree_part(),
            IntPoly::from_descending(&[1, -1]).mul(&IntPoly::from_descending(&[1, 1, 1]))
        );
        assert_eq!(
            p.repeated_part(),
            Some(IntPoly::from_descending(&[1, -1]).pow(3))
        );
        let s = IntPoly::from_descending(&[1, 0, -1, -1, -1, 0, 1]);
        assert_eq!(s.repeated_part(), None);
        assert_eq!(s.squarefree_part(), s);
    }

    #[test]
    fn rational_float_conversion() {
        assert_eq!(rational_to_f64(&q(1, 3)), 1.0 / 3.0);
        assert_eq!(rational_to_f64(&q(-7, 2)), -3.5);
        assert_eq!(rational_to_f64(&rational_from_f64(1.25)), 1.25);
    }
}
