//! Exact arithmetic in `Q[X]/(m)` with a chosen real embedding, and exact
//! eigenvectors of integer matrices over such a field.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::factor;
use crate::matrix::IntMatrix;
use crate::poly::{
    rational_from_f64, rational_to_f64, sign_of_rational, IntPoly, QPoly, SturmChain,
};

/// Isolating intervals are narrowed to this many bits at construction.
const REFINE_BITS: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum NumFieldError {
    #[error("minimal polynomial must be monic of degree ≥ 1")]
    NotMonic,
    #[error("minimal polynomial is reducible")]
    Reducible,
    #[error("interval contains {0} roots, expected exactly one")]
    NotIsolating(usize),
    #[error("division by zero")]
    DivisionByZero,
    #[error("value is not an eigenvalue of the matrix")]
    NotAnEigenvalue,
    #[error("normalizing coordinate {0} vanishes")]
    ZeroNormalization(usize),
    #[error("elements come from different fields")]
    FieldMismatch,
    #[error("expected {expected} coordinates, got {got}")]
    CoordinateCount { expected: usize, got: usize },
}

/// `Q(α)` for a real root `α` of an irreducible monic integer polynomial,
/// singled out by an isolating rational interval `(lo, hi)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumberField {
    minpoly: IntPoly,
    modulus: QPoly,
    lo: BigRational,
    hi: BigRational,
}

impl NumberField {
    /// Field for the unique root of `minpoly` in `(lo, hi)`.
    pub fn new(
        minpoly: IntPoly,
        lo: BigRational,
        hi: BigRational,
    ) -> Result<Arc<Self>, NumFieldError> {
        if !minpoly.is_monic() || minpoly.degree() == 0 {
            return Err(NumFieldError::NotMonic);
        }
        if !factor::is_irreducible(&minpoly) {
            return Err(NumFieldError::Reducible);
        }
        let modulus = minpoly.to_qpoly();
        if modulus.sign_at(&lo) == 0 || modulus.sign_at(&hi) == 0 {
            return Err(NumFieldError::NotIsolating(1));
        }
        let count = SturmChain::new(&modulus).count_in(&lo, &hi);
        if count != 1 {
            return Err(NumFieldError::NotIsolating(count));
        }
        let mut field = NumberField {
            minpoly,
            modulus,
            lo,
            hi,
        };
        field.refine(REFINE_BITS);
        Ok(Arc::new(field))
    }

    /// Field for the root of `minpoly` nearest `approx`, isolated by
    /// widening a small interval until the Sturm count is one.
    pub fn from_approx(minpoly: IntPoly, approx: f64) -> Result<Arc<Self>, NumFieldError> {
        let mut radius = 1e-6 * approx.abs().max(1.0);
        for _ in 0..40 {
            let lo = rational_from_f64(approx - radius);
            let hi = rational_from_f64(approx + radius);
            match NumberField::new(minpoly.clone(), lo, hi) {
                Err(NumFieldError::NotIsolating(0)) => radius *= 2.0,
                other => return other,
            }
        }
        Err(NumFieldError::NotIsolating(0))
    }

    fn refine(&mut self, bits: u32) {
        let target = BigRational::new(BigInt::one(), BigInt::one() << bits);
        let lo_sign = self.modulus.sign_at(&self.lo);
        while &self.hi - &self.lo > target {
            let mid = (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2));
            let s = self.modulus.sign_at(&mid);
            if s == 0 {
                // Rational root of an irreducible polynomial of degree 1.
                self.lo = mid.clone();
                self.hi = mid;
                return;
            }
            if s == lo_sign {
                self.lo = mid;
            } else {
                self.hi = mid;
            }
        }
    }

    pub fn minpoly(&self) -> &IntPoly {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree()
    }

    /// Current isolating interval.
    pub fn interval(&self) -> (&BigRational, &BigRational) {
        (&self.lo, &self.hi)
    }

    /// Midpoint of the isolating interval as a float.
    pub fn root_f64(&self) -> f64 {
        rational_to_f64(&((&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))))
    }

    fn reduce(&self, p: &QPoly) -> Vec<BigRational> {
        let r = p.rem(&self.modulus);
        (0..self.degree()).map(|i| r.coeff(i)).collect()
    }
}

/// Element `Σ aᵢ αⁱ` of a number field.
#[derive(Clone, Debug)]
pub struct FieldElement {
    field: Arc<NumberField>,
    coords: Vec<BigRational>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && same_field(&self.field, &other.field)
    }
}

impl Eq for FieldElement {}

fn same_field(a: &Arc<NumberField>, b: &Arc<NumberField>) -> bool {
    Arc::ptr_eq(a, b) || a.minpoly == b.minpoly
}

impl FieldElement {
    pub fn new(field: &Arc<NumberField>, coords: Vec<BigRational>) -> Result<Self, NumFieldError> {
        if coords.len() != field.degree() {
            return Err(NumFieldError::CoordinateCount {
                expected: field.degree(),
                got: coords.len(),
            });
        }
        Ok(FieldElement {
            field: field.clone(),
            coords,
        })
    }

    /// Element with integer coordinates; shorter inputs are zero-padded,
    /// longer ones reduced modulo the minimal polynomial.
    pub fn from_ints(field: &Arc<NumberField>, coords: &[i64]) -> Self {
        let q = QPoly::new(
            coords
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        );
        FieldElement {
            field: field.clone(),
            coords: field.reduce(&q),
        }
    }

    pub fn from_integer(field: &Arc<NumberField>, n: i64) -> Self {
        Self::from_ints(field, &[n])
    }

    pub fn zero(field: &Arc<NumberField>) -> Self {
        Self::from_integer(field, 0)
    }

    pub fn one(field: &Arc<NumberField>) -> Self {
        Self::from_integer(field, 1)
    }

    /// The generator `α`.
    pub fn generator(field: &Arc<NumberField>) -> Self {
        Self::from_ints(field, &[0, 1])
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    /// Integer coordinates, if all are integral.
    pub fn int_coords(&self) -> Option<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.coords
            .iter()
            .map(|c| {
                if c.is_integer() {
                    c.to_integer().to_i64()
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    fn as_qpoly(&self) -> QPoly {
        QPoly::new(self.coords.clone())
    }

    fn check(&self, other: &Self) {
        assert!(
            same_field(&self.field, &other.field),
            "{}",
            NumFieldError::FieldMismatch
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        FieldElement {
            field: self.field.clone(),
            coords,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a - b)
            .collect();
        FieldElement {
            field: self.field.clone(),
            coords,
        }
    }

    pub fn neg(&self) -> Self {
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let coords = self.field.reduce(&self.as_qpoly().mul(&other.as_qpoly()));
        FieldElement {
            field: self.field.clone(),
            coords,
        }
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|a| a * s).collect(),
        }
    }

    /// Inverse through the extended Euclidean algorithm against the minimal
    /// polynomial.
    pub fn inv(&self) -> Result<Self, NumFieldError> {
        if self.is_zero() {
            return Err(NumFieldError::DivisionByZero);
        }
        let (g, s) = self.as_qpoly().gcd_cofactor(&self.field.modulus);
        // Irreducibility makes the gcd 1.
        debug_assert_eq!(g.degree(), 0);
        Ok(FieldElement {
            field: self.field.clone(),
            coords: self.field.reduce(&s),
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self, NumFieldError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i32) -> Result<Self, NumFieldError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = FieldElement::one(&self.field);
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// `p(self)` for an integer polynomial.
    pub fn eval_poly(&self, p: &IntPoly) -> Self {
        let mut acc = FieldElement::zero(&self.field);
        for &c in p.coeffs().iter().rev() {
            acc = acc
                .mul(self)
                .add(&FieldElement::from_integer(&self.field, c));
        }
        acc
    }

    /// Exact sign of the real number under the embedding.
    pub fn sign_of(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        let p = self.as_qpoly();
        let m = &self.field.modulus;
        let (mut lo, mut hi) = (self.field.lo.clone(), self.field.hi.clone());
        let lo_sign = m.sign_at(&lo);
        loop {
            let (a, b) = interval_eval(&p, &lo, &hi);
            if a.is_positive() {
                return 1;
            }
            if b.is_negative() {
                return -1;
            }
            if lo == hi {
                // Exact rational root; the evaluation interval is a point.
                return sign_of_rational(&a);
            }
            let mid = (&lo + &hi) / BigRational::from_integer(BigInt::from(2));
            let s = m.sign_at(&mid);
            if s == 0 {
                lo = mid.clone();
                hi = mid;
            } else if s == lo_sign {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }

    pub fn cmp_value(&self, other: &Self) -> Ordering {
        self.sub(other).sign_of().cmp(&0)
    }

    /// Float value at the embedded root.
    pub fn to_f64(&self) -> f64 {
        let x = self.field.root_f64();
        self.coords
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + rational_to_f64(c))
    }
}

/// Range of `p` over `[lo, hi]` by interval Horner evaluation.
fn interval_eval(p: &QPoly, lo: &BigRational, hi: &BigRational) -> (BigRational, BigRational) {
    let mut a = BigRational::zero();
    let mut b = BigRational::zero();
    for c in p.coeffs().iter().rev() {
        let prods = [&a * lo, &a * hi, &b * lo, &b * hi];
        let mut min = prods[0].clone();
        let mut max = prods[0].clone();
        for v in &prods[1..] {
            if *v < min {
                min = v.clone();
            }
            if *v > max {
                max = v.clone();
            }
        }
        a = min + c;
        b = max + c;
    }
    (a, b)
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", c)?;
        }
        f.write_str(")")
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: Self) -> FieldElement {
        FieldElement::add(self, rhs)
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: Self) -> FieldElement {
        FieldElement::sub(self, rhs)
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: Self) -> FieldElement {
        FieldElement::mul(self, rhs)
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::neg(self)
    }
}

/// Integer matrix times a field vector.
pub fn mul_matrix_vec(m: &IntMatrix, v: &[FieldElement]) -> Vec<FieldElement> {
    let field = v[0].field().clone();
    (0..m.rows())
        .map(|i| {
            let mut acc = FieldElement::zero(&field);
            for (j, x) in v.iter().enumerate() {
                let e = m.get(i, j);
                if e != 0 {
                    acc = acc.add(&x.scale(&BigRational::from_integer(BigInt::from(e))));
                }
            }
            acc
        })
        .collect()
}

/// Kernel vector of `M − μI`, scaled so coordinate `normalize` equals 1.
pub fn solve_eigenvector(
    m: &IntMatrix,
    eigenvalue: &FieldElement,
    normalize: usize,
) -> Result<Vec<FieldElement>, NumFieldError> {
    let n = m.rows();
    let field = eigenvalue.field().clone();
    let chi = m.charpoly().map_err(|_| NumFieldError::NotAnEigenvalue)?;
    if !eigenvalue.eval_poly(&chi).is_zero() {
        return Err(NumFieldError::NotAnEigenvalue);
    }
    let mut a: Vec<Vec<FieldElement>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let e = FieldElement::from_integer(&field, m.get(i, j));
                    if i == j {
                        e.sub(eigenvalue)
                    } else {
                        e
                    }
                })
                .collect()
        })
        .collect();

    // Reduced row echelon form.
    let mut pivots: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..n).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].inv()?;
        for x in &mut a[row][col..] {
            *x = x.mul(&inv);
        }
        for r in 0..n {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[row].clone();
                for (x, p) in a[r][col..].iter_mut().zip(&pivot_row[col..]) {
                    *x = x.sub(&f.mul(p));
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == n {
            break;
        }
    }
    // With a larger eigenspace the free coordinate being normalized is
    // preferred, the others are set to zero.
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let f = match free.iter().find(|&&c| c == normalize) {
        Some(&c) => c,
        None => *free.first().ok_or(NumFieldError::NotAnEigenvalue)?,
    };
    let mut v = vec![FieldElement::zero(&field); n];
    v[f] = FieldElement::one(&field);
    for (r, &c) in pivots.iter().enumerate() {
        v[c] = a[r][f].neg();
    }
    let scale = v[normalize].clone();
    if scale.is_zero() {
        return Err(NumFieldError::ZeroNormalization(normalize));
    }
    let inv = scale.inv()?;
    Ok(v.iter().map(|x| x.mul(&inv)).collect())
}
