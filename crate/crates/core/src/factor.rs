//! Factor detection for small integer polynomials: cyclotomic factors and
//! nontrivial monic factors found by grouping numerical roots and confirming
//! each guess by exact division.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::poly::IntPoly;
use crate::roots::complex_roots;

/// Euler's totient.
pub fn totient(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn mobius(mut n: u64) -> i32 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// The `k`-th cyclotomic polynomial, from `∏_{d | k} (x^d − 1)^{μ(k/d)}`.
pub fn cyclotomic(k: u64) -> IntPoly {
    assert!(k >= 1);
    let mut num = IntPoly::one();
    let mut den = IntPoly::one();
    for d in 1..=k {
        if k % d != 0 {
            continue;
        }
        let f = IntPoly::monomial(d as usize).sub(&IntPoly::one());
        match mobius(k / d) {
            1 => num = num.mul(&f),
            -1 => den = den.mul(&f),
            _ => {}
        }
    }
    num.div_exact(&den).expect("cyclotomic quotient is exact")
}

/// Indices `k` with `φ(k) ≤ degree`, i.e. the cyclotomic polynomials that can
/// divide a polynomial of that degree.
pub fn cyclotomic_indices(degree: usize) -> Vec<u64> {
    // φ(k) ≥ √(k/2), so k ≤ 2·degree² covers everything.
    let limit = 2 * (degree as u64) * (degree as u64) + 2;
    (1..=limit)
        .filter(|&k| totient(k) <= degree as u64)
        .collect()
}

/// Removes every cyclotomic factor, returning the remaining part and the
/// stripped indices (with repetition).
pub fn strip_cyclotomic(p: &IntPoly) -> (IntPoly, Vec<u64>) {
    let mut rest = p.clone();
    let mut found = Vec::new();
    for k in cyclotomic_indices(p.degree()) {
        if totient(k) as usize > rest.degree() {
            continue;
        }
        let c = cyclotomic(k);
        while rest.degree() >= c.degree() {
            match rest.div_exact(&c) {
                Some(q) => {
                    rest = q;
                    found.push(k);
                }
                None => break,
            }
        }
    }
    (rest, found)
}

/// A group of roots closed under complex conjugation: either one real root
/// or a conjugate pair.
#[derive(Clone, Copy, Debug)]
struct RootUnit {
    root: Complex64,
    paired: bool,
}

impl RootUnit {
    fn weight(&self) -> usize {
        if self.paired {
            2
        } else {
            1
        }
    }
}

fn root_units(roots: &[Complex64]) -> Vec<RootUnit> {
    let mut used = alloc::vec![false; roots.len()];
    let mut units = Vec::new();
    // Real roots first, then pair each upper-half-plane root with its mate.
    let scale = |z: Complex64| z.norm().max(1.0);
    for (i, z) in roots.iter().enumerate() {
        if z.im.abs() <= 1e-8 * scale(*z) {
            used[i] = true;
            units.push(RootUnit {
                root: Complex64::new(z.re, 0.0),
                paired: false,
            });
        }
    }
    for i in 0..roots.len() {
        if used[i] || roots[i].im < 0.0 {
            continue;
        }
        let target = roots[i].conj();
        let mate = (0..roots.len())
            .filter(|&j| !used[j] && j != i && roots[j].im < 0.0)
            .min_by(|&a, &b| {
                (roots[a] - target)
                    .norm()
                    .partial_cmp(&(roots[b] - target).norm())
                    .unwrap_or(core::cmp::Ordering::Equal)
            });
        used[i] = true;
        if let Some(j) = mate {
            used[j] = true;
        }
        units.push(RootUnit {
            root: roots[i],
            paired: true,
        });
    }
    units
}

fn unit_factor(units: &[RootUnit], chosen: &[usize]) -> Option<IntPoly> {
    // Expand ∏ (x − z) over the chosen units in floating point, then round.
    let mut c: Vec<f64> = alloc::vec![1.0];
    for &i in chosen {
        let u = units[i];
        let quad: Vec<f64> = if u.paired {
            alloc::vec![u.root.norm_sqr(), -2.0 * u.root.re, 1.0]
        } else {
            alloc::vec![-u.root.re, 1.0]
        };
        let mut next = alloc::vec![0.0; c.len() + quad.len() - 1];
        for (a, &x) in c.iter().enumerate() {
            for (b, &y) in quad.iter().enumerate() {
                next[a + b] += x * y;
            }
        }
        c = next;
    }
    let mut ints = Vec::with_capacity(c.len());
    for &x in &c {
        let r = libm::round(x);
        if (x - r).abs() > 1e-5 * x.abs().max(1.0) || r.abs() > 9.0e15 {
            return None;
        }
        ints.push(r as i64);
    }
    Some(IntPoly::new(ints))
}

/// Searches for a monic integer factor built from root groups, with total
/// degree in `1..=max_degree`, that divides `p` exactly and passes `accept`.
/// Subsets are tried in order of increasing size. `p` should be squarefree so
/// the numerical roots are well separated.
pub fn find_factor(
    p: &IntPoly,
    max_degree: usize,
    mut accept: impl FnMut(&IntPoly) -> bool,
) -> Option<IntPoly> {
    if p.degree() < 2 {
        return None;
    }
    let roots = complex_roots(p);
    let units = root_units(&roots);
    let mut chosen: Vec<usize> = Vec::new();
    for size in 1..=units.len() {
        if let Some(f) = subsets(&units, size, 0, 0, max_degree, &mut chosen, &mut |set| {
            let f = unit_factor(&units, set)?;
            if f.degree() == 0 || f.degree() == p.degree() {
                return None;
            }
            if p.div_exact(&f).is_some() && accept(&f) {
                Some(f)
            } else {
                None
            }
        }) {
            return Some(f);
        }
    }
    None
}

fn subsets<F>(
    units: &[RootUnit],
    size: usize,
    start: usize,
    weight: usize,
    max_degree: usize,
    chosen: &mut Vec<usize>,
    visit: &mut F,
) -> Option<IntPoly>
where
    F: FnMut(&[usize]) -> Option<IntPoly>,
{
    if chosen.len() == size {
        return visit(chosen);
    }
    for i in start..units.len() {
        let w = weight + units[i].weight();
        if w > max_degree {
            continue;
        }
        chosen.push(i);
        let found = subsets(units, size, i + 1, w, max_degree, chosen, visit);
        chosen.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

/// True when `p` is squarefree over the rationals.
pub fn is_squarefree(p: &IntPoly) -> bool {
    let q = p.to_qpoly();
    q.gcd(&q.derivative()).degree() == 0
}

/// Irreducibility over the integers for monic polynomials.
pub fn is_irreducible(p: &IntPoly) -> bool {
    if p.degree() <= 1 {
        return p.degree() == 1;
    }
    if !is_squarefree(p) {
        return false;
    }
    find_factor(p, p.degree() / 2, |_| true).is_none()
}

/// The monic irreducible factor of a squarefree part of `p` that vanishes at
/// the real number `root`.
pub fn irreducible_factor_at(p: &IntPoly, root: f64) -> Option<IntPoly> {
    let q = p.to_qpoly();
    let g = q.gcd(&q.derivative());
    let mut cur = if g.degree() == 0 {
        p.clone()
    } else {
        q.divrem(&g).0.monic().to_int_poly()?
    };
    loop {
        if cur.degree() <= 1 {
            return Some(cur);
        }
        let split = find_factor(&cur, cur.degree() - 1, |_| true);
        match split {
            None => return Some(cur),
            Some(f) => {
                let other = cur.div_exact(&f)?;
                let vf = f.eval_f64(root).abs();
                let vo = other.eval_f64(root).abs();
                cur = if vf <= vo { f } else { other };
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_values() {
        assert_eq!(cyclotomic(1), IntPoly::from_descending(&[1, -1]));
        assert_eq!(cyclotomic(6), IntPoly::from_descending(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), IntPoly::from_descending(&[1, 0, -1, 0, 1]));
        let c105 = cyclotomic(105);
        assert_eq!(c105.degree(), 48);
        assert!(c105.coeffs().contains(&-2));
    }

    #[test]
    fn totients() {
        assert_eq!(totient(1), 1);
        assert_eq!(totient(12), 4);
        assert_eq!(totient(97), 96);
    }

    #[test]
    fn irreducibility() {
        assert!(is_irreducible(&IntPoly::from_descending(&[
            1, 0, -1, -1, -1, 0, 1
        ])));
        let p = IntPoly::from_descending(&[1, 0, -1, -1])
            .mul(&IntPoly::from_descending(&[1, 1, 0, -1]));
        assert!(!is_irreducible(&p));
        assert!(!is_irreducible(&IntPoly::from_descending(&[1, -2, 1])));
    }

    #[test]
    fn factor_at_root() {
        let p = IntPoly::from_descending(&[1, 0, -1, -1])
            .mul(&IntPoly::from_descending(&[1, 1, 0, -1]));
        let f = irreducible_factor_at(&p, 1.324_717_957_244_746).unwrap();
        assert_eq!(f, IntPoly::from_descending(&[1, 0, -1, -1]));
    }
}
