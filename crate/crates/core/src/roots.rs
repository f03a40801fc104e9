//! Floating-point root finding: Aberth–Ehrlich simultaneous iteration for the
//! full root set, Newton with a bisection fallback for a single real root.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::poly::IntPoly;

const ABERTH_MAX_ITER: usize = 500;

/// All complex roots of a polynomial of degree ≥ 1, with multiplicity.
pub fn complex_roots(p: &IntPoly) -> Vec<Complex64> {
    let n = p.degree();
    if n == 0 {
        return Vec::new();
    }
    let lead = p.leading() as f64;
    let coeffs: Vec<Complex64> = p
        .coeffs()
        .iter()
        .map(|&c| Complex64::new(c as f64 / lead, 0.0))
        .collect();
    let dcoeffs: Vec<Complex64> = (1..=n).map(|k| coeffs[k] * k as f64).collect();

    // Fujiwara-style radius keeps the starting circle near the root moduli.
    let mut radius: f64 = 0.0;
    for (k, c) in coeffs[..n].iter().enumerate() {
        let c = c.norm();
        if c > 0.0 {
            let r = libm::pow(c, 1.0 / (n - k) as f64);
            radius = radius.max(r);
        }
    }
    let radius = radius.max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * core::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
            Complex64::new(radius * libm::cos(theta), radius * libm::sin(theta))
        })
        .collect();

    let horner = |cs: &[Complex64], x: Complex64| {
        cs.iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |a, &c| a * x + c)
    };

    for _ in 0..ABERTH_MAX_ITER {
        let mut max_step: f64 = 0.0;
        for i in 0..n {
            let zi = z[i];
            let pv = horner(&coeffs, zi);
            if pv.norm() == 0.0 {
                continue;
            }
            let dv = horner(&dcoeffs, zi);
            let ratio = pv / dv;
            let mut s = Complex64::new(0.0, 0.0);
            for (j, &zj) in z.iter().enumerate() {
                if j != i {
                    let d = zi - zj;
                    if d.norm() > 0.0 {
                        s += Complex64::new(1.0, 0.0) / d;
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - ratio * s;
            let step = if denom.norm() > 0.0 {
                ratio / denom
            } else {
                ratio
            };
            if step.re.is_finite() && step.im.is_finite() {
                z[i] = zi - step;
                max_step = max_step.max(step.norm() / zi.norm().max(1.0));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    // A few plain Newton polishing steps on each root.
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let dv = horner(&dcoeffs, *zi);
            if dv.norm() == 0.0 {
                break;
            }
            let step = horner(&coeffs, *zi) / dv;
            if !(step.re.is_finite() && step.im.is_finite())
                || step.norm() > 1e-6 * zi.norm().max(1.0)
            {
                break;
            }
            *zi -= step;
        }
    }
    z
}

/// Outcome of a Newton run on a real root.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NewtonRoot {
    pub value: f64,
    pub iterations: usize,
    pub bisected: bool,
}

/// Newton iteration for a real root from `seed`, falling back to bisection on
/// `[lo, hi]` when Newton leaves the bracket or stalls. Returns `None` when
/// neither converges.
pub fn newton_real(
    p: &IntPoly,
    seed: f64,
    lo: f64,
    hi: f64,
    tol: f64,
    max_iter: usize,
) -> Option<NewtonRoot> {
    let dp = p.derivative();
    let mut x = seed;
    for it in 0..max_iter {
        let fx = p.eval_f64(x);
        let dx = dp.eval_f64(x);
        if fx == 0.0 {
            return Some(NewtonRoot {
                value: x,
                iterations: it,
                bisected: false,
            });
        }
        if dx == 0.0 || !dx.is_finite() {
            break;
        }
        let next = x - fx / dx;
        if !next.is_finite() || next < lo - (hi - lo) || next > hi + (hi - lo) {
            break;
        }
        if (next - x).abs() <= tol * next.abs().max(1.0) {
            if next >= lo && next <= hi {
                return Some(NewtonRoot {
                    value: next,
                    iterations: it + 1,
                    bisected: false,
                });
            }
            break;
        }
        x = next;
    }
    bisect(p, lo, hi, tol).map(|value| NewtonRoot {
        value,
        iterations: max_iter,
        bisected: true,
    })
}

/// Bisection on a sign-changing bracket.
pub fn bisect(p: &IntPoly, mut lo: f64, mut hi: f64, tol: f64) -> Option<f64> {
    let mut flo = p.eval_f64(lo);
    let fhi = p.eval_f64(hi);
    if flo == 0.0 {
        return Some(lo);
    }
    if fhi == 0.0 {
        return Some(hi);
    }
    if (flo > 0.0) == (fhi > 0.0) {
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let fm = p.eval_f64(mid);
        if fm == 0.0 {
            return Some(mid);
        }
        if (fm > 0.0) == (flo > 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        if hi - lo <= tol * hi.abs().max(1.0) * 1e-3 {
            break;
        }
    }
    Some(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_quadratic() {
        let p = IntPoly::from_descending(&[1, -3, 1]);
        let mut r: Vec<f64> = complex_roots(&p).iter().map(|z| z.re).collect();
        r.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((r[1] - (3.0 + libm::sqrt(5.0)) / 2.0).abs() < 1e-12);
        assert!((r[0] - (3.0 - libm::sqrt(5.0)) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn roots_with_multiplicity() {
        // (x - 1)^2 (x^2 + 1)
        let p = IntPoly::from_descending(&[1, -2, 2, -2, 1]);
        let roots = complex_roots(&p);
        for z in &roots {
            assert!(p.eval_complex(*z).norm() < 1e-10);
        }
    }

    #[test]
    fn newton_finds_salem_root() {
        let p = IntPoly::from_descending(&[1, -1, -1, -1, 1]);
        let r = newton_real(&p, 2.0, 1.0, 2.0, 1e-13, 60).unwrap();
        assert!((r.value - 1.722_083_805_739_043).abs() < 1e-12);
        assert!(!r.bisected);
    }
}
