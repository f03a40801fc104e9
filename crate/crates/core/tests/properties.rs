use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use systole_core::numfield::{FieldElement, NumberField};
use systole_core::polycore::{
    coeffs_from_traces, perron_analysis, symplectically_irreducible, trace_bound,
    traces_from_coeffs, PerronConfig, ReciprocalPolynomial,
};
use systole_core::rauzy::{rauzy_step, IntervalExchange, Permutation};
use systole_core::roots::complex_roots;
use systole_core::search::{enumerate_candidates, RootBound, SearchPlan};
use systole_core::twist::{alphabet, preserves_form, word_action, word_charpoly, TwistWord};
use systole_core::{IntMatrix, IntPoly};

fn cases(n: u32) -> ProptestConfig {
    ProptestConfig {
        cases: n,
        ..ProptestConfig::default()
    }
}

fn reciprocal() -> impl Strategy<Value = ReciprocalPolynomial> {
    (2usize..=8)
        .prop_flat_map(|g| proptest::collection::vec(-20i64..=20, g))
        .prop_map(|half| ReciprocalPolynomial::new(half).unwrap())
}

fn twist_word(
    genus: std::ops::RangeInclusive<usize>,
    len: usize,
) -> impl Strategy<Value = TwistWord> {
    genus.prop_flat_map(move |g| {
        let letters = alphabet(g);
        proptest::collection::vec(proptest::sample::select(letters), 0..=len)
            .prop_map(move |ls| TwistWord::new(g, ls).unwrap())
    })
}

proptest! {
    #![proptest_config(cases(1000))]

    #[test]
    fn newton_roundtrip(p in reciprocal()) {
        let t = traces_from_coeffs(&p, p.genus());
        prop_assert_eq!(coeffs_from_traces(&t, p.degree()).unwrap(), p);
    }

    #[test]
    fn twist_words_are_symplectic(w in twist_word(1..=8, 24)) {
        prop_assert!(preserves_form(&word_action(&w), w.genus));
    }
}

proptest! {
    #![proptest_config(cases(200))]

    #[test]
    fn traces_match_root_power_sums(half in (2usize..=8).prop_flat_map(|g| proptest::collection::vec(-3i64..=3, g))) {
        let p = ReciprocalPolynomial::new(half).unwrap();
        // Repeated roots only come back to about half precision.
        prop_assume!(p.to_int_poly().repeated_part().is_none());
        let roots = complex_roots(&p.to_int_poly());
        let t = traces_from_coeffs(&p, 6);
        for (k, &tk) in t.iter().enumerate() {
            let s: f64 = roots.iter().map(|z| z.powi(k as i32 + 1).re).sum();
            prop_assert!((s - tk as f64).abs() <= 1e-6 * (1.0 + s.abs()), "k={} {} {}", k + 1, s, tk);
        }
    }

    #[test]
    fn sign_flip_keeps_dominant_modulus(p in reciprocal()) {
        let c = PerronConfig::default();
        if let (Ok(a), Ok(b)) = (perron_analysis(&p, &c), perron_analysis(&p.negate_variable(), &c)) {
            prop_assert!((a.dominant_modulus - b.dominant_modulus).abs() <= 1e-9 * a.dominant_modulus);
        }
    }

    // Roots on the unit circle or real in [1/r, r]: traces stay within the bound.
    #[test]
    fn trace_bound_holds(r in 1.05f64..2.5, s in proptest::collection::vec(-1.0f64..=1.0, 1..=8)) {
        let t = r + 1.0 / r;
        let g = s.len();
        let mut roots = Vec::new();
        for u in &s {
            let sum = u * t;
            if sum.abs() <= 2.0 {
                let theta = (sum / 2.0).acos();
                roots.push(num_complex::Complex64::from_polar(1.0, theta));
                roots.push(num_complex::Complex64::from_polar(1.0, -theta));
            } else {
                let x = (sum.abs() + (sum * sum - 4.0).sqrt()) / 2.0 * sum.signum();
                roots.push(x.into());
                roots.push((1.0 / x).into());
            }
        }
        for k in 1..=g {
            let pk: f64 = roots.iter().map(|z| z.powi(k as i32).re).sum();
            prop_assert!(pk.abs() <= g as f64 * (r.powi(k as i32) + r.powi(-(k as i32))) + 1e-6);
            prop_assert!(pk.abs() < trace_bound(2 * g, r, k) as f64 + 1.0);
        }
    }

    #[test]
    fn twist_inverse_cancels(w in twist_word(1..=6, 16)) {
        let m = word_action(&w.concat(&w.inverse()));
        prop_assert_eq!(m, IntMatrix::identity(2 * w.genus));
    }

    #[test]
    fn twist_charpoly_is_palindromic(w in twist_word(2..=8, 20)) {
        let chi = word_charpoly(&w);
        prop_assert_eq!(chi.degree(), 2 * w.genus);
        prop_assert!(chi.is_palindromic());
    }

    #[test]
    fn rauzy_step_cuts_the_shorter_piece(lengths in proptest::collection::vec(1i64..1000, 9)) {
        let perm = Permutation::new(vec![5, 3, 9, 8, 6, 2, 7, 1, 4]).unwrap();
        let d = perm.size();
        let beta = perm.bottom()[d - 1];
        let cut = lengths[d - 1].min(lengths[beta - 1]);
        let total: i64 = lengths.iter().sum();
        let iet = IntervalExchange::new(perm, lengths.clone()).unwrap();
        match rauzy_step(&iet) {
            Ok((next, _, m)) => {
                prop_assert_eq!(next.lengths.iter().sum::<i64>(), total - cut);
                // The step matrix carries the new lengths back to the old ones.
                prop_assert_eq!(m.mul_vec(&next.lengths), lengths);
            }
            Err(_) => prop_assert_eq!(lengths[d - 1], lengths[beta - 1]),
        }
    }
}

fn g4_field() -> std::sync::Arc<NumberField> {
    NumberField::from_approx(
        IntPoly::from_descending(&[1, 0, 0, 1, -1, 1, 0, 0, 1]),
        -1.2806381562677576,
    )
    .unwrap()
}

fn element() -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-5i64..=5, 8)
}

proptest! {
    #![proptest_config(cases(64))]

    #[test]
    fn field_axioms(a in element(), b in element(), c in element()) {
        let k = g4_field();
        let (x, y, z) = (FieldElement::from_ints(&k, &a), FieldElement::from_ints(&k, &b), FieldElement::from_ints(&k, &c));
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        if !x.is_zero() {
            prop_assert_eq!(x.mul(&x.inv().unwrap()), FieldElement::one(&k));
        }
    }

    #[test]
    fn sign_agrees_with_float(a in element(), num in -7i64..=7, den in 1i64..=9) {
        let k = g4_field();
        let mut x = FieldElement::from_ints(&k, &a);
        x = x.add(&FieldElement::one(&k).scale(&BigRational::new(BigInt::from(num), BigInt::from(den))));
        let f = x.to_f64();
        if f.abs() > 1e-6 {
            prop_assert_eq!(x.sign_of(), if f > 0.0 { 1 } else { -1 });
        }
    }
}

#[test]
fn enumerated_traces_respect_bounds() {
    for genus in [2usize, 3, 4] {
        let bound = RootBound::seed_for_genus(genus);
        let plan = SearchPlan::new(genus, bound.clone()).unwrap();
        let set = enumerate_candidates(genus, &bound).unwrap();
        for c in &set.candidates {
            let t = traces_from_coeffs(&c.poly, genus);
            for (k, tk) in t.iter().enumerate() {
                assert!(
                    tk.abs() <= plan.trace_bound(k + 1) as i128,
                    "{:?} k={}",
                    c.poly,
                    k + 1
                );
            }
        }
    }
}

#[test]
fn even_genus_family() {
    let expected: [(usize, &[i64], f64); 4] = [
        (2, &[1, -1, -1, -1, 1], 1.72208),
        (4, &[1, 0, 0, -1, -1, -1, 0, 0, 1], 1.28064),
        (6, &[1, 0, 0, 0, 0, -1, -1, -1, 0, 0, 0, 0, 1], 1.17628),
        (
            8,
            &[1, 0, 0, 0, 0, 0, 0, -1, -1, -1, 0, 0, 0, 0, 0, 0, 1],
            1.12876,
        ),
    ];
    for (g, desc, root) in expected {
        let mut c = vec![0i64; 2 * g + 1];
        c[0] = 1;
        c[2 * g] = 1;
        c[g - 1] = -1;
        c[g] = -1;
        c[g + 1] = -1;
        let family = IntPoly::new(c);
        assert_eq!(family, IntPoly::from_descending(desc));
        let p = ReciprocalPolynomial::from_int_poly(&family).unwrap();
        let a = perron_analysis(&p, &PerronConfig::default()).unwrap();
        assert!((a.dominant_value - root).abs() < 1e-5);
    }
}

/// Brute force: a monic palindromic divisor of even degree `2k < 2g` with
/// coefficients bounded through the root moduli.
fn has_palindromic_divisor(p: &IntPoly) -> bool {
    let rho = complex_roots(p)
        .iter()
        .map(|z| z.norm())
        .fold(1.0, f64::max);
    let n = p.degree();
    for deg in (2..n).step_by(2) {
        let k = deg / 2;
        let limits: Vec<i64> = (1..=k)
            .map(|j| (binomial(deg, j) as f64 * rho.powi(j as i32) + 1e-9).floor() as i64)
            .collect();
        let total: i64 = limits.iter().map(|l| 2 * l + 1).product();
        for mut code in 0..total {
            let mut half = Vec::with_capacity(k);
            for l in &limits {
                half.push(code % (2 * l + 1) - l);
                code /= 2 * l + 1;
            }
            let mut desc = vec![1i64];
            desc.extend(&half);
            desc.extend(half[..k - 1].iter().rev());
            desc.push(1);
            if p.div_exact(&IntPoly::from_descending(&desc)).is_some() {
                return true;
            }
        }
    }
    false
}

fn binomial(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

proptest! {
    #![proptest_config(cases(150))]

    #[test]
    fn symplectic_irreducibility_matches_box_search(
        left in proptest::collection::vec(-3i64..=3, 1..=2),
        right in proptest::collection::vec(-3i64..=3, 1..=2),
        split in any::<bool>(),
    ) {
        // Half the cases are products, the rest a single random polynomial.
        let p = if split {
            ReciprocalPolynomial::new(left.clone()).unwrap().to_int_poly()
                .mul(&ReciprocalPolynomial::new(right).unwrap().to_int_poly())
        } else {
            let mut half = left;
            half.extend(right);
            half.truncate(3);
            ReciprocalPolynomial::new(half).unwrap().to_int_poly()
        };
        let r = ReciprocalPolynomial::from_int_poly(&p).unwrap();
        prop_assert_eq!(symplectically_irreducible(&r), !has_palindromic_divisor(&p), "{:?}", p);
    }
}
