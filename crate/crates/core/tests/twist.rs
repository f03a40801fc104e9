use systole_core::polycore::analyze_roots;
use systole_core::twist::{
    canonical_word, casson_bleiler, homology_spectral_radius, preserves_form, search_words,
    word_action, word_charpoly, FailedClause, TwistWord, Verdict,
};
use systole_core::{IntMatrix, IntPoly, PerronConfig};

fn word(text: &str) -> TwistWord {
    TwistWord::parse(text, None).unwrap()
}

#[test]
fn genus_two_matrices() {
    let m1 = word_action(&word("a1.a1.c1.b2.A2.b1"));
    assert_eq!(
        m1,
        IntMatrix::from_rows(&[[1, -3, 0, 1], [1, -2, 0, 1], [0, 2, 2, -1], [0, 1, 1, 0]])
    );
    let m2 = word_action(&word("a1.a1.B2.C1.A2.b1"));
    assert_eq!(
        m2,
        IntMatrix::from_rows(&[[1, -1, 1, -1], [1, 0, 1, -1], [0, -1, -1, 2], [0, 0, -1, 1]])
    );
    assert_eq!(
        m1.charpoly().unwrap(),
        IntPoly::from_descending(&[1, -1, -1, -1, 1])
    );
    assert_eq!(
        m2.charpoly().unwrap(),
        IntPoly::from_descending(&[1, -1, 3, -1, 1])
    );
    assert!(preserves_form(&m1, 2) && preserves_form(&m2, 2));
}

#[test]
fn genus_two_spectral_radii() {
    // Homology candidate 1.72208 for the first word.
    let w1 = word("a1.a1.c1.b2.A2.b1");
    let r1 = homology_spectral_radius(&w1);
    assert!((r1 - 1.72208).abs() < 1e-5, "{r1}");
    let profile = analyze_roots(&word_charpoly(&w1), &PerronConfig::default()).unwrap();
    assert!(profile.is_perron());
    // The second word's dominant roots form a complex pair.
    let r2 = homology_spectral_radius(&word("a1.a1.B2.C1.A2.b1"));
    let p2 = IntPoly::from_descending(&[1, -1, 3, -1, 1]);
    let max = systole_core::roots::complex_roots(&p2)
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    assert!((r2 - max).abs() < 1e-12 && r2 > 1.0);
}

#[test]
fn higher_genus_words() {
    let w3 = word("a1.a1.b1.c1.a2.b2.c2.c2.A3.B3");
    assert_eq!(
        word_charpoly(&w3),
        IntPoly::from_descending(&[1, 0, -1, 1, -1, 0, 1])
    );
    let w4 = word("a1.b1.c1.a2.b2.c2.b3.c3.b4");
    assert_eq!(
        word_charpoly(&w4),
        IntPoly::from_descending(&[1, 0, 0, 1, -1, 1, 0, 0, 1])
    );
    assert_eq!(casson_bleiler(&word_charpoly(&w3)), Verdict::PaCandidate);
    assert_eq!(casson_bleiler(&word_charpoly(&w4)), Verdict::PaCandidate);
    assert!((homology_spectral_radius(&w3) - 1.40127).abs() < 1e-5);
    assert!((homology_spectral_radius(&w4) - 1.28064).abs() < 1e-5);
}

#[test]
fn inconclusive_cases() {
    // X⁶ + 1: roots of unity, a polynomial in X², and reducible.
    match casson_bleiler(&IntPoly::from_descending(&[1, 0, 0, 0, 0, 0, 1])) {
        Verdict::Inconclusive(c) => {
            assert!(c.contains(&FailedClause::RootOfUnity));
            assert!(c.contains(&FailedClause::PolynomialInPower(2)));
        }
        v => panic!("{v:?}"),
    }
    // Product of two reciprocal quadratics.
    let p = IntPoly::from_descending(&[1, -3, 1]).mul(&IntPoly::from_descending(&[1, -4, 1]));
    assert_eq!(
        casson_bleiler(&p),
        Verdict::Inconclusive(vec![FailedClause::SymplecticallyReducible])
    );
    assert_eq!(
        casson_bleiler(&IntPoly::from_descending(&[1, 2, 3])),
        Verdict::Inconclusive(vec![FailedClause::NotReciprocal])
    );
}

#[test]
fn inverse_word_gives_identity() {
    let w = word("a1.a1.b1.c1.a2.b2.c2.c2.A3.B3");
    let m = word_action(&w.concat(&w.inverse()));
    assert_eq!(m, IntMatrix::identity(6));
}

#[test]
fn search_recovers_genus_two_word() {
    let target = IntPoly::from_descending(&[1, -1, -1, -1, 1]);
    let found = search_words(2, &target, 6);
    let want = canonical_word(&word("a1.a1.c1.b2.A2.b1"));
    assert!(found.contains(&want), "{} words", found.len());
    for w in &found {
        let chi = word_charpoly(w);
        assert!(chi == target || chi == target.negate_variable());
        assert_eq!(&canonical_word(w), w);
    }
}

#[test]
fn search_recovers_genus_three_word() {
    // The word realizes P(−X) for this target.
    let target = IntPoly::from_descending(&[1, 0, -1, -1, -1, 0, 1]);
    let found = search_words(3, &target, 10);
    let want = canonical_word(&word("a1.a1.b1.c1.a2.b2.c2.c2.A3.B3"));
    assert!(found.contains(&want), "{} words", found.len());
}
