use systole_core::lefschetz::{
    enumerate_orbit_structures, enumerate_strata, feasible_strata, lefschetz_sequence,
    solve_regular_orbits, stratum_feasible, FeasibilityWitness, InfeasibleReason, OrbitStructure,
    SingularCycle, Stratum,
};
use systole_core::{IntPoly, ReciprocalPolynomial};

fn rp(desc: &[i64]) -> ReciprocalPolynomial {
    ReciprocalPolynomial::from_int_poly(&IntPoly::from_descending(desc)).unwrap()
}

fn rp_prod(a: &[i64], b: &[i64]) -> ReciprocalPolynomial {
    ReciprocalPolynomial::from_int_poly(
        &IntPoly::from_descending(a).mul(&IntPoly::from_descending(b)),
    )
    .unwrap()
}

fn strata(list: &[&[u32]]) -> Vec<Stratum> {
    let mut v: Vec<Stratum> = list
        .iter()
        .map(|d| Stratum::new(d.to_vec()).unwrap())
        .collect();
    v.sort();
    v
}

fn cyc(degree: u32, length: u32, rotation: u32) -> SingularCycle {
    SingularCycle {
        degree,
        length,
        rotation,
    }
}

fn row<'a>(rows: &'a [(String, Vec<i64>)], label: &str) -> &'a [i64] {
    &rows
        .iter()
        .find(|(l, _)| l == label)
        .unwrap_or_else(|| panic!("no row {label}"))
        .1
}

// Brute-force count of partitions of `n` into even parts ≥ 2.
fn even_partitions(n: u32, max: u32) -> usize {
    if n == 0 {
        return 1;
    }
    (1..=max.min(n / 2))
        .map(|h| even_partitions(n - 2 * h, h))
        .sum()
}

#[test]
fn strata_counts_match_partitions() {
    for g in 2..=8usize {
        let n = 4 * g as u32 - 4;
        let s = enumerate_strata(g);
        assert_eq!(s.len(), even_partitions(n, n));
        for st in &s {
            assert_eq!(st.degrees.iter().sum::<u32>(), n);
            assert_eq!(st.genus, g);
        }
    }
}

#[test]
fn genus_three_decomposition() {
    let p = rp(&[1, 0, -1, 1, -1, 0, 1]);
    let prof = lefschetz_sequence(&p, 15).unwrap();
    assert_eq!(prof.sign, -1);
    assert_eq!(
        prof.numbers,
        vec![2, 0, 5, -4, 7, -3, 16, -12, 23, -25, 46, -55, 80, -112, 160]
    );
    let s = OrbitStructure {
        cycles: vec![cyc(2, 1, 1), cyc(2, 3, 1)],
    };
    let w = solve_regular_orbits(&prof, &s).unwrap();
    let rows = w.decomposition(&prof);
    assert_eq!(
        row(&rows, "L(2^3)"),
        &[0, 0, 3, 0, 0, 3, 0, 0, 3, 0, 0, -9, 0, 0, 3]
    );
    assert_eq!(
        row(&rows, "L(2^1)"),
        &[1, 1, 1, -3, 1, 1, 1, -3, 1, 1, 1, -3, 1, 1, 1]
    );
    assert_eq!(
        row(&rows, "L_ro"),
        &[1, -1, 1, -1, 6, -7, 15, -9, 19, -26, 45, -43, 79, -113, 156]
    );
    assert_eq!(
        (
            w.regular_orbit_counts[0],
            w.regular_orbit_counts[1],
            w.regular_orbit_counts[4]
        ),
        (1, 0, 1)
    );
    assert_eq!(rows[1].0, "L(2^3)");
}

#[test]
fn genus_four_decomposition() {
    let p = rp(&[1, 0, 0, 1, -1, 1, 0, 0, 1]);
    let prof = lefschetz_sequence(&p, 15).unwrap();
    assert_eq!(
        prof.numbers,
        vec![2, 2, 5, -2, 7, -1, 9, -2, 14, -13, 13, -17, 28, -33, 40]
    );
    let s = OrbitStructure {
        cycles: vec![cyc(2, 1, 1), cyc(10, 1, 1)],
    };
    let w = solve_regular_orbits(&prof, &s).unwrap();
    let rows = w.decomposition(&prof);
    let ten: Vec<i64> = (1..=15).map(|n| if n == 12 { -11 } else { 1 }).collect();
    assert_eq!(row(&rows, "L(10^1)"), ten.as_slice());
    let two: Vec<i64> = (1..=15).map(|n| if n % 4 == 0 { -3 } else { 1 }).collect();
    assert_eq!(row(&rows, "L(2^1)"), two.as_slice());
    assert_eq!(
        row(&rows, "L_ro"),
        &[0, 0, 3, 0, 5, -3, 7, 0, 12, -15, 11, -3, 26, -35, 38]
    );
}

#[test]
fn genus_three_surviving_strata() {
    let p = rp(&[1, 0, -1, 1, -1, 0, 1]);
    assert_eq!(
        feasible_strata(&p, 15).unwrap(),
        strata(&[&[8], &[2, 6], &[2, 2, 2, 2]])
    );
}

#[test]
fn genus_three_smallest_root_eliminated() {
    let plus = rp_prod(&[1, 0, -1, -1], &[1, 1, 0, -1]);
    for p in [plus.clone(), plus.negate_variable()] {
        assert!(feasible_strata(&p, 15).unwrap().is_empty());
    }
}

#[test]
fn all_fixed_structure_fails_at_two() {
    let p = rp_prod(&[1, 0, -1, -1], &[1, 1, 0, -1]);
    let prof = lefschetz_sequence(&p, 15).unwrap();
    let s = OrbitStructure {
        cycles: vec![cyc(2, 1, 0), cyc(2, 1, 0), cyc(4, 1, 0)],
    };
    let err = solve_regular_orbits(&prof, &s).unwrap_err();
    assert_eq!(err.n, 1);
    // Rotation only matters from n = 2 on; with the first fixed point
    // separatrices left free the failure moves to the second iterate.
    let s = OrbitStructure {
        cycles: vec![cyc(2, 1, 2), cyc(2, 1, 2), cyc(4, 1, 2)],
    };
    let err = solve_regular_orbits(&prof, &s).unwrap_err();
    assert_eq!(err.n, 2);
    assert_eq!(err.reason, InfeasibleReason::Sign);
}

#[test]
fn genus_four_surviving_strata() {
    let p = rp(&[1, 0, 0, 1, -1, 1, 0, 0, 1]);
    let got = feasible_strata(&p, 15).unwrap();
    assert!(got.contains(&Stratum::new(vec![2, 10]).unwrap()));
    assert!(got.contains(&Stratum::new(vec![2, 2, 2, 2, 4]).unwrap()));
    assert!(got.len() >= 2);
}

// Degree-6 candidates below the genus-2 minimum, in increasing Perron root.
fn genus_three_candidates() -> Vec<IntPoly> {
    let f = |d: &[i64]| IntPoly::from_descending(d);
    vec![
        f(&[1, 0, -1, -1]).mul(&f(&[1, 1, 0, -1])),
        f(&[1, 0, -1, -1, -1, 0, 1]),
        f(&[1, 0, 1, -1]).mul(&f(&[1, -1, 0, -1])),
        f(&[1, -1, 0, -1, 0, -1, 1]),
        f(&[1, -1, -1, 1, -1, -1, 1]),
        f(&[1, -2, 3, -5, 3, -2, 1]),
        f(&[1, 0, -1, -2, -1, 0, 1]),
        f(&[1, -2, 2, -3, 2, -2, 1]),
        f(&[1, -1, 1, -4, 1, -1, 1]),
    ]
}

#[test]
fn witnesses_reverify() {
    for desc in genus_three_candidates() {
        let p = ReciprocalPolynomial::from_int_poly(&desc).unwrap();
        for q in [p.clone(), p.negate_variable()] {
            let Ok(prof) = lefschetz_sequence(&q, 20) else {
                continue;
            };
            for stratum in enumerate_strata(3) {
                for s in enumerate_orbit_structures(&stratum, prof.sign, 20) {
                    assert_eq!(s.degrees(), stratum.degrees);
                    if let Ok(w) = solve_regular_orbits(&prof, &s) {
                        check_witness(&w, &prof.numbers);
                    }
                }
            }
        }
    }
}

fn check_witness(w: &FeasibilityWitness, numbers: &[i64]) {
    for n in 1..=w.horizon {
        assert_eq!(w.lefschetz(n), numbers[n - 1]);
    }
}

#[test]
fn longer_horizon_never_revives() {
    for desc in genus_three_candidates() {
        let p = ReciprocalPolynomial::from_int_poly(&desc).unwrap();
        for q in [p.clone(), p.negate_variable()] {
            let Ok(short) = lefschetz_sequence(&q, 10) else {
                continue;
            };
            let long = lefschetz_sequence(&q, 30).unwrap();
            for stratum in enumerate_strata(3) {
                for s in enumerate_orbit_structures(&stratum, short.sign, 30) {
                    if solve_regular_orbits(&short, &s).is_err() {
                        assert!(solve_regular_orbits(&long, &s).is_err());
                    }
                }
            }
        }
    }
}

#[test]
fn genus_two_pipeline_leaves_one_candidate() {
    let stratum = Stratum::new(vec![4, 4]).unwrap();
    // (L(f), L(f²), L(f³)) for each candidate.
    let expected: [(i64, i64, i64); 9] = [
        (3, 3, 0),
        (2, 2, -1),
        (2, 3, -4),
        (1, 3, -2),
        (1, 1, 1),
        (0, 4, -6),
        (2, 2, -4),
        (0, 2, -3),
        (1, 3, -8),
    ];
    let mut survivors = Vec::new();
    for (i, p) in genus_three_candidates().iter().enumerate() {
        let p = ReciprocalPolynomial::from_int_poly(p).unwrap();
        let prof = lefschetz_sequence(&p, 15).unwrap();
        assert_eq!(prof.sign, 1);
        let got = (prof.numbers[0], prof.numbers[1], prof.numbers[2]);
        match i + 1 {
            1 => assert_eq!(got.0, expected[i].0),
            3 | 6 | 9 => assert_eq!(got.1, expected[i].1),
            _ => assert_eq!((got.0, got.2), (expected[i].0, expected[i].2)),
        }
        let ws = stratum_feasible(&p, &stratum, 15).unwrap();
        if !ws.is_empty() {
            survivors.push((i + 1, ws));
        }
    }
    assert_eq!(survivors.iter().map(|s| s.0).collect::<Vec<_>>(), vec![8]);
    for w in &survivors[0].1 {
        assert_eq!(w.structure.cycles.len(), 1);
        assert_eq!(
            (w.structure.cycles[0].degree, w.structure.cycles[0].length),
            (4, 2)
        );
        assert_eq!(w.nonzero_counts().get(&3), Some(&1));
        assert_eq!(w.regular_orbit_counts[0], 0);
    }
}
