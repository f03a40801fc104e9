//! Strata and the Lefschetz compatibility filter.
//!
//! For a candidate homology polynomial the Lefschetz numbers `L(φⁿ) = 2 − p_n`
//! are compared with what a pseudo-Anosov map on a given stratum can
//! produce: each periodic singularity contributes `1` or `1 − 2(d+1)`
//! depending on whether its outgoing separatrices are fixed, and the rest
//! must be made up by regular periodic orbits, each point of which has index
//! `−1` when `signⁿ = +1` and `+1` otherwise.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::polycore::{analyze_roots, PerronConfig, ReciprocalPolynomial};

/// Default iterate horizon.
pub const DEFAULT_HORIZON: usize = 15;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LefschetzError {
    #[error("charpoly has no real simple dominant root")]
    NotAllowable,
    #[error("stratum degrees sum to {sum}, expected {expected}")]
    GaussBonnet { sum: u32, expected: u32 },
    #[error("orientable strata need even degrees ≥ 2, got {0}")]
    OddDegree(u32),
    #[error("genus {stratum} of the stratum differs from genus {poly} of the polynomial")]
    GenusMismatch { stratum: usize, poly: usize },
}

/// Multiset of singularity degrees, kept in ascending order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Stratum {
    pub genus: usize,
    pub degrees: Vec<u32>,
}

impl Stratum {
    /// Orientable stratum: even degrees ≥ 2 summing to `4g − 4`.
    pub fn new(mut degrees: Vec<u32>) -> Result<Self, LefschetzError> {
        degrees.sort_unstable();
        if let Some(&k) = degrees.iter().find(|&&k| k < 2 || k % 2 == 1) {
            return Err(LefschetzError::OddDegree(k));
        }
        let sum: u32 = degrees.iter().sum();
        if sum % 4 != 0 || sum == 0 {
            return Err(LefschetzError::GaussBonnet {
                sum,
                expected: (sum / 4 + 1) * 4,
            });
        }
        Ok(Stratum {
            genus: (sum as usize + 4) / 4,
            degrees,
        })
    }

    /// Stratum checked against an expected genus.
    pub fn with_genus(degrees: Vec<u32>, genus: usize) -> Result<Self, LefschetzError> {
        let sum: u32 = degrees.iter().sum();
        let expected = 4 * genus as u32 - 4;
        if sum != expected {
            return Err(LefschetzError::GaussBonnet { sum, expected });
        }
        Stratum::new(degrees)
    }

    /// `(degree, multiplicity)` pairs in ascending degree.
    pub fn classes(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for &k in &self.degrees {
            match out.last_mut() {
                Some((d, m)) if *d == k => *m += 1,
                _ => out.push((k, 1)),
            }
        }
        out
    }
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, k) in self.degrees.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", k)?;
        }
        f.write_str(")")
    }
}

/// All orientable strata of genus `g`: partitions of `4g − 4` into even
/// parts, each listed ascending, in lexicographic order.
pub fn enumerate_strata(genus: usize) -> Vec<Stratum> {
    assert!(genus >= 2, "strata need genus ≥ 2");
    let half = 2 * genus - 2;
    let mut out = Vec::new();
    let mut cur = Vec::new();
    partitions(half, 1, &mut cur, &mut out);
    let mut strata: Vec<Stratum> = out
        .into_iter()
        .map(|parts: Vec<u32>| Stratum {
            genus,
            degrees: parts.iter().map(|p| 2 * p).collect(),
        })
        .collect();
    strata.sort();
    strata
}

fn partitions(rest: usize, min: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if rest == 0 {
        out.push(cur.clone());
        return;
    }
    for part in min..=rest {
        cur.push(part as u32);
        partitions(rest - part, part, cur, out);
        cur.pop();
    }
}

/// Orienting double cover of a quadratic-differential stratum: an odd
/// degree `k` lifts to one singularity of degree `2k + 2`, an even degree to
/// two of degree `k`; zero degrees are dropped. Returns the stratum and its
/// genus.
pub fn orienting_double_cover(data: &[i32]) -> (Stratum, usize) {
    let mut degrees = Vec::new();
    for &k in data {
        if k % 2 != 0 {
            let lifted = 2 * k + 2;
            if lifted != 0 {
                degrees.push(lifted as u32);
            }
        } else if k != 0 {
            degrees.push(k as u32);
            degrees.push(k as u32);
        }
    }
    degrees.sort_unstable();
    let sum: u32 = degrees.iter().sum();
    let genus = (sum as usize + 4) / 4;
    (Stratum { genus, degrees }, genus)
}

/// Lefschetz numbers `L(φⁿ) = 2 − Tr(φ_*ⁿ)` with the sign of the dominant root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LefschetzProfile {
    pub charpoly: ReciprocalPolynomial,
    pub sign: i8,
    /// `numbers[n − 1] = L(φⁿ)`.
    pub numbers: Vec<i64>,
}

impl LefschetzProfile {
    pub fn horizon(&self) -> usize {
        self.numbers.len()
    }

    pub fn genus(&self) -> usize {
        self.charpoly.genus()
    }
}

/// Lefschetz numbers up to `horizon`, with the sign read from the dominant
/// root of `charpoly`.
pub fn lefschetz_sequence(
    charpoly: &ReciprocalPolynomial,
    horizon: usize,
) -> Result<LefschetzProfile, LefschetzError> {
    let profile = analyze_roots(&charpoly.to_int_poly(), &PerronConfig::default())
        .map_err(|_| LefschetzError::NotAllowable)?;
    if !profile.dominant_is_real || !profile.strictly_dominant || !profile.simple {
        return Err(LefschetzError::NotAllowable);
    }
    let sign = if profile.dominant_value < 0.0 { -1 } else { 1 };
    let numbers = charpoly
        .traces(horizon)
        .iter()
        .map(|&p| 2 - p as i64)
        .collect();
    Ok(LefschetzProfile {
        charpoly: charpoly.clone(),
        sign,
        numbers,
    })
}

/// A cycle of singularities of degree `2d` and length `c`; the return map
/// `φ^c` turns the outgoing separatrices at each point by `rotation` steps
/// out of `2(d + 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SingularCycle {
    pub degree: u32,
    pub length: u32,
    pub rotation: u32,
}

impl SingularCycle {
    /// `2(d + 1)` for degree `2d`.
    pub fn separatrices(&self) -> u32 {
        self.degree + 2
    }

    /// Contribution of the cycle's points to `L(φⁿ)`.
    pub fn contribution(&self, sign: i8, n: usize) -> i64 {
        let c = self.length as usize;
        if n % c != 0 {
            return 0;
        }
        let m = (n / c) as u64;
        let s = self.separatrices() as u64;
        let positive = sign > 0 || n % 2 == 0;
        let per_point = if positive && (m * self.rotation as u64) % s == 0 {
            1 - s as i64
        } else {
            1
        };
        c as i64 * per_point
    }

    /// Label used in decomposition tables, e.g. `2^3` for a 3-cycle of
    /// degree-2 points.
    pub fn label(&self) -> String {
        alloc::format!("{}^{}", self.degree, self.length)
    }
}

/// Permutation scheme for the singularities with separatrix rotations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitStructure {
    pub cycles: Vec<SingularCycle>,
}

impl OrbitStructure {
    pub fn contribution(&self, sign: i8, n: usize) -> i64 {
        singularity_contribution(self, sign, n)
    }

    /// The underlying stratum degrees.
    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self
            .cycles
            .iter()
            .flat_map(|c| core::iter::repeat_n(c.degree, c.length as usize))
            .collect();
        d.sort_unstable();
        d
    }
}

impl fmt::Display for OrbitStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.cycles.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}[t={}]", c.label(), c.rotation)?;
        }
        Ok(())
    }
}

/// Sum over cycles of the singular fixed-point indices of `φⁿ`.
pub fn singularity_contribution(structure: &OrbitStructure, sign: i8, n: usize) -> i64 {
    structure
        .cycles
        .iter()
        .map(|c| c.contribution(sign, n))
        .sum()
}

/// `s(n)`: index of a regular fixed point of `φⁿ`.
pub fn regular_index(sign: i8, n: usize) -> i64 {
    if sign < 0 && n % 2 == 1 {
        1
    } else {
        -1
    }
}

/// Why a structure cannot be completed by regular orbits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InfeasibleReason {
    /// The regular part `R(n)` has the wrong sign.
    Sign,
    /// `R(n)` is too small for the orbits already forced at divisors of `n`.
    Negativity,
    /// The new orbit count is fractional.
    Integrality,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("infeasible at n = {n}: {reason:?}")]
pub struct Infeasible {
    pub n: usize,
    pub reason: InfeasibleReason,
}

/// A structure together with regular periodic orbit counts that reproduce
/// every Lefschetz number up to the horizon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibilityWitness {
    pub structure: OrbitStructure,
    pub sign: i8,
    /// `regular_orbit_counts[p − 1]` = number of regular orbits of period `p`.
    pub regular_orbit_counts: Vec<u64>,
    pub horizon: usize,
}

impl FeasibilityWitness {
    /// `s(n)·Σ_{p | n} p·c_p`.
    pub fn regular_contribution(&self, n: usize) -> i64 {
        let sum: i64 = (1..=n)
            .filter(|p| n % p == 0)
            .map(|p| p as i64 * self.regular_orbit_counts[p - 1] as i64)
            .sum();
        regular_index(self.sign, n) * sum
    }

    /// `L(φⁿ)` rebuilt from the parts.
    pub fn lefschetz(&self, n: usize) -> i64 {
        singularity_contribution(&self.structure, self.sign, n) + self.regular_contribution(n)
    }

    /// Periods with a nonzero orbit count.
    pub fn nonzero_counts(&self) -> BTreeMap<usize, u64> {
        self.regular_orbit_counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| (i + 1, c))
            .collect()
    }

    /// Decomposition rows for `n = 1..=horizon`: total Lefschetz number, one
    /// row per singular cycle, then the regular part.
    pub fn decomposition(&self, profile: &LefschetzProfile) -> Vec<(String, Vec<i64>)> {
        let h = self.horizon;
        let mut rows = Vec::new();
        rows.push((String::from("L"), profile.numbers[..h].to_vec()));
        let mut cycles = self.structure.cycles.clone();
        cycles.sort_by(|a, b| b.length.cmp(&a.length).then(b.degree.cmp(&a.degree)));
        for c in cycles {
            rows.push((
                alloc::format!("L({})", c.label()),
                (1..=h).map(|n| c.contribution(self.sign, n)).collect(),
            ));
        }
        rows.push((
            String::from("L_ro"),
            (1..=h).map(|n| self.regular_contribution(n)).collect(),
        ));
        rows
    }
}

/// Solves for regular periodic orbit counts making up the Lefschetz deficit.
pub fn solve_regular_orbits(
    profile: &LefschetzProfile,
    structure: &OrbitStructure,
) -> Result<FeasibilityWitness, Infeasible> {
    let horizon = profile.horizon();
    let sign = profile.sign;
    let mut counts = vec![0u64; horizon];
    for n in 1..=horizon {
        let deficit = profile.numbers[n - 1] - singularity_contribution(structure, sign, n);
        let s = regular_index(sign, n);
        let regular = deficit * s;
        if regular < 0 {
            return Err(Infeasible {
                n,
                reason: InfeasibleReason::Sign,
            });
        }
        let forced: i64 = (1..n)
            .filter(|p| n % p == 0)
            .map(|p| p as i64 * counts[p - 1] as i64)
            .sum();
        let rest = regular - forced;
        if rest < 0 {
            return Err(Infeasible {
                n,
                reason: InfeasibleReason::Negativity,
            });
        }
        if rest % n as i64 != 0 {
            return Err(Infeasible {
                n,
                reason: InfeasibleReason::Integrality,
            });
        }
        counts[n - 1] = (rest / n as i64) as u64;
    }
    Ok(FeasibilityWitness {
        structure: structure.clone(),
        sign,
        regular_orbit_counts: counts,
        horizon,
    })
}

/// Canonical rotation representatives for a cycle: only the order of the
/// rotation matters, so `t` is replaced by `gcd(t, 2(d+1))`. The parity
/// constraint (odd iff `sign = −1` and the length is odd) is kept.
fn rotation_classes(degree: u32, length: u32, sign: i8) -> Vec<u32> {
    let s = degree + 2;
    let want_odd = sign < 0 && length % 2 == 1;
    let mut reps: BTreeSet<u32> = BTreeSet::new();
    for t in 0..s {
        if (t % 2 == 1) != want_odd {
            continue;
        }
        reps.insert(gcd(t, s) % s);
    }
    reps.into_iter().collect()
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Every orbit structure on a stratum for the given sign, deduplicated by
/// the sequence of singular contributions up to `horizon`.
pub fn enumerate_orbit_structures(
    stratum: &Stratum,
    sign: i8,
    horizon: usize,
) -> Vec<OrbitStructure> {
    // Per degree class: multisets of (length, rotation) summing to the multiplicity.
    let mut per_class: Vec<Vec<Vec<SingularCycle>>> = Vec::new();
    for (degree, mult) in stratum.classes() {
        let mut options: Vec<SingularCycle> = Vec::new();
        for length in 1..=mult as u32 {
            for rotation in rotation_classes(degree, length, sign) {
                options.push(SingularCycle {
                    degree,
                    length,
                    rotation,
                });
            }
        }
        let mut out = Vec::new();
        let mut cur = Vec::new();
        cycle_multisets(&options, 0, mult as u32, &mut cur, &mut out);
        per_class.push(out);
    }
    let mut structures = Vec::new();
    let mut cur: Vec<SingularCycle> = Vec::new();
    product(&per_class, 0, &mut cur, &mut structures);

    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut out = Vec::new();
    for mut s in structures {
        s.sort();
        let st = OrbitStructure { cycles: s };
        let fingerprint: Vec<i64> = (1..=horizon)
            .map(|n| singularity_contribution(&st, sign, n))
            .collect();
        if seen.insert(fingerprint) {
            out.push(st);
        }
    }
    out
}

fn cycle_multisets(
    options: &[SingularCycle],
    start: usize,
    rest: u32,
    cur: &mut Vec<SingularCycle>,
    out: &mut Vec<Vec<SingularCycle>>,
) {
    if rest == 0 {
        out.push(cur.clone());
        return;
    }
    for i in start..options.len() {
        if options[i].length > rest {
            continue;
        }
        cur.push(options[i]);
        cycle_multisets(options, i, rest - options[i].length, cur, out);
        cur.pop();
    }
}

fn product(
    per_class: &[Vec<Vec<SingularCycle>>],
    idx: usize,
    cur: &mut Vec<SingularCycle>,
    out: &mut Vec<Vec<SingularCycle>>,
) {
    if idx == per_class.len() {
        out.push(cur.clone());
        return;
    }
    for choice in &per_class[idx] {
        let len = cur.len();
        cur.extend_from_slice(choice);
        product(per_class, idx + 1, cur, out);
        cur.truncate(len);
    }
}

/// Every witness for the stratum, one per distinct contribution sequence.
pub fn stratum_feasible_profile(
    profile: &LefschetzProfile,
    stratum: &Stratum,
) -> Vec<FeasibilityWitness> {
    enumerate_orbit_structures(stratum, profile.sign, profile.horizon())
        .iter()
        .filter_map(|s| solve_regular_orbits(profile, s).ok())
        .collect()
}

/// Every witness for `charpoly` on `stratum` up to `horizon`; empty when the
/// stratum is eliminated.
pub fn stratum_feasible(
    charpoly: &ReciprocalPolynomial,
    stratum: &Stratum,
    horizon: usize,
) -> Result<Vec<FeasibilityWitness>, LefschetzError> {
    if stratum.genus != charpoly.genus() {
        return Err(LefschetzError::GenusMismatch {
            stratum: stratum.genus,
            poly: charpoly.genus(),
        });
    }
    let profile = lefschetz_sequence(charpoly, horizon)?;
    Ok(stratum_feasible_profile(&profile, stratum))
}

/// Strata of the polynomial's genus that admit at least one witness.
pub fn feasible_strata(
    charpoly: &ReciprocalPolynomial,
    horizon: usize,
) -> Result<Vec<Stratum>, LefschetzError> {
    let profile = lefschetz_sequence(charpoly, horizon)?;
    Ok(enumerate_strata(charpoly.genus())
        .into_iter()
        .filter(|s| {
            enumerate_orbit_structures(s, profile.sign, horizon)
                .iter()
                .any(|st| solve_regular_orbits(&profile, st).is_ok())
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::IntPoly;

    fn rp(desc: &[i64]) -> ReciprocalPolynomial {
        ReciprocalPolynomial::from_int_poly(&IntPoly::from_descending(desc)).unwrap()
    }

    #[test]
    fn genus_three_strata() {
        let s: Vec<Vec<u32>> = enumerate_strata(3).into_iter().map(|s| s.degrees).collect();
        assert_eq!(
            s,
            vec![
                vec![2, 2, 2, 2],
                vec![2, 2, 4],
                vec![2, 6],
                vec![4, 4],
                vec![8]
            ]
        );
        assert_eq!(enumerate_strata(2).len(), 2);
    }

    #[test]
    fn double_cover_examples() {
        let (s, g) = orienting_double_cover(&[-1, -1, -1, -1, -1, 1, 0]);
        assert_eq!((s.degrees, g), (vec![4], 2));
        let (s, g) = orienting_double_cover(&[-1, -1, -1, -1, -1, -1, 1, 1]);
        assert_eq!((s.degrees, g), (vec![4, 4], 3));
        let (s, g) = orienting_double_cover(&[2, 2]);
        assert_eq!((s.degrees, g), (vec![2, 2, 2, 2], 3));
    }

    #[test]
    fn cycle_contributions() {
        let three = SingularCycle {
            degree: 2,
            length: 3,
            rotation: 1,
        };
        assert_eq!(three.contribution(-1, 12), -9);
        for n in [3, 6, 9] {
            assert_eq!(three.contribution(-1, n), 3);
        }
        let fixed = SingularCycle {
            degree: 2,
            length: 1,
            rotation: 1,
        };
        assert_eq!(fixed.contribution(-1, 4), -3);
        for n in 1..=3 {
            assert_eq!(fixed.contribution(-1, n), 1);
        }
        let ten = SingularCycle {
            degree: 10,
            length: 1,
            rotation: 1,
        };
        assert_eq!(ten.contribution(-1, 12), -11);
        assert!((1..12).all(|n| ten.contribution(-1, n) == 1));
    }

    #[test]
    fn fixed_degree_four_with_even_rotation() {
        // Index +1 at n = 1 and 2, then 1 − 2·3 = −5 at n = 3.
        for t in [2, 4] {
            let c = SingularCycle {
                degree: 4,
                length: 1,
                rotation: t,
            };
            assert_eq!(c.contribution(1, 1), 1);
            assert_eq!(c.contribution(1, 2), 1);
            assert_eq!(c.contribution(1, 3), -5);
        }
    }

    #[test]
    fn parity_soundness() {
        for stratum in enumerate_strata(4) {
            for sign in [-1i8, 1] {
                for st in enumerate_orbit_structures(&stratum, sign, 30) {
                    for c in &st.cycles {
                        let s = c.separatrices() as usize;
                        for m in 1..=30usize {
                            if (m * c.rotation as usize) % s == 0 {
                                let n = m * c.length as usize;
                                assert!(sign > 0 || n % 2 == 0, "{st} m={m}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn empty_structure_zero_numbers() {
        let profile = LefschetzProfile {
            charpoly: rp(&[1, -3, 1]),
            sign: 1,
            numbers: vec![0; 10],
        };
        let w = solve_regular_orbits(&profile, &OrbitStructure { cycles: vec![] }).unwrap();
        assert!(w.regular_orbit_counts.iter().all(|&c| c == 0));
    }

    #[test]
    fn lefschetz_numbers_genus_three() {
        let p = IntPoly::from_descending(&[1, 0, -1, -1])
            .mul(&IntPoly::from_descending(&[1, 1, 0, -1]));
        let prof =
            lefschetz_sequence(&ReciprocalPolynomial::from_int_poly(&p).unwrap(), 6).unwrap();
        assert_eq!(prof.sign, 1);
        assert_eq!(
            (
                prof.numbers[0],
                prof.numbers[1],
                prof.numbers[3],
                prof.numbers[5]
            ),
            (3, -1, 3, -1)
        );
    }
}
