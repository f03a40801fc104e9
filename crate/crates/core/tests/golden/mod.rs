//! Reference tables for the genus-4 and genus-3 constructions.
#![allow(dead_code)]

pub const G4_PERM: [usize; 9] = [5, 3, 9, 8, 6, 2, 7, 1, 4];
pub const G4_PATH: [u8; 14] = [0, 1, 0, 0, 1, 1, 1, 0, 1, 0, 0, 1, 0, 0];
pub const G4_MINPOLY_DESC: [i64; 9] = [1, 0, 0, 1, -1, 1, 0, 0, 1];
pub const G4_ALPHA: f64 = -1.2806381562677576;

pub const G4_MATRIX: [[i64; 9]; 9] = [
    [1, 1, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 1, 1, 1, 1, 1, 0],
    [0, 0, 0, 0, 0, 1, 0, 1, 1],
    [1, 0, 0, 1, 0, 0, 1, 0, 0],
    [0, 0, 1, 0, 1, 0, 0, 0, 0],
    [0, 0, 0, 1, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 1, 1, 0, 0],
    [1, 0, 0, 0, 0, 1, 1, 1, 0],
    [1, 1, 0, 1, 0, 0, 1, 0, 0],
];

pub const G4_LAMBDA: [[i64; 8]; 9] = [
    [0, 1, -2, 1, -1, 0, 1, -1],
    [0, -1, 1, 0, 1, 0, -1, 0],
    [-1, 0, -1, 0, 0, -1, 0, 0],
    [-1, 2, -1, 1, 0, -1, 1, 0],
    [1, -1, 1, 0, 0, 1, 0, 0],
    [-1, 1, -1, 1, -1, -1, 0, -1],
    [1, -2, 2, -2, 1, 1, -1, 1],
    [0, 0, 1, -1, 1, 0, 0, 1],
    [1, 0, 0, 0, 0, 0, 0, 0],
];

pub const G4_TAU: [[i64; 8]; 9] = [
    [-1, 0, 0, 0, 0, -1, 0, 0],
    [0, 0, -1, 1, 0, 1, 0, -1],
    [0, 0, -1, 0, -1, 0, 0, -1],
    [0, 1, 0, 0, 0, 0, 1, 0],
    [0, 0, 0, 1, 0, 0, 0, 0],
    [0, 0, -1, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, 0, -1, 0],
    [0, 1, 0, 0, 0, 0, 0, 0],
    [-1, 0, 0, 0, 0, 0, 0, 0],
];

pub type Pt = ([i64; 8], [i64; 8]);

pub const G4_P: [Pt; 18] = [
    ([0, 0, 0, 0, 0, 0, 0, 0], [0, 0, 0, 0, 0, 0, 0, 0]),
    ([0, 1, -2, 1, -1, 0, 1, -1], [-1, 0, 0, 0, 0, -1, 0, 0]),
    ([0, 0, -1, 1, 0, 0, 0, -1], [-1, 0, -1, 1, 0, 0, 0, -1]),
    ([-1, 0, -2, 1, 0, -1, 0, -1], [-1, 0, -2, 1, -1, 0, 0, -2]),
    ([-2, 2, -3, 2, 0, -2, 1, -1], [-1, 1, -2, 1, -1, 0, 1, -2]),
    ([-1, 1, -2, 2, 0, -1, 1, -1], [-1, 1, -2, 2, -1, 0, 1, -2]),
    ([-2, 2, -3, 3, -1, -2, 1, -2], [-1, 1, -3, 2, -1, 0, 2, -2]),
    ([-1, 0, -1, 1, 0, -1, 0, -1], [-1, 1, -3, 2, -1, 0, 1, -2]),
    ([-1, 0, 0, 0, 1, -1, 0, 0], [-1, 2, -3, 2, -1, 0, 1, -2]),
    ([0, 0, 0, 0, 1, -1, 0, 0], [-2, 2, -3, 2, -1, 0, 1, -2]),
    ([1, -2, 1, -1, 1, 0, -1, 0], [-2, 1, -3, 2, -1, 0, 0, -2]),
    ([1, -3, 3, -2, 2, 0, -2, 1], [-1, 1, -3, 2, -1, 1, 0, -2]),
    ([0, -1, 1, 0, 1, -1, -1, 0], [-1, 1, -3, 2, -1, 1, 1, -2]),
    ([0, 0, 0, 0, 0, -1, 0, 0], [-1, 1, -2, 1, -1, 0, 1, -1]),
    ([1, -1, 1, -1, 1, 0, 0, 1], [-1, 1, -1, 1, -1, 0, 0, -1]),
    ([1, -1, 0, 0, 0, 0, 0, 0], [-1, 0, -1, 1, -1, 0, 0, -1]),
    ([0, -1, 0, 0, 0, 0, 0, 0], [0, 0, -1, 1, -1, 0, 0, -1]),
    ([1, -1, 1, 0, 0, 1, 0, 0], [0, 0, 0, 1, 0, 0, 0, 0]),
];

pub const G4_Q: [Pt; 18] = [
    ([0, 0, 0, 0, 0, 0, 0, 0], [0, 0, 0, 0, 0, 0, 0, 0]),
    ([1, -2, 1, -1, 0, 1, -1, 0], [0, -1, 0, 0, 0, 0, -1, 0]),
    ([0, -1, 1, 0, 0, 0, -1, 0], [1, -1, 0, 0, 0, 1, 0, 0]),
    ([0, -2, 2, -1, 0, 0, -1, 1], [2, -1, 0, 0, -1, 1, 0, 0]),
    ([2, -3, 4, -2, 0, 1, -1, 2], [2, -1, 1, 0, -1, 1, 0, 1]),
    ([1, -2, 3, -1, 0, 1, -1, 1], [2, -1, 1, 0, 0, 1, 0, 1]),
    ([2, -3, 5, -3, 0, 1, -2, 2], [2, -1, 1, -1, 0, 1, 0, 2]),
    ([0, -1, 2, -1, 0, 0, -1, 1], [2, -1, 1, -1, 0, 1, 0, 1]),
    ([0, 0, 1, 0, 0, 0, 0, 1], [2, -1, 2, -1, 0, 1, 0, 1]),
    ([0, 0, 0, 1, -1, 0, 0, 0], [2, -2, 2, -1, 0, 1, 0, 1]),
    ([-2, 1, -2, 2, -1, -1, 0, -1], [2, -2, 1, -1, 0, 1, 0, 0]),
    ([-3, 3, -3, 3, -1, -2, 1, -1], [2, -1, 1, -1, 0, 1, 1, 0]),
    ([-1, 1, 0, 1, -1, -1, 0, 0], [2, -1, 1, -1, 0, 1, 1, 1]),
    ([0, 0, 0, 0, -1, 0, 0, 0], [1, -1, 1, -1, 0, 0, 0, 1]),
    ([-1, 1, -2, 2, -1, 0, 1, -1], [1, -1, 1, 0, 0, 0, 0, 0]),
    ([-1, 0, -1, 1, -1, 0, 0, -1], [1, -1, 0, 0, 0, 0, 0, 0]),
    ([-1, 0, 0, 0, 0, 0, 0, 0], [1, 0, 0, 0, 0, 0, 0, 0]),
    ([-1, 1, -1, 1, 0, 0, 0, -1], [0, 0, 0, 0, 1, 0, 0, 0]),
];

/// (source vertex indices, image vertex indices), 1-based.
pub const G4_PIECES: [(&[usize], &[usize]); 8] = [
    (&[1, 2, 3, 17, 18], &[8, 14, 3, 4, 6]),
    (&[3, 16, 17], &[18, 1, 17]),
    (&[3, 4, 16], &[6, 4, 5]),
    (&[4, 5, 14, 15, 16], &[11, 12, 13, 9, 10]),
    (&[5, 6, 14], &[8, 6, 7]),
    (&[6, 8, 9, 10, 11, 13, 14], &[15, 16, 17, 1, 2, 3, 14]),
    (&[6, 7, 8], &[9, 13, 8]),
    (&[11, 12, 13], &[14, 8, 13]),
];

pub const G3_PERM: [usize; 10] = [6, 3, 8, 2, 7, 4, 10, 9, 5, 1];
pub const G3_PATH: [u8; 10] = [1, 1, 1, 0, 0, 1, 0, 1, 0, 0];
pub const G3_MATRIX: [[i64; 10]; 10] = [
    [1, 1, 1, 1, 1, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 1, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 1, 0, 0, 0, 1, 1],
    [0, 0, 1, 0, 0, 1, 0, 0, 0, 0],
    [1, 0, 0, 1, 1, 0, 0, 0, 1, 1],
    [0, 1, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 1, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 1, 0, 0, 0, 0],
];
