//! Reference rows of the published triangles, used by `verify`.

/// ECO matrix of `OMEGA_BELL`, rows 1-6.
pub const OMEGA_M: &[&[u64]] = &[
    &[1],
    &[1, 1],
    &[2, 1, 2],
    &[5, 3, 2, 5],
    &[15, 10, 7, 5, 15],
    &[52, 37, 27, 20, 15, 52],
];

/// Bell triangle: `OMEGA_M` with its diagonal moved to column 1.
pub const BELL_A: &[&[u64]] = &[
    &[1],
    &[1, 1],
    &[2, 2, 1],
    &[5, 5, 3, 2],
    &[15, 15, 10, 7, 5],
    &[52, 52, 37, 27, 20, 15],
];

/// Catalan triangle of ballot numbers, rows 1-6.
pub const CATALAN_M: &[&[u64]] = &[
    &[1],
    &[1, 1],
    &[2, 2, 1],
    &[5, 5, 3, 1],
    &[14, 14, 9, 4, 1],
    &[42, 42, 28, 14, 5, 1],
];

/// ECO matrix of `PAIR_INVOLUTION`, rows 1-7.
pub const INVOLUTION_M: &[&[u64]] = &[
    &[0, 1],
    &[1, 0, 1],
    &[2, 0, 0, 2],
    &[6, 0, 0, 0, 4],
    &[16, 0, 0, 0, 0, 10],
    &[50, 0, 0, 0, 0, 0, 26],
    &[156, 0, 0, 0, 0, 0, 0, 76],
];

/// Matrix of `PHI_MOTZKIN`, rows 1-10 (column 1: barred labels).
pub const MOTZKIN_A: &[&[u64]] = &[
    &[1],
    &[1, 1],
    &[2, 2],
    &[4, 4, 1],
    &[9, 9, 3],
    &[21, 21, 8, 1],
    &[51, 51, 21, 4],
    &[127, 127, 55, 13, 1],
    &[323, 323, 145, 39, 5],
    &[835, 835, 385, 113, 19, 1],
];
