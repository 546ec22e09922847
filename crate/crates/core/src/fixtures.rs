//! The two loops worked through by hand in the literature on SRAR and RA2
//! loops, embedded so tests and the CLI can use them without a catalog file.
//!
//! Tables are 1-indexed exactly as printed.

use crate::table::{validate_table, LoopTable};

/// Bol loop 16.7.2.1 from Moorhouse's list of Bol loops of order 16.
/// Right Bol, not Moufang, not SRAR.
pub const BOL_16_7_2_1: [[usize; 16]; 16] = [
    [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16],
    [2, 1, 4, 3, 8, 7, 6, 5, 10, 11, 12, 9, 15, 13, 16, 14],
    [3, 4, 1, 2, 6, 5, 8, 7, 11, 12, 9, 10, 16, 15, 14, 13],
    [4, 3, 2, 1, 7, 8, 5, 6, 12, 9, 10, 11, 14, 16, 13, 15],
    [5, 8, 6, 7, 1, 3, 4, 2, 16, 14, 13, 15, 11, 10, 12, 9],
    [6, 7, 5, 8, 3, 1, 2, 4, 13, 15, 16, 14, 9, 12, 10, 11],
    [7, 6, 8, 5, 4, 2, 1, 3, 15, 16, 14, 13, 10, 9, 11, 12],
    [8, 5, 7, 6, 2, 4, 3, 1, 14, 13, 15, 16, 12, 11, 9, 10],
    [9, 10, 13, 12, 16, 11, 15, 14, 5, 7, 6, 8, 3, 4, 2, 1],
    [10, 9, 15, 11, 14, 12, 13, 16, 8, 5, 7, 6, 4, 1, 3, 2],
    [11, 12, 16, 10, 13, 9, 14, 15, 6, 8, 5, 7, 1, 2, 4, 3],
    [12, 11, 14, 9, 15, 10, 16, 13, 7, 6, 8, 5, 2, 3, 1, 4],
    [13, 15, 9, 14, 11, 16, 10, 12, 3, 2, 1, 4, 5, 8, 7, 6],
    [14, 16, 12, 13, 10, 15, 11, 9, 2, 1, 4, 3, 7, 5, 6, 8],
    [15, 13, 10, 16, 12, 14, 9, 11, 4, 3, 2, 1, 8, 6, 5, 7],
    [16, 14, 11, 15, 9, 13, 12, 10, 1, 4, 3, 2, 6, 7, 8, 5],
];

/// The smallest Moufang loop, M(S3, 2). RA2, hence SRAR.
pub const MOUFANG_12: [[usize; 12]; 12] = [
    [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12],
    [2, 3, 1, 5, 6, 4, 8, 9, 7, 12, 10, 11],
    [3, 1, 2, 6, 4, 5, 9, 7, 8, 11, 12, 10],
    [4, 6, 5, 1, 3, 2, 10, 11, 12, 7, 8, 9],
    [5, 4, 6, 2, 1, 3, 11, 12, 10, 9, 7, 8],
    [6, 5, 4, 3, 2, 1, 12, 10, 11, 8, 9, 7],
    [7, 9, 8, 10, 11, 12, 1, 3, 2, 4, 5, 6],
    [8, 7, 9, 11, 12, 10, 2, 1, 3, 6, 4, 5],
    [9, 8, 7, 12, 10, 11, 3, 2, 1, 5, 6, 4],
    [10, 11, 12, 7, 9, 8, 4, 6, 5, 1, 2, 3],
    [11, 12, 10, 8, 7, 9, 5, 4, 6, 3, 1, 2],
    [12, 10, 11, 9, 8, 7, 6, 5, 4, 2, 3, 1],
];

pub fn bol_16() -> LoopTable {
    validate_table(&BOL_16_7_2_1).expect("embedded table is a loop")
}

pub fn moufang_12() -> LoopTable {
    validate_table(&MOUFANG_12).expect("embedded table is a loop")
}

/// The cyclic group of order `n` with `i·j = i + j mod n`.
pub fn cyclic(n: usize) -> LoopTable {
    let rows: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| (i + j) % n + 1).collect()).collect();
    validate_table(&rows).expect("cyclic group table is a loop")
}
