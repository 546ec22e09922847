//! Exhaustive enumeration of normalized loop tables (reduced Latin squares).
//!
//! Cells are filled row-major starting at row 2, column 2, trying values in
//! ascending order, so tables are produced in lexicographic order of their
//! row-major content. Work is split on the second row: each admissible
//! second row is an independent [`Partition`], and partitions are themselves
//! in lexicographic order.

use rayon::prelude::*;

use crate::table::{LoopError, LoopTable};

/// Largest order accepted by the enumerator.
pub const MAX_ENUM_ORDER: usize = 7;

/// All normalized loops of one order whose second row is fixed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    order: usize,
    second_row: Vec<u8>,
}

impl Partition {
    pub fn order(&self) -> usize {
        self.order
    }

    /// Zero-indexed second row shared by every loop in this partition.
    pub fn second_row(&self) -> &[u8] {
        &self.second_row
    }

    /// Visit every loop of the partition in lexicographic order.
    pub fn for_each(&self, mut visitor: impl FnMut(&LoopTable)) -> u64 {
        let n = self.order;
        let mut fill = Filler::new(n);
        for j in 0..n {
            fill.place(1, j, self.second_row[j]);
        }
        let mut scratch = LoopTable::assemble(n, fill.grid.clone(), 0);
        let cells: Vec<(usize, usize)> = (2..n).flat_map(|r| (1..n).map(move |c| (r, c))).collect();
        let mut count = 0;
        fill.run(&cells, 0, &mut |grid| {
            scratch.overwrite_normalized(grid);
            visitor(&scratch);
            count += 1;
        });
        count
    }
}

struct Filler {
    n: usize,
    grid: Vec<u8>,
    row_used: Vec<u16>,
    col_used: Vec<u16>,
}

impl Filler {
    /// Grid with first row and column in natural order.
    fn new(n: usize) -> Self {
        let mut f = Filler { n, grid: vec![0; n * n], row_used: vec![0; n], col_used: vec![0; n] };
        for i in 0..n {
            f.place(0, i, i as u8);
            if i > 0 {
                f.place(i, 0, i as u8);
            }
        }
        f
    }

    fn place(&mut self, r: usize, c: usize, v: u8) {
        self.grid[r * self.n + c] = v;
        self.row_used[r] |= 1 << v;
        self.col_used[c] |= 1 << v;
    }

    fn unplace(&mut self, r: usize, c: usize, v: u8) {
        self.row_used[r] &= !(1 << v);
        self.col_used[c] &= !(1 << v);
    }

    fn run(&mut self, cells: &[(usize, usize)], pos: usize, leaf: &mut dyn FnMut(&[u8])) {
        let Some(&(r, c)) = cells.get(pos) else {
            leaf(&self.grid);
            return;
        };
        let free = !(self.row_used[r] | self.col_used[c]) & ((1u16 << self.n) - 1);
        let mut bits = free;
        while bits != 0 {
            let v = bits.trailing_zeros() as u8;
            bits &= bits - 1;
            self.place(r, c, v);
            self.run(cells, pos + 1, leaf);
            self.unplace(r, c, v);
        }
    }
}

fn check_order(n: usize) -> Result<(), LoopError> {
    if n > MAX_ENUM_ORDER {
        return Err(LoopError::OrderTooLarge { order: n, limit: MAX_ENUM_ORDER });
    }
    if n < 2 {
        return Err(LoopError::Malformed(format!("enumeration order must be at least 2, got {n}")));
    }
    Ok(())
}

/// The work units for order `n`, in enumeration order.
pub fn partitions(n: usize) -> Result<Vec<Partition>, LoopError> {
    check_order(n)?;
    let mut fill = Filler::new(n);
    let cells: Vec<(usize, usize)> = (1..n).map(|c| (1, c)).collect();
    let mut out = Vec::new();
    fill.run(&cells, 0, &mut |grid| {
        out.push(Partition { order: n, second_row: grid[n..2 * n].to_vec() });
    });
    Ok(out)
}

/// Visit every normalized loop of order `n` exactly once, in lexicographic
/// order, returning the number visited.
pub fn enumerate_loops(n: usize, mut visitor: impl FnMut(&LoopTable)) -> Result<u64, LoopError> {
    Ok(partitions(n)?.iter().map(|p| p.for_each(&mut visitor)).sum())
}

/// Parallel variant of [`enumerate_loops`]: partitions run on the current
/// rayon pool, so the visitor may be called concurrently and in any order.
pub fn par_enumerate_loops(n: usize, visitor: impl Fn(&LoopTable) + Sync) -> Result<u64, LoopError> {
    Ok(partitions(n)?.par_iter().map(|p| p.for_each(&visitor)).sum())
}

/// Count normalized loops of order `n`.
pub fn count_loops(n: usize) -> Result<u64, LoopError> {
    par_enumerate_loops(n, |_| {})
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::validate_table;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_loops(2, |_| {}).unwrap(), 1);
        assert_eq!(enumerate_loops(3, |_| {}).unwrap(), 1);
        assert_eq!(enumerate_loops(4, |_| {}).unwrap(), 4);
    }

    #[test]
    fn order_limits() {
        assert_eq!(enumerate_loops(8, |_| {}).unwrap_err(), LoopError::OrderTooLarge { order: 8, limit: 7 });
        assert!(enumerate_loops(1, |_| {}).is_err());
    }

    #[test]
    fn z2_is_the_only_order_two_loop() {
        let mut seen = Vec::new();
        enumerate_loops(2, |l| seen.push(l.to_rows_one_based())).unwrap();
        assert_eq!(seen, vec![vec![vec![1, 2], vec![2, 1]]]);
    }

    #[test]
    fn order_five_is_sorted_unique_and_valid() {
        let mut seen: Vec<Vec<u8>> = Vec::new();
        enumerate_loops(5, |l| {
            assert!(l.is_normalized());
            assert_eq!(&validate_table(&l.to_rows_one_based()).unwrap(), l);
            seen.push(l.as_slice().to_vec());
        })
        .unwrap();
        assert_eq!(seen.len(), 56);
        assert!(seen.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn parallel_count_matches() {
        let seq = enumerate_loops(5, |_| {}).unwrap();
        let par = count_loops(5).unwrap();
        assert_eq!(seq, par);
        let from_parts: u64 = partitions(5).unwrap().iter().map(|p| p.for_each(|_| {})).sum();
        assert_eq!(from_parts, seq);
    }
}
