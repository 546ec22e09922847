//! Cayley-table representation of finite loops.
//!
//! Elements are stored as indices `0..n`. Everything that crosses the
//! library boundary as text (catalog files, reports, witnesses printed by
//! the CLI) is 1-indexed, so that element `1` of a printed table is index
//! `0` here.

use std::fmt;
use std::ops::Range;

use thiserror::Error;

/// Largest order a [`LoopTable`] can hold; elements are packed into `u8`.
pub const MAX_ORDER: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Line {
    Row,
    Column,
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Line::Row => f.write_str("row"),
            Line::Column => f.write_str("column"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LoopError {
    #[error("malformed table: {0}")]
    Malformed(String),
    /// `index` and `value` are 1-indexed.
    #[error("not a Latin square: {line} {index} repeats entry {value}")]
    NotLatin { line: Line, index: usize, value: usize },
    #[error("no element is a two-sided identity")]
    NoIdentity,
    #[error("order {order} exceeds the enumeration limit of {limit}")]
    OrderTooLarge { order: usize, limit: usize },
}

/// A finite loop given by its Cayley table.
///
/// Construct through [`validate_table`]; every value of this type is a
/// Latin square with a two-sided identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LoopTable {
    order: usize,
    table: Vec<u8>,
    identity: usize,
    rinv: Vec<u8>,
    linv: Vec<u8>,
}

/// Validate a 1-indexed Cayley table and build a [`LoopTable`] from it.
///
/// The identity is searched for rather than assumed to be element 1.
pub fn validate_table<R: AsRef<[usize]>>(raw: &[R]) -> Result<LoopTable, LoopError> {
    let n = raw.len();
    if n == 0 {
        return Err(LoopError::Malformed("empty table".into()));
    }
    if n > MAX_ORDER {
        return Err(LoopError::Malformed(format!("order {n} exceeds the supported maximum of {MAX_ORDER}")));
    }
    let mut table = Vec::with_capacity(n * n);
    for (i, row) in raw.iter().enumerate() {
        let row = row.as_ref();
        if row.len() != n {
            return Err(LoopError::Malformed(format!("row {} has {} entries, expected {n}", i + 1, row.len())));
        }
        for (j, &v) in row.iter().enumerate() {
            if v == 0 || v > n {
                return Err(LoopError::Malformed(format!(
                    "entry {v} at row {}, column {} is outside 1..{n}",
                    i + 1,
                    j + 1
                )));
            }
            table.push((v - 1) as u8);
        }
    }
    check_latin(n, &table)?;
    let identity = find_identity(n, &table).ok_or(LoopError::NoIdentity)?;
    Ok(LoopTable::assemble(n, table, identity))
}

fn check_latin(n: usize, table: &[u8]) -> Result<(), LoopError> {
    let mut seen = vec![false; n];
    for i in 0..n {
        seen.iter_mut().for_each(|s| *s = false);
        for j in 0..n {
            let v = table[i * n + j] as usize;
            if std::mem::replace(&mut seen[v], true) {
                return Err(LoopError::NotLatin { line: Line::Row, index: i + 1, value: v + 1 });
            }
        }
    }
    for j in 0..n {
        seen.iter_mut().for_each(|s| *s = false);
        for i in 0..n {
            let v = table[i * n + j] as usize;
            if std::mem::replace(&mut seen[v], true) {
                return Err(LoopError::NotLatin { line: Line::Column, index: j + 1, value: v + 1 });
            }
        }
    }
    Ok(())
}

fn find_identity(n: usize, table: &[u8]) -> Option<usize> {
    (0..n).find(|&e| (0..n).all(|x| table[e * n + x] as usize == x && table[x * n + e] as usize == x))
}

impl LoopTable {
    /// Build from a zero-indexed table already known to be a Latin square
    /// with identity `identity`.
    pub(crate) fn assemble(order: usize, table: Vec<u8>, identity: usize) -> Self {
        let mut l = LoopTable { order, table, identity, rinv: vec![0; order], linv: vec![0; order] };
        l.refresh_inverses();
        l
    }

    /// Overwrite the table in place with another normalized Latin square of
    /// the same order. Used by the enumerator to avoid an allocation per loop.
    pub(crate) fn overwrite_normalized(&mut self, table: &[u8]) {
        self.table.copy_from_slice(table);
        self.identity = 0;
        self.refresh_inverses();
    }

    fn refresh_inverses(&mut self) {
        let n = self.order;
        let e = self.identity as u8;
        for x in 0..n {
            for y in 0..n {
                if self.table[x * n + y] == e {
                    self.rinv[x] = y as u8;
                    self.linv[y] = x as u8;
                }
            }
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn elements(&self) -> Range<usize> {
        0..self.order
    }

    /// The loop product `x·y`.
    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.order + y] as usize
    }

    /// Right inverse: `x·rinv(x) = e`.
    #[inline]
    pub fn rinv(&self, x: usize) -> usize {
        self.rinv[x] as usize
    }

    /// Left inverse: `linv(x)·x = e`.
    #[inline]
    pub fn linv(&self, x: usize) -> usize {
        self.linv[x] as usize
    }

    /// The unique `x` with `a·x = b`.
    pub fn left_div(&self, a: usize, b: usize) -> usize {
        (0..self.order).find(|&x| self.mul(a, x) == b).expect("rows of a loop table are permutations")
    }

    /// The unique `y` with `y·a = b`.
    pub fn right_div(&self, a: usize, b: usize) -> usize {
        (0..self.order).find(|&y| self.mul(y, a) == b).expect("columns of a loop table are permutations")
    }

    pub fn row(&self, x: usize) -> &[u8] {
        &self.table[x * self.order..(x + 1) * self.order]
    }

    /// Row-major zero-indexed table content.
    pub fn as_slice(&self) -> &[u8] {
        &self.table
    }

    pub fn to_rows_one_based(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|x| self.row(x).iter().map(|&v| v as usize + 1).collect()).collect()
    }

    pub fn is_normalized(&self) -> bool {
        self.identity == 0
    }

    /// Relabel so that the identity becomes element 1, by exchanging the
    /// labels of the identity and element 1. A normalized table is returned
    /// unchanged.
    pub fn normalized(&self) -> LoopTable {
        let e = self.identity;
        if e == 0 {
            return self.clone();
        }
        let relabel = |x: usize| match x {
            0 => e,
            x if x == e => 0,
            x => x,
        };
        let n = self.order;
        let mut table = vec![0u8; n * n];
        for x in 0..n {
            for y in 0..n {
                table[relabel(x) * n + relabel(y)] = relabel(self.mul(x, y)) as u8;
            }
        }
        LoopTable::assemble(n, table, 0)
    }

    /// `(x·y)·z == x·(y·z)`.
    #[inline]
    pub fn associates(&self, x: usize, y: usize, z: usize) -> bool {
        self.mul(self.mul(x, y), z) == self.mul(x, self.mul(y, z))
    }

    pub fn nuclei(&self) -> Nucleus {
        let els = || self.elements();
        let pairs_ok = |f: &dyn Fn(usize, usize) -> bool| els().all(|x| els().all(|y| f(x, y)));
        let left: Vec<usize> = els().filter(|&a| pairs_ok(&|x, y| self.associates(a, x, y))).collect();
        let middle: Vec<usize> = els().filter(|&a| pairs_ok(&|x, y| self.associates(x, a, y))).collect();
        let right: Vec<usize> = els().filter(|&a| pairs_ok(&|x, y| self.associates(x, y, a))).collect();
        let nucleus: Vec<usize> = left
            .iter()
            .copied()
            .filter(|a| middle.binary_search(a).is_ok() && right.binary_search(a).is_ok())
            .collect();
        let center = nucleus.iter().copied().filter(|&a| els().all(|x| self.mul(a, x) == self.mul(x, a))).collect();
        Nucleus { left, middle, right, nucleus, center }
    }
}

/// Left, middle and right nuclei, their intersection, and the center.
/// All sets are sorted lists of element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nucleus {
    pub left: Vec<usize>,
    pub middle: Vec<usize>,
    pub right: Vec<usize>,
    pub nucleus: Vec<usize>,
    pub center: Vec<usize>,
}

impl Nucleus {
    pub fn contains(&self, a: usize) -> bool {
        self.nucleus.binary_search(&a).is_ok()
    }
}
