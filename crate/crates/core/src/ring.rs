//! The loop ring of a finite loop over the two-element field, and identity
//! checks on it by brute force over every ring element.
//!
//! This is deliberately independent of the pointwise criteria in
//! [`crate::conditions`]: the ring identities are evaluated on all `2^n`
//! elements with no linearization, so agreement between the two is a real
//! check rather than a restatement.

use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::conditions;
use crate::identities::{self, IdentityId};
use crate::table::LoopTable;

/// Largest loop order whose ring elements fit the bit-vector representation.
pub const MAX_RING_ORDER: usize = 64;
/// Default cap for identities in two ring variables.
pub const DEFAULT_CAP_TWO_VAR: usize = 8;
/// Default cap for identities in three ring variables.
pub const DEFAULT_CAP_THREE_VAR: usize = 6;
/// Up to this order the full ring multiplication table is precomputed.
const TABLE_ORDER_LIMIT: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("ring element lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("{identity}: loop order {order} exceeds cap {cap}; pass a cap of at least {order} to override")]
    OrderExceedsCap { identity: RingIdentityId, order: usize, cap: usize },
    #[error("loop order {0} is too large for GF(2) ring elements (max {MAX_RING_ORDER})")]
    OrderTooLarge(usize),
    #[error("theorem violated: {0}")]
    TheoremViolation(String),
}

/// An element of the loop algebra over GF(2): bit `i` is the coefficient of
/// loop element `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf2Elem {
    bits: u64,
    len: u8,
}

impl Gf2Elem {
    pub fn zero(len: usize) -> Self {
        Self::from_bits(len, 0)
    }

    pub fn basis(len: usize, i: usize) -> Self {
        assert!(i < len, "basis index {i} out of range for length {len}");
        Self::from_bits(len, 1 << i)
    }

    /// # Panics
    ///
    /// If `len` exceeds 64 or `bits` has bits at or above `len`.
    pub fn from_bits(len: usize, bits: u64) -> Self {
        assert!(len <= MAX_RING_ORDER);
        assert!(len == 64 || bits >> len == 0, "bits outside length {len}");
        Gf2Elem { bits, len: len as u8 }
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(self) -> usize {
        self.len as usize
    }

    pub fn is_zero(self) -> bool {
        self.bits == 0
    }

    /// Sorted zero-indexed support.
    pub fn support(self) -> Vec<usize> {
        (0..self.len()).filter(|i| self.bits >> i & 1 == 1).collect()
    }

    pub fn checked_add(self, other: Gf2Elem) -> Result<Gf2Elem, RingError> {
        if self.len != other.len {
            return Err(RingError::LengthMismatch(self.len(), other.len()));
        }
        Ok(Gf2Elem { bits: self.bits ^ other.bits, len: self.len })
    }
}

impl Add for Gf2Elem {
    type Output = Gf2Elem;

    fn add(self, other: Gf2Elem) -> Gf2Elem {
        self.checked_add(other).expect("adding ring elements of different lengths")
    }
}

/// Support as a 1-indexed list, e.g. `[2,7]`; zero prints as `[]`.
impl fmt::Display for Gf2Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.support().iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Product in the loop ring: the coefficient of `g` in `a·b` is the parity
/// of the number of pairs `(i, j)` in `supp(a) × supp(b)` with `i·j = g`.
pub fn rmul(l: &LoopTable, a: Gf2Elem, b: Gf2Elem) -> Result<Gf2Elem, RingError> {
    let n = l.order();
    if a.len() != n {
        return Err(RingError::LengthMismatch(a.len(), n));
    }
    if b.len() != n {
        return Err(RingError::LengthMismatch(b.len(), n));
    }
    let mut out = 0u64;
    let mut ia = a.bits;
    while ia != 0 {
        let i = ia.trailing_zeros() as usize;
        ia &= ia - 1;
        let mut jb = b.bits;
        while jb != 0 {
            let j = jb.trailing_zeros() as usize;
            jb &= jb - 1;
            out ^= 1 << l.mul(i, j);
        }
    }
    Ok(Gf2Elem { bits: out, len: n as u8 })
}

/// The multiplicative identity `1·e`.
pub fn ring_one(l: &LoopTable) -> Gf2Elem {
    Gf2Elem::basis(l.order(), l.identity())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RingIdentityId {
    /// `(ab)b = a(bb)`
    RingRightAlternative,
    /// `(aa)b = a(ab)`
    RingLeftAlternative,
    /// `[(ab)c]b = a[(bc)b]`
    RingRightBol,
    /// `[(ab)c]b = a[b(cb)]`
    RingRightMoufang,
}

impl RingIdentityId {
    pub const ALL: [RingIdentityId; 4] = [
        RingIdentityId::RingRightAlternative,
        RingIdentityId::RingLeftAlternative,
        RingIdentityId::RingRightBol,
        RingIdentityId::RingRightMoufang,
    ];

    pub fn arity(self) -> usize {
        match self {
            RingIdentityId::RingRightAlternative | RingIdentityId::RingLeftAlternative => 2,
            RingIdentityId::RingRightBol | RingIdentityId::RingRightMoufang => 3,
        }
    }

    pub fn default_cap(self) -> usize {
        if self.arity() == 2 {
            DEFAULT_CAP_TWO_VAR
        } else {
            DEFAULT_CAP_THREE_VAR
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RingIdentityId::RingRightAlternative => "right-alt",
            RingIdentityId::RingLeftAlternative => "left-alt",
            RingIdentityId::RingRightBol => "right-bol",
            RingIdentityId::RingRightMoufang => "right-moufang",
        }
    }
}

impl fmt::Display for RingIdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RingIdentityId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s2 = s.trim_start_matches("ring_").replace('_', "-");
        let s2 = match s2.as_str() {
            "right-alternative" => "right-alt",
            "left-alternative" => "left-alt",
            other => other,
        };
        RingIdentityId::ALL.into_iter().find(|id| id.name() == s2).ok_or_else(|| format!("unknown ring identity `{s}`"))
    }
}

/// First failing tuple of ring elements, with both sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingWitness {
    pub identity: RingIdentityId,
    pub tuple: Vec<Gf2Elem>,
    pub lhs: Gf2Elem,
    pub rhs: Gf2Elem,
}

impl fmt::Display for RingWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["a", "b", "c"];
        write!(f, "{} fails at", self.identity)?;
        for (name, e) in names.iter().zip(&self.tuple) {
            write!(f, " {name}={e}")?;
        }
        write!(f, ": lhs={} rhs={}", self.lhs, self.rhs)
    }
}

/// Multiplication in the loop ring, through a precomputed table of all
/// `4^n` products when `n` is small enough and [`rmul`] otherwise.
pub struct LoopRing<'a> {
    l: &'a LoopTable,
    n: usize,
    table: Option<Vec<u64>>,
}

impl<'a> LoopRing<'a> {
    pub fn new(l: &'a LoopTable) -> Result<Self, RingError> {
        let n = l.order();
        if n > MAX_RING_ORDER {
            return Err(RingError::OrderTooLarge(n));
        }
        let table = (n <= TABLE_ORDER_LIMIT).then(|| {
            let size = 1usize << n;
            let mut t = vec![0u64; size * size];
            for a in 0..size {
                for b in 0..size {
                    let p = rmul(l, Gf2Elem::from_bits(n, a as u64), Gf2Elem::from_bits(n, b as u64));
                    t[a * size + b] = p.expect("lengths match").bits;
                }
            }
            t
        });
        Ok(LoopRing { l, n, table })
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.n
    }

    /// Number of ring elements, `2^n`. Only meaningful below 64 bits.
    pub fn size(&self) -> u64 {
        1u64 << self.n
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        match &self.table {
            Some(t) => t[((a as usize) << self.n) | b as usize],
            None => {
                rmul(self.l, Gf2Elem::from_bits(self.n, a), Gf2Elem::from_bits(self.n, b)).expect("lengths match").bits
            }
        }
    }

    fn elem(&self, bits: u64) -> Gf2Elem {
        Gf2Elem::from_bits(self.n, bits)
    }

    /// Both sides of `id` at the given leading ring variables, scanning the
    /// innermost variable; returns the first failure for this prefix.
    fn failure_with_first(&self, id: RingIdentityId, a: u64) -> Option<RingWitness> {
        let m = |x, y| self.mul(x, y);
        let size = self.size();
        let witness = |tuple: &[u64], lhs: u64, rhs: u64| RingWitness {
            identity: id,
            tuple: tuple.iter().map(|&x| self.elem(x)).collect(),
            lhs: self.elem(lhs),
            rhs: self.elem(rhs),
        };
        match id {
            RingIdentityId::RingRightAlternative => (0..size).find_map(|b| {
                let (lhs, rhs) = (m(m(a, b), b), m(a, m(b, b)));
                (lhs != rhs).then(|| witness(&[a, b], lhs, rhs))
            }),
            RingIdentityId::RingLeftAlternative => {
                let aa = m(a, a);
                (0..size).find_map(|b| {
                    let (lhs, rhs) = (m(aa, b), m(a, m(a, b)));
                    (lhs != rhs).then(|| witness(&[a, b], lhs, rhs))
                })
            }
            RingIdentityId::RingRightBol | RingIdentityId::RingRightMoufang => {
                let bol = id == RingIdentityId::RingRightBol;
                (0..size).find_map(|b| {
                    let ab = m(a, b);
                    (0..size).find_map(|c| {
                        let lhs = m(m(ab, c), b);
                        let inner = if bol { m(m(b, c), b) } else { m(b, m(c, b)) };
                        let rhs = m(a, inner);
                        (lhs != rhs).then(|| witness(&[a, b, c], lhs, rhs))
                    })
                })
            }
        }
    }

    /// First failing tuple in increasing numeric order of the bit vectors,
    /// first variable outermost.
    pub fn check(&self, id: RingIdentityId) -> Option<RingWitness> {
        (0..self.size()).find_map(|a| self.failure_with_first(id, a))
    }

    /// Same result as [`LoopRing::check`], with the outermost variable split
    /// across the current rayon pool.
    pub fn par_check(&self, id: RingIdentityId) -> Option<RingWitness>
    where
        Self: Sync,
    {
        (0..self.size()).into_par_iter().find_map_first(|a| self.failure_with_first(id, a))
    }
}

fn check_cap(l: &LoopTable, id: RingIdentityId, cap: Option<usize>) -> Result<(), RingError> {
    let cap = cap.unwrap_or(id.default_cap());
    if l.order() > cap {
        return Err(RingError::OrderExceedsCap { identity: id, order: l.order(), cap });
    }
    Ok(())
}

/// Check `id` on the GF(2) loop ring of `l` over all ring elements.
/// `cap` overrides the default order cap for the identity's arity.
pub fn ring_identity_check(
    l: &LoopTable,
    id: RingIdentityId,
    cap: Option<usize>,
) -> Result<Option<RingWitness>, RingError> {
    check_cap(l, id, cap)?;
    Ok(LoopRing::new(l)?.check(id))
}

/// Parallel form of [`ring_identity_check`]; the witness is identical.
pub fn par_ring_identity_check(
    l: &LoopTable,
    id: RingIdentityId,
    cap: Option<usize>,
) -> Result<Option<RingWitness>, RingError> {
    check_cap(l, id, cap)?;
    Ok(LoopRing::new(l)?.par_check(id))
}

/// Whether the ring satisfies the right Bol identity exactly when the loop
/// is SRAR.
pub fn oracle_equiv_srar(l: &LoopTable, cap: Option<usize>) -> Result<bool, RingError> {
    let ring = ring_identity_check(l, RingIdentityId::RingRightBol, cap)?.is_none();
    Ok(ring == conditions::is_srar(l))
}

/// Outcome of comparing the RA2 conditions with the ring's alternative laws.
///
/// Expanding `(ab)b = a(bb)` with `b` a sum of basis elements shows the ring
/// is right alternative exactly when the loop is right alternative and
/// A*/B*/C* holds at every triple; dually on the left. For Moufang loops the
/// loop's own alternative laws are automatic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Ra2Equivalence {
    pub ring_right_alternative: bool,
    pub ring_left_alternative: bool,
    /// A*/B*/C* nonempty at every triple.
    pub right_conditions: bool,
    /// A/B/C nonempty at every triple.
    pub left_conditions: bool,
    pub loop_right_alternative: bool,
    pub loop_left_alternative: bool,
    pub moufang: bool,
    pub ra2: bool,
}

impl Ra2Equivalence {
    /// Ring right alternative iff loop right alternative and A*/B*/C*
    /// everywhere.
    pub fn right_half(&self) -> bool {
        (self.right_conditions && self.loop_right_alternative) == self.ring_right_alternative
    }

    /// Ring left alternative iff loop left alternative and A/B/C everywhere.
    pub fn left_half(&self) -> bool {
        (self.left_conditions && self.loop_left_alternative) == self.ring_left_alternative
    }

    /// A*/B*/C* everywhere iff ring right alternative, ignoring the loop's
    /// own alternative law. Holds for Moufang loops; not in general.
    pub fn bare_right_half(&self) -> bool {
        self.right_conditions == self.ring_right_alternative
    }

    /// A/B/C everywhere iff ring left alternative, ignoring the loop's own
    /// alternative law.
    pub fn bare_left_half(&self) -> bool {
        self.left_conditions == self.ring_left_alternative
    }

    /// For Moufang loops: RA2 iff the ring is alternative. Vacuous otherwise.
    pub fn moufang_full(&self) -> bool {
        !self.moufang || self.ra2 == (self.ring_right_alternative && self.ring_left_alternative)
    }

    pub fn holds(&self) -> bool {
        self.right_half() && self.left_half() && self.moufang_full()
    }

    /// Right alternative but not left alternative ring.
    pub fn one_sided(&self) -> bool {
        self.ring_right_alternative && !self.ring_left_alternative
    }
}

pub fn ra2_equivalence(l: &LoopTable, cap: Option<usize>) -> Result<Ra2Equivalence, RingError> {
    check_cap(l, RingIdentityId::RingRightAlternative, cap)?;
    let ring = LoopRing::new(l)?;
    Ok(Ra2Equivalence {
        ring_right_alternative: ring.check(RingIdentityId::RingRightAlternative).is_none(),
        ring_left_alternative: ring.check(RingIdentityId::RingLeftAlternative).is_none(),
        right_conditions: conditions::right_conditions_everywhere(l),
        left_conditions: conditions::left_conditions_everywhere(l),
        loop_right_alternative: identities::holds(l, IdentityId::RightAlternative),
        loop_left_alternative: identities::holds(l, IdentityId::LeftAlternative),
        moufang: identities::is_moufang(l),
        ra2: conditions::is_ra2(l),
    })
}

/// Both half-equivalences between the pointwise RA2 conditions and the
/// ring's alternative laws, plus the full equivalence for Moufang loops.
pub fn oracle_equiv_ra2(l: &LoopTable, cap: Option<usize>) -> Result<bool, RingError> {
    Ok(ra2_equivalence(l, cap)?.holds())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{cyclic, moufang_12};
    use crate::table::validate_table;

    fn e(n: usize, one_based: &[usize]) -> Gf2Elem {
        one_based.iter().fold(Gf2Elem::zero(n), |acc, &i| acc + Gf2Elem::basis(n, i - 1))
    }

    #[test]
    fn basis_products_follow_the_table() {
        let l = moufang_12();
        assert_eq!(rmul(&l, e(12, &[2]), e(12, &[3])).unwrap(), e(12, &[1]));
        assert_eq!(rmul(&l, e(12, &[2, 3]), e(12, &[8])).unwrap(), e(12, &[9, 7]));
    }

    #[test]
    fn collisions_cancel() {
        // in Z_2, (1+g)(1+g) = 1 + g + g + 1 = 0
        let l = cyclic(2);
        let a = e(2, &[1, 2]);
        assert!(rmul(&l, a, a).unwrap().is_zero());
    }

    #[test]
    fn length_mismatch() {
        let l = cyclic(3);
        assert_eq!(rmul(&l, Gf2Elem::zero(4), Gf2Elem::zero(3)), Err(RingError::LengthMismatch(4, 3)));
        assert!(Gf2Elem::zero(2).checked_add(Gf2Elem::zero(3)).is_err());
    }

    #[test]
    fn display_is_one_indexed_support() {
        assert_eq!(e(5, &[4, 2]).to_string(), "[2,4]");
        assert_eq!(Gf2Elem::zero(5).to_string(), "[]");
    }

    #[test]
    fn group_ring_identities_hold() {
        let l = cyclic(4);
        for id in RingIdentityId::ALL {
            assert_eq!(ring_identity_check(&l, id, None).unwrap(), None, "{id}");
        }
    }

    #[test]
    fn caps() {
        let l = moufang_12();
        let err = ring_identity_check(&l, RingIdentityId::RingRightBol, None).unwrap_err();
        assert_eq!(err, RingError::OrderExceedsCap { identity: RingIdentityId::RingRightBol, order: 12, cap: 6 });
        assert!(ring_identity_check(&l, RingIdentityId::RingRightAlternative, None).is_err());
        assert!(ring_identity_check(&cyclic(7), RingIdentityId::RingRightBol, Some(7)).is_ok());
    }

    #[test]
    fn non_bol_loop_ring_fails_right_bol() {
        let rows =
            [vec![1, 2, 3, 4, 5], vec![2, 1, 4, 5, 3], vec![3, 4, 5, 1, 2], vec![4, 5, 2, 3, 1], vec![5, 3, 1, 2, 4]];
        let l = validate_table(&rows).unwrap();
        let w = ring_identity_check(&l, RingIdentityId::RingRightBol, None).unwrap().unwrap();
        assert_ne!(w.lhs, w.rhs);
        let [a, b, c] = [w.tuple[0], w.tuple[1], w.tuple[2]];
        let m = |x, y| rmul(&l, x, y).unwrap();
        assert_eq!(w.lhs, m(m(m(a, b), c), b));
        assert_eq!(w.rhs, m(a, m(m(b, c), b)));
        assert!(oracle_equiv_srar(&l, None).unwrap());
        assert_eq!(par_ring_identity_check(&l, RingIdentityId::RingRightBol, None).unwrap(), Some(w));
    }

    #[test]
    fn oracles_on_groups() {
        assert!(oracle_equiv_srar(&cyclic(3), None).unwrap());
        assert!(oracle_equiv_ra2(&cyclic(2), None).unwrap());
    }

    #[test]
    fn names_parse() {
        for id in RingIdentityId::ALL {
            assert_eq!(id.name().parse::<RingIdentityId>().unwrap(), id);
        }
        assert_eq!("ring_right_alternative".parse::<RingIdentityId>().unwrap(), RingIdentityId::RingRightAlternative);
    }
}
