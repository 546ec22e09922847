//! Pointwise conditions characterizing SRAR and RA2 loops, and executable
//! checks of the implications proved about them.
//!
//! For a quadruple `(x, y, z, w)` write
//!
//! ```text
//! S = [(xy)z]w    T = x[(yz)w]    U = [(xw)z]y    V = x[(wz)y]
//! ```
//!
//! Then `D ⟺ S=T ∧ U=V`, `E ⟺ S=V ∧ T=U` and `F ⟺ S=U ∧ T=V`. The triple
//! conditions D′, E′, F′ are the `w = e` specializations; they coincide with
//! the right-hand RA2 conditions A*, B*, C*. They are nevertheless coded
//! separately below so the two routes can be compared.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::identities::{self, check_identity, IdentityId};
use crate::table::LoopTable;
use crate::witness::{CheckId, Witness};

/// Which family of three conditions a [`CondSet`] ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// D, E, F on quadruples.
    Quad,
    /// D′, E′, F′ on triples.
    Triple,
    /// A, B, C.
    Left,
    /// A*, B*, C*.
    Right,
}

impl Family {
    fn names(self) -> [&'static str; 3] {
        match self {
            Family::Quad => ["D", "E", "F"],
            Family::Triple => ["D'", "E'", "F'"],
            Family::Left => ["A", "B", "C"],
            Family::Right => ["A*", "B*", "C*"],
        }
    }
}

/// Subset of a three-element condition family, as a 3-bit mask: bit 0 is the
/// first condition (D, D′, A or A*), bit 1 the second, bit 2 the third.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CondSet(u8);

impl CondSet {
    pub const EMPTY: CondSet = CondSet(0);
    pub const ALL: CondSet = CondSet(0b111);
    pub const FIRST: CondSet = CondSet(0b001);
    pub const SECOND: CondSet = CondSet(0b010);
    pub const THIRD: CondSet = CondSet(0b100);

    pub fn from_flags(first: bool, second: bool, third: bool) -> Self {
        CondSet(first as u8 | (second as u8) << 1 | (third as u8) << 2)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn first(self) -> bool {
        self.0 & 1 != 0
    }

    pub fn second(self) -> bool {
        self.0 & 2 != 0
    }

    pub fn third(self) -> bool {
        self.0 & 4 != 0
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// `{D'}`, `{A*,C*}`, `{}` and so on.
    pub fn format(self, family: Family) -> String {
        let names = family.names();
        let parts: Vec<&str> = (0..3).filter(|i| self.0 >> i & 1 != 0).map(|i| names[i]).collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// The four products `S`, `T`, `U`, `V` at a quadruple.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadValues {
    pub s: usize,
    pub t: usize,
    pub u: usize,
    pub v: usize,
}

impl QuadValues {
    pub fn conditions(&self) -> CondSet {
        let QuadValues { s, t, u, v } = *self;
        CondSet::from_flags(s == t && u == v, s == v && t == u, s == u && t == v)
    }

    /// First pair of the four values that differ, for witness reporting.
    fn unequal_pair(&self) -> (usize, usize) {
        let QuadValues { s, t, u, v } = *self;
        [(s, t), (u, v), (s, u), (s, v)].into_iter().find(|(a, b)| a != b).unwrap_or((s, t))
    }
}

pub fn quad_values(l: &LoopTable, x: usize, y: usize, z: usize, w: usize) -> QuadValues {
    let m = |a, b| l.mul(a, b);
    QuadValues { s: m(m(m(x, y), z), w), t: m(x, m(m(y, z), w)), u: m(m(m(x, w), z), y), v: m(x, m(m(w, z), y)) }
}

pub fn quad_conditions(l: &LoopTable, x: usize, y: usize, z: usize, w: usize) -> CondSet {
    quad_values(l, x, y, z, w).conditions()
}

/// D′, E′, F′ at `(x, y, z)`.
pub fn triple_conditions(l: &LoopTable, x: usize, y: usize, z: usize) -> CondSet {
    let m = |a, b| l.mul(a, b);
    let xy_z = m(m(x, y), z);
    let x_yz = m(x, m(y, z));
    let xz_y = m(m(x, z), y);
    let x_zy = m(x, m(z, y));
    CondSet::from_flags(xy_z == x_yz && xz_y == x_zy, xy_z == x_zy && xz_y == x_yz, xy_z == xz_y && x_yz == x_zy)
}

/// The two RA2 condition sets at a triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AbcConditions {
    /// Subset of {A, B, C}.
    pub left: CondSet,
    /// Subset of {A*, B*, C*}.
    pub right: CondSet,
}

pub fn abc_conditions(l: &LoopTable, x: usize, y: usize, z: usize) -> AbcConditions {
    let m = |a, b| l.mul(a, b);
    let xy_z = m(m(x, y), z);
    let x_yz = m(x, m(y, z));
    let yx_z = m(m(y, x), z);
    let y_xz = m(y, m(x, z));
    let left =
        CondSet::from_flags(xy_z == x_yz && yx_z == y_xz, xy_z == y_xz && x_yz == yx_z, xy_z == yx_z && x_yz == y_xz);
    let xz_y = m(m(x, z), y);
    let x_zy = m(x, m(z, y));
    let right =
        CondSet::from_flags(xy_z == x_yz && xz_y == x_zy, xy_z == x_zy && x_yz == xz_y, xy_z == xz_y && x_yz == x_zy);
    AbcConditions { left, right }
}

/// How many tuples realize each of the eight subsets of a condition family,
/// indexed by [`CondSet::bits`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Profile {
    pub counts: [u64; 8],
}

impl Profile {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn count(&self, set: CondSet) -> u64 {
        self.counts[set.bits() as usize]
    }
}

/// D′/E′/F′ profile over all `n³` triples.
pub fn triple_profile(l: &LoopTable) -> Profile {
    let mut p = Profile::default();
    for x in l.elements() {
        for y in l.elements() {
            for z in l.elements() {
                p.counts[triple_conditions(l, x, y, z).bits() as usize] += 1;
            }
        }
    }
    p
}

/// D/E/F profile over all `n⁴` quadruples.
pub fn quad_profile(l: &LoopTable) -> Profile {
    let mut p = Profile::default();
    for_each_quad(l, |q| {
        p.counts[q.1.conditions().bits() as usize] += 1;
        true
    });
    p
}

/// Visit quadruples in lexicographic order until `f` returns false.
fn for_each_quad(l: &LoopTable, mut f: impl FnMut(([usize; 4], QuadValues)) -> bool) {
    for x in l.elements() {
        for y in l.elements() {
            for z in l.elements() {
                for w in l.elements() {
                    if !f(([x, y, z, w], quad_values(l, x, y, z, w))) {
                        return;
                    }
                }
            }
        }
    }
}

fn first_quad(l: &LoopTable, check: CheckId, bad: impl Fn(CondSet) -> bool) -> Option<Witness> {
    let mut found = None;
    for_each_quad(l, |(tuple, q)| {
        if bad(q.conditions()) {
            let (lhs, rhs) = q.unequal_pair();
            found = Some(Witness { check, tuple: tuple.to_vec(), lhs, rhs });
            return false;
        }
        true
    });
    found
}

/// `None` when `l` is SRAR; otherwise the first right Bol counterexample or,
/// for a Bol loop, the first quadruple where none of D, E, F holds.
pub fn srar_counterexample(l: &LoopTable) -> Option<Witness> {
    if let Some(w) = check_identity(l, IdentityId::RightBol) {
        return Some(w);
    }
    first_quad(l, CheckId::NoQuadCondition, CondSet::is_empty)
}

pub fn is_srar(l: &LoopTable) -> bool {
    srar_counterexample(l).is_none()
}

fn first_triple(
    l: &LoopTable,
    mut bad: impl FnMut(usize, usize, usize) -> Option<(CheckId, usize, usize)>,
) -> Option<Witness> {
    for x in l.elements() {
        for y in l.elements() {
            for z in l.elements() {
                if let Some((check, lhs, rhs)) = bad(x, y, z) {
                    return Some(Witness { check, tuple: vec![x, y, z], lhs, rhs });
                }
            }
        }
    }
    None
}

fn first_empty_abc(l: &LoopTable, left: bool, right: bool) -> Option<Witness> {
    let m = |a, b| l.mul(a, b);
    first_triple(l, |x, y, z| {
        let c = abc_conditions(l, x, y, z);
        let xy_z = m(m(x, y), z);
        if left && c.left.is_empty() {
            let other = if xy_z != m(x, m(y, z)) { m(x, m(y, z)) } else { m(y, m(x, z)) };
            Some((CheckId::NoLeftCondition, xy_z, other))
        } else if right && c.right.is_empty() {
            let other = if xy_z != m(x, m(y, z)) { m(x, m(y, z)) } else { m(x, m(z, y)) };
            Some((CheckId::NoRightCondition, xy_z, other))
        } else {
            None
        }
    })
}

/// `None` when `l` is RA2: Moufang, and at every triple some A/B/C and some
/// A*/B*/C* holds.
pub fn ra2_counterexample(l: &LoopTable) -> Option<Witness> {
    if let Some(w) = check_identity(l, IdentityId::RightMoufang) {
        return Some(w);
    }
    first_empty_abc(l, true, true)
}

pub fn is_ra2(l: &LoopTable) -> bool {
    ra2_counterexample(l).is_none()
}

/// Some A, B or C holds at every triple. No Moufang assumption.
pub fn left_conditions_everywhere(l: &LoopTable) -> bool {
    first_empty_abc(l, true, false).is_none()
}

/// Some A*, B* or C* holds at every triple. No Moufang assumption.
pub fn right_conditions_everywhere(l: &LoopTable) -> bool {
    first_empty_abc(l, false, true).is_none()
}

/// Which disjunctions of D′, E′, F′ hold at every triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TripleCoverage {
    pub def_everywhere: bool,
    pub de_everywhere: bool,
    pub df_everywhere: bool,
    pub ef_everywhere: bool,
}

impl TripleCoverage {
    pub fn any_pair(&self) -> bool {
        self.de_everywhere || self.df_everywhere || self.ef_everywhere
    }

    pub fn from_profile(p: &Profile) -> Self {
        // a disjunction holds everywhere iff no triple realizes a subset missing it
        let everywhere = |mask: u8| (0..8u8).all(|s| s & mask != 0 || p.counts[s as usize] == 0);
        TripleCoverage {
            def_everywhere: everywhere(0b111),
            de_everywhere: everywhere(0b011),
            df_everywhere: everywhere(0b101),
            ef_everywhere: everywhere(0b110),
        }
    }
}

pub fn triple_coverage(l: &LoopTable) -> TripleCoverage {
    let mut cov =
        TripleCoverage { def_everywhere: true, de_everywhere: true, df_everywhere: true, ef_everywhere: true };
    for x in l.elements() {
        for y in l.elements() {
            for z in l.elements() {
                let c = triple_conditions(l, x, y, z);
                cov.def_everywhere &= !c.is_empty();
                cov.de_everywhere &= c.first() || c.second();
                cov.df_everywhere &= c.first() || c.third();
                cov.ef_everywhere &= c.second() || c.third();
            }
        }
    }
    cov
}

/// One-line, 1-indexed description of a witness, spelling out the four
/// products for quadruple failures and the compared products for triples.
pub fn describe_witness(l: &LoopTable, w: &Witness) -> String {
    let m = |a, b| l.mul(a, b) + 1;
    let at = w.tuple_one_based();
    match (w.check, w.tuple.as_slice()) {
        (CheckId::NoQuadCondition | CheckId::NotAllOrOne, &[x, y, z, v]) => {
            let q = quad_values(l, x, y, z, v);
            format!("{} at {at}: S={} T={} U={} V={}", w.check, q.s + 1, q.t + 1, q.u + 1, q.v + 1)
        }
        (CheckId::NoLeftCondition, &[x, y, z]) => {
            let (xy, yx) = (l.mul(x, y), l.mul(y, x));
            format!(
                "{} at {at}: (xy)z={} x(yz)={} (yx)z={} y(xz)={}",
                w.check,
                m(xy, z),
                m(x, l.mul(y, z)),
                m(yx, z),
                m(y, l.mul(x, z))
            )
        }
        (CheckId::NoRightCondition, &[x, y, z]) => format!(
            "{} at {at}: (xy)z={} x(yz)={} (xz)y={} x(zy)={}",
            w.check,
            m(l.mul(x, y), z),
            m(x, l.mul(y, z)),
            m(l.mul(x, z), y),
            m(x, l.mul(z, y))
        ),
        _ => w.to_string(),
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CheckError {
    #[error("loop is not SRAR: {0}")]
    NotSrar(Witness),
    #[error("loop is not right Bol: {0}")]
    NotBol(Witness),
    #[error("loop lacks the right inverse property: {0}")]
    NotRip(Witness),
    #[error("theorem violated: {0}")]
    TheoremViolation(String),
}

fn require_bol(l: &LoopTable) -> Result<(), CheckError> {
    if let Some(w) = check_identity(l, IdentityId::RightBol) {
        return Err(CheckError::NotBol(w));
    }
    if let Some(w) = check_identity(l, IdentityId::Rip) {
        return Err(CheckError::NotRip(w));
    }
    Ok(())
}

/// Every quadruple of an SRAR loop satisfies all three of D, E, F or exactly
/// one. Returns the first quadruple that does not.
pub fn lemma_allthree(l: &LoopTable) -> Result<Option<Witness>, CheckError> {
    if let Some(w) = srar_counterexample(l) {
        return Err(CheckError::NotSrar(w));
    }
    Ok(first_quad(l, CheckId::NotAllOrOne, |c| c.len() != 3 && c.len() != 1))
}

/// Same pattern for D′/E′/F′ on triples of an SRAR loop.
pub fn lemma_allthree_triples(l: &LoopTable) -> Result<Option<Witness>, CheckError> {
    if let Some(w) = srar_counterexample(l) {
        return Err(CheckError::NotSrar(w));
    }
    let m = |a, b| l.mul(a, b);
    Ok(first_triple(l, |x, y, z| {
        let c = triple_conditions(l, x, y, z);
        (c.len() != 3 && c.len() != 1).then(|| (CheckId::NotAllOrOne, m(m(x, y), z), m(x, m(y, z))))
    }))
}

/// In a Bol loop, `x⁻¹(xy) = y` iff `x(x⁻¹y) = y`. Returns the first pair
/// where the two disagree.
pub fn lemma_lip_equiv(l: &LoopTable) -> Result<Option<Witness>, CheckError> {
    require_bol(l)?;
    let m = |a, b| l.mul(a, b);
    for x in l.elements() {
        let xi = l.rinv(x);
        for y in l.elements() {
            let a = m(xi, m(x, y));
            let b = m(x, m(xi, y));
            if (a == y) != (b == y) {
                let lhs = if a == y { b } else { a };
                return Ok(Some(Witness { check: CheckId::LipEquivalence, tuple: vec![x, y], lhs, rhs: y }));
            }
        }
    }
    Ok(None)
}

/// Whether every pair of a Bol loop commutes or satisfies `x⁻¹(xy) = y`.
/// When it does, the loop must be Moufang; failing that is reported as
/// [`CheckError::TheoremViolation`].
pub fn lemma_key_mfg(l: &LoopTable) -> Result<bool, CheckError> {
    require_bol(l)?;
    let m = |a, b| l.mul(a, b);
    let hypothesis = l.elements().all(|x| l.elements().all(|y| m(x, y) == m(y, x) || m(l.rinv(x), m(x, y)) == y));
    if hypothesis {
        if let Some(w) = check_identity(l, IdentityId::RightMoufang) {
            return Err(CheckError::TheoremViolation(format!(
                "every pair commutes or satisfies LIP, yet the loop is not Moufang: {w}"
            )));
        }
    }
    Ok(hypothesis)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Implication {
    pub hypothesis: bool,
    pub conclusion: bool,
}

impl Implication {
    pub fn ok(&self) -> bool {
        !self.hypothesis || self.conclusion
    }
}

impl fmt::Display for Implication {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "hypothesis={} conclusion={} {}",
            self.hypothesis,
            self.conclusion,
            if self.ok() { "ok" } else { "VIOLATED" }
        )
    }
}

/// The three clauses about Bol loops whose triples all satisfy one of a pair
/// of D′, E′, F′.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PairCoverageReport {
    /// D′ ∨ E′ everywhere ⟹ RA2 and extra.
    pub de_ra2_extra: Implication,
    /// D′ ∨ F′ everywhere ⟹ group.
    pub df_group: Implication,
    /// E′ ∨ F′ everywhere ⟹ abelian group.
    pub ef_abelian_group: Implication,
}

impl PairCoverageReport {
    pub fn all_ok(&self) -> bool {
        self.de_ra2_extra.ok() && self.df_group.ok() && self.ef_abelian_group.ok()
    }
}

pub fn thm_main_verify(l: &LoopTable) -> Result<PairCoverageReport, CheckError> {
    require_bol(l)?;
    let cov = triple_coverage(l);
    let group = identities::is_group(l);
    let commutative = identities::holds(l, IdentityId::Commutative);
    Ok(PairCoverageReport {
        de_ra2_extra: Implication { hypothesis: cov.de_everywhere, conclusion: is_ra2(l) && identities::is_extra(l) },
        df_group: Implication { hypothesis: cov.df_everywhere, conclusion: group },
        ef_abelian_group: Implication { hypothesis: cov.ef_everywhere, conclusion: group && commutative },
    })
}

/// A Bol loop with some pair of D′, E′, F′ covering every triple is RA2.
pub fn cor_pair_ra2(l: &LoopTable) -> Result<Implication, CheckError> {
    require_bol(l)?;
    Ok(Implication { hypothesis: triple_coverage(l).any_pair(), conclusion: is_ra2(l) })
}

/// SRAR loops of odd order are associative.
pub fn cor_odd_verify(l: &LoopTable) -> Implication {
    let hypothesis = l.order() % 2 == 1 && is_srar(l);
    Implication { hypothesis, conclusion: hypothesis && identities::is_group(l) }
}

/// RA2 loops are SRAR.
pub fn prop_ra2_srar(l: &LoopTable) -> Implication {
    let hypothesis = is_ra2(l);
    Implication { hypothesis, conclusion: hypothesis && is_srar(l) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{bol_16, cyclic, moufang_12};

    // paper labels are 1-indexed
    fn q(l: &LoopTable, x: usize, y: usize, z: usize, w: usize) -> QuadValues {
        let v = quad_values(l, x - 1, y - 1, z - 1, w - 1);
        QuadValues { s: v.s + 1, t: v.t + 1, u: v.u + 1, v: v.v + 1 }
    }

    #[test]
    fn bol_16_quadruple_2_2_3_9() {
        let l = bol_16();
        assert_eq!(q(&l, 2, 2, 3, 9), QuadValues { s: 11, t: 9, u: 13, v: 16 });
        assert_eq!(quad_conditions(&l, 1, 1, 2, 8), CondSet::EMPTY);
    }

    #[test]
    fn moufang_12_quadruple_values() {
        let l = moufang_12();
        assert_eq!(q(&l, 2, 3, 8, 1), QuadValues { s: 8, t: 8, u: 7, v: 7 });
        assert_eq!(quad_conditions(&l, 1, 2, 7, 0), CondSet::FIRST);
        // (2,5,9,1) has S=U=11, T=V=12: F, not E
        assert_eq!(q(&l, 2, 5, 9, 1), QuadValues { s: 11, t: 12, u: 11, v: 12 });
        assert_eq!(quad_conditions(&l, 1, 4, 8, 0), CondSet::THIRD);
        assert_eq!(quad_conditions(&l, 1, 3, 9, 0), CondSet::THIRD);
        assert_eq!(quad_conditions(&l, 3, 1, 6, 0), CondSet::SECOND);
    }

    #[test]
    fn moufang_12_triples() {
        let l = moufang_12();
        assert_eq!(triple_conditions(&l, 1, 2, 7), CondSet::FIRST);
        assert_eq!(triple_conditions(&l, 1, 4, 8), CondSet::THIRD);
        assert_eq!(triple_conditions(&l, 1, 3, 9), CondSet::THIRD);
        // first E'-only triple; none has x = 2
        assert_eq!(triple_conditions(&l, 3, 1, 6), CondSet::SECOND);
        assert_eq!(abc_conditions(&l, 1, 2, 7).right, CondSet::FIRST);
        assert_eq!(triple_conditions(&l, 1, 2, 7).format(Family::Triple), "{D'}");
    }

    #[test]
    fn identity_quadruple_satisfies_all() {
        for l in [bol_16(), moufang_12()] {
            let e = l.identity();
            for x in l.elements() {
                let v = quad_values(&l, x, e, e, e);
                assert_eq!(v, QuadValues { s: x, t: x, u: x, v: x });
                assert_eq!(v.conditions(), CondSet::ALL);
            }
        }
    }

    #[test]
    fn srar_verdicts() {
        let w = srar_counterexample(&bol_16()).unwrap();
        assert_eq!(w.check, CheckId::NoQuadCondition);
        assert_eq!(w.tuple_one_based(), "(2,2,3,9)");
        assert_eq!((w.lhs + 1, w.rhs + 1), (11, 9));
        assert_eq!(describe_witness(&bol_16(), &w), "D/E/F empty at (2,2,3,9): S=11 T=9 U=13 V=16");
        assert!(is_srar(&moufang_12()));
        assert!(is_srar(&cyclic(6)));
    }

    #[test]
    fn ra2_verdicts() {
        assert!(is_ra2(&moufang_12()));
        let w = ra2_counterexample(&bol_16()).unwrap();
        assert_eq!(w.check, CheckId::Identity(IdentityId::RightMoufang));
        assert!(is_ra2(&cyclic(5)));
    }

    #[test]
    fn coverage_flags() {
        let c1 = triple_coverage(&bol_16());
        assert!(c1.def_everywhere);
        let c2 = triple_coverage(&moufang_12());
        assert!(!c2.de_everywhere && !c2.df_everywhere && !c2.ef_everywhere);
        assert!(c2.def_everywhere);
        let c3 = triple_coverage(&cyclic(4));
        assert!(c3.def_everywhere && c3.de_everywhere && c3.df_everywhere && c3.ef_everywhere);
        for l in [bol_16(), moufang_12(), cyclic(4)] {
            assert_eq!(TripleCoverage::from_profile(&triple_profile(&l)), triple_coverage(&l));
        }
    }

    #[test]
    fn profiles_sum_to_powers() {
        let l = moufang_12();
        assert_eq!(triple_profile(&l).total(), 12u64.pow(3));
        assert_eq!(quad_profile(&l).total(), 12u64.pow(4));
        let g = cyclic(3);
        assert_eq!(quad_profile(&g).count(CondSet::ALL), 81);
    }

    #[test]
    fn lemmas_on_fixtures() {
        let l = moufang_12();
        assert_eq!(lemma_allthree(&l).unwrap(), None);
        assert_eq!(lemma_allthree_triples(&l).unwrap(), None);
        assert!(matches!(lemma_allthree(&bol_16()), Err(CheckError::NotSrar(_))));
        assert_eq!(lemma_lip_equiv(&bol_16()).unwrap(), None);
        assert_eq!(lemma_lip_equiv(&l).unwrap(), None);
        assert!(!lemma_key_mfg(&bol_16()).unwrap());
        assert!(lemma_key_mfg(&cyclic(4)).unwrap());
    }

    #[test]
    fn main_theorem_clauses() {
        let g = cyclic(4);
        let r = thm_main_verify(&g).unwrap();
        for c in [r.de_ra2_extra, r.df_group, r.ef_abelian_group] {
            assert!(c.hypothesis && c.conclusion);
        }
        let r = thm_main_verify(&moufang_12()).unwrap();
        for c in [r.de_ra2_extra, r.df_group, r.ef_abelian_group] {
            assert!(!c.hypothesis && c.ok());
        }
    }

    #[test]
    fn odd_order_corollary() {
        let c = cor_odd_verify(&cyclic(5));
        assert!(c.hypothesis && c.conclusion);
        let c = cor_odd_verify(&moufang_12());
        assert!(!c.hypothesis && c.ok());
    }

    #[test]
    fn non_bol_inputs_are_rejected() {
        // a loop of order 5 that is not right Bol
        let rows =
            [vec![1, 2, 3, 4, 5], vec![2, 1, 4, 5, 3], vec![3, 4, 5, 1, 2], vec![4, 5, 2, 3, 1], vec![5, 3, 1, 2, 4]];
        let l = crate::table::validate_table(&rows).unwrap();
        assert!(!identities::is_right_bol(&l));
        assert!(matches!(lemma_lip_equiv(&l), Err(CheckError::NotBol(_))));
        assert!(matches!(lemma_key_mfg(&l), Err(CheckError::NotBol(_))));
        assert!(matches!(thm_main_verify(&l), Err(CheckError::NotBol(_))));
    }
}
