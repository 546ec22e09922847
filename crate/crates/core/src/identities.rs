//! Named loop identities, decided by exhaustive scan.
//!
//! Every identity is checked over all `n^k` assignments of its `k` free
//! variables. Variables are ordered as they first appear in the defining
//! equation and the scan is lexicographic in that order, so the reported
//! witness is the first failing tuple.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::table::LoopTable;
use crate::witness::{CheckId, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentityId {
    /// `[(xy)z]y = x[(yz)y]`
    RightBol,
    /// `[(xy)z]y = x[y(zy)]`
    RightMoufang,
    /// `(yz)y = y(zy)`
    Flexible,
    /// `(xy)y = x(yy)`
    RightAlternative,
    /// `(xx)y = x(xy)`
    LeftAlternative,
    /// `(xy)y⁻¹ = x`
    Rip,
    /// `x⁻¹(xy) = y`
    Lip,
    /// `[(xy)z]x = x[y(zx)]`
    Extra,
    /// `xy = yx`
    Commutative,
    /// `(xy)z = x(yz)`
    Associative,
}

impl IdentityId {
    pub const ALL: [IdentityId; 10] = [
        IdentityId::RightBol,
        IdentityId::RightMoufang,
        IdentityId::Flexible,
        IdentityId::RightAlternative,
        IdentityId::LeftAlternative,
        IdentityId::Rip,
        IdentityId::Lip,
        IdentityId::Extra,
        IdentityId::Commutative,
        IdentityId::Associative,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityId::RightBol => "right_bol",
            IdentityId::RightMoufang => "right_moufang",
            IdentityId::Flexible => "flexible",
            IdentityId::RightAlternative => "right_alternative",
            IdentityId::LeftAlternative => "left_alternative",
            IdentityId::Rip => "rip",
            IdentityId::Lip => "lip",
            IdentityId::Extra => "extra",
            IdentityId::Commutative => "commutative",
            IdentityId::Associative => "associative",
        }
    }

    /// Number of free variables.
    pub fn arity(self) -> usize {
        match self {
            IdentityId::RightBol | IdentityId::RightMoufang | IdentityId::Extra | IdentityId::Associative => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.replace('-', "_");
        IdentityId::ALL.into_iter().find(|id| id.name() == norm).ok_or_else(|| format!("unknown identity `{s}`"))
    }
}

/// Scan `[0, n)^K` lexicographically for the first tuple where `sides`
/// returns two different values.
pub(crate) fn first_failure<const K: usize>(
    n: usize,
    mut sides: impl FnMut([usize; K]) -> (usize, usize),
) -> Option<([usize; K], usize, usize)> {
    let mut t = [0usize; K];
    if n == 0 {
        return None;
    }
    loop {
        let (lhs, rhs) = sides(t);
        if lhs != rhs {
            return Some((t, lhs, rhs));
        }
        let mut k = K;
        loop {
            if k == 0 {
                return None;
            }
            k -= 1;
            t[k] += 1;
            if t[k] < n {
                break;
            }
            t[k] = 0;
        }
    }
}

fn scan<const K: usize>(
    l: &LoopTable,
    id: IdentityId,
    sides: impl FnMut([usize; K]) -> (usize, usize),
) -> Option<Witness> {
    first_failure(l.order(), sides).map(|(t, lhs, rhs)| Witness {
        check: CheckId::Identity(id),
        tuple: t.to_vec(),
        lhs,
        rhs,
    })
}

/// First counterexample to `id` in `l`, or `None` when the identity holds.
pub fn check_identity(l: &LoopTable, id: IdentityId) -> Option<Witness> {
    let m = |a, b| l.mul(a, b);
    match id {
        IdentityId::RightBol => scan(l, id, |[x, y, z]| (m(m(m(x, y), z), y), m(x, m(m(y, z), y)))),
        IdentityId::RightMoufang => scan(l, id, |[x, y, z]| (m(m(m(x, y), z), y), m(x, m(y, m(z, y))))),
        IdentityId::Flexible => scan(l, id, |[y, z]| (m(m(y, z), y), m(y, m(z, y)))),
        IdentityId::RightAlternative => scan(l, id, |[x, y]| (m(m(x, y), y), m(x, m(y, y)))),
        IdentityId::LeftAlternative => scan(l, id, |[x, y]| (m(m(x, x), y), m(x, m(x, y)))),
        IdentityId::Rip => scan(l, id, |[x, y]| (m(m(x, y), l.rinv(y)), x)),
        IdentityId::Lip => {
            // rinv is two-sided under RIP; otherwise evaluate with the left inverse.
            let rip = check_identity(l, IdentityId::Rip).is_none();
            let inv = |x| if rip { l.rinv(x) } else { l.linv(x) };
            scan(l, id, |[x, y]| (m(inv(x), m(x, y)), y))
        }
        IdentityId::Extra => scan(l, id, |[x, y, z]| (m(m(m(x, y), z), x), m(x, m(y, m(z, x))))),
        IdentityId::Commutative => scan(l, id, |[x, y]| (m(x, y), m(y, x))),
        IdentityId::Associative => scan(l, id, |[x, y, z]| (m(m(x, y), z), m(x, m(y, z)))),
    }
}

pub fn holds(l: &LoopTable, id: IdentityId) -> bool {
    check_identity(l, id).is_none()
}

pub fn is_right_bol(l: &LoopTable) -> bool {
    holds(l, IdentityId::RightBol)
}

pub fn is_moufang(l: &LoopTable) -> bool {
    holds(l, IdentityId::RightMoufang)
}

pub fn is_group(l: &LoopTable) -> bool {
    holds(l, IdentityId::Associative)
}

/// Moufang and every square in the nucleus.
pub fn squares_in_nucleus_moufang(l: &LoopTable) -> bool {
    if !is_moufang(l) {
        return false;
    }
    let nuc = l.nuclei();
    l.elements().all(|x| nuc.contains(l.mul(x, x)))
}

/// Whether `l` satisfies the extra identity.
///
/// # Panics
///
/// If the identity holds but `l` is not a Moufang loop with all squares in
/// the nucleus. That characterization is a theorem, so this is a bug.
pub fn is_extra(l: &LoopTable) -> bool {
    let extra = holds(l, IdentityId::Extra);
    if extra {
        assert!(squares_in_nucleus_moufang(l), "extra loop that is not Moufang with squares in the nucleus");
    }
    extra
}
