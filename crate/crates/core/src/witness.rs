use std::fmt;

use serde::Serialize;

use crate::identities::IdentityId;

/// What a [`Witness`] falsifies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckId {
    Identity(IdentityId),
    /// None of D, E, F holds at a quadruple.
    NoQuadCondition,
    /// None of A, B, C holds at a triple.
    NoLeftCondition,
    /// None of A*, B*, C* holds at a triple.
    NoRightCondition,
    /// Exactly two of D, E, F hold at a quadruple, or none.
    NotAllOrOne,
    /// `x⁻¹(xy) = y` and `x(x⁻¹y) = y` have different truth values.
    LipEquivalence,
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckId::Identity(id) => write!(f, "{id}"),
            CheckId::NoQuadCondition => f.write_str("D/E/F empty"),
            CheckId::NoLeftCondition => f.write_str("A/B/C empty"),
            CheckId::NoRightCondition => f.write_str("A*/B*/C* empty"),
            CheckId::NotAllOrOne => f.write_str("D/E/F neither all nor exactly one"),
            CheckId::LipEquivalence => f.write_str("x^-1(xy)=y vs x(x^-1 y)=y mismatch"),
        }
    }
}

/// The lexicographically first tuple at which a check fails, with the two
/// sides that disagree. Elements are zero-indexed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Witness {
    pub check: CheckId,
    pub tuple: Vec<usize>,
    pub lhs: usize,
    pub rhs: usize,
}

impl Witness {
    /// `(2,2,3,9)` style, 1-indexed.
    pub fn tuple_one_based(&self) -> String {
        let parts: Vec<String> = self.tuple.iter().map(|x| (x + 1).to_string()).collect();
        format!("({})", parts.join(","))
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verb = if matches!(self.check, CheckId::Identity(_)) { " fails" } else { "" };
        write!(f, "{}{verb} at {}: lhs={} rhs={}", self.check, self.tuple_one_based(), self.lhs + 1, self.rhs + 1)
    }
}
