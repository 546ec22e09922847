//! Exhaustive verification sweeps over every normalized loop of small order.
//!
//! Each check is a per-loop statement that must hold for all loops. A sweep
//! runs one pass per (order, check), partitions the enumeration across the
//! current rayon pool and merges partial results in partition order, so the
//! outcome (including the first violation) does not depend on worker count.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::conditions;
use crate::enumerate::{partitions, MAX_ENUM_ORDER};
use crate::identities::{self, IdentityId};
use crate::report::{json_envelope, ReportError};
use crate::ring::{self, RingIdentityId};
use crate::table::{LoopError, LoopTable};

/// Highest order swept by default; `long` raises it by one.
pub const DEFAULT_MAX_ORDER: usize = 6;
/// Highest order for ring-oracle checks by default; `long` raises it by one.
pub const DEFAULT_MAX_RING_ORDER: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SweepCheck {
    /// Ring right Bol ⟺ right Bol with D, E or F at every quadruple.
    RingBolEquivalence,
    /// Right alternative with A*/B*/C* everywhere ⟺ ring right alternative,
    /// dually on the left, and for Moufang loops RA2 ⟺ alternative ring.
    /// Loops where the conditions alone disagree with the ring are tallied
    /// as `bare_*_half_mismatch`.
    RingAlternativeEquivalence,
    /// SRAR loops: all of D, E, F or exactly one at every quadruple, and the
    /// same for D′, E′, F′ at every triple.
    SrarAllOrOne,
    /// Bol loops: `x⁻¹(xy) = y` iff `x(x⁻¹y) = y`.
    BolLipEquivalence,
    /// Bol loops where every pair commutes or satisfies LIP are Moufang.
    CommuteOrLipMoufang,
    /// Bol loops with a pair of D′, E′, F′ everywhere: extra RA2, group,
    /// abelian group respectively.
    PairCoverage,
    /// Bol loops with any pair of D′, E′, F′ everywhere are RA2.
    PairCoverageRa2,
    /// SRAR loops of odd order are groups.
    OddSrarAssociative,
    Ra2ImpliesSrar,
    MoufangImpliesBol,
    /// Right Bol ⟹ right alternative and RIP.
    BolImpliesRaltRip,
    BolLipImpliesMoufang,
    /// Extra ⟺ Moufang with every square in the nucleus.
    ExtraCharacterization,
}

impl SweepCheck {
    pub const ALL: [SweepCheck; 13] = [
        SweepCheck::RingBolEquivalence,
        SweepCheck::RingAlternativeEquivalence,
        SweepCheck::SrarAllOrOne,
        SweepCheck::BolLipEquivalence,
        SweepCheck::CommuteOrLipMoufang,
        SweepCheck::PairCoverage,
        SweepCheck::PairCoverageRa2,
        SweepCheck::OddSrarAssociative,
        SweepCheck::Ra2ImpliesSrar,
        SweepCheck::MoufangImpliesBol,
        SweepCheck::BolImpliesRaltRip,
        SweepCheck::BolLipImpliesMoufang,
        SweepCheck::ExtraCharacterization,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SweepCheck::RingBolEquivalence => "ring-bol-equivalence",
            SweepCheck::RingAlternativeEquivalence => "ring-alternative-equivalence",
            SweepCheck::SrarAllOrOne => "srar-all-or-one",
            SweepCheck::BolLipEquivalence => "bol-lip-equivalence",
            SweepCheck::CommuteOrLipMoufang => "commute-or-lip-moufang",
            SweepCheck::PairCoverage => "pair-coverage",
            SweepCheck::PairCoverageRa2 => "pair-coverage-ra2",
            SweepCheck::OddSrarAssociative => "odd-srar-associative",
            SweepCheck::Ra2ImpliesSrar => "ra2-implies-srar",
            SweepCheck::MoufangImpliesBol => "moufang-implies-bol",
            SweepCheck::BolImpliesRaltRip => "bol-implies-ralt-rip",
            SweepCheck::BolLipImpliesMoufang => "bol-lip-implies-moufang",
            SweepCheck::ExtraCharacterization => "extra-characterization",
        }
    }

    pub fn uses_ring(self) -> bool {
        matches!(self, SweepCheck::RingBolEquivalence | SweepCheck::RingAlternativeEquivalence)
    }

    /// Largest order this check accepts.
    pub fn max_order(self, long: bool) -> usize {
        let base = if self.uses_ring() { DEFAULT_MAX_RING_ORDER } else { DEFAULT_MAX_ORDER };
        (base + usize::from(long)).min(MAX_ENUM_ORDER)
    }
}

impl fmt::Display for SweepCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepCheck {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.replace('_', "-");
        SweepCheck::ALL.into_iter().find(|c| c.name() == key).ok_or_else(|| format!("unknown check `{s}`"))
    }
}

impl Serialize for SweepCheck {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SweepError {
    #[error("{check}: order {order} exceeds the limit of {limit}{}", if *.long { "" } else { " (--long raises it by one)" })]
    OrderExceedsCap { check: SweepCheck, order: usize, limit: usize, long: bool },
    #[error("no orders requested")]
    NoOrders,
    #[error("no checks requested")]
    NoChecks,
    #[error(transparent)]
    Enumeration(#[from] LoopError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepSpec {
    pub orders: Vec<usize>,
    pub checks: Vec<SweepCheck>,
    /// Allow order 7, and order 6 for ring checks.
    pub long: bool,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), SweepError> {
        if self.orders.is_empty() {
            return Err(SweepError::NoOrders);
        }
        if self.checks.is_empty() {
            return Err(SweepError::NoChecks);
        }
        for &order in &self.orders {
            if order < 2 {
                return Err(LoopError::Malformed(format!("sweep order must be at least 2, got {order}")).into());
            }
            for &check in &self.checks {
                let limit = check.max_order(self.long);
                if order > limit {
                    return Err(SweepError::OrderExceedsCap { check, order, limit, long: self.long });
                }
            }
        }
        Ok(())
    }
}

/// A loop falsifying a check, recorded in full so it can be reproduced
/// without re-enumerating.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// 1-indexed Cayley table.
    pub table: Vec<Vec<usize>>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepEntry {
    pub order: usize,
    pub check: SweepCheck,
    pub loops_scanned: u64,
    /// Loops meeting the check's hypothesis (all loops for equivalences).
    pub applicable: u64,
    pub violations: u64,
    pub first_violation: Option<Violation>,
    /// Check-specific tallies, e.g. how many loops have a one-sided
    /// alternative ring.
    pub observations: BTreeMap<&'static str, u64>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl SweepEntry {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepResult {
    pub long: bool,
    pub entries: Vec<SweepEntry>,
}

impl SweepResult {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(SweepEntry::passed)
    }

    pub fn total_violations(&self) -> u64 {
        self.entries.iter().map(|e| e.violations).sum()
    }
}

#[derive(Default)]
struct Outcome {
    applicable: bool,
    violation: Option<String>,
    observations: Vec<&'static str>,
}

impl Outcome {
    fn vacuous() -> Self {
        Outcome::default()
    }

    fn tested(violation: Option<String>) -> Self {
        Outcome { applicable: true, violation, observations: Vec::new() }
    }

    fn implication(hypothesis: bool, conclusion: bool, what: &str) -> Self {
        Outcome {
            applicable: hypothesis,
            violation: (hypothesis && !conclusion).then(|| what.to_string()),
            observations: Vec::new(),
        }
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "holds"
    } else {
        "fails"
    }
}

fn evaluate(check: SweepCheck, l: &LoopTable) -> Outcome {
    use SweepCheck::*;
    let bol = || identities::is_right_bol(l);
    match check {
        RingBolEquivalence => {
            let ring = match ring::ring_identity_check(l, RingIdentityId::RingRightBol, Some(MAX_ENUM_ORDER)) {
                Ok(w) => w.is_none(),
                Err(e) => return Outcome::tested(Some(e.to_string())),
            };
            let srar = conditions::is_srar(l);
            let mut out = Outcome::tested(
                (ring != srar).then(|| format!("ring right Bol {} but SRAR criterion {}", yes(ring), yes(srar))),
            );
            if srar {
                out.observations.push("srar");
            }
            out
        }
        RingAlternativeEquivalence => {
            let eq = match ring::ra2_equivalence(l, Some(MAX_ENUM_ORDER)) {
                Ok(eq) => eq,
                Err(e) => return Outcome::tested(Some(e.to_string())),
            };
            let mut problems = Vec::new();
            if !eq.right_half() {
                problems.push(format!(
                    "right alternative with A*/B*/C* everywhere {} but ring right alternative {}",
                    yes(eq.right_conditions && eq.loop_right_alternative),
                    yes(eq.ring_right_alternative)
                ));
            }
            if !eq.left_half() {
                problems.push(format!(
                    "left alternative with A/B/C everywhere {} but ring left alternative {}",
                    yes(eq.left_conditions && eq.loop_left_alternative),
                    yes(eq.ring_left_alternative)
                ));
            }
            if !eq.moufang_full() {
                problems.push(format!("Moufang loop with RA2 {} disagrees with ring alternativity", yes(eq.ra2)));
            }
            let mut out = Outcome::tested((!problems.is_empty()).then(|| problems.join("; ")));
            let tags = [
                (eq.ring_right_alternative, "ring_right_alternative"),
                (eq.ring_left_alternative, "ring_left_alternative"),
                (eq.one_sided(), "ring_right_not_left_alternative"),
                (eq.ring_left_alternative && !eq.ring_right_alternative, "ring_left_not_right_alternative"),
                (eq.moufang, "moufang"),
                (eq.ra2, "ra2"),
                (!eq.bare_right_half(), "bare_right_half_mismatch"),
                (!eq.bare_left_half(), "bare_left_half_mismatch"),
            ];
            out.observations = tags.into_iter().filter(|t| t.0).map(|t| t.1).collect();
            out
        }
        SrarAllOrOne => {
            if !conditions::is_srar(l) {
                return Outcome::vacuous();
            }
            let quad = conditions::lemma_allthree(l);
            let triple = conditions::lemma_allthree_triples(l);
            let violation = match (quad, triple) {
                (Err(e), _) | (_, Err(e)) => Some(e.to_string()),
                (Ok(Some(w)), _) => Some(format!("quadruple {}", conditions::describe_witness(l, &w))),
                (_, Ok(Some(w))) => Some(format!("triple {}", conditions::describe_witness(l, &w))),
                (Ok(None), Ok(None)) => None,
            };
            Outcome::tested(violation)
        }
        BolLipEquivalence => {
            if !bol() {
                return Outcome::vacuous();
            }
            Outcome::tested(match conditions::lemma_lip_equiv(l) {
                Ok(w) => w.map(|w| w.to_string()),
                Err(e) => Some(e.to_string()),
            })
        }
        CommuteOrLipMoufang => {
            if !bol() {
                return Outcome::vacuous();
            }
            match conditions::lemma_key_mfg(l) {
                Ok(true) => Outcome { applicable: true, violation: None, observations: vec!["hypothesis_holds"] },
                Ok(false) => Outcome::tested(None),
                Err(e) => Outcome::tested(Some(e.to_string())),
            }
        }
        PairCoverage => {
            if !bol() {
                return Outcome::vacuous();
            }
            let r = match conditions::thm_main_verify(l) {
                Ok(r) => r,
                Err(e) => return Outcome::tested(Some(e.to_string())),
            };
            let clauses = [
                ("D'/E' everywhere => extra RA2", r.de_ra2_extra, "de_everywhere"),
                ("D'/F' everywhere => group", r.df_group, "df_everywhere"),
                ("E'/F' everywhere => abelian group", r.ef_abelian_group, "ef_everywhere"),
            ];
            let failed: Vec<&str> = clauses.iter().filter(|c| !c.1.ok()).map(|c| c.0).collect();
            let mut out = Outcome::tested((!failed.is_empty()).then(|| format!("violated: {}", failed.join("; "))));
            out.observations = clauses.iter().filter(|c| c.1.hypothesis).map(|c| c.2).collect();
            out
        }
        PairCoverageRa2 => {
            if !bol() {
                return Outcome::vacuous();
            }
            match conditions::cor_pair_ra2(l) {
                Ok(i) => Outcome::implication(i.hypothesis, i.conclusion, "pair of D'/E'/F' everywhere but not RA2"),
                Err(e) => Outcome::tested(Some(e.to_string())),
            }
        }
        OddSrarAssociative => {
            let i = conditions::cor_odd_verify(l);
            Outcome::implication(i.hypothesis, i.conclusion, "odd-order SRAR loop is not associative")
        }
        Ra2ImpliesSrar => {
            let i = conditions::prop_ra2_srar(l);
            Outcome::implication(i.hypothesis, i.conclusion, "RA2 loop is not SRAR")
        }
        MoufangImpliesBol => {
            let m = identities::is_moufang(l);
            Outcome::implication(m, m && bol(), "Moufang loop is not right Bol")
        }
        BolImpliesRaltRip => {
            if !bol() {
                return Outcome::vacuous();
            }
            let w = identities::check_identity(l, IdentityId::RightAlternative)
                .or_else(|| identities::check_identity(l, IdentityId::Rip));
            Outcome::tested(w.map(|w| w.to_string()))
        }
        BolLipImpliesMoufang => {
            let hyp = bol() && identities::holds(l, IdentityId::Lip);
            Outcome::implication(hyp, hyp && identities::is_moufang(l), "right Bol loop with LIP is not Moufang")
        }
        ExtraCharacterization => {
            let extra = identities::holds(l, IdentityId::Extra);
            let char = identities::squares_in_nucleus_moufang(l);
            let mut out =
                Outcome::tested((extra != char).then(|| {
                    format!("extra identity {} but Moufang with squares in nucleus {}", yes(extra), yes(char))
                }));
            if extra {
                out.observations.push("extra");
            }
            out
        }
    }
}

#[derive(Default)]
struct Partial {
    scanned: u64,
    applicable: u64,
    violations: u64,
    first: Option<Violation>,
    observations: BTreeMap<&'static str, u64>,
}

impl Partial {
    fn absorb(&mut self, other: Partial) {
        self.scanned += other.scanned;
        self.applicable += other.applicable;
        self.violations += other.violations;
        if self.first.is_none() {
            self.first = other.first;
        }
        for (k, v) in other.observations {
            *self.observations.entry(k).or_default() += v;
        }
    }
}

fn sweep_one(order: usize, check: SweepCheck) -> Result<SweepEntry, SweepError> {
    let start = Instant::now();
    let parts: Vec<Partial> = partitions(order)?
        .par_iter()
        .map(|p| {
            let mut acc = Partial::default();
            acc.scanned = p.for_each(|l| {
                let out = evaluate(check, l);
                acc.applicable += u64::from(out.applicable);
                for tag in out.observations {
                    *acc.observations.entry(tag).or_default() += 1;
                }
                if let Some(detail) = out.violation {
                    acc.violations += 1;
                    if acc.first.is_none() {
                        acc.first = Some(Violation { table: l.to_rows_one_based(), detail });
                    }
                }
            });
            acc
        })
        .collect();
    let mut total = Partial::default();
    for p in parts {
        total.absorb(p);
    }
    Ok(SweepEntry {
        order,
        check,
        loops_scanned: total.scanned,
        applicable: total.applicable,
        violations: total.violations,
        first_violation: total.first,
        observations: total.observations,
        wall_time: start.elapsed(),
    })
}

/// Run every requested check on every loop of every requested order, in the
/// order given. Parallelism comes from the current rayon pool.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult, SweepError> {
    spec.validate()?;
    let mut entries = Vec::with_capacity(spec.orders.len() * spec.checks.len());
    for &order in &spec.orders {
        for &check in &spec.checks {
            entries.push(sweep_one(order, check)?);
        }
    }
    Ok(SweepResult { long: spec.long, entries })
}

#[derive(Serialize)]
struct SweepAggregates {
    long: bool,
    entries: usize,
    loops_scanned: u64,
    violations: u64,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_time_s: Option<f64>,
}

#[derive(Serialize)]
struct EntryJson<'a> {
    #[serde(flatten)]
    entry: &'a SweepEntry,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_time_s: Option<f64>,
}

/// JSON in the shared report envelope. Wall time is included only when
/// `timing` is set, so default output is reproducible byte for byte.
pub fn sweep_json(result: &SweepResult, timing: bool) -> Result<Vec<u8>, ReportError> {
    let total_time: Duration = result.entries.iter().map(|e| e.wall_time).sum();
    let aggregates = SweepAggregates {
        long: result.long,
        entries: result.entries.len(),
        loops_scanned: result.entries.iter().map(|e| e.loops_scanned).sum(),
        violations: result.total_violations(),
        passed: result.passed(),
        wall_time_s: timing.then_some(total_time.as_secs_f64()),
    };
    let records: Vec<EntryJson> = result
        .entries
        .iter()
        .map(|entry| EntryJson { entry, wall_time_s: timing.then_some(entry.wall_time.as_secs_f64()) })
        .collect();
    json_envelope(&aggregates, &records)
}

pub const SWEEP_CSV_HEADER: [&str; 6] = ["order", "check", "loops_scanned", "applicable", "violations", "status"];

pub fn sweep_csv(result: &SweepResult, timing: bool) -> Result<Vec<u8>, ReportError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<&str> = SWEEP_CSV_HEADER.to_vec();
    if timing {
        header.push("wall_time_s");
    }
    w.write_record(&header)?;
    for e in &result.entries {
        let mut row = vec![
            e.order.to_string(),
            e.check.to_string(),
            e.loops_scanned.to_string(),
            e.applicable.to_string(),
            e.violations.to_string(),
            if e.passed() { "pass" } else { "FAIL" }.to_string(),
        ];
        if timing {
            row.push(format!("{:.3}", e.wall_time.as_secs_f64()));
        }
        w.write_record(&row)?;
    }
    w.into_inner().map_err(|e| ReportError::Csv(e.into_error().into()))
}

/// One line per entry, then the first violation of each failing entry.
pub fn sweep_text(result: &SweepResult, timing: bool) -> String {
    let mut out = String::new();
    for e in &result.entries {
        out.push_str(&format!(
            "order {} {:<30} {} loops={} applicable={} violations={}",
            e.order,
            e.check.name(),
            if e.passed() { "pass" } else { "FAIL" },
            e.loops_scanned,
            e.applicable,
            e.violations
        ));
        if !e.observations.is_empty() {
            let obs: Vec<String> = e.observations.iter().map(|(k, v)| format!("{k}={v}")).collect();
            out.push_str(&format!(" [{}]", obs.join(" ")));
        }
        if timing {
            out.push_str(&format!(" time={:.3}s", e.wall_time.as_secs_f64()));
        }
        out.push('\n');
    }
    for e in result.entries.iter().filter(|e| !e.passed()) {
        if let Some(v) = &e.first_violation {
            out.push_str(&format!("\nfirst violation of {} at order {}: {}\n", e.check, e.order, v.detail));
            for row in &v.table {
                let cells: Vec<String> = row.iter().map(usize::to_string).collect();
                out.push_str(&cells.join(" "));
                out.push('\n');
            }
        }
    }
    out.push_str(&format!(
        "{}: {} entries, {} violations\n",
        if result.passed() { "PASS" } else { "FAIL" },
        result.entries.len(),
        result.total_violations()
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(orders: &[usize], checks: &[SweepCheck]) -> SweepSpec {
        SweepSpec { orders: orders.to_vec(), checks: checks.to_vec(), long: false }
    }

    #[test]
    fn order_two_all_checks() {
        let r = run_sweep(&spec(&[2], &SweepCheck::ALL)).unwrap();
        assert_eq!(r.entries.len(), SweepCheck::ALL.len());
        for e in &r.entries {
            assert_eq!(e.loops_scanned, 1, "{}", e.check);
            assert_eq!(e.violations, 0, "{}", e.check);
        }
    }

    #[test]
    fn odd_order_five() {
        let r = run_sweep(&spec(&[5], &[SweepCheck::OddSrarAssociative])).unwrap();
        assert_eq!(r.entries[0].loops_scanned, 56);
        assert_eq!(r.entries[0].violations, 0);
        assert!(r.entries[0].first_violation.is_none());
    }

    #[test]
    fn caps() {
        assert!(matches!(
            run_sweep(&spec(&[6], &[SweepCheck::RingBolEquivalence])),
            Err(SweepError::OrderExceedsCap { order: 6, limit: 5, .. })
        ));
        assert!(matches!(
            run_sweep(&spec(&[7], &[SweepCheck::MoufangImpliesBol])),
            Err(SweepError::OrderExceedsCap { order: 7, limit: 6, .. })
        ));
        let long = SweepSpec { long: true, ..spec(&[7], &[SweepCheck::RingAlternativeEquivalence]) };
        assert!(matches!(run_sweep(&long), Err(SweepError::OrderExceedsCap { limit: 6, .. })));
        assert_eq!(run_sweep(&spec(&[], &[SweepCheck::MoufangImpliesBol])), Err(SweepError::NoOrders));
        assert_eq!(run_sweep(&spec(&[3], &[])), Err(SweepError::NoChecks));
        assert!(matches!(run_sweep(&spec(&[1], &[SweepCheck::MoufangImpliesBol])), Err(SweepError::Enumeration(_))));
    }

    #[test]
    fn check_names_roundtrip() {
        for c in SweepCheck::ALL {
            assert_eq!(c.name().parse::<SweepCheck>().unwrap(), c);
        }
        assert_eq!("pair_coverage".parse::<SweepCheck>().unwrap(), SweepCheck::PairCoverage);
        assert!("lemma".parse::<SweepCheck>().is_err());
    }

    #[test]
    fn merge_keeps_the_earliest_violation() {
        let mut acc = Partial::default();
        let l = crate::fixtures::cyclic(3);
        acc.absorb(Partial {
            scanned: 1,
            violations: 1,
            first: Some(Violation { table: l.to_rows_one_based(), detail: "x".into() }),
            ..Default::default()
        });
        acc.absorb(Partial {
            scanned: 1,
            violations: 1,
            first: Some(Violation { table: vec![], detail: "y".into() }),
            ..Default::default()
        });
        assert_eq!(acc.violations, 2);
        assert_eq!(acc.first.unwrap().detail, "x");
    }

    #[test]
    fn json_omits_wall_time_unless_asked() {
        let r = run_sweep(&spec(&[3], &[SweepCheck::Ra2ImpliesSrar])).unwrap();
        let plain = String::from_utf8(sweep_json(&r, false).unwrap()).unwrap();
        assert!(!plain.contains("wall_time"));
        let v: serde_json::Value = serde_json::from_str(&plain).unwrap();
        assert_eq!(v["records"][0]["check"], "ra2-implies-srar");
        assert_eq!(v["aggregates"]["passed"], true);
        assert!(String::from_utf8(sweep_json(&r, true).unwrap()).unwrap().contains("wall_time_s"));
    }
}
