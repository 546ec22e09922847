//! Per-loop classification and aggregate counts over a catalog.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::CatalogRecord;
use crate::conditions::{self, Profile, TripleCoverage};
use crate::identities::{self, IdentityId};
use crate::table::LoopTable;
use crate::witness::Witness;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SurveyFilter {
    All,
    NonMoufangBol,
}

impl SurveyFilter {
    pub fn name(self) -> &'static str {
        match self {
            SurveyFilter::All => "all",
            SurveyFilter::NonMoufangBol => "non-moufang-bol",
        }
    }

    pub fn accepts(self, flags: &Flags) -> bool {
        match self {
            SurveyFilter::All => true,
            SurveyFilter::NonMoufangBol => flags.right_bol && !flags.moufang,
        }
    }
}

impl fmt::Display for SurveyFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SurveyFilter {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.replace('_', "-").as_str() {
            "all" => Ok(SurveyFilter::All),
            "non-moufang-bol" => Ok(SurveyFilter::NonMoufangBol),
            _ => Err(format!("unknown filter `{s}` (expected all or non-moufang-bol)")),
        }
    }
}

/// Boolean classification columns, in CSV column order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Flags {
    pub right_bol: bool,
    pub moufang: bool,
    pub srar: bool,
    pub ra2: bool,
    pub extra: bool,
    pub group: bool,
    pub def_everywhere: bool,
    pub de: bool,
    pub df: bool,
    pub ef: bool,
}

impl Flags {
    pub const COLUMNS: [&'static str; 10] =
        ["right_bol", "moufang", "srar", "ra2", "extra", "group", "def_everywhere", "de", "df", "ef"];

    pub fn values(&self) -> [bool; 10] {
        [
            self.right_bol,
            self.moufang,
            self.srar,
            self.ra2,
            self.extra,
            self.group,
            self.def_everywhere,
            self.de,
            self.df,
            self.ef,
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub name: String,
    pub order: usize,
    pub flags: Flags,
    pub triple_profile: Profile,
    /// First counterexample to right Bol / Moufang / SRAR / RA2, where any.
    pub witnesses: Vec<Witness>,
    /// The same witnesses, described for humans.
    pub notes: Vec<String>,
}

pub fn classify(name: &str, l: &LoopTable) -> Classification {
    let bol_w = identities::check_identity(l, IdentityId::RightBol);
    let moufang_w = identities::check_identity(l, IdentityId::RightMoufang);
    let srar_w = conditions::srar_counterexample(l);
    let ra2_w = conditions::ra2_counterexample(l);
    let profile = conditions::triple_profile(l);
    let cov = TripleCoverage::from_profile(&profile);
    let flags = Flags {
        right_bol: bol_w.is_none(),
        moufang: moufang_w.is_none(),
        srar: srar_w.is_none(),
        ra2: ra2_w.is_none(),
        extra: identities::is_extra(l),
        group: identities::is_group(l),
        def_everywhere: cov.def_everywhere,
        de: cov.de_everywhere,
        df: cov.df_everywhere,
        ef: cov.ef_everywhere,
    };
    let mut witnesses: Vec<Witness> = Vec::new();
    for w in [bol_w, moufang_w, srar_w, ra2_w].into_iter().flatten() {
        if !witnesses.contains(&w) {
            witnesses.push(w);
        }
    }
    let notes = witnesses.iter().map(|w| conditions::describe_witness(l, w)).collect();
    Classification { name: name.to_string(), notes, order: l.order(), flags, triple_profile: profile, witnesses }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurveyReport {
    pub filter: SurveyFilter,
    /// Records read.
    pub total: u64,
    /// Records passing the filter; these are the rows.
    pub surveyed: u64,
    /// Right Bol, not Moufang; counted over all records.
    pub non_moufang_bol: u64,
    pub srar: u64,
    pub non_srar: u64,
    /// Non-SRAR rows where D′, E′ or F′ holds at every triple.
    pub non_srar_with_def: u64,
    pub records: Vec<Classification>,
}

impl SurveyReport {
    pub fn from_classifications(filter: SurveyFilter, all: Vec<Classification>) -> Self {
        let total = all.len() as u64;
        let non_moufang_bol = all.iter().filter(|c| c.flags.right_bol && !c.flags.moufang).count() as u64;
        let records: Vec<Classification> = all.into_iter().filter(|c| filter.accepts(&c.flags)).collect();
        let srar = records.iter().filter(|c| c.flags.srar).count() as u64;
        let non_srar_with_def = records.iter().filter(|c| !c.flags.srar && c.flags.def_everywhere).count() as u64;
        SurveyReport {
            filter,
            total,
            surveyed: records.len() as u64,
            non_moufang_bol,
            srar,
            non_srar: records.len() as u64 - srar,
            non_srar_with_def,
            records,
        }
    }
}

/// Classify every record (concurrently, on the current rayon pool) and
/// aggregate. Row order is input order.
pub fn survey(records: &[CatalogRecord], filter: SurveyFilter) -> SurveyReport {
    let all: Vec<Classification> = records.par_iter().map(|r| classify(&r.name, &r.table)).collect();
    SurveyReport::from_classifications(filter, all)
}
