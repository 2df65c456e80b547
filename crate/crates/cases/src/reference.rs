//! Replay of the classical case analysis and audit of its published tables.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::certificate::{
    apply_rule, kill_pattern, refute_root_system, Certificate, Kind, Rule, RuleMode, Soundness, Subject, Witnesses,
};
use crate::pattern::{enumerate_patterns, enumerate_profiles, gl3_canonicalize, DimPattern};
use crate::roots::{admissible_toral_space, enumerate_root_systems, root_label};
use crate::space::{t_coords, ToralSpan};

/// The published pattern lists for dimensions 10 to 16, verbatim.
pub const REFERENCE_PATTERNS: &str = include_str!("../data/reference_patterns.txt");

pub const REPLAY_CAVEAT: &str = "sound kills follow from the rank, count and ideal rules alone; \
paper_style kills additionally assume an element of g_ξ whose square has a prescribed nonzero toral part";

/// Published toral spans of [g_ξ, g_ξ] for Δ1..Δ15, as (root, generators).
const ASSERTED_SPANS: [&[(u8, &[u8])]; 15] = [
    &[(1, &[]), (2, &[]), (4, &[])],
    &[(1, &[2]), (2, &[1]), (4, &[]), (3, &[3])],
    &[(1, &[4]), (2, &[]), (4, &[1]), (5, &[5])],
    &[(1, &[]), (2, &[4]), (4, &[2]), (6, &[6])],
    &[(1, &[]), (2, &[]), (4, &[]), (7, &[])],
    &[(1, &[6]), (2, &[]), (4, &[]), (3, &[]), (5, &[])],
    &[(1, &[]), (2, &[5]), (4, &[]), (3, &[3]), (6, &[6])],
    &[(1, &[]), (2, &[]), (4, &[]), (3, &[3, 4]), (7, &[])],
    &[(1, &[]), (2, &[]), (4, &[1, 2]), (5, &[]), (6, &[])],
    &[(1, &[]), (2, &[]), (4, &[]), (5, &[2, 5]), (7, &[])],
    &[(1, &[]), (2, &[]), (4, &[]), (6, &[2, 5]), (7, &[])],
    &[(1, &[6]), (2, &[5]), (4, &[3]), (3, &[3]), (5, &[5]), (6, &[6])],
    &[(1, &[6]), (2, &[1]), (4, &[1]), (3, &[7]), (5, &[7]), (7, &[6])],
    &[(1, &[2]), (2, &[5]), (4, &[2]), (3, &[7]), (6, &[7]), (7, &[5])],
    &[(1, &[4]), (2, &[4]), (4, &[3]), (5, &[7]), (6, &[7]), (7, &[3])],
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanComparison {
    pub root: u8,
    pub label: String,
    pub derived: Vec<[u8; 3]>,
    pub asserted: Vec<[u8; 3]>,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseComparison {
    pub index: usize,
    pub roots: Vec<SpanComparison>,
    pub agrees: bool,
}

/// Side-by-side of the derived admissible spaces and the published spans.
pub fn compare_spans(index: usize) -> Option<CaseComparison> {
    let table = ASSERTED_SPANS.get(index.checked_sub(1)?)?;
    let d = enumerate_root_systems()[index];
    let roots: Vec<SpanComparison> = table
        .iter()
        .map(|&(xi, gens)| {
            let ours = admissible_toral_space(d, xi).expect("table roots belong to the system");
            let theirs = ToralSpan::span(gens);
            SpanComparison {
                root: xi,
                label: root_label(xi).to_string(),
                derived: ours.basis().into_iter().map(t_coords).collect(),
                asserted: theirs.basis().into_iter().map(t_coords).collect(),
                agrees: ours == theirs,
            }
        })
        .collect();
    let agrees = roots.iter().all(|r| r.agrees);
    Some(CaseComparison { index, roots, agrees })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sections {
    RootSystems,
    Patterns,
    All,
}

impl Sections {
    fn root_systems(self) -> bool {
        matches!(self, Sections::RootSystems | Sections::All)
    }

    fn patterns(self) -> bool {
        matches!(self, Sections::Patterns | Sections::All)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub sound: usize,
    pub paper_style: usize,
    pub unrefuted: usize,
}

impl Summary {
    fn add(&mut self, c: &Certificate) {
        match c.soundness {
            Some(Soundness::Sound) => self.sound += 1,
            Some(Soundness::PaperStyle) => self.paper_style += 1,
            None => self.unrefuted += 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSystemRun {
    pub certificates: Vec<Certificate>,
    pub comparisons: Vec<CaseComparison>,
    pub all_rank_deficient: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimRun {
    pub dim: u32,
    pub patterns: usize,
    pub certificates: Vec<Certificate>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternRun {
    pub dims: [u32; 2],
    pub per_dim: Vec<DimRun>,
    /// Patterns that survive R1 to R3, whatever the mode.
    pub needs_r4: Vec<DimPattern>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub mode: RuleMode,
    pub root_systems: Option<RootSystemRun>,
    pub patterns: Option<PatternRun>,
    pub summary: Summary,
    /// True iff no certificate is Unrefuted.
    pub replayed: bool,
    pub caveat: String,
}

impl VerifyReport {
    pub fn certificates(&self) -> impl Iterator<Item = &Certificate> {
        let a = self.root_systems.iter().flat_map(|r| r.certificates.iter());
        let b = self.patterns.iter().flat_map(|p| p.per_dim.iter().flat_map(|d| d.certificates.iter()));
        a.chain(b)
    }
}

/// Refutes Δ1..Δ15 and/or every pattern with total dimension in `dims`.
pub fn verify_paper(sections: Sections, dims: RangeInclusive<u32>, mode: RuleMode) -> VerifyReport {
    let mut summary = Summary::default();
    let root_systems = sections.root_systems().then(|| {
        let systems = enumerate_root_systems();
        let certificates: Vec<Certificate> = systems[1..].iter().map(|&d| refute_root_system(d)).collect();
        let comparisons = (1..systems.len()).filter_map(compare_spans).collect();
        let all_rank_deficient = certificates.iter().all(|c| c.kind == Kind::RankDeficiency);
        RootSystemRun { certificates, comparisons, all_rank_deficient }
    });
    let patterns = sections.patterns().then(|| {
        let per_dim: Vec<DimRun> = dims
            .clone()
            .map(|dim| {
                let pats = enumerate_patterns(dim);
                let certificates: Vec<Certificate> = pats
                    .par_iter()
                    .map(|p| kill_pattern(p, mode).expect("enumerated patterns are canonical"))
                    .collect();
                DimRun { dim, patterns: pats.len(), certificates }
            })
            .collect();
        let needs_r4 = per_dim
            .iter()
            .flat_map(|d| d.certificates.iter())
            .filter_map(|c| match (&c.subject, c.kind, &c.witnesses) {
                (Subject::Pattern(p), Kind::IsoRule, _) => Some(*p),
                (Subject::Pattern(p), Kind::Unrefuted, Witnesses::Exhausted { .. })
                    if [Rule::R1, Rule::R2, Rule::R3].iter().all(|&r| apply_rule(r, p).is_none()) =>
                {
                    Some(*p)
                }
                _ => None,
            })
            .collect();
        PatternRun { dims: [*dims.start(), *dims.end()], per_dim, needs_r4 }
    });
    let mut report =
        VerifyReport { mode, root_systems, patterns, summary, replayed: false, caveat: REPLAY_CAVEAT.to_string() };
    for c in report.certificates() {
        summary.add(c);
    }
    report.summary = summary;
    report.replayed = summary.unrefuted == 0;
    report
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceEntry {
    pub dim: u32,
    pub item: String,
    pub text: String,
}

/// Entries of the embedded list, in file order.
pub fn reference_entries() -> Vec<ReferenceEntry> {
    REFERENCE_PATTERNS
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let mut parts = l.splitn(3, ' ');
            let dim = parts.next().and_then(|d| d.parse().ok()).expect("embedded list is well formed");
            let item = parts.next().expect("item").to_string();
            let text = parts.next().expect("tuple").trim().to_string();
            ReferenceEntry { dim, item, text }
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DuplicateKind {
    /// The same tuple written more than once.
    Identical,
    /// Different tuples in one GL3(F2)-orbit.
    SameOrbit,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Duplicate {
    pub dim: u32,
    pub items: Vec<String>,
    pub texts: Vec<String>,
    pub canonical: DimPattern,
    pub kind: DuplicateKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Malformed {
    pub dim: u32,
    pub item: String,
    pub text: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Missing {
    pub dim: u32,
    pub pattern: DimPattern,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimTally {
    pub dim: u32,
    pub listed: usize,
    pub well_formed: usize,
    pub distinct_orbits: usize,
    pub enumerated: usize,
    pub profiles: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscrepancyReport {
    pub duplicates: Vec<Duplicate>,
    pub malformed: Vec<Malformed>,
    pub missing: Vec<Missing>,
    pub tallies: Vec<DimTally>,
}

impl DiscrepancyReport {
    pub fn is_clean(&self) -> bool {
        self.duplicates.is_empty() && self.malformed.is_empty() && self.missing.is_empty()
    }
}

fn squash(s: &str) -> String {
    s.chars().filter(|c| !c.is_whitespace()).collect()
}

/// Canonicalizes every embedded tuple and compares with the enumeration:
/// (a) duplicates, (b) malformed or unmatched tuples, (c) missing patterns.
pub fn cross_check_paper_lists() -> DiscrepancyReport {
    let entries = reference_entries();
    let mut by_dim: BTreeMap<u32, Vec<&ReferenceEntry>> = BTreeMap::new();
    for e in &entries {
        by_dim.entry(e.dim).or_default().push(e);
    }
    let mut report = DiscrepancyReport { duplicates: vec![], malformed: vec![], missing: vec![], tallies: vec![] };
    for (&dim, list) in &by_dim {
        let enumerated = enumerate_patterns(dim);
        let mut groups: BTreeMap<DimPattern, Vec<&ReferenceEntry>> = BTreeMap::new();
        let mut well_formed = 0;
        for e in list {
            let reason = match e.text.parse::<DimPattern>() {
                Err(err) => Some(err.to_string()),
                Ok(p) if p.total() != dim => Some(format!("total {} listed under dimension {dim}", p.total())),
                Ok(p) => {
                    let c = gl3_canonicalize(&p);
                    if enumerated.binary_search_by_key(&key(&c), key).is_err() {
                        Some(format!("canonical form {c} is not an enumerated pattern"))
                    } else {
                        well_formed += 1;
                        groups.entry(c).or_default().push(e);
                        None
                    }
                }
            };
            if let Some(reason) = reason {
                report.malformed.push(Malformed { dim, item: e.item.clone(), text: e.text.clone(), reason });
            }
        }
        for (c, es) in groups.iter().filter(|(_, es)| es.len() > 1) {
            let texts: Vec<String> = es.iter().map(|e| e.text.clone()).collect();
            let identical = texts.iter().all(|t| squash(t) == squash(&texts[0]));
            report.duplicates.push(Duplicate {
                dim,
                items: es.iter().map(|e| e.item.clone()).collect(),
                texts,
                canonical: *c,
                kind: if identical { DuplicateKind::Identical } else { DuplicateKind::SameOrbit },
            });
        }
        for p in &enumerated {
            if !groups.contains_key(p) {
                report.missing.push(Missing { dim, pattern: *p });
            }
        }
        report.tallies.push(DimTally {
            dim,
            listed: list.len(),
            well_formed,
            distinct_orbits: groups.len(),
            enumerated: enumerated.len(),
            profiles: enumerate_profiles(dim).len(),
        });
    }
    report
}

fn key(p: &DimPattern) -> (u32, std::cmp::Reverse<[u32; 7]>) {
    (p.d_n, std::cmp::Reverse(p.dims))
}
