//! Refutation certificates and the rules that produce them.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gl3::pair;
use crate::pattern::{DimPattern, TORUS_DIM};
use crate::roots::{admissible_toral_space, enumerate_root_systems, root_label, RootSystem, ROOT_ORDER};
use crate::space::{t_coords, t_from_coords, t_label, ToralSpan};
use crate::CaseError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kind {
    RankDeficiency,
    IdealRule,
    CountRule,
    IsoRule,
    Unrefuted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Soundness {
    Sound,
    /// Depends on the unproved existence of an element with a prescribed
    /// nonzero toral square.
    PaperStyle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RuleMode {
    /// R1 to R4.
    Paper,
    /// R1 to R3 only.
    Strict,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Rule {
    R1,
    R2,
    R3,
    R4,
}

impl RuleMode {
    pub fn rules(self) -> &'static [Rule] {
        match self {
            RuleMode::Paper => &[Rule::R1, Rule::R2, Rule::R3, Rule::R4],
            RuleMode::Strict => &[Rule::R1, Rule::R2, Rule::R3],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Subject {
    RootSystem { index: usize, roots: RootSystem },
    Pattern(DimPattern),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSpan {
    pub root: u8,
    pub label: String,
    pub span: Vec<[u8; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witnesses {
    /// Admissible toral space of every root.
    Spans {
        spans: Vec<RootSpan>,
    },
    /// n plus all root spaces is an ideal of codimension 3.
    Ideal {
        ideal_dim: u32,
        total: u32,
    },
    /// Σ C(d_ξ, 2) against dim h = 3 + d_n.
    Count {
        pairs: Vec<u32>,
        pair_sum: u32,
        needed: u32,
    },
    /// Roots of dimension at least 2, whose kernels bound the toral part of h.
    Kernels {
        roots: Vec<u8>,
    },
    Iso {
        xi: u8,
        t_star: [u8; 3],
        eta: u8,
        d_eta: u32,
        d_eta_plus_xi: u32,
    },
    Exhausted {
        rules_tried: Vec<Rule>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: Kind,
    pub soundness: Option<Soundness>,
    pub subject: Subject,
    pub witnesses: Witnesses,
    pub generators: Vec<[u8; 3]>,
    pub rank: Option<u32>,
}

impl Certificate {
    pub fn is_kill(&self) -> bool {
        self.kind != Kind::Unrefuted
    }

    pub fn subject_label(&self) -> String {
        match &self.subject {
            Subject::RootSystem { index, roots } => format!("Δ{index} = {}", roots.label()),
            Subject::Pattern(p) => p.to_string(),
        }
    }

    /// One-line human rendering.
    pub fn summary(&self) -> String {
        let tag = match self.soundness {
            Some(Soundness::Sound) => "sound",
            Some(Soundness::PaperStyle) => "paper_style",
            None => "open",
        };
        let detail = match &self.witnesses {
            Witnesses::Spans { .. } | Witnesses::Kernels { .. } => {
                let gens: Vec<String> =
                    self.generators.iter().map(|&c| t_label(t_from_coords(c).unwrap_or(0))).collect();
                format!("generators {{{}}} rank {}", gens.join(", "), self.rank.unwrap_or(0))
            }
            Witnesses::Ideal { ideal_dim, total } => format!("ideal of dimension {ideal_dim} in {total}"),
            Witnesses::Count { pair_sum, needed, .. } => format!("{pair_sum} < {needed}"),
            Witnesses::Iso { xi, t_star, eta, d_eta, d_eta_plus_xi } => format!(
                "ξ={} t*={} η={} with {} != {}",
                root_label(*xi),
                t_label(t_from_coords(*t_star).unwrap_or(0)),
                root_label(*eta),
                d_eta,
                d_eta_plus_xi
            ),
            Witnesses::Exhausted { rules_tried } => format!("survives {rules_tried:?}"),
        };
        format!("{} {:?} [{tag}] {detail}", self.subject_label(), self.kind)
    }
}

fn dedup_push(gens: &mut Vec<u8>, items: impl IntoIterator<Item = u8>) {
    for t in items {
        if !gens.contains(&t) {
            gens.push(t);
        }
    }
}

fn rank_of(gens: &[u8]) -> u32 {
    ToralSpan::span(gens).dim()
}

/// Sums the admissible toral spaces of all roots of `d`; a sum of rank below
/// 3 cannot contain the torus, which simplicity forces into h.
pub fn refute_root_system(d: RootSystem) -> Certificate {
    let mut spans = Vec::new();
    let mut gens = Vec::new();
    for xi in d.roots() {
        let basis = admissible_toral_space(d, xi).expect("root of d").basis();
        dedup_push(&mut gens, basis.iter().copied());
        spans.push(RootSpan {
            root: xi,
            label: root_label(xi).to_string(),
            span: basis.iter().map(|&t| t_coords(t)).collect(),
        });
    }
    let rank = rank_of(&gens);
    let (kind, soundness) =
        if rank < TORUS_DIM { (Kind::RankDeficiency, Some(Soundness::Sound)) } else { (Kind::Unrefuted, None) };
    Certificate {
        kind,
        soundness,
        subject: Subject::RootSystem { index: d.index(), roots: d },
        witnesses: Witnesses::Spans { spans },
        generators: gens.into_iter().map(t_coords).collect(),
        rank: Some(rank),
    }
}

fn binom2(d: u32) -> u32 {
    d * d.saturating_sub(1) / 2
}

fn iso_witness(p: &DimPattern) -> Option<(u8, u8, u8)> {
    for xi in ROOT_ORDER {
        for t in (1..8u8).filter(|&t| !pair(xi, t)) {
            for eta in ROOT_ORDER {
                if eta != xi && pair(eta, t) && p.dim_of(eta) != p.dim_of(eta ^ xi) {
                    return Some((xi, t, eta));
                }
            }
        }
    }
    None
}

fn pattern_cert(p: &DimPattern, kind: Kind, soundness: Soundness, witnesses: Witnesses) -> Certificate {
    Certificate {
        kind,
        soundness: Some(soundness),
        subject: Subject::Pattern(*p),
        witnesses,
        generators: Vec::new(),
        rank: None,
    }
}

/// Applies one rule to a pattern; `None` if its premise fails.
pub fn apply_rule(rule: Rule, p: &DimPattern) -> Option<Certificate> {
    match rule {
        Rule::R1 => p.dims.iter().all(|&d| d == 1).then(|| {
            pattern_cert(
                p,
                Kind::IdealRule,
                Soundness::Sound,
                Witnesses::Ideal { ideal_dim: p.total() - TORUS_DIM, total: p.total() },
            )
        }),
        Rule::R2 => {
            let pairs: Vec<u32> = p.dims.iter().map(|&d| binom2(d)).collect();
            let pair_sum = pairs.iter().sum();
            let needed = TORUS_DIM + p.d_n;
            (pair_sum < needed).then(|| {
                pattern_cert(p, Kind::CountRule, Soundness::Sound, Witnesses::Count { pairs, pair_sum, needed })
            })
        }
        Rule::R3 => {
            let roots: Vec<u8> = ROOT_ORDER.into_iter().filter(|&r| p.dim_of(r) >= 2).collect();
            let mut gens = Vec::new();
            for &r in &roots {
                dedup_push(&mut gens, ToralSpan::kernel(r, 3).basis());
            }
            let rank = rank_of(&gens);
            (rank < TORUS_DIM).then(|| Certificate {
                kind: Kind::RankDeficiency,
                soundness: Some(Soundness::Sound),
                subject: Subject::Pattern(*p),
                witnesses: Witnesses::Kernels { roots },
                generators: gens.into_iter().map(t_coords).collect(),
                rank: Some(rank),
            })
        }
        Rule::R4 => iso_witness(p).map(|(xi, t, eta)| {
            pattern_cert(
                p,
                Kind::IsoRule,
                Soundness::PaperStyle,
                Witnesses::Iso {
                    xi,
                    t_star: t_coords(t),
                    eta,
                    d_eta: p.dim_of(eta),
                    d_eta_plus_xi: p.dim_of(eta ^ xi),
                },
            )
        }),
    }
}

/// The first rule of the mode that applies, or an Unrefuted record.
pub fn kill_pattern(p: &DimPattern, mode: RuleMode) -> Result<Certificate, CaseError> {
    if !p.is_canonical() {
        return Err(CaseError::NotCanonical(p.to_string()));
    }
    for &rule in mode.rules() {
        if let Some(c) = apply_rule(rule, p) {
            return Ok(c);
        }
    }
    Ok(Certificate {
        kind: Kind::Unrefuted,
        soundness: None,
        subject: Subject::Pattern(*p),
        witnesses: Witnesses::Exhausted { rules_tried: mode.rules().to_vec() },
        generators: Vec::new(),
        rank: None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("certificate for {subject} does not check: {reason}")]
pub struct CheckError {
    pub subject: String,
    pub reason: String,
}

/// Recomputes every claim of a certificate from its subject.
pub fn check(c: &Certificate) -> Result<(), CheckError> {
    let fail = |reason: String| Err(CheckError { subject: c.subject_label(), reason });
    let expected_soundness = match c.kind {
        Kind::Unrefuted => None,
        Kind::IsoRule => Some(Soundness::PaperStyle),
        _ => Some(Soundness::Sound),
    };
    if c.soundness != expected_soundness {
        return fail(format!("{:?} certificate tagged {:?}", c.kind, c.soundness));
    }
    match &c.subject {
        Subject::RootSystem { index, roots } => {
            if enumerate_root_systems().get(*index) != Some(roots) {
                return fail(format!("index {index} does not name this root system"));
            }
            let fresh = refute_root_system(*roots);
            if fresh != *c {
                return fail("recomputed spans, generators, rank or verdict differ".into());
            }
            Ok(())
        }
        Subject::Pattern(p) => {
            if !p.is_canonical() {
                return fail("pattern is not canonical".into());
            }
            match (&c.kind, &c.witnesses) {
                (Kind::Unrefuted, Witnesses::Exhausted { rules_tried }) => {
                    if let Some(r) = rules_tried.iter().find(|&&r| apply_rule(r, p).is_some()) {
                        return fail(format!("{r:?} applies"));
                    }
                    if !rules_tried.starts_with(&[Rule::R1, Rule::R2, Rule::R3]) {
                        return fail("a sound rule was not tried".into());
                    }
                    Ok(())
                }
                (Kind::IsoRule, Witnesses::Iso { xi, t_star, eta, d_eta, d_eta_plus_xi }) => {
                    let Some(t) = t_from_coords(*t_star) else { return fail("t* is not a toral vector".into()) };
                    let roots_ok = [*xi, *eta].iter().all(|r| (1..8).contains(r)) && xi != eta;
                    if !roots_ok || t == 0 || pair(*xi, t) || !pair(*eta, t) {
                        return fail("ξ(t*) = 0, η(t*) = 1 with t* nonzero does not hold".into());
                    }
                    if p.dim_of(*eta) != *d_eta || p.dim_of(eta ^ xi) != *d_eta_plus_xi || d_eta == d_eta_plus_xi {
                        return fail("dimensions of g_η and g_(η+ξ) are misreported or equal".into());
                    }
                    if !c.generators.is_empty() || c.rank.is_some() {
                        return fail("unexpected generators".into());
                    }
                    Ok(())
                }
                (_, w) => {
                    let rule = match w {
                        Witnesses::Ideal { .. } => Rule::R1,
                        Witnesses::Count { .. } => Rule::R2,
                        Witnesses::Kernels { .. } => Rule::R3,
                        _ => return fail("witnesses do not fit the certificate kind".into()),
                    };
                    match apply_rule(rule, p) {
                        Some(fresh) if fresh == *c => Ok(()),
                        Some(_) => fail(format!("{rule:?} recomputes to different values")),
                        None => fail(format!("premise of {rule:?} fails")),
                    }
                }
            }
        }
    }
}
