//! Censuses of bracket tables: exhaustive over F2 for n <= 4, sampled beyond.

use std::time::Instant;

use lie2_core::field::{Fe, Field};
use lie2_core::liealg::{is_simple, LieAlgebra};
use lie2_core::restricted::{synthesize_two_map, validate_restricted, RestrictedAlgebra};
use lie2_core::toruscartan::{max_tori_and_rank, DEFAULT_ELEMENT_BUDGET, DEFAULT_NODE_BUDGET, RANK_CAVEAT};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::iso::{iso_match, MAX_ISO_DIM};
use crate::tiny::{pair_count, TinyTable};
use crate::CensusError;

/// Largest bracket-table code enumerated exhaustively, in bits.
pub const MAX_EXHAUSTIVE_BITS: usize = 24;
pub const MAX_SAMPLED_DIM: usize = 6;
const SHARD: u64 = 1 << 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sampling {
    pub count: u64,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusSpec {
    pub dim: usize,
    pub field_degree: u32,
    /// `None` asks for the exhaustive sweep.
    pub sample: Option<Sampling>,
    /// 0 uses every available core.
    pub threads: usize,
}

impl CensusSpec {
    pub fn exhaustive(dim: usize) -> CensusSpec {
        CensusSpec { dim, field_degree: 1, sample: None, threads: 0 }
    }

    pub fn sampled(dim: usize, field_degree: u32, count: u64, seed: u64) -> CensusSpec {
        CensusSpec { dim, field_degree, sample: Some(Sampling { count, seed }), threads: 0 }
    }

    pub fn with_threads(mut self, threads: usize) -> CensusSpec {
        self.threads = threads;
        self
    }

    pub fn constant_bits(&self) -> usize {
        pair_count(self.dim) * self.dim * self.field_degree as usize
    }

    fn validate(&self) -> Result<Field, CensusError> {
        let field = Field::new(self.field_degree)?;
        if self.dim == 0 {
            return Err(CensusError::InvalidSpec("dimension must be at least 1".into()));
        }
        match self.sample {
            None if self.field_degree != 1 => {
                Err(CensusError::InvalidSpec(format!("exhaustive census runs over F2 only, got {field}; use sampling")))
            }
            None if self.constant_bits() > MAX_EXHAUSTIVE_BITS => {
                Err(CensusError::BudgetExceeded { bits: self.constant_bits(), max: MAX_EXHAUSTIVE_BITS })
            }
            Some(_) if self.dim > MAX_SAMPLED_DIM => Err(CensusError::InvalidSpec(format!(
                "sampling supports dimension at most {MAX_SAMPLED_DIM}, got {}",
                self.dim
            ))),
            _ => Ok(field),
        }
    }
}

/// Nonzero products (i, j, [[k, bits]]) of a bracket table.
pub type SparseTable = Vec<(usize, usize, Vec<(usize, u16)>)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoClass {
    /// Candidate index of the first member found.
    pub representative: u64,
    /// Nonzero products of the representative.
    pub bracket: SparseTable,
    pub members: u64,
    pub restrictable: bool,
    pub toral_rank_lb: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub spec: CensusSpec,
    pub exhaustive: bool,
    pub candidates_scanned: u64,
    pub jacobi_pass: u64,
    pub simple_count: u64,
    pub restrictable_simple_count: u64,
    /// Restrictable simples whose toral rank lower bound is at least 3.
    pub restrictable_rank3_count: u64,
    /// Classes up to GL(n, 2); computed only over F2 with n <= 4.
    pub simple_iso_classes: Option<Vec<IsoClass>>,
    pub caveat: String,
    /// Wall-clock time; excluded from `deterministic`.
    pub runtime_ms: Option<u64>,
}

impl CensusReport {
    pub fn deterministic(&self) -> CensusReport {
        let mut r = self.clone();
        r.spec.threads = 0;
        r.runtime_ms = None;
        r
    }
}

struct Survivor {
    index: u64,
    algebra: LieAlgebra,
}

#[derive(Default)]
struct Shard {
    scanned: u64,
    jacobi: u64,
    simples: Vec<Survivor>,
}

impl Shard {
    fn merge(mut self, mut other: Shard) -> Shard {
        self.scanned += other.scanned;
        self.jacobi += other.jacobi;
        self.simples.append(&mut other.simples);
        self
    }
}

fn tiny_shard(n: usize, range: std::ops::Range<u64>, table: impl Fn(u64) -> TinyTable) -> Shard {
    let mut s = Shard::default();
    for index in range {
        s.scanned += 1;
        let t = table(index);
        if !t.is_lie() {
            continue;
        }
        s.jacobi += 1;
        if t.is_simple() {
            s.simples.push(Survivor { index, algebra: t.to_algebra(format!("census{n}-{index}")) });
        }
    }
    s
}

/// The `index`-th sampled table: its own ChaCha8 stream under `seed`.
pub fn sample_constants(spec: &CensusSpec, seed: u64, index: u64) -> Vec<u16> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let q = 1u32 << spec.field_degree;
    (0..pair_count(spec.dim) * spec.dim).map(|_| rng.gen_range(0..q) as u16).collect()
}

fn general_algebra(field: Field, n: usize, constants: &[u16], name: String) -> LieAlgebra {
    let mut entries = Vec::new();
    let mut p = 0;
    for i in 0..n {
        for j in i + 1..n {
            let v: Vec<Fe> = constants[p * n..(p + 1) * n].iter().map(|&c| Fe(c)).collect();
            if v.iter().any(|c| !c.is_zero()) {
                entries.push((i, j, v));
            }
            p += 1;
        }
    }
    LieAlgebra::from_table(name, field, n, &entries).expect("constants lie in the field")
}

fn jacobi_on_basis(g: &LieAlgebra) -> bool {
    let n = g.dim();
    let f = g.field();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (ei, ej, ek) = (f.unit_vec(n, i), f.unit_vec(n, j), f.unit_vec(n, k));
                let a = g.bracket(&ei, &g.basis_bracket(j, k)).expect("dims match");
                let b = g.bracket(&ej, &g.basis_bracket(k, i)).expect("dims match");
                let c = g.bracket(&ek, &g.basis_bracket(i, j)).expect("dims match");
                if a.iter().zip(&b).zip(&c).any(|((x, y), z)| !(*x + *y + *z).is_zero()) {
                    return false;
                }
            }
        }
    }
    true
}

fn general_shard(
    spec: &CensusSpec,
    field: Field,
    seed: u64,
    range: std::ops::Range<u64>,
) -> Result<Shard, CensusError> {
    let mut s = Shard::default();
    for index in range {
        s.scanned += 1;
        let g = general_algebra(
            field,
            spec.dim,
            &sample_constants(spec, seed, index),
            format!("sample{}-{index}", spec.dim),
        );
        if !jacobi_on_basis(&g) {
            continue;
        }
        s.jacobi += 1;
        if is_simple(&g)?.simple {
            s.simples.push(Survivor { index, algebra: g });
        }
    }
    Ok(s)
}

fn shards(total: u64) -> Vec<std::ops::Range<u64>> {
    (0..total.div_ceil(SHARD)).map(|k| k * SHARD..((k + 1) * SHARD).min(total)).collect()
}

fn scan(spec: &CensusSpec, field: Field) -> Result<Shard, CensusError> {
    let n = spec.dim;
    let parts: Vec<Shard> = match spec.sample {
        None => {
            let total = 1u64 << spec.constant_bits();
            shards(total).into_par_iter().map(|r| tiny_shard(n, r, |i| TinyTable::from_code(n, i))).collect()
        }
        Some(Sampling { count, seed }) if spec.field_degree == 1 => shards(count)
            .into_par_iter()
            .map(|r| {
                tiny_shard(n, r, |i| {
                    let c = sample_constants(spec, seed, i);
                    let pairs: Vec<u8> = c
                        .chunks(n)
                        .map(|ch| ch.iter().enumerate().fold(0u8, |m, (k, &b)| m | (b as u8) << k))
                        .collect();
                    TinyTable::from_pairs(n, &pairs)
                })
            })
            .collect(),
        Some(Sampling { count, seed }) => {
            shards(count).into_par_iter().map(|r| general_shard(spec, field, seed, r)).collect::<Result<Vec<_>, _>>()?
        }
    };
    Ok(parts.into_iter().fold(Shard::default(), Shard::merge))
}

fn terms(g: &LieAlgebra) -> Vec<(usize, usize, Vec<(usize, u16)>)> {
    g.nonzero_products()
        .into_iter()
        .map(|(i, j, v)| {
            (i, j, v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.bits())).collect())
        })
        .collect()
}

struct Classified {
    restrictable: bool,
    rank_lb: Option<usize>,
}

fn classify(g: &LieAlgebra) -> Result<Classified, CensusError> {
    let report = is_simple(g)?;
    if !report.simple || report.witness.is_some() {
        return Err(CensusError::Internal(format!("{} counted simple but is_simple disagrees", g.name())));
    }
    let Some(s) = synthesize_two_map(g)?.result else {
        return Ok(Classified { restrictable: false, rank_lb: None });
    };
    if !validate_restricted(g, &s.two_map)?.is_valid() {
        return Err(CensusError::Internal(format!("{}: synthesized 2-map fails validation", g.name())));
    }
    let ra = RestrictedAlgebra::new_unchecked(g.clone(), s.two_map)?;
    let rank = max_tori_and_rank(&ra, DEFAULT_ELEMENT_BUDGET, DEFAULT_NODE_BUDGET)?;
    Ok(Classified { restrictable: true, rank_lb: Some(rank.rank_lb) })
}

fn run(spec: &CensusSpec, field: Field) -> Result<CensusReport, CensusError> {
    let start = Instant::now();
    let shard = scan(spec, field)?;
    let iso_ok = field.degree() == 1 && spec.dim <= MAX_ISO_DIM;
    let mut classes: Vec<(IsoClass, LieAlgebra)> = Vec::new();
    let (mut restrictable, mut rank3) = (0u64, 0u64);
    for s in &shard.simples {
        let c = classify(&s.algebra)?;
        if c.restrictable {
            restrictable += 1;
            rank3 += u64::from(c.rank_lb.is_some_and(|r| r >= 3));
        }
        if !iso_ok {
            continue;
        }
        let mut found = false;
        for (class, rep) in classes.iter_mut() {
            if iso_match(&s.algebra, rep)?.is_some() {
                if class.restrictable != c.restrictable {
                    return Err(CensusError::Internal(format!(
                        "{} and {} are isomorphic but differ in restrictability",
                        s.algebra.name(),
                        rep.name()
                    )));
                }
                class.members += 1;
                found = true;
                break;
            }
        }
        if !found {
            classes.push((
                IsoClass {
                    representative: s.index,
                    bracket: terms(&s.algebra),
                    members: 1,
                    restrictable: c.restrictable,
                    toral_rank_lb: c.rank_lb,
                },
                s.algebra.clone(),
            ));
        }
    }
    let exhaustive = spec.sample.is_none();
    let scope = if exhaustive { "exhaustive over all bracket tables" } else { "sampled; counts are not exhaustive" };
    Ok(CensusReport {
        spec: *spec,
        exhaustive,
        candidates_scanned: shard.scanned,
        jacobi_pass: shard.jacobi,
        simple_count: shard.simples.len() as u64,
        restrictable_simple_count: restrictable,
        restrictable_rank3_count: rank3,
        simple_iso_classes: iso_ok.then(|| classes.into_iter().map(|(c, _)| c).collect()),
        caveat: format!("{scope}; {RANK_CAVEAT}"),
        runtime_ms: Some(start.elapsed().as_millis() as u64),
    })
}

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T, CensusError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CensusError::InvalidSpec(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

/// Exhaustive census; per-table work is independent and shards are merged
/// in index order, so the report does not depend on the thread count.
pub fn run_census(spec: &CensusSpec) -> Result<CensusReport, CensusError> {
    if spec.sample.is_some() {
        return sample_census(spec);
    }
    let field = spec.validate()?;
    in_pool(spec.threads, || run(spec, field))?
}

/// Sampled census: table i is drawn from stream i of ChaCha8 keyed by the
/// seed, so any range of indices can be replayed independently.
pub fn sample_census(spec: &CensusSpec) -> Result<CensusReport, CensusError> {
    if spec.sample.is_none() {
        return Err(CensusError::InvalidSpec("sampling needs a sample count and seed".into()));
    }
    let field = spec.validate()?;
    in_pool(spec.threads, || run(spec, field))?
}
