//! Lie algebras over GF(2^k) given by structure constants.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{is_zero_vec, vec_bits, Fe, Field, FieldError};
use crate::matrix::{LinAlgError, Mat};
use crate::subspace::Subspace;

/// Default cap on the number of projective points swept by [`is_simple`].
pub const DEFAULT_SIMPLICITY_BUDGET: u64 = 1 << 20;

const RANDOM_SAMPLES: usize = 64;
const VALIDATION_SEED: u64 = 0x6c69_6532;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("bracket entry ({i}, {j}) must satisfy i < j < {dim}")]
    BadIndexPair { i: usize, j: usize, dim: usize },
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("duplicate entry for ({i}, {j})")]
    DuplicateEntry { i: usize, j: usize },
    #[error("subspace is not closed under the bracket")]
    NotASubalgebra,
    #[error("{points} projective points exceed the budget of {budget}")]
    IntractableDimension { points: u64, budget: u64 },
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
}

/// A Lie algebra with basis e_0..e_{n-1}. Only products [e_i, e_j] with
/// i < j are stored; the rest follow from alternation and char 2 symmetry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    name: String,
    field: Field,
    dim: usize,
    /// Indexed by `pair_index(i, j)`.
    table: Vec<Vec<Fe>>,
    labels: Option<Vec<String>>,
}

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

impl LieAlgebra {
    /// The abelian algebra of dimension `dim`.
    pub fn zero(name: impl Into<String>, field: Field, dim: usize) -> LieAlgebra {
        let pairs = dim * dim.saturating_sub(1) / 2;
        LieAlgebra { name: name.into(), field, dim, table: vec![vec![Fe::ZERO; dim]; pairs], labels: None }
    }

    /// Builds an algebra from entries `(i, j, [e_i, e_j])` with i < j.
    /// Missing pairs bracket to zero.
    pub fn from_table(
        name: impl Into<String>,
        field: Field,
        dim: usize,
        entries: &[(usize, usize, Vec<Fe>)],
    ) -> Result<LieAlgebra, LieError> {
        let mut g = LieAlgebra::zero(name, field, dim);
        let mut seen = vec![false; g.table.len()];
        for (i, j, v) in entries {
            let (i, j) = (*i, *j);
            if i >= j || j >= dim {
                return Err(LieError::BadIndexPair { i, j, dim });
            }
            if v.len() != dim {
                return Err(LinAlgError::DimensionMismatch { expected: dim, got: v.len() }.into());
            }
            field.check_vec(v)?;
            let p = pair_index(dim, i, j);
            if seen[p] {
                return Err(LieError::DuplicateEntry { i, j });
            }
            seen[p] = true;
            g.table[p] = v.clone();
        }
        Ok(g)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<LieAlgebra, LieError> {
        if labels.len() != self.dim {
            return Err(LieError::LabelCount { expected: self.dim, got: labels.len() });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Label of basis vector `i`, falling back to `e{i}`.
    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => format!("e{i}"),
        }
    }

    /// [e_i, e_j] for arbitrary indices.
    pub fn basis_bracket(&self, i: usize, j: usize) -> Vec<Fe> {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => self.field.zero_vec(self.dim),
            std::cmp::Ordering::Less => self.table[pair_index(self.dim, i, j)].clone(),
            std::cmp::Ordering::Greater => self.table[pair_index(self.dim, j, i)].clone(),
        }
    }

    fn stored(&self, i: usize, j: usize) -> &[Fe] {
        &self.table[pair_index(self.dim, i, j)]
    }

    /// Nonzero stored products, in (i, j) order.
    pub fn nonzero_products(&self) -> Vec<(usize, usize, &[Fe])> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let v = self.stored(i, j);
                if !is_zero_vec(v) {
                    out.push((i, j, v));
                }
            }
        }
        out
    }

    pub fn check_vec(&self, v: &[Fe]) -> Result<(), LieError> {
        if v.len() != self.dim {
            return Err(LinAlgError::DimensionMismatch { expected: self.dim, got: v.len() }.into());
        }
        Ok(())
    }

    pub fn bracket(&self, x: &[Fe], y: &[Fe]) -> Result<Vec<Fe>, LieError> {
        self.check_vec(x)?;
        self.check_vec(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &[Fe], y: &[Fe]) -> Vec<Fe> {
        let f = self.field;
        let mut out = f.zero_vec(self.dim);
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                // [x, y] picks up x_i y_j + x_j y_i on the (i, j) product.
                let c = f.mul(x[i], y[j]) + f.mul(x[j], y[i]);
                if !c.is_zero() {
                    f.axpy(c, self.stored(i, j), &mut out);
                }
            }
        }
        out
    }

    /// Matrix of ad(x); column j is [x, e_j].
    pub fn ad_matrix(&self, x: &[Fe]) -> Result<Mat, LieError> {
        self.check_vec(x)?;
        let n = self.dim;
        let f = self.field;
        let mut m = Mat::zeros(f, n, n);
        for j in 0..n {
            for i in 0..n {
                if i == j || x[i].is_zero() {
                    continue;
                }
                let (a, b) = if i < j { (i, j) } else { (j, i) };
                let col = self.stored(a, b);
                for (k, &c) in col.iter().enumerate() {
                    if !c.is_zero() {
                        let cur = m.get(k, j);
                        m.set(k, j, cur + f.mul(x[i], c));
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn ad_basis(&self, i: usize) -> Mat {
        self.ad_matrix(&self.field.unit_vec(self.dim, i)).expect("unit vector has length n")
    }

    fn random_vec(&self, rng: &mut ChaCha8Rng) -> Vec<Fe> {
        let q = self.field.order();
        (0..self.dim).map(|_| Fe(rng.gen_range(0..q) as u16)).collect()
    }

    /// Span of [a, b] over basis pairs of `a` and `b`.
    pub fn bracket_spaces(&self, a: &Subspace, b: &Subspace) -> Result<Subspace, LieError> {
        let mut brackets = Vec::new();
        for x in a.basis_vectors() {
            for y in b.basis_vectors() {
                let z = self.bracket(&x, &y)?;
                if !is_zero_vec(&z) {
                    brackets.push(z);
                }
            }
        }
        Ok(Subspace::span(self.field, self.dim, &brackets)?)
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> Result<bool, LieError> {
        Ok(s.contains(&self.bracket_spaces(s, s)?)?)
    }

    pub fn full_space(&self) -> Subspace {
        Subspace::full(self.field, self.dim)
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(|v| is_zero_vec(v))
    }
}

/// One failed check in a [`ValidationReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Failure {
    /// Jacobi residual on basis vectors (i, j, k).
    Jacobi { i: usize, j: usize, k: usize, residual: Vec<u16> },
    /// [x, x] != 0 on a random vector.
    Alternating { sample: Vec<u16> },
    /// ad(e_i^[2]) != ad(e_i)^2.
    AdSquareBasis { index: usize },
    /// ad(x^[2]) != ad(x)^2 on a random vector.
    AdSquareRandom { sample: Vec<u16> },
    /// No candidate image can satisfy the ad condition for e_i.
    NoTwoMapImage { index: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub checks: usize,
    pub failures: Vec<Failure>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Jacobi on every basis triple, plus alternation on random vectors.
pub fn validate_lie(g: &LieAlgebra) -> ValidationReport {
    let n = g.dim();
    let f = g.field();
    let mut report = ValidationReport::default();
    let unit = |i| f.unit_vec(n, i);
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (ei, ej, ek) = (unit(i), unit(j), unit(k));
                let a = g.bracket_unchecked(&ei, &g.basis_bracket(j, k));
                let b = g.bracket_unchecked(&ej, &g.basis_bracket(k, i));
                let c = g.bracket_unchecked(&ek, &g.basis_bracket(i, j));
                let mut r = a;
                crate::field::vec_add_assign(&mut r, &b);
                crate::field::vec_add_assign(&mut r, &c);
                report.checks += 1;
                if !is_zero_vec(&r) {
                    report.failures.push(Failure::Jacobi { i, j, k, residual: vec_bits(&r) });
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(VALIDATION_SEED);
    for _ in 0..RANDOM_SAMPLES {
        let x = g.random_vec(&mut rng);
        report.checks += 1;
        if !is_zero_vec(&g.bracket_unchecked(&x, &x)) {
            report.failures.push(Failure::Alternating { sample: vec_bits(&x) });
        }
    }
    report
}

pub(crate) fn random_samples(g: &LieAlgebra) -> Vec<Vec<Fe>> {
    let mut rng = ChaCha8Rng::seed_from_u64(VALIDATION_SEED ^ 0x5eed);
    (0..RANDOM_SAMPLES).map(|_| g.random_vec(&mut rng)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesKind {
    Derived,
    LowerCentral,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesReport {
    pub kind: SeriesKind,
    /// s = chain[0] ⊋ chain[1] ⊋ ... until the dimension stops dropping.
    pub chain: Vec<Subspace>,
    pub terminates_at_zero: bool,
}

impl SeriesReport {
    pub fn dims(&self) -> Vec<usize> {
        self.chain.iter().map(Subspace::dim).collect()
    }
}

fn series(g: &LieAlgebra, s: &Subspace, kind: SeriesKind) -> Result<SeriesReport, LieError> {
    if !g.is_subalgebra(s)? {
        return Err(LieError::NotASubalgebra);
    }
    let mut chain = vec![s.clone()];
    loop {
        let last = chain.last().expect("nonempty");
        if last.is_zero() {
            break;
        }
        let next = match kind {
            SeriesKind::Derived => g.bracket_spaces(last, last)?,
            SeriesKind::LowerCentral => g.bracket_spaces(s, last)?,
        };
        if next.dim() == last.dim() {
            break;
        }
        chain.push(next);
    }
    let terminates_at_zero = chain.last().is_some_and(Subspace::is_zero);
    Ok(SeriesReport { kind, chain, terminates_at_zero })
}

pub fn derived_series(g: &LieAlgebra, s: &Subspace) -> Result<SeriesReport, LieError> {
    series(g, s, SeriesKind::Derived)
}

pub fn lower_central_series(g: &LieAlgebra, s: &Subspace) -> Result<SeriesReport, LieError> {
    series(g, s, SeriesKind::LowerCentral)
}

/// Smallest ideal containing `seed`.
pub fn ideal_closure(g: &LieAlgebra, seed: &Subspace) -> Result<Subspace, LieError> {
    let n = g.dim();
    let mut cur = seed.clone();
    let mut frontier = cur.basis_vectors();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for v in &frontier {
            for i in 0..n {
                let e = g.field().unit_vec(n, i);
                let w = g.bracket(&e, v)?;
                if cur.extend(&w)? {
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    Ok(cur)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NonSimpleReason {
    DimensionBelowTwo,
    Abelian,
    ProperIdeal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicityReport {
    pub simple: bool,
    pub reason: Option<NonSimpleReason>,
    /// A proper nonzero ideal of least dimension among the swept closures.
    pub witness: Option<Subspace>,
    pub points_checked: u64,
}

/// Number of 1-dimensional subspaces of K^n.
pub fn projective_point_count(field: Field, n: usize) -> Option<u64> {
    let q = field.order() as u64;
    let qn = q.checked_pow(n as u32)?;
    Some((qn - 1) / (q - 1))
}

/// Projective points of K^n in a fixed order: the last nonzero coordinate
/// is 1, and the index counts the rest in base q.
fn projective_points(field: Field, n: usize) -> impl Iterator<Item = Vec<Fe>> {
    let q = field.order() as u64;
    (0..n).flat_map(move |lead| {
        let count = q.pow(lead as u32);
        (0..count).map(move |mut idx| {
            let mut v = vec![Fe::ZERO; n];
            for c in v.iter_mut().take(lead) {
                *c = Fe((idx % q) as u16);
                idx /= q;
            }
            v[lead] = Fe::ONE;
            v
        })
    })
}

pub fn is_simple(g: &LieAlgebra) -> Result<SimplicityReport, LieError> {
    is_simple_with_budget(g, DEFAULT_SIMPLICITY_BUDGET)
}

pub fn is_simple_with_budget(g: &LieAlgebra, budget: u64) -> Result<SimplicityReport, LieError> {
    let n = g.dim();
    let not_simple = |reason, witness, points_checked| SimplicityReport {
        simple: false,
        reason: Some(reason),
        witness,
        points_checked,
    };
    if n < 2 {
        return Ok(not_simple(NonSimpleReason::DimensionBelowTwo, None, 0));
    }
    let points = projective_point_count(g.field(), n).unwrap_or(u64::MAX);
    if points > budget {
        return Err(LieError::IntractableDimension { points, budget });
    }
    let abelian = g.is_abelian();
    let mut best: Option<Subspace> = None;
    let mut checked = 0;
    for p in projective_points(g.field(), n) {
        checked += 1;
        let seed = Subspace::span(g.field(), n, &[p])?;
        let closure = ideal_closure(g, &seed)?;
        if !closure.is_full() && best.as_ref().is_none_or(|b| closure.dim() < b.dim()) {
            let minimal = closure.dim() == 1;
            best = Some(closure);
            if minimal {
                break;
            }
        }
    }
    if abelian {
        return Ok(not_simple(NonSimpleReason::Abelian, best, checked));
    }
    match best {
        Some(w) => Ok(not_simple(NonSimpleReason::ProperIdeal, Some(w), checked)),
        None => Ok(SimplicityReport { simple: true, reason: None, witness: None, points_checked: checked }),
    }
}

/// c_g(s): the common kernel of ad(b) over a basis of `s`.
pub fn centralizer(g: &LieAlgebra, s: &Subspace) -> Result<Subspace, LieError> {
    let n = g.dim();
    if s.ambient() != n {
        return Err(LinAlgError::DimensionMismatch { expected: n, got: s.ambient() }.into());
    }
    let mut stacked = Mat::zeros(g.field(), 0, n);
    for b in s.basis_vectors() {
        stacked = stacked.vstack(&g.ad_matrix(&b)?)?;
    }
    Ok(Subspace::span(g.field(), n, &stacked.kernel())?)
}

pub fn center(g: &LieAlgebra) -> Result<Subspace, LieError> {
    centralizer(g, &g.full_space())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::vec_from_bits;

    fn f2() -> Field {
        Field::f2()
    }

    fn e(n: usize, i: usize) -> Vec<Fe> {
        f2().unit_vec(n, i)
    }

    fn heis() -> LieAlgebra {
        LieAlgebra::from_table("heis3", f2(), 3, &[(0, 1, e(3, 2))]).unwrap()
    }

    #[test]
    fn pair_index_is_dense() {
        let n = 6;
        let mut seen = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                seen.push(pair_index(n, i, j));
            }
        }
        assert_eq!(seen, (0..15).collect::<Vec<_>>());
    }

    #[test]
    fn rejects_bad_entries() {
        assert!(LieAlgebra::from_table("x", f2(), 3, &[(1, 1, e(3, 0))]).is_err());
        assert!(LieAlgebra::from_table("x", f2(), 3, &[(2, 1, e(3, 0))]).is_err());
        assert!(LieAlgebra::from_table("x", f2(), 3, &[(0, 3, e(3, 0))]).is_err());
        assert!(LieAlgebra::from_table("x", f2(), 3, &[(0, 1, e(4, 0))]).is_err());
        assert!(LieAlgebra::from_table("x", f2(), 3, &[(0, 1, e(3, 0)), (0, 1, e(3, 1))]).is_err());
    }

    #[test]
    fn bracket_length_mismatch() {
        assert!(heis().bracket(&e(2, 0), &e(3, 1)).is_err());
    }

    #[test]
    fn heisenberg_ad_x() {
        let g = heis();
        let ad = g.ad_matrix(&e(3, 0)).unwrap();
        let nonzero: Vec<(usize, usize)> =
            (0..3).flat_map(|r| (0..3).map(move |c| (r, c))).filter(|&(r, c)| !ad.get(r, c).is_zero()).collect();
        assert_eq!(nonzero, vec![(2, 1)]);
        assert!(g.ad_matrix(&f2().zero_vec(3)).unwrap().is_zero());
    }

    #[test]
    fn jacobi_failure_is_reported() {
        // [e1,e2]=e1, [e2,e3]=e3.
        let g = LieAlgebra::from_table("t", f2(), 3, &[(0, 1, e(3, 0)), (1, 2, e(3, 2))]).unwrap();
        // [e1,[e2,e3]] + [e2,[e3,e1]] + [e3,[e1,e2]] = [e1,e3] + 0 + [e3,e1] = 0
        assert!(validate_lie(&g).is_valid());
        let bad = LieAlgebra::from_table("b", f2(), 3, &[(0, 1, e(3, 2)), (1, 2, e(3, 1))]).unwrap();
        // [e1,[e2,e3]] = [e1,e2] = e3; [e2,[e3,e1]] = 0; [e3,[e1,e2]] = 0.
        let r = validate_lie(&bad);
        assert_eq!(r.failures, vec![Failure::Jacobi { i: 0, j: 1, k: 2, residual: vec![0, 0, 1] }]);
    }

    #[test]
    fn series_of_heisenberg() {
        let g = heis();
        let d = derived_series(&g, &g.full_space()).unwrap();
        assert_eq!(d.dims(), vec![3, 1, 0]);
        assert!(d.terminates_at_zero);
        let l = lower_central_series(&g, &g.full_space()).unwrap();
        assert_eq!(l.dims(), vec![3, 1, 0]);
    }

    #[test]
    fn series_requires_subalgebra() {
        let g = heis();
        let s = Subspace::coordinate(f2(), 3, &[0, 1]);
        assert_eq!(derived_series(&g, &s), Err(LieError::NotASubalgebra));
    }

    #[test]
    fn heisenberg_center_and_simplicity() {
        let g = heis();
        let z = Subspace::coordinate(f2(), 3, &[2]);
        assert_eq!(center(&g).unwrap(), z);
        assert_eq!(ideal_closure(&g, &z).unwrap(), z);
        let r = is_simple(&g).unwrap();
        assert!(!r.simple);
        assert_eq!(r.witness, Some(z));
    }

    #[test]
    fn abelian_is_not_simple() {
        let g = LieAlgebra::zero("ab", f2(), 3);
        assert!(validate_lie(&g).is_valid());
        let seed = Subspace::span(f2(), 3, &[vec_from_bits(&[1, 1, 0])]).unwrap();
        assert_eq!(ideal_closure(&g, &seed).unwrap(), seed);
        assert_eq!(center(&g).unwrap(), g.full_space());
        let r = is_simple(&g).unwrap();
        assert_eq!(r.reason, Some(NonSimpleReason::Abelian));
        let one = LieAlgebra::zero("one", f2(), 1);
        assert_eq!(is_simple(&one).unwrap().reason, Some(NonSimpleReason::DimensionBelowTwo));
    }

    #[test]
    fn projective_points_cover_each_line_once() {
        let f = Field::new(2).unwrap();
        let pts: Vec<Vec<Fe>> = projective_points(f, 3).collect();
        assert_eq!(pts.len() as u64, projective_point_count(f, 3).unwrap());
        let lines: std::collections::BTreeSet<Vec<u16>> = pts
            .iter()
            .map(|p| {
                let s = Subspace::span(f, 3, &[p.clone()]).unwrap();
                vec_bits(s.basis().row(0))
            })
            .collect();
        assert_eq!(lines.len(), 21);
    }

    #[test]
    fn budget_is_enforced() {
        let g = LieAlgebra::zero("ab", f2(), 21);
        assert!(matches!(is_simple(&g), Err(LieError::IntractableDimension { .. })));
    }
}
