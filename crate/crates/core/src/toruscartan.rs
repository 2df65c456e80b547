//! Tori, toral rank lower bounds, and weight decompositions relative to a torus.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{is_zero_vec, vec_add, vec_bits, Fe, Field};
use crate::liealg::{centralizer, LieError};
use crate::matrix::{solve, BitMat, LinAlgError, Mat};
use crate::restricted::{jcs_decompose, ElementClass, RestrictedAlgebra, RestrictedError};
use crate::subspace::Subspace;

/// Default cap on brute-force candidate counts.
pub const DEFAULT_ELEMENT_BUDGET: u64 = 1 << 20;
/// Default node budget for the exhaustive torus search.
pub const DEFAULT_NODE_BUDGET: u64 = 200_000;
/// Per-space cap on the elements swept by audit D.
pub const AUDIT_ELEMENT_BUDGET: u64 = 1 << 16;

pub const RANK_CAVEAT: &str = "toral rank is a lower bound over the given finite field; \
maximality over the algebraic closure is not certified";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TorusError {
    #[error(transparent)]
    Restricted(#[from] RestrictedError),
    #[error("{candidates} candidates exceed the budget of {budget}")]
    BudgetExceeded { candidates: u64, budget: u64 },
    #[error("brute force needs F2 or GF(4), got {0}")]
    FieldTooLarge(Field),
    #[error("subspace is not closed under the bracket and the 2-map")]
    NotTwoMapClosed,
    #[error("subspace is not a torus")]
    NotATorus,
    #[error("torus has no basis of toral elements over this field")]
    NoToralBasis,
    #[error("h = t + nil fails at element {element:?}: {reason}")]
    SplitFailed { element: Vec<u16>, reason: String },
    #[error("weight spaces have total dimension {total}, expected {expected}")]
    NotSimultaneouslyDiagonalizable { total: usize, expected: usize },
    #[error("decomposition invariant fails: {0}")]
    InvariantViolation(String),
}

impl From<LieError> for TorusError {
    fn from(e: LieError) -> Self {
        TorusError::Restricted(e.into())
    }
}

impl From<LinAlgError> for TorusError {
    fn from(e: LinAlgError) -> Self {
        TorusError::Restricted(e.into())
    }
}

/// A torus with, when one exists over the field, a basis of toral elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Torus {
    pub subspace: Subspace,
    pub toral_basis: Option<Vec<Vec<Fe>>>,
}

impl Torus {
    pub fn rank(&self) -> usize {
        self.subspace.dim()
    }

    pub fn zero(field: Field, n: usize) -> Torus {
        Torus { subspace: Subspace::zero(field, n), toral_basis: Some(Vec::new()) }
    }
}

fn count_vectors(field: Field, n: usize) -> Option<u64> {
    (field.order() as u64).checked_pow(n as u32)
}

/// Every x with x^[2] = x, including 0, in counter order.
pub fn toral_elements(ra: &RestrictedAlgebra, budget: u64) -> Result<Vec<Vec<Fe>>, TorusError> {
    let f = ra.field();
    if f.degree() > 2 {
        return Err(TorusError::FieldTooLarge(f));
    }
    let n = ra.dim();
    let total = count_vectors(f, n).unwrap_or(u64::MAX);
    if total > budget {
        return Err(TorusError::BudgetExceeded { candidates: total, budget });
    }
    let q = f.order() as u64;
    let mut out = Vec::new();
    for idx in 0..total {
        let mut x = Vec::with_capacity(n);
        let mut r = idx;
        for _ in 0..n {
            x.push(Fe((r % q) as u16));
            r /= q;
        }
        if ra.eval(&x)? == x {
            out.push(x);
        }
    }
    Ok(out)
}

/// Bits of `c` in F2-coordinates (k bits per K-coordinate).
fn unfold(field: Field, c: &[Fe]) -> Vec<bool> {
    let k = field.degree() as usize;
    c.iter().flat_map(|x| (0..k).map(move |b| x.bits() >> b & 1 == 1)).collect()
}

fn fold(field: Field, bits: &[bool]) -> Vec<Fe> {
    let k = field.degree() as usize;
    bits.chunks(k).map(|ch| Fe(ch.iter().enumerate().fold(0u16, |a, (i, &b)| a | (b as u16) << i))).collect()
}

/// F2-basis of the fixpoints of squaring on an abelian, 2-map closed `s`.
/// Squaring is additive there, hence F2-linear in unfolded coordinates.
fn fixpoint_basis(ra: &RestrictedAlgebra, s: &Subspace) -> Result<Vec<Vec<Fe>>, TorusError> {
    let f = ra.field();
    let d = s.dim();
    let k = f.degree() as usize;
    let m = d * k;
    // column (i, b) = coordinates of S(w e_i) + w e_i, where w = x^b
    let mut a = BitMat::zeros(m, m);
    for i in 0..d {
        for b in 0..k {
            let mut c = f.zero_vec(d);
            c[i] = Fe(1 << b);
            let x = s.combine(&c);
            let y = vec_add(&ra.eval(&x)?, &x);
            let cy = s.coordinates(&y)?.ok_or(TorusError::NotTwoMapClosed)?;
            for (r, bit) in unfold(f, &cy).into_iter().enumerate() {
                a.set(r, i * k + b, bit);
            }
        }
    }
    let kernel = a.to_mat().kernel();
    Ok(kernel.iter().map(|kv| s.combine(&fold(f, &kv.iter().map(|x| !x.is_zero()).collect::<Vec<bool>>()))).collect())
}

/// Greedy K-independent subset, in order.
fn independent_subset(field: Field, n: usize, vs: &[Vec<Fe>]) -> Result<Vec<Vec<Fe>>, TorusError> {
    let mut span = Subspace::zero(field, n);
    let mut out = Vec::new();
    for v in vs {
        if span.extend(v)? {
            out.push(v.clone());
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusCheck {
    pub is_torus: bool,
    pub torus: Option<Torus>,
}

/// Abelian with injective squaring. Requires `s` closed under bracket and 2-map.
pub fn is_torus(ra: &RestrictedAlgebra, s: &Subspace) -> Result<TorusCheck, TorusError> {
    let f = ra.field();
    let basis = s.basis_vectors();
    let mut abelian = true;
    for (i, u) in basis.iter().enumerate() {
        if !s.contains_vector(&ra.eval(u)?)? {
            return Err(TorusError::NotTwoMapClosed);
        }
        for v in &basis[i + 1..] {
            let w = ra.bracket(u, v)?;
            if !s.contains_vector(&w)? {
                return Err(TorusError::NotTwoMapClosed);
            }
            abelian &= is_zero_vec(&w);
        }
    }
    let no = TorusCheck { is_torus: false, torus: None };
    if !abelian {
        return Ok(no);
    }
    // On an abelian s, c -> Σ c_i² S(b_i) is injective iff the S(b_i) are independent.
    let squares: Vec<Vec<Fe>> = basis.iter().map(|b| ra.eval(b)).collect::<Result<_, _>>()?;
    if Mat::from_rows(f, s.ambient(), &squares)?.rank() < s.dim() {
        return Ok(no);
    }
    let fix = fixpoint_basis(ra, s)?;
    let chosen = independent_subset(f, s.ambient(), &fix)?;
    let toral_basis = (chosen.len() == s.dim()).then_some(chosen);
    Ok(TorusCheck { is_torus: true, torus: Some(Torus { subspace: s.clone(), toral_basis }) })
}

/// Torus spanned by commuting toral elements.
pub fn torus_from_toral(ra: &RestrictedAlgebra, elems: &[Vec<Fe>]) -> Result<Torus, TorusError> {
    let basis = independent_subset(ra.field(), ra.dim(), elems)?;
    let s = Subspace::span(ra.field(), ra.dim(), &basis)?;
    let check = is_torus(ra, &s)?;
    if !check.is_torus {
        return Err(TorusError::NotATorus);
    }
    Ok(Torus { subspace: s, toral_basis: Some(basis) })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    Exhaustive,
    GreedyFallback,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankReport {
    pub rank_lb: usize,
    pub witness: Torus,
    pub mode: SearchMode,
    pub nodes: u64,
    pub toral_count: usize,
    pub caveat: &'static str,
}

struct Search<'a> {
    ra: &'a RestrictedAlgebra,
    nodes: u64,
    budget: u64,
    best: Vec<Vec<Fe>>,
    ceiling: usize,
}

impl Search<'_> {
    /// `cands` all commute with `chosen` and lie outside its span.
    fn dfs(&mut self, chosen: &mut Vec<Vec<Fe>>, span: &Subspace, cands: &[Vec<Fe>]) -> Result<bool, TorusError> {
        self.nodes += 1;
        if chosen.len() > self.best.len() {
            self.best = chosen.clone();
        }
        if self.best.len() == self.ceiling {
            return Ok(true);
        }
        if self.nodes >= self.budget {
            return Ok(false);
        }
        let reach = Subspace::span(self.ra.field(), self.ra.dim(), cands)?.dim();
        if chosen.len() + reach <= self.best.len() {
            return Ok(true);
        }
        for (i, c) in cands.iter().enumerate() {
            let mut next_span = span.clone();
            next_span.extend(c)?;
            let mut next = Vec::new();
            for d in &cands[i + 1..] {
                if !next_span.contains_vector(d)? && is_zero_vec(&self.ra.bracket(c, d)?) {
                    next.push(d.clone());
                }
            }
            chosen.push(c.clone());
            let done = self.dfs(chosen, &next_span, &next)?;
            chosen.pop();
            if !done {
                return Ok(false);
            }
            if self.best.len() == self.ceiling {
                return Ok(true);
            }
        }
        Ok(true)
    }
}

fn greedy(ra: &RestrictedAlgebra, toral: &[Vec<Fe>], start: usize) -> Result<Vec<Vec<Fe>>, TorusError> {
    let mut chosen: Vec<Vec<Fe>> = Vec::new();
    let mut span = Subspace::zero(ra.field(), ra.dim());
    for k in 0..toral.len() {
        let t = &toral[(start + k) % toral.len()];
        if span.contains_vector(t)? {
            continue;
        }
        let mut ok = true;
        for c in &chosen {
            if !is_zero_vec(&ra.bracket(c, t)?) {
                ok = false;
                break;
            }
        }
        if ok {
            span.extend(t)?;
            chosen.push(t.clone());
        }
    }
    Ok(chosen)
}

const GREEDY_RESTARTS: usize = 64;

/// Largest torus spanned by commuting toral elements that the search finds.
pub fn max_tori_and_rank(
    ra: &RestrictedAlgebra,
    element_budget: u64,
    node_budget: u64,
) -> Result<RankReport, TorusError> {
    let toral: Vec<Vec<Fe>> = toral_elements(ra, element_budget)?.into_iter().filter(|t| !is_zero_vec(t)).collect();
    let ceiling = Subspace::span(ra.field(), ra.dim(), &toral)?.dim();
    let mut s = Search { ra, nodes: 0, budget: node_budget, best: Vec::new(), ceiling };
    let complete = s.dfs(&mut Vec::new(), &Subspace::zero(ra.field(), ra.dim()), &toral)?;
    let (mut best, mode) = (s.best, if complete { SearchMode::Exhaustive } else { SearchMode::GreedyFallback });
    if !complete {
        let step = (toral.len() / GREEDY_RESTARTS).max(1);
        for r in 0..GREEDY_RESTARTS.min(toral.len()) {
            let g = greedy(ra, &toral, r * step)?;
            if g.len() > best.len() {
                best = g;
            }
        }
    }
    let witness = torus_from_toral(ra, &best)?;
    Ok(RankReport {
        rank_lb: witness.rank(),
        witness,
        mode,
        nodes: s.nodes,
        toral_count: toral.len(),
        caveat: RANK_CAVEAT,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanSplit {
    pub h: Subspace,
    pub nil: Subspace,
}

const NILPOTENCY_SWEEP: u64 = 1 << 12;

/// h = c_g(t) and its 2-nilpotent complement, built from JCS parts of an h-basis.
pub fn cartan_split(ra: &RestrictedAlgebra, t: &Torus) -> Result<CartanSplit, TorusError> {
    let f = ra.field();
    let n = ra.dim();
    if !is_torus(ra, &t.subspace)?.is_torus {
        return Err(TorusError::NotATorus);
    }
    let h = centralizer(ra.algebra(), &t.subspace)?;
    let mut nil_parts = Vec::new();
    for b in h.basis_vectors() {
        let p = jcs_decompose(ra, &b)?;
        if !t.subspace.contains_vector(&p.semisimple)? {
            return Err(TorusError::SplitFailed {
                element: vec_bits(&b),
                reason: "semisimple part lies outside the torus".into(),
            });
        }
        nil_parts.push(p.nilpotent);
    }
    let nil = Subspace::span(f, n, &nil_parts)?;
    let split_err = |v: &[Fe], reason: &str| TorusError::SplitFailed { element: vec_bits(v), reason: reason.into() };
    if !t.subspace.intersection(&nil)?.is_zero() || t.subspace.sum(&nil)? != h {
        return Err(split_err(&f.zero_vec(n), "h is not the direct sum of t and nil"));
    }
    if !ra.algebra().is_subalgebra(&nil)? {
        return Err(split_err(&f.zero_vec(n), "nil is not a subalgebra"));
    }
    let exhaustive = nil.cardinality().is_some_and(|c| c <= NILPOTENCY_SWEEP);
    let sample: Vec<Vec<Fe>> = if exhaustive { nil.elements().collect() } else { nil.basis_vectors() };
    for v in sample {
        if !is_zero_vec(&v) && ra.classify(&v)? != ElementClass::TwoNilpotent {
            return Err(split_err(&v, "element of nil is not 2-nilpotent"));
        }
    }
    Ok(CartanSplit { h, nil })
}

/// A weight: bit i is its value on the i-th toral basis vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Root(pub u32);

impl Root {
    pub fn value(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn add(self, other: Root) -> Root {
        Root(self.0 ^ other.0)
    }

    /// λ(Σ c_i t_i) = Σ c_i λ(t_i).
    pub fn eval(self, coords: &[Fe]) -> Fe {
        coords.iter().enumerate().filter(|(i, _)| self.value(*i)).fold(Fe::ZERO, |a, (_, &c)| a + c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanDecomposition {
    pub torus: Torus,
    pub toral_basis: Vec<Vec<Fe>>,
    pub h: Subspace,
    pub nil: Subspace,
    /// Nonzero roots with nonzero weight spaces.
    pub weights: BTreeMap<Root, Subspace>,
}

impl CartanDecomposition {
    pub fn rank(&self) -> usize {
        self.toral_basis.len()
    }

    /// g_λ, with g_0 read as h.
    pub fn space(&self, root: Root) -> Subspace {
        if root.0 == 0 {
            return self.h.clone();
        }
        self.weights.get(&root).cloned().unwrap_or_else(|| Subspace::zero(self.h.field(), self.h.ambient()))
    }

    /// Splits an element of h as (coordinates in the toral basis, nil part).
    pub fn split_h(&self, v: &[Fe]) -> Result<Option<(Vec<Fe>, Vec<Fe>)>, TorusError> {
        let f = self.h.field();
        let mut cols = self.toral_basis.clone();
        cols.extend(self.nil.basis_vectors());
        let m = Mat::from_cols(f, self.h.ambient(), &cols)?;
        let Some(c) = solve(&m, v)? else { return Ok(None) };
        let r = self.rank();
        let mut nil_part = f.zero_vec(self.h.ambient());
        for (k, coef) in c[r..].iter().enumerate() {
            f.axpy(*coef, &cols[r + k], &mut nil_part);
        }
        Ok(Some((c[..r].to_vec(), nil_part)))
    }

    pub fn report(&self) -> DecompositionReport {
        let bits = |s: &Subspace| s.basis_vectors().iter().map(|v| vec_bits(v)).collect();
        DecompositionReport {
            rank: self.rank(),
            torus_basis: self.toral_basis.iter().map(|v| vec_bits(v)).collect(),
            h: bits(&self.h),
            nil: bits(&self.nil),
            roots: self
                .weights
                .iter()
                .map(|(r, s)| RootSpace { root_bits: r.0, dim: s.dim(), basis: bits(s) })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSpace {
    pub root_bits: u32,
    pub dim: usize,
    pub basis: Vec<Vec<u16>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub rank: usize,
    pub torus_basis: Vec<Vec<u16>>,
    pub h: Vec<Vec<u16>>,
    pub nil: Vec<Vec<u16>>,
    pub roots: Vec<RootSpace>,
}

fn shifted_kernel(ra: &RestrictedAlgebra, t: &[Fe], shift: bool) -> Result<Subspace, TorusError> {
    let mut a = ra.algebra().ad_matrix(t)?;
    if shift {
        a = a.add(&Mat::identity(ra.field(), ra.dim()))?;
    }
    Ok(Subspace::span(ra.field(), ra.dim(), &a.kernel())?)
}

/// Simultaneous eigenspaces of ad(t_i) with eigenvalues in {0, 1}.
pub fn weight_decompose(ra: &RestrictedAlgebra, t: &Torus) -> Result<CartanDecomposition, TorusError> {
    let f = ra.field();
    let n = ra.dim();
    let toral_basis = t.toral_basis.clone().ok_or(TorusError::NoToralBasis)?;
    let mut spaces: Vec<(Root, Subspace)> = vec![(Root(0), Subspace::full(f, n))];
    for (i, ti) in toral_basis.iter().enumerate() {
        let k0 = shifted_kernel(ra, ti, false)?;
        let k1 = shifted_kernel(ra, ti, true)?;
        let mut next = Vec::new();
        for (r, s) in spaces {
            let a = s.intersection(&k0)?;
            let b = s.intersection(&k1)?;
            if !a.is_zero() {
                next.push((r, a));
            }
            if !b.is_zero() {
                next.push((Root(r.0 | 1 << i), b));
            }
        }
        spaces = next;
    }
    let total: usize = spaces.iter().map(|(_, s)| s.dim()).sum();
    if total != n {
        return Err(TorusError::NotSimultaneouslyDiagonalizable { total, expected: n });
    }
    let split = cartan_split(ra, t)?;
    let mut weights = BTreeMap::new();
    for (r, s) in spaces {
        if r.0 == 0 {
            if s != split.h {
                return Err(TorusError::InvariantViolation("zero weight space differs from c_g(t)".into()));
            }
        } else {
            weights.insert(r, s);
        }
    }
    let cd = CartanDecomposition { torus: t.clone(), toral_basis, h: split.h, nil: split.nil, weights };
    check_decomposition(ra, &cd)?;
    Ok(cd)
}

fn check_decomposition(ra: &RestrictedAlgebra, cd: &CartanDecomposition) -> Result<(), TorusError> {
    let mut all = cd.h.clone();
    for s in cd.weights.values() {
        all = all.sum(s)?;
    }
    if !all.is_full() {
        return Err(TorusError::InvariantViolation("weight spaces do not span g".into()));
    }
    let mut roots = vec![Root(0)];
    roots.extend(cd.weights.keys().copied());
    for &l in &roots {
        for &m in &roots {
            if m < l {
                continue;
            }
            let target = cd.space(l.add(m));
            let prod = ra.algebra().bracket_spaces(&cd.space(l), &cd.space(m))?;
            if !target.contains(&prod)? {
                return Err(TorusError::InvariantViolation(format!(
                    "[g_{}, g_{}] is not inside g_{}",
                    l.0,
                    m.0,
                    l.add(m).0
                )));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubAudit {
    pub pass: bool,
    pub checked: usize,
    /// False when a sweep was cut to a basis by the element budget.
    pub exhaustive: bool,
    pub witnesses: Vec<String>,
}

impl SubAudit {
    fn new() -> SubAudit {
        SubAudit { pass: true, checked: 0, exhaustive: true, witnesses: Vec::new() }
    }

    fn fail(&mut self, w: String) {
        self.pass = false;
        self.witnesses.push(w);
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    /// Eigenvalues of ad(t_i) on weight spaces lie in F2.
    pub a_eigenvalues: SubAudit,
    /// [nil, g_ξ] = 0 when dim g_ξ = 1.
    pub b_nil_kills_lines: SubAudit,
    /// ξ vanishes on the toral part of [g_ξ, g_ξ].
    pub c_self_bracket: SubAudit,
    /// For e in g_ξ with e^[2] = t + n, t != 0, and η(t) = 1:
    /// ad(e) is injective between g_η and g_{η+ξ} in both directions.
    pub d_square_transfer: SubAudit,
}

impl AuditReport {
    pub fn all_pass(&self) -> bool {
        self.a_eigenvalues.pass
            && self.b_nil_kills_lines.pass
            && self.c_self_bracket.pass
            && self.d_square_transfer.pass
    }
}

fn fmt_vec(v: &[Fe]) -> String {
    format!("{:?}", vec_bits(v))
}

fn injective_on(ra: &RestrictedAlgebra, e: &[Fe], s: &Subspace) -> Result<bool, TorusError> {
    let images: Vec<Vec<Fe>> = s.basis_vectors().iter().map(|v| ra.bracket(e, v)).collect::<Result<_, _>>()?;
    Ok(Mat::from_rows(ra.field(), ra.dim(), &images)?.rank() == s.dim())
}

pub fn audit_decomposition(ra: &RestrictedAlgebra, cd: &CartanDecomposition) -> Result<AuditReport, TorusError> {
    let f = ra.field();
    let r = cd.rank();
    let mut a = SubAudit::new();
    for (&root, s) in std::iter::once((&Root(0), &cd.h)).chain(cd.weights.iter()) {
        for v in s.basis_vectors() {
            for (i, ti) in cd.toral_basis.iter().enumerate() {
                a.checked += 1;
                let w = ra.bracket(ti, &v)?;
                let expect = if root.value(i) { v.clone() } else { f.zero_vec(ra.dim()) };
                if w != expect {
                    a.fail(format!("root {} t{} v {}", root.0, i + 1, fmt_vec(&v)));
                }
            }
        }
    }

    let mut b = SubAudit::new();
    for (&root, s) in &cd.weights {
        if s.dim() != 1 {
            continue;
        }
        b.checked += 1;
        let prod = ra.algebra().bracket_spaces(&cd.nil, s)?;
        if !prod.is_zero() {
            b.fail(format!("root {}", root.0));
        }
    }

    let mut c = SubAudit::new();
    for (&root, s) in &cd.weights {
        let basis = s.basis_vectors();
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                c.checked += 1;
                let w = ra.bracket(&basis[i], &basis[j])?;
                match cd.split_h(&w)? {
                    None => c.fail(format!("root {} pair ({i}, {j}) bracket leaves h", root.0)),
                    Some((tc, _)) => {
                        if !root.eval(&tc).is_zero() {
                            c.fail(format!("root {} pair ({i}, {j}) toral part {:?}", root.0, vec_bits(&tc)));
                        }
                    }
                }
            }
        }
    }

    let mut d = SubAudit::new();
    let all_roots: Vec<Root> = (1..1u32 << r).map(Root).collect();
    for (&xi, s) in &cd.weights {
        let elems: Vec<Vec<Fe>> = if s.cardinality().is_some_and(|c| c <= AUDIT_ELEMENT_BUDGET) {
            s.elements().filter(|v| !is_zero_vec(v)).collect()
        } else {
            d.exhaustive = false;
            s.basis_vectors()
        };
        for e in elems {
            let sq = ra.eval(&e)?;
            let Some((tc, _)) = cd.split_h(&sq)? else {
                d.fail(format!("root {} e {} square leaves h", xi.0, fmt_vec(&e)));
                continue;
            };
            if is_zero_vec(&tc) {
                continue;
            }
            for &eta in &all_roots {
                if eta.eval(&tc) != Fe::ONE {
                    continue;
                }
                d.checked += 1;
                let (ge, gx) = (cd.space(eta), cd.space(eta.add(xi)));
                let ok = ge.dim() == gx.dim() && injective_on(ra, &e, &ge)? && injective_on(ra, &e, &gx)?;
                if !ok {
                    d.fail(format!("root {} e {} eta {}: dims {} vs {}", xi.0, fmt_vec(&e), eta.0, ge.dim(), gx.dim()));
                }
            }
        }
    }
    Ok(AuditReport { a_eigenvalues: a, b_nil_kills_lines: b, c_self_bracket: c, d_square_transfer: d })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::fixture_f2;
    use crate::field::vec_from_bits;

    fn ra(name: &str) -> RestrictedAlgebra {
        fixture_f2(name).unwrap().restricted().unwrap().unwrap()
    }

    #[test]
    fn gl2_toral_elements() {
        let g = ra("gl2");
        let t = toral_elements(&g, DEFAULT_ELEMENT_BUDGET).unwrap();
        // basis order e11, e12, e21, e22
        let expected: Vec<Vec<Fe>> = [
            [0, 0, 0, 0],
            [1, 0, 0, 0],
            [1, 1, 0, 0],
            [1, 0, 1, 0],
            [0, 0, 0, 1],
            [1, 0, 0, 1],
            [0, 1, 0, 1],
            [0, 0, 1, 1],
        ]
        .iter()
        .map(|b| vec_from_bits(b))
        .collect();
        let mut got = t.clone();
        got.sort();
        let mut want = expected;
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn gl2_rank_and_torus() {
        let g = ra("gl2");
        let r = max_tori_and_rank(&g, DEFAULT_ELEMENT_BUDGET, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(r.rank_lb, 2);
        assert_eq!(r.mode, SearchMode::Exhaustive);
        let diag = Subspace::coordinate(g.field(), 4, &[0, 3]);
        let c = is_torus(&g, &diag).unwrap();
        assert!(c.is_torus);
        assert_eq!(c.torus.unwrap().toral_basis.unwrap().len(), 2);
        let e12 = Subspace::coordinate(g.field(), 4, &[1]);
        assert!(!is_torus(&g, &e12).unwrap().is_torus);
        let zero = Subspace::zero(g.field(), 4);
        assert!(is_torus(&g, &zero).unwrap().is_torus);
    }

    #[test]
    fn not_closed_is_an_error() {
        let g = ra("gl2");
        let s = Subspace::coordinate(g.field(), 4, &[1, 2]);
        assert_eq!(is_torus(&g, &s), Err(TorusError::NotTwoMapClosed));
    }

    #[test]
    fn gl2_weights() {
        let g = ra("gl2");
        let t = torus_from_toral(&g, &[vec_from_bits(&[1, 0, 0, 0]), vec_from_bits(&[0, 0, 0, 1])]).unwrap();
        let cd = weight_decompose(&g, &t).unwrap();
        assert_eq!(cd.h.dim(), 2);
        assert!(cd.nil.is_zero());
        assert_eq!(cd.weights.len(), 1);
        let (root, space) = cd.weights.iter().next().unwrap();
        assert_eq!(*root, Root(0b11));
        assert_eq!(*space, Subspace::coordinate(g.field(), 4, &[1, 2]));
        assert!(audit_decomposition(&g, &cd).unwrap().all_pass());
    }

    #[test]
    fn heisenberg_everything_nilpotent() {
        let g = ra("heis3");
        let cd = weight_decompose(&g, &Torus::zero(g.field(), 3)).unwrap();
        assert!(cd.h.is_full());
        assert!(cd.nil.is_full());
        assert!(cd.weights.is_empty());
    }

    #[test]
    fn identity_map_torus_is_everything() {
        let f = Field::f2();
        let g = RestrictedAlgebra::new(
            crate::liealg::LieAlgebra::zero("ab", f, 3),
            crate::restricted::TwoMap::identity(f, 3),
        )
        .unwrap();
        let r = max_tori_and_rank(&g, DEFAULT_ELEMENT_BUDGET, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(r.rank_lb, 3);
        let split = cartan_split(&g, &r.witness).unwrap();
        assert!(split.nil.is_zero());
    }

    #[test]
    fn field_without_rational_toral_basis() {
        // F4 inside M2(F2): span{I, J} with J² = J + I.
        let f = Field::f2();
        let g = crate::liealg::LieAlgebra::zero("f4", f, 2);
        let tm = crate::restricted::TwoMap { images: vec![vec_from_bits(&[1, 0]), vec_from_bits(&[1, 1])] };
        let g = RestrictedAlgebra::new(g, tm).unwrap();
        let c = is_torus(&g, &Subspace::full(f, 2)).unwrap();
        assert!(c.is_torus);
        assert_eq!(c.torus.unwrap().toral_basis, None);
    }
}
