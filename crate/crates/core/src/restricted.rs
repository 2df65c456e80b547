//! 2-maps: evaluation, validation, synthesis and the Jordan-Chevalley-Seligman split.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{is_zero_vec, vec_add, vec_bits, Fe, Field};
use crate::liealg::{center, random_samples, validate_lie, Failure, LieAlgebra, LieError, ValidationReport};
use crate::matrix::{LinAlgError, Mat};
use crate::subspace::Subspace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RestrictedError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("not a Lie algebra: {} failed checks", .0.failures.len())]
    NotLie(ValidationReport),
    #[error("2-map axioms fail: {} failed checks", .0.failures.len())]
    InvalidTwoMap(ValidationReport),
    #[error("expected {expected} 2-map images, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

impl From<LinAlgError> for RestrictedError {
    fn from(e: LinAlgError) -> Self {
        RestrictedError::Lie(e.into())
    }
}

/// Images b[i] = e_i^[2] of the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoMap {
    pub images: Vec<Vec<Fe>>,
}

impl TwoMap {
    pub fn zero(field: Field, n: usize) -> TwoMap {
        TwoMap { images: vec![field.zero_vec(n); n] }
    }

    pub fn identity(field: Field, n: usize) -> TwoMap {
        TwoMap { images: (0..n).map(|i| field.unit_vec(n, i)).collect() }
    }
}

/// A Lie algebra together with a 2-map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedAlgebra {
    algebra: LieAlgebra,
    two_map: TwoMap,
}

fn check_images(g: &LieAlgebra, tm: &TwoMap) -> Result<(), RestrictedError> {
    if tm.images.len() != g.dim() {
        return Err(RestrictedError::ImageCount { expected: g.dim(), got: tm.images.len() });
    }
    for b in &tm.images {
        g.check_vec(b)?;
        g.field().check_vec(b).map_err(LieError::from)?;
    }
    Ok(())
}

impl RestrictedAlgebra {
    /// Validates the Lie axioms and the 2-map axioms.
    pub fn new(algebra: LieAlgebra, two_map: TwoMap) -> Result<RestrictedAlgebra, RestrictedError> {
        let lie = validate_lie(&algebra);
        if !lie.is_valid() {
            return Err(RestrictedError::NotLie(lie));
        }
        let report = validate_restricted(&algebra, &two_map)?;
        if !report.is_valid() {
            return Err(RestrictedError::InvalidTwoMap(report));
        }
        Ok(RestrictedAlgebra { algebra, two_map })
    }

    /// Skips validation. Used for fault injection.
    pub fn new_unchecked(algebra: LieAlgebra, two_map: TwoMap) -> Result<RestrictedAlgebra, RestrictedError> {
        check_images(&algebra, &two_map)?;
        Ok(RestrictedAlgebra { algebra, two_map })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn two_map(&self) -> &TwoMap {
        &self.two_map
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn bracket(&self, x: &[Fe], y: &[Fe]) -> Result<Vec<Fe>, LieError> {
        self.algebra.bracket(x, y)
    }

    /// x^[2] = Σ λ_i² b[i] + Σ_{i<j} λ_i λ_j [e_i, e_j].
    pub fn eval(&self, x: &[Fe]) -> Result<Vec<Fe>, LieError> {
        self.algebra.check_vec(x)?;
        Ok(eval_with(&self.algebra, &self.two_map, x))
    }

    pub fn two_power(&self, x: &[Fe], m: usize) -> Result<Vec<Fe>, LieError> {
        let mut y = x.to_vec();
        self.algebra.check_vec(&y)?;
        for _ in 0..m {
            y = eval_with(&self.algebra, &self.two_map, &y);
        }
        Ok(y)
    }

    pub fn classify(&self, x: &[Fe]) -> Result<ElementClass, LieError> {
        classify_element(self, x)
    }

    pub fn is_toral(&self, x: &[Fe]) -> Result<bool, LieError> {
        Ok(self.eval(x)? == x)
    }
}

fn eval_with(g: &LieAlgebra, tm: &TwoMap, x: &[Fe]) -> Vec<Fe> {
    let f = g.field();
    let n = g.dim();
    let mut out = f.zero_vec(n);
    for (i, &l) in x.iter().enumerate() {
        if !l.is_zero() {
            f.axpy(f.square(l), &tm.images[i], &mut out);
        }
    }
    for i in 0..n {
        if x[i].is_zero() {
            continue;
        }
        for j in i + 1..n {
            if x[j].is_zero() {
                continue;
            }
            f.axpy(f.mul(x[i], x[j]), &g.basis_bracket(i, j), &mut out);
        }
    }
    out
}

/// Checks ad(b[i]) = ad(e_i)² on the basis and ad(x^[2]) = ad(x)² on
/// pseudo-random vectors.
pub fn validate_restricted(g: &LieAlgebra, tm: &TwoMap) -> Result<ValidationReport, RestrictedError> {
    check_images(g, tm)?;
    let mut report = ValidationReport::default();
    for (i, b) in tm.images.iter().enumerate() {
        report.checks += 1;
        if g.ad_matrix(b)? != g.ad_basis(i).square() {
            report.failures.push(Failure::AdSquareBasis { index: i });
        }
    }
    for x in random_samples(g) {
        report.checks += 1;
        let lhs = g.ad_matrix(&eval_with(g, tm, &x))?;
        if lhs != g.ad_matrix(&x)?.square() {
            report.failures.push(Failure::AdSquareRandom { sample: vec_bits(&x) });
        }
    }
    Ok(report)
}

fn flatten(m: &Mat) -> Vec<Fe> {
    m.entries().to_vec()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Synthesis {
    pub two_map: TwoMap,
    /// True iff the center is zero, so no other 2-map exists.
    pub unique: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SynthesisReport {
    pub result: Option<Synthesis>,
    /// Basis indices with no y satisfying ad(y) = ad(e_i)².
    pub unsolvable: Vec<usize>,
}

/// Solves ad(y) = ad(e_i)² for each i. With a nonzero center the
/// lexicographically least solution is taken.
pub fn synthesize_two_map(g: &LieAlgebra) -> Result<SynthesisReport, RestrictedError> {
    let n = g.dim();
    let f = g.field();
    let ads: Vec<Vec<Fe>> = (0..n).map(|k| flatten(&g.ad_basis(k))).collect();
    let system = Mat::from_cols(f, n * n, &ads)?;
    let z = center(g)?;
    let mut images = Vec::with_capacity(n);
    let mut unsolvable = Vec::new();
    for i in 0..n {
        let target = flatten(&g.ad_basis(i).square());
        match crate::matrix::solve(&system, &target)? {
            Some(y) => images.push(z.reduce(&y)?.0),
            None => unsolvable.push(i),
        }
    }
    if !unsolvable.is_empty() {
        return Ok(SynthesisReport { result: None, unsolvable });
    }
    let two_map = TwoMap { images };
    debug_assert!(validate_restricted(g, &two_map)?.is_valid());
    Ok(SynthesisReport { result: Some(Synthesis { two_map, unique: z.is_zero() }), unsolvable })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ElementClass {
    Semisimple,
    TwoNilpotent,
    Mixed,
}

/// Zero counts as semisimple.
pub fn classify_element(ra: &RestrictedAlgebra, x: &[Fe]) -> Result<ElementClass, LieError> {
    ra.algebra.check_vec(x)?;
    if is_zero_vec(x) {
        return Ok(ElementClass::Semisimple);
    }
    let n = ra.dim();
    let mut y = x.to_vec();
    let mut span = Subspace::zero(ra.field(), n);
    for _ in 0..=n {
        y = ra.eval(&y)?;
        if is_zero_vec(&y) {
            return Ok(ElementClass::TwoNilpotent);
        }
        if !span.extend(&y)? {
            break;
        }
    }
    if span.contains_vector(x)? {
        Ok(ElementClass::Semisimple)
    } else {
        Ok(ElementClass::Mixed)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JcsParts {
    pub semisimple: Vec<Fe>,
    pub nilpotent: Vec<Fe>,
}

/// Splits x inside the abelian 2-subalgebra A spanned by its 2-powers.
/// With d = dim A, A = ker S^d ⊕ im S^d for the squaring map S; the image
/// component is the semisimple part.
pub fn jcs_decompose(ra: &RestrictedAlgebra, x: &[Fe]) -> Result<JcsParts, RestrictedError> {
    let f = ra.field();
    let n = ra.dim();
    ra.algebra.check_vec(x)?;
    let mut a = Subspace::zero(f, n);
    let mut y = x.to_vec();
    while a.extend(&y)? {
        y = ra.eval(&y)?;
    }
    let d = a.dim();
    let basis = a.basis_vectors();
    for (i, u) in basis.iter().enumerate() {
        for v in &basis[i + 1..] {
            if !is_zero_vec(&ra.bracket(u, v)?) {
                return Err(RestrictedError::InternalInconsistency("2-powers of an element fail to commute".into()));
            }
        }
    }
    // S^d is additive on A and σ^d-semilinear in the basis coordinates.
    let powered: Vec<Vec<Fe>> = basis.iter().map(|b| ra.two_power(b, d)).collect::<Result<_, _>>()?;
    let image = Subspace::span(f, n, &powered)?;
    let coords = Mat::from_cols(f, n, &powered)?;
    let kernel: Vec<Vec<Fe>> = coords
        .kernel()
        .into_iter()
        .map(|c| {
            let mut v = f.zero_vec(n);
            for (ci, b) in c.iter().zip(&basis) {
                let mut r = *ci;
                for _ in 0..d {
                    r = f.sqrt(r);
                }
                f.axpy(r, b, &mut v);
            }
            v
        })
        .collect();
    let nil_space = Subspace::span(f, n, &kernel)?;
    let mut cols = nil_space.basis_vectors();
    cols.extend(image.basis_vectors());
    let split = Mat::from_cols(f, n, &cols)?;
    let sol = crate::matrix::solve(&split, x)?
        .ok_or_else(|| RestrictedError::InternalInconsistency("x is not in ker S^d + im S^d".into()))?;
    let mut nilpotent = f.zero_vec(n);
    let mut semisimple = f.zero_vec(n);
    for (k, c) in sol.iter().enumerate() {
        if k < nil_space.dim() {
            f.axpy(*c, &cols[k], &mut nilpotent);
        } else {
            f.axpy(*c, &cols[k], &mut semisimple);
        }
    }
    let parts = JcsParts { semisimple, nilpotent };
    verify_jcs(ra, x, &parts)?;
    Ok(parts)
}

fn verify_jcs(ra: &RestrictedAlgebra, x: &[Fe], p: &JcsParts) -> Result<(), RestrictedError> {
    let fail = |what: &str| Err(RestrictedError::InternalInconsistency(format!("JCS check failed: {what}")));
    if vec_add(&p.semisimple, &p.nilpotent) != x {
        return fail("x != x_s + x_n");
    }
    if !is_zero_vec(&ra.bracket(&p.semisimple, &p.nilpotent)?) {
        return fail("[x_s, x_n] != 0");
    }
    if ra.classify(&p.semisimple)? != ElementClass::Semisimple {
        return fail("x_s is not semisimple");
    }
    if !is_zero_vec(&p.nilpotent) && ra.classify(&p.nilpotent)? != ElementClass::TwoNilpotent {
        return fail("x_n is not 2-nilpotent");
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::vec_from_bits;

    fn two_dim_nonabelian() -> LieAlgebra {
        // [a, b] = a
        LieAlgebra::from_table("w", Field::f2(), 2, &[(0, 1, vec_from_bits(&[1, 0]))]).unwrap()
    }

    #[test]
    fn abelian_zero_map_is_valid() {
        let g = LieAlgebra::zero("ab", Field::f2(), 3);
        let r = validate_restricted(&g, &TwoMap::zero(Field::f2(), 3)).unwrap();
        assert!(r.is_valid());
    }

    #[test]
    fn wrong_image_count_is_an_error() {
        let g = LieAlgebra::zero("ab", Field::f2(), 3);
        assert!(validate_restricted(&g, &TwoMap::zero(Field::f2(), 2)).is_err());
    }

    #[test]
    fn synthesizes_on_two_dim() {
        let g = two_dim_nonabelian();
        let s = synthesize_two_map(&g).unwrap().result.unwrap();
        assert!(s.unique);
        assert_eq!(s.two_map.images, vec![vec_from_bits(&[0, 0]), vec_from_bits(&[0, 1])]);
    }

    #[test]
    fn lex_least_with_center() {
        let g = LieAlgebra::zero("ab", Field::f2(), 2);
        let s = synthesize_two_map(&g).unwrap().result.unwrap();
        assert!(!s.unique);
        assert_eq!(s.two_map, TwoMap::zero(Field::f2(), 2));
    }

    #[test]
    fn identity_map_makes_everything_toral() {
        let ra =
            RestrictedAlgebra::new(LieAlgebra::zero("ab", Field::f2(), 3), TwoMap::identity(Field::f2(), 3)).unwrap();
        let x = vec_from_bits(&[1, 0, 1]);
        assert!(ra.is_toral(&x).unwrap());
        assert_eq!(ra.two_power(&x, 5).unwrap(), x);
        assert_eq!(ra.classify(&x).unwrap(), ElementClass::Semisimple);
        let p = jcs_decompose(&ra, &x).unwrap();
        assert_eq!(p.semisimple, x);
    }

    #[test]
    fn mixed_element_over_gf4() {
        // abelian, b[0] = e0, b[1] = 0: x = e0 + e1 splits as (e0, e1)
        let f = Field::new(2).unwrap();
        let tm = TwoMap { images: vec![f.unit_vec(2, 0), f.zero_vec(2)] };
        let ra = RestrictedAlgebra::new(LieAlgebra::zero("ab", f, 2), tm).unwrap();
        let w = Fe(2);
        let x = vec![w, Fe(3)];
        assert_eq!(ra.classify(&x).unwrap(), ElementClass::Mixed);
        let p = jcs_decompose(&ra, &x).unwrap();
        assert_eq!(p.semisimple, vec![w, Fe::ZERO]);
        assert_eq!(p.nilpotent, vec![Fe::ZERO, Fe(3)]);
    }
}
