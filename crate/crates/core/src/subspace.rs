//! Subspaces of K^n kept in canonical RREF form.

use crate::field::{is_zero_vec, Fe, Field};
use crate::matrix::{LinAlgError, Mat};

/// A subspace of `field^ambient`. The basis is the RREF of any spanning set
/// with zero rows dropped, so equal subspaces compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Mat,
    pivots: Vec<usize>,
}

/// Result of combining two subspaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceOps {
    pub sum: Subspace,
    pub intersection: Subspace,
    /// Whether the first operand contains the second.
    pub contains: bool,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace { ambient, basis: Mat::zeros(field, 0, ambient), pivots: Vec::new() }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        Subspace::from_mat(&Mat::identity(field, ambient))
    }

    /// Row space of `m`.
    pub fn from_mat(m: &Mat) -> Subspace {
        let (r, pivots) = m.rref_with_pivots();
        let rows: Vec<Vec<Fe>> = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        let basis = Mat::from_rows(m.field(), m.cols(), &rows).expect("rows of equal length");
        Subspace { ambient: m.cols(), basis, pivots }
    }

    pub fn span(field: Field, ambient: usize, vectors: &[Vec<Fe>]) -> Result<Subspace, LinAlgError> {
        Ok(Subspace::from_mat(&Mat::from_rows(field, ambient, vectors)?))
    }

    /// The span of coordinate vectors e_i for the listed indices.
    pub fn coordinate(field: Field, ambient: usize, indices: &[usize]) -> Subspace {
        let vs: Vec<Vec<Fe>> = indices.iter().map(|&i| field.unit_vec(ambient, i)).collect();
        Subspace::span(field, ambient, &vs).expect("unit vectors have the ambient length")
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Fe>> {
        self.basis.row_vecs()
    }

    fn check_len(&self, v: &[Fe]) -> Result<(), LinAlgError> {
        if v.len() != self.ambient {
            return Err(LinAlgError::DimensionMismatch { expected: self.ambient, got: v.len() });
        }
        Ok(())
    }

    fn check_compatible(&self, other: &Subspace) -> Result<(), LinAlgError> {
        if self.field() != other.field() {
            return Err(LinAlgError::FieldMismatch);
        }
        if self.ambient != other.ambient {
            return Err(LinAlgError::DimensionMismatch { expected: self.ambient, got: other.ambient });
        }
        Ok(())
    }

    /// Reduces `v` against the basis. Returns the residual (zero iff `v` is
    /// in the subspace) and the coordinates that were subtracted.
    pub fn reduce(&self, v: &[Fe]) -> Result<(Vec<Fe>, Vec<Fe>), LinAlgError> {
        self.check_len(v)?;
        let f = self.field();
        let mut r = v.to_vec();
        let mut coords = f.zero_vec(self.dim());
        for (i, &p) in self.pivots.iter().enumerate() {
            let a = r[p];
            if !a.is_zero() {
                coords[i] = a;
                f.axpy(a, self.basis.row(i), &mut r);
            }
        }
        Ok((r, coords))
    }

    pub fn contains_vector(&self, v: &[Fe]) -> Result<bool, LinAlgError> {
        Ok(is_zero_vec(&self.reduce(v)?.0))
    }

    /// Coordinates of `v` in the RREF basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Fe]) -> Result<Option<Vec<Fe>>, LinAlgError> {
        let (r, c) = self.reduce(v)?;
        Ok(is_zero_vec(&r).then_some(c))
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool, LinAlgError> {
        self.check_compatible(other)?;
        for i in 0..other.dim() {
            if !self.contains_vector(other.basis.row(i))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinAlgError> {
        self.check_compatible(other)?;
        Ok(Subspace::from_mat(&self.basis.vstack(&other.basis)?))
    }

    /// Zassenhaus: rref [[U, U], [V, 0]]; rows with zero left half span U ∩ V.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace, LinAlgError> {
        self.check_compatible(other)?;
        let n = self.ambient;
        let f = self.field();
        let mut m = Mat::zeros(f, self.dim() + other.dim(), 2 * n);
        for i in 0..self.dim() {
            let row = self.basis.row(i).to_vec();
            m.row_mut(i)[..n].copy_from_slice(&row);
            m.row_mut(i)[n..].copy_from_slice(&row);
        }
        for i in 0..other.dim() {
            let row = other.basis.row(i).to_vec();
            m.row_mut(self.dim() + i)[..n].copy_from_slice(&row);
        }
        let (r, pivots) = m.rref_with_pivots();
        let rows: Vec<Vec<Fe>> =
            pivots.iter().enumerate().filter(|(_, &p)| p >= n).map(|(i, _)| r.row(i)[n..].to_vec()).collect();
        Subspace::span(f, n, &rows)
    }

    pub fn ops(&self, other: &Subspace) -> Result<SubspaceOps, LinAlgError> {
        Ok(SubspaceOps {
            sum: self.sum(other)?,
            intersection: self.intersection(other)?,
            contains: self.contains(other)?,
        })
    }

    /// Adds one vector; returns whether the dimension grew.
    pub fn extend(&mut self, v: &[Fe]) -> Result<bool, LinAlgError> {
        if self.contains_vector(v)? {
            return Ok(false);
        }
        let one = Mat::from_rows(self.field(), self.ambient, &[v.to_vec()])?;
        *self = Subspace::from_mat(&self.basis.vstack(&one)?);
        Ok(true)
    }

    /// Number of elements, if it fits in `u64`.
    pub fn cardinality(&self) -> Option<u64> {
        (self.field().order() as u64).checked_pow(self.dim() as u32)
    }

    /// Linear combination of the basis with the given coefficients.
    pub fn combine(&self, coords: &[Fe]) -> Vec<Fe> {
        let f = self.field();
        let mut v = f.zero_vec(self.ambient);
        for (i, &c) in coords.iter().enumerate() {
            f.axpy(c, self.basis.row(i), &mut v);
        }
        v
    }

    /// Every element, in the order of the coordinate counter
    /// (first basis coefficient varies fastest).
    pub fn elements(&self) -> impl Iterator<Item = Vec<Fe>> + '_ {
        let q = self.field().order() as u64;
        let d = self.dim();
        let total = self.cardinality().unwrap_or(u64::MAX);
        (0..total).map(move |mut idx| {
            let mut coords = Vec::with_capacity(d);
            for _ in 0..d {
                coords.push(Fe((idx % q) as u16));
                idx /= q;
            }
            self.combine(&coords)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Field {
        Field::f2()
    }

    fn v(bits: &[u16]) -> Vec<Fe> {
        bits.iter().map(|&b| Fe(b)).collect()
    }

    #[test]
    fn coordinate_lines() {
        let u = Subspace::span(f2(), 3, &[v(&[1, 0, 0])]).unwrap();
        let w = Subspace::span(f2(), 3, &[v(&[0, 1, 0])]).unwrap();
        let ops = u.ops(&w).unwrap();
        assert_eq!(ops.sum.dim(), 2);
        assert_eq!(ops.intersection.dim(), 0);
        assert!(!ops.contains);
    }

    #[test]
    fn sum_of_two_contains_third() {
        let u = Subspace::span(f2(), 3, &[v(&[1, 1, 0]), v(&[0, 1, 1])]).unwrap();
        let w = Subspace::span(f2(), 3, &[v(&[1, 0, 1])]).unwrap();
        assert!(u.ops(&w).unwrap().contains);
    }

    #[test]
    fn self_ops_are_idempotent() {
        let f = Field::new(2).unwrap();
        let u = Subspace::span(f, 4, &[v(&[1, 2, 0, 3]), v(&[0, 1, 1, 1])]).unwrap();
        let ops = u.ops(&u).unwrap();
        assert_eq!(ops.sum, u);
        assert_eq!(ops.intersection, u);
        assert!(ops.contains);
    }

    #[test]
    fn canonical_equality() {
        let a = Subspace::span(f2(), 3, &[v(&[1, 1, 0]), v(&[0, 1, 1])]).unwrap();
        let b = Subspace::span(f2(), 3, &[v(&[1, 0, 1]), v(&[1, 1, 0]), v(&[0, 1, 1])]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn ambient_mismatch_rejected() {
        let a = Subspace::zero(f2(), 3);
        let b = Subspace::zero(f2(), 4);
        assert!(a.sum(&b).is_err());
        assert!(a.intersection(&b).is_err());
        assert!(a.contains(&b).is_err());
    }

    #[test]
    fn dimension_formula_over_gf8() {
        let f = Field::new(3).unwrap();
        let u = Subspace::span(f, 4, &[v(&[1, 2, 3, 4]), v(&[0, 1, 5, 7])]).unwrap();
        let w = Subspace::span(f, 4, &[v(&[1, 3, 6, 3]), v(&[0, 0, 1, 1])]).unwrap();
        let ops = u.ops(&w).unwrap();
        assert_eq!(ops.sum.dim() + ops.intersection.dim(), u.dim() + w.dim());
        assert!(u.contains(&ops.intersection).unwrap());
        assert!(w.contains(&ops.intersection).unwrap());
    }

    #[test]
    fn enumerates_elements() {
        let f = Field::new(2).unwrap();
        let u = Subspace::span(f, 3, &[v(&[1, 0, 1]), v(&[0, 1, 0])]).unwrap();
        let all: std::collections::BTreeSet<Vec<Fe>> = u.elements().collect();
        assert_eq!(all.len(), 16);
        assert!(all.iter().all(|x| u.contains_vector(x).unwrap()));
    }
}
