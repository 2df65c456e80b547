//! Dense matrices over GF(2^k), with a bit-packed path for k = 1.

use std::fmt;

use thiserror::Error;

use crate::field::{Fe, Field};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("operands live over different fields")]
    FieldMismatch,
}

/// Row-major matrix over a field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl Mat {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Mat {
        Mat { field, rows, cols, data: vec![Fe::ZERO; rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Fe::ONE);
        }
        m
    }

    /// Builds a matrix from rows; every row must have `cols` entries.
    pub fn from_rows(field: Field, cols: usize, rows: &[Vec<Fe>]) -> Result<Mat, LinAlgError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(LinAlgError::DimensionMismatch { expected: cols, got: r.len() });
            }
            data.extend_from_slice(r);
        }
        Ok(Mat { field, rows: rows.len(), cols, data })
    }

    /// Same as [`Mat::from_rows`] but takes raw bit-encoded entries.
    pub fn from_bits(field: Field, rows: &[&[u16]]) -> Mat {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<Fe>> = rows.iter().map(|r| r.iter().map(|&b| Fe(b)).collect()).collect();
        Mat::from_rows(field, cols, &rows).expect("ragged rows")
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(field: Field, rows: usize, cols: &[Vec<Fe>]) -> Result<Mat, LinAlgError> {
        let mut m = Mat::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            if c.len() != rows {
                return Err(LinAlgError::DimensionMismatch { expected: rows, got: c.len() });
            }
            for (i, &v) in c.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Fe {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Fe) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Fe] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [Fe] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Fe>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn col(&self, c: usize) -> Vec<Fe> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn entries(&self) -> &[Fe] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn add(&self, other: &Mat) -> Result<Mat, LinAlgError> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| a + b).collect();
        Ok(Mat { field: self.field, rows: self.rows, cols: self.cols, data })
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat, LinAlgError> {
        if self.field != other.field {
            return Err(LinAlgError::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(LinAlgError::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        let f = self.field;
        let mut out = Mat::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let src = other.row(k).to_vec();
                f.axpy(a, &src, out.row_mut(i));
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Fe]) -> Result<Vec<Fe>, LinAlgError> {
        if v.len() != self.cols {
            return Err(LinAlgError::DimensionMismatch { expected: self.cols, got: v.len() });
        }
        let f = self.field;
        Ok((0..self.rows)
            .map(|r| self.row(r).iter().zip(v).fold(Fe::ZERO, |acc, (&a, &b)| acc + f.mul(a, b)))
            .collect())
    }

    pub fn square(&self) -> Mat {
        self.mul(self).expect("square matrix")
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Mat) -> Result<Mat, LinAlgError> {
        if self.cols != other.cols {
            return Err(LinAlgError::DimensionMismatch { expected: self.cols, got: other.cols });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Mat { field: self.field, rows: self.rows + other.rows, cols: self.cols, data })
    }

    fn same_shape(&self, other: &Mat) -> Result<(), LinAlgError> {
        if self.field != other.field {
            return Err(LinAlgError::FieldMismatch);
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinAlgError::DimensionMismatch {
                expected: self.rows * self.cols,
                got: other.rows * other.cols,
            });
        }
        Ok(())
    }

    /// Reduced row-echelon form (zero rows kept at the bottom) and the rank.
    pub fn rref(&self) -> (Mat, usize) {
        let (m, pivots) = self.rref_with_pivots();
        (m, pivots.len())
    }

    /// RREF together with the pivot column of each nonzero row.
    pub fn rref_with_pivots(&self) -> (Mat, Vec<usize>) {
        if self.field.is_prime() {
            let mut b = BitMat::from_mat(self);
            let pivots = b.rref();
            return (b.to_mat(), pivots);
        }
        let mut m = self.clone();
        let f = self.field;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = f.inv(m.get(r, c)).expect("nonzero pivot");
            let scaled = f.scale(inv, m.row(r));
            m.row_mut(r).copy_from_slice(&scaled);
            let pivot_row = m.row(r).to_vec();
            for i in 0..m.rows {
                if i != r {
                    let a = m.get(i, c);
                    if !a.is_zero() {
                        f.axpy(a, &pivot_row, m.row_mut(i));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Basis of the right null space {x : self * x = 0}.
    pub fn kernel(&self) -> Vec<Vec<Fe>> {
        let (r, pivots) = self.rref_with_pivots();
        let f = self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut x = f.zero_vec(self.cols);
                x[fc] = Fe::ONE;
                // char 2: x_pivot = -r[i][fc] = r[i][fc]
                for (i, &pc) in pivots.iter().enumerate() {
                    x[pc] = r.get(i, fc);
                }
                x
            })
            .collect()
    }
}

/// Solves `a * x = b`, returning one solution or `None` if inconsistent.
pub fn solve(a: &Mat, b: &[Fe]) -> Result<Option<Vec<Fe>>, LinAlgError> {
    if a.rows() != b.len() {
        return Err(LinAlgError::DimensionMismatch { expected: a.rows(), got: b.len() });
    }
    let f = a.field();
    let n = a.cols();
    let mut aug = Mat::zeros(f, a.rows(), n + 1);
    for r in 0..a.rows() {
        aug.row_mut(r)[..n].copy_from_slice(a.row(r));
        aug.set(r, n, b[r]);
    }
    let (red, pivots) = aug.rref_with_pivots();
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut x = f.zero_vec(n);
    for (i, &pc) in pivots.iter().enumerate() {
        x[pc] = red.get(i, n);
    }
    debug_assert_eq!(a.mul_vec(&x).unwrap(), b);
    Ok(Some(x))
}

/// Matrix over F2 with rows packed into 64-bit words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMat {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMat {
    pub fn zeros(rows: usize, cols: usize) -> BitMat {
        let words = cols.div_ceil(64).max(1);
        BitMat { rows, cols, words, data: vec![0; rows * words] }
    }

    pub fn from_mat(m: &Mat) -> BitMat {
        debug_assert!(m.field().is_prime());
        let mut b = BitMat::zeros(m.rows(), m.cols());
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                if m.get(r, c).0 & 1 == 1 {
                    b.set(r, c, true);
                }
            }
        }
        b
    }

    pub fn to_mat(&self) -> Mat {
        let mut m = Mat::zeros(Field::f2(), self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    m.set(r, c, Fe::ONE);
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        let w = &mut self.data[r * self.words + c / 64];
        if v {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        let w = self.words;
        for k in 0..w {
            let v = self.data[src * w + k];
            self.data[dst * w + k] ^= v;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            let w = self.words;
            for k in 0..w {
                self.data.swap(a * w + k, b * w + k);
            }
        }
    }

    /// In-place RREF; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c)) else {
                continue;
            };
            self.swap_rows(r, p);
            for i in 0..self.rows {
                if i != r && self.get(i, c) {
                    self.xor_row_into(r, i);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f2() -> Field {
        Field::f2()
    }

    #[test]
    fn equal_rows_rank_one() {
        let m = Mat::from_bits(f2(), &[&[1, 1], &[1, 1]]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn identity_is_fixed() {
        for f in [f2(), Field::new(3).unwrap()] {
            let id = Mat::identity(f, 3);
            let (r, rank) = id.rref();
            assert_eq!(r, id);
            assert_eq!(rank, 3);
        }
    }

    #[test]
    fn pairwise_sums_rank_two() {
        // t1+t2, t1+t3, t2+t3 sum to zero in characteristic 2
        let m = Mat::from_bits(f2(), &[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn delta_systems_have_no_solution() {
        // unknowns (d1, d2, d3); 1 + d1 + d2 = 0, d2 + d3 = 0, d1 + d3 = 0
        let a = Mat::from_bits(f2(), &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        assert_eq!(solve(&a, &[Fe(1), Fe(0), Fe(0)]).unwrap(), None);
        // 1 + d2 + d3 = 0, d1 + d2 = 0, d1 + d3 = 0
        let a = Mat::from_bits(f2(), &[&[0, 1, 1], &[1, 1, 0], &[1, 0, 1]]);
        assert_eq!(solve(&a, &[Fe(1), Fe(0), Fe(0)]).unwrap(), None);
        // no solution over GF(4) or GF(8) either
        for k in 2..=3 {
            let f = Field::new(k).unwrap();
            let a = Mat::from_bits(f, &[&[0, 1, 1], &[1, 1, 0], &[1, 0, 1]]);
            assert_eq!(solve(&a, &[Fe(1), Fe(0), Fe(0)]).unwrap(), None);
        }
    }

    #[test]
    fn identity_solve() {
        let f = Field::new(4).unwrap();
        let b = vec![Fe(3), Fe(9), Fe(0), Fe(15)];
        assert_eq!(solve(&Mat::identity(f, 4), &b).unwrap(), Some(b));
        assert!(matches!(solve(&Mat::identity(f, 4), &[Fe(1)]), Err(LinAlgError::DimensionMismatch { .. })));
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let f = Field::new(2).unwrap();
        let m = Mat::from_bits(f, &[&[1, 2, 3, 0], &[2, 1, 0, 1]]);
        let ker = m.kernel();
        assert_eq!(ker.len(), 2);
        for v in ker {
            assert!(m.mul_vec(&v).unwrap().iter().all(|a| a.is_zero()));
        }
    }

    fn random_mat(f: Field, rows: usize, cols: usize, seed: &[u16]) -> Mat {
        let mask = (f.order() - 1) as u16;
        let mut m = Mat::zeros(f, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, Fe(seed[(r * cols + c) % seed.len()] & mask));
            }
        }
        m
    }

    fn row_space_contains(big: &Mat, small: &Mat) -> bool {
        let r1 = big.rank();
        small.row_vecs().iter().all(|row| {
            let one = Mat::from_rows(big.field(), big.cols(), &[row.clone()]).unwrap();
            big.vstack(&one).unwrap().rank() == r1
        })
    }

    proptest! {
        #[test]
        fn rref_idempotent_and_row_space_preserved(
            k in 1u32..=4, rows in 1usize..6, cols in 1usize..7,
            seed in proptest::collection::vec(any::<u16>(), 1..48)
        ) {
            let f = Field::new(k).unwrap();
            let m = random_mat(f, rows, cols, &seed);
            let (r, rank) = m.rref();
            let (rr, rank2) = r.rref();
            prop_assert_eq!(&rr, &r);
            prop_assert_eq!(rank, rank2);
            prop_assert!(row_space_contains(&m, &r));
            prop_assert!(row_space_contains(&r, &m));
        }

        #[test]
        fn f2_rank_is_stable_under_extension(
            rows in 1usize..8, cols in 1usize..8,
            seed in proptest::collection::vec(any::<u16>(), 1..64)
        ) {
            let m = random_mat(Field::f2(), rows, cols, &seed);
            let rank = m.rank();
            for k in [2u32, 3] {
                let f = Field::new(k).unwrap();
                let lifted = Mat::from_rows(f, cols, &m.row_vecs()).unwrap();
                prop_assert_eq!(lifted.rank(), rank);
            }
        }

        #[test]
        fn bitmat_agrees_with_generic_elimination(
            rows in 1usize..10, cols in 1usize..80,
            seed in proptest::collection::vec(any::<u16>(), 1..64)
        ) {
            // generic path over GF(4) restricted to F2 entries must give the same RREF
            let m = random_mat(Field::f2(), rows, cols, &seed);
            let gf4 = Field::new(2).unwrap();
            let lifted = Mat::from_rows(gf4, cols, &m.row_vecs()).unwrap();
            let (a, pa) = m.rref_with_pivots();
            let (b, pb) = lifted.rref_with_pivots();
            prop_assert_eq!(pa, pb);
            prop_assert_eq!(a.row_vecs(), b.row_vecs());
        }
    }
}
