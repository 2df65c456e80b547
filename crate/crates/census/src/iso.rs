//! Isomorphism testing by sweeping GL(n, 2), n <= 4.

use lie2_core::field::{vec_from_bits, Field};
use lie2_core::{LieAlgebra, Mat};

use crate::tiny::{mask_of, TinyTable};
use crate::CensusError;

pub const MAX_ISO_DIM: usize = 4;

/// Every invertible n x n matrix over F2, as lists of column masks.
pub fn gl_columns(n: usize) -> Vec<Vec<u8>> {
    fn extend(n: usize, cols: &mut Vec<u8>, span: &mut Vec<bool>, out: &mut Vec<Vec<u8>>) {
        if cols.len() == n {
            out.push(cols.clone());
            return;
        }
        for v in 1..1u16 << n {
            let v = v as u8;
            if span[v as usize] {
                continue;
            }
            let before = span.clone();
            for w in 0..1usize << n {
                if before[w] {
                    span[w ^ v as usize] = true;
                }
            }
            cols.push(v);
            extend(n, cols, span, out);
            cols.pop();
            *span = before;
        }
    }
    let mut span = vec![false; 1 << n];
    span[0] = true;
    let mut out = Vec::new();
    extend(n, &mut Vec::new(), &mut span, &mut out);
    out
}

fn tiny(g: &LieAlgebra) -> Result<TinyTable, CensusError> {
    if g.dim() > MAX_ISO_DIM {
        return Err(CensusError::DimensionTooLarge { dim: g.dim(), max: MAX_ISO_DIM });
    }
    TinyTable::from_algebra(g).ok_or(CensusError::NotOverF2(g.field()))
}

/// A matrix φ (columns are the images of a's basis in b) with
/// φ[x, y]_a = [φx, φy]_b, re-verified with the general bracket.
pub fn iso_match(a: &LieAlgebra, b: &LieAlgebra) -> Result<Option<Mat>, CensusError> {
    let (ta, tb) = (tiny(a)?, tiny(b)?);
    if ta.dim() != tb.dim() {
        return Ok(None);
    }
    let n = ta.dim();
    if ta.derived_rank() != tb.derived_rank() || ta.center_dim() != tb.center_dim() || ta.is_simple() != tb.is_simple()
    {
        return Ok(None);
    }
    for phi in gl_columns(n) {
        if ta.satisfies_map(&tb, &phi) {
            let f = Field::f2();
            let cols: Vec<_> =
                phi.iter().map(|&m| vec_from_bits(&(0..n).map(|k| (m >> k & 1) as u16).collect::<Vec<_>>())).collect();
            let m = Mat::from_cols(f, n, &cols).map_err(lie2_core::liealg::LieError::from)?;
            verify_witness(a, b, &m)?;
            return Ok(Some(m));
        }
    }
    Ok(None)
}

fn verify_witness(a: &LieAlgebra, b: &LieAlgebra, m: &Mat) -> Result<(), CensusError> {
    let n = a.dim();
    let f = a.field();
    let map = |v: &[lie2_core::Fe]| m.mul_vec(v).map_err(lie2_core::liealg::LieError::from);
    for i in 0..n {
        for j in i + 1..n {
            let lhs = map(&a.basis_bracket(i, j))?;
            let rhs = b.bracket(&m.col(i), &m.col(j))?;
            if lhs != rhs {
                return Err(CensusError::Internal(format!(
                    "witness fails on pair ({i}, {j}): {:#04x} vs {:#04x}",
                    mask_of(&lhs),
                    mask_of(&rhs)
                )));
            }
        }
    }
    if m.rank() != n {
        return Err(CensusError::Internal(format!("witness over {f} is singular")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_orders() {
        assert_eq!(gl_columns(1).len(), 1);
        assert_eq!(gl_columns(2).len(), 6);
        assert_eq!(gl_columns(3).len(), 168);
        assert_eq!(gl_columns(4).len(), 20160);
    }
}
