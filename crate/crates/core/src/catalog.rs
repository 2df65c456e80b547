//! Named fixture algebras, mostly realized inside gl_n by commutators.

use crate::field::{Fe, Field};
use crate::liealg::{validate_lie, LieAlgebra, LieError};
use crate::matrix::{solve, Mat};
use crate::restricted::{RestrictedAlgebra, RestrictedError, TwoMap};

/// Fixture names accepted by [`fixture`]. Parametrized ones take `(n)`.
pub const FIXTURE_NAMES: &[&str] =
    &["o3", "heis3", "sl2", "gl2", "gl3", "sl3", "w11_p2", "abelian(n)", "strictly_upper(n)"];

const MAX_PARAM: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixture {
    pub algebra: LieAlgebra,
    pub two_map: Option<TwoMap>,
}

impl Fixture {
    pub fn restricted(&self) -> Result<Option<RestrictedAlgebra>, RestrictedError> {
        match &self.two_map {
            Some(tm) => Ok(Some(RestrictedAlgebra::new(self.algebra.clone(), tm.clone())?)),
            None => Ok(None),
        }
    }
}

fn unit_matrix(field: Field, n: usize, i: usize, j: usize) -> Mat {
    let mut m = Mat::zeros(field, n, n);
    m.set(i, j, Fe::ONE);
    m
}

/// Structure constants of the matrix algebra spanned by `basis`, and the
/// matrix-squaring 2-map when every square stays in the span.
fn matrix_algebra(
    name: &str,
    field: Field,
    basis: &[Mat],
    labels: Vec<String>,
    with_squares: bool,
) -> Result<Fixture, LieError> {
    let n = basis.len();
    let flat: Vec<Vec<Fe>> = basis.iter().map(|m| m.entries().to_vec()).collect();
    let size = flat.first().map_or(0, Vec::len);
    let system = Mat::from_cols(field, size, &flat)?;
    let coords = |m: &Mat| solve(&system, m.entries());
    let mut entries = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let c = basis[i].mul(&basis[j])?.add(&basis[j].mul(&basis[i])?)?;
            let v = coords(&c)?.expect("matrix basis closed under commutator");
            entries.push((i, j, v));
        }
    }
    let algebra = LieAlgebra::from_table(name, field, n, &entries)?.with_labels(labels)?;
    let two_map = if with_squares {
        let images = basis
            .iter()
            .map(|b| Ok(coords(&b.square())?.expect("matrix basis closed under squaring")))
            .collect::<Result<Vec<_>, LieError>>()?;
        Some(TwoMap { images })
    } else {
        None
    };
    Ok(Fixture { algebra, two_map })
}

fn gl(field: Field, n: usize) -> Result<Fixture, LieError> {
    let mut basis = Vec::new();
    let mut labels = Vec::new();
    for i in 0..n {
        for j in 0..n {
            basis.push(unit_matrix(field, n, i, j));
            labels.push(format!("e{}{}", i + 1, j + 1));
        }
    }
    matrix_algebra(&format!("gl{n}"), field, &basis, labels, true)
}

fn strictly_upper(field: Field, n: usize) -> Result<Fixture, LieError> {
    let mut basis = Vec::new();
    let mut labels = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            basis.push(unit_matrix(field, n, i, j));
            labels.push(format!("e{}{}", i + 1, j + 1));
        }
    }
    matrix_algebra(&format!("strictly_upper({n})"), field, &basis, labels, true)
}

fn sum(a: &Mat, b: &Mat) -> Mat {
    a.add(b).expect("same shape")
}

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// Looks up a fixture by name over `field`.
pub fn fixture(name: &str, field: Field) -> Result<Fixture, LieError> {
    let u = |n, i, j| unit_matrix(field, n, i, j);
    let unknown = || LieError::UnknownFixture(name.to_string());
    let fx = match name {
        "o3" => {
            // symmetric matrices with zero diagonal
            let basis = [sum(&u(3, 0, 1), &u(3, 1, 0)), sum(&u(3, 0, 2), &u(3, 2, 0)), sum(&u(3, 1, 2), &u(3, 2, 1))];
            matrix_algebra("o3", field, &basis, labels(&["e1", "e2", "e3"]), false)?
        }
        "heis3" => {
            let basis = [u(3, 0, 1), u(3, 1, 2), u(3, 0, 2)];
            matrix_algebra("heis3", field, &basis, labels(&["x", "y", "z"]), true)?
        }
        "sl2" => {
            let basis = [u(2, 0, 1), u(2, 1, 0), sum(&u(2, 0, 0), &u(2, 1, 1))];
            matrix_algebra("sl2", field, &basis, labels(&["e", "f", "h"]), true)?
        }
        "gl2" => gl(field, 2)?,
        "gl3" => gl(field, 3)?,
        "sl3" => {
            let basis = [
                sum(&u(3, 0, 0), &u(3, 1, 1)),
                sum(&u(3, 1, 1), &u(3, 2, 2)),
                u(3, 0, 1),
                u(3, 0, 2),
                u(3, 1, 0),
                u(3, 1, 2),
                u(3, 2, 0),
                u(3, 2, 1),
            ];
            let names = ["h1", "h2", "e12", "e13", "e21", "e23", "e31", "e32"];
            matrix_algebra("sl3", field, &basis, labels(&names), true)?
        }
        "w11_p2" => {
            // [d, xd] = d
            let algebra = LieAlgebra::from_table("w11_p2", field, 2, &[(0, 1, field.unit_vec(2, 0))])?
                .with_labels(labels(&["d", "xd"]))?;
            Fixture { algebra, two_map: Some(TwoMap { images: vec![field.zero_vec(2), field.unit_vec(2, 1)] }) }
        }
        _ => {
            let (base, n) = parse_param(name).ok_or_else(unknown)?;
            match base {
                "abelian" => Fixture {
                    algebra: LieAlgebra::zero(format!("abelian({n})"), field, n),
                    two_map: Some(TwoMap::zero(field, n)),
                },
                "strictly_upper" => strictly_upper(field, n)?,
                _ => return Err(unknown()),
            }
        }
    };
    debug_assert!(validate_lie(&fx.algebra).is_valid());
    Ok(fx)
}

fn parse_param(name: &str) -> Option<(&str, usize)> {
    let (base, rest) = name.split_once('(')?;
    let n: usize = rest.strip_suffix(')')?.trim().parse().ok()?;
    (n <= MAX_PARAM).then_some((base, n))
}

/// Fixture over F2.
pub fn fixture_f2(name: &str) -> Result<Fixture, LieError> {
    fixture(name, Field::f2())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::vec_from_bits;
    use crate::liealg::{center, derived_series, is_simple};

    #[test]
    fn o3_brackets() {
        let g = fixture_f2("o3").unwrap().algebra;
        assert_eq!(g.basis_bracket(0, 1), vec_from_bits(&[0, 0, 1]));
        assert_eq!(g.basis_bracket(0, 2), vec_from_bits(&[0, 1, 0]));
        assert_eq!(g.basis_bracket(1, 2), vec_from_bits(&[1, 0, 0]));
    }

    #[test]
    fn names_parse() {
        assert_eq!(fixture_f2("abelian(4)").unwrap().algebra.dim(), 4);
        assert_eq!(fixture_f2("strictly_upper(4)").unwrap().algebra.dim(), 6);
        assert!(matches!(fixture_f2("so5"), Err(LieError::UnknownFixture(_))));
        assert!(fixture_f2("abelian(x)").is_err());
    }

    #[test]
    fn every_fixture_with_a_map_is_restricted() {
        for name in ["heis3", "sl2", "gl2", "gl3", "sl3", "w11_p2", "abelian(3)", "strictly_upper(4)"] {
            let fx = fixture_f2(name).unwrap();
            assert!(fx.restricted().unwrap().is_some(), "{name}");
        }
        let f8 = Field::new(3).unwrap();
        assert!(fixture("sl3", f8).unwrap().restricted().unwrap().is_some());
    }

    #[test]
    fn sl3_center_is_zero() {
        let g = fixture_f2("sl3").unwrap().algebra;
        assert_eq!(g.dim(), 8);
        assert!(center(&g).unwrap().is_zero());
    }

    #[test]
    fn w11_is_solvable() {
        let g = fixture_f2("w11_p2").unwrap().algebra;
        let d = derived_series(&g, &g.full_space()).unwrap();
        assert_eq!(d.dims(), vec![2, 1, 0]);
    }

    #[test]
    fn o3_is_simple_and_perfect() {
        let g = fixture_f2("o3").unwrap().algebra;
        let r = is_simple(&g).unwrap();
        assert!(r.simple);
        assert_eq!(r.points_checked, 7);
        let d = derived_series(&g, &g.full_space()).unwrap();
        assert_eq!(d.dims(), vec![3]);
        assert!(!d.terminates_at_zero);
    }

    #[test]
    fn sl2_witness_is_h() {
        let g = fixture_f2("sl2").unwrap().algebra;
        let r = is_simple(&g).unwrap();
        assert!(!r.simple);
        assert_eq!(r.witness.unwrap().basis_vectors(), vec![vec_from_bits(&[0, 0, 1])]);
    }
}
