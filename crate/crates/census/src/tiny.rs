//! Bit-packed algebras over F2 of dimension at most 8.
//!
//! A vector is a byte mask over the basis; the table stores [e_i, e_j] for
//! i < j in lexicographic pair order.

use lie2_core::field::{vec_bits, vec_from_bits, Fe, Field};
use lie2_core::LieAlgebra;

pub const MAX_TINY_DIM: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TinyTable {
    n: usize,
    br: [u8; 28],
}

pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

impl TinyTable {
    pub fn zero(n: usize) -> TinyTable {
        assert!(n <= MAX_TINY_DIM, "tiny tables hold at most {MAX_TINY_DIM} basis vectors");
        TinyTable { n, br: [0; 28] }
    }

    /// Pair p takes bits p*n .. (p+1)*n of `code`.
    pub fn from_code(n: usize, code: u64) -> TinyTable {
        let mut t = TinyTable::zero(n);
        let mask = (1u64 << n) - 1;
        for p in 0..pair_count(n) {
            t.br[p] = (code >> (p * n) & mask) as u8;
        }
        t
    }

    pub fn from_pairs(n: usize, pairs: &[u8]) -> TinyTable {
        let mut t = TinyTable::zero(n);
        let mask = ((1u16 << n) - 1) as u8;
        for (p, &v) in pairs.iter().take(pair_count(n)).enumerate() {
            t.br[p] = v & mask;
        }
        t
    }

    pub fn from_algebra(g: &LieAlgebra) -> Option<TinyTable> {
        if g.field().degree() != 1 || g.dim() > MAX_TINY_DIM {
            return None;
        }
        let n = g.dim();
        let mut t = TinyTable::zero(n);
        for (i, j, v) in g.nonzero_products() {
            t.br[pair_index(n, i, j)] = v.iter().enumerate().fold(0u8, |m, (k, c)| m | (c.bits() as u8) << k);
        }
        Some(t)
    }

    pub fn to_algebra(&self, name: impl Into<String>) -> LieAlgebra {
        let n = self.n;
        let mut entries = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let m = self.basis_bracket(i, j);
                if m != 0 {
                    let bits: Vec<u16> = (0..n).map(|k| (m >> k & 1) as u16).collect();
                    entries.push((i, j, vec_from_bits(&bits)));
                }
            }
        }
        LieAlgebra::from_table(name, Field::f2(), n, &entries).expect("tiny table is well formed")
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> &[u8] {
        &self.br[..pair_count(self.n)]
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> u8 {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.br[pair_index(self.n, i, j)],
            std::cmp::Ordering::Greater => self.br[pair_index(self.n, j, i)],
            std::cmp::Ordering::Equal => 0,
        }
    }

    /// [e_i, x].
    pub fn ad(&self, i: usize, x: u8) -> u8 {
        let mut out = 0;
        let mut rest = x;
        while rest != 0 {
            let j = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            out ^= self.basis_bracket(i, j);
        }
        out
    }

    pub fn bracket(&self, x: u8, y: u8) -> u8 {
        let mut out = 0;
        let mut rest = x;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            out ^= self.ad(i, y);
        }
        out
    }

    /// Jacobi on basis triples; the Jacobiator is alternating, so distinct
    /// triples suffice.
    pub fn is_lie(&self) -> bool {
        let n = self.n;
        for i in 0..n {
            for j in i + 1..n {
                let ij = self.basis_bracket(i, j);
                for k in j + 1..n {
                    let jac =
                        self.ad(i, self.basis_bracket(j, k)) ^ self.ad(j, self.basis_bracket(k, i)) ^ self.ad(k, ij);
                    if jac != 0 {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn derived_rank(&self) -> usize {
        Echelon::spanning(self.pairs().iter().copied()).dim()
    }

    pub fn center_dim(&self) -> usize {
        let n = self.n;
        (0..1u16 << n).filter(|&x| (0..n).all(|i| self.ad(i, x as u8) == 0)).count().trailing_zeros() as usize
    }

    pub fn ideal_closure(&self, seed: u8) -> Echelon {
        let mut span = Echelon::default();
        let mut queue = vec![seed];
        while let Some(v) = queue.pop() {
            if span.insert(v) {
                for i in 0..self.n {
                    queue.push(self.ad(i, v));
                }
            }
        }
        span
    }

    /// Simple: dimension at least 2, and every nonzero vector generates the
    /// whole algebra as an ideal.
    pub fn is_simple(&self) -> bool {
        let n = self.n;
        if n < 2 || self.derived_rank() < n {
            return false;
        }
        (1..1u16 << n).all(|v| self.ideal_closure(v as u8).dim() == n)
    }

    /// Whether the linear map sending e_i to `phi[i]` is a homomorphism
    /// from self to `other`.
    pub fn satisfies_map(&self, other: &TinyTable, phi: &[u8]) -> bool {
        let apply = |x: u8| {
            let mut out = 0;
            for (k, &img) in phi.iter().enumerate() {
                if x >> k & 1 == 1 {
                    out ^= img;
                }
            }
            out
        };
        let n = self.n;
        (0..n).all(|i| (i + 1..n).all(|j| apply(self.basis_bracket(i, j)) == other.bracket(phi[i], phi[j])))
    }
}

/// An F2 subspace in echelon form, pivot = highest set bit.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<u8>,
}

impl Echelon {
    pub fn spanning(vs: impl IntoIterator<Item = u8>) -> Echelon {
        let mut e = Echelon::default();
        for v in vs {
            e.insert(v);
        }
        e
    }

    pub fn reduce(&self, mut v: u8) -> u8 {
        for &r in &self.rows {
            if v ^ r < v {
                v ^= r;
            }
        }
        v
    }

    pub fn insert(&mut self, v: u8) -> bool {
        let r = self.reduce(v);
        if r == 0 {
            return false;
        }
        self.rows.push(r);
        self.rows.sort_unstable_by(|a, b| b.cmp(a));
        true
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }
}

/// Byte mask of an F2 vector.
pub fn mask_of(v: &[Fe]) -> u8 {
    vec_bits(v).iter().enumerate().fold(0u8, |m, (k, &b)| m | ((b & 1) as u8) << k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use lie2_core::catalog::fixture_f2;

    #[test]
    fn round_trip_through_core() {
        for name in ["o3", "heis3", "sl2", "gl2", "w11_p2", "strictly_upper(4)"] {
            let g = fixture_f2(name).unwrap().algebra;
            let t = TinyTable::from_algebra(&g).unwrap();
            assert_eq!(TinyTable::from_algebra(&t.to_algebra(name)).unwrap(), t);
            assert!(t.is_lie(), "{name}");
            assert_eq!(t.is_simple(), name == "o3", "{name}");
        }
    }

    #[test]
    fn echelon_reduces() {
        let e = Echelon::spanning([0b110, 0b011]);
        assert_eq!(e.dim(), 2);
        assert_eq!(e.reduce(0b101), 0);
        assert_ne!(e.reduce(0b001), 0);
    }
}
