//! GL3(F2) acting on F2^3.
//!
//! Vectors are 3-bit masks, bit i being the i-th coordinate. Roots and
//! toral vectors share this encoding: a root is its list of values on
//! (t1, t2, t3), and a toral vector c1 t1 + c2 t2 + c3 t3 is (c1, c2, c3).

use std::sync::OnceLock;

pub fn parity(x: u8) -> bool {
    x.count_ones() & 1 == 1
}

/// The value of a root on a toral vector.
pub fn pair(root: u8, t: u8) -> bool {
    parity(root & t)
}

/// An invertible 3x3 matrix over F2, stored by rows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gl3 {
    rows: [u8; 3],
}

impl Gl3 {
    pub const IDENTITY: Gl3 = Gl3 { rows: [1, 2, 4] };

    pub fn from_rows(rows: [u8; 3]) -> Option<Gl3> {
        let g = Gl3 { rows: rows.map(|r| r & 7) };
        (1..8u8).all(|v| g.apply(v) != 0).then_some(g)
    }

    fn from_cols(cols: [u8; 3]) -> Gl3 {
        let mut rows = [0u8; 3];
        for (j, c) in cols.iter().enumerate() {
            for (i, row) in rows.iter_mut().enumerate() {
                *row |= (c >> i & 1) << j;
            }
        }
        Gl3 { rows }
    }

    pub fn rows(self) -> [u8; 3] {
        self.rows
    }

    pub fn apply(self, v: u8) -> u8 {
        (0..3).fold(0, |acc, i| acc | (pair(self.rows[i], v) as u8) << i)
    }

    /// The product self * other, acting as other first.
    pub fn compose(self, other: Gl3) -> Gl3 {
        Gl3::from_cols([1, 2, 4].map(|e| self.apply(other.apply(e))))
    }

    pub fn transpose(self) -> Gl3 {
        Gl3::from_cols(self.rows)
    }

    pub fn inverse(self) -> Gl3 {
        let pre = |e: u8| (1..8u8).find(|&v| self.apply(v) == e).expect("invertible");
        Gl3::from_cols([pre(1), pre(2), pre(4)])
    }

    /// The contragredient g^{-T}, which preserves the root/toral pairing.
    pub fn dual(self) -> Gl3 {
        self.inverse().transpose()
    }

    /// All 168 elements, in increasing row order.
    pub fn all() -> &'static [Gl3] {
        static ALL: OnceLock<Vec<Gl3>> = OnceLock::new();
        ALL.get_or_init(|| {
            let mut out = Vec::with_capacity(168);
            for a in 0..8u8 {
                for b in 0..8u8 {
                    for c in 0..8u8 {
                        if let Some(g) = Gl3::from_rows([a, b, c]) {
                            out.push(g);
                        }
                    }
                }
            }
            out
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_axioms() {
        let all = Gl3::all();
        assert_eq!(all.len(), 168);
        for (i, &g) in all.iter().enumerate().step_by(7) {
            assert_eq!(g.compose(g.inverse()), Gl3::IDENTITY);
            let h = all[(i * 31 + 5) % 168];
            assert!(all.binary_search(&g.compose(h)).is_ok());
            for v in 0..8u8 {
                assert_eq!(g.compose(h).apply(v), g.apply(h.apply(v)));
            }
        }
    }

    #[test]
    fn dual_preserves_pairing() {
        for &g in Gl3::all() {
            for r in 1..8u8 {
                for t in 0..8u8 {
                    assert_eq!(pair(g.apply(r), g.dual().apply(t)), pair(r, t));
                }
            }
        }
    }
}
