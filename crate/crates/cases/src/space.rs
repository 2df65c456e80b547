//! Subspaces of the toral span F2^r, r <= 3.

use crate::gl3::{pair, Gl3};

/// A subspace stored as its set of members: bit v is set iff v belongs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ToralSpan(u8);

impl ToralSpan {
    pub fn zero() -> ToralSpan {
        ToralSpan(1)
    }

    pub fn full(rank: u32) -> ToralSpan {
        assert!(rank <= 3, "toral span rank {rank} exceeds 3");
        ToralSpan(((1u16 << (1u16 << rank)) - 1) as u8)
    }

    /// Toral vectors on which `root` vanishes.
    pub fn kernel(root: u8, rank: u32) -> ToralSpan {
        ToralSpan::members_where(rank, |t| !pair(root, t))
    }

    fn members_where(rank: u32, keep: impl Fn(u8) -> bool) -> ToralSpan {
        let mask = (0..1u8 << rank).filter(|&t| keep(t)).fold(0u8, |m, t| m | 1 << t);
        ToralSpan(mask)
    }

    pub fn span(gens: &[u8]) -> ToralSpan {
        gens.iter().fold(ToralSpan::zero(), |s, &g| s.with(g))
    }

    fn with(self, v: u8) -> ToralSpan {
        let mut m = self.0;
        for t in 0..8u8 {
            if self.0 >> t & 1 == 1 {
                m |= 1 << (t ^ v);
            }
        }
        ToralSpan(m)
    }

    pub fn members(self) -> u8 {
        self.0
    }

    pub fn contains(self, t: u8) -> bool {
        t < 8 && self.0 >> t & 1 == 1
    }

    pub fn intersect(self, other: ToralSpan) -> ToralSpan {
        ToralSpan(self.0 & other.0)
    }

    pub fn sum(self, other: ToralSpan) -> ToralSpan {
        other.basis().iter().fold(self, |s, &v| s.with(v))
    }

    pub fn dim(self) -> u32 {
        self.0.count_ones().trailing_zeros()
    }

    pub fn elements(self) -> impl Iterator<Item = u8> {
        (0..8u8).filter(move |&t| self.0 >> t & 1 == 1)
    }

    /// Reduced echelon basis (pivot = lowest set bit), ascending.
    pub fn basis(self) -> Vec<u8> {
        let mut basis: Vec<u8> = Vec::new();
        for t in self.elements() {
            let mut r = t;
            for &b in &basis {
                if r >> b.trailing_zeros() & 1 == 1 {
                    r ^= b;
                }
            }
            if r != 0 {
                let p = r.trailing_zeros();
                for b in basis.iter_mut() {
                    if *b >> p & 1 == 1 {
                        *b ^= r;
                    }
                }
                basis.push(r);
            }
        }
        basis.sort_unstable();
        basis
    }

    /// Image under the contragredient action of g.
    pub fn transform(self, g: Gl3) -> ToralSpan {
        let d = g.dual();
        ToralSpan(self.elements().fold(0u8, |m, t| m | 1 << d.apply(t)))
    }
}

/// "t1+t3" style rendering of a toral vector; "0" for zero.
pub fn t_label(t: u8) -> String {
    if t == 0 {
        return "0".into();
    }
    (0..3).filter(|i| t >> i & 1 == 1).map(|i| format!("t{}", i + 1)).collect::<Vec<_>>().join("+")
}

pub fn t_coords(t: u8) -> [u8; 3] {
    [t & 1, t >> 1 & 1, t >> 2 & 1]
}

pub fn t_from_coords(c: [u8; 3]) -> Option<u8> {
    c.iter().all(|&x| x <= 1).then(|| c[0] | c[1] << 1 | c[2] << 2)
}
