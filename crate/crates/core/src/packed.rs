//! Bit-packed view of a restricted Lie algebra for enumeration loops.
//!
//! An algebra over GF(2^k) of dimension `n` is viewed over GF(2) by
//! restriction of scalars: coordinate `j` and polynomial bit `b` become GF(2)
//! position `j * k + b`, so a vector is one `u64` when `k * n <= 64`.
//! Addition is exclusive-or, the bracket is GF(2)-bilinear, and the 2-map
//! still obeys `(a+b)^[2] = a^[2] + b^[2] + [a,b]`, which is what the
//! Gray-code walk below relies on.

use std::ops::ControlFlow;

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::linalg::vector;
use crate::restricted::{square_unchecked, TwoMap};

pub const MAX_BITS: usize = 64;

#[derive(Clone, Debug)]
pub struct PackedAlgebra {
    field: Field,
    n: usize,
    bits: usize,
    /// `table[p * bits + q] = [e_p, e_q]`
    table: Vec<u64>,
    /// `squares[p] = e_p^[2]`
    squares: Vec<u64>,
}

#[inline]
fn ones(mut x: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if x == 0 {
            None
        } else {
            let p = x.trailing_zeros() as usize;
            x &= x - 1;
            Some(p)
        }
    })
}

impl PackedAlgebra {
    pub fn new(g: &LieAlgebra, tm: &TwoMap) -> Result<PackedAlgebra> {
        let field = g.field();
        let k = field.degree() as usize;
        let n = g.dim();
        let bits = k * n;
        if bits > MAX_BITS {
            return Err(Error::BudgetExceeded { needed: bits, limit: MAX_BITS });
        }
        let mut pa = PackedAlgebra { field, n, bits, table: vec![0; bits * bits], squares: vec![0; bits] };
        let basis: Vec<Vec<Fe>> = (0..bits).map(|p| pa.position_vector(p)).collect();
        for p in 0..bits {
            pa.squares[p] = pa.pack(&square_unchecked(g, tm, &basis[p]));
            for q in p + 1..bits {
                let b = pa.pack(&g.bracket_unchecked(&basis[p], &basis[q]));
                pa.table[p * bits + q] = b;
                pa.table[q * bits + p] = b;
            }
        }
        Ok(pa)
    }

    fn position_vector(&self, p: usize) -> Vec<Fe> {
        let k = self.field.degree() as usize;
        let mut v = vector::zero(self.n);
        v[p / k] = self.field.monomial((p % k) as u32);
        v
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn pack(&self, v: &[Fe]) -> u64 {
        let k = self.field.degree() as usize;
        v.iter().enumerate().fold(0u64, |acc, (j, x)| acc | ((x.0 as u64) << (j * k)))
    }

    pub fn unpack(&self, w: u64) -> Vec<Fe> {
        let k = self.field.degree() as usize;
        let mask = (1u64 << k) - 1;
        (0..self.n).map(|j| Fe(((w >> (j * k)) & mask) as u16)).collect()
    }

    #[inline]
    pub fn bracket(&self, x: u64, y: u64) -> u64 {
        let mut out = 0;
        for p in ones(x) {
            let row = &self.table[p * self.bits..(p + 1) * self.bits];
            for q in ones(y) {
                out ^= row[q];
            }
        }
        out
    }

    #[inline]
    pub fn square(&self, x: u64) -> u64 {
        let mut out = 0;
        let mut rest = x;
        while rest != 0 {
            let p = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            out ^= self.squares[p];
            let row = &self.table[p * self.bits..(p + 1) * self.bits];
            for q in ones(rest) {
                out ^= row[q];
            }
        }
        out
    }

    /// Visit every vector of the restricted-scalar space in Gray-code order,
    /// passing `(x, x^[2], ad)` where `ad[q] = [x, e_q]`. The walk starts at
    /// zero; each step costs `O(bits)`.
    pub fn gray_walk<B>(&self, mut visit: impl FnMut(u64, u64, &[u64]) -> ControlFlow<B>) -> Option<B> {
        let bits = self.bits;
        let mut x = 0u64;
        let mut sq = 0u64;
        let mut ad = vec![0u64; bits];
        if let ControlFlow::Break(b) = visit(x, sq, &ad) {
            return Some(b);
        }
        let total: u64 = if bits == 64 { u64::MAX } else { (1u64 << bits) - 1 };
        for step in 1..=total {
            let p = step.trailing_zeros() as usize;
            sq ^= self.squares[p] ^ ad[p];
            let row = &self.table[p * bits..(p + 1) * bits];
            for (a, r) in ad.iter_mut().zip(row) {
                *a ^= r;
            }
            x ^= 1 << p;
            if let ControlFlow::Break(b) = visit(x, sq, &ad) {
                return Some(b);
            }
        }
        None
    }

    /// All nonzero `t` with `t^[2] = t`, sorted by packed value.
    pub fn toral_elements(&self) -> Vec<u64> {
        let mut out = Vec::new();
        self.gray_walk::<()>(|x, sq, _| {
            if x != 0 && x == sq {
                out.push(x);
            }
            ControlFlow::Continue(())
        });
        out.sort_unstable();
        out
    }

    /// Smallest-in-walk-order `x` with `ad(x)^2 != ad(x^[2])`, if any.
    pub fn first_ad_square_failure(&self) -> Option<u64> {
        self.gray_walk(|x, sq, ad| {
            for q in 0..self.bits {
                let lhs = ones(ad[q]).fold(0u64, |acc, p| acc ^ ad[p]);
                let rhs = ones(sq).fold(0u64, |acc, p| acc ^ self.table[p * self.bits + q]);
                if lhs != rhs {
                    return ControlFlow::Break(x);
                }
            }
            ControlFlow::Continue(())
        })
    }

    /// Ideal generated by `v` over GF(2). Only meaningful when the base field
    /// is GF(2) itself. Returns the dimension of the closure.
    pub fn closure_dim(&self, v: u64, basis: &mut PackedBasis) -> usize {
        basis.clear();
        basis.insert(v);
        let mut frontier = vec![v];
        while let Some(w) = frontier.pop() {
            for p in 0..self.bits {
                let row = &self.table[p * self.bits..(p + 1) * self.bits];
                let b = ones(w).fold(0u64, |acc, q| acc ^ row[q]);
                if let Some(r) = basis.insert(b) {
                    frontier.push(r);
                    if basis.dim() == self.bits {
                        return self.bits;
                    }
                }
            }
        }
        basis.dim()
    }
}

/// Echelon basis of packed GF(2) vectors, indexed by leading bit.
#[derive(Clone, Debug)]
pub struct PackedBasis {
    by_lead: Vec<u64>,
    dim: usize,
}

impl PackedBasis {
    pub fn new(bits: usize) -> Self {
        PackedBasis { by_lead: vec![0; bits.max(1)], dim: 0 }
    }

    pub fn clear(&mut self) {
        self.by_lead.iter_mut().for_each(|w| *w = 0);
        self.dim = 0;
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Reduce `v`; if independent, store it and return the reduced vector.
    pub fn insert(&mut self, mut v: u64) -> Option<u64> {
        while v != 0 {
            let lead = 63 - v.leading_zeros() as usize;
            let b = self.by_lead[lead];
            if b == 0 {
                self.by_lead[lead] = v;
                self.dim += 1;
                return Some(v);
            }
            v ^= b;
        }
        None
    }

    pub fn vectors(&self) -> impl Iterator<Item = u64> + '_ {
        self.by_lead.iter().copied().filter(|&w| w != 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::restricted::square;

    #[test]
    fn packed_square_and_bracket_match_generic() {
        let (g, tm) = fixtures::gl(2).unwrap();
        let pa = PackedAlgebra::new(&g, &tm).unwrap();
        for x in 0u64..16 {
            let xv = pa.unpack(x);
            assert_eq!(pa.square(x), pa.pack(&square(&g, &tm, &xv).unwrap()));
            for y in 0u64..16 {
                let yv = pa.unpack(y);
                assert_eq!(pa.bracket(x, y), pa.pack(&g.bracket(&xv, &yv).unwrap()));
            }
        }
    }

    #[test]
    fn gray_walk_tracks_square_and_ad() {
        let (g, tm) = fixtures::f6().unwrap();
        let pa = PackedAlgebra::new(&g, &tm).unwrap();
        let mut count = 0;
        pa.gray_walk::<()>(|x, sq, ad| {
            count += 1;
            assert_eq!(sq, pa.square(x));
            for (q, &a) in ad.iter().enumerate() {
                assert_eq!(a, pa.bracket(x, 1 << q));
            }
            ControlFlow::Continue(())
        });
        assert_eq!(count, 64);
    }

    #[test]
    fn extension_field_packing() {
        let f4 = Field::new(2).unwrap();
        let (g, tm) = fixtures::gl(2).unwrap();
        let emb = Field::GF2.embedding_into(f4).unwrap();
        let g4 = g.extend_scalars(f4).unwrap();
        let tm4 = tm.extend_scalars(&emb);
        let pa = PackedAlgebra::new(&g4, &tm4).unwrap();
        assert_eq!(pa.bits(), 8);
        for x in (0u64..256).step_by(7) {
            let xv = pa.unpack(x);
            assert_eq!(pa.pack(&xv), x);
            assert_eq!(pa.square(x), pa.pack(&square(&g4, &tm4, &xv).unwrap()));
        }
    }
}
