use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::linalg::matrix::Matrix;
use crate::linalg::vector;

/// A subspace of `F^n` stored by its reduced row-echelon basis.
///
/// The representation is canonical: two subspaces are equal exactly when
/// their basis matrices are identical, so `PartialEq` is subspace equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}: {:?})", self.dim(), self.ambient, self.basis.row_vecs())
    }
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace { ambient, basis: Matrix::zeros(field, 0, ambient), pivots: Vec::new() }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        Subspace { ambient, basis: Matrix::identity(field, ambient), pivots: (0..ambient).collect() }
    }

    /// Row space of `m`.
    pub fn row_space(m: &Matrix) -> Subspace {
        let (basis, pivots) = m.rref_with_pivots();
        Subspace { ambient: m.cols(), basis, pivots }
    }

    pub fn span(field: Field, ambient: usize, vectors: &[Vec<Fe>]) -> Result<Subspace> {
        Ok(Subspace::row_space(&Matrix::from_rows(field, ambient, vectors)?))
    }

    pub fn span_of<'a>(field: Field, ambient: usize, vectors: impl IntoIterator<Item = &'a [Fe]>) -> Result<Subspace> {
        let rows: Vec<Vec<Fe>> = vectors.into_iter().map(|v| v.to_vec()).collect();
        Subspace::span(field, ambient, &rows)
    }

    /// Span of standard basis vectors `e_i` for the given indices.
    pub fn coordinate(field: Field, ambient: usize, indices: impl IntoIterator<Item = usize>) -> Subspace {
        let rows: Vec<Vec<Fe>> = indices.into_iter().map(|i| vector::unit(ambient, i)).collect();
        Subspace::span(field, ambient, &rows).expect("unit vectors have ambient length")
    }

    #[inline]
    pub fn field(&self) -> Field {
        self.basis.field()
    }

    #[inline]
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Fe>> {
        self.basis.row_vecs()
    }

    fn check_ambient(&self, n: usize) -> Result<()> {
        if n != self.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, got: n });
        }
        Ok(())
    }

    /// Residual of `x` after eliminating every pivot coordinate of the basis.
    /// The residual is zero exactly when `x` lies in the subspace; the map is
    /// linear in `x`.
    pub fn reduce(&self, x: &[Fe]) -> Result<Vec<Fe>> {
        self.check_ambient(x.len())?;
        let f = self.field();
        let mut r = x.to_vec();
        for (row, &p) in self.pivots.iter().enumerate() {
            let c = r[p];
            if !c.is_zero() {
                vector::axpy(f, &mut r, c, self.basis.row(row));
            }
        }
        Ok(r)
    }

    pub fn contains(&self, x: &[Fe]) -> Result<bool> {
        Ok(vector::is_zero(&self.reduce(x)?))
    }

    /// Coordinates of `x` with respect to the echelon basis, if `x` belongs.
    pub fn coordinates(&self, x: &[Fe]) -> Result<Option<Vec<Fe>>> {
        self.check_ambient(x.len())?;
        let coords: Vec<Fe> = self.pivots.iter().map(|&p| x[p]).collect();
        let f = self.field();
        let mut recon = vec![Fe::ZERO; self.ambient];
        for (row, &c) in coords.iter().enumerate() {
            vector::axpy(f, &mut recon, c, self.basis.row(row));
        }
        Ok((recon == x).then_some(coords))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        other.check_ambient(self.ambient)?;
        for r in 0..self.dim() {
            if !other.contains(self.basis.row(r))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other.ambient)?;
        let mut rows = self.basis_vectors();
        rows.extend(other.basis_vectors());
        Subspace::span(self.field(), self.ambient, &rows)
    }

    /// Add extra vectors to the subspace.
    pub fn extend(&self, vectors: &[Vec<Fe>]) -> Result<Subspace> {
        let mut rows = self.basis_vectors();
        rows.extend(vectors.iter().cloned());
        Subspace::span(self.field(), self.ambient, &rows)
    }

    /// A matrix whose null space is exactly this subspace.
    pub fn annihilator(&self) -> Matrix {
        let dual = nullspace(&self.basis);
        dual.basis.clone()
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other.ambient)?;
        let a = self.annihilator();
        let b = other.annihilator();
        let mut rows = a.row_vecs();
        rows.extend(b.row_vecs());
        let stacked = Matrix::from_rows(self.field(), self.ambient, &rows)?;
        let meet = nullspace(&stacked);
        debug_assert_eq!(
            self.dim() + other.dim(),
            self.sum(other)?.dim() + meet.dim(),
            "dimension formula"
        );
        Ok(meet)
    }

    /// Image of the subspace under a linear map given as a function on
    /// basis vectors.
    pub fn map(&self, target_ambient: usize, f: impl Fn(&[Fe]) -> Vec<Fe>) -> Result<Subspace> {
        let rows: Vec<Vec<Fe>> = (0..self.dim()).map(|r| f(self.basis.row(r))).collect();
        Subspace::span(self.field(), target_ambient, &rows)
    }

    /// Enumerate every vector of the subspace (field order ^ dim of them).
    pub fn elements(&self) -> impl Iterator<Item = Vec<Fe>> + '_ {
        let q = self.field().order() as u64;
        let d = self.dim() as u32;
        let total = q.pow(d);
        let f = self.field();
        (0..total).map(move |mut idx| {
            let mut v = vec![Fe::ZERO; self.ambient];
            for r in 0..self.dim() {
                let c = Fe((idx % q) as u16);
                idx /= q;
                vector::axpy(f, &mut v, c, self.basis.row(r));
            }
            v
        })
    }
}

/// `{v : m v = 0}`.
pub fn nullspace(m: &Matrix) -> Subspace {
    let f = m.field();
    let (r, pivots) = m.rref_with_pivots();
    let cols = m.cols();
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Fe::ZERO; cols];
        v[free] = Fe::ONE;
        for (row, &p) in pivots.iter().enumerate() {
            // char 2: -r = r
            v[p] = r.get(row, free);
        }
        basis.push(v);
    }
    Subspace::span(f, cols, &basis).expect("nullspace vectors have width cols")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(bits: &[u16]) -> Vec<Fe> {
        bits.iter().map(|&b| Fe(b)).collect()
    }

    fn gf2() -> Field {
        Field::GF2
    }

    // Every vector in GF(2)^n, used as an enumeration oracle.
    fn all_vectors(n: usize) -> Vec<Vec<Fe>> {
        (0u32..1 << n).map(|m| (0..n).map(|i| Fe(((m >> i) & 1) as u16)).collect()).collect()
    }

    #[test]
    fn nullspace_examples() {
        let id = Matrix::identity(gf2(), 3);
        assert!(nullspace(&id).is_zero());
        assert!(nullspace(&Matrix::zeros(gf2(), 2, 3)).is_full());

        let m = Matrix::from_u16(gf2(), &[&[1, 1, 0]]);
        let ns = nullspace(&m);
        let expect = Subspace::span(gf2(), 3, &[v(&[1, 1, 0]), v(&[0, 0, 1])]).unwrap();
        assert_eq!(ns, expect);
        // enumeration oracle
        let members: Vec<_> = all_vectors(3).into_iter().filter(|x| m.mul_vec(x).unwrap() == v(&[0])).collect();
        assert_eq!(members.len(), 1 << ns.dim());
        for x in members {
            assert!(ns.contains(&x).unwrap());
        }
    }

    #[test]
    fn intersection_example() {
        let u = Subspace::span(gf2(), 3, &[v(&[1, 1, 0]), v(&[0, 1, 1])]).unwrap();
        let w = Subspace::span(gf2(), 3, &[v(&[1, 0, 1])]).unwrap();
        let meet = u.intersect(&w).unwrap();
        assert_eq!(meet, w);
        let brute: Vec<_> = all_vectors(3)
            .into_iter()
            .filter(|x| u.contains(x).unwrap() && w.contains(x).unwrap())
            .collect();
        assert_eq!(brute.len(), 2);
    }

    #[test]
    fn idempotence_and_sum_of_lines() {
        let u = Subspace::span(gf2(), 3, &[v(&[1, 1, 0])]).unwrap();
        assert_eq!(u.sum(&u).unwrap(), u);
        assert_eq!(u.intersect(&u).unwrap(), u);
        let e1 = Subspace::coordinate(gf2(), 3, [0]);
        let e2 = Subspace::coordinate(gf2(), 3, [1]);
        assert_eq!(e1.sum(&e2).unwrap(), Subspace::coordinate(gf2(), 3, [0, 1]));
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let a = Subspace::zero(gf2(), 3);
        let b = Subspace::zero(gf2(), 4);
        assert!(matches!(a.sum(&b), Err(Error::DimensionMismatch { .. })));
        assert!(a.intersect(&b).is_err());
        assert!(a.contains(&v(&[1, 0])).is_err());
    }

    #[test]
    fn annihilator_cuts_out_subspace() {
        let f = Field::new(3).unwrap();
        let u = Subspace::span(f, 4, &[v(&[1, 5, 0, 2]), v(&[0, 3, 7, 1])]).unwrap();
        assert_eq!(nullspace(&u.annihilator()), u);
        assert_eq!(u.elements().count(), 64);
        for x in u.elements() {
            assert!(u.contains(&x).unwrap());
            assert!(u.coordinates(&x).unwrap().is_some());
        }
    }
}
