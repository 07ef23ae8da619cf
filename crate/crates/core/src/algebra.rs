//! Lie algebras given by structure constants.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::linalg::{nullspace, vector, Matrix, Subspace};

/// An `n`-dimensional algebra with `[b_i, b_j] = sum_m c_ij^m b_m`.
///
/// The tensor is stored densely; nothing is checked at construction time.
/// Run [`LieAlgebra::verify_lie`] before trusting the result.
#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    field: Field,
    dim: usize,
    tensor: Vec<Fe>,
    name: Option<String>,
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra({}, dim {}, {:?})", self.name.as_deref().unwrap_or("-"), self.dim, self.field)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LieViolation {
    /// `c_ii != 0`
    Diagonal { i: usize },
    /// `c_ij != c_ji`
    Alternating { i: usize, j: usize },
    Jacobi { i: usize, j: usize, l: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LieReport {
    pub violations: Vec<LieViolation>,
}

impl LieReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

impl LieAlgebra {
    /// Zero (abelian) algebra.
    pub fn abelian(field: Field, dim: usize) -> LieAlgebra {
        LieAlgebra { field, dim, tensor: vec![Fe::ZERO; dim * dim * dim], name: None }
    }

    /// Raw constructor; `tensor[(i * n + j) * n + m] = c_ij^m`.
    pub fn from_tensor(field: Field, dim: usize, tensor: Vec<Fe>) -> Result<LieAlgebra> {
        if tensor.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim * dim, got: tensor.len() });
        }
        Ok(LieAlgebra { field, dim, tensor, name: None })
    }

    /// Build from the brackets `[b_i, b_j]` with `i < j`; the rest follows
    /// from antisymmetry (symmetry, in characteristic 2).
    pub fn from_upper<'a>(
        field: Field,
        dim: usize,
        entries: impl IntoIterator<Item = (usize, usize, &'a [Fe])>,
    ) -> Result<LieAlgebra> {
        let mut g = LieAlgebra::abelian(field, dim);
        for (i, j, v) in entries {
            if i >= j || j >= dim {
                return Err(Error::InvalidParams(format!("bracket index ({i}, {j}) not upper triangular")));
            }
            g.set_bracket(i, j, v)?;
            g.set_bracket(j, i, v)?;
        }
        Ok(g)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    #[inline]
    pub fn field(&self) -> Field {
        self.field
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `[b_i, b_j]` as a coefficient vector.
    #[inline]
    pub fn structure(&self, i: usize, j: usize) -> &[Fe] {
        let n = self.dim;
        &self.tensor[(i * n + j) * n..(i * n + j + 1) * n]
    }

    pub fn set_bracket(&mut self, i: usize, j: usize, v: &[Fe]) -> Result<()> {
        let n = self.dim;
        if v.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: v.len() });
        }
        self.tensor[(i * n + j) * n..(i * n + j + 1) * n].copy_from_slice(v);
        Ok(())
    }

    pub fn full(&self) -> Subspace {
        Subspace::full(self.field, self.dim)
    }

    pub fn zero_subspace(&self) -> Subspace {
        Subspace::zero(self.field, self.dim)
    }

    fn check_len(&self, x: &[Fe]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: x.len() });
        }
        Ok(())
    }

    fn check_subspace(&self, u: &Subspace) -> Result<()> {
        if u.ambient() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: u.ambient() });
        }
        Ok(())
    }

    pub fn bracket(&self, x: &[Fe], y: &[Fe]) -> Result<Vec<Fe>> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &[Fe], y: &[Fe]) -> Vec<Fe> {
        let f = self.field;
        let mut out = vector::zero(self.dim);
        for (i, &xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj.is_zero() || i == j {
                    continue;
                }
                vector::axpy(f, &mut out, f.mul(xi, yj), self.structure(i, j));
            }
        }
        out
    }

    /// `[b_i, x]`
    pub(crate) fn bracket_basis(&self, i: usize, x: &[Fe]) -> Vec<Fe> {
        let f = self.field;
        let mut out = vector::zero(self.dim);
        for (j, &xj) in x.iter().enumerate() {
            if !xj.is_zero() && j != i {
                vector::axpy(f, &mut out, xj, self.structure(i, j));
            }
        }
        out
    }

    /// Matrix of `ad(x)` acting on column vectors: `ad(x) * y = [x, y]`.
    pub fn ad(&self, x: &[Fe]) -> Result<Matrix> {
        self.check_len(x)?;
        let cols: Vec<Vec<Fe>> = (0..self.dim)
            .map(|j| {
                let mut c = self.bracket_basis(j, x);
                // [b_j, x] = [x, b_j] in characteristic 2
                c.truncate(self.dim);
                c
            })
            .collect();
        Matrix::from_columns(self.field, self.dim, &cols)
    }

    /// Exhaustive check of the alternating law and the Jacobi identity on
    /// all basis triples.
    pub fn verify_lie(&self) -> LieReport {
        let n = self.dim;
        let f = self.field;
        let mut violations = Vec::new();
        for i in 0..n {
            if !vector::is_zero(self.structure(i, i)) {
                violations.push(LieViolation::Diagonal { i });
            }
            for j in i + 1..n {
                if self.structure(i, j) != self.structure(j, i) {
                    violations.push(LieViolation::Alternating { i, j });
                }
            }
        }
        if !violations.is_empty() {
            return LieReport { violations };
        }
        for i in 0..n {
            for j in i + 1..n {
                for l in j + 1..n {
                    let mut s = vector::zero(n);
                    let terms = [(i, j, l), (j, l, i), (l, i, j)];
                    for (a, b, c) in terms {
                        // [[b_a, b_b], b_c] = sum_m c_ab^m [b_m, b_c]
                        for (m, &coef) in self.structure(a, b).iter().enumerate() {
                            if !coef.is_zero() {
                                vector::axpy(f, &mut s, coef, self.structure(m, c));
                            }
                        }
                    }
                    if !vector::is_zero(&s) {
                        violations.push(LieViolation::Jacobi { i, j, l });
                    }
                }
            }
        }
        LieReport { violations }
    }

    /// `span{[x, y] : x in basis(u), y in basis(v)}`.
    pub fn bracket_span(&self, u: &Subspace, v: &Subspace) -> Result<Subspace> {
        self.check_subspace(u)?;
        self.check_subspace(v)?;
        let ub = u.basis_vectors();
        let vb = v.basis_vectors();
        let mut rows = Vec::with_capacity(ub.len() * vb.len());
        for x in &ub {
            for y in &vb {
                let b = self.bracket_unchecked(x, y);
                if !vector::is_zero(&b) {
                    rows.push(b);
                }
            }
        }
        Subspace::span(self.field, self.dim, &rows)
    }

    /// `{x : [x, u] = 0 for all u in u}`.
    pub fn centralizer(&self, u: &Subspace) -> Result<Subspace> {
        self.check_subspace(u)?;
        let mut rows = Vec::new();
        for w in u.basis_vectors() {
            rows.extend(self.ad(&w)?.row_vecs());
        }
        if rows.is_empty() {
            return Ok(self.full());
        }
        Ok(nullspace(&Matrix::from_rows(self.field, self.dim, &rows)?))
    }

    pub fn center(&self) -> Subspace {
        self.centralizer(&self.full()).expect("ambient matches")
    }

    /// Smallest ideal containing `u`.
    ///
    /// Only brackets against the ambient basis are added: by bilinearity,
    /// `[g, I]` is spanned by `[b_i, w]` for basis vectors `w` of `I`, so a
    /// subspace stable under every `ad(b_i)` is an ideal.
    pub fn ideal_closure(&self, u: &Subspace) -> Result<Subspace> {
        self.check_subspace(u)?;
        let mut ideal = u.clone();
        let mut frontier = u.basis_vectors();
        while let Some(w) = frontier.pop() {
            for i in 0..self.dim {
                let b = self.bracket_basis(i, &w);
                if !ideal.contains(&b)? {
                    ideal = ideal.extend(std::slice::from_ref(&b))?;
                    frontier.push(b);
                }
            }
        }
        Ok(ideal)
    }

    pub fn is_ideal(&self, u: &Subspace) -> Result<bool> {
        self.check_subspace(u)?;
        for w in u.basis_vectors() {
            for i in 0..self.dim {
                if !u.contains(&self.bracket_basis(i, &w))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn is_subalgebra(&self, u: &Subspace) -> Result<bool> {
        self.bracket_span(u, u)?.is_subspace_of(u)
    }

    /// With `V_0 = g` and `V_{i+1} = [s, V_i]`, true iff the chain reaches
    /// zero within `dim` steps.
    pub fn acts_nilpotently(&self, s: &Subspace) -> Result<bool> {
        self.check_subspace(s)?;
        let mut v = self.full();
        for _ in 0..=self.dim {
            if v.is_zero() {
                return Ok(true);
            }
            let next = self.bracket_span(s, &v)?;
            if next == v {
                return Ok(false);
            }
            v = next;
        }
        Ok(v.is_zero())
    }

    pub fn derived_subalgebra(&self, u: &Subspace) -> Result<Subspace> {
        self.bracket_span(u, u)
    }

    /// Lower central series of `u` reaches zero.
    pub fn is_nilpotent_subalgebra(&self, u: &Subspace) -> Result<bool> {
        let mut v = u.clone();
        for _ in 0..=self.dim {
            if v.is_zero() {
                return Ok(true);
            }
            let next = self.bracket_span(u, &v)?;
            if next == v {
                return Ok(false);
            }
            v = next;
        }
        Ok(v.is_zero())
    }

    /// Same algebra with scalars extended along a field embedding.
    pub fn extend_scalars(&self, target: Field) -> Result<LieAlgebra> {
        let emb = self
            .field
            .embedding_into(target)
            .ok_or_else(|| Error::FieldMismatch(format!("{:?} does not embed in {:?}", self.field, target)))?;
        let tensor = self.tensor.iter().map(|&c| emb.apply(c)).collect();
        Ok(LieAlgebra { field: target, dim: self.dim, tensor, name: self.name.clone() })
    }
}
