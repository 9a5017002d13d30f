use std::fmt;

use thiserror::Error;

use super::field::{Field, Scalar};
use super::matrix::Matrix;
use super::{kernel, rref, rref_with_pivots};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SubspaceError {
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
}

/// A linear subspace of `K^n`, stored as the reduced row echelon form of a
/// basis. Two subspaces are equal iff their basis matrices are identical.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace<S> {
    ambient: usize,
    basis: Matrix<S>,
}

impl<S: Scalar> Subspace<S> {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::from_rows_with_cols(Vec::new(), ambient) }
    }

    pub fn full<F: Field<Elem = S>>(field: &F, ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::identity(field, ambient) }
    }

    /// Span of the given vectors (which need not be independent).
    pub fn span(ambient: usize, vectors: Vec<Vec<S>>) -> Self {
        for v in &vectors {
            assert_eq!(v.len(), ambient, "vector length does not match ambient dimension");
        }
        let m = Matrix::from_rows_with_cols(vectors, ambient);
        Subspace { ambient, basis: rref(&m) }
    }

    /// Row space of `m`.
    pub fn row_space(m: &Matrix<S>) -> Self {
        Subspace { ambient: m.cols(), basis: rref(m) }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis(&self) -> &Matrix<S> {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<S>> {
        self.basis.row_vecs()
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.basis.rows())
            .map(|r| self.basis.row(r).iter().position(|x| !x.is_zero()).expect("basis rows are nonzero"))
            .collect()
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is not in
    /// the subspace.
    pub fn coordinates(&self, v: &[S]) -> Option<Vec<S>> {
        assert_eq!(v.len(), self.ambient);
        let coords: Vec<S> = self.pivots().into_iter().map(|p| v[p].clone()).collect();
        let mut rest = v.to_vec();
        for (r, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, b) in self.basis.row(r).iter().enumerate() {
                if !b.is_zero() {
                    rest[k] = rest[k].sub(&c.mul(b));
                }
            }
        }
        rest.iter().all(|x| x.is_zero()).then_some(coords)
    }

    pub fn contains_vector(&self, v: &[S]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Linear combination of the basis rows.
    pub fn combine<F: Field<Elem = S>>(&self, field: &F, coords: &[S]) -> Vec<S> {
        assert_eq!(coords.len(), self.dim());
        let mut out = vec![field.zero(); self.ambient];
        for (r, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, b) in self.basis.row(r).iter().enumerate() {
                if !b.is_zero() {
                    out[k] = out[k].add(&c.mul(b));
                }
            }
        }
        out
    }

    fn check(&self, other: &Self) -> Result<(), SubspaceError> {
        if self.ambient == other.ambient {
            Ok(())
        } else {
            Err(SubspaceError::AmbientMismatch(self.ambient, other.ambient))
        }
    }

    pub fn sum(&self, other: &Self) -> Result<Self, SubspaceError> {
        self.check(other)?;
        let mut rows = self.basis_vectors();
        rows.extend(other.basis_vectors());
        Ok(Subspace::span(self.ambient, rows))
    }

    /// Intersection by the kernel method: solve `x A = y B` for the stacked
    /// bases and map the `x` part back.
    pub fn intersect<F: Field<Elem = S>>(&self, field: &F, other: &Self) -> Result<Self, SubspaceError> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient));
        }
        let (a, b) = (self.dim(), other.dim());
        // Columns: coefficients of self rows then of other rows.
        let mut m = Matrix::zeros(field, self.ambient, a + b);
        for k in 0..self.ambient {
            for r in 0..a {
                m.set(k, r, self.basis.get(r, k).clone());
            }
            for r in 0..b {
                m.set(k, a + r, other.basis.get(r, k).clone());
            }
        }
        let ker = kernel(field, &m);
        let vecs = ker.basis_vectors().into_iter().map(|x| self.combine(field, &x[..a])).collect();
        Ok(Subspace::span(self.ambient, vecs))
    }

    pub fn contains(&self, other: &Self) -> Result<bool, SubspaceError> {
        self.check(other)?;
        Ok(other.basis_vectors().iter().all(|v| self.contains_vector(v)))
    }

    pub fn equals(&self, other: &Self) -> Result<bool, SubspaceError> {
        self.check(other)?;
        Ok(self == other)
    }

    /// Extends this subspace to `outer` by adjoining rows of `outer`'s
    /// echelon basis in order; returns the adjoined span (a complement of
    /// `self` inside `outer`). Requires `self` to be contained in `outer`.
    pub fn complement_in(&self, outer: &Self) -> Result<Self, SubspaceError> {
        self.check(outer)?;
        let mut acc = self.clone();
        let mut added = Vec::new();
        for v in outer.basis_vectors() {
            if !acc.contains_vector(&v) {
                acc = acc.sum(&Subspace::span(self.ambient, vec![v.clone()]))?;
                added.push(v);
            }
        }
        Ok(Subspace::span(self.ambient, added))
    }
}

impl<S: fmt::Display> fmt::Debug for Subspace<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{:?}", self.basis)
    }
}

/// Rank of a matrix.
pub fn rank<S: Scalar>(m: &Matrix<S>) -> usize {
    rref_with_pivots(m).1.len()
}
