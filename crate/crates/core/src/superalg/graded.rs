use std::fmt;

use crate::exactlin::{Field, Scalar, Subspace, SubspaceError};

/// A graded subspace `A = A_0 ⊕ A_1`. Both parts live in the full ambient
/// space; `even` is supported on even coordinates and `odd` on odd ones.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GradedSubspace<S> {
    even: Subspace<S>,
    odd: Subspace<S>,
}

impl<S: Scalar> GradedSubspace<S> {
    /// Pairs two homogeneous parts. The caller guarantees their supports.
    pub fn new(even: Subspace<S>, odd: Subspace<S>) -> Self {
        assert_eq!(even.ambient_dim(), odd.ambient_dim());
        GradedSubspace { even, odd }
    }

    pub fn zero(ambient: usize) -> Self {
        GradedSubspace { even: Subspace::zero(ambient), odd: Subspace::zero(ambient) }
    }

    pub fn even(&self) -> &Subspace<S> {
        &self.even
    }

    pub fn odd(&self) -> &Subspace<S> {
        &self.odd
    }

    pub fn part(&self, p: crate::superalg::Parity) -> &Subspace<S> {
        match p {
            crate::superalg::Parity::Even => &self.even,
            crate::superalg::Parity::Odd => &self.odd,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.even.ambient_dim()
    }

    pub fn dim(&self) -> usize {
        self.even.dim() + self.odd.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Even basis vectors followed by odd ones.
    pub fn basis_vectors(&self) -> Vec<Vec<S>> {
        let mut v = self.even.basis_vectors();
        v.extend(self.odd.basis_vectors());
        v
    }

    /// The underlying ungraded subspace.
    pub fn total(&self) -> Subspace<S> {
        self.even.sum(&self.odd).expect("same ambient")
    }

    pub fn sum(&self, other: &Self) -> Result<Self, SubspaceError> {
        Ok(GradedSubspace { even: self.even.sum(&other.even)?, odd: self.odd.sum(&other.odd)? })
    }

    pub fn intersect<F: Field<Elem = S>>(&self, field: &F, other: &Self) -> Result<Self, SubspaceError> {
        Ok(GradedSubspace { even: self.even.intersect(field, &other.even)?, odd: self.odd.intersect(field, &other.odd)? })
    }

    pub fn contains(&self, other: &Self) -> Result<bool, SubspaceError> {
        Ok(self.even.contains(&other.even)? && self.odd.contains(&other.odd)?)
    }

    /// A graded complement of `self` inside `outer`, built partwise by
    /// [`Subspace::complement_in`].
    pub fn complement_in(&self, outer: &Self) -> Result<Self, SubspaceError> {
        Ok(GradedSubspace { even: self.even.complement_in(&outer.even)?, odd: self.odd.complement_in(&outer.odd)? })
    }

    /// Sort key used for canonical ideal lists: dimension, then basis.
    pub fn canonical_key(&self) -> (usize, Subspace<S>) {
        (self.dim(), self.total())
    }
}

impl<S: fmt::Display> fmt::Debug for GradedSubspace<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graded {{ even: {:?}, odd: {:?} }}", self.even, self.odd)
    }
}
