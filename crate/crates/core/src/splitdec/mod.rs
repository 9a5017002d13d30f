//! Root-space decomposition with respect to a given abelian graded
//! subalgebra `H`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::exactlin::{rank, rational_eigenvalues, Field, FieldError, Matrix, Scalar, Subspace};
use crate::superalg::{fmt_vec, GradedSubspace, Parity, Superalgebra};


/// A functional on `H_0`, stored as its values on the ordered basis of
/// `H_0` taken from the Cartan input.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root<S>(pub Vec<S>);

impl<S: Scalar> Root<S> {
    pub fn values(&self) -> &[S] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    pub fn neg(&self) -> Self {
        Root(self.0.iter().map(|x| x.neg()).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a.add(b)).collect())
    }
}

impl<S: fmt::Display> fmt::Display for Root<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            write!(f, "{}", self.0[0])
        } else {
            write!(f, "{}", fmt_vec(&self.0))
        }
    }
}

impl<S: fmt::Display> fmt::Debug for Root<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Root({self})")
    }
}

/// Generators of `H`, each homogeneous.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanInput<S> {
    pub vectors: Vec<Vec<S>>,
}

impl<S> CartanInput<S> {
    pub fn new(vectors: Vec<Vec<S>>) -> Self {
        CartanInput { vectors }
    }
}

/// Why an input fails to give a split decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotSplitReason<S: Scalar> {
    /// `R_h` restricted to a joint eigenspace is not diagonalizable over
    /// the base field.
    NotDiagonalizable {
        generator: usize,
        piece_dim: usize,
        covered_dim: usize,
        eigenvalues: Vec<S>,
    },
    /// The zero weight space is larger than `H`; `extra` spans a complement
    /// of `H` inside it.
    ZeroSpaceExceedsH { extra: Vec<Vec<S>>, extra_names: Vec<String> },
    /// A joint eigenspace is not invariant under the next operator; only
    /// possible when the right multiplications fail to commute.
    NotInvariant { generator: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SplitError<S: Scalar> {
    #[error("algebra has not been validated")]
    NotValidated,
    #[error("Cartan vector {index} has length {got}, expected {dim}")]
    Dimension { index: usize, got: usize, dim: usize },
    #[error("Cartan vector {index} is not homogeneous: {vector:?}")]
    NotGraded { index: usize, vector: Vec<S> },
    #[error("Cartan vectors are linearly dependent")]
    DependentCartan,
    #[error("Cartan vectors {a} and {b} do not commute: product {product:?}")]
    NotAbelian { a: usize, b: usize, product: Vec<S> },
    #[error("not split: {0}")]
    NotSplit(NotSplitReason<S>),
    #[error(transparent)]
    Field(#[from] FieldError),
}

impl<S: Scalar> fmt::Display for NotSplitReason<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotSplitReason::NotDiagonalizable { generator, piece_dim, covered_dim, eigenvalues } => write!(
                f,
                "right multiplication by Cartan vector {generator} covers only {covered_dim} of {piece_dim} dimensions over the base field (eigenvalues {})",
                fmt_vec(eigenvalues)
            ),
            NotSplitReason::ZeroSpaceExceedsH { extra_names, .. } => {
                write!(f, "zero weight space is larger than H; extra vectors: {}", extra_names.join(", "))
            }
            NotSplitReason::NotInvariant { generator } => {
                write!(f, "eigenspace not invariant under Cartan vector {generator}")
            }
        }
    }
}

/// The graded root space `L_α = L_{α,0} ⊕ L_{α,1}`.
#[derive(Clone, PartialEq, Eq)]
pub struct RootSpace<S> {
    pub root: Root<S>,
    pub space: GradedSubspace<S>,
}

impl<S: Scalar> RootSpace<S> {
    pub fn slot(&self, p: Parity) -> &Subspace<S> {
        self.space.part(p)
    }
}

impl<S: Scalar> fmt::Debug for RootSpace<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} -> {:?}", self.root, self.space)
    }
}

/// `L = H ⊕ ⊕_α L_α`.
#[derive(Clone)]
pub struct SplitDecomposition<'a, F: Field> {
    algebra: &'a Superalgebra<F>,
    cartan: CartanInput<F::Elem>,
    h: GradedSubspace<F::Elem>,
    h0_basis: Vec<Vec<F::Elem>>,
    roots: Vec<RootSpace<F::Elem>>,
    index: BTreeMap<Root<F::Elem>, usize>,
}

impl<F: Field> fmt::Debug for SplitDecomposition<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SplitDecomposition").field("h", &self.h).field("roots", &self.roots).finish()
    }
}

/// Failure of `[L_{α,i}, L_{β,j}] ⊆ L_{α+β,i+j}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitFactViolation<S: Scalar> {
    pub left: (Root<S>, Parity),
    pub right: (Root<S>, Parity),
    pub product: Vec<S>,
}

/// Decomposes `alg` under the right multiplications by the even Cartan
/// generators.
pub fn split<'a, F: Field>(
    alg: &'a Superalgebra<F>,
    cartan: &CartanInput<F::Elem>,
) -> Result<SplitDecomposition<'a, F>, SplitError<F::Elem>> {
    if !alg.is_validated() {
        return Err(SplitError::NotValidated);
    }
    split_unvalidated(alg, cartan)
}

/// Same as [`split`] without requiring a validated table. Meant for
/// diagnosing perturbed tables; nothing downstream may assume the identity.
pub fn split_unvalidated<'a, F: Field>(
    alg: &'a Superalgebra<F>,
    cartan: &CartanInput<F::Elem>,
) -> Result<SplitDecomposition<'a, F>, SplitError<F::Elem>> {
    let n = alg.dim();
    let field = alg.field();
    let mut parities = Vec::new();
    for (index, v) in cartan.vectors.iter().enumerate() {
        if v.len() != n {
            return Err(SplitError::Dimension { index, got: v.len(), dim: n });
        }
        match alg.homogeneous_parity(v) {
            Some(p) => parities.push(p),
            None if v.iter().all(|c| c.is_zero()) => return Err(SplitError::DependentCartan),
            None => return Err(SplitError::NotGraded { index, vector: v.clone() }),
        }
    }
    if rank(&Matrix::from_rows_with_cols(cartan.vectors.clone(), n)) < cartan.vectors.len() {
        return Err(SplitError::DependentCartan);
    }
    for (a, x) in cartan.vectors.iter().enumerate() {
        for (b, y) in cartan.vectors.iter().enumerate() {
            let p = alg.mul(x, y);
            if p.iter().any(|c| !c.is_zero()) {
                return Err(SplitError::NotAbelian { a, b, product: p });
            }
        }
    }
    let h0_idx: Vec<usize> = (0..cartan.vectors.len()).filter(|&i| parities[i] == Parity::Even).collect();
    let h0_basis: Vec<Vec<F::Elem>> = h0_idx.iter().map(|&i| cartan.vectors[i].clone()).collect();
    let h = alg.graded_span(cartan.vectors.clone());

    // Joint eigenspaces, refined one operator at a time and separately on
    // the two homogeneous components.
    let mut pieces: Vec<(Vec<F::Elem>, Parity, Subspace<F::Elem>)> = Vec::new();
    for p in Parity::BOTH {
        let coords = Subspace::span(n, (0..n).filter(|&i| alg.parity()[i] == p).map(|i| alg.basis_vector(i)).collect());
        if !coords.is_zero() {
            pieces.push((Vec::new(), p, coords));
        }
    }
    for (g, hvec) in h0_idx.iter().zip(&h0_basis) {
        let r = alg.right_mult_matrix(hvec);
        let mut next = Vec::new();
        for (tuple, p, piece) in pieces {
            let basis = piece.basis_vectors();
            let d = basis.len();
            // Row r of `t` holds the coordinates of R_h(basis[r]).
            let mut rows = Vec::with_capacity(d);
            for b in &basis {
                let image = r.mul_vec(field, b);
                let coords = piece.coordinates(&image).ok_or(SplitError::NotSplit(NotSplitReason::NotInvariant { generator: *g }))?;
                rows.push(coords);
            }
            let t = Matrix::from_rows_with_cols(rows, d).transpose();
            let eig = rational_eigenvalues(field, &t)?;
            if !eig.is_split(d) {
                return Err(SplitError::NotSplit(NotSplitReason::NotDiagonalizable {
                    generator: *g,
                    piece_dim: d,
                    covered_dim: eig.covered_dim,
                    eigenvalues: eig.pairs.iter().map(|(l, _)| l.clone()).collect(),
                }));
            }
            for (lambda, sub) in eig.pairs {
                let vecs = sub.basis_vectors().iter().map(|c| piece.combine(field, c)).collect();
                let mut tuple = tuple.clone();
                tuple.push(lambda);
                next.push((tuple, p, Subspace::span(n, vecs)));
            }
        }
        pieces = next;
    }

    let zero = field.zero();
    let mut zero_parts = [Subspace::zero(n), Subspace::zero(n)];
    let mut grouped: BTreeMap<Root<F::Elem>, [Subspace<F::Elem>; 2]> = BTreeMap::new();
    for (tuple, p, space) in pieces {
        if tuple.iter().all(|x| *x == zero) {
            zero_parts[p as usize] = space;
        } else {
            grouped.entry(Root(tuple)).or_insert_with(|| [Subspace::zero(n), Subspace::zero(n)])[p as usize] = space;
        }
    }
    let [z0, z1] = zero_parts;
    let zero_space = GradedSubspace::new(z0, z1);
    if zero_space != h {
        let extra = h.complement_in(&zero_space).expect("same ambient").basis_vectors();
        let extra_names = extra.iter().map(|v| alg.describe(v)).collect();
        return Err(SplitError::NotSplit(NotSplitReason::ZeroSpaceExceedsH { extra, extra_names }));
    }
    let roots: Vec<RootSpace<F::Elem>> =
        grouped.into_iter().map(|(root, [e, o])| RootSpace { root, space: GradedSubspace::new(e, o) }).collect();
    let index = roots.iter().enumerate().map(|(i, r)| (r.root.clone(), i)).collect();
    Ok(SplitDecomposition { algebra: alg, cartan: cartan.clone(), h, h0_basis, roots, index })
}

impl<'a, F: Field> SplitDecomposition<'a, F> {
    pub fn algebra(&self) -> &'a Superalgebra<F> {
        self.algebra
    }

    pub fn cartan(&self) -> &CartanInput<F::Elem> {
        &self.cartan
    }

    pub fn h(&self) -> &GradedSubspace<F::Elem> {
        &self.h
    }

    pub fn h0_basis(&self) -> &[Vec<F::Elem>] {
        &self.h0_basis
    }

    /// Root spaces in lexicographic order of their roots.
    pub fn root_spaces(&self) -> &[RootSpace<F::Elem>] {
        &self.roots
    }

    pub fn roots(&self) -> Vec<Root<F::Elem>> {
        self.roots.iter().map(|r| r.root.clone()).collect()
    }

    pub fn is_root(&self, r: &Root<F::Elem>) -> bool {
        self.index.contains_key(r)
    }

    pub fn root_space(&self, r: &Root<F::Elem>) -> Option<&RootSpace<F::Elem>> {
        self.index.get(r).map(|&i| &self.roots[i])
    }

    /// `L_{α,p}`, zero when `α` is not a root. The zero functional gives
    /// `H_p`.
    pub fn slot(&self, r: &Root<F::Elem>, p: Parity) -> Subspace<F::Elem> {
        if r.is_zero() {
            return self.h.part(p).clone();
        }
        match self.root_space(r) {
            Some(rs) => rs.slot(p).clone(),
            None => Subspace::zero(self.algebra.dim()),
        }
    }

    /// Roots with `L_{α,p} != 0`.
    pub fn roots_of_parity(&self, p: Parity) -> Vec<Root<F::Elem>> {
        self.roots.iter().filter(|r| !r.slot(p).is_zero()).map(|r| r.root.clone()).collect()
    }

    /// The value of a root on `H_0` basis vector `i`.
    pub fn root_value(&self, r: &Root<F::Elem>, i: usize) -> F::Elem {
        r.0[i].clone()
    }

    /// Checks `[L_{α,i}, L_{β,j}] ⊆ L_{α+β,i+j}` over all graded slots,
    /// `H` counted as the zero root.
    pub fn verify_split_facts(&self) -> Vec<SplitFactViolation<F::Elem>> {
        let alg = self.algebra;
        let zero_root = Root(vec![alg.field().zero(); self.h0_basis.len()]);
        let mut all: Vec<Root<F::Elem>> = vec![zero_root];
        all.extend(self.roots());
        let mut out = Vec::new();
        for a in &all {
            for pa in Parity::BOTH {
                let sa = self.slot(a, pa);
                if sa.is_zero() {
                    continue;
                }
                for b in &all {
                    for pb in Parity::BOTH {
                        let sb = self.slot(b, pb);
                        if sb.is_zero() {
                            continue;
                        }
                        let target = self.slot(&a.add(b), pa + pb);
                        for x in sa.basis_vectors() {
                            for y in sb.basis_vectors() {
                                let p = alg.mul(&x, &y);
                                if !target.contains_vector(&p) {
                                    out.push(SplitFactViolation { left: (a.clone(), pa), right: (b.clone(), pb), product: p });
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Direct-sum bookkeeping: dimensions add up and the pieces span.
    pub fn is_direct_sum(&self) -> bool {
        let n = self.algebra.dim();
        let total: usize = self.h.dim() + self.roots.iter().map(|r| r.space.dim()).sum::<usize>();
        let mut acc = self.h.clone();
        for r in &self.roots {
            acc = acc.sum(&r.space).expect("same ambient");
        }
        total == n && acc.dim() == n
    }

    /// Classifies every occupied graded slot against `frak_i`.
    pub fn partition_roots(&self, frak_i: &GradedSubspace<F::Elem>) -> RootPartition<F::Elem> {
        let field = self.algebra.field();
        let mut lambda_i = [Vec::new(), Vec::new()];
        let mut lambda_not_i = [Vec::new(), Vec::new()];
        let mut unclassified = Vec::new();
        let mut maximal_length = true;
        for rs in &self.roots {
            for p in Parity::BOTH {
                let slot = rs.slot(p);
                if slot.is_zero() {
                    continue;
                }
                if slot.dim() > 1 {
                    maximal_length = false;
                }
                let part = frak_i.part(p);
                let meet = slot.intersect(field, part).expect("same ambient");
                if meet.dim() == slot.dim() {
                    lambda_i[p as usize].push(rs.root.clone());
                } else if meet.is_zero() {
                    lambda_not_i[p as usize].push(rs.root.clone());
                } else {
                    unclassified.push((rs.root.clone(), p));
                }
            }
        }
        RootPartition { frak_i: frak_i.clone(), lambda_i, lambda_not_i, unclassified, maximal_length }
    }
}

/// The sets `Λ^𝔦_p` and `Λ^¬𝔦_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootPartition<S: Scalar> {
    pub frak_i: GradedSubspace<S>,
    /// Indexed by parity bit, each sorted.
    pub lambda_i: [Vec<Root<S>>; 2],
    pub lambda_not_i: [Vec<Root<S>>; 2],
    /// Slots meeting `frak_i` in a proper nonzero subspace.
    pub unclassified: Vec<(Root<S>, Parity)>,
    pub maximal_length: bool,
}

/// Which side of the partition a connection runs through.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Upsilon {
    I,
    NotI,
}

impl fmt::Display for Upsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Upsilon::I => write!(f, "I"),
            Upsilon::NotI => write!(f, "notI"),
        }
    }
}

impl<S: Scalar> RootPartition<S> {
    pub fn is_partial(&self) -> bool {
        !self.unclassified.is_empty()
    }

    pub fn set(&self, u: Upsilon, p: Parity) -> &[Root<S>] {
        match u {
            Upsilon::I => &self.lambda_i[p as usize],
            Upsilon::NotI => &self.lambda_not_i[p as usize],
        }
    }

    pub fn contains(&self, u: Upsilon, r: &Root<S>, p: Parity) -> bool {
        self.set(u, p).binary_search(r).is_ok()
    }

    /// `Λ^Υ = Λ^Υ_0 ∪ Λ^Υ_1` as a sorted set of roots.
    pub fn union(&self, u: Upsilon) -> Vec<Root<S>> {
        let mut v: Vec<Root<S>> = self.set(u, Parity::Even).iter().chain(self.set(u, Parity::Odd)).cloned().collect();
        v.sort();
        v.dedup();
        v
    }

    /// Graded slots `(α, p)` with `α ∈ Λ^Υ_p`, sorted.
    pub fn slots(&self, u: Upsilon) -> Vec<(Root<S>, Parity)> {
        let mut v: Vec<(Root<S>, Parity)> =
            Parity::BOTH.iter().flat_map(|&p| self.set(u, p).iter().map(move |r| (r.clone(), p))).collect();
        v.sort();
        v
    }

    pub fn card(&self, u: Upsilon) -> usize {
        self.union(u).len()
    }
}
