//! Leibniz superalgebras given by structure constants.

mod graded;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactlin::{kernel, Field, Matrix, Scalar, Subspace};

pub use graded::GradedSubspace;

/// Degree in the two-element group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(b: u8) -> Option<Parity> {
        match b {
            0 => Some(Parity::Even),
            1 => Some(Parity::Odd),
            _ => None,
        }
    }

    pub fn bit(self) -> u8 {
        self as u8
    }

    /// `(-1)^(self * other)` is negative.
    pub fn sign_flip(self, other: Parity) -> bool {
        self == Parity::Odd && other == Parity::Odd
    }

    pub fn flip(self) -> Parity {
        self + Parity::Odd
    }

    pub const BOTH: [Parity; 2] = [Parity::Even, Parity::Odd];
}

impl std::ops::Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl From<Parity> for u8 {
    fn from(p: Parity) -> u8 {
        p.bit()
    }
}

impl TryFrom<u8> for Parity {
    type Error = String;
    fn try_from(b: u8) -> Result<Parity, String> {
        Parity::from_bit(b).ok_or_else(|| format!("parity must be 0 or 1, got {b}"))
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bit())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("vector of length {got} does not match dimension {dim}")]
    DimensionMismatch { got: usize, dim: usize },
    #[error("vector {0} is not homogeneous")]
    NotHomogeneous(String),
    #[error("change of basis is singular")]
    SingularChange,
    #[error("expected {expected} basis names, got {got}")]
    NameCount { expected: usize, got: usize },
}

/// A failure of the superalgebra axioms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation<S: Scalar> {
    /// `c_ij^k` is nonzero although `p(k) != p(i) + p(j)`.
    Grading { i: usize, j: usize, k: usize },
    /// The super Leibniz identity fails on `(b_i, b_j, b_k)`; `residual` is
    /// `[x,[y,z]] - [[x,y],z] + s[[x,z],y]`.
    Identity { i: usize, j: usize, k: usize, residual: Vec<S> },
}

impl<S: Scalar> fmt::Display for Violation<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Grading { i, j, k } => write!(f, "grading: [b{i}, b{j}] has a b{k} component of the wrong parity"),
            Violation::Identity { i, j, k, residual } => {
                write!(f, "Leibniz identity fails on (b{i}, b{j}, b{k}), residual {}", fmt_vec(residual))
            }
        }
    }
}

pub(crate) fn fmt_vec<S: fmt::Display>(v: &[S]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// Finite-dimensional superalgebra with bilinear product
/// `[b_i, b_j] = sum_k c_ij^k b_k`.
#[derive(Clone, PartialEq, Eq)]
pub struct Superalgebra<F: Field> {
    field: F,
    parity: Vec<Parity>,
    // Row-major over (i, j); each entry sorted by k, zeros dropped.
    table: Vec<Vec<(usize, F::Elem)>>,
    names: Option<Vec<String>>,
    validated: bool,
}

impl<F: Field> fmt::Debug for Superalgebra<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Superalgebra")
            .field("field", &self.field.descriptor())
            .field("parity", &self.parity)
            .field("products", &self.entries().len())
            .field("validated", &self.validated)
            .finish()
    }
}

impl<F: Field> Superalgebra<F> {
    /// Builds an algebra from `(i, j, k, c)` entries meaning `c_ij^k = c`.
    /// Repeated `(i, j, k)` entries are added. No axiom is checked beyond
    /// index ranges; call [`Superalgebra::validate`].
    pub fn new(
        field: F,
        parity: Vec<Parity>,
        entries: impl IntoIterator<Item = (usize, usize, usize, F::Elem)>,
    ) -> Result<Self, AlgebraError> {
        let dim = parity.len();
        let mut table: Vec<Vec<(usize, F::Elem)>> = vec![Vec::new(); dim * dim];
        for (i, j, k, c) in entries {
            for index in [i, j, k] {
                if index >= dim {
                    return Err(AlgebraError::IndexOutOfRange { index, dim });
                }
            }
            let cell = &mut table[i * dim + j];
            match cell.iter_mut().find(|(kk, _)| *kk == k) {
                Some((_, v)) => *v = v.add(&c),
                None => cell.push((k, c)),
            }
        }
        for cell in &mut table {
            cell.retain(|(_, c)| !c.is_zero());
            cell.sort_by_key(|(k, _)| *k);
        }
        Ok(Superalgebra { field, parity, table, names: None, validated: false })
    }

    /// The algebra with all products zero.
    pub fn abelian(field: F, parity: Vec<Parity>) -> Self {
        Self::new(field, parity, std::iter::empty()).expect("no entries")
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self, AlgebraError> {
        if names.len() != self.dim() {
            return Err(AlgebraError::NameCount { expected: self.dim(), got: names.len() });
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    pub fn parity(&self) -> &[Parity] {
        &self.parity
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn basis_name(&self, i: usize) -> String {
        match &self.names {
            Some(n) => n[i].clone(),
            None => format!("b{i}"),
        }
    }

    /// Renders a vector using basis names, e.g. `2*u1 - e2`.
    pub fn describe(&self, v: &[F::Elem]) -> String {
        let one = self.field.one();
        let minus_one = one.neg();
        let mut out = String::new();
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let name = self.basis_name(i);
            let term = if *c == one {
                name
            } else if *c == minus_one {
                format!("-{name}")
            } else {
                format!("{c}*{name}")
            };
            match (out.is_empty(), term.strip_prefix('-')) {
                (true, _) => out.push_str(&term),
                (false, Some(rest)) => {
                    out.push_str(" - ");
                    out.push_str(rest);
                }
                (false, None) => {
                    out.push_str(" + ");
                    out.push_str(&term);
                }
            }
        }
        if out.is_empty() {
            "0".into()
        } else {
            out
        }
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    /// Nonzero structure constants as `(i, j, [(k, c)])`, sorted.
    pub fn entries(&self) -> Vec<(usize, usize, &[(usize, F::Elem)])> {
        let n = self.dim();
        (0..n * n)
            .filter(|&x| !self.table[x].is_empty())
            .map(|x| (x / n, x % n, self.table[x].as_slice()))
            .collect()
    }

    pub fn basis_product_sparse(&self, i: usize, j: usize) -> &[(usize, F::Elem)] {
        &self.table[i * self.dim() + j]
    }

    /// `[b_i, b_j]` as a dense vector.
    pub fn basis_product(&self, i: usize, j: usize) -> Vec<F::Elem> {
        let mut out = self.zero_vector();
        for (k, c) in self.basis_product_sparse(i, j) {
            out[*k] = c.clone();
        }
        out
    }

    pub fn zero_vector(&self) -> Vec<F::Elem> {
        vec![self.field.zero(); self.dim()]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<F::Elem> {
        let mut v = self.zero_vector();
        v[i] = self.field.one();
        v
    }

    fn check_len(&self, v: &[F::Elem]) -> Result<(), AlgebraError> {
        if v.len() == self.dim() {
            Ok(())
        } else {
            Err(AlgebraError::DimensionMismatch { got: v.len(), dim: self.dim() })
        }
    }

    /// Bilinear product of two vectors.
    pub fn product(&self, x: &[F::Elem], y: &[F::Elem]) -> Result<Vec<F::Elem>, AlgebraError> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.mul(x, y))
    }

    pub(crate) fn mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let n = self.dim();
        let mut out = self.zero_vector();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let cell = &self.table[i * n + j];
                if cell.is_empty() {
                    continue;
                }
                let s = xi.mul(yj);
                for (k, c) in cell {
                    out[*k] = out[*k].add(&s.mul(c));
                }
            }
        }
        out
    }

    /// Matrix of `x -> [x, h]`; column `i` holds `[b_i, h]`.
    pub fn right_mult_matrix(&self, h: &[F::Elem]) -> Matrix<F::Elem> {
        self.mult_matrix(|b| self.mul(b, h))
    }

    /// Matrix of `x -> [h, x]`.
    pub fn left_mult_matrix(&self, h: &[F::Elem]) -> Matrix<F::Elem> {
        self.mult_matrix(|b| self.mul(h, b))
    }

    fn mult_matrix(&self, f: impl Fn(&[F::Elem]) -> Vec<F::Elem>) -> Matrix<F::Elem> {
        let n = self.dim();
        let mut m = Matrix::zeros(&self.field, n, n);
        for i in 0..n {
            let col = f(&self.basis_vector(i));
            for (k, c) in col.into_iter().enumerate() {
                m.set(k, i, c);
            }
        }
        m
    }

    /// Parity of a nonzero homogeneous vector, `None` for mixed or zero
    /// vectors.
    pub fn homogeneous_parity(&self, v: &[F::Elem]) -> Option<Parity> {
        let mut seen = None;
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match seen {
                None => seen = Some(self.parity[i]),
                Some(p) if p != self.parity[i] => return None,
                _ => {}
            }
        }
        seen
    }

    /// Even and odd components of a vector.
    pub fn split_parts(&self, v: &[F::Elem]) -> (Vec<F::Elem>, Vec<F::Elem>) {
        let mut even = self.zero_vector();
        let mut odd = self.zero_vector();
        for (i, c) in v.iter().enumerate() {
            match self.parity[i] {
                Parity::Even => even[i] = c.clone(),
                Parity::Odd => odd[i] = c.clone(),
            }
        }
        (even, odd)
    }

    /// Smallest graded subspace containing the given vectors.
    pub fn graded_span(&self, vectors: impl IntoIterator<Item = Vec<F::Elem>>) -> GradedSubspace<F::Elem> {
        let mut even = Vec::new();
        let mut odd = Vec::new();
        for v in vectors {
            let (e, o) = self.split_parts(&v);
            even.push(e);
            odd.push(o);
        }
        GradedSubspace::new(Subspace::span(self.dim(), even), Subspace::span(self.dim(), odd))
    }

    /// Homogeneous parts of a subspace: `(S ∩ L_0, S ∩ L_1)`.
    pub fn graded_part(&self, s: &Subspace<F::Elem>) -> GradedSubspace<F::Elem> {
        let coord = |p: Parity| {
            Subspace::span(self.dim(), (0..self.dim()).filter(|&i| self.parity[i] == p).map(|i| self.basis_vector(i)).collect())
        };
        let even = s.intersect(&self.field, &coord(Parity::Even)).expect("same ambient");
        let odd = s.intersect(&self.field, &coord(Parity::Odd)).expect("same ambient");
        GradedSubspace::new(even, odd)
    }

    pub fn whole(&self) -> GradedSubspace<F::Elem> {
        self.graded_span((0..self.dim()).map(|i| self.basis_vector(i)))
    }

    /// Checks grading compatibility of every structure constant and the
    /// right super Leibniz identity
    /// `[x,[y,z]] = [[x,y],z] - (-1)^(p(y)p(z)) [[x,z],y]` on all basis
    /// triples. Marks the algebra validated when nothing fails.
    pub fn validate(&mut self) -> Vec<Violation<F::Elem>> {
        let violations = self.violations();
        self.validated = violations.is_empty();
        violations
    }

    /// Consuming form of [`Superalgebra::validate`].
    pub fn validated(mut self) -> Result<Self, Vec<Violation<F::Elem>>> {
        let v = self.validate();
        if v.is_empty() {
            Ok(self)
        } else {
            Err(v)
        }
    }

    pub fn violations(&self) -> Vec<Violation<F::Elem>> {
        let n = self.dim();
        let mut out = Vec::new();
        for (i, j, cell) in self.entries() {
            for (k, _) in cell {
                if self.parity[*k] != self.parity[i] + self.parity[j] {
                    out.push(Violation::Grading { i, j, k: *k });
                }
            }
        }
        let prods: Vec<Vec<F::Elem>> = (0..n * n).map(|x| self.basis_product(x / n, x % n)).collect();
        for i in 0..n {
            let bi = self.basis_vector(i);
            for j in 0..n {
                for k in 0..n {
                    let lhs = self.mul(&bi, &prods[j * n + k]);
                    let t1 = self.mul(&prods[i * n + j], &self.basis_vector(k));
                    let t2 = self.mul(&prods[i * n + k], &self.basis_vector(j));
                    let flip = self.parity[j].sign_flip(self.parity[k]);
                    let residual: Vec<F::Elem> = (0..n)
                        .map(|c| {
                            let r = lhs[c].sub(&t1[c]);
                            if flip {
                                r.sub(&t2[c])
                            } else {
                                r.add(&t2[c])
                            }
                        })
                        .collect();
                    if residual.iter().any(|c| !c.is_zero()) {
                        out.push(Violation::Identity { i, j, k, residual });
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Least graded subspace containing `gens` and closed under
    /// multiplication by the algebra on both sides.
    pub fn generated_ideal(&self, gens: &GradedSubspace<F::Elem>) -> GradedSubspace<F::Elem> {
        let mut w = gens.clone();
        loop {
            let mut vecs = w.basis_vectors();
            for x in w.basis_vectors() {
                for k in 0..self.dim() {
                    let b = self.basis_vector(k);
                    vecs.push(self.mul(&x, &b));
                    vecs.push(self.mul(&b, &x));
                }
            }
            let next = self.graded_span(vecs);
            if next.dim() == w.dim() {
                return w;
            }
            w = next;
        }
    }

    /// Whether `w` is a two-sided ideal, with a violating product if not.
    pub fn ideal_witness(&self, w: &GradedSubspace<F::Elem>) -> Option<Vec<F::Elem>> {
        for x in w.basis_vectors() {
            for k in 0..self.dim() {
                let b = self.basis_vector(k);
                for p in [self.mul(&x, &b), self.mul(&b, &x)] {
                    if !self.graded_contains(w, &p) {
                        return Some(p);
                    }
                }
            }
        }
        None
    }

    pub fn is_ideal(&self, w: &GradedSubspace<F::Elem>) -> bool {
        self.ideal_witness(w).is_none()
    }

    /// Whether `w` is closed under the product.
    pub fn is_subalgebra(&self, w: &GradedSubspace<F::Elem>) -> bool {
        let basis = w.basis_vectors();
        basis.iter().all(|x| basis.iter().all(|y| self.graded_contains(w, &self.mul(x, y))))
    }

    pub fn graded_contains(&self, w: &GradedSubspace<F::Elem>, v: &[F::Elem]) -> bool {
        let (e, o) = self.split_parts(v);
        w.even().contains_vector(&e) && w.odd().contains_vector(&o)
    }

    /// Span of `[x, y]` for `x` in `a` and `y` in `b` (basis vectors).
    pub fn product_space(&self, a: &GradedSubspace<F::Elem>, b: &GradedSubspace<F::Elem>) -> GradedSubspace<F::Elem> {
        let bb = b.basis_vectors();
        let vecs: Vec<Vec<F::Elem>> = a.basis_vectors().iter().flat_map(|x| bb.iter().map(|y| self.mul(x, y))).collect();
        self.graded_span(vecs)
    }

    /// The ideal generated by all `[b_i, b_j] + (-1)^(p_i p_j) [b_j, b_i]`.
    pub fn frak_i(&self) -> GradedSubspace<F::Elem> {
        let n = self.dim();
        let mut gens = Vec::new();
        for i in 0..n {
            for j in i..n {
                let a = self.basis_product(i, j);
                let b = self.basis_product(j, i);
                let flip = self.parity[i].sign_flip(self.parity[j]);
                let g: Vec<F::Elem> = a.iter().zip(&b).map(|(x, y)| if flip { x.sub(y) } else { x.add(y) }).collect();
                if g.iter().any(|c| !c.is_zero()) {
                    gens.push(g);
                }
            }
        }
        self.generated_ideal(&self.graded_span(gens))
    }

    /// `[L, frak_i] = 0`.
    pub fn check_eq1(&self, frak_i: &GradedSubspace<F::Elem>) -> bool {
        let w = frak_i.basis_vectors();
        (0..self.dim()).all(|k| {
            let b = self.basis_vector(k);
            w.iter().all(|x| self.mul(&b, x).iter().all(|c| c.is_zero()))
        })
    }

    /// Elements annihilating every vector of `targets` from both sides.
    pub fn annihilator_of(&self, targets: &[Vec<F::Elem>]) -> GradedSubspace<F::Elem> {
        let n = self.dim();
        let mut rows = Vec::new();
        for t in targets {
            for m in [self.right_mult_matrix(t), self.left_mult_matrix(t)] {
                rows.extend(m.row_vecs());
            }
        }
        let stacked = Matrix::from_rows_with_cols(rows, n);
        self.graded_part(&kernel(&self.field, &stacked))
    }

    /// `{x : [x, L] + [L, x] = 0}`.
    pub fn center(&self) -> GradedSubspace<F::Elem> {
        let basis: Vec<_> = (0..self.dim()).map(|k| self.basis_vector(k)).collect();
        self.annihilator_of(&basis)
    }

    /// `[L, L]`.
    pub fn derived(&self) -> GradedSubspace<F::Elem> {
        let n = self.dim();
        self.graded_span((0..n * n).map(|x| self.basis_product(x / n, x % n)))
    }

    /// Block direct sum; the second summand's indices are shifted by
    /// `self.dim()`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let shift = self.dim();
        let mut parity = self.parity.clone();
        parity.extend(other.parity.iter().copied());
        let mut entries = Vec::new();
        for (i, j, cell) in self.entries() {
            entries.extend(cell.iter().map(|(k, c)| (i, j, *k, c.clone())));
        }
        for (i, j, cell) in other.entries() {
            entries.extend(cell.iter().map(|(k, c)| (i + shift, j + shift, k + shift, c.clone())));
        }
        let mut out = Self::new(self.field.clone(), parity, entries).expect("indices in range");
        out.validated = self.validated && other.validated;
        if self.names.is_some() || other.names.is_some() {
            let mut names: Vec<String> = (0..self.dim()).map(|i| self.basis_name(i)).collect();
            names.extend((0..other.dim()).map(|i| other.basis_name(i)));
            out.names = Some(names);
        }
        out
    }

    /// Change of basis. Column `c` of `p` is the new basis vector `b'_c`
    /// written in the current basis; each column must be homogeneous.
    /// Returns the algebra in the new basis, unvalidated and without names.
    pub fn change_basis(&self, p: &Matrix<F::Elem>) -> Result<Self, AlgebraError> {
        let n = self.dim();
        if p.rows() != n || p.cols() != n {
            return Err(AlgebraError::DimensionMismatch { got: p.rows(), dim: n });
        }
        let inv = p.inverse(&self.field).ok_or(AlgebraError::SingularChange)?;
        let cols: Vec<Vec<F::Elem>> = (0..n).map(|c| p.column(c)).collect();
        let mut parity = Vec::with_capacity(n);
        for (c, v) in cols.iter().enumerate() {
            parity.push(self.homogeneous_parity(v).ok_or_else(|| AlgebraError::NotHomogeneous(format!("column {c}")))?);
        }
        let mut entries = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let prod = self.mul(&cols[i], &cols[j]);
                if prod.iter().all(|c| c.is_zero()) {
                    continue;
                }
                for (k, c) in inv.mul_vec(&self.field, &prod).into_iter().enumerate() {
                    if !c.is_zero() {
                        entries.push((i, j, k, c));
                    }
                }
            }
        }
        Self::new(self.field.clone(), parity, entries)
    }
}

#[cfg(test)]
mod tests;
