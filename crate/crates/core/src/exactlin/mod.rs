//! Exact linear algebra over the rationals and prime fields.

pub mod field;
pub mod matrix;
pub mod poly;
pub mod subspace;

pub use field::{Field, FieldDescriptor, FieldError, PrimeField, Rationals, Residue, Scalar};
pub use matrix::Matrix;
pub use subspace::{rank, Subspace, SubspaceError};

/// Reduced row echelon form with zero rows removed.
pub fn rref<S: Scalar>(m: &Matrix<S>) -> Matrix<S> {
    rref_with_pivots(m).0
}

/// Reduced row echelon form (zero rows removed) and its pivot columns.
pub fn rref_with_pivots<S: Scalar>(m: &Matrix<S>) -> (Matrix<S>, Vec<usize>) {
    let mut rows = m.row_vecs();
    let cols = m.cols();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        for x in rows[r].iter_mut().skip(c) {
            *x = x.mul(&inv);
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let factor = rows[i][c].clone();
            for k in c..cols {
                if !rows[r][k].is_zero() {
                    rows[i][k] = rows[i][k].sub(&factor.mul(&rows[r][k]));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (Matrix::from_rows_with_cols(rows, cols), pivots)
}

/// Right null space `{x : m x = 0}`.
pub fn kernel<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Subspace<F::Elem> {
    let cols = m.cols();
    let (red, pivots) = rref_with_pivots(m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let vectors = free
        .iter()
        .map(|&f| {
            let mut v = vec![field.zero(); cols];
            v[f] = field.one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = red.get(r, f).neg();
            }
            v
        })
        .collect();
    Subspace::span(cols, vectors)
}

/// Eigenvalues of a square matrix that lie in the base field, with their
/// true eigenspaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldEigen<S: Scalar> {
    /// Sorted by eigenvalue.
    pub pairs: Vec<(S, Subspace<S>)>,
    /// Sum of the eigenspace dimensions. Less than the matrix size means the
    /// operator is not diagonalizable over the field.
    pub covered_dim: usize,
}

impl<S: Scalar> FieldEigen<S> {
    pub fn is_split(&self, size: usize) -> bool {
        self.covered_dim == size
    }
}

/// Every eigenvalue of `m` lying in the field together with `ker(m - lambda I)`.
/// Over the rationals candidates come from the rational root theorem applied
/// to the characteristic polynomial; over a prime field every residue is
/// tried.
pub fn rational_eigenvalues<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Result<FieldEigen<F::Elem>, FieldError> {
    assert_eq!(m.rows(), m.cols(), "eigenvalues of a non-square matrix");
    if m.rows() == 0 {
        return Ok(FieldEigen { pairs: Vec::new(), covered_dim: 0 });
    }
    let cp = poly::char_poly(field, m);
    let mut pairs = Vec::new();
    for lambda in field.roots(&cp)? {
        let space = kernel(field, &m.shifted(&lambda));
        debug_assert!(!space.is_zero());
        pairs.push((lambda, space));
    }
    pairs.sort_by(|a, b| a.0.cmp(&b.0));
    let covered_dim = pairs.iter().map(|(_, s)| s.dim()).sum();
    Ok(FieldEigen { pairs, covered_dim })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn q(v: i64) -> BigRational {
        Rationals.from_i64(v)
    }

    fn qm(rows: &[&[i64]]) -> Matrix<BigRational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect())
    }

    fn e(n: usize, i: usize) -> Vec<BigRational> {
        (0..n).map(|k| q((k == i) as i64)).collect()
    }

    #[test]
    fn rref_examples() {
        let id = Matrix::identity(&Rationals, 2);
        assert_eq!(rref(&id), id);
        assert_eq!(rref(&qm(&[&[2, 4], &[1, 2]])), qm(&[&[1, 2]]));
        assert_eq!(rref(&qm(&[&[0, 1], &[1, 0]])), qm(&[&[1, 0], &[0, 1]]));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel(&Rationals, &Matrix::zeros(&Rationals, 3, 3)), Subspace::full(&Rationals, 3));
        assert!(kernel(&Rationals, &Matrix::identity(&Rationals, 3)).is_zero());
        assert_eq!(kernel(&Rationals, &qm(&[&[1, -1]])), Subspace::span(2, vec![vec![q(1), q(1)]]));
    }

    #[test]
    fn subspace_examples() {
        let e1 = Subspace::span(3, vec![e(3, 0)]);
        let e2 = Subspace::span(3, vec![e(3, 1)]);
        let both = e1.sum(&e2).unwrap();
        assert_eq!(both, Subspace::span(3, vec![e(3, 0), e(3, 1)]));
        assert_eq!(both.intersect(&Rationals, &both).unwrap(), both);
        let diag = Subspace::span(3, vec![vec![q(1), q(1), q(0)]]);
        assert!(both.contains(&diag).unwrap());
        assert!(!e1.contains(&diag).unwrap());
        assert!(matches!(e1.sum(&Subspace::zero(2)), Err(SubspaceError::AmbientMismatch(3, 2))));
        assert_eq!(e1.intersect(&Rationals, &e2).unwrap(), Subspace::zero(3));
        assert_eq!(e1.complement_in(&both).unwrap(), e2);
    }

    #[test]
    fn eigen_diagonal_and_rotation() {
        let d = qm(&[&[2, 0, 0], &[0, -2, 0], &[0, 0, 0]]);
        let ev = rational_eigenvalues(&Rationals, &d).unwrap();
        assert_eq!(ev.covered_dim, 3);
        let expect = vec![
            (q(-2), Subspace::span(3, vec![e(3, 1)])),
            (q(0), Subspace::span(3, vec![e(3, 2)])),
            (q(2), Subspace::span(3, vec![e(3, 0)])),
        ];
        assert_eq!(ev.pairs, expect);

        let rot = qm(&[&[0, -1], &[1, 0]]);
        let ev = rational_eigenvalues(&Rationals, &rot).unwrap();
        assert!(ev.pairs.is_empty());
        assert_eq!(ev.covered_dim, 0);
    }

    #[test]
    fn eigen_over_prime_field_finds_roots_outside_q() {
        // x^2 + 1 splits mod 5 with roots 2 and 3.
        let f = PrimeField::new(5).unwrap();
        let rot = Matrix::from_rows(vec![vec![f.zero(), f.from_i64(-1)], vec![f.one(), f.zero()]]);
        let ev = rational_eigenvalues(&f, &rot).unwrap();
        let vals: Vec<_> = ev.pairs.iter().map(|p| p.0).collect();
        assert_eq!(vals, vec![f.elem(2), f.elem(3)]);
        assert!(ev.is_split(2));
    }

    #[test]
    fn jordan_block_is_not_covered() {
        let j = qm(&[&[1, 1], &[0, 1]]);
        let ev = rational_eigenvalues(&Rationals, &j).unwrap();
        assert_eq!(ev.pairs.len(), 1);
        assert_eq!(ev.covered_dim, 1);
    }

    fn small_matrix() -> impl Strategy<Value = Matrix<BigRational>> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-3i64..=3, r * c).prop_map(move |v| Matrix::new(r, c, v.into_iter().map(q).collect()))
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_matrix()) {
            prop_assert_eq!(rank(&m) + kernel(&Rationals, &m).dim(), m.cols());
            for v in kernel(&Rationals, &m).basis_vectors() {
                prop_assert!(m.mul_vec(&Rationals, &v).iter().all(Scalar::is_zero));
            }
        }

        #[test]
        fn rref_idempotent(m in small_matrix()) {
            let r = rref(&m);
            prop_assert_eq!(rref(&r), r);
        }

        #[test]
        fn modular_dimension_law(a in small_matrix(), b in small_matrix()) {
            let n = a.cols().min(b.cols());
            let cut = |m: &Matrix<BigRational>| Subspace::span(n, m.row_vecs().into_iter().map(|r| r[..n].to_vec()).collect());
            let (sa, sb) = (cut(&a), cut(&b));
            let s = sa.sum(&sb).unwrap();
            let i = sa.intersect(&Rationals, &sb).unwrap();
            prop_assert_eq!(sa.dim() + sb.dim(), s.dim() + i.dim());
            prop_assert!(sa.contains(&i).unwrap() && sb.contains(&i).unwrap());
        }

        #[test]
        fn diagonal_eigenvalues_are_exact(diag in proptest::collection::vec(-4i64..=4, 1..6)) {
            let n = diag.len();
            let mut m = Matrix::zeros(&Rationals, n, n);
            for (i, &d) in diag.iter().enumerate() {
                m.set(i, i, q(d));
            }
            let ev = rational_eigenvalues(&Rationals, &m).unwrap();
            prop_assert_eq!(ev.covered_dim, n);
            for (lambda, space) in &ev.pairs {
                let coords: Vec<Vec<BigRational>> =
                    (0..n).filter(|&i| &q(diag[i]) == lambda).map(|i| e(n, i)).collect();
                prop_assert_eq!(space, &Subspace::span(n, coords));
            }
        }
    }
}
