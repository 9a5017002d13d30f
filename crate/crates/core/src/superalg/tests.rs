use num_rational::BigRational;
use proptest::prelude::*;

use super::*;
use crate::exactlin::{PrimeField, Rationals};
use crate::iocli::generators::{example1, example2};

type Q = BigRational;

fn q(v: i64) -> Q {
    Rationals.from_i64(v)
}

fn ex1() -> Superalgebra<Rationals> {
    example1(Rationals).validated().unwrap()
}

fn ex2(n: usize) -> Superalgebra<Rationals> {
    example2(Rationals, n).validated().unwrap()
}

fn span_of(alg: &Superalgebra<Rationals>, idx: &[usize]) -> GradedSubspace<Q> {
    alg.graded_span(idx.iter().map(|&i| alg.basis_vector(i)))
}

/// Dense structure constants `c[i][j][k]` copied out of the table.
fn dense(alg: &Superalgebra<Rationals>) -> Vec<Vec<Vec<Q>>> {
    let n = alg.dim();
    (0..n).map(|i| (0..n).map(|j| alg.basis_product(i, j)).collect()).collect()
}

/// Identity residual computed straight from the constants, independent of
/// the vector product routine.
fn residual_oracle(alg: &Superalgebra<Rationals>, i: usize, j: usize, k: usize) -> Vec<Q> {
    let c = dense(alg);
    let n = alg.dim();
    let p = alg.parity();
    let sign = if p[j] == Parity::Odd && p[k] == Parity::Odd { q(-1) } else { q(1) };
    (0..n)
        .map(|t| {
            let mut acc = q(0);
            for m in 0..n {
                acc += &c[j][k][m] * &c[i][m][t];
                acc -= &c[i][j][m] * &c[m][k][t];
                acc += &sign * &c[i][k][m] * &c[m][j][t];
            }
            acc
        })
        .collect()
}

#[test]
fn example1_products() {
    let a = ex1();
    let (u1, u2, u3) = (a.basis_vector(0), a.basis_vector(1), a.basis_vector(2));
    assert_eq!(a.product(&u1, &u2).unwrap(), u3);
    assert!(a.product(&u3, &u3).unwrap().iter().all(|c| c.is_zero()));
    assert!(a.product(&u1, &a.zero_vector()).unwrap().iter().all(|c| c.is_zero()));
    assert!(matches!(a.product(&u1, &[q(1)]), Err(AlgebraError::DimensionMismatch { got: 1, dim: 5 })));
}

#[test]
fn validate_examples() {
    assert!(example1(Rationals).validate().is_empty());
    for n in 1..=6 {
        assert!(example2(Rationals, n).validate().is_empty(), "n = {n}");
    }
    let mut zero = Superalgebra::abelian(Rationals, vec![Parity::Even, Parity::Odd, Parity::Odd]);
    assert!(zero.validate().is_empty());
    assert!(zero.is_validated());
}

#[test]
fn perturbed_example1_fails_identity() {
    // [u1, u3] = -u1 instead of -2 u1.
    let base = example1(Rationals);
    let mut entries: Vec<(usize, usize, usize, Q)> = Vec::new();
    for (i, j, cell) in base.entries() {
        for (k, c) in cell {
            let c = if (i, j, *k) == (0, 2, 0) { q(-1) } else { c.clone() };
            entries.push((i, j, *k, c));
        }
    }
    let mut bad = Superalgebra::new(Rationals, base.parity().to_vec(), entries).unwrap();
    let violations = bad.validate();
    assert!(!bad.is_validated());
    assert!(!violations.is_empty());
    let mut triples = Vec::new();
    for v in &violations {
        let Violation::Identity { i, j, k, residual } = v else { panic!("unexpected {v:?}") };
        assert_eq!(residual, &residual_oracle(&bad, *i, *j, *k));
        triples.push((*i, *j, *k));
    }
    // Every triple the oracle flags is reported, in sorted order.
    let n = bad.dim();
    let mut expected = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if residual_oracle(&bad, i, j, k).iter().any(|c| !c.is_zero()) {
                    expected.push((i, j, k));
                }
            }
        }
    }
    assert_eq!(triples, expected);
    // (u1, u3, u2): [u1,[u3,u2]] = -2 u3 while [[u1,u3],u2] - [[u1,u2],u3] = -u3.
    assert!(triples.contains(&(0, 2, 1)));
    // Every term on (u1, u1, u3) vanishes, so that triple stays clean.
    assert!(!triples.contains(&(0, 0, 2)));
}

#[test]
fn grading_violation_is_named() {
    // [e1, u1] = u2 breaks the grading.
    let base = example1(Rationals);
    let mut entries: Vec<(usize, usize, usize, Q)> =
        base.entries().into_iter().flat_map(|(i, j, cell)| cell.iter().map(move |(k, c)| (i, j, *k, c.clone()))).collect();
    entries.push((3, 0, 1, q(1)));
    let bad = Superalgebra::new(Rationals, base.parity().to_vec(), entries).unwrap();
    let v = bad.violations();
    assert_eq!(v[0], Violation::Grading { i: 3, j: 0, k: 1 });
}

#[test]
fn generated_ideals_of_example1() {
    let a = ex1();
    assert_eq!(a.generated_ideal(&a.whole()), a.whole());
    assert_eq!(a.generated_ideal(&span_of(&a, &[3])), span_of(&a, &[3, 4]));
    assert_eq!(a.generated_ideal(&span_of(&a, &[2])), a.whole());
}

#[test]
fn frak_i_examples() {
    let a = ex1();
    assert_eq!(a.frak_i(), span_of(&a, &[3, 4]));
    let b = ex2(3);
    assert_eq!(b.frak_i(), span_of(&b, &[3, 4, 5, 6]));
    // The even part of example1 is sl2, a Lie algebra.
    let sl2 = Superalgebra::new(
        Rationals,
        vec![Parity::Even; 3],
        a.entries()
            .into_iter()
            .filter(|(i, j, _)| *i < 3 && *j < 3)
            .flat_map(|(i, j, cell)| cell.iter().map(move |(k, c)| (i, j, *k, c.clone())))
            .collect::<Vec<_>>(),
    )
    .unwrap()
    .validated()
    .unwrap();
    assert!(sl2.frak_i().is_zero());
}

#[test]
fn eq1_holds_on_examples() {
    for a in [ex1(), ex2(1), ex2(3), ex2(5)] {
        let fi = a.frak_i();
        assert!(a.check_eq1(&fi));
        // Table scan: no nonzero product has a frak_i basis vector on the right.
        for (_, j, _) in a.entries() {
            assert!(!fi.total().contains_vector(&a.basis_vector(j)) || fi.is_zero());
        }
    }
}

#[test]
fn center_examples() {
    let ab = Superalgebra::abelian(Rationals, vec![Parity::Even, Parity::Odd]);
    assert_eq!(ab.center(), ab.whole());
    let a = ex1();
    assert!(a.center().is_zero());
    let plus = a.direct_sum(&Superalgebra::abelian(Rationals, vec![Parity::Even])).validated().unwrap();
    assert_eq!(plus.center(), span_of(&plus, &[5]));
}

#[test]
fn derived_examples() {
    let a = ex1();
    assert_eq!(a.derived(), a.whole());
    let ab = Superalgebra::abelian(Rationals, vec![Parity::Even; 2]);
    assert!(ab.derived().is_zero());
    // [e0, h] = 3 e0, so e0 is a product and example2 with n = 3 is perfect.
    let b = ex2(3);
    assert_eq!(b.derived(), b.whole());
}

#[test]
fn works_over_prime_field() {
    let f = PrimeField::new(7).unwrap();
    let mut a = example1(f);
    assert!(a.validate().is_empty());
    let fi = a.frak_i();
    assert_eq!(fi.dim(), 2);
    assert!(a.check_eq1(&fi));
}

#[test]
fn describe_uses_names() {
    let a = ex1();
    let v = vec![q(1), q(0), q(-2), q(0), q(-1)];
    assert_eq!(a.describe(&v), "u1 - 2*u3 - e2");
    assert_eq!(a.describe(&a.zero_vector()), "0");
}

fn parity_block_change(alg: &Superalgebra<Rationals>, entries: &[i64]) -> Option<Matrix<Q>> {
    let n = alg.dim();
    let mut m = Matrix::zeros(&Rationals, n, n);
    let mut it = entries.iter().cycle();
    for r in 0..n {
        for c in 0..n {
            if alg.parity()[r] == alg.parity()[c] {
                m.set(r, c, q(*it.next().unwrap()));
            }
        }
    }
    m.inverse(&Rationals).map(|_| m)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn closure_is_monotone_and_idempotent(
        which in 0usize..3,
        coords in proptest::collection::vec(-2i64..=2, 1..10),
    ) {
        let a = [ex1(), ex2(1), ex2(3)][which].clone();
        let v: Vec<Q> = (0..a.dim()).map(|i| q(coords[i % coords.len()])).collect();
        let gens = a.graded_span([v]);
        let w = a.generated_ideal(&gens);
        prop_assert!(w.contains(&gens).unwrap());
        prop_assert_eq!(a.generated_ideal(&w), w.clone());
        prop_assert!(a.is_ideal(&w));
    }

    #[test]
    fn frak_i_is_ideal_and_center_annihilates(which in 0usize..4) {
        let a = [ex1(), ex2(1), ex2(3), ex1().direct_sum(&Superalgebra::abelian(Rationals, vec![Parity::Odd]))][which].clone();
        let fi = a.frak_i();
        prop_assert!(a.is_ideal(&fi));
        prop_assert!(a.check_eq1(&fi));
        let z = a.center();
        prop_assert!(a.is_ideal(&z));
        for x in z.basis_vectors() {
            for k in 0..a.dim() {
                let b = a.basis_vector(k);
                prop_assert!(a.mul(&x, &b).iter().all(|c| c.is_zero()));
                prop_assert!(a.mul(&b, &x).iter().all(|c| c.is_zero()));
            }
        }
    }

    #[test]
    fn validity_survives_graded_change_of_basis(
        which in 0usize..3,
        entries in proptest::collection::vec(-1i64..=2, 4..20),
    ) {
        let a = [ex1(), ex2(1), ex2(3)][which].clone();
        if let Some(p) = parity_block_change(&a, &entries) {
            let mut b = a.change_basis(&p).unwrap();
            prop_assert!(b.validate().is_empty());
            prop_assert_eq!(b.frak_i().dim(), a.frak_i().dim());
        }
    }
}
