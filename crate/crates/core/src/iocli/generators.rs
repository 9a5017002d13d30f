//! The two worked examples as structure-constant tables.

use crate::exactlin::Field;
use crate::superalg::{Parity, Superalgebra};

use Parity::{Even, Odd};

/// Five-dimensional example with even basis `u1, u2, u3`, odd basis
/// `e1, e2` and Cartan generator `u3`. Needs characteristic other than 2.
pub fn example1<F: Field>(field: F) -> Superalgebra<F> {
    let c = |v: i64| field.from_i64(v);
    let (u1, u2, u3, e1, e2) = (0, 1, 2, 3, 4);
    let entries = vec![
        (u2, u1, u3, c(-1)),
        (u1, u2, u3, c(1)),
        (u1, u3, u1, c(-2)),
        (u3, u1, u1, c(2)),
        (u3, u2, u2, c(-2)),
        (u2, u3, u2, c(2)),
        (e1, u2, e2, c(1)),
        (e1, u3, e1, c(-1)),
        (e2, u1, e1, c(1)),
        (e2, u3, e2, c(1)),
    ];
    let names = ["u1", "u2", "u3", "e1", "e2"].map(String::from).to_vec();
    Superalgebra::new(field.clone(), vec![Even, Even, Even, Odd, Odd], entries)
        .and_then(|a| a.with_names(names))
        .expect("static table")
}

/// Cartan generators of [`example1`]: the single vector `u3`.
pub fn example1_cartan<F: Field>(alg: &Superalgebra<F>) -> Vec<Vec<F::Elem>> {
    vec![alg.basis_vector(2)]
}

/// `(n+4)`-dimensional example with even basis `h, u, v`, odd basis
/// `e0..en` and Cartan generator `h`.
pub fn example2<F: Field>(field: F, n: usize) -> Superalgebra<F> {
    assert!(n >= 1, "example2 needs n >= 1");
    let c = |v: i64| field.from_i64(v);
    let (h, u, v) = (0, 1, 2);
    let e = |k: usize| 3 + k;
    let ni = n as i64;
    let mut entries = vec![
        (u, h, u, c(2)),
        (h, u, u, c(-2)),
        (v, h, v, c(-2)),
        (h, v, v, c(2)),
        (u, v, h, c(1)),
        (v, u, h, c(-1)),
    ];
    for k in 0..=n {
        let ki = k as i64;
        entries.push((e(k), h, e(k), c(ni - 2 * ki)));
        if k < n {
            entries.push((e(k), v, e(k + 1), c(1)));
        }
        if k >= 1 {
            entries.push((e(k), u, e(k - 1), c(ki * (ki - ni - 1))));
        }
    }
    let mut parity = vec![Even, Even, Even];
    parity.extend(std::iter::repeat_n(Odd, n + 1));
    let mut names: Vec<String> = ["h", "u", "v"].map(String::from).to_vec();
    names.extend((0..=n).map(|k| format!("e{k}")));
    Superalgebra::new(field.clone(), parity, entries).and_then(|a| a.with_names(names)).expect("static table")
}

/// Cartan generators of [`example2`]: the single vector `h`.
pub fn example2_cartan<F: Field>(alg: &Superalgebra<F>) -> Vec<Vec<F::Elem>> {
    vec![alg.basis_vector(0)]
}
