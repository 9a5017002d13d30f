//! Dense univariate polynomials, coefficients in increasing degree.

use super::field::{Field, Scalar};
use super::matrix::Matrix;

/// Drops trailing zero coefficients; the zero polynomial becomes empty.
pub fn trim<S: Scalar>(mut p: Vec<S>) -> Vec<S> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub fn eval<F: Field>(field: &F, p: &[F::Elem], x: &F::Elem) -> F::Elem {
    p.iter().rev().fold(field.zero(), |acc, c| acc.mul(x).add(c))
}

pub fn derivative<F: Field>(field: &F, p: &[F::Elem]) -> Vec<F::Elem> {
    trim(p.iter().enumerate().skip(1).map(|(k, c)| c.mul(&field.from_i64(k as i64))).collect())
}

/// Quotient and remainder; `divisor` must be nonzero.
pub fn div_rem<F: Field>(field: &F, dividend: &[F::Elem], divisor: &[F::Elem]) -> (Vec<F::Elem>, Vec<F::Elem>) {
    let divisor = trim(divisor.to_vec());
    let lead_inv = divisor.last().and_then(|c| c.inv()).expect("division by the zero polynomial");
    let mut rem = trim(dividend.to_vec());
    if rem.len() < divisor.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![field.zero(); rem.len() - divisor.len() + 1];
    while rem.len() >= divisor.len() && !rem.is_empty() {
        let shift = rem.len() - divisor.len();
        let c = rem.last().unwrap().mul(&lead_inv);
        for (k, d) in divisor.iter().enumerate() {
            rem[shift + k] = rem[shift + k].sub(&c.mul(d));
        }
        quot[shift] = c;
        rem = trim(rem);
    }
    (trim(quot), rem)
}

/// Monic greatest common divisor.
pub fn gcd<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let (_, r) = div_rem(field, &a, &b);
        a = b;
        b = r;
    }
    match a.last().and_then(|c| c.inv()) {
        Some(inv) => a.iter().map(|c| c.mul(&inv)).collect(),
        None => a,
    }
}

/// Characteristic polynomial `det(xI - m)` of a square matrix, computed by
/// reduction to upper Hessenberg form followed by the standard recurrence.
pub fn char_poly<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Vec<F::Elem> {
    assert_eq!(m.rows(), m.cols(), "characteristic polynomial of a non-square matrix");
    let n = m.rows();
    let mut h = m.clone();
    for j in 0..n.saturating_sub(2) {
        let Some(piv) = (j + 1..n).find(|&i| !h.get(i, j).is_zero()) else {
            continue;
        };
        if piv != j + 1 {
            h.swap_rows(piv, j + 1);
            h.swap_cols(piv, j + 1);
        }
        let t_inv = h.get(j + 1, j).inv().expect("nonzero pivot");
        for i in j + 2..n {
            let u = h.get(i, j).mul(&t_inv);
            if u.is_zero() {
                continue;
            }
            for c in 0..n {
                let v = h.get(i, c).sub(&u.mul(h.get(j + 1, c)));
                h.set(i, c, v);
            }
            for r in 0..n {
                let v = h.get(r, j + 1).add(&u.mul(h.get(r, i)));
                h.set(r, j + 1, v);
            }
        }
    }
    // p[k] is the characteristic polynomial of the leading k x k block.
    let mut p: Vec<Vec<F::Elem>> = vec![vec![field.one()]];
    for k in 0..n {
        // (x - h_kk) p_k
        let prev = &p[k];
        let mut next = vec![field.zero(); prev.len() + 1];
        for (d, c) in prev.iter().enumerate() {
            next[d + 1] = next[d + 1].add(c);
            next[d] = next[d].sub(&c.mul(h.get(k, k)));
        }
        let mut prod = field.one();
        for i in (0..k).rev() {
            prod = prod.mul(h.get(i + 1, i));
            let coeff = h.get(i, k).mul(&prod);
            if coeff.is_zero() {
                continue;
            }
            for (d, c) in p[i].iter().enumerate() {
                next[d] = next[d].sub(&coeff.mul(c));
            }
        }
        p.push(next);
    }
    p.pop().unwrap()
}
