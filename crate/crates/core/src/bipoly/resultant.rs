//! Sylvester resultants via fraction-free (Bareiss) elimination.

use super::{BiPoly, Var};
use crate::error::{Error, Result};
use crate::scalar::ExactField;

/// Determinant of a square matrix of polynomials. Every division in the
/// Bareiss recurrence is exact.
fn bareiss_det<T: ExactField>(mut m: Vec<Vec<BiPoly<T>>>) -> BiPoly<T> {
    let n = m.len();
    if n == 0 {
        return BiPoly::one();
    }
    let mut negate = false;
    let mut prev = BiPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BiPoly::zero();
            };
            m.swap(k, swap);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num
                    .exact_div(&prev)
                    .expect("Bareiss division is exact");
            }
            m[i][k] = BiPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Resultant of two polynomials given by ascending coefficient lists in the
/// eliminated variable. Coefficients may be arbitrary bivariate
/// polynomials, which lets callers eliminate a third variable.
///
/// Rows of `f` sit on top of the Sylvester matrix, leading coefficients
/// first.
pub fn sylvester_resultant<T: ExactField>(f: &[BiPoly<T>], g: &[BiPoly<T>]) -> BiPoly<T> {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = vec![BiPoly::zero(); size];
        for (k, c) in f.iter().rev().enumerate() {
            row[shift + k] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![BiPoly::zero(); size];
        for (k, c) in g.iter().rev().enumerate() {
            row[shift + k] = c.clone();
        }
        rows.push(row);
    }
    bareiss_det(rows)
}

/// Resultant of `f` and `g` with respect to `var`, a polynomial in the other
/// variable. Both inputs need positive degree in `var`.
pub fn resultant<T: ExactField>(f: &BiPoly<T>, g: &BiPoly<T>, var: Var) -> Result<BiPoly<T>> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial("resultant"));
    }
    if f.degree_in(var) == Some(0) || g.degree_in(var) == Some(0) {
        return Err(Error::Precondition(format!(
            "resultant needs positive degree in {var:?} for both operands"
        )));
    }
    let other = var.other();
    let lift = |p: &BiPoly<T>| -> Vec<BiPoly<T>> {
        p.coeffs_in(var)
            .iter()
            .map(|c| BiPoly::from_upoly(other, c))
            .collect()
    };
    Ok(sylvester_resultant(&lift(f), &lift(g)))
}
