//! Bivariate gcd by the subresultant polynomial remainder sequence.
//!
//! Polynomials are viewed in `K[x][y]`. Contents with respect to `y` are
//! split off and combined with a univariate gcd in `K[x]`; the primitive
//! parts run through the subresultant PRS, whose divisions in `K[x]` are
//! exact. Coprime inputs, the common case, are usually settled first by
//! specializing `x` at a few small integers.

use super::{BiPoly, Var};
use crate::arith::upoly::UPoly;
use crate::error::{Error, Result};
use crate::scalar::ExactField;

type Coeffs<T> = Vec<UPoly<T>>;

fn trim<T: ExactField>(mut c: Coeffs<T>) -> Coeffs<T> {
    while c.last().is_some_and(|p| p.is_zero()) {
        c.pop();
    }
    c
}

fn deg<T>(c: &Coeffs<T>) -> usize {
    c.len() - 1
}

/// Monic gcd of all coefficients.
fn content<T: ExactField>(c: &Coeffs<T>) -> UPoly<T> {
    c.iter()
        .fold(UPoly::zero(), |acc, p| UPoly::gcd(&acc, p))
}

fn divide_all<T: ExactField>(c: &Coeffs<T>, d: &UPoly<T>) -> Coeffs<T> {
    c.iter()
        .map(|p| p.exact_div(d).expect("content divides every coefficient"))
        .collect()
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b` in `y`.
fn prem<T: ExactField>(a: &Coeffs<T>, b: &Coeffs<T>) -> Coeffs<T> {
    let db = deg(b);
    let lb = b[db].clone();
    let mut r = a.clone();
    let mut steps = deg(a) - db + 1;
    while r.len() > db && !r.is_empty() {
        let dr = deg(&r);
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = &*c * &lb;
        }
        for (j, bc) in b.iter().enumerate() {
            r[j + shift] = &r[j + shift] - &(&lr * bc);
        }
        r = trim(r);
        steps -= 1;
    }
    // bring the multiplier up to the full power
    if steps > 0 {
        let m = lb.pow(steps as u32);
        r = r.iter().map(|c| c * &m).collect();
    }
    trim(r)
}

fn subresultant_prs<T: ExactField>(mut a: Coeffs<T>, mut b: Coeffs<T>) -> Coeffs<T> {
    if deg(&a) < deg(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    let mut g = UPoly::one();
    let mut h = UPoly::one();
    loop {
        let delta = deg(&a) - deg(&b);
        let r = prem(&a, &b);
        if r.is_empty() {
            return b;
        }
        if deg(&r) == 0 {
            return vec![UPoly::one()];
        }
        let divisor = &g * &h.pow(delta as u32);
        a = b;
        b = divide_all(&r, &divisor);
        g = a[deg(&a)].clone();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta as u32)
                .exact_div(&h.pow(delta as u32 - 1))
                .expect("subresultant division is exact")
        };
    }
}

/// Quick test for primitive `a`, `b`: a common factor of positive degree in
/// `y` keeps that degree at any `x = t` where both leading coefficients are
/// nonzero, so a constant gcd after specializing proves coprimality.
fn coprime_at_some_point<T: ExactField>(a: &Coeffs<T>, b: &Coeffs<T>) -> bool {
    let (la, lb) = (&a[deg(a)], &b[deg(b)]);
    (0..8)
        .map(|k| T::from_int(if k % 2 == 0 { k / 2 } else { -(k + 1) / 2 }))
        .filter(|t| !la.eval(t).is_zero() && !lb.eval(t).is_zero())
        .take(4)
        .any(|t| {
            let at = |c: &Coeffs<T>| UPoly::new(c.iter().map(|p| p.eval(&t)).collect());
            UPoly::gcd(&at(a), &at(b)).is_constant()
        })
}

/// Greatest common divisor, normalized to a primitive polynomial with
/// positive leading coefficient in graded-lex order.
pub fn gcd<T: ExactField>(f: &BiPoly<T>, g: &BiPoly<T>) -> Result<BiPoly<T>> {
    match (f.is_zero(), g.is_zero()) {
        (true, true) => return Err(Error::BothZero),
        (true, false) => return Ok(g.normalized()),
        (false, true) => return Ok(f.normalized()),
        _ => {}
    }
    let a = f.coeffs_in(Var::Y);
    let b = g.coeffs_in(Var::Y);
    let ca = content(&a);
    let cb = content(&b);
    let c = UPoly::gcd(&ca, &cb);
    let a = divide_all(&a, &ca);
    let b = divide_all(&b, &cb);
    let common = if deg(&a) == 0 || deg(&b) == 0 || coprime_at_some_point(&a, &b) {
        vec![UPoly::one()]
    } else {
        let h = subresultant_prs(a, b);
        let ch = content(&h);
        divide_all(&h, &ch)
    };
    let common = BiPoly::from_coeffs_in(Var::Y, &common);
    Ok((&BiPoly::from_upoly(Var::X, &c) * &common).normalized())
}
