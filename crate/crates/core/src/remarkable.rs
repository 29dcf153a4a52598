//! Integrating factors and critical remarkable values.
//!
//! A value `c` is critical when some factor of `H + c` appears with exponent
//! at least two. Such a factor divides `H + c`, `H_x` and `H_y`; conversely a
//! common factor of the three forces a repeated factor. The search below
//! therefore looks for `c` such that `H + c` meets `W = gcd(H_x, H_y)` in a
//! curve, treating `c` as a second variable:
//!
//! * factors of positive `y`-degree: `c` is a root of every `x`-coefficient
//!   of `Res_y(H + c, W)`;
//! * factors in `x` alone: they divide every `y`-coefficient of `H` and of
//!   `W`, and `c` is a root of `Res_x(B, H_0 + c)` with `B` the gcd of those.
//!
//! Both conditions are exact, so the roots of the resulting polynomial in
//! `c` are precisely the critical values. Rational ones are reported
//! individually and re-verified by a bivariate gcd; the rest stay in a
//! residual polynomial.

use serde::Serialize;

use crate::arith::rational_roots;
use crate::bipoly::{gcd, sylvester_resultant, BiPoly, Var};
use crate::check::{CheckResult, Witness};
use crate::error::{Error, Result};
use crate::field::{is_coprime, is_first_integral, is_hamiltonian, FactoredIntegral, VectorField};
use crate::scalar::{ExactField, Scalar};
use crate::{Integral, Poly, Rat, UPolyQ};

/// `R = prod u_i^(k_i - 1)`
pub fn integrating_factor<T: ExactField>(f: &FactoredIntegral<T>) -> BiPoly<T> {
    f.factors().iter().map(|(u, k)| u.pow(k - 1)).product()
}

/// `V = prod u_i`
pub fn inverse_integrating_factor<T: ExactField>(f: &FactoredIntegral<T>) -> BiPoly<T> {
    f.factors().iter().map(|(u, _)| u.clone()).product()
}

/// `div(R X) = 0`
pub fn verify_integrating_factor<T: Scalar>(x: &VectorField<T>, r: &BiPoly<T>) -> bool {
    let rp = r * x.p();
    let rq = r * x.q();
    (rp.partial(Var::X) + rq.partial(Var::Y)).is_zero()
}

/// The first integral obtained by quadrature, `H_y = R P`, `H_x = -R Q`,
/// normalized to zero constant term.
pub fn integral_from_factor<T: ExactField>(x: &VectorField<T>, r: &BiPoly<T>) -> Result<BiPoly<T>> {
    if r.is_zero() || !verify_integrating_factor(x, r) {
        return Err(Error::Precondition(
            "not an integrating factor of the field".into(),
        ));
    }
    let scaled = x.scaled_by(r)?;
    is_hamiltonian(&scaled)
        .ok_or_else(|| Error::Precondition("quadrature did not close".into()))
}

/// Critical values of a first integral.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriticalValues {
    /// Rational critical values in increasing order, each verified exactly.
    #[serde(serialize_with = "rats_str")]
    pub values: Vec<Rat>,
    /// Square-free polynomial in `c` whose roots are the remaining
    /// (irrational or complex) critical values.
    #[serde(serialize_with = "residual_str")]
    pub residual: Option<UPolyQ>,
    /// Number of distinct critical values over the complex numbers.
    pub count: usize,
}

fn rats_str<S: serde::Serializer>(v: &[Rat], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| r.to_string()))
}

fn residual_str<S: serde::Serializer>(
    v: &Option<UPolyQ>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(p) => s.serialize_some(&p.to_string_in("c")),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RemarkableAnalysis {
    #[serde(flatten)]
    pub critical: CriticalValues,
    #[serde(rename = "R")]
    pub r: Poly,
    #[serde(rename = "V")]
    pub v: Poly,
    /// Number of critical values.
    pub s: usize,
    /// Degree of `R`.
    pub d: u32,
}

/// Square-free part of a bivariate polynomial, `f / gcd(f, f_x, f_y)`.
fn squarefree_part(f: &Poly) -> Result<Poly> {
    let g = gcd(&gcd(f, &f.partial(Var::X))?, &f.partial(Var::Y))?;
    f.exact_div(&g)
}

fn lift_x(p: &UPolyQ) -> Poly {
    BiPoly::from_upoly(Var::X, p)
}

/// `c`-polynomial vanishing exactly at the `c` where `H + c` and `w` share a
/// factor of positive `y`-degree. Polynomials in `(x, c)` are stored with
/// `c` in the `y` slot.
fn route_y(h: &Poly, w: &Poly) -> UPolyQ {
    if w.degree_in(Var::Y).unwrap_or(0) == 0 {
        return UPolyQ::one();
    }
    let mut hc: Vec<Poly> = h.coeffs_in(Var::Y).iter().map(lift_x).collect();
    hc[0] = &hc[0] + &BiPoly::y();
    let wc: Vec<Poly> = w.coeffs_in(Var::Y).iter().map(lift_x).collect();
    let res = sylvester_resultant(&hc, &wc);
    res.coeffs_in(Var::X)
        .iter()
        .fold(UPolyQ::zero(), |acc, c| UPolyQ::gcd(&acc, c))
}

/// `c`-polynomial vanishing exactly at the `c` where `H + c` and `w` share a
/// factor in `x` alone.
fn route_x(h: &Poly, w: &Poly) -> UPolyQ {
    let hy = h.coeffs_in(Var::Y);
    let b = hy[1..]
        .iter()
        .chain(&w.coeffs_in(Var::Y))
        .fold(UPolyQ::zero(), |acc, c| UPolyQ::gcd(&acc, c));
    if b.is_constant() {
        return UPolyQ::one();
    }
    let mut h0: Vec<Poly> = hy[0].coeffs().iter().map(|a| BiPoly::constant(a.clone())).collect();
    if h0.is_empty() {
        h0.push(Poly::zero());
    }
    h0[0] = &h0[0] + &BiPoly::y();
    let bc: Vec<Poly> = b.coeffs().iter().map(|a| BiPoly::constant(a.clone())).collect();
    let res = sylvester_resultant(&h0, &bc);
    res.as_upoly(Var::Y).expect("resultant is free of x")
}

/// Exact check that `gcd(H + c, H_x, H_y)` is nonconstant.
pub fn is_critical_value(h: &Poly, c: &Rat) -> Result<bool> {
    let shifted = h + &BiPoly::constant(c.clone());
    let g = gcd(&gcd(&shifted, &h.partial(Var::X))?, &h.partial(Var::Y))?;
    Ok(!g.is_constant())
}

pub fn critical_remarkable_values(h: &Poly) -> Result<CriticalValues> {
    let hx = h.partial(Var::X);
    let hy = h.partial(Var::Y);
    if h.is_constant() || hx.is_zero() || hy.is_zero() {
        return Err(Error::Degenerate(format!(
            "integral {h} must depend on both variables"
        )));
    }
    let w = squarefree_part(&gcd(&hx, &hy)?)?;
    if w.is_constant() {
        return Ok(CriticalValues {
            values: Vec::new(),
            residual: None,
            count: 0,
        });
    }
    let candidates = (&route_y(h, &w) * &route_x(h, &w)).squarefree_part();
    let count = candidates.degree().unwrap_or(0);
    let mut residual = candidates.clone();
    let mut values = Vec::new();
    for (c, _) in rational_roots(candidates.coeffs())? {
        if !is_critical_value(h, &c)? {
            return Err(Error::Precondition(format!(
                "candidate {c} failed exact verification"
            )));
        }
        residual = residual.exact_div(&UPolyQ::linear_root(c.clone()))?;
        values.push(c);
    }
    values.sort();
    Ok(CriticalValues {
        values,
        residual: (!residual.is_constant()).then(|| residual.monic()),
        count,
    })
}

pub fn analyze(f: &Integral) -> Result<RemarkableAnalysis> {
    let critical = critical_remarkable_values(&f.expand())?;
    let r = integrating_factor(f);
    let d = r.total_degree().unwrap_or(0);
    Ok(RemarkableAnalysis {
        s: critical.count,
        critical,
        v: inverse_integrating_factor(f),
        r,
        d,
    })
}

fn require_hypotheses(f: &Integral, x: &VectorField<Rat>) -> Result<()> {
    if !f.has_repeated_factor() {
        return Err(Error::Precondition(
            "needs some exponent k_i > 1 (all-ones integrals are Hamiltonian)".into(),
        ));
    }
    if !is_coprime(x) {
        return Err(Error::Precondition("field components are not coprime".into()));
    }
    if !is_first_integral(x, &f.expand()) {
        return Err(Error::Precondition(
            "the expanded integral is not a first integral of the field".into(),
        ));
    }
    Ok(())
}

/// Both sides of the equivalence "sum deg u_i = m + 1" and "exactly one
/// critical value" must agree.
pub fn theorem_a_check(f: &Integral, x: &VectorField<Rat>) -> Result<CheckResult> {
    require_hypotheses(f, x)?;
    let sum = f.degree_sum() as i64;
    let m1 = x.degree() as i64 + 1;
    let degree_side = sum == m1;
    let critical = critical_remarkable_values(&f.expand())?;
    let value_side = critical.count == 1;
    let values: Vec<String> = critical.values.iter().map(|c| c.to_string()).collect();
    let summary = format!(
        "sum deg u_i = {sum}, m + 1 = {m1}; {} critical value(s) [{}]",
        critical.count,
        values.join(", ")
    );
    if degree_side == value_side {
        return Ok(CheckResult::holds(summary));
    }
    let witness = if degree_side {
        Witness::Note(format!(
            "degree side holds but {} critical values were found",
            critical.count
        ))
    } else {
        Witness::Degrees {
            actual: sum,
            expected: m1,
        }
    };
    Ok(CheckResult::fails(witness, summary))
}

/// `deg V = (s - 1) d + (m + 1) s`
pub fn degree_formula_check(a: &RemarkableAnalysis, m: u32) -> Result<CheckResult> {
    if a.s == 0 {
        return Err(Error::Precondition(
            "degree formula needs at least one critical value".into(),
        ));
    }
    let s = a.s as i64;
    let expected = (s - 1) * a.d as i64 + (m as i64 + 1) * s;
    let actual = a.v.total_degree().unwrap_or(0) as i64;
    if actual == expected {
        Ok(CheckResult::holds(format!(
            "deg V = {actual} = (s-1)d + (m+1)s with s = {s}, d = {}, m = {m}",
            a.d
        )))
    } else {
        Ok(CheckResult::fails(
            Witness::Degrees { actual, expected },
            format!("deg V = {actual}, formula gives {expected}"),
        ))
    }
}

/// `deg H = m + 1 + deg R`
pub fn degree_relation_check(f: &Integral, x: &VectorField<Rat>) -> Result<CheckResult> {
    require_hypotheses(f, x)?;
    let actual = f.expand().total_degree().unwrap_or(0) as i64;
    let r = integrating_factor(f).total_degree().unwrap_or(0) as i64;
    let expected = x.degree() as i64 + 1 + r;
    if actual == expected {
        Ok(CheckResult::holds(format!(
            "deg H = {actual} = m + 1 + deg R"
        )))
    } else {
        Ok(CheckResult::fails(
            Witness::Degrees { actual, expected },
            format!("deg H = {actual}, m + 1 + deg R = {expected}"),
        ))
    }
}
