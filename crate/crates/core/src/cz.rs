//! The four genericity conditions on a family of curves, checked over the
//! complex plane.
//!
//! Everything reduces to deciding whether two or three polynomials have a
//! common zero. [`variety_empty`] eliminates `y` with a resultant, then runs
//! Euclid's algorithm in `(Q[x]/m)[y]` for the eliminant `m`, splitting `m`
//! whenever a leading coefficient turns out to be a zero divisor. The
//! decision is exact; root boxes only serve as witnesses.

use num_traits::Zero;
use serde::Serialize;

use crate::arith::{isolate_complex_roots, rational_roots, RootBox};
use crate::bipoly::{gcd, resultant, BiPoly, Var};
use crate::check::{CheckResult, Status, Witness};
use crate::error::{Error, Result};
use crate::field::FactoredIntegral;
use crate::scalar::Scalar;
use crate::{Poly, Rat, UPolyQ};

/// A polynomial in `y` with coefficients in `Q[x]/m`, ascending.
type Tower = Vec<UPolyQ>;

fn reduce(m: &UPolyQ, p: &[UPolyQ]) -> Tower {
    let mut out: Tower = p
        .iter()
        .map(|c| c.rem(m).expect("modulus is nonzero"))
        .collect();
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

/// Split `m` so that on every piece the leading coefficient of `p` is
/// either invertible or `p` vanishes.
fn normalize(m: &UPolyQ, p: &[UPolyQ]) -> Vec<(UPolyQ, Tower)> {
    let p = reduce(m, p);
    let Some(lc) = p.last() else {
        return vec![(m.clone(), p)];
    };
    let d = UPolyQ::gcd(lc, m);
    if d.is_constant() {
        return vec![(m.clone(), p)];
    }
    let rest = m.exact_div(&d).expect("gcd divides the modulus");
    let mut out = normalize(&d, &p);
    if !rest.is_constant() {
        out.extend(normalize(&rest, &p));
    }
    out
}

/// `a mod b` in `(Q[x]/m)[y]`; the leading coefficient of `b` is invertible.
fn tower_rem(m: &UPolyQ, a: Tower, b: &[UPolyQ]) -> Tower {
    let db = b.len() - 1;
    let inv = UPolyQ::inverse_mod(&b[db], m).expect("leading coefficient is a unit");
    let mut a = a;
    while a.len() > db {
        let da = a.len() - 1;
        let q = (&a[da] * &inv).rem(m).expect("modulus is nonzero");
        for (j, bc) in b.iter().enumerate() {
            a[j + da - db] = (&a[j + da - db] - &(&q * bc)).rem(m).expect("modulus is nonzero");
        }
        while a.last().is_some_and(|c| c.is_zero()) {
            a.pop();
        }
    }
    a
}

/// Gcd of `a` and `b` over each piece of a splitting of `m`.
fn tower_gcd(m: &UPolyQ, a: &[UPolyQ], b: &[UPolyQ]) -> Vec<(UPolyQ, Tower)> {
    let mut out = Vec::new();
    for (m1, b1) in normalize(m, b) {
        for (m2, a2) in normalize(&m1, a) {
            let b2 = reduce(&m2, &b1);
            if b2.is_empty() {
                out.push((m2, a2));
            } else if a2.is_empty() {
                out.push((m2, b2));
            } else if a2.len() < b2.len() {
                out.extend(tower_gcd(&m2, &b2, &a2));
            } else {
                let r = tower_rem(&m2, a2, &b2);
                out.extend(tower_gcd(&m2, &b2, &r));
            }
        }
    }
    out
}

fn tower_to_poly(t: &[UPolyQ]) -> Poly {
    BiPoly::from_coeffs_in(Var::Y, t)
}

/// A point on `x`-roots of `m` where the `y`-polynomial `g` (coefficients
/// modulo `m`) vanishes.
fn witness_on(m: &UPolyQ, g: &[UPolyQ]) -> Witness {
    // a rational point if one exists
    if let Ok(xs) = rational_roots(m.coeffs()) {
        for (a, _) in xs {
            let gy = UPolyQ::new(g.iter().map(|c| c.eval(&a)).collect());
            if gy.is_zero() {
                return Witness::Point { x: a, y: Rat::from_int(0) };
            }
            if let Ok(ys) = rational_roots(gy.coeffs()) {
                if let Some((b, _)) = ys.first() {
                    return Witness::Point { x: a, y: b.clone() };
                }
            }
        }
    }
    let relation = if g.is_empty() {
        "any y".to_string()
    } else {
        format!("{} = 0", tower_to_poly(g))
    };
    let Ok(boxes) = isolate_complex_roots(m.coeffs()) else {
        return Witness::Note(format!("x is a root of {}, {relation}", m.to_string_in("x")));
    };
    let x_box = boxes[0].clone();
    let y_box = match g.len() {
        0 => Some(RootBox::point(Rat::from_int(0), Rat::from_int(0), 1)),
        2 => UPolyQ::inverse_mod(&g[1], m).map(|inv| {
            let y = (&(-&g[0]) * &inv).rem(m).expect("modulus is nonzero");
            x_box.eval_poly(&y)
        }),
        _ => None,
    };
    Witness::Boxes {
        x_poly: m.to_string_in("x"),
        x_box: Box::new(x_box),
        y_relation: relation,
        y_box: y_box.map(Box::new),
    }
}

/// A point on a single curve.
fn point_on(f: &Poly) -> Witness {
    let coeffs = f.coeffs_in(Var::Y);
    if coeffs.len() <= 1 {
        return witness_on(&coeffs[0].squarefree_part(), &[]);
    }
    let lc = coeffs.last().expect("nonzero");
    let t = (0i64..)
        .map(Rat::from_int)
        .find(|t| !lc.eval(t).is_zero())
        .expect("a nonzero polynomial has finitely many roots");
    witness_on(&UPolyQ::linear_root(t), &coeffs)
}

enum Outcome {
    Empty,
    Point(Witness),
}

fn solve(polys: Vec<Poly>) -> Result<Outcome> {
    let polys: Vec<Poly> = polys.into_iter().filter(|p| !p.is_zero()).collect();
    if polys.iter().any(|p| p.is_constant()) {
        return Ok(Outcome::Empty);
    }
    match polys.len() {
        0 => {
            return Ok(Outcome::Point(Witness::Point {
                x: Rat::from_int(0),
                y: Rat::from_int(0),
            }))
        }
        1 => return Ok(Outcome::Point(point_on(&polys[0]))),
        _ => {}
    }
    let h = gcd(&polys[0], &polys[1])?;
    if !h.is_constant() {
        if polys.len() == 2 {
            return Ok(Outcome::Point(Witness::CommonFactor { factor: h }));
        }
        let rest = &polys[2..];
        let mut on_h = vec![h.clone()];
        on_h.extend_from_slice(rest);
        if let Outcome::Point(w) = solve(on_h)? {
            return Ok(Outcome::Point(w));
        }
        let mut off_h = vec![polys[0].exact_div(&h)?, polys[1].exact_div(&h)?];
        off_h.extend_from_slice(rest);
        return solve(off_h);
    }
    let eliminant = if polys[0].degree_in(Var::Y) == Some(0) {
        polys[0].clone()
    } else if polys[1].degree_in(Var::Y) == Some(0) {
        polys[1].clone()
    } else {
        resultant(&polys[0], &polys[1], Var::Y)?
    };
    let m = eliminant
        .as_upoly(Var::X)
        .expect("eliminant is free of y")
        .squarefree_part();
    if m.is_constant() {
        return Ok(Outcome::Empty);
    }
    let towers: Vec<Tower> = polys.iter().map(|p| p.coeffs_in(Var::Y)).collect();
    let mut pieces = vec![(m, towers[0].clone())];
    for t in &towers[1..] {
        pieces = pieces
            .iter()
            .flat_map(|(mi, g)| tower_gcd(mi, g, t))
            .collect();
    }
    for (mi, g) in pieces {
        if g.len() != 1 {
            return Ok(Outcome::Point(witness_on(&mi, &g)));
        }
    }
    Ok(Outcome::Empty)
}

/// Holds iff the polynomials have no common zero in the complex plane.
/// Zero polynomials impose no condition.
pub fn variety_empty(polys: &[Poly]) -> Result<CheckResult> {
    if polys.len() < 2 {
        return Err(Error::Precondition(
            "variety_empty needs at least two polynomials".into(),
        ));
    }
    Ok(match solve(polys.to_vec())? {
        Outcome::Empty => CheckResult::holds("no common zero"),
        Outcome::Point(w) => CheckResult::fails(w, "common zero found"),
    })
}

fn nonconstant(u: &Poly, what: &str) -> Result<()> {
    if u.is_constant() {
        return Err(Error::Precondition(format!("{what} needs a nonconstant curve, got {u}")));
    }
    Ok(())
}

/// No point where `u`, `u_x` and `u_y` vanish together.
pub fn check_nonsingular(u: &Poly) -> Result<CheckResult> {
    nonconstant(u, "nonsingularity check")?;
    let r = variety_empty(&[u.clone(), u.partial(Var::X), u.partial(Var::Y)])?;
    Ok(match r.status {
        Status::Holds => CheckResult::holds(format!("{u} = 0 is nonsingular")),
        _ => CheckResult { reason: format!("{u} = 0 has a singular point"), ..r },
    })
}

/// The leading form has no repeated factor.
pub fn check_leading_squarefree(u: &Poly) -> Result<CheckResult> {
    nonconstant(u, "leading form check")?;
    let lf = u.leading_form()?;
    let rep = gcd(&gcd(&lf, &lf.partial(Var::X))?, &lf.partial(Var::Y))?;
    Ok(if rep.is_constant() {
        CheckResult::holds(format!("leading form {lf} is square-free"))
    } else {
        CheckResult::fails(
            Witness::CommonFactor { factor: rep.clone() },
            format!("leading form {lf} has the repeated factor {rep}"),
        )
    })
}

/// `u` and `v` meet only with independent gradients.
pub fn check_pair_transversal(u: &Poly, v: &Poly) -> Result<CheckResult> {
    nonconstant(u, "transversality check")?;
    nonconstant(v, "transversality check")?;
    let common = gcd(u, v)?;
    if !common.is_constant() {
        return Err(Error::Precondition(format!(
            "curves {u} and {v} share the factor {common}"
        )));
    }
    let jac = u.partial(Var::X) * v.partial(Var::Y) - u.partial(Var::Y) * v.partial(Var::X);
    let r = variety_empty(&[u.clone(), v.clone(), jac])?;
    Ok(match r.status {
        Status::Holds => CheckResult::holds(format!("{u} and {v} meet transversally")),
        _ => CheckResult { reason: format!("{u} and {v} are tangent"), ..r },
    })
}

fn tag(indices: Vec<usize>, r: CheckResult) -> CheckResult {
    match r.witness {
        Some(w) => CheckResult {
            status: r.status,
            witness: Some(Witness::Curves { indices, evidence: Box::new(w) }),
            reason: r.reason,
        },
        None => r,
    }
}

/// No three curves through a common point.
pub fn check_no_triple_points(curves: &[Poly]) -> Result<CheckResult> {
    let n = curves.len();
    let mut results = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let r = variety_empty(&[curves[i].clone(), curves[j].clone(), curves[k].clone()])?;
                let failed = r.is_fails();
                results.push(tag(
                    vec![i + 1, j + 1, k + 1],
                    CheckResult {
                        reason: if failed {
                            format!("curves {}, {}, {} meet in a point", i + 1, j + 1, k + 1)
                        } else {
                            r.reason.clone()
                        },
                        ..r
                    },
                ));
                if failed {
                    return Ok(CheckResult::all(results, ""));
                }
            }
        }
    }
    Ok(CheckResult::all(results, "no three curves share a point"))
}

/// Leading forms are pairwise coprime.
pub fn check_pairwise_leading_coprime(curves: &[Poly]) -> Result<CheckResult> {
    if curves.len() < 2 {
        return Err(Error::Precondition("needs at least two curves".into()));
    }
    for u in curves {
        nonconstant(u, "leading form check")?;
    }
    for i in 0..curves.len() {
        for j in i + 1..curves.len() {
            let g = gcd(&curves[i].leading_form()?, &curves[j].leading_form()?)?;
            if !g.is_constant() {
                return Ok(CheckResult::fails(
                    Witness::Curves {
                        indices: vec![i + 1, j + 1],
                        evidence: Box::new(Witness::CommonFactor { factor: g.clone() }),
                    },
                    format!("leading forms of curves {} and {} share {g}", i + 1, j + 1),
                ));
            }
        }
    }
    Ok(CheckResult::holds("leading forms pairwise coprime"))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CZReport {
    pub condition_i: CheckResult,
    pub condition_ii: CheckResult,
    pub condition_iii: CheckResult,
    pub condition_iv: CheckResult,
    pub overall: CheckResult,
}

fn per_curve(curves: &[Poly], check: fn(&Poly) -> Result<CheckResult>, ok: &str) -> Result<CheckResult> {
    let mut results = Vec::new();
    for (i, u) in curves.iter().enumerate() {
        let r = check(u)?;
        let stop = r.is_fails();
        results.push(tag(vec![i + 1], r));
        if stop {
            break;
        }
    }
    Ok(CheckResult::all(results, ok))
}

pub fn cz_report(f: &FactoredIntegral<Rat>) -> Result<CZReport> {
    let curves = f.curves();
    let condition_i = per_curve(&curves, check_nonsingular, "every curve is nonsingular")?;
    let condition_ii = per_curve(&curves, check_leading_squarefree, "every leading form is square-free")?;
    let (condition_iii, condition_iv) = if curves.len() < 2 {
        (
            CheckResult::holds("single curve: no intersections"),
            CheckResult::holds("single curve: nothing to compare"),
        )
    } else {
        let mut pairs = Vec::new();
        'outer: for i in 0..curves.len() {
            for j in i + 1..curves.len() {
                let r = check_pair_transversal(&curves[i], &curves[j])?;
                let stop = r.is_fails();
                pairs.push(tag(vec![i + 1, j + 1], r));
                if stop {
                    break 'outer;
                }
            }
        }
        let transversal = CheckResult::all(pairs, "pairwise transversal");
        let iii = if transversal.is_fails() {
            transversal
        } else {
            CheckResult::all(
                [transversal, check_no_triple_points(&curves)?],
                "pairwise transversal with no triple points",
            )
        };
        (iii, check_pairwise_leading_coprime(&curves)?)
    };
    let overall = CheckResult::all(
        [
            condition_i.clone(),
            condition_ii.clone(),
            condition_iii.clone(),
            condition_iv.clone(),
        ],
        "all four conditions hold",
    );
    Ok(CZReport {
        condition_i,
        condition_ii,
        condition_iii,
        condition_iv,
        overall,
    })
}
