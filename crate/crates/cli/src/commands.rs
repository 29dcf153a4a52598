//! One function per subcommand. Each returns a JSON section together with
//! the verdicts it contains; mathematical errors become failing verdicts,
//! argument errors are passed up.

use polyint::cz::cz_report;
use polyint::field::{
    construct_field, cofactor, is_coprime, is_first_integral, is_hamiltonian, lie_derivative,
    reduce_field, theorem_b_degree_check,
};
use polyint::linearize::linearize_with_pivot;
use polyint::numcheck::{conservation_drift, integrate_orbit, Orbit};
use polyint::remarkable::{
    analyze as analyze_integral, degree_formula_check, degree_relation_check, theorem_a_check,
};
use polyint::{CheckResult, Error, Status};
use serde_json::{json, Value};

use crate::problem::{InputError, Problem};

/// A report section and the verdicts it carries.
pub struct Section {
    pub body: Value,
    pub verdicts: Vec<Status>,
}

impl Section {
    fn new(body: Value) -> Self {
        Section {
            body,
            verdicts: Vec::new(),
        }
    }
}

fn check(section: &mut Section, r: &CheckResult) -> Value {
    section.verdicts.push(r.status);
    serde_json::to_value(r).expect("check results serialize")
}

fn failed(section: &mut Section, e: &Error) -> Value {
    section.verdicts.push(Status::Fails);
    json!({ "status": "Fails", "reason": e.to_string() })
}

fn flag(section: &mut Section, ok: bool) -> bool {
    section.verdicts.push(if ok { Status::Holds } else { Status::Fails });
    ok
}

pub fn construct(problem: &Problem) -> Section {
    let f = &problem.integral;
    let x = construct_field(f);
    let (reduced, g) = reduce_field(&x);
    let h = f.expand();
    let mut s = Section::new(Value::Null);
    let annihilated = flag(&mut s, is_first_integral(&x, &h));
    let degree_check = if f.len() >= 2 {
        match theorem_b_degree_check(f) {
            Ok(r) => check(&mut s, &r),
            Err(e) => failed(&mut s, &e),
        }
    } else {
        json!({ "status": "NotApplicable", "reason": "single factor" })
    };
    let mut body = json!({
        "H": h.to_string(),
        "field": x,
        "first_integral": annihilated,
        "coprime": is_coprime(&x),
        "reduced_field": reduced,
        "multiplier": g.to_string(),
        "degree_sum_minus_one": f.degree_sum() as i64 - 1,
        "degree_check": degree_check,
    });
    if problem.field_given {
        let ok = flag(&mut s, is_first_integral(&problem.field, &h));
        body["given_field"] = json!({ "field": problem.field, "first_integral": ok });
    }
    s.body = body;
    s
}

pub fn analyze(problem: &Problem) -> Section {
    let f = &problem.integral;
    let x = &problem.field;
    let mut s = Section::new(Value::Null);
    let mut body = json!({ "field": x });
    let analysis = analyze_integral(f);
    body["analysis"] = match &analysis {
        Ok(a) => serde_json::to_value(a).expect("analysis serializes"),
        Err(e) => json!({ "error": e.to_string() }),
    };
    if !f.has_repeated_factor() {
        let ham = is_hamiltonian(x);
        let conserved = ham.as_ref().is_some_and(|h| lie_derivative(x, h).is_zero());
        flag(&mut s, conserved);
        let cofactors: Vec<Value> = f
            .factors()
            .iter()
            .map(|(u, _)| match cofactor(u, x) {
                Ok(Some(k)) => json!({ "curve": u.to_string(), "cofactor": k.to_string() }),
                Ok(None) => {
                    s.verdicts.push(Status::Fails);
                    json!({ "curve": u.to_string(), "cofactor": null })
                }
                Err(e) => failed(&mut s, &e),
            })
            .collect();
        body["hamiltonian"] = json!({
            "H": ham.map(|h| h.to_string()),
            "conserved": conserved,
            "cofactors": cofactors,
        });
        s.body = body;
        return s;
    }
    if let Err(e) = &analysis {
        failed(&mut s, e);
    }
    body["theorem_a"] = match theorem_a_check(f, x) {
        Ok(r) => check(&mut s, &r),
        Err(e) => failed(&mut s, &e),
    };
    body["degree_relation"] = match degree_relation_check(f, x) {
        Ok(r) => check(&mut s, &r),
        Err(e) => failed(&mut s, &e),
    };
    if let Ok(a) = &analysis {
        body["degree_formula"] = match degree_formula_check(a, x.degree()) {
            Ok(r) => check(&mut s, &r),
            Err(e) => failed(&mut s, &e),
        };
    }
    s.body = body;
    s
}

pub fn cz(problem: &Problem) -> Section {
    let mut s = Section::new(Value::Null);
    s.body = match cz_report(&problem.integral) {
        Ok(r) => {
            s.verdicts.push(r.overall.status);
            serde_json::to_value(&r).expect("report serializes")
        }
        Err(e) => failed(&mut s, &e),
    };
    s
}

pub fn linearize(problem: &Problem, pivot: Option<usize>) -> Result<Section, InputError> {
    let pivot = pivot.unwrap_or(problem.integral.len());
    let mut s = Section::new(Value::Null);
    s.body = match linearize_with_pivot(&problem.integral, &problem.field, pivot) {
        Ok(c) => {
            flag(&mut s, c.identities.all());
            serde_json::to_value(&c).expect("certificate serializes")
        }
        Err(e @ Error::IndexOutOfRange { .. }) => return Err(InputError::Invalid(e)),
        Err(e) => failed(&mut s, &e),
    };
    Ok(s)
}

#[derive(Clone, Copy, Debug)]
pub struct SimOptions {
    pub x0: f64,
    pub y0: f64,
    pub step: f64,
    pub steps: usize,
    pub tolerance: f64,
}

pub fn simulate(problem: &Problem, opts: &SimOptions) -> Result<(Section, Orbit), InputError> {
    let orbit = integrate_orbit(&problem.field.to_f64(), opts.x0, opts.y0, opts.step, opts.steps)
        .map_err(InputError::Invalid)?;
    let h = problem.integral.expand().to_f64();
    let drift = conservation_drift(&h, &orbit);
    let escaped = orbit.len() < opts.steps + 1;
    let (fx, fy) = orbit.last();
    let status = if escaped {
        Status::Inconclusive
    } else if drift < opts.tolerance {
        Status::Holds
    } else {
        Status::Fails
    };
    let body = json!({
        "method": orbit.method,
        "start": [opts.x0, opts.y0],
        "step": opts.step,
        "steps": opts.steps,
        "completed_steps": orbit.len() - 1,
        "escaped": escaped,
        "final": [fx, fy],
        "drift": drift,
        "tolerance": opts.tolerance,
        "status": status,
    });
    Ok((
        Section {
            body,
            verdicts: vec![status],
        },
        orbit,
    ))
}
