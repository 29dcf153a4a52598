//! Fixed-step RK4 orbits and conservation drift of a claimed first integral.

use std::fmt::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::{FieldF64, PolyF64};

/// Integration stops once a coordinate leaves this range.
pub const ESCAPE_RADIUS: f64 = 1e12;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Orbit {
    pub points: Vec<(f64, f64)>,
    pub step: f64,
    pub method: &'static str,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn last(&self) -> (f64, f64) {
        *self.points.last().expect("orbit is nonempty")
    }

    /// Rows `t,x,y,H` with a header line.
    pub fn to_csv(&self, h: &PolyF64) -> String {
        let mut out = String::from("t,x,y,H\n");
        for (i, &(x, y)) in self.points.iter().enumerate() {
            let t = i as f64 * self.step;
            writeln!(out, "{t},{x},{y},{}", h.evaluate(&x, &y)).expect("writing to a String");
        }
        out
    }
}

fn rk4_step(x: &FieldF64, (px, py): (f64, f64), h: f64) -> (f64, f64) {
    let f = |a: f64, b: f64| x.eval(&a, &b);
    let (k1x, k1y) = f(px, py);
    let (k2x, k2y) = f(px + 0.5 * h * k1x, py + 0.5 * h * k1y);
    let (k3x, k3y) = f(px + 0.5 * h * k2x, py + 0.5 * h * k2y);
    let (k4x, k4y) = f(px + h * k3x, py + h * k3y);
    (
        px + h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x),
        py + h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y),
    )
}

/// `n` classical RK4 steps from `(x0, y0)`. The orbit is cut short when it
/// escapes or stops being finite.
pub fn integrate_orbit(x: &FieldF64, x0: f64, y0: f64, step: f64, n: usize) -> Result<Orbit> {
    if !step.is_finite() || step <= 0.0 {
        return Err(Error::Precondition(format!("step must be positive, got {step}")));
    }
    if n == 0 {
        return Err(Error::Precondition("need at least one step".into()));
    }
    if !x0.is_finite() || !y0.is_finite() {
        return Err(Error::Precondition("starting point must be finite".into()));
    }
    let mut points = Vec::with_capacity(n + 1);
    let mut cur = (x0, y0);
    points.push(cur);
    for _ in 0..n {
        cur = rk4_step(x, cur, step);
        let ok = |c: f64| c.is_finite() && c.abs() <= ESCAPE_RADIUS;
        if !ok(cur.0) || !ok(cur.1) {
            break;
        }
        points.push(cur);
    }
    Ok(Orbit {
        points,
        step,
        method: "RK4",
    })
}

/// `max |H(p) - H(p0)| / max(1, |H(p0)|)` over the orbit.
pub fn conservation_drift(h: &PolyF64, orbit: &Orbit) -> f64 {
    let (x0, y0) = orbit.points[0];
    let h0 = h.evaluate(&x0, &y0);
    let scale = h0.abs().max(1.0);
    orbit
        .points
        .iter()
        .map(|(x, y)| (h.evaluate(x, y) - h0).abs() / scale)
        .fold(0.0, f64::max)
}
