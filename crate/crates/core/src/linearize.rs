//! Polynomial change of variables onto the linear saddle.
//!
//! With `u = prod_{i<p} u_i^k_i` and `v = u_p^k_p`, a field `X` with first
//! integral `u v` satisfies `G X(u) = D u` and `G X(v) = -D v`, where
//! `D = K1 K4 - K2 K3` and `G` is the multiplier relating `X` to the
//! product-of-factors field. After the time change `dtau = (D/G) dt` the
//! pair `(u, v)` solves `u' = u`, `v' = -v` wherever `D G != 0`.

use serde::Serialize;

use crate::bipoly::Var;
use crate::error::{Error, Result};
use crate::field::{is_coprime, is_hamiltonian, lie_derivative, VectorField};
use crate::{Integral, Poly, Rat};

/// The four polynomials built from the factor split.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KMatrix {
    #[serde(rename = "K1")]
    pub k1: Poly,
    #[serde(rename = "K2")]
    pub k2: Poly,
    #[serde(rename = "K3")]
    pub k3: Poly,
    #[serde(rename = "K4")]
    pub k4: Poly,
}

impl KMatrix {
    /// `K1 K4 - K2 K3`
    pub fn det(&self) -> Poly {
        &self.k1 * &self.k4 - &self.k2 * &self.k3
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Identities {
    /// `D = K1 K4 - K2 K3`
    pub determinant: bool,
    /// `G P = K4 prod u_l + K2 u_p` and `G Q = -K1 u_p - K3 prod u_l`
    pub numerators: bool,
    /// `G X(u) = D u`
    pub u_equation: bool,
    /// `G X(v) = -D v`
    pub v_equation: bool,
}

impl Identities {
    pub fn all(&self) -> bool {
        self.determinant && self.numerators && self.u_equation && self.v_equation
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LinearizationCertificate {
    pub u: Poly,
    pub v: Poly,
    #[serde(flatten)]
    pub k: KMatrix,
    #[serde(rename = "D")]
    pub d: Poly,
    #[serde(rename = "G")]
    pub g: Poly,
    pub identities: Identities,
    /// Whether the input field is divergence free.
    pub hamiltonian: bool,
    /// 1-based index, in the caller's factor order, of the factor used as `v`.
    pub pivot: usize,
    pub time_change: String,
}

pub fn k_matrix(f: &Integral) -> Result<KMatrix> {
    let n = f.len();
    if n < 2 {
        return Err(Error::Precondition(
            "the K matrix needs at least two factors".into(),
        ));
    }
    let (head, last) = f.factors().split_at(n - 1);
    let (up, kp) = &last[0];
    let mut k1 = Poly::zero();
    let mut k2 = Poly::zero();
    for (i, (ui, ki)) in head.iter().enumerate() {
        let others: Poly = head
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, (u, _))| u.clone())
            .product();
        let w = others.scale(&Rat::from_integer((*ki).into()));
        k1 = k1 + &w * &ui.partial(Var::X);
        k2 = k2 + &w * &ui.partial(Var::Y);
    }
    let kp = Rat::from_integer((*kp).into());
    Ok(KMatrix {
        k1,
        k2,
        k3: up.partial(Var::X).scale(&kp),
        k4: up.partial(Var::Y).scale(&kp),
    })
}

/// Reorder the factors so that the one at 1-based `pivot` comes last.
pub fn factor_split(f: &Integral, pivot: usize) -> Result<Integral> {
    f.with_last(pivot)
}

/// Certificate using the last factor as `v`.
pub fn linearize(f: &Integral, x: &VectorField<Rat>) -> Result<LinearizationCertificate> {
    linearize_with_pivot(f, x, f.len())
}

pub fn linearize_with_pivot(
    f: &Integral,
    x: &VectorField<Rat>,
    pivot: usize,
) -> Result<LinearizationCertificate> {
    if f.len() < 2 {
        return Err(Error::Precondition(
            "linearization needs at least two factors".into(),
        ));
    }
    if !is_coprime(x) {
        return Err(Error::Precondition("field components are not coprime".into()));
    }
    let split = factor_split(f, pivot)?;
    let k = k_matrix(&split)?;
    let d = k.det();
    if d.is_zero() {
        return Err(Error::Degenerate(format!(
            "K1 K4 - K2 K3 vanishes identically for pivot {pivot}"
        )));
    }

    let n = split.len();
    let (head, last) = split.factors().split_at(n - 1);
    let up = &last[0].0;
    let prod_head: Poly = head.iter().map(|(u, _)| u.clone()).product();
    let n1 = &k.k4 * &prod_head + &k.k2 * up;
    let n2 = -(&k.k1 * up) - &k.k3 * &prod_head;

    let g = if !x.p().is_zero() {
        n1.exact_div(x.p())?
    } else if n1.is_zero() {
        n2.exact_div(x.q())?
    } else {
        return Err(Error::NotDivisible {
            remainder: n1.to_string(),
        });
    };
    for (num, comp) in [(&n1, x.p()), (&n2, x.q())] {
        let residual = num - &(&g * comp);
        if !residual.is_zero() {
            return Err(Error::NotDivisible {
                remainder: residual.to_string(),
            });
        }
    }

    let u: Poly = head.iter().map(|(ui, ki)| ui.pow(*ki)).product();
    let v = up.pow(last[0].1);
    let identities = Identities {
        determinant: d == &k.k1 * &k.k4 - &k.k2 * &k.k3,
        numerators: &g * x.p() == n1 && &g * x.q() == n2,
        u_equation: &g * &lie_derivative(x, &u) == &d * &u,
        v_equation: &g * &lie_derivative(x, &v) == -(&d * &v),
    };
    if !identities.all() {
        return Err(Error::Precondition(format!(
            "certificate identities failed: {identities:?}"
        )));
    }
    let time_change = format!("dtau = ({d}) / ({g}) dt");
    Ok(LinearizationCertificate {
        u,
        v,
        k,
        d,
        g,
        identities,
        hamiltonian: is_hamiltonian(x).is_some(),
        pivot,
        time_change,
    })
}

impl LinearizationCertificate {
    /// Evaluate `(u, v)` at a point, the image in saddle coordinates.
    pub fn map_point(&self, x: &Rat, y: &Rat) -> (Rat, Rat) {
        (self.u.evaluate(x, y), self.v.evaluate(x, y))
    }
}
