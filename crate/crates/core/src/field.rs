//! Vector fields, factored first integrals and the product-of-factors
//! field synthesis.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::bipoly::{gcd, BiPoly, Var};
use crate::check::{CheckResult, Witness};
use crate::error::{Error, Result};
use crate::scalar::{ExactField, Scalar};
use crate::Rat;

/// Planar polynomial vector field `x' = P(x, y)`, `y' = Q(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField<T: Scalar> {
    p: BiPoly<T>,
    q: BiPoly<T>,
}

impl<T: Scalar> VectorField<T> {
    /// Fails when both components vanish.
    pub fn new(p: BiPoly<T>, q: BiPoly<T>) -> Result<Self> {
        if p.is_zero() && q.is_zero() {
            return Err(Error::Degenerate("vector field with P = Q = 0".into()));
        }
        Ok(VectorField { p, q })
    }

    pub fn p(&self) -> &BiPoly<T> {
        &self.p
    }

    pub fn q(&self) -> &BiPoly<T> {
        &self.q
    }

    /// `m = max(deg P, deg Q)`.
    pub fn degree(&self) -> u32 {
        self.p
            .total_degree()
            .into_iter()
            .chain(self.q.total_degree())
            .max()
            .unwrap_or(0)
    }

    pub fn eval(&self, x: &T, y: &T) -> (T, T) {
        (self.p.evaluate(x, y), self.q.evaluate(x, y))
    }

    pub fn divergence(&self) -> BiPoly<T> {
        self.p.partial(Var::X) + self.q.partial(Var::Y)
    }

    /// `g * X`; `g` must be nonzero.
    pub fn scaled_by(&self, g: &BiPoly<T>) -> Result<Self> {
        Self::new(g * &self.p, g * &self.q)
    }

    pub fn to_f64(&self) -> VectorField<f64> {
        VectorField {
            p: self.p.to_f64(),
            q: self.q.to_f64(),
        }
    }
}

impl<T: Scalar> Serialize for VectorField<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("VectorField", 3)?;
        st.serialize_field("P", &self.p.to_string())?;
        st.serialize_field("Q", &self.q.to_string())?;
        st.serialize_field("m", &self.degree())?;
        st.end()
    }
}

/// `H = prod u_i^k_i` over nonconstant, primitive, pairwise coprime `u_i`.
///
/// Irreducibility of the factors is the caller's claim and is not checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredIntegral<T: Scalar> {
    factors: Vec<(BiPoly<T>, u32)>,
}

impl<T: ExactField> FactoredIntegral<T> {
    /// Validates the factor list. Each factor is divided by its (positive)
    /// content, which changes `H` by a positive constant only; signs are
    /// kept as given.
    pub fn new(factors: Vec<(BiPoly<T>, u32)>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Precondition("empty factor list".into()));
        }
        let mut normalized = Vec::with_capacity(factors.len());
        for (i, (u, k)) in factors.into_iter().enumerate() {
            if k == 0 {
                return Err(Error::Precondition(format!(
                    "factor {} has exponent 0",
                    i + 1
                )));
            }
            if u.is_constant() {
                return Err(Error::ConstantFactor(i + 1));
            }
            let c = u.content();
            normalized.push((u.scale(&c.inv()), k));
        }
        for i in 0..normalized.len() {
            for j in i + 1..normalized.len() {
                let g = gcd(&normalized[i].0, &normalized[j].0)?;
                if !g.is_constant() {
                    return Err(Error::FactorsNotCoprime {
                        i: i + 1,
                        j: j + 1,
                        common: g.to_string(),
                    });
                }
            }
        }
        Ok(FactoredIntegral {
            factors: normalized,
        })
    }

    pub fn factors(&self) -> &[(BiPoly<T>, u32)] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn curves(&self) -> Vec<BiPoly<T>> {
        self.factors.iter().map(|(u, _)| u.clone()).collect()
    }

    pub fn exponents(&self) -> Vec<u32> {
        self.factors.iter().map(|(_, k)| *k).collect()
    }

    /// `sum deg u_i`
    pub fn degree_sum(&self) -> u32 {
        self.factors
            .iter()
            .map(|(u, _)| u.total_degree().unwrap_or(0))
            .sum()
    }

    pub fn has_repeated_factor(&self) -> bool {
        self.factors.iter().any(|(_, k)| *k > 1)
    }

    /// `prod u_i^k_i`
    pub fn expand(&self) -> BiPoly<T> {
        self.factors.iter().map(|(u, k)| u.pow(*k)).product()
    }

    /// Move the factor at 1-based `pivot` to the end of the list.
    pub fn with_last(&self, pivot: usize) -> Result<Self> {
        let n = self.factors.len();
        if pivot == 0 || pivot > n {
            return Err(Error::IndexOutOfRange { index: pivot, len: n });
        }
        let mut factors = self.factors.clone();
        let f = factors.remove(pivot - 1);
        factors.push(f);
        Ok(FactoredIntegral { factors })
    }
}

/// Expand `prod u_i^k_i`.
pub fn expand<T: ExactField>(f: &FactoredIntegral<T>) -> BiPoly<T> {
    f.expand()
}

/// `sum_l k_l (prod_{i != l} u_i) (d u_l / dy, -d u_l / dx)`.
///
/// The expansion of `f` is a first integral of the result.
pub fn construct_field<T: ExactField>(f: &FactoredIntegral<T>) -> VectorField<T> {
    let us = f.factors();
    let mut p = BiPoly::zero();
    let mut q = BiPoly::zero();
    for (l, (ul, kl)) in us.iter().enumerate() {
        let others: BiPoly<T> = us
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != l)
            .map(|(_, (u, _))| u.clone())
            .product();
        let weight = others.scale(&T::from_int(*kl as i64));
        p = p + &weight * &ul.partial(Var::Y);
        q = q - &weight * &ul.partial(Var::X);
    }
    VectorField::new(p, q).expect("a nonconstant integral gives a nonzero field")
}

/// `H_x P + H_y Q`
pub fn lie_derivative<T: Scalar>(x: &VectorField<T>, h: &BiPoly<T>) -> BiPoly<T> {
    h.partial(Var::X) * x.p() + h.partial(Var::Y) * x.q()
}

pub fn is_first_integral<T: Scalar>(x: &VectorField<T>, h: &BiPoly<T>) -> bool {
    lie_derivative(x, h).is_zero()
}

pub fn is_coprime<T: ExactField>(x: &VectorField<T>) -> bool {
    gcd(x.p(), x.q())
        .map(|g| g.is_constant())
        .unwrap_or(false)
}

/// Split `X = g * X'` with `g = gcd(P, Q)` and `X'` coprime.
pub fn reduce_field<T: ExactField>(x: &VectorField<T>) -> (VectorField<T>, BiPoly<T>) {
    let g = gcd(x.p(), x.q()).expect("field is nonzero");
    let p = x.p().exact_div(&g).expect("gcd divides P");
    let q = x.q().exact_div(&g).expect("gcd divides Q");
    (VectorField::new(p, q).expect("nonzero quotient"), g)
}

/// The polynomial `G` with `X2 = G * X1`, for fields sharing a first
/// integral where `X1` has coprime components.
pub fn quotient_multiplier<T: ExactField>(
    x2: &VectorField<T>,
    x1: &VectorField<T>,
) -> Result<BiPoly<T>> {
    if !is_coprime(x1) {
        return Err(Error::Precondition(
            "the smaller field must have coprime components".into(),
        ));
    }
    if x2.degree() < x1.degree() {
        return Err(Error::Precondition(format!(
            "degree {} of the multiple is below degree {} of the base field",
            x2.degree(),
            x1.degree()
        )));
    }
    let (num, den, other_num, other_den) = if !x1.p().is_zero() {
        (x2.p(), x1.p(), x2.q(), x1.q())
    } else {
        (x2.q(), x1.q(), x2.p(), x1.p())
    };
    let g = num.exact_div(den)?;
    let residual = other_num - &(&g * other_den);
    if !residual.is_zero() {
        return Err(Error::NotDivisible {
            remainder: residual.to_string(),
        });
    }
    Ok(g)
}

/// If `X` is divergence free, the polynomial `H` with `P = H_y`, `Q = -H_x`
/// and zero constant term.
pub fn is_hamiltonian<T: ExactField>(x: &VectorField<T>) -> Option<BiPoly<T>> {
    if !x.divergence().is_zero() {
        return None;
    }
    let partial_h = x.p().integrate(Var::Y);
    let fx = -(x.q()) - partial_h.partial(Var::X);
    debug_assert!(fx.degree_in(Var::Y).unwrap_or(0) == 0);
    Some(partial_h + fx.integrate(Var::X))
}

/// Cofactor `K` with `f_x P + f_y Q = K f`, or `None` when `f = 0` is not
/// invariant.
pub fn cofactor<T: ExactField>(f: &BiPoly<T>, x: &VectorField<T>) -> Result<Option<BiPoly<T>>> {
    if f.is_constant() {
        return Err(Error::Precondition("cofactor of a constant curve".into()));
    }
    let l = lie_derivative(x, f);
    Ok(l.exact_div(f).ok())
}

/// The synthesized field has degree `sum deg u_i - 1` and coprime
/// components.
pub fn theorem_b_degree_check(f: &FactoredIntegral<Rat>) -> Result<CheckResult> {
    if f.len() < 2 {
        return Err(Error::Precondition(
            "degree check needs at least two factors".into(),
        ));
    }
    let x = construct_field(f);
    let expected = f.degree_sum() as i64 - 1;
    let actual = x.degree() as i64;
    if actual != expected {
        return Ok(CheckResult::fails(
            Witness::Degrees { actual, expected },
            format!("synthesized field has degree {actual}, expected {expected}"),
        ));
    }
    let g = gcd(x.p(), x.q())?;
    if !g.is_constant() {
        return Ok(CheckResult::fails(
            Witness::CommonFactor { factor: g },
            "synthesized field components share a factor",
        ));
    }
    Ok(CheckResult::holds(format!(
        "degree {actual} = sum of factor degrees - 1, components coprime"
    )))
}
