//! Sparse bivariate polynomials.
//!
//! Terms are kept in a map keyed by [`Monomial`], ordered graded
//! lexicographically with `x > y`; the last entry is the leading term.
//! Zero coefficients are never stored, so the zero polynomial is the empty
//! map.

mod gcd;
mod parse;
mod resultant;

use std::collections::BTreeMap;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

use crate::arith::upoly::UPoly;
use crate::error::{Error, Result};
use crate::scalar::{ExactField, Scalar};

pub use gcd::gcd;
pub use parse::parse;
pub use resultant::{resultant, sylvester_resultant};

/// Polynomial variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    Y,
}

impl Var {
    pub fn other(self) -> Var {
        match self {
            Var::X => Var::Y,
            Var::Y => Var::X,
        }
    }
}

/// Exponent pair of `x^x * y^y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub x: u32,
    pub y: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { x: 0, y: 0 };

    pub fn new(x: u32, y: u32) -> Self {
        Monomial { x, y }
    }

    pub fn degree(self) -> u32 {
        self.x + self.y
    }

    pub fn exponent(self, var: Var) -> u32 {
        match var {
            Var::X => self.x,
            Var::Y => self.y,
        }
    }

    fn divides(self, other: Monomial) -> bool {
        self.x <= other.x && self.y <= other.y
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.x.cmp(&other.x))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in `x` and `y`.
#[derive(Clone, PartialEq, Eq)]
pub struct BiPoly<T> {
    terms: BTreeMap<Monomial, T>,
}

impl<T: Scalar> Default for BiPoly<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Scalar> BiPoly<T> {
    pub fn zero() -> Self {
        BiPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn x() -> Self {
        Self::monomial(T::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(T::one(), 0, 1)
    }

    pub fn var(v: Var) -> Self {
        match v {
            Var::X => Self::x(),
            Var::Y => Self::y(),
        }
    }

    /// `c * x^i * y^j`
    pub fn monomial(c: T, i: u32, j: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::new(i, j), c);
        }
        BiPoly { terms }
    }

    /// Build from `((i, j), c)` pairs; repeated exponents are summed.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = ((u32, u32), T)>,
    {
        let mut p = Self::zero();
        for ((i, j), c) in terms {
            p.add_term(Monomial::new(i, j), c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: T) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let sum = v.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (Monomial, &T)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, i: u32, j: u32) -> T {
        self.terms
            .get(&Monomial::new(i, j))
            .cloned()
            .unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for the zero polynomial and for nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| *m == Monomial::ONE)
    }

    pub fn leading_term(&self) -> Option<(Monomial, &T)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c))
    }

    pub fn leading_coeff(&self) -> Option<&T> {
        self.terms.values().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.leading_term().map(|(m, _)| m.degree())
    }

    pub fn degree_in(&self, var: Var) -> Option<u32> {
        self.terms.keys().map(|m| m.exponent(var)).max()
    }

    pub fn scale(&self, s: &T) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, c.clone() * s.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative.
    pub fn partial(&self, var: Var) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e == 0 {
                continue;
            }
            let dm = match var {
                Var::X => Monomial::new(m.x - 1, m.y),
                Var::Y => Monomial::new(m.x, m.y - 1),
            };
            out.add_term(dm, c.clone() * T::from_int(e as i64));
        }
        out
    }

    /// Formal antiderivative with zero integration constant.
    pub fn integrate(&self, var: Var) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(var) + 1;
            let im = match var {
                Var::X => Monomial::new(m.x + 1, m.y),
                Var::Y => Monomial::new(m.x, m.y + 1),
            };
            out.add_term(im, c.clone() / T::from_int(e as i64));
        }
        out
    }

    pub fn evaluate(&self, x0: &T, y0: &T) -> T {
        // Horner in y over Horner-in-x coefficients
        let mut acc = T::zero();
        for c in self.coeffs_in(Var::Y).iter().rev() {
            acc = acc * y0.clone() + c.eval(x0);
        }
        acc
    }

    /// Homogeneous component of the given total degree.
    pub fn homogeneous_part(&self, degree: u32) -> Self {
        BiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// The homogeneous part of top total degree.
    pub fn leading_form(&self) -> Result<Self> {
        let d = self
            .total_degree()
            .ok_or(Error::ZeroPolynomial("leading_form"))?;
        Ok(self.homogeneous_part(d))
    }

    pub fn swap_vars(&self) -> Self {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial::new(m.y, m.x), c.clone()))
                .collect(),
        }
    }

    pub fn map_coeffs<U: Scalar>(&self, f: impl Fn(&T) -> U) -> BiPoly<U> {
        let mut out = BiPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, f(c));
        }
        out
    }

    pub fn to_f64(&self) -> BiPoly<f64> {
        self.map_coeffs(|c| c.to_f64_lossy())
    }

    /// Coefficients with respect to `var`: entry `k` is the coefficient of
    /// `var^k`, a univariate polynomial in the other variable.
    pub fn coeffs_in(&self, var: Var) -> Vec<UPoly<T>> {
        let Some(d) = self.degree_in(var) else {
            return Vec::new();
        };
        let other = var.other();
        let mut dense: Vec<Vec<T>> = vec![Vec::new(); d as usize + 1];
        for (m, c) in &self.terms {
            let row = &mut dense[m.exponent(var) as usize];
            let k = m.exponent(other) as usize;
            if row.len() <= k {
                row.resize(k + 1, T::zero());
            }
            row[k] = c.clone();
        }
        dense.into_iter().map(UPoly::new).collect()
    }

    /// Inverse of [`BiPoly::coeffs_in`].
    pub fn from_coeffs_in(var: Var, coeffs: &[UPoly<T>]) -> Self {
        let mut out = Self::zero();
        for (k, c) in coeffs.iter().enumerate() {
            for (j, a) in c.coeffs().iter().enumerate() {
                let m = match var {
                    Var::Y => Monomial::new(j as u32, k as u32),
                    Var::X => Monomial::new(k as u32, j as u32),
                };
                out.add_term(m, a.clone());
            }
        }
        out
    }

    /// Embed a univariate polynomial as a polynomial in `var`.
    pub fn from_upoly(var: Var, p: &UPoly<T>) -> Self {
        Self::from_coeffs_in(var.other(), std::slice::from_ref(p))
    }

    /// Univariate view, if the polynomial only involves `var`.
    pub fn as_upoly(&self, var: Var) -> Option<UPoly<T>> {
        if self.degree_in(var.other()).unwrap_or(0) > 0 {
            return None;
        }
        Some(
            self.coeffs_in(var.other())
                .into_iter()
                .next()
                .unwrap_or_else(UPoly::zero),
        )
    }

    /// Substitute `var = value`, leaving a polynomial in the other variable.
    pub fn substitute(&self, var: Var, value: &T) -> UPoly<T> {
        let coeffs = self.coeffs_in(var.other());
        UPoly::new(coeffs.iter().map(|c| c.eval(value)).collect())
    }
}

impl<T: ExactField> BiPoly<T> {
    /// Multivariate division by a single divisor in graded-lex order.
    /// The remainder is zero exactly when `g` divides `self`.
    pub fn div_rem(&self, g: &Self) -> Result<(Self, Self)> {
        let (lm, lc) = g.leading_term().ok_or(Error::DivisionByZero)?;
        let lc_inv = lc.inv();
        let mut p = self.clone();
        let mut q = Self::zero();
        let mut r = Self::zero();
        while let Some((m, c)) = p.leading_term() {
            let c = c.clone();
            if lm.divides(m) {
                let t = Monomial::new(m.x - lm.x, m.y - lm.y);
                let tc = c * lc_inv.clone();
                for (gm, gc) in &g.terms {
                    p.add_term(
                        Monomial::new(gm.x + t.x, gm.y + t.y),
                        -(gc.clone() * tc.clone()),
                    );
                }
                q.add_term(t, tc);
            } else {
                p.terms.remove(&m);
                r.add_term(m, c);
            }
        }
        Ok((q, r))
    }

    /// Exact quotient; fails with the remainder when `g` does not divide.
    pub fn exact_div(&self, g: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(g)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::NotDivisible {
                remainder: r.to_string(),
            })
        }
    }

    pub fn divides(&self, f: &Self) -> bool {
        !self.is_zero() && f.div_rem(self).map(|(_, r)| r.is_zero()).unwrap_or(false)
    }

    /// Positive scalar whose quotient has coprime integer coefficients.
    pub fn content(&self) -> T {
        T::content(self.terms.values())
    }

    /// Primitive part with positive leading coefficient.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading_coeff().is_some_and(|lc| lc.is_negative_value()) {
            c = -c;
        }
        self.scale(&c.inv())
    }

    /// Square-free over the complex numbers: no irreducible factor divides
    /// `f` together with both of its partial derivatives.
    pub fn is_squarefree(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("is_squarefree"));
        }
        let g = gcd(self, &self.partial(Var::X))?;
        let g = gcd(&g, &self.partial(Var::Y))?;
        Ok(g.is_constant())
    }
}

impl<T: Scalar> fmt::Display for BiPoly<T> {
    /// Canonical form: graded-lex descending, explicit `*` and `^`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative_value();
            let abs = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mut factors = Vec::new();
            for (name, e) in [("x", m.x), ("y", m.y)] {
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            let mono = factors.join("*");
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl<T: Scalar> fmt::Debug for BiPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({self})")
    }
}

impl<T: Scalar> Serialize for BiPoly<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<T: Scalar> Add for &BiPoly<T> {
    type Output = BiPoly<T>;
    fn add(self, rhs: &BiPoly<T>) -> BiPoly<T> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<T: Scalar> Sub for &BiPoly<T> {
    type Output = BiPoly<T>;
    fn sub(self, rhs: &BiPoly<T>) -> BiPoly<T> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl<T: Scalar> Mul for &BiPoly<T> {
    type Output = BiPoly<T>;
    fn mul(self, rhs: &BiPoly<T>) -> BiPoly<T> {
        let mut out = BiPoly::zero();
        for (ma, a) in &self.terms {
            for (mb, b) in &rhs.terms {
                out.add_term(Monomial::new(ma.x + mb.x, ma.y + mb.y), a.clone() * b.clone());
            }
        }
        out
    }
}

impl<T: Scalar> Neg for &BiPoly<T> {
    type Output = BiPoly<T>;
    fn neg(self) -> BiPoly<T> {
        BiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl<T: Scalar> Neg for BiPoly<T> {
    type Output = BiPoly<T>;
    fn neg(self) -> BiPoly<T> {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl<T: Scalar> $tr for BiPoly<T> {
            type Output = BiPoly<T>;
            fn $m(self, rhs: BiPoly<T>) -> BiPoly<T> {
                (&self).$m(&rhs)
            }
        }
        impl<T: Scalar> $tr<&BiPoly<T>> for BiPoly<T> {
            type Output = BiPoly<T>;
            fn $m(self, rhs: &BiPoly<T>) -> BiPoly<T> {
                (&self).$m(rhs)
            }
        }
        impl<T: Scalar> $tr<BiPoly<T>> for &BiPoly<T> {
            type Output = BiPoly<T>;
            fn $m(self, rhs: BiPoly<T>) -> BiPoly<T> {
                self.$m(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl<T: Scalar> std::iter::Sum for BiPoly<T> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| &a + &b)
    }
}

impl<T: Scalar> std::iter::Product for BiPoly<T> {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |a, b| &a * &b)
    }
}
