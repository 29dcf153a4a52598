//! Rational roots and certified isolation of complex roots.
//!
//! Rational roots are found exactly: the square-free part is scaled to a
//! monic integer polynomial whose rational roots are integers, those are
//! bracketed by Sturm-sequence bisection on integer endpoints, and every
//! candidate is confirmed by exact evaluation.
//!
//! Complex roots are approximated in floating point (Aberth iteration),
//! polished by Newton steps in dyadic rational arithmetic, and then
//! certified: a disk around each approximation passes Pellet's test, which
//! proves that it contains exactly one root. Disjoint certified disks, one
//! per degree of the square-free factor, account for every root.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::upoly::UPoly;
use super::{dyadic_ceil, dyadic_round, sqrt_lower, sqrt_upper};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::{Rat, UPolyQ};

/// Precision cap (bits after the binary point, on top of the root bound)
/// beyond which isolation gives up.
pub const PRECISION_CAP_BITS: u32 = 256;

const START_BITS: u32 = 64;

/// Axis-aligned box in the complex plane, certified to contain exactly
/// `multiplicity` roots counted with multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootBox {
    pub re_lo: Rat,
    pub re_hi: Rat,
    pub im_lo: Rat,
    pub im_hi: Rat,
    pub multiplicity: u32,
}

impl RootBox {
    pub fn point(re: Rat, im: Rat, multiplicity: u32) -> Self {
        RootBox {
            re_lo: re.clone(),
            re_hi: re,
            im_lo: im.clone(),
            im_hi: im,
            multiplicity,
        }
    }

    pub fn contains(&self, re: &Rat, im: &Rat) -> bool {
        &self.re_lo <= re && re <= &self.re_hi && &self.im_lo <= im && im <= &self.im_hi
    }

    pub fn contains_f64(&self, re: f64, im: f64, slack: f64) -> bool {
        let f = |r: &Rat| r.to_f64_lossy();
        f(&self.re_lo) - slack <= re
            && re <= f(&self.re_hi) + slack
            && f(&self.im_lo) - slack <= im
            && im <= f(&self.im_hi) + slack
    }

    /// Larger of the two side lengths.
    pub fn width(&self) -> Rat {
        let a = &self.re_hi - &self.re_lo;
        let b = &self.im_hi - &self.im_lo;
        if a > b {
            a
        } else {
            b
        }
    }

    pub fn center(&self) -> (Rat, Rat) {
        let two = Rat::from_int(2);
        (
            (&self.re_lo + &self.re_hi) / &two,
            (&self.im_lo + &self.im_hi) / &two,
        )
    }

    pub fn center_f64(&self) -> Complex64 {
        let (re, im) = self.center();
        Complex64::new(re.to_f64_lossy(), im.to_f64_lossy())
    }

    /// True when the box touches the real axis.
    pub fn meets_real_axis(&self) -> bool {
        self.im_lo <= Rat::zero() && Rat::zero() <= self.im_hi
    }

    pub fn is_point(&self) -> bool {
        self.re_lo == self.re_hi && self.im_lo == self.im_hi
    }

    pub fn intersects(&self, other: &RootBox) -> bool {
        self.re_lo <= other.re_hi
            && other.re_lo <= self.re_hi
            && self.im_lo <= other.im_hi
            && other.im_lo <= self.im_hi
    }

    /// Refine this box against the polynomial it was produced for.
    pub fn refine(&self, coeffs: &[Rat], max_width: &Rat) -> Result<RootBox> {
        refine_complex_roots(coeffs, max_width)?
            .into_iter()
            .find(|b| b.intersects(self))
            .ok_or_else(|| Error::IsolationFailed("box does not belong to this polynomial".into()))
    }

    /// Interval extension of polynomial evaluation over this box.
    pub fn eval_poly(&self, p: &UPolyQ) -> RootBox {
        let z = CInterval::from_box(self);
        let mut acc = CInterval::point(Rat::zero(), Rat::zero());
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(&z).add_real(c);
        }
        acc.into_box(1)
    }
}

impl Serialize for RootBox {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("RootBox", 5)?;
        st.serialize_field("re", &[self.re_lo.to_string(), self.re_hi.to_string()])?;
        st.serialize_field("im", &[self.im_lo.to_string(), self.im_hi.to_string()])?;
        st.serialize_field("multiplicity", &self.multiplicity)?;
        st.serialize_field(
            "approx",
            &fmt_complex(self.center_f64()).to_string(),
        )?;
        st.end()
    }
}

fn fmt_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{:.12e}", z.re)
    } else {
        format!("{:.12e}{:+.12e}i", z.re, z.im)
    }
}

/// Rectangular complex interval with rational endpoints.
#[derive(Clone, Debug)]
struct CInterval {
    re: (Rat, Rat),
    im: (Rat, Rat),
}

fn interval_mul(a: &(Rat, Rat), b: &(Rat, Rat)) -> (Rat, Rat) {
    let products = [&a.0 * &b.0, &a.0 * &b.1, &a.1 * &b.0, &a.1 * &b.1];
    let lo = products.iter().min().cloned().expect("four products");
    let hi = products.iter().max().cloned().expect("four products");
    (lo, hi)
}

fn interval_add(a: &(Rat, Rat), b: &(Rat, Rat)) -> (Rat, Rat) {
    (&a.0 + &b.0, &a.1 + &b.1)
}

fn interval_sub(a: &(Rat, Rat), b: &(Rat, Rat)) -> (Rat, Rat) {
    (&a.0 - &b.1, &a.1 - &b.0)
}

impl CInterval {
    fn point(re: Rat, im: Rat) -> Self {
        CInterval {
            re: (re.clone(), re),
            im: (im.clone(), im),
        }
    }

    fn from_box(b: &RootBox) -> Self {
        CInterval {
            re: (b.re_lo.clone(), b.re_hi.clone()),
            im: (b.im_lo.clone(), b.im_hi.clone()),
        }
    }

    fn mul(&self, o: &CInterval) -> CInterval {
        CInterval {
            re: interval_sub(&interval_mul(&self.re, &o.re), &interval_mul(&self.im, &o.im)),
            im: interval_add(&interval_mul(&self.re, &o.im), &interval_mul(&self.im, &o.re)),
        }
    }

    fn add_real(&self, c: &Rat) -> CInterval {
        CInterval {
            re: (&self.re.0 + c, &self.re.1 + c),
            im: self.im.clone(),
        }
    }

    fn into_box(self, multiplicity: u32) -> RootBox {
        RootBox {
            re_lo: self.re.0,
            re_hi: self.re.1,
            im_lo: self.im.0,
            im_hi: self.im.1,
            multiplicity,
        }
    }
}

/// Exact complex rational.
#[derive(Clone, Debug, PartialEq)]
struct CRat {
    re: Rat,
    im: Rat,
}

impl CRat {
    fn zero() -> Self {
        CRat {
            re: Rat::zero(),
            im: Rat::zero(),
        }
    }

    fn add(&self, o: &CRat) -> CRat {
        CRat {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }

    fn sub(&self, o: &CRat) -> CRat {
        CRat {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    fn mul(&self, o: &CRat) -> CRat {
        CRat {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn norm_sqr(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    fn div(&self, o: &CRat) -> Option<CRat> {
        let d = o.norm_sqr();
        if d.is_zero() {
            return None;
        }
        Some(CRat {
            re: (&self.re * &o.re + &self.im * &o.im) / &d,
            im: (&self.im * &o.re - &self.re * &o.im) / &d,
        })
    }

    fn round(&self, bits: u32) -> CRat {
        CRat {
            re: dyadic_round(&self.re, bits),
            im: dyadic_round(&self.im, bits),
        }
    }

    fn from_f64(z: Complex64, bits: u32) -> Option<CRat> {
        let re = Rat::from_float(z.re)?;
        let im = Rat::from_float(z.im)?;
        Some(CRat { re, im }.round(bits))
    }
}

/// Primitive integer coefficient vector proportional to `p`, with positive
/// leading coefficient.
fn primitive_integer_coeffs(p: &UPolyQ) -> Vec<BigInt> {
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * Rat::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !g.is_zero() {
        for c in ints.iter_mut() {
            *c = &*c / &g;
        }
    }
    if ints.last().is_some_and(|c| c.is_negative()) {
        for c in ints.iter_mut() {
            *c = -&*c;
        }
    }
    ints
}

fn sturm_sequence(p: &UPolyQ) -> Vec<UPolyQ> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let r = seq[n - 2].rem(&seq[n - 1]).expect("nonzero divisor");
        if r.is_zero() {
            break;
        }
        // positive rescaling keeps signs and tames coefficient growth
        let content = primitive_scale(&r);
        seq.push(-&r.scale(&content));
    }
    seq
}

fn primitive_scale(p: &UPolyQ) -> Rat {
    use crate::scalar::ExactField;
    Rat::content(p.coeffs()).inv()
}

fn sign_variations(seq: &[UPolyQ], t: &Rat) -> usize {
    let mut count = 0;
    let mut last: Option<bool> = None;
    for s in seq {
        let v = s.eval(t);
        if v.is_zero() {
            continue;
        }
        let pos = v.is_positive();
        if let Some(prev) = last {
            if prev != pos {
                count += 1;
            }
        }
        last = Some(pos);
    }
    count
}

/// Integer roots of a square-free monic integer polynomial, by Sturm
/// bisection on integer endpoints.
fn integer_roots(p: &UPolyQ) -> Vec<BigInt> {
    let mut roots = Vec::new();
    let Some(n) = p.degree() else {
        return roots;
    };
    if n == 0 {
        return roots;
    }
    let bound = p
        .coeffs()
        .iter()
        .map(|c| c.abs().ceil().to_integer())
        .max()
        .unwrap_or_else(BigInt::zero)
        + BigInt::one();
    let seq = sturm_sequence(p);
    let var = |t: &BigInt| sign_variations(&seq, &Rat::from_integer(t.clone()));
    // each stack entry is an interval (lo, hi] with its root count
    let lo = -bound.clone();
    let hi = bound;
    let (vlo, vhi) = (var(&lo), var(&hi));
    let mut stack = vec![(lo, hi, vlo, vhi)];
    while let Some((lo, hi, vlo, vhi)) = stack.pop() {
        let count = vlo.saturating_sub(vhi);
        if count == 0 {
            continue;
        }
        if &hi - &lo == BigInt::one() {
            if p.eval(&Rat::from_integer(hi.clone())).is_zero() {
                roots.push(hi);
            }
            continue;
        }
        let mid: BigInt = (&lo + &hi).div_floor(&BigInt::from(2));
        let vmid = var(&mid);
        stack.push((lo, mid.clone(), vlo, vmid));
        stack.push((mid, hi, vmid, vhi));
    }
    roots.sort();
    roots
}

/// All rational roots of the polynomial with the given ascending
/// coefficients, with multiplicities, in increasing order.
pub fn rational_roots(coeffs: &[Rat]) -> Result<Vec<(Rat, u32)>> {
    let p = UPoly::new(coeffs.to_vec());
    if p.is_zero() {
        return Err(Error::ZeroPolynomial("rational_roots"));
    }
    let sqf = p.squarefree_part();
    let Some(n) = sqf.degree() else {
        return Ok(Vec::new());
    };
    if n == 0 {
        return Ok(Vec::new());
    }
    let ints = primitive_integer_coeffs(&sqf);
    let lead = ints[n].clone();
    // t = lead * x turns the polynomial into a monic integer one whose
    // rational roots are integers
    let mut monic = Vec::with_capacity(n + 1);
    for (i, a) in ints.iter().enumerate() {
        let power = if i < n {
            num_traits::pow(lead.clone(), n - 1 - i)
        } else {
            BigInt::one()
        };
        let c = if i < n { a * power } else { BigInt::one() };
        monic.push(Rat::from_integer(c));
    }
    let monic = UPoly::new(monic);
    let mut out = Vec::new();
    for t in integer_roots(&monic) {
        let root = Rat::new(t, lead.clone());
        debug_assert!(p.eval(&root).is_zero());
        let lin = UPoly::linear_root(root.clone());
        let mut m = 0;
        let mut rest = p.clone();
        while let Ok(q) = rest.exact_div(&lin) {
            rest = q;
            m += 1;
        }
        out.push((root, m));
    }
    Ok(out)
}

fn aberth(p: &UPolyQ) -> Result<Vec<Complex64>> {
    let n = p.degree().expect("nonzero");
    let lc = p.lc().expect("nonzero").clone();
    let a: Vec<Complex64> = p
        .coeffs()
        .iter()
        .map(|c| Complex64::new((c / &lc).to_f64().unwrap_or(f64::NAN), 0.0))
        .collect();
    if a.iter().any(|c| !c.re.is_finite()) {
        return Err(Error::IsolationFailed(
            "coefficients exceed floating point range".into(),
        ));
    }
    // Fujiwara bound for the initial circle
    let radius = (0..n)
        .map(|i| {
            let m = a[i].norm();
            if i == 0 {
                (m / 2.0).powf(1.0 / n as f64)
            } else {
                m.powf(1.0 / (n - i) as f64)
            }
        })
        .fold(0.0f64, f64::max)
        .max(1e-3)
        * 2.0;
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 0.4 + std::f64::consts::TAU * k as f64 / n as f64))
        .collect();
    let eval = |t: Complex64| {
        let mut v = Complex64::new(0.0, 0.0);
        let mut d = Complex64::new(0.0, 0.0);
        for c in a.iter().rev() {
            d = d * t + v;
            v = v * t + c;
        }
        (v, d)
    };
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for k in 0..n {
            let (v, d) = eval(z[k]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / d;
            let sum: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| Complex64::new(1.0, 0.0) / (z[k] - z[j]))
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if !w.re.is_finite() || !w.im.is_finite() {
                continue;
            }
            z[k] -= w;
            moved = moved.max(w.norm() / z[k].norm().max(1.0));
        }
        if moved < 1e-15 {
            break;
        }
    }
    if z.iter().any(|t| !t.re.is_finite() || !t.im.is_finite()) {
        return Err(Error::IsolationFailed("Aberth iteration diverged".into()));
    }
    Ok(z)
}

/// Taylor coefficients of `p` at `c`: `p(c + w) = sum b_k w^k`.
fn taylor_at(p: &UPolyQ, c: &CRat) -> Vec<CRat> {
    let mut work: Vec<CRat> = p
        .coeffs()
        .iter()
        .map(|a| CRat {
            re: a.clone(),
            im: Rat::zero(),
        })
        .collect();
    let n = work.len();
    let mut out = Vec::with_capacity(n);
    // repeated synthetic division by (t - c)
    for k in 0..n {
        let mut acc = CRat::zero();
        for i in (k..n).rev() {
            acc = acc.mul(c).add(&work[i]);
            work[i] = acc.clone();
        }
        out.push(work[k].clone());
    }
    out
}

fn modulus_upper(z: &CRat, bits: u32) -> Rat {
    sqrt_upper(&z.norm_sqr(), bits)
}

fn modulus_lower(z: &CRat, bits: u32) -> Rat {
    sqrt_lower(&z.norm_sqr(), bits)
}

/// Pellet's test with `k = 1`: true when the disk of radius `r` around the
/// Taylor center provably holds exactly one root.
fn pellet_one(taylor: &[CRat], r: &Rat, bits: u32) -> bool {
    let b1 = modulus_lower(&taylor[1], bits + 16);
    let lhs = b1 * r;
    let mut rhs = modulus_upper(&taylor[0], bits + 16);
    let mut rk = r.clone();
    for b in taylor.iter().skip(2) {
        rk = &rk * r;
        rhs += modulus_upper(b, bits + 16) * &rk;
    }
    lhs > rhs
}

struct Disk {
    center: CRat,
    radius: Rat,
}

fn certify_disk(p: &UPolyQ, approx: Complex64, bits: u32) -> Option<Disk> {
    let dp = p.derivative();
    let mut c = CRat::from_f64(approx, bits)?;
    let eval = |poly: &UPolyQ, z: &CRat| {
        let mut acc = CRat::zero();
        for a in poly.coeffs().iter().rev() {
            acc = acc.mul(z).add(&CRat {
                re: a.clone(),
                im: Rat::zero(),
            });
        }
        acc
    };
    for _ in 0..24 {
        let step = eval(p, &c).div(&eval(&dp, &c))?;
        let next = c.sub(&step).round(bits);
        if next == c {
            break;
        }
        c = next;
    }
    let taylor = taylor_at(p, &c);
    let b1_low = modulus_lower(&taylor[1], bits + 16);
    if b1_low.is_zero() {
        return None;
    }
    let delta = modulus_upper(&taylor[0], bits + 16) / &b1_low;
    let tiny = Rat::new(BigInt::one(), BigInt::one() << bits);
    let mut r = dyadic_ceil(&(delta * Rat::from_int(2) + &tiny), bits + 8);
    for _ in 0..8 {
        if pellet_one(&taylor, &r, bits) {
            return Some(Disk { center: c, radius: r });
        }
        r *= Rat::from_int(4);
    }
    None
}

fn disk_box(d: &Disk, multiplicity: u32) -> RootBox {
    RootBox {
        re_lo: &d.center.re - &d.radius,
        re_hi: &d.center.re + &d.radius,
        im_lo: &d.center.im - &d.radius,
        im_hi: &d.center.im + &d.radius,
        multiplicity,
    }
}

/// Bits needed to cover the magnitude of the largest root.
fn root_bound_bits(p: &UPolyQ) -> u32 {
    let lc = p.lc().expect("nonzero").abs();
    let m = p
        .coeffs()
        .iter()
        .map(|c| c.abs() / &lc)
        .max()
        .unwrap_or_else(Rat::one)
        + Rat::one();
    m.ceil().to_integer().bits() as u32
}

struct Factor {
    poly: UPolyQ,
    multiplicity: u32,
    exact: Vec<Rat>,
    approx: Vec<Complex64>,
}

fn prepare(coeffs: &[Rat]) -> Result<Vec<Factor>> {
    let p = UPoly::new(coeffs.to_vec());
    match p.degree() {
        None => return Err(Error::ZeroPolynomial("isolate_complex_roots")),
        Some(0) => {
            return Err(Error::Precondition(
                "root isolation needs degree at least one".into(),
            ))
        }
        _ => {}
    }
    let mut out = Vec::new();
    for (s, mult) in p.squarefree_decomposition() {
        let mut rest = s.clone();
        let mut exact = Vec::new();
        for (r, _) in rational_roots(s.coeffs())? {
            rest = rest.exact_div(&UPoly::linear_root(r.clone()))?;
            exact.push(r);
        }
        let approx = if rest.degree().unwrap_or(0) > 0 {
            aberth(&rest)?
        } else {
            Vec::new()
        };
        out.push(Factor {
            poly: rest,
            multiplicity: mult,
            exact,
            approx,
        });
    }
    Ok(out)
}

fn boxes_at(factors: &[Factor], bits: u32) -> Option<Vec<RootBox>> {
    let mut boxes = Vec::new();
    for f in factors {
        for r in &f.exact {
            boxes.push(RootBox::point(r.clone(), Rat::zero(), f.multiplicity));
        }
        for z in &f.approx {
            let d = certify_disk(&f.poly, *z, bits)?;
            boxes.push(disk_box(&d, f.multiplicity));
        }
    }
    for i in 0..boxes.len() {
        for j in i + 1..boxes.len() {
            if boxes[i].intersects(&boxes[j]) {
                return None;
            }
        }
    }
    Some(boxes)
}

fn sort_boxes(boxes: &mut [RootBox]) {
    boxes.sort_by(|a, b| {
        let (ar, ai) = a.center();
        let (br, bi) = b.center();
        ar.partial_cmp(&br)
            .unwrap_or(Ordering::Equal)
            .then(ai.partial_cmp(&bi).unwrap_or(Ordering::Equal))
    });
}

fn isolate_until(
    coeffs: &[Rat],
    max_width: Option<&Rat>,
    cap_bits: u32,
) -> Result<Vec<RootBox>> {
    let factors = prepare(coeffs)?;
    let p = UPoly::new(coeffs.to_vec());
    let offset = root_bound_bits(&p);
    let mut bits = START_BITS + offset;
    let cap = cap_bits + offset;
    loop {
        if let Some(mut boxes) = boxes_at(&factors, bits) {
            let narrow = max_width.is_none_or(|w| boxes.iter().all(|b| &b.width() <= w));
            if narrow {
                sort_boxes(&mut boxes);
                return Ok(boxes);
            }
        }
        if bits >= cap {
            return Err(Error::IsolationFailed(format!(
                "could not separate roots within {cap} bits"
            )));
        }
        bits = (bits * 2).min(cap);
    }
}

/// Disjoint boxes, one per distinct complex root, each certified to hold
/// exactly its root; multiplicities sum to the degree.
pub fn isolate_complex_roots(coeffs: &[Rat]) -> Result<Vec<RootBox>> {
    isolate_until(coeffs, None, PRECISION_CAP_BITS)
}

/// Like [`isolate_complex_roots`] with every box no wider than `max_width`.
pub fn refine_complex_roots(coeffs: &[Rat], max_width: &Rat) -> Result<Vec<RootBox>> {
    if max_width <= &Rat::zero() {
        return Err(Error::Precondition("requested width must be positive".into()));
    }
    // enough bits to reach the requested width, plus margin
    let need = (Rat::one() / max_width).ceil().to_integer().bits() as u32 + 16;
    isolate_until(coeffs, Some(max_width), need.max(PRECISION_CAP_BITS))
}
