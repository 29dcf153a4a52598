//! Shared generators and independent oracles for the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use polyint::{BiPoly, FactoredIntegral, Integral, Poly, Rat, VectorField};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Nonzero rational with numerator and denominator at most 9 in size.
pub fn small_rat(r: &mut ChaCha8Rng) -> Rat {
    loop {
        let n = r.gen_range(-9..=9);
        if n != 0 {
            return rat(n, r.gen_range(1..=9));
        }
    }
}

/// Random polynomial of total degree exactly `deg`.
pub fn random_poly(r: &mut ChaCha8Rng, deg: u32) -> Poly {
    loop {
        let mut terms = Vec::new();
        for d in 0..=deg {
            for i in 0..=d {
                let keep = if d == deg { r.gen_bool(0.6) } else { r.gen_bool(0.4) };
                if keep {
                    terms.push((i, d - i, small_rat(r)));
                }
            }
        }
        let p = BiPoly::from_terms(terms.into_iter().map(|(i, j, c)| ((i, j), c)));
        if p.total_degree() == Some(deg) {
            return p;
        }
    }
}

/// The randomized factored-integral family: `p <= p_max` factors of degree
/// at most `deg_max` with exponents at most `k_max`.
pub fn random_integral(r: &mut ChaCha8Rng, p_range: std::ops::RangeInclusive<usize>, deg_max: u32, k_max: u32) -> Integral {
    loop {
        let p = r.gen_range(p_range.clone());
        let factors = (0..p)
            .map(|_| {
                let d = r.gen_range(1..=deg_max);
                (random_poly(r, d), r.gen_range(1..=k_max))
            })
            .collect();
        if let Ok(f) = FactoredIntegral::new(factors) {
            return f;
        }
    }
}

pub fn random_field(r: &mut ChaCha8Rng, deg_max: u32) -> VectorField<Rat> {
    loop {
        let (dp, dq) = (r.gen_range(1..=deg_max), r.gen_range(1..=deg_max));
        let p = random_poly(r, dp);
        let q = random_poly(r, dq);
        if let Ok(x) = VectorField::new(p, q) {
            if polyint::field::is_coprime(&x) {
                return x;
            }
        }
    }
}

/// Dense coefficient table `c[i][j]` of `x^i y^j`, the test-side oracle
/// representation.
pub type Dense = Vec<Vec<Rat>>;

pub fn to_dense(p: &Poly) -> Dense {
    let d = p.total_degree().unwrap_or(0) as usize;
    let mut t = vec![vec![Rat::zero(); d + 1]; d + 1];
    for (m, c) in p.terms() {
        t[m.x as usize][m.y as usize] = c.clone();
    }
    t
}

pub fn dense_mul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len() + b.len() - 1;
    let mut t = vec![vec![Rat::zero(); n]; n];
    for (i, row) in a.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, row2) in b.iter().enumerate() {
                for (l, e) in row2.iter().enumerate() {
                    if !e.is_zero() {
                        t[i + k][j + l] += c * e;
                    }
                }
            }
        }
    }
    t
}

pub fn dense_add(a: &Dense, b: &Dense) -> Dense {
    let n = a.len().max(b.len());
    let mut t = vec![vec![Rat::zero(); n]; n];
    for src in [a, b] {
        for (i, row) in src.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                t[i][j] += c;
            }
        }
    }
    t
}

pub fn dense_dx(a: &Dense) -> Dense {
    let mut t = vec![vec![Rat::zero(); a.len()]; a.len()];
    for i in 1..a.len() {
        for j in 0..a.len() {
            t[i - 1][j] = &a[i][j] * Rat::from_integer(BigInt::from(i));
        }
    }
    t
}

pub fn dense_dy(a: &Dense) -> Dense {
    let mut t = vec![vec![Rat::zero(); a.len()]; a.len()];
    for i in 0..a.len() {
        for j in 1..a.len() {
            t[i][j - 1] = &a[i][j] * Rat::from_integer(BigInt::from(j));
        }
    }
    t
}

pub fn dense_is_zero(a: &Dense) -> bool {
    a.iter().flatten().all(|c| c.is_zero())
}

pub fn dense_eval(a: &Dense, x: &Rat, y: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for (i, row) in a.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            if !c.is_zero() {
                acc += c * num_traits::pow(x.clone(), i) * num_traits::pow(y.clone(), j);
            }
        }
    }
    acc
}

/// Determinant by cofactor expansion, for small matrices.
pub fn laplace_det(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    if n == 0 {
        return Rat::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Rat::zero();
    for (j, c) in m[0].iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Rat>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = c * laplace_det(&minor);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Resultant of two univariate polynomials (ascending coefficients, leading
/// coefficient nonzero) by a cofactor-expanded Sylvester determinant.
pub fn univariate_resultant(f: &[Rat], g: &[Rat]) -> Rat {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    let mut rows = Vec::new();
    for s in 0..n {
        let mut row = vec![Rat::zero(); size];
        for (k, c) in f.iter().rev().enumerate() {
            row[s + k] = c.clone();
        }
        rows.push(row);
    }
    for s in 0..m {
        let mut row = vec![Rat::zero(); size];
        for (k, c) in g.iter().rev().enumerate() {
            row[s + k] = c.clone();
        }
        rows.push(row);
    }
    laplace_det(&rows)
}

pub fn abs(r: &Rat) -> Rat {
    r.abs()
}

pub fn verdict(ok: bool) -> &'static str {
    if ok { "PASS" } else { "FAIL" }
}

/// Equality of dense tables of possibly different sizes.
pub fn dense_eq(a: &Dense, b: &Dense) -> bool {
    let n = a.len().max(b.len());
    let at = |t: &Dense, i: usize, j: usize| t.get(i).and_then(|r| r.get(j)).cloned().unwrap_or_else(Rat::zero);
    (0..n).all(|i| (0..n).all(|j| at(a, i, j) == at(b, i, j)))
}
