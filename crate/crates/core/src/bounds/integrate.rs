//! Exact integration of products of affine powers over simplices.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::arith::{factorial, Rational};
use crate::linalg::rational_determinant;

/// Polynomial in barycentric variables `μ_0, …, μ_q`, keyed by exponents.
type Poly = BTreeMap<Vec<u32>, Rational>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let c = ca * cb;
            let entry = out.entry(e).or_insert_with(Rational::zero);
            *entry += c;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn poly_pow(a: &Poly, k: u32, nvars: usize) -> Poly {
    let mut acc = Poly::new();
    acc.insert(vec![0; nvars], Rational::one());
    for _ in 0..k {
        acc = poly_mul(&acc, a);
    }
    acc
}

/// An affine form `c + ⟨a, x⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineForm {
    pub constant: Rational,
    pub linear: Vec<Rational>,
}

impl AffineForm {
    pub fn eval(&self, x: &[Rational]) -> Rational {
        &self.constant + self.linear.iter().zip(x).map(|(a, b)| a * b).sum::<Rational>()
    }
}

/// `∫_T Π_i f_i(x)^{k_i} dx` over the full-dimensional simplex `T` with the
/// given `q + 1` vertices in `R^q`. Each form is pulled back to barycentric
/// coordinates, the product expanded, and monomials integrated with
/// `∫ Π μ_j^{a_j} = |det| · Π a_j! / (q + Σ a_j)!`.
pub fn integrate_over_simplex(vertices: &[Vec<Rational>], factors: &[(AffineForm, u32)]) -> Rational {
    let q = vertices.len() - 1;
    let base = &vertices[0];
    let rows: Vec<Vec<Rational>> = vertices[1..]
        .iter()
        .map(|v| v.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    let jac = if q == 0 {
        Rational::one()
    } else {
        rational_determinant(&rows).abs()
    };
    if jac.is_zero() {
        return Rational::zero();
    }
    let nvars = q + 1;
    let mut poly = Poly::new();
    poly.insert(vec![0; nvars], Rational::one());
    for (form, k) in factors {
        let mut lin = Poly::new();
        for (j, v) in vertices.iter().enumerate() {
            let c = form.eval(v);
            if c.is_zero() {
                continue;
            }
            let mut e = vec![0; nvars];
            e[j] = 1;
            lin.insert(e, c);
        }
        poly = poly_mul(&poly, &poly_pow(&lin, *k, nvars));
    }
    let mut total = Rational::zero();
    for (e, c) in &poly {
        let deg: usize = e.iter().map(|&x| x as usize).sum();
        let num = e
            .iter()
            .fold(num_bigint::BigInt::one(), |acc, &x| acc * factorial(x as usize));
        total += c * Rational::new(num, factorial(q + deg));
    }
    total * jac
}
