//! Inequality machinery: the multinomial product bound and its exceptions,
//! staged bounds, the integration bound, and the unit-fraction inequality.

mod integrate;
mod slicing;

use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{bound_b, factorial, multinomial, sylvester, Rational};
use crate::construct::BarycentricVector;
use crate::error::{Error, Result};

pub use integrate::{integrate_over_simplex, AffineForm};
pub use slicing::{
    bulk_barycentric_check, int5_bound, read_barycentric_file, slicing_dual_volume, slicing_identity,
    BulkCheck,
    SlicingData, SlicingIdentity,
};

/// One verified inequality `lhs < rhs` (or `≤` where stated).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    #[serde(rename = "case")]
    pub case_id: String,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

impl BoundReport {
    pub fn strict(case_id: impl Into<String>, lhs: &Rational, rhs: &Rational) -> Self {
        BoundReport {
            case_id: case_id.into(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            holds: lhs < rhs,
        }
    }
}

/// `(Σ d_i)! / Π d_i! · Π B_{d_i}`.
pub fn provet3_lhs(dims: &[usize]) -> Result<BigInt> {
    let mut acc = multinomial(dims);
    for &d in dims {
        acc *= bound_b(d)?;
    }
    Ok(acc)
}

pub fn provet3_holds(d: usize, dims: &[usize]) -> Result<bool> {
    Ok(provet3_lhs(dims)? < bound_b(d)?)
}

/// Non-increasing tuples of length `t` with `1 ≤ d_i ≤ d − t + 1` and
/// `Σ d_i ≥ d`.
pub fn admissible_tuples(d: usize, t: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if t == 0 || t > d + 1 {
        return out;
    }
    let cap = d + 1 - t;
    fn rec(t: usize, max: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == t {
            if cur.iter().sum::<usize>() >= d {
                out.push(cur.clone());
            }
            return;
        }
        for x in (1..=max).rev() {
            cur.push(x);
            rec(t, x, d, cur, out);
            cur.pop();
        }
    }
    rec(t, cap, d, &mut Vec::new(), &mut out);
    out
}

/// Every admissible `(d, tuple)` in the ranges where the product bound fails.
pub fn scan_exceptions(
    d_range: RangeInclusive<usize>,
    t_range: RangeInclusive<usize>,
) -> Result<Vec<(usize, Vec<usize>)>> {
    let cells: Vec<(usize, usize)> = d_range
        .flat_map(|d| t_range.clone().map(move |t| (d, t)))
        .collect();
    let found: Vec<Result<Vec<(usize, Vec<usize>)>>> = cells
        .par_iter()
        .map(|&(d, t)| {
            let mut hits = Vec::new();
            for tuple in admissible_tuples(d, t) {
                if !provet3_holds(d, &tuple)? {
                    hits.push((d, tuple));
                }
            }
            Ok(hits)
        })
        .collect();
    let mut out = Vec::new();
    for f in found {
        out.extend(f?);
    }
    Ok(out)
}

/// `(d − 1 + d_t)! / ((d − 1)! d_t!) · B_{d−1} · B_{d_t} < B_d`.
pub fn staged_bound_holds(d: usize, d_t: usize) -> Result<bool> {
    if d_t == 0 || d_t + 1 > d {
        return Err(Error::Precondition(format!("need 1 ≤ d_t ≤ d − 1, got d={d}, d_t={d_t}")));
    }
    Ok(provet3_lhs(&[d - 1, d_t])? < bound_b(d)?)
}

pub fn staged_bound_report(d: usize, d_t: usize) -> Result<BoundReport> {
    let lhs = provet3_lhs(&[d - 1, d_t])?;
    let rhs = bound_b(d)?;
    staged_bound_holds(d, d_t)?;
    Ok(BoundReport {
        case_id: format!("staged d={d} d_t={d_t}"),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        holds: lhs < rhs,
    })
}

/// `(1/d!) Σ_i Π_j 1/β_{i,j}` for two simplices of dimension `d − 1`.
pub fn lastcase_bound(beta1: &BarycentricVector, beta2: &BarycentricVector) -> Result<Rational> {
    if beta1.len() != beta2.len() || beta1.len() < 3 {
        return Err(Error::Precondition(
            "both simplices must have the same dimension d − 1 ≥ 2".into(),
        ));
    }
    let d = beta1.len();
    let p = |b: &BarycentricVector| -> Rational { b.entries().iter().map(Rational::recip).product() };
    Ok((p(beta1) + p(beta2)) / Rational::from_integer(factorial(d)))
}

/// `(1/Π β ≤ (s_d − 1)², equality)` with `d = |β|`.
pub fn unit_fraction_bound_check(beta: &BarycentricVector) -> Result<(bool, bool)> {
    let d = beta.len();
    let lhs: Rational = beta.entries().iter().map(Rational::recip).product();
    let s = sylvester(d)? - 1u32;
    let rhs = Rational::from_integer(&s * &s);
    Ok((lhs <= rhs, lhs == rhs))
}

/// `(1/s_1, …, 1/s_{d−1}, 1/(s_d − 1))`.
pub fn sylvester_vector(d: usize) -> Result<BarycentricVector> {
    if d < 2 {
        return Err(Error::Precondition("need d ≥ 2".into()));
    }
    let mut v: Vec<Rational> = (1..d)
        .map(|i| sylvester(i).map(|s| Rational::new(BigInt::one(), s)))
        .collect::<Result<_>>()?;
    v.push(Rational::new(BigInt::one(), sylvester(d)? - 1u32));
    BarycentricVector::new(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, r: i64) -> Rational {
        Rational::new(p.into(), r.into())
    }

    fn bv(v: &[(i64, i64)]) -> BarycentricVector {
        BarycentricVector::new(v.iter().map(|&(a, b)| q(a, b)).collect()).unwrap()
    }

    #[test]
    fn provet3_examples() {
        assert_eq!(provet3_lhs(&[3, 3]).unwrap(), BigInt::from(103680));
        assert!(!provet3_holds(4, &[3, 3]).unwrap());
        assert_eq!(provet3_lhs(&[2, 2, 2]).unwrap(), BigInt::from(65610));
        assert!(!provet3_holds(4, &[2, 2, 2]).unwrap());
        assert!(provet3_holds(6, &[5, 4]).unwrap());
    }

    #[test]
    fn provet3_monotone() {
        for d in 3..=9 {
            for t in 2..=4 {
                for tuple in admissible_tuples(d, t) {
                    if provet3_holds(d, &tuple).unwrap() {
                        continue;
                    }
                    for i in 0..t {
                        let mut bigger = tuple.clone();
                        bigger[i] += 1;
                        assert!(!provet3_holds(d, &bigger).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn staged_examples() {
        assert!(staged_bound_holds(4, 1).unwrap());
        assert_eq!(staged_bound_report(4, 1).unwrap().lhs, "576");
        assert!(staged_bound_holds(5, 2).unwrap());
        assert!(staged_bound_holds(6, 4).unwrap());
        assert!(staged_bound_holds(4, 4).is_err());
    }

    #[test]
    fn t2_tail_scan() {
        let hits = scan_exceptions(10..=20, 2..=2).unwrap();
        assert!(hits.iter().all(|(d, t)| t == &vec![d - 1, d - 1]));
        assert_eq!(hits.len(), 11);
    }

    #[test]
    fn lastcase_examples() {
        let s = bv(&[(1, 2), (1, 3), (1, 6)]);
        assert_eq!(lastcase_bound(&s, &s).unwrap(), q(12, 1));
        let u = bv(&[(1, 3), (1, 3), (1, 3)]);
        assert_eq!(lastcase_bound(&u, &u).unwrap(), q(9, 1));
        assert!(lastcase_bound(&s, &bv(&[(1, 2), (1, 2)])).is_err());
    }

    #[test]
    fn unit_fraction_examples() {
        assert_eq!(unit_fraction_bound_check(&bv(&[(1, 2), (1, 3), (1, 6)])).unwrap(), (true, true));
        assert_eq!(unit_fraction_bound_check(&bv(&[(1, 3), (1, 3), (1, 3)])).unwrap(), (true, false));
        assert_eq!(unit_fraction_bound_check(&bv(&[(1, 2), (1, 4), (1, 4)])).unwrap(), (true, false));
    }

    #[test]
    fn report_json() {
        let r = BoundReport::strict("x", &q(1, 2), &q(1, 1));
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"case":"x","lhs":"1/2","rhs":"1","holds":true}"#
        );
    }
}
