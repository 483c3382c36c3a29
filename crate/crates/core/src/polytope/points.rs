//! Lattice point enumeration.

use std::ops::Deref;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{hull, Facet, RationalPolytope};
use crate::arith::{ExactInt, Rational};

/// Sorted, duplicate-free integer points.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LatticePointSet {
    points: Vec<Vec<BigInt>>,
}

impl LatticePointSet {
    pub fn new(mut points: Vec<Vec<BigInt>>) -> Self {
        points.sort();
        points.dedup();
        LatticePointSet { points }
    }

    pub fn contains_point(&self, p: &[BigInt]) -> bool {
        self.points.binary_search_by(|x| x.as_slice().cmp(p)).is_ok()
    }

    pub fn into_vec(self) -> Vec<Vec<BigInt>> {
        self.points
    }
}

impl Deref for LatticePointSet {
    type Target = [Vec<BigInt>];

    fn deref(&self) -> &Self::Target {
        &self.points
    }
}

impl Serialize for LatticePointSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<ExactInt>> = self
            .points
            .iter()
            .map(|p| p.iter().cloned().map(ExactInt).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LatticePointSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows: Vec<Vec<ExactInt>> = Vec::deserialize(d)?;
        Ok(LatticePointSet::new(
            rows.into_iter()
                .map(|r| r.into_iter().map(|x| x.0).collect())
                .collect(),
        ))
    }
}

/// Constraints of the projection onto the first `j + 1` coordinates.
struct Level {
    facets: Vec<Facet>,
    equations: Vec<Facet>,
}

fn ceil(q: &Rational) -> BigInt {
    q.ceil().to_integer()
}

fn floor(q: &Rational) -> BigInt {
    q.floor().to_integer()
}

impl Level {
    /// Integer range of the last coordinate given the earlier ones, or `None`
    /// when the fibre has no integer point.
    fn range(&self, prefix: &[BigInt]) -> Option<(BigInt, BigInt)> {
        let j = prefix.len();
        let partial = |f: &Facet| -> Rational {
            f.normal[..j]
                .iter()
                .zip(prefix)
                .map(|(a, x)| a * Rational::from_integer(x.clone()))
                .sum()
        };
        let mut lo: Option<BigInt> = None;
        let mut hi: Option<BigInt> = None;
        let tighten_lo = |lo: &mut Option<BigInt>, v: BigInt| {
            if lo.as_ref().is_none_or(|l| v > *l) {
                *lo = Some(v);
            }
        };
        let tighten_hi = |hi: &mut Option<BigInt>, v: BigInt| {
            if hi.as_ref().is_none_or(|h| v < *h) {
                *hi = Some(v);
            }
        };
        for e in &self.equations {
            let rest = &e.rhs - partial(e);
            let a = &e.normal[j];
            if a.is_zero() {
                if !rest.is_zero() {
                    return None;
                }
                continue;
            }
            let x = rest / a;
            if !x.is_integer() {
                return None;
            }
            let x = x.to_integer();
            tighten_lo(&mut lo, x.clone());
            tighten_hi(&mut hi, x);
        }
        for f in &self.facets {
            let rest = &f.rhs - partial(f);
            let a = &f.normal[j];
            if a.is_zero() {
                if rest.is_positive() {
                    return None;
                }
                continue;
            }
            let x = rest / a;
            if a.is_positive() {
                tighten_lo(&mut lo, ceil(&x));
            } else {
                tighten_hi(&mut hi, floor(&x));
            }
        }
        match (lo, hi) {
            (Some(l), Some(h)) if l <= h => Some((l, h)),
            (Some(_), Some(_)) => None,
            _ => unreachable!("bounded polytope"),
        }
    }
}

impl RationalPolytope {
    /// All lattice points, found coordinate by coordinate using the exact
    /// projections onto leading coordinates as bounds.
    pub fn lattice_points(&self) -> LatticePointSet {
        let n = self.ambient_dim;
        if n == 0 {
            return LatticePointSet::new(vec![Vec::new()]);
        }
        let levels: Vec<Level> = (1..=n)
            .map(|j| {
                if j == n {
                    return Level {
                        facets: self.facets.clone(),
                        equations: self.equations.clone(),
                    };
                }
                let proj: Vec<Vec<Rational>> =
                    self.vertices.iter().map(|v| v[..j].to_vec()).collect();
                let h = hull(&proj).expect("nonempty");
                Level {
                    facets: h.facets,
                    equations: h.equations,
                }
            })
            .collect();
        let mut out = Vec::new();
        let mut prefix = Vec::with_capacity(n);
        descend(&levels, &mut prefix, &mut out);
        LatticePointSet::new(out)
    }

    pub fn interior_lattice_points(&self) -> LatticePointSet {
        let pts = self
            .lattice_points()
            .into_vec()
            .into_iter()
            .filter(|p| {
                let x: Vec<Rational> = p.iter().map(|c| Rational::from_integer(c.clone())).collect();
                self.contains_strictly(&x)
            })
            .collect();
        LatticePointSet::new(pts)
    }
}

fn descend(levels: &[Level], prefix: &mut Vec<BigInt>, out: &mut Vec<Vec<BigInt>>) {
    let j = prefix.len();
    let Some((lo, hi)) = levels[j].range(prefix) else {
        return;
    };
    let mut x = lo;
    while x <= hi {
        prefix.push(x.clone());
        if j + 1 == levels.len() {
            out.push(prefix.clone());
        } else {
            descend(levels, prefix, out);
        }
        prefix.pop();
        x += 1;
    }
}
