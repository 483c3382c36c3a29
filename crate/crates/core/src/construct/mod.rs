//! Named constructions: Sylvester simplices, weight systems, barycentric
//! coordinates, simplices from weights and the gluing construction.

mod dual_simplex;
mod glue;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{denominator_lcm, sylvester, ExactRational, Rational};
use crate::error::{Error, Result};
use crate::linalg::{hnf, quotient_projection, rational_nullspace, saturate, IntMatrix, Sublattice};
use crate::polytope::{hull, hull_int, RationalPolytope};

pub use dual_simplex::{dual_simplex_vertices, face_volume_f, simplex_in_basis};
pub use glue::{glue, DecompositionProfile, EmbeddedSimplex, Glued, GluingSpec};

/// `S_(d) = conv{0, s_1 e_1, …, s_{d−1} e_{d−1}, 2(s_d − 1) e_d}`.
pub fn sylvester_simplex(d: usize) -> Result<RationalPolytope> {
    if d < 2 {
        return Err(Error::Precondition(format!("Sylvester simplex needs d ≥ 2, got {d}")));
    }
    let mut pts = vec![vec![BigInt::zero(); d]];
    for i in 1..d {
        let mut e = vec![BigInt::zero(); d];
        e[i - 1] = sylvester(i)?;
        pts.push(e);
    }
    let mut e = vec![BigInt::zero(); d];
    e[d - 1] = (sylvester(d)? - 1u32) * 2u32;
    pts.push(e);
    hull_int(&pts)
}

/// `R_(d) = S_(d) − Σ e_i`.
pub fn reflexive_r(d: usize) -> Result<RationalPolytope> {
    let s = sylvester_simplex(d)?;
    s.translate(&vec![-Rational::one(); d])
}

/// Barycentric coordinates of the origin in a simplex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BarycentricVector(Vec<Rational>);

impl BarycentricVector {
    pub fn new(beta: Vec<Rational>) -> Result<Self> {
        if beta.is_empty() {
            return Err(Error::InvalidBarycentric("empty".into()));
        }
        if beta.iter().any(|b| !b.is_positive()) {
            return Err(Error::InvalidBarycentric("entries must be positive".into()));
        }
        if beta.iter().sum::<Rational>() != Rational::one() {
            return Err(Error::InvalidBarycentric("entries must sum to 1".into()));
        }
        Ok(BarycentricVector(beta))
    }

    /// `β_v = λ_v / Σλ`.
    pub fn from_weights(w: &WeightSystem) -> Self {
        let total: u64 = w.weights.iter().sum();
        BarycentricVector(
            w.weights
                .iter()
                .map(|&x| Rational::new(x.into(), total.into()))
                .collect(),
        )
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sorted_desc(&self) -> Vec<Rational> {
        let mut v = self.0.clone();
        v.sort_by(|a, b| b.cmp(a));
        v
    }
}

impl Serialize for BarycentricVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<ExactRational> = self.0.iter().cloned().map(ExactRational).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for BarycentricVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<ExactRational> = Vec::deserialize(d)?;
        BarycentricVector::new(v.into_iter().map(|x| x.0).collect()).map_err(serde::de::Error::custom)
    }
}

/// Reduced, well-formed weights, sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct WeightSystem {
    weights: Vec<u64>,
}

impl WeightSystem {
    pub fn new(mut weights: Vec<u64>) -> Result<Self> {
        if weights.len() < 2 {
            return Err(Error::InvalidWeights("need at least two weights".into()));
        }
        if weights.contains(&0) {
            return Err(Error::InvalidWeights("weights must be positive".into()));
        }
        weights.sort_unstable();
        let g = weights.iter().fold(0u64, |a, &b| a.gcd(&b));
        if g != 1 {
            return Err(Error::InvalidWeights(format!("{weights:?} is not reduced")));
        }
        for skip in 0..weights.len() {
            let g = weights
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .fold(0u64, |a, (_, &b)| a.gcd(&b));
            if g != 1 {
                return Err(Error::InvalidWeights(format!("{weights:?} is not well-formed")));
            }
        }
        Ok(WeightSystem { weights })
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    /// Dimension of the simplex, one less than the number of weights.
    pub fn dim(&self) -> usize {
        self.weights.len() - 1
    }

    pub fn total(&self) -> u64 {
        self.weights.iter().sum()
    }
}

impl TryFrom<Vec<u64>> for WeightSystem {
    type Error = Error;

    fn try_from(v: Vec<u64>) -> Result<Self> {
        WeightSystem::new(v)
    }
}

impl From<WeightSystem> for Vec<u64> {
    fn from(w: WeightSystem) -> Self {
        w.weights
    }
}

impl std::fmt::Display for WeightSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.weights.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Barycentric coordinates of the origin with respect to an affinely
/// independent point list, in the given order.
pub fn barycentric_of_points(points: &[Vec<Rational>]) -> Result<BarycentricVector> {
    let n = points.first().map(Vec::len).ok_or(Error::Empty)?;
    let k = points.len();
    let rows: Vec<Vec<Rational>> = (0..n)
        .map(|j| points.iter().map(|p| p[j].clone()).collect())
        .collect();
    let null = rational_nullspace(&rows, k);
    // solutions of Σβ v = 0; affine independence forces a single direction
    if null.len() != 1 {
        return Err(Error::NotSimplex(format!(
            "origin relation space has dimension {}",
            null.len()
        )));
    }
    let v = &null[0];
    let total: Rational = v.iter().sum();
    if total.is_zero() {
        return Err(Error::InvalidBarycentric("origin not in the affine hull".into()));
    }
    let beta: Vec<Rational> = v.iter().map(|x| x / &total).collect();
    if beta.iter().any(|b| !b.is_positive()) {
        return Err(Error::InvalidBarycentric(
            "origin not in the relative interior".into(),
        ));
    }
    BarycentricVector::new(beta)
}

/// Barycentric coordinates of the origin in `S`, ordered like `S.vertices()`.
pub fn barycentric(s: &RationalPolytope) -> Result<BarycentricVector> {
    if !s.is_simplex() {
        return Err(Error::NotSimplex(format!(
            "{} vertices in dimension {}",
            s.n_vertices(),
            s.dim()
        )));
    }
    barycentric_of_points(s.vertices())
}

/// Reduces a barycentric vector to integer weights in the same order.
pub fn weights_of(beta: &BarycentricVector) -> Result<Vec<u64>> {
    let l = denominator_lcm(beta.entries().iter());
    let lq = Rational::from_integer(l);
    beta.entries()
        .iter()
        .map(|b| {
            (b * &lq)
                .to_integer()
                .to_u64()
                .ok_or_else(|| Error::InvalidWeights("weight exceeds 64 bits".into()))
        })
        .collect()
}

/// Reduced weights of a simplex containing the origin in its interior.
pub fn weights(s: &RationalPolytope) -> Result<WeightSystem> {
    WeightSystem::new(weights_of(&barycentric(s)?)?)
}

/// Images of the standard basis of `Z^m` in `Z^m / sat(span gens)`, with
/// coordinates reduced by a Hermite normal form.
pub(crate) fn quotient_images(m: usize, gens: &[Vec<BigInt>]) -> Result<Vec<Vec<BigInt>>> {
    let k = saturate(&Sublattice::from_generators(m, gens)?);
    let proj = quotient_projection(&k)?;
    let images = IntMatrix::from_rows((0..m).map(|i| proj.image_of_basis(i).to_vec()).collect())?;
    if proj.target_rank() == 0 {
        return Ok(vec![Vec::new(); m]);
    }
    let h = hnf(&images.transpose());
    Ok(h.transpose().into_rows())
}

/// Lattice simplex whose vertices generate `Z^n` and whose barycentric
/// coordinates are proportional to `λ`.
pub fn simplex_from_weights(w: &WeightSystem) -> Result<RationalPolytope> {
    let m = w.weights.len();
    let gen: Vec<BigInt> = w.weights.iter().map(|&x| BigInt::from(x)).collect();
    let images = quotient_images(m, &[gen])?;
    hull_int(&images)
}

/// Simplex of weights `λ` with vertices listed in weight order.
pub fn simplex_vertices_from_weights(w: &WeightSystem) -> Result<Vec<Vec<BigInt>>> {
    let gen: Vec<BigInt> = w.weights.iter().map(|&x| BigInt::from(x)).collect();
    quotient_images(w.weights.len(), &[gen])
}

/// `hull` on integer points given as `i64`.
pub fn lattice_hull(points: &[Vec<i64>]) -> Result<RationalPolytope> {
    hull(
        &points
            .iter()
            .map(|p| p.iter().map(|&x| Rational::from_integer(x.into())).collect())
            .collect::<Vec<_>>(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{equivalent, from_i64};

    fn q(p: i64, r: i64) -> Rational {
        Rational::new(p.into(), r.into())
    }

    fn ws(v: &[u64]) -> WeightSystem {
        WeightSystem::new(v.to_vec()).unwrap()
    }

    #[test]
    fn sylvester_simplices() {
        let s3 = sylvester_simplex(3).unwrap();
        let expected = from_i64(&[&[0, 0, 0], &[0, 0, 12], &[0, 3, 0], &[2, 0, 0]]).unwrap();
        assert!(s3.same_vertices(&expected));
        assert_eq!(s3.normalized_volume(), q(72, 1));
        let s4 = sylvester_simplex(4).unwrap();
        assert!(s4.vertices().iter().any(|v| v[3] == q(84, 1)));
        assert!(sylvester_simplex(1).is_err());
    }

    #[test]
    fn reflexive_simplices() {
        let r3 = reflexive_r(3).unwrap();
        let expected =
            from_i64(&[&[-1, -1, -1], &[1, -1, -1], &[-1, 2, -1], &[-1, -1, 11]]).unwrap();
        assert!(r3.same_vertices(&expected));
        assert!(r3.is_reflexive().unwrap());
        assert_eq!(reflexive_r(4).unwrap().volume(), q(147, 1));
    }

    #[test]
    fn barycentric_examples() {
        let tri = from_i64(&[&[1, 0], &[0, 1], &[-1, -1]]).unwrap();
        assert_eq!(barycentric(&tri).unwrap().entries(), &[q(1, 3), q(1, 3), q(1, 3)]);
        let p = from_i64(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-1, -1, -3]]).unwrap();
        let mut b = barycentric(&p).unwrap().entries().to_vec();
        b.sort();
        assert_eq!(b, vec![q(1, 6), q(1, 6), q(1, 6), q(1, 2)]);
        assert_eq!(weights(&p).unwrap(), ws(&[1, 1, 1, 3]));
        let r3 = reflexive_r(3).unwrap();
        let mut b = barycentric(&r3).unwrap().entries().to_vec();
        b.sort();
        assert_eq!(b, vec![q(1, 12), q(1, 12), q(1, 3), q(1, 2)]);
        assert_eq!(weights(&r3).unwrap(), ws(&[1, 1, 4, 6]));
        let boundary = from_i64(&[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        assert!(barycentric(&boundary).is_err());
        assert!(barycentric(&crate::polytope::cross_polytope(2)).is_err());
    }

    #[test]
    fn weight_validation() {
        assert!(WeightSystem::new(vec![2, 4]).is_err());
        assert!(WeightSystem::new(vec![1, 2, 2]).is_err());
        assert!(WeightSystem::new(vec![0, 1]).is_err());
        assert_eq!(ws(&[3, 1, 2]).weights(), &[1, 2, 3]);
        let json = serde_json::to_string(&ws(&[1, 1, 2])).unwrap();
        assert_eq!(json, "[1,1,2]");
        assert!(serde_json::from_str::<WeightSystem>("[2,2]").is_err());
    }

    #[test]
    fn simplices_from_weights() {
        let tri = simplex_from_weights(&ws(&[1, 1, 1])).unwrap();
        assert!(equivalent(&tri, &from_i64(&[&[1, 0], &[0, 1], &[-1, -1]]).unwrap()).unwrap());
        let p = simplex_from_weights(&ws(&[1, 1, 1, 3])).unwrap();
        let target = from_i64(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-1, -1, -3]]).unwrap();
        assert!(equivalent(&p, &target).unwrap());
        assert_eq!(p.normalized_volume(), q(6, 1));
    }

    #[test]
    fn weights_round_trip_small_systems() {
        let mut checked = 0;
        for a in 1..=8u64 {
            for b in a..=8 {
                for c in b..=12 {
                    if a + b + c > 30 {
                        continue;
                    }
                    let Ok(w) = WeightSystem::new(vec![a, b, c]) else {
                        continue;
                    };
                    let s = simplex_from_weights(&w).unwrap();
                    assert_eq!(weights(&s).unwrap(), w);
                    assert_eq!(s.normalized_volume(), q(w.total() as i64, 1));
                    checked += 1;
                }
            }
        }
        assert!(checked > 20);
    }
}
