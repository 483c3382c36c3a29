//! Volume of the dual of a polytope glued from two simplices, computed by
//! integrating the volumes of its slices over the shared coordinates.

use std::path::Path;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::integrate::{integrate_over_simplex, AffineForm};
use crate::arith::{dual_volume_bound, factorial, parse_rational, Rational};
use crate::construct::{simplex_in_basis, BarycentricVector, Glued, GluingSpec};
use crate::error::{Error, Result};
use crate::linalg::{lattice_index, Sublattice};
use crate::polytope::hull;

/// Two simplices sharing `q` vertices, with one unshared vertex of each
/// excluded from its basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlicingData {
    pub dims: [usize; 2],
    pub beta: [BarycentricVector; 2],
    pub excluded: [usize; 2],
    /// `(vertex of S_1, vertex of S_2)` pairs.
    pub shared: Vec<(usize, usize)>,
}

impl SlicingData {
    pub fn new(
        beta: [BarycentricVector; 2],
        shared: Vec<(usize, usize)>,
        excluded: [usize; 2],
    ) -> Result<Self> {
        let dims = [beta[0].len() - 1, beta[1].len() - 1];
        let data = SlicingData {
            dims,
            beta,
            excluded,
            shared,
        };
        data.validate()?;
        Ok(data)
    }

    fn validate(&self) -> Result<()> {
        let q = self.q();
        for i in 0..2 {
            if q >= self.dims[i] {
                return Err(Error::Precondition(format!(
                    "q = {q} must be below d_{} = {}",
                    i + 1,
                    self.dims[i]
                )));
            }
            let sh = self.shared_of(i);
            if sh.iter().any(|&v| v > self.dims[i]) || sh.iter().unique().count() != q {
                return Err(Error::Precondition("shared vertices must be distinct and in range".into()));
            }
            if self.excluded[i] > self.dims[i] || sh.contains(&self.excluded[i]) {
                return Err(Error::Precondition("excluded vertex must be unshared".into()));
            }
        }
        Ok(())
    }

    /// Excludes, in each simplex, the unshared vertex with the smallest
    /// barycentric coordinate (lowest index on ties).
    pub fn with_smallest_exclusion(beta: [BarycentricVector; 2], shared: Vec<(usize, usize)>) -> Result<Self> {
        let mut excluded = [0; 2];
        for i in 0..2 {
            let sh: Vec<usize> = shared.iter().map(|p| if i == 0 { p.0 } else { p.1 }).collect();
            excluded[i] = (0..beta[i].len())
                .filter(|v| !sh.contains(v))
                .min_by(|&a, &b| beta[i].entries()[a].cmp(&beta[i].entries()[b]).then(a.cmp(&b)))
                .ok_or_else(|| Error::Precondition("every vertex is shared".into()))?;
        }
        SlicingData::new(beta, shared, excluded)
    }

    /// Slicing data of a two-simplex gluing spec.
    pub fn from_spec(spec: &GluingSpec) -> Result<Self> {
        if spec.t() != 2 {
            return Err(Error::Precondition("slicing needs exactly two simplices".into()));
        }
        let beta = [
            BarycentricVector::from_weights(&spec.weights()[0]),
            BarycentricVector::from_weights(&spec.weights()[1]),
        ];
        let shared: Vec<(usize, usize)> = spec
            .matchings()
            .get(&(0, 1))
            .map(|s| s.iter().copied().collect())
            .unwrap_or_default();
        SlicingData::with_smallest_exclusion(beta, shared)
    }

    pub fn q(&self) -> usize {
        self.shared.len()
    }

    pub fn shared_of(&self, i: usize) -> Vec<usize> {
        self.shared.iter().map(|p| if i == 0 { p.0 } else { p.1 }).collect()
    }

    /// All vertices of `S_i` except the excluded one, in index order.
    pub fn basis(&self, i: usize) -> Vec<usize> {
        (0..=self.dims[i]).filter(|&v| v != self.excluded[i]).collect()
    }

    /// Relative volume of the face of `(S'_i)*` on which every shared
    /// coordinate equals −1, from the kernel dual.
    pub fn face_volume_kernel(&self, i: usize) -> Result<Rational> {
        let s = simplex_in_basis(self.beta[i].entries(), self.excluded[i])?;
        let dual = s.dual()?;
        let basis = self.basis(i);
        let positions: Vec<usize> = self
            .shared_of(i)
            .iter()
            .map(|v| basis.iter().position(|b| b == v).expect("shared lies in basis"))
            .collect();
        let minus_one = -Rational::one();
        let face: Vec<Vec<Rational>> = dual
            .vertices()
            .iter()
            .filter(|y| positions.iter().all(|&p| y[p] == minus_one))
            .cloned()
            .collect();
        Ok(hull(&face)?.volume())
    }
}

/// `(1/2) Σ_i (2(d_i−q))! / ((q+2(d_i−q))! ((d_i−q)!)²) · Π_shared 1/β · Π_{basis∖shared} 1/β²`.
pub fn int5_bound(data: &SlicingData) -> Result<Rational> {
    data.validate()?;
    let q = data.q();
    let mut total = Rational::zero();
    for i in 0..2 {
        let e = data.dims[i] - q;
        let coeff = Rational::new(
            factorial(2 * e),
            factorial(q + 2 * e) * factorial(e) * factorial(e),
        );
        let b = data.beta[i].entries();
        let shared = data.shared_of(i);
        let mut prod = Rational::one();
        for v in data.basis(i) {
            let r = b[v].recip();
            prod *= if shared.contains(&v) { r } else { &r * &r };
        }
        total += coeff * prod;
    }
    Ok(total / Rational::from_integer(2.into()))
}

/// `∫_D vol(F_1*) vol(F_2*) Π_i (1 − Σ_shared β_{i,v}(λ_v + 1))^{d_i − q} dλ`,
/// with `D` cut out by `λ_v ≥ −1` and `Σ_shared β_{i,v}(λ_v + 1) ≤ 1`.
pub fn slicing_dual_volume(data: &SlicingData) -> Result<Rational> {
    data.validate()?;
    let q = data.q();
    let f1 = data.face_volume_kernel(0)?;
    let f2 = data.face_volume_kernel(1)?;
    if q == 0 {
        return Ok(f1 * f2);
    }
    let shared = [data.shared_of(0), data.shared_of(1)];
    let betas: Vec<Vec<Rational>> = (0..2)
        .map(|i| shared[i].iter().map(|&v| data.beta[i].entries()[v].clone()).collect())
        .collect();

    // D is the polar of the hull of the normalised constraint normals
    let mut normals: Vec<Vec<Rational>> = (0..q)
        .map(|k| {
            let mut e = vec![Rational::zero(); q];
            e[k] = Rational::one();
            e
        })
        .collect();
    let mut forms = Vec::with_capacity(2);
    for (i, b) in betas.iter().enumerate() {
        let slack = Rational::one() - b.iter().sum::<Rational>();
        normals.push(b.iter().map(|x| -(x / &slack)).collect());
        forms.push((
            AffineForm {
                constant: slack,
                linear: b.iter().map(|x| -x.clone()).collect(),
            },
            (data.dims[i] - q) as u32,
        ));
    }
    let domain = hull(&normals)?.dual()?;
    let tri = domain.triangulate(Default::default());
    let mut integral = Rational::zero();
    for s in &tri.simplices {
        let verts: Vec<Vec<Rational>> = s.iter().map(|&j| domain.vertices()[j].clone()).collect();
        integral += integrate_over_simplex(&verts, &forms);
    }
    Ok(f1 * f2 * integral)
}

/// Cross-check of the slicing integral against the kernel on a glued polytope.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SlicingIdentity {
    pub slicing: String,
    pub index: String,
    pub dual_volume: String,
    pub int5: String,
    pub identity_holds: bool,
    pub int5_holds: bool,
}

/// Compares the slicing integral with `[N : N″] · vol(Q*)`, where `N″` is
/// spanned by the basis vertices of both simplices, and with the int5 bound.
pub fn slicing_identity(data: &SlicingData, glued: &Glued) -> Result<SlicingIdentity> {
    if glued.simplices.len() != 2 {
        return Err(Error::Precondition("slicing needs exactly two simplices".into()));
    }
    let d = glued.polytope.ambient_dim();
    let mut gens: Vec<Vec<BigInt>> = Vec::new();
    for i in 0..2 {
        for v in data.basis(i) {
            gens.push(glued.simplices[i].vertices[v].clone());
        }
    }
    let coarse = Sublattice::from_generators(d, &gens)?;
    let index = lattice_index(&Sublattice::full(d), &coarse)?;
    let dual_volume = glued.polytope.dual()?.volume();
    let slicing = slicing_dual_volume(data)?;
    let int5 = int5_bound(data)?;
    let scaled = Rational::from_integer(index.clone()) * &dual_volume;
    Ok(SlicingIdentity {
        identity_holds: slicing == scaled,
        int5_holds: int5 >= slicing,
        slicing: slicing.to_string(),
        index: index.to_string(),
        dual_volume: dual_volume.to_string(),
        int5: int5.to_string(),
    })
}

#[derive(Deserialize)]
struct BaryLine {
    #[serde(default)]
    beta: Option<Vec<String>>,
    #[serde(default)]
    weights: Option<Vec<u64>>,
}

/// Reads barycentric vectors from JSON lines of the form
/// `{"beta": ["1/2", …]}` or `{"weights": [1, …]}`.
pub fn read_barycentric_file(path: &Path) -> Result<Vec<BarycentricVector>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::ExternalData(format!("{}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let raw: BaryLine = serde_json::from_str(line)
            .map_err(|e| Error::Parse(format!("line {}: {e}", n + 1)))?;
        let beta = match (raw.beta, raw.weights) {
            (Some(b), _) => BarycentricVector::new(
                b.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?,
            )?,
            (None, Some(w)) => {
                let total: u64 = w.iter().sum();
                BarycentricVector::new(
                    w.iter()
                        .map(|&x| Rational::new(x.into(), total.into()))
                        .collect(),
                )?
            }
            (None, None) => {
                return Err(Error::Parse(format!("line {}: needs beta or weights", n + 1)));
            }
        };
        out.push(beta);
    }
    Ok(out)
}

/// Outcome of checking the int5 bound over all pairs of simplices of
/// dimensions `d − 1` and `d − 2` glued along `d − 3` vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BulkCheck {
    pub d: usize,
    pub pairs: usize,
    pub configurations: usize,
    pub bound: String,
    pub worst: String,
    pub failures: usize,
    pub holds: bool,
}

/// For each pair and each injective choice of shared vertices, takes the
/// smallest int5 value over the admissible excluded vertices and compares it
/// strictly with `2(s_d − 1)²/d!`.
pub fn bulk_barycentric_check(
    d: usize,
    high: &[BarycentricVector],
    low: &[BarycentricVector],
) -> Result<BulkCheck> {
    if d < 4 {
        return Err(Error::Precondition("need d ≥ 4".into()));
    }
    let q = d - 3;
    let high: Vec<&BarycentricVector> = high.iter().filter(|b| b.len() == d).collect();
    let low: Vec<&BarycentricVector> = low.iter().filter(|b| b.len() == d - 1).collect();
    let bound = dual_volume_bound(d)?;
    let mut worst: Option<Rational> = None;
    let mut configurations = 0;
    let mut failures = 0;
    for b1 in &high {
        for b2 in &low {
            for left in (0..d).combinations(q) {
                for right in (0..d - 1).permutations(q) {
                    let shared: Vec<(usize, usize)> =
                        left.iter().copied().zip(right.iter().copied()).collect();
                    let mut best: Option<Rational> = None;
                    for x1 in (0..d).filter(|v| !left.contains(v)) {
                        for x2 in (0..d - 1).filter(|v| !right.contains(v)) {
                            let data = SlicingData::new(
                                [(*b1).clone(), (*b2).clone()],
                                shared.clone(),
                                [x1, x2],
                            )?;
                            let v = int5_bound(&data)?;
                            if best.as_ref().is_none_or(|b| v < *b) {
                                best = Some(v);
                            }
                        }
                    }
                    let best = best.expect("an unshared vertex exists");
                    configurations += 1;
                    if best >= bound {
                        failures += 1;
                    }
                    if worst.as_ref().is_none_or(|w| best > *w) {
                        worst = Some(best);
                    }
                }
            }
        }
    }
    Ok(BulkCheck {
        d,
        pairs: high.len() * low.len(),
        configurations,
        bound: bound.to_string(),
        worst: worst.map_or_else(|| "0".into(), |w| w.to_string()),
        failures,
        holds: failures == 0,
    })
}
