//! Exact rational polytopes with both vertex and facet descriptions.
//!
//! Facets are stored as `⟨normal, x⟩ ≥ rhs`. When the origin lies strictly
//! inside (relative interior for lower-dimensional polytopes), every facet is
//! scaled to `rhs = −1`, which makes the polar dual a transposition of data.
//! Otherwise normals are primitive integer vectors.

mod hull;
mod normal_form;
mod points;
mod volume;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{denominator_lcm, make_primitive, ExactRational, Rational};
use crate::error::{Error, Result};

pub use normal_form::{equivalent, normal_form, NormalForm};
pub use points::LatticePointSet;
pub use volume::{FanOrder, Triangulation};

/// Largest supported ambient dimension.
pub const MAX_DIM: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Facet {
    pub normal: Vec<Rational>,
    pub rhs: Rational,
}

impl Facet {
    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.normal.iter().zip(x).map(|(a, b)| a * b).sum::<Rational>() - &self.rhs
    }

    pub fn eval_int(&self, x: &[BigInt]) -> Rational {
        self.normal
            .iter()
            .zip(x)
            .map(|(a, b)| a * Rational::from_integer(b.clone()))
            .sum::<Rational>()
            - &self.rhs
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPolytope {
    ambient_dim: usize,
    dim: usize,
    vertices: Vec<Vec<Rational>>,
    facets: Vec<Facet>,
    equations: Vec<Facet>,
    /// facet index → sorted vertex indices on it
    incidence: Vec<Vec<usize>>,
}

/// Convex hull of a nonempty point list.
pub fn hull(points: &[Vec<Rational>]) -> Result<RationalPolytope> {
    let first = points.first().ok_or(Error::Empty)?;
    let n = first.len();
    if let Some(bad) = points.iter().find(|p| p.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: bad.len(),
        });
    }
    if n > MAX_DIM {
        return Err(Error::Precondition(format!(
            "ambient dimension {n} exceeds {MAX_DIM}"
        )));
    }
    if n == 0 {
        return Ok(RationalPolytope {
            ambient_dim: 0,
            dim: 0,
            vertices: vec![Vec::new()],
            facets: Vec::new(),
            equations: Vec::new(),
            incidence: Vec::new(),
        });
    }
    let data = hull::compute_hull(points);
    let facets = data
        .facets
        .into_iter()
        .map(|(normal, rhs)| Facet { normal, rhs })
        .collect();
    let equations = data
        .equations
        .into_iter()
        .map(|(normal, rhs)| Facet { normal, rhs })
        .collect();
    Ok(RationalPolytope::assemble(
        n,
        data.dim,
        data.vertices,
        facets,
        equations,
    ))
}

/// Hull of integer points.
pub fn hull_int(points: &[Vec<BigInt>]) -> Result<RationalPolytope> {
    hull(&to_rational_points(points))
}

pub fn to_rational_points(points: &[Vec<BigInt>]) -> Vec<Vec<Rational>> {
    points
        .iter()
        .map(|p| p.iter().map(|x| Rational::from_integer(x.clone())).collect())
        .collect()
}

pub fn from_i64(points: &[&[i64]]) -> Result<RationalPolytope> {
    hull(
        &points
            .iter()
            .map(|p| p.iter().map(|&x| Rational::from_integer(x.into())).collect())
            .collect::<Vec<_>>(),
    )
}

impl RationalPolytope {
    fn assemble(
        ambient_dim: usize,
        dim: usize,
        mut vertices: Vec<Vec<Rational>>,
        facets: Vec<Facet>,
        equations: Vec<Facet>,
    ) -> Self {
        vertices.sort();
        vertices.dedup();
        let origin_inside = !facets.is_empty() && facets.iter().all(|f| f.rhs.is_negative());
        let mut facets: Vec<Facet> = facets
            .into_iter()
            .map(|f| normalise_facet(f, origin_inside))
            .collect();
        facets.sort();
        facets.dedup();
        let incidence = facets
            .iter()
            .map(|f| {
                (0..vertices.len())
                    .filter(|&i| f.eval(&vertices[i]).is_zero())
                    .collect()
            })
            .collect();
        RationalPolytope {
            ambient_dim,
            dim,
            vertices,
            facets,
            equations,
            incidence,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_full_dim(&self) -> bool {
        self.dim == self.ambient_dim
    }

    pub fn vertices(&self) -> &[Vec<Rational>] {
        &self.vertices
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn equations(&self) -> &[Facet] {
        &self.equations
    }

    pub fn incidence(&self) -> &[Vec<usize>] {
        &self.incidence
    }

    pub fn is_simplex(&self) -> bool {
        self.vertices.len() == self.dim + 1
    }

    /// Vertices as integers, if all are integral.
    pub fn integral_vertices(&self) -> Option<Vec<Vec<BigInt>>> {
        self.vertices
            .iter()
            .map(|v| {
                v.iter()
                    .map(|q| q.is_integer().then(|| q.to_integer()))
                    .collect()
            })
            .collect()
    }

    pub fn is_lattice(&self) -> bool {
        self.vertices.iter().flatten().all(|q| q.is_integer())
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.equations.iter().all(|e| e.eval(x).is_zero())
            && self.facets.iter().all(|f| !f.eval(x).is_negative())
    }

    /// Relative-interior membership.
    pub fn contains_strictly(&self, x: &[Rational]) -> bool {
        self.equations.iter().all(|e| e.eval(x).is_zero())
            && self.facets.iter().all(|f| f.eval(x).is_positive())
    }

    /// Full-dimensional with the origin in the interior.
    pub fn origin_interior(&self) -> bool {
        self.is_full_dim() && !self.facets.is_empty() && self.facets.iter().all(|f| f.rhs.is_negative())
    }

    /// Polar dual `{y : ⟨y, x⟩ ≥ −1 ∀x ∈ P}`.
    pub fn dual(&self) -> Result<RationalPolytope> {
        if !self.origin_interior() {
            return Err(Error::DualUnbounded);
        }
        let vertices: Vec<Vec<Rational>> = self.facets.iter().map(|f| f.normal.clone()).collect();
        let facets = self
            .vertices
            .iter()
            .map(|v| Facet {
                normal: v.clone(),
                rhs: -Rational::one(),
            })
            .collect();
        Ok(RationalPolytope::assemble(
            self.ambient_dim,
            self.dim,
            vertices,
            facets,
            Vec::new(),
        ))
    }

    /// Image under `x ↦ x·M` for an invertible integer matrix `M`.
    pub fn transform(&self, m: &[Vec<BigInt>]) -> Result<RationalPolytope> {
        let n = self.ambient_dim;
        if m.len() != n || m.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: m.len(),
            });
        }
        let pts: Vec<Vec<Rational>> = self
            .vertices
            .iter()
            .map(|v| {
                (0..n)
                    .map(|j| {
                        v.iter()
                            .zip(m)
                            .map(|(x, row)| x * Rational::from_integer(row[j].clone()))
                            .sum()
                    })
                    .collect()
            })
            .collect();
        hull(&pts)
    }

    pub fn translate(&self, t: &[Rational]) -> Result<RationalPolytope> {
        if t.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                got: t.len(),
            });
        }
        let pts: Vec<Vec<Rational>> = self
            .vertices
            .iter()
            .map(|v| v.iter().zip(t).map(|(a, b)| a + b).collect())
            .collect();
        hull(&pts)
    }

    /// Dilation by a rational factor.
    pub fn scale(&self, k: &Rational) -> Result<RationalPolytope> {
        let pts: Vec<Vec<Rational>> = self
            .vertices
            .iter()
            .map(|v| v.iter().map(|x| x * k).collect())
            .collect();
        hull(&pts)
    }

    /// Full-dimensional lattice polytope whose only interior lattice point is 0.
    pub fn is_canonical_fano(&self) -> bool {
        if !self.is_full_dim() || !self.is_lattice() || !self.origin_interior() {
            return false;
        }
        // reflexive polytopes have every facet at lattice distance one
        if self.facets.iter().flat_map(|f| &f.normal).all(|q| q.is_integer()) {
            return true;
        }
        let interior = self.interior_lattice_points();
        interior.len() == 1
    }

    /// Reflexive: canonical Fano with a lattice dual. Errors on non-canonical
    /// input.
    pub fn is_reflexive(&self) -> Result<bool> {
        if !self.is_full_dim() || !self.is_lattice() || !self.origin_interior() {
            return Err(Error::NotCanonical);
        }
        let dual_integral = self.facets.iter().flat_map(|f| &f.normal).all(|q| q.is_integer());
        if dual_integral {
            return Ok(true);
        }
        if !self.is_canonical_fano() {
            return Err(Error::NotCanonical);
        }
        Ok(false)
    }

    /// Minimality: removing any vertex from the lattice points and rebuilding
    /// the hull no longer gives a full-dimensional canonical Fano polytope.
    pub fn is_minimal(&self) -> Result<bool> {
        if !self.is_canonical_fano() {
            return Err(Error::NotCanonical);
        }
        let points = self.lattice_points();
        let verts: BTreeSet<Vec<BigInt>> = self
            .integral_vertices()
            .expect("lattice polytope")
            .into_iter()
            .collect();
        let origin = vec![BigInt::zero(); self.ambient_dim];
        for v in &verts {
            let rest: Vec<Vec<BigInt>> = points.iter().filter(|p| *p != v).cloned().collect();
            let sub = hull_int(&rest)?;
            if !sub.origin_interior() {
                continue;
            }
            // every lattice point of the sub-hull is one of `rest`
            let strictly_inside = rest
                .iter()
                .filter(|p| sub.contains_strictly(&to_rational_points(std::slice::from_ref(p))[0]))
                .count();
            if strictly_inside == 1 && rest.contains(&origin) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Free sum `conv(P × {0} ∪ {0} × Q)`.
    pub fn free_sum(&self, other: &RationalPolytope) -> Result<RationalPolytope> {
        let zero_p = vec![Rational::zero(); self.ambient_dim];
        let zero_q = vec![Rational::zero(); other.ambient_dim];
        if !self.contains(&zero_p) || !other.contains(&zero_q) {
            return Err(Error::Precondition("free sum needs the origin in both".into()));
        }
        let mut pts = Vec::new();
        for v in &self.vertices {
            let mut p = v.clone();
            p.extend(zero_q.iter().cloned());
            pts.push(p);
        }
        for w in &other.vertices {
            let mut p = zero_p.clone();
            p.extend(w.iter().cloned());
            pts.push(p);
        }
        hull(&pts)
    }

    pub fn product(&self, other: &RationalPolytope) -> Result<RationalPolytope> {
        let mut pts = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for v in &self.vertices {
            for w in &other.vertices {
                let mut p = v.clone();
                p.extend(w.iter().cloned());
                pts.push(p);
            }
        }
        hull(&pts)
    }

    /// Vertex-set equality.
    pub fn same_vertices(&self, other: &RationalPolytope) -> bool {
        self.vertices == other.vertices
    }

    pub fn to_json(&self) -> PolytopeJson {
        PolytopeJson {
            dim: self.ambient_dim,
            vertices: self
                .vertices
                .iter()
                .map(|v| v.iter().cloned().map(ExactRational).collect())
                .collect(),
        }
    }

    pub fn from_json(json: &PolytopeJson) -> Result<RationalPolytope> {
        let pts: Vec<Vec<Rational>> = json
            .vertices
            .iter()
            .map(|v| v.iter().map(|x| x.0.clone()).collect())
            .collect();
        if let Some(bad) = pts.iter().find(|p| p.len() != json.dim) {
            return Err(Error::DimensionMismatch {
                expected: json.dim,
                got: bad.len(),
            });
        }
        hull(&pts)
    }
}

fn normalise_facet(f: Facet, origin_inside: bool) -> Facet {
    if origin_inside {
        let k = -f.rhs.recip();
        return Facet {
            normal: f.normal.iter().map(|x| x * &k).collect(),
            rhs: -Rational::one(),
        };
    }
    let l = Rational::from_integer(denominator_lcm(f.normal.iter()));
    let mut ints: Vec<BigInt> = f.normal.iter().map(|x| (x * &l).to_integer()).collect();
    let before = ints.iter().find(|x| !x.is_zero()).cloned().unwrap_or_else(BigInt::one);
    make_primitive(&mut ints);
    let after = ints.iter().find(|x| !x.is_zero()).cloned().unwrap_or_else(BigInt::one);
    let factor = &l * Rational::new(after, before);
    Facet {
        normal: ints.into_iter().map(Rational::from_integer).collect(),
        rhs: &f.rhs * factor,
    }
}

/// Polytope JSON: `{"dim": d, "vertices": [["p/q", …], …]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeJson {
    pub dim: usize,
    pub vertices: Vec<Vec<ExactRational>>,
}

/// `Δ_(q)`: convex hull of the origin and the standard basis of `Z^q`.
pub fn standard_simplex(q: usize) -> RationalPolytope {
    let mut pts = vec![vec![Rational::zero(); q]];
    for i in 0..q {
        let mut e = vec![Rational::zero(); q];
        e[i] = Rational::one();
        pts.push(e);
    }
    hull(&pts).expect("nonempty")
}

/// The cross-polytope `conv{±e_i}` in dimension `d`.
pub fn cross_polytope(d: usize) -> RationalPolytope {
    let mut pts = Vec::with_capacity(2 * d);
    for i in 0..d {
        for s in [1, -1] {
            let mut e = vec![Rational::zero(); d];
            e[i] = Rational::from_integer(s.into());
            pts.push(e);
        }
    }
    hull(&pts).expect("nonempty")
}

/// The cube `[−k, k]^d`.
pub fn cube(d: usize, k: i64) -> RationalPolytope {
    let mut pts = vec![Vec::new()];
    for _ in 0..d {
        let mut next = Vec::with_capacity(pts.len() * 2);
        for p in &pts {
            for s in [-k, k] {
                let mut q: Vec<Rational> = p.clone();
                q.push(Rational::from_integer(s.into()));
                next.push(q);
            }
        }
        pts = next;
    }
    hull(&pts).expect("nonempty")
}
