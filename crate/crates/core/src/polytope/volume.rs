//! Triangulations and relative lattice volumes.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::RationalPolytope;
use crate::arith::{denominator_lcm, factorial, Rational};
use crate::linalg::{rational_determinant, rational_rank, saturate, solve_rational_combination, Sublattice};

/// Which vertex of each face serves as the apex of its fan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FanOrder {
    #[default]
    LowestIndex,
    HighestIndex,
}

/// Simplices given as indices into the vertex list of the polytope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    pub simplices: Vec<Vec<usize>>,
}

impl RationalPolytope {
    fn affine_rank(&self, idx: &[usize]) -> usize {
        if idx.len() <= 1 {
            return 0;
        }
        let base = &self.vertices[idx[0]];
        let diffs: Vec<Vec<Rational>> = idx[1..]
            .iter()
            .map(|&i| self.vertices[i].iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        rational_rank(&diffs)
    }

    /// Pulling triangulation: each face is coned from its apex over the
    /// triangulated facets not containing it.
    pub fn triangulate(&self, order: FanOrder) -> Triangulation {
        let all: Vec<usize> = (0..self.vertices.len()).collect();
        let facet_sets: Vec<BTreeSet<usize>> = self
            .incidence
            .iter()
            .map(|s| s.iter().copied().collect())
            .collect();
        let mut simplices = Vec::new();
        self.fan(&all, self.dim, &facet_sets, order, &mut simplices);
        Triangulation { simplices }
    }

    fn fan(
        &self,
        face: &[usize],
        dim: usize,
        facet_sets: &[BTreeSet<usize>],
        order: FanOrder,
        out: &mut Vec<Vec<usize>>,
    ) {
        if face.len() == dim + 1 {
            out.push(face.to_vec());
            return;
        }
        let apex = match order {
            FanOrder::LowestIndex => face[0],
            FanOrder::HighestIndex => face[face.len() - 1],
        };
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        for g in facet_sets {
            let sub: Vec<usize> = face.iter().copied().filter(|i| g.contains(i)).collect();
            if sub.contains(&apex) || sub.len() < dim || seen.contains(&sub) {
                continue;
            }
            if self.affine_rank(&sub) != dim - 1 {
                continue;
            }
            seen.insert(sub.clone());
            let mut inner = Vec::new();
            self.fan(&sub, dim - 1, facet_sets, order, &mut inner);
            for mut s in inner {
                s.push(apex);
                s.sort_unstable();
                out.push(s);
            }
        }
    }

    /// Basis of the lattice of integer directions parallel to the affine hull.
    pub fn direction_lattice(&self) -> Sublattice {
        let base = &self.vertices[0];
        let gens: Vec<Vec<BigInt>> = self.vertices[1..]
            .iter()
            .map(|v| {
                let d: Vec<Rational> = v.iter().zip(base).map(|(a, b)| a - b).collect();
                let l = Rational::from_integer(denominator_lcm(d.iter()));
                d.iter().map(|x| (x * &l).to_integer()).collect()
            })
            .collect();
        let l = Sublattice::from_generators(self.ambient_dim, &gens).expect("consistent lengths");
        saturate(&l)
    }

    pub fn volume_with(&self, order: FanOrder) -> Rational {
        if self.dim == 0 {
            return Rational::from_integer(1.into());
        }
        let lattice = self.direction_lattice();
        let basis: Vec<Vec<BigInt>> = lattice.basis().rows().to_vec();
        let full = self.is_full_dim();
        let tri = self.triangulate(order);
        let mut total = Rational::zero();
        for s in &tri.simplices {
            let base = &self.vertices[s[0]];
            let rows: Vec<Vec<Rational>> = s[1..]
                .iter()
                .map(|&i| {
                    let d: Vec<Rational> =
                        self.vertices[i].iter().zip(base).map(|(a, b)| a - b).collect();
                    if full {
                        d
                    } else {
                        coordinates_in(&basis, &d)
                    }
                })
                .collect();
            total += rational_determinant(&rows).abs();
        }
        total / Rational::from_integer(factorial(self.dim))
    }

    /// Relative lattice volume.
    pub fn volume(&self) -> Rational {
        self.volume_with(FanOrder::LowestIndex)
    }

    /// `dim! · volume`.
    pub fn normalized_volume(&self) -> Rational {
        self.volume() * Rational::from_integer(factorial(self.dim))
    }
}

/// Coordinates of a rational vector `d` in the span of integer `basis` rows.
fn coordinates_in(basis: &[Vec<BigInt>], d: &[Rational]) -> Vec<Rational> {
    let l = denominator_lcm(d.iter());
    let lq = Rational::from_integer(l);
    let scaled: Vec<BigInt> = d.iter().map(|x| (x * &lq).to_integer()).collect();
    let c = solve_rational_combination(basis, &scaled).expect("direction lies in the span");
    c.into_iter().map(|x| x / &lq).collect()
}
