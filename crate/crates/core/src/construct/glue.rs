//! Polytopes glued from weighted simplices along identified vertices.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{quotient_images, WeightSystem};
use crate::error::{Error, Result};
use crate::linalg::is_primitive;
use crate::polytope::{hull_int, RationalPolytope};

/// Weight systems plus vertex identifications between pairs of simplices.
/// Simplices and vertices are indexed from zero; vertex `k` of simplex `i`
/// carries weight `weights[i].weights()[k]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GluingSpec {
    weights: Vec<WeightSystem>,
    matchings: BTreeMap<(usize, usize), BTreeSet<(usize, usize)>>,
}

#[derive(Serialize, Deserialize)]
struct SpecJson {
    weights: Vec<WeightSystem>,
    #[serde(default)]
    matchings: BTreeMap<String, Vec<[usize; 2]>>,
}

impl GluingSpec {
    pub fn new(
        weights: Vec<WeightSystem>,
        matchings: BTreeMap<(usize, usize), BTreeSet<(usize, usize)>>,
    ) -> Result<Self> {
        let t = weights.len();
        if t == 0 {
            return Err(Error::InvalidSpec("no simplices".into()));
        }
        for (&(i, j), pairs) in &matchings {
            if i >= j || j >= t {
                return Err(Error::InvalidSpec(format!("bad simplex pair ({i},{j})")));
            }
            let mut left = BTreeSet::new();
            let mut right = BTreeSet::new();
            for &(a, b) in pairs {
                if a > weights[i].dim() || b > weights[j].dim() {
                    return Err(Error::InvalidSpec(format!(
                        "vertex pair ({a},{b}) out of range for simplices ({i},{j})"
                    )));
                }
                if !left.insert(a) || !right.insert(b) {
                    return Err(Error::InvalidSpec(format!(
                        "matching between simplices ({i},{j}) is not a bijection"
                    )));
                }
            }
        }
        let matchings = matchings.into_iter().filter(|(_, p)| !p.is_empty()).collect();
        let spec = GluingSpec { weights, matchings };
        let classes = spec.classes();
        for c in &classes {
            let owners: BTreeSet<usize> = c.iter().map(|&(s, _)| s).collect();
            if owners.len() != c.len() {
                return Err(Error::InvalidSpec(
                    "identifications merge two vertices of one simplex".into(),
                ));
            }
        }
        for (i, w) in spec.weights.iter().enumerate() {
            let free = classes
                .iter()
                .filter(|c| c.len() == 1 && c[0].0 == i)
                .count();
            if free == 0 {
                return Err(Error::InvalidSpec(format!(
                    "simplex {} {w} has every vertex identified",
                    i + 1
                )));
            }
        }
        Ok(spec)
    }

    /// A single simplex.
    pub fn single(w: WeightSystem) -> Self {
        GluingSpec {
            weights: vec![w],
            matchings: BTreeMap::new(),
        }
    }

    pub fn weights(&self) -> &[WeightSystem] {
        &self.weights
    }

    pub fn matchings(&self) -> &BTreeMap<(usize, usize), BTreeSet<(usize, usize)>> {
        &self.matchings
    }

    pub fn t(&self) -> usize {
        self.weights.len()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.weights.iter().map(WeightSystem::dim).collect()
    }

    fn offsets(&self) -> Vec<usize> {
        let mut off = Vec::with_capacity(self.t());
        let mut acc = 0;
        for w in &self.weights {
            off.push(acc);
            acc += w.dim() + 1;
        }
        off
    }

    /// Equivalence classes of `(simplex, vertex)` under the transitive
    /// closure of the matchings, each sorted, listed by smallest member.
    pub fn classes(&self) -> Vec<Vec<(usize, usize)>> {
        let off = self.offsets();
        let m: usize = self.weights.iter().map(|w| w.dim() + 1).sum();
        let mut parent: Vec<usize> = (0..m).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (&(i, j), pairs) in &self.matchings {
            for &(a, b) in pairs {
                let x = find(&mut parent, off[i] + a);
                let y = find(&mut parent, off[j] + b);
                if x != y {
                    parent[x.max(y)] = x.min(y);
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
        for (s, w) in self.weights.iter().enumerate() {
            for v in 0..=w.dim() {
                let root = find(&mut parent, off[s] + v);
                groups.entry(root).or_default().push((s, v));
            }
        }
        groups.into_values().collect()
    }

    /// Shared vertex count `r_i` of each simplex with the earlier ones.
    pub fn shared_counts(&self) -> Vec<usize> {
        let classes = self.classes();
        (0..self.t())
            .map(|i| {
                classes
                    .iter()
                    .filter(|c| c.iter().any(|&(s, _)| s == i) && c.iter().any(|&(s, _)| s < i))
                    .count()
            })
            .collect()
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serialisable")
    }
}

impl Serialize for GluingSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let matchings = self
            .matchings
            .iter()
            .map(|(&(i, j), pairs)| {
                (
                    format!("{},{}", i + 1, j + 1),
                    pairs.iter().map(|&(a, b)| [a, b]).collect(),
                )
            })
            .collect();
        SpecJson {
            weights: self.weights.clone(),
            matchings,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GluingSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = SpecJson::deserialize(d)?;
        let mut matchings = BTreeMap::new();
        for (key, pairs) in raw.matchings {
            let (a, b) = key
                .split_once(',')
                .ok_or_else(|| D::Error::custom(format!("bad matching key {key:?}")))?;
            let i: usize = a.trim().parse().map_err(D::Error::custom)?;
            let j: usize = b.trim().parse().map_err(D::Error::custom)?;
            if i == 0 || j == 0 {
                return Err(D::Error::custom("simplex indices in matching keys start at 1"));
            }
            let set: BTreeSet<(usize, usize)> = pairs.into_iter().map(|[x, y]| (x, y)).collect();
            matchings.insert((i - 1, j - 1), set);
        }
        GluingSpec::new(raw.weights, matchings).map_err(D::Error::custom)
    }
}

/// Numerology of a decomposition into `t` simplices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionProfile {
    pub d: usize,
    pub t: usize,
    pub dims: Vec<usize>,
    pub r: Vec<usize>,
}

impl DecompositionProfile {
    pub fn total_shared(&self) -> usize {
        self.r.iter().sum()
    }

    /// Expected vertex count `d + t`.
    pub fn vertex_count(&self) -> usize {
        self.d + self.t
    }

    pub fn validate(&self) -> Result<()> {
        if self.dims.len() != self.t || self.r.len() != self.t {
            return Err(Error::ProfileViolation("length mismatch".into()));
        }
        if self.r.first().is_some_and(|&r| r != 0) {
            return Err(Error::ProfileViolation("r_1 must be 0".into()));
        }
        if self.dims.iter().sum::<usize>() != self.d + self.total_shared() {
            return Err(Error::ProfileViolation(format!(
                "Σd_i = {} but d + r = {}",
                self.dims.iter().sum::<usize>(),
                self.d + self.total_shared()
            )));
        }
        for (i, (&di, &ri)) in self.dims.iter().zip(&self.r).enumerate() {
            if ri >= di {
                return Err(Error::ProfileViolation(format!(
                    "r_{} = {ri} is not below d_{} = {di}",
                    i + 1,
                    i + 1
                )));
            }
            if di + self.t > self.d + 1 {
                return Err(Error::ProfileViolation(format!(
                    "d_{} = {di} exceeds d − t + 1 = {}",
                    i + 1,
                    self.d + 1 - self.t
                )));
            }
        }
        Ok(())
    }
}

/// One simplex of a glued polytope with its vertex images, in spec order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddedSimplex {
    pub weights: WeightSystem,
    pub vertices: Vec<Vec<BigInt>>,
}

#[derive(Debug, Clone)]
pub struct Glued {
    pub polytope: RationalPolytope,
    pub profile: DecompositionProfile,
    pub simplices: Vec<EmbeddedSimplex>,
}

/// Builds the quotient of `⊕ Z^{d_i+1}` by the saturation of weight relations
/// and vertex identifications, and the hull of the basis images.
pub fn glue(spec: &GluingSpec) -> Result<Glued> {
    let off = spec.offsets();
    let m: usize = spec.weights.iter().map(|w| w.dim() + 1).sum();
    let mut gens: Vec<Vec<BigInt>> = Vec::new();
    for (i, w) in spec.weights.iter().enumerate() {
        let mut g = vec![BigInt::zero(); m];
        for (k, &x) in w.weights().iter().enumerate() {
            g[off[i] + k] = x.into();
        }
        gens.push(g);
    }
    let classes = spec.classes();
    for c in &classes {
        let (s0, v0) = c[0];
        for &(s, v) in &c[1..] {
            let mut g = vec![BigInt::zero(); m];
            g[off[s0] + v0] = 1.into();
            g[off[s] + v] = (-1).into();
            gens.push(g);
        }
    }
    let images = quotient_images(m, &gens)?;
    let d = images.first().map_or(0, Vec::len);
    let shared: usize = classes.iter().map(|c| c.len() - 1).sum();
    let expected = spec.dims().iter().sum::<usize>() as isize - shared as isize;
    if d as isize != expected {
        return Err(Error::DegenerateGluing(format!(
            "quotient has rank {d}, expected {expected}"
        )));
    }
    if d == 0 {
        return Err(Error::DegenerateGluing("zero-dimensional quotient".into()));
    }

    let mut seen: BTreeMap<Vec<BigInt>, usize> = BTreeMap::new();
    for (ci, c) in classes.iter().enumerate() {
        let (s, v) = c[0];
        let img = &images[off[s] + v];
        if img.iter().all(Zero::is_zero) || !is_primitive(img)? {
            return Err(Error::DegenerateGluing(format!(
                "vertex {v} of simplex {} maps to a non-primitive point",
                s + 1
            )));
        }
        if seen.insert(img.clone(), ci).is_some() {
            return Err(Error::DegenerateGluing(
                "two unidentified vertices have the same image".into(),
            ));
        }
    }

    let simplices: Vec<EmbeddedSimplex> = spec
        .weights
        .iter()
        .enumerate()
        .map(|(i, w)| EmbeddedSimplex {
            weights: w.clone(),
            vertices: (0..=w.dim()).map(|k| images[off[i] + k].clone()).collect(),
        })
        .collect();
    let polytope = hull_int(&seen.into_keys().collect::<Vec<_>>())?;
    let profile = DecompositionProfile {
        d,
        t: spec.t(),
        dims: spec.dims(),
        r: spec.shared_counts(),
    };
    profile.validate()?;
    Ok(Glued {
        polytope,
        profile,
        simplices,
    })
}
