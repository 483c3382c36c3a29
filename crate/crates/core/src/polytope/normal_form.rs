//! A complete invariant for lattice polytopes with the origin inside, up to
//! `GL_d(Z)`.
//!
//! Vertices are first split into classes by a combinatorial signature built
//! from the facet pairing matrix. The key is the smallest column-major HNF of
//! the `d × n` vertex matrix over all orderings compatible with the classes.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use super::RationalPolytope;
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::linalg::{hnf, IntMatrix};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NormalForm(String);

impl NormalForm {
    pub fn as_bytes(&self) -> &[u8] {
        self.0.as_bytes()
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Pairing value of facet `f` and vertex `v`.
fn pairing(p: &RationalPolytope, f: usize, v: usize) -> Rational {
    p.facets[f]
        .normal
        .iter()
        .zip(&p.vertices[v])
        .map(|(a, b)| a * b)
        .sum()
}

/// Vertex colours from two rounds of refinement on the pairing matrix.
fn vertex_classes(p: &RationalPolytope) -> Vec<usize> {
    let nv = p.vertices.len();
    let nf = p.facets.len();
    let m: Vec<Vec<Rational>> = (0..nf)
        .map(|f| (0..nv).map(|v| pairing(p, f, v)).collect())
        .collect();

    let mut vcol: Vec<usize> = vec![0; nv];
    let mut fcol: Vec<usize> = vec![0; nf];
    for _ in 0..3 {
        fcol = recolour((0..nf).map(|f| {
            let mut s: Vec<(Rational, usize)> =
                (0..nv).map(|v| (m[f][v].clone(), vcol[v])).collect();
            s.sort();
            s
        }));
        vcol = recolour((0..nv).map(|v| {
            let mut s: Vec<(Rational, usize)> =
                (0..nf).map(|f| (m[f][v].clone(), fcol[f])).collect();
            s.sort();
            s
        }));
    }
    vcol
}

/// Replaces each signature by its rank among the distinct signatures.
fn recolour<T: Ord + Clone>(sigs: impl Iterator<Item = T>) -> Vec<usize> {
    let sigs: Vec<T> = sigs.collect();
    let table: BTreeMap<T, usize> = {
        let mut distinct: Vec<T> = sigs.clone();
        distinct.sort();
        distinct.dedup();
        distinct.into_iter().enumerate().map(|(i, s)| (s, i)).collect()
    };
    sigs.iter().map(|s| table[s]).collect()
}

fn column_major(h: &IntMatrix, cols: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(h.nrows() * cols);
    for c in 0..cols {
        for r in 0..h.nrows() {
            out.push(h.get(r, c).clone());
        }
    }
    out
}

struct Search<'a> {
    verts: &'a [Vec<BigInt>],
    /// class id of each slot in the final ordering
    slots: Vec<usize>,
    classes: Vec<usize>,
    d: usize,
    best: Option<Vec<BigInt>>,
}

impl Search<'_> {
    fn prefix_key(&self, order: &[usize]) -> Vec<BigInt> {
        let rows: Vec<Vec<BigInt>> = (0..self.d)
            .map(|r| order.iter().map(|&v| self.verts[v][r].clone()).collect())
            .collect();
        let m = IntMatrix::from_rows(rows).expect("rectangular");
        column_major(&hnf(&m), order.len())
    }

    fn run(&mut self, order: &mut Vec<usize>, used: &mut [bool]) {
        let j = order.len();
        if j == self.slots.len() {
            let key = self.prefix_key(order);
            if self.best.as_ref().is_none_or(|b| key < *b) {
                self.best = Some(key);
            }
            return;
        }
        let want = self.slots[j];
        // evaluate every admissible next vertex, keep those tied for smallest prefix
        let mut candidates: Vec<(Vec<BigInt>, usize)> = Vec::new();
        for v in 0..self.verts.len() {
            if used[v] || self.classes[v] != want {
                continue;
            }
            order.push(v);
            let key = self.prefix_key(order);
            order.pop();
            candidates.push((key, v));
        }
        let Some(min) = candidates.iter().map(|(k, _)| k).min().cloned() else {
            return;
        };
        if let Some(best) = &self.best {
            let n = min.len();
            if min.as_slice().cmp(&best[..n]) == Ordering::Greater {
                return;
            }
        }
        for (key, v) in candidates {
            if key != min {
                continue;
            }
            used[v] = true;
            order.push(v);
            self.run(order, used);
            order.pop();
            used[v] = false;
        }
    }
}

/// Canonical key of a lattice polytope with the origin in its interior.
pub fn normal_form(p: &RationalPolytope) -> Result<NormalForm> {
    let verts = p.integral_vertices().ok_or(Error::NotLattice)?;
    if !p.origin_interior() {
        return Err(Error::OriginNotInterior);
    }
    let classes = vertex_classes(p);
    // slot sequence: class ids sorted by (class size, class id)
    let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for &c in &classes {
        *sizes.entry(c).or_default() += 1;
    }
    let mut order_of_classes: Vec<(usize, usize)> = sizes.iter().map(|(&c, &n)| (n, c)).collect();
    order_of_classes.sort();
    let slots: Vec<usize> = order_of_classes
        .iter()
        .flat_map(|&(n, c)| std::iter::repeat_n(c, n))
        .collect();

    let d = p.ambient_dim;
    let mut search = Search {
        verts: &verts,
        slots,
        classes,
        d,
        best: None,
    };
    let mut used = vec![false; verts.len()];
    search.run(&mut Vec::with_capacity(verts.len()), &mut used);
    let best = search.best.expect("at least one ordering");

    let mut key = format!("{d};{};", verts.len());
    let body: Vec<String> = best.iter().map(|x| x.to_string()).collect();
    key.push_str(&body.join(","));
    Ok(NormalForm(key))
}

pub fn equivalent(p: &RationalPolytope, q: &RationalPolytope) -> Result<bool> {
    if p.ambient_dim != q.ambient_dim || p.n_vertices() != q.n_vertices() {
        return Ok(false);
    }
    Ok(normal_form(p)? == normal_form(q)?)
}

#[cfg(test)]
mod tests {
    use super::super::{cross_polytope, cube, from_i64};
    use super::*;

    #[test]
    fn shear_invariance() {
        let p = from_i64(&[&[1, 0], &[0, 1], &[-1, -3]]).unwrap();
        let m: Vec<Vec<BigInt>> = vec![vec![1.into(), 0.into()], vec![5.into(), 1.into()]];
        let q = p.transform(&m).unwrap();
        assert_eq!(normal_form(&p).unwrap(), normal_form(&q).unwrap());
        assert!(equivalent(&p, &q).unwrap());
    }

    #[test]
    fn distinguishes_vertex_counts() {
        let tri = from_i64(&[&[1, 0], &[0, 1], &[-1, -1]]).unwrap();
        assert_ne!(normal_form(&tri).unwrap(), normal_form(&cross_polytope(2)).unwrap());
        assert!(!equivalent(&tri, &cross_polytope(2)).unwrap());
    }

    #[test]
    fn distinguishes_same_combinatorics() {
        let a = from_i64(&[&[1, 0], &[0, 1], &[-1, -1]]).unwrap();
        let b = from_i64(&[&[1, 0], &[0, 1], &[-1, -2]]).unwrap();
        assert!(!equivalent(&a, &b).unwrap());
    }

    #[test]
    fn errors() {
        let p = from_i64(&[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        assert_eq!(normal_form(&p), Err(Error::OriginNotInterior));
        assert!(normal_form(&cube(3, 1)).is_ok());
    }
}
