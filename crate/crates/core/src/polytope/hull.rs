//! V→H conversion by the double description method, in exact integer
//! arithmetic on homogenised coordinates.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::arith::{denominator_lcm, make_primitive, Rational};
use crate::linalg::{int_rank, rational_inverse, rational_nullspace, rational_rref};

/// Fixed-width bitset over constraint indices.
#[derive(Clone, PartialEq, Eq, Debug)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn is_subset_of(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

struct Ray {
    v: Vec<BigInt>,
    zeros: Bits,
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Extreme rays of the cone `{c : rows_i · c ≥ 0}`. The rows must span the
/// whole space, so the cone is pointed.
pub(crate) fn extreme_rays(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = rows[0].len();
    let total = rows.len();

    // an invertible starting block
    let mut chosen: Vec<usize> = Vec::with_capacity(n);
    let mut block: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for (i, r) in rows.iter().enumerate() {
        block.push(r.clone());
        if int_rank(&block) == block.len() {
            chosen.push(i);
            if chosen.len() == n {
                break;
            }
        } else {
            block.pop();
        }
    }
    assert_eq!(chosen.len(), n, "constraint rows must span the space");

    let as_rational: Vec<Vec<Rational>> = block
        .iter()
        .map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect())
        .collect();
    let inv = rational_inverse(&as_rational).expect("independent block");
    let mut rays: Vec<Ray> = (0..n)
        .map(|j| {
            let col: Vec<Rational> = (0..n).map(|i| inv[i][j].clone()).collect();
            let l = denominator_lcm(col.iter());
            let mut v: Vec<BigInt> = col
                .iter()
                .map(|q| (q * Rational::from_integer(l.clone())).to_integer())
                .collect();
            make_primitive(&mut v);
            let mut zeros = Bits::new(total);
            for (k, &ci) in chosen.iter().enumerate() {
                if k != j {
                    zeros.insert(ci);
                }
            }
            Ray { v, zeros }
        })
        .collect();

    for (idx, row) in rows.iter().enumerate() {
        if chosen.contains(&idx) {
            continue;
        }
        let vals: Vec<BigInt> = rays.iter().map(|r| dot(row, &r.v)).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        if neg.is_empty() {
            for (r, val) in rays.iter_mut().zip(&vals) {
                if val.is_zero() {
                    r.zeros.insert(idx);
                }
            }
            continue;
        }
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let mut fresh = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].zeros.and(&rays[q].zeros);
                if common.count() + 2 < n {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(i, r)| i == p || i == q || !common.is_subset_of(&r.zeros));
                if !adjacent {
                    continue;
                }
                let mut v: Vec<BigInt> = rays[q]
                    .v
                    .iter()
                    .zip(&rays[p].v)
                    .map(|(b, a)| &vals[p] * b - &vals[q] * a)
                    .collect();
                make_primitive(&mut v);
                let mut zeros = common;
                zeros.insert(idx);
                fresh.push(Ray { v, zeros });
            }
        }
        let mut next = Vec::with_capacity(rays.len() + fresh.len());
        for (i, mut r) in rays.into_iter().enumerate() {
            if vals[i].is_negative() {
                continue;
            }
            if vals[i].is_zero() {
                r.zeros.insert(idx);
            }
            next.push(r);
        }
        next.extend(fresh);
        rays = next;
    }
    rays.into_iter().map(|r| r.v).collect()
}

/// Raw hull data before normalisation.
pub(crate) struct HullData {
    pub dim: usize,
    pub vertices: Vec<Vec<Rational>>,
    /// `(normal, rhs)` with `⟨normal, x⟩ ≥ rhs`.
    pub facets: Vec<(Vec<Rational>, Rational)>,
    /// `(normal, rhs)` with `⟨normal, x⟩ = rhs`.
    pub equations: Vec<(Vec<Rational>, Rational)>,
}

pub(crate) fn compute_hull(points: &[Vec<Rational>]) -> HullData {
    let mut pts: Vec<Vec<Rational>> = points.to_vec();
    pts.sort();
    pts.dedup();
    let ambient = pts[0].len();
    let origin = pts[0].clone();

    let diffs: Vec<Vec<Rational>> = pts[1..]
        .iter()
        .map(|p| p.iter().zip(&origin).map(|(a, b)| a - b).collect())
        .collect();
    let mut echelon = diffs.clone();
    let pivots = rational_rref(&mut echelon, ambient);
    let k = pivots.len();

    let equations: Vec<(Vec<Rational>, Rational)> = rational_nullspace(&echelon[..k], ambient)
        .into_iter()
        .map(|c| {
            let c = primitive_rational(&c);
            let rhs = c.iter().zip(&origin).map(|(a, b)| a * b).sum();
            (c, rhs)
        })
        .collect();

    if k == 0 {
        return HullData {
            dim: 0,
            vertices: vec![origin],
            facets: Vec::new(),
            equations,
        };
    }

    // chart: y = (x − origin)|_pivots · B_pivots^{-1}, B = echelon basis rows
    let chart: Option<Vec<Vec<Rational>>> = if k == ambient {
        None
    } else {
        let b_piv: Vec<Vec<Rational>> = echelon[..k]
            .iter()
            .map(|r| pivots.iter().map(|&c| r[c].clone()).collect())
            .collect();
        Some(rational_inverse(&b_piv).expect("pivot block invertible"))
    };
    let to_chart = |p: &[Rational]| -> Vec<Rational> {
        match &chart {
            None => p.to_vec(),
            Some(inv) => {
                let d: Vec<Rational> = pivots.iter().map(|&c| &p[c] - &origin[c]).collect();
                (0..k)
                    .map(|j| d.iter().enumerate().map(|(i, x)| x * &inv[i][j]).sum())
                    .collect()
            }
        }
    };

    let rows: Vec<Vec<BigInt>> = pts
        .iter()
        .map(|p| {
            let y = to_chart(p);
            let l = denominator_lcm(y.iter());
            let lq = Rational::from_integer(l.clone());
            let mut r: Vec<BigInt> = y.iter().map(|q| (q * &lq).to_integer()).collect();
            r.push(l);
            r
        })
        .collect();

    let rays = extreme_rays(&rows);

    let vertices: Vec<Vec<Rational>> = pts
        .iter()
        .zip(&rows)
        .filter(|(_, row)| {
            let tight: Vec<Vec<BigInt>> = rays
                .iter()
                .filter(|r| dot(row, r).is_zero())
                .cloned()
                .collect();
            tight.len() >= k && int_rank(&tight) == k
        })
        .map(|(p, _)| p.clone())
        .collect();

    let facets = rays
        .iter()
        .map(|ray| {
            let a: Vec<Rational> = ray[..k]
                .iter()
                .map(|x| Rational::from_integer(x.clone()))
                .collect();
            let a0 = Rational::from_integer(ray[k].clone());
            match &chart {
                None => (a, -a0),
                Some(inv) => {
                    // a·y = a·(B^{-1})ᵀ-contracted difference
                    let mut normal = vec![Rational::zero(); ambient];
                    for (i, &c) in pivots.iter().enumerate() {
                        normal[c] = (0..k).map(|j| &inv[i][j] * &a[j]).sum();
                    }
                    let shift: Rational = normal.iter().zip(&origin).map(|(n, o)| n * o).sum();
                    (normal, shift - a0)
                }
            }
        })
        .collect();

    HullData {
        dim: k,
        vertices,
        facets,
        equations,
    }
}

fn primitive_rational(c: &[Rational]) -> Vec<Rational> {
    let l = denominator_lcm(c.iter());
    let lq = Rational::from_integer(l);
    let mut ints: Vec<BigInt> = c.iter().map(|q| (q * &lq).to_integer()).collect();
    make_primitive(&mut ints);
    // sign convention: first nonzero entry positive
    if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        for x in ints.iter_mut() {
            *x = -&*x;
        }
    }
    ints.into_iter().map(Rational::from_integer).collect()
}
