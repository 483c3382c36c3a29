//! Exact integer linear algebra: Hermite and Smith normal forms, saturation,
//! quotient projections and lattice indices. Everything is `BigInt`; the
//! matrices here are tiny, so there is no attempt at asymptotic cleverness.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{gcd_all, ExactInt, Rational};
use crate::error::{Error, Result};

/// Dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    cols: usize,
    rows: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            cols,
            rows: vec![vec![BigInt::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i][i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must share a length.
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                got: bad.len(),
            });
        }
        Ok(IntMatrix { cols, rows })
    }

    /// Convenience constructor for small literal matrices.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::from_rows(rows).expect("rectangular literal")
    }

    /// A matrix with a known column count and no rows.
    pub fn empty(cols: usize) -> Self {
        IntMatrix {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.rows[i]
    }

    pub fn into_rows(self) -> Vec<Vec<BigInt>> {
        self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.rows[i][j] = v;
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.nrows());
        for (i, row) in self.rows.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                t.rows[j][i] = x.clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.nrows() {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.nrows(),
            });
        }
        let mut out = IntMatrix::zeros(self.nrows(), other.cols);
        for i in 0..self.nrows() {
            for k in 0..self.cols {
                let a = &self.rows[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.rows[i][j] += a * &other.rows[k][j];
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.nrows() {
            return Err(Error::DimensionMismatch {
                expected: self.nrows(),
                got: v.len(),
            });
        }
        let mut out = vec![BigInt::zero(); self.cols];
        for (x, row) in v.iter().zip(&self.rows) {
            if x.is_zero() {
                continue;
            }
            for (o, a) in out.iter_mut().zip(row) {
                *o += x * a;
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(Zero::is_zero))
    }

    /// Determinant of a square matrix (fraction-free elimination).
    pub fn determinant(&self) -> Result<BigInt> {
        if self.nrows() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: self.nrows(),
            });
        }
        Ok(bareiss_determinant(self.rows.clone()))
    }

    pub fn rank(&self) -> usize {
        int_rank(&self.rows)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.rows.swap(a, b);
    }

    /// row[target] += factor * row[source]
    fn add_row_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        let src = self.rows[source].clone();
        for (t, s) in self.rows[target].iter_mut().zip(&src) {
            *t += factor * s;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for x in self.rows[r].iter_mut() {
            *x = -&*x;
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for row in self.rows.iter_mut() {
            row.swap(a, b);
        }
    }

    /// col[target] += factor * col[source]
    fn add_col_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for row in self.rows.iter_mut() {
            let s = row[source].clone();
            row[target] += factor * s;
        }
    }

    /// Rows as exact decimal strings, for embedding in JSON reports.
    pub fn to_json(&self) -> Vec<Vec<ExactInt>> {
        self.rows
            .iter()
            .map(|r| r.iter().cloned().map(ExactInt).collect())
            .collect()
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<ExactInt>> = Vec::deserialize(d)?;
        IntMatrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(|x| x.0).collect())
                .collect(),
        )
        .map_err(serde::de::Error::custom)
    }
}

pub(crate) fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Rank of an integer row set.
pub fn int_rank(rows: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for i in rank + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let a = m[rank][c].clone();
            let b = m[i][c].clone();
            for j in c..ncols {
                let v = &m[i][j] * &a - &m[rank][j] * &b;
                m[i][j] = v;
            }
            let g = gcd_all(m[i].iter());
            if !g.is_zero() && !g.is_one() {
                for x in m[i].iter_mut() {
                    *x = &*x / &g;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Row-style Hermite normal form: returns `(H, U)` with `U·A = H`, `U`
/// unimodular, `H` in row echelon form with positive pivots and entries above
/// each pivot reduced into `[0, pivot)`. Zero rows sit at the bottom.
pub fn hermite_normal_form(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = a.clone();
    let mut u = IntMatrix::identity(a.nrows());
    hnf_in_place(&mut h, Some(&mut u));
    (h, u)
}

/// HNF without tracking the transform.
pub fn hnf(a: &IntMatrix) -> IntMatrix {
    let mut h = a.clone();
    hnf_in_place(&mut h, None);
    h
}

fn hnf_in_place(h: &mut IntMatrix, mut u: Option<&mut IntMatrix>) {
    let m = h.nrows();
    let mut r = 0;
    for c in 0..h.ncols() {
        if r == m {
            break;
        }
        // Euclid on column c over rows r..m until a single nonzero remains.
        loop {
            let pivot = (r..m)
                .filter(|&i| !h.rows[i][c].is_zero())
                .min_by(|&i, &j| h.rows[i][c].abs().cmp(&h.rows[j][c].abs()));
            let Some(p) = pivot else { break };
            if p != r {
                h.swap_rows(p, r);
                if let Some(u) = u.as_deref_mut() {
                    u.swap_rows(p, r);
                }
            }
            let mut done = true;
            for i in r + 1..m {
                if h.rows[i][c].is_zero() {
                    continue;
                }
                let q = -(h.rows[i][c].div_floor(&h.rows[r][c]));
                h.add_row_multiple(i, r, &q);
                if let Some(u) = u.as_deref_mut() {
                    u.add_row_multiple(i, r, &q);
                }
                if !h.rows[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.rows[r][c].is_zero() {
            continue;
        }
        if h.rows[r][c].is_negative() {
            h.negate_row(r);
            if let Some(u) = u.as_deref_mut() {
                u.negate_row(r);
            }
        }
        for i in 0..r {
            let q = -(h.rows[i][c].div_floor(&h.rows[r][c]));
            h.add_row_multiple(i, r, &q);
            if let Some(u) = u.as_deref_mut() {
                u.add_row_multiple(i, r, &q);
            }
        }
        r += 1;
    }
}

/// Smith normal form: `(S, U, V)` with `U·A·V = S` diagonal, nonnegative
/// diagonal entries `s_1 | s_2 | …`, `U` and `V` unimodular.
pub fn smith_normal_form(a: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let mut s = a.clone();
    let (m, n) = (a.nrows(), a.ncols());
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    for t in 0..m.min(n) {
        let pivot = (t..m)
            .flat_map(|i| (t..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !s.rows[i][j].is_zero())
            .min_by(|&(a1, b1), &(a2, b2)| s.rows[a1][b1].abs().cmp(&s.rows[a2][b2].abs()));
        let Some((pi, pj)) = pivot else { break };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..m {
                if s.rows[i][t].is_zero() {
                    continue;
                }
                let q = -(s.rows[i][t].div_floor(&s.rows[t][t]));
                s.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                if !s.rows[i][t].is_zero() {
                    clean = false;
                    s.swap_rows(t, i);
                    u.swap_rows(t, i);
                }
            }
            for j in t + 1..n {
                if s.rows[t][j].is_zero() {
                    continue;
                }
                let q = -(s.rows[t][j].div_floor(&s.rows[t][t]));
                s.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                if !s.rows[t][j].is_zero() {
                    clean = false;
                    s.swap_cols(t, j);
                    v.swap_cols(t, j);
                }
            }
            if !clean {
                continue;
            }
            // divisibility: fold any offending row into the pivot row
            let offending = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| !(&s.rows[i][j] % &s.rows[t][t]).is_zero())
            });
            match offending {
                Some(i) => {
                    s.add_row_multiple(t, i, &BigInt::one());
                    u.add_row_multiple(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if s.rows[t][t].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    (s, u, v)
}

/// Diagonal of a Smith form up to the rank.
pub fn elementary_divisors(a: &IntMatrix) -> Vec<BigInt> {
    let (s, _, _) = smith_normal_form(a);
    (0..s.nrows().min(s.ncols()))
        .map(|i| s.rows[i][i].clone())
        .filter(|x| !x.is_zero())
        .collect()
}

/// A sublattice of `Z^ambient`, stored by a basis of linearly independent rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sublattice {
    ambient: usize,
    basis: IntMatrix,
}

impl Sublattice {
    /// Lattice generated by arbitrary (possibly dependent) integer vectors.
    pub fn from_generators(ambient: usize, generators: &[Vec<BigInt>]) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.len() != ambient) {
            return Err(Error::DimensionMismatch {
                expected: ambient,
                got: g.len(),
            });
        }
        let m = IntMatrix {
            cols: ambient,
            rows: generators.to_vec(),
        };
        let h = hnf(&m);
        let rows: Vec<Vec<BigInt>> = h
            .rows
            .into_iter()
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect();
        Ok(Sublattice {
            ambient,
            basis: IntMatrix {
                cols: ambient,
                rows,
            },
        })
    }

    pub fn full(ambient: usize) -> Self {
        Sublattice {
            ambient,
            basis: IntMatrix::identity(ambient),
        }
    }

    pub fn zero(ambient: usize) -> Self {
        Sublattice {
            ambient,
            basis: IntMatrix::empty(ambient),
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.nrows()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// Whether `v` is an integer combination of the basis.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        match solve_rational_combination(self.basis.rows(), v) {
            Some(c) => c.iter().all(|x| x.is_integer()),
            None => false,
        }
    }

    /// Whether `v` lies in the rational span of the basis.
    pub fn spans(&self, v: &[BigInt]) -> bool {
        solve_rational_combination(self.basis.rows(), v).is_some()
    }

    pub fn is_saturated(&self) -> bool {
        elementary_divisors(&self.basis).iter().all(One::is_one)
    }
}

/// Ambient lattice points in the rational span of `l`. The result is a
/// direct summand containing `l` with index equal to the product of the
/// elementary divisors of `l`'s basis.
pub fn saturate(l: &Sublattice) -> Sublattice {
    if l.rank() == 0 {
        return l.clone();
    }
    let (_, _, v) = smith_normal_form(&l.basis);
    let v_inv = unimodular_inverse(&v);
    let rows = v_inv.rows[..l.rank()].to_vec();
    let sat = IntMatrix {
        cols: l.ambient,
        rows,
    };
    Sublattice {
        ambient: l.ambient,
        basis: hnf(&sat),
    }
}

fn unimodular_inverse(m: &IntMatrix) -> IntMatrix {
    let (h, u) = hermite_normal_form(m);
    debug_assert_eq!(h, IntMatrix::identity(m.nrows()));
    u
}

/// Surjection `Z^m → Z^{m−k}` (as a row-vector map `x ↦ x·P`) whose kernel is
/// a given saturated rank-`k` sublattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeProjection {
    matrix: IntMatrix,
}

impl LatticeProjection {
    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn source_rank(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn target_rank(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn apply(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        self.matrix.left_apply(x)
    }

    /// Image of the `i`-th standard basis vector.
    pub fn image_of_basis(&self, i: usize) -> &[BigInt] {
        self.matrix.row(i)
    }
}

pub fn quotient_projection(k: &Sublattice) -> Result<LatticeProjection> {
    let m = k.ambient;
    if k.rank() == 0 {
        return Ok(LatticeProjection {
            matrix: IntMatrix::identity(m),
        });
    }
    let (s, _, v) = smith_normal_form(&k.basis);
    if (0..k.rank()).any(|i| !s.rows[i][i].is_one()) {
        return Err(Error::NotSaturated);
    }
    // rows of K span the first k rows of V^{-1}; coordinates w.r.t. V^{-1}
    // are x·V, and the last m−k of them parametrise the quotient
    let rows = v
        .rows
        .iter()
        .map(|r| r[k.rank()..].to_vec())
        .collect();
    Ok(LatticeProjection {
        matrix: IntMatrix {
            cols: m - k.rank(),
            rows,
        },
    })
}

/// Index `[l1 : l2]` for `l2 ⊆ l1` with equal rational spans.
pub fn lattice_index(l1: &Sublattice, l2: &Sublattice) -> Result<BigInt> {
    if l1.ambient != l2.ambient {
        return Err(Error::DimensionMismatch {
            expected: l1.ambient,
            got: l2.ambient,
        });
    }
    if l1.rank() != l2.rank() {
        return Err(Error::SpanMismatch);
    }
    let mut coeffs = Vec::with_capacity(l2.rank());
    for row in l2.basis.rows() {
        let c = solve_rational_combination(l1.basis.rows(), row).ok_or(Error::SpanMismatch)?;
        if c.iter().any(|x| !x.is_integer()) {
            return Err(Error::NotContained);
        }
        coeffs.push(c.into_iter().map(|x| x.to_integer()).collect());
    }
    Ok(bareiss_determinant(coeffs).abs())
}

/// True iff the entries of a nonzero integer vector are coprime.
pub fn is_primitive(v: &[BigInt]) -> Result<bool> {
    let g = gcd_all(v.iter());
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(g.is_one())
}

// ---------------------------------------------------------------------------
// rational helpers

/// Solves `c · basis = target` for a row vector `c`; `None` when `target` is
/// outside the span. `basis` rows must be linearly independent.
pub fn solve_rational_combination(basis: &[Vec<BigInt>], target: &[BigInt]) -> Option<Vec<Rational>> {
    let k = basis.len();
    let n = target.len();
    // columns: basis vectors, augmented with target; solve transpose system
    let mut m: Vec<Vec<Rational>> = (0..n)
        .map(|j| {
            let mut row: Vec<Rational> = basis
                .iter()
                .map(|b| Rational::from_integer(b[j].clone()))
                .collect();
            row.push(Rational::from_integer(target[j].clone()));
            row
        })
        .collect();
    let pivots = rational_rref(&mut m, k);
    if pivots.len() < k {
        return None;
    }
    // consistency: rows past the rank must have zero rhs
    if m[pivots.len()..].iter().any(|r| !r[k].is_zero()) {
        return None;
    }
    let mut c = vec![Rational::zero(); k];
    for (row, &col) in pivots.iter().enumerate() {
        c[col] = m[row][k].clone();
    }
    Some(c)
}

/// Reduced row echelon form over the first `ncols` columns, in place.
/// Returns pivot columns.
pub fn rational_rref(m: &mut [Vec<Rational>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            let (head, tail) = if i < r {
                let (a, b) = m.split_at_mut(r);
                (&mut a[i], &b[0])
            } else {
                let (a, b) = m.split_at_mut(i);
                (&mut b[0], &a[r])
            };
            for (x, y) in head.iter_mut().zip(tail.iter()) {
                *x -= &f * y;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank of a rational row set.
pub fn rational_rank(rows: &[Vec<Rational>]) -> usize {
    let mut m = rows.to_vec();
    let n = m.first().map_or(0, Vec::len);
    rational_rref(&mut m, n).len()
}

/// Basis of `{x : A x = 0}` for a rational matrix `A` with `n` columns.
pub fn rational_nullspace(rows: &[Vec<Rational>], n: usize) -> Vec<Vec<Rational>> {
    let mut m = rows.to_vec();
    let pivots = rational_rref(&mut m, n);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rational::zero(); n];
            x[f] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                x[pc] = -m[row][f].clone();
            }
            x
        })
        .collect()
}

/// Inverse of a square rational matrix, `None` if singular.
pub fn rational_inverse(a: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
    if rational_rref(&mut m, n).len() < n {
        return None;
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn rational_determinant(a: &[Vec<Rational>]) -> Rational {
    let n = a.len();
    let mut m = a.to_vec();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= &m[c][c];
        let inv = m[c][c].recip();
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] * &inv;
            for j in c..n {
                let v = &f * &m[c][j];
                m[i][j] -= v;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn is_hnf(h: &IntMatrix) -> bool {
        let mut last_pivot: Option<usize> = None;
        let mut seen_zero = false;
        for i in 0..h.nrows() {
            let p = (0..h.ncols()).find(|&j| !h.get(i, j).is_zero());
            match p {
                None => seen_zero = true,
                Some(p) => {
                    if seen_zero || last_pivot.is_some_and(|lp| p <= lp) {
                        return false;
                    }
                    if !h.get(i, p).is_positive() {
                        return false;
                    }
                    for k in 0..i {
                        let x = h.get(k, p);
                        if x.is_negative() || x >= h.get(i, p) {
                            return false;
                        }
                    }
                    last_pivot = Some(p);
                }
            }
        }
        true
    }

    #[test]
    fn hnf_examples() {
        let id = IntMatrix::identity(3);
        let (h, u) = hermite_normal_form(&id);
        assert_eq!(h, id);
        assert_eq!(u, id);

        let a = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        assert_eq!(hermite_normal_form(&a).0, a);

        let a = IntMatrix::from_i64(&[&[2, 4], &[1, 3]]);
        let (h, u) = hermite_normal_form(&a);
        assert!(is_hnf(&h));
        assert_eq!(u.mul(&a).unwrap(), h);
        assert_eq!(h.determinant().unwrap().abs(), BigInt::from(2));
        assert_eq!(u.determinant().unwrap().abs(), BigInt::one());
    }

    #[test]
    fn hnf_rank_deficient() {
        let a = IntMatrix::from_i64(&[&[2, 4, 6], &[1, 2, 3], &[0, 0, 5]]);
        let (h, u) = hermite_normal_form(&a);
        assert!(is_hnf(&h));
        assert_eq!(u.mul(&a).unwrap(), h);
        assert!(h.row(2).iter().all(Zero::is_zero));
    }

    #[test]
    fn snf_examples() {
        let a = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        let (s, u, v) = smith_normal_form(&a);
        assert_eq!(s, IntMatrix::from_i64(&[&[1, 0], &[0, 6]]));
        assert_eq!(u.mul(&a).unwrap().mul(&v).unwrap(), s);

        let z = IntMatrix::zeros(2, 3);
        assert_eq!(smith_normal_form(&z).0, z);

        let id = IntMatrix::identity(2);
        assert_eq!(smith_normal_form(&id).0, id);
    }

    #[test]
    fn snf_divisibility_chain() {
        let a = IntMatrix::from_i64(&[&[4, 6, 2], &[8, 10, 14], &[6, 9, 3]]);
        let (s, u, v) = smith_normal_form(&a);
        assert_eq!(u.mul(&a).unwrap().mul(&v).unwrap(), s);
        for i in 0..2 {
            let (x, y) = (s.get(i, i), s.get(i + 1, i + 1));
            if !x.is_zero() {
                assert!((y % x).is_zero());
            }
        }
        assert_eq!(u.determinant().unwrap().abs(), BigInt::one());
        assert_eq!(v.determinant().unwrap().abs(), BigInt::one());
    }

    #[test]
    fn saturation_examples() {
        let l = Sublattice::from_generators(2, &[v(&[2, 0])]).unwrap();
        let s = saturate(&l);
        assert_eq!(s.basis().rows(), &[v(&[1, 0])]);

        let l = Sublattice::from_generators(2, &[v(&[1, 1]), v(&[1, -1])]).unwrap();
        let s = saturate(&l);
        assert_eq!(s, Sublattice::full(2));
        assert_eq!(lattice_index(&s, &l).unwrap(), BigInt::from(2));

        let sat = Sublattice::from_generators(3, &[v(&[1, 2, 3])]).unwrap();
        assert_eq!(saturate(&sat), sat);
    }

    #[test]
    fn projection_examples() {
        let p = quotient_projection(&Sublattice::zero(3)).unwrap();
        assert_eq!(p.matrix(), &IntMatrix::identity(3));

        let k = Sublattice::from_generators(2, &[v(&[1, 1])]).unwrap();
        let p = quotient_projection(&k).unwrap();
        assert_eq!(p.target_rank(), 1);
        assert!(p.apply(&v(&[1, 1])).unwrap().iter().all(Zero::is_zero));
        assert_eq!(p.apply(&v(&[1, 0])).unwrap()[0].abs(), BigInt::one());

        let k = saturate(&Sublattice::from_generators(3, &[v(&[1, 1, 2])]).unwrap());
        let p = quotient_projection(&k).unwrap();
        assert_eq!(p.target_rank(), 2);
        let mut rel = vec![BigInt::zero(); 2];
        for (i, c) in [1, 1, 2].iter().enumerate() {
            for (r, x) in rel.iter_mut().zip(p.image_of_basis(i)) {
                *r += x * c;
            }
        }
        assert!(rel.iter().all(Zero::is_zero));

        let unsat = Sublattice::from_generators(2, &[v(&[2, 0])]).unwrap();
        assert_eq!(quotient_projection(&unsat), Err(Error::NotSaturated));
    }

    #[test]
    fn index_examples() {
        let z2 = Sublattice::full(2);
        let two = Sublattice::from_generators(2, &[v(&[2, 0]), v(&[0, 2])]).unwrap();
        assert_eq!(lattice_index(&z2, &two).unwrap(), BigInt::from(4));
        assert_eq!(lattice_index(&z2, &z2).unwrap(), BigInt::one());
        let line = Sublattice::from_generators(2, &[v(&[1, 0])]).unwrap();
        assert_eq!(lattice_index(&z2, &line), Err(Error::SpanMismatch));
        let other = Sublattice::from_generators(2, &[v(&[0, 1])]).unwrap();
        assert_eq!(lattice_index(&line, &other), Err(Error::SpanMismatch));
    }

    #[test]
    fn primitivity() {
        assert!(!is_primitive(&v(&[2, 4, 6])).unwrap());
        assert!(is_primitive(&v(&[3, 5])).unwrap());
        assert!(is_primitive(&v(&[0, 0, 1])).unwrap());
        assert_eq!(is_primitive(&v(&[0, 0])), Err(Error::ZeroVector));
    }

    #[test]
    fn rational_helpers() {
        let q = |p: i64| Rational::from_integer(p.into());
        let a = vec![vec![q(2), q(1)], vec![q(1), q(1)]];
        let inv = rational_inverse(&a).unwrap();
        assert_eq!(inv, vec![vec![q(1), q(-1)], vec![q(-1), q(2)]]);
        assert_eq!(rational_determinant(&a), q(1));
        let ns = rational_nullspace(&[vec![q(1), q(1), q(2)]], 3);
        assert_eq!(ns.len(), 2);
        assert_eq!(rational_rank(&a), 2);
    }
}
