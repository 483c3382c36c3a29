//! Closed forms for a simplex written in the basis of all but one of its
//! vertices, and for the face of its dual cut out by the shared coordinates.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::arith::{factorial, Rational};
use crate::error::{Error, Result};
use crate::polytope::{hull, RationalPolytope};

fn check_beta(beta: &[Rational]) -> Result<()> {
    if beta.iter().sum::<Rational>() != Rational::one() {
        return Err(Error::InvalidBarycentric("entries must sum to 1".into()));
    }
    if beta.iter().any(|b| !b.is_positive()) {
        return Err(Error::InvalidBarycentric("entries must be positive".into()));
    }
    Ok(())
}

fn check_sets(n: usize, basis: &[usize], shared: &[usize], excluded: Option<usize>) -> Result<()> {
    let b: BTreeSet<usize> = basis.iter().copied().collect();
    if b.len() != basis.len() || basis.iter().any(|&i| i >= n) {
        return Err(Error::Precondition("basis indices must be distinct and in range".into()));
    }
    if !shared.iter().all(|v| b.contains(v)) {
        return Err(Error::Precondition("shared set must lie in the basis".into()));
    }
    if let Some(x) = excluded {
        if b.contains(&x) || x >= n {
            return Err(Error::Precondition("excluded vertex must lie outside the basis".into()));
        }
        if basis.len() + 1 != n {
            return Err(Error::Precondition(
                "basis and excluded vertex must cover every vertex".into(),
            ));
        }
    }
    Ok(())
}

/// The simplex with vertices `e_w` (`w` in basis order) and
/// `v = −Σ_w (β_w / β_v) e_w` for the excluded vertex `v`.
pub fn simplex_in_basis(beta: &[Rational], excluded: usize) -> Result<RationalPolytope> {
    check_beta(beta)?;
    let basis: Vec<usize> = (0..beta.len()).filter(|&i| i != excluded).collect();
    check_sets(beta.len(), &basis, &[], Some(excluded))?;
    let k = basis.len();
    let mut pts: Vec<Vec<Rational>> = (0..k)
        .map(|j| {
            let mut e = vec![Rational::zero(); k];
            e[j] = Rational::one();
            e
        })
        .collect();
    let bv = &beta[excluded];
    pts.push(basis.iter().map(|&w| -(&beta[w] / bv)).collect());
    hull(&pts)
}

/// Vertices of the dual of [`simplex_in_basis`] in the dual basis:
/// `−Σ e*_v` opposite the excluded vertex, and
/// `(1/β_w − 1) e*_w − Σ_{v ≠ w} e*_v` opposite each basis vertex `w`.
/// Both sums run over the whole basis.
pub fn dual_simplex_vertices(
    beta: &[Rational],
    basis: &[usize],
    shared: &[usize],
    excluded: usize,
) -> Result<Vec<Vec<Rational>>> {
    check_beta(beta)?;
    check_sets(beta.len(), basis, shared, Some(excluded))?;
    let k = basis.len();
    let mut out = vec![vec![-Rational::one(); k]];
    for (j, &w) in basis.iter().enumerate() {
        let mut y = vec![-Rational::one(); k];
        y[j] = beta[w].recip() - Rational::one();
        out.push(y);
    }
    Ok(out)
}

/// `(1/(d − q)!) Π_{v ∈ basis \ shared} 1/β_v` with `d = |basis|`, `q = |shared|`.
pub fn face_volume_f(beta: &[Rational], basis: &[usize], shared: &[usize]) -> Result<Rational> {
    check_beta(beta)?;
    check_sets(beta.len(), basis, shared, None)?;
    let free: Vec<usize> = basis.iter().copied().filter(|v| !shared.contains(v)).collect();
    let prod: Rational = free.iter().map(|&v| beta[v].recip()).product();
    Ok(prod / Rational::from_integer(factorial(free.len())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::from_i64;

    fn q(p: i64, r: i64) -> Rational {
        Rational::new(p.into(), r.into())
    }

    #[test]
    fn triangle_dual() {
        let beta = [q(1, 3), q(1, 3), q(1, 3)];
        let v = dual_simplex_vertices(&beta, &[1, 2], &[1], 0).unwrap();
        assert_eq!(v.len(), 3);
        let p = hull(&v).unwrap();
        let expected = from_i64(&[&[-1, -1], &[2, -1], &[-1, 2]]).unwrap();
        assert!(p.same_vertices(&expected));
        let kernel = simplex_in_basis(&beta, 0).unwrap().dual().unwrap();
        assert!(kernel.same_vertices(&expected));
    }

    #[test]
    fn half_weight_coordinate() {
        let beta = [q(1, 6), q(1, 6), q(1, 6), q(1, 2)];
        let v = dual_simplex_vertices(&beta, &[1, 2, 3], &[], 0).unwrap();
        assert!(v.iter().any(|y| y[2] == q(1, 1)));
    }

    #[test]
    fn face_volumes() {
        let beta = [q(1, 3), q(1, 3), q(1, 3)];
        assert_eq!(face_volume_f(&beta, &[1, 2], &[1]).unwrap(), q(3, 1));
        assert_eq!(face_volume_f(&beta, &[1, 2], &[1, 2]).unwrap(), q(1, 1));
        let beta = [q(1, 6), q(1, 6), q(1, 6), q(1, 2)];
        assert_eq!(face_volume_f(&beta, &[0, 1, 3], &[3]).unwrap(), q(18, 1));
    }

    #[test]
    fn validation() {
        let bad = [q(1, 2), q(1, 3), q(1, 3)];
        assert!(dual_simplex_vertices(&bad, &[1, 2], &[], 0).is_err());
        let beta = [q(1, 3), q(1, 3), q(1, 3)];
        assert!(dual_simplex_vertices(&beta, &[0, 2], &[], 0).is_err());
        assert!(dual_simplex_vertices(&beta, &[1, 2], &[0], 0).is_err());
    }
}
