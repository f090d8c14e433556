//! Determinants of polynomial matrices and Jacobians of square systems.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{Poly, Ring};

/// Determinant by fraction-free Bareiss elimination.
///
/// Every intermediate division is exact in the polynomial ring; a failed
/// division falls back to cofactor expansion for `n <= 4` and is otherwise
/// reported as an internal error.
pub fn determinant(ring: &Arc<Ring>, matrix: &[Vec<Poly>]) -> Result<Poly> {
    let n = matrix.len();
    if matrix.iter().any(|row| row.len() != n) {
        return Err(Error::NotSquareSystem {
            rows: n,
            vars: matrix.first().map_or(0, Vec::len),
        });
    }
    match bareiss(ring, matrix.to_vec()) {
        Some(d) => Ok(d),
        None if n <= 4 => Ok(det_cofactor(ring, matrix)),
        None => Err(Error::Internal("inexact Bareiss division".into())),
    }
}

fn bareiss(ring: &Arc<Ring>, mut m: Vec<Vec<Poly>>) -> Option<Poly> {
    let n = m.len();
    if n == 0 {
        return Some(Poly::one(ring));
    }
    let mut prev = Poly::one(ring);
    let mut negate = false;
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return Some(Poly::zero(ring));
            };
            m.swap(k, r);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev)?;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    Some(if negate { -d } else { d })
}

/// Laplace expansion along the first row. Exponential; meant for small
/// matrices and as an independent cross-check.
pub fn det_cofactor(ring: &Arc<Ring>, m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one(ring);
    }
    let mut acc = Poly::zero(ring);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let t = &m[0][j] * &det_cofactor(ring, &minor);
        acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
    }
    acc
}

/// Matrix of partial derivatives `d f_i / d x_j`.
pub fn jacobian_matrix(system: &[Poly]) -> Result<Vec<Vec<Poly>>> {
    let ring = square_ring(system)?;
    Ok(system
        .iter()
        .map(|f| (0..ring.nvars()).map(|j| f.derivative(j)).collect())
        .collect())
}

/// Determinant of the Jacobian of a square system.
pub fn jacobian_det(system: &[Poly]) -> Result<Poly> {
    let ring = square_ring(system)?;
    determinant(&ring, &jacobian_matrix(system)?)
}

pub(crate) fn square_ring(system: &[Poly]) -> Result<Arc<Ring>> {
    let Some(first) = system.first() else {
        return Err(Error::NotSquareSystem { rows: 0, vars: 0 });
    };
    let ring = first.ring().clone();
    if system.len() != ring.nvars() {
        return Err(Error::NotSquareSystem {
            rows: system.len(),
            vars: ring.nvars(),
        });
    }
    if system.iter().any(|p| !crate::poly::same_ring(p.ring(), &ring)) {
        return Err(Error::RingMismatch("system mixes rings".into()));
    }
    Ok(ring)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn sys(ring: &Arc<Ring>, items: &[&str]) -> Vec<Poly> {
        items.iter().map(|s| Poly::parse(ring, s).unwrap()).collect()
    }

    #[test]
    fn jacobian_examples() {
        let r2 = Ring::standard(2, FieldSpec::Rationals);
        let j = jacobian_det(&sys(&r2, &["x1^2 - x2^2", "x1*x2"])).unwrap();
        assert_eq!(j, Poly::parse(&r2, "2*x1^2 + 2*x2^2").unwrap());

        let r3 = Ring::standard(3, FieldSpec::Rationals);
        assert_eq!(jacobian_det(&sys(&r3, &["x1", "x2", "x3"])).unwrap(), Poly::one(&r3));

        let r1 = Ring::new(["x"], FieldSpec::Rationals).unwrap();
        assert_eq!(
            jacobian_det(&sys(&r1, &["x^3"])).unwrap(),
            Poly::parse(&r1, "3*x^2").unwrap()
        );
    }

    #[test]
    fn rejects_non_square() {
        let r2 = Ring::standard(2, FieldSpec::Rationals);
        assert_eq!(
            jacobian_det(&sys(&r2, &["x1"])),
            Err(Error::NotSquareSystem { rows: 1, vars: 2 })
        );
    }

    #[test]
    fn bareiss_matches_cofactor_with_zero_pivots() {
        let r = Ring::standard(3, FieldSpec::Rationals);
        let m: Vec<Vec<Poly>> = [
            ["0", "x1", "x2 + 1", "3"],
            ["x3", "0", "x1*x2", "x1"],
            ["1", "x2^2", "0", "x3 - x1"],
            ["x1 + x2", "2", "x3", "0"],
        ]
        .iter()
        .map(|row| row.iter().map(|s| Poly::parse(&r, s).unwrap()).collect())
        .collect();
        assert_eq!(bareiss(&r, m.clone()).unwrap(), det_cofactor(&r, &m));
        let singular = vec![m[0].clone(), m[0].clone(), m[2].clone(), m[3].clone()];
        assert!(determinant(&r, &singular).unwrap().is_zero());
    }
}
