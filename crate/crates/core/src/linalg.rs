//! Exact linear algebra: fraction-free determinants over the polynomial ring
//! and row reduction over the rationals.

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::polyring::{Poly, VarSpace};

/// Determinant of a square matrix of polynomials by Bareiss elimination.
///
/// Every intermediate division is exact; a failed division means the input
/// was not over a single variable space.
pub fn det_bareiss(vs: &Arc<VarSpace>, mut m: Vec<Vec<Poly>>) -> Result<Poly> {
    let size = m.len();
    if m.iter().any(|row| row.len() != size) {
        return Err(Error::InvalidArgument("matrix is not square".into()));
    }
    if size == 0 {
        return Ok(Poly::one(vs));
    }
    let mut sign = false;
    let mut prev = Poly::one(vs);
    for k in 0..size - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..size).find(|&r| !m[r][k].is_zero()) else {
                return Ok(Poly::zero(vs));
            };
            m.swap(k, swap);
            sign = !sign;
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let num = m[i][j]
                    .try_mul(&m[k][k])?
                    .try_sub(&m[i][k].try_mul(&m[k][j])?)?;
                m[i][j] = num
                    .div_exact(&prev)?
                    .ok_or_else(|| Error::InvalidArgument("inexact Bareiss step".into()))?;
            }
            m[i][k] = Poly::zero(vs);
        }
        prev = m[k][k].clone();
    }
    let d = m[size - 1][size - 1].clone();
    Ok(if sign { -d } else { d })
}

/// Reduced row echelon form in place; returns the pivot column of each
/// nonzero row. Rows that reduce to zero are removed.
pub fn rref(rows: &mut Vec<Vec<BigRational>>) -> Vec<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (dst, src) in row[c..].iter_mut().zip(&pivot[c..]) {
                *dst -= src * &f;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    debug_assert!(rows.iter().all(|row| row.iter().any(|v| !v.is_zero())));
    pivots
}

pub fn rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::rat;

    fn vs() -> Arc<VarSpace> {
        VarSpace::new(3, &["a"]).unwrap()
    }

    fn p(s: &str) -> Poly {
        Poly::parse(s, &vs()).unwrap()
    }

    #[test]
    fn det_2x2_and_3x3() {
        let m = vec![vec![p("x0"), p("x1")], vec![p("x2"), p("a")]];
        assert_eq!(det_bareiss(&vs(), m).unwrap(), p("a*x0 - x1*x2"));

        // zero leading pivot forces a row swap
        let m = vec![
            vec![p("0"), p("1"), p("0")],
            vec![p("1"), p("0"), p("0")],
            vec![p("0"), p("0"), p("x0")],
        ];
        assert_eq!(det_bareiss(&vs(), m).unwrap(), p("-x0"));
    }

    #[test]
    fn singular() {
        let m = vec![vec![p("x0"), p("x1")], vec![p("2*x0"), p("2*x1")]];
        assert!(det_bareiss(&vs(), m).unwrap().is_zero());
    }

    #[test]
    fn rank_of_dependent_rows() {
        let rows = vec![
            vec![rat(1, 1), rat(2, 1), rat(3, 1)],
            vec![rat(2, 1), rat(4, 1), rat(6, 1)],
            vec![rat(0, 1), rat(1, 1), rat(1, 2)],
        ];
        assert_eq!(rank(&rows), 2);
        let mut m = rows.clone();
        assert_eq!(rref(&mut m), vec![0, 1]);
        assert_eq!(m[0], vec![rat(1, 1), rat(0, 1), rat(2, 1)]);
    }
}
