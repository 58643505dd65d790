//! Exact linear solvers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalars::{Field, Scalar};

/// Solves a square nonsingular integer system by fraction-free (Bareiss)
/// elimination. Returns `None` if the matrix is singular.
pub fn bareiss_solve(a: &[Vec<BigInt>], b: &[BigInt]) -> Option<Vec<BigRational>> {
    let n = a.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot = (k..n).find(|&r| !m[r][k].is_zero())?;
        m.swap(k, pivot);
        for i in k + 1..n {
            for j in k + 1..=n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let mut x = vec![BigRational::zero(); n];
    for i in (0..n).rev() {
        let mut s = BigRational::from_integer(m[i][n].clone());
        for j in i + 1..n {
            s -= BigRational::from_integer(m[i][j].clone()) * &x[j];
        }
        x[i] = s / BigRational::from_integer(m[i][i].clone());
    }
    Some(x)
}

/// Solves `A x = b` over a field, choosing at every step a pivot of least
/// valuation in the remaining submatrix (ties: leftmost column, then topmost
/// row) and setting free variables to zero. Returns `None` when the system
/// is inconsistent.
///
/// Over a discrete valuation ring this elimination is equivalent to a Smith
/// form computation, so the returned solution is integral whenever any
/// integral solution exists.
pub fn solve_min_valuation<V>(field: &Field, a: &[Vec<Scalar>], b: &[Scalar], valuation: V) -> Option<Vec<Scalar>>
where
    V: Fn(&Scalar) -> i64,
{
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Scalar>> = a.to_vec();
    let mut rhs: Vec<Scalar> = b.to_vec();
    let mut row_done = vec![false; rows];
    let mut col_done = vec![false; cols];
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    loop {
        let mut best: Option<(i64, usize, usize)> = None;
        for c in (0..cols).filter(|&c| !col_done[c]) {
            for r in (0..rows).filter(|&r| !row_done[r]) {
                if field.is_zero(&m[r][c]) {
                    continue;
                }
                let v = valuation(&m[r][c]);
                if best.is_none_or(|(bv, _, _)| v < bv) {
                    best = Some((v, r, c));
                }
            }
        }
        let (_, pr, pc) = match best {
            Some(x) => x,
            None => break,
        };
        row_done[pr] = true;
        col_done[pc] = true;
        pivots.push((pr, pc));
        let inv = field.inv(&m[pr][pc]).unwrap();
        for r in (0..rows).filter(|&r| !row_done[r]) {
            if field.is_zero(&m[r][pc]) {
                continue;
            }
            let factor = field.mul(&m[r][pc], &inv);
            let pivot_row = m[pr].clone();
            for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                if !field.is_zero(y) {
                    *x = field.sub(x, &field.mul(&factor, y));
                }
            }
            rhs[r] = field.sub(&rhs[r], &field.mul(&factor, &rhs[pr]));
        }
    }
    if (0..rows).any(|r| !row_done[r] && !field.is_zero(&rhs[r])) {
        return None;
    }
    let mut x = vec![field.zero(); cols];
    for &(pr, pc) in pivots.iter().rev() {
        let mut s = rhs[pr].clone();
        for c in 0..cols {
            if c != pc && !field.is_zero(&m[pr][c]) && !field.is_zero(&x[c]) {
                s = field.sub(&s, &field.mul(&m[pr][c], &x[c]));
            }
        }
        x[pc] = field.div(&s, &m[pr][pc]).unwrap();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::lift_field;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn bareiss_small_system() {
        let a = vec![ints(&[2, 1]), ints(&[1, 3])];
        let x = bareiss_solve(&a, &ints(&[3, 5])).unwrap();
        assert_eq!(x, vec![BigRational::new(4.into(), 5.into()), BigRational::new(7.into(), 5.into())]);
        assert!(bareiss_solve(&[ints(&[1, 2]), ints(&[2, 4])], &ints(&[1, 1])).is_none());
    }

    #[test]
    fn min_valuation_pivoting_keeps_solutions_integral() {
        let f2 = Field::prime(2).unwrap();
        let (q, phi) = lift_field(&f2).unwrap();
        let val = |s: &Scalar| phi.valuation(s).unwrap();
        // g20 + g11 + g02 = -1, g11 + 2 g02 = -1
        let row = |v: &[i64]| v.iter().map(|&c| q.from_i64(c)).collect::<Vec<_>>();
        let a = vec![row(&[1, 1, 1]), row(&[0, 1, 2])];
        let b = row(&[-1, -1]);
        let x = solve_min_valuation(&q, &a, &b, val).unwrap();
        assert_eq!(x, row(&[0, -1, 0]));
        // 2 x = 1 has no 2-integral solution but is still solved over Q
        let x = solve_min_valuation(&q, &[row(&[2])], &row(&[1]), val).unwrap();
        assert!(!phi.is_p_integral(&x[0]));
        assert!(solve_min_valuation(&q, &[row(&[1, 1]), row(&[2, 2])], &row(&[1, 1]), val).is_none());
    }
}
