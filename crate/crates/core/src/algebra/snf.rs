//! Smith normal form of integer matrices with unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::algebra::matrix::Matrix;

/// `u * a * v = diag(d)` with `u`, `v` unimodular and `d[k] | d[k+1]`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: Matrix<BigInt>,
    pub v: Matrix<BigInt>,
    /// Nonzero invariant factors, all positive; `d.len()` is the rank.
    pub d: Vec<BigInt>,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.d.len()
    }
}

pub fn smith(a: &Matrix<BigInt>) -> Smith {
    let (m, n) = (a.nrows(), a.ncols());
    let mut s = a.clone();
    let mut u = Matrix::identity(m);
    let mut v = Matrix::identity(n);
    let mut d = Vec::new();
    for t in 0..m.min(n) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        let Some((pi, pj)) = min_entry(&s, t) else {
            break;
        };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        swap_cols(&mut s, t, pj);
        swap_cols(&mut v, t, pj);
        loop {
            let mut changed = false;
            for i in t + 1..m {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = s[(i, t)].div_floor(&s[(t, t)]);
                add_row(&mut s, i, t, &-&q);
                add_row(&mut u, i, t, &-&q);
                if !s[(i, t)].is_zero() {
                    s.swap_rows(t, i);
                    u.swap_rows(t, i);
                    changed = true;
                }
            }
            for j in t + 1..n {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = s[(t, j)].div_floor(&s[(t, t)]);
                add_col(&mut s, j, t, &-&q);
                add_col(&mut v, j, t, &-&q);
                if !s[(t, j)].is_zero() {
                    swap_cols(&mut s, t, j);
                    swap_cols(&mut v, t, j);
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            // Enforce divisibility of the remaining block by the pivot.
            let bad = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !s[(i, j)].is_multiple_of(&s[(t, t)]));
            match bad {
                Some((i, _)) => {
                    add_row(&mut s, t, i, &BigInt::from(1));
                    add_row(&mut u, t, i, &BigInt::from(1));
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            negate_row(&mut s, t);
            negate_row(&mut u, t);
        }
        d.push(s[(t, t)].clone());
    }
    Smith { u, v, d }
}

fn min_entry(s: &Matrix<BigInt>, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..s.nrows() {
        for j in t..s.ncols() {
            if s[(i, j)].is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| s[(i, j)].abs() < s[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// `row[dst] += c * row[src]`.
fn add_row(m: &mut Matrix<BigInt>, dst: usize, src: usize, c: &BigInt) {
    for j in 0..m.ncols() {
        let add = c * &m[(src, j)];
        m[(dst, j)] += add;
    }
}

/// `col[dst] += c * col[src]`.
fn add_col(m: &mut Matrix<BigInt>, dst: usize, src: usize, c: &BigInt) {
    for i in 0..m.nrows() {
        let add = c * &m[(i, src)];
        m[(i, dst)] += add;
    }
}

fn swap_cols(m: &mut Matrix<BigInt>, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..m.nrows() {
        let tmp = m[(i, a)].clone();
        m[(i, a)] = m[(i, b)].clone();
        m[(i, b)] = tmp;
    }
}

fn negate_row(m: &mut Matrix<BigInt>, r: usize) {
    for j in 0..m.ncols() {
        m[(r, j)] = -&m[(r, j)];
    }
}

/// Rank of an integer matrix (via its Smith form).
pub fn int_rank(a: &Matrix<BigInt>) -> usize {
    smith(a).rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zm(rows: &[&[i64]]) -> Matrix<BigInt> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&a| BigInt::from(a)).collect())
                .collect(),
        )
    }

    #[test]
    fn transforms_reproduce_diagonal() {
        let a = zm(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = smith(&a);
        assert_eq!(s.d, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        let prod = s.u.mul(&a).mul(&s.v);
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { s.d[i].clone() } else { BigInt::zero() };
                assert_eq!(prod[(i, j)], want);
            }
        }
    }

    #[test]
    fn rectangular_rank_deficient() {
        let a = zm(&[&[1, -1, 0, 0], &[0, 1, -1, 0], &[1, 0, -1, 0]]);
        let s = smith(&a);
        assert_eq!(s.rank(), 2);
        let prod = s.u.mul(&a).mul(&s.v);
        assert!((0..3).all(|j| prod[(2, j)].is_zero()));
    }
}
