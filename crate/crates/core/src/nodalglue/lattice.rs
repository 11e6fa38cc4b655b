//! Multiplicative linear systems `Π_j t_j^{A_rj} = c_r` over an
//! algebraically closed field, decided exactly through the Smith normal form.
//!
//! With `U A V = diag(d)`, substitute `t = s^V`: the system becomes
//! `s_k^{d_k} = c'_k` for `k < rank` and `1 = c'_k` for `k ≥ rank`, where
//! `c'_k = Π_r c_r^{U_kr}`. It is solvable iff every `c'_k` with `k ≥ rank`
//! equals 1 (roots always exist in `k̄`).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::algebra::snf::smith;
use crate::algebra::Matrix;
use crate::error::{Error, Result};
use crate::rat::fmt_rat;
use crate::Rat;

/// Rows are multiplicative equations, columns unknowns; `c` the targets.
#[derive(Clone, Debug, PartialEq)]
pub struct ExponentLattice {
    pub a: Matrix<BigInt>,
    pub c: Vec<Rat>,
}

impl ExponentLattice {
    pub fn new(rows: Vec<Vec<i64>>, c: Vec<Rat>, unknowns: usize) -> Self {
        let a = if rows.is_empty() {
            Matrix::zeros(0, unknowns)
        } else {
            Matrix::from_rows(
                rows.into_iter()
                    .map(|r| {
                        assert_eq!(r.len(), unknowns, "row length must equal unknown count");
                        r.into_iter().map(BigInt::from).collect()
                    })
                    .collect(),
            )
        };
        assert_eq!(a.nrows(), c.len(), "one target per equation");
        ExponentLattice { a, c }
    }

    pub fn unknowns(&self) -> usize {
        self.a.ncols()
    }

    /// Rank of the exponent matrix.
    pub fn rank(&self) -> usize {
        smith(&self.a).rank()
    }
}

/// A real radical `sign · radicand^{1/index}` with `radicand > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalRadical {
    pub sign: i8,
    pub radicand: Rat,
    pub index: u32,
}

impl FormalRadical {
    pub fn rational(r: &Rat) -> Self {
        assert!(!r.is_zero(), "radicals are nonzero");
        FormalRadical {
            sign: if r.is_negative() { -1 } else { 1 },
            radicand: r.abs(),
            index: 1,
        }
        .simplified()
    }

    /// The exact value when `index = 1`.
    pub fn as_rational(&self) -> Option<Rat> {
        (self.index == 1).then(|| self.radicand.clone() * Rat::from_integer(self.sign.into()))
    }

    /// Lowers the index while the radicand is a perfect power.
    pub fn simplified(mut self) -> Self {
        let mut p = 2;
        while p <= self.index {
            if self.index % p == 0 {
                if let Some(r) = rat_nth_root(&self.radicand, p) {
                    self.radicand = r;
                    self.index /= p;
                    continue;
                }
            }
            p += 1;
        }
        self
    }

    pub fn to_string_exact(&self) -> String {
        let s = if self.sign < 0 { "-" } else { "" };
        if self.index == 1 {
            format!("{s}{}", fmt_rat(&self.radicand))
        } else {
            format!("{s}({})^(1/{})", fmt_rat(&self.radicand), self.index)
        }
    }
}

impl Serialize for FormalRadical {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string_exact())
    }
}

fn rat_nth_root(r: &Rat, n: u32) -> Option<Rat> {
    let a = r.numer().nth_root(n);
    let b = r.denom().nth_root(n);
    (a.pow(n) == *r.numer() && b.pow(n) == *r.denom()).then(|| Rat::new(a, b))
}

/// `r^e` for an integer exponent (r ≠ 0 when e < 0).
pub fn rat_pow(r: &Rat, e: &BigInt) -> Result<Rat> {
    let mag = e
        .abs()
        .to_u32()
        .ok_or_else(|| Error::invariant("exponent too large for exact powering"))?;
    let p = num_traits::pow(r.clone(), mag as usize);
    if e.is_negative() {
        if p.is_zero() {
            return Err(Error::precondition("zero raised to a negative power"));
        }
        Ok(Rat::one() / p)
    } else {
        Ok(p)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LatticeSolution {
    pub solvable: bool,
    /// One solution, when all required roots are real.
    pub witness: Option<Vec<FormalRadical>>,
    /// Rank of the exponent matrix.
    pub rank: usize,
    /// Invariant factors of the exponent matrix.
    pub invariant_factors: Vec<String>,
}

/// Decides solvability exactly; produces a formal real-radical witness when
/// one exists.
pub fn lattice_solve(lat: &ExponentLattice) -> Result<LatticeSolution> {
    if lat.c.iter().any(|c| c.is_zero()) {
        return Err(Error::precondition("lattice targets must be nonzero scalars"));
    }
    let snf = smith(&lat.a);
    let rank = snf.rank();
    let m = lat.a.nrows();
    let n = lat.a.ncols();
    // c'_k = Π_r c_r^{U_kr}
    let mut cprime = Vec::with_capacity(m);
    for k in 0..m {
        let mut acc = Rat::one();
        for r in 0..m {
            let e = &snf.u[(k, r)];
            if !e.is_zero() {
                acc *= rat_pow(&lat.c[r], e)?;
            }
        }
        cprime.push(acc);
    }
    let solvable = cprime[rank..].iter().all(|c| c.is_one());
    let invariant_factors = snf.d.iter().map(|d| d.to_string()).collect();
    if !solvable {
        return Ok(LatticeSolution {
            solvable,
            witness: None,
            rank,
            invariant_factors,
        });
    }
    // s_k = c'_k^{1/d_k} for k < rank, 1 otherwise; real roots need
    // c'_k > 0 or d_k odd.
    let real = (0..rank).all(|k| cprime[k].is_positive() || snf.d[k].is_odd());
    let witness = if real {
        let l = snf.d.iter().fold(BigInt::one(), |acc, d| acc.lcm(d));
        let index = l
            .to_u32()
            .ok_or_else(|| Error::invariant("radical index too large"))?;
        let mut w = Vec::with_capacity(n);
        for j in 0..n {
            let mut sign = 1i8;
            let mut rad = Rat::one();
            for k in 0..rank {
                let e = &snf.v[(j, k)];
                if e.is_zero() {
                    continue;
                }
                if cprime[k].is_negative() && e.is_odd() {
                    sign = -sign;
                }
                rad *= rat_pow(&cprime[k].abs(), &(e * (&l / &snf.d[k])))?;
            }
            w.push(
                FormalRadical {
                    sign,
                    radicand: rad,
                    index,
                }
                .simplified(),
            );
        }
        debug_assert!(verify_witness(lat, &w)?);
        Some(w)
    } else {
        None
    };
    Ok(LatticeSolution {
        solvable,
        witness,
        rank,
        invariant_factors,
    })
}

/// Exact check that `Π_j t_j^{A_rj} = c_r` for every row.
pub fn verify_witness(lat: &ExponentLattice, t: &[FormalRadical]) -> Result<bool> {
    if t.len() != lat.unknowns() {
        return Ok(false);
    }
    let big_n = t
        .iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(&BigInt::from(r.index)));
    for (r, c) in lat.c.iter().enumerate() {
        let mut sign = 1i8;
        let mut mag = Rat::one();
        for (j, tj) in t.iter().enumerate() {
            let e = &lat.a[(r, j)];
            if e.is_zero() {
                continue;
            }
            if tj.sign < 0 && e.is_odd() {
                sign = -sign;
            }
            mag *= rat_pow(&tj.radicand, &(e * (&big_n / BigInt::from(tj.index))))?;
        }
        let want_sign = if c.is_negative() { -1 } else { 1 };
        if sign != want_sign || mag != rat_pow(&c.abs(), &big_n)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{frac, rat};

    #[test]
    fn square_root_of_four() {
        let lat = ExponentLattice::new(vec![vec![2]], vec![rat(4)], 1);
        let s = lattice_solve(&lat).unwrap();
        assert!(s.solvable);
        assert_eq!(s.witness.unwrap()[0].as_rational(), Some(rat(2)));
    }

    #[test]
    fn degenerate_row_unsolvable() {
        let lat = ExponentLattice::new(vec![vec![0, 0]], vec![rat(3)], 2);
        assert!(!lattice_solve(&lat).unwrap().solvable);
        let ok = ExponentLattice::new(vec![vec![0, 0]], vec![rat(1)], 2);
        assert!(lattice_solve(&ok).unwrap().solvable);
    }

    #[test]
    fn dependent_rows_consistency() {
        // t1 t2 = 6, t1^2 t2^2 = 36 (consistent), then = 35 (not).
        let good = ExponentLattice::new(vec![vec![1, 1], vec![2, 2]], vec![rat(6), rat(36)], 2);
        let s = lattice_solve(&good).unwrap();
        assert!(s.solvable && s.rank == 1);
        assert!(verify_witness(&good, &s.witness.unwrap()).unwrap());
        let bad = ExponentLattice::new(vec![vec![1, 1], vec![2, 2]], vec![rat(6), rat(35)], 2);
        assert!(!lattice_solve(&bad).unwrap().solvable);
    }

    #[test]
    fn irrational_and_complex_roots() {
        let lat = ExponentLattice::new(vec![vec![3, 0], vec![0, 2]], vec![frac(2, 1), rat(-1)], 2);
        let s = lattice_solve(&lat).unwrap();
        assert!(s.solvable);
        assert!(s.witness.is_none(), "sqrt(-1) is not real");
        let lat = ExponentLattice::new(vec![vec![3, 1]], vec![frac(-2, 5)], 2);
        let s = lattice_solve(&lat).unwrap();
        assert!(verify_witness(&lat, &s.witness.unwrap()).unwrap());
    }
}
