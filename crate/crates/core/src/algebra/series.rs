//! Truncated Laurent series with explicit absolute precision.
//!
//! A [`Series`] stores `sum_k coeffs[k] * t^(start + k) + O(t^prec)`. Every
//! operation propagates the precision it can guarantee, so a coefficient is
//! never read beyond what was actually computed.

use std::ops::{Add, Mul, Neg, Sub};

use crate::algebra::poly::Poly;
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct Series<T> {
    start: i64,
    coeffs: Vec<T>,
    prec: i64,
}

impl<T: Field> Series<T> {
    /// Series with the given coefficients starting at `t^start`, known up to
    /// (excluding) `t^prec`. Coefficients at or beyond `prec` are dropped.
    pub fn new(start: i64, mut coeffs: Vec<T>, prec: i64) -> Self {
        let keep = (prec - start).max(0) as usize;
        coeffs.truncate(keep);
        Series {
            start,
            coeffs,
            prec,
        }
    }

    /// The exact zero series known to precision `prec`.
    pub fn zero(prec: i64) -> Self {
        Series {
            start: prec,
            coeffs: Vec::new(),
            prec,
        }
    }

    pub fn constant(c: T, prec: i64) -> Self {
        Self::new(0, vec![c], prec)
    }

    /// A polynomial in `t` viewed as a series.
    pub fn from_poly(p: &Poly<T>, prec: i64) -> Self {
        Self::new(0, p.coeffs().to_vec(), prec)
    }

    /// `t^k`.
    pub fn monomial(k: i64, prec: i64) -> Self {
        Self::new(k, vec![T::one()], prec)
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    /// Coefficient of `t^k`; panics if `k` lies beyond the known precision.
    pub fn coeff(&self, k: i64) -> T {
        assert!(k < self.prec, "coefficient t^{k} beyond precision {}", self.prec);
        if k < self.start {
            return T::zero();
        }
        self.coeffs
            .get((k - self.start) as usize)
            .cloned()
            .unwrap_or_else(T::zero)
    }

    /// Exponent of the first nonzero known coefficient, or `None` if the
    /// series vanishes to its precision.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|k| self.start + k as i64)
    }

    /// Drops leading zero coefficients so `start` is the valuation.
    fn normalized(mut self) -> Self {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(k) => {
                self.coeffs.drain(..k);
                self.start += k as i64;
            }
            None => {
                self.coeffs.clear();
                self.start = self.prec;
            }
        }
        self
    }

    pub fn truncate(&self, prec: i64) -> Self {
        Self::new(self.start, self.coeffs.clone(), prec.min(self.prec))
    }

    pub fn scale(&self, c: &T) -> Self {
        Series {
            start: self.start,
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
            prec: self.prec,
        }
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Series {
            start: self.start + k,
            coeffs: self.coeffs.clone(),
            prec: self.prec + k,
        }
    }

    /// Multiplicative inverse. Requires a known nonzero leading coefficient.
    pub fn inverse(&self) -> Option<Self> {
        assert!(self.prec < EXACT / 2, "truncate exact series before inverting");
        let s = self.clone().normalized();
        let v = s.valuation()?;
        let rel = (s.prec - v) as usize;
        let inv0 = T::one() / s.coeffs[0].clone();
        let mut out: Vec<T> = Vec::with_capacity(rel);
        out.push(inv0.clone());
        for n in 1..rel {
            let mut acc = T::zero();
            for k in 1..=n.min(s.coeffs.len() - 1) {
                acc = acc + s.coeffs[k].clone() * out[n - k].clone();
            }
            out.push(-(acc * inv0.clone()));
        }
        Some(Series::new(-v, out, -v + rel as i64))
    }

    /// Square root of a series whose leading term `c t^(2m)` has `c = root^2`.
    /// Returns the branch with leading coefficient `root`.
    pub fn sqrt_with_root(&self, root: &T) -> Option<Self> {
        let s = self.clone().normalized();
        let v = s.valuation()?;
        if v % 2 != 0 || root.clone() * root.clone() != s.coeffs[0] {
            return None;
        }
        let rel = s.prec - v;
        // Normalize to 1 + u, u = O(t), then Newton: r <- (r + a / r) / 2.
        let unit = Series::new(0, s.coeffs.clone(), rel);
        let two = T::one() + T::one();
        let mut r = Series::constant(root.clone(), 1);
        let mut p = 1;
        while p < rel {
            p = (2 * p).min(rel);
            let a = unit.truncate(p);
            let rp = Series::new(0, r.coeffs.clone(), p);
            let q = a.mul(&rp.inverse()?);
            r = (&rp + &q).scale(&(T::one() / two.clone()));
            r = r.truncate(p);
        }
        Some(r.shift(v / 2))
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let e = self.start + k as i64;
                c.clone() * T::from_i64(e).expect("exponent fits the scalar type")
            })
            .collect();
        Series::new(self.start - 1, coeffs, self.prec - 1)
    }

    /// Evaluates a polynomial at this series (Horner).
    pub fn compose_poly(&self, p: &Poly<T>) -> Self {
        let mut acc = Series::zero(EXACT);
        for c in p.coeffs().iter().rev() {
            acc = &(&acc * self) + &Series::constant(c.clone(), EXACT);
        }
        acc
    }

    /// True if every known coefficient vanishes.
    pub fn is_exact_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

/// Precision used for exact (polynomial) operands.
pub const EXACT: i64 = i64::MAX / 4;

impl<T: Field> Add for &Series<T> {
    type Output = Series<T>;
    fn add(self, rhs: &Series<T>) -> Series<T> {
        let prec = self.prec.min(rhs.prec);
        let start = self.start.min(rhs.start);
        if start >= prec {
            return Series::zero(prec);
        }
        let end_of = |s: &Series<T>| {
            if s.coeffs.is_empty() {
                i64::MIN
            } else {
                s.start + s.coeffs.len() as i64
            }
        };
        let end = end_of(self).max(end_of(rhs)).min(prec);
        let n = (end - start).max(0) as usize;
        let coeffs = (0..n)
            .map(|k| {
                let e = start + k as i64;
                self.coeff_or_zero(e) + rhs.coeff_or_zero(e)
            })
            .collect();
        Series::new(start, coeffs, prec).trimmed()
    }
}

impl<T: Field> Sub for &Series<T> {
    type Output = Series<T>;
    fn sub(self, rhs: &Series<T>) -> Series<T> {
        self + &(-rhs)
    }
}

impl<T: Field> Neg for &Series<T> {
    type Output = Series<T>;
    fn neg(self) -> Series<T> {
        self.scale(&(-T::one()))
    }
}

impl<T: Field> Mul for &Series<T> {
    type Output = Series<T>;
    fn mul(self, rhs: &Series<T>) -> Series<T> {
        let a = self.clone().normalized();
        let b = rhs.clone().normalized();
        let start = a.start + b.start;
        // Precision is limited by the other factor's valuation.
        let prec = (a.start.saturating_add(b.prec)).min(b.start.saturating_add(a.prec));
        if a.coeffs.is_empty() || b.coeffs.is_empty() || start >= prec {
            return Series::zero(prec);
        }
        let n = (prec - start) as usize;
        let mut out = vec![T::zero(); n.min(a.coeffs.len() + b.coeffs.len() - 1)];
        for (i, x) in a.coeffs.iter().enumerate() {
            if i >= out.len() {
                break;
            }
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if i + j >= out.len() {
                    break;
                }
                out[i + j] = out[i + j].clone() + x.clone() * y.clone();
            }
        }
        Series::new(start, out, prec)
    }
}

impl<T: Field> Series<T> {
    fn coeff_or_zero(&self, e: i64) -> T {
        if e < self.start || e >= self.prec {
            return T::zero();
        }
        self.coeffs
            .get((e - self.start) as usize)
            .cloned()
            .unwrap_or_else(T::zero)
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        self
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn inverse_of_one_minus_t() {
        let s = Series::new(0, vec![r(1, 1), r(-1, 1)], 8);
        let inv = s.inverse().unwrap();
        for k in 0..8 {
            assert_eq!(inv.coeff(k), BigRational::one());
        }
        assert_eq!(inv.prec(), 8);
    }

    #[test]
    fn laurent_inverse_shifts_valuation() {
        let s = Series::new(2, vec![r(2, 1), r(1, 1)], 6);
        let inv = s.inverse().unwrap();
        assert_eq!(inv.valuation(), Some(-2));
        let prod = &s * &inv;
        assert_eq!(prod.coeff(0), BigRational::one());
        assert_eq!(prod.coeff(1), BigRational::zero());
    }

    #[test]
    fn sqrt_of_one_plus_t5() {
        // (1 + t^5)^(1/2) = 1 + t^5/2 - t^10/8 + O(t^15)
        let mut c = vec![BigRational::zero(); 6];
        c[0] = r(1, 1);
        c[5] = r(1, 1);
        let s = Series::new(0, c, 11);
        let root = s.sqrt_with_root(&r(1, 1)).unwrap();
        assert_eq!(root.prec(), 11);
        assert_eq!(root.coeff(0), r(1, 1));
        assert_eq!(root.coeff(5), r(1, 2));
        assert_eq!(root.coeff(10), r(-1, 8));
        for k in [1, 2, 3, 4, 6, 7, 8, 9] {
            assert!(root.coeff(k).is_zero());
        }
    }

    #[test]
    fn product_precision_is_tracked() {
        let a = Series::new(-1, vec![r(1, 1), r(3, 1)], 4);
        let b = Series::new(2, vec![r(5, 1)], 3);
        let p = &a * &b;
        // a known to t^4 and b has valuation 2 -> t^6; b known to t^3, a val -1 -> t^2.
        assert_eq!(p.prec(), 2);
        assert_eq!(p.coeff(1), r(5, 1));
    }
}
