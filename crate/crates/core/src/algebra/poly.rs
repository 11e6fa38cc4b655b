//! Dense univariate polynomials over an exact scalar ring.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::{ExactDiv, Field, Scalar};

/// Polynomial with coefficients stored in ascending degree order.
///
/// The coefficient vector never has trailing zeros, so structural equality is
/// polynomial equality and the derived ordering is a total order usable as a
/// map key.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::new(vec![T::zero(), T::one()])
    }

    pub fn monomial(c: T, k: usize) -> Self {
        let mut v = vec![T::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// `x - a`.
    pub fn linear_root(a: &T) -> Self {
        Self::new(vec![-a.clone(), T::one()])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the convention `deg 0 = -1`.
    pub fn deg(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn lc(&self) -> T {
        self.coeffs.last().cloned().unwrap_or_else(T::zero)
    }

    pub fn eval(&self, at: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * at.clone() + c.clone();
        }
        acc
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * T::from_usize(k).expect("degree fits the scalar type"))
                .collect(),
        )
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Self::constant(c.clone());
        }
        acc
    }

    /// Coefficients of `self(a + t)` as a polynomial in `t`.
    pub fn taylor_shift(&self, a: &T) -> Self {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let add = c[j + 1].clone() * a.clone();
                c[j] = c[j].clone() + add;
            }
        }
        Self::new(c)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<T: Field> Poly<T> {
    /// The polynomial of degree `< points.len()` through distinct nodes
    /// (Newton divided differences, `O(n²)`).
    pub fn interpolate(points: &[(T, T)]) -> Self {
        let n = points.len();
        let mut dd: Vec<T> = points.iter().map(|(_, v)| v.clone()).collect();
        for level in 1..n {
            for k in (level..n).rev() {
                let num = dd[k].clone() - dd[k - 1].clone();
                let den = points[k].0.clone() - points[k - level].0.clone();
                dd[k] = num / den;
            }
        }
        // Horner in the Newton basis.
        let mut out = Self::zero();
        for k in (0..n).rev() {
            out = &(&out * &Self::linear_root(&points[k].0)) + &Self::constant(dd[k].clone());
        }
        out
    }

    /// Euclidean division: `self = q * rhs + r` with `deg r < deg rhs`.
    pub fn divrem(&self, rhs: &Self) -> (Self, Self) {
        assert!(!rhs.is_zero(), "polynomial division by zero");
        let dr = rhs.coeffs.len() - 1;
        if self.coeffs.len() <= dr {
            return (Self::zero(), self.clone());
        }
        let inv_lc = T::one() / rhs.lc();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![T::zero(); rem.len() - dr];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dr].clone() * inv_lc.clone();
            if c.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - c.clone() * b.clone();
            }
            quot[k] = c;
        }
        rem.truncate(dr);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, rhs: &Self) -> Self {
        self.divrem(rhs).1
    }

    /// Quotient of a division known to be exact.
    pub fn exact_div(&self, rhs: &Self) -> Self {
        let (q, r) = self.divrem(rhs);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let inv = T::one() / self.lc();
        self.scale(&inv)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.rem(self).is_zero()
    }
}

impl<T: Scalar + ExactDiv> Poly<T> {
    /// Exact division over an integral domain (used for integer polynomials).
    pub fn div_exact_ring(&self, rhs: &Self) -> Option<Self> {
        let dr = rhs.degree()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.coeffs.len() <= dr {
            return None;
        }
        let lc = rhs.lc();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![T::zero(); rem.len() - dr];
        for k in (0..quot.len()).rev() {
            let top = rem[k + dr].clone();
            if top.is_zero() {
                continue;
            }
            let c = top.try_div(&lc)?;
            for (j, b) in rhs.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - c.clone() * b.clone();
            }
            quot[k] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(quot))
    }
}

/// Integer polynomial helpers.
impl Poly<BigInt> {
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if self.lc().is_negative() {
            -g
        } else {
            g
        }
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let c = self.content();
        Self::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    pub fn to_rational(&self) -> Poly<BigRational> {
        self.map(|c| BigRational::from_integer(c.clone()))
    }

    /// Max-norm of the coefficients.
    pub fn max_norm(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    /// Greatest common divisor over `Z[x]` by primitive remainder sequence,
    /// normalized primitive with positive leading coefficient.
    pub fn gcd_int(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive_part();
        }
        if other.is_zero() {
            return self.primitive_part();
        }
        let cont = self.content().abs().gcd(&other.content().abs());
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part().scale(&cont)
    }

    /// Pseudo-remainder `lc(rhs)^(deg self - deg rhs + 1) * self mod rhs`.
    pub fn pseudo_rem(&self, rhs: &Self) -> Self {
        let dr = rhs.coeffs.len() - 1;
        if self.coeffs.len() <= dr {
            return self.clone();
        }
        let lc = rhs.lc();
        let mut rem = self.coeffs.clone();
        for k in (0..=(rem.len() - 1 - dr)).rev() {
            let top = rem[k + dr].clone();
            for c in rem.iter_mut() {
                *c = &*c * &lc;
            }
            if !top.is_zero() {
                for (j, b) in rhs.coeffs.iter().enumerate() {
                    rem[k + j] = &rem[k + j] - &top * b;
                }
            }
        }
        rem.truncate(dr);
        Self::new(rem)
    }
}

impl Poly<BigRational> {
    /// Splits `self = p / den` with `p` integral and `den > 0` minimal.
    pub fn clear_denominators(&self) -> (Poly<BigInt>, BigInt) {
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let p = Poly::new(
            self.coeffs
                .iter()
                .map(|c| c.numer() * (&den / c.denom()))
                .collect(),
        );
        (p, den)
    }

    /// Monic gcd over `Q`, computed on primitive integer associates to avoid
    /// the coefficient growth of the plain Euclidean algorithm.
    pub fn gcd_q(&self, other: &Self) -> Self {
        if self.is_zero() && other.is_zero() {
            return Self::zero();
        }
        self.primitive_integer()
            .gcd_int(&other.primitive_integer())
            .to_rational()
            .monic()
    }

    /// Associated primitive integer polynomial (same roots, positive leading
    /// coefficient).
    pub fn primitive_integer(&self) -> Poly<BigInt> {
        self.clear_denominators().0.primitive_part()
    }
}

impl<T: Scalar> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(
            (0..n)
                .map(|k| self.coeff(k) + rhs.coeff(k))
                .collect(),
        )
    }
}

impl<T: Scalar> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(
            (0..n)
                .map(|k| self.coeff(k) - rhs.coeff(k))
                .collect(),
        )
    }
}

impl<T: Scalar> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<T: Scalar> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Scalar> $tr for Poly<T> {
            type Output = Poly<T>;
            fn $m(self, rhs: Poly<T>) -> Poly<T> {
                (&self).$m(&rhs)
            }
        }
        impl<T: Scalar> $tr<&Poly<T>> for Poly<T> {
            type Output = Poly<T>;
            fn $m(self, rhs: &Poly<T>) -> Poly<T> {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: Scalar> Neg for Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        -&self
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    fn q(v: &[i64]) -> Poly<Rational64> {
        Poly::new(v.iter().map(|&a| Rational64::from_integer(a)).collect())
    }

    fn z(v: &[i64]) -> Poly<BigInt> {
        Poly::new(v.iter().map(|&a| BigInt::from(a)).collect())
    }

    #[test]
    fn trailing_zeros_trimmed() {
        assert_eq!(q(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(q(&[0, 0]).is_zero());
        assert_eq!(q(&[]).deg(), -1);
    }

    #[test]
    fn divrem_reconstructs() {
        let a = q(&[1, 0, -3, 2, 7]);
        let b = q(&[2, 1, 3]);
        let (qq, r) = a.divrem(&b);
        assert_eq!(&(&qq * &b) + &r, a);
        assert!(r.deg() < b.deg());
    }

    #[test]
    fn gcd_of_products() {
        let common = q(&[-1, 1]) * q(&[2, 0, 1]);
        let a = &common * &q(&[5, 3]);
        let b = &common * &q(&[1, 1, 1]);
        assert_eq!(a.gcd(&b), common.monic());
        let ai = &z(&[-1, 1]) * &z(&[3, 0, 2]);
        let bi = &z(&[-1, 1]) * &z(&[3, 0, 2]) * z(&[4, 9]);
        assert_eq!(ai.gcd_int(&bi), ai);
    }

    #[test]
    fn taylor_shift_matches_composition() {
        let p = q(&[3, -1, 0, 2, 5]);
        let a = Rational64::new(2, 3);
        let shifted = p.taylor_shift(&a);
        let comp = p.compose(&Poly::new(vec![a, Rational64::from_integer(1)]));
        assert_eq!(shifted, comp);
    }

    #[test]
    fn exact_ring_division() {
        let a = z(&[2, 3]) * z(&[-5, 0, 7]);
        assert_eq!(a.div_exact_ring(&z(&[2, 3])), Some(z(&[-5, 0, 7])));
        assert_eq!(z(&[1, 1, 1]).div_exact_ring(&z(&[2, 1])), None);
    }
}
