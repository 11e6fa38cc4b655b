//! Elements `(p(x) + q(x)·y)/d(x)` of the function field of a model.

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::rat::fmt_poly;
use crate::{Rat, RatPoly};

/// A function-field element `(p + q·y)/d`; `q = 0` on rational models.
///
/// Normalized: `d` is monic and `gcd(p, q, d) = 1`. Arithmetic that involves
/// `y²` takes the curve polynomial `f` (the zero polynomial on rational
/// models).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FunctionElement {
    p: RatPoly,
    q: RatPoly,
    d: RatPoly,
}

impl FunctionElement {
    pub fn new(p: RatPoly, q: RatPoly, d: RatPoly) -> Self {
        assert!(!d.is_zero(), "function element with zero denominator");
        FunctionElement { p, q, d }.normalized()
    }

    /// Unnormalized constructor; keeps the given denominator (used for bases
    /// sharing a common denominator).
    pub fn raw(p: RatPoly, q: RatPoly, d: RatPoly) -> Self {
        assert!(!d.is_zero(), "function element with zero denominator");
        FunctionElement { p, q, d }
    }

    pub fn from_poly(p: RatPoly) -> Self {
        Self::new(p, RatPoly::zero(), RatPoly::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_poly(RatPoly::constant(c))
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn x() -> Self {
        Self::from_poly(RatPoly::x())
    }

    pub fn y() -> Self {
        Self::new(RatPoly::zero(), RatPoly::one(), RatPoly::one())
    }

    pub fn p(&self) -> &RatPoly {
        &self.p
    }

    pub fn q(&self) -> &RatPoly {
        &self.q
    }

    pub fn d(&self) -> &RatPoly {
        &self.d
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    fn normalized(self) -> Self {
        if self.is_zero() {
            return FunctionElement {
                p: RatPoly::zero(),
                q: RatPoly::zero(),
                d: RatPoly::one(),
            };
        }
        let g = self.p.gcd_q(&self.q).gcd_q(&self.d);
        let (p, q, d) = if g.deg() > 0 {
            (
                self.p.exact_div(&g),
                self.q.exact_div(&g),
                self.d.exact_div(&g),
            )
        } else {
            (self.p, self.q, self.d)
        };
        let inv = Rat::one() / d.lc();
        FunctionElement {
            p: p.scale(&inv),
            q: q.scale(&inv),
            d: d.scale(&inv),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::new(self.p.scale(c), self.q.scale(c), self.d.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            &(&self.p * &other.d) + &(&other.p * &self.d),
            &(&self.q * &other.d) + &(&other.q * &self.d),
            &self.d * &other.d,
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn mul(&self, other: &Self, f: &RatPoly) -> Self {
        Self::new(
            &(&self.p * &other.p) + &(&(&self.q * &other.q) * f),
            &(&self.p * &other.q) + &(&self.q * &other.p),
            &self.d * &other.d,
        )
    }

    /// Hyperelliptic conjugate `y ↦ −y`.
    pub fn conjugate(&self) -> Self {
        Self::raw(self.p.clone(), -&self.q, self.d.clone())
    }

    /// Norm to `Q(x)` as `(numerator, denominator) = (p² − q²f, d²)`.
    pub fn norm(&self, f: &RatPoly) -> (RatPoly, RatPoly) {
        (
            &(&self.p * &self.p) - &(&(&self.q * &self.q) * f),
            &self.d * &self.d,
        )
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self, f: &RatPoly) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let (n, _) = self.norm(f);
        Some(Self::new(&self.d * &self.p, -&(&self.d * &self.q), n))
    }

    pub fn div(&self, other: &Self, f: &RatPoly) -> Option<Self> {
        Some(self.mul(&other.inverse(f)?, f))
    }

    /// `d/dx`, using `y' = f'/(2y)` on hyperelliptic models.
    pub fn derivative(&self, f: &RatPoly) -> Self {
        let (p, q, d) = (&self.p, &self.q, &self.d);
        let dd = d.derivative();
        if q.is_zero() || f.is_zero() {
            return Self::new(
                &(&p.derivative() * d) - &(p * &dd),
                RatPoly::zero(),
                d * d,
            );
        }
        let two_f = f.scale(&Rat::from_integer(2.into()));
        let p_new = &two_f * &(&(&p.derivative() * d) - &(p * &dd));
        let q_new = &(&(&(&two_f * &q.derivative()) + &(q * &f.derivative())) * d)
            - &(&(&two_f * q) * &dd);
        Self::new(p_new, q_new, &two_f * &(d * d))
    }

    /// Evaluates at a point `(x, y)` where `d(x) ≠ 0`.
    pub fn eval(&self, x: &Rat, y: &Rat) -> Option<Rat> {
        let den = self.d.eval(x);
        if den.is_zero() {
            return None;
        }
        Some((self.p.eval(x) + self.q.eval(x) * y) / den)
    }

    pub fn to_json(&self) -> Value {
        json!({"p": fmt_poly(&self.p), "q": fmt_poly(&self.q), "d": fmt_poly(&self.d)})
    }
}

impl std::fmt::Display for FunctionElement {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(fm, "(({}) + ({})*y) / ({})", self.p, self.q, self.d)
    }
}
