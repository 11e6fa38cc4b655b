//! Exact local expansions at places of a component model.
//!
//! Uniformizers: `t = x − a` at finite non-Weierstrass points; `y` at finite
//! Weierstrass points (internal use, see [`expand_local_any`]); at infinity
//! `u` with `x = u⁻¹` (rational) or `x = c·u⁻²`, `y = c^{γ+1}u^{−(2γ+1)}·(1 + O(u²))`
//! where `c = lc(f)` (hyperelliptic), which keeps every coefficient rational.

use num_traits::{One, Zero};

use crate::algebra::series::EXACT;
use crate::algebra::Series;
use crate::curvemodel::{ComponentModel, FunctionElement, Kind, Place};
use crate::error::{Error, Result};
use crate::{Rat, RatPoly};

/// Expansions of `x` and `y` in the uniformizer at a place.
#[derive(Clone, Debug)]
pub struct LocalCoords {
    x: XForm,
    pub y: Series<Rat>,
}

/// How `x` is written in the uniformizer; composition with polynomials is
/// exact for the first three shapes.
#[derive(Clone, Debug)]
enum XForm {
    /// `x = a + t`.
    Shift(Rat),
    /// `x = u⁻¹`.
    Inv,
    /// `x = c·u⁻²`.
    InvSquare(Rat),
    /// A genuine series (Weierstrass points).
    Series(Series<Rat>),
}

impl LocalCoords {
    /// The expansion of `x`, truncated at absolute precision `prec`.
    pub fn x(&self, prec: i64) -> Series<Rat> {
        self.compose(&RatPoly::x(), prec)
    }

    /// `p(x)` expanded to absolute precision `prec` (or the precision of
    /// `x` itself, if smaller).
    pub fn compose(&self, p: &RatPoly, prec: i64) -> Series<Rat> {
        match &self.x {
            XForm::Shift(a) => Series::from_poly(&p.taylor_shift(a), prec),
            XForm::Inv => {
                let n = p.deg().max(0);
                let coeffs = (0..=n).rev().map(|k| p.coeff(k as usize)).collect();
                Series::new(-n, coeffs, prec)
            }
            XForm::InvSquare(c) => {
                let n = p.deg().max(0);
                let mut coeffs = vec![Rat::zero(); 2 * n as usize + 1];
                let mut ck = Rat::one();
                for k in 0..=n as usize {
                    coeffs[2 * (n as usize - k)] = p.coeff(k) * ck.clone();
                    ck *= c.clone();
                }
                Series::new(-2 * n, coeffs, prec)
            }
            XForm::Series(x) => x.compose_poly(p).truncate(prec),
        }
    }
}

/// Local coordinates at `place`, with `y` known to relative precision `rel`.
pub fn local_coords(model: &ComponentModel, place: &Place, rel: i64) -> Result<LocalCoords> {
    let f = model.f();
    match (place, model.kind()) {
        (Place::Closed { .. }, _) => Err(Error::precondition(
            "local expansions are only available at rational places",
        )),
        (Place::Infinity, Kind::Rational) => Ok(LocalCoords {
            x: XForm::Inv,
            y: Series::zero(EXACT),
        }),
        (Place::Infinity, Kind::Hyperelliptic) => {
            let c = f.lc();
            let gamma = model.genus() as i64;
            let top = 2 * gamma + 1;
            // f(x)/(c x^{2γ+1}) in u, with x = c u^{-2}: coefficient of u^{2j}
            // is f_{top-j} / c^{j+1}.
            let mut coeffs = vec![Rat::zero(); 2 * top as usize + 1];
            let mut cpow = c.clone();
            for j in 0..=top as usize {
                coeffs[2 * j] = f.coeff(top as usize - j) / cpow.clone();
                cpow *= c.clone();
            }
            let unit = Series::new(0, coeffs, rel);
            let root = unit
                .sqrt_with_root(&Rat::one())
                .ok_or_else(|| Error::invariant("square root at infinity failed"))?;
            let mut lead = Rat::one();
            for _ in 0..=gamma {
                lead *= c.clone();
            }
            Ok(LocalCoords {
                x: XForm::InvSquare(c),
                y: root.scale(&lead).shift(-top),
            })
        }
        (Place::Point(p), Kind::Rational) => {
            if !p.y.is_zero() {
                return Err(Error::precondition("rational-model points have y = 0"));
            }
            Ok(LocalCoords {
                x: XForm::Shift(p.x.clone()),
                y: Series::zero(EXACT),
            })
        }
        (Place::Point(p), Kind::Hyperelliptic) => {
            if !model.on_curve(p) {
                return Err(Error::precondition("point is not on the curve"));
            }
            if p.y.is_zero() {
                return Ok(weierstrass_coords(f, &p.x, rel));
            }
            let shifted = Series::from_poly(&f.taylor_shift(&p.x), rel);
            let y = shifted
                .sqrt_with_root(&p.y)
                .ok_or_else(|| Error::invariant("square root at a finite point failed"))?;
            Ok(LocalCoords {
                x: XForm::Shift(p.x.clone()),
                y,
            })
        }
    }
}

/// At `(a, 0)` with `f(a) = 0` the uniformizer is `w = y` and
/// `x = a + s(w)` where `s = w² / G(s)`, `f(a + s) = s·G(s)`.
fn weierstrass_coords(f: &RatPoly, a: &Rat, rel: i64) -> LocalCoords {
    let shifted = f.taylor_shift(a);
    let g = RatPoly::new(shifted.coeffs()[1..].to_vec());
    let w2 = Series::monomial(2, EXACT);
    let mut s = Series::zero(rel);
    // Each fixed-point step gains two orders in w.
    for _ in 0..rel / 2 + 2 {
        let gs = s.compose_poly(&g).truncate(rel);
        let inv = gs.inverse().expect("G(0) = f'(a) is nonzero");
        s = (&w2 * &inv).truncate(rel);
    }
    let x = &Series::constant(a.clone(), EXACT) + &s;
    LocalCoords {
        x: XForm::Series(x),
        y: Series::monomial(1, EXACT),
    }
}

/// Expansion of `elem` at `place` to absolute precision at least `order`,
/// refusing finite Weierstrass points (where `x − a` is not a uniformizer).
pub fn expand_local(
    model: &ComponentModel,
    elem: &FunctionElement,
    place: &Place,
    order: i64,
) -> Result<Series<Rat>> {
    if let Place::Point(p) = place {
        if model.is_weierstrass(p) {
            return Err(Error::precondition(
                "expand_local refuses Weierstrass points (f(a) = 0)",
            ));
        }
    }
    expand_local_any(model, elem, place, order)
}

/// Like [`expand_local`] but also handles finite Weierstrass points, in the
/// uniformizer `y`. Used by the ramification module's gap-sequence oracle.
pub fn expand_local_any(
    model: &ComponentModel,
    elem: &FunctionElement,
    place: &Place,
    order: i64,
) -> Result<Series<Rat>> {
    let mut slack = 8;
    loop {
        let rel = order.max(1) + slack;
        let coords = local_coords(model, place, rel)?;
        let abs = order + slack;
        let p = coords.compose(elem.p(), abs);
        let q = coords.compose(elem.q(), abs);
        let d = coords.compose(elem.d(), abs);
        let num = if elem.q().is_zero() {
            p
        } else {
            &p + &(&q * &coords.y)
        };
        if let Some(dinv) = d.inverse() {
            let res = &num * &dinv;
            if res.prec() >= order {
                return Ok(res.truncate(order));
            }
        }
        slack *= 2;
        if slack > 1 << 14 {
            return Err(Error::invariant("local expansion failed to reach precision"));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvemodel::Point;
    use crate::rat::{frac, rat};

    fn genus2() -> ComponentModel {
        let f = RatPoly::new(vec![rat(1), rat(0), rat(0), rat(0), rat(0), rat(1)]);
        ComponentModel::hyperelliptic(f, vec![Point::new(rat(0), rat(1))]).unwrap()
    }

    #[test]
    fn y_at_origin() {
        let m = genus2();
        let s = expand_local(&m, &FunctionElement::y(), &Place::Point(m.marked()[0].clone()), 11)
            .unwrap();
        assert_eq!(s.prec(), 11);
        assert_eq!(s.coeff(0), rat(1));
        assert_eq!(s.coeff(5), frac(1, 2));
        assert_eq!(s.coeff(10), frac(-1, 8));
        let x = expand_local(&m, &FunctionElement::x(), &Place::Point(m.marked()[0].clone()), 5)
            .unwrap();
        assert_eq!(x.valuation(), Some(1));
        assert_eq!(x.coeff(1), rat(1));
    }

    #[test]
    fn orders_at_infinity() {
        let m = genus2();
        let x = expand_local(&m, &FunctionElement::x(), &Place::Infinity, 3).unwrap();
        assert_eq!(x.valuation(), Some(-2));
        let y = expand_local(&m, &FunctionElement::y(), &Place::Infinity, 3).unwrap();
        assert_eq!(y.valuation(), Some(-5));
        // y² = f(x) holds in the expansion.
        let y2 = &y * &y;
        let fx = expand_local(&m, &FunctionElement::from_poly(m.f().clone()), &Place::Infinity, 0)
            .unwrap();
        for k in -10..y2.prec().min(0) {
            assert_eq!(y2.coeff(k), fx.coeff(k));
        }
    }

    #[test]
    fn weierstrass_point_uniformizer() {
        let f = RatPoly::new(vec![rat(-1), rat(0), rat(0), rat(0), rat(0), rat(1)]);
        let m = ComponentModel::hyperelliptic(f, vec![]).unwrap();
        let w = Place::Point(Point::new(rat(1), rat(0)));
        assert!(expand_local(&m, &FunctionElement::x(), &w, 4).is_err());
        let xm1 = FunctionElement::from_poly(RatPoly::linear_root(&rat(1)));
        let s = expand_local_any(&m, &xm1, &w, 6).unwrap();
        // x − 1 = y²/5 + O(y⁴)
        assert_eq!(s.valuation(), Some(2));
        assert_eq!(s.coeff(2), frac(1, 5));
        // f(x) − y² vanishes identically.
        let y = expand_local_any(&m, &FunctionElement::y(), &w, 8).unwrap();
        let fx = expand_local_any(&m, &FunctionElement::from_poly(m.f().clone()), &w, 8).unwrap();
        let diff = &fx - &(&y * &y);
        assert!(diff.is_exact_zero());
    }
}
