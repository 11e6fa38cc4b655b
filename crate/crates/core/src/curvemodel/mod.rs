//! Explicit smooth component models over `Q`: rational curves and odd-degree
//! hyperelliptic curves `y² = f(x)` with `δ` marked points, their exact local
//! expansions, Riemann–Roch spaces and the genericity conditions (1.i),
//! (3.i) and (5.i).
//!
//! Sections of `ω(E)` are represented through the reference differential
//! `ω₀ = dx/y` (hyperelliptic) or `ω₀ = dx` (rational): a section `s`
//! corresponds to the function `h = s/ω₀`, and `div ω₀ = K₀ = (2γ−2)∞`.

mod conditions;
mod function;
mod local;
mod place;
mod random;
mod rr;

pub use conditions::{
    check_condition_1, check_condition_3, check_condition_5, compositions, subsets,
    ConditionReport, Witness,
};
pub use function::FunctionElement;
pub use local::{expand_local, expand_local_any, local_coords, LocalCoords};
pub use place::{Branch, Place, PlaceDivisor};
pub use random::{random_model, random_model_with_points, RandomModelSpec};
pub use rr::{h0, rr_space, SectionSpace};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rat::{fmt_poly, fmt_rat, parse_poly, parse_rat};
use crate::{Rat, RatPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Rational,
    Hyperelliptic,
}

/// A rational point of a model. On rational models `y` is always 0 and
/// carries no meaning.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Rat,
    pub y: Rat,
}

impl Point {
    pub fn new(x: Rat, y: Rat) -> Self {
        Point { x, y }
    }

    /// Hyperelliptic conjugate `σP = (x, −y)`.
    pub fn conjugate(&self) -> Self {
        Point::new(self.x.clone(), -self.y.clone())
    }
}

/// A smooth projective component: `P¹` or `y² = f(x)` with `deg f = 2γ + 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComponentModel {
    kind: Kind,
    f: RatPoly,
    genus: u64,
    marked: Vec<Point>,
}

impl ComponentModel {
    /// The projective line with the given marked `x`-coordinates.
    pub fn rational(marked: Vec<Rat>) -> Result<Self> {
        let m = ComponentModel {
            kind: Kind::Rational,
            f: RatPoly::zero(),
            genus: 0,
            marked: marked.into_iter().map(|a| Point::new(a, Rat::zero())).collect(),
        };
        m.validate()?;
        Ok(m)
    }

    /// `y² = f(x)` with `f` squarefree of odd degree `2γ + 1 ≥ 3`.
    pub fn hyperelliptic(f: RatPoly, marked: Vec<Point>) -> Result<Self> {
        let deg = f.deg();
        if deg < 3 || deg % 2 == 0 {
            return Err(Error::precondition(format!(
                "hyperelliptic model needs odd deg f >= 3, got {deg}"
            )));
        }
        let m = ComponentModel {
            kind: Kind::Hyperelliptic,
            genus: (deg as u64 - 1) / 2,
            f,
            marked,
        };
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<()> {
        if self.is_hyperelliptic() && self.f.gcd_q(&self.f.derivative()).deg() > 0 {
            return Err(Error::precondition("f is not squarefree"));
        }
        for (k, p) in self.marked.iter().enumerate() {
            if self.marked[..k].contains(p) {
                return Err(Error::precondition(format!(
                    "marked point {k} repeats an earlier marked point"
                )));
            }
            if self.is_hyperelliptic() {
                if !self.on_curve(p) {
                    return Err(Error::precondition(format!(
                        "marked point {k} ({}, {}) is not on the curve",
                        fmt_rat(&p.x),
                        fmt_rat(&p.y)
                    )));
                }
                if p.y.is_zero() {
                    return Err(Error::precondition(format!(
                        "marked point {k} is a Weierstrass point (f(x) = 0)"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn is_hyperelliptic(&self) -> bool {
        self.kind == Kind::Hyperelliptic
    }

    /// `f` (zero on rational models).
    pub fn f(&self) -> &RatPoly {
        &self.f
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    pub fn marked(&self) -> &[Point] {
        &self.marked
    }

    pub fn delta(&self) -> usize {
        self.marked.len()
    }

    /// Same curve, different marked points.
    pub fn with_marked(&self, marked: Vec<Point>) -> Result<Self> {
        let m = ComponentModel {
            marked,
            ..self.clone()
        };
        m.validate()?;
        Ok(m)
    }

    pub fn on_curve(&self, p: &Point) -> bool {
        match self.kind {
            Kind::Rational => p.y.is_zero(),
            Kind::Hyperelliptic => &p.y * &p.y == self.f.eval(&p.x),
        }
    }

    /// Finite Weierstrass point of a hyperelliptic model (`f(x) = 0`).
    pub fn is_weierstrass(&self, p: &Point) -> bool {
        self.is_hyperelliptic() && p.y.is_zero() && self.f.eval(&p.x).is_zero()
    }

    /// The divisor `Δ = Σ marked points` scaled by `n`.
    pub fn delta_divisor(&self, n: i64) -> PlaceDivisor {
        PlaceDivisor::from_terms(
            self.marked
                .iter()
                .map(|p| (Place::point(p.clone()), n)),
        )
    }

    /// `Σ_r coeffs[r] · P_r` over the marked points.
    pub fn marked_divisor(&self, coeffs: &[i64]) -> PlaceDivisor {
        assert_eq!(coeffs.len(), self.delta(), "one coefficient per marked point");
        PlaceDivisor::from_terms(
            self.marked
                .iter()
                .zip(coeffs)
                .map(|(p, &c)| (Place::point(p.clone()), c)),
        )
    }

    /// `K₀ = div(ω₀) = (2γ − 2)∞`.
    pub fn canonical_divisor(&self) -> PlaceDivisor {
        PlaceDivisor::from_terms([(Place::Infinity, 2 * self.genus as i64 - 2)])
    }

    pub fn to_json(&self) -> ComponentJson {
        ComponentJson {
            kind: self.kind,
            f: self.is_hyperelliptic().then(|| fmt_poly(&self.f)),
            marked: self
                .marked
                .iter()
                .map(|p| match self.kind {
                    Kind::Rational => vec![fmt_rat(&p.x)],
                    Kind::Hyperelliptic => vec![fmt_rat(&p.x), fmt_rat(&p.y)],
                })
                .collect(),
        }
    }

    pub fn from_json(j: &ComponentJson) -> Result<Self> {
        match j.kind {
            Kind::Rational => {
                if j.f.is_some() {
                    return Err(Error::schema("rational component must not carry \"f\""));
                }
                let xs = j
                    .marked
                    .iter()
                    .map(|pt| match pt.as_slice() {
                        [a] => parse_rat(a),
                        [a, b] if parse_rat(b)?.is_zero() => parse_rat(a),
                        _ => Err(Error::schema(
                            "rational marked points are [\"a\"] or [\"a\", \"0\"]",
                        )),
                    })
                    .collect::<Result<Vec<_>>>()?;
                Self::rational(xs)
            }
            Kind::Hyperelliptic => {
                let f = j
                    .f
                    .as_ref()
                    .ok_or_else(|| Error::schema("hyperelliptic component needs \"f\""))?;
                let f = parse_poly(f)?;
                let pts = j
                    .marked
                    .iter()
                    .map(|pt| match pt.as_slice() {
                        [a, b] => Ok(Point::new(parse_rat(a)?, parse_rat(b)?)),
                        _ => Err(Error::schema("hyperelliptic marked points are [\"a\", \"b\"]")),
                    })
                    .collect::<Result<Vec<_>>>()?;
                Self::hyperelliptic(f, pts)
            }
        }
    }

    /// Human-readable equation.
    pub fn equation(&self) -> String {
        match self.kind {
            Kind::Rational => "P^1".to_string(),
            Kind::Hyperelliptic => format!("y^2 = {}", self.f),
        }
    }
}

/// JSON shape of a component:
/// `{"kind": "hyperelliptic", "f": ["1","0",…], "marked": [["a","b"], …]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentJson {
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<Vec<String>>,
    pub marked: Vec<Vec<String>>,
}
