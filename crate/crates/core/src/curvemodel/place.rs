//! Closed points of a component model and divisors supported on them.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::algebra::Poly;
use crate::curvemodel::Point;
use crate::rat::fmt_rat;

/// How a closed point over an irreducible `π(x)` sits in its fiber.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    /// Rational model: the unique point with `π(x) = 0`.
    Unique,
    /// Hyperelliptic model, `π | f`: the unique (ramified) point over `π`.
    Ramified,
    /// Hyperelliptic model, `π ∤ f`: the whole fiber over `π` kept unsplit.
    /// Its multiplicity is the order of the norm at `π`, so multiplicity
    /// times `deg π` is the exact degree contribution of the fiber.
    Fiber,
}

impl Branch {
    pub fn tag(&self) -> &'static str {
        match self {
            Branch::Unique => "unique",
            Branch::Ramified => "ramified",
            Branch::Fiber => "fiber",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    /// The unique point at infinity.
    Infinity,
    /// A rational point.
    Point(Point),
    /// A closed point described by a primitive irreducible `π ∈ Z[x]`.
    Closed {
        minpoly: Poly<BigInt>,
        branch: Branch,
    },
}

impl Place {
    pub fn point(p: Point) -> Self {
        Place::Point(p)
    }

    /// Residue degree (for unsplit fibers: `deg π`, see [`Branch::Fiber`]).
    pub fn degree(&self) -> i64 {
        match self {
            Place::Infinity | Place::Point(_) => 1,
            Place::Closed { minpoly, .. } => minpoly.deg(),
        }
    }

    pub fn as_point(&self) -> Option<&Point> {
        match self {
            Place::Point(p) => Some(p),
            _ => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Place::Infinity => json!("infinity"),
            Place::Point(p) => json!({"x": fmt_rat(&p.x), "y": fmt_rat(&p.y)}),
            Place::Closed { minpoly, branch } => json!({
                "minpoly": minpoly.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "branch": branch.tag(),
            }),
        }
    }
}

/// A finite formal sum of places with integer multiplicities (zero
/// multiplicities are never stored).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PlaceDivisor {
    terms: BTreeMap<Place, i64>,
}

impl PlaceDivisor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Place, i64)>) -> Self {
        let mut d = Self::zero();
        for (p, m) in terms {
            d.add_term(p, m);
        }
        d
    }

    pub fn add_term(&mut self, place: Place, mult: i64) {
        let e = self.terms.entry(place).or_insert(0);
        *e += mult;
        if *e == 0 {
            self.terms.retain(|_, m| *m != 0);
        }
    }

    pub fn get(&self, place: &Place) -> i64 {
        self.terms.get(place).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Place, i64)> {
        self.terms.iter().map(|(p, &m)| (p, m))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.terms.iter().map(|(p, m)| m * p.degree()).sum()
    }

    pub fn is_effective(&self) -> bool {
        self.terms.values().all(|&m| m >= 0)
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::from_terms(self.terms.iter().map(|(p, &m)| (p.clone(), k * m)))
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut d = self.clone();
        for (p, &m) in &other.terms {
            d.add_term(p.clone(), m);
        }
        d
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Multiplicity at infinity.
    pub fn at_infinity(&self) -> i64 {
        self.get(&Place::Infinity)
    }

    /// The part supported on the given places.
    pub fn restrict(&self, keep: impl Fn(&Place) -> bool) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(p, _)| keep(p))
                .map(|(p, &m)| (p.clone(), m)),
        )
    }

    /// JSON: `{"places": [{place, mult, degree}], "total_degree": n}`.
    pub fn to_json(&self) -> Value {
        json!({
            "places": self.terms.iter().map(|(p, m)| json!({
                "place": p.to_json(),
                "mult": m,
                "degree": p.degree(),
            })).collect::<Vec<_>>(),
            "total_degree": self.degree(),
        })
    }
}

impl std::fmt::Display for PlaceDivisor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(p, m)| {
                let name = match p {
                    Place::Infinity => "inf".to_string(),
                    Place::Point(q) => format!("({}, {})", fmt_rat(&q.x), fmt_rat(&q.y)),
                    Place::Closed { minpoly, branch } => {
                        format!("[{} : {}]", minpoly, branch.tag())
                    }
                };
                format!("{m}*{name}")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
