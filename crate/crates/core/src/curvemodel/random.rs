//! Deterministic random component models with small-height rational data.
//!
//! A hyperelliptic model through prescribed points `(a_k, b_k)` is built by
//! interpolation: `f = L + Π(x − a_k)·r` where `L` interpolates `b_k²` and
//! `r` is random of degree `2γ + 1 − #{a_k}` (so at most `2γ + 2` distinct
//! `x`-coordinates can be prescribed).

use rand::Rng;

use crate::curvemodel::{ComponentModel, Point};
use crate::error::{Error, Result};
use crate::rat::rat;
use crate::{Rat, RatPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomModelSpec {
    pub genus: u64,
    pub delta: usize,
    /// Bound on the absolute value of the chosen integers.
    pub height: i64,
    /// The first `2·conjugate_pairs` marked points come in conjugate pairs
    /// `P, σP` (an engineered genericity failure).
    pub conjugate_pairs: usize,
}

impl RandomModelSpec {
    pub fn new(genus: u64, delta: usize) -> Self {
        RandomModelSpec {
            genus,
            delta,
            height: 20,
            conjugate_pairs: 0,
        }
    }
}

fn nonzero<R: Rng>(rng: &mut R, h: i64) -> i64 {
    let v = rng.gen_range(1..=h.max(1));
    if rng.gen_bool(0.5) {
        v
    } else {
        -v
    }
}

/// Random model per `spec`, retrying until the data is valid.
pub fn random_model<R: Rng>(rng: &mut R, spec: &RandomModelSpec) -> Result<ComponentModel> {
    if 2 * spec.conjugate_pairs > spec.delta {
        return Err(Error::precondition("more conjugate pairs than marked points"));
    }
    if spec.genus > 0 && spec.delta - spec.conjugate_pairs > 2 * spec.genus as usize + 2 {
        return Err(Error::precondition(
            "random hyperelliptic models support at most 2g + 2 distinct marked x-coordinates",
        ));
    }
    if spec.genus == 0 && spec.conjugate_pairs > 0 {
        return Err(Error::precondition("rational models have no conjugate pairs"));
    }
    let h = spec.height.max(spec.delta as i64 + 1);
    for _ in 0..1000 {
        let mut xs: Vec<i64> = Vec::new();
        let distinct = spec.delta - spec.conjugate_pairs;
        while xs.len() < distinct {
            let a = rng.gen_range(-h..=h);
            if !xs.contains(&a) {
                xs.push(a);
            }
        }
        if spec.genus == 0 {
            return ComponentModel::rational(xs.into_iter().map(rat).collect());
        }
        let mut pts = Vec::new();
        for (k, &a) in xs.iter().enumerate() {
            let p = Point::new(rat(a), rat(nonzero(rng, h)));
            if k < spec.conjugate_pairs {
                pts.push(p.clone());
                pts.push(p.conjugate());
            } else {
                pts.push(p);
            }
        }
        if let Ok(m) = random_model_with_points(rng, spec.genus, pts, h) {
            return Ok(m);
        }
    }
    Err(Error::invariant("random model generation did not converge"))
}

/// A genus-`genus` hyperelliptic model passing through `points` (which also
/// become the marked points, in order).
pub fn random_model_with_points<R: Rng>(
    rng: &mut R,
    genus: u64,
    points: Vec<Point>,
    height: i64,
) -> Result<ComponentModel> {
    let top = 2 * genus as usize + 1;
    let mut nodes: Vec<(Rat, Rat)> = Vec::new();
    for p in &points {
        let v = &p.y * &p.y;
        match nodes.iter().find(|(a, _)| *a == p.x) {
            Some((_, w)) if *w != v => {
                return Err(Error::precondition("two points over one x with different y²"))
            }
            Some(_) => {}
            None => nodes.push((p.x.clone(), v)),
        }
    }
    if nodes.len() > top + 1 {
        return Err(Error::precondition("too many interpolation conditions"));
    }
    let lagrange = RatPoly::interpolate(&nodes);
    let vanish = nodes
        .iter()
        .fold(RatPoly::one(), |acc, (a, _)| &acc * &RatPoly::linear_root(a));
    for _ in 0..100 {
        let f = if nodes.len() == top + 1 {
            lagrange.clone()
        } else {
            let k = top - nodes.len();
            let mut c: Vec<Rat> = (0..k).map(|_| rat(rng.gen_range(-height..=height))).collect();
            c.push(rat(nonzero(rng, height)));
            &lagrange + &(&vanish * &RatPoly::new(c))
        };
        if f.deg() == top as i64 {
            if let Ok(m) = ComponentModel::hyperelliptic(f, points.clone()) {
                return Ok(m);
            }
        }
        if nodes.len() == top + 1 {
            break;
        }
    }
    Err(Error::precondition("no valid curve through the prescribed points"))
}
