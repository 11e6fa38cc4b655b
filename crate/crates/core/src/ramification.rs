//! Ramification divisors of linear systems on the components and the limit
//! Weierstrass divisor of Theorem 4, equation (4) and Corollary 5.
//!
//! For a system spanned by sections `s_k = h_k·ω₀` of `L = ω(E)`, write
//! `s_k = φ_k·τ` with `τ = ω₀/D` (`D` the common denominator of the `h_k`)
//! and `φ_k = h_k·D = p_k + q_k·y`. The Wronskian section of
//! `L^{r+1} ⊗ K^{C(r+1,2)}` is `W_x(φ)·τ^{r+1}·dx^{C(r+1,2)}`, so
//!
//! `R = div W_x(φ) + (r+1)·(K₀ − div D + E) + C(r+1,2)·div(dx)`
//!
//! where `div(dx) = Σ(finite Weierstrass points) − 3∞` on hyperelliptic
//! models and `−2∞` on `P¹`. Derivatives use `y' = f'/(2y)`: the `m`-th
//! derivative of `A + B·y` is `(A_m + B_m·y)/f^m` with
//! `A_{m+1} = f·A_m' − m f'·A_m`, `B_{m+1} = f·B_m' + (1/2 − m) f'·B_m`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::factor::factor_rational;
use crate::algebra::Poly;
use crate::curvemodel::{
    check_condition_1, expand_local_any, h0, rr_space, Branch, ComponentModel, FunctionElement,
    Place, PlaceDivisor, Point, SectionSpace,
};
use crate::error::{Error, Result};
use crate::invariants::{
    corollary5_delta_coefficient, eq4_delta_coefficient, other, plucker_ram_degree, GenusProfile,
};
use crate::nodalglue::NodalCurve;
use crate::rat::{rat, rat_sqrt};
use crate::{Rat, RatMatrix, RatPoly};

/// A linear system `V ⊆ H⁰(ω(E))` given by a basis of functions `h = s/ω₀`.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    model: ComponentModel,
    twist: PlaceDivisor,
    basis: Vec<FunctionElement>,
}

impl LinearSystem {
    /// Checks independence and membership in `H⁰(ω(E))`.
    pub fn new(model: &ComponentModel, twist: PlaceDivisor, basis: Vec<FunctionElement>) -> Result<Self> {
        if basis.is_empty() {
            return Err(Error::precondition("a linear system needs a nonzero basis"));
        }
        let space = rr_space(model, &twist)?;
        let coords = basis
            .iter()
            .map(|h| coordinates(&space, h))
            .collect::<Result<Vec<_>>>()?;
        if RatMatrix::from_rows(coords).rank() != basis.len() {
            return Err(Error::precondition("linear system basis is dependent"));
        }
        Ok(LinearSystem {
            model: model.clone(),
            twist,
            basis,
        })
    }

    /// The complete system `|ω(E)|`.
    pub fn complete(space: &SectionSpace) -> Result<Self> {
        if space.dim() == 0 {
            return Err(Error::precondition("complete system of a sheaf with no sections"));
        }
        Ok(LinearSystem {
            model: space.model().clone(),
            twist: space.twist().clone(),
            basis: space.basis().to_vec(),
        })
    }

    /// The subsystem with the given coordinate vectors in `space`.
    pub fn from_coords(space: &SectionSpace, coords: &[Vec<Rat>]) -> Result<Self> {
        if coords.is_empty() || RatMatrix::from_rows(coords.to_vec()).rank() != coords.len() {
            return Err(Error::precondition("subsystem coordinates must be independent"));
        }
        Ok(LinearSystem {
            model: space.model().clone(),
            twist: space.twist().clone(),
            basis: coords.iter().map(|c| space.combine(c)).collect(),
        })
    }

    /// The same sections viewed in `ω(E + F)`, `F ≥ 0`.
    pub fn widen(&self, f: &PlaceDivisor) -> Result<Self> {
        if !f.is_effective() {
            return Err(Error::precondition("widening needs an effective divisor"));
        }
        Ok(LinearSystem {
            twist: self.twist.add(f),
            ..self.clone()
        })
    }

    pub fn model(&self) -> &ComponentModel {
        &self.model
    }

    pub fn twist(&self) -> &PlaceDivisor {
        &self.twist
    }

    pub fn basis(&self) -> &[FunctionElement] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `deg ω(E)`.
    pub fn sheaf_degree(&self) -> i64 {
        2 * self.model.genus() as i64 - 2 + self.twist.degree()
    }
}

/// Coordinates of `h` in `space`; a precondition error when `h ∉ space`.
fn coordinates(space: &SectionSpace, h: &FunctionElement) -> Result<Vec<Rat>> {
    // h·D·d = Σ c_k (p_k + q_k y)·d with D, d the two denominators.
    let dd = space.denom();
    let target_p = h.p() * dd;
    let target_q = h.q() * dd;
    let cols: Vec<(RatPoly, RatPoly)> = space
        .basis()
        .iter()
        .map(|b| (b.p() * h.d(), b.q() * h.d()))
        .collect();
    let len = cols
        .iter()
        .map(|(p, q)| p.coeffs().len().max(q.coeffs().len()))
        .chain([target_p.coeffs().len(), target_q.coeffs().len()])
        .max()
        .unwrap_or(0);
    let mut m = RatMatrix::zeros(2 * len, cols.len());
    let mut rhs = vec![Rat::zero(); 2 * len];
    for k in 0..len {
        for (j, (p, q)) in cols.iter().enumerate() {
            m[(k, j)] = p.coeff(k);
            m[(len + k, j)] = q.coeff(k);
        }
        rhs[k] = target_p.coeff(k);
        rhs[len + k] = target_q.coeff(k);
    }
    if cols.is_empty() {
        return if h.is_zero() {
            Ok(Vec::new())
        } else {
            Err(Error::precondition("element is not a section of the sheaf"))
        };
    }
    m.solve(&rhs)
        .ok_or_else(|| Error::precondition(format!("{h} is not a section of the sheaf")))
}

/// Elements `a + b·y` of `Q[x][y]/(y² − f)` (`b = 0` on rational models).
#[derive(Clone, Debug, PartialEq)]
struct Hyp {
    a: RatPoly,
    b: RatPoly,
}

impl Hyp {
    fn deg(&self) -> i64 {
        self.a.deg().max(self.b.deg())
    }
}

/// Common denominator `D` of the basis and the numerators `φ_k = h_k·D`.
fn cleared_basis(sys: &LinearSystem) -> (RatPoly, Vec<Hyp>) {
    let mut den = RatPoly::one();
    for h in &sys.basis {
        let g = den.gcd_q(h.d());
        den = (&den * &h.d().exact_div(&g)).monic();
    }
    let phis = sys
        .basis
        .iter()
        .map(|h| {
            let k = den.exact_div(h.d());
            Hyp {
                a: h.p() * &k,
                b: h.q() * &k,
            }
        })
        .collect();
    (den, phis)
}

/// `W_x(φ) = det(d^m φ_k / dx^m)` as a function-field element.
pub fn wronskian_element(sys: &LinearSystem) -> Result<FunctionElement> {
    Ok(wronskian_parts(sys)?.0)
}

/// Derivative rows: with `y' = f'/(2y)`, `f^m·d^mφ/dx^m = A_m + B_m·y` where
/// `A_{m+1} = f·A_m' − m·f'·A_m` and `B_{m+1} = f·B_m' + (1/2 − m)·f'·B_m`.
fn derivative_rows(sys: &LinearSystem, phis: Vec<Hyp>) -> Vec<Vec<Hyp>> {
    let n = phis.len();
    let f = sys.model.f().clone();
    let hyper = sys.model.is_hyperelliptic();
    let df = f.derivative();
    let half = Rat::new(1.into(), 2.into());
    let mut rows = vec![phis];
    for m in 0..n.saturating_sub(1) {
        let last = rows.last().expect("row 0 exists");
        let mm = Rat::from_integer(BigInt::from(m));
        let next = last
            .iter()
            .map(|e| {
                if hyper {
                    Hyp {
                        a: &(&f * &e.a.derivative()) - &(&df * &e.a).scale(&mm),
                        b: &(&f * &e.b.derivative()) + &(&df * &e.b).scale(&(&half - &mm)),
                    }
                } else {
                    Hyp {
                        a: e.a.derivative(),
                        b: RatPoly::zero(),
                    }
                }
            })
            .collect();
        rows.push(next);
    }
    rows
}

/// `det(A + t·B)` as polynomials `c_k(x)` in `Σ c_k t^k`, by evaluation at
/// integer points `x₀` and `t₀` followed by interpolation (first in `t`,
/// then coefficientwise in `x`). Degree bounds: `Σ_rows max deg` in `x` and
/// `n` in `t` (`0` when every `B` vanishes).
fn det_by_interpolation(rows: &[Vec<Hyp>]) -> Vec<RatPoly> {
    let n = rows.len();
    let x_bound: i64 = rows
        .iter()
        .map(|r| r.iter().map(Hyp::deg).max().unwrap_or(0).max(0))
        .sum();
    let t_bound = if rows.iter().flatten().all(|e| e.b.is_zero()) { 0 } else { n };
    let ts: Vec<Rat> = (0..=t_bound as i64).map(rat).collect();
    let half = x_bound / 2;
    let mut per_x: Vec<(Rat, Vec<Rat>)> = Vec::with_capacity(x_bound as usize + 1);
    for k in 0..=x_bound {
        let x0 = rat(k - half);
        let av: Vec<Vec<Rat>> = rows.iter().map(|r| r.iter().map(|e| e.a.eval(&x0)).collect()).collect();
        let bv: Vec<Vec<Rat>> = rows.iter().map(|r| r.iter().map(|e| e.b.eval(&x0)).collect()).collect();
        let pts: Vec<(Rat, Rat)> = ts
            .iter()
            .map(|t0| {
                let m: Vec<Vec<Rat>> = (0..n)
                    .map(|i| (0..n).map(|j| &av[i][j] + t0 * &bv[i][j]).collect())
                    .collect();
                (t0.clone(), RatMatrix::from_rows(m).det())
            })
            .collect();
        per_x.push((x0, RatPoly::interpolate(&pts).into_coeffs()));
    }
    (0..=t_bound)
        .map(|k| {
            let pts: Vec<(Rat, Rat)> = per_x
                .iter()
                .map(|(x0, c)| (x0.clone(), c.get(k).cloned().unwrap_or_else(Rat::zero)))
                .collect();
            RatPoly::interpolate(&pts)
        })
        .collect()
}

fn wronskian_parts(sys: &LinearSystem) -> Result<(FunctionElement, RatPoly)> {
    let (den, phis) = cleared_basis(sys);
    let n = phis.len();
    let f = sys.model.f().clone();
    let rows = derivative_rows(sys, phis);
    // det(A + B·y) = Σ c_k y^k with y² = f.
    let coeffs = det_by_interpolation(&rows);
    let mut a = RatPoly::zero();
    let mut b = RatPoly::zero();
    let mut fpow = RatPoly::one();
    for (k, c) in coeffs.iter().enumerate() {
        if k % 2 == 0 {
            a = &a + &(c * &fpow);
        } else {
            b = &b + &(c * &fpow);
            fpow = &fpow * &f;
        }
    }
    if a.is_zero() && b.is_zero() {
        return Err(Error::precondition("Wronskian vanishes: the basis is dependent"));
    }
    let w = if sys.model.is_hyperelliptic() {
        // Cancel whole powers of f only: a full gcd against f^C(n,2) is
        // costly and divisor_of does not need a reduced representation.
        let mut pairs = (n * (n - 1) / 2) as u32;
        while pairs > 0 {
            let (qa, ra) = a.divrem(&f);
            let (qb, rb) = b.divrem(&f);
            if !ra.is_zero() || !rb.is_zero() {
                break;
            }
            a = qa;
            b = qb;
            pairs -= 1;
        }
        FunctionElement::raw(a, b, f.pow(pairs))
    } else {
        FunctionElement::from_poly(a)
    };
    Ok((w, den))
}

fn zpoly_root(pi: &Poly<BigInt>) -> Option<Rat> {
    (pi.deg() == 1).then(|| Rat::new(-pi.coeff(0), pi.coeff(1)))
}

/// Order of the irreducible `π` in a nonzero polynomial.
fn ord_in(p: &RatPoly, pi: &RatPoly) -> i64 {
    if p.is_zero() {
        return i64::MAX;
    }
    let mut k = 0;
    let mut cur = p.clone();
    loop {
        let (q, r) = cur.divrem(pi);
        if !r.is_zero() {
            return k;
        }
        cur = q;
        k += 1;
    }
}

/// Complete divisor of a nonzero function-field element (see
/// [`Branch`] for the closed-point conventions).
pub fn divisor_of(elem: &FunctionElement, model: &ComponentModel) -> Result<PlaceDivisor> {
    if elem.is_zero() {
        return Err(Error::precondition("divisor of the zero function"));
    }
    let hyper = model.is_hyperelliptic();
    let f = model.f();
    let (p, q, d) = (elem.p(), elem.q(), elem.d());
    let mut div = PlaceDivisor::zero();
    // Infinity: ord x = −2, ord y = −(2γ+1) (resp. ord x = −1 on P¹).
    let inf = if hyper {
        let top_p = if p.is_zero() { i64::MIN } else { 2 * p.deg() };
        let top_q = if q.is_zero() { i64::MIN } else { 2 * q.deg() + f.deg() };
        -top_p.max(top_q) + 2 * d.deg()
    } else {
        -p.deg() + d.deg()
    };
    div.add_term(Place::Infinity, inf);
    // Finite places from the norm.
    let norm = if hyper {
        &(p * p) - &(&(q * q) * f)
    } else {
        p.clone()
    };
    let hints = known_factors(model);
    let mut factors: BTreeMap<Poly<BigInt>, ()> = BTreeMap::new();
    for pi in factor_with_hints(&norm, &hints)
        .into_iter()
        .chain(factor_with_hints(d, &hints))
    {
        factors.insert(pi, ());
    }
    for pi in factors.into_keys() {
        let pr = pi.to_rational();
        let e = ord_in(&norm, &pr) - if hyper { 2 } else { 1 } * ord_in(d, &pr);
        let root = zpoly_root(&pi);
        if !hyper {
            let place = match root {
                Some(a) => Place::Point(Point::new(a, Rat::zero())),
                None => Place::Closed {
                    minpoly: pi,
                    branch: Branch::Unique,
                },
            };
            div.add_term(place, e);
            continue;
        }
        if f.rem(&pr).is_zero() {
            let place = match root {
                Some(a) => Place::Point(Point::new(a, Rat::zero())),
                None => Place::Closed {
                    minpoly: pi,
                    branch: Branch::Ramified,
                },
            };
            div.add_term(place, e);
            continue;
        }
        let split = root
            .as_ref()
            .and_then(|a| rat_sqrt(&f.eval(a)).map(|b| (a.clone(), b)));
        match split {
            Some((a, b)) => {
                let bound = e.max(0) + ord_in(d, &pr) + 1;
                let mut total = 0;
                for y in [b.clone(), -b] {
                    let place = Place::Point(Point::new(a.clone(), y));
                    let s = expand_local_any(model, elem, &place, bound)?;
                    let v = s.valuation().ok_or_else(|| {
                        Error::invariant("order at a split point exceeds the norm bound")
                    })?;
                    total += v;
                    div.add_term(place, v);
                }
                if total != e {
                    return Err(Error::invariant("split orders disagree with the norm"));
                }
            }
            None => div.add_term(
                Place::Closed {
                    minpoly: pi,
                    branch: Branch::Fiber,
                },
                e,
            ),
        }
    }
    if div.degree() != 0 {
        return Err(Error::invariant(format!(
            "principal divisor of {elem} has degree {}",
            div.degree()
        )));
    }
    Ok(div)
}

/// Irreducible polynomials that typically divide norms and denominators on
/// `model`: the factors of `f` and `x − x(P)` for the marked points.
fn known_factors(model: &ComponentModel) -> Vec<Poly<BigInt>> {
    let mut out: Vec<Poly<BigInt>> = if model.is_hyperelliptic() {
        factor_rational(model.f()).into_iter().map(|(pi, _)| pi).collect()
    } else {
        Vec::new()
    };
    for p in model.marked() {
        let pi = RatPoly::linear_root(&p.x).primitive_integer();
        if !out.contains(&pi) {
            out.push(pi);
        }
    }
    out
}

/// Distinct irreducible factors of a nonzero `p`. The `hints` are divided
/// out first so that the remaining cofactor is usually squarefree, which
/// keeps the expensive squarefree decomposition out of the common path.
fn factor_with_hints(p: &RatPoly, hints: &[Poly<BigInt>]) -> Vec<Poly<BigInt>> {
    let mut rest = p.clone();
    let mut out = Vec::new();
    for h in hints {
        let hr = h.to_rational();
        let mut hit = false;
        loop {
            let (quo, rem) = rest.divrem(&hr);
            if !rem.is_zero() {
                break;
            }
            rest = quo;
            hit = true;
        }
        if hit {
            out.push(h.clone());
        }
    }
    if rest.deg() > 0 {
        out.extend(factor_rational(&rest).into_iter().map(|(pi, _)| pi));
    }
    out
}

/// `div(dx)`: the finite Weierstrass points minus `3∞`, or `−2∞` on `P¹`.
pub fn div_dx(model: &ComponentModel) -> PlaceDivisor {
    if !model.is_hyperelliptic() {
        return PlaceDivisor::from_terms([(Place::Infinity, -2)]);
    }
    let mut d = PlaceDivisor::from_terms([(Place::Infinity, -3)]);
    for (pi, _) in factor_rational(model.f()) {
        let place = match zpoly_root(&pi) {
            Some(a) => Place::Point(Point::new(a, Rat::zero())),
            None => Place::Closed {
                minpoly: pi,
                branch: Branch::Ramified,
            },
        };
        d.add_term(place, 1);
    }
    d
}

/// A ramification divisor with its degree.
#[derive(Clone, Debug, PartialEq)]
pub struct RamDivisor {
    pub divisor: PlaceDivisor,
    pub total_degree: i64,
}

impl RamDivisor {
    pub fn to_json(&self) -> Value {
        self.divisor.to_json()
    }
}

/// `R = div W_x + (r+1)(K₀ − div D + E) + C(r+1,2)·div(dx)`, checked to be
/// effective of the Plücker degree.
pub fn ram_divisor(sys: &LinearSystem) -> Result<RamDivisor> {
    let (w, den) = wronskian_parts(sys)?;
    let n = sys.dim() as i64;
    let model = &sys.model;
    let tau = model
        .canonical_divisor()
        .sub(&divisor_of(&FunctionElement::from_poly(den), model)?)
        .add(&sys.twist);
    let r = divisor_of(&w, model)?
        .add(&tau.scale(n))
        .add(&div_dx(model).scale(n * (n - 1) / 2));
    let expected = plucker_ram_degree(n, sys.sheaf_degree(), model.genus() as i64);
    if !r.is_effective() || r.degree() != expected {
        return Err(Error::invariant(format!(
            "ramification divisor {r} is not effective of degree {expected}"
        )));
    }
    Ok(RamDivisor {
        total_degree: r.degree(),
        divisor: r,
    })
}

/// Gap-sequence oracle at a rational place: with vanishing orders
/// `a_0 < … < a_r` of the system at `P` (relative to `L`), returns
/// `Σ (a_j − j)`, computed from local expansions only.
pub fn gap_weight(sys: &LinearSystem, place: &Place) -> Result<i64> {
    if matches!(place, Place::Closed { .. }) {
        return Err(Error::precondition("gap weights are computed at rational places"));
    }
    let model = &sys.model;
    let g = model.canonical_divisor().add(&sys.twist);
    let shift = g.get(place);
    let hi = -shift + sys.sheaf_degree().max(0) + 1;
    let series = sys
        .basis
        .iter()
        .map(|h| expand_local_any(model, h, place, hi))
        .collect::<Result<Vec<_>>>()?;
    let width = (hi + shift) as usize;
    let rows: Vec<Vec<Rat>> = series
        .iter()
        .map(|s| (0..width).map(|k| s.coeff(k as i64 - shift)).collect())
        .collect();
    let (ech, pivots) = RatMatrix::from_rows(rows).rref();
    let _ = ech;
    if pivots.len() != sys.dim() {
        return Err(Error::invariant("vanishing sequence shorter than the system dimension"));
    }
    Ok(pivots.iter().enumerate().map(|(j, &a)| a as i64 - j as i64).sum())
}

/// A Weil divisor on `C`: parts away from the nodes plus node multiplicities,
/// with the decomposition reported.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurveDivisor {
    #[serde(serialize_with = "ser_parts")]
    pub parts: [PlaceDivisor; 2],
    /// Orders of the component divisors at the nodes.
    pub component_node_orders: [Vec<i64>; 2],
    /// The explicit `Δ`-coefficient added by the formula.
    pub delta_coefficient: i64,
    /// Total multiplicity at each node.
    pub nodes: Vec<i64>,
    pub total_degree: i64,
}

fn ser_parts<S: serde::Serializer>(p: &[PlaceDivisor; 2], s: S) -> std::result::Result<S::Ok, S::Error> {
    let v: Vec<Value> = p.iter().map(|d| d.to_json()).collect();
    v.serialize(s)
}

impl CurveDivisor {
    pub fn assemble(curve: &NodalCurve, d1: &PlaceDivisor, d2: &PlaceDivisor, delta_coefficient: i64) -> Self {
        let mut parts = [PlaceDivisor::zero(), PlaceDivisor::zero()];
        let mut orders = [Vec::new(), Vec::new()];
        for (j, d) in [(1usize, d1), (2, d2)] {
            let marked = curve.comp(j).marked();
            parts[j - 1] = d.restrict(|p| p.as_point().is_none_or(|q| !marked.contains(q)));
            orders[j - 1] = marked
                .iter()
                .map(|q| d.get(&Place::Point(q.clone())))
                .collect();
        }
        let nodes: Vec<i64> = (0..curve.delta())
            .map(|r| orders[0][r] + orders[1][r] + delta_coefficient)
            .collect();
        let total_degree = parts[0].degree() + parts[1].degree() + nodes.iter().sum::<i64>();
        CurveDivisor {
            parts,
            component_node_orders: orders,
            delta_coefficient,
            nodes,
            total_degree,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "component1": self.parts[0].to_json(),
            "component2": self.parts[1].to_json(),
            "component_node_orders": self.component_node_orders,
            "delta_coefficient": self.delta_coefficient,
            "nodes": self.nodes,
            "total_degree": self.total_degree,
        })
    }
}

fn check_system(curve: &NodalCurve, i: usize, sys: &LinearSystem, twist: i64, what: &str) -> Result<()> {
    let g = curve.genus() as usize;
    if sys.model() != curve.comp(i) {
        return Err(Error::precondition(format!("{what}_{i} lives on the wrong component")));
    }
    if sys.twist() != &curve.comp(i).delta_divisor(twist) {
        return Err(Error::precondition(format!(
            "{what}_{i} must be a system in omega_{i}({twist}·Delta)"
        )));
    }
    if sys.dim() != g {
        return Err(Error::precondition(format!(
            "{what}_{i} has dimension {} but g = {g}",
            sys.dim()
        )));
    }
    Ok(())
}

fn check_total(curve: &NodalCurve, d: &CurveDivisor) -> Result<()> {
    let g = curve.genus() as i64;
    if d.total_degree != g * g * g - g {
        return Err(Error::invariant(format!(
            "limit divisor has degree {} != g^3 - g = {}",
            d.total_degree,
            g * g * g - g
        )));
    }
    Ok(())
}

/// `W_ν = W_{ν,1} + W_{ν,2} + g(δ−2)Δ` for `V_i ⊆ H⁰(ω_i((1+g_{3−i})Δ))`.
pub fn assemble_wnu(curve: &NodalCurve, v1: &LinearSystem, v2: &LinearSystem) -> Result<CurveDivisor> {
    let p = curve.profile();
    for (i, v) in [(1, v1), (2, v2)] {
        check_system(curve, i, v, 1 + p.genus(other(i)) as i64, "V")?;
    }
    let r1 = ram_divisor(v1)?;
    let r2 = ram_divisor(v2)?;
    let g = p.g() as i64;
    let d = CurveDivisor::assemble(curve, &r1.divisor, &r2.divisor, g * (p.delta as i64 - 2));
    check_total(curve, &d)?;
    Ok(d)
}

fn require_conditions_1(curve: &NodalCurve) -> Result<()> {
    for i in 1..=2 {
        check_condition_1(curve.comp(other(i)), i, curve.profile())?.into_result()?;
    }
    Ok(())
}

/// Equation (4): `[W_π] = W̄_{π,1} + W̄_{π,2} + g(g−1−ℓ₁−ℓ₂)Δ` with
/// `W̄_{π,i}` the ramification of `(V_{π,i}, L_{i,i})`.
pub fn assemble_limit_via_eq4(curve: &NodalCurve, vpi1: &LinearSystem, vpi2: &LinearSystem) -> Result<CurveDivisor> {
    let p = curve.profile();
    require_conditions_1(curve)?;
    for (i, v) in [(1, vpi1), (2, vpi2)] {
        check_system(curve, i, v, p.l_twist(i, i), "V_pi")?;
    }
    let r1 = ram_divisor(vpi1)?;
    let r2 = ram_divisor(vpi2)?;
    let d = CurveDivisor::assemble(curve, &r1.divisor, &r2.divisor, eq4_delta_coefficient(p));
    check_total(curve, &d)?;
    Ok(d)
}

/// Theorem 4 cross-check: equation (4) against `W_ν` computed from the same
/// sections viewed in `ω_i((1+g_{3−i})Δ)` (`W_{π,i} = W̄_{π,i} + g(g_{3−i}−ℓ_i)Δ`).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Theorem4Check {
    pub via_eq4: CurveDivisor,
    pub via_wnu: CurveDivisor,
    pub agree: bool,
}

pub fn theorem4_check(curve: &NodalCurve, vpi1: &LinearSystem, vpi2: &LinearSystem) -> Result<Theorem4Check> {
    let p = curve.profile();
    let via_eq4 = assemble_limit_via_eq4(curve, vpi1, vpi2)?;
    let widen = |i: usize, v: &LinearSystem| {
        let k = p.genus(other(i)) as i64 - p.ell(i) as i64;
        v.widen(&curve.comp(i).delta_divisor(k))
    };
    let via_wnu = assemble_wnu(curve, &widen(1, vpi1)?, &widen(2, vpi2)?)?;
    let agree = via_eq4.parts == via_wnu.parts && via_eq4.nodes == via_wnu.nodes;
    if !agree {
        return Err(Error::invariant("equation (4) and W_nu disagree (Theorem 4)"));
    }
    Ok(Theorem4Check {
        via_eq4,
        via_wnu,
        agree,
    })
}

/// Corollary 5: `δ | gcd(g₁, g₂)` and `h⁰(ω_i(−(g_i/δ)Δ)) = 0`; then
/// `[W_π] = W₁ + W₂ + (g² − g(g+1)/δ)Δ` with `W_i` the ramification of the
/// complete systems `|ω_i((1 + g_{3−i}/δ)Δ)|`.
pub fn corollary5_divisor(curve: &NodalCurve) -> Result<CurveDivisor> {
    let p: &GenusProfile = curve.profile();
    let coeff = corollary5_delta_coefficient(p)?;
    for i in 1..=2 {
        let model = curve.comp(i);
        let k = (p.genus(i) / p.delta) as i64;
        let h = h0(model, &model.delta_divisor(-k))?;
        if h != 0 {
            return Err(Error::Genericity {
                condition: format!("h0(omega_{i}(-(g_{i}/delta)Delta)) = 0"),
                witness: format!("h0 = {h}"),
            });
        }
    }
    let mut sys = Vec::new();
    for i in 1..=2 {
        let model = curve.comp(i);
        let space = rr_space(model, &model.delta_divisor(p.l_twist(i, i)))?;
        sys.push(LinearSystem::complete(&space)?);
    }
    let r1 = ram_divisor(&sys[0])?;
    let r2 = ram_divisor(&sys[1])?;
    let d = CurveDivisor::assemble(curve, &r1.divisor, &r2.divisor, coeff);
    check_total(curve, &d)?;
    let eq4 = assemble_limit_via_eq4(curve, &sys[0], &sys[1])?;
    if eq4 != d {
        return Err(Error::invariant("Corollary 5 disagrees with equation (4)"));
    }
    Ok(d)
}

#[cfg(test)]
mod tests;
