//! Riemann–Roch spaces `H⁰(ω(E)) = L(K₀ + E)` by an explicit ansatz.
//!
//! Write `G = K₀ + E`. For each `x`-value `a` under the finite support let
//! `e_a` be the largest positive multiplicity of `G` over `a`, and put
//! `d = Π (x − a)^{e_a}`. Every `h ∈ L(G)` is `(p + q·y)/d` with
//! `deg p ≤ ⌊M/2⌋`, `deg q ≤ ⌊(M − 2γ − 1)/2⌋`, `M = n_∞ + 2 deg d`
//! (rational models: `deg p ≤ n_∞ + deg d`), because the two summands have
//! pole orders of different parity at ∞. The remaining conditions are the
//! vanishing orders `e_a − n_P` of `p + q·y` at each point `P` over `a`
//! (including the hyperelliptic conjugate), imposed on local expansions.

use std::collections::BTreeMap;

use num_traits::One;

use crate::algebra::{Matrix, Series};
use crate::curvemodel::{
    expand_local, local_coords, ComponentModel, FunctionElement, Place, PlaceDivisor, Point,
};
use crate::error::{Error, Result};
use crate::{Rat, RatPoly};

/// A basis of `H⁰(ω(E))`, as functions `h = s/ω₀` sharing one denominator.
#[derive(Clone, Debug)]
pub struct SectionSpace {
    model: ComponentModel,
    twist: PlaceDivisor,
    denom: RatPoly,
    basis: Vec<FunctionElement>,
}

impl SectionSpace {
    pub fn model(&self) -> &ComponentModel {
        &self.model
    }

    /// The twist `E` (sections of `ω(E)`).
    pub fn twist(&self) -> &PlaceDivisor {
        &self.twist
    }

    /// The common denominator of the basis.
    pub fn denom(&self) -> &RatPoly {
        &self.denom
    }

    pub fn basis(&self) -> &[FunctionElement] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The linear combination `Σ c_k b_k`.
    pub fn combine(&self, coeffs: &[Rat]) -> FunctionElement {
        assert_eq!(coeffs.len(), self.dim(), "one coefficient per basis element");
        let mut p = RatPoly::zero();
        let mut q = RatPoly::zero();
        for (c, b) in coeffs.iter().zip(&self.basis) {
            p = &p + &b.p().scale(c);
            q = &q + &b.q().scale(c);
        }
        FunctionElement::raw(p, q, self.denom.clone())
    }

    /// Re-expands every basis element at every finite support place and at
    /// infinity and checks `ord_P(h) ≥ −mult_P(K₀ + E)`.
    pub fn verify_orders(&self) -> Result<()> {
        let g = self.model.canonical_divisor().add(&self.twist);
        let mut places: Vec<Place> = g.terms().map(|(p, _)| p.clone()).collect();
        if !places.contains(&Place::Infinity) {
            places.push(Place::Infinity);
        }
        for b in &self.basis {
            for place in &places {
                let bound = -g.get(place);
                let s = expand_local(&self.model, b, place, bound)?;
                if s.valuation().is_some_and(|v| v < bound) {
                    return Err(Error::invariant(format!(
                        "basis element {b} violates the order bound {bound} at {place:?}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Basis of `H⁰(ω(E)) = L(K₀ + E)`.
pub fn rr_space(model: &ComponentModel, e: &PlaceDivisor) -> Result<SectionSpace> {
    let g_div = model.canonical_divisor().add(e);
    let hyper = model.is_hyperelliptic();
    let gamma = model.genus() as i64;

    // Group finite support by x-coordinate.
    let mut fibers: BTreeMap<Rat, Vec<(Point, i64)>> = BTreeMap::new();
    for (place, mult) in g_div.terms() {
        match place {
            Place::Infinity => {}
            Place::Point(p) if model.on_curve(p) && !model.is_weierstrass(p) => {
                fibers.entry(p.x.clone()).or_default().push((p.clone(), mult));
            }
            _ => {
                return Err(Error::precondition(format!(
                    "unsupported divisor support {place:?}: need rational non-Weierstrass points or infinity"
                )))
            }
        }
    }
    if hyper {
        for pts in fibers.values_mut() {
            let conj = pts[0].0.conjugate();
            if pts.len() == 1 {
                pts.push((conj, 0));
            }
        }
    }
    let mut denom = RatPoly::one();
    let mut conditions: Vec<(Point, i64)> = Vec::new();
    for (a, pts) in &fibers {
        let e_a = pts.iter().map(|(_, m)| *m).max().unwrap_or(0).max(0);
        denom = &denom * &RatPoly::linear_root(a).pow(e_a as u32);
        for (p, m) in pts {
            if e_a - m > 0 {
                conditions.push((p.clone(), e_a - m));
            }
        }
    }
    let n_inf = g_div.at_infinity();
    let deg_d = denom.deg();
    let (np, nq) = if hyper {
        let m = n_inf + 2 * deg_d;
        (m.div_euclid(2), (m - 2 * gamma - 1).div_euclid(2))
    } else {
        (n_inf + deg_d, -1)
    };
    let ncols = (np + 1).max(0) as usize + (nq + 1).max(0) as usize;
    let mut space = SectionSpace {
        model: model.clone(),
        twist: e.clone(),
        denom: denom.clone(),
        basis: Vec::new(),
    };
    if ncols == 0 {
        return Ok(space);
    }

    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for (p, k) in &conditions {
        let coords = local_coords(model, &Place::Point(p.clone()), *k)?;
        let x = coords.x(*k);
        let mut xpow = Series::constant(Rat::one(), *k);
        let mut cols: Vec<Series<Rat>> = Vec::with_capacity(ncols);
        let mut qcols: Vec<Series<Rat>> = Vec::new();
        for j in 0..=np.max(nq).max(0) {
            if j <= np {
                cols.push(xpow.clone());
            }
            if j <= nq {
                qcols.push((&xpow * &coords.y).truncate(*k));
            }
            xpow = (&xpow * &x).truncate(*k);
        }
        cols.extend(qcols);
        for m in 0..*k {
            rows.push(cols.iter().map(|s| s.coeff(m)).collect());
        }
    }
    let kernel = if rows.is_empty() {
        Matrix::<Rat>::identity(ncols).rows_vec()
    } else {
        Matrix::from_rows(rows).nullspace()
    };
    let np_len = (np + 1).max(0) as usize;
    for v in kernel {
        let p = RatPoly::new(v[..np_len].to_vec());
        let q = RatPoly::new(v[np_len..].to_vec());
        space
            .basis
            .push(FunctionElement::raw(p, q, denom.clone()));
    }

    // Riemann–Roch sanity: dim ≥ deg G − γ + 1, with equality when
    // deg G > 2γ − 2; and dim = 0 when deg G < 0.
    let deg_g = g_div.degree();
    let dim = space.dim() as i64;
    let expected_min = deg_g - gamma + 1;
    if dim < expected_min
        || (deg_g > 2 * gamma - 2 && dim != expected_min)
        || (deg_g < 0 && dim != 0)
    {
        return Err(Error::invariant(format!(
            "Riemann-Roch violated: dim L(G) = {dim}, deg G = {deg_g}, genus {gamma}"
        )));
    }
    Ok(space)
}

/// `h⁰(ω(E))`.
pub fn h0(model: &ComponentModel, e: &PlaceDivisor) -> Result<usize> {
    Ok(rr_space(model, e)?.dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    /// `y² = x(x−1)(x−2)(x−3)(x−4) + 1`, with rational points `(k, ±1)`.
    fn genus2(marked: Vec<Point>) -> ComponentModel {
        let f = RatPoly::new(vec![rat(1), rat(24), rat(-50), rat(35), rat(-10), rat(1)]);
        ComponentModel::hyperelliptic(f, marked).unwrap()
    }

    #[test]
    fn canonical_space_genus2() {
        let m = genus2(vec![]);
        let s = rr_space(&m, &PlaceDivisor::zero()).unwrap();
        assert_eq!(s.dim(), 2);
        for b in s.basis() {
            assert!(b.q().is_zero() && b.p().deg() <= 1);
        }
        s.verify_orders().unwrap();
    }

    #[test]
    fn rational_degree_one() {
        let m = ComponentModel::rational(vec![rat(0), rat(1), rat(5)]).unwrap();
        let s = rr_space(&m, &m.delta_divisor(1)).unwrap();
        assert_eq!(s.dim(), 2);
        s.verify_orders().unwrap();
    }

    #[test]
    fn conjugate_pair() {
        let p = Point::new(rat(2), rat(1));
        let m = genus2(vec![p.clone(), p.conjugate()]);
        assert_eq!(h0(&m, &m.delta_divisor(-1)).unwrap(), 1);
        let generic = genus2(vec![Point::new(rat(0), rat(1)), Point::new(rat(2), rat(1))]);
        assert_eq!(h0(&generic, &generic.delta_divisor(-1)).unwrap(), 0);
        assert_eq!(h0(&generic, &generic.delta_divisor(-2)).unwrap(), 0);
    }

    #[test]
    fn poles_at_marked_points() {
        let m = genus2(vec![Point::new(rat(0), rat(1)), Point::new(rat(2), rat(1))]);
        for n in 1..4 {
            let s = rr_space(&m, &m.delta_divisor(n)).unwrap();
            assert_eq!(s.dim() as i64, 2 * n + 1);
            s.verify_orders().unwrap();
        }
    }
}
