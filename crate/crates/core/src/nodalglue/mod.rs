//! The nodal curve `C = C₁ ∪ C₂` glued along `Δ`, invertible sheaves on it
//! presented as two twisted dualizing sheaves plus a gluing vector, their
//! global sections (Lemma 1, sequence (2)) and the smoothability criteria of
//! Theorem 2.
//!
//! Trivializations: a section `s = h·ω₀` of `ω_j(E)` has at node `r` the
//! value `coeff_{t^{−n_r}}(s/dt)`, `t = x − a_r`, `n_r = E(P_r)`. For
//! `n_r = 1` this is the residue, so the dualizing sheaf of `C` has gluing
//! vector `(−1, …, −1)` (residues cancel at each node). A sheaf with gluing
//! vector `c` has global sections `(s₁, s₂)` with
//! `value₁(r) = c_r · value₂(r)` at every node.

mod lattice;

pub use lattice::{
    lattice_solve, rat_pow, verify_witness, ExponentLattice, FormalRadical, LatticeSolution,
};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::curvemodel::{
    check_condition_1, expand_local, random_model, rr_space, ComponentJson, ComponentModel,
    FunctionElement, Place, PlaceDivisor, RandomModelSpec, SectionSpace,
};
use crate::error::{Error, Result};
use crate::invariants::{other, GenusProfile};
use crate::rat::{fmt_rat, fmt_vec, parse_rat};
use crate::{Rat, RatMatrix};

/// Two components whose `r`-th marked points are identified.
#[derive(Clone, Debug, PartialEq)]
pub struct NodalCurve {
    comp1: ComponentModel,
    comp2: ComponentModel,
    profile: GenusProfile,
}

impl NodalCurve {
    pub fn new(comp1: ComponentModel, comp2: ComponentModel) -> Result<Self> {
        if comp1.delta() != comp2.delta() {
            return Err(Error::precondition(format!(
                "components carry {} and {} marked points; the node pairing needs equal counts",
                comp1.delta(),
                comp2.delta()
            )));
        }
        let profile = GenusProfile::new(comp1.genus(), comp2.genus(), comp1.delta() as u64)?;
        Ok(NodalCurve {
            comp1,
            comp2,
            profile,
        })
    }

    /// Random components for `profile` (deterministic in `rng`).
    pub fn random<R: Rng>(rng: &mut R, profile: &GenusProfile) -> Result<Self> {
        let d = profile.delta as usize;
        let c1 = random_model(rng, &RandomModelSpec::new(profile.g1, d))?;
        let c2 = random_model(rng, &RandomModelSpec::new(profile.g2, d))?;
        Self::new(c1, c2)
    }

    pub fn comp(&self, j: usize) -> &ComponentModel {
        match j {
            1 => &self.comp1,
            2 => &self.comp2,
            _ => panic!("component index must be 1 or 2"),
        }
    }

    pub fn profile(&self) -> &GenusProfile {
        &self.profile
    }

    pub fn delta(&self) -> usize {
        self.comp1.delta()
    }

    /// Arithmetic genus `γ₁ + γ₂ + δ − 1`.
    pub fn genus(&self) -> u64 {
        self.profile.g()
    }

    pub fn to_json(&self) -> NodalCurveJson {
        NodalCurveJson {
            comp1: self.comp1.to_json(),
            comp2: self.comp2.to_json(),
        }
    }

    pub fn from_json(j: &NodalCurveJson) -> Result<Self> {
        Self::new(
            ComponentModel::from_json(&j.comp1)?,
            ComponentModel::from_json(&j.comp2)?,
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodalCurveJson {
    pub comp1: ComponentJson,
    pub comp2: ComponentJson,
}

/// JSON of a side twist: multiplicities at the marked points (in node order)
/// and at infinity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwistJson {
    pub nodes: Vec<i64>,
    #[serde(default)]
    pub infinity: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GluedSheafJson {
    pub side1: TwistJson,
    pub side2: TwistJson,
    pub glue: Vec<String>,
}

/// The sheaf obtained by gluing `ω₁(E₁)` and `ω₂(E₂)` along `Δ` with the
/// vector `glue` (stored un-quotiented).
#[derive(Clone, Debug, PartialEq)]
pub struct GluedSheaf {
    pub side1: PlaceDivisor,
    pub side2: PlaceDivisor,
    pub glue: Vec<Rat>,
}

impl GluedSheaf {
    pub fn new(
        curve: &NodalCurve,
        side1: PlaceDivisor,
        side2: PlaceDivisor,
        glue: Vec<Rat>,
    ) -> Result<Self> {
        if glue.len() != curve.delta() {
            return Err(Error::precondition(format!(
                "glue has {} entries, curve has {} nodes",
                glue.len(),
                curve.delta()
            )));
        }
        if glue.iter().any(|c| c.is_zero()) {
            return Err(Error::precondition("glue entries must be nonzero"));
        }
        for (j, side) in [(1, &side1), (2, &side2)] {
            let model = curve.comp(j);
            for (place, _) in side.terms() {
                let ok = match place {
                    Place::Infinity => true,
                    Place::Point(p) => model.marked().contains(p),
                    Place::Closed { .. } => false,
                };
                if !ok {
                    return Err(Error::precondition(format!(
                        "side {j} twist must be supported on marked points and infinity"
                    )));
                }
            }
        }
        Ok(GluedSheaf { side1, side2, glue })
    }

    /// The dualizing sheaf `ω_C`: sides `ω_j(Δ)`, glue `(−1, …, −1)`.
    pub fn omega(curve: &NodalCurve) -> Self {
        GluedSheaf {
            side1: curve.comp(1).delta_divisor(1),
            side2: curve.comp(2).delta_divisor(1),
            glue: vec![-Rat::one(); curve.delta()],
        }
    }

    /// `L_{π,i}` with the reference sides `L_{i,j} = ω_j((1 + (−1)^{i−j}ℓ_i)Δ)`.
    pub fn l_pi(curve: &NodalCurve, i: usize, glue: Vec<Rat>) -> Result<Self> {
        let p = curve.profile();
        Self::new(
            curve,
            curve.comp(1).delta_divisor(p.l_twist(i, 1)),
            curve.comp(2).delta_divisor(p.l_twist(i, 2)),
            glue,
        )
    }

    pub fn side(&self, j: usize) -> &PlaceDivisor {
        match j {
            1 => &self.side1,
            2 => &self.side2,
            _ => panic!("side index must be 1 or 2"),
        }
    }

    /// `deg ω₁(E₁) + deg ω₂(E₂)`.
    pub fn degree(&self, curve: &NodalCurve) -> i64 {
        (1..=2)
            .map(|j| 2 * curve.comp(j).genus() as i64 - 2 + self.side(j).degree())
            .sum()
    }

    /// Same gluing class: `a_r / b_r` independent of `r` (the two per-side
    /// scalars act on the glue only through their ratio).
    pub fn same_glue_class(a: &[Rat], b: &[Rat]) -> bool {
        if a.len() != b.len() {
            return false;
        }
        let ratios: Vec<Rat> = a.iter().zip(b).map(|(x, y)| x / y).collect();
        ratios.windows(2).all(|w| w[0] == w[1])
    }

    pub fn to_json(&self, curve: &NodalCurve) -> GluedSheafJson {
        let tw = |j: usize| TwistJson {
            nodes: curve
                .comp(j)
                .marked()
                .iter()
                .map(|p| self.side(j).get(&Place::Point(p.clone())))
                .collect(),
            infinity: self.side(j).at_infinity(),
        };
        GluedSheafJson {
            side1: tw(1),
            side2: tw(2),
            glue: self.glue.iter().map(fmt_rat).collect(),
        }
    }

    pub fn from_json(curve: &NodalCurve, j: &GluedSheafJson) -> Result<Self> {
        let side = |k: usize, t: &TwistJson| -> Result<PlaceDivisor> {
            if t.nodes.len() != curve.delta() {
                return Err(Error::schema(format!(
                    "side{k}.nodes must have {} entries",
                    curve.delta()
                )));
            }
            let mut d = curve.comp(k).marked_divisor(&t.nodes);
            d.add_term(Place::Infinity, t.infinity);
            Ok(d)
        };
        let glue = j.glue.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>>>()?;
        Self::new(curve, side(1, &j.side1)?, side(2, &j.side2)?, glue)
    }
}

/// The trivialized node values of each basis element of `space`: a
/// `δ × dim` matrix with entry `(r, k) = coeff_{t^{−n_r}}(h_k·ω₀/dt)` at
/// the `r`-th marked point.
pub fn node_values(space: &SectionSpace) -> Result<RatMatrix> {
    let model = space.model();
    let delta = model.delta();
    let mut m = RatMatrix::zeros(delta, space.dim());
    for (k, h) in space.basis().iter().enumerate() {
        let s = differential_coefficient(model, h);
        for (r, p) in model.marked().iter().enumerate() {
            let place = Place::Point(p.clone());
            let n = space.twist().get(&place);
            let ser = expand_local(model, &s, &place, -n + 1)?;
            m[(r, k)] = ser.coeff(-n);
        }
    }
    Ok(m)
}

/// `s/dx` for the section `h·ω₀`: `h/y` on hyperelliptic models, `h` on
/// rational ones.
pub fn differential_coefficient(model: &ComponentModel, h: &FunctionElement) -> FunctionElement {
    if model.is_hyperelliptic() {
        let f = model.f();
        FunctionElement::new(h.q() * f, h.p().clone(), h.d() * f)
    } else {
        h.clone()
    }
}

/// `H⁰` of a glued sheaf as matched pairs, with both restriction maps.
#[derive(Clone, Debug)]
pub struct GluedSections {
    pub space1: SectionSpace,
    pub space2: SectionSpace,
    /// Each basis vector: coordinates in `space1` followed by `space2`.
    pub basis: Vec<(Vec<Rat>, Vec<Rat>)>,
    /// `ρ_{·,j}`: `dim space_j × dim H⁰` matrices.
    pub rho1: RatMatrix,
    pub rho2: RatMatrix,
}

impl GluedSections {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn rho(&self, j: usize) -> &RatMatrix {
        match j {
            1 => &self.rho1,
            2 => &self.rho2,
            _ => panic!("side index must be 1 or 2"),
        }
    }

    pub fn space(&self, j: usize) -> &SectionSpace {
        match j {
            1 => &self.space1,
            2 => &self.space2,
            _ => panic!("side index must be 1 or 2"),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "dimension": self.dim(),
            "h0_side1": self.space1.dim(),
            "h0_side2": self.space2.dim(),
            "rank_rho1": self.rho1.rank(),
            "rank_rho2": self.rho2.rank(),
            "basis": self.basis.iter().map(|(a, b)| json!({
                "side1": fmt_vec(a),
                "side2": fmt_vec(b),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Global sections: pairs with `value₁(r) = glue_r · value₂(r)`.
pub fn glued_h0(curve: &NodalCurve, sheaf: &GluedSheaf) -> Result<GluedSections> {
    if sheaf.glue.len() != curve.delta() {
        return Err(Error::precondition("glue length differs from the node count"));
    }
    let space1 = rr_space(curve.comp(1), &sheaf.side1)?;
    let space2 = rr_space(curve.comp(2), &sheaf.side2)?;
    let v1 = node_values(&space1)?;
    let v2 = node_values(&space2)?;
    let (a, b) = (space1.dim(), space2.dim());
    let delta = curve.delta();
    let mut sys = RatMatrix::zeros(delta, a + b);
    for r in 0..delta {
        for k in 0..a {
            sys[(r, k)] = v1[(r, k)].clone();
        }
        for k in 0..b {
            sys[(r, a + k)] = -(&sheaf.glue[r] * &v2[(r, k)]);
        }
    }
    let kernel = if a + b == 0 { Vec::new() } else { sys.nullspace() };
    let basis: Vec<(Vec<Rat>, Vec<Rat>)> = kernel
        .into_iter()
        .map(|v| (v[..a].to_vec(), v[a..].to_vec()))
        .collect();
    let n = basis.len();
    let mut rho1 = RatMatrix::zeros(a, n);
    let mut rho2 = RatMatrix::zeros(b, n);
    for (col, (s1, s2)) in basis.iter().enumerate() {
        for k in 0..a {
            rho1[(k, col)] = s1[k].clone();
        }
        for k in 0..b {
            rho2[(k, col)] = s2[k].clone();
        }
    }
    Ok(GluedSections {
        space1,
        space2,
        basis,
        rho1,
        rho2,
    })
}

/// `V_{π,i} = Im ρ_{π,i,i} ⊆ H⁰(L_{i,i})`, with coordinates in the basis of
/// `rr_space(C_i, (1 + ℓ_i)Δ)`.
#[derive(Clone, Debug)]
pub struct VpiSubspace {
    pub i: usize,
    pub space: SectionSpace,
    pub basis: Vec<Vec<Rat>>,
}

impl VpiSubspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn codim(&self) -> usize {
        self.space.dim() - self.dim()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "i": self.i,
            "dimension": self.dim(),
            "ambient_dimension": self.space.dim(),
            "codimension": self.codim(),
            "basis": self.basis.iter().map(|v| fmt_vec(v)).collect::<Vec<_>>(),
        })
    }
}

/// Computes `V_{π,i}` for `L_{π,i}` glued by `glue`, after checking (1.i)
/// on `C_{3−i}`. When `ℓ_i = 0`, `L_{π,i}` is `ω_C` itself, so the glue
/// must lie in the residue class.
pub fn vpi_subspace(curve: &NodalCurve, i: usize, glue: &[Rat]) -> Result<VpiSubspace> {
    let profile = curve.profile();
    let j = other(i);
    check_condition_1(curve.comp(j), i, profile)?.into_result()?;
    if profile.ell(i) == 0 && !GluedSheaf::same_glue_class(glue, &vec![-Rat::one(); glue.len()]) {
        return Err(Error::precondition(format!(
            "ell_{i} = 0: L_pi,{i} is the dualizing sheaf, so the glue must be a multiple of (-1,...,-1)"
        )));
    }
    let sheaf = GluedSheaf::l_pi(curve, i, glue.to_vec())?;
    let sec = glued_h0(curve, &sheaf)?;
    let g = profile.g() as usize;
    if sec.dim() != g {
        return Err(Error::invariant(format!(
            "h0(L_pi,{i}) = {} but Lemma 1 gives g = {g}",
            sec.dim()
        )));
    }
    let rho = sec.rho(i);
    let basis = rho.column_basis();
    if basis.len() != g {
        return Err(Error::invariant(format!(
            "rho_{i},{i} has rank {} < g = {g}; Lemma 1 says it is injective",
            basis.len()
        )));
    }
    let space = sec.space(i).clone();
    Ok(VpiSubspace { i, space, basis })
}

/// A principality witness: `φ` with `div φ = −D` when `D` has degree 0 and
/// `L(D)` is one-dimensional; `None` when `D` is not principal.
pub fn principal_witness(model: &ComponentModel, d: &PlaceDivisor) -> Result<Option<FunctionElement>> {
    if d.degree() != 0 {
        return Ok(None);
    }
    let space = rr_space(model, &d.sub(&model.canonical_divisor()))?;
    Ok(match space.dim() {
        0 => None,
        1 => Some(space.basis()[0].clone()),
        k => {
            return Err(Error::invariant(format!(
                "degree-0 divisor with h0 = {k} > 1"
            )))
        }
    })
}

/// If `ω_j(E) ≅ ω_j(E_ref)`, the leading coefficients at the nodes of the
/// witness `φ` with `div φ = E − E_ref` (the isomorphism is `s ↦ φ s`, and
/// a node value gets multiplied by the entry for that node).
pub fn side_isomorphism(
    model: &ComponentModel,
    e: &PlaceDivisor,
    e_ref: &PlaceDivisor,
) -> Result<Option<Vec<Rat>>> {
    let Some(phi) = principal_witness(model, &e_ref.sub(e))? else {
        return Ok(None);
    };
    let mut lc = Vec::with_capacity(model.delta());
    for p in model.marked() {
        let place = Place::Point(p.clone());
        let ord = e.get(&place) - e_ref.get(&place);
        let c = expand_local(model, &phi, &place, ord + 1)?.coeff(ord);
        if c.is_zero() {
            return Err(Error::invariant("principality witness has the wrong order at a node"));
        }
        lc.push(c);
    }
    Ok(Some(lc))
}

/// Outcome of a Theorem 2 test, with the restriction checks spelled out.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SmoothabilityReport {
    pub theorem: String,
    pub smoothable: bool,
    /// `restrictions[k][j−1]`: `L_k|_{C_j} ≅ L_{i,j}`.
    pub restrictions: Vec<[bool; 2]>,
    /// Glue vectors transported to the reference sides (when they match).
    pub corrected_glue: Vec<Option<Vec<String>>>,
    /// Theorem 2(b) only: the gluing-class relation.
    pub relation_holds: Option<bool>,
}

/// Compares both sides of `sheaf` with `L_{i,·}` and, when both match,
/// returns the glue transported to the reference sides.
fn reference_glue(curve: &NodalCurve, i: usize, sheaf: &GluedSheaf) -> Result<([bool; 2], Option<Vec<Rat>>)> {
    let p = curve.profile();
    let mut lcs = Vec::new();
    let mut ok = [false; 2];
    for j in 1..=2 {
        let model = curve.comp(j);
        let e_ref = model.delta_divisor(p.l_twist(i, j));
        let iso = side_isomorphism(model, sheaf.side(j), &e_ref)?;
        ok[j - 1] = iso.is_some();
        lcs.push(iso);
    }
    let corrected = match (&lcs[0], &lcs[1]) {
        (Some(l1), Some(l2)) => Some(
            sheaf
                .glue
                .iter()
                .zip(l1.iter().zip(l2))
                .map(|(c, (a, b))| c * a / b)
                .collect(),
        ),
        _ => None,
    };
    Ok((ok, corrected))
}

/// Theorem 2(a) as a report.
pub fn analyze_single(curve: &NodalCurve, i: usize, sheaf: &GluedSheaf) -> Result<SmoothabilityReport> {
    if curve.profile().ell(i) == 0 {
        return Err(Error::precondition(format!(
            "Theorem 2(a) needs ell_{i} != 0"
        )));
    }
    let (ok, corrected) = reference_glue(curve, i, sheaf)?;
    Ok(SmoothabilityReport {
        theorem: format!("2(a), i = {i}"),
        smoothable: ok[0] && ok[1],
        restrictions: vec![ok],
        corrected_glue: vec![corrected.map(|c| c.iter().map(fmt_rat).collect())],
        relation_holds: None,
    })
}

/// Theorem 2(a): `L` is a smoothable twist iff `L|_{C_j} ≅ L_{i,j}` for
/// `j = 1, 2`; the glue is unconstrained.
pub fn smoothable_single(curve: &NodalCurve, i: usize, sheaf: &GluedSheaf) -> Result<bool> {
    Ok(analyze_single(curve, i, sheaf)?.smoothable)
}

/// The exponent system deciding `c₁^{λ₂} c₂^{λ₁} ≐ (−1)^{λ₁+λ₂}` in the
/// gluing-class quotient: one unknown (the scalar), one row per node.
pub fn pair_relation_lattice(c1: &[Rat], c2: &[Rat], lambda: [u64; 2]) -> Result<ExponentLattice> {
    let sign = if (lambda[0] + lambda[1]) % 2 == 0 { Rat::one() } else { -Rat::one() };
    let (e1, e2) = (BigInt::from(lambda[1]), BigInt::from(lambda[0]));
    let mut targets = Vec::with_capacity(c1.len());
    for (a, b) in c1.iter().zip(c2) {
        targets.push(rat_pow(a, &e1)? * rat_pow(b, &e2)? * &sign);
    }
    Ok(ExponentLattice::new(vec![vec![1]; c1.len()], targets, 1))
}

/// Theorem 2(b) as a report.
pub fn analyze_pair(curve: &NodalCurve, l1: &GluedSheaf, l2: &GluedSheaf) -> Result<SmoothabilityReport> {
    let lambda = curve.profile().twist().lambda.ok_or_else(|| {
        Error::precondition("Theorem 2(b) needs ell_1 * ell_2 != 0")
    })?;
    let (ok1, c1) = reference_glue(curve, 1, l1)?;
    let (ok2, c2) = reference_glue(curve, 2, l2)?;
    let relation = match (&c1, &c2) {
        (Some(a), Some(b)) => Some(lattice_solve(&pair_relation_lattice(a, b, lambda)?)?.solvable),
        _ => None,
    };
    let fmt = |c: &Option<Vec<Rat>>| c.as_ref().map(|v| v.iter().map(fmt_rat).collect());
    Ok(SmoothabilityReport {
        theorem: "2(b)".to_string(),
        smoothable: relation == Some(true),
        restrictions: vec![ok1, ok2],
        corrected_glue: vec![fmt(&c1), fmt(&c2)],
        relation_holds: relation,
    })
}

/// Theorem 2(b): both restriction pairs match and
/// `L₁^{λ₂} L₂^{λ₁} ≅ ω^{λ₁+λ₂}`, decided on witness-corrected glues.
pub fn smoothable_pair(curve: &NodalCurve, l1: &GluedSheaf, l2: &GluedSheaf) -> Result<bool> {
    Ok(analyze_pair(curve, l1, l2)?.smoothable)
}

/// Glues `(c₁, c₂) = (u^{λ₁}, u^{−λ₂})` for `(L_{π,1}, L_{π,2})`. Then
/// `c₁^{λ₂} c₂^{λ₁} = 1` is constant over the nodes, so Theorem 2(b)'s
/// relation holds in the gluing-class quotient.
pub fn consistent_pair_glues(u: &[Rat], lambda: [u64; 2]) -> Result<(Vec<Rat>, Vec<Rat>)> {
    let c1: Vec<Rat> = u
        .iter()
        .map(|x| rat_pow(x, &BigInt::from(lambda[0])))
        .collect::<Result<_>>()?;
    let c2: Vec<Rat> = u
        .iter()
        .map(|x| rat_pow(x, &-BigInt::from(lambda[1])))
        .collect::<Result<_>>()?;
    Ok((c1, c2))
}

/// Random nonzero glue entries of height at most `h`.
pub fn random_glue<R: Rng>(rng: &mut R, delta: usize, h: i64) -> Vec<Rat> {
    (0..delta)
        .map(|_| {
            let n = rng.gen_range(1..=h.max(1));
            let d = rng.gen_range(1..=h.max(1));
            let s = if rng.gen_bool(0.5) { 1 } else { -1 };
            Rat::new((s * n).into(), d.into())
        })
        .collect()
}

/// A valid glue for `L_{π,i}`: random when `ℓ_i > 0`, a random multiple of
/// the residue class otherwise.
pub fn random_valid_glue<R: Rng>(rng: &mut R, curve: &NodalCurve, i: usize, h: i64) -> Vec<Rat> {
    if curve.profile().ell(i) == 0 {
        let c = random_glue(rng, 1, h)[0].clone();
        vec![-c; curve.delta()]
    } else {
        random_glue(rng, curve.delta(), h)
    }
}

#[cfg(test)]
mod tests;
