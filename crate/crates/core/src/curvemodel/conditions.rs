//! Genericity conditions (1.i), (3.i) and (5.i) of the paper, checked on
//! the model playing the role of `C_{3−i}`.

use serde::Serialize;

use crate::curvemodel::{h0, ComponentModel};
use crate::error::{Error, Result};
use crate::invariants::{expected_h0_twisted_dualizing, other, GenusProfile};

/// Witness of a failing condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// (1.i): the first `n` with the wrong `h⁰(ω(−nΔ))`.
    N(u64),
    /// (3.i): marked-point indices of `I`.
    Subset(Vec<usize>),
    /// (5.i): multiplicities of `D` on the marked points.
    Composition(Vec<u64>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    /// E.g. `"(1.1)"`.
    pub condition: String,
    pub holds: bool,
    pub witness: Option<Witness>,
    /// `h⁰` observed at the witness.
    pub observed_h0: Option<usize>,
    /// Number of divisors tested.
    pub cases: usize,
    pub warnings: Vec<String>,
}

impl ConditionReport {
    fn new(condition: String) -> Self {
        ConditionReport {
            condition,
            holds: true,
            witness: None,
            observed_h0: None,
            cases: 0,
            warnings: Vec::new(),
        }
    }

    fn fail(mut self, w: Witness, h: usize) -> Self {
        self.holds = false;
        self.witness = Some(w);
        self.observed_h0 = Some(h);
        self
    }

    /// Converts a failure into a genericity error.
    pub fn into_result(self) -> Result<Self> {
        if self.holds {
            Ok(self)
        } else {
            Err(Error::Genericity {
                condition: self.condition.clone(),
                witness: format!(
                    "{} (observed h0 = {})",
                    serde_json::to_string(&self.witness).unwrap_or_default(),
                    self.observed_h0.unwrap_or_default()
                ),
            })
        }
    }
}

fn check_role(model: &ComponentModel, i: usize, profile: &GenusProfile) -> Result<()> {
    let j = other(i);
    if model.genus() != profile.genus(j) {
        return Err(Error::precondition(format!(
            "conditions (*.{i}) concern C_{j} of genus {}, but the model has genus {}",
            profile.genus(j),
            model.genus()
        )));
    }
    if model.delta() as u64 != profile.delta {
        return Err(Error::precondition(format!(
            "model has {} marked points, profile has delta = {}",
            model.delta(),
            profile.delta
        )));
    }
    Ok(())
}

/// (1.i): `h⁰(ω_{3−i}(−nΔ)) = max(g_{3−i} − nδ, 0)` for `n = 0, …, ℓ_i`
/// (beyond `ℓ_i` both sides are 0 by monotonicity).
pub fn check_condition_1(
    model: &ComponentModel,
    i: usize,
    profile: &GenusProfile,
) -> Result<ConditionReport> {
    check_role(model, i, profile)?;
    let mut rep = ConditionReport::new(format!("(1.{i})"));
    for n in 0..=profile.ell(i) {
        rep.cases += 1;
        let h = h0(model, &model.delta_divisor(-(n as i64)))?;
        if h as u64 != expected_h0_twisted_dualizing(profile, i, n) {
            return Ok(rep.fail(Witness::N(n), h));
        }
    }
    Ok(rep)
}

/// (3.i): `h⁰(ω_{3−i}(−ℓ_iΔ + I)) = 0` for every reduced `I < Δ` of degree `m_i`.
pub fn check_condition_3(
    model: &ComponentModel,
    i: usize,
    profile: &GenusProfile,
) -> Result<ConditionReport> {
    check_role(model, i, profile)?;
    let mut rep = ConditionReport::new(format!("(3.{i})"));
    let delta = profile.delta as usize;
    let ell = profile.ell(i) as i64;
    for subset in subsets(delta, profile.m(i) as usize) {
        rep.cases += 1;
        let mut coeffs = vec![-ell; delta];
        for &s in &subset {
            coeffs[s] += 1;
        }
        let h = h0(model, &model.marked_divisor(&coeffs))?;
        if h != 0 {
            return Ok(rep.fail(Witness::Subset(subset), h));
        }
    }
    Ok(rep)
}

/// (5.i): `h⁰(ω_{3−i}(−D)) = 0` for every effective `D` on `Δ` of degree
/// `g_{3−i}`. Stops with a warning after `budget` cases.
pub fn check_condition_5(
    model: &ComponentModel,
    i: usize,
    profile: &GenusProfile,
    budget: Option<usize>,
) -> Result<ConditionReport> {
    check_role(model, i, profile)?;
    let mut rep = ConditionReport::new(format!("(5.{i})"));
    let comps = compositions(profile.genus(other(i)), profile.delta as usize);
    for comp in comps {
        if budget.is_some_and(|b| rep.cases >= b) {
            rep.warnings.push(format!(
                "enumeration budget {} exhausted; remaining compositions untested",
                budget.unwrap_or_default()
            ));
            break;
        }
        rep.cases += 1;
        let coeffs: Vec<i64> = comp.iter().map(|&c| -(c as i64)).collect();
        let h = h0(model, &model.marked_divisor(&coeffs))?;
        if h != 0 {
            return Ok(rep.fail(Witness::Composition(comp), h));
        }
    }
    Ok(rep)
}

/// All `k`-subsets of `0..n`, lexicographic.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// All compositions of `total` into `parts` nonnegative parts, lexicographic.
pub fn compositions(total: u64, parts: usize) -> Vec<Vec<u64>> {
    fn rec(left: u64, parts: usize, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if parts == 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for c in 0..=left {
            cur.push(c);
            rec(left - c, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts > 0 {
        rec(total, parts, &mut Vec::new(), &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerations() {
        assert_eq!(subsets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(subsets(2, 0), vec![Vec::<usize>::new()]);
        assert_eq!(compositions(2, 2), vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(compositions(3, 3).len(), 10);
    }
}
