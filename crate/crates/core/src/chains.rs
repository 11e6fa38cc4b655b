//! §2 combinatorics: the semi-stable chain models `C_μ`, their dual graphs
//! and genus bookkeeping, the degree calculus of twists `Σ λ_E E`, the
//! printed constraints on `λ_i`, and the normalization `V_μ = V_{tμ}`.
//!
//! The true `λ_i` is not computed (the paper defers its recipe to [5]);
//! [`feasible_lambda_search`] only enumerates tuples passing necessary
//! conditions and says so in its output.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::invariants::{other, GenusProfile};
use crate::Rat;

/// A vertex of the dual graph of `C_μ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ComponentId {
    /// `C₁` or `C₂`.
    Main(usize),
    /// `E_{p,q}`: position `q ∈ 1..μ_p−1` on the chain replacing node `p`
    /// (both 1-based), counted from `C₁`.
    Chain { node: usize, pos: usize },
}

impl fmt::Display for ComponentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentId::Main(i) => write!(f, "C{i}"),
            ComponentId::Chain { node, pos } => write!(f, "E{node}.{pos}"),
        }
    }
}

impl FromStr for ComponentId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::schema(format!("bad component id {s:?} (expected C1, C2 or E<p>.<q>)"));
        if let Some(rest) = s.strip_prefix('C') {
            return match rest {
                "1" => Ok(ComponentId::Main(1)),
                "2" => Ok(ComponentId::Main(2)),
                _ => Err(bad()),
            };
        }
        let rest = s.strip_prefix('E').ok_or_else(bad)?;
        let (p, q) = rest.split_once('.').ok_or_else(bad)?;
        Ok(ComponentId::Chain {
            node: p.parse().map_err(|_| bad())?,
            pos: q.parse().map_err(|_| bad())?,
        })
    }
}

impl Serialize for ComponentId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The semi-stable model `C_μ` as an explicit dual graph.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainModel {
    profile: GenusProfile,
    mu: Vec<u64>,
    components: Vec<ComponentId>,
    genera: Vec<u64>,
    /// Dual-graph edges as index pairs into `components`, one per node of
    /// `C_μ` (intersection multiplicity 1; parallel edges allowed).
    edges: Vec<(usize, usize)>,
}

/// `C_μ` for the profile: each node `p` becomes a path
/// `C₁ — E_{p,1} — … — E_{p,μ_p−1} — C₂`.
pub fn build_chain(profile: &GenusProfile, mu: &[u64]) -> Result<ChainModel> {
    if mu.len() as u64 != profile.delta {
        return Err(Error::precondition(format!(
            "mu has {} entries, expected delta = {}",
            mu.len(),
            profile.delta
        )));
    }
    if mu.contains(&0) {
        return Err(Error::precondition("mu entries must be positive"));
    }
    let mut components = vec![ComponentId::Main(1), ComponentId::Main(2)];
    let mut genera = vec![profile.g1, profile.g2];
    let mut edges = Vec::new();
    for (p, &m) in mu.iter().enumerate() {
        let mut prev = 0;
        for q in 1..m as usize {
            components.push(ComponentId::Chain { node: p + 1, pos: q });
            genera.push(0);
            let cur = components.len() - 1;
            edges.push((prev, cur));
            prev = cur;
        }
        edges.push((prev, 1));
    }
    let chain = ChainModel {
        profile: *profile,
        mu: mu.to_vec(),
        components,
        genera,
        edges,
    };
    crate::ensure_invariant!(
        chain.arithmetic_genus() == profile.g() as i64,
        "C_mu has genus {} instead of {}",
        chain.arithmetic_genus(),
        profile.g()
    );
    Ok(chain)
}

impl ChainModel {
    pub fn profile(&self) -> &GenusProfile {
        &self.profile
    }

    pub fn mu(&self) -> &[u64] {
        &self.mu
    }

    /// `Υ_μ` in storage order: `C₁, C₂`, then the chain components node by node.
    pub fn components(&self) -> &[ComponentId] {
        &self.components
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn index(&self, id: ComponentId) -> Option<usize> {
        self.components.iter().position(|&c| c == id)
    }

    pub fn genus_of(&self, k: usize) -> u64 {
        self.genera[k]
    }

    /// `#(E_a ∩ E_b)` for distinct components.
    pub fn intersection(&self, a: usize, b: usize) -> u64 {
        self.edges
            .iter()
            .filter(|&&(x, y)| (x, y) == (a, b) || (x, y) == (b, a))
            .count() as u64
    }

    /// `#(E ∩ rest)`: the valence of `E` in the dual graph.
    pub fn valence(&self, k: usize) -> u64 {
        self.edges
            .iter()
            .map(|&(x, y)| u64::from(x == k) + u64::from(y == k))
            .sum()
    }

    /// Arithmetic genus `Σ genera + b₁(dual graph)`; the graph is connected.
    pub fn arithmetic_genus(&self) -> i64 {
        let betti = self.edges.len() as i64 - self.components.len() as i64 + 1;
        self.genera.iter().sum::<u64>() as i64 + betti
    }

    /// Components meeting `C_i` (including `C_{3−i}` across nodes with `μ_p = 1`).
    pub fn neighbors_of_main(&self, i: usize) -> Vec<usize> {
        let ci = i - 1;
        (0..self.components.len())
            .filter(|&k| k != ci && self.intersection(ci, k) > 0)
            .collect()
    }

    /// Graph distance from `C_i` to every component.
    fn distances_from_main(&self, i: usize) -> Vec<u64> {
        let n = self.components.len();
        let mut dist = vec![u64::MAX; n];
        dist[i - 1] = 0;
        let mut frontier = vec![i - 1];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &v in &frontier {
                for &(a, b) in &self.edges {
                    let w = if a == v {
                        b
                    } else if b == v {
                        a
                    } else {
                        continue;
                    };
                    if dist[w] == u64::MAX {
                        dist[w] = dist[v] + 1;
                        next.push(w);
                    }
                }
            }
            frontier = next;
        }
        dist
    }

    pub fn to_json(&self) -> Value {
        json!({
            "mu": self.mu,
            "components": self.components.iter().enumerate().map(|(k, c)| json!({
                "id": c.to_string(),
                "genus": self.genera[k],
                "valence": self.valence(k),
            })).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|&(a, b)| json!([
                self.components[a].to_string(),
                self.components[b].to_string(),
            ])).collect::<Vec<_>>(),
            "arithmetic_genus": self.arithmetic_genus(),
        })
    }
}

/// Integer weights `λ_E` on `Υ_μ`, aligned with [`ChainModel::components`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistTuple {
    pub weights: Vec<i64>,
}

impl TwistTuple {
    pub fn zero(chain: &ChainModel) -> Self {
        TwistTuple {
            weights: vec![0; chain.components.len()],
        }
    }

    /// Weights from `{component-id: weight}`; missing components get 0.
    pub fn from_map(chain: &ChainModel, map: &BTreeMap<String, i64>) -> Result<Self> {
        let mut t = Self::zero(chain);
        for (key, &w) in map {
            let id: ComponentId = key.parse()?;
            let k = chain
                .index(id)
                .ok_or_else(|| Error::schema(format!("component {id} is not in C_mu")))?;
            t.weights[k] = w;
        }
        Ok(t)
    }

    pub fn get(&self, chain: &ChainModel, id: ComponentId) -> i64 {
        chain.index(id).map_or(0, |k| self.weights[k])
    }

    pub fn set(&mut self, chain: &ChainModel, id: ComponentId, w: i64) {
        let k = chain.index(id).expect("component of C_mu");
        self.weights[k] = w;
    }

    /// Adds the same integer to every weight (`Σ E ≡ 0` makes this trivial).
    pub fn shifted(&self, c: i64) -> Self {
        TwistTuple {
            weights: self.weights.iter().map(|w| w + c).collect(),
        }
    }

    pub fn to_json(&self, chain: &ChainModel) -> Value {
        let map: BTreeMap<String, i64> = chain
            .components
            .iter()
            .zip(&self.weights)
            .map(|(c, &w)| (c.to_string(), w))
            .collect();
        json!(map)
    }
}

/// Degrees of `ω(Σ λ_{E'} E')` on every component, aligned with
/// [`ChainModel::components`]:
/// `2γ_E − 2 + #(E∩rest) + Σ_{E'≠E} λ_{E'}·#(E∩E') − λ_E·#(E∩rest)`.
pub fn twist_degrees(chain: &ChainModel, lambda: &TwistTuple) -> Result<Vec<i64>> {
    let n = chain.components.len();
    if lambda.weights.len() != n {
        return Err(Error::precondition(format!(
            "lambda has {} weights, C_mu has {n} components",
            lambda.weights.len()
        )));
    }
    let mut deg: Vec<i64> = (0..n)
        .map(|k| {
            let val = chain.valence(k) as i64;
            2 * chain.genera[k] as i64 - 2 + val - lambda.weights[k] * val
        })
        .collect();
    for &(a, b) in &chain.edges {
        deg[a] += lambda.weights[b];
        deg[b] += lambda.weights[a];
    }
    let total: i64 = deg.iter().sum();
    crate::ensure_invariant!(
        total == 2 * chain.profile.g() as i64 - 2,
        "twist degrees sum to {total}, expected 2g-2"
    );
    Ok(deg)
}

/// Result of checking the printed constraints on `λ_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LambdaCheck {
    pub ok: bool,
    pub violations: Vec<String>,
}

/// `λ_{i,C_i} = 0`, `λ_{i,E} ≥ 0` for all `E`, and `λ_{i,E} ≤ g_{3−i}` for
/// every `E` meeting `C_i`.
pub fn validate_lambda_constraints(chain: &ChainModel, i: usize, lambda: &TwistTuple) -> LambdaCheck {
    let mut violations = Vec::new();
    let ci = i - 1;
    if lambda.weights[ci] != 0 {
        violations.push(format!("λ_{{{i},C_{i}}}=0 (got {})", lambda.weights[ci]));
    }
    for (k, &w) in lambda.weights.iter().enumerate() {
        if w < 0 {
            violations.push(format!("λ_{{{i},{}}}≥0 (got {w})", chain.components[k]));
        }
    }
    let cap = chain.profile.genus(other(i)) as i64;
    for k in chain.neighbors_of_main(i) {
        if lambda.weights[k] > cap {
            violations.push(format!(
                "λ_{{{i},{}}}≤g_{}={cap} (got {})",
                chain.components[k],
                other(i),
                lambda.weights[k]
            ));
        }
    }
    LambdaCheck {
        ok: violations.is_empty(),
        violations,
    }
}

/// Primitive integer representative of a class in `𝕌`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MuClass {
    pub mu: Vec<u64>,
}

/// Clears denominators and divides by the gcd; idempotent and invariant
/// under positive scaling.
pub fn normalize_mu(mu: &[Rat]) -> Result<MuClass> {
    if mu.is_empty() {
        return Err(Error::precondition("mu must be nonempty"));
    }
    if mu.iter().any(|m| !m.is_positive()) {
        return Err(Error::precondition("mu entries must be positive"));
    }
    let den = mu.iter().fold(BigInt::one(), |acc, m| acc.lcm(m.denom()));
    let ints: Vec<BigInt> = mu.iter().map(|m| m.numer() * (&den / m.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, m| acc.gcd(m));
    let out = ints
        .iter()
        .map(|m| {
            (m / &g)
                .to_u64()
                .ok_or_else(|| Error::precondition("normalized mu does not fit in u64"))
        })
        .collect::<Result<Vec<u64>>>()?;
    Ok(MuClass { mu: out })
}

/// Output of the necessary-condition enumerator.
#[derive(Clone, Debug, PartialEq)]
pub struct FeasibleSearch {
    pub i: usize,
    pub tuples: Vec<TwistTuple>,
    pub candidates_visited: u64,
    /// Per-component upper bounds of the enumeration box.
    pub bounds: Vec<i64>,
}

impl FeasibleSearch {
    pub fn to_json(&self, chain: &ChainModel) -> Value {
        json!({
            "i": self.i,
            "heuristic": true,
            "note": "necessary-condition overapproximation of lambda_i; the paper defers the recipe to [5], so uniqueness is not certified",
            "uniqueness_certified": false,
            "candidates_visited": self.candidates_visited,
            "bounds": chain.components.iter().zip(&self.bounds)
                .map(|(c, b)| (c.to_string(), *b)).collect::<BTreeMap<_, _>>(),
            "tuples": self.tuples.iter().map(|t| json!({
                "lambda": t.to_json(chain),
                "degrees": twist_degrees(chain, t).ok().map(|d| chain.components.iter().zip(d)
                    .map(|(c, v)| (c.to_string(), v)).collect::<BTreeMap<_, _>>()),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Enumerates tuples satisfying [`validate_lambda_constraints`] and the
/// degree sanity checks: degree ≥ 0 on every component except `C_{3−i}`,
/// total `2g − 2`, and degree on `C_i` at least `2g_i − 2 + δ`.
///
/// The box is `0 ≤ λ_E ≤ dist(C_i, E)·g_{3−i}`: along a chain the degree
/// condition on the rational components makes `λ` concave, and its first
/// step is capped by `g_{3−i}`, so nothing passing the filter is missed.
/// `budget` caps the number of candidates; exceeding it is an error.
pub fn feasible_lambda_search(chain: &ChainModel, i: usize, budget: u64) -> Result<FeasibleSearch> {
    if i != 1 && i != 2 {
        return Err(Error::precondition("component index must be 1 or 2"));
    }
    let cap = chain.profile.genus(other(i)) as i64;
    let dist = chain.distances_from_main(i);
    let bounds: Vec<i64> = dist.iter().map(|&d| d as i64 * cap).collect();
    let size = bounds
        .iter()
        .try_fold(1u64, |acc, &b| acc.checked_mul(b as u64 + 1));
    match size {
        Some(s) if s <= budget => {}
        _ => {
            return Err(Error::precondition(format!(
                "budget exhausted: enumeration box has {} candidates, budget {budget}",
                size.map_or("more than 2^64".to_string(), |s| s.to_string())
            )))
        }
    }
    let min_ci = 2 * chain.profile.genus(i) as i64 - 2 + chain.profile.delta as i64;
    let cj = other(i) - 1;
    let mut tuples = Vec::new();
    let mut visited = 0u64;
    let mut cur = TwistTuple::zero(chain);
    loop {
        visited += 1;
        if validate_lambda_constraints(chain, i, &cur).ok {
            let deg = twist_degrees(chain, &cur)?;
            let nonneg = deg.iter().enumerate().all(|(k, &d)| k == cj || d >= 0);
            if nonneg && deg[i - 1] >= min_ci {
                tuples.push(cur.clone());
            }
        }
        // Odometer step over the box.
        let mut k = 0;
        loop {
            if k == bounds.len() {
                return Ok(FeasibleSearch {
                    i,
                    tuples,
                    candidates_visited: visited,
                    bounds,
                });
            }
            if cur.weights[k] < bounds[k] {
                cur.weights[k] += 1;
                break;
            }
            cur.weights[k] = 0;
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests;
