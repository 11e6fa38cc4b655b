//! The property suite behind `wplimit selftest`. Each check is a public
//! function so the acceptance tests can run it at full scale; a check never
//! panics on a failing case but records it.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use super::{Command, Problem, Report};
use crate::chains::{build_chain, normalize_mu, twist_degrees, TwistTuple};
use crate::curvemodel::{
    check_condition_1, check_condition_3, check_condition_5, compositions, h0, random_model,
    Place, RandomModelSpec,
};
use crate::error::{Error, Result};
use crate::grassmann::{
    condition3_via_plucker, membership_pair, membership_single, orbit_descriptor_pair,
    orbit_descriptor_single,
};
use crate::invariants::{
    component_count_delta2, corollary5_delta_coefficient, is_v_irreducible, other,
    total_limit_degree, GenusProfile,
};
use crate::nodalglue::{
    consistent_pair_glues, glued_h0, random_glue, random_valid_glue, vpi_subspace, GluedSheaf,
    NodalCurve,
};
use crate::ramification::{corollary5_divisor, gap_weight, ram_divisor, theorem4_check, LinearSystem};
use crate::rat::rat;
use crate::Rat;

/// Default number of instances per randomized check.
pub const DEFAULT_SIZE: u64 = 3;

/// Outcome of one property check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    /// Acceptance criterion number in the specification.
    pub criterion: u32,
    pub cases: u64,
    pub failures: Vec<String>,
    /// Cases in which a paper condition legitimately failed (engineered
    /// genericity failures); only the condition-equivalence check sets it.
    pub condition_failures: u64,
}

impl CheckResult {
    fn new(name: &'static str, criterion: u32) -> Self {
        CheckResult {
            name,
            criterion,
            cases: 0,
            failures: Vec::new(),
            condition_failures: 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Runs one case, recording an error or a `false` outcome as a failure.
    fn case(&mut self, label: impl FnOnce() -> String, f: impl FnOnce() -> Result<bool>) {
        self.cases += 1;
        match f() {
            Ok(true) => {}
            Ok(false) => self.failures.push(label()),
            Err(e) => self.failures.push(format!("{}: {e}", label())),
        }
    }
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn prof(t: (u64, u64, u64)) -> GenusProfile {
    GenusProfile::new(t.0, t.1, t.2).expect("semi-stable profile")
}

/// Criterion 1: for all semi-stable profiles with `g₁, g₂, δ ≤ 6`:
/// `0 ≤ m_i < δ`, `gcd(λ₁, λ₂) = 1` and the Plücker total-degree identity.
pub fn check_invariant_grid() -> CheckResult {
    use num_integer::Integer;
    let mut out = CheckResult::new("invariant-grid", 1);
    for g1 in 0..=6 {
        for g2 in 0..=6 {
            for delta in 1..=6 {
                let Ok(p) = GenusProfile::new(g1, g2, delta) else { continue };
                out.case(
                    || format!("({g1},{g2},{delta})"),
                    || {
                        let t = p.twist();
                        let m_ok = t.m.iter().all(|&m| m < delta);
                        let coprime = t.lambda.is_none_or(|l| l[0].gcd(&l[1]) == 1);
                        let total = total_limit_degree(&p)?;
                        let g = p.g() as i64;
                        Ok(m_ok && coprime && total == g * g * g - g)
                    },
                );
            }
        }
    }
    out
}

/// Criterion 2: `h⁰(D) − h⁰(K − D) = deg D − γ + 1` for random divisors
/// supported on the marked points and `∞` of random models (`γ ≤ 3`, `δ ≤ 4`).
pub fn check_riemann_roch(seed: u64, n: u64) -> CheckResult {
    let mut out = CheckResult::new("riemann-roch", 2);
    let mut rng = rng_for(seed, 2);
    for k in 0..n {
        let gamma = rng.gen_range(0..=3u64);
        let delta = rng.gen_range(1..=4usize);
        let model = match random_model(&mut rng, &RandomModelSpec::new(gamma, delta)) {
            Ok(m) => m,
            Err(e) => {
                out.cases += 1;
                out.failures.push(format!("case {k}: model generation: {e}"));
                continue;
            }
        };
        let coeffs: Vec<i64> = (0..delta).map(|_| rng.gen_range(-4..=4)).collect();
        let at_inf = rng.gen_range(-6..=6);
        out.case(
            || format!("case {k}: genus {gamma}, D = {coeffs:?} + {at_inf}∞"),
            || {
                let mut d = model.marked_divisor(&coeffs);
                d.add_term(Place::Infinity, at_inf);
                let k0 = model.canonical_divisor();
                let h_d = h0(&model, &d.sub(&k0))? as i64;
                let h_kd = h0(&model, &d.neg())? as i64;
                Ok(h_d - h_kd == d.degree() - gamma as i64 + 1)
            },
        );
    }
    out
}

/// Small profiles with random models available (δ ≤ 2γ + 2 on hyperelliptic sides).
const LEMMA1_PROFILES: [(u64, u64, u64); 10] = [
    (0, 0, 3),
    (1, 1, 1),
    (1, 2, 2),
    (2, 1, 2),
    (0, 2, 3),
    (1, 1, 3),
    (2, 2, 2),
    (0, 3, 2),
    (2, 3, 2),
    (1, 2, 3),
];

/// Criterion 3: on models passing (1.i), `h⁰(L_{π,i}) = g`, `ρ_{i,i}`
/// injective and `ρ_{i,3−i} ≠ 0`.
pub fn check_lemma1(seed: u64, n: u64) -> CheckResult {
    let mut out = CheckResult::new("lemma1", 3);
    let mut rng = rng_for(seed, 3);
    let mut k = 0;
    let mut attempts = 0;
    while k < n {
        attempts += 1;
        if attempts > 20 * n + 20 {
            out.failures.push("could not draw enough models passing (1.i)".into());
            break;
        }
        let p = prof(*LEMMA1_PROFILES.choose(&mut rng).expect("nonempty"));
        let i = rng.gen_range(1..=2usize);
        let Ok(curve) = NodalCurve::random(&mut rng, &p) else { continue };
        match check_condition_1(curve.comp(other(i)), i, &p) {
            Ok(r) if r.holds => {}
            _ => continue,
        }
        k += 1;
        let glue = random_valid_glue(&mut rng, &curve, i, 9);
        out.case(
            || format!("case {k}: profile ({},{},{}), i = {i}", p.g1, p.g2, p.delta),
            || {
                let sheaf = GluedSheaf::l_pi(&curve, i, glue)?;
                let sec = glued_h0(&curve, &sheaf)?;
                Ok(sec.dim() as u64 == p.g()
                    && sec.rho(i).rank() == sec.dim()
                    && !sec.rho(other(i)).is_zero())
            },
        );
    }
    out
}

/// Profiles and indices with `ℓ_i > 0` and `m_i > 0`, where (3.i) is a
/// genuine condition and has a Plücker form. The other side has genus ≥ 1
/// and δ ≥ 2, so conjugate pairs can be engineered.
const CONDITION3_CASES: [((u64, u64, u64), usize); 8] = [
    ((2, 3, 2), 1),
    ((1, 2, 3), 1),
    ((1, 2, 3), 2),
    ((2, 2, 3), 1),
    ((2, 2, 3), 2),
    ((0, 3, 2), 1),
    ((3, 1, 2), 2),
    ((1, 1, 2), 1),
];

/// A curve for `p` whose side `C_{3−i}` carries one conjugate pair.
fn engineered_curve(rng: &mut ChaCha8Rng, p: &GenusProfile, i: usize) -> Result<NodalCurve> {
    let d = p.delta as usize;
    let j = other(i);
    let mut spec_j = RandomModelSpec::new(p.genus(j), d);
    spec_j.conjugate_pairs = 1;
    let cj = random_model(rng, &spec_j)?;
    let ci = random_model(rng, &RandomModelSpec::new(p.genus(i), d))?;
    if i == 1 {
        NodalCurve::new(ci, cj)
    } else {
        NodalCurve::new(cj, ci)
    }
}

/// Criterion 4: `check_condition_3` agrees with `condition3_via_plucker`
/// and `(5.i) ⇒ (3.i) ⇒ (1.i)`, on generic and engineered instances.
pub fn check_condition_equivalence(seed: u64, n: u64) -> CheckResult {
    let mut out = CheckResult::new("condition-equivalence", 4);
    let mut rng = rng_for(seed, 4);
    let mut detected = 0;
    for k in 0..n {
        let (t, i) = *CONDITION3_CASES.choose(&mut rng).expect("nonempty");
        let p = prof(t);
        let engineered = k % 2 == 1;
        let curve = if engineered {
            engineered_curve(&mut rng, &p, i)
        } else {
            NodalCurve::random(&mut rng, &p)
        };
        out.case(
            || format!("case {k}: profile {t:?}, i = {i}, engineered = {engineered}"),
            || {
                let curve = curve?;
                let model = curve.comp(other(i));
                let c1 = check_condition_1(model, i, &p)?.holds;
                let c3 = check_condition_3(model, i, &p)?.holds;
                let c5 = check_condition_5(model, i, &p, None)?.holds;
                let pl = condition3_via_plucker(&curve, i)?;
                if !c3 {
                    detected += 1;
                }
                Ok(pl == c3 && (!c5 || c3) && (!c3 || c1))
            },
        );
    }
    out.condition_failures = detected;
    out
}

/// Ramification of `sys` checked against the gap-sequence oracle at every
/// rational point of its support (criterion 9).
fn gap_oracle(sys: &LinearSystem) -> Result<bool> {
    let ram = ram_divisor(sys)?;
    for (place, mult) in ram.divisor.terms() {
        if let Place::Point(_) = place {
            if gap_weight(sys, place)? != mult {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Criteria 5 and 9: equation (4) and `W_ν` agree with total `g³ − g`,
/// Corollary 5 holds where it applies, and every rational support point
/// passes the gap oracle.
pub fn check_theorem4(seed: u64, profiles: &[(u64, u64, u64)]) -> CheckResult {
    let mut out = CheckResult::new("theorem4", 5);
    let mut rng = rng_for(seed, 5);
    for &t in profiles {
        let p = prof(t);
        let curve = NodalCurve::random(&mut rng, &p);
        let glues: Vec<Vec<Rat>> = match &curve {
            Ok(c) => (1..=2).map(|i| random_valid_glue(&mut rng, c, i, 9)).collect(),
            Err(_) => Vec::new(),
        };
        out.case(
            || format!("profile {t:?}"),
            || {
                let curve = curve?;
                let g = p.g() as i64;
                let mut sys = Vec::new();
                for i in 1..=2 {
                    let v = vpi_subspace(&curve, i, &glues[i - 1])?;
                    sys.push(LinearSystem::from_coords(&v.space, &v.basis)?);
                }
                let check = theorem4_check(&curve, &sys[0], &sys[1])?;
                let mut ok = check.agree
                    && check.via_eq4.total_degree == g * g * g - g
                    && check.via_wnu.total_degree == g * g * g - g;
                for (i, s) in sys.iter().enumerate() {
                    let k = p.genus(other(i + 1)) as i64 - p.ell(i + 1) as i64;
                    let wide = s.widen(&curve.comp(i + 1).delta_divisor(k))?;
                    ok &= gap_oracle(s)? && gap_oracle(&wide)?;
                }
                if let Ok(coeff) = corollary5_delta_coefficient(&p) {
                    let d = corollary5_divisor(&curve)?;
                    ok &= d.delta_coefficient == coeff && d.total_degree == g * g * g - g;
                }
                Ok(ok)
            },
        );
    }
    out
}

/// Profiles for the Theorem 3 dimension checks.
const THEOREM3_PROFILES: [(u64, u64, u64); 8] = [
    (2, 3, 2),
    (1, 2, 3),
    (2, 2, 3),
    (1, 1, 2),
    (0, 3, 2),
    (3, 1, 2),
    (2, 2, 2),
    (0, 0, 3),
];

/// Criterion 6: orbit dimensions `δ − 1` (`dim D = δ`, `dim Z = 1` for
/// pairs) when `δ ∤ g_{3−i}`, singletons otherwise.
pub fn check_theorem3(seed: u64) -> CheckResult {
    let mut out = CheckResult::new("theorem3-dimensions", 6);
    let mut rng = rng_for(seed, 6);
    for t in THEOREM3_PROFILES {
        let p = prof(t);
        let curve = NodalCurve::random(&mut rng, &p);
        out.case(
            || format!("profile {t:?}"),
            || {
                let curve = curve?;
                let delta = p.delta as usize;
                let mut ok = true;
                for i in 1..=2 {
                    let d = orbit_descriptor_single(&curve, i)?;
                    ok &= if p.m(i) > 0 {
                        d.kind == "orbit" && d.dimension == delta - 1
                    } else {
                        d.kind == "singleton" && d.dimension == 0
                    };
                }
                let pair = orbit_descriptor_pair(&curve)?;
                if p.twist().lambda.is_some() && p.m(1) + p.m(2) > 0 {
                    ok &= pair.dim_d == Some(delta)
                        && pair.dim_z == Some(1)
                        && pair.dimension == delta - 1;
                }
                Ok(ok)
            },
        );
    }
    out
}

/// Profiles with `m₁, m₂ > 0` and `ℓ₁ℓ₂ ≠ 0` for pair membership.
const PAIR_PROFILES: [(u64, u64, u64); 3] = [(1, 2, 3), (2, 2, 3), (1, 1, 2)];

/// Criterion 7: `V_{π,i}` of a random glue is a member of `Ṽ_i` with the
/// glue recovered up to a scalar (`t = c` for `i = 1`, `t = c⁻¹` for
/// `i = 2`); Theorem 2(b) pairs pass `membership_pair`, perturbed ones fail.
pub fn check_membership(seed: u64, n: u64) -> CheckResult {
    let mut out = CheckResult::new("membership-round-trip", 7);
    let mut rng = rng_for(seed, 7);
    for k in 0..n {
        let (t, i) = *CONDITION3_CASES.choose(&mut rng).expect("nonempty");
        let p = prof(t);
        let curve = NodalCurve::random(&mut rng, &p);
        let glue = random_glue(&mut rng, p.delta as usize, 9);
        out.case(
            || format!("single {k}: profile {t:?}, i = {i}"),
            || {
                let curve = curve?;
                let v = vpi_subspace(&curve, i, &glue)?;
                let m = membership_single(&curve, i, &v.basis)?;
                let Some(w) = m.rational_witness() else { return Ok(false) };
                let expect: Vec<Rat> = if i == 1 {
                    glue.clone()
                } else {
                    glue.iter().map(|c| rat(1) / c).collect()
                };
                Ok(m.member && GluedSheaf::same_glue_class(&w, &expect))
            },
        );
    }
    for k in 0..n.div_ceil(3) {
        let t = *PAIR_PROFILES.choose(&mut rng).expect("nonempty");
        let p = prof(t);
        let curve = NodalCurve::random(&mut rng, &p);
        let u = random_glue(&mut rng, p.delta as usize, 5);
        let node = rng.gen_range(0..p.delta as usize);
        out.case(
            || format!("pair {k}: profile {t:?}"),
            || {
                let curve = curve?;
                let lambda = p.twist().lambda.ok_or_else(|| Error::invariant("lambda"))?;
                let (g1, g2) = consistent_pair_glues(&u, lambda)?;
                let v1 = vpi_subspace(&curve, 1, &g1)?;
                let v2 = vpi_subspace(&curve, 2, &g2)?;
                let good = membership_pair(&curve, &v1.basis, &v2.basis)?.member;
                let mut bad = g2.clone();
                bad[node] *= rat(2);
                let v2b = vpi_subspace(&curve, 2, &bad)?;
                let rejected = !membership_pair(&curve, &v1.basis, &v2b.basis)?.member;
                Ok(good && rejected)
            },
        );
    }
    out
}

/// Criterion 8: genus preservation and degree conservation over all `μ`
/// with entries ≤ 3 and `δ ≤ 3`, `normalize_mu` scale invariance, and the
/// `δ = 2` component count against the irreducibility criterion.
pub fn check_chains() -> CheckResult {
    let mut out = CheckResult::new("chain-bookkeeping", 8);
    for g1 in 0..=3 {
        for g2 in 0..=3 {
            for delta in 1..=3u64 {
                let Ok(p) = GenusProfile::new(g1, g2, delta) else { continue };
                for mu in compositions(3 * delta, delta as usize) {
                    if mu.iter().any(|&m| m == 0 || m > 3) {
                        continue;
                    }
                    out.case(
                        || format!("({g1},{g2},{delta}) mu = {mu:?}"),
                        || {
                            let c = build_chain(&p, &mu)?;
                            let n = c.components().len() as i64;
                            let mut ok = c.arithmetic_genus() == p.g() as i64;
                            for s in 0..3i64 {
                                let lam = TwistTuple {
                                    weights: (0..n).map(|k| (k * 5 + s * 7) % 4 - 1).collect(),
                                };
                                let d = twist_degrees(&c, &lam)?;
                                ok &= d.iter().sum::<i64>() == 2 * p.g() as i64 - 2;
                                ok &= twist_degrees(&c, &lam.shifted(s + 2))? == d;
                            }
                            let q: Vec<Rat> = mu.iter().map(|&m| rat(m as i64)).collect();
                            let base = normalize_mu(&q)?;
                            for t in [2, 3, 7] {
                                let scaled: Vec<Rat> = q.iter().map(|m| m * rat(t)).collect();
                                ok &= normalize_mu(&scaled)? == base;
                            }
                            Ok(ok)
                        },
                    );
                }
            }
        }
    }
    for g1 in 0..=6 {
        for g2 in 0..=6 {
            let p = prof((g1, g2, 2));
            out.case(
                || format!("component count ({g1},{g2},2)"),
                || {
                    let count = component_count_delta2(&p)?;
                    // (0,1,2) and (1,0,2) also give count 1; see the ledger.
                    let exceptional = g1.min(g2) == 0 && g1.max(g2) == 1;
                    Ok(exceptional || (count == 1) == is_v_irreducible(&p))
                },
            );
        }
    }
    out
}

/// Runs every check at scale `size` (`0` skips them all: a vacuous pass).
pub fn run_suite(seed: u64, size: u64, mutate: Option<&str>) -> Vec<CheckResult> {
    if size == 0 {
        return Vec::new();
    }
    let mut checks = vec![
        check_invariant_grid(),
        check_riemann_roch(seed, size),
        check_lemma1(seed, size),
        check_condition_equivalence(seed, size),
        check_theorem4(seed, &[(0, 0, 3), (1, 2, 2)]),
        check_theorem3(seed),
        check_membership(seed, size),
        check_chains(),
    ];
    if let Some(name) = mutate {
        for c in checks.iter_mut().filter(|c| c.name == name || name == "all") {
            c.failures.push("injected mutation".into());
        }
    }
    checks
}

/// Names of the checks in [`run_suite`].
pub const CHECK_NAMES: [&str; 8] = [
    "invariant-grid",
    "riemann-roch",
    "lemma1",
    "condition-equivalence",
    "theorem4",
    "theorem3-dimensions",
    "membership-round-trip",
    "chain-bookkeeping",
];

pub fn cmd_selftest(problem: &Problem) -> Result<Report> {
    let size = problem.spec.size.unwrap_or(DEFAULT_SIZE);
    if let Some(m) = &problem.mutate {
        if m != "all" && !CHECK_NAMES.contains(&m.as_str()) {
            return Err(Error::schema(format!(
                "unknown check {m:?} for mutation (known: {})",
                CHECK_NAMES.join(", ")
            )));
        }
    }
    let checks = run_suite(problem.seed, size, problem.mutate.as_deref());
    let failed: Vec<&str> = checks.iter().filter(|c| !c.passed()).map(|c| c.name).collect();
    let mut rep = Report::ok(
        Command::Selftest,
        &["acceptance criteria 1-9 (reduced scale)"],
        json!({
            "seed": problem.seed,
            "size": size,
            "checks": checks.iter().map(|c| json!({
                "name": c.name,
                "criterion": c.criterion,
                "cases": c.cases,
                "passed": c.passed(),
                "failures": c.failures,
            })).collect::<Vec<_>>(),
            "failed": failed,
            "all_passed": failed.is_empty(),
        }),
    );
    if !failed.is_empty() {
        rep.exit_code = 4;
    }
    Ok(rep)
}
