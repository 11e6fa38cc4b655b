use super::*;
use crate::invariants::{component_count_delta2, is_v_irreducible};
use crate::rat::rat;

fn prof(a: u64, b: u64, d: u64) -> GenusProfile {
    GenusProfile::new(a, b, d).unwrap()
}

/// All `mu` with entries in `1..=max`.
fn mus(delta: u64, max: u64) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..delta {
        out = out
            .into_iter()
            .flat_map(|v| {
                (1..=max).map(move |m| {
                    let mut w = v.clone();
                    w.push(m);
                    w
                })
            })
            .collect();
    }
    out
}

#[test]
fn build_chain_examples() {
    let p = prof(2, 3, 2);
    let c = build_chain(&p, &[1, 1]).unwrap();
    assert_eq!(c.components().len(), 2);
    assert_eq!(c.intersection(0, 1), 2);
    let c = build_chain(&p, &[2, 1]).unwrap();
    assert_eq!(c.components().len(), 3);
    assert_eq!(c.arithmetic_genus(), 6);
    let c = build_chain(&p, &[3, 3]).unwrap();
    assert_eq!(c.components().len(), 6);
    assert_eq!(c.arithmetic_genus(), 6);
    assert!(build_chain(&p, &[0, 1]).is_err());
    assert!(build_chain(&p, &[1]).is_err());
}

#[test]
fn genus_and_degree_conservation_grid() {
    for g1 in 0..=3 {
        for g2 in 0..=3 {
            for delta in 1..=3 {
                let Ok(p) = GenusProfile::new(g1, g2, delta) else { continue };
                for mu in mus(delta, 3) {
                    let c = build_chain(&p, &mu).unwrap();
                    assert_eq!(c.arithmetic_genus(), p.g() as i64);
                    let n = c.components().len();
                    for seed in 0..4i64 {
                        let lambda = TwistTuple {
                            weights: (0..n as i64).map(|k| (k * 7 + seed * 3) % 5 - 2).collect(),
                        };
                        let d = twist_degrees(&c, &lambda).unwrap();
                        assert_eq!(d.iter().sum::<i64>(), 2 * p.g() as i64 - 2);
                        assert_eq!(twist_degrees(&c, &lambda.shifted(seed + 1)).unwrap(), d);
                    }
                }
            }
        }
    }
}

#[test]
fn twist_degree_examples() {
    let p = prof(2, 3, 2);
    let c = build_chain(&p, &[1, 1]).unwrap();
    let zero = twist_degrees(&c, &TwistTuple::zero(&c)).unwrap();
    assert_eq!(zero, vec![4, 6]);
    let mut ind = TwistTuple::zero(&c);
    ind.set(&c, ComponentId::Main(1), 1);
    assert_eq!(twist_degrees(&c, &ind).unwrap(), vec![2, 8]);
}

#[test]
fn lambda_constraints() {
    let p = prof(2, 3, 2);
    let c = build_chain(&p, &[2, 1]).unwrap();
    let zero = TwistTuple::zero(&c);
    assert!(validate_lambda_constraints(&c, 1, &zero).ok);
    let mut bad = zero.clone();
    bad.set(&c, ComponentId::Main(1), 1);
    let chk = validate_lambda_constraints(&c, 1, &bad);
    assert!(!chk.ok);
    assert!(chk.violations[0].contains("λ_{1,C_1}=0"));
    let mut big = zero.clone();
    big.set(&c, ComponentId::Chain { node: 1, pos: 1 }, 4);
    assert!(!validate_lambda_constraints(&c, 1, &big).ok);
    big.set(&c, ComponentId::Chain { node: 1, pos: 1 }, 3);
    assert!(validate_lambda_constraints(&c, 1, &big).ok);
}

#[test]
fn normalize_mu_examples() {
    assert_eq!(normalize_mu(&[rat(2), rat(4)]).unwrap().mu, vec![1, 2]);
    let half = Rat::new(1.into(), 2.into());
    let third = Rat::new(1.into(), 3.into());
    assert_eq!(normalize_mu(&[half, third]).unwrap().mu, vec![3, 2]);
    assert_eq!(normalize_mu(&[rat(5), rat(5), rat(5)]).unwrap().mu, vec![1, 1, 1]);
    assert!(normalize_mu(&[rat(0), rat(1)]).is_err());
    for mu in mus(3, 4) {
        let q: Vec<Rat> = mu.iter().map(|&m| rat(m as i64)).collect();
        let n = normalize_mu(&q).unwrap();
        let again: Vec<Rat> = n.mu.iter().map(|&m| rat(m as i64)).collect();
        assert_eq!(normalize_mu(&again).unwrap(), n);
        for t in [2, 3, 7] {
            let scaled: Vec<Rat> = q.iter().map(|m| m * rat(t)).collect();
            assert_eq!(normalize_mu(&scaled).unwrap(), n);
        }
    }
}

#[test]
fn feasible_search_contains_section1_twist() {
    for (g1, g2, delta) in [(2, 3, 2), (1, 2, 2), (0, 0, 3), (2, 2, 3), (3, 1, 2)] {
        let p = prof(g1, g2, delta);
        let c = build_chain(&p, &vec![1; delta as usize]).unwrap();
        for i in 1..=2 {
            let res = feasible_lambda_search(&c, i, 1_000_000).unwrap();
            let mut expect = TwistTuple::zero(&c);
            expect.set(&c, ComponentId::Main(other(i)), p.ell(i) as i64);
            assert!(res.tuples.contains(&expect), "profile ({g1},{g2},{delta}) i={i}");
            let d = twist_degrees(&c, &expect).unwrap();
            assert_eq!(d[i - 1], p.deg_l(i, i));
            assert_eq!(d[other(i) - 1], p.deg_l(i, other(i)));
            assert!(res.tuples.iter().all(|t| t.weights[i - 1] == 0));
        }
    }
}

#[test]
fn feasible_search_on_chain_and_budget() {
    let p = prof(2, 3, 2);
    let c = build_chain(&p, &[2, 1]).unwrap();
    let res = feasible_lambda_search(&c, 1, 1000).unwrap();
    assert!(!res.tuples.is_empty());
    assert!(res.to_json(&c)["uniqueness_certified"] == false);
    let err = feasible_lambda_search(&c, 1, 3).unwrap_err();
    assert_eq!(err.exit_code(), 2);
}

#[test]
fn component_count_and_irreducibility() {
    // count = 1 ⇔ g₁ = g₂ = 1, except for (0,1,2)/(1,0,2) where the
    // printed formula also yields 1 (see the decisions ledger).
    for g1 in 0..=6 {
        for g2 in 0..=6 {
            let p = prof(g1, g2, 2);
            let count = component_count_delta2(&p).unwrap();
            let exceptional = g1.min(g2) == 0 && g1.max(g2) == 1;
            if !exceptional {
                assert_eq!(count == 1, is_v_irreducible(&p), "({g1},{g2})");
            } else {
                assert_eq!(count, 1);
            }
        }
    }
}

#[test]
fn component_ids_round_trip() {
    let p = prof(1, 1, 3);
    let c = build_chain(&p, &[3, 1, 2]).unwrap();
    for id in c.components() {
        assert_eq!(id.to_string().parse::<ComponentId>().unwrap(), *id);
    }
    let mut map = BTreeMap::new();
    map.insert("E1.2".to_string(), 2);
    map.insert("C2".to_string(), 1);
    let t = TwistTuple::from_map(&c, &map).unwrap();
    assert_eq!(t.get(&c, ComponentId::Chain { node: 1, pos: 2 }), 2);
    map.insert("E2.1".to_string(), 1);
    assert_eq!(TwistTuple::from_map(&c, &map).unwrap_err().exit_code(), 3);
}
