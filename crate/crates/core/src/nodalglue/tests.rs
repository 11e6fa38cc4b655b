use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::curvemodel::{h0, Point};
use crate::rat::rat;

fn curve(g1: u64, g2: u64, delta: u64, seed: u64) -> NodalCurve {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    NodalCurve::random(&mut rng, &GenusProfile::new(g1, g2, delta).unwrap()).unwrap()
}

#[test]
fn omega_has_g_sections() {
    for (k, &(g1, g2, d)) in [(0, 0, 3), (1, 1, 1), (2, 3, 2), (1, 2, 2), (0, 2, 3)]
        .iter()
        .enumerate()
    {
        let c = curve(g1, g2, d, 10 + k as u64);
        let sec = glued_h0(&c, &GluedSheaf::omega(&c)).unwrap();
        assert_eq!(sec.dim() as u64, c.genus(), "profile ({g1},{g2},{d})");
        assert_eq!(GluedSheaf::omega(&c).degree(&c), 2 * c.genus() as i64 - 2);
    }
}

#[test]
fn non_residue_glue_drops_a_section() {
    let c = curve(0, 0, 3, 3);
    let sheaf = GluedSheaf::new(
        &c,
        c.comp(1).delta_divisor(1),
        c.comp(2).delta_divisor(1),
        vec![rat(-1), rat(-1), rat(2)],
    )
    .unwrap();
    assert_eq!(glued_h0(&c, &sheaf).unwrap().dim(), 1);
}

#[test]
fn lemma1_on_232() {
    let c = curve(2, 3, 2, 7);
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for i in 1..=2 {
        let glue = random_valid_glue(&mut rng, &c, i, 9);
        let sheaf = GluedSheaf::l_pi(&c, i, glue).unwrap();
        let sec = glued_h0(&c, &sheaf).unwrap();
        assert_eq!(sec.dim(), 6);
        assert_eq!(sec.rho(i).rank(), 6);
        assert!(!sec.rho(other(i)).is_zero());
        // Exactness bound of sequence (2).
        let j = other(i);
        let bound = h0(c.comp(i), &sheaf.side(i).sub(&c.comp(i).delta_divisor(1))).unwrap()
            + sec.space(j).dim();
        assert!(sec.dim() <= bound);
    }
}

#[test]
fn vpi_dimensions_232() {
    let c = curve(2, 3, 2, 7);
    let v1 = vpi_subspace(&c, 1, &[rat(3), rat(-2)]).unwrap();
    assert_eq!((v1.dim(), v1.codim()), (6, 1));
    let v2 = vpi_subspace(&c, 2, &[rat(5), rat(1)]).unwrap();
    assert_eq!((v2.dim(), v2.codim()), (6, 0));
}

#[test]
fn vpi_reports_condition_failure() {
    // Conjugate pair on the genus-3 side breaks (1.1): h0(ω(−Δ)) = 2 > 1.
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut spec = RandomModelSpec::new(3, 2);
    spec.conjugate_pairs = 1;
    let c2 = random_model(&mut rng, &spec).unwrap();
    let c1 = random_model(&mut rng, &RandomModelSpec::new(2, 2)).unwrap();
    let c = NodalCurve::new(c1, c2).unwrap();
    let err = vpi_subspace(&c, 1, &[rat(1), rat(2)]).unwrap_err();
    assert!(matches!(err, Error::Genericity { .. }), "{err:?}");
    assert_eq!(err.exit_code(), 2);
}

#[test]
fn theorem2a_single() {
    // (0,3,2): ℓ₁ = 2, C₁ rational.
    let c = curve(0, 3, 2, 21);
    let glue = vec![rat(2), rat(-7)];
    let reference = GluedSheaf::l_pi(&c, 1, glue.clone()).unwrap();
    assert!(smoothable_single(&c, 1, &reference).unwrap());

    // Side 1 twisted by div(x − a₁) = P₁ − ∞: isomorphic, witness-corrected
    // glue is glue · (x − a₁)-leading coefficients.
    let p = c.comp(1).marked().to_vec();
    let mut e1 = reference.side1.clone();
    e1.add_term(Place::Point(p[0].clone()), 1);
    e1.add_term(Place::Infinity, -1);
    let moved = GluedSheaf::new(&c, e1, reference.side2.clone(), glue.clone()).unwrap();
    let rep = analyze_single(&c, 1, &moved).unwrap();
    assert!(rep.smoothable);
    let corrected: Vec<Rat> = rep.corrected_glue[0]
        .as_ref()
        .unwrap()
        .iter()
        .map(|s| parse_rat(s).unwrap())
        .collect();
    let expect = vec![glue[0].clone(), &glue[1] * (&p[1].x - &p[0].x)];
    assert!(GluedSheaf::same_glue_class(&corrected, &expect));

    // Side 2 (genus 3) twisted by P₁ − P₂: not principal.
    let q = c.comp(2).marked().to_vec();
    let mut e2 = reference.side2.clone();
    e2.add_term(Place::Point(q[0].clone()), 1);
    e2.add_term(Place::Point(q[1].clone()), -1);
    let bad = GluedSheaf::new(&c, reference.side1.clone(), e2, glue).unwrap();
    assert!(!smoothable_single(&c, 1, &bad).unwrap());

    // ℓ₂ = 0 is outside Theorem 2(a).
    assert_eq!(smoothable_single(&c, 2, &reference).unwrap_err().exit_code(), 2);
}

#[test]
fn theorem2b_pair() {
    let c = curve(2, 2, 2, 31);
    let lambda = c.profile().twist().lambda.unwrap();
    assert_eq!(lambda, [1, 1]);
    let (g1, g2) = consistent_pair_glues(&[rat(3), rat(-5)], lambda).unwrap();
    let l1 = GluedSheaf::l_pi(&c, 1, g1.clone()).unwrap();
    let l2 = GluedSheaf::l_pi(&c, 2, g2.clone()).unwrap();
    assert!(smoothable_pair(&c, &l1, &l2).unwrap());

    // Per-side scalars do not matter.
    let scaled: Vec<Rat> = g2.iter().map(|x| x * rat(7)).collect();
    let l2s = GluedSheaf::l_pi(&c, 2, scaled).unwrap();
    assert!(smoothable_pair(&c, &l1, &l2s).unwrap());

    // Perturbing one node breaks the relation.
    let mut bad = g2.clone();
    bad[0] *= rat(2);
    let l2b = GluedSheaf::l_pi(&c, 2, bad).unwrap();
    assert!(!smoothable_pair(&c, &l1, &l2b).unwrap());
}

#[test]
fn theorem2b_invariant_under_isomorphic_sides() {
    // Conjugate pair on C₁ so that div(x − a) = P + σP − 2∞ is supported
    // on the marked points and ∞.
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut spec = RandomModelSpec::new(2, 2);
    spec.conjugate_pairs = 1;
    let c1 = random_model(&mut rng, &spec).unwrap();
    let c2 = random_model(&mut rng, &RandomModelSpec::new(2, 2)).unwrap();
    let c = NodalCurve::new(c1, c2).unwrap();
    let (g1, g2) = consistent_pair_glues(&[rat(2), rat(3)], [1, 1]).unwrap();
    let l1 = GluedSheaf::l_pi(&c, 1, g1.clone()).unwrap();
    let l2 = GluedSheaf::l_pi(&c, 2, g2).unwrap();
    assert!(smoothable_pair(&c, &l1, &l2).unwrap());
    let pts: Vec<Point> = c.comp(1).marked().to_vec();
    assert_eq!(pts[0].conjugate(), pts[1]);
    let mut e1 = l1.side1.clone();
    e1.add_term(Place::Point(pts[0].clone()), 1);
    e1.add_term(Place::Point(pts[1].clone()), 1);
    e1.add_term(Place::Infinity, -2);
    // s ↦ s/(x − a) has leading coefficient 1 at both nodes: same glue.
    let moved = GluedSheaf::new(&c, e1, l1.side2.clone(), g1).unwrap();
    assert!(smoothable_pair(&c, &moved, &l2).unwrap());
}

#[test]
fn json_round_trip() {
    let c = curve(1, 2, 2, 4);
    let back = NodalCurve::from_json(&c.to_json()).unwrap();
    assert_eq!(back, c);
    let sheaf = GluedSheaf::l_pi(&c, 1, vec![rat(1), rat(-3)]).unwrap();
    let j = sheaf.to_json(&c);
    assert_eq!(GluedSheaf::from_json(&c, &j).unwrap(), sheaf);
}
