use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::nodalglue::{random_valid_glue, vpi_subspace};
use crate::rat::rat;

fn x5p1() -> ComponentModel {
    let f = RatPoly::new(vec![rat(1), rat(0), rat(0), rat(0), rat(0), rat(1)]);
    ComponentModel::hyperelliptic(f, vec![Point::new(rat(0), rat(1))]).unwrap()
}

fn poly_elem(c: &[i64]) -> FunctionElement {
    FunctionElement::from_poly(RatPoly::new(c.iter().map(|&k| rat(k)).collect()))
}

#[test]
fn rational_wronskians() {
    let p1 = ComponentModel::rational(vec![]).unwrap();
    let e = PlaceDivisor::from_terms([(Place::Infinity, 4)]);
    let s = LinearSystem::new(&p1, e.clone(), vec![poly_elem(&[1]), poly_elem(&[0, 1])]).unwrap();
    assert_eq!(wronskian_element(&s).unwrap(), FunctionElement::one());
    let s = LinearSystem::new(
        &p1,
        e,
        vec![poly_elem(&[1]), poly_elem(&[0, 1]), poly_elem(&[0, 0, 1])],
    )
    .unwrap();
    assert_eq!(wronskian_element(&s).unwrap(), FunctionElement::constant(rat(2)));
    // The complete system |O(2)| = |ω(4∞)| on P¹ is unramified.
    assert!(ram_divisor(&s).unwrap().divisor.is_zero());
}

#[test]
fn divisors_on_genus2() {
    let m = x5p1();
    let dx = divisor_of(&FunctionElement::x(), &m).unwrap();
    assert_eq!(dx.get(&Place::Point(Point::new(rat(0), rat(1)))), 1);
    assert_eq!(dx.get(&Place::Point(Point::new(rat(0), rat(-1)))), 1);
    assert_eq!(dx.at_infinity(), -2);
    let dy = divisor_of(&FunctionElement::y(), &m).unwrap();
    assert_eq!(dy.at_infinity(), -5);
    assert_eq!(dy.get(&Place::Point(Point::new(rat(-1), rat(0)))), 1);
    assert_eq!(dy.terms().count(), 3);
    assert!(divisor_of(&FunctionElement::one(), &m).unwrap().is_zero());
    // Multiplicativity, including a split-fiber zero/pole pair.
    let f = m.f().clone();
    let a = FunctionElement::new(RatPoly::constant(rat(-1)), RatPoly::one(), RatPoly::one()); // y − 1
    let b = FunctionElement::new(RatPoly::constant(rat(1)), RatPoly::one(), RatPoly::one()); // y + 1
    let q = a.div(&b, &f).unwrap();
    let dq = divisor_of(&q, &m).unwrap();
    assert_eq!(dq, divisor_of(&a, &m).unwrap().sub(&divisor_of(&b, &m).unwrap()));
    assert_eq!(dq.get(&Place::Point(Point::new(rat(0), rat(1)))), 5);
    assert_eq!(dq.get(&Place::Point(Point::new(rat(0), rat(-1)))), -5);
}

#[test]
fn canonical_ramification_genus2() {
    let m = x5p1();
    let space = rr_space(&m, &PlaceDivisor::zero()).unwrap();
    let sys = LinearSystem::complete(&space).unwrap();
    let r = ram_divisor(&sys).unwrap();
    assert_eq!(r.total_degree, 6);
    assert_eq!(r.divisor.at_infinity(), 1);
    assert_eq!(r.divisor.get(&Place::Point(Point::new(rat(-1), rat(0)))), 1);
    assert!(r.divisor.terms().all(|(_, k)| k == 1));
    for place in [
        Place::Infinity,
        Place::Point(Point::new(rat(-1), rat(0))),
        Place::Point(Point::new(rat(0), rat(1))),
    ] {
        assert_eq!(gap_weight(&sys, &place).unwrap(), r.divisor.get(&place));
    }
}

#[test]
fn basis_change_invariance_and_gap_oracle() {
    let m = x5p1();
    let e = m.delta_divisor(3);
    let space = rr_space(&m, &e).unwrap();
    assert_eq!(space.dim(), 4);
    let sys = LinearSystem::complete(&space).unwrap();
    let r = ram_divisor(&sys).unwrap();
    let coords = vec![
        vec![rat(1), rat(2), rat(0), rat(-1)],
        vec![rat(0), rat(1), rat(3), rat(0)],
        vec![rat(0), rat(0), rat(1), rat(4)],
        vec![rat(0), rat(0), rat(0), rat(2)],
    ];
    let sys2 = LinearSystem::from_coords(&space, &coords).unwrap();
    assert_eq!(ram_divisor(&sys2).unwrap(), r);
    for (place, k) in r.divisor.terms() {
        if !matches!(place, Place::Closed { .. }) {
            assert_eq!(gap_weight(&sys, place).unwrap(), k, "{place:?}");
        }
    }
    assert_eq!(gap_weight(&sys, &Place::Point(Point::new(rat(0), rat(1)))).unwrap(), r.divisor.get(&Place::Point(Point::new(rat(0), rat(1)))));
}

#[test]
fn pencil_and_single_section() {
    let m = x5p1();
    let space = rr_space(&m, &m.delta_divisor(2)).unwrap();
    let one = LinearSystem::from_coords(&space, &[vec![rat(1); space.dim()]]).unwrap();
    let r = ram_divisor(&one).unwrap();
    assert_eq!(r.total_degree, one.sheaf_degree());
}

#[test]
fn corollary5_rational_components() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let c = NodalCurve::random(&mut rng, &GenusProfile::new(0, 0, 3).unwrap()).unwrap();
    let d = corollary5_divisor(&c).unwrap();
    assert_eq!(d.delta_coefficient, 2);
    assert_eq!(d.total_degree, 6);
    assert!(d.parts.iter().all(|p| p.is_zero()));
    assert_eq!(d.nodes, vec![2, 2, 2]);
}

#[test]
fn theorem4_on_122() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let c = NodalCurve::random(&mut rng, &GenusProfile::new(1, 2, 2).unwrap()).unwrap();
    let mut sys = Vec::new();
    for i in 1..=2 {
        let glue = random_valid_glue(&mut rng, &c, i, 5);
        let v = vpi_subspace(&c, i, &glue).unwrap();
        sys.push(LinearSystem::from_coords(&v.space, &v.basis).unwrap());
    }
    let chk = theorem4_check(&c, &sys[0], &sys[1]).unwrap();
    assert!(chk.agree);
    assert_eq!(chk.via_eq4.total_degree, 60);
}
