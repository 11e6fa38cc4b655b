//! Property tests of the exact-arithmetic building blocks.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;

use wplimit::algebra::snf::smith;
use wplimit::algebra::{Matrix, Poly};
use wplimit::chains::normalize_mu;
use wplimit::nodalglue::{lattice_solve, ExponentLattice};
use wplimit::rat::{frac, rat};
use wplimit::Rat;

/// A target `±2^a 3^b`, recorded as its exponent data (sign bit, a, b).
type Target = (bool, i64, i64);

fn target_value(t: &Target) -> Rat {
    let mag = |p: i64, e: i64| {
        let v = Rat::from_integer(BigInt::from(p).pow(e.unsigned_abs() as u32));
        if e < 0 {
            Rat::one() / v
        } else {
            v
        }
    };
    let v = mag(2, t.1) * mag(3, t.2);
    if t.0 {
        -v
    } else {
        v
    }
}

/// Brute force over k̄: the system `t^A = c` is unsolvable iff some integer
/// `y` with `yᵀA = 0` has `Π c_r^{y_r} ≠ 1`. With entries of `A` in
/// `{-1,0,1}` and at most three equations, left-kernel generators have
/// entries of size ≤ 2, so the box `[-4, 4]^m` finds any obstruction.
fn brute_force_solvable(a: &[Vec<i64>], c: &[Target]) -> bool {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut y = vec![-4i64; m];
    loop {
        let in_kernel = (0..n).all(|j| (0..m).map(|r| y[r] * a[r][j]).sum::<i64>() == 0);
        if in_kernel {
            let sign: i64 = (0..m).filter(|&r| c[r].0).map(|r| y[r]).sum();
            let e2: i64 = (0..m).map(|r| y[r] * c[r].1).sum();
            let e3: i64 = (0..m).map(|r| y[r] * c[r].2).sum();
            if sign.is_odd() || e2 != 0 || e3 != 0 {
                return false;
            }
        }
        let mut k = 0;
        while k < m && y[k] == 4 {
            y[k] = -4;
            k += 1;
        }
        if k == m {
            return true;
        }
        y[k] += 1;
    }
}

fn lattice_case() -> impl Strategy<Value = (Vec<Vec<i64>>, Vec<Target>)> {
    (1usize..=3, 1usize..=3).prop_flat_map(|(m, n)| {
        (
            prop::collection::vec(prop::collection::vec(-1i64..=1, n), m),
            prop::collection::vec((any::<bool>(), -2i64..=2, -2i64..=2), m),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn lattice_solve_matches_brute_force((a, c) in lattice_case()) {
        let n = a[0].len();
        let lat = ExponentLattice::new(a.clone(), c.iter().map(target_value).collect(), n);
        let sol = lattice_solve(&lat).unwrap();
        prop_assert_eq!(sol.solvable, brute_force_solvable(&a, &c));
        prop_assert_eq!(sol.rank, Matrix::from_rows(
            a.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
        ).rank());
        // A real witness, when reported, satisfies every equation:
        // compare signs and L-th powers of the magnitudes.
        if let Some(w) = &sol.witness {
            let l = w.iter().fold(1u32, |acc, r| acc.lcm(&r.index));
            for (row, target) in a.iter().zip(&c) {
                let mut sign = 1i64;
                let mut mag = Rat::one();
                for (t, &e) in w.iter().zip(row) {
                    if e.is_odd() && t.sign < 0 {
                        sign = -sign;
                    }
                    let p = t.radicand.clone().pow((l / t.index) as i32);
                    mag *= p.pow(e as i32);
                }
                let want = target_value(target);
                prop_assert_eq!(sign < 0, want.is_negative());
                prop_assert_eq!(mag, want.abs().pow(l as i32));
            }
        }
    }

    #[test]
    fn smith_form_is_a_unimodular_diagonalization(
        rows in (1usize..=4, 1usize..=4).prop_flat_map(|(m, n)|
            prop::collection::vec(prop::collection::vec(-6i64..=6, n), m))
    ) {
        let a = Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect());
        let s = smith(&a);
        let d = s.u.mul(&a).mul(&s.v);
        for i in 0..d.nrows() {
            for j in 0..d.ncols() {
                let want = if i == j && i < s.rank() { s.d[i].clone() } else { BigInt::zero() };
                prop_assert_eq!(&d[(i, j)], &want);
            }
        }
        for k in 1..s.rank() {
            prop_assert!((&s.d[k] % &s.d[k - 1]).is_zero());
        }
        let det_u = s.u.map(|x| Rat::from_integer(x.clone())).det();
        let det_v = s.v.map(|x| Rat::from_integer(x.clone())).det();
        prop_assert!(det_u.abs().is_one() && det_v.abs().is_one());
        let qa = a.map(|x| Rat::from_integer(x.clone()));
        prop_assert_eq!(s.rank(), qa.rank());
    }

    #[test]
    fn gcd_q_recovers_a_common_factor(
        g in prop::collection::vec(-5i64..=5, 1..4),
        p in prop::collection::vec(-5i64..=5, 1..4),
        q in prop::collection::vec(-5i64..=5, 1..4),
    ) {
        let mk = |v: &[i64]| Poly::new(v.iter().map(|&x| rat(x)).collect::<Vec<_>>());
        let (g, p, q) = (mk(&g), mk(&p), mk(&q));
        prop_assume!(!g.is_zero() && !p.is_zero() && !q.is_zero());
        let gp = &g * &p;
        let gq = &g * &q;
        let d = gp.gcd_q(&gq);
        prop_assert_eq!(&d, &gp.gcd(&gq));
        prop_assert!(d.divides(&gp) && d.divides(&gq) && g.divides(&d));
    }

    #[test]
    fn interpolation_reproduces_the_polynomial(
        coeffs in prop::collection::vec(-20i64..=20, 1..7),
        den in 1i64..=5,
    ) {
        let p = Poly::new(coeffs.iter().map(|&c| frac(c, den)).collect::<Vec<_>>());
        let pts: Vec<(Rat, Rat)> = (0..coeffs.len() as i64)
            .map(|k| { let x = frac(2 * k - 3, 2); (x.clone(), p.eval(&x)) })
            .collect();
        prop_assert_eq!(Poly::interpolate(&pts), p);
    }

    #[test]
    fn normalize_mu_is_scale_invariant(
        mu in prop::collection::vec((1i64..=12, 1i64..=12), 1..5),
        s in (1i64..=9, 1i64..=9),
    ) {
        let q: Vec<Rat> = mu.iter().map(|&(a, b)| frac(a, b)).collect();
        let scaled: Vec<Rat> = q.iter().map(|x| x * frac(s.0, s.1)).collect();
        let n = normalize_mu(&q).unwrap();
        prop_assert_eq!(&normalize_mu(&scaled).unwrap(), &n);
        let g = n.mu.iter().fold(0u64, |acc, &m| acc.gcd(&m));
        prop_assert_eq!(g, 1);
        // proportional to the input
        let r = &q[0] / rat(n.mu[0] as i64);
        for (x, &m) in q.iter().zip(&n.mu) {
            prop_assert_eq!(x, &(&r * rat(m as i64)));
        }
        prop_assert!(n.mu.iter().all(|m| m.to_i64().unwrap() > 0));
    }
}
