//! Integer invariants of §1–§2: genus bookkeeping, twists, sheaf degrees and
//! the closed-form coefficients of equation (4), Theorem 4 and Corollary 5.
//!
//! Component indices `i` are 1-based as in the paper; `other(i) = 3 − i`.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The triple `(g₁, g₂, δ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GenusProfile {
    pub g1: u64,
    pub g2: u64,
    pub delta: u64,
}

/// `ℓ_i = ⌈g_{3−i}/δ⌉`, `m_i = ℓ_i δ − g_{3−i}` and `λ_i = ℓ_i / gcd(ℓ₁, ℓ₂)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistData {
    pub ell: [u64; 2],
    pub m: [u64; 2],
    /// Present iff `ℓ₁ℓ₂ ≠ 0`.
    pub lambda: Option<[u64; 2]>,
}

/// Degrees and expected section counts of `L_{i,j} = ω_j((1 + (−1)^{i−j}ℓ_i)Δ)`.
/// Entry `[i-1][j-1]` refers to `L_{i,j}` on `C_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SheafDegreeTable {
    pub deg_l: [[i64; 2]; 2],
    pub h0_l: [[i64; 2]; 2],
}

/// The other component index.
pub fn other(i: usize) -> usize {
    assert!(i == 1 || i == 2, "component index must be 1 or 2");
    3 - i
}

impl GenusProfile {
    /// Validates semi-stability (`δ > 1` or `g₁g₂ > 0`, and `δ ≥ 1`).
    pub fn new(g1: u64, g2: u64, delta: u64) -> Result<Self> {
        if delta == 0 {
            return Err(Error::precondition(
                "not semi-stable: delta must be positive (δ = deg Δ ≥ 1)",
            ));
        }
        if delta <= 1 && g1 * g2 == 0 {
            return Err(Error::precondition(format!(
                "not semi-stable: need delta > 1 or g1*g2 > 0, got (g1,g2,delta)=({g1},{g2},{delta})"
            )));
        }
        Ok(GenusProfile { g1, g2, delta })
    }

    /// Arithmetic genus `g = g₁ + g₂ + δ − 1`.
    pub fn g(&self) -> u64 {
        self.g1 + self.g2 + self.delta - 1
    }

    /// Genus of `C_i`.
    pub fn genus(&self, i: usize) -> u64 {
        match i {
            1 => self.g1,
            2 => self.g2,
            _ => panic!("component index must be 1 or 2"),
        }
    }

    pub fn ell(&self, i: usize) -> u64 {
        self.genus(other(i)).div_ceil(self.delta)
    }

    pub fn m(&self, i: usize) -> u64 {
        self.ell(i) * self.delta - self.genus(other(i))
    }

    pub fn twist(&self) -> TwistData {
        let ell = [self.ell(1), self.ell(2)];
        let m = [self.m(1), self.m(2)];
        let lambda = (ell[0] * ell[1] != 0).then(|| {
            let d = ell[0].gcd(&ell[1]);
            [ell[0] / d, ell[1] / d]
        });
        TwistData { ell, m, lambda }
    }

    /// Twist multiple `1 + (−1)^{i−j}ℓ_i` of `Δ` in `L_{i,j}`.
    pub fn l_twist(&self, i: usize, j: usize) -> i64 {
        let ell = self.ell(i) as i64;
        if i == j {
            1 + ell
        } else {
            1 - ell
        }
    }

    /// `deg L_{i,j} = 2g_j − 2 + (1 + (−1)^{i−j}ℓ_i)δ`.
    pub fn deg_l(&self, i: usize, j: usize) -> i64 {
        2 * self.genus(j) as i64 - 2 + self.l_twist(i, j) * self.delta as i64
    }

    /// Expected `h⁰(L_{i,j})` under condition (1.i).
    pub fn expected_h0_l(&self, i: usize, j: usize) -> i64 {
        let g = self.g() as i64;
        if i == j {
            return g + self.m(i) as i64;
        }
        let ell = self.ell(i);
        if ell == 0 {
            // ω_j(Δ) with g_j = 0: degree δ − 2 on a rational curve.
            self.genus(j) as i64 + self.delta as i64 - 1
        } else {
            expected_h0_twisted_dualizing(self, i, ell - 1) as i64
        }
    }

    pub fn degree_table(&self) -> SheafDegreeTable {
        let mut deg_l = [[0; 2]; 2];
        let mut h0_l = [[0; 2]; 2];
        for i in 1..=2 {
            for j in 1..=2 {
                deg_l[i - 1][j - 1] = self.deg_l(i, j);
                h0_l[i - 1][j - 1] = self.expected_h0_l(i, j);
            }
        }
        SheafDegreeTable { deg_l, h0_l }
    }
}

/// All §1 data of a profile.
pub fn compute_profile(
    g1: u64,
    g2: u64,
    delta: u64,
) -> Result<(GenusProfile, TwistData, SheafDegreeTable)> {
    let p = GenusProfile::new(g1, g2, delta)?;
    Ok((p, p.twist(), p.degree_table()))
}

/// Condition (1.i): the generic value `max(g_{3−i} − nδ, 0)` of `h⁰(ω_{3−i}(−nΔ))`.
pub fn expected_h0_twisted_dualizing(p: &GenusProfile, i: usize, n: u64) -> u64 {
    p.genus(other(i)).saturating_sub(n * p.delta)
}

/// Equation (4): `g(g − 1 − ℓ₁ − ℓ₂)`.
pub fn eq4_delta_coefficient(p: &GenusProfile) -> i64 {
    let g = p.g() as i64;
    g * (g - 1 - p.ell(1) as i64 - p.ell(2) as i64)
}

/// Corollary 5: `g² − g(g+1)/δ`; requires `δ | gcd(g₁, g₂)`.
pub fn corollary5_delta_coefficient(p: &GenusProfile) -> Result<i64> {
    if !p.g1.gcd(&p.g2).is_multiple_of(p.delta) {
        return Err(Error::precondition(format!(
            "Corollary 5 needs delta | gcd(g1, g2); got delta={} and gcd={}",
            p.delta,
            p.g1.gcd(&p.g2)
        )));
    }
    let g = p.g() as i64;
    Ok(g * g - g * (g + 1) / p.delta as i64)
}

/// Theorem 4's Δ-coefficient in `W_ν`: `g(δ − 2)`.
pub fn theorem4_delta_coefficient(p: &GenusProfile) -> i64 {
    p.g() as i64 * (p.delta as i64 - 2)
}

/// Plücker count: degree of the ramification divisor of an `n`-dimensional
/// system of degree `d` on a smooth curve of genus `genus`.
pub fn plucker_ram_degree(dim_v: i64, deg_l: i64, genus: i64) -> i64 {
    assert!(dim_v >= 1, "linear system must be nonzero");
    dim_v * deg_l + dim_v * (dim_v - 1) * (genus - 1)
}

/// Degree `deg ω_i((1 + g_{3−i})Δ)` of the system `V_i` defining `W_{ν,i}`.
pub fn deg_wnu_sheaf(p: &GenusProfile, i: usize) -> i64 {
    2 * p.genus(i) as i64 - 2 + (1 + p.genus(other(i)) as i64) * p.delta as i64
}

/// `g³ − g`, asserting the documented Plücker identity
/// `Σ_i plucker(g, deg L′_{i,i}, g_i) + g(δ − 2)δ = g³ − g`.
pub fn total_limit_degree(p: &GenusProfile) -> Result<i64> {
    let g = p.g() as i64;
    let total = g * g * g - g;
    let sum = (1..=2)
        .map(|i| plucker_ram_degree(g, deg_wnu_sheaf(p, i), p.genus(i) as i64))
        .sum::<i64>()
        + theorem4_delta_coefficient(p) * p.delta as i64;
    if sum != total {
        return Err(Error::invariant(format!(
            "Plücker identity fails for {p:?}: {sum} != {total}"
        )));
    }
    Ok(total)
}

/// §2: number of irreducible components of 𝕍 when `δ = 2`.
pub fn component_count_delta2(p: &GenusProfile) -> Result<u64> {
    if p.delta != 2 {
        return Err(Error::precondition(format!(
            "component count formula needs delta = 2, got {}",
            p.delta
        )));
    }
    Ok(p.g() - (p.g1 + 1).gcd(&(p.g2 + 1)))
}

/// §2: 𝕍 is irreducible iff `g₁ = g₂ = 1`.
pub fn is_v_irreducible(p: &GenusProfile) -> bool {
    p.g1 == 1 && p.g2 == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prof(a: u64, b: u64, d: u64) -> GenusProfile {
        GenusProfile::new(a, b, d).unwrap()
    }

    #[test]
    fn paper_examples() {
        let p = prof(2, 3, 2);
        let t = p.twist();
        assert_eq!((p.g(), t.ell, t.m, t.lambda), (6, [2, 1], [1, 0], Some([2, 1])));
        let p = prof(0, 0, 3);
        let t = p.twist();
        assert_eq!((p.g(), t.ell, t.m, t.lambda), (2, [0, 0], [0, 0], None));
        let p = prof(2, 2, 2);
        let t = p.twist();
        assert_eq!((p.g(), t.ell, t.m, t.lambda), (5, [1, 1], [0, 0], Some([1, 1])));
    }

    #[test]
    fn semistability_rejected() {
        assert!(GenusProfile::new(0, 0, 1).is_err());
        assert!(GenusProfile::new(0, 3, 1).is_err());
        assert!(GenusProfile::new(1, 1, 1).is_ok());
        assert!(GenusProfile::new(1, 1, 0).is_err());
    }

    #[test]
    fn coefficients() {
        assert_eq!(expected_h0_twisted_dualizing(&prof(2, 3, 2), 1, 1), 1);
        assert_eq!(expected_h0_twisted_dualizing(&prof(2, 3, 2), 1, 2), 0);
        assert_eq!(eq4_delta_coefficient(&prof(2, 3, 2)), 12);
        assert_eq!(eq4_delta_coefficient(&prof(0, 0, 3)), 2);
        assert_eq!(eq4_delta_coefficient(&prof(2, 2, 2)), 10);
        assert_eq!(corollary5_delta_coefficient(&prof(2, 2, 2)), Ok(10));
        assert_eq!(corollary5_delta_coefficient(&prof(0, 0, 3)), Ok(2));
        // The spec lists -3 for (1,1,1), which uses g = 3; g = 1 + 1 + 1 - 1 = 2.
        assert_eq!(corollary5_delta_coefficient(&prof(1, 1, 1)), Ok(-2));
        assert!(corollary5_delta_coefficient(&prof(2, 3, 2)).is_err());
        assert_eq!(theorem4_delta_coefficient(&prof(2, 3, 2)), 0);
        assert_eq!(theorem4_delta_coefficient(&prof(0, 0, 3)), 2);
        assert_eq!(theorem4_delta_coefficient(&prof(1, 1, 1)), -2);
        assert_eq!(plucker_ram_degree(2, 2, 2), 6);
        assert_eq!(plucker_ram_degree(2, 1, 0), 0);
        assert_eq!(plucker_ram_degree(6, 10, 2), 90);
        assert_eq!(total_limit_degree(&prof(2, 3, 2)), Ok(210));
        assert_eq!(total_limit_degree(&prof(0, 0, 3)), Ok(6));
        assert_eq!(total_limit_degree(&prof(0, 0, 2)), Ok(0));
        assert_eq!(total_limit_degree(&prof(2, 2, 2)), Ok(120));
        assert_eq!(total_limit_degree(&prof(1, 2, 2)), Ok(60));
    }

    #[test]
    fn component_counts() {
        assert_eq!(component_count_delta2(&prof(1, 1, 2)), Ok(1));
        assert_eq!(component_count_delta2(&prof(2, 3, 2)), Ok(5));
        assert_eq!(component_count_delta2(&prof(1, 3, 2)), Ok(3));
        assert!(component_count_delta2(&prof(1, 1, 3)).is_err());
        assert!(is_v_irreducible(&prof(1, 1, 5)));
        assert!(!is_v_irreducible(&prof(2, 3, 2)));
    }

    #[test]
    fn degree_table_riemann_roch() {
        for g1 in 0..=8 {
            for g2 in 0..=8 {
                for d in 1..=8 {
                    let Ok(p) = GenusProfile::new(g1, g2, d) else {
                        continue;
                    };
                    for i in 1..=2 {
                        let deg = p.deg_l(i, i);
                        assert!(deg > 2 * p.genus(i) as i64 - 2);
                        assert_eq!(deg - p.genus(i) as i64 + 1, p.expected_h0_l(i, i));
                        assert_eq!(expected_h0_twisted_dualizing(&p, i, p.ell(i)), 0);
                    }
                }
            }
        }
    }
}
