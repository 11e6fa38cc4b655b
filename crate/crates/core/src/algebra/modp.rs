//! Polynomial arithmetic over a word-sized prime field `F_p`.
//!
//! Only what the integer factorizer needs: reduction, gcd, modular powering
//! and Cantor-Zassenhaus splitting. Coefficients are ascending, trimmed.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;

use crate::algebra::poly::Poly;

pub type ModPoly = Vec<u64>;

#[derive(Clone, Copy, Debug)]
pub struct PrimeField {
    pub p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        assert!(p > 2 && p < (1 << 31), "prime must fit in 31 bits");
        PrimeField { p }
    }

    pub fn reduce_int(&self, a: &BigInt) -> u64 {
        a.mod_floor(&BigInt::from(self.p))
            .to_u64()
            .expect("residue fits in u64")
    }

    pub fn reduce_poly(&self, f: &Poly<BigInt>) -> ModPoly {
        trim(f.coeffs().iter().map(|c| self.reduce_int(c)).collect())
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "inverse of zero mod p");
        self.pow(a, self.p - 2)
    }

    pub fn poly_add(&self, a: &[u64], b: &[u64]) -> ModPoly {
        let n = a.len().max(b.len());
        trim(
            (0..n)
                .map(|k| self.add(*a.get(k).unwrap_or(&0), *b.get(k).unwrap_or(&0)))
                .collect(),
        )
    }

    pub fn poly_sub(&self, a: &[u64], b: &[u64]) -> ModPoly {
        let n = a.len().max(b.len());
        trim(
            (0..n)
                .map(|k| self.sub(*a.get(k).unwrap_or(&0), *b.get(k).unwrap_or(&0)))
                .collect(),
        )
    }

    pub fn poly_mul(&self, a: &[u64], b: &[u64]) -> ModPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % self.p;
            }
        }
        trim(out)
    }

    pub fn poly_scale(&self, a: &[u64], c: u64) -> ModPoly {
        trim(a.iter().map(|&x| self.mul(x, c)).collect())
    }

    pub fn poly_divrem(&self, a: &[u64], b: &[u64]) -> (ModPoly, ModPoly) {
        assert!(!b.is_empty(), "division by zero polynomial mod p");
        let db = b.len() - 1;
        if a.len() <= db {
            return (Vec::new(), a.to_vec());
        }
        let inv = self.inv(b[db]);
        let mut rem = a.to_vec();
        let mut quot = vec![0u64; a.len() - db];
        for k in (0..quot.len()).rev() {
            let c = self.mul(rem[k + db], inv);
            if c == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                rem[k + j] = self.sub(rem[k + j], self.mul(c, bj));
            }
            quot[k] = c;
        }
        rem.truncate(db);
        (trim(quot), trim(rem))
    }

    pub fn poly_rem(&self, a: &[u64], b: &[u64]) -> ModPoly {
        self.poly_divrem(a, b).1
    }

    pub fn monic(&self, a: &[u64]) -> ModPoly {
        match a.last() {
            None => Vec::new(),
            Some(&lc) => self.poly_scale(a, self.inv(lc)),
        }
    }

    pub fn poly_gcd(&self, a: &[u64], b: &[u64]) -> ModPoly {
        let (mut x, mut y) = (a.to_vec(), b.to_vec());
        while !y.is_empty() {
            let r = self.poly_rem(&x, &y);
            x = y;
            y = r;
        }
        self.monic(&x)
    }

    /// Extended gcd for coprime `a`, `b`: returns `(s, t)` with `s a + t b = 1`.
    pub fn poly_bezout(&self, a: &[u64], b: &[u64]) -> (ModPoly, ModPoly) {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = self.poly_divrem(&r0, &r1);
            let s2 = self.poly_sub(&s0, &self.poly_mul(&q, &s1));
            let t2 = self.poly_sub(&t0, &self.poly_mul(&q, &t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        assert_eq!(r0.len(), 1, "bezout inputs are not coprime");
        let inv = self.inv(r0[0]);
        (self.poly_scale(&s0, inv), self.poly_scale(&t0, inv))
    }

    /// `base^e mod modulus`.
    pub fn poly_powmod(&self, base: &[u64], mut e: u128, modulus: &[u64]) -> ModPoly {
        let mut acc = vec![1u64];
        let mut b = self.poly_rem(base, modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.poly_rem(&self.poly_mul(&acc, &b), modulus);
            }
            e >>= 1;
            if e > 0 {
                b = self.poly_rem(&self.poly_mul(&b, &b), modulus);
            }
        }
        acc
    }

    pub fn derivative(&self, a: &[u64]) -> ModPoly {
        trim(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| self.mul(c, k as u64 % self.p))
                .collect(),
        )
    }

    pub fn is_squarefree(&self, a: &[u64]) -> bool {
        let d = self.derivative(a);
        if d.is_empty() {
            return a.len() <= 1;
        }
        self.poly_gcd(a, &d).len() == 1
    }

    /// Distinct-degree factorization of a monic squarefree polynomial:
    /// pairs `(g, d)` with `g` the product of all irreducible factors of
    /// degree `d`.
    pub fn distinct_degree(&self, f: &[u64]) -> Vec<(ModPoly, usize)> {
        let mut out = Vec::new();
        let mut rest = f.to_vec();
        let x = vec![0u64, 1];
        let mut h = x.clone();
        let mut d = 0;
        while rest.len() > 1 {
            d += 1;
            if 2 * d > rest.len() - 1 {
                out.push((rest.clone(), rest.len() - 1));
                break;
            }
            h = self.poly_powmod(&h, self.p as u128, &rest);
            let g = self.poly_gcd(&rest, &self.poly_sub(&h, &x));
            if g.len() > 1 {
                rest = self.poly_divrem(&rest, &g).0;
                h = self.poly_rem(&h, &rest);
                out.push((g, d));
            }
        }
        out
    }

    /// Splits a monic product of irreducibles all of degree `d`.
    pub fn equal_degree<R: Rng>(&self, f: &[u64], d: usize, rng: &mut R) -> Vec<ModPoly> {
        let n = f.len() - 1;
        if n == d {
            return vec![f.to_vec()];
        }
        loop {
            let a: ModPoly = trim((0..n).map(|_| rng.gen_range(0..self.p)).collect());
            if a.len() < 2 {
                continue;
            }
            // a^((p^d - 1) / 2) = (a * a^p * ... * a^(p^(d-1)))^((p - 1) / 2)
            let mut frob = a.clone();
            let mut norm = a.clone();
            for _ in 1..d {
                frob = self.poly_powmod(&frob, self.p as u128, f);
                norm = self.poly_rem(&self.poly_mul(&norm, &frob), f);
            }
            let b = self.poly_powmod(&norm, (self.p as u128 - 1) / 2, f);
            let g = self.poly_gcd(f, &self.poly_sub(&b, &[1]));
            if g.len() > 1 && g.len() < f.len() {
                let other = self.monic(&self.poly_divrem(f, &g).0);
                let mut out = self.equal_degree(&g, d, rng);
                out.extend(self.equal_degree(&other, d, rng));
                return out;
            }
        }
    }

    /// Complete factorization of a squarefree polynomial into monic
    /// irreducibles (the leading coefficient is dropped).
    pub fn factor_squarefree<R: Rng>(&self, f: &[u64], rng: &mut R) -> Vec<ModPoly> {
        let f = self.monic(f);
        let mut out = Vec::new();
        for (g, d) in self.distinct_degree(&f) {
            out.extend(self.equal_degree(&g, d, rng));
        }
        out
    }
}

pub fn trim(mut v: ModPoly) -> ModPoly {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Small deterministic stock of primes below `2^31`.
pub fn primes_from(start: u64) -> impl Iterator<Item = u64> {
    (start..).filter(|&n| is_prime(n))
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn factors_multiply_back() {
        let fp = PrimeField::new(101);
        // (x+1)(x^2+2)(x^3+x+1) mod 101
        let f = fp.poly_mul(&fp.poly_mul(&[1, 1], &[2, 0, 1]), &[1, 1, 0, 1]);
        assert!(fp.is_squarefree(&f));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let facs = fp.factor_squarefree(&f, &mut rng);
        let prod = facs.iter().fold(vec![1], |acc, g| fp.poly_mul(&acc, g));
        assert_eq!(prod, fp.monic(&f));
        for g in &facs {
            assert!(g.len() >= 2);
        }
    }

    #[test]
    fn bezout_identity() {
        let fp = PrimeField::new(97);
        let a = [3, 0, 1];
        let b = [5, 1];
        let (s, t) = fp.poly_bezout(&a, &b);
        let lhs = fp.poly_add(&fp.poly_mul(&s, &a), &fp.poly_mul(&t, &b));
        assert_eq!(lhs, vec![1]);
    }
}
