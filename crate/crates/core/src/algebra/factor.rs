//! Squarefree decomposition and irreducible factorization over `Q`.
//!
//! Factorization follows the classical Zassenhaus route: factor modulo a
//! small prime, Hensel-lift the modular factors quadratically past a
//! Mignotte-type coefficient bound, then recombine by trial products.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::modp::{primes_from, trim, ModPoly, PrimeField};
use crate::algebra::poly::Poly;

type ZPoly = Poly<BigInt>;

/// Irreducible factorization of a nonzero rational polynomial, ignoring the
/// constant factor. Factors are primitive with positive leading coefficient,
/// sorted by degree then coefficients.
pub fn factor_rational(f: &Poly<BigRational>) -> Vec<(ZPoly, u32)> {
    assert!(!f.is_zero(), "factoring the zero polynomial");
    factor_integer(&f.primitive_integer())
}

/// Irreducible factorization of a nonzero integer polynomial (content dropped).
pub fn factor_integer(f: &ZPoly) -> Vec<(ZPoly, u32)> {
    let f = f.primitive_part();
    let mut out = Vec::new();
    if f.deg() < 1 {
        return out;
    }
    // Powers of x are split off first: they are common and cheap.
    let shift = f.coeffs().iter().position(|c| !c.is_zero()).unwrap_or(0);
    if shift > 0 {
        out.push((ZPoly::x(), shift as u32));
    }
    let f = ZPoly::new(f.coeffs()[shift..].to_vec());
    for (part, mult) in squarefree_decomposition(&f) {
        for g in factor_squarefree(&part) {
            out.push((g, mult));
        }
    }
    out.sort_by(|a, b| a.0.deg().cmp(&b.0.deg()).then_with(|| a.0.cmp(&b.0)));
    out
}

/// Yun's squarefree decomposition: pairs `(a_i, i)` with `f ~ prod a_i^i`,
/// each `a_i` primitive, squarefree and nonconstant, pairwise coprime.
pub fn squarefree_decomposition(f: &ZPoly) -> Vec<(ZPoly, u32)> {
    let f = f.primitive_part();
    if f.deg() < 1 {
        return Vec::new();
    }
    if certainly_squarefree(&f) {
        return vec![(f, 1)];
    }
    let fq = f.to_rational();
    let df = fq.derivative();
    let a0 = gcd_q(&fq, &df);
    let mut b = fq.exact_div(&a0);
    let mut c = df.exact_div(&a0);
    let mut d = &c - &b.derivative();
    let mut out = Vec::new();
    let mut i = 1;
    while b.deg() > 0 {
        let a = gcd_q(&b, &d);
        b = b.exact_div(&a);
        c = d.exact_div(&a);
        d = &c - &b.derivative();
        if a.deg() > 0 {
            out.push((a.primitive_integer(), i));
        }
        i += 1;
    }
    out
}

fn gcd_q(a: &Poly<BigRational>, b: &Poly<BigRational>) -> Poly<BigRational> {
    a.primitive_integer()
        .gcd_int(&b.primitive_integer())
        .to_rational()
        .monic()
}

/// Squarefreeness certificate: `f mod p` squarefree for some prime not
/// dividing the leading coefficient.
fn certainly_squarefree(f: &ZPoly) -> bool {
    primes_from(1 << 20)
        .take(3)
        .map(PrimeField::new)
        .filter(|fp| fp.reduce_int(&f.lc()) != 0)
        .any(|fp| fp.is_squarefree(&fp.reduce_poly(f)))
}

/// Factors a primitive squarefree polynomial of positive degree.
pub fn factor_squarefree(f: &ZPoly) -> Vec<ZPoly> {
    let f = f.primitive_part();
    let n = f.degree().expect("nonzero polynomial");
    if n <= 1 {
        return vec![f];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_fac7);

    // Pick the prime with the fewest modular factors among a few candidates.
    let mut best: Option<(PrimeField, Vec<ModPoly>)> = None;
    let mut tried = 0;
    for p in primes_from((1 << 30) + 3) {
        let fp = PrimeField::new(p);
        if fp.reduce_int(&f.lc()) == 0 {
            continue;
        }
        let fm = fp.reduce_poly(&f);
        if !fp.is_squarefree(&fm) {
            continue;
        }
        let facs = fp.factor_squarefree(&fm, &mut rng);
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((fp, facs));
        }
        tried += 1;
        if tried == 4 || best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
            break;
        }
    }
    let (fp, modular) = best.expect("a good prime exists");
    if modular.len() == 1 {
        return vec![f];
    }

    // Coefficient bound for factors of lc(f) * f.
    let lc = f.lc().abs();
    let norm2 = f
        .coeffs()
        .iter()
        .map(|c| c * c)
        .fold(BigInt::zero(), |a, b| a + b)
        .sqrt()
        + BigInt::one();
    let bound = (BigInt::one() << n) * norm2 * &lc;
    let p = BigInt::from(fp.p);
    let mut modulus = p.clone();
    let mut k = 1u32;
    while modulus <= &bound * 2 {
        modulus *= &p;
        k += 1;
    }
    let lifted = hensel_lift(&f, &modular, fp, k);
    recombine(&f, lifted, &modulus, &bound)
}

fn reduce_sym(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn reduce_poly(f: &ZPoly, m: &BigInt) -> ZPoly {
    ZPoly::new(f.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

fn lift_mod(g: &ModPoly) -> ZPoly {
    ZPoly::new(g.iter().map(|&c| BigInt::from(c)).collect())
}

/// Division by a monic integer polynomial.
fn divrem_monic(a: &ZPoly, h: &ZPoly) -> (ZPoly, ZPoly) {
    debug_assert!(h.lc().is_one());
    let dh = h.degree().expect("nonzero divisor");
    if a.deg() < dh as i64 {
        return (ZPoly::zero(), a.clone());
    }
    let mut rem = a.coeffs().to_vec();
    let mut quot = vec![BigInt::zero(); rem.len() - dh];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dh].clone();
        if c.is_zero() {
            continue;
        }
        for (j, b) in h.coeffs().iter().enumerate() {
            rem[k + j] -= &c * b;
        }
        quot[k] = c;
    }
    rem.truncate(dh);
    (ZPoly::new(quot), ZPoly::new(rem))
}

/// Lifts `f = lc(f) * prod(factors) mod p` to a factorization modulo `p^k`;
/// returns monic lifts of the given factors.
fn hensel_lift(f: &ZPoly, factors: &[ModPoly], fp: PrimeField, k: u32) -> Vec<ZPoly> {
    let target = BigInt::from(fp.p).pow(k);
    lift_tree(f, factors, fp, &target)
}

fn lift_tree(f: &ZPoly, factors: &[ModPoly], fp: PrimeField, target: &BigInt) -> Vec<ZPoly> {
    if factors.len() == 1 {
        let inv = f
            .lc()
            .modinv(target)
            .expect("leading coefficient is a unit mod p^k");
        return vec![reduce_poly(&f.scale(&inv), target)];
    }
    let (left, right) = factors.split_at(factors.len() / 2);
    let prod = |fs: &[ModPoly]| fs.iter().fold(vec![1u64], |acc, g| fp.poly_mul(&acc, g));
    let lc_mod = fp.reduce_int(&f.lc());
    let g0 = fp.poly_scale(&prod(left), lc_mod);
    let h0 = prod(right);
    let (g, h) = hensel_two(f, &g0, &h0, fp, target);
    let mut out = lift_tree(&g, left, fp, target);
    out.extend(lift_tree(&h, right, fp, target));
    out
}

/// Quadratic two-factor Hensel lifting: `f = g h mod p^k` with `h` monic.
fn hensel_two(
    f: &ZPoly,
    g0: &ModPoly,
    h0: &ModPoly,
    fp: PrimeField,
    target: &BigInt,
) -> (ZPoly, ZPoly) {
    let (s0, t0) = fp.poly_bezout(g0, h0);
    let (mut g, mut h) = (lift_mod(g0), lift_mod(h0));
    let (mut s, mut t) = (lift_mod(&s0), lift_mod(&t0));
    let mut m = BigInt::from(fp.p);
    while &m < target {
        let m2 = &m * &m;
        let e = reduce_poly(&(f - &(&g * &h)), &m2);
        let (q, r) = divrem_monic(&reduce_poly(&(&s * &e), &m2), &h);
        let g_new = reduce_poly(&(&(&g + &(&t * &e)) + &(&q * &g)), &m2);
        let h_new = reduce_poly(&(&h + &r), &m2);
        let b = reduce_poly(&(&(&(&s * &g_new) + &(&t * &h_new)) - &ZPoly::one()), &m2);
        let (c, d) = divrem_monic(&reduce_poly(&(&s * &b), &m2), &h_new);
        s = reduce_poly(&(&s - &d), &m2);
        t = reduce_poly(&(&(&t - &(&t * &b)) - &(&c * &g_new)), &m2);
        g = g_new;
        h = h_new;
        m = m2;
    }
    (reduce_poly(&g, target), reduce_poly(&h, target))
}

fn recombine(f: &ZPoly, lifted: Vec<ZPoly>, modulus: &BigInt, bound: &BigInt) -> Vec<ZPoly> {
    let mut remaining: Vec<ZPoly> = lifted;
    let mut rest = f.clone();
    let mut out = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= remaining.len() {
        for subset in subsets(remaining.len(), size) {
            let b = rest.lc();
            let pick = |idx: &mut dyn Iterator<Item = usize>| {
                let prod = idx.fold(ZPoly::constant(b.clone()), |acc, i| {
                    reduce_poly(&(&acc * &remaining[i]), modulus)
                });
                ZPoly::new(prod.coeffs().iter().map(|c| reduce_sym(c, modulus)).collect())
            };
            let g = pick(&mut subset.iter().copied());
            if g.max_norm() > *bound {
                continue;
            }
            let cand = g.primitive_part();
            if let Some(quot) = rest.div_exact_ring(&cand) {
                out.push(cand);
                rest = quot.primitive_part();
                let mut keep = Vec::new();
                for (i, r) in remaining.into_iter().enumerate() {
                    if !subset.contains(&i) {
                        keep.push(r);
                    }
                }
                remaining = keep;
                continue 'outer;
            }
        }
        size += 1;
    }
    if rest.deg() > 0 {
        out.push(rest.primitive_part());
    }
    out
}

/// All `k`-subsets of `0..n` in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Rational roots of a nonzero polynomial (each listed once).
pub fn rational_roots(f: &Poly<BigRational>) -> Vec<BigRational> {
    factor_rational(f)
        .into_iter()
        .filter(|(g, _)| g.deg() == 1)
        .map(|(g, _)| BigRational::new(-g.coeff(0), g.coeff(1)))
        .collect()
}

#[allow(dead_code)]
fn trim_mod(v: ModPoly) -> ModPoly {
    trim(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: &[i64]) -> ZPoly {
        ZPoly::new(v.iter().map(|&a| BigInt::from(a)).collect())
    }

    fn product(facs: &[(ZPoly, u32)]) -> ZPoly {
        facs.iter()
            .fold(ZPoly::one(), |acc, (g, e)| &acc * &g.pow(*e))
    }

    #[test]
    fn x5_plus_1() {
        let f = z(&[1, 0, 0, 0, 0, 1]);
        let facs = factor_integer(&f);
        assert_eq!(facs, vec![(z(&[1, 1]), 1), (z(&[1, -1, 1, -1, 1]), 1)]);
    }

    #[test]
    fn repeated_factors_and_content() {
        let g1 = z(&[-3, 2]);
        let g2 = z(&[1, 0, 1]);
        let g3 = z(&[7, 1, 0, 5]);
        let f = (&(&g1.pow(3) * &g2.pow(2)) * &g3).scale(&BigInt::from(6));
        let facs = factor_integer(&f);
        assert_eq!(product(&facs), f.primitive_part());
        assert_eq!(facs.len(), 3);
        assert!(facs.contains(&(g1, 3)));
        assert!(facs.contains(&(g2, 2)));
        assert!(facs.contains(&(g3, 1)));
    }

    #[test]
    fn swinnerton_dyer_like_needs_recombination() {
        // x^4 - 10x^2 + 1 is irreducible over Q but splits modulo every prime.
        let f = z(&[1, 0, -10, 0, 1]);
        assert_eq!(factor_squarefree(&f), vec![f.clone()]);
        // (x^4 - 10x^2 + 1)(x^2 - 2) also recombines correctly.
        let g = &f * &z(&[-2, 0, 1]);
        let facs = factor_integer(&g);
        assert_eq!(facs, vec![(z(&[-2, 0, 1]), 1), (f, 1)]);
    }

    #[test]
    fn larger_product_with_big_coefficients() {
        let a = z(&[123456789, -987654321, 5, 0, 0, 31]);
        let b = z(&[-7, 0, 0, 2, 0, 0, 0, 1]);
        let c = z(&[11, 13]);
        let f = &(&a * &b) * &c;
        let facs = factor_integer(&f);
        assert_eq!(product(&facs), f.primitive_part());
        assert_eq!(facs.len(), 3);
    }

    #[test]
    fn roots() {
        let f = (z(&[-1, 3]) * z(&[5, 2]) * z(&[1, 0, 1])).to_rational();
        let mut r = rational_roots(&f);
        r.sort();
        assert_eq!(
            r,
            vec![
                BigRational::new((-5).into(), 2.into()),
                BigRational::new(1.into(), 3.into())
            ]
        );
    }
}
