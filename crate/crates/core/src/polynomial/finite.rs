//! Factorization over prime fields: distinct-degree then equal-degree
//! (Cantor-Zassenhaus) splitting of squarefree polynomials.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::PrimeField;

use super::{gcd, Poly};

/// Pairs `(g, d)` where `g` is the product of all irreducible factors of
/// degree `d` of the monic squarefree `f`.
fn distinct_degree(f: &Poly<PrimeField>) -> Vec<(Poly<PrimeField>, usize)> {
    let k = f.field();
    let p = BigUint::from(k.modulus());
    let x = Poly::x(k);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.rem(&rest);
    let mut d = 1;
    while rest.degree().unwrap() >= 2 * d {
        h = h.powmod(&p, &rest);
        let g = gcd(&rest, &(&h - &x)).unwrap();
        if !g.is_one() {
            rest = rest.div_exact(&g);
            h = h.rem(&rest);
            out.push((g, d));
        }
        d += 1;
    }
    if rest.degree().unwrap() > 0 {
        let deg = rest.degree().unwrap();
        out.push((rest, deg));
    }
    out
}

fn random_poly(k: &PrimeField, below_degree: usize, rng: &mut ChaCha8Rng) -> Poly<PrimeField> {
    let coeffs = (0..below_degree)
        .map(|_| rng.gen_range(0..k.modulus()))
        .collect();
    Poly::new(k, coeffs)
}

/// Splits `f`, a product of distinct irreducibles all of degree `d`.
fn equal_degree(
    f: &Poly<PrimeField>,
    d: usize,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<Poly<PrimeField>>,
) {
    let n = f.degree().unwrap();
    if n == d {
        out.push(f.clone());
        return;
    }
    let k = f.field();
    let p = k.modulus();
    let one = Poly::one(k);
    let half_exp = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let a = random_poly(k, n, rng);
        if a.is_constant() {
            continue;
        }
        let b = if p == 2 {
            // absolute trace a + a^2 + ... + a^(2^(d-1)) mod f
            let mut term = a.clone();
            let mut acc = a.clone();
            for _ in 1..d {
                term = (&term * &term).rem(f);
                acc = &acc + &term;
            }
            acc
        } else {
            &a.powmod(&half_exp, f) - &one
        };
        if b.is_zero() {
            continue;
        }
        let g = gcd(f, &b).unwrap();
        let gd = g.degree().unwrap();
        if gd > 0 && gd < n {
            equal_degree(&g, d, rng, out);
            equal_degree(&f.div_exact(&g), d, rng, out);
            return;
        }
    }
}

pub(super) fn split_squarefree(f: &Poly<PrimeField>, seed: u64) -> Vec<Poly<PrimeField>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (g, d) in distinct_degree(f) {
        equal_degree(&g, d, &mut rng, &mut out);
    }
    out
}

/// Rabin-style irreducibility test: `q` (of degree `d`, made monic) divides
/// `x^(p^d) - x`, and is coprime to `x^(p^e) - x` for every proper divisor
/// `e` of `d`.
pub fn passes_rabin_test(q: &Poly<PrimeField>) -> bool {
    let Some(d) = q.degree() else {
        return false;
    };
    if d == 0 {
        return false;
    }
    let q = q.monic();
    let k = q.field();
    let p = BigUint::from(k.modulus());
    let x = Poly::x(k).rem(&q);
    // frob[e] = x^(p^e) mod q
    let mut frob = vec![x.clone()];
    for e in 1..=d {
        let next = frob[e - 1].powmod(&p, &q);
        frob.push(next);
    }
    if !(&frob[d] - &x).is_zero() {
        return false;
    }
    (1..d)
        .filter(|e| d % e == 0)
        .all(|e| gcd(&q, &(&frob[e] - &x)).unwrap().is_one())
}
