//! Factorization over `Q` by reduction modulo a prime, multifactor Hensel
//! lifting, and exhaustive recombination of the lifted factors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::field::{is_prime_u64, PrimeField, Rationals};

use super::integer::{self as z, ZPoly};
use super::{ext_gcd, gcd, Poly, DEFAULT_SEED};

/// Number of good primes tried before committing to the one with the fewest
/// modular factors.
const PRIME_CANDIDATES: usize = 3;

pub(super) fn split_squarefree(f: &Poly<Rationals>) -> Vec<Poly<Rationals>> {
    let zf = to_primitive_integer(f);
    zassenhaus(&zf, None)
        .iter()
        .map(|g| from_integer(g).monic())
        .collect()
}

/// Runs the full modular factorization of `q` using the prime `p` only.
/// Returns `None` when `p` is unusable for `q` (not prime, divides the leading
/// coefficient, or `q` is not squarefree modulo `p`), otherwise whether `q`
/// splits over `Q`.
pub fn splits_at_prime(q: &Poly<Rationals>, p: u64) -> Option<bool> {
    if q.is_constant() {
        return None;
    }
    let zf = to_primitive_integer(q);
    modular_factors(&zf, p)?;
    Some(zassenhaus(&zf, Some(p)).len() > 1)
}

/// Certifies irreducibility of `q` by running the modular factorization at
/// `count` distinct good primes and requiring that none of them splits `q`.
pub fn irreducible_at_primes(q: &Poly<Rationals>, count: usize) -> bool {
    if q.is_constant() {
        return false;
    }
    let mut checked = 0;
    let mut p = 2;
    while checked < count {
        p += 1;
        if !is_prime_u64(p) {
            continue;
        }
        match splits_at_prime(q, p) {
            None => continue,
            Some(true) => return false,
            Some(false) => checked += 1,
        }
    }
    true
}

fn to_primitive_integer(f: &Poly<Rationals>) -> ZPoly {
    let den = f
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let scaled: ZPoly = f
        .coeffs()
        .iter()
        .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
        .collect();
    z::primitive_part(&scaled)
}

fn from_integer(g: &[BigInt]) -> Poly<Rationals> {
    Poly::new(
        &Rationals,
        g.iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect(),
    )
}

/// Monic irreducible factors of `f` modulo `p`, or `None` if `p` is a bad
/// prime for `f`.
fn modular_factors(f: &[BigInt], p: u64) -> Option<(PrimeField, Vec<Poly<PrimeField>>)> {
    let k = PrimeField::new(p).ok()?;
    let lc = f.last()?;
    if (lc % BigInt::from(p)).is_zero() {
        return None;
    }
    let fbar = z::to_fp(f, &k);
    let dbar = fbar.derivative();
    if dbar.is_zero() || !gcd(&fbar, &dbar).ok()?.is_one() {
        return None;
    }
    let factors = super::finite::split_squarefree(&fbar.monic(), DEFAULT_SEED);
    Some((k, factors))
}

/// Irreducible factors over `Z` of a primitive squarefree `f` with positive
/// leading coefficient.
fn zassenhaus(f: &[BigInt], forced_prime: Option<u64>) -> Vec<ZPoly> {
    let n = z::degree(f);
    if n <= 1 {
        return vec![f.to_vec()];
    }
    let (k, modular) = match forced_prime {
        Some(p) => modular_factors(f, p).expect("caller checked the prime"),
        None => {
            let mut best: Option<(PrimeField, Vec<Poly<PrimeField>>)> = None;
            let mut found = 0;
            let mut p = 2u64;
            while found < PRIME_CANDIDATES {
                p += 1;
                if !is_prime_u64(p) {
                    continue;
                }
                if let Some(cand) = modular_factors(f, p) {
                    found += 1;
                    if best.as_ref().is_none_or(|b| cand.1.len() < b.1.len()) {
                        best = Some(cand);
                    }
                }
            }
            best.unwrap()
        }
    };
    if modular.len() == 1 {
        return vec![f.to_vec()];
    }

    let p = BigInt::from(k.modulus());
    let lc = f.last().unwrap().clone();
    // any integer factor g of f has |coeff| <= 2^n ||f||_2 <= 2^n (n+1) max|f_i|;
    // candidates are scaled by lc and read back from symmetric residues
    let bound = BigInt::from(2) * lc.abs() * (BigInt::one() << n) * BigInt::from(n + 1) * z::max_abs(f);
    let mut exp = 1u32;
    let mut modulus = p.clone();
    while modulus <= bound {
        modulus *= &p;
        exp += 1;
    }
    let lifted = hensel_lift(f, &modular, &k, exp);
    recombine(f, lifted, &modulus)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// Lifts `lc(f) * prod(factors) = f (mod p)` to monic factors modulo `p^exp`.
fn hensel_lift(
    f: &[BigInt],
    factors: &[Poly<PrimeField>],
    k: &PrimeField,
    exp: u32,
) -> Vec<ZPoly> {
    let p = BigInt::from(k.modulus());
    let pk = p.pow(exp);
    let mut target = z::reduce_mod(f, &pk);
    let mut out = Vec::with_capacity(factors.len());
    for (i, g) in factors.iter().enumerate().take(factors.len() - 1) {
        let lc_bar = k.reduce_bigint(target.last().unwrap());
        let h = factors[i + 1..]
            .iter()
            .fold(Poly::constant(k, lc_bar), |acc, q| &acc * q);
        let (big_g, big_h) = lift_pair(&target, g, &h, k, exp);
        out.push(big_g);
        target = big_h;
    }
    let inv = mod_inverse(target.last().unwrap(), &pk);
    out.push(z::reduce_mod(&z::scale(&target, &inv), &pk));
    out
}

/// Given `target = g * h (mod p)` with `g` monic and coprime to `h`, returns
/// `(G, H)` with `G` monic, `G = g`, `H = h (mod p)` and `target = G * H
/// (mod p^exp)`.
fn lift_pair(
    target: &[BigInt],
    g: &Poly<PrimeField>,
    h: &Poly<PrimeField>,
    k: &PrimeField,
    exp: u32,
) -> (ZPoly, ZPoly) {
    let p = BigInt::from(k.modulus());
    // only the cofactor of h in s*g + t*h = 1 is needed
    let (one, _, t) = ext_gcd(g, h);
    debug_assert!(one.is_one());
    let mut big_g = z::from_fp(g);
    let mut big_h = z::from_fp(h);
    let mut m = p.clone();
    for _ in 1..exp {
        let diff = z::sub(target, &z::mul(&big_g, &big_h));
        let e: ZPoly = diff
            .iter()
            .map(|c| {
                debug_assert!((c % &m).is_zero());
                c / &m
            })
            .collect();
        let ebar = z::to_fp(&e, k);
        let dg = (&t * &ebar).rem(g);
        let dh = (&ebar - &(&dg * h)).div_exact(g);
        big_g = z::add_scaled(&big_g, &z::from_fp(&dg), &m);
        big_h = z::add_scaled(&big_h, &z::from_fp(&dh), &m);
        m *= &p;
    }
    (z::reduce_mod(&big_g, &m), z::reduce_mod(&big_h, &m))
}

/// Tries products of lifted factors in increasing subset size; each product
/// (scaled by the current leading coefficient, read symmetrically) whose
/// primitive part divides the remaining polynomial is a true factor.
fn recombine(f: &[BigInt], lifted: Vec<ZPoly>, modulus: &BigInt) -> Vec<ZPoly> {
    let mut remaining: Vec<ZPoly> = lifted;
    let mut current = f.to_vec();
    let mut found = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= remaining.len() {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let lc = current.last().unwrap().clone();
            let product = idx
                .iter()
                .fold(vec![lc], |acc, &i| z::reduce_mod(&z::mul(&acc, &remaining[i]), modulus));
            let cand = z::primitive_part(&z::symmetric_mod(&product, modulus));
            if z::degree(&cand) > 0 {
                if let Some(quot) = z::div_exact(&current, &cand) {
                    current = quot;
                    for &i in idx.iter().rev() {
                        remaining.remove(i);
                    }
                    found.push(cand);
                    continue 'outer;
                }
            }
            if !next_combination(&mut idx, remaining.len()) {
                break;
            }
        }
        size += 1;
    }
    if z::degree(&current) > 0 {
        found.push(z::primitive_part(&current));
    }
    found
}

/// Advances `idx` to the next increasing index tuple below `n`.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
