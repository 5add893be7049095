//! Bare integer polynomials (lowest degree first, no trailing zeros) used by
//! the factorization over `Q`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::field::PrimeField;

use super::Poly;

pub(super) type ZPoly = Vec<BigInt>;

pub(super) fn trim(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

pub(super) fn degree(a: &[BigInt]) -> usize {
    a.len().saturating_sub(1)
}

pub(super) fn mul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub(super) fn sub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
            .collect(),
    )
}

pub(super) fn add_scaled(a: &[BigInt], b: &[BigInt], s: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&zero) + b.get(i).unwrap_or(&zero) * s)
            .collect(),
    )
}

pub(super) fn scale(a: &[BigInt], s: &BigInt) -> ZPoly {
    trim(a.iter().map(|c| c * s).collect())
}

pub(super) fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Divides out the content and makes the leading coefficient positive.
pub(super) fn primitive_part(a: &[BigInt]) -> ZPoly {
    let mut c = content(a);
    if c.is_zero() {
        return Vec::new();
    }
    if a.last().unwrap().is_negative() {
        c = -c;
    }
    a.iter().map(|x| x / &c).collect()
}

pub(super) fn reduce_mod(a: &[BigInt], m: &BigInt) -> ZPoly {
    trim(a.iter().map(|c| c.mod_floor(m)).collect())
}

/// Representatives in `(-m/2, m/2]`.
pub(super) fn symmetric_mod(a: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m / 2;
    trim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

/// Exact division over `Z`; `None` if `b` does not divide `a`.
pub(super) fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    if b.is_empty() {
        return None;
    }
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let db = b.len() - 1;
    let lb = b.last().unwrap();
    let mut rem = a.to_vec();
    let mut quot = vec![BigInt::zero(); a.len() - db];
    for i in (db..a.len()).rev() {
        if rem[i].is_zero() {
            continue;
        }
        let (q, r) = rem[i].div_rem(lb);
        if !r.is_zero() {
            return None;
        }
        for (j, c) in b.iter().enumerate() {
            rem[i - db + j] -= &q * c;
        }
        quot[i - db] = q;
    }
    rem.iter().all(Zero::is_zero).then(|| trim(quot))
}

pub(super) fn max_abs(a: &[BigInt]) -> BigInt {
    a.iter().map(|c| c.abs()).max().unwrap_or_else(BigInt::zero)
}

pub(super) fn to_fp(a: &[BigInt], k: &PrimeField) -> Poly<PrimeField> {
    Poly::new(k, a.iter().map(|c| k.reduce_bigint(c)).collect())
}

pub(super) fn from_fp(a: &Poly<PrimeField>) -> ZPoly {
    a.coeffs().iter().map(|&c| BigInt::from(c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(c: &[i64]) -> ZPoly {
        trim(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn exact_division() {
        let a = z(&[-1, 0, 0, 0, 1]);
        assert_eq!(div_exact(&a, &z(&[1, 1])), Some(z(&[-1, 1, -1, 1])));
        assert_eq!(div_exact(&a, &z(&[1, 2])), None);
        assert_eq!(div_exact(&z(&[2, 2]), &z(&[1, 1])), Some(z(&[2])));
    }

    #[test]
    fn primitive_and_symmetric() {
        assert_eq!(primitive_part(&z(&[4, -6, -2])), z(&[-2, 3, 1]));
        assert_eq!(symmetric_mod(&z(&[6, 7, 3]), &BigInt::from(7)), z(&[-1, 0, 3]));
        assert_eq!(content(&z(&[6, 9, 12])), BigInt::from(3));
    }
}
