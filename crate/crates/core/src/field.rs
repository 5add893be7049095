//! Exact ground fields.
//!
//! A [`Field`] is a context value: it owns whatever is needed to do arithmetic
//! (the modulus for `F_p`, nothing for `Q`) and hands out canonical element
//! representatives. Polynomials and matrices carry their field alongside their
//! entries, so mixing elements of two different fields is detected instead of
//! silently coerced.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Serializable description of a supported field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum FieldSpec {
    #[serde(rename = "Fp")]
    PrimeField { p: u64 },
    #[serde(rename = "Q")]
    Rationals,
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::PrimeField { p } => write!(f, "F_{p}"),
            FieldSpec::Rationals => write!(f, "Q"),
        }
    }
}

pub trait Field: Clone + PartialEq + Eq + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    fn spec(&self) -> FieldSpec;

    /// 0 for the rationals.
    fn characteristic(&self) -> u64;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` exactly when `a` is zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, n: i64) -> Self::Elem;

    /// Total order on canonical representatives: integer order on `0..p` for
    /// `F_p`, numeric order for `Q`.
    fn cmp_elem(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering;

    fn parse_elem(&self, text: &str) -> Result<Self::Elem>;
    fn format_elem(&self, a: &Self::Elem) -> String;

    /// True when the canonical text of `a` starts with a minus sign.
    fn is_negative(&self, a: &Self::Elem) -> bool;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                left: self.spec(),
                right: other.spec(),
            })
        }
    }
}

/// The prime field `F_p` with `p` a machine-word prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime_u64(p) {
            Ok(PrimeField { p })
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce_bigint(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }

    fn mul_mod(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul_mod(acc, base);
            }
            base = self.mul_mod(base, base);
            exp >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::PrimeField { p: self.p }
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.p - (b - a)
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.mul_mod(*a, *b)
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (self.p as i128, *a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Some(t0.rem_euclid(self.p as i128) as u64)
    }

    fn from_i64(&self, n: i64) -> u64 {
        (n as i128).rem_euclid(self.p as i128) as u64
    }

    fn cmp_elem(&self, a: &u64, b: &u64) -> Ordering {
        a.cmp(b)
    }

    fn parse_elem(&self, text: &str) -> Result<u64> {
        let t = text.trim();
        if t.contains('/') {
            return Err(Error::FractionInPrimeField(t.to_string()));
        }
        Ok(self.reduce_bigint(&parse_integer(t)?))
    }

    fn format_elem(&self, a: &u64) -> String {
        a.to_string()
    }

    fn is_negative(&self, _a: &u64) -> bool {
        false
    }
}

/// The rationals, with arbitrary-precision numerator and denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }

    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn cmp_elem(&self, a: &BigRational, b: &BigRational) -> Ordering {
        a.cmp(b)
    }

    fn parse_elem(&self, text: &str) -> Result<BigRational> {
        let t = text.trim();
        match t.split_once('/') {
            None => Ok(BigRational::from_integer(parse_integer(t)?)),
            Some((num, den)) => {
                let num = parse_integer(num)?;
                let den = parse_integer(den)?;
                if den.is_zero() {
                    return Err(Error::ZeroDenominator(t.to_string()));
                }
                // BigRational::new reduces and makes the denominator positive
                Ok(BigRational::new(num, den))
            }
        }
    }

    fn format_elem(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    fn is_negative(&self, a: &BigRational) -> bool {
        a.is_negative()
    }
}

fn parse_integer(text: &str) -> Result<BigInt> {
    let t = text.trim();
    let digits = t.strip_prefix(['+', '-']).unwrap_or(t);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::MalformedLiteral(text.to_string()));
    }
    t.parse::<BigInt>()
        .map_err(|_| Error::MalformedLiteral(text.to_string()))
}

/// Deterministic Miller-Rabin, exact for every `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// An element tagged with the field it lives in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scalar<F: Field> {
    value: F::Elem,
    field: F,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
}

impl<F: Field> Scalar<F> {
    pub fn new(field: &F, value: F::Elem) -> Self {
        Scalar {
            value,
            field: field.clone(),
        }
    }

    pub fn parse(text: &str, field: &F) -> Result<Self> {
        Ok(Scalar::new(field, field.parse_elem(text)?))
    }

    pub fn value(&self) -> &F::Elem {
        &self.value
    }

    pub fn into_value(self) -> F::Elem {
        self.value
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.field.is_zero(&self.value)
    }

    fn binary(
        &self,
        other: &Self,
        op: impl FnOnce(&F, &F::Elem, &F::Elem) -> Option<F::Elem>,
    ) -> Result<Self> {
        self.field.check_same(&other.field)?;
        let value = op(&self.field, &self.value, &other.value).ok_or(Error::DivisionByZero)?;
        Ok(Scalar::new(&self.field, value))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.binary(other, |f, a, b| Some(f.add(a, b)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.binary(other, |f, a, b| Some(f.sub(a, b)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.binary(other, |f, a, b| Some(f.mul(a, b)))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.binary(other, |f, a, b| f.div(a, b))
    }

    pub fn neg(&self) -> Self {
        Scalar::new(&self.field, self.field.neg(&self.value))
    }

    pub fn inv(&self) -> Result<Self> {
        let v = self.field.inv(&self.value).ok_or(Error::DivisionByZero)?;
        Ok(Scalar::new(&self.field, v))
    }

    /// Uniform entry point for the six field operations. Binary operations
    /// require `b`; unary ones ignore it.
    pub fn apply(op: ArithOp, a: &Self, b: Option<&Self>) -> Result<Self> {
        let rhs = || {
            b.ok_or_else(|| Error::Format(format!("{op:?} needs a second operand")))
        };
        match op {
            ArithOp::Add => a.add(rhs()?),
            ArithOp::Sub => a.sub(rhs()?),
            ArithOp::Mul => a.mul(rhs()?),
            ArithOp::Div => a.div(rhs()?),
            ArithOp::Neg => Ok(a.neg()),
            ArithOp::Inv => a.inv(),
        }
    }
}

impl<F: Field> fmt::Display for Scalar<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format_elem(&self.value))
    }
}
