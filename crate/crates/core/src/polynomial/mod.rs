//! Dense univariate polynomials over an exact field.

mod factor;
mod finite;
mod integer;
mod rational;
mod text;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;

pub use factor::{factor, factor_with_seed, squarefree_decomposition, Factorization, Factorize};
pub use finite::passes_rabin_test;
pub use rational::{irreducible_at_primes, splits_at_prime};

pub(crate) const DEFAULT_SEED: u64 = 0x5eed_c0de;

/// Coefficients are stored lowest degree first with no trailing zeros, so the
/// zero polynomial has an empty coefficient list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<F: Field> {
    coeffs: Vec<F::Elem>,
    field: F,
}

impl<F: Field> Poly<F> {
    pub fn new(field: &F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly {
            coeffs,
            field: field.clone(),
        }
    }

    pub fn from_i64s(field: &F, coeffs: &[i64]) -> Self {
        Poly::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: &F) -> Self {
        Poly::new(field, Vec::new())
    }

    pub fn one(field: &F) -> Self {
        Poly::constant(field, field.one())
    }

    pub fn constant(field: &F, c: F::Elem) -> Self {
        Poly::new(field, vec![c])
    }

    pub fn x(field: &F) -> Self {
        Poly::monomial(field, field.one(), 1)
    }

    pub fn monomial(field: &F, c: F::Elem, k: usize) -> Self {
        let mut coeffs = vec![field.zero(); k + 1];
        coeffs[k] = c;
        Poly::new(field, coeffs)
    }

    /// `x - c`
    pub fn linear(field: &F, c: F::Elem) -> Self {
        Poly::new(field, vec![field.neg(&c), field.one()])
    }

    pub fn parse(text: &str, field: &F) -> Result<Self> {
        text::parse(text, field)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> F::Elem {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn leading(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| self.field.is_one(c))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lc) => {
                let inv = self.field.inv(lc).unwrap();
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let k = &self.field;
        Poly::new(k, self.coeffs.iter().map(|a| k.mul(a, c)).collect())
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&F::Elem, &F::Elem) -> F::Elem) -> Self {
        assert_eq!(self.field, other.field, "polynomials over different fields");
        let k = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                let z = k.zero();
                op(
                    self.coeffs.get(i).unwrap_or(&z),
                    other.coeffs.get(i).unwrap_or(&z),
                )
            })
            .collect();
        Poly::new(k, coeffs)
    }

    fn mul_poly(&self, other: &Self) -> Self {
        assert_eq!(self.field, other.field, "polynomials over different fields");
        let k = &self.field;
        if self.is_zero() || other.is_zero() {
            return Poly::zero(k);
        }
        let mut out = vec![k.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if k.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = k.add(&out[i + j], &k.mul(a, b));
            }
        }
        Poly::new(k, out)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.field.check_same(&other.field)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.field.check_same(&other.field)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.field.check_same(&other.field)?;
        Ok(self * other)
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn divmod(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.field.check_same(&divisor.field)?;
        let k = &self.field;
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lc_inv = k.inv(divisor.leading().unwrap()).unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(k), self.clone()));
        }
        let mut quot = vec![k.zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = k.mul(&rem[i], &lc_inv);
            if k.is_zero(&c) {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                let t = k.mul(&c, d);
                rem[i - dd + j] = k.sub(&rem[i - dd + j], &t);
            }
            quot[i - dd] = c;
        }
        rem.truncate(dd);
        Ok((Poly::new(k, quot), Poly::new(k, rem)))
    }

    /// Remainder modulo a nonzero polynomial of the same field.
    pub fn rem(&self, divisor: &Self) -> Self {
        self.divmod(divisor).expect("nonzero divisor").1
    }

    /// Exact quotient; panics if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Self {
        let (q, r) = self.divmod(divisor).expect("nonzero divisor");
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, other: &Self) -> bool {
        !self.is_zero() && other.rem(self).is_zero()
    }

    pub fn derivative(&self) -> Self {
        let k = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| k.mul(&k.from_i64(i as i64), c))
            .collect();
        Poly::new(k, coeffs)
    }

    pub fn pow(&self, mut e: usize) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self^e mod modulus`.
    pub fn powmod(&self, e: &BigUint, modulus: &Self) -> Self {
        let mut acc = Poly::one(&self.field).rem(modulus);
        let base = self.rem(modulus);
        for i in (0..e.bits()).rev() {
            acc = (&acc * &acc).rem(modulus);
            if e.bit(i) {
                acc = (&acc * &base).rem(modulus);
            }
        }
        acc
    }

    pub fn eval(&self, at: &F::Elem) -> F::Elem {
        let k = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(k.zero(), |acc, c| k.add(&k.mul(&acc, at), c))
    }

    /// `self(inner(x))`
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(&self.field), |acc, c| {
                &(&acc * inner) + &Poly::constant(&self.field, c.clone())
            })
    }

    /// `self(x - c)`; monic inputs stay monic.
    pub fn shift(&self, c: &Scalar<F>) -> Result<Self> {
        self.field.check_same(c.field())?;
        Ok(self.compose(&Poly::linear(&self.field, c.value().clone())))
    }

    /// `p(T)` by Horner's scheme on matrices.
    pub fn eval_matrix(&self, t: &Matrix<F>) -> Result<Matrix<F>> {
        self.field.check_same(t.field())?;
        if !t.is_square() {
            return Err(Error::NotSquare {
                rows: t.rows(),
                cols: t.cols(),
            });
        }
        let n = t.rows();
        let mut acc = Matrix::zeros(&self.field, n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(t)?;
            acc.add_to_diagonal(c);
        }
        Ok(acc)
    }

    /// Canonical total order: degree ascending, then coefficient tuples
    /// compared lexicographically from the constant term up.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| {
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| self.field.cmp_elem(a, b))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
    }
}

impl<F: Field> Add for &Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: Self) -> Poly<F> {
        let k = self.field.clone();
        self.zip_with(rhs, |a, b| k.add(a, b))
    }
}

impl<F: Field> Sub for &Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: Self) -> Poly<F> {
        let k = self.field.clone();
        self.zip_with(rhs, |a, b| k.sub(a, b))
    }
}

impl<F: Field> Mul for &Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: Self) -> Poly<F> {
        self.mul_poly(rhs)
    }
}

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        let k = &self.field;
        Poly::new(k, self.coeffs.iter().map(|c| k.neg(c)).collect())
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::format(self))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
    DivMod,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyArith<F: Field> {
    Single(Poly<F>),
    QuotRem(Poly<F>, Poly<F>),
}

/// Checked ring operations on `k[x]`.
pub fn poly_arith<F: Field>(op: PolyOp, a: &Poly<F>, b: &Poly<F>) -> Result<PolyArith<F>> {
    Ok(match op {
        PolyOp::Add => PolyArith::Single(a.checked_add(b)?),
        PolyOp::Sub => PolyArith::Single(a.checked_sub(b)?),
        PolyOp::Mul => PolyArith::Single(a.checked_mul(b)?),
        PolyOp::DivMod => {
            let (q, r) = a.divmod(b)?;
            PolyArith::QuotRem(q, r)
        }
    })
}

/// Monic gcd; errors only when both inputs are zero.
pub fn gcd<F: Field>(a: &Poly<F>, b: &Poly<F>) -> Result<Poly<F>> {
    a.field.check_same(&b.field)?;
    if a.is_zero() && b.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (mut r0, mut r1) = (a.clone(), b.clone());
    while !r1.is_zero() {
        let r = r0.rem(&r1);
        r0 = r1;
        r1 = r;
    }
    Ok(r0.monic())
}

/// Returns `(g, s, t)` with `s*a + t*b = g` and `g` the monic gcd.
pub(crate) fn ext_gcd<F: Field>(a: &Poly<F>, b: &Poly<F>) -> (Poly<F>, Poly<F>, Poly<F>) {
    let k = a.field();
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Poly::one(k), Poly::zero(k));
    let (mut t0, mut t1) = (Poly::zero(k), Poly::one(k));
    while !r1.is_zero() {
        let (q, r) = r0.divmod(&r1).unwrap();
        let s = &s0 - &(&q * &s1);
        let t = &t0 - &(&q * &t1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    match r0.leading() {
        None => (r0, s0, t0),
        Some(lc) => {
            let inv = k.inv(lc).unwrap();
            (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
        }
    }
}

pub fn lcm<F: Field>(a: &Poly<F>, b: &Poly<F>) -> Result<Poly<F>> {
    if a.is_zero() || b.is_zero() {
        return Ok(Poly::zero(a.field()));
    }
    let g = gcd(a, b)?;
    Ok((a * &b.div_exact(&g)).monic())
}
