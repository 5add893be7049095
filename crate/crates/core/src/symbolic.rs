//! Countable-dimensional endomorphisms given as formal block sums.
//!
//! An endomorphism with an annihilating polynomial on a countable-dimensional
//! space is, up to conjugation, a direct sum of cyclic pieces `k[x]/p^i` with
//! multiplicities in `N ∪ {aleph_0}`. A [`SymbolicEndo`] records exactly that
//! data; its `nu` invariant at `(p, i)` is the multiplicity of the block
//! `(p, i)`.

use std::fmt;
use std::ops::{Add, Mul};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::invariants::{first_nu_mismatch, ClassificationRecord, Mismatch, PrimaryComponent};
use crate::polynomial::{factor, Factorize, Poly};

/// A cardinal in `N ∪ {aleph_0}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cardinal {
    Fin(u64),
    Aleph0,
}

impl Cardinal {
    pub fn is_zero(self) -> bool {
        self == Cardinal::Fin(0)
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Cardinal::Fin(_))
    }
}

impl Add for Cardinal {
    type Output = Cardinal;
    fn add(self, rhs: Cardinal) -> Cardinal {
        match (self, rhs) {
            (Cardinal::Fin(a), Cardinal::Fin(b)) => Cardinal::Fin(a + b),
            _ => Cardinal::Aleph0,
        }
    }
}

impl Mul for Cardinal {
    type Output = Cardinal;
    fn mul(self, rhs: Cardinal) -> Cardinal {
        match (self, rhs) {
            (Cardinal::Fin(a), Cardinal::Fin(b)) => Cardinal::Fin(a * b),
            (Cardinal::Fin(0), _) | (_, Cardinal::Fin(0)) => Cardinal::Fin(0),
            _ => Cardinal::Aleph0,
        }
    }
}

impl std::iter::Sum for Cardinal {
    fn sum<I: Iterator<Item = Cardinal>>(iter: I) -> Cardinal {
        iter.fold(Cardinal::Fin(0), Add::add)
    }
}

impl fmt::Display for Cardinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinal::Fin(n) => write!(f, "{n}"),
            Cardinal::Aleph0 => f.write_str("aleph0"),
        }
    }
}

impl Serialize for Cardinal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Cardinal::Fin(n) => s.serialize_u64(*n),
            Cardinal::Aleph0 => s.serialize_str("aleph0"),
        }
    }
}

impl<'de> Deserialize<'de> for Cardinal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(n) => Ok(Cardinal::Fin(n)),
            Raw::Text(t) if t == "aleph0" => Ok(Cardinal::Aleph0),
            Raw::Text(t) => t
                .parse::<u64>()
                .map(Cardinal::Fin)
                .map_err(|_| serde::de::Error::custom(format!("bad cardinal `{t}`"))),
        }
    }
}

/// `mult` copies of `k[x]/p^exp`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymBlock<F: Field> {
    pub p: Poly<F>,
    pub exp: usize,
    pub mult: Cardinal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicEndo<F: Field> {
    pub field: F,
    pub dim: Cardinal,
    pub blocks: Vec<SymBlock<F>>,
}

/// Element of the quotient set: the number of distinct factors and, per
/// factor in canonical order, `(p, n, [nu_1, ..., nu_n])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalLabel<F: Field> {
    pub r: usize,
    pub factors: Vec<(Poly<F>, usize, Vec<Cardinal>)>,
}

impl<F: Field> fmt::Display for CanonicalLabel<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(p, n, nu)| {
                let nu: Vec<String> = nu.iter().map(Cardinal::to_string).collect();
                format!("({p}, {n}, [{}])", nu.join(", "))
            })
            .collect();
        write!(f, "({}, [{}])", self.r, parts.join(", "))
    }
}

fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidSymbolic(msg.into()))
}

impl<F: Field> SymbolicEndo<F> {
    fn distinct_factors(&self) -> Vec<&Poly<F>> {
        let mut ps: Vec<&Poly<F>> = self.blocks.iter().map(|b| &b.p).collect();
        ps.sort_by(|a, b| a.canonical_cmp(b));
        ps.dedup();
        ps
    }

    fn top_exponent(&self, p: &Poly<F>) -> usize {
        self.blocks
            .iter()
            .filter(|b| &b.p == p)
            .map(|b| b.exp)
            .max()
            .unwrap_or(0)
    }

    /// Canonical order with duplicate keys merged and zero blocks dropped,
    /// without any validity checks.
    fn normalized(&self) -> Self {
        let mut blocks: Vec<SymBlock<F>> = Vec::new();
        for b in &self.blocks {
            match blocks.iter_mut().find(|x| x.p == b.p && x.exp == b.exp) {
                Some(x) => x.mult = x.mult + b.mult,
                None => blocks.push(b.clone()),
            }
        }
        blocks.retain(|b| !b.mult.is_zero());
        blocks.sort_by(|a, b| a.p.canonical_cmp(&b.p).then(b.exp.cmp(&a.exp)));
        SymbolicEndo {
            field: self.field.clone(),
            dim: self.dim,
            blocks,
        }
    }

    /// `prod_p p^(n_p)` with `n_p` the largest exponent present for `p`.
    pub fn annihilator(&self) -> Poly<F> {
        self.distinct_factors()
            .into_iter()
            .fold(Poly::one(&self.field), |acc, p| &acc * &p.pow(self.top_exponent(p)))
    }

    /// Multiplicity of the block `(p, i)`.
    pub fn nu(&self, p: &Poly<F>, i: usize) -> Cardinal {
        self.blocks
            .iter()
            .filter(|b| &b.p == p && b.exp == i)
            .map(|b| b.mult)
            .sum()
    }

    fn nu_table(&self) -> Vec<(Poly<F>, Vec<Cardinal>)> {
        self.distinct_factors()
            .into_iter()
            .map(|p| {
                let nu = (1..=self.top_exponent(p)).map(|i| self.nu(p, i)).collect();
                (p.clone(), nu)
            })
            .collect()
    }

    pub fn canonical_label(&self) -> CanonicalLabel<F> {
        let factors: Vec<_> = self
            .nu_table()
            .into_iter()
            .map(|(p, nu)| (p, nu.len(), nu))
            .collect();
        CanonicalLabel {
            r: factors.len(),
            factors,
        }
    }

    fn check_comparable(&self, other: &Self) -> Result<()> {
        self.field.check_same(&other.field)?;
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(format!(
                "dimensions {} and {}",
                self.dim, other.dim
            )));
        }
        Ok(())
    }

    /// `None` iff the two endomorphisms are conjugate.
    pub fn first_mismatch(&self, other: &Self) -> Result<Option<Mismatch>> {
        self.check_comparable(other)?;
        let (a, b) = (self.annihilator(), other.annihilator());
        if a != b {
            return Ok(Some(Mismatch::Annihilator(a.to_string(), b.to_string())));
        }
        Ok(first_nu_mismatch(
            &self.nu_table(),
            &other.nu_table(),
            Cardinal::Fin(0),
        ))
    }

    pub fn is_conjugate(&self, other: &Self) -> Result<bool> {
        Ok(self.first_mismatch(other)?.is_none())
    }

    /// Some power has finite-dimensional image: everything outside the
    /// `x`-primary part is finite-dimensional.
    pub fn is_finite_potent(&self) -> bool {
        let x = Poly::x(&self.field);
        self.blocks
            .iter()
            .filter(|b| b.p != x)
            .map(|b| Cardinal::Fin((b.p.degree().unwrap_or(0) * b.exp) as u64) * b.mult)
            .sum::<Cardinal>()
            .is_finite()
    }

    /// `1 + f` is invertible iff no block of `f + 1` sits at the factor `x`.
    pub fn one_plus_invertible(&self) -> Result<bool> {
        let one = Scalar::new(&self.field, self.field.one());
        let shifted = self.shift(&one)?;
        let x = Poly::x(&self.field);
        Ok((1..=shifted.top_exponent(&x)).all(|i| shifted.nu(&x, i).is_zero()))
    }

    /// `f + c`: every block `(p(x), i, m)` becomes `(p(x - c), i, m)`.
    pub fn shift(&self, c: &Scalar<F>) -> Result<Self> {
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                Ok(SymBlock {
                    p: b.p.shift(c)?,
                    exp: b.exp,
                    mult: b.mult,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SymbolicEndo {
            field: self.field.clone(),
            dim: self.dim,
            blocks,
        }
        .normalized())
    }

    /// Finite classification record obtained by replacing every `aleph_0`
    /// multiplicity with `aleph0_as`.
    pub fn truncate(&self, aleph0_as: u64) -> Result<ClassificationRecord<F>> {
        let mut dim = 0usize;
        let mut components = Vec::new();
        for (p, nu) in self.nu_table() {
            let nu: Vec<usize> = nu
                .into_iter()
                .map(|c| match c {
                    Cardinal::Fin(n) => n as usize,
                    Cardinal::Aleph0 => aleph0_as as usize,
                })
                .collect();
            let comp = PrimaryComponent::from_nu(p, nu);
            dim += comp.size();
            components.push(comp);
        }
        let record = ClassificationRecord {
            field: self.field.clone(),
            dim,
            components,
        };
        record.check_consistency()?;
        Ok(record)
    }

    /// Blocks `(p_j, i, nu_ij)` for every nonzero `nu_ij` of a finite record.
    pub fn embed(record: &ClassificationRecord<F>) -> Result<Self> {
        record.check_consistency()?;
        let blocks = record
            .components
            .iter()
            .flat_map(|c| {
                (1..=c.n).rev().filter(|&i| c.nu[i - 1] > 0).map(move |i| SymBlock {
                    p: c.p.clone(),
                    exp: i,
                    mult: Cardinal::Fin(c.nu[i - 1] as u64),
                })
            })
            .collect();
        Ok(SymbolicEndo {
            field: record.field.clone(),
            dim: Cardinal::Fin(record.dim as u64),
            blocks,
        })
    }
}

impl<F: Factorize> SymbolicEndo<F> {
    /// Checks all structural requirements and returns the normalized form.
    pub fn validate(&self) -> Result<Self> {
        for b in &self.blocks {
            b.p.field().check_same(&self.field)?;
            if b.exp == 0 {
                return invalid(format!("block ({}, 0) has exponent zero", b.p));
            }
            if !b.p.is_monic() || b.p.is_constant() {
                return invalid(format!("{} is not a monic polynomial of positive degree", b.p));
            }
            let f = factor(&b.p)?;
            if f.factors.len() != 1 || f.factors[0].1 != 1 {
                return Err(Error::Reducible(b.p.to_string()));
            }
        }
        let norm = self.normalized();
        for b in self.blocks.iter().filter(|b| b.mult.is_zero()) {
            if b.exp > norm.top_exponent(&b.p) {
                return invalid(format!(
                    "top-exponent block ({}, {}) has multiplicity zero",
                    b.p, b.exp
                ));
            }
        }
        let total: Cardinal = norm
            .blocks
            .iter()
            .map(|b| Cardinal::Fin((b.p.degree().unwrap() * b.exp) as u64) * b.mult)
            .sum();
        if norm.dim == Cardinal::Aleph0 && total.is_finite() {
            return invalid(format!(
                "dimension aleph0 but all multiplicities are finite (total {total})"
            ));
        }
        if total != norm.dim {
            return invalid(format!("blocks have total dimension {total}, declared {}", norm.dim));
        }
        Ok(norm)
    }
}
