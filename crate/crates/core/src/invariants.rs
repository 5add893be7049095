//! The complete conjugacy invariant of a square matrix.
//!
//! For each irreducible factor `p` of the annihilator with exponent `n` and
//! every level `1 <= i <= n`,
//!
//! ```text
//! nu_i = dim_K  Ker p(T)^i / (Ker p(T)^(i-1) + p(T) Ker p(T)^(i+1)),   K = k[x]/(p)
//! ```
//!
//! with `Ker p(T)^0 = 0` and `Ker p(T)^(n+1) = Ker p(T)^n`. The quotient is
//! computed over `k` and divided by `d = deg p`. Two matrices are conjugate
//! iff their annihilators and all `nu_i` agree.

use std::fmt;

use crate::annihilator::minimal_polynomial;
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::matrix::{Matrix, Subspace};
use crate::polynomial::{factor, Factorize, Poly};

#[derive(Debug, Clone)]
pub struct PrimaryComponent<F: Field> {
    /// Monic irreducible factor of the annihilator.
    pub p: Poly<F>,
    /// Exponent of `p` in the annihilator.
    pub n: usize,
    /// `deg p`
    pub d: usize,
    /// `dim Ker p(T)^i` for `i = 1..=n`.
    pub kernel_dims: Vec<usize>,
    /// `nu_i` for `i = 1..=n`.
    pub nu: Vec<usize>,
}

impl<F: Field> PrimaryComponent<F> {
    /// Builds a component from its factor and `nu` table; the kernel
    /// dimensions follow from `dim Ker p^i = sum_j d * min(i, j) * nu_j`.
    pub fn from_nu(p: Poly<F>, nu: Vec<usize>) -> Self {
        let d = p.degree().unwrap_or(0);
        let n = nu.len();
        let kernel_dims = (1..=n)
            .map(|i| {
                nu.iter()
                    .enumerate()
                    .map(|(j, v)| d * i.min(j + 1) * v)
                    .sum()
            })
            .collect();
        PrimaryComponent {
            p,
            n,
            d,
            kernel_dims,
            nu,
        }
    }

    /// `dim Ker p(T)^n`, the size of this primary component.
    pub fn size(&self) -> usize {
        self.kernel_dims.last().copied().unwrap_or(0)
    }
}

impl<F: Field> PartialEq for PrimaryComponent<F> {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.n == other.n && self.nu == other.nu
    }
}

impl<F: Field> Eq for PrimaryComponent<F> {}

/// Factored annihilator plus the `nu` table, in canonical factor order.
#[derive(Debug, Clone)]
pub struct ClassificationRecord<F: Field> {
    pub field: F,
    pub dim: usize,
    pub components: Vec<PrimaryComponent<F>>,
}

impl<F: Field> PartialEq for ClassificationRecord<F> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.dim == other.dim && self.components == other.components
    }
}

impl<F: Field> Eq for ClassificationRecord<F> {}

/// First invariant on which two classifications disagree, rendered as text
/// so finite and cardinal-valued tables share one type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mismatch {
    Field(FieldSpec, FieldSpec),
    Dimension(String, String),
    Annihilator(String, String),
    Nu {
        factor: String,
        level: usize,
        left: String,
        right: String,
    },
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mismatch::Field(a, b) => write!(f, "field differs: {a} vs {b}"),
            Mismatch::Dimension(a, b) => write!(f, "dimension differs: {a} vs {b}"),
            Mismatch::Annihilator(a, b) => write!(f, "annihilator differs: {a} vs {b}"),
            Mismatch::Nu {
                factor,
                level,
                left,
                right,
            } => write!(f, "ν differs at ({factor},{level}): {left} vs {right}"),
        }
    }
}

/// Compares two `nu` tables keyed by factor. Both lists must be in canonical
/// factor order; a factor missing on one side reads as an all-zero table.
pub(crate) fn first_nu_mismatch<F: Field, V: PartialEq + fmt::Display>(
    left: &[(Poly<F>, Vec<V>)],
    right: &[(Poly<F>, Vec<V>)],
    zero: V,
) -> Option<Mismatch> {
    let mut keys: Vec<&Poly<F>> = left.iter().chain(right).map(|(p, _)| p).collect();
    keys.sort_by(|a, b| a.canonical_cmp(b));
    keys.dedup();
    for p in keys {
        let l = left.iter().find(|(q, _)| q == p).map(|(_, v)| v.as_slice());
        let r = right.iter().find(|(q, _)| q == p).map(|(_, v)| v.as_slice());
        let (l, r) = (l.unwrap_or(&[]), r.unwrap_or(&[]));
        for i in 0..l.len().max(r.len()) {
            let a = l.get(i).unwrap_or(&zero);
            let b = r.get(i).unwrap_or(&zero);
            if a != b {
                return Some(Mismatch::Nu {
                    factor: p.to_string(),
                    level: i + 1,
                    left: a.to_string(),
                    right: b.to_string(),
                });
            }
        }
    }
    None
}

impl<F: Field> ClassificationRecord<F> {
    pub fn annihilator(&self) -> Poly<F> {
        self.components
            .iter()
            .fold(Poly::one(&self.field), |acc, c| &acc * &c.p.pow(c.n))
    }

    /// `None` iff the records are equal.
    pub fn first_mismatch(&self, other: &Self) -> Option<Mismatch> {
        if self.field != other.field {
            return Some(Mismatch::Field(self.field.spec(), other.field.spec()));
        }
        if self.dim != other.dim {
            return Some(Mismatch::Dimension(
                self.dim.to_string(),
                other.dim.to_string(),
            ));
        }
        let (a, b) = (self.annihilator(), other.annihilator());
        if a != b {
            return Some(Mismatch::Annihilator(a.to_string(), b.to_string()));
        }
        let table = |r: &Self| -> Vec<(Poly<F>, Vec<usize>)> {
            r.components.iter().map(|c| (c.p.clone(), c.nu.clone())).collect()
        };
        first_nu_mismatch(&table(self), &table(other), 0)
    }

    /// Checks every structural invariant of a record: monic factors in strict
    /// canonical order, nonzero top multiplicity, consistent kernel
    /// dimensions, and primary components filling the whole space.
    pub fn check_consistency(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InconsistentRecord(msg));
        for w in self.components.windows(2) {
            if w[0].p.canonical_cmp(&w[1].p) != std::cmp::Ordering::Less {
                return bad(format!("factors {} and {} out of order", w[0].p, w[1].p));
            }
        }
        let mut total = 0;
        for c in &self.components {
            if c.p.field() != &self.field {
                return bad(format!("factor {} over another field", c.p));
            }
            if !c.p.is_monic() || c.p.degree() != Some(c.d) || c.d == 0 {
                return bad(format!("factor {} is not monic of degree {}", c.p, c.d));
            }
            if c.n == 0 || c.nu.len() != c.n || c.kernel_dims.len() != c.n {
                return bad(format!("table lengths for {} disagree with n = {}", c.p, c.n));
            }
            if c.nu[c.n - 1] == 0 {
                return bad(format!("top multiplicity nu_{} of {} is zero", c.n, c.p));
            }
            let mut prev = 0;
            for &kd in &c.kernel_dims {
                if kd <= prev || (kd - prev) % c.d != 0 {
                    return bad(format!("kernel dimensions {:?} of {}", c.kernel_dims, c.p));
                }
                prev = kd;
            }
            let counted: usize = c.nu.iter().enumerate().map(|(i, v)| c.d * (i + 1) * v).sum();
            if counted != c.size() {
                return bad(format!(
                    "sum d*i*nu_i = {counted} but dim Ker {}^{} = {}",
                    c.p,
                    c.n,
                    c.size()
                ));
            }
            if PrimaryComponent::from_nu(c.p.clone(), c.nu.clone()).kernel_dims != c.kernel_dims {
                return bad(format!("kernel dimensions of {} do not match nu", c.p));
            }
            total += c.size();
        }
        if total != self.dim {
            return bad(format!(
                "primary components have total dimension {total}, expected {}",
                self.dim
            ));
        }
        Ok(())
    }
}

fn exponent_in<F: Field>(p: &Poly<F>, a: &Poly<F>) -> usize {
    let mut n = 0;
    let mut rest = a.clone();
    while !p.is_constant() && p.divides(&rest) {
        rest = rest.div_exact(p);
        n += 1;
    }
    n
}

/// `[Ker p(T)^1, ..., Ker p(T)^n]`, each contained in the next.
pub fn kernel_filtration<F: Field>(t: &Matrix<F>, p: &Poly<F>, n: usize) -> Result<Vec<Subspace<F>>> {
    t.require_square()?;
    t.field().check_same(p.field())?;
    let a = minimal_polynomial(t)?;
    let actual = exponent_in(p, &a);
    if actual == 0 {
        return Err(Error::NotADivisor(p.to_string()));
    }
    if actual != n {
        return Err(Error::ExponentMismatch {
            poly: p.to_string(),
            given: n,
            actual,
        });
    }
    filtration_unchecked(t, p, n)
}

pub(crate) fn filtration_unchecked<F: Field>(
    t: &Matrix<F>,
    p: &Poly<F>,
    n: usize,
) -> Result<Vec<Subspace<F>>> {
    let pt = p.eval_matrix(t)?;
    let mut power = pt.clone();
    let mut out = Vec::with_capacity(n);
    for i in 1..=n {
        if i > 1 {
            power = power.mul(&pt)?;
        }
        out.push(power.kernel());
    }
    Ok(out)
}

/// `W_i = Ker p^(i-1) + p(T) Ker p^(i+1)` for a filtration of length `n`
/// (`i` is 1-based).
pub(crate) fn level_subspace<F: Field>(
    pt: &Matrix<F>,
    filtration: &[Subspace<F>],
    i: usize,
) -> Result<Subspace<F>> {
    let n = filtration.len();
    let ambient = pt.rows();
    let below = if i >= 2 {
        filtration[i - 2].clone()
    } else {
        Subspace::zero(pt.field(), ambient)
    };
    let above = &filtration[i.min(n - 1)];
    below.sum(&Subspace::image(pt, above)?)
}

pub(crate) fn nu_from_filtration<F: Field>(
    pt: &Matrix<F>,
    filtration: &[Subspace<F>],
    d: usize,
) -> Result<Vec<usize>> {
    (1..=filtration.len())
        .map(|i| {
            let w = level_subspace(pt, filtration, i)?;
            let quotient = filtration[i - 1].dim() - w.dim();
            if !quotient.is_multiple_of(d) {
                return Err(Error::Internal(format!(
                    "quotient dimension {quotient} at level {i} is not a multiple of {d}"
                )));
            }
            Ok(quotient / d)
        })
        .collect()
}

/// `[nu_1, ..., nu_n]` for the factor `p` of exponent `n`.
pub fn nu_invariants<F: Field>(t: &Matrix<F>, p: &Poly<F>, n: usize) -> Result<Vec<usize>> {
    let filtration = kernel_filtration(t, p, n)?;
    let d = p.degree().ok_or(Error::ZeroPolynomial)?;
    nu_from_filtration(&p.eval_matrix(t)?, &filtration, d)
}

pub fn classify<F: Factorize>(t: &Matrix<F>) -> Result<ClassificationRecord<F>> {
    let dim = t.require_square()?;
    let a = minimal_polynomial(t)?;
    let factors = if a.is_constant() {
        Vec::new()
    } else {
        factor(&a)?.factors
    };
    let mut components = Vec::with_capacity(factors.len());
    for (p, n) in factors {
        let d = p.degree().unwrap();
        let filtration = filtration_unchecked(t, &p, n)?;
        let nu = nu_from_filtration(&p.eval_matrix(t)?, &filtration, d)?;
        components.push(PrimaryComponent {
            kernel_dims: filtration.iter().map(Subspace::dim).collect(),
            p,
            n,
            d,
            nu,
        });
    }
    let record = ClassificationRecord {
        field: t.field().clone(),
        dim,
        components,
    };
    record
        .check_consistency()
        .map_err(|e| Error::Internal(e.to_string()))?;
    Ok(record)
}

fn check_pair<F: Field>(f: &Matrix<F>, g: &Matrix<F>) -> Result<()> {
    f.field().check_same(g.field())?;
    let (nf, ng) = (f.require_square()?, g.require_square()?);
    if nf != ng {
        return Err(Error::DimensionMismatch(format!("{nf}x{nf} vs {ng}x{ng}")));
    }
    Ok(())
}

pub fn is_conjugate<F: Factorize>(f: &Matrix<F>, g: &Matrix<F>) -> Result<bool> {
    check_pair(f, g)?;
    Ok(classify(f)? == classify(g)?)
}

pub(crate) fn check_conjugacy_inputs<F: Field>(f: &Matrix<F>, g: &Matrix<F>) -> Result<()> {
    check_pair(f, g)
}

/// Whether `I + T` is invertible, read off the annihilator of `I + T`: it is
/// invertible iff `x` does not divide it.
pub fn one_plus_invertible<F: Field>(t: &Matrix<F>) -> Result<bool> {
    t.require_square()?;
    let mut shifted = t.clone();
    shifted.add_to_diagonal(&t.field().one());
    let a = minimal_polynomial(&shifted)?;
    Ok(!t.field().is_zero(&a.coeff(0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn q(text: &str) -> Poly<Rationals> {
        Poly::parse(text, &Rationals).unwrap()
    }

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn nilpotent_blocks<F: Field>(k: &F, sizes: &[usize]) -> Matrix<F> {
        let blocks: Vec<Matrix<F>> = sizes
            .iter()
            .map(|&s| {
                let mut m = Matrix::zeros(k, s, s);
                for i in 0..s.saturating_sub(1) {
                    m.set(i, i + 1, k.one());
                }
                m
            })
            .collect();
        Matrix::block_diagonal(k, &blocks)
    }

    /// Independent oracle: `d nu_i = 2 k_i - k_(i-1) - k_(i+1)` from kernel
    /// dimensions only.
    fn nu_by_rank_formula(dims: &[usize], d: usize) -> Vec<usize> {
        let n = dims.len();
        let k = |i: usize| if i == 0 { 0 } else { dims[(i - 1).min(n - 1)] };
        (1..=n).map(|i| (2 * k(i) - k(i - 1) - k(i + 1)) / d).collect()
    }

    #[test]
    fn filtration_examples() {
        let x = q("x");
        let z = Matrix::zeros(&Rationals, 3, 3);
        let f = kernel_filtration(&z, &x, 1).unwrap();
        assert_eq!(f, vec![Subspace::full(&Rationals, 3)]);

        let j3 = nilpotent_blocks(&Rationals, &[3]);
        let dims: Vec<_> = kernel_filtration(&j3, &x, 3).unwrap().iter().map(Subspace::dim).collect();
        assert_eq!(dims, vec![1, 2, 3]);

        let t = nilpotent_blocks(&Rationals, &[2, 1]);
        let dims: Vec<_> = kernel_filtration(&t, &x, 2).unwrap().iter().map(Subspace::dim).collect();
        // rank T = 1, rank T^2 = 0
        assert_eq!(dims, vec![2, 3]);
    }

    #[test]
    fn filtration_errors() {
        let t = nilpotent_blocks(&Rationals, &[2]);
        assert_eq!(
            kernel_filtration(&t, &q("x - 1"), 1),
            Err(Error::NotADivisor("x - 1".into()))
        );
        assert!(matches!(
            kernel_filtration(&t, &q("x"), 3),
            Err(Error::ExponentMismatch { given: 3, actual: 2, .. })
        ));
    }

    #[test]
    fn nu_examples() {
        let x = q("x");
        let j3 = nilpotent_blocks(&Rationals, &[3]);
        assert_eq!(nu_invariants(&j3, &x, 3).unwrap(), vec![0, 0, 1]);

        let t = nilpotent_blocks(&Rationals, &[2, 1, 1]);
        let nu = nu_invariants(&t, &x, 2).unwrap();
        assert_eq!(nu, vec![2, 1]);
        assert_eq!(nu_by_rank_formula(&[3, 4], 1), nu);

        let k = fp(3);
        let companion = Matrix::from_i64s(&k, &[&[0, -1], &[1, 0]]);
        let p = Poly::parse("x^2 + 1", &k).unwrap();
        assert_eq!(kernel_filtration(&companion, &p, 1).unwrap()[0].dim(), 2);
        assert_eq!(nu_invariants(&companion, &p, 1).unwrap(), vec![1]);
    }

    #[test]
    fn classify_examples() {
        let r = classify(&Matrix::identity(&Rationals, 2)).unwrap();
        assert_eq!(r.annihilator(), q("x - 1"));
        assert_eq!(r.components.len(), 1);
        assert_eq!((r.components[0].n, r.components[0].nu.clone()), (1, vec![2]));

        let k = fp(2);
        let r = classify(&nilpotent_blocks(&k, &[2, 1, 1])).unwrap();
        assert_eq!(r.annihilator(), Poly::parse("x^2", &k).unwrap());
        assert_eq!(r.components[0].nu, vec![2, 1]);
        assert_eq!(r.components[0].kernel_dims, vec![3, 4]);

        let r = classify(&Matrix::from_i64s(&Rationals, &[&[1, 0], &[0, 2]])).unwrap();
        assert_eq!(r.annihilator(), q("x^2 - 3*x + 2"));
        let ps: Vec<_> = r.components.iter().map(|c| (c.p.clone(), c.nu.clone())).collect();
        assert_eq!(ps, vec![(q("x - 2"), vec![1]), (q("x - 1"), vec![1])]);

        let r = classify(&Matrix::zeros(&Rationals, 0, 0)).unwrap();
        assert_eq!((r.dim, r.components.len()), (0, 0));
    }

    #[test]
    fn conjugacy_examples() {
        let k = fp(2);
        let a = nilpotent_blocks(&k, &[2, 2]);
        let b = nilpotent_blocks(&k, &[2, 1, 1]);
        assert!(!is_conjugate(&a, &b).unwrap());
        let m = classify(&a).unwrap().first_mismatch(&classify(&b).unwrap()).unwrap();
        assert_eq!(
            m,
            Mismatch::Nu {
                factor: "x".into(),
                level: 1,
                left: "0".into(),
                right: "2".into()
            }
        );
        assert_eq!(m.to_string(), "ν differs at (x,1): 0 vs 2");

        let z = Matrix::zeros(&k, 3, 3);
        let id = Matrix::identity(&k, 3);
        assert!(!is_conjugate(&z, &id).unwrap());
        assert!(matches!(
            classify(&z).unwrap().first_mismatch(&classify(&id).unwrap()),
            Some(Mismatch::Annihilator(..))
        ));

        let s = Matrix::from_i64s(&k, &[&[1, 1, 0, 0], &[0, 1, 0, 1], &[1, 0, 1, 0], &[0, 0, 0, 1]]);
        let conj = Matrix::conjugate(&s, &b).unwrap();
        assert!(is_conjugate(&b, &conj).unwrap());

        assert!(matches!(
            is_conjugate(&a, &Matrix::zeros(&k, 3, 3)),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(
            is_conjugate(&a, &Matrix::zeros(&fp(3), 4, 4)),
            Err(Error::FieldMismatch { .. })
        ));
    }

    #[test]
    fn one_plus_examples() {
        let k = fp(5);
        assert!(one_plus_invertible(&Matrix::zeros(&k, 3, 3)).unwrap());
        let mut minus_id = Matrix::zeros(&k, 3, 3);
        minus_id.add_to_diagonal(&k.from_i64(-1));
        assert!(!one_plus_invertible(&minus_id).unwrap());
        let j = Matrix::from_i64s(&k, &[&[-1, 1], &[0, -1]]);
        assert!(!one_plus_invertible(&j).unwrap());
        let mut ipt = j.clone();
        ipt.add_to_diagonal(&1);
        assert_eq!(ipt.rank(), 1);
    }

    #[test]
    fn record_consistency_rejects_bad_tables() {
        let good = classify(&nilpotent_blocks(&Rationals, &[2, 1])).unwrap();
        assert!(good.check_consistency().is_ok());

        let mut r = good.clone();
        r.dim = 4;
        assert!(r.check_consistency().is_err());

        let mut r = good.clone();
        r.components[0] = PrimaryComponent::from_nu(q("x"), vec![3, 0]);
        assert!(r.check_consistency().is_err());

        let mut r = good;
        r.components.push(PrimaryComponent::from_nu(q("x - 5"), vec![1]));
        r.components.swap(0, 1);
        r.dim += 1;
        assert!(r.check_consistency().is_ok());
        r.components.swap(0, 1);
        assert!(r.check_consistency().is_err());
    }
}
