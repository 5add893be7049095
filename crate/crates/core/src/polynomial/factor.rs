use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals, Scalar};

use super::{finite, gcd, rational, Poly, DEFAULT_SEED};

/// `unit * prod(p_j ^ n_j)` with monic irreducible `p_j` in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization<F: Field> {
    pub unit: Scalar<F>,
    pub factors: Vec<(Poly<F>, usize)>,
}

impl<F: Field> Factorization<F> {
    pub fn expand(&self) -> Poly<F> {
        let k = self.unit.field();
        self.factors
            .iter()
            .fold(Poly::constant(k, self.unit.value().clone()), |acc, (p, n)| {
                &acc * &p.pow(*n)
            })
    }
}

/// Fields over which squarefree polynomials can be split into irreducibles.
pub trait Factorize: Field {
    /// Splits a monic squarefree polynomial of positive degree into its monic
    /// irreducible factors, in any order.
    fn split_squarefree(&self, f: &Poly<Self>, seed: u64) -> Vec<Poly<Self>>;
}

impl Factorize for PrimeField {
    fn split_squarefree(&self, f: &Poly<Self>, seed: u64) -> Vec<Poly<Self>> {
        finite::split_squarefree(f, seed)
    }
}

impl Factorize for Rationals {
    fn split_squarefree(&self, f: &Poly<Self>, _seed: u64) -> Vec<Poly<Self>> {
        rational::split_squarefree(f)
    }
}

/// Squarefree decomposition of the monic associate of `a`: pairwise coprime
/// squarefree monic parts with multiplicities, sorted by multiplicity.
///
/// In characteristic `p` a part whose derivative vanishes is a polynomial in
/// `x^p`; its `p`-th root is taken coefficientwise since `c^p = c` in `F_p`.
pub fn squarefree_decomposition<F: Field>(a: &Poly<F>) -> Result<Vec<(Poly<F>, usize)>> {
    if a.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = squarefree_monic(&a.monic());
    out.sort_by(|x, y| x.1.cmp(&y.1).then_with(|| x.0.canonical_cmp(&y.0)));
    Ok(out)
}

fn squarefree_monic<F: Field>(f: &Poly<F>) -> Vec<(Poly<F>, usize)> {
    let k = f.field();
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let p = k.characteristic() as usize;
    let mut c = gcd(f, &f.derivative()).unwrap();
    let mut w = f.div_exact(&c);
    let mut i = 1;
    while !w.is_one() {
        let y = gcd(&w, &c).unwrap();
        let z = w.div_exact(&y);
        if !z.is_one() {
            out.push((z, i));
        }
        i += 1;
        c = c.div_exact(&y);
        w = y;
    }
    if !c.is_one() {
        // only reachable in positive characteristic
        debug_assert!(p > 0);
        let root = Poly::new(k, c.coeffs().iter().step_by(p).cloned().collect());
        for (g, m) in squarefree_monic(&root) {
            out.push((g, m * p));
        }
    }
    out
}

/// Complete factorization into monic irreducibles.
pub fn factor<F: Factorize>(a: &Poly<F>) -> Result<Factorization<F>> {
    factor_with_seed(a, DEFAULT_SEED)
}

/// As [`factor`], with an explicit seed for the randomized splitting over
/// `F_p`. The result does not depend on the seed.
pub fn factor_with_seed<F: Factorize>(a: &Poly<F>, seed: u64) -> Result<Factorization<F>> {
    let k = a.field();
    match a.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Err(Error::ConstantPolynomial),
        Some(_) => {}
    }
    let unit = Scalar::new(k, a.leading().unwrap().clone());
    let mut factors = Vec::new();
    for (part, m) in squarefree_decomposition(a)? {
        for q in k.split_squarefree(&part, seed) {
            factors.push((q, m));
        }
    }
    factors.sort_by(|x, y| x.0.canonical_cmp(&y.0));
    Ok(Factorization { unit, factors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::gcd;

    fn q(text: &str) -> Poly<Rationals> {
        Poly::parse(text, &Rationals).unwrap()
    }

    fn pp(text: &str, p: u64) -> Poly<PrimeField> {
        Poly::parse(text, &PrimeField::new(p).unwrap()).unwrap()
    }

    #[test]
    fn squarefree_examples() {
        let a = &q("x - 1").pow(2) * &q("x + 1");
        assert_eq!(
            squarefree_decomposition(&a).unwrap(),
            vec![(q("x + 1"), 1), (q("x - 1"), 2)]
        );
        assert_eq!(
            squarefree_decomposition(&pp("x^2", 2)).unwrap(),
            vec![(pp("x", 2), 2)]
        );
        assert_eq!(
            squarefree_decomposition(&q("2*x^2 + 2")).unwrap(),
            vec![(q("x^2 + 1"), 1)]
        );
        assert_eq!(
            squarefree_decomposition(&Poly::zero(&Rationals)),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn squarefree_mixed_pth_powers() {
        // (x+1)^3 (x+2)^7 x^9 over F_3: multiplicities 3 and 9 hit the p-th root path
        let a = &(&pp("x + 1", 3).pow(3) * &pp("x + 2", 3).pow(7)) * &pp("x", 3).pow(9);
        let parts = squarefree_decomposition(&a).unwrap();
        assert_eq!(
            parts,
            vec![(pp("x + 1", 3), 3), (pp("x + 2", 3), 7), (pp("x", 3), 9)]
        );
        for (i, (x, _)) in parts.iter().enumerate() {
            for (y, _) in &parts[i + 1..] {
                assert!(gcd(x, y).unwrap().is_one());
            }
        }
    }

    #[test]
    fn factor_examples() {
        let f = factor(&q("x^4 - 1")).unwrap();
        assert_eq!(
            f.factors,
            vec![(q("x - 1"), 1), (q("x + 1"), 1), (q("x^2 + 1"), 1)]
        );
        // expanding the product by hand gives back x^4 - 1
        assert_eq!(
            &(&q("x - 1") * &q("x + 1")) * &q("x^2 + 1"),
            q("x^4 - 1")
        );

        let f = factor(&pp("x^2 + 1", 2)).unwrap();
        assert_eq!(f.factors, vec![(pp("x + 1", 2), 2)]);

        let f = factor(&pp("x^2 + 1", 3)).unwrap();
        assert_eq!(f.factors, vec![(pp("x^2 + 1", 3), 1)]);
        // oracle: no root in F_3
        assert!((0..3).all(|r| pp("x^2 + 1", 3).eval(&r) != 0));
    }

    #[test]
    fn factor_keeps_unit() {
        let a = q("-3/2*x^3 + 3/2*x");
        let f = factor(&a).unwrap();
        assert_eq!(f.unit.to_string(), "-3/2");
        assert_eq!(f.factors, vec![(q("x - 1"), 1), (q("x"), 1), (q("x + 1"), 1)]);
        assert_eq!(f.expand(), a);
    }

    #[test]
    fn factor_errors() {
        assert_eq!(factor(&Poly::zero(&Rationals)), Err(Error::ZeroPolynomial));
        assert_eq!(factor(&q("5")), Err(Error::ConstantPolynomial));
    }

    #[test]
    fn seed_does_not_change_result() {
        let a = pp("x^12 + 3*x^7 + x^2 + 4", 5);
        let base = factor(&a).unwrap();
        for seed in 0..5 {
            assert_eq!(factor_with_seed(&a, seed).unwrap(), base);
        }
        assert_eq!(base.expand(), a);
    }
}
