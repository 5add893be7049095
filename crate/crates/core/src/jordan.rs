//! Jordan bases, canonical forms and conjugacy certificates.
//!
//! For a factor `p` of degree `d` and a representative `v` at level `i`, the
//! span `<v> = { p(T)^s T^t v : 0 <= s < i, 0 <= t < d }` is `T`-invariant and
//! isomorphic to `k[x]/p^i`. Ordering its vectors by `s` and then `t`, `T`
//! acts on it by a hypercompanion block: `i` copies of the companion matrix
//! of `p` down the diagonal, consecutive copies linked by a single `1` just
//! below the diagonal.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::invariants::{
    check_conjugacy_inputs, classify, filtration_unchecked, level_subspace, ClassificationRecord,
    Mismatch,
};
use crate::matrix::{Matrix, Subspace, Vector};
use crate::polynomial::{factor, Factorize, Poly};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayoutBlock<F: Field> {
    pub p: Poly<F>,
    pub exp: usize,
    pub count: usize,
}

impl<F: Field> LayoutBlock<F> {
    /// Size of one block, `deg p * exp`.
    pub fn block_size(&self) -> usize {
        self.p.degree().unwrap_or(0) * self.exp
    }
}

/// Block structure of a canonical form: factors in canonical order, exponents
/// descending, one entry per `(p, exp)` with its `nu` count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanLayout<F: Field> {
    pub blocks: Vec<LayoutBlock<F>>,
}

impl<F: Field> JordanLayout<F> {
    pub fn from_record(record: &ClassificationRecord<F>) -> Self {
        let blocks = record
            .components
            .iter()
            .flat_map(|c| {
                (1..=c.n).rev().map(move |i| LayoutBlock {
                    p: c.p.clone(),
                    exp: i,
                    count: c.nu[i - 1],
                })
            })
            .collect();
        JordanLayout { blocks }
    }

    pub fn total_size(&self) -> usize {
        self.blocks.iter().map(|b| b.block_size() * b.count).sum()
    }
}

#[derive(Debug, Clone)]
pub struct JordanData<F: Field> {
    /// Columns form the Jordan basis, in layout order.
    pub s: Matrix<F>,
    /// `S^-1 T S`.
    pub c: Matrix<F>,
    pub layout: JordanLayout<F>,
    pub record: ClassificationRecord<F>,
}

/// Matrix of `T` on `<v>` for `v` of order `p^exp`.
pub fn hypercompanion<F: Field>(p: &Poly<F>, exp: usize) -> Matrix<F> {
    let k = p.field();
    let d = p.degree().expect("nonzero polynomial");
    let size = d * exp;
    let mut m = Matrix::zeros(k, size, size);
    for s in 0..exp {
        let off = s * d;
        for t in 0..d.saturating_sub(1) {
            m.set(off + t + 1, off + t, k.one());
        }
        for t in 0..d {
            m.set(off + t, off + d - 1, k.neg(&p.coeff(t)));
        }
        if s + 1 < exp {
            m.set(off + d, off + d - 1, k.one());
        }
    }
    m
}

/// Representatives `v_h` at level `i` (1-based) whose `d`-orbits
/// `v, Tv, ..., T^(d-1) v` together span a complement of
/// `W_i = Ker p^(i-1) + p(T) Ker p^(i+1)` inside `Ker p^i`.
///
/// Candidates are the canonical basis vectors of `Ker p^i`, scanned in order;
/// a candidate outside the current span is accepted together with its orbit.
pub fn lift_representatives<F: Field>(
    t: &Matrix<F>,
    p: &Poly<F>,
    filtration: &[Subspace<F>],
    i: usize,
) -> Result<Vec<Vector<F>>> {
    if i == 0 || i > filtration.len() {
        return Err(Error::DimensionMismatch(format!(
            "level {i} outside 1..={}",
            filtration.len()
        )));
    }
    let k = t.field();
    let n = t.require_square()?;
    let d = p.degree().ok_or(Error::ZeroPolynomial)?;
    let pt = p.eval_matrix(t)?;
    let target = &filtration[i - 1];
    let mut span = level_subspace(&pt, filtration, i)?;
    let mut reps = Vec::new();
    for cand in target.vectors() {
        if span.dim() == target.dim() {
            break;
        }
        if span.contains(&cand)? {
            continue;
        }
        let mut orbit = Vec::with_capacity(d);
        let mut w = cand.clone();
        for _ in 0..d {
            let next = t.mul_vec(&w)?;
            orbit.push(w);
            w = next;
        }
        let mut vs = span.vectors();
        vs.extend(orbit);
        let grown = Subspace::span(k, n, &vs)?;
        if grown.dim() != span.dim() + d {
            return Err(Error::Internal(format!(
                "orbit of an accepted representative at level {i} is dependent"
            )));
        }
        span = grown;
        reps.push(cand);
    }
    if span != *target {
        return Err(Error::Internal(format!(
            "level {i} complement does not fill Ker p^{i}"
        )));
    }
    Ok(reps)
}

/// Jordan basis `S` and canonical form `C = S^-1 T S`.
pub fn jordan_basis<F: Factorize>(t: &Matrix<F>) -> Result<JordanData<F>> {
    let n = t.require_square()?;
    let record = classify(t)?;
    let mut columns: Vec<Vector<F>> = Vec::with_capacity(n);
    for comp in &record.components {
        let filtration = filtration_unchecked(t, &comp.p, comp.n)?;
        let pt = comp.p.eval_matrix(t)?;
        for i in (1..=comp.n).rev() {
            let reps = lift_representatives(t, &comp.p, &filtration, i)?;
            if reps.len() != comp.nu[i - 1] {
                return Err(Error::Internal(format!(
                    "{} representatives at level {i} of {}, expected nu = {}",
                    reps.len(),
                    comp.p,
                    comp.nu[i - 1]
                )));
            }
            for v in reps {
                let mut ps_v = v;
                for _ in 0..i {
                    let mut w = ps_v.clone();
                    for _ in 0..comp.d {
                        let next = t.mul_vec(&w)?;
                        columns.push(w);
                        w = next;
                    }
                    ps_v = pt.mul_vec(&ps_v)?;
                }
            }
        }
    }
    let s = Matrix::from_columns(t.field(), n, &columns)?;
    let c = canonical_form(&record)?;
    if s.rank() != n || t.mul(&s)? != s.mul(&c)? {
        return Err(Error::Internal("assembled Jordan basis fails T S = S C".into()));
    }
    Ok(JordanData {
        s,
        c,
        layout: JordanLayout::from_record(&record),
        record,
    })
}

/// Block-diagonal matrix realizing a classification: for each factor in
/// canonical order and each exponent `i` descending, `nu_i` hypercompanion
/// blocks of `p^i`.
pub fn canonical_form<F: Factorize>(record: &ClassificationRecord<F>) -> Result<Matrix<F>> {
    record.check_consistency()?;
    for c in &record.components {
        let f = factor(&c.p).map_err(|e| Error::InconsistentRecord(e.to_string()))?;
        if f.factors.len() != 1 || f.factors[0].1 != 1 {
            return Err(Error::Reducible(c.p.to_string()));
        }
    }
    let layout = JordanLayout::from_record(record);
    let mut blocks = Vec::new();
    for b in &layout.blocks {
        let h = hypercompanion(&b.p, b.exp);
        blocks.extend(std::iter::repeat_n(h, b.count));
    }
    Ok(Matrix::block_diagonal(&record.field, &blocks))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate<F: Field> {
    /// `tau` with `tau f tau^-1 = g`.
    Conjugate(Matrix<F>),
    NotConjugate(Mismatch),
}

/// Decides conjugacy of `f` and `g`; when they are conjugate, returns
/// `tau = S_g S_f^-1`, which maps the Jordan basis of `f` onto that of `g`
/// position by position.
pub fn conjugacy_certificate<F: Factorize>(f: &Matrix<F>, g: &Matrix<F>) -> Result<Certificate<F>> {
    check_conjugacy_inputs(f, g)?;
    let (rf, rg) = (classify(f)?, classify(g)?);
    if let Some(m) = rf.first_mismatch(&rg) {
        return Ok(Certificate::NotConjugate(m));
    }
    let jf = jordan_basis(f)?;
    let jg = jordan_basis(g)?;
    let tau = jg.s.mul(&jf.s.invert()?)?;
    if tau.mul(f)? != g.mul(&tau)? {
        return Err(Error::Internal("certificate fails tau f = g tau".into()));
    }
    Ok(Certificate::Conjugate(tau))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::invariants::PrimaryComponent;

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn nilpotent_blocks<F: Field>(k: &F, sizes: &[usize]) -> Matrix<F> {
        let blocks: Vec<Matrix<F>> = sizes.iter().map(|&s| hypercompanion(&Poly::x(k), s)).collect();
        Matrix::block_diagonal(k, &blocks)
    }

    fn companion<F: Field>(p: &Poly<F>) -> Matrix<F> {
        hypercompanion(p, 1)
    }

    #[test]
    fn hypercompanion_shape() {
        let k = fp(3);
        let p = Poly::parse("x^2 + 1", &k).unwrap();
        let h = hypercompanion(&p, 2);
        let expect = Matrix::from_i64s(
            &k,
            &[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 1, 0, -1], &[0, 0, 1, 0]],
        );
        assert_eq!(h, expect);
        // it is the companion matrix of (x^2+1)^2 up to conjugacy
        assert_eq!(
            crate::minimal_polynomial(&h).unwrap(),
            Poly::parse("x^4 + 2*x^2 + 1", &k).unwrap()
        );
    }

    #[test]
    fn lift_examples() {
        let x = Poly::x(&Rationals);
        let j3 = nilpotent_blocks(&Rationals, &[3]);
        let filt = filtration_unchecked(&j3, &x, 3).unwrap();
        let reps = lift_representatives(&j3, &x, &filt, 3).unwrap();
        assert_eq!(reps.len(), 1);
        // with the lower-shift convention Ker T^2 = span{e_2, e_3}
        assert!(!filt[1].contains(&reps[0]).unwrap());

        let z = Matrix::zeros(&Rationals, 3, 3);
        let filt = filtration_unchecked(&z, &x, 1).unwrap();
        let reps = lift_representatives(&z, &x, &filt, 1).unwrap();
        assert_eq!(Subspace::span(&Rationals, 3, &reps).unwrap(), Subspace::full(&Rationals, 3));

        let k = fp(3);
        let p = Poly::parse("x^2 + 1", &k).unwrap();
        let c = companion(&p);
        let filt = filtration_unchecked(&c, &p, 1).unwrap();
        let reps = lift_representatives(&c, &p, &filt, 1).unwrap();
        assert_eq!(reps.len(), 1);
        let tv = c.mul_vec(&reps[0]).unwrap();
        assert_eq!(Subspace::span(&k, 2, &[reps[0].clone(), tv]).unwrap().dim(), 2);
    }

    #[test]
    fn supplement_property() {
        let k = fp(5);
        let t = Matrix::from_i64s(
            &k,
            &[
                &[1, 2, 0, 0, 1],
                &[0, 1, 0, 0, 0],
                &[0, 0, 0, 1, 0],
                &[0, 0, 0, 0, 0],
                &[0, 0, 0, 0, 1],
            ],
        );
        let record = classify(&t).unwrap();
        for comp in &record.components {
            let filt = filtration_unchecked(&t, &comp.p, comp.n).unwrap();
            let pt = comp.p.eval_matrix(&t).unwrap();
            for i in 1..=comp.n {
                let w = level_subspace(&pt, &filt, i).unwrap();
                let reps = lift_representatives(&t, &comp.p, &filt, i).unwrap();
                let mut orbit = Vec::new();
                for v in reps {
                    let mut w = v;
                    for _ in 0..comp.d {
                        let next = t.mul_vec(&w).unwrap();
                        orbit.push(w);
                        w = next;
                    }
                }
                let h = Subspace::span(&k, 5, &orbit).unwrap();
                let sum = h.sum(&w).unwrap();
                assert_eq!(sum.dim(), h.dim() + w.dim(), "H_i meets W_i");
                assert_eq!(sum, filt[i - 1]);
            }
        }
    }

    #[test]
    fn jordan_examples() {
        let d = Matrix::from_i64s(&Rationals, &[&[1, 0], &[0, 2]]);
        let j = jordan_basis(&d).unwrap();
        // canonical order puts x - 2 before x - 1
        assert_eq!(j.c, Matrix::from_i64s(&Rationals, &[&[2, 0], &[0, 1]]));
        assert_eq!(j.s.invert().unwrap().mul(&d).unwrap().mul(&j.s).unwrap(), j.c);

        let k = fp(7);
        let t = Matrix::from_i64s(
            &k,
            &[&[0, 1, 2, 3], &[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]],
        );
        let r = classify(&t).unwrap();
        assert_eq!(r.components[0].nu, vec![2, 1]);
        let j = jordan_basis(&t).unwrap();
        assert_eq!(j.c, nilpotent_blocks(&k, &[2, 1, 1]));
        assert_eq!(j.s.invert().unwrap().mul(&t).unwrap().mul(&j.s).unwrap(), j.c);

        let k = fp(3);
        let p = Poly::parse("x^2 + 1", &k).unwrap();
        let comp = companion(&p.pow(2));
        let r = classify(&comp).unwrap();
        assert_eq!((r.components[0].p.clone(), r.components[0].nu.clone()), (p.clone(), vec![0, 1]));
        let j = jordan_basis(&comp).unwrap();
        assert_eq!(j.c, hypercompanion(&p, 2));
        assert_eq!(j.layout.total_size(), 4);
    }

    #[test]
    fn canonical_form_examples() {
        let k = fp(5);
        let x = Poly::x(&k);
        let rec = |p: Poly<PrimeField>, nu: Vec<usize>, dim| ClassificationRecord {
            field: k,
            dim,
            components: vec![PrimaryComponent::from_nu(p, nu)],
        };
        assert_eq!(canonical_form(&rec(x.clone(), vec![3], 3)).unwrap(), Matrix::zeros(&k, 3, 3));
        let xm1 = Poly::parse("x - 1", &k).unwrap();
        assert_eq!(canonical_form(&rec(xm1, vec![3], 3)).unwrap(), Matrix::identity(&k, 3));

        let p = Poly::parse("x^2 + 1", &Rationals).unwrap();
        let r = ClassificationRecord {
            field: Rationals,
            dim: 2,
            components: vec![PrimaryComponent::from_nu(p, vec![1])],
        };
        assert_eq!(
            canonical_form(&r).unwrap(),
            Matrix::from_i64s(&Rationals, &[&[0, -1], &[1, 0]])
        );

        assert!(matches!(
            canonical_form(&rec(x.clone(), vec![3], 4)),
            Err(Error::InconsistentRecord(_))
        ));
        let reducible = Poly::parse("x^2 + 4", &k).unwrap();
        assert!(matches!(
            canonical_form(&rec(reducible, vec![1], 2)),
            Err(Error::Reducible(_))
        ));
    }

    #[test]
    fn canonical_form_is_a_fixed_point() {
        let k = fp(3);
        let t = Matrix::from_i64s(&k, &[&[1, 2, 0], &[0, 1, 1], &[2, 0, 2]]);
        let r = classify(&t).unwrap();
        let c = canonical_form(&r).unwrap();
        assert_eq!(classify(&c).unwrap(), r);
        assert_eq!(canonical_form(&classify(&c).unwrap()).unwrap(), c);
    }

    #[test]
    fn certificate_examples() {
        let k = fp(5);
        let t = Matrix::from_i64s(&k, &[&[1, 2, 0], &[0, 1, 0], &[3, 0, 4]]);
        match conjugacy_certificate(&t, &t).unwrap() {
            Certificate::Conjugate(tau) => {
                assert_eq!(Matrix::conjugate(&tau, &t).unwrap(), t);
            }
            other => panic!("{other:?}"),
        }

        let s = Matrix::from_i64s(&k, &[&[2, 1, 0], &[0, 1, 3], &[1, 0, 2]]);
        let g = Matrix::conjugate(&s, &t).unwrap();
        match conjugacy_certificate(&t, &g).unwrap() {
            Certificate::Conjugate(tau) => assert_eq!(Matrix::conjugate(&tau, &t).unwrap(), g),
            other => panic!("{other:?}"),
        }

        let k = fp(2);
        let a = nilpotent_blocks(&k, &[2, 2]);
        let b = nilpotent_blocks(&k, &[2, 1, 1]);
        match conjugacy_certificate(&a, &b).unwrap() {
            Certificate::NotConjugate(Mismatch::Nu { level, .. }) => assert_eq!(level, 1),
            other => panic!("{other:?}"),
        }
    }
}
