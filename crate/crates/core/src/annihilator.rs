//! Minimal (annihilator) polynomials via Krylov sequences.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{Matrix, Vector};
use crate::polynomial::{lcm, Poly};

/// Monic `q` of least degree with `q(T) v = 0`.
///
/// Walks the Krylov sequence `v, Tv, T^2 v, ...`, keeping each new vector
/// reduced against the previous ones together with the polynomial that
/// produces it; the first vector that reduces to zero yields `q`.
pub fn vector_order<F: Field>(t: &Matrix<F>, v: &[F::Elem]) -> Result<Poly<F>> {
    let n = t.require_square()?;
    if v.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} for a {n}x{n} matrix",
            v.len()
        )));
    }
    let k = t.field();
    // (pivot, reduced vector with 1 at pivot, polynomial producing it)
    let mut reduced: Vec<(usize, Vector<F>, Vec<F::Elem>)> = Vec::new();
    let mut krylov = v.to_vec();
    for deg in 0..=n {
        let mut u = krylov.clone();
        let mut combo = vec![k.zero(); deg + 1];
        combo[deg] = k.one();
        for (pivot, bv, bc) in &reduced {
            let c = u[*pivot].clone();
            if k.is_zero(&c) {
                continue;
            }
            for (x, y) in u.iter_mut().zip(bv) {
                *x = k.sub(x, &k.mul(&c, y));
            }
            for (x, y) in combo.iter_mut().zip(bc) {
                *x = k.sub(x, &k.mul(&c, y));
            }
        }
        match u.iter().position(|x| !k.is_zero(x)) {
            None => return Ok(Poly::new(k, combo)),
            Some(pivot) => {
                let inv = k.inv(&u[pivot]).unwrap();
                for x in u.iter_mut() {
                    *x = k.mul(x, &inv);
                }
                for x in combo.iter_mut() {
                    *x = k.mul(x, &inv);
                }
                reduced.push((pivot, u, combo));
            }
        }
        krylov = t.mul_vec(&krylov)?;
    }
    Err(Error::Internal(
        "Krylov sequence did not become dependent within n steps".into(),
    ))
}

/// The unique monic polynomial of least degree annihilating `T`.
///
/// Accumulates the lcm of the orders of the standard basis vectors and stops
/// as soon as the running lcm annihilates `T`.
pub fn minimal_polynomial<F: Field>(t: &Matrix<F>) -> Result<Poly<F>> {
    let n = t.require_square()?;
    let k = t.field();
    let mut acc = Poly::one(k);
    for j in 0..n {
        let mut e = vec![k.zero(); n];
        e[j] = k.one();
        let order = vector_order(t, &e)?;
        if order.divides(&acc) {
            continue;
        }
        acc = lcm(&acc, &order)?;
        if acc.eval_matrix(t)?.is_zero() {
            break;
        }
    }
    Ok(acc)
}
