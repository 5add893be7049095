//! Slow, independent reference computations used to cross-check the main
//! algorithms on small inputs.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::invariants::{classify, ClassificationRecord};
use crate::matrix::Matrix;
use crate::polynomial::Poly;

/// Largest number of matrices the enumerating oracles will walk.
pub const MAX_ENUMERATION: u64 = 1 << 20;

fn enumeration_size(n: usize, p: u64) -> Result<u64> {
    let mut total = 1u64;
    for _ in 0..n * n {
        total = total.saturating_mul(p);
        if total > MAX_ENUMERATION {
            return Err(Error::TooLarge(format!(
                "{p}^{} matrices exceeds the enumeration limit {MAX_ENUMERATION}",
                n * n
            )));
        }
    }
    Ok(total)
}

fn matrix_from_index(k: &PrimeField, n: usize, mut index: u64) -> Matrix<PrimeField> {
    let p = k.modulus();
    let mut data = Vec::with_capacity(n * n);
    for _ in 0..n * n {
        data.push(index % p);
        index /= p;
    }
    Matrix::new(k, n, n, data).expect("n*n entries")
}

fn matrix_index(m: &Matrix<PrimeField>) -> u64 {
    let p = m.field().modulus();
    m.entries().iter().rev().fold(0, |acc, &e| acc * p + e)
}

fn all_matrices(k: &PrimeField, n: usize) -> Result<Vec<Matrix<PrimeField>>> {
    let total = enumeration_size(n, k.modulus())?;
    Ok((0..total).map(|i| matrix_from_index(k, n, i)).collect())
}

/// Searches all of `M_n(F_p)` for an invertible `S` with `S f = g S`.
pub fn brute_force_conjugate(
    f: &Matrix<PrimeField>,
    g: &Matrix<PrimeField>,
) -> Result<Option<Matrix<PrimeField>>> {
    crate::invariants::check_conjugacy_inputs(f, g)?;
    let k = f.field();
    let n = f.rows();
    let total = enumeration_size(n, k.modulus())?;
    for i in 0..total {
        let s = matrix_from_index(k, n, i);
        if s.mul(f)? == g.mul(&s)? && s.rank() == n {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

/// `nu_i` from ranks of powers of `p(T)`:
/// `d nu_i = 2 k_i - k_(i-1) - k_(i+1)` with `k_i = dim Ker p(T)^i`.
pub fn nu_by_ranks<F: Field>(t: &Matrix<F>, p: &Poly<F>, n: usize) -> Result<Vec<usize>> {
    let size = t.require_square()?;
    let d = p.degree().ok_or(Error::ZeroPolynomial)?;
    let pt = p.eval_matrix(t)?;
    let mut k = vec![0usize];
    let mut power = Matrix::identity(t.field(), size);
    for _ in 0..=n {
        power = power.mul(&pt)?;
        k.push(size - power.rank());
    }
    (1..=n)
        .map(|i| {
            let num = (2 * k[i]).checked_sub(k[i - 1] + k[i + 1]);
            match num {
                Some(v) if v % d == 0 => Ok(v / d),
                _ => Err(Error::Internal(format!("rank sequence not concave at {i}"))),
            }
        })
        .collect()
}

/// Text key identifying a classification record.
pub fn record_key<F: Field>(r: &ClassificationRecord<F>) -> String {
    r.components
        .iter()
        .map(|c| format!("{}:{:?}", c.p, c.nu))
        .collect::<Vec<_>>()
        .join(";")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    pub n: usize,
    pub p: u64,
    pub matrices: usize,
    pub group_order: usize,
    pub orbits: usize,
    pub classes: usize,
    /// Every orbit carries one record and distinct orbits carry distinct records.
    pub agrees: bool,
    pub failures: Vec<String>,
}

/// Partitions `M_n(F_p)` into `GL_n(F_p)` conjugation orbits by direct
/// enumeration and compares the partition with the one induced by
/// [`classify`].
pub fn exhaustive_orbit_census(n: usize, p: u64) -> Result<OrbitReport> {
    let k = PrimeField::new(p)?;
    let all = all_matrices(&k, n)?;
    let group: Vec<(Matrix<PrimeField>, Matrix<PrimeField>)> = all
        .iter()
        .filter(|s| s.rank() == n)
        .map(|s| (s.clone(), s.invert().expect("invertible")))
        .collect();
    let mut orbit_of = vec![usize::MAX; all.len()];
    let mut orbit_keys: Vec<String> = Vec::new();
    let mut failures = Vec::new();
    for start in 0..all.len() {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = orbit_keys.len();
        let t = &all[start];
        let key = record_key(&classify(t)?);
        for (s, s_inv) in &group {
            let c = s.mul(t)?.mul(s_inv)?;
            let j = matrix_index(&c) as usize;
            if orbit_of[j] == usize::MAX {
                orbit_of[j] = id;
                let other = record_key(&classify(&c)?);
                if other != key {
                    failures.push(format!("orbit of {t:?} holds records {key} and {other}"));
                }
            }
        }
        orbit_keys.push(key);
    }
    let mut seen: HashMap<&str, usize> = HashMap::new();
    for (id, key) in orbit_keys.iter().enumerate() {
        if let Some(prev) = seen.insert(key.as_str(), id) {
            failures.push(format!("orbits {prev} and {id} share record {key}"));
        }
    }
    Ok(OrbitReport {
        n,
        p,
        matrices: all.len(),
        group_order: group.len(),
        orbits: orbit_keys.len(),
        classes: seen.len(),
        agrees: failures.is_empty(),
        failures,
    })
}
