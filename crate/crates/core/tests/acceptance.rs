//! Acceptance suite. Runs without the libtest harness and prints one line per
//! criterion; exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use endoclass::invariants::nu_invariants;
use endoclass::jordan::{hypercompanion, Certificate};
use endoclass::oracle::{brute_force_conjugate, exhaustive_orbit_census, nu_by_ranks};
use endoclass::polynomial::{irreducible_at_primes, passes_rabin_test};
use endoclass::symbolic::SymBlock;
use endoclass::{
    canonical_form, classify, conjugacy_certificate, factor, is_conjugate, jordan_basis,
    minimal_polynomial, one_plus_invertible, Cardinal, Factorize, Field, Matrix, Poly, PrimeField,
    Rationals, Scalar, SymbolicEndo,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Duration, Box<dyn Fn() -> Outcome + 'a>);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fp(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn random_fp_matrix(rng: &mut ChaCha8Rng, k: &PrimeField, n: usize) -> Matrix<PrimeField> {
    let data = (0..n * n).map(|_| rng.gen_range(0..k.modulus())).collect();
    Matrix::new(k, n, n, data).unwrap()
}

fn random_q_matrix(rng: &mut ChaCha8Rng, n: usize) -> Matrix<Rationals> {
    let zero_bias = rng.gen_range(0..3);
    let data = (0..n * n)
        .map(|_| {
            let v = if rng.gen_range(0..4) < zero_bias { 0 } else { rng.gen_range(-3..=3) };
            Rationals.from_i64(v)
        })
        .collect();
    Matrix::new(&Rationals, n, n, data).unwrap()
}

fn random_invertible(rng: &mut ChaCha8Rng, k: &PrimeField, n: usize) -> Matrix<PrimeField> {
    loop {
        let s = random_fp_matrix(rng, k, n);
        if s.rank() == n {
            return s;
        }
    }
}

/// `S C S^-1` for a random block sum `C` of hypercompanion blocks over `F_5`
/// with repeated factors, so that the `nu` tables are not all trivial.
fn structured_f5(rng: &mut ChaCha8Rng, max_n: usize) -> Matrix<PrimeField> {
    let k = fp(5);
    let pool = ["x", "x - 1", "x + 2", "x^2 + 2"];
    let mut blocks = Vec::new();
    let mut size = 0;
    let target = rng.gen_range(1..=max_n);
    while size < target {
        let p = Poly::parse(pool[rng.gen_range(0..pool.len())], &k).unwrap();
        let exp = rng.gen_range(1..=3);
        let b = hypercompanion(&p, exp);
        if size + b.rows() > max_n {
            if size > 0 {
                break;
            }
            continue;
        }
        size += b.rows();
        blocks.push(b);
    }
    let c = Matrix::block_diagonal(&k, &blocks);
    let s = random_invertible(rng, &k, size);
    Matrix::conjugate(&s, &c).unwrap()
}

fn jordan_sound<F: Factorize>(t: &Matrix<F>) -> Result<(), String> {
    let jd = jordan_basis(t).map_err(|e| format!("jordan_basis failed: {e}"))?;
    let n = t.rows();
    check(jd.s.rank() == n, || format!("singular S for {t:?}"))?;
    let c = jd.s.invert().unwrap().mul(t).unwrap().mul(&jd.s).unwrap();
    check(c == jd.c, || format!("S^-1 T S != C for {t:?}"))?;
    check(classify(&c).unwrap() == classify(t).unwrap(), || {
        format!("classify(C) != classify(T) for {t:?}")
    })
}

fn nu_formulas_agree<F: Factorize>(t: &Matrix<F>) -> Result<(), String> {
    let r = classify(t).map_err(|e| e.to_string())?;
    let mut total = 0;
    for c in &r.components {
        let by_quotients = nu_invariants(t, &c.p, c.n).map_err(|e| e.to_string())?;
        let by_ranks = nu_by_ranks(t, &c.p, c.n).map_err(|e| e.to_string())?;
        check(by_quotients == by_ranks, || {
            format!("nu mismatch at {}: {by_quotients:?} vs {by_ranks:?} for {t:?}", c.p)
        })?;
        total += by_quotients.iter().enumerate().map(|(i, v)| c.d * (i + 1) * v).sum::<usize>();
    }
    check(total == t.rows(), || format!("sum d*i*nu = {total} != {} for {t:?}", t.rows()))
}

fn minimal<F: Factorize>(t: &Matrix<F>) -> Result<(), String> {
    let a = minimal_polynomial(t).map_err(|e| e.to_string())?;
    check(a.eval_matrix(t).unwrap().is_zero(), || format!("a(T) != 0 for {t:?}"))?;
    if a.is_constant() {
        return Ok(());
    }
    for (q, _) in factor(&a).unwrap().factors {
        check(!a.div_exact(&q).eval_matrix(t).unwrap().is_zero(), || {
            format!("(a/{q})(T) = 0 for {t:?}")
        })?;
    }
    Ok(())
}

struct Corpus {
    f5: Vec<Matrix<PrimeField>>,
    q: Vec<Matrix<Rationals>>,
}

fn corpus() -> Corpus {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let k = fp(5);
    let f5 = (0..200)
        .map(|i| {
            if i % 2 == 0 {
                structured_f5(&mut rng, 6)
            } else {
                let n = rng.gen_range(1..=6);
                random_fp_matrix(&mut rng, &k, n)
            }
        })
        .collect();
    let q = (0..50)
        .map(|_| {
            let n = rng.gen_range(1..=5);
            random_q_matrix(&mut rng, n)
        })
        .collect();
    Corpus { f5, q }
}

fn criterion_1() -> Outcome {
    let k = fp(2);
    let x = Poly::x(&k);
    let block = |exp, mult| SymBlock { p: x.clone(), exp, mult };
    let f = SymbolicEndo {
        field: k,
        dim: Cardinal::Aleph0,
        blocks: vec![block(2, Cardinal::Fin(1)), block(1, Cardinal::Aleph0)],
    }
    .validate()
    .map_err(|e| e.to_string())?;
    let g = SymbolicEndo {
        field: k,
        dim: Cardinal::Aleph0,
        blocks: vec![block(2, Cardinal::Aleph0), block(1, Cardinal::Fin(2))],
    }
    .validate()
    .map_err(|e| e.to_string())?;
    let x2 = x.pow(2);
    check(f.annihilator() == x2 && g.annihilator() == x2, || "annihilators differ from x^2".into())?;
    check((f.nu(&x, 1), f.nu(&x, 2)) == (Cardinal::Aleph0, Cardinal::Fin(1)), || {
        "nu(f) != (aleph0, 1)".into()
    })?;
    check((g.nu(&x, 1), g.nu(&x, 2)) == (Cardinal::Fin(2), Cardinal::Aleph0), || {
        "nu(g) != (2, aleph0)".into()
    })?;
    check(!f.is_conjugate(&g).unwrap(), || "f and g reported conjugate".into())?;
    Ok(format!("a = {x2}; nu(f) = (aleph0, 1); nu(g) = (2, aleph0); not conjugate"))
}

fn criterion_2() -> Outcome {
    let mut summary = Vec::new();
    for (n, p, count) in [(2, 2, 16), (2, 3, 81), (2, 5, 625), (3, 2, 512)] {
        let r = exhaustive_orbit_census(n, p).map_err(|e| e.to_string())?;
        check(r.matrices == count, || format!("n={n}, p={p}: {} matrices", r.matrices))?;
        check(r.agrees && r.orbits == r.classes, || {
            format!("n={n}, p={p}: partitions differ: {:?}", r.failures)
        })?;
        summary.push(format!("{count} -> {} orbits", r.orbits));
    }
    // direct pairwise comparison on a sample
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let k = fp(3);
    for _ in 0..60 {
        let f = random_fp_matrix(&mut rng, &k, 2);
        let g = if rng.gen_bool(0.5) {
            Matrix::conjugate(&random_invertible(&mut rng, &k, 2), &f).unwrap()
        } else {
            random_fp_matrix(&mut rng, &k, 2)
        };
        let brute = brute_force_conjugate(&f, &g).unwrap().is_some();
        check(brute == is_conjugate(&f, &g).unwrap(), || {
            format!("brute force and classify disagree on {f:?}, {g:?}")
        })?;
    }
    Ok(summary.join(", "))
}

fn criterion_3(c: &Corpus) -> Outcome {
    c.f5.iter().try_for_each(jordan_sound)?;
    c.q.iter().try_for_each(jordan_sound)?;
    Ok(format!("{} matrices over F_5, {} over Q", c.f5.len(), c.q.len()))
}

fn criterion_4(c: &Corpus) -> Outcome {
    let mut count = 0;
    for (n, p) in [(2, 2), (2, 3), (2, 5), (3, 2)] {
        let k = fp(p);
        let total = p.pow((n * n) as u32);
        for i in 0..total {
            let mut idx = i;
            let data = (0..n * n)
                .map(|_| {
                    let e = idx % p;
                    idx /= p;
                    e
                })
                .collect();
            nu_formulas_agree(&Matrix::new(&k, n, n, data).unwrap())?;
            count += 1;
        }
    }
    c.f5.iter().try_for_each(nu_formulas_agree)?;
    c.q.iter().try_for_each(nu_formulas_agree)?;
    count += c.f5.len() + c.q.len();
    Ok(format!("{count} matrices"))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let k = fp(5);
    for i in 0..200 {
        let t = if i % 2 == 0 {
            structured_f5(&mut rng, 6)
        } else {
            let n = rng.gen_range(1..=6);
            random_fp_matrix(&mut rng, &k, n)
        };
        let s = random_invertible(&mut rng, &k, t.rows());
        let g = Matrix::conjugate(&s, &t).unwrap();
        check(classify(&t).unwrap() == classify(&g).unwrap(), || {
            format!("classify differs on {t:?} and its conjugate")
        })?;
        match conjugacy_certificate(&t, &g).map_err(|e| e.to_string())? {
            Certificate::Conjugate(tau) => check(Matrix::conjugate(&tau, &t).unwrap() == g, || {
                format!("tau T tau^-1 != S T S^-1 for {t:?}")
            })?,
            Certificate::NotConjugate(m) => return Err(format!("no certificate ({m}) for {t:?}")),
        }
    }
    Ok("200 pairs (T, S T S^-1) over F_5".into())
}

fn criterion_6(c: &Corpus) -> Outcome {
    c.f5.iter().try_for_each(minimal)?;
    c.q.iter().try_for_each(minimal)?;
    Ok(format!("{} matrices", c.f5.len() + c.q.len()))
}

fn random_poly<F: Field>(rng: &mut ChaCha8Rng, k: &F, deg: usize, coeff: impl Fn(&mut ChaCha8Rng) -> i64) -> Poly<F> {
    loop {
        let cs: Vec<i64> = (0..=deg).map(|_| coeff(rng)).collect();
        let p = Poly::from_i64s(k, &cs);
        if p.degree() == Some(deg) {
            return p;
        }
    }
}

/// Either a uniformly random polynomial or a product of random small
/// factors with repetitions, of total degree at most `max_deg`.
fn test_poly<F: Field>(
    rng: &mut ChaCha8Rng,
    k: &F,
    max_deg: usize,
    coeff: impl Fn(&mut ChaCha8Rng) -> i64 + Copy,
) -> Poly<F> {
    if rng.gen_bool(0.5) {
        let d = rng.gen_range(1..=max_deg);
        return random_poly(rng, k, d, coeff);
    }
    let mut acc = Poly::one(k);
    let mut deg = 0;
    while deg < max_deg {
        let d = rng.gen_range(1..=(max_deg - deg).min(3));
        let f = random_poly(rng, k, d, coeff);
        let e = if deg + 2 * d <= max_deg && rng.gen_bool(0.3) { 2 } else { 1 };
        acc = &acc * &f.pow(e);
        deg += d * e;
        if rng.gen_bool(0.3) {
            break;
        }
    }
    acc
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for p in [2u64, 5] {
        let k = fp(p);
        for _ in 0..175 {
            let a = test_poly(&mut rng, &k, 10, move |r| r.gen_range(0..p as i64));
            let fz = factor(&a).map_err(|e| e.to_string())?;
            check(fz.expand() == a, || format!("factor({a}) over F_{p} does not expand back"))?;
            for (q, _) in &fz.factors {
                check(q.is_monic() && passes_rabin_test(q), || format!("{q} reducible over F_{p}"))?;
            }
        }
    }
    for _ in 0..150 {
        let a = test_poly(&mut rng, &Rationals, 8, |r| r.gen_range(-5..=5));
        let fz = factor(&a).map_err(|e| e.to_string())?;
        check(fz.expand() == a, || format!("factor({a}) over Q does not expand back"))?;
        for (q, _) in &fz.factors {
            check(q.is_monic() && irreducible_at_primes(q, 3), || format!("{q} reducible over Q"))?;
        }
    }
    Ok("350 over F_2/F_5, 150 over Q".into())
}

fn random_symbolic(rng: &mut ChaCha8Rng) -> SymbolicEndo<PrimeField> {
    let k = fp(3);
    let pool = ["x", "x + 1", "x + 2", "x^2 + 1"];
    let blocks: Vec<_> = (0..rng.gen_range(1..=4))
        .map(|_| SymBlock {
            p: Poly::parse(pool[rng.gen_range(0..pool.len())], &k).unwrap(),
            exp: rng.gen_range(1..=3),
            mult: if rng.gen_bool(0.4) {
                Cardinal::Aleph0
            } else {
                Cardinal::Fin(rng.gen_range(1..=3))
            },
        })
        .collect();
    let dim = blocks
        .iter()
        .map(|b| Cardinal::Fin((b.p.degree().unwrap() * b.exp) as u64) * b.mult)
        .sum();
    SymbolicEndo { field: k, dim, blocks }
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut singular = 0;
    for i in 0..200 {
        let k = fp([2, 3, 5][i % 3]);
        let n = rng.gen_range(1..=6);
        let t = if i % 4 == 0 {
            // bias toward -1 as an eigenvalue
            let mut t = random_fp_matrix(&mut rng, &k, n);
            t.set(0, 0, k.neg(&k.one()));
            for j in 1..n {
                t.set(j, 0, 0);
            }
            t
        } else {
            random_fp_matrix(&mut rng, &k, n)
        };
        let mut shifted = t.clone();
        shifted.add_to_diagonal(&k.one());
        let expected = shifted.rank() == n;
        singular += usize::from(!expected);
        check(one_plus_invertible(&t).unwrap() == expected, || {
            format!("one_plus_invertible wrong for {t:?}")
        })?;
        let embedded = SymbolicEndo::embed(&classify(&t).unwrap()).unwrap();
        check(embedded.one_plus_invertible().unwrap() == expected, || {
            format!("symbolic criterion wrong on embedded {t:?}")
        })?;
    }
    let one = Scalar::new(&fp(3), 1);
    for _ in 0..50 {
        let e = random_symbolic(&mut rng).validate().map_err(|e| e.to_string())?;
        let sym = e.one_plus_invertible().unwrap();
        for cap in [1, 2] {
            let t = canonical_form(&e.truncate(cap).unwrap()).unwrap();
            check(one_plus_invertible(&t).unwrap() == sym, || {
                format!("truncation at {cap} disagrees for {e:?}")
            })?;
        }
        let back = e.shift(&one).unwrap().shift(&one.neg()).unwrap();
        check(back == e, || format!("shift round trip fails for {e:?}"))?;
    }
    Ok(format!("200 matrices ({singular} with I + T singular), 50 symbolic"))
}

fn main() -> ExitCode {
    let corpus = corpus();
    let criteria: Vec<Criterion> = vec![
        ("aleph0 pair regression", Duration::from_secs(1), Box::new(criterion_1)),
        ("orbit census vs classify", Duration::from_secs(120), Box::new(criterion_2)),
        ("Jordan soundness", Duration::from_secs(60), Box::new(|| criterion_3(&corpus))),
        ("nu formula vs ranks", Duration::from_secs(60), Box::new(|| criterion_4(&corpus))),
        ("certificates", Duration::from_secs(60), Box::new(criterion_5)),
        ("minimality", Duration::from_secs(60), Box::new(|| criterion_6(&corpus))),
        ("factorization round trip", Duration::from_secs(60), Box::new(criterion_7)),
        ("1 + T invertibility", Duration::from_secs(60), Box::new(criterion_8)),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > *limit => Err(format!("{detail}; took {elapsed:.2?} > {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}) [{elapsed:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
