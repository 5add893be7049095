use std::fmt;
use std::fs;
use std::path::Path;

use endoclass::io::{self, AnyField, AnyMatrix, AnySymbolic};
use endoclass::jordan::Certificate;
use endoclass::oracle::{brute_force_conjugate, exhaustive_orbit_census};
use endoclass::polynomial::factor_with_seed;
use endoclass::{
    classify, conjugacy_certificate, jordan_basis, minimal_polynomial, ClassificationRecord, Error,
    Factorize, Field, Matrix, Poly, PrimeField, Rationals, SymbolicEndo,
};
use serde_json::{json, Value};

use crate::{Cli, Command, SymbolicCommand};

const OK: u8 = 0;
const NEGATIVE: u8 = 1;

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => f.write_str(m),
            CliError::Internal(m) => write!(f, "internal: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(m) => CliError::Internal(m),
            other => CliError::Input(other.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn write_json(path: &Path, value: &Value) -> CliResult<()> {
    let text = serde_json::to_string_pretty(value).expect("serializable") + "\n";
    fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn print_json(value: &Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn load_matrix(path: &Path) -> CliResult<AnyMatrix> {
    io::parse_matrix(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_symbolic(path: &Path) -> CliResult<AnySymbolic> {
    io::parse_symbolic(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn field_mismatch(a: endoclass::FieldSpec, b: endoclass::FieldSpec) -> CliError {
    Error::FieldMismatch { left: a, right: b }.into()
}

macro_rules! dispatch {
    ($any:expr, $x:ident => $body:expr) => {
        match $any {
            AnyField::Fp($x) => $body,
            AnyField::Q($x) => $body,
        }
    };
}

pub fn run(cli: &Cli) -> CliResult<u8> {
    match &cli.command {
        Command::Minpoly { matrix } => {
            dispatch!(load_matrix(matrix)?, m => println!("{}", minimal_polynomial(&m)?));
            Ok(OK)
        }
        Command::Factor { poly, p, json } => match p {
            Some(p) => factor_cmd(&PrimeField::new(*p)?, poly, cli.seed, *json),
            None => factor_cmd(&Rationals, poly, cli.seed, *json),
        },
        Command::Classify { matrix, json } => {
            dispatch!(load_matrix(matrix)?, m => classify_cmd(&m, *json))
        }
        Command::Jordan {
            matrix,
            basis_out,
            form_out,
            json,
        } => dispatch!(load_matrix(matrix)?, m => jordan_cmd(&m, basis_out.as_deref(), form_out.as_deref(), *json)),
        Command::Conjugate {
            f,
            g,
            certificate,
            oracle,
            json,
        } => {
            let (tf, tg) = (read(f)?, read(g)?);
            if io::is_symbolic_document(&tf) && io::is_symbolic_document(&tg) {
                if certificate.is_some() || *oracle {
                    return Err(CliError::Input(
                        "--certificate and --oracle apply to matrices only".into(),
                    ));
                }
                return symbolic_conjugate(load_symbolic(f)?, load_symbolic(g)?);
            }
            let (a, b) = (load_matrix(f)?, load_matrix(g)?);
            conjugate_cmd(a, b, certificate.as_deref(), *oracle, *json)
        }
        Command::Census { n, p, json } => {
            let report = exhaustive_orbit_census(*n, *p)?;
            if *json {
                print_json(&serde_json::to_value(&report).expect("serializable"));
            } else {
                println!("n = {}, p = {}", report.n, report.p);
                println!("matrices     {}", report.matrices);
                println!("|GL_n(F_p)|  {}", report.group_order);
                println!("orbits       {}", report.orbits);
                println!("classes      {}", report.classes);
                println!("agree        {}", report.agrees);
                for f in &report.failures {
                    println!("  {f}");
                }
            }
            if report.agrees {
                Ok(OK)
            } else {
                Err(CliError::Internal(
                    "orbit partition differs from classification".into(),
                ))
            }
        }
        Command::Symbolic(cmd) => symbolic_cmd(cmd),
    }
}

fn factor_cmd<F: Factorize>(k: &F, text: &str, seed: u64, json: bool) -> CliResult<u8> {
    let a = Poly::parse(text, k)?;
    let fz = factor_with_seed(&a, seed)?;
    if json {
        let factors: Vec<Value> = fz
            .factors
            .iter()
            .map(|(p, e)| json!({"p": p.to_string(), "exp": e}))
            .collect();
        print_json(&json!({"field": k.spec(), "unit": fz.unit.to_string(), "factors": factors}));
    } else {
        let parts: Vec<String> = fz
            .factors
            .iter()
            .map(|(p, e)| match e {
                1 => format!("({p})"),
                _ => format!("({p})^{e}"),
            })
            .collect();
        if fz.unit.value() == &k.one() {
            println!("{}", parts.join(" * "));
        } else {
            println!("{} * {}", fz.unit, parts.join(" * "));
        }
    }
    Ok(OK)
}

fn print_record<F: Field>(r: &ClassificationRecord<F>) {
    println!("field        {}", r.field.spec());
    println!("dimension    {}", r.dim);
    println!("annihilator  {}", r.annihilator());
    for c in &r.components {
        println!(
            "  p = {}  d = {}  n = {}  nu = {:?}  kernel dims = {:?}",
            c.p, c.d, c.n, c.nu, c.kernel_dims
        );
    }
}

fn classify_cmd<F: Factorize>(m: &Matrix<F>, json: bool) -> CliResult<u8> {
    let r = classify(m)?;
    if json {
        print_json(&io::record_to_json(&r));
    } else {
        print_record(&r);
    }
    Ok(OK)
}

fn jordan_cmd<F: Factorize>(
    m: &Matrix<F>,
    basis_out: Option<&Path>,
    form_out: Option<&Path>,
    json: bool,
) -> CliResult<u8> {
    let jd = jordan_basis(m)?;
    if jd.s.invert()?.mul(m)?.mul(&jd.s)? != jd.c {
        return Err(CliError::Internal("S^-1 T S differs from C".into()));
    }
    if let Some(path) = basis_out {
        write_json(path, &io::matrix_to_json(&jd.s))?;
    }
    if let Some(path) = form_out {
        write_json(path, &io::matrix_to_json(&jd.c))?;
    }
    if json {
        print_json(&json!({
            "basis": io::matrix_to_json(&jd.s),
            "form": io::matrix_to_json(&jd.c),
            "layout": io::layout_to_json(&jd.layout),
            "record": io::record_to_json(&jd.record),
        }));
    } else {
        println!("S =\n{}", jd.s);
        println!("C =\n{}", jd.c);
        for b in jd.layout.blocks.iter().filter(|b| b.count > 0) {
            println!("  {} x block of ({})^{}", b.count, b.p, b.exp);
        }
    }
    Ok(OK)
}

fn conjugate_cmd(
    a: AnyMatrix,
    b: AnyMatrix,
    certificate: Option<&Path>,
    oracle: bool,
    json: bool,
) -> CliResult<u8> {
    match (a, b) {
        (AnyField::Fp(f), AnyField::Fp(g)) => {
            let verdict = conjugate_matrices(&f, &g, certificate, json)?;
            if oracle {
                let found = brute_force_conjugate(&f, &g)?;
                if found.is_some() != (verdict == OK) {
                    return Err(CliError::Internal(
                        "exhaustive search disagrees with the classification".into(),
                    ));
                }
                if !json {
                    println!("oracle agrees (exhaustive search over M_n(F_p))");
                }
            }
            Ok(verdict)
        }
        (AnyField::Q(f), AnyField::Q(g)) => {
            if oracle {
                return Err(CliError::Input("--oracle needs matrices over F_p".into()));
            }
            conjugate_matrices(&f, &g, certificate, json)
        }
        (a, b) => Err(field_mismatch(a.spec(), b.spec())),
    }
}

fn conjugate_matrices<F: Factorize>(
    f: &Matrix<F>,
    g: &Matrix<F>,
    certificate: Option<&Path>,
    json: bool,
) -> CliResult<u8> {
    match conjugacy_certificate(f, g)? {
        Certificate::Conjugate(tau) => {
            if Matrix::conjugate(&tau, f)? != *g {
                return Err(CliError::Internal("certificate fails tau f tau^-1 = g".into()));
            }
            if let Some(path) = certificate {
                write_json(path, &io::matrix_to_json(&tau))?;
            }
            if json {
                print_json(&json!({
                    "conjugate": true,
                    "certificate": io::matrix_to_json(&tau),
                }));
            } else {
                println!("CONJUGATE");
            }
            Ok(OK)
        }
        Certificate::NotConjugate(m) => {
            if json {
                print_json(&json!({"conjugate": false, "mismatch": m.to_string()}));
            } else {
                println!("NOT CONJUGATE ({m})");
            }
            Ok(NEGATIVE)
        }
    }
}

fn symbolic_conjugate(a: AnySymbolic, b: AnySymbolic) -> CliResult<u8> {
    fn go<F: Factorize>(f: &SymbolicEndo<F>, g: &SymbolicEndo<F>) -> CliResult<u8> {
        match f.validate()?.first_mismatch(&g.validate()?)? {
            None => {
                println!("CONJUGATE");
                Ok(OK)
            }
            Some(m) => {
                println!("NOT CONJUGATE ({m})");
                Ok(NEGATIVE)
            }
        }
    }
    match (a, b) {
        (AnyField::Fp(f), AnyField::Fp(g)) => go(&f, &g),
        (AnyField::Q(f), AnyField::Q(g)) => go(&f, &g),
        (a, b) => Err(field_mismatch(a.spec(), b.spec())),
    }
}

fn verdict(holds: bool, yes: &str, no: &str) -> u8 {
    if holds {
        println!("{yes}");
        OK
    } else {
        println!("{no}");
        NEGATIVE
    }
}

fn symbolic_classify<F: Factorize>(e: &SymbolicEndo<F>, json: bool) -> CliResult<u8> {
    let e = e.validate()?;
    let label = e.canonical_label();
    if json {
        print_json(&json!({
            "field": e.field.spec(),
            "dim": e.dim,
            "annihilator": e.annihilator().to_string(),
            "label": io::label_to_json(&label),
        }));
    } else {
        println!("field        {}", e.field.spec());
        println!("dimension    {}", e.dim);
        println!("annihilator  {}", e.annihilator());
        println!("label        {label}");
    }
    Ok(OK)
}

fn symbolic_cmd(cmd: &SymbolicCommand) -> CliResult<u8> {
    match cmd {
        SymbolicCommand::Classify { endo, json } => {
            dispatch!(load_symbolic(endo)?, e => symbolic_classify(&e, *json))
        }
        SymbolicCommand::Conjugate { f, g } => symbolic_conjugate(load_symbolic(f)?, load_symbolic(g)?),
        SymbolicCommand::FinitePotent { endo } => dispatch!(load_symbolic(endo)?, e => {
            let e = e.validate()?;
            Ok(verdict(e.is_finite_potent(), "FINITE POTENT", "NOT FINITE POTENT"))
        }),
        SymbolicCommand::OnePlusInvertible { endo } => dispatch!(load_symbolic(endo)?, e => {
            let e = e.validate()?;
            Ok(verdict(e.one_plus_invertible()?, "INVERTIBLE", "NOT INVERTIBLE"))
        }),
    }
}
