//! JSON documents for matrices, classification records and symbolic
//! endomorphisms.
//!
//! Field elements are written as strings in canonical text form; on input,
//! JSON integers are accepted as well.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, PrimeField, Rationals};
use crate::invariants::{ClassificationRecord, PrimaryComponent};
use crate::jordan::JordanLayout;
use crate::matrix::Matrix;
use crate::polynomial::Poly;
use crate::symbolic::{Cardinal, CanonicalLabel, SymBlock, SymbolicEndo};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum Entry {
    Text(String),
    Int(i64),
}

impl Entry {
    fn parse<F: Field>(&self, k: &F) -> Result<F::Elem> {
        match self {
            Entry::Text(t) => k.parse_elem(t),
            Entry::Int(n) => k.parse_elem(&n.to_string()),
        }
    }
}

fn check_format(format: Option<u32>) -> Result<()> {
    match format {
        None | Some(FORMAT_VERSION) => Ok(()),
        Some(v) => Err(Error::Format(format!("unsupported format version {v}"))),
    }
}

fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
}

/// A value over one of the two supported fields.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyField<T, U> {
    Fp(T),
    Q(U),
}

pub type AnyMatrix = AnyField<Matrix<PrimeField>, Matrix<Rationals>>;
pub type AnySymbolic = AnyField<SymbolicEndo<PrimeField>, SymbolicEndo<Rationals>>;

impl AnyMatrix {
    pub fn spec(&self) -> FieldSpec {
        match self {
            AnyField::Fp(m) => m.field().spec(),
            AnyField::Q(m) => m.field().spec(),
        }
    }
}

impl AnySymbolic {
    pub fn spec(&self) -> FieldSpec {
        match self {
            AnyField::Fp(e) => e.field.spec(),
            AnyField::Q(e) => e.field.spec(),
        }
    }
}

#[derive(Debug, Deserialize)]
struct MatrixDoc {
    format: Option<u32>,
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<Entry>>,
}

impl MatrixDoc {
    fn build<F: Field>(&self, k: &F) -> Result<Matrix<F>> {
        check_format(self.format)?;
        if self.entries.len() != self.rows || self.entries.iter().any(|r| r.len() != self.cols) {
            return Err(Error::Format(format!(
                "entries do not form a {}x{} array",
                self.rows, self.cols
            )));
        }
        let data = self
            .entries
            .iter()
            .flatten()
            .map(|e| e.parse(k))
            .collect::<Result<Vec<_>>>()?;
        Matrix::new(k, self.rows, self.cols, data)
    }
}

pub fn parse_matrix(text: &str) -> Result<AnyMatrix> {
    let doc: MatrixDoc = from_json(text)?;
    Ok(match doc.field {
        FieldSpec::PrimeField { p } => AnyField::Fp(doc.build(&PrimeField::new(p)?)?),
        FieldSpec::Rationals => AnyField::Q(doc.build(&Rationals)?),
    })
}

pub fn matrix_to_json<F: Field>(m: &Matrix<F>) -> Value {
    let k = m.field();
    let entries: Vec<Vec<String>> = (0..m.rows())
        .map(|i| m.row(i).iter().map(|e| k.format_elem(e)).collect())
        .collect();
    json!({
        "format": FORMAT_VERSION,
        "field": k.spec(),
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": entries,
    })
}

pub fn record_to_json<F: Field>(r: &ClassificationRecord<F>) -> Value {
    let components: Vec<Value> = r
        .components
        .iter()
        .map(|c| {
            json!({
                "p": c.p.to_string(),
                "n": c.n,
                "d": c.d,
                "kernel_dims": c.kernel_dims,
                "nu": c.nu,
            })
        })
        .collect();
    json!({
        "format": FORMAT_VERSION,
        "field": r.field.spec(),
        "dim": r.dim,
        "annihilator": r.annihilator().to_string(),
        "components": components,
    })
}

#[derive(Debug, Deserialize)]
struct ComponentDoc {
    p: String,
    n: usize,
    nu: Vec<usize>,
}

#[derive(Debug, Deserialize)]
struct RecordDoc {
    format: Option<u32>,
    field: FieldSpec,
    dim: usize,
    components: Vec<ComponentDoc>,
}

impl RecordDoc {
    fn build<F: Field>(&self, k: &F) -> Result<ClassificationRecord<F>> {
        check_format(self.format)?;
        let components = self
            .components
            .iter()
            .map(|c| {
                if c.nu.len() != c.n {
                    return Err(Error::InconsistentRecord(format!(
                        "{} has n = {} but {} nu values",
                        c.p,
                        c.n,
                        c.nu.len()
                    )));
                }
                Ok(PrimaryComponent::from_nu(Poly::parse(&c.p, k)?, c.nu.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        let record = ClassificationRecord {
            field: k.clone(),
            dim: self.dim,
            components,
        };
        record.check_consistency()?;
        Ok(record)
    }
}

pub type AnyRecord = AnyField<ClassificationRecord<PrimeField>, ClassificationRecord<Rationals>>;

pub fn parse_record(text: &str) -> Result<AnyRecord> {
    let doc: RecordDoc = from_json(text)?;
    Ok(match doc.field {
        FieldSpec::PrimeField { p } => AnyField::Fp(doc.build(&PrimeField::new(p)?)?),
        FieldSpec::Rationals => AnyField::Q(doc.build(&Rationals)?),
    })
}

pub fn layout_to_json<F: Field>(layout: &JordanLayout<F>) -> Value {
    let blocks: Vec<Value> = layout
        .blocks
        .iter()
        .map(|b| json!({"p": b.p.to_string(), "exp": b.exp, "count": b.count}))
        .collect();
    json!({ "blocks": blocks })
}

#[derive(Debug, Serialize, Deserialize)]
struct BlockDoc {
    p: String,
    exp: usize,
    mult: Cardinal,
}

#[derive(Debug, Deserialize)]
struct SymbolicDoc {
    format: Option<u32>,
    field: FieldSpec,
    dim: Cardinal,
    blocks: Vec<BlockDoc>,
}

impl SymbolicDoc {
    fn build<F: Field>(&self, k: &F) -> Result<SymbolicEndo<F>> {
        check_format(self.format)?;
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                Ok(SymBlock {
                    p: Poly::parse(&b.p, k)?,
                    exp: b.exp,
                    mult: b.mult,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SymbolicEndo {
            field: k.clone(),
            dim: self.dim,
            blocks,
        })
    }
}

/// Parses a symbolic endomorphism without validating it.
pub fn parse_symbolic(text: &str) -> Result<AnySymbolic> {
    let doc: SymbolicDoc = from_json(text)?;
    Ok(match doc.field {
        FieldSpec::PrimeField { p } => AnyField::Fp(doc.build(&PrimeField::new(p)?)?),
        FieldSpec::Rationals => AnyField::Q(doc.build(&Rationals)?),
    })
}

pub fn symbolic_to_json<F: Field>(e: &SymbolicEndo<F>) -> Value {
    let blocks: Vec<BlockDoc> = e
        .blocks
        .iter()
        .map(|b| BlockDoc {
            p: b.p.to_string(),
            exp: b.exp,
            mult: b.mult,
        })
        .collect();
    json!({
        "format": FORMAT_VERSION,
        "field": e.field.spec(),
        "dim": e.dim,
        "blocks": blocks,
    })
}

pub fn label_to_json<F: Field>(label: &CanonicalLabel<F>) -> Value {
    let factors: Vec<Value> = label
        .factors
        .iter()
        .map(|(p, n, nu)| json!({"p": p.to_string(), "n": n, "nu": nu}))
        .collect();
    json!({ "r": label.r, "factors": factors })
}

/// True when a JSON document describes a symbolic endomorphism rather than
/// a matrix.
pub fn is_symbolic_document(text: &str) -> bool {
    serde_json::from_str::<Value>(text)
        .map(|v| v.get("blocks").is_some())
        .unwrap_or(false)
}
