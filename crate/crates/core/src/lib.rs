//! Classification of endomorphisms with an annihilating polynomial up to
//! conjugation.
//!
//! The complete invariant of an endomorphism `f` is its factored annihilator
//! `p_1^n_1 ... p_r^n_r` together with the table of multiplicities `nu_i` of
//! the cyclic summands `k[x]/p_j^i`. This crate computes that invariant for
//! square matrices over `F_p` and `Q`, builds Jordan-type bases and canonical
//! forms from it, produces explicit conjugating automorphisms, and extends the
//! classification to countable-dimensional endomorphisms given as formal
//! block sums with multiplicities in `N ∪ {aleph_0}`.
//!
//! Everything is generic over the ground [`Field`]; the aliases below fix the
//! two supported fields.

pub mod annihilator;
pub mod error;
pub mod field;
pub mod invariants;
pub mod io;
pub mod jordan;
pub mod matrix;
pub mod oracle;
pub mod polynomial;
pub mod symbolic;

pub use annihilator::{minimal_polynomial, vector_order};
pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals, Scalar};
pub use invariants::{classify, is_conjugate, one_plus_invertible, ClassificationRecord};
pub use jordan::{canonical_form, conjugacy_certificate, jordan_basis, Certificate, JordanData};
pub use matrix::{Matrix, Subspace};
pub use polynomial::{factor, Factorization, Factorize, Poly};
pub use symbolic::{Cardinal, SymbolicEndo};

pub type FpScalar = Scalar<PrimeField>;
pub type QScalar = Scalar<Rationals>;
pub type FpPoly = Poly<PrimeField>;
pub type QPoly = Poly<Rationals>;
pub type FpMatrix = Matrix<PrimeField>;
pub type QMatrix = Matrix<Rationals>;
pub type FpSubspace = Subspace<PrimeField>;
pub type QSubspace = Subspace<Rationals>;
pub type FpRecord = ClassificationRecord<PrimeField>;
pub type QRecord = ClassificationRecord<Rationals>;
pub type FpSymbolic = SymbolicEndo<PrimeField>;
pub type QSymbolic = SymbolicEndo<Rationals>;
