//! Exact symbolic calculus of quantum characteristic classes of Hamiltonian
//! fibrations.
//!
//! The crate is organised bottom up:
//!
//! * [`novikov`]: the coefficient ring `Λ` and its valuation,
//! * [`homology`]: basis presentations of `H_*(M; Q)` with Gromov-Witten tables,
//! * [`quantum`]: the quantum homology ring `QH_*(M; Λ)`,
//! * [`seidel`]: Seidel elements of Hamiltonian circle actions,
//! * [`obstruction`]: virtual index and obstruction-bundle Euler classes,
//! * [`qcalg`]: the algebra `QH_*^B(M)` of total quantum characteristic classes.
//!
//! All arithmetic is exact; there is no floating point in this crate.

pub mod base;
pub mod error;
pub mod linalg;
pub mod homology;
pub mod novikov;
pub mod obstruction;
pub mod qcalg;
pub mod quantum;
pub mod seidel;

use num_bigint::BigInt;

pub use base::{BaseClass, BaseKind, BaseModel, BaseRingElement};
pub use error::{Error, Result};
pub use homology::{
    dual_basis, pairing_eval, preset_cpn, validate_model, HomologyClass, ManifoldModel, ModelFile,
    ValidationReport,
};
pub use novikov::{Monomial, NovikovScalar};
pub use obstruction::{
    euler_obstruction, expand_euler, leading_qc_class, minimality_certificate, virtual_index,
    MinimalityVerdict, ObstructionPoly, ObstructionRingElement,
};
pub use qcalg::{
    degree_audit, eval_functional, hofer_bound, mult_operator, pontryagin_psi, psi, qc_cup,
    whitney_total, BoundKind, DegreeAudit, HoferCertificate, MultOperator, QCClass,
};
pub use quantum::{qinvert, qmul, seidel_product_check, QDegree, QuantumElement};
pub use seidel::{loop_hofer_bound, seidel_full, seidel_leading, CircleAction, Correction};

/// Exact rational numbers used throughout.
pub type Rational = num_rational::BigRational;

/// Shorthand for the rational `n / d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}
