//! Secure repairable fountain codes over GF(q^p).
//!
//! A message is padded with uniform random symbols, precoded with a square
//! Gabidulin code and stored with a systematic repairable fountain code.
//! The crate also simulates the (l1, l2) eavesdropper, who reads l1 nodes
//! and observes l2 repairs, and computes its information leakage exactly.
//!
//! ```
//! use rand::SeedableRng;
//! use srfc_core::{DssState, Field, LowestParity, ParamChecks, SecureRfcSystem};
//!
//! let field = Field::new(11, 10).unwrap();
//! let sys = SecureRfcSystem::build(&field, 20, 10, 3, 1, 1, 7, ParamChecks::Strict).unwrap();
//! let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
//! let msg: Vec<_> = (0..sys.message_len()).map(|_| field.random(&mut rng)).collect();
//! let enc = sys.encode(&msg, &mut rng).unwrap();
//! let mut dss = DssState::store(enc.codeword);
//! dss.fail(12).unwrap();
//! dss.repair(&sys, 12, &LowestParity).unwrap();
//! assert_eq!(sys.decode(&dss.live()).unwrap(), msg);
//! ```

pub mod audit;
pub mod field;
pub mod gabidulin;
pub mod linearized;
pub mod oracle;
pub mod rates;
pub mod rfc;
pub mod secure;
pub mod topologies;

pub use audit::{
    audit, audit_solution_count, plan_attack, simulate_attack, worst_case_audit, AttackPlan, AttackSpec, AuditError,
    EavesdropEntry, EavesdropRecord, Provenance, RepairPolicy, SecurityReport, WorstCaseAudit,
};
pub use field::{Element, Field, FieldError, FieldSpec, SubfieldBasis};
pub use gabidulin::{GabidulinCode, GabidulinError};
pub use linearized::{interpolate, moore_matrix, InterpolationError, LinearizedPolynomial};
pub use oracle::{mi_oracle, OracleError, OracleResult, DEFAULT_ORACLE_BUDGET};
pub use rates::{RateError, RateModel, RatePoint, SweepParams};
pub use rfc::{GroupSelector, LocalGroup, LowestParity, ParamChecks, PinnedGroups, Repair, RfcCode, RfcError};
pub use secure::{DssState, Encoded, RepairEvent, SecureError, SecureRfcSystem};
