//! The JSON code-spec file. Node and message indices are 1-based on disk.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use srfc_core::{Element, Field, FieldSpec, ParamChecks, RfcCode, SecureRfcSystem};

use crate::error::CliError;

pub const SPEC_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InnerSpec {
    pub n: usize,
    pub k_tilde: usize,
    pub xi: usize,
    pub seed: Option<u64>,
    /// Per parity, `[message index, coefficient]` pairs.
    pub parities: Vec<Vec<(usize, u32)>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OuterSpec {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "K")]
    pub k: usize,
    pub points: Vec<Element>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Checks {
    Strict,
    Relaxed,
}

impl From<Checks> for ParamChecks {
    fn from(c: Checks) -> Self {
        match c {
            Checks::Strict => ParamChecks::Strict,
            Checks::Relaxed => ParamChecks::Relaxed,
        }
    }
}

/// Every semantic field; the hash is taken over this.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecBody {
    pub version: u32,
    pub field: FieldSpec,
    pub inner: InnerSpec,
    pub outer: OuterSpec,
    pub l1: usize,
    pub l2: usize,
    pub u: usize,
    pub k: usize,
    pub checks: Checks,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeSpecFile {
    #[serde(flatten)]
    pub body: SpecBody,
    /// Hex SHA-256 of the compact JSON of `body`.
    pub hash: String,
}

impl SpecBody {
    pub fn digest(&self) -> [u8; 32] {
        let bytes = serde_json::to_vec(self).expect("spec body serializes");
        Sha256::digest(bytes).into()
    }
}

impl CodeSpecFile {
    pub fn from_system(sys: &SecureRfcSystem, checks: ParamChecks) -> Self {
        let inner = sys.inner();
        let body = SpecBody {
            version: SPEC_VERSION,
            field: sys.field().spec(),
            inner: InnerSpec {
                n: inner.len(),
                k_tilde: inner.dimension(),
                xi: inner.locality(),
                seed: inner.seed(),
                parities: inner.parities().iter().map(|t| t.iter().map(|&(i, c)| (i + 1, c)).collect()).collect(),
            },
            outer: OuterSpec { n: sys.outer().len(), k: sys.outer().dimension(), points: sys.outer().points().to_vec() },
            l1: sys.l1(),
            l2: sys.l2(),
            u: sys.padding_len(),
            k: sys.message_len(),
            checks: match checks {
                ParamChecks::Strict => Checks::Strict,
                ParamChecks::Relaxed => Checks::Relaxed,
            },
        };
        let hash = hex::encode(body.digest());
        CodeSpecFile { body, hash }
    }

    pub fn digest(&self) -> [u8; 32] {
        self.body.digest()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("spec serializes");
        s.push('\n');
        s
    }

    pub fn save(&self, path: &Path) -> Result<(), CliError> {
        std::fs::write(path, self.to_json()).map_err(|e| CliError::io(path, e))
    }

    /// Parses and re-validates every invariant, returning the live system.
    pub fn parse(text: &str) -> Result<(Self, SecureRfcSystem), CliError> {
        let spec: CodeSpecFile = serde_json::from_str(text).map_err(|e| CliError::Invalid(format!("malformed spec file: {e}")))?;
        let b = &spec.body;
        if b.version != SPEC_VERSION {
            return Err(CliError::Invalid(format!("unsupported spec version {}", b.version)));
        }
        if hex::encode(b.digest()) != spec.hash {
            return Err(CliError::Invalid("spec hash does not match its contents".into()));
        }
        let field = Field::with_modulus(b.field.q, b.field.modulus.clone()).map_err(|e| CliError::Invalid(e.to_string()))?;
        if field.p() != b.field.p {
            return Err(CliError::Invalid("field degree does not match modulus".into()));
        }
        let checks: ParamChecks = b.checks.into();
        let parities = b
            .inner
            .parities
            .iter()
            .map(|t| {
                t.iter()
                    .map(|&(i, c)| i.checked_sub(1).map(|i| (i, c)).ok_or_else(|| CliError::Invalid("message index 0 in parity".into())))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut inner = RfcCode::from_parities(&field, b.inner.n, b.inner.k_tilde, b.inner.xi, parities, checks)
            .map_err(|e| CliError::Invalid(e.to_string()))?;
        if let Some(seed) = b.inner.seed {
            let regenerated = RfcCode::generate(&field, b.inner.n, b.inner.k_tilde, b.inner.xi, seed, checks)
                .map_err(|e| CliError::Invalid(e.to_string()))?;
            if regenerated.parities() != inner.parities() {
                return Err(CliError::Invalid("parities do not match the recorded seed".into()));
            }
            inner = regenerated;
        }
        let sys = SecureRfcSystem::from_inner(inner, b.l1, b.l2, checks).map_err(|e| CliError::Invalid(e.to_string()))?;
        if sys.outer().len() != b.outer.n || sys.outer().dimension() != b.outer.k || sys.outer().points() != b.outer.points {
            return Err(CliError::Invalid("outer code must be the square code on the polynomial basis".into()));
        }
        if sys.padding_len() != b.u || sys.message_len() != b.k {
            return Err(CliError::Invalid(format!(
                "u = {}, k = {} disagree with l1, l2 and xi (expected u = {}, k = {})",
                b.u,
                b.k,
                sys.padding_len(),
                sys.message_len()
            )));
        }
        Ok((spec, sys))
    }

    pub fn load(path: &Path) -> Result<(Self, SecureRfcSystem), CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text)
    }
}
