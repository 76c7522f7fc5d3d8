//! Secure RFCs: uniform padding, a rate-1 Gabidulin precode and an inner
//! RFC.
//!
//! The message `m` (k symbols) is extended with `u = l1 + xi * l2` uniform
//! padding symbols `r`, the result `(m, r)` is encoded with a square
//! (k_tilde, k_tilde) Gabidulin code, and the Gabidulin codeword is encoded
//! with an (n, k_tilde) RFC. Every stored symbol is then an evaluation of
//! the same linearized polynomial `f` with coefficients `(m, r)`, taken at
//! the node's effective point.

use rand::Rng;
use thiserror::Error;

use crate::field::{Element, Field};
use crate::gabidulin::{decode_linearized, GabidulinCode, GabidulinError};
use crate::linearized::LinearizedPolynomial;
use crate::rfc::{GroupSelector, ParamChecks, Repair, RfcCode, RfcError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SecureError {
    #[error("extension degree too small: need p >= k_tilde, got p = {p}, k_tilde = {k_tilde}")]
    ExtensionTooSmall { p: usize, k_tilde: usize },
    #[error("no room for a message: need k_tilde > l1 + xi*l2, got k_tilde = {k_tilde}, l1 + xi*l2 = {u}")]
    NoMessage { k_tilde: usize, u: usize },
    #[error("eavesdropper budget too large: need l1 + l2 < k, got l1 + l2 = {l}, k = {k}")]
    BudgetTooLarge { l: usize, k: usize },
    #[error("padding has {got} symbols, expected {expected}")]
    PaddingLength { got: usize, expected: usize },
    #[error("node {0} is not erased")]
    NodeLive(usize),
    #[error("node {0} is already erased")]
    NodeErased(usize),
    #[error("state holds {got} nodes, expected {expected}")]
    StateSize { got: usize, expected: usize },
    #[error(transparent)]
    Rfc(#[from] RfcError),
    #[error(transparent)]
    Gabidulin(#[from] GabidulinError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SecureRfcSystem {
    inner: RfcCode,
    outer: GabidulinCode,
    l1: usize,
    l2: usize,
    u: usize,
    k: usize,
    effective_points: Vec<Element>,
}

/// Codeword plus the padding that produced it. The padding is secret
/// material; it is kept only for audits and tests.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Encoded {
    pub codeword: Vec<Element>,
    pub padding: Vec<Element>,
}

impl SecureRfcSystem {
    /// Draws a random inner RFC from `seed` and wraps it.
    #[allow(clippy::too_many_arguments)]
    pub fn build(
        field: &Field,
        n: usize,
        k_tilde: usize,
        xi: usize,
        l1: usize,
        l2: usize,
        seed: u64,
        checks: ParamChecks,
    ) -> Result<Self, SecureError> {
        check_budget(field, k_tilde, xi, l1, l2, checks)?;
        let inner = RfcCode::generate(field, n, k_tilde, xi, seed, checks)?;
        Self::from_inner(inner, l1, l2, checks)
    }

    /// Wraps an existing inner code, e.g. a fixed parity topology.
    pub fn from_inner(inner: RfcCode, l1: usize, l2: usize, checks: ParamChecks) -> Result<Self, SecureError> {
        let field = inner.field().clone();
        let k_tilde = inner.dimension();
        let xi = inner.locality();
        let (u, k) = check_budget(&field, k_tilde, xi, l1, l2, checks)?;
        let outer = GabidulinCode::new(&field, k_tilde, k_tilde)?;
        let effective_points = (0..inner.len())
            .map(|i| {
                inner
                    .generator_row(i)
                    .iter()
                    .zip(outer.points())
                    .filter(|(&c, _)| c != 0)
                    .fold(field.zero(), |acc, (&c, y)| field.add(&acc, &field.scale(c, y)))
            })
            .collect();
        Ok(SecureRfcSystem { inner, outer, l1, l2, u, k, effective_points })
    }

    pub fn field(&self) -> &Field {
        self.inner.field()
    }

    pub fn inner(&self) -> &RfcCode {
        &self.inner
    }

    pub fn outer(&self) -> &GabidulinCode {
        &self.outer
    }

    pub fn l1(&self) -> usize {
        self.l1
    }

    pub fn l2(&self) -> usize {
        self.l2
    }

    /// Padding length u.
    pub fn padding_len(&self) -> usize {
        self.u
    }

    /// Message length k.
    pub fn message_len(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.inner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.is_empty()
    }

    /// z_i: the point at which node i's symbol evaluates `f`.
    pub fn effective_points(&self) -> &[Element] {
        &self.effective_points
    }

    /// The polynomial whose evaluations are stored, from message and padding.
    pub fn polynomial(&self, msg: &[Element], padding: &[Element]) -> LinearizedPolynomial {
        LinearizedPolynomial::new(msg.iter().chain(padding).cloned().collect())
    }

    pub fn encode<R: Rng + ?Sized>(&self, msg: &[Element], rng: &mut R) -> Result<Encoded, SecureError> {
        let padding: Vec<Element> = (0..self.u).map(|_| self.field().random(rng)).collect();
        let codeword = self.encode_with_padding(msg, &padding)?;
        Ok(Encoded { codeword, padding })
    }

    /// Deterministic encode with caller-chosen padding.
    pub fn encode_with_padding(&self, msg: &[Element], padding: &[Element]) -> Result<Vec<Element>, SecureError> {
        if msg.len() != self.k {
            return Err(RfcError::MessageLength { got: msg.len(), expected: self.k }.into());
        }
        if padding.len() != self.u {
            return Err(SecureError::PaddingLength { got: padding.len(), expected: self.u });
        }
        let extended: Vec<Element> = msg.iter().chain(padding).cloned().collect();
        let outer = self.outer.encode(&extended)?;
        Ok(self.inner.encode(&outer)?)
    }

    /// Recovers the message from `(node, value)` pairs by interpolating at
    /// the effective points. Points are taken greedily in the given order.
    pub fn decode(&self, available: &[(usize, Element)]) -> Result<Vec<Element>, SecureError> {
        let evals = available
            .iter()
            .map(|(i, v)| {
                self.effective_points.get(*i).map(|z| (z.clone(), v.clone())).ok_or(RfcError::NoSuchNode(*i))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut coeffs = decode_linearized(self.field(), &evals, self.inner.dimension())?;
        coeffs.truncate(self.k);
        Ok(coeffs)
    }
}

fn check_budget(
    field: &Field,
    k_tilde: usize,
    xi: usize,
    l1: usize,
    l2: usize,
    checks: ParamChecks,
) -> Result<(usize, usize), SecureError> {
    if field.p() < k_tilde {
        return Err(SecureError::ExtensionTooSmall { p: field.p(), k_tilde });
    }
    let u = l1 + xi * l2;
    if u >= k_tilde {
        return Err(SecureError::NoMessage { k_tilde, u });
    }
    let k = k_tilde - u;
    if checks == ParamChecks::Strict && l1 + l2 >= k {
        return Err(SecureError::BudgetTooLarge { l: l1 + l2, k });
    }
    Ok((u, k))
}

/// One completed repair in a [`DssState`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepairEvent {
    pub node: usize,
    pub parity: usize,
    /// Nodes read, ascending.
    pub downloads: Vec<usize>,
}

/// Node contents of a storage system, with a log of repairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DssState {
    nodes: Vec<Option<Element>>,
    log: Vec<RepairEvent>,
}

impl DssState {
    /// Stores one codeword symbol per node.
    pub fn store(codeword: Vec<Element>) -> Self {
        DssState { nodes: codeword.into_iter().map(Some).collect(), log: Vec::new() }
    }

    /// State with explicit erasures, e.g. loaded from a shard directory.
    pub fn from_nodes(nodes: Vec<Option<Element>>) -> Self {
        DssState { nodes, log: Vec::new() }
    }

    pub fn nodes(&self) -> &[Option<Element>] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> Option<&Element> {
        self.nodes.get(i).and_then(Option::as_ref)
    }

    pub fn log(&self) -> &[RepairEvent] {
        &self.log
    }

    /// Live `(node, value)` pairs in node order.
    pub fn live(&self) -> Vec<(usize, Element)> {
        self.nodes.iter().enumerate().filter_map(|(i, v)| v.clone().map(|v| (i, v))).collect()
    }

    pub fn fail(&mut self, node: usize) -> Result<(), SecureError> {
        match self.nodes.get_mut(node) {
            None => Err(RfcError::NoSuchNode(node).into()),
            Some(slot) if slot.is_none() => Err(SecureError::NodeErased(node)),
            Some(slot) => {
                *slot = None;
                Ok(())
            }
        }
    }

    /// Rebuilds an erased node, writes it back and logs the downloads.
    pub fn repair(
        &mut self,
        sys: &SecureRfcSystem,
        node: usize,
        selector: &dyn GroupSelector,
    ) -> Result<Repair, SecureError> {
        if self.nodes.len() != sys.len() {
            return Err(SecureError::StateSize { got: self.nodes.len(), expected: sys.len() });
        }
        match self.nodes.get(node) {
            None => return Err(RfcError::NoSuchNode(node).into()),
            Some(Some(_)) => return Err(SecureError::NodeLive(node)),
            Some(None) => {}
        }
        let repair = sys.inner().repair(node, &self.nodes, selector)?;
        self.nodes[node] = Some(repair.value.clone());
        self.log.push(RepairEvent {
            node,
            parity: repair.group.parity,
            downloads: repair.downloads.iter().map(|d| d.0).collect(),
        });
        Ok(repair)
    }
}
