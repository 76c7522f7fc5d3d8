//! Systematic repairable fountain codes (RFCs).
//!
//! An `(n, k)` RFC stores the k message symbols as-is and adds n - k parity
//! symbols, each a GF(q)-combination of at most `xi` randomly drawn message
//! symbols. A parity together with the message symbols it combines is a
//! local group; any one node of a group can be rebuilt from the others.
//!
//! Node indices are 0-based throughout the library: nodes `0..k` are
//! systematic and node `k + j` holds parity `j`.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::field::{poly, solve_linear, Element, Field, FieldError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RfcError {
    #[error("base field too small: RFCs need q > k_tilde, got q = {q}, k_tilde = {k}")]
    BaseTooSmall { q: u32, k: usize },
    #[error("invalid RFC shape: need 1 <= k_tilde < n and xi >= 1, got n = {n}, k_tilde = {k}, xi = {xi}")]
    Shape { n: usize, k: usize, xi: usize },
    #[error("parity {parity}: {reason}")]
    InvalidParity { parity: usize, reason: String },
    #[error("expected {expected} parities, got {got}")]
    ParityCount { expected: usize, got: usize },
    #[error("message has {got} symbols, expected {expected}")]
    MessageLength { got: usize, expected: usize },
    #[error("node {0} does not exist")]
    NoSuchNode(usize),
    #[error("node {0} has no local group whose other nodes are all available")]
    Unrepairable(usize),
    #[error("decoding failed: available symbols have rank {rank}, need {needed}")]
    InsufficientRank { rank: usize, needed: usize },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// How strictly constructor preconditions are enforced.
///
/// `Strict` applies every condition of the construction, including the
/// base-field condition q > k_tilde and (for secure systems) the eavesdropper
/// budget bound l1 + l2 < k. `Relaxed` drops only those two, which are not
/// needed for correctness or for the security argument, so that tiny fields
/// can be enumerated exhaustively.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ParamChecks {
    #[default]
    Strict,
    Relaxed,
}

/// A parity and the systematic nodes it combines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalGroup {
    /// Node index of the parity.
    pub parity: usize,
    /// Systematic node indices, ascending.
    pub members: Vec<usize>,
    /// GF(q) coefficient of each member, all nonzero.
    pub coefficients: Vec<u32>,
}

impl LocalGroup {
    /// Every node of the group, parity included.
    pub fn nodes(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied().chain(std::iter::once(self.parity))
    }

    pub fn coefficient_of(&self, node: usize) -> Option<u32> {
        self.members.iter().position(|&m| m == node).map(|i| self.coefficients[i])
    }
}

/// Chooses which local group repairs a failed systematic node.
pub trait GroupSelector {
    /// `usable` holds every group of `failed` whose other nodes are available,
    /// in ascending parity order.
    fn select<'a>(&self, failed: usize, usable: &'a [LocalGroup]) -> Option<&'a LocalGroup>;
}

/// Default policy: the usable group with the lowest parity index.
#[derive(Clone, Copy, Debug, Default)]
pub struct LowestParity;

impl GroupSelector for LowestParity {
    fn select<'a>(&self, _failed: usize, usable: &'a [LocalGroup]) -> Option<&'a LocalGroup> {
        usable.first()
    }
}

/// Pins the parity used for specific nodes; unpinned nodes use
/// [`LowestParity`]. A pinned group that is not usable makes the node
/// unrepairable rather than silently falling back.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PinnedGroups(pub BTreeMap<usize, usize>);

impl GroupSelector for PinnedGroups {
    fn select<'a>(&self, failed: usize, usable: &'a [LocalGroup]) -> Option<&'a LocalGroup> {
        match self.0.get(&failed) {
            Some(&parity) => usable.iter().find(|g| g.parity == parity),
            None => usable.first(),
        }
    }
}

/// Result of rebuilding one node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Repair {
    pub node: usize,
    pub value: Element,
    pub group: LocalGroup,
    /// Every `(node, value)` read to perform the repair, ascending by node.
    pub downloads: Vec<(usize, Element)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RfcCode {
    field: Field,
    n: usize,
    k: usize,
    xi: usize,
    /// Per parity: `(message index, nonzero coefficient)` sorted by index.
    parities: Vec<Vec<(usize, u32)>>,
    seed: Option<u64>,
}

const INDEX_STREAM: u64 = 0;
const COEFF_STREAM: u64 = 1;

impl RfcCode {
    /// Draws a random code. Each parity picks `xi` message indices uniformly
    /// with replacement and one uniform GF(q) coefficient per pick; repeated
    /// indices are merged by adding coefficients and zero terms are dropped.
    ///
    /// Index and coefficient draws come from two separate ChaCha8 streams
    /// keyed by `seed`, so the code is a pure function of its arguments.
    pub fn generate(field: &Field, n: usize, k: usize, xi: usize, seed: u64, checks: ParamChecks) -> Result<Self, RfcError> {
        check_shape(field, n, k, xi, checks)?;
        let mut index_rng = ChaCha8Rng::seed_from_u64(seed);
        index_rng.set_stream(INDEX_STREAM);
        let mut coeff_rng = ChaCha8Rng::seed_from_u64(seed);
        coeff_rng.set_stream(COEFF_STREAM);
        let q = field.q();
        let parities = (0..n - k)
            .map(|_| {
                let mut terms: BTreeMap<usize, u32> = BTreeMap::new();
                for _ in 0..xi {
                    let idx = index_rng.random_range(0..k);
                    let c = coeff_rng.random_range(0..q);
                    let e = terms.entry(idx).or_insert(0);
                    *e = (*e + c) % q;
                }
                terms.into_iter().filter(|&(_, c)| c != 0).collect()
            })
            .collect();
        Ok(RfcCode { field: field.clone(), n, k, xi, parities, seed: Some(seed) })
    }

    /// Builds a code from an explicit parity topology (for fixtures and
    /// loading from files). Terms are validated and normalized.
    pub fn from_parities(
        field: &Field,
        n: usize,
        k: usize,
        xi: usize,
        parities: Vec<Vec<(usize, u32)>>,
        checks: ParamChecks,
    ) -> Result<Self, RfcError> {
        check_shape(field, n, k, xi, checks)?;
        if parities.len() != n - k {
            return Err(RfcError::ParityCount { expected: n - k, got: parities.len() });
        }
        let parities = parities
            .into_iter()
            .enumerate()
            .map(|(j, terms)| {
                let invalid = |reason: String| RfcError::InvalidParity { parity: k + j, reason };
                let mut seen = BTreeSet::new();
                let mut out = Vec::with_capacity(terms.len());
                for (idx, c) in terms {
                    if idx >= k {
                        return Err(invalid(format!("message index {idx} out of range")));
                    }
                    if c == 0 || c >= field.q() {
                        return Err(invalid(format!("coefficient {c} is not a nonzero element of GF({})", field.q())));
                    }
                    if !seen.insert(idx) {
                        return Err(invalid(format!("message index {idx} listed twice")));
                    }
                    out.push((idx, c));
                }
                if out.len() > xi {
                    return Err(invalid(format!("{} terms exceed locality {xi}", out.len())));
                }
                out.sort_unstable();
                Ok(out)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(RfcCode { field: field.clone(), n, k, xi, parities, seed: None })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dimension(&self) -> usize {
        self.k
    }

    pub fn locality(&self) -> usize {
        self.xi
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn parities(&self) -> &[Vec<(usize, u32)>] {
        &self.parities
    }

    pub fn is_systematic(&self, node: usize) -> bool {
        node < self.k
    }

    fn check_node(&self, node: usize) -> Result<(), RfcError> {
        if node >= self.n {
            return Err(RfcError::NoSuchNode(node));
        }
        Ok(())
    }

    /// Coefficients of `node` as a GF(q)-combination of the message.
    pub fn generator_row(&self, node: usize) -> Vec<u32> {
        let mut row = vec![0; self.k];
        if self.is_systematic(node) {
            row[node] = 1;
        } else {
            for &(i, c) in &self.parities[node - self.k] {
                row[i] = c;
            }
        }
        row
    }

    /// The local group defined by the parity stored at `parity_node`.
    pub fn group(&self, parity_node: usize) -> LocalGroup {
        let terms = &self.parities[parity_node - self.k];
        LocalGroup {
            parity: parity_node,
            members: terms.iter().map(|t| t.0).collect(),
            coefficients: terms.iter().map(|t| t.1).collect(),
        }
    }

    /// For a systematic node, every group whose parity involves it; for a
    /// parity node, the single group it defines.
    pub fn local_groups_of(&self, node: usize) -> Result<Vec<LocalGroup>, RfcError> {
        self.check_node(node)?;
        if !self.is_systematic(node) {
            return Ok(vec![self.group(node)]);
        }
        Ok((self.k..self.n)
            .filter(|&j| self.parities[j - self.k].iter().any(|t| t.0 == node))
            .map(|j| self.group(j))
            .collect())
    }

    /// Greedy packing of pairwise-disjoint groups of a systematic node,
    /// scanning parities in ascending order. Disjointness ignores `node`
    /// itself. Not guaranteed to be a maximum packing.
    pub fn disjoint_group_packing(&self, node: usize) -> Result<Vec<LocalGroup>, RfcError> {
        let mut used = BTreeSet::new();
        let mut out = Vec::new();
        for g in self.local_groups_of(node)? {
            let others: Vec<usize> = g.nodes().filter(|&v| v != node).collect();
            if others.iter().any(|v| used.contains(v)) {
                continue;
            }
            used.extend(others);
            out.push(g);
        }
        Ok(out)
    }

    pub fn encode(&self, msg: &[Element]) -> Result<Vec<Element>, RfcError> {
        if msg.len() != self.k {
            return Err(RfcError::MessageLength { got: msg.len(), expected: self.k });
        }
        let f = &self.field;
        let mut out = msg.to_vec();
        for terms in &self.parities {
            out.push(terms.iter().fold(f.zero(), |acc, &(i, c)| f.add(&acc, &f.scale(c, &msg[i]))));
        }
        Ok(out)
    }

    /// Groups of systematic `node` whose other nodes are all available.
    pub fn usable_groups(&self, node: usize, available: impl Fn(usize) -> bool) -> Result<Vec<LocalGroup>, RfcError> {
        Ok(self
            .local_groups_of(node)?
            .into_iter()
            .filter(|g| g.nodes().filter(|&v| v != node).all(&available))
            .collect())
    }

    /// Rebuilds `failed` from one local group. `available[i]` is the current
    /// content of node i, or `None` if it cannot be read.
    pub fn repair(
        &self,
        failed: usize,
        available: &[Option<Element>],
        selector: &dyn GroupSelector,
    ) -> Result<Repair, RfcError> {
        self.check_node(failed)?;
        let f = &self.field;
        let is_up = |i: usize| i != failed && available.get(i).is_some_and(Option::is_some);
        let read = |i: usize| available[i].clone().expect("checked available");
        if !self.is_systematic(failed) {
            let group = self.group(failed);
            if !group.members.iter().all(|&m| is_up(m)) {
                return Err(RfcError::Unrepairable(failed));
            }
            let downloads: Vec<(usize, Element)> = group.members.iter().map(|&m| (m, read(m))).collect();
            let value = downloads
                .iter()
                .zip(&group.coefficients)
                .fold(f.zero(), |acc, ((_, v), &c)| f.add(&acc, &f.scale(c, v)));
            return Ok(Repair { node: failed, value, group, downloads });
        }
        let usable = self.usable_groups(failed, is_up)?;
        let group = selector.select(failed, &usable).ok_or(RfcError::Unrepairable(failed))?.clone();
        let own = group.coefficient_of(failed).expect("group contains the failed node");
        let mut downloads: Vec<(usize, Element)> = group.nodes().filter(|&v| v != failed).map(|v| (v, read(v))).collect();
        downloads.sort_by_key(|d| d.0);
        // parity = own * failed + sum(other terms), so failed = (parity - others) / own
        let mut acc = read(group.parity);
        for (&m, &c) in group.members.iter().zip(&group.coefficients) {
            if m != failed {
                acc = f.sub(&acc, &f.scale(c, &read(m)));
            }
        }
        let value = f.scale(poly::inv_mod_q(own, f.q()), &acc);
        Ok(Repair { node: failed, value, group, downloads })
    }

    /// Solves for the message from any symbols whose generator rows span
    /// rank k.
    pub fn decode(&self, available: &[(usize, Element)]) -> Result<Vec<Element>, RfcError> {
        let f = &self.field;
        for &(i, _) in available {
            self.check_node(i)?;
        }
        let rows: Vec<Vec<Element>> =
            available.iter().map(|&(i, _)| self.generator_row(i).into_iter().map(|c| f.base(c)).collect()).collect();
        let rhs: Vec<Element> = available.iter().map(|(_, v)| v.clone()).collect();
        if rows.is_empty() {
            return Err(RfcError::InsufficientRank { rank: 0, needed: self.k });
        }
        let sol = solve_linear(f, &rows, &rhs)?;
        if sol.rank < self.k {
            return Err(RfcError::InsufficientRank { rank: sol.rank, needed: self.k });
        }
        sol.solution.ok_or(RfcError::InsufficientRank { rank: sol.rank, needed: self.k })
    }
}

fn check_shape(field: &Field, n: usize, k: usize, xi: usize, checks: ParamChecks) -> Result<(), RfcError> {
    if k == 0 || k >= n || xi == 0 {
        return Err(RfcError::Shape { n, k, xi });
    }
    if checks == ParamChecks::Strict && field.q() as usize <= k {
        return Err(RfcError::BaseTooSmall { q: field.q(), k });
    }
    Ok(())
}

/// Decode success counts from random symbol subsets of growing size.
///
/// Each trial draws one random node permutation and tests its prefixes of
/// every requested size, so the counts are coupled across sizes. Trials use
/// seeds derived from `seed` and run in parallel; the result does not depend
/// on scheduling.
pub fn decode_success_counts(code: &RfcCode, sizes: &[usize], trials: usize, seed: u64) -> Vec<usize> {
    let per_trial: Vec<Vec<bool>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t as u64 + 2);
            let f = code.field();
            let msg: Vec<Element> = (0..code.dimension()).map(|_| f.random(&mut rng)).collect();
            let cw = code.encode(&msg).expect("message length matches");
            let mut order: Vec<usize> = (0..code.len()).collect();
            order.shuffle(&mut rng);
            sizes
                .iter()
                .map(|&s| {
                    let avail: Vec<(usize, Element)> = order[..s.min(order.len())].iter().map(|&i| (i, cw[i].clone())).collect();
                    code.decode(&avail).is_ok_and(|m| m == msg)
                })
                .collect()
        })
        .collect();
    (0..sizes.len()).map(|s| per_trial.iter().filter(|t| t[s]).count()).collect()
}
