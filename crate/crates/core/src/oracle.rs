//! Brute-force mutual information between the message and an eavesdropper's
//! observation.
//!
//! Every (message, padding) pair is pushed through the real encoder and
//! attack simulation, the exact joint distribution of (m, e) is tabulated
//! with integer counts, and I(m; e) is converted to bits only at the end.
//! Nothing here relies on rank arguments, so it can check the audit.
//!
//! Observations are additive in (m, r): e(m, r) = e(m, 0) + e(0, r). The
//! oracle simulates the two tables separately and sums them, which is exact
//! because encoding and repair are both GF(q)-linear.

use std::collections::{BTreeMap, HashMap};

use num_integer::Integer;
use rayon::prelude::*;
use thiserror::Error;

use crate::audit::{simulate_attack, AttackSpec, AuditError};
use crate::field::{Element, Field};
use crate::secure::{DssState, SecureError, SecureRfcSystem};

/// Default cap on the number of (m, r) pairs enumerated.
pub const DEFAULT_ORACLE_BUDGET: u128 = 1 << 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("{states} joint states exceed the enumeration budget of {budget}")]
    OverBudget { states: String, budget: u128 },
    #[error("{symbols} observed symbols over a field of order {order} do not fit a 128-bit key")]
    KeyTooWide { symbols: usize, order: String },
    #[error(transparent)]
    Audit(#[from] AuditError),
    #[error(transparent)]
    Secure(#[from] SecureError),
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleResult {
    /// I(m; e) in bits.
    pub bits: f64,
    /// True when the mutual information is exactly zero.
    pub zero: bool,
    /// Number of (m, r) pairs enumerated.
    pub joint_states: u128,
    /// Observed nodes, in record order.
    pub nodes: Vec<usize>,
    /// Per observed symbol: whether its marginal is uniform over GF(q^p).
    pub uniform_marginals: Vec<bool>,
}

/// Symbol vectors flattened to base-q digits, `p` per symbol.
type DigitTable = Vec<Vec<u32>>;

fn element_tuple(field: &Field, mut index: u128, len: usize, order: u128) -> Vec<Element> {
    (0..len)
        .map(|_| {
            let e = field.from_index(index % order);
            index /= order;
            e
        })
        .collect()
}

fn observation_table(
    sys: &SecureRfcSystem,
    attack: &AttackSpec,
    count: u128,
    message_side: bool,
) -> Result<DigitTable, OracleError> {
    let f = sys.field();
    let order = f.order().expect("checked against budget");
    let (k, u) = (sys.message_len(), sys.padding_len());
    (0..count)
        .into_par_iter()
        .map(|idx| {
            let (msg, pad) = if message_side {
                (element_tuple(f, idx, k, order), vec![f.zero(); u])
            } else {
                (vec![f.zero(); k], element_tuple(f, idx, u, order))
            };
            let cw = sys.encode_with_padding(&msg, &pad)?;
            let rec = simulate_attack(sys, &DssState::store(cw), attack)?;
            Ok(rec.entries.iter().flat_map(|e| e.value.coeffs().iter().copied()).collect())
        })
        .collect()
}

fn checked_pow(base: u128, exp: usize) -> Option<u128> {
    (0..exp).try_fold(1u128, |acc, _| acc.checked_mul(base))
}

/// Exact I(m; e) for uniform message and padding, by full enumeration.
pub fn mi_oracle(sys: &SecureRfcSystem, attack: &AttackSpec, budget: u128) -> Result<OracleResult, OracleError> {
    let f = sys.field();
    let (q, p) = (f.q(), f.p());
    let (k, u) = (sys.message_len(), sys.padding_len());
    let order = f.order();
    let states = order.and_then(|o| checked_pow(o, k + u));
    let (order, states) = match (order, states) {
        (Some(o), Some(s)) if s <= budget => (o, s),
        _ => {
            let desc = format!("(q^p)^(k+u) = ({q}^{p})^{}", k + u);
            return Err(OracleError::OverBudget { states: desc, budget });
        }
    };
    let m_count = checked_pow(order, k).expect("below states");
    let r_count = checked_pow(order, u).expect("below states");

    let probe = simulate_attack(sys, &DssState::store(vec![f.zero(); sys.len()]), attack)?;
    let w = probe.len();
    if checked_pow(order, w).is_none() {
        return Err(OracleError::KeyTooWide { symbols: w, order: order.to_string() });
    }
    let tm = observation_table(sys, attack, m_count, true)?;
    let tr = observation_table(sys, attack, r_count, false)?;

    let key = |a: &[u32], b: &[u32]| -> u128 {
        // base-q digits, symbol-major; fits because order^w fits
        a.iter().zip(b).rev().fold(0u128, |acc, (&x, &y)| acc * q as u128 + ((x + y) % q) as u128)
    };

    // counts of each observation over all (m, r)
    let count_e: HashMap<u128, u128> = tm
        .par_iter()
        .fold(HashMap::new, |mut acc: HashMap<u128, u128>, em| {
            for er in &tr {
                *acc.entry(key(em, er)).or_insert(0) += 1;
            }
            acc
        })
        .reduce(HashMap::new, |mut a, b| {
            for (e, c) in b {
                *a.entry(e).or_insert(0) += c;
            }
            a
        });

    // I = (1/N) sum_{m,e} c(m,e) log2(c(m,e) N / (c(m) c(e))), with c(m) = |r space|;
    // terms are grouped by their reduced ratio so the sum stays exact until the end
    let ratios: BTreeMap<(u128, u128), u128> = tm
        .par_iter()
        .fold(BTreeMap::new, |mut acc: BTreeMap<(u128, u128), u128>, em| {
            let mut local: HashMap<u128, u128> = HashMap::new();
            for er in &tr {
                *local.entry(key(em, er)).or_insert(0) += 1;
            }
            for (e, c) in local {
                let num = c * states;
                let den = r_count * count_e[&e];
                let g = num.gcd(&den);
                *acc.entry((num / g, den / g)).or_insert(0) += c;
            }
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (r, c) in b {
                *a.entry(r).or_insert(0) += c;
            }
            a
        });
    let zero = ratios.keys().all(|&(n, d)| n == d);
    let bits = if zero {
        0.0
    } else {
        ratios.iter().map(|(&(n, d), &c)| c as f64 / states as f64 * ((n as f64).log2() - (d as f64).log2())).sum()
    };

    let symbol_radix = checked_pow(q as u128, p).expect("order fits");
    let uniform_marginals = (0..w)
        .map(|i| {
            let shift = checked_pow(symbol_radix, i).expect("order^w fits");
            let mut marginal: HashMap<u128, u128> = HashMap::new();
            for (&e, &c) in &count_e {
                *marginal.entry((e / shift) % symbol_radix).or_insert(0) += c;
            }
            marginal.len() as u128 == order && marginal.values().all(|&c| c * order == states)
        })
        .collect();

    Ok(OracleResult { bits, zero, joint_states: states, nodes: probe.nodes(), uniform_marginals })
}
