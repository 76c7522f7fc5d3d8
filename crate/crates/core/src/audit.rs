//! The (l1, l2) eavesdropper: simulation of what it observes and exact
//! leakage accounting.
//!
//! An attack reads the stored symbols of the nodes in S1 and every symbol
//! downloaded while repairing the nodes in S2, plus the repaired symbols.
//! Each observed symbol is `f(z)` for its node's effective point `z`, so
//! with ν = GF(q)-rank of the observed points and one entropy unit equal to
//! `p log2 q` bits:
//!
//! - H(e) = ν units
//! - H(e | m) = min(u, ν) units, since the padding enters through the Moore
//!   matrix of the points raised to q^k
//! - I(m; e) = max(0, ν - u) units.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{solve_linear_in, Element, SubfieldBasis};
use crate::rfc::{LocalGroup, PinnedGroups, RfcError};
use crate::secure::{DssState, SecureRfcSystem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AuditError {
    #[error("node {0} is in both S1 and S2")]
    NotDisjoint(usize),
    #[error("node {0} does not exist")]
    NoSuchNode(usize),
    #[error("node {0} cannot be repaired under the chosen policy")]
    Unrepairable(usize),
    #[error("node {0} is erased and cannot be read")]
    NodeErased(usize),
    #[error("observed symbols are inconsistent with the supplied message")]
    Inconsistent,
    #[error("message has {got} symbols, expected {expected}")]
    MessageLength { got: usize, expected: usize },
    #[error(transparent)]
    Rfc(#[from] RfcError),
}

/// How the repair of each S2 node picks its local group.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RepairPolicy {
    /// Lowest parity index.
    #[default]
    Default,
    /// Fixed parity per node; unlisted nodes use the default.
    Pinned(BTreeMap<usize, usize>),
    /// The group choice that maximizes ν, first in lexicographic order on ties.
    WorstCase,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttackSpec {
    pub s1: BTreeSet<usize>,
    pub s2: BTreeSet<usize>,
    pub policy: RepairPolicy,
}

impl AttackSpec {
    pub fn new(s1: impl IntoIterator<Item = usize>, s2: impl IntoIterator<Item = usize>, policy: RepairPolicy) -> Self {
        AttackSpec { s1: s1.into_iter().collect(), s2: s2.into_iter().collect(), policy }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Read from storage (S1).
    Stored,
    /// Downloaded to repair `for_node`.
    Downloaded { for_node: usize },
    /// The reconstructed symbol of an S2 node.
    Repaired,
}

/// The value-independent part of an attack: which nodes are observed and
/// which group each S2 repair uses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttackPlan {
    /// Observed nodes, ascending, each with the first reason it was seen.
    pub reads: Vec<(usize, Provenance)>,
    /// Parity used to repair each S2 node.
    pub groups: BTreeMap<usize, usize>,
}

impl AttackPlan {
    pub fn nodes(&self) -> impl Iterator<Item = usize> + '_ {
        self.reads.iter().map(|r| r.0)
    }

    /// The plan's choices as a pinned policy.
    pub fn pinned(&self) -> PinnedGroups {
        PinnedGroups(self.groups.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EavesdropEntry {
    pub node: usize,
    pub value: Element,
    pub point: Element,
    pub provenance: Provenance,
}

/// Everything the eavesdropper saw, one entry per node, ascending by node.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EavesdropRecord {
    pub entries: Vec<EavesdropEntry>,
}

impl EavesdropRecord {
    /// Number of observed symbols w.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nodes(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.node).collect()
    }

    pub fn points(&self) -> Vec<Element> {
        self.entries.iter().map(|e| e.point.clone()).collect()
    }

    pub fn values(&self) -> Vec<Element> {
        self.entries.iter().map(|e| e.value.clone()).collect()
    }
}

/// Entropies in units of `p log2 q` bits.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SecurityReport {
    pub nu: usize,
    pub u: usize,
    pub unit_bits: f64,
    #[serde(rename = "H_e")]
    pub h_e: usize,
    #[serde(rename = "H_r")]
    pub h_r: usize,
    #[serde(rename = "H_r_given_em")]
    pub h_r_given_em: usize,
    pub leakage_units: usize,
    pub leakage_bits: f64,
    pub secure: bool,
}

impl SecurityReport {
    /// Report for an observation of GF(q)-rank `nu` against padding `u`.
    pub fn from_rank(nu: usize, u: usize, unit_bits: f64) -> Self {
        let leakage_units = nu.saturating_sub(u);
        SecurityReport {
            nu,
            u,
            unit_bits,
            h_e: nu,
            h_r: u,
            h_r_given_em: u - nu.min(u),
            leakage_units,
            leakage_bits: leakage_units as f64 * unit_bits,
            secure: leakage_units == 0,
        }
    }
}

fn validate(sys: &SecureRfcSystem, attack: &AttackSpec) -> Result<(), AuditError> {
    if let Some(&i) = attack.s1.iter().chain(&attack.s2).find(|&&i| i >= sys.len()) {
        return Err(AuditError::NoSuchNode(i));
    }
    if let Some(&i) = attack.s1.intersection(&attack.s2).next() {
        return Err(AuditError::NotDisjoint(i));
    }
    Ok(())
}

/// Groups available to repair `node` when every other node is live.
fn candidate_groups(sys: &SecureRfcSystem, node: usize) -> Result<Vec<LocalGroup>, AuditError> {
    Ok(sys.inner().local_groups_of(node)?)
}

fn plan_from_groups(s1: &BTreeSet<usize>, chosen: &[(usize, &LocalGroup)]) -> AttackPlan {
    let mut reads: BTreeMap<usize, Provenance> = s1.iter().map(|&i| (i, Provenance::Stored)).collect();
    for &(j, g) in chosen {
        for v in g.nodes().filter(|&v| v != j) {
            reads.entry(v).or_insert(Provenance::Downloaded { for_node: j });
        }
        reads.entry(j).or_insert(Provenance::Repaired);
    }
    AttackPlan { reads: reads.into_iter().collect(), groups: chosen.iter().map(|&(j, g)| (j, g.parity)).collect() }
}

/// GF(q)-rank of the effective points of `nodes`.
pub fn rank_of_nodes(sys: &SecureRfcSystem, nodes: impl IntoIterator<Item = usize>) -> usize {
    let mut basis = SubfieldBasis::new(sys.field());
    for i in nodes {
        basis.insert(&sys.effective_points()[i]);
    }
    basis.rank()
}

/// Decides which nodes the attack observes. Each S2 repair is planned with
/// every other node live; observations are deduplicated by node.
pub fn plan_attack(sys: &SecureRfcSystem, attack: &AttackSpec) -> Result<AttackPlan, AuditError> {
    validate(sys, attack)?;
    let mut options = Vec::with_capacity(attack.s2.len());
    for &j in &attack.s2 {
        let groups = candidate_groups(sys, j)?;
        let allowed: Vec<LocalGroup> = match &attack.policy {
            RepairPolicy::Pinned(pins) if pins.contains_key(&j) => {
                groups.into_iter().filter(|g| g.parity == pins[&j]).collect()
            }
            RepairPolicy::Default | RepairPolicy::Pinned(_) => groups.into_iter().take(1).collect(),
            RepairPolicy::WorstCase => groups,
        };
        if allowed.is_empty() {
            return Err(AuditError::Unrepairable(j));
        }
        options.push((j, allowed));
    }
    let mut best: Option<(usize, AttackPlan)> = None;
    for choice in options.iter().map(|(_, gs)| gs.iter()).multi_cartesian_product() {
        let chosen: Vec<(usize, &LocalGroup)> = options.iter().map(|o| o.0).zip(choice).collect();
        let plan = plan_from_groups(&attack.s1, &chosen);
        let nu = rank_of_nodes(sys, plan.nodes());
        if best.as_ref().is_none_or(|b| nu > b.0) {
            best = Some((nu, plan));
        }
    }
    // multi_cartesian_product of zero iterators yields nothing
    Ok(best.map_or_else(|| plan_from_groups(&attack.s1, &[]), |b| b.1))
}

/// Runs the attack against stored contents. Repairs are performed for real
/// from `state`, with only the repaired node treated as erased.
pub fn simulate_attack(sys: &SecureRfcSystem, state: &DssState, attack: &AttackSpec) -> Result<EavesdropRecord, AuditError> {
    let plan = plan_attack(sys, attack)?;
    let pinned = plan.pinned();
    let mut entries = Vec::with_capacity(plan.reads.len());
    for &(node, provenance) in &plan.reads {
        let value = match provenance {
            Provenance::Repaired => {
                let mut avail = state.nodes().to_vec();
                avail[node] = None;
                sys.inner().repair(node, &avail, &pinned).map_err(|e| match e {
                    RfcError::Unrepairable(i) => AuditError::Unrepairable(i),
                    other => other.into(),
                })?
                .value
            }
            _ => state.node(node).cloned().ok_or(AuditError::NodeErased(node))?,
        };
        entries.push(EavesdropEntry { node, value, point: sys.effective_points()[node].clone(), provenance });
    }
    Ok(EavesdropRecord { entries })
}

/// Entropy accounting for an observation.
pub fn audit(sys: &SecureRfcSystem, record: &EavesdropRecord) -> SecurityReport {
    let nu = sys.field().subfield_rank(record.entries.iter().map(|e| &e.point));
    SecurityReport::from_rank(nu, sys.padding_len(), sys.field().symbol_bits())
}

/// Counts the paddings consistent with the observation and the true message:
/// returns d such that there are (q^p)^d of them.
pub fn audit_solution_count(sys: &SecureRfcSystem, record: &EavesdropRecord, msg: &[Element]) -> Result<usize, AuditError> {
    let f = sys.field();
    let k = sys.message_len();
    let u = sys.padding_len();
    if msg.len() != k {
        return Err(AuditError::MessageLength { got: msg.len(), expected: k });
    }
    // e_i = sum_j m_j z_i^(q^j) + sum_j r_j z_i^(q^(k+j)), unknowns r
    let mut rows = Vec::with_capacity(record.len());
    let mut rhs = Vec::with_capacity(record.len());
    for entry in &record.entries {
        let ladder = f.frobenius_ladder(&entry.point, k + u);
        let known = msg.iter().zip(&ladder).fold(f.zero(), |acc, (m, z)| f.add(&acc, &f.mul(m, z)));
        rows.push(ladder[k..].to_vec());
        rhs.push(f.sub(&entry.value, &known));
    }
    let sol = solve_linear_in(f, u, &rows, &rhs).expect("rows have u columns");
    if !sol.is_consistent() {
        return Err(AuditError::Inconsistent);
    }
    Ok(sol.nullity())
}

/// Outcome of a search over all attacks of a given size.
#[derive(Clone, Debug, PartialEq)]
pub struct WorstCaseAudit {
    /// An attack reaching the maximum, with its group choices pinned.
    pub attack: AttackSpec,
    pub report: SecurityReport,
    /// Number of (S1, S2, group choice) configurations evaluated.
    pub configurations: u64,
    /// False when the space exceeded the budget and was sampled instead.
    pub exhaustive: bool,
    /// Largest ν seen; also the maximum leakage source.
    pub max_nu: usize,
}

type Candidate = (usize, Vec<usize>, Vec<usize>, Vec<usize>);

fn better(a: Candidate, b: Candidate) -> Candidate {
    // larger ν wins; ties go to the lexicographically smaller configuration
    match a.0.cmp(&b.0) {
        std::cmp::Ordering::Greater => a,
        std::cmp::Ordering::Less => b,
        std::cmp::Ordering::Equal => {
            if (&a.1, &a.2, &a.3) <= (&b.1, &b.2, &b.3) {
                a
            } else {
                b
            }
        }
    }
}

/// Maximizes leakage over every S1 of size at most `l1`, every disjoint S2
/// of size at most `l2` drawn from repairable nodes, and every group choice
/// for the S2 repairs. When the number of configurations exceeds `budget`,
/// `budget` configurations of maximal size are sampled from `seed` instead.
pub fn worst_case_audit(sys: &SecureRfcSystem, l1: usize, l2: usize, budget: u64, seed: u64) -> WorstCaseAudit {
    let n = sys.len();
    let table: Vec<Vec<LocalGroup>> = (0..n).map(|i| candidate_groups(sys, i).expect("node in range")).collect();
    let groups = &table;
    let repairable: Vec<usize> = (0..n).filter(|&i| !groups[i].is_empty()).collect();
    let s1_sets: Vec<Vec<usize>> = (0..=l1.min(n)).flat_map(|s| (0..n).combinations(s)).collect();
    let s2_sets = |s1: &[usize]| -> Vec<Vec<usize>> {
        let pool: Vec<usize> = repairable.iter().copied().filter(|i| !s1.contains(i)).collect();
        let top = l2.min(pool.len());
        (0..=top).flat_map(|s| pool.clone().into_iter().combinations(s)).collect()
    };
    let total: u64 = s1_sets
        .par_iter()
        .map(|s1| s2_sets(s1).iter().map(|s2| s2.iter().map(|&j| groups[j].len() as u64).product::<u64>()).sum::<u64>())
        .sum();

    let evaluate = |s1: &[usize], s2: &[usize], choice: &[usize]| -> usize {
        let mut nodes: Vec<usize> = s1.to_vec();
        for (&j, &c) in s2.iter().zip(choice) {
            nodes.extend(groups[j][c].nodes());
        }
        rank_of_nodes(sys, nodes)
    };

    let (best, configurations, exhaustive) = if total <= budget {
        let best = s1_sets
            .par_iter()
            .flat_map_iter(|s1| {
                s2_sets(s1).into_iter().flat_map(move |s2| {
                    let ranges: Vec<Vec<usize>> = s2.iter().map(|&j| (0..groups[j].len()).collect()).collect();
                    let choices: Vec<Vec<usize>> =
                        if s2.is_empty() { vec![Vec::new()] } else { ranges.into_iter().multi_cartesian_product().collect() };
                    let s1 = s1.clone();
                    choices.into_iter().map(move |c| (s1.clone(), s2.clone(), c))
                })
            })
            .map(|(s1, s2, c)| (evaluate(&s1, &s2, &c), s1, s2, c))
            .reduce(|| (0, vec![], vec![], vec![]), better);
        (best, total, true)
    } else {
        let best = (0..budget)
            .into_par_iter()
            .map(|t| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(t);
                let mut all: Vec<usize> = (0..n).collect();
                all.shuffle(&mut rng);
                let mut s1: Vec<usize> = all[..l1.min(n)].to_vec();
                s1.sort_unstable();
                let pool: Vec<usize> = repairable.iter().copied().filter(|i| !s1.contains(i)).collect();
                let mut s2: Vec<usize> = pool.choose_multiple(&mut rng, l2.min(pool.len())).copied().collect();
                s2.sort_unstable();
                let c: Vec<usize> = s2.iter().map(|&j| rng.random_range(0..groups[j].len())).collect();
                (evaluate(&s1, &s2, &c), s1, s2, c)
            })
            .reduce(|| (0, vec![], vec![], vec![]), better);
        (best, budget, false)
    };

    let (max_nu, s1, s2, choice) = best;
    let pins = s2.iter().zip(&choice).map(|(&j, &c)| (j, groups[j][c].parity)).collect();
    WorstCaseAudit {
        attack: AttackSpec::new(s1, s2, RepairPolicy::Pinned(pins)),
        report: SecurityReport::from_rank(max_nu, sys.padding_len(), sys.field().symbol_bits()),
        configurations,
        exhaustive,
        max_nu,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::rfc::{ParamChecks, RfcCode};
    use proptest::prelude::*;

    fn system(seed: u64, l1: usize, l2: usize) -> SecureRfcSystem {
        let f = Field::new(17, 14).unwrap();
        SecureRfcSystem::build(&f, 22, 14, 3, l1, l2, seed, ParamChecks::Strict).unwrap()
    }

    fn stored(sys: &SecureRfcSystem, seed: u64) -> (Vec<Element>, DssState) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let msg: Vec<Element> = (0..sys.message_len()).map(|_| sys.field().random(&mut rng)).collect();
        let enc = sys.encode(&msg, &mut rng).unwrap();
        (msg, DssState::store(enc.codeword))
    }

    #[test]
    fn empty_attack() {
        let sys = system(1, 1, 1);
        let (msg, st) = stored(&sys, 1);
        let rec = simulate_attack(&sys, &st, &AttackSpec::default()).unwrap();
        assert!(rec.is_empty());
        let rep = audit(&sys, &rec);
        assert_eq!((rep.nu, rep.leakage_units, rep.h_r_given_em), (0, 0, sys.padding_len()));
        assert_eq!(audit_solution_count(&sys, &rec, &msg).unwrap(), sys.padding_len());
    }

    #[test]
    fn overlap_and_range_errors() {
        let sys = system(1, 1, 1);
        let (_, st) = stored(&sys, 1);
        let both = AttackSpec::new([3], [3], RepairPolicy::Default);
        assert_eq!(simulate_attack(&sys, &st, &both).unwrap_err(), AuditError::NotDisjoint(3));
        let far = AttackSpec::new([30], [], RepairPolicy::Default);
        assert_eq!(simulate_attack(&sys, &st, &far).unwrap_err(), AuditError::NoSuchNode(30));
    }

    #[test]
    fn record_values_match_effective_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let sys = system(2, 2, 2);
        let msg: Vec<Element> = (0..sys.message_len()).map(|_| sys.field().random(&mut rng)).collect();
        let enc = sys.encode(&msg, &mut rng).unwrap();
        let f = sys.polynomial(&msg, &enc.padding);
        let st = DssState::store(enc.codeword);
        let attack = AttackSpec::new([0, 15], [3, 17], RepairPolicy::WorstCase);
        let rec = simulate_attack(&sys, &st, &attack).unwrap();
        assert!(rec.entries.windows(2).all(|w| w[0].node < w[1].node));
        for e in &rec.entries {
            assert_eq!(e.value, f.evaluate(sys.field(), &e.point));
        }
    }

    #[test]
    fn uncovered_s2_node_is_unrepairable() {
        let f = Field::new(7, 4).unwrap();
        let inner = RfcCode::from_parities(&f, 6, 4, 2, vec![vec![(0, 1), (1, 1)], vec![(1, 1), (2, 3)]], ParamChecks::Strict)
            .unwrap();
        let sys = SecureRfcSystem::from_inner(inner, 0, 0, ParamChecks::Strict).unwrap();
        let st = DssState::store(sys.encode_with_padding(&vec![f.one(); 4], &[]).unwrap());
        let attack = AttackSpec::new([], [3], RepairPolicy::Default);
        assert_eq!(simulate_attack(&sys, &st, &attack).unwrap_err(), AuditError::Unrepairable(3));
    }

    #[test]
    fn unprotected_system_leaks_one_unit_per_read() {
        let f = Field::new(13, 12).unwrap();
        let sys = SecureRfcSystem::build(&f, 20, 12, 3, 0, 0, 9, ParamChecks::Strict).unwrap();
        let (msg, st) = stored(&sys, 2);
        let rec = simulate_attack(&sys, &st, &AttackSpec::new([0], [], RepairPolicy::Default)).unwrap();
        let rep = audit(&sys, &rec);
        assert_eq!((rep.nu, rep.leakage_units), (1, 1));
        assert!((rep.leakage_bits - 12.0 * 13f64.log2()).abs() < 1e-9);
        assert_eq!(audit_solution_count(&sys, &rec, &msg).unwrap(), 0);
    }

    #[test]
    fn worst_case_policy_dominates_default() {
        for seed in 0..10 {
            let sys = system(seed, 1, 2);
            for j in 0..20 {
                if sys.inner().local_groups_of(j).unwrap().is_empty() {
                    continue;
                }
                let d = plan_attack(&sys, &AttackSpec::new([(j + 1) % 20], [j], RepairPolicy::Default)).unwrap();
                let w = plan_attack(&sys, &AttackSpec::new([(j + 1) % 20], [j], RepairPolicy::WorstCase)).unwrap();
                assert!(rank_of_nodes(&sys, w.nodes()) >= rank_of_nodes(&sys, d.nodes()));
            }
        }
    }

    #[test]
    fn provisioned_worst_case_is_secure() {
        for (l1, l2) in [(1, 1), (2, 1), (1, 2)] {
            let sys = system(l1 as u64 * 10 + l2 as u64, l1, l2);
            let w = worst_case_audit(&sys, l1, l2, 1 << 24, 0);
            assert!(w.exhaustive);
            assert!(w.max_nu <= sys.padding_len());
            assert!(w.report.secure);
        }
    }

    #[test]
    fn over_budget_worst_case_leaks() {
        let sys = system(4, 1, 1);
        let w = worst_case_audit(&sys, 5, 0, 1 << 24, 0);
        assert!(w.exhaustive);
        assert_eq!(w.max_nu, 5);
        assert_eq!(w.report.leakage_units, 1);
        let plan = plan_attack(&sys, &w.attack).unwrap();
        assert_eq!(rank_of_nodes(&sys, plan.nodes()), 5);
    }

    #[test]
    fn zero_budget_attack() {
        let sys = system(5, 1, 1);
        let w = worst_case_audit(&sys, 0, 0, 10, 0);
        assert_eq!((w.max_nu, w.configurations, w.exhaustive), (0, 1, true));
    }

    #[test]
    fn sampled_mode_reports_trials() {
        let sys = system(6, 2, 2);
        let w = worst_case_audit(&sys, 2, 2, 500, 1);
        assert!(!w.exhaustive);
        assert_eq!(w.configurations, 500);
        assert!(w.max_nu <= sys.padding_len());
        assert_eq!(worst_case_audit(&sys, 2, 2, 500, 1), w);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn provisioned_attacks_respect_rank_bound(seed in 0u64..1000, l1 in 0usize..3, l2 in 0usize..3, pick in any::<u64>()) {
            prop_assume!(l1 + l2 > 0);
            let sys = system(seed, l1, l2);
            let (msg, st) = stored(&sys, seed);
            let mut rng = ChaCha8Rng::seed_from_u64(pick);
            let mut nodes: Vec<usize> = (0..20).collect();
            nodes.shuffle(&mut rng);
            let s1: Vec<usize> = nodes[..l1].to_vec();
            let s2: Vec<usize> = nodes[l1..]
                .iter()
                .copied()
                .filter(|&j| !sys.inner().local_groups_of(j).unwrap().is_empty())
                .take(l2)
                .collect();
            for policy in [RepairPolicy::Default, RepairPolicy::WorstCase] {
                let rec = simulate_attack(&sys, &st, &AttackSpec::new(s1.clone(), s2.clone(), policy)).unwrap();
                let rep = audit(&sys, &rec);
                prop_assert!(rep.nu <= sys.padding_len());
                prop_assert!(rep.h_e <= rep.h_r);
                let d = audit_solution_count(&sys, &rec, &msg).unwrap();
                prop_assert_eq!(d, rep.h_r_given_em);
                prop_assert_eq!(rep.secure, Some(d) == rep.h_r.checked_sub(rep.h_e));
            }
        }

        #[test]
        fn solution_count_matches_rank(seed in 0u64..1000, s1 in proptest::collection::btree_set(0usize..20, 0..8)) {
            let sys = system(seed, 2, 1);
            let (msg, st) = stored(&sys, seed + 1);
            let rec = simulate_attack(&sys, &st, &AttackSpec { s1, ..Default::default() }).unwrap();
            let rep = audit(&sys, &rec);
            let d = audit_solution_count(&sys, &rec, &msg).unwrap();
            prop_assert_eq!(d, sys.padding_len() - rep.nu.min(sys.padding_len()));
            prop_assert_eq!(rep.leakage_units == 0, Some(d) == rep.h_r.checked_sub(rep.h_e));
        }
    }
}
