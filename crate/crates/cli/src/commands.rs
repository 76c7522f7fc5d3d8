//! Command implementations. Each returns the text to print on stdout.
//!
//! Node numbers cross this boundary 1-based and are 0-based inside.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Display;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use srfc_core::rates::{self, RateModel, SweepParams};
use srfc_core::{
    audit, mi_oracle, simulate_attack, topologies, worst_case_audit, AttackSpec, AuditError, DssState, Element,
    Field, GroupSelector, LowestParity, ParamChecks, PinnedGroups, Provenance, RepairPolicy, RfcCode,
    SecureRfcSystem,
};

use crate::args::{
    parse_range, AuditArgs, AuditWorstArgs, DecodeArgs, EncodeArgs, GenArgs, PolicyArg, RatesArgs, RepairArgs,
};
use crate::chunk;
use crate::error::CliError;
use crate::shard::{read_shards, write_shard, PayloadMode, Shard};
use crate::spec_file::CodeSpecFile;

pub const SECRET_FILE: &str = "secret_padding.json";

fn usage(e: impl Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn domain(e: impl Display) -> CliError {
    CliError::Domain(e.to_string())
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json value serializes")
}

/// Converts 1-based user node numbers, rejecting 0 and out-of-range values.
fn to_zero_based(nodes: &[usize], n: usize, what: &str) -> Result<Vec<usize>, CliError> {
    nodes
        .iter()
        .map(|&i| {
            if (1..=n).contains(&i) {
                Ok(i - 1)
            } else {
                Err(usage(format!("{what}: node {i} is out of range 1..={n}")))
            }
        })
        .collect()
}

fn one_based(nodes: impl IntoIterator<Item = usize>) -> Vec<usize> {
    nodes.into_iter().map(|i| i + 1).collect()
}

pub fn gen(a: &GenArgs) -> Result<String, CliError> {
    let checks = if a.relaxed { ParamChecks::Relaxed } else { ParamChecks::Strict };
    let field = Field::new(a.q, a.p).map_err(usage)?;
    let inner = match &a.topology {
        Some(name) => {
            let code = topologies::by_name(name, &field, checks)
                .ok_or_else(|| usage(format!("unknown topology {name:?}")))?
                .map_err(usage)?;
            for (flag, given, actual) in
                [("--n", a.n, code.len()), ("--k-tilde", a.k_tilde, code.dimension()), ("--xi", a.xi, code.locality())]
            {
                if given.is_some_and(|g| g != actual) {
                    return Err(usage(format!("{flag} conflicts with topology {name}, which fixes it to {actual}")));
                }
            }
            code
        }
        None => {
            let n = a.n.ok_or_else(|| usage("--n is required without --topology"))?;
            let k_tilde = a.k_tilde.ok_or_else(|| usage("--k-tilde is required without --topology"))?;
            let xi = a.xi.unwrap_or_else(|| default_locality(k_tilde));
            RfcCode::generate(&field, n, k_tilde, xi, a.seed.seed, checks).map_err(usage)?
        }
    };
    let sys = SecureRfcSystem::from_inner(inner, a.l1, a.l2, checks).map_err(usage)?;
    let spec = CodeSpecFile::from_system(&sys, checks);
    spec.save(&a.out)?;
    Ok(pretty(&json!({
        "spec": a.out.display().to_string(),
        "n": sys.len(),
        "k_tilde": sys.inner().dimension(),
        "xi": sys.inner().locality(),
        "l1": sys.l1(),
        "l2": sys.l2(),
        "u": sys.padding_len(),
        "k": sys.message_len(),
        "unit_bits": sys.field().symbol_bits(),
        "hash": spec.hash,
    })))
}

/// ceil(log2 k_tilde), at least 1.
pub fn default_locality(k_tilde: usize) -> usize {
    (usize::BITS - k_tilde.saturating_sub(1).leading_zeros()).max(1) as usize
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SecretPadding {
    pub spec_hash: String,
    /// One padding vector per stripe.
    pub stripes: Vec<Vec<Element>>,
}

pub fn encode(a: &EncodeArgs) -> Result<String, CliError> {
    let (spec, sys) = CodeSpecFile::load(&a.spec)?;
    let field = sys.field();
    let data = std::fs::read(&a.input).map_err(|e| CliError::io(&a.input, e))?;
    let (mode, messages) = if a.chunked {
        if data.is_empty() {
            return Err(domain("input file is empty: chunked mode needs at least one data byte"));
        }
        (PayloadMode::Chunked, chunk::file_to_messages(field, sys.message_len(), &data))
    } else {
        (PayloadMode::Raw, vec![chunk::raw_to_message(field, sys.message_len(), &data)?])
    };
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed.seed);
    let mut columns: Vec<Vec<Element>> = vec![Vec::with_capacity(messages.len()); sys.len()];
    let mut paddings = Vec::with_capacity(messages.len());
    for msg in &messages {
        let enc = sys.encode(msg, &mut rng).map_err(domain)?;
        for (col, c) in columns.iter_mut().zip(enc.codeword) {
            col.push(c);
        }
        paddings.push(enc.padding);
    }
    std::fs::create_dir_all(&a.outdir).map_err(|e| CliError::io(&a.outdir, e))?;
    let hash = spec.digest();
    for (node, stripes) in columns.into_iter().enumerate() {
        write_shard(&a.outdir, field, &Shard { mode, spec_hash: hash, node, stripes })?;
    }
    let secret_path = a.outdir.join(SECRET_FILE);
    if a.discard_secret {
        if secret_path.exists() {
            std::fs::remove_file(&secret_path).map_err(|e| CliError::io(&secret_path, e))?;
        }
    } else {
        let secret = SecretPadding { spec_hash: spec.hash.clone(), stripes: paddings };
        let text = serde_json::to_string_pretty(&secret).expect("padding serializes");
        std::fs::write(&secret_path, text).map_err(|e| CliError::io(&secret_path, e))?;
    }
    Ok(pretty(&json!({
        "shards": sys.len(),
        "stripes": messages.len(),
        "mode": if a.chunked { "chunked" } else { "raw" },
        "bytes": data.len(),
        "unit_bits": field.symbol_bits(),
        "secret": if a.discard_secret { Value::Null } else { json!(secret_path.display().to_string()) },
    })))
}

fn load_present(spec: &CodeSpecFile, sys: &SecureRfcSystem, dir: &Path) -> Result<Vec<Option<Shard>>, CliError> {
    let shards = read_shards(dir, sys.field(), sys.len(), &spec.digest())?;
    if shards.iter().all(Option::is_none) {
        return Err(domain(format!("{}: no shards found", dir.display())));
    }
    Ok(shards)
}

fn stripe_count(shards: &[Option<Shard>]) -> usize {
    shards.iter().flatten().next().map_or(0, |s| s.stripes.len())
}

pub fn decode(a: &DecodeArgs) -> Result<String, CliError> {
    let (spec, sys) = CodeSpecFile::load(&a.spec)?;
    let shards = load_present(&spec, &sys, &a.shards)?;
    let mode = shards.iter().flatten().next().expect("non-empty").mode;
    let used: Vec<usize> = shards.iter().flatten().map(|s| s.node).collect();
    let messages = (0..stripe_count(&shards))
        .map(|s| {
            let avail: Vec<(usize, Element)> =
                shards.iter().flatten().map(|sh| (sh.node, sh.stripes[s].clone())).collect();
            sys.decode(&avail).map_err(domain)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let bytes = match mode {
        PayloadMode::Chunked => chunk::messages_to_file(sys.field(), &messages)?,
        PayloadMode::Raw => {
            if messages.len() != 1 {
                return Err(CliError::Invalid("raw shards must hold exactly one stripe".into()));
            }
            chunk::message_to_raw(sys.field(), &messages[0])
        }
    };
    std::fs::write(&a.out, &bytes).map_err(|e| CliError::io(&a.out, e))?;
    Ok(pretty(&json!({ "bytes": bytes.len(), "shards_used": one_based(used) })))
}

pub fn repair(a: &RepairArgs) -> Result<String, CliError> {
    let (spec, sys) = CodeSpecFile::load(&a.spec)?;
    let n = sys.len();
    let node = to_zero_based(&[a.failed], n, "--failed")?[0];
    let shards = load_present(&spec, &sys, &a.shards)?;
    if shards[node].is_some() {
        return Err(domain(format!("node {} is present; only a missing shard can be repaired", a.failed)));
    }
    let selector: Box<dyn GroupSelector> = match a.via {
        Some(p) => {
            let parity = to_zero_based(&[p], n, "--via")?[0];
            if sys.inner().is_systematic(parity) {
                return Err(usage(format!("--via {p} is not a parity node")));
            }
            Box::new(PinnedGroups(BTreeMap::from([(node, parity)])))
        }
        None => Box::new(LowestParity),
    };
    let (mode, hash) = {
        let first = shards.iter().flatten().next().expect("non-empty");
        (first.mode, first.spec_hash)
    };
    let mut restored = Vec::new();
    let mut event = None;
    for s in 0..stripe_count(&shards) {
        let column = shards.iter().map(|sh| sh.as_ref().map(|sh| sh.stripes[s].clone())).collect();
        let mut state = DssState::from_nodes(column);
        let rep = state.repair(&sys, node, selector.as_ref()).map_err(domain)?;
        restored.push(rep.value);
        let this = (rep.group.parity, rep.downloads.iter().map(|d| d.0).collect::<Vec<_>>());
        match &event {
            None => event = Some(this),
            Some(prev) => debug_assert_eq!(prev, &this),
        }
    }
    let (parity, downloads) = event.unwrap_or_default();
    write_shard(&a.shards, sys.field(), &Shard { mode, spec_hash: hash, node, stripes: restored })?;
    Ok(pretty(&json!({
        "node": node + 1,
        "parity": parity + 1,
        "downloads": one_based(downloads),
    })))
}

fn provenance_json(p: Provenance) -> Value {
    match p {
        Provenance::Stored => json!("stored"),
        Provenance::Downloaded { for_node } => json!({ "downloaded_for": for_node + 1 }),
        Provenance::Repaired => json!("repaired"),
    }
}

fn policy_json(p: &RepairPolicy) -> Value {
    match p {
        RepairPolicy::Default => json!("default"),
        RepairPolicy::WorstCase => json!("worst"),
        RepairPolicy::Pinned(m) => {
            json!({ "pinned": m.iter().map(|(k, v)| (format!("{}", k + 1), json!(v + 1))).collect::<serde_json::Map<_, _>>() })
        }
    }
}

fn audit_error(e: AuditError) -> CliError {
    match e {
        AuditError::NotDisjoint(i) => usage(format!("S1 and S2 must be disjoint, but node {} is in both", i + 1)),
        AuditError::NoSuchNode(i) => usage(format!("node {} does not exist", i + 1)),
        AuditError::Unrepairable(i) => domain(format!("node {} cannot be repaired under the chosen policy", i + 1)),
        AuditError::NodeErased(i) => domain(format!("node {} is missing and cannot be observed", i + 1)),
        other => domain(other),
    }
}

pub fn audit_cmd(a: &AuditArgs) -> Result<String, CliError> {
    let (spec, sys) = CodeSpecFile::load(&a.spec)?;
    let n = sys.len();
    let s1: BTreeSet<usize> = to_zero_based(&a.s1, n, "--s1")?.into_iter().collect();
    let s2: BTreeSet<usize> = to_zero_based(&a.s2, n, "--s2")?.into_iter().collect();
    if let Some(&i) = s1.intersection(&s2).next() {
        return Err(usage(format!("S1 and S2 must be disjoint, but node {} is in both", i + 1)));
    }
    let policy = if a.pin.is_empty() {
        match a.policy {
            PolicyArg::Default => RepairPolicy::Default,
            PolicyArg::Worst => RepairPolicy::WorstCase,
        }
    } else {
        if a.policy == PolicyArg::Worst {
            return Err(usage("--pin cannot be combined with --policy worst"));
        }
        let mut pins = BTreeMap::new();
        for &(node, parity) in &a.pin {
            let node = to_zero_based(&[node], n, "--pin")?[0];
            let parity = to_zero_based(&[parity], n, "--pin")?[0];
            if !s2.contains(&node) {
                return Err(usage(format!("--pin names node {} which is not in S2", node + 1)));
            }
            pins.insert(node, parity);
        }
        RepairPolicy::Pinned(pins)
    };
    let attack = AttackSpec { s1, s2, policy };
    let state = match &a.shards {
        Some(dir) => {
            let shards = load_present(&spec, &sys, dir)?;
            if stripe_count(&shards) == 0 {
                return Err(domain("shards hold no stripes"));
            }
            DssState::from_nodes(shards.into_iter().map(|s| s.map(|s| s.stripes[0].clone())).collect())
        }
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(a.seed.seed);
            let msg: Vec<Element> = (0..sys.message_len()).map(|_| sys.field().random(&mut rng)).collect();
            DssState::store(sys.encode(&msg, &mut rng).map_err(domain)?.codeword)
        }
    };
    let record = simulate_attack(&sys, &state, &attack).map_err(audit_error)?;
    let report = audit(&sys, &record);
    let mut out = serde_json::to_value(&report).expect("report serializes");
    let obj = out.as_object_mut().expect("object");
    obj.insert(
        "attack".into(),
        json!({
            "s1": one_based(attack.s1.iter().copied()),
            "s2": one_based(attack.s2.iter().copied()),
            "policy": policy_json(&attack.policy),
        }),
    );
    obj.insert(
        "observed".into(),
        record.entries.iter().map(|e| json!({ "node": e.node + 1, "provenance": provenance_json(e.provenance) })).collect(),
    );
    if a.oracle {
        let orc = mi_oracle(&sys, &attack, a.budget).map_err(|e| match e {
            srfc_core::OracleError::Audit(e) => audit_error(e),
            other => domain(other),
        })?;
        obj.insert(
            "oracle".into(),
            json!({
                "leakage_bits": orc.bits,
                "joint_states": orc.joint_states.to_string(),
                "agrees": (orc.bits - report.leakage_bits).abs() <= 1e-9,
            }),
        );
    }
    Ok(pretty(&out))
}

pub fn audit_worst(a: &AuditWorstArgs) -> Result<String, CliError> {
    let (_, sys) = CodeSpecFile::load(&a.spec)?;
    let l1 = a.l1.unwrap_or(sys.l1());
    let l2 = a.l2.unwrap_or(sys.l2());
    let w = worst_case_audit(&sys, l1, l2, a.budget, a.seed.seed);
    let mut out = serde_json::to_value(&w.report).expect("report serializes");
    let obj = out.as_object_mut().expect("object");
    obj.insert("l1".into(), json!(l1));
    obj.insert("l2".into(), json!(l2));
    obj.insert("configurations".into(), json!(w.configurations));
    obj.insert("exhaustive".into(), json!(w.exhaustive));
    obj.insert("max_nu".into(), json!(w.max_nu));
    obj.insert(
        "worst_attack".into(),
        json!({
            "s1": one_based(w.attack.s1.iter().copied()),
            "s2": one_based(w.attack.s2.iter().copied()),
            "policy": policy_json(&w.attack.policy),
        }),
    );
    Ok(pretty(&out))
}

pub fn rates_cmd(a: &RatesArgs) -> Result<String, CliError> {
    let models =
        a.models.iter().map(|m| m.parse::<RateModel>().map_err(usage)).collect::<Result<Vec<_>, _>>()?;
    let inner = a.inner_rate.iter().map(|r| rates::parse_rational(r).map_err(usage)).collect::<Result<Vec<_>, _>>()?;
    let ks = parse_range(&a.ktilde).map_err(usage)?;
    let params = SweepParams { l1: a.l1, l2: a.l2, xi: a.xi, r: a.r, delta: a.delta };
    let points = rates::rate_sweep(&models, &inner, &params, ks).map_err(domain)?;
    let mut csv = String::from("k_tilde,model,rate\n");
    for pt in points {
        let label = format!("{}@{}", pt.model.name(), rates::to_decimal(&pt.inner_rate, 12));
        csv.push_str(&format!("{},{label},{}\n", pt.k_tilde, rates::to_decimal(&pt.rate, 18)));
    }
    match &a.out {
        Some(path) => {
            std::fs::write(path, &csv).map_err(|e| CliError::io(path, e))?;
            Ok(String::new())
        }
        None => Ok(csv.trim_end().to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_locality_is_ceil_log2() {
        assert_eq!(default_locality(1), 1);
        assert_eq!(default_locality(2), 1);
        assert_eq!(default_locality(3), 2);
        assert_eq!(default_locality(8), 3);
        assert_eq!(default_locality(9), 4);
        assert_eq!(default_locality(10), 4);
    }

    #[test]
    fn node_numbers_are_one_based() {
        assert_eq!(to_zero_based(&[1, 20], 20, "x").unwrap(), vec![0, 19]);
        assert!(to_zero_based(&[0], 20, "x").is_err());
        assert!(to_zero_based(&[21], 20, "x").is_err());
    }
}
