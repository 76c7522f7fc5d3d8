use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn srfc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_srfc")).args(args).env_remove("SRFC_SEED").output().expect("binary runs")
}

fn ok_json(args: &[&str]) -> Value {
    let out = srfc(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

struct Fixture {
    dir: TempDir,
}

impl Fixture {
    fn new() -> Self {
        Fixture { dir: tempfile::tempdir().unwrap() }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    /// Reference 20-node system over GF(11^10) provisioned at (1, 1).
    fn reference_spec(&self) -> PathBuf {
        let spec = self.path("ref.json");
        ok_json(&["gen", "--q", "11", "--p", "10", "--topology", "reference-20-10", "--l1", "1", "--l2", "1", "--out", p(&spec)]);
        spec
    }
}

#[test]
fn gen_reports_padding_and_message_length() {
    let f = Fixture::new();
    let spec = f.path("s.json");
    let v = ok_json(&[
        "gen", "--q", "11", "--p", "10", "--n", "20", "--k-tilde", "10", "--xi", "3", "--l1", "1", "--l2", "1", "--seed", "5",
        "--out", p(&spec),
    ]);
    assert_eq!((v["u"].as_u64(), v["k"].as_u64()), (Some(4), Some(6)));
    let text: Value = serde_json::from_str(&std::fs::read_to_string(&spec).unwrap()).unwrap();
    assert_eq!(text["hash"], v["hash"]);
    assert_eq!(text["inner"]["seed"], 5);
}

#[test]
fn gen_defaults_locality_to_ceil_log2() {
    let f = Fixture::new();
    let v = ok_json(&["gen", "--q", "11", "--p", "10", "--n", "20", "--k-tilde", "10", "--out", p(&f.path("s.json"))]);
    assert_eq!(v["xi"], 4);
}

#[test]
fn gen_names_the_violated_inequality() {
    let f = Fixture::new();
    let out = srfc(&["gen", "--q", "11", "--p", "5", "--n", "20", "--k-tilde", "10", "--out", p(&f.path("s.json"))]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("p >= k_tilde"), "{}", stderr(&out));
    let out = srfc(&["gen", "--q", "4", "--p", "10", "--n", "20", "--k-tilde", "10", "--out", p(&f.path("s.json"))]);
    assert_eq!(out.status.code(), Some(2));
    let out = srfc(&["gen", "--q", "11", "--p", "10", "--n", "20", "--k-tilde", "10", "--l1", "2", "--l2", "3", "--xi", "3", "--out", p(&f.path("s.json"))]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("k_tilde > l1 + xi*l2"), "{}", stderr(&out));
}

#[test]
fn seed_falls_back_to_environment() {
    let f = Fixture::new();
    let gen = |name: &str, env: Option<&str>, flag: Option<&str>| {
        let spec = f.path(name);
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_srfc"));
        cmd.args(["gen", "--q", "11", "--p", "10", "--n", "20", "--k-tilde", "10", "--out", p(&spec)]);
        cmd.env_remove("SRFC_SEED");
        if let Some(e) = env {
            cmd.env("SRFC_SEED", e);
        }
        if let Some(s) = flag {
            cmd.args(["--seed", s]);
        }
        assert!(cmd.output().unwrap().status.success());
        std::fs::read_to_string(spec).unwrap()
    };
    let via_env = gen("a.json", Some("77"), None);
    let via_flag = gen("b.json", None, Some("77"));
    let flag_wins = gen("c.json", Some("1"), Some("77"));
    let default = gen("d.json", None, None);
    assert_eq!(via_env, via_flag);
    assert_eq!(via_env, flag_wins);
    assert_ne!(via_env, default);
    assert_eq!(default, gen("e.json", Some("0"), None));
}

#[test]
fn chunked_round_trip_and_determinism() {
    let f = Fixture::new();
    let spec = f.reference_spec();
    let input = f.path("in.bin");
    let data: Vec<u8> = (0..3001u32).map(|i| (i * 31 % 251) as u8).collect();
    std::fs::write(&input, &data).unwrap();
    for dir in ["a", "b"] {
        let v = ok_json(&["encode", "--spec", p(&spec), "--in", p(&input), "--outdir", p(&f.path(dir)), "--seed", "9", "--chunked"]);
        assert_eq!(v["shards"], 20);
        assert!((v["unit_bits"].as_f64().unwrap() - 10.0 * 11f64.log2()).abs() < 1e-12);
    }
    for node in 1..=20 {
        let name = format!("node_{node:03}.shard");
        assert_eq!(std::fs::read(f.path("a").join(&name)).unwrap(), std::fs::read(f.path("b").join(&name)).unwrap());
    }
    assert!(f.path("a").join("secret_padding.json").exists());
    let out = f.path("out.bin");
    ok_json(&["decode", "--spec", p(&spec), "--shards", p(&f.path("a")), "--out", p(&out)]);
    assert_eq!(std::fs::read(&out).unwrap(), data);
}

#[test]
fn raw_mode_round_trip_and_size_check() {
    let f = Fixture::new();
    let spec = f.reference_spec();
    // k = 6 symbols of 10 one-byte digits each
    let data: Vec<u8> = (0..60u8).map(|i| i % 11).collect();
    let input = f.path("msg.raw");
    std::fs::write(&input, &data).unwrap();
    ok_json(&["encode", "--spec", p(&spec), "--in", p(&input), "--outdir", p(&f.path("sh")), "--discard-secret"]);
    assert!(!f.path("sh").join("secret_padding.json").exists());
    let shard = std::fs::read(f.path("sh").join("node_001.shard")).unwrap();
    assert_eq!(shard.len(), 46 + 10);
    assert_eq!(&shard[..4], b"SRFC");
    let out = f.path("out.raw");
    ok_json(&["decode", "--spec", p(&spec), "--shards", p(&f.path("sh")), "--out", p(&out)]);
    assert_eq!(std::fs::read(&out).unwrap(), data);

    std::fs::write(&input, &data[..59]).unwrap();
    let bad = srfc(&["encode", "--spec", p(&spec), "--in", p(&input), "--outdir", p(&f.path("x"))]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stderr(&bad).contains("--chunked"));
}

#[test]
fn empty_chunked_input_is_rejected() {
    let f = Fixture::new();
    let spec = f.reference_spec();
    let input = f.path("empty");
    std::fs::write(&input, b"").unwrap();
    let out = srfc(&["encode", "--spec", p(&spec), "--in", p(&input), "--outdir", p(&f.path("sh")), "--chunked"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("empty"));
}

#[test]
fn decode_rank_deficit_exits_one() {
    let f = Fixture::new();
    let spec = f.reference_spec();
    let input = f.path("in.bin");
    std::fs::write(&input, b"hello").unwrap();
    let sh = f.path("sh");
    ok_json(&["encode", "--spec", p(&spec), "--in", p(&input), "--outdir", p(&sh), "--chunked"]);
    for node in 1..=11 {
        std::fs::remove_file(sh.join(format!("node_{node:03}.shard"))).unwrap();
    }
    let out = srfc(&["decode", "--spec", p(&spec), "--shards", p(&sh), "--out", p(&f.path("o"))]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("rank"), "{}", stderr(&out));
}

#[test]
fn repair_small_fixture_prints_downloads() {
    let f = Fixture::new();
    let spec = f.path("small.json");
    ok_json(&["gen", "--q", "5", "--p", "4", "--topology", "small-6-4", "--out", p(&spec)]);
    let input = f.path("in.bin");
    std::fs::write(&input, b"abc").unwrap();
    let sh = f.path("sh");
    ok_json(&["encode", "--spec", p(&spec), "--in", p(&input), "--outdir", p(&sh), "--chunked"]);
    let path = sh.join("node_002.shard");
    let original = std::fs::read(&path).unwrap();

    let present = srfc(&["repair", "--spec", p(&spec), "--shards", p(&sh), "--failed", "2"]);
    assert_eq!(present.status.code(), Some(1));
    assert!(stderr(&present).contains("present"));

    std::fs::remove_file(&path).unwrap();
    let v = ok_json(&["repair", "--spec", p(&spec), "--shards", p(&sh), "--failed", "2"]);
    assert_eq!(v["node"], 2);
    assert_eq!(v["parity"], 5);
    assert_eq!(v["downloads"], serde_json::json!([4, 5]));
    assert_eq!(std::fs::read(&path).unwrap(), original);
}

#[test]
fn repair_via_pinned_parity() {
    let f = Fixture::new();
    let spec = f.reference_spec();
    let input = f.path("in.bin");
    std::fs::write(&input, b"pinned repair").unwrap();
    let sh = f.path("sh");
    ok_json(&["encode", "--spec", p(&spec), "--in", p(&input), "--outdir", p(&sh), "--chunked"]);
    std::fs::remove_file(sh.join("node_005.shard")).unwrap();
    let v = ok_json(&["repair", "--spec", p(&spec), "--shards", p(&sh), "--failed", "5", "--via", "18"]);
    assert_eq!(v["parity"], 18);
    assert_eq!(v["downloads"], serde_json::json!([6, 8, 18]));
    let bad = srfc(&["repair", "--spec", p(&spec), "--shards", p(&sh), "--failed", "1", "--via", "3"]);
    assert_ne!(bad.status.code(), Some(0));
}

#[test]
fn audit_worked_example() {
    let f = Fixture::new();
    let spec = f.reference_spec();
    for extra in [&[][..], &["--pin", "5:18"][..]] {
        let mut args = vec!["audit", "--spec", p(&spec), "--s1", "6", "--s2", "5"];
        args.extend_from_slice(extra);
        let v = ok_json(&args);
        assert_eq!(v["secure"], true);
        assert_eq!(v["nu"], 3);
        assert_eq!((v["H_e"].as_u64(), v["H_r"].as_u64(), v["H_r_given_em"].as_u64()), (Some(3), Some(4), Some(1)));
        assert_eq!(v["attack"]["s1"], serde_json::json!([6]));
    }
}

#[test]
fn audit_overlap_is_a_usage_error() {
    let f = Fixture::new();
    let spec = f.reference_spec();
    let out = srfc(&["audit", "--spec", p(&spec), "--s1", "6,7", "--s2", "7"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("disjoint"));
}

#[test]
fn audit_oracle_agrees_on_tiny_system() {
    let f = Fixture::new();
    let spec = f.path("tiny.json");
    ok_json(&[
        "gen", "--q", "2", "--p", "3", "--n", "5", "--k-tilde", "3", "--xi", "1", "--l1", "1", "--seed", "3", "--relaxed",
        "--out", p(&spec),
    ]);
    for (s1, leaks) in [("1", false), ("1,2", true)] {
        let v = ok_json(&["audit", "--spec", p(&spec), "--s1", s1, "--oracle"]);
        assert_eq!(v["oracle"]["agrees"], true, "{v}");
        assert!((v["oracle"]["leakage_bits"].as_f64().unwrap() - v["leakage_bits"].as_f64().unwrap()).abs() < 1e-9);
        assert_eq!(v["secure"], !leaks);
    }
}

#[test]
fn audit_worst_at_provisioned_budget_is_secure() {
    let f = Fixture::new();
    let spec = f.reference_spec();
    let v = ok_json(&["--jobs", "2", "audit-worst", "--spec", p(&spec)]);
    assert_eq!(v["secure"], true);
    assert_eq!(v["exhaustive"], true);
    assert!(v["max_nu"].as_u64().unwrap() <= 4);
    let over = ok_json(&["audit-worst", "--spec", p(&spec), "--l1", "5", "--l2", "0"]);
    assert_eq!(over["secure"], false);
}

#[test]
fn rates_single_point_and_identical_columns() {
    let out = srfc(&["rates", "--models", "msr", "--inner-rate", "0.5", "--ktilde", "10"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().collect::<Vec<_>>(), ["k_tilde,model,rate", "10,secure-msr@0.5,0.243"]);

    let out = srfc(&["rates", "--models", "rfc,lrc", "--inner-rate", "4/5", "--ktilde", "10:100:10"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let rates: Vec<&str> = text.lines().skip(1).map(|l| l.rsplit(',').next().unwrap()).collect();
    assert_eq!(rates.len(), 20);
    assert_eq!(rates[..10], rates[10..]);
}

#[test]
fn rates_bad_model_is_a_usage_error() {
    let out = srfc(&["rates", "--models", "raid"]);
    assert_eq!(out.status.code(), Some(2));
    let out = srfc(&["rates", "--delta", "3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn unknown_flag_exits_two() {
    assert_eq!(srfc(&["gen", "--bogus"]).status.code(), Some(2));
    assert_eq!(srfc(&["--help"]).status.code(), Some(0));
}
