//! Deterministic fixtures shared by the benchmarks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use srfc_core::{topologies, Element, Field, ParamChecks, SecureRfcSystem};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_elements(field: &Field, count: usize, seed: u64) -> Vec<Element> {
    let mut rng = rng(seed);
    (0..count).map(|_| field.random(&mut rng)).collect()
}

/// The 20-node reference system over GF(11^10), provisioned at (1, 1).
pub fn reference_system() -> SecureRfcSystem {
    let field = Field::new(11, 10).expect("GF(11^10)");
    let inner = topologies::reference_20_10(&field, ParamChecks::Strict).expect("reference topology");
    SecureRfcSystem::from_inner(inner, 1, 1, ParamChecks::Strict).expect("reference system")
}

/// A random n = 24 system over GF(17^14) provisioned at (l1, l2) with xi = 3.
pub fn random_system(l1: usize, l2: usize, seed: u64) -> SecureRfcSystem {
    let field = Field::new(17, 14).expect("GF(17^14)");
    SecureRfcSystem::build(&field, 24, 14, 3, l1, l2, seed, ParamChecks::Strict).expect("random system")
}
