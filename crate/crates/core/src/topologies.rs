//! Fixed parity topologies used as fixtures by tests, benches and the CLI.
//! All coefficients are 1; indices are 0-based.

use crate::field::Field;
use crate::rfc::{ParamChecks, RfcCode, RfcError};

/// Message indices of each parity of the (6, 4) toy code.
pub const SMALL_6_4: [&[usize]; 2] = [&[1, 3], &[0, 2]];

/// Message indices of each parity of the (20, 10) reference code, xi = 3.
pub const REFERENCE_20_10: [&[usize]; 10] = [
    &[4, 5, 7],
    &[1, 3, 6],
    &[1, 2, 3],
    &[0, 2, 3],
    &[1, 4, 5],
    &[1, 5, 8],
    &[3, 5, 9],
    &[4, 5, 7],
    &[0, 1, 5],
    &[0, 1, 9],
];

fn unit_parities(sets: &[&[usize]]) -> Vec<Vec<(usize, u32)>> {
    sets.iter().map(|s| s.iter().map(|&i| (i, 1)).collect()).collect()
}

/// The (6, 4) code with locality 2 over `field`.
pub fn small_6_4(field: &Field, checks: ParamChecks) -> Result<RfcCode, RfcError> {
    RfcCode::from_parities(field, 6, 4, 2, unit_parities(&SMALL_6_4), checks)
}

/// The (20, 10) code with locality 3 over `field`.
pub fn reference_20_10(field: &Field, checks: ParamChecks) -> Result<RfcCode, RfcError> {
    RfcCode::from_parities(field, 20, 10, 3, unit_parities(&REFERENCE_20_10), checks)
}

/// Looks a topology up by name: `small-6-4` or `reference-20-10`.
pub fn by_name(name: &str, field: &Field, checks: ParamChecks) -> Option<Result<RfcCode, RfcError>> {
    match name {
        "small-6-4" => Some(small_6_4(field, checks)),
        "reference-20-10" => Some(reference_20_10(field, checks)),
        _ => None,
    }
}

pub const NAMES: [&str; 2] = ["small-6-4", "reference-20-10"];
