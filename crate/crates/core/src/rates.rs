//! Achievable secure code rates k/n for secure RFCs, secure LRCs and secure
//! MSR codes against an (l1, l2) eavesdropper.
//!
//! All arithmetic is on exact rationals. The node count n may be
//! fractional, as when sweeping k_tilde at a fixed inner rate k_tilde/n.
//! The MSR expression is `(k_tilde - l1 - l2) (1 - 1/(n - k_tilde))^l2 / n`.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RateError {
    #[error("no room for a message: k_tilde = {k_tilde} must exceed the padding {padding}")]
    NoMessage { k_tilde: u64, padding: u64 },
    #[error("node count n = {0} is invalid for this model")]
    InvalidLength(String),
    #[error("inner rate {0} must lie in (0, 1]")]
    InvalidInnerRate(String),
    #[error("only delta = 2 is supported for secure LRCs, got {0}")]
    UnsupportedDelta(u32),
    #[error("cannot parse {0:?} as a rational number")]
    Parse(String),
    #[error("unknown model {0:?}; expected secure-rfc, secure-lrc or secure-msr")]
    UnknownModel(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RateModel {
    SecureMsr,
    SecureRfc,
    SecureLrc,
}

impl RateModel {
    pub const ALL: [RateModel; 3] = [RateModel::SecureMsr, RateModel::SecureRfc, RateModel::SecureLrc];

    pub fn name(self) -> &'static str {
        match self {
            RateModel::SecureMsr => "secure-msr",
            RateModel::SecureRfc => "secure-rfc",
            RateModel::SecureLrc => "secure-lrc",
        }
    }
}

impl fmt::Display for RateModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RateModel {
    type Err = RateError;

    fn from_str(s: &str) -> Result<Self, RateError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "msr" | "secure-msr" => Ok(RateModel::SecureMsr),
            "rfc" | "secure-rfc" => Ok(RateModel::SecureRfc),
            "lrc" | "secure-lrc" => Ok(RateModel::SecureLrc),
            _ => Err(RateError::UnknownModel(s.to_string())),
        }
    }
}

fn int(v: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn numerator(k_tilde: u64, padding: u64) -> Result<BigRational, RateError> {
    if k_tilde <= padding {
        return Err(RateError::NoMessage { k_tilde, padding });
    }
    Ok(int(k_tilde - padding))
}

fn positive(n: &BigRational) -> Result<(), RateError> {
    if !n.is_positive() {
        return Err(RateError::InvalidLength(n.to_string()));
    }
    Ok(())
}

/// `(k_tilde - l1 - xi l2) / n`.
pub fn rate_secure_rfc(k_tilde: u64, n: &BigRational, l1: u64, l2: u64, xi: u64) -> Result<BigRational, RateError> {
    positive(n)?;
    Ok(numerator(k_tilde, l1 + xi * l2)? / n)
}

/// `(k_tilde - l1 - r l2) / n` for (r, delta) LRCs with delta = 2.
pub fn rate_secure_lrc(
    k_tilde: u64,
    n: &BigRational,
    l1: u64,
    l2: u64,
    r: u64,
    delta: u32,
) -> Result<BigRational, RateError> {
    if delta != 2 {
        return Err(RateError::UnsupportedDelta(delta));
    }
    positive(n)?;
    Ok(numerator(k_tilde, l1 + r * l2)? / n)
}

/// `(k_tilde - l1 - l2) (1 - 1/(n - k_tilde))^l2 / n`; requires n > k_tilde + 1.
pub fn rate_secure_msr(k_tilde: u64, n: &BigRational, l1: u64, l2: u64) -> Result<BigRational, RateError> {
    let gap = n - int(k_tilde);
    if gap <= BigRational::one() {
        return Err(RateError::InvalidLength(n.to_string()));
    }
    let factor = BigRational::one() - gap.recip();
    let mut rate = numerator(k_tilde, l1 + l2)? / n;
    for _ in 0..l2 {
        rate *= &factor;
    }
    Ok(rate)
}

/// Symbols per node of the MSR code, `(n - k_tilde)^(k_tilde - 1)`, for
/// integer n. Reported only.
pub fn msr_symbols_per_node(n: u64, k_tilde: u64) -> Option<BigUint> {
    let gap = n.checked_sub(k_tilde).filter(|&g| g > 0)?;
    Some(num_traits::pow(BigUint::from(gap), k_tilde.saturating_sub(1) as usize))
}

/// n = k_tilde / inner_rate.
pub fn length_for_rate(k_tilde: u64, inner_rate: &BigRational) -> Result<BigRational, RateError> {
    if !inner_rate.is_positive() || *inner_rate > BigRational::one() {
        return Err(RateError::InvalidInnerRate(inner_rate.to_string()));
    }
    Ok(int(k_tilde) / inner_rate)
}

/// Parameters shared by every point of a sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepParams {
    pub l1: u64,
    pub l2: u64,
    /// RFC locality.
    pub xi: u64,
    /// LRC locality.
    pub r: u64,
    pub delta: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatePoint {
    pub k_tilde: u64,
    pub model: RateModel,
    pub inner_rate: BigRational,
    pub rate: BigRational,
}

pub fn rate_at(model: RateModel, k_tilde: u64, n: &BigRational, params: &SweepParams) -> Result<BigRational, RateError> {
    match model {
        RateModel::SecureRfc => rate_secure_rfc(k_tilde, n, params.l1, params.l2, params.xi),
        RateModel::SecureLrc => rate_secure_lrc(k_tilde, n, params.l1, params.l2, params.r, params.delta),
        RateModel::SecureMsr => rate_secure_msr(k_tilde, n, params.l1, params.l2),
    }
}

/// One row per (inner rate, model, k_tilde), in that nesting order.
pub fn rate_sweep(
    models: &[RateModel],
    inner_rates: &[BigRational],
    params: &SweepParams,
    k_tildes: impl IntoIterator<Item = u64> + Clone,
) -> Result<Vec<RatePoint>, RateError> {
    let mut out = Vec::new();
    for inner_rate in inner_rates {
        for &model in models {
            for k_tilde in k_tildes.clone() {
                let n = length_for_rate(k_tilde, inner_rate)?;
                let rate = rate_at(model, k_tilde, &n, params)?;
                out.push(RatePoint { k_tilde, model, inner_rate: inner_rate.clone(), rate });
            }
        }
    }
    Ok(out)
}

/// Accepts `"0.8"`, `"4/5"` or `"3"`.
pub fn parse_rational(s: &str) -> Result<BigRational, RateError> {
    let err = || RateError::Parse(s.to_string());
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let a: BigInt = a.trim().parse().map_err(|_| err())?;
        let b: BigInt = b.trim().parse().map_err(|_| err())?;
        if b.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(a, b));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() || !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    let digits: BigInt = format!("{whole}{frac}").parse().map_err(|_| err())?;
    let value = BigRational::new(digits, num_traits::pow(BigInt::from(10), frac.len()));
    Ok(if neg { -value } else { value })
}

/// Decimal rendering rounded half-up to `places` fractional digits, with
/// trailing zeros trimmed.
pub fn to_decimal(value: &BigRational, places: usize) -> String {
    let neg = value.is_negative();
    let abs = value.abs();
    let scale = num_traits::pow(BigInt::from(10), places);
    let scaled = abs * BigRational::from_integer(scale.clone());
    let rounded = (scaled + BigRational::new(BigInt::one(), BigInt::from(2))).floor().to_integer();
    let (whole, frac) = rounded.div_rem(&scale);
    let mut frac = format!("{:0>width$}", frac.to_string(), width = places);
    while frac.ends_with('0') {
        frac.pop();
    }
    let sign = if neg && !(whole.is_zero() && frac.is_empty()) { "-" } else { "" };
    if frac.is_empty() {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{frac}")
    }
}

pub fn to_f64(value: &BigRational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}
