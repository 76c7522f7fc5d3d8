//! (N, K) Gabidulin codes: encode by evaluating the message polynomial at N
//! GF(q)-independent points, erasure-decode by interpolation.

use thiserror::Error;

use crate::field::{Element, Field, SubfieldBasis};
use crate::linearized::{interpolate, InterpolationError, LinearizedPolynomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GabidulinError {
    #[error("invalid code parameters: need 1 <= K <= N <= p, got N = {n}, K = {k}, p = {p}")]
    Parameters { n: usize, k: usize, p: usize },
    #[error("evaluation points span only {rank} of the N = {n} required GF(q)-dimensions")]
    DependentPoints { rank: usize, n: usize },
    #[error("message has {got} symbols, expected {expected}")]
    MessageLength { got: usize, expected: usize },
    #[error("position {0} is outside the code")]
    Position(usize),
    #[error("decoding failed: available evaluations reach GF(q)-rank {rank}, need {needed}")]
    InsufficientRank { rank: usize, needed: usize },
    #[error(transparent)]
    Interpolation(#[from] InterpolationError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GabidulinCode {
    field: Field,
    k: usize,
    points: Vec<Element>,
}

impl GabidulinCode {
    /// Code on the polynomial-basis points `1, x, ..., x^(N-1)`.
    pub fn new(field: &Field, n: usize, k: usize) -> Result<Self, GabidulinError> {
        if k == 0 || k > n || n > field.p() {
            return Err(GabidulinError::Parameters { n, k, p: field.p() });
        }
        let points = (0..n).map(|i| field.monomial(i)).collect();
        Ok(GabidulinCode { field: field.clone(), k, points })
    }

    pub fn with_points(field: &Field, k: usize, points: Vec<Element>) -> Result<Self, GabidulinError> {
        let n = points.len();
        if k == 0 || k > n || n > field.p() {
            return Err(GabidulinError::Parameters { n, k, p: field.p() });
        }
        let rank = field.subfield_rank(&points);
        if rank < n {
            return Err(GabidulinError::DependentPoints { rank, n });
        }
        Ok(GabidulinCode { field: field.clone(), k, points })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.k
    }

    pub fn points(&self) -> &[Element] {
        &self.points
    }

    /// Minimum rank distance N - K + 1.
    pub fn min_rank_distance(&self) -> usize {
        self.len() - self.k + 1
    }

    pub fn encode(&self, msg: &[Element]) -> Result<Vec<Element>, GabidulinError> {
        if msg.len() != self.k {
            return Err(GabidulinError::MessageLength { got: msg.len(), expected: self.k });
        }
        let f = LinearizedPolynomial::new(msg.to_vec());
        Ok(self.points.iter().map(|y| f.evaluate(&self.field, y)).collect())
    }

    /// Decodes from `(position, value)` pairs of this code.
    pub fn decode(&self, available: &[(usize, Element)]) -> Result<Vec<Element>, GabidulinError> {
        let evals = available
            .iter()
            .map(|(i, v)| self.points.get(*i).map(|z| (z.clone(), v.clone())).ok_or(GabidulinError::Position(*i)))
            .collect::<Result<Vec<_>, _>>()?;
        self.decode_evaluations(&evals)
    }

    /// Decodes from evaluations at arbitrary points, picking the first K
    /// GF(q)-independent points in the given order.
    pub fn decode_evaluations(&self, evals: &[(Element, Element)]) -> Result<Vec<Element>, GabidulinError> {
        decode_linearized(&self.field, evals, self.k)
    }
}

/// Greedy point selection followed by interpolation of a `k`-coefficient
/// linearized polynomial. Returns its coefficients.
pub(crate) fn decode_linearized(
    field: &Field,
    evals: &[(Element, Element)],
    k: usize,
) -> Result<Vec<Element>, GabidulinError> {
    let mut basis = SubfieldBasis::new(field);
    let mut points = Vec::with_capacity(k);
    let mut values = Vec::with_capacity(k);
    for (z, v) in evals {
        if points.len() == k {
            break;
        }
        if basis.insert(z) {
            points.push(z.clone());
            values.push(v.clone());
        }
    }
    if points.len() < k {
        return Err(GabidulinError::InsufficientRank { rank: points.len(), needed: k });
    }
    Ok(interpolate(field, &points, &values, k)?.into_coeffs())
}
