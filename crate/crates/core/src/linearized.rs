//! Linearized polynomials `f(y) = a_0 y + a_1 y^q + ... + a_t y^(q^t)`.
//!
//! Evaluation is GF(q)-linear in `y`, which is what lets GF(q)-combinations
//! of stored evaluations be read as evaluations at combined points.

use thiserror::Error;

use crate::field::{solve_linear, Element, Field, FieldError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InterpolationError {
    #[error("need {expected} points and values, got {points} points and {values} values")]
    LengthMismatch { expected: usize, points: usize, values: usize },
    #[error("interpolation points span only {rank} of the {needed} required GF(q)-dimensions")]
    DependentPoints { rank: usize, needed: usize },
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearizedPolynomial {
    coeffs: Vec<Element>,
}

impl LinearizedPolynomial {
    pub fn new(coeffs: Vec<Element>) -> Self {
        LinearizedPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        LinearizedPolynomial { coeffs: Vec::new() }
    }

    /// `f(y) = y`.
    pub fn identity(field: &Field) -> Self {
        LinearizedPolynomial { coeffs: vec![field.one()] }
    }

    pub fn coeffs(&self) -> &[Element] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Element> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Element::is_zero)
    }

    /// The q-degree t, i.e. the index of the last nonzero coefficient.
    pub fn q_degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    /// Drops trailing zero coefficients so that the last one is nonzero.
    pub fn normalized(mut self) -> Self {
        let keep = self.q_degree().map_or(0, |t| t + 1);
        self.coeffs.truncate(keep);
        self
    }

    pub fn evaluate(&self, field: &Field, y: &Element) -> Element {
        let powers = field.frobenius_ladder(y, self.coeffs.len());
        self.coeffs
            .iter()
            .zip(&powers)
            .filter(|(a, _)| !a.is_zero())
            .fold(field.zero(), |acc, (a, yq)| field.add(&acc, &field.mul(a, yq)))
    }
}

/// `rows x |points|` matrix with entry `[j][i] = points[i]^(q^j)`.
pub fn moore_matrix(field: &Field, points: &[Element], rows: usize) -> Vec<Vec<Element>> {
    let ladders: Vec<Vec<Element>> = points.iter().map(|z| field.frobenius_ladder(z, rows)).collect();
    (0..rows).map(|j| ladders.iter().map(|l| l[j].clone()).collect()).collect()
}

/// Recovers the unique linearized polynomial with `num_coeffs` coefficients
/// through the given evaluations. The points must be GF(q)-independent.
pub fn interpolate(
    field: &Field,
    points: &[Element],
    values: &[Element],
    num_coeffs: usize,
) -> Result<LinearizedPolynomial, InterpolationError> {
    if points.len() != num_coeffs || values.len() != num_coeffs {
        return Err(InterpolationError::LengthMismatch {
            expected: num_coeffs,
            points: points.len(),
            values: values.len(),
        });
    }
    let rank = field.subfield_rank(points);
    if rank < num_coeffs {
        return Err(InterpolationError::DependentPoints { rank, needed: num_coeffs });
    }
    // Equation i: sum_j a_j points[i]^(q^j) = values[i], i.e. the transposed
    // Moore matrix.
    let system: Vec<Vec<Element>> = points.iter().map(|z| field.frobenius_ladder(z, num_coeffs)).collect();
    let sol = solve_linear(field, &system, values)?;
    match sol.solution {
        Some(coeffs) if sol.rank == num_coeffs => Ok(LinearizedPolynomial::new(coeffs)),
        _ => Err(InterpolationError::DependentPoints { rank: sol.rank, needed: num_coeffs }),
    }
}
