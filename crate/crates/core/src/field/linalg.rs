use super::{Element, Field, FieldError};

/// Outcome of solving `A x = b` over GF(q^p).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSolution {
    /// Rank of the coefficient matrix.
    pub rank: usize,
    /// Number of unknowns (columns of A).
    pub unknowns: usize,
    /// A particular solution (free variables set to zero), or `None` when
    /// the system is inconsistent.
    pub solution: Option<Vec<Element>>,
}

impl LinearSolution {
    pub fn is_consistent(&self) -> bool {
        self.solution.is_some()
    }

    /// Dimension d of the solution space; there are (q^p)^d solutions.
    pub fn nullity(&self) -> usize {
        self.unknowns - self.rank
    }
}

/// Gauss-Jordan elimination in place; returns pivot columns in row order.
fn eliminate(field: &Field, rows: &mut [Vec<Element>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, found);
        let inv = field.inv(&rows[r][c]).expect("pivot is nonzero");
        for e in rows[r].iter_mut() {
            *e = field.mul(e, &inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (e, pe) in row.iter_mut().zip(&pivot_row) {
                if !pe.is_zero() {
                    *e = field.sub(e, &field.mul(&factor, pe));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Solves `A x = b`. `a` is given row by row; every row must have the same
/// length and `b.len()` must equal the number of rows.
pub fn solve_linear(field: &Field, a: &[Vec<Element>], b: &[Element]) -> Result<LinearSolution, FieldError> {
    let unknowns = a.first().map_or(0, Vec::len);
    solve_linear_in(field, unknowns, a, b)
}

/// Like [`solve_linear`] with the number of unknowns stated explicitly, so
/// that a system with no equations still reports its full solution space.
pub fn solve_linear_in(
    field: &Field,
    unknowns: usize,
    a: &[Vec<Element>],
    b: &[Element],
) -> Result<LinearSolution, FieldError> {
    if a.len() != b.len() {
        return Err(FieldError::DimensionMismatch);
    }
    if a.iter().any(|row| row.len() != unknowns) {
        return Err(FieldError::DimensionMismatch);
    }
    let mut aug: Vec<Vec<Element>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = eliminate(field, &mut aug, unknowns);
    let rank = pivots.len();
    let consistent = aug[rank..].iter().all(|row| row[unknowns].is_zero());
    let solution = consistent.then(|| {
        let mut x = vec![field.zero(); unknowns];
        for (row, &c) in aug.iter().zip(&pivots) {
            x[c] = row[unknowns].clone();
        }
        x
    });
    Ok(LinearSolution { rank, unknowns, solution })
}

/// Rank over GF(q^p) of the matrix given row by row.
pub fn matrix_rank(field: &Field, rows: &[Vec<Element>]) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rows = rows.to_vec();
    eliminate(field, &mut rows, cols).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn mat_vec(field: &Field, a: &[Vec<Element>], x: &[Element]) -> Vec<Element> {
        a.iter()
            .map(|row| row.iter().zip(x).fold(field.zero(), |acc, (aij, xj)| field.add(&acc, &field.mul(aij, xj))))
            .collect()
    }

    #[test]
    fn identity_system() {
        let f = Field::new(5, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let id: Vec<Vec<Element>> = (0..3).map(|i| (0..3).map(|j| if i == j { f.one() } else { f.zero() }).collect()).collect();
        let b: Vec<Element> = (0..3).map(|_| f.random(&mut rng)).collect();
        let sol = solve_linear(&f, &id, &b).unwrap();
        assert_eq!(sol.solution.as_deref(), Some(b.as_slice()));
        assert_eq!(sol.nullity(), 0);
    }

    #[test]
    fn zero_system() {
        let f = Field::new(3, 2).unwrap();
        let a = vec![vec![f.zero(); 4]; 2];
        let sol = solve_linear(&f, &a, &[f.zero(), f.zero()]).unwrap();
        assert!(sol.is_consistent());
        assert_eq!(sol.nullity(), 4);
        let bad = solve_linear(&f, &a, &[f.one(), f.zero()]).unwrap();
        assert!(!bad.is_consistent());
    }

    #[test]
    fn no_equations_leaves_every_unknown_free() {
        let f = Field::new(2, 3).unwrap();
        let sol = solve_linear_in(&f, 3, &[], &[]).unwrap();
        assert_eq!(sol.nullity(), 3);
        assert_eq!(sol.solution.unwrap(), vec![f.zero(); 3]);
    }

    #[test]
    fn dimension_mismatch() {
        let f = Field::new(3, 2).unwrap();
        let a = vec![vec![f.one(); 2]; 2];
        assert_eq!(solve_linear(&f, &a, &[f.one()]).unwrap_err(), FieldError::DimensionMismatch);
    }

    #[test]
    fn random_invertible_round_trip_gf13_5() {
        let f = Field::new(13, 5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let mut solved = 0;
        while solved < 20 {
            let a: Vec<Vec<Element>> = (0..4).map(|_| (0..4).map(|_| f.random(&mut rng)).collect()).collect();
            if matrix_rank(&f, &a) < 4 {
                continue;
            }
            let x: Vec<Element> = (0..4).map(|_| f.random(&mut rng)).collect();
            let b = mat_vec(&f, &a, &x);
            let sol = solve_linear(&f, &a, &b).unwrap();
            assert_eq!(sol.solution.unwrap(), x);
            solved += 1;
        }
    }

    #[test]
    fn underdetermined_particular_solution_satisfies_system() {
        let f = Field::new(7, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let a: Vec<Vec<Element>> = (0..3).map(|_| (0..5).map(|_| f.random(&mut rng)).collect()).collect();
            let x: Vec<Element> = (0..5).map(|_| f.random(&mut rng)).collect();
            let b = mat_vec(&f, &a, &x);
            let sol = solve_linear(&f, &a, &b).unwrap();
            assert_eq!(sol.nullity(), 5 - sol.rank);
            assert_eq!(mat_vec(&f, &a, sol.solution.as_ref().unwrap()), b);
        }
    }
}
