//! Dense symmetric eigenvalue kernel and the generalized solve used by the
//! finite-element path. Backed by nalgebra's tridiagonalization-based
//! symmetric eigensolver behind the module contract (ascending order,
//! deterministic for fixed input).

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Dense symmetric real matrix; the lower triangle is authoritative and the
/// upper triangle mirrors it by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    order: usize,
    /// Row-major lower triangle, row i holding i+1 entries.
    lower: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn zeros(order: usize) -> Self {
        SymmetricMatrix {
            order,
            lower: vec![0.0; order * (order + 1) / 2],
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    fn slot(&self, i: usize, j: usize) -> usize {
        let (r, c) = if i >= j { (i, j) } else { (j, i) };
        r * (r + 1) / 2 + c
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.lower[self.slot(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        let s = self.slot(i, j);
        self.lower[s] = value;
    }

    pub fn add(&mut self, i: usize, j: usize, value: f64) {
        let s = self.slot(i, j);
        self.lower[s] += value;
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.order, self.order, |i, j| self.get(i, j))
    }

    pub fn is_finite(&self) -> bool {
        self.lower.iter().all(|x| x.is_finite())
    }
}

/// All eigenvalues of a symmetric matrix in nondecreasing order.
pub fn symmetric_eigenvalues(m: &SymmetricMatrix) -> Result<Vec<f64>> {
    if !m.is_finite() {
        return Err(Error::Numerical("non-finite matrix entry".into()));
    }
    if m.order == 0 {
        return Err(Error::Numerical("empty matrix".into()));
    }
    Ok(sorted_eigenvalues(&m.to_dense()))
}

fn sorted_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    let mut evs: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    evs.sort_by(|a, b| a.total_cmp(b));
    evs
}

/// Eigenvalues of K u = lambda M u for symmetric K and positive-definite M,
/// by Cholesky reduction to the standard symmetric problem
/// C = L^-1 K L^-T with M = L L^T.
pub fn generalized_symmetric_eigenvalues(
    stiffness: &DMatrix<f64>,
    mass: &DMatrix<f64>,
) -> Result<Vec<f64>> {
    let chol = mass
        .clone()
        .cholesky()
        .ok_or_else(|| Error::Numerical("mass matrix is not positive definite".into()))?;
    let l = chol.l();
    let y = l
        .solve_lower_triangular(stiffness)
        .ok_or_else(|| Error::Numerical("singular triangular factor".into()))?;
    let c = l
        .solve_lower_triangular(&y.transpose())
        .ok_or_else(|| Error::Numerical("singular triangular factor".into()))?;
    // Symmetrize against round-off before the symmetric solver.
    let c = (&c + c.transpose()) * 0.5;
    Ok(sorted_eigenvalues(&c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn closed_form_2x2() {
        let mut m = SymmetricMatrix::zeros(2);
        m.set(0, 0, 1.0);
        m.set(1, 1, 1.0);
        m.set(1, 0, -1.0);
        let evs = symmetric_eigenvalues(&m).unwrap();
        assert_relative_eq!(evs[0], 0.0, epsilon = 1e-12);
        assert_relative_eq!(evs[1], 2.0, epsilon = 1e-12);
    }

    #[test]
    fn rejects_non_finite() {
        let mut m = SymmetricMatrix::zeros(2);
        m.set(0, 1, f64::NAN);
        assert!(symmetric_eigenvalues(&m).is_err());
    }

    #[test]
    fn generalized_matches_standard_for_identity_mass() {
        let k = DMatrix::from_row_slice(3, 3, &[2.0, -1.0, 0.0, -1.0, 2.0, -1.0, 0.0, -1.0, 2.0]);
        let m = DMatrix::identity(3, 3);
        let evs = generalized_symmetric_eigenvalues(&k, &m).unwrap();
        let expected = [2.0 - std::f64::consts::SQRT_2, 2.0, 2.0 + std::f64::consts::SQRT_2];
        for (a, b) in evs.iter().zip(expected) {
            assert_relative_eq!(*a, b, epsilon = 1e-10);
        }
    }
}
