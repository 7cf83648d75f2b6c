use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use super::matrix::CMatrix;
use crate::error::{Error, Result};

/// Hermiticity tolerance accepted by [`eig_hermitian`].
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Spectral decomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Eigenvalues in descending order.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors, `vectors[i]` belongs to `values[i]`.
    pub vectors: Vec<DVector<Complex64>>,
}

impl HermitianEigen {
    /// `Σ λ_i v_i v_i†`.
    pub fn reconstruct(&self) -> CMatrix {
        let n = self.values.len();
        let mut m = DMatrix::<Complex64>::zeros(n, n);
        for (lambda, v) in self.values.iter().zip(&self.vectors) {
            m += v * v.adjoint() * Complex64::from(*lambda);
        }
        CMatrix::new_unchecked(m)
    }
}

/// Eigen-decomposition of a Hermitian matrix.
///
/// Eigenvalues come out descending. Each eigenvector is rotated so that its
/// largest-magnitude component (the first one, on ties) is real and positive.
pub fn eig_hermitian(m: &CMatrix) -> Result<HermitianEigen> {
    let defect = m.hermiticity_defect();
    if defect > HERMITIAN_TOL {
        return Err(Error::NotHermitian(defect));
    }
    let a = m.as_matrix();
    let sym = (a + a.adjoint()) * Complex64::from(0.5);
    let eig = SymmetricEigen::new(sym);

    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));

    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = order
        .iter()
        .map(|&i| fix_phase(eig.eigenvectors.column(i).into_owned()))
        .collect();
    Ok(HermitianEigen { values, vectors })
}

/// Multiplies `v` by the unit phase that makes its dominant component real
/// positive.
pub fn fix_phase(v: DVector<Complex64>) -> DVector<Complex64> {
    let max = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if max == 0.0 {
        return v;
    }
    let pivot = v
        .iter()
        .find(|z| z.norm() >= max * (1.0 - 1e-12))
        .copied()
        .expect("non-empty vector");
    let phase = pivot.conj() / pivot.norm();
    v.map(|z| z * phase)
}
