//! Covariance-matrix entanglement criterion for symmetric two-qubit states,
//! with the partial-transpose test as an independent cross-check.

use std::f64::consts::FRAC_PI_2;

use nalgebra::{Matrix3, SymmetricEigen};

use crate::channel_state::{product_state, triplet_isometry, triplet_projection, ChannelConfig};
use crate::error::{Error, Result};
use crate::spin_algebra::{eig_hermitian, kron, pauli, Axis, CMatrix};

/// Default tolerance on eigenvalue negativity.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Width to which entangled-interval boundaries are bisected.
pub const BOUNDARY_TOL: f64 = 1e-10;
/// Smallest accepted θ-scan resolution.
pub const MIN_RESOLUTION: usize = 100;

/// Two-qubit state supported on the triplet subspace whose triplet block is
/// `rho1` (basis `|1,+1>, |1,0>, |1,-1>`).
pub fn symmetric_embedding(rho1: &CMatrix) -> Result<CMatrix> {
    if rho1.dim() != 3 {
        return Err(Error::Dimension(rho1.dim()));
    }
    let v = triplet_isometry();
    CMatrix::from_matrix(&v * rho1.as_matrix() * v.adjoint())
}

/// `C_ij = <σ_i ⊗ σ_j> - <σ_i ⊗ I><I ⊗ σ_j>` for `i, j ∈ {x, y, z}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceMatrix {
    entries: Matrix3<f64>,
}

impl CovarianceMatrix {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[(i, j)]
    }

    pub fn entries(&self) -> &Matrix3<f64> {
        &self.entries
    }

    pub fn diagonal(&self) -> [f64; 3] {
        [
            self.entries[(0, 0)],
            self.entries[(1, 1)],
            self.entries[(2, 2)],
        ]
    }

    /// Largest `|C_ij|` with `i != j`.
    pub fn max_off_diagonal(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    worst = worst.max(self.entries[(i, j)].abs());
                }
            }
        }
        worst
    }

    /// Largest `|C_ij - C_ji|`; zero for exchange-symmetric states.
    pub fn asymmetry(&self) -> f64 {
        (self.entries - self.entries.transpose()).abs().max()
    }

    /// Eigenvalues of the symmetric part, ascending.
    pub fn eigenvalues(&self) -> [f64; 3] {
        let sym = (self.entries + self.entries.transpose()) * 0.5;
        let mut ev: Vec<f64> = SymmetricEigen::new(sym)
            .eigenvalues
            .iter()
            .copied()
            .collect();
        ev.sort_by(f64::total_cmp);
        [ev[0], ev[1], ev[2]]
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()[0]
    }
}

pub fn covariance_matrix(rho: &CMatrix) -> Result<CovarianceMatrix> {
    if rho.dim() != 4 {
        return Err(Error::Dimension(rho.dim()));
    }
    let id = CMatrix::identity(2)?;
    let mut first = [0.0; 3];
    let mut second = [0.0; 3];
    for (i, axis) in Axis::ALL.into_iter().enumerate() {
        first[i] = rho.trace_product(&kron(&pauli(axis), &id)?).re;
        second[i] = rho.trace_product(&kron(&id, &pauli(axis))?).re;
    }
    let mut entries = Matrix3::zeros();
    for (i, a) in Axis::ALL.into_iter().enumerate() {
        for (j, b) in Axis::ALL.into_iter().enumerate() {
            let joint = rho.trace_product(&kron(&pauli(a), &pauli(b))?).re;
            entries[(i, j)] = joint - first[i] * second[j];
        }
    }
    Ok(CovarianceMatrix { entries })
}

/// SLF diagonal of the covariance matrix for equal magnitudes `p` and
/// half-angle `theta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanonicalDiagonals {
    pub cxx: f64,
    pub cyy: f64,
    pub czz: f64,
}

/// Closed-form covariance diagonal; the denominator `3 + p² cos 2θ` is at
/// least 2. Defined for any real `theta`.
pub fn canonical_diagonals(p: f64, theta: f64) -> CanonicalDiagonals {
    let p2 = p * p;
    let (s, c) = theta.sin_cos();
    let n = 3.0 + p2 * (2.0 * theta).cos();
    let mean_z = 4.0 * p * c / n;
    CanonicalDiagonals {
        cxx: (1.0 - p2 * (1.0 + 2.0 * s * s)) / n,
        cyy: (1.0 - p2 * (2.0 * theta).cos()) / n,
        czz: (1.0 + p2 * (1.0 + 2.0 * c * c)) / n - mean_z * mean_z,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    First,
    Second,
}

/// Partial transpose of a two-qubit operator over one subsystem.
pub fn partial_transpose(rho: &CMatrix, over: Subsystem) -> Result<CMatrix> {
    if rho.dim() != 4 {
        return Err(Error::Dimension(rho.dim()));
    }
    CMatrix::from_fn(4, |row, col| {
        let (a, b, c, d) = (row / 2, row % 2, col / 2, col % 2);
        match over {
            Subsystem::First => rho.get(2 * c + b, 2 * a + d),
            Subsystem::Second => rho.get(2 * a + d, 2 * c + b),
        }
    })
}

/// Smallest eigenvalue of the partial transpose over subsystem 2; negative
/// exactly for entangled two-qubit states.
pub fn ppt_min_eigenvalue(rho: &CMatrix) -> Result<f64> {
    let pt = partial_transpose(rho, Subsystem::Second)?;
    Ok(*eig_hermitian(&pt)?.values.last().expect("4 eigenvalues"))
}

/// Outcome of both criteria on one state.
#[derive(Debug, Clone, PartialEq)]
pub struct EntanglementVerdict {
    pub covariance: CovarianceMatrix,
    pub cov_min_eig: f64,
    pub ppt_min_eig: f64,
    /// `cov_min_eig < -tol`.
    pub entangled: bool,
    /// `|cov_min_eig| <= tol`: too close to zero to call.
    pub boundary: bool,
    /// False only when one criterion is below `-tol` and the other above `tol`.
    pub criterion_agreement: bool,
}

/// Applies both criteria to a two-qubit state.
pub fn verdict_for_state(rho: &CMatrix, tol: f64) -> Result<EntanglementVerdict> {
    let covariance = covariance_matrix(rho)?;
    let cov_min_eig = covariance.min_eigenvalue();
    let ppt_min_eig = ppt_min_eigenvalue(rho)?;
    let disagree =
        (cov_min_eig < -tol && ppt_min_eig > tol) || (cov_min_eig > tol && ppt_min_eig < -tol);
    Ok(EntanglementVerdict {
        covariance,
        cov_min_eig,
        ppt_min_eig,
        entangled: cov_min_eig < -tol,
        boundary: cov_min_eig.abs() <= tol,
        criterion_agreement: !disagree,
    })
}

/// Full pipeline: product state, triplet projection, symmetric embedding,
/// then both criteria.
pub fn verdict(cfg: &ChannelConfig, tol: f64) -> Result<EntanglementVerdict> {
    let projected = triplet_projection(&product_state(cfg))?;
    verdict_for_state(&symmetric_embedding(&projected.rho1)?, tol)
}

/// Open θ-range on which the equal-magnitude SLF state is entangled.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaInterval {
    pub lo: f64,
    pub hi: f64,
}

impl ThetaInterval {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

fn slf_cov_min_eig(p: f64, theta: f64) -> Result<f64> {
    Ok(verdict(&ChannelConfig::slf(p, theta)?, DEFAULT_TOL)?.cov_min_eig)
}

/// Root of `cov_min_eig` inside `[a, b]`, where `a` is on the `a_entangled`
/// side. Falls back to the non-entangled endpoint when both ends share a sign
/// (the crossing hides inside the tolerance band).
fn refine_boundary(p: f64, mut a: f64, mut b: f64, a_entangled: bool) -> Result<f64> {
    let (fa, fb) = (slf_cov_min_eig(p, a)?, slf_cov_min_eig(p, b)?);
    if fa.signum() == fb.signum() || fa == 0.0 || fb == 0.0 {
        return Ok(if a_entangled { b } else { a });
    }
    let a_negative = fa < 0.0;
    while b - a > BOUNDARY_TOL {
        let mid = 0.5 * (a + b);
        if (slf_cov_min_eig(p, mid)? < 0.0) == a_negative {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}

/// Scans θ over `[0, π/2]` with `resolution` evenly spaced samples and
/// returns the maximal entangled intervals, boundaries bisected on
/// `cov_min_eig`.
pub fn entangled_theta_intervals(
    p: f64,
    resolution: usize,
    tol: f64,
) -> Result<Vec<ThetaInterval>> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!("p = {p} outside [0, 1]")));
    }
    if resolution < MIN_RESOLUTION {
        return Err(Error::InvalidArgument(format!(
            "resolution {resolution} below {MIN_RESOLUTION}"
        )));
    }
    let step = FRAC_PI_2 / (resolution - 1) as f64;
    let thetas: Vec<f64> = (0..resolution)
        .map(|i| {
            if i + 1 == resolution {
                FRAC_PI_2
            } else {
                i as f64 * step
            }
        })
        .collect();
    let flags = thetas
        .iter()
        .map(|&t| Ok(verdict(&ChannelConfig::slf(p, t)?, tol)?.entangled))
        .collect::<Result<Vec<bool>>>()?;

    let mut intervals = Vec::new();
    let mut open: Option<f64> = if flags[0] { Some(thetas[0]) } else { None };
    for i in 1..resolution {
        match (flags[i - 1], flags[i]) {
            (false, true) => open = Some(refine_boundary(p, thetas[i - 1], thetas[i], false)?),
            (true, false) => {
                let hi = refine_boundary(p, thetas[i - 1], thetas[i], true)?;
                intervals.push(ThetaInterval {
                    lo: open.take().expect("interval opened"),
                    hi,
                });
            }
            _ => {}
        }
    }
    if let Some(lo) = open {
        intervals.push(ThetaInterval { lo, hi: FRAC_PI_2 });
    }
    Ok(intervals)
}

/// Total length of a set of intervals.
pub fn entangled_measure(intervals: &[ThetaInterval]) -> f64 {
    intervals.iter().map(ThetaInterval::width).sum()
}
