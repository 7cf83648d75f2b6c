//! Eigen-system of the channel spin-1 density matrix and the Majorana
//! stellar representation of its eigenvectors.
//!
//! A spin-j pure state with amplitudes `C_m` (basis `m = j, ..., -j`) maps to
//! the polynomial `P(Z) = Σ_k (-1)^k sqrt(binom(2j, k)) d_k Z^k` with
//! `d_{j+m} = C_m`. Each root `Z = tan(α/2) e^{iβ}` is one constituent spinor
//! `(cos(α/2), sin(α/2) e^{iβ})`; every lost degree is a spinor at the south
//! pole.

use std::f64::consts::{PI, TAU};

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spin_algebra::{c64, eig_hermitian, poly_roots, CMatrix, ComplexPolynomial, Vec3};

/// Eigenvalue gaps below this mark a degenerate spectrum.
pub const DEGENERACY_TOL: f64 = 1e-10;

/// Spin-1 state vector in the basis `|1,+1>, |1,0>, |1,-1>`.
pub type SpinOneState = [Complex64; 3];

/// Eigenvalues (descending) and eigenvectors of the channel state, with the
/// labels 1, 2, 3 of the closed-form expressions.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSystem {
    pub lambdas: [f64; 3],
    pub vectors: [SpinOneState; 3],
    pub labels: [u8; 3],
}

impl EigenSystem {
    /// Position of the eigenvector carrying `label` in the sorted arrays.
    pub fn index_of(&self, label: u8) -> usize {
        self.labels
            .iter()
            .position(|&l| l == label)
            .expect("labels are 1, 2, 3")
    }

    pub fn by_label(&self, label: u8) -> (f64, &SpinOneState) {
        let i = self.index_of(label);
        (self.lambdas[i], &self.vectors[i])
    }

    pub fn is_degenerate(&self) -> bool {
        self.lambdas
            .windows(2)
            .any(|w| w[0] - w[1] < DEGENERACY_TOL)
    }
}

fn check_p_theta(p: f64, theta: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!("p = {p} outside [0, 1]")));
    }
    if !(0.0..=std::f64::consts::FRAC_PI_2).contains(&theta) {
        return Err(Error::InvalidArgument(format!(
            "theta = {theta} outside [0, π/2]"
        )));
    }
    Ok(())
}

fn normalized(v: [f64; 3]) -> Option<SpinOneState> {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    (n >= f64::MIN_POSITIVE).then(|| v.map(|x| c64(x / n, 0.0)))
}

/// Closed-form eigen-system for equal magnitudes `p` in the SLF at
/// half-angle `theta`.
///
/// With `N = 3 + p² cos 2θ` and `D = p⁴ sin⁴θ + 4p² cos²θ`:
/// `λ_{1,2} = (1 + p² cos²θ ± √D)/N`, `λ_3 = (1 - p²)/N`. The eigenvectors
/// `|ψ_{1,2}>` span `|1,+1>, |1,-1>` and `|ψ_3> = |1,0>`. `|ψ_1>` is written
/// as `(2p cosθ + √D) |1,+1> - p² sin²θ |1,-1>`, a positive multiple of
/// `p² sin²θ |1,+1> + ((1 + p cosθ)² - λ_1 N) |1,-1>` that stays accurate as
/// `sinθ → 0`.
pub fn channel_eigen_closed_form(p: f64, theta: f64) -> Result<EigenSystem> {
    check_p_theta(p, theta)?;
    let (s, c) = theta.sin_cos();
    let (p2s2, pc) = (p * p * s * s, p * c);
    let n = 3.0 + p * p * (2.0 * theta).cos();
    let root_d = (p2s2 * p2s2 + 4.0 * pc * pc).sqrt();
    let raw = [
        (1.0 + pc * pc + root_d) / n,
        (1.0 + pc * pc - root_d) / n,
        (1.0 - p * p) / n,
    ];
    let big = 2.0 * pc + root_d;
    let psi1 =
        normalized([big, 0.0, -p2s2]).unwrap_or([c64(1.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0)]);
    let psi2 =
        normalized([p2s2, 0.0, big]).unwrap_or([c64(0.0, 0.0), c64(0.0, 0.0), c64(1.0, 0.0)]);
    let psi3 = [c64(0.0, 0.0), c64(1.0, 0.0), c64(0.0, 0.0)];
    let vecs = [psi1, psi2, psi3];

    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| raw[j].total_cmp(&raw[i]));
    Ok(EigenSystem {
        lambdas: order.map(|i| raw[i]),
        vectors: order.map(|i| vecs[i]),
        labels: order.map(|i| i as u8 + 1),
    })
}

/// Point on the Bloch sphere. `alpha ∈ [0, π]`, `beta ∈ [0, 2π)`, and `beta`
/// is zero at either pole.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochPoint {
    pub alpha: f64,
    pub beta: f64,
}

impl BlochPoint {
    pub const NORTH: BlochPoint = BlochPoint {
        alpha: 0.0,
        beta: 0.0,
    };
    pub const SOUTH: BlochPoint = BlochPoint {
        alpha: PI,
        beta: 0.0,
    };

    pub fn new(alpha: f64, beta: f64) -> Self {
        let alpha = alpha.clamp(0.0, PI);
        if alpha == 0.0 || alpha == PI {
            return Self { alpha, beta: 0.0 };
        }
        let mut beta = beta.rem_euclid(TAU) + 0.0;
        if beta >= TAU {
            beta = 0.0;
        }
        Self { alpha, beta }
    }

    /// Spinor direction for a finite root `Z = tan(α/2) e^{iβ}`.
    pub fn from_root(z: Complex64) -> Self {
        Self::new(2.0 * z.norm().atan(), z.im.atan2(z.re))
    }

    /// `(sinα cosβ, sinα sinβ, cosα)`.
    pub fn cartesian(&self) -> Vec3 {
        let (sa, ca) = self.alpha.sin_cos();
        let (sb, cb) = self.beta.sin_cos();
        Vec3::new(sa * cb, sa * sb, ca)
    }

    /// `(cos(α/2), sin(α/2) e^{iβ})`.
    pub fn spinor(&self) -> [Complex64; 2] {
        let (s, c) = (0.5 * self.alpha).sin_cos();
        [c64(c, 0.0), Complex64::from_polar(s, self.beta)]
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn state_norm(state: &[Complex64]) -> f64 {
    state.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Majorana polynomial of a spin-j state given as `2j + 1` amplitudes in the
/// basis `m = j, j-1, ..., -j`. The nominal degree is `2j`.
pub fn majorana_polynomial(state: &[Complex64]) -> Result<ComplexPolynomial> {
    if state.len() < 2 {
        return Err(Error::InvalidArgument(
            "state needs at least two amplitudes".into(),
        ));
    }
    let norm = state_norm(state);
    if !norm.is_finite() || norm < 1e-14 {
        return Err(Error::NullState(norm));
    }
    let two_j = state.len() - 1;
    let coeffs = (0..=two_j)
        .map(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            // d_k has m = k - j, stored at index j - m = 2j - k
            state[two_j - k] / norm * (sign * binomial(two_j, k).sqrt())
        })
        .collect();
    Ok(ComplexPolynomial::new(coeffs))
}

/// The `2j` constituent spinor directions, sorted by `alpha` then `beta`.
pub fn stellar_points(state: &[Complex64]) -> Result<Vec<BlochPoint>> {
    let roots = poly_roots(&majorana_polynomial(state)?)?;
    let mut points: Vec<BlochPoint> = roots
        .finite
        .iter()
        .map(|&z| BlochPoint::from_root(z))
        .collect();
    points.extend(std::iter::repeat_n(BlochPoint::SOUTH, roots.at_infinity));
    points.sort_by(|a, b| a.alpha.total_cmp(&b.alpha).then(a.beta.total_cmp(&b.beta)));
    Ok(points)
}

/// Normalized symmetrized product of the spinors at `points`, in the basis
/// `m = j, ..., -j` with `2j = points.len()`. The global phase is fixed so the
/// first amplitude of largest modulus is real positive.
pub fn state_from_points(points: &[BlochPoint]) -> Vec<Complex64> {
    let two_j = points.len();
    // coefficients of Π_r (up_r + down_r X): index n counts down spinors
    let mut e = vec![c64(0.0, 0.0); two_j + 1];
    e[0] = c64(1.0, 0.0);
    for (r, pt) in points.iter().enumerate() {
        let [up, down] = pt.spinor();
        for n in (0..=r + 1).rev() {
            let keep = e[n] * up;
            let shift = if n > 0 {
                e[n - 1] * down
            } else {
                c64(0.0, 0.0)
            };
            e[n] = keep + shift;
        }
    }
    let amps: Vec<Complex64> = e
        .iter()
        .enumerate()
        .map(|(n, &x)| x / binomial(two_j, n).sqrt())
        .collect();
    let norm = state_norm(&amps);
    let v = DVector::from_iterator(amps.len(), amps.iter().map(|z| z / norm));
    crate::spin_algebra::eigen::fix_phase(v)
        .iter()
        .copied()
        .collect()
}

/// `min_φ ‖a − e^{iφ} b‖` for normalized vectors of equal length.
pub fn distance_up_to_phase(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len(), "length mismatch");
    let overlap: Complex64 = b.iter().zip(a).map(|(x, y)| x.conj() * y).sum();
    let phase = if overlap.norm() > 0.0 {
        overlap / overlap.norm()
    } else {
        c64(1.0, 0.0)
    };
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y * phase).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Spinor directions of `|ψ_1>` (x₀–z₀ plane) or `|ψ_2>` (y₀–z₀ plane) from
/// the closed-form ratio `((1 + p cosθ)² − λ N)/(p² sin²θ)`, where `tan(α/2)`
/// is the square root of its modulus.
pub fn channel_spinor_angles(p: f64, theta: f64, which: u8) -> Result<[BlochPoint; 2]> {
    check_p_theta(p, theta)?;
    if !(which == 1 || which == 2) {
        return Err(Error::InvalidArgument(format!(
            "eigenvector {which} has no closed-form spinor angles"
        )));
    }
    let (s, c) = theta.sin_cos();
    let p2s2 = p * p * s * s;
    if p2s2 == 0.0 {
        return Err(Error::DegenerateGeometry);
    }
    let big = 2.0 * p * c + (p2s2 * p2s2 + 4.0 * p * p * c * c).sqrt();
    // (1 + p cosθ)² − λN reduces to 2p cosθ ∓ √D; the λ₁ case is rationalized
    let ratio = if which == 1 { -p2s2 / big } else { big / p2s2 };
    let alpha = 2.0 * ratio.abs().sqrt().atan();
    let betas = if which == 1 {
        [0.0, PI]
    } else {
        [0.5 * PI, 1.5 * PI]
    };
    Ok(betas.map(|b| BlochPoint::new(alpha, b)))
}

/// One eigenvector's weight and its two spinor directions.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstellationEntry {
    pub lambda: f64,
    pub state: SpinOneState,
    pub points: Vec<BlochPoint>,
}

/// Stellar representation of a mixed spin-1 state.
#[derive(Debug, Clone, PartialEq)]
pub struct Constellation {
    /// Sorted by descending weight.
    pub entries: Vec<ConstellationEntry>,
    /// Set when two weights coincide within [`DEGENERACY_TOL`]; the points of
    /// the affected eigenvectors then depend on an arbitrary basis choice.
    pub degenerate: bool,
}

/// Numerical eigendecomposition of `rho1` followed by the stellar points of
/// every eigenvector.
pub fn constellation(rho1: &CMatrix) -> Result<Constellation> {
    if rho1.dim() != 3 {
        return Err(Error::Dimension(rho1.dim()));
    }
    let eig = eig_hermitian(rho1)?;
    let degenerate = eig.values.windows(2).any(|w| w[0] - w[1] < DEGENERACY_TOL);
    let entries = eig
        .values
        .iter()
        .zip(&eig.vectors)
        .map(|(&lambda, v)| {
            let state = [v[0], v[1], v[2]];
            Ok(ConstellationEntry {
                lambda,
                state,
                points: stellar_points(&state)?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(Constellation {
        entries,
        degenerate,
    })
}
