//! Spin-1/2 subsystems, their product and its spin-1 (triplet) projection,
//! statistical tensors and the Special Lakin Frame.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spin_algebra::{
    c64, kq_index, kq_pairs, kron, pauli, rank2_product, spherical_components, tensor_ops, Axis,
    CMatrix, Vec3,
};

/// Slack allowed on `|p| <= 1`.
pub const POLARIZATION_SLACK: f64 = 1e-12;
/// Triplet weights at or below this value mean the input was a pure singlet.
pub const TRIPLET_WEIGHT_CUTOFF: f64 = 1e-14;
/// `|p1 + p2|` (or the in-plane component of `p1`) below this is degenerate
/// for the frame construction.
pub const FRAME_DEGENERACY_TOL: f64 = 1e-12;

/// Polarization `<σ>` of a spin-1/2 ensemble, `|p| <= 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarizationVector(Vec3);

impl PolarizationVector {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        Self::from_vec3(Vec3::new(x, y, z))
    }

    pub fn from_vec3(v: Vec3) -> Result<Self> {
        let norm = v.norm();
        if !norm.is_finite() || norm > 1.0 + POLARIZATION_SLACK {
            return Err(Error::UnphysicalPolarization { norm });
        }
        Ok(Self(v))
    }

    pub fn zero() -> Self {
        Self(Vec3::zeros())
    }

    pub fn vec(&self) -> &Vec3 {
        &self.0
    }

    pub fn magnitude(&self) -> f64 {
        self.0.norm()
    }
}

/// Beam (`p1`) and target (`p2`) polarizations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelConfig {
    pub p1: PolarizationVector,
    pub p2: PolarizationVector,
}

impl ChannelConfig {
    pub fn new(p1: PolarizationVector, p2: PolarizationVector) -> Self {
        Self { p1, p2 }
    }

    /// Equal magnitudes `p` at half-angle `theta`, already in the SLF:
    /// `p1 = p(sinθ, 0, cosθ)` and `p2 = p(-sinθ, 0, cosθ)`.
    pub fn slf(p: f64, theta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::UnphysicalPolarization { norm: p.abs() });
        }
        let (s, c) = theta.sin_cos();
        Ok(Self {
            p1: PolarizationVector::from_vec3(Vec3::new(p * s, 0.0, p * c))?,
            p2: PolarizationVector::from_vec3(Vec3::new(-p * s, 0.0, p * c))?,
        })
    }

    /// `p1 · p2`.
    pub fn dot(&self) -> f64 {
        self.p1.vec().dot(self.p2.vec())
    }

    /// Half of the angle between `p1` and `p2`, in `[0, π/2]`; zero when either
    /// vector vanishes.
    pub fn half_angle(&self) -> f64 {
        let (a, b) = (self.p1.magnitude(), self.p2.magnitude());
        if a == 0.0 || b == 0.0 {
            return 0.0;
        }
        // atan2 of |a×b| and a·b keeps accuracy near 0 and π
        let cross = self.p1.vec().cross(self.p2.vec()).norm();
        0.5 * cross.atan2(self.dot())
    }
}

/// `ρ = (I + σ·p)/2`.
pub fn qubit_density(p: &PolarizationVector) -> CMatrix {
    let v = p.vec();
    let half = c64(0.5, 0.0);
    let mut m = CMatrix::identity(2).expect("dim 2").scale(half);
    for (axis, comp) in Axis::ALL.into_iter().zip(v.iter()) {
        m = &m + &pauli(axis).scale(c64(0.5 * comp, 0.0));
    }
    m
}

/// `ρ_c = ρ(1) ⊗ ρ(2)` in the basis `|↑↑>, |↑↓>, |↓↑>, |↓↓>`.
pub fn product_state(cfg: &ChannelConfig) -> CMatrix {
    kron(&qubit_density(&cfg.p1), &qubit_density(&cfg.p2)).expect("2 x 2 = 4")
}

/// 4x3 isometry whose columns are `|1,+1> = |↑↑>`,
/// `|1,0> = (|↑↓> + |↓↑>)/√2` and `|1,-1> = |↓↓>`.
pub fn triplet_isometry() -> DMatrix<Complex64> {
    let h = c64(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let (o, l) = (c64(0.0, 0.0), c64(1.0, 0.0));
    DMatrix::from_row_slice(4, 3, &[l, o, o, o, h, o, o, h, o, o, o, l])
}

/// Spin-1 state obtained from a two-qubit state.
#[derive(Debug, Clone)]
pub struct TripletProjection {
    /// Normalized 3x3 density matrix in the basis `|1,+1>, |1,0>, |1,-1>`.
    pub rho1: CMatrix,
    /// `Tr(Π_S ρ_c)` before normalization.
    pub weight: f64,
}

pub fn triplet_projection(rho_c: &CMatrix) -> Result<TripletProjection> {
    if rho_c.dim() != 4 {
        return Err(Error::Dimension(rho_c.dim()));
    }
    let v = triplet_isometry();
    let block = v.adjoint() * rho_c.as_matrix() * &v;
    let weight = block.trace().re;
    if weight <= TRIPLET_WEIGHT_CUTOFF {
        return Err(Error::ProjectionNull(weight));
    }
    let rho1 = CMatrix::from_matrix(block / c64(weight, 0.0))?;
    Ok(TripletProjection { rho1, weight })
}

/// Statistical tensors `t^k_q` of a spin-1 state, `k <= 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StatTensors {
    values: [Complex64; 9],
}

impl StatTensors {
    pub fn get(&self, k: usize, q: i32) -> Complex64 {
        assert!(
            k <= 2 && q.unsigned_abs() as usize <= k,
            "({k}, {q}) out of range"
        );
        self.values[kq_index(k, q)]
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, i32), Complex64)> + '_ {
        kq_pairs(2).zip(self.values.iter().copied())
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest violation of `t^k_q* = (-1)^q t^k_{-q}`.
    pub fn conjugation_defect(&self) -> f64 {
        self.iter()
            .map(|((k, q), t)| {
                let sign = if q % 2 == 0 { 1.0 } else { -1.0 };
                (t.conj() - self.get(k, -q) * sign).norm()
            })
            .fold(0.0, f64::max)
    }

    /// Density matrix `ρ = (1/3) Σ t^k_q τ^k_q†` (unit trace).
    pub fn density_matrix(&self) -> CMatrix {
        let ops = tensor_ops(1.0).expect("spin 1 supported");
        let mut m = CMatrix::zeros(3).expect("dim 3");
        for ((k, q), t) in self.iter() {
            m = &m + &ops.get(k, q).adjoint().scale(t / 3.0);
        }
        m
    }
}

/// `t^k_q = Tr(ρ τ^k_q) / Tr ρ`.
pub fn stat_tensors_from_state(rho1: &CMatrix) -> Result<StatTensors> {
    if rho1.dim() != 3 {
        return Err(Error::Dimension(rho1.dim()));
    }
    let ops = tensor_ops(1.0)?;
    let tr = rho1.trace();
    let mut values = [c64(0.0, 0.0); 9];
    for ((k, q), op) in ops.iter() {
        values[kq_index(k, q)] = rho1.trace_product(op) / tr;
    }
    Ok(StatTensors { values })
}

/// Closed forms for the projected product state:
/// `t^1_q = √6 (p_q(1) + p_q(2)) / (3 + p1·p2)` and
/// `t^2_q = 2√3 (p1 ⊗ p2)^2_q / (3 + p1·p2)`.
pub fn stat_tensors_closed_form(cfg: &ChannelConfig) -> Result<StatTensors> {
    let denom = 3.0 + cfg.dot();
    // 4 × weight; the weight is (3 + p1·p2)/4
    if denom / 4.0 <= TRIPLET_WEIGHT_CUTOFF {
        return Err(Error::ProjectionNull(denom / 4.0));
    }
    let (a, b) = (cfg.p1.vec(), cfg.p2.vec());
    let (sa, sb) = (spherical_components(a), spherical_components(b));
    let mut values = [c64(0.0, 0.0); 9];
    values[kq_index(0, 0)] = c64(1.0, 0.0);
    for q in -1..=1 {
        values[kq_index(1, q)] = (sa.get(q) + sb.get(q)) * (6f64.sqrt() / denom);
    }
    for q in -2..=2 {
        values[kq_index(2, q)] = rank2_product(a, b, q) * (2.0 * 3f64.sqrt() / denom);
    }
    Ok(StatTensors { values })
}

/// Right-handed orthonormal triad of the Special Lakin Frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    pub x0: Vec3,
    pub y0: Vec3,
    pub z0: Vec3,
    /// Set when `p1`, `p2` do not span a plane or sum to zero; the SLF
    /// identities need not hold then.
    pub degenerate: bool,
}

impl Frame {
    /// Coordinates of a lab-frame vector along `(x0, y0, z0)`.
    pub fn coordinates(&self, v: &Vec3) -> Vec3 {
        Vec3::new(self.x0.dot(v), self.y0.dot(v), self.z0.dot(v))
    }

    /// Re-expresses both polarizations in this frame.
    pub fn transform(&self, cfg: &ChannelConfig) -> ChannelConfig {
        let map = |p: &PolarizationVector| PolarizationVector(self.coordinates(p.vec()));
        ChannelConfig::new(map(&cfg.p1), map(&cfg.p2))
    }
}

/// Gram–Schmidt completion of `z` against lab x̂, falling back to lab ŷ.
fn complete_x(z: &Vec3) -> Vec3 {
    for axis in [Vec3::x(), Vec3::y()] {
        let perp = axis - z * z.dot(&axis);
        if perp.norm() > 0.5 {
            return perp.normalize();
        }
    }
    unreachable!("x̂ and ŷ cannot both be nearly parallel to a unit vector")
}

/// ẑ₀ along `p1 + p2`, x̂₀ in the `(p1, p2)` plane with `p1` at azimuth 0
/// (so `p2` sits at azimuth π), ŷ₀ = ẑ₀ × x̂₀.
pub fn slf_frame(cfg: &ChannelConfig) -> Frame {
    let (a, b) = (cfg.p1.vec(), cfg.p2.vec());
    let sum = a + b;
    let mut degenerate = false;
    let z0 = if sum.norm() >= FRAME_DEGENERACY_TOL {
        sum.normalize()
    } else {
        degenerate = true;
        if a.norm() >= FRAME_DEGENERACY_TOL {
            a.normalize()
        } else {
            Vec3::z()
        }
    };
    let perp = a - z0 * z0.dot(a);
    let x0 = if perp.norm() >= FRAME_DEGENERACY_TOL {
        perp.normalize()
    } else {
        degenerate = true;
        complete_x(&z0)
    };
    let y0 = z0.cross(&x0);
    Frame {
        x0,
        y0,
        z0,
        degenerate,
    }
}

/// Cartesian SLF components of the two polarizations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlfComponents {
    pub px1: f64,
    pub pz1: f64,
    pub px2: f64,
    pub pz2: f64,
}

/// SLF components from magnitudes and the half-angle `theta` (the angle
/// between the vectors is `2θ`). The y₀ components are identically zero.
pub fn slf_components(p_mag1: f64, p_mag2: f64, theta: f64) -> Result<SlfComponents> {
    for p in [p_mag1, p_mag2] {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidArgument(format!(
                "magnitude {p} outside [0, 1]"
            )));
        }
    }
    if !(0.0..=std::f64::consts::FRAC_PI_2).contains(&theta) {
        return Err(Error::InvalidArgument(format!(
            "theta {theta} outside [0, π/2]"
        )));
    }
    let (s, c) = theta.sin_cos();
    let (plus, minus) = (p_mag1 + p_mag2, p_mag1 - p_mag2);
    // |p1 + p2| = sqrt(p1² + p2² + 2 p1 p2 cos 2θ), rewritten without cancellation near θ = π/2
    let sum = (plus * c).hypot(minus * s);
    if sum <= 1e-14 {
        return Err(Error::FrameDegenerate(sum));
    }
    let px1 = 2.0 * p_mag1 * p_mag2 * s * c / sum;
    Ok(SlfComponents {
        px1,
        pz1: p_mag1 * (plus * c * c + minus * s * s) / sum,
        px2: -px1,
        pz2: p_mag2 * (plus * c * c - minus * s * s) / sum,
    })
}
