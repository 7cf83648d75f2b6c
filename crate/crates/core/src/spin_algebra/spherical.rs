//! Spherical (helicity) components of real 3-vectors and their rank-2
//! coupling.

use nalgebra::Vector3;
use num_complex::Complex64;

use super::cg::clebsch_gordan;
use super::matrix::c64;

pub type Vec3 = Vector3<f64>;

/// Spherical components `v_q`, `q ∈ {-1, 0, +1}`, with
/// `v_{±1} = ∓(v_x ± i v_y)/√2` and `v_0 = v_z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphericalVector([Complex64; 3]);

impl SphericalVector {
    pub fn get(&self, q: i32) -> Complex64 {
        assert!((-1..=1).contains(&q), "q = {q} out of range");
        self.0[(q + 1) as usize]
    }
}

pub fn spherical_components(v: &Vec3) -> SphericalVector {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    SphericalVector([
        c64(v.x * h, -v.y * h),
        c64(v.z, 0.0),
        c64(-v.x * h, -v.y * h),
    ])
}

/// `(a ⊗ b)^2_q = Σ_{μν} <1 μ; 1 ν | 2 q> a_μ b_ν`.
pub fn rank2_product(a: &Vec3, b: &Vec3, q: i32) -> Complex64 {
    assert!((-2..=2).contains(&q), "q = {q} out of range");
    let (sa, sb) = (spherical_components(a), spherical_components(b));
    let mut acc = c64(0.0, 0.0);
    for mu in -1..=1 {
        let nu = q - mu;
        if !(-1..=1).contains(&nu) {
            continue;
        }
        let cg = clebsch_gordan(1.0, mu as f64, 1.0, nu as f64, 2.0, q as f64)
            .expect("1 x 1 -> 2 coupling is always supported");
        acc += sa.get(mu) * sb.get(nu) * cg;
    }
    acc
}
