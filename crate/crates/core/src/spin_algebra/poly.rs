//! Complex polynomials with a fixed nominal degree and their roots.
//!
//! A vanishing leading coefficient is meaningful: each lost degree is a root
//! at infinity (the south pole in the stellar picture).

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Coefficients whose modulus is below this fraction of the largest one are
/// treated as zero when deciding the actual degree.
pub const DEGREE_DROP_RTOL: f64 = 1e-14;

/// `P(Z) = Σ coeffs[k] Z^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexPolynomial {
    coeffs: Vec<Complex64>,
}

impl ComplexPolynomial {
    /// The nominal degree is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "polynomial needs at least one coefficient"
        );
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn nominal_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn max_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Degree after discarding negligible leading coefficients, or `None` for
    /// the zero polynomial.
    pub fn actual_degree(&self) -> Option<usize> {
        let max = self.max_coeff();
        if max == 0.0 {
            return None;
        }
        self.coeffs
            .iter()
            .rposition(|c| c.norm() > DEGREE_DROP_RTOL * max)
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }
}

/// Roots of a polynomial split into finite ones and a count of roots at
/// infinity.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyRoots {
    /// Sorted by real part, then imaginary part.
    pub finite: Vec<Complex64>,
    pub at_infinity: usize,
}

/// Finds all roots. Degree one and two use closed forms; higher degrees use
/// the eigenvalues of the companion matrix.
pub fn poly_roots(p: &ComplexPolynomial) -> Result<PolyRoots> {
    let nominal = p.nominal_degree();
    if nominal == 0 {
        return Err(Error::InvalidArgument(
            "nominal degree must be at least 1".into(),
        ));
    }
    let degree = p.actual_degree().ok_or(Error::NullPolynomial)?;
    let c = &p.coeffs()[..=degree];
    let mut finite = match degree {
        0 => vec![],
        1 => vec![-c[0] / c[1]],
        2 => quadratic_roots(c[2], c[1], c[0]).to_vec(),
        _ => companion_roots(c),
    };
    finite.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(PolyRoots {
        finite,
        at_infinity: nominal - degree,
    })
}

/// Roots of `a z² + b z + c` with `a != 0`, avoiding cancellation: the sign
/// of the square root is matched to `b` so `q` never suffers subtraction.
pub fn quadratic_roots(a: Complex64, b: Complex64, c: Complex64) -> [Complex64; 2] {
    let sqrt_disc = (b * b - a * c * 4.0).sqrt();
    let sign = if (b.conj() * sqrt_disc).re >= 0.0 {
        1.0
    } else {
        -1.0
    };
    let q = -(b + sqrt_disc * sign) * 0.5;
    if q.norm() == 0.0 {
        // b = 0 and b² = 4ac with a != 0 means c = 0: double root at zero.
        return [Complex64::new(0.0, 0.0); 2];
    }
    [q / a, c / q]
}

fn companion_roots(c: &[Complex64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    let lead = c[n];
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..n {
        m[(i, n - 1)] = -c[i] / lead;
    }
    m.schur()
        .eigenvalues()
        .expect("complex Schur form is triangular")
        .iter()
        .copied()
        .collect()
}
