use std::f64::consts::{FRAC_PI_4, PI};
use std::io::Write;

use super::format::fmt12;
use super::CliError;
use crate::channel_state::{product_state, triplet_projection, ChannelConfig};
use crate::entanglement::{
    canonical_diagonals, entangled_theta_intervals, symmetric_embedding, verdict_for_state,
};
use crate::error::{Error, Result};
use crate::spin_algebra::eig_hermitian;

pub const SWEEP_HEADER: &str =
    "p,theta,Cxx,Cyy,Czz,cov_min_eig,ppt_min_eig,lambda1,lambda2,lambda3,entangled";
pub const FIG1_HEADER: &str = "p,theta,Cxx";
pub const FIG2_HEADER: &str = "p,Cxx,Cyy,Czz";
pub const FIG3_HEADER: &str = "p,theta_deg,Cxx";
pub const FIG4_HEADER: &str = "p,theta_lo,theta_hi,theta_lo_deg,theta_hi_deg";

/// Evenly spaced samples `lo, ..., hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridRange {
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

impl GridRange {
    pub fn new(lo: f64, hi: f64, steps: usize) -> Self {
        Self { lo, hi, steps }
    }

    fn validate(&self, name: &str) -> Result<()> {
        if !(self.lo.is_finite() && self.hi.is_finite()) || self.lo > self.hi {
            return Err(Error::InvalidArgument(format!(
                "{name} range requires lo <= hi"
            )));
        }
        if self.steps < 2 {
            return Err(Error::InvalidArgument(format!(
                "{name} range needs at least 2 steps"
            )));
        }
        Ok(())
    }

    /// The sample values; the last one is exactly `hi`.
    pub fn values(&self) -> Vec<f64> {
        let n = self.steps;
        (0..n)
            .map(|i| {
                if i + 1 == n {
                    self.hi
                } else {
                    self.lo + (self.hi - self.lo) * i as f64 / (n - 1) as f64
                }
            })
            .collect()
    }
}

/// A `(p, θ)` grid to evaluate; θ in radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub p_range: GridRange,
    pub theta_range: GridRange,
    pub tol: f64,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        self.p_range.validate("p")?;
        self.theta_range.validate("theta")?;
        if self.p_range.lo < 0.0 || self.p_range.hi > 1.0 {
            return Err(Error::InvalidArgument("p range must lie in [0, 1]".into()));
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::InvalidArgument("tol must be positive".into()));
        }
        Ok(())
    }
}

/// One row of the sweep CSV.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRecord {
    pub p: f64,
    pub theta: f64,
    pub cxx: f64,
    pub cyy: f64,
    pub czz: f64,
    pub cov_min_eig: f64,
    pub ppt_min_eig: f64,
    /// Spectrum of the spin-1 density matrix, descending.
    pub lambdas: [f64; 3],
    pub entangled: bool,
}

impl SweepRecord {
    pub fn csv_row(&self) -> String {
        let nums = [
            self.p,
            self.theta,
            self.cxx,
            self.cyy,
            self.czz,
            self.cov_min_eig,
            self.ppt_min_eig,
            self.lambdas[0],
            self.lambdas[1],
            self.lambdas[2],
        ];
        let mut fields: Vec<String> = nums.iter().map(|&v| fmt12(v)).collect();
        fields.push(if self.entangled { "1" } else { "0" }.to_string());
        fields.join(",")
    }

    /// Re-checks the invariants a record must satisfy; returns a description
    /// of the first violation.
    pub fn check_invariants(&self, tol: f64) -> std::result::Result<(), String> {
        let sum: f64 = self.lambdas.iter().sum();
        if (sum - 1.0).abs() > 1e-10 {
            return Err(format!("eigenvalues sum to {sum}"));
        }
        if self.lambdas.windows(2).any(|w| w[0] < w[1]) {
            return Err("eigenvalues not descending".into());
        }
        if self.lambdas[2] < -1e-12 {
            return Err(format!("negative eigenvalue {}", self.lambdas[2]));
        }
        if self.entangled != (self.cov_min_eig < -tol) {
            return Err("entangled flag inconsistent with cov_min_eig".into());
        }
        if (self.cov_min_eig < -tol && self.ppt_min_eig > tol)
            || (self.cov_min_eig > tol && self.ppt_min_eig < -tol)
        {
            return Err("covariance and partial-transpose criteria disagree".into());
        }
        let d = canonical_diagonals(self.p, self.theta);
        for (name, got, want) in [
            ("Cxx", self.cxx, d.cxx),
            ("Cyy", self.cyy, d.cyy),
            ("Czz", self.czz, d.czz),
        ] {
            if (got - want).abs() > 1e-10 {
                return Err(format!("{name} = {got} departs from closed form {want}"));
            }
        }
        Ok(())
    }
}

/// Evaluates one grid point through the full vector pipeline with the lab
/// frame equal to the SLF.
pub fn sweep_record(p: f64, theta: f64, tol: f64) -> Result<SweepRecord> {
    let cfg = ChannelConfig::slf(p, theta)?;
    let rho1 = triplet_projection(&product_state(&cfg))?.rho1;
    let v = verdict_for_state(&symmetric_embedding(&rho1)?, tol)?;
    let eig = eig_hermitian(&rho1)?;
    let [cxx, cyy, czz] = v.covariance.diagonal();
    Ok(SweepRecord {
        p,
        theta,
        cxx,
        cyy,
        czz,
        cov_min_eig: v.cov_min_eig,
        ppt_min_eig: v.ppt_min_eig,
        lambdas: [eig.values[0], eig.values[1], eig.values[2]],
        entangled: v.entangled,
    })
}

/// All records in row-major order (p outer, θ inner).
pub fn sweep_records(spec: &SweepSpec) -> Result<Vec<SweepRecord>> {
    spec.validate()?;
    let thetas = spec.theta_range.values();
    let mut out = Vec::with_capacity(spec.p_range.steps * thetas.len());
    for p in spec.p_range.values() {
        for &theta in &thetas {
            out.push(sweep_record(p, theta, spec.tol)?);
        }
    }
    Ok(out)
}

/// Writes the sweep CSV. With `validate`, about a hundred evenly spread
/// records are re-checked against [`SweepRecord::check_invariants`] first.
pub fn write_sweep(spec: &SweepSpec, validate: bool, out: &mut dyn Write) -> Result<(), CliError> {
    let records = sweep_records(spec)?;
    if validate {
        let stride = (records.len() / 100).max(1);
        for r in records.iter().step_by(stride) {
            r.check_invariants(spec.tol).map_err(|msg| {
                CliError::Validation(format!("record (p={}, theta={}): {msg}", r.p, r.theta))
            })?;
        }
    }
    write_lines(out, SWEEP_HEADER, records.iter().map(SweepRecord::csv_row))?;
    Ok(())
}

fn write_lines(
    out: &mut dyn Write,
    header: &str,
    rows: impl Iterator<Item = String>,
) -> std::io::Result<()> {
    writeln!(out, "{header}")?;
    for row in rows {
        writeln!(out, "{row}")?;
    }
    out.flush()
}

/// Which of the four figure datasets to emit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    /// `Cxx` surface over `p ∈ [0, 1]`, `θ ∈ [0, π]`, 101 x 101.
    CxxSurface,
    /// `Cxx, Cyy, Czz` against `p` at `θ = π/4`, 201 samples.
    DiagonalsAtQuarterPi,
    /// `Cxx` against θ in degrees (0..=180) for `p ∈ {0.5, 0.7, 0.9}`.
    CxxVersusTheta,
    /// Entangled θ-intervals for `p ∈ {0.7, 0.9}`.
    EntangledRanges,
}

impl Figure {
    pub fn from_number(n: u8) -> Result<Self> {
        match n {
            1 => Ok(Figure::CxxSurface),
            2 => Ok(Figure::DiagonalsAtQuarterPi),
            3 => Ok(Figure::CxxVersusTheta),
            4 => Ok(Figure::EntangledRanges),
            _ => Err(Error::InvalidArgument(format!("no figure {n}"))),
        }
    }

    pub fn header(self) -> &'static str {
        match self {
            Figure::CxxSurface => FIG1_HEADER,
            Figure::DiagonalsAtQuarterPi => FIG2_HEADER,
            Figure::CxxVersusTheta => FIG3_HEADER,
            Figure::EntangledRanges => FIG4_HEADER,
        }
    }
}

pub const FIG3_POLARIZATIONS: [f64; 3] = [0.5, 0.7, 0.9];
pub const FIG4_POLARIZATIONS: [f64; 2] = [0.7, 0.9];
/// θ samples per scan for the entangled-range figure.
pub const FIG4_RESOLUTION: usize = 1000;

/// Rows of a figure dataset, without the header. The surface and θ-curves
/// evaluate the closed-form diagonals as written over θ ∈ [0, π].
pub fn figure_rows(fig: Figure, tol: f64) -> Result<Vec<String>> {
    let row = |vals: &[f64]| vals.iter().map(|&v| fmt12(v)).collect::<Vec<_>>().join(",");
    let rows = match fig {
        Figure::CxxSurface => {
            let thetas = GridRange::new(0.0, PI, 101).values();
            let mut rows = Vec::with_capacity(101 * 101);
            for p in GridRange::new(0.0, 1.0, 101).values() {
                for &t in &thetas {
                    rows.push(row(&[p, t, canonical_diagonals(p, t).cxx]));
                }
            }
            rows
        }
        Figure::DiagonalsAtQuarterPi => GridRange::new(0.0, 1.0, 201)
            .values()
            .into_iter()
            .map(|p| {
                let d = canonical_diagonals(p, FRAC_PI_4);
                row(&[p, d.cxx, d.cyy, d.czz])
            })
            .collect(),
        Figure::CxxVersusTheta => {
            let mut rows = Vec::new();
            for p in FIG3_POLARIZATIONS {
                for deg in 0..=180 {
                    let t = (deg as f64).to_radians();
                    rows.push(row(&[p, deg as f64, canonical_diagonals(p, t).cxx]));
                }
            }
            rows
        }
        Figure::EntangledRanges => {
            let mut rows = Vec::new();
            for p in FIG4_POLARIZATIONS {
                for iv in entangled_theta_intervals(p, FIG4_RESOLUTION, tol)? {
                    rows.push(row(&[
                        p,
                        iv.lo,
                        iv.hi,
                        iv.lo.to_degrees(),
                        iv.hi.to_degrees(),
                    ]));
                }
            }
            rows
        }
    };
    Ok(rows)
}

pub fn write_figure(fig: Figure, tol: f64, out: &mut dyn Write) -> Result<(), CliError> {
    let rows = figure_rows(fig, tol)?;
    write_lines(out, fig.header(), rows.into_iter())?;
    Ok(())
}
