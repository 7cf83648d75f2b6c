//! JSON/CSV reports for a single configuration and for the Majorana
//! constellation of an SLF state.

use serde::Serialize;
use serde_json::Value;

use super::format::fmt12;
use crate::channel_state::{
    product_state, qubit_density, slf_frame, stat_tensors_from_state, triplet_projection,
    ChannelConfig, Frame,
};
use crate::entanglement::{
    covariance_matrix, symmetric_embedding, verdict_for_state, CovarianceMatrix,
};
use crate::error::Result;
use crate::majorana::{channel_eigen_closed_form, constellation, stellar_points, BlochPoint};
use crate::spin_algebra::{CMatrix, Vec3};

#[derive(Debug, Clone, Serialize)]
pub struct MatrixParts {
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl From<&CMatrix> for MatrixParts {
    fn from(m: &CMatrix) -> Self {
        let n = m.dim();
        let rows = |f: fn(num_complex::Complex64) -> f64| {
            (0..n)
                .map(|i| (0..n).map(|j| f(m.get(i, j))).collect())
                .collect()
        };
        Self {
            re: rows(|z| z.re),
            im: rows(|z| z.im),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TensorEntry {
    pub k: usize,
    pub q: i32,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct FrameReport {
    pub x0: [f64; 3],
    pub y0: [f64; 3],
    pub z0: [f64; 3],
    pub degenerate: bool,
}

fn arr(v: &Vec3) -> [f64; 3] {
    [v.x, v.y, v.z]
}

impl From<&Frame> for FrameReport {
    fn from(f: &Frame) -> Self {
        Self {
            x0: arr(&f.x0),
            y0: arr(&f.y0),
            z0: arr(&f.z0),
            degenerate: f.degenerate,
        }
    }
}

fn cov_rows(c: &CovarianceMatrix) -> [[f64; 3]; 3] {
    std::array::from_fn(|i| std::array::from_fn(|j| c.get(i, j)))
}

#[derive(Debug, Clone, Serialize)]
pub struct VerdictReport {
    pub cov_min_eig: f64,
    pub ppt_min_eig: f64,
    pub entangled: bool,
    pub boundary: bool,
    pub criterion_agreement: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PointReport {
    pub alpha: f64,
    pub beta: f64,
    pub cartesian: [f64; 3],
}

impl From<&BlochPoint> for PointReport {
    fn from(p: &BlochPoint) -> Self {
        Self {
            alpha: p.alpha,
            beta: p.beta,
            cartesian: arr(&p.cartesian()),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConstellationEntryReport {
    /// Label of the closed-form eigenvector (1, 2, 3); absent for numerical
    /// eigenvectors.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<u8>,
    pub lambda: f64,
    pub points: Vec<PointReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConstellationReport {
    pub degenerate: bool,
    pub entries: Vec<ConstellationEntryReport>,
}

/// Everything computed for one pair of polarization vectors.
#[derive(Debug, Clone, Serialize)]
pub struct StateReport {
    pub p1: [f64; 3],
    pub p2: [f64; 3],
    /// Half of the angle between the vectors.
    pub theta: f64,
    pub triplet_weight: f64,
    pub rho_beam: MatrixParts,
    pub rho_target: MatrixParts,
    pub rho_spin1: MatrixParts,
    pub stat_tensors: Vec<TensorEntry>,
    pub frame: FrameReport,
    /// Lab-frame covariance matrix.
    pub covariance: [[f64; 3]; 3],
    /// Covariance matrix with both vectors expressed in the SLF.
    pub covariance_slf: [[f64; 3]; 3],
    pub verdict: VerdictReport,
    pub lambdas: [f64; 3],
    pub constellation: ConstellationReport,
}

impl StateReport {
    pub fn entangled(&self) -> bool {
        self.verdict.entangled
    }
}

pub fn state_report(cfg: &ChannelConfig, tol: f64) -> Result<StateReport> {
    let projected = triplet_projection(&product_state(cfg))?;
    let rho1 = &projected.rho1;
    let embedded = symmetric_embedding(rho1)?;
    let v = verdict_for_state(&embedded, tol)?;
    let frame = slf_frame(cfg);
    let slf_cfg = frame.transform(cfg);
    let slf_rho1 = triplet_projection(&product_state(&slf_cfg))?.rho1;
    let covariance_slf = covariance_matrix(&symmetric_embedding(&slf_rho1)?)?;
    let tensors = stat_tensors_from_state(rho1)?;
    let cons = constellation(rho1)?;
    let lambdas = [
        cons.entries[0].lambda,
        cons.entries[1].lambda,
        cons.entries[2].lambda,
    ];
    Ok(StateReport {
        p1: arr(cfg.p1.vec()),
        p2: arr(cfg.p2.vec()),
        theta: cfg.half_angle(),
        triplet_weight: projected.weight,
        rho_beam: (&qubit_density(&cfg.p1)).into(),
        rho_target: (&qubit_density(&cfg.p2)).into(),
        rho_spin1: rho1.into(),
        stat_tensors: tensors
            .iter()
            .map(|((k, q), t)| TensorEntry {
                k,
                q,
                re: t.re,
                im: t.im,
            })
            .collect(),
        frame: (&frame).into(),
        covariance: cov_rows(&v.covariance),
        covariance_slf: cov_rows(&covariance_slf),
        verdict: VerdictReport {
            cov_min_eig: v.cov_min_eig,
            ppt_min_eig: v.ppt_min_eig,
            entangled: v.entangled,
            boundary: v.boundary,
            criterion_agreement: v.criterion_agreement,
        },
        lambdas,
        constellation: ConstellationReport {
            degenerate: cons.degenerate,
            entries: cons
                .entries
                .iter()
                .map(|e| ConstellationEntryReport {
                    label: None,
                    lambda: e.lambda,
                    points: e.points.iter().map(PointReport::from).collect(),
                })
                .collect(),
        },
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct DegeneracyReport {
    pub spectrum: bool,
    pub frame: bool,
}

/// Closed-form eigen-system and constellation of the SLF state `(p, θ)`.
#[derive(Debug, Clone, Serialize)]
pub struct MajoranaReport {
    pub p: f64,
    pub theta: f64,
    pub lambdas: [f64; 3],
    pub constellations: Vec<ConstellationEntryReport>,
    pub frame: FrameReport,
    pub degenerate: DegeneracyReport,
}

pub fn majorana_report(p: f64, theta: f64) -> Result<MajoranaReport> {
    let eig = channel_eigen_closed_form(p, theta)?;
    let frame = slf_frame(&ChannelConfig::slf(p, theta)?);
    let constellations = eig
        .vectors
        .iter()
        .zip(eig.lambdas.iter().zip(eig.labels))
        .map(|(v, (&lambda, label))| {
            Ok(ConstellationEntryReport {
                label: Some(label),
                lambda,
                points: stellar_points(v)?.iter().map(PointReport::from).collect(),
            })
        })
        .collect::<Result<_>>()?;
    Ok(MajoranaReport {
        p,
        theta,
        lambdas: eig.lambdas,
        constellations,
        frame: (&frame).into(),
        degenerate: DegeneracyReport {
            spectrum: eig.is_degenerate(),
            frame: frame.degenerate,
        },
    })
}

/// Flattens a JSON value into `key,value` CSV lines; nested keys are joined
/// with `.` and array positions appear as indices.
pub fn flatten_csv(value: &Value) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut Vec<String>) {
        let key = |k: &str| {
            if prefix.is_empty() {
                k.to_string()
            } else {
                format!("{prefix}.{k}")
            }
        };
        match v {
            Value::Object(map) => map.iter().for_each(|(k, v)| walk(&key(k), v, out)),
            Value::Array(items) => items
                .iter()
                .enumerate()
                .for_each(|(i, v)| walk(&key(&i.to_string()), v, out)),
            Value::Bool(b) => out.push(format!("{prefix},{}", u8::from(*b))),
            Value::Number(n) => out.push(format!(
                "{prefix},{}",
                fmt12(n.as_f64().unwrap_or(f64::NAN))
            )),
            Value::String(s) => out.push(format!("{prefix},{s}")),
            Value::Null => out.push(format!("{prefix},")),
        }
    }
    let mut lines = vec!["key,value".to_string()];
    walk("", value, &mut lines);
    lines.join("\n") + "\n"
}
