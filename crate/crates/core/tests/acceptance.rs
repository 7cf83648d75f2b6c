//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.
//!
//! cargo test -p channel-spin --test acceptance

mod common;

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use channel_spin::channel_state::{
    product_state, stat_tensors_closed_form, stat_tensors_from_state, triplet_projection,
    ChannelConfig, PolarizationVector,
};
use channel_spin::cli_io::FIG4_RESOLUTION;
use channel_spin::entanglement::{
    canonical_diagonals, covariance_matrix, entangled_measure, entangled_theta_intervals,
    ppt_min_eigenvalue, symmetric_embedding, DEFAULT_TOL,
};
use channel_spin::majorana::{
    channel_eigen_closed_form, channel_spinor_angles, constellation, distance_up_to_phase,
    state_from_points, stellar_points, BlochPoint,
};
use channel_spin::spin_algebra::{c64, eig_hermitian, CMatrix};
use common::{grid, rng, unit_vector};
use num_complex::Complex64;
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const GRID: usize = 101;

fn p_grid(n: usize) -> Vec<f64> {
    grid(0.0, 1.0, n)
}

fn theta_grid(n: usize) -> Vec<f64> {
    grid(0.0, FRAC_PI_2, n)
}

fn embedded(p: f64, theta: f64) -> CMatrix {
    let cfg = ChannelConfig::slf(p, theta).unwrap();
    symmetric_embedding(&triplet_projection(&product_state(&cfg)).unwrap().rho1).unwrap()
}

fn spin_one(p: f64, theta: f64) -> CMatrix {
    let cfg = ChannelConfig::slf(p, theta).unwrap();
    triplet_projection(&product_state(&cfg)).unwrap().rho1
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Outcome {
    let mut worst = 0.0f64;
    for p in p_grid(GRID) {
        for theta in theta_grid(GRID) {
            let cfg = ChannelConfig::slf(p, theta).map_err(|e| e.to_string())?;
            let rho1 = triplet_projection(&product_state(&cfg))
                .map_err(|e| e.to_string())?
                .rho1;
            let numeric = stat_tensors_from_state(&rho1).map_err(|e| e.to_string())?;
            let closed = stat_tensors_closed_form(&cfg).map_err(|e| e.to_string())?;
            worst = worst.max(numeric.max_abs_diff(&closed));
        }
    }
    check(worst <= 1e-10, || {
        format!("max tensor deviation {worst:e} > 1e-10")
    })?;
    Ok(format!("max tensor deviation {worst:.2e}"))
}

fn criterion_2() -> Outcome {
    let (mut diag, mut off) = (0.0f64, 0.0f64);
    for p in p_grid(GRID) {
        for theta in theta_grid(GRID) {
            let c = covariance_matrix(&embedded(p, theta)).map_err(|e| e.to_string())?;
            let d = canonical_diagonals(p, theta);
            let got = c.diagonal();
            for (g, w) in got.iter().zip([d.cxx, d.cyy, d.czz]) {
                diag = diag.max((g - w).abs());
            }
            off = off.max(c.max_off_diagonal());
        }
    }
    check(diag <= 1e-10, || {
        format!("diagonal deviation {diag:e} > 1e-10")
    })?;
    check(off < 1e-10, || format!("off-diagonal {off:e} >= 1e-10"))?;
    Ok(format!(
        "diagonal deviation {diag:.2e}, max off-diagonal {off:.2e}"
    ))
}

fn criterion_3() -> Outcome {
    let (mut compared, mut disagreements) = (0usize, Vec::new());
    for p in p_grid(GRID) {
        for theta in theta_grid(GRID) {
            let rho = embedded(p, theta);
            let cov = covariance_matrix(&rho)
                .map_err(|e| e.to_string())?
                .min_eigenvalue();
            let ppt = ppt_min_eigenvalue(&rho).map_err(|e| e.to_string())?;
            if cov.abs() > 1e-8 && ppt.abs() > 1e-8 {
                compared += 1;
                if cov.signum() != ppt.signum() {
                    disagreements.push((p, theta, cov, ppt));
                }
            }
        }
    }
    check(disagreements.is_empty(), || {
        format!(
            "{} disagreements, first {:?}",
            disagreements.len(),
            disagreements[0]
        )
    })?;
    Ok(format!("{compared} points compared, 0 disagreements"))
}

fn cxx_numeric(p: f64, theta: f64) -> f64 {
    covariance_matrix(&embedded(p, theta)).unwrap().get(0, 0)
}

fn criterion_4() -> Outcome {
    let theta = FRAC_PI_4;
    let (mut lo, mut hi) = (0.0, 1.0);
    check(
        cxx_numeric(lo, theta) > 0.0 && cxx_numeric(hi, theta) < 0.0,
        || "Cxx does not change sign on [0, 1]".into(),
    )?;
    while hi - lo > 1e-14 {
        let mid = 0.5 * (lo + hi);
        if cxx_numeric(mid, theta) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let root = 0.5 * (lo + hi);
    check((root - FRAC_1_SQRT_2).abs() <= 1e-9, || {
        format!("Cxx zero at p = {root}, expected 1/sqrt(2)")
    })?;
    let (mut cyy_dev, mut czz_min) = (0.0f64, f64::INFINITY);
    for p in grid(0.0, 1.0, 1001) {
        let c = covariance_matrix(&embedded(p, theta)).map_err(|e| e.to_string())?;
        cyy_dev = cyy_dev.max((c.get(1, 1) - 1.0 / 3.0).abs());
        czz_min = czz_min.min(c.get(2, 2));
    }
    check(cyy_dev <= 1e-12, || {
        format!("Cyy deviates from 1/3 by {cyy_dev:e}")
    })?;
    check(czz_min >= 0.0, || format!("Czz reaches {czz_min:e}"))?;
    Ok(format!(
        "Cxx zero at p = {root:.15} (|Δ| = {:.1e}), |Cyy - 1/3| <= {cyy_dev:.1e}, min Czz = {czz_min:.4}",
        (root - FRAC_1_SQRT_2).abs()
    ))
}

/// Lower edge of `sin²θ > (1/p² − 1)/2`, if any.
fn analytic_lower_boundary(p: f64) -> Option<f64> {
    let s2 = (1.0 / (p * p) - 1.0) / 2.0;
    (s2 < 1.0).then(|| s2.sqrt().asin())
}

/// PPT verdict on a fine θ grid must match the interval list away from its edges.
fn ppt_confirms(p: f64, intervals: &[(f64, f64)]) -> Result<(), String> {
    for theta in theta_grid(2001) {
        let near_edge = intervals
            .iter()
            .any(|&(lo, hi)| (theta - lo).abs() < 1e-6 || (theta - hi).abs() < 1e-6);
        if near_edge {
            continue;
        }
        let inside = intervals.iter().any(|&(lo, hi)| lo <= theta && theta <= hi);
        let ppt = ppt_min_eigenvalue(&embedded(p, theta)).map_err(|e| e.to_string())?;
        if inside != (ppt < -DEFAULT_TOL) {
            return Err(format!(
                "PPT disagrees with interval list at p = {p}, θ = {theta} (ppt {ppt:e})"
            ));
        }
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    let p = 0.9;
    let iv =
        entangled_theta_intervals(p, FIG4_RESOLUTION, DEFAULT_TOL).map_err(|e| e.to_string())?;
    check(iv.len() == 1, || {
        format!("p = 0.9: expected one interval, got {iv:?}")
    })?;
    let want = analytic_lower_boundary(p).unwrap();
    let dev = (iv[0].lo - want).abs();
    check(dev <= 1e-8, || {
        format!("p = 0.9 lower boundary {} vs {want}", iv[0].lo)
    })?;
    check((iv[0].hi - FRAC_PI_2).abs() < 1e-12, || {
        format!("p = 0.9 upper end {}", iv[0].hi)
    })?;
    ppt_confirms(p, &[(iv[0].lo, iv[0].hi)])?;

    let iv05 =
        entangled_theta_intervals(0.5, FIG4_RESOLUTION, DEFAULT_TOL).map_err(|e| e.to_string())?;
    check(analytic_lower_boundary(0.5).is_none(), || {
        "analytic prediction for p = 0.5 not empty".into()
    })?;
    check(iv05.is_empty(), || {
        format!("p = 0.5: expected no interval, got {iv05:?}")
    })?;
    ppt_confirms(0.5, &[])?;

    let mut measures = Vec::new();
    for i in 0..=10 {
        let p = 0.5 + 0.05 * i as f64;
        let iv = entangled_theta_intervals(p, FIG4_RESOLUTION, DEFAULT_TOL)
            .map_err(|e| e.to_string())?;
        measures.push(entangled_measure(&iv));
    }
    check(measures.windows(2).all(|w| w[1] >= w[0]), || {
        format!("entangled measure not monotone: {measures:?}")
    })?;
    Ok(format!(
        "p = 0.9 boundary {:.10} rad ({:.4}°, |Δ| = {dev:.1e}); p = 0.5 empty; measure monotone over {} values of p",
        iv[0].lo,
        iv[0].lo.to_degrees(),
        measures.len()
    ))
}

/// Sum of projectors over eigenvalue clusters closer than `gap`.
fn cluster_projectors(
    values: &[f64],
    vectors: &[Vec<Complex64>],
    gap: f64,
) -> Vec<(usize, CMatrix)> {
    let mut out = Vec::new();
    let mut start = 0;
    while start < values.len() {
        let mut end = start + 1;
        while end < values.len() && values[end - 1] - values[end] < gap {
            end += 1;
        }
        let mut proj = CMatrix::zeros(3).unwrap();
        for v in &vectors[start..end] {
            proj = &proj + &CMatrix::projector(v).unwrap();
        }
        out.push((start, proj));
        start = end;
    }
    out
}

fn criterion_6() -> Outcome {
    let (mut sum_dev, mut val_dev) = (0.0f64, 0.0f64);
    for p in p_grid(GRID) {
        for theta in theta_grid(GRID) {
            let closed = channel_eigen_closed_form(p, theta).map_err(|e| e.to_string())?;
            let numeric = eig_hermitian(&spin_one(p, theta)).map_err(|e| e.to_string())?;
            sum_dev = sum_dev
                .max((closed.lambdas.iter().sum::<f64>() - 1.0).abs())
                .max((numeric.values.iter().sum::<f64>() - 1.0).abs());
            for (a, b) in closed.lambdas.iter().zip(&numeric.values) {
                val_dev = val_dev.max((a - b).abs());
            }
        }
    }
    check(sum_dev <= 1e-12, || {
        format!("eigenvalue sum deviates by {sum_dev:e}")
    })?;
    check(val_dev <= 1e-10, || {
        format!("closed-form vs numerical eigenvalues differ by {val_dev:e}")
    })?;

    let corner = channel_eigen_closed_form(1.0, 0.0).map_err(|e| e.to_string())?;
    let corner_num = eig_hermitian(&spin_one(1.0, 0.0)).map_err(|e| e.to_string())?;
    for (got, want) in corner
        .lambdas
        .iter()
        .chain(&corner_num.values)
        .zip([1.0, 0.0, 0.0, 1.0, 0.0, 0.0])
    {
        check((got - want).abs() <= 1e-12, || {
            format!("p = 1, θ = 0 spectrum {:?}", corner.lambdas)
        })?;
    }
    let top = corner.vectors[corner.index_of(corner.labels[0])];
    check(
        distance_up_to_phase(&top, &[c64(1.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0)]) < 1e-12,
        || "p = 1, θ = 0 top eigenvector is not |1,+1>".into(),
    )?;

    let mut vec_dev = 0.0f64;
    for p in p_grid(51) {
        for theta in theta_grid(51) {
            let closed = channel_eigen_closed_form(p, theta).map_err(|e| e.to_string())?;
            let numeric = eig_hermitian(&spin_one(p, theta)).map_err(|e| e.to_string())?;
            let num_vecs: Vec<Vec<Complex64>> = numeric
                .vectors
                .iter()
                .map(|v| v.iter().copied().collect())
                .collect();
            let cf_vecs: Vec<Vec<Complex64>> = closed.vectors.iter().map(|v| v.to_vec()).collect();
            let a = cluster_projectors(&numeric.values, &num_vecs, 1e-6);
            let b = cluster_projectors(&numeric.values, &cf_vecs, 1e-6);
            for ((_, pa), (_, pb)) in a.iter().zip(&b) {
                vec_dev = vec_dev.max(pa.max_abs_diff(pb));
            }
        }
    }
    check(vec_dev <= 1e-9, || {
        format!("eigenprojector deviation {vec_dev:e}")
    })?;
    Ok(format!(
        "|Σλ - 1| <= {sum_dev:.1e}, eigenvalue deviation {val_dev:.1e}, eigenprojector deviation {vec_dev:.1e}"
    ))
}

fn criterion_7() -> Outcome {
    let mut r = rng(7);
    let mut round_trip = 0.0f64;
    for _ in 0..1000 {
        let psi = common::random_state(&mut r, 3);
        let pts = stellar_points(&psi).map_err(|e| e.to_string())?;
        round_trip = round_trip.max(distance_up_to_phase(&psi, &state_from_points(&pts)));
    }
    check(round_trip <= 1e-9, || {
        format!("round-trip error {round_trip:e}")
    })?;

    let (mut plane1, mut plane2, mut angle_dev, mut valid) = (0.0f64, 0.0f64, 0.0f64, 0usize);
    let psi3 = [c64(0.0, 0.0), c64(1.0, 0.0), c64(0.0, 0.0)];
    for p in p_grid(GRID) {
        for theta in theta_grid(GRID) {
            let sys = channel_eigen_closed_form(p, theta).map_err(|e| e.to_string())?;
            check(sys.by_label(3).1 == &psi3, || {
                format!("|ψ3> differs from |1,0> at ({p}, {theta})")
            })?;
            if p * theta.sin() == 0.0 {
                continue;
            }
            valid += 1;
            for (label, plane) in [(1u8, &mut plane1), (2u8, &mut plane2)] {
                let pts = stellar_points(sys.by_label(label).1).map_err(|e| e.to_string())?;
                for pt in &pts {
                    let off = if label == 1 {
                        pt.beta.sin()
                    } else {
                        pt.beta.cos()
                    };
                    *plane = plane.max(off.abs());
                }
                let formula = channel_spinor_angles(p, theta, label).map_err(|e| e.to_string())?;
                for a in &pts {
                    let nearest = formula
                        .iter()
                        .map(|b| (a.cartesian() - b.cartesian()).norm())
                        .fold(f64::INFINITY, f64::min);
                    angle_dev = angle_dev.max(nearest);
                }
            }
        }
    }
    check(plane1 < 1e-10, || {
        format!("|ψ1> points leave the x0-z0 plane: |sin β| = {plane1:e}")
    })?;
    check(plane2 < 1e-10, || {
        format!("|ψ2> points leave the y0-z0 plane: |cos β| = {plane2:e}")
    })?;
    check(angle_dev < 1e-8, || {
        format!("root-finder and spinor-angle formula differ by {angle_dev:e}")
    })?;

    let pts3 = stellar_points(&psi3).map_err(|e| e.to_string())?;
    check(pts3 == vec![BlochPoint::NORTH, BlochPoint::SOUTH], || {
        format!("|ψ3> points {pts3:?}")
    })?;
    let numeric = constellation(&spin_one(0.6, 0.8)).map_err(|e| e.to_string())?;
    let entry3 = numeric
        .entries
        .iter()
        .find(|e| e.state[1].norm() > 0.5)
        .ok_or("no |1,0> eigenvector in numerical constellation")?;
    let pole_dev = (entry3.points[0].cartesian() - BlochPoint::NORTH.cartesian()).norm()
        + (entry3.points[1].cartesian() - BlochPoint::SOUTH.cartesian()).norm();
    check(pole_dev < 1e-10, || {
        format!("numerical |ψ3> points off the poles by {pole_dev:e}")
    })?;
    Ok(format!(
        "round trip <= {round_trip:.1e}; {valid} grid points, |sin β1| <= {plane1:.1e}, |cos β2| <= {plane2:.1e}; ψ3 = (north, south)"
    ))
}

fn criterion_8() -> Outcome {
    let mut r = rng(8);
    let mut worst = f64::INFINITY;
    for _ in 0..1000 {
        let parts = r.gen_range(1..=6);
        let weights: Vec<f64> = (0..parts).map(|_| r.gen_range(0.0..1.0)).collect();
        let total: f64 = weights.iter().sum();
        let mut rho = CMatrix::zeros(4).unwrap();
        for w in weights {
            let p = r.gen_range(0.0..=1.0);
            let v = PolarizationVector::from_vec3(unit_vector(&mut r) * p)
                .map_err(|e| e.to_string())?;
            let cfg = ChannelConfig::new(v, v);
            let rho1 = triplet_projection(&product_state(&cfg))
                .map_err(|e| e.to_string())?
                .rho1;
            let part = symmetric_embedding(&rho1).map_err(|e| e.to_string())?;
            rho = &rho + &part.scale(c64(w / total, 0.0));
        }
        let min = covariance_matrix(&rho)
            .map_err(|e| e.to_string())?
            .min_eigenvalue();
        worst = worst.min(min);
    }
    check(worst >= -1e-10, || {
        format!("covariance min eigenvalue {worst:e} < -1e-10")
    })?;
    Ok(format!(
        "1000 mixtures, smallest covariance eigenvalue {worst:.2e}"
    ))
}

fn run_cli(args: &[&str], out: &Path) -> Result<Vec<u8>, String> {
    let status = Command::new(env!("CARGO_BIN_EXE_channel-spin"))
        .args(args)
        .arg("--out")
        .arg(out)
        .status()
        .map_err(|e| e.to_string())?;
    check(status.success(), || {
        format!("{args:?} exited with {status}")
    })?;
    std::fs::read(out).map_err(|e| e.to_string())
}

fn criterion_9() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let golden_dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let cases: [(&[&str], &str); 5] = [
        (&["sweep", "--steps", "21", "--validate"], "sweep.header"),
        (&["figure", "1"], "figure1.header"),
        (&["figure", "2"], "figure2.header"),
        (&["figure", "3"], "figure3.header"),
        (&["figure", "4"], "figure4.header"),
    ];
    for (i, (args, golden)) in cases.iter().enumerate() {
        let a = run_cli(args, &dir.path().join(format!("{i}a")))?;
        let b = run_cli(args, &dir.path().join(format!("{i}b")))?;
        check(a == b, || format!("{args:?} output differs between runs"))?;
        let header = String::from_utf8_lossy(&a)
            .lines()
            .next()
            .unwrap_or_default()
            .to_string()
            + "\n";
        let want = std::fs::read_to_string(golden_dir.join(golden)).map_err(|e| e.to_string())?;
        check(header == want, || {
            format!("{args:?} header {header:?} != golden {want:?}")
        })?;
    }
    Ok(format!(
        "{} commands byte-identical across runs, headers match golden files",
        cases.len()
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("closed-form tensors match first principles", criterion_1),
        ("covariance canonical form", criterion_2),
        ("covariance and PPT criteria agree", criterion_3),
        ("Cxx zero crossing at θ = π/4", criterion_4),
        ("entangled θ intervals", criterion_5),
        ("eigen-system identity", criterion_6),
        ("Majorana properties", criterion_7),
        ("separable mixtures have PSD covariance", criterion_8),
        ("CLI determinism and schema", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} PASS  {name}: {detail} [{secs:.2}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} FAIL  {name}: {detail} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
