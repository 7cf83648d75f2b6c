//! Clebsch–Gordan coefficients by the Racah closed form, Condon–Shortley
//! phases. Angular momenta are restricted to `j <= 2`.

use crate::error::{Error, Result};

/// Largest angular momentum accepted by [`clebsch_gordan`].
pub const MAX_J: f64 = 2.0;

fn doubled(x: f64, what: &str) -> Result<i64> {
    let d = (2.0 * x).round();
    if (2.0 * x - d).abs() > 1e-9 {
        return Err(Error::Coupling(format!(
            "{what} = {x} is not a half-integer"
        )));
    }
    Ok(d as i64)
}

fn factorial(n: i64) -> f64 {
    debug_assert!(n >= 0);
    (1..=n).map(|k| k as f64).product()
}

/// Checks that `(j, m)` is a valid angular momentum pair (both doubled).
fn check_projection(tj: i64, tm: i64, name: &str) -> Result<()> {
    if tj < 0 || tj > (2.0 * MAX_J) as i64 {
        return Err(Error::Coupling(format!(
            "{name} = {} outside supported range 0..={MAX_J}",
            tj as f64 / 2.0
        )));
    }
    if tm.abs() > tj || (tj - tm) % 2 != 0 {
        return Err(Error::Coupling(format!(
            "projection {} invalid for {name} = {}",
            tm as f64 / 2.0,
            tj as f64 / 2.0
        )));
    }
    Ok(())
}

/// `<j1 m1; j2 m2 | J M>`.
///
/// Returns zero when `M != m1 + m2`. Couplings that violate the triangle rule,
/// mix integer and half-integer totals, or exceed `j = 2` are domain errors.
pub fn clebsch_gordan(j1: f64, m1: f64, j2: f64, m2: f64, j: f64, m: f64) -> Result<f64> {
    let (tj1, tm1) = (doubled(j1, "j1")?, doubled(m1, "m1")?);
    let (tj2, tm2) = (doubled(j2, "j2")?, doubled(m2, "m2")?);
    let (tj, tm) = (doubled(j, "J")?, doubled(m, "M")?);
    check_projection(tj1, tm1, "j1")?;
    check_projection(tj2, tm2, "j2")?;
    check_projection(tj, tm, "J")?;
    if tj < (tj1 - tj2).abs() || tj > tj1 + tj2 || (tj1 + tj2 + tj) % 2 != 0 {
        return Err(Error::Coupling(format!(
            "({j1} x {j2} -> {j}) violates the triangle rule"
        )));
    }
    if tm != tm1 + tm2 {
        return Ok(0.0);
    }

    // All combinations below are integers because of the checks above.
    let (a, b, c) = (
        (tj1 + tj2 - tj) / 2,
        (tj1 - tj2 + tj) / 2,
        (-tj1 + tj2 + tj) / 2,
    );
    let s = (tj1 + tj2 + tj) / 2 + 1;
    let prefactor = ((tj + 1) as f64 * factorial(a) * factorial(b) * factorial(c) / factorial(s)
        * factorial((tj + tm) / 2)
        * factorial((tj - tm) / 2)
        * factorial((tj1 - tm1) / 2)
        * factorial((tj1 + tm1) / 2)
        * factorial((tj2 - tm2) / 2)
        * factorial((tj2 + tm2) / 2))
    .sqrt();

    let d1 = a;
    let d2 = (tj1 - tm1) / 2;
    let d3 = (tj2 + tm2) / 2;
    let d4 = (tj - tj2 + tm1) / 2;
    let d5 = (tj - tj1 - tm2) / 2;
    let k_min = 0.max(-d4).max(-d5);
    let k_max = d1.min(d2).min(d3);
    let sum: f64 = (k_min..=k_max)
        .map(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sign / (factorial(k)
                * factorial(d1 - k)
                * factorial(d2 - k)
                * factorial(d3 - k)
                * factorial(d4 + k)
                * factorial(d5 + k))
        })
        .sum();
    Ok(prefactor * sum)
}
