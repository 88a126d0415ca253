//! Self-check of the model invariants for one material, used by `mvt validate`.

use crate::current::{
    baseline_current, delta_j2_analytic, delta_j2_numeric, hall_sum, magnetoresistance_ratio,
    valley_sum_baseline, HALL_CANCELLATION_TOLERANCE,
};
use crate::drift::{drift_series, SERIES_ERROR_CONSTANT};
use crate::error::Result;
use crate::geometry::{standard_ge_valleys, ValleyFrame};
use crate::units::{FieldPoint, MaterialParams, PhysConstants};

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, passed: bool, detail: String) -> Check {
    Check {
        name,
        passed,
        detail,
    }
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / b.abs().max(a.abs())
    }
}

/// Worst relative series truncation error over the valleys, with the
/// series parameter.
fn series_error(
    fields: &FieldPoint,
    valleys: &[ValleyFrame],
    params: &MaterialParams,
) -> Result<(f64, f64)> {
    let consts = PhysConstants::GAUSSIAN;
    let mut worst = 0.0f64;
    let mut s = 0.0f64;
    for v in valleys {
        let d = drift_series(fields, v, params, &consts)?;
        worst = worst.max(d.truncation_error());
        s = d.series_parameter;
    }
    Ok((worst, s))
}

/// Runs every invariant at electric field `e_statvolt` and magnetic field
/// `h_oe` (both along the symmetric axis).
pub fn run_invariant_suite(
    params: &MaterialParams,
    e_statvolt: f64,
    h_oe: f64,
) -> Result<Vec<Check>> {
    let consts = PhysConstants::GAUSSIAN;
    let valleys = standard_ge_valleys();
    let fields = FieldPoint::longitudinal(e_statvolt, h_oe)?;
    let mut out = Vec::new();

    let j0 = baseline_current(e_statvolt, params, &consts);
    let summed = valley_sum_baseline(e_statvolt, &valleys, params, &consts)?;
    let d = rel(summed, j0);
    out.push(check(
        "baseline current equals valley sum",
        d <= 1e-12,
        format!("rel diff {d:.2e}"),
    ));

    let hall = hall_sum(&fields, &valleys, params, &consts).norm();
    out.push(check(
        "Hall currents cancel",
        hall <= HALL_CANCELLATION_TOLERANCE * j0,
        format!(
            "|J1| / J0 = {:.2e}",
            if j0 > 0.0 { hall / j0 } else { hall }
        ),
    ));

    let report = magnetoresistance_ratio(&fields, &valleys, params, &consts)?;
    out.push(check(
        "second-order addition is non-positive",
        report.dj2 <= 0.0 && report.ratio <= 0.0,
        format!("dJ2/J0 = {:.6e}", report.ratio),
    ));

    let d = rel(report.ratio, report.ratio_analytic);
    out.push(check(
        "valley sum matches closed form",
        d <= 1e-10,
        format!("rel diff {d:.2e}"),
    ));

    let doubled =
        magnetoresistance_ratio(&fields.with_h(fields.h * 2.0), &valleys, params, &consts)?;
    let scale = if report.ratio != 0.0 {
        doubled.ratio / report.ratio
    } else {
        4.0
    };
    out.push(check(
        "ratio quadratic in H",
        (scale - 4.0).abs() <= 4e-8,
        format!("ratio(2H)/ratio(H) = {scale:.12}"),
    ));

    let rotated: Vec<ValleyFrame> = valleys
        .iter()
        .map(|v| v.rotated_transverse(0.731))
        .collect();
    let r2 = magnetoresistance_ratio(&fields, &rotated, params, &consts)?;
    let d = rel(r2.ratio, report.ratio).max(rel(r2.j_exact, report.j_exact));
    out.push(check(
        "transverse frame rotation invariance",
        d <= 1e-10,
        format!("rel diff {d:.2e}"),
    ));

    let iso = MaterialParams::new(
        params.m_perp(),
        params.m_perp(),
        params.tau_perp(),
        params.tau_perp(),
        params.n_total(),
        params.n_valleys(),
    )?;
    let dj_iso = delta_j2_numeric(&fields, &valleys, &iso, &consts)?;
    out.push(check(
        "isotropic band has no longitudinal response",
        dj_iso == 0.0 && delta_j2_analytic(&iso, &consts, h_oe) == 0.0,
        format!("dJ2 = {dj_iso:e}"),
    ));

    // Series against the direct solve, at a field small enough for the
    // cubic law to be clean.
    let fastest = params
        .mobility_perp(&consts)
        .max(params.mobility_par(&consts));
    let h_small = 0.05 * consts.c_light() / fastest;
    let probe = FieldPoint::longitudinal(e_statvolt.max(1e-3), h_small)?;
    let (err, s) = series_error(&probe, &valleys, params)?;
    let (err_half, _) = series_error(&probe.with_h(probe.h * 0.5), &valleys, params)?;
    let bound = SERIES_ERROR_CONSTANT * s.powi(3);
    out.push(check(
        "series truncation within C s^3",
        err <= bound,
        format!("error {err:.3e}, bound {bound:.3e} at s = {s:.3}"),
    ));
    if err <= 1e-13 && err_half <= 1e-13 {
        out.push(check(
            "series error cubic under H halving",
            true,
            format!("series exact to round-off ({err:.1e})"),
        ));
    } else {
        let shrink = err / err_half;
        out.push(check(
            "series error cubic under H halving",
            (6.0..=10.0).contains(&shrink),
            format!("shrink factor {shrink:.3}"),
        ));
    }

    Ok(out)
}
