//! Valley current sums and longitudinal magnetoresistance.
//!
//! With E and H both along the symmetric axis every valley sees the same
//! angle, the first-order (Hall) currents cancel in the sum, and the leading
//! field effect is the second-order addition
//!
//! ```text
//! dJ2 = e (n/4) sum_valleys z.u2 = -(2/9) e n a b^2 H^2 E / c^2
//! dJ2 / J0 = -(2/3) (e^2 tau_perp / (m_perp c^2)) (tau_par/m_par - tau_perp/m_perp)^2 H^2
//!            / (tau_par/m_par + 2 tau_perp/m_perp)
//! ```
//!
//! The valley sum is the ground truth for this coefficient. The closed form
//! above is what that sum reduces to; a frequently quoted variant of the
//! same expression carries 1/3 in place of 2/3 (equivalently 1/9 in place
//! of 2/9 in dJ2) and so predicts half the effect. In the limit
//! `m_par >> m_perp` the ratio tends to `-(omega tau)^2 / 3`.
//!
//! Currents are in statampere/cm^2 with `e > 0`, so `J0 >= 0` and the
//! magnetoresistive addition `dJ2` is reported as a signed, non-positive
//! number.

use nalgebra::Vector3;

use crate::drift::{drift_exact, drift_first_order, drift_second_order, drift_zero_order};
use crate::error::{Error, Result};
use crate::geometry::{symmetric_axis, ValleyFrame};
use crate::units::{dimensionless_hall_parameter, FieldPoint, MaterialParams, PhysConstants};

/// Transverse field components tolerated before a field point stops
/// counting as longitudinal, relative to the field magnitude.
pub const ALIGNMENT_TOLERANCE: f64 = 1e-12;

/// Bound on |J1_total| / J0 in the longitudinal configuration.
pub const HALL_CANCELLATION_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurrentReport {
    /// Zero-field current density along the field axis.
    pub j0: f64,
    /// Sum of first-order (Hall) valley currents.
    pub j1_total: Vector3<f64>,
    /// Second-order current addition along the field axis (<= 0).
    pub dj2: f64,
    /// dj2 / j0 from the valley sum.
    pub ratio: f64,
    /// Closed-form prediction of `ratio`.
    pub ratio_analytic: f64,
    /// Large mass-anisotropy limit, `-(omega tau)^2 / 3`.
    pub ratio_simplified: f64,
    /// Field-axis current from the exact per-valley solve.
    pub j_exact: f64,
    /// (j_exact - j0) / j0, all orders in H.
    pub ratio_exact: f64,
    pub omega_tau: f64,
    /// Any valley outside the weak-field regime.
    pub weak_field_violated: bool,
}

impl CurrentReport {
    /// Describes every violated report invariant; empty when all hold.
    pub fn invariant_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !(self.dj2 <= 0.0) {
            out.push(format!("dJ2 = {:e} is not <= 0", self.dj2));
        }
        if !(self.ratio <= 0.0) {
            out.push(format!("ratio = {:e} is not <= 0", self.ratio));
        }
        let hall = self.j1_total.norm();
        if !(hall <= HALL_CANCELLATION_TOLERANCE * self.j0.abs()) {
            out.push(format!(
                "Hall sum {hall:e} exceeds {HALL_CANCELLATION_TOLERANCE:e} x J0 = {:e}",
                self.j0
            ));
        }
        out
    }
}

/// e (n / n_valleys) u.
pub fn valley_current(
    u: &Vector3<f64>,
    params: &MaterialParams,
    consts: &PhysConstants,
) -> Vector3<f64> {
    u * (consts.e_charge() * params.n_per_valley())
}

/// J0 = (e^2 n / 3)(tau_par/m_par + 2 tau_perp/m_perp) E.
pub fn baseline_current(e_mag: f64, params: &MaterialParams, consts: &PhysConstants) -> f64 {
    let e = consts.e_charge();
    e * e * params.n_total() / 3.0
        * (params.tau_par() / params.m_par() + 2.0 * params.tau_perp() / params.m_perp())
        * e_mag
}

/// Sum of the first-order valley currents.
pub fn hall_sum(
    fields: &FieldPoint,
    valleys: &[ValleyFrame],
    params: &MaterialParams,
    consts: &PhysConstants,
) -> Vector3<f64> {
    valleys
        .iter()
        .map(|v| {
            valley_current(
                &drift_first_order(fields, v, params, consts),
                params,
                consts,
            )
        })
        .sum()
}

fn is_along_symmetric_axis(v: &Vector3<f64>) -> bool {
    let transverse = (v.x * v.x + v.y * v.y).sqrt();
    transverse <= ALIGNMENT_TOLERANCE * v.norm()
}

/// Unit vector along E, which must be (anti)parallel to the symmetric axis
/// together with H. Zero fields count as aligned.
fn field_axis(fields: &FieldPoint) -> Result<Vector3<f64>> {
    if !is_along_symmetric_axis(&fields.e) || !is_along_symmetric_axis(&fields.h) {
        return Err(Error::MisalignedFields);
    }
    Ok(if fields.e.z < 0.0 {
        -symmetric_axis()
    } else {
        symmetric_axis()
    })
}

fn check_valley_count(valleys: &[ValleyFrame], params: &MaterialParams) -> Result<()> {
    if valleys.len() != params.n_valleys() {
        return Err(Error::InvalidInput(format!(
            "{} valley frames supplied for a material with {} valleys",
            valleys.len(),
            params.n_valleys()
        )));
    }
    Ok(())
}

/// Second-order current addition along E, from the valley sum of `u2`.
pub fn delta_j2_numeric(
    fields: &FieldPoint,
    valleys: &[ValleyFrame],
    params: &MaterialParams,
    consts: &PhysConstants,
) -> Result<f64> {
    let axis = field_axis(fields)?;
    check_valley_count(valleys, params)?;
    let total: Vector3<f64> = valleys
        .iter()
        .map(|v| {
            valley_current(
                &drift_second_order(fields, v, params, consts),
                params,
                consts,
            )
        })
        .sum();
    Ok(axis.dot(&total))
}

/// Closed form of dJ2/J0 for E || H || symmetric axis.
pub fn delta_j2_analytic(params: &MaterialParams, consts: &PhysConstants, h_mag: f64) -> f64 {
    let e = consts.e_charge();
    let c = consts.c_light();
    let perp = params.tau_perp() / params.m_perp();
    let par = params.tau_par() / params.m_par();
    let diff = par - perp;
    -(2.0 / 3.0) * (e * e * perp / (c * c)) * diff * diff * h_mag * h_mag / (par + 2.0 * perp)
}

/// -(omega tau)^2 / 3, the `m_par / m_perp -> infinity` limit of
/// [`delta_j2_analytic`].
pub fn delta_j2_simplified(params: &MaterialParams, consts: &PhysConstants, h_mag: f64) -> f64 {
    let wt = dimensionless_hall_parameter(params, consts, h_mag);
    -wt * wt / 3.0
}

pub fn magnetoresistance_ratio(
    fields: &FieldPoint,
    valleys: &[ValleyFrame],
    params: &MaterialParams,
    consts: &PhysConstants,
) -> Result<CurrentReport> {
    let axis = field_axis(fields)?;
    check_valley_count(valleys, params)?;
    let h_mag = fields.h.norm();
    let e_mag = fields.e.norm();

    let j0 = baseline_current(e_mag, params, consts);
    let j1_total = hall_sum(fields, valleys, params, consts);
    let dj2 = delta_j2_numeric(fields, valleys, params, consts)?;
    let mut j_exact = 0.0;
    let fastest = params
        .mobility_perp(consts)
        .max(params.mobility_par(consts));
    for v in valleys {
        let u = drift_exact(fields, v, params, consts)?;
        j_exact += axis.dot(&valley_current(&u, params, consts));
    }

    let (ratio, ratio_exact) = if j0 > 0.0 {
        (dj2 / j0, (j_exact - j0) / j0)
    } else {
        // Zero drive: the ratios are properties of the material and H alone,
        // so evaluate them at unit field and concentration.
        let unit_params = params.with_n_total(1.0)?;
        let unit_fields = FieldPoint::longitudinal(1.0, axis.z * fields.h.z)?;
        let unit = magnetoresistance_ratio(&unit_fields, valleys, &unit_params, consts)?;
        (unit.ratio, unit.ratio_exact)
    };

    Ok(CurrentReport {
        j0,
        j1_total,
        dj2,
        ratio,
        ratio_analytic: delta_j2_analytic(params, consts, h_mag),
        ratio_simplified: delta_j2_simplified(params, consts, h_mag),
        j_exact,
        ratio_exact,
        omega_tau: dimensionless_hall_parameter(params, consts, h_mag),
        weak_field_violated: fastest * h_mag / consts.c_light() > 1.0,
    })
}

/// Valley sum of the zero-order currents, projected on the symmetric axis.
pub fn valley_sum_baseline(
    e_mag: f64,
    valleys: &[ValleyFrame],
    params: &MaterialParams,
    consts: &PhysConstants,
) -> Result<f64> {
    let fields = FieldPoint::longitudinal(e_mag, 0.0)?;
    Ok(valleys
        .iter()
        .map(|v| {
            symmetric_axis().dot(&valley_current(
                &drift_zero_order(&fields, v, params, consts),
                params,
                consts,
            ))
        })
        .sum())
}
