//! Per-valley momentum balance.
//!
//! In the principal axes of a valley the drift velocity `u` obeys
//!
//! ```text
//! e (E + u x H / c) = M u,    M = diag(m_perp/tau_perp, m_perp/tau_perp, m_par/tau_par)
//! ```
//!
//! so `u = K E + K (u x H) / c` with the valley mobility tensor
//! `K = e M^-1 = a I + b i i^T`, `a = e tau_perp/m_perp`,
//! `b = e (tau_par/m_par - tau_perp/m_perp)` and `i` the valley axis.
//!
//! [`drift_exact`] solves the 3x3 system in valley axes. The weak-field
//! series `u = u0 + u1 + u2 + ...` with `u_{k+1} = K (u_k x H) / c` is
//! evaluated separately from closed lab-frame vector identities, so the two
//! routes share nothing beyond the material parameters.

use nalgebra::{Matrix3, Vector3};

use crate::error::{Error, Result};
use crate::geometry::{from_valley_frame, to_valley_frame, ValleyFrame};
use crate::units::{dimensionless_hall_parameter, FieldPoint, MaterialParams, PhysConstants};

/// Relative truncation error of `u0 + u1 + u2` is at most
/// `SERIES_ERROR_CONSTANT * s^3` while the series parameter `s <= 1/3`.
///
/// With `T v = K (v x H)/c` and `s >= ||T||`, the remainder is bounded by
/// `s^3 |u0| / (1 - s)` and `|u0| <= (1 + s) |u|`, giving
/// `s^3 (1 + s)/(1 - s) <= 2 s^3` on that interval.
pub const SERIES_ERROR_CONSTANT: f64 = 2.0;

/// Momentum components in valley principal axes (g cm/s).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Momentum {
    pub p_t1: f64,
    pub p_t2: f64,
    pub p_par: f64,
}

/// Ellipsoidal dispersion (p_t1^2 + p_t2^2)/(2 m_perp) + p_par^2/(2 m_par), in erg.
pub fn kinetic_energy(p: &Momentum, params: &MaterialParams) -> f64 {
    (p.p_t1 * p.p_t1 + p.p_t2 * p.p_t2) / (2.0 * params.m_perp())
        + p.p_par * p.p_par / (2.0 * params.m_par())
}

/// Drift velocity of one valley: exact solution and weak-field series terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriftExpansion {
    pub valley_index: usize,
    pub u0: Vector3<f64>,
    pub u1: Vector3<f64>,
    pub u2: Vector3<f64>,
    pub u_exact: Vector3<f64>,
    /// e |H| tau_perp / (m_perp c).
    pub omega_tau: f64,
    /// |H| max(e tau_perp/m_perp, e tau_par/m_par) / c, an upper bound on the
    /// norm of one series step. Equals `omega_tau` when the transverse
    /// mobility dominates, as in n-Ge.
    pub series_parameter: f64,
    /// Set when `series_parameter > 1`: the weak-field reading of the series
    /// no longer holds, although `u_exact` remains valid.
    pub weak_field_violated: bool,
}

impl DriftExpansion {
    pub fn series_sum(&self) -> Vector3<f64> {
        self.u0 + self.u1 + self.u2
    }

    /// |u0 + u1 + u2 - u_exact| / |u_exact|, zero when both vanish.
    pub fn truncation_error(&self) -> f64 {
        let diff = (self.series_sum() - self.u_exact).norm();
        let scale = self.u_exact.norm();
        if scale == 0.0 {
            diff
        } else {
            diff / scale
        }
    }
}

struct Mobility {
    a: f64,
    b: f64,
}

impl Mobility {
    fn of(params: &MaterialParams, consts: &PhysConstants) -> Self {
        Mobility {
            a: params.mobility_perp(consts),
            b: params.mobility_anisotropy(consts),
        }
    }
}

/// u0 = a E + b (i.E) i.
pub fn drift_zero_order(
    fields: &FieldPoint,
    frame: &ValleyFrame,
    params: &MaterialParams,
    consts: &PhysConstants,
) -> Vector3<f64> {
    let Mobility { a, b } = Mobility::of(params, consts);
    let i = frame.axis();
    fields.e * a + i * (b * i.dot(&fields.e))
}

/// Term linear in H:
///
/// ```text
/// u1 = (a/c) [ a (E x H) + b (i.E)(i x H) + b (i.(E x H)) i ]
/// ```
///
/// For E parallel to H only the middle term survives.
pub fn drift_first_order(
    fields: &FieldPoint,
    frame: &ValleyFrame,
    params: &MaterialParams,
    consts: &PhysConstants,
) -> Vector3<f64> {
    let Mobility { a, b } = Mobility::of(params, consts);
    let c = consts.c_light();
    let (e, h, i) = (fields.e, fields.h, frame.axis());
    let exh = e.cross(&h);
    (exh * a + i.cross(&h) * (b * i.dot(&e)) + i * (b * i.dot(&exh))) * (a / c)
}

/// Term quadratic in H, obtained by pushing `u1` once more through the
/// Lorentz term:
///
/// ```text
/// u1 x H = (a/c) [ a ((E x H) x H) + b (i.E)((i x H) x H) + b (i.(E x H)) (i x H) ]
/// u2     = (1/c) [ a (u1 x H) + b (i.(u1 x H)) i ]
/// ```
///
/// With E parallel to H this splits into a transverse part
/// `a^2 b (i.E)(i.H) (H - i (i.H)) / c^2` and a longitudinal part
/// `-a b (a + b) (i.E)(H^2 - (i.H)^2) i / c^2`. The double cross products
/// are kept as such rather than expanded: they vanish exactly for parallel
/// vectors and avoid cancellation between the two parts.
pub fn drift_second_order(
    fields: &FieldPoint,
    frame: &ValleyFrame,
    params: &MaterialParams,
    consts: &PhysConstants,
) -> Vector3<f64> {
    let Mobility { a, b } = Mobility::of(params, consts);
    let c = consts.c_light();
    let (e, h, i) = (fields.e, fields.h, frame.axis());
    let exh = e.cross(&h);
    let ixh = i.cross(&h);
    let exh_xh = exh.cross(&h);
    let ixh_xh = ixh.cross(&h);
    let ie = i.dot(&e);

    let u1xh = (exh_xh * a + ixh_xh * (b * ie) + ixh * (b * i.dot(&exh))) * (a / c);
    // i.(i x H) = 0, so the last term drops from the projection.
    let i_u1xh = (a / c) * (a * i.dot(&exh_xh) + b * ie * i.dot(&ixh_xh));

    (u1xh * a + i * (b * i_u1xh)) / c
}

/// Direct solve of the momentum balance in valley axes.
pub fn drift_exact(
    fields: &FieldPoint,
    frame: &ValleyFrame,
    params: &MaterialParams,
    consts: &PhysConstants,
) -> Result<Vector3<f64>> {
    let e_charge = consts.e_charge();
    let c = consts.c_light();
    let ev = to_valley_frame(&fields.e, frame);
    let hv = to_valley_frame(&fields.h, frame);

    // Rows divided by the friction coefficients m/tau, which keeps the
    // system well conditioned for strongly anisotropic valleys.
    let mobility = Vector3::new(
        e_charge * params.tau_perp() / params.m_perp(),
        e_charge * params.tau_perp() / params.m_perp(),
        e_charge * params.tau_par() / params.m_par(),
    );
    // cross_h * u == u x H
    #[rustfmt::skip]
    let cross_h = Matrix3::new(
        0.0,   hv.z, -hv.y,
        -hv.z, 0.0,   hv.x,
        hv.y, -hv.x,  0.0,
    );
    let system = Matrix3::identity() - Matrix3::from_diagonal(&mobility) * cross_h / c;
    let rhs = ev.component_mul(&mobility);
    let singular = || Error::Singular {
        valley: frame.valley_index(),
    };
    let u = system.lu().solve(&rhs).ok_or_else(singular)?;
    if u.iter().any(|x| !x.is_finite()) {
        return Err(singular());
    }
    Ok(from_valley_frame(&u, frame))
}

pub fn drift_series(
    fields: &FieldPoint,
    frame: &ValleyFrame,
    params: &MaterialParams,
    consts: &PhysConstants,
) -> Result<DriftExpansion> {
    let h_mag = fields.h.norm();
    let omega_tau = dimensionless_hall_parameter(params, consts, h_mag);
    let fastest = params
        .mobility_perp(consts)
        .max(params.mobility_par(consts));
    let series_parameter = fastest * h_mag / consts.c_light();
    Ok(DriftExpansion {
        valley_index: frame.valley_index(),
        u0: drift_zero_order(fields, frame, params, consts),
        u1: drift_first_order(fields, frame, params, consts),
        u2: drift_second_order(fields, frame, params, consts),
        u_exact: drift_exact(fields, frame, params, consts)?,
        omega_tau,
        series_parameter,
        weak_field_violated: series_parameter > 1.0,
    })
}
