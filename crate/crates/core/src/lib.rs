//! Drift magnetotransport in many-valley semiconductors.
//!
//! Each valley is an ellipsoid with transverse and longitudinal effective
//! masses and relaxation times. Its drift velocity follows from a momentum
//! balance with the Lorentz force, solved either exactly or as a series in
//! the magnetic field. Summing valley currents with E and H along the
//! direction symmetric to all valleys gives the longitudinal
//! magnetoresistance, which is non-zero only because the mass anisotropy
//! tilts each valley's drift away from E.
//!
//! All quantities are Gaussian CGS; see [`units`].

// `!(x <= y)` is used on purpose so NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod current;
pub mod data;
pub mod drift;
pub mod emit;
pub mod error;
pub mod geometry;
pub mod sweep;
pub mod units;
pub mod validate;

pub use current::{
    baseline_current, delta_j2_analytic, delta_j2_numeric, delta_j2_simplified, hall_sum,
    magnetoresistance_ratio, valley_current, CurrentReport,
};
pub use data::{interpolate_concentration, load_concentration_table, ConcentrationTable};
pub use drift::{
    drift_exact, drift_first_order, drift_second_order, drift_series, drift_zero_order,
    kinetic_energy, DriftExpansion, Momentum,
};
pub use error::{Error, Result};
pub use geometry::{from_valley_frame, standard_ge_valleys, to_valley_frame, ValleyFrame};
pub use sweep::{reconstruct_iv, sweep_magnetoresistance, IvRow, SweepRow, SweepSpec};
pub use units::{
    dimensionless_hall_parameter, volts_per_cm_to_statvolt, FieldPoint, MaterialParams,
    PhysConstants,
};
