//! C ABI over `mvtransport`.
//!
//! Handles are opaque and owned by the caller, who releases them with the
//! matching `_free` function. Every fallible call returns an [`MvtStatus`];
//! on failure a description is available from [`mvt_last_error`] on the same
//! thread until the next failing call. Fields are in Gaussian units unless a
//! name says otherwise.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use mvtransport::{
    drift_series, interpolate_concentration, magnetoresistance_ratio, standard_ge_valleys,
    volts_per_cm_to_statvolt, ConcentrationTable, Error, FieldPoint, MaterialParams, PhysConstants,
};
use nalgebra::Vector3;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MvtStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    Parse = 3,
    OutOfRange = 4,
    MisalignedFields = 5,
    Singular = 6,
    Io = 7,
    Panic = 8,
}

/// Material parameters.
pub struct MvtParams {
    inner: MaterialParams,
}

/// Concentration against voltage table.
pub struct MvtTable {
    inner: ConcentrationTable,
}

/// Longitudinal magnetoresistance summary at one field point.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct MvtReport {
    pub j0: f64,
    /// Valley-summed first-order current, lab frame.
    pub j1_total: [f64; 3],
    pub dj2: f64,
    pub ratio: f64,
    pub ratio_analytic: f64,
    pub ratio_simplified: f64,
    pub j_exact: f64,
    pub ratio_exact: f64,
    pub omega_tau: f64,
    pub weak_field_violated: bool,
}

/// Drift velocity of one valley, lab frame, cm/s.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct MvtDrift {
    pub u0: [f64; 3],
    pub u1: [f64; 3],
    pub u2: [f64; 3],
    pub u_exact: [f64; 3],
    pub omega_tau: f64,
    pub series_parameter: f64,
    pub weak_field_violated: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> MvtStatus {
    match err {
        Error::InvalidInput(_) | Error::EmptyResults => MvtStatus::InvalidInput,
        Error::Parse { .. } | Error::NotIncreasing { .. } => MvtStatus::Parse,
        Error::OutOfRange { .. } => MvtStatus::OutOfRange,
        Error::MisalignedFields => MvtStatus::MisalignedFields,
        Error::Singular { .. } => MvtStatus::Singular,
        Error::Io { .. } => MvtStatus::Io,
    }
}

enum Fail {
    Null(&'static str),
    Core(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Core(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> MvtStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MvtStatus::Ok,
        Ok(Err(Fail::Null(what))) => {
            set_last_error(format!("null pointer passed as `{what}`"));
            MvtStatus::NullPointer
        }
        Ok(Err(Fail::Core(e))) => {
            set_last_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_last_error("internal panic".to_string());
            MvtStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null(what))
}

unsafe fn out<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or(Fail::Null(what))
}

unsafe fn vec3(p: *const f64, what: &'static str) -> Result<Vector3<f64>, Fail> {
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    let s = std::slice::from_raw_parts(p, 3);
    Ok(Vector3::new(s[0], s[1], s[2]))
}

/// Last error message on this thread, or NULL if none. Valid until the next
/// failing call on the same thread.
#[no_mangle]
pub extern "C" fn mvt_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Converts a field in V/cm to statvolt/cm.
///
/// # Safety
/// `out_statvolt` must be NULL or point to writable memory.
#[no_mangle]
pub unsafe extern "C" fn mvt_volts_per_cm_to_statvolt(
    e_vpcm: f64,
    out_statvolt: *mut f64,
) -> MvtStatus {
    guard(|| {
        let dst = out(out_statvolt, "out_statvolt")?;
        *dst = volts_per_cm_to_statvolt(e_vpcm)?;
        Ok(())
    })
}

/// New handle holding the default n-Ge parameters.
#[no_mangle]
pub extern "C" fn mvt_params_new_ge() -> *mut MvtParams {
    Box::into_raw(Box::new(MvtParams {
        inner: MaterialParams::n_ge(),
    }))
}

/// Validated parameters in grams, seconds and cm^-3.
///
/// # Safety
/// `out_params` must be NULL or point to writable memory. On success it
/// receives a handle to release with [`mvt_params_free`].
#[no_mangle]
pub unsafe extern "C" fn mvt_params_new(
    m_perp_g: f64,
    m_par_g: f64,
    tau_perp_s: f64,
    tau_par_s: f64,
    n_total_cm3: f64,
    n_valleys: usize,
    out_params: *mut *mut MvtParams,
) -> MvtStatus {
    guard(|| {
        let dst = out(out_params, "out_params")?;
        let inner = MaterialParams::new(
            m_perp_g,
            m_par_g,
            tau_perp_s,
            tau_par_s,
            n_total_cm3,
            n_valleys,
        )?;
        *dst = Box::into_raw(Box::new(MvtParams { inner }));
        Ok(())
    })
}

/// # Safety
/// `params` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mvt_params_free(params: *mut MvtParams) {
    if !params.is_null() {
        drop(Box::from_raw(params));
    }
}

/// Magnetoresistance with E and H along the symmetric axis (0,0,1).
/// Negative values denote antiparallel fields.
///
/// # Safety
/// `params` must be a live handle and `out_report` writable.
#[no_mangle]
pub unsafe extern "C" fn mvt_magnetoresistance(
    params: *const MvtParams,
    e_statvolt_cm: f64,
    h_oe: f64,
    out_report: *mut MvtReport,
) -> MvtStatus {
    guard(|| {
        let p = &deref(params, "params")?.inner;
        let dst = out(out_report, "out_report")?;
        let fields = FieldPoint::longitudinal(e_statvolt_cm, h_oe)?;
        let r =
            magnetoresistance_ratio(&fields, &standard_ge_valleys(), p, &PhysConstants::GAUSSIAN)?;
        *dst = MvtReport {
            j0: r.j0,
            j1_total: r.j1_total.into(),
            dj2: r.dj2,
            ratio: r.ratio,
            ratio_analytic: r.ratio_analytic,
            ratio_simplified: r.ratio_simplified,
            j_exact: r.j_exact,
            ratio_exact: r.ratio_exact,
            omega_tau: r.omega_tau,
            weak_field_violated: r.weak_field_violated,
        };
        Ok(())
    })
}

/// Series and exact drift of valley `valley_index` (0..4) for arbitrary
/// E (statvolt/cm) and H (Oe), each given as three doubles.
///
/// # Safety
/// `params` must be a live handle, `e` and `h` must point to three doubles
/// each, and `out_drift` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mvt_drift(
    params: *const MvtParams,
    valley_index: usize,
    e: *const f64,
    h: *const f64,
    out_drift: *mut MvtDrift,
) -> MvtStatus {
    guard(|| {
        let p = &deref(params, "params")?.inner;
        let dst = out(out_drift, "out_drift")?;
        let valleys = standard_ge_valleys();
        let frame = valleys.get(valley_index).ok_or_else(|| {
            Error::InvalidInput(format!(
                "valley index {valley_index} outside 0..{}",
                valleys.len()
            ))
        })?;
        let fields = FieldPoint::new(vec3(e, "e")?, vec3(h, "h")?)?;
        let d = drift_series(&fields, frame, p, &PhysConstants::GAUSSIAN)?;
        *dst = MvtDrift {
            u0: d.u0.into(),
            u1: d.u1.into(),
            u2: d.u2.into(),
            u_exact: d.u_exact.into(),
            omega_tau: d.omega_tau,
            series_parameter: d.series_parameter,
            weak_field_violated: d.weak_field_violated,
        };
        Ok(())
    })
}

/// Handle holding the bundled n-Ge concentration table.
#[no_mangle]
pub extern "C" fn mvt_table_bundled() -> *mut MvtTable {
    Box::into_raw(Box::new(MvtTable {
        inner: ConcentrationTable::bundled(),
    }))
}

/// Loads a two-column voltage/concentration file.
///
/// # Safety
/// `path` must be NULL or a NUL-terminated UTF-8 string, and `out_table`
/// writable. On success it receives a handle for [`mvt_table_free`].
#[no_mangle]
pub unsafe extern "C" fn mvt_table_load(
    path: *const c_char,
    out_table: *mut *mut MvtTable,
) -> MvtStatus {
    guard(|| {
        if path.is_null() {
            return Err(Fail::Null("path"));
        }
        let dst = out(out_table, "out_table")?;
        let path = CStr::from_ptr(path)
            .to_str()
            .map_err(|_| Error::InvalidInput("path is not valid UTF-8".into()))?;
        let inner = ConcentrationTable::load(Path::new(path))?;
        *dst = Box::into_raw(Box::new(MvtTable { inner }));
        Ok(())
    })
}

/// # Safety
/// `table` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mvt_table_free(table: *mut MvtTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// Number of rows in the table, 0 for NULL.
///
/// # Safety
/// `table` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mvt_table_len(table: *const MvtTable) -> usize {
    table.as_ref().map_or(0, |t| t.inner.rows().len())
}

/// Concentration in cm^-3 at `voltage`, log-linear between rows.
///
/// # Safety
/// `table` must be a live handle and `out_n_cm3` writable.
#[no_mangle]
pub unsafe extern "C" fn mvt_table_interpolate(
    table: *const MvtTable,
    voltage: f64,
    out_n_cm3: *mut f64,
) -> MvtStatus {
    guard(|| {
        let t = &deref(table, "table")?.inner;
        let dst = out(out_n_cm3, "out_n_cm3")?;
        *dst = interpolate_concentration(t, voltage)?;
        Ok(())
    })
}
