use std::ffi::{CStr, CString};
use std::ptr;

use approx::assert_relative_eq;
use mvtransport_ffi::*;

fn last_error() -> String {
    let p = mvt_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn magnetoresistance_through_handle() {
    let params = mvt_params_new_ge();
    let mut e = 0.0;
    let mut report = MvtReport::default();
    unsafe {
        assert_eq!(mvt_volts_per_cm_to_statvolt(200.0, &mut e), MvtStatus::Ok);
        assert_eq!(
            mvt_magnetoresistance(params, e, 300.0, &mut report),
            MvtStatus::Ok
        );
        mvt_params_free(params);
    }
    assert_relative_eq!(report.ratio, report.ratio_analytic, max_relative = 1e-10);
    assert_relative_eq!(report.ratio, -0.138381, max_relative = 1e-5);
    assert!(report.j1_total.iter().all(|c| c.abs() <= 1e-10 * report.j0));
    assert!(report.ratio_exact < 0.0 && report.ratio_exact > report.ratio);
    assert!(!report.weak_field_violated);
}

#[test]
fn invalid_params_set_status_and_message() {
    let mut handle = ptr::null_mut();
    let status = unsafe { mvt_params_new(-1.0, 1e-27, 1e-11, 1e-11, 1e14, 4, &mut handle) };
    assert_eq!(status, MvtStatus::InvalidInput);
    assert!(handle.is_null());
    assert!(last_error().contains("invalid input"));

    let status = unsafe { mvt_params_new(1e-28, 2e-27, 1e-11, 1e-11, 1e14, 4, ptr::null_mut()) };
    assert_eq!(status, MvtStatus::NullPointer);
    assert!(last_error().contains("out_params"));
}

#[test]
fn null_and_invalid_arguments() {
    let params = mvt_params_new_ge();
    let mut report = MvtReport::default();
    unsafe {
        assert_eq!(
            mvt_magnetoresistance(ptr::null(), 1.0, 1.0, &mut report),
            MvtStatus::NullPointer
        );
        assert_eq!(
            mvt_magnetoresistance(params, 1.0, 1.0, ptr::null_mut()),
            MvtStatus::NullPointer
        );
        assert_eq!(
            mvt_magnetoresistance(params, f64::NAN, 1.0, &mut report),
            MvtStatus::InvalidInput
        );
        let mut d = MvtDrift::default();
        let e = [0.0, 0.0, 1.0];
        let h = [0.0, 0.0, 300.0];
        assert_eq!(
            mvt_drift(params, 4, e.as_ptr(), h.as_ptr(), &mut d),
            MvtStatus::InvalidInput
        );
        assert_eq!(
            mvt_drift(params, 0, ptr::null(), h.as_ptr(), &mut d),
            MvtStatus::NullPointer
        );
        mvt_params_free(params);
        mvt_params_free(ptr::null_mut());
    }
}

#[test]
fn drift_series_matches_exact_at_weak_field() {
    let mut params = ptr::null_mut();
    unsafe {
        assert_eq!(
            mvt_params_new(0.7e-28, 14e-28, 1e-11, 1e-11, 1e14, 4, &mut params),
            MvtStatus::Ok
        );
    }
    let e = [0.3, -0.2, 0.5];
    let h = [40.0, 10.0, -25.0];
    for k in 0..4 {
        let mut d = MvtDrift::default();
        unsafe {
            assert_eq!(
                mvt_drift(params, k, e.as_ptr(), h.as_ptr(), &mut d),
                MvtStatus::Ok
            );
        }
        let sum: Vec<f64> = (0..3).map(|i| d.u0[i] + d.u1[i] + d.u2[i]).collect();
        let err: f64 = (0..3)
            .map(|i| (sum[i] - d.u_exact[i]).powi(2))
            .sum::<f64>()
            .sqrt();
        let norm: f64 = d.u_exact.iter().map(|x| x * x).sum::<f64>().sqrt();
        assert!(d.series_parameter < 0.2);
        assert!(err / norm <= 2.0 * d.series_parameter.powi(3));
    }
    unsafe { mvt_params_free(params) };
}

#[test]
fn tables_bundled_and_loaded() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    std::fs::write(&path, "V n\n1 1e10\n3 1e12\n").unwrap();
    let cpath = CString::new(path.to_str().unwrap()).unwrap();
    let mut table = ptr::null_mut();
    let mut n = 0.0;
    unsafe {
        assert_eq!(mvt_table_load(cpath.as_ptr(), &mut table), MvtStatus::Ok);
        assert_eq!(mvt_table_len(table), 2);
        assert_eq!(mvt_table_interpolate(table, 2.0, &mut n), MvtStatus::Ok);
        assert_relative_eq!(n, 1e11, max_relative = 1e-12);
        assert_eq!(
            mvt_table_interpolate(table, 5.0, &mut n),
            MvtStatus::OutOfRange
        );
        assert!(last_error().contains("outside"));
        mvt_table_free(table);

        let bundled = mvt_table_bundled();
        assert_eq!(mvt_table_len(bundled), 8);
        assert_eq!(mvt_table_interpolate(bundled, 15.0, &mut n), MvtStatus::Ok);
        assert_eq!(n, 1.7e14);
        mvt_table_free(bundled);
        assert_eq!(mvt_table_len(ptr::null()), 0);

        let missing = CString::new("/does/not/exist.csv").unwrap();
        assert_eq!(mvt_table_load(missing.as_ptr(), &mut table), MvtStatus::Io);
        std::fs::write(&path, "1 1e10\n1 1e12\n").unwrap();
        assert_eq!(mvt_table_load(cpath.as_ptr(), &mut table), MvtStatus::Parse);
    }
}
