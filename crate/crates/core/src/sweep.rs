//! Parameter sweeps over (E, H) and table-driven current-voltage
//! reconstruction.

use crate::current::{magnetoresistance_ratio, CurrentReport};
use crate::data::{interpolate_concentration, ConcentrationTable};
use crate::error::{Error, Result};
use crate::geometry::{standard_ge_valleys, ValleyFrame};
use crate::units::{volts_per_cm_to_statvolt, FieldPoint, MaterialParams, PhysConstants};

/// Length of the standard 7 x 1 x 1 mm^3 sample along the current (cm).
pub const DEFAULT_SAMPLE_LENGTH_CM: f64 = 0.7;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    /// Electric field magnitudes (V/cm).
    pub e_vpcm: Vec<f64>,
    /// Magnetic field magnitudes (G, numerically equal to Oe).
    pub h_gauss: Vec<f64>,
    pub params: MaterialParams,
    /// Converts applied volts into field for the current-voltage
    /// reconstruction.
    pub sample_length_cm: f64,
    /// Voltages for the current-voltage reconstruction; `None` uses the
    /// table nodes.
    pub voltages: Option<Vec<f64>>,
}

impl SweepSpec {
    pub fn new(e_vpcm: Vec<f64>, h_gauss: Vec<f64>, params: MaterialParams) -> Result<Self> {
        let spec = SweepSpec {
            e_vpcm,
            h_gauss,
            params,
            sample_length_cm: DEFAULT_SAMPLE_LENGTH_CM,
            voltages: None,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let check = |name: &str, values: &[f64]| -> Result<()> {
            if values.is_empty() {
                return Err(Error::InvalidInput(format!("{name} list is empty")));
            }
            if let Some(bad) = values.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
                return Err(Error::InvalidInput(format!(
                    "{name} values must be finite and >= 0, got {bad}"
                )));
            }
            Ok(())
        };
        check("electric field", &self.e_vpcm)?;
        check("magnetic field", &self.h_gauss)?;
        if let Some(vs) = &self.voltages {
            check("voltage", vs)?;
        }
        if !(self.sample_length_cm.is_finite() && self.sample_length_cm > 0.0) {
            return Err(Error::InvalidInput(format!(
                "sample length must be positive, got {}",
                self.sample_length_cm
            )));
        }
        Ok(())
    }
}

/// Parses `a,b,c` or `start:stop:count` (inclusive linspace).
pub fn parse_value_list(text: &str) -> Result<Vec<f64>> {
    let bad = |what: &str| Error::InvalidInput(format!("cannot parse `{text}`: {what}"));
    let parts: Vec<&str> = text.split(':').map(str::trim).collect();
    match parts.as_slice() {
        [single] => single
            .split(',')
            .map(|s| s.trim().parse::<f64>().map_err(|_| bad("not a number")))
            .collect(),
        [start, stop, count] => {
            let start: f64 = start.parse().map_err(|_| bad("start is not a number"))?;
            let stop: f64 = stop.parse().map_err(|_| bad("stop is not a number"))?;
            let count: usize = count.parse().map_err(|_| bad("count is not an integer"))?;
            match count {
                0 => Err(bad("count must be positive")),
                1 => Ok(vec![start]),
                _ => Ok((0..count)
                    .map(|k| {
                        if k == count - 1 {
                            stop
                        } else {
                            start + (stop - start) * k as f64 / (count - 1) as f64
                        }
                    })
                    .collect()),
            }
        }
        _ => Err(bad("expected a comma list or start:stop:count")),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub e_vpcm: f64,
    pub e_statvolt: f64,
    pub h_gauss: f64,
    pub report: CurrentReport,
}

/// One row per (E, H) pair, E-major in the order given.
pub fn sweep_magnetoresistance(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    let consts = PhysConstants::GAUSSIAN;
    let valleys = standard_ge_valleys();
    let mut rows = Vec::with_capacity(spec.e_vpcm.len() * spec.h_gauss.len());
    for &e_vpcm in &spec.e_vpcm {
        let e_statvolt = volts_per_cm_to_statvolt(e_vpcm)?;
        for &h in &spec.h_gauss {
            let fields = FieldPoint::longitudinal(e_statvolt, h)?;
            let report = magnetoresistance_ratio(&fields, &valleys, &spec.params, &consts)?;
            rows.push(SweepRow {
                e_vpcm,
                e_statvolt,
                h_gauss: h,
                report,
            });
        }
    }
    Ok(rows)
}

/// Report invariants plus a doubled-H spot check (ratio must scale by 4).
pub fn row_violations(
    row: &SweepRow,
    params: &MaterialParams,
    valleys: &[ValleyFrame],
) -> Result<Vec<String>> {
    let consts = PhysConstants::GAUSSIAN;
    let mut out = row.report.invariant_violations();
    if row.h_gauss > 0.0 {
        let fields = FieldPoint::longitudinal(row.e_statvolt, 2.0 * row.h_gauss)?;
        let doubled = magnetoresistance_ratio(&fields, valleys, params, &consts)?;
        if row.report.ratio != 0.0 {
            let scale = doubled.ratio / row.report.ratio;
            if !((scale - 4.0).abs() <= 1e-8 * 4.0) {
                out.push(format!(
                    "ratio(2H)/ratio(H) = {scale} at E = {} V/cm, H = {} G",
                    row.e_vpcm, row.h_gauss
                ));
            }
        } else if doubled.ratio != 0.0 {
            out.push(format!(
                "ratio vanishes at H = {} G but not at 2H",
                row.h_gauss
            ));
        }
    } else if row.report.ratio != 0.0 {
        out.push(format!("ratio = {:e} at H = 0", row.report.ratio));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IvRow {
    pub voltage: f64,
    pub n_cm3: f64,
    pub e_vpcm: f64,
    pub h_gauss: f64,
    /// J at H = 0 (statA/cm^2).
    pub j_zero_h: f64,
    /// J0 + dJ2 at the row's H.
    pub j_h: f64,
    /// Exact-solve current at the row's H.
    pub j_exact: f64,
    /// dJ2 / J0.
    pub ratio: f64,
}

/// Current-voltage curves with the concentration taken from the Hall table.
///
/// Only the band transport is modelled: the measured n(V) is the sole
/// source of the low-voltage behaviour, so impurity-band effects enter
/// through the table and are not predicted. Rows are voltage-major, then H
/// in the order given.
pub fn reconstruct_iv(table: &ConcentrationTable, spec: &SweepSpec) -> Result<Vec<IvRow>> {
    spec.validate()?;
    let consts = PhysConstants::GAUSSIAN;
    let valleys = standard_ge_valleys();
    let voltages: Vec<f64> = match &spec.voltages {
        Some(v) => v.clone(),
        None => table.rows().iter().map(|r| r.0).collect(),
    };
    let mut rows = Vec::with_capacity(voltages.len() * spec.h_gauss.len());
    for &voltage in &voltages {
        let n = interpolate_concentration(table, voltage)?;
        let params = spec.params.with_n_total(n)?;
        let e_vpcm = voltage / spec.sample_length_cm;
        let e_statvolt = volts_per_cm_to_statvolt(e_vpcm)?;
        for &h in &spec.h_gauss {
            let fields = FieldPoint::longitudinal(e_statvolt, h)?;
            let r = magnetoresistance_ratio(&fields, &valleys, &params, &consts)?;
            rows.push(IvRow {
                voltage,
                n_cm3: n,
                e_vpcm,
                h_gauss: h,
                j_zero_h: r.j0,
                j_h: r.j0 + r.dj2,
                j_exact: r.j_exact,
                ratio: r.ratio,
            });
        }
    }
    Ok(rows)
}
