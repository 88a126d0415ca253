//! Physical constants, material parameters and unit conversions.
//!
//! Everything inside the crate is expressed in Gaussian CGS units: grams,
//! seconds, centimetres, statvolt/cm for the electric field and oersted for
//! the magnetic field. Practical units are converted at the boundary. Gauss
//! and oersted are used interchangeably for the applied field.

use std::collections::BTreeMap;

use nalgebra::Vector3;

use crate::error::{Error, Result};

/// Volts per statvolt (exact, from the defined speed of light).
pub const VOLTS_PER_STATVOLT: f64 = 299.792458;

/// Fixed physical constants in Gaussian units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysConstants {
    e_charge: f64,
    c_light: f64,
}

impl PhysConstants {
    /// Elementary charge 4.8032e-10 esu, speed of light 2.9979e10 cm/s.
    pub const GAUSSIAN: PhysConstants = PhysConstants {
        e_charge: 4.8032e-10,
        c_light: 2.9979e10,
    };

    /// Elementary charge magnitude (esu).
    pub fn e_charge(&self) -> f64 {
        self.e_charge
    }

    /// Speed of light (cm/s).
    pub fn c_light(&self) -> f64 {
        self.c_light
    }
}

impl Default for PhysConstants {
    fn default() -> Self {
        Self::GAUSSIAN
    }
}

/// Effective masses, relaxation times and carrier concentration of a
/// many-valley conduction band.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaterialParams {
    m_perp: f64,
    m_par: f64,
    tau_perp: f64,
    tau_par: f64,
    n_total: f64,
    n_valleys: usize,
}

impl MaterialParams {
    /// Transverse mass used by the n-Ge estimate (g).
    pub const GE_M_PERP: f64 = 0.7e-28;
    /// Transverse relaxation time used by the n-Ge estimate (s).
    pub const GE_TAU_PERP: f64 = 1e-11;
    /// Default longitudinal-to-transverse mass ratio for n-Ge.
    pub const GE_MASS_RATIO: f64 = 20.0;
    /// Default total concentration (cm^-3), the strong-field plateau of the
    /// bundled Hall table.
    pub const GE_N_TOTAL: f64 = 1.0e14;

    pub fn new(
        m_perp: f64,
        m_par: f64,
        tau_perp: f64,
        tau_par: f64,
        n_total: f64,
        n_valleys: usize,
    ) -> Result<Self> {
        let params = MaterialParams {
            m_perp,
            m_par,
            tau_perp,
            tau_par,
            n_total,
            n_valleys,
        };
        params.validate()?;
        Ok(params)
    }

    /// n-Ge defaults: m_perp = 0.7e-28 g, m_par = 20 m_perp,
    /// tau_par = tau_perp = 1e-11 s, n = 1e14 cm^-3, four valleys.
    pub fn n_ge() -> Self {
        MaterialParams {
            m_perp: Self::GE_M_PERP,
            m_par: Self::GE_MASS_RATIO * Self::GE_M_PERP,
            tau_perp: Self::GE_TAU_PERP,
            tau_par: Self::GE_TAU_PERP,
            n_total: Self::GE_N_TOTAL,
            n_valleys: 4,
        }
    }

    fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("m_perp", self.m_perp),
            ("m_par", self.m_par),
            ("tau_perp", self.tau_perp),
            ("tau_par", self.tau_par),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidInput(format!(
                    "{name} must be finite and strictly positive, got {v}"
                )));
            }
        }
        if !(self.n_total.is_finite() && self.n_total >= 0.0) {
            return Err(Error::InvalidInput(format!(
                "n_total must be finite and non-negative, got {}",
                self.n_total
            )));
        }
        if self.n_valleys == 0 {
            return Err(Error::InvalidInput("n_valleys must be at least 1".into()));
        }
        Ok(())
    }

    pub fn m_perp(&self) -> f64 {
        self.m_perp
    }
    pub fn m_par(&self) -> f64 {
        self.m_par
    }
    pub fn tau_perp(&self) -> f64 {
        self.tau_perp
    }
    pub fn tau_par(&self) -> f64 {
        self.tau_par
    }
    pub fn n_total(&self) -> f64 {
        self.n_total
    }
    pub fn n_valleys(&self) -> usize {
        self.n_valleys
    }

    /// Same material with a different total concentration.
    pub fn with_n_total(self, n_total: f64) -> Result<Self> {
        Self::new(
            self.m_perp,
            self.m_par,
            self.tau_perp,
            self.tau_par,
            n_total,
            self.n_valleys,
        )
    }

    /// e tau_perp / m_perp, drift per unit field across the valley axis.
    pub fn mobility_perp(&self, consts: &PhysConstants) -> f64 {
        consts.e_charge * self.tau_perp / self.m_perp
    }

    /// e tau_par / m_par, drift per unit field along the valley axis.
    pub fn mobility_par(&self, consts: &PhysConstants) -> f64 {
        consts.e_charge * self.tau_par / self.m_par
    }

    /// e (tau_par/m_par - tau_perp/m_perp). Exactly zero for an isotropic
    /// band with equal ratios.
    pub fn mobility_anisotropy(&self, consts: &PhysConstants) -> f64 {
        consts.e_charge * (self.tau_par / self.m_par - self.tau_perp / self.m_perp)
    }

    /// Electron concentration of a single valley.
    pub fn n_per_valley(&self) -> f64 {
        self.n_total / self.n_valleys as f64
    }
}

/// Applied electric (statvolt/cm) and magnetic (Oe) field vectors in the lab
/// frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldPoint {
    pub e: Vector3<f64>,
    pub h: Vector3<f64>,
}

impl FieldPoint {
    pub fn new(e: Vector3<f64>, h: Vector3<f64>) -> Result<Self> {
        if e.iter().chain(h.iter()).any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(
                "field components must be finite".into(),
            ));
        }
        Ok(FieldPoint { e, h })
    }

    /// E and H both along the symmetric axis (0,0,1).
    pub fn longitudinal(e_statvolt: f64, h_oe: f64) -> Result<Self> {
        Self::new(
            Vector3::new(0.0, 0.0, e_statvolt),
            Vector3::new(0.0, 0.0, h_oe),
        )
    }

    /// Same electric field, magnetic field replaced.
    pub fn with_h(self, h: Vector3<f64>) -> Self {
        FieldPoint { e: self.e, h }
    }
}

pub fn volts_per_cm_to_statvolt(e_practical: f64) -> Result<f64> {
    if !e_practical.is_finite() {
        return Err(Error::InvalidInput(format!(
            "electric field must be finite, got {e_practical}"
        )));
    }
    Ok(e_practical / VOLTS_PER_STATVOLT)
}

pub fn statvolt_to_volts_per_cm(e_gaussian: f64) -> Result<f64> {
    if !e_gaussian.is_finite() {
        return Err(Error::InvalidInput(format!(
            "electric field must be finite, got {e_gaussian}"
        )));
    }
    Ok(e_gaussian * VOLTS_PER_STATVOLT)
}

/// Weak-field expansion parameter e H tau_perp / (m_perp c).
pub fn dimensionless_hall_parameter(
    params: &MaterialParams,
    consts: &PhysConstants,
    h_mag: f64,
) -> f64 {
    params.mobility_perp(consts) * h_mag / consts.c_light
}

/// Keys understood in a material configuration file.
pub const CONFIG_KEYS: [&str; 6] = [
    "m_perp_g",
    "m_par_g",
    "tau_perp_s",
    "tau_par_s",
    "n_total_cm3",
    "n_valleys",
];

/// Partial material description: any subset of the configuration keys.
///
/// Layers are merged with [`ParamOverrides::merge`] and resolved on top of
/// the n-Ge defaults, so a file may name only the values it changes and CLI
/// flags override the file.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ParamOverrides {
    pub m_perp_g: Option<f64>,
    pub m_par_g: Option<f64>,
    pub tau_perp_s: Option<f64>,
    pub tau_par_s: Option<f64>,
    pub n_total_cm3: Option<f64>,
    pub n_valleys: Option<usize>,
}

impl ParamOverrides {
    /// Parses `key = value` lines. `#` starts a comment; blank lines are
    /// skipped; unknown and repeated keys are errors.
    pub fn parse(text: &str) -> Result<Self> {
        let mut seen = BTreeMap::new();
        let mut out = ParamOverrides::default();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::Parse {
                line: line_no,
                message: format!("expected `key = value`, got `{line}`"),
            })?;
            let key = key.trim();
            let value = value.trim();
            if let Some(first) = seen.insert(key.to_string(), line_no) {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("`{key}` already set on line {first}"),
                });
            }
            let float = || {
                value.parse::<f64>().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("`{key}`: `{value}` is not a number"),
                })
            };
            match key {
                "m_perp_g" => out.m_perp_g = Some(float()?),
                "m_par_g" => out.m_par_g = Some(float()?),
                "tau_perp_s" => out.tau_perp_s = Some(float()?),
                "tau_par_s" => out.tau_par_s = Some(float()?),
                "n_total_cm3" => out.n_total_cm3 = Some(float()?),
                "n_valleys" => {
                    out.n_valleys = Some(value.parse::<usize>().map_err(|_| Error::Parse {
                        line: line_no,
                        message: format!("`n_valleys`: `{value}` is not a positive integer"),
                    })?)
                }
                other => {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!(
                            "unknown key `{other}` (expected one of {})",
                            CONFIG_KEYS.join(", ")
                        ),
                    })
                }
            }
        }
        Ok(out)
    }

    /// Values set in `top` win over values in `self`.
    pub fn merge(self, top: ParamOverrides) -> ParamOverrides {
        ParamOverrides {
            m_perp_g: top.m_perp_g.or(self.m_perp_g),
            m_par_g: top.m_par_g.or(self.m_par_g),
            tau_perp_s: top.tau_perp_s.or(self.tau_perp_s),
            tau_par_s: top.tau_par_s.or(self.tau_par_s),
            n_total_cm3: top.n_total_cm3.or(self.n_total_cm3),
            n_valleys: top.n_valleys.or(self.n_valleys),
        }
    }

    /// Fills unset values from [`MaterialParams::n_ge`] and validates.
    pub fn resolve(&self) -> Result<MaterialParams> {
        let base = MaterialParams::n_ge();
        MaterialParams::new(
            self.m_perp_g.unwrap_or(base.m_perp),
            self.m_par_g.unwrap_or(base.m_par),
            self.tau_perp_s.unwrap_or(base.tau_perp),
            self.tau_par_s.unwrap_or(base.tau_par),
            self.n_total_cm3.unwrap_or(base.n_total),
            self.n_valleys.unwrap_or(base.n_valleys),
        )
    }
}
