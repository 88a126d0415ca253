//! Hall-measured carrier concentration versus applied voltage.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

/// Concentration measured on a 7 x 1 x 1 mm^3 n-Ge sample at about 5 K.
///
/// The last row falls below its predecessor (2.3e14 after 6.7e14). It is
/// kept verbatim; it may be a misprint.
pub const BUNDLED_TABLE: &str = "\
# applied voltage across the sample (V), Hall concentration (cm^-3)
voltage_v,n_cm3
2,3.21e9
3,7e9
4,2.8e12
5,1.41e13
9,9.3e13
15,1.7e14
30,6.7e14
45,2.3e14
";

#[derive(Debug, Clone, PartialEq)]
pub struct ConcentrationTable {
    rows: Vec<(f64, f64)>,
}

impl ConcentrationTable {
    /// Builds a table from (voltage, concentration) rows.
    pub fn from_rows(rows: Vec<(f64, f64)>) -> Result<Self> {
        for (k, &(v, n)) in rows.iter().enumerate() {
            check_row(k + 1, v, n, rows.get(k.wrapping_sub(1)).map(|r| r.0))?;
        }
        if rows.is_empty() {
            return Err(Error::InvalidInput("concentration table is empty".into()));
        }
        Ok(ConcentrationTable { rows })
    }

    pub fn bundled() -> Self {
        load_concentration_table(BUNDLED_TABLE).expect("bundled table is valid")
    }

    pub fn rows(&self) -> &[(f64, f64)] {
        &self.rows
    }

    pub fn voltage_range(&self) -> (f64, f64) {
        (self.rows[0].0, self.rows[self.rows.len() - 1].0)
    }

    /// Two-column CSV with header, 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("voltage_v,n_cm3\n");
        for (v, n) in &self.rows {
            let _ = writeln!(out, "{v:.16e},{n:.16e}");
        }
        out
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        load_concentration_table(&text)
    }
}

fn check_row(line: usize, v: f64, n: f64, previous: Option<f64>) -> Result<()> {
    if !v.is_finite() {
        return Err(Error::Parse {
            line,
            message: format!("voltage {v} is not finite"),
        });
    }
    if !(n.is_finite() && n > 0.0) {
        return Err(Error::Parse {
            line,
            message: format!("concentration {n} must be finite and positive"),
        });
    }
    if let Some(prev) = previous {
        if !(v > prev) {
            return Err(Error::NotIncreasing {
                line,
                voltage: v,
                previous: prev,
            });
        }
    }
    Ok(())
}

/// Parses two numeric columns separated by a comma, semicolon or whitespace.
///
/// `#` starts a comment. A single non-numeric header line before the first
/// data row is skipped. Voltages must be strictly increasing; concentrations
/// need only be positive.
pub fn load_concentration_table(source: &str) -> Result<ConcentrationTable> {
    let mut rows: Vec<(f64, f64)> = Vec::new();
    let mut header_seen = false;
    for (idx, raw) in source.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line
            .split(|c: char| c == ',' || c == ';' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .collect();
        let parsed: Vec<Option<f64>> = fields.iter().map(|s| s.parse::<f64>().ok()).collect();
        if rows.is_empty() && !header_seen && parsed.iter().all(Option::is_none) {
            header_seen = true;
            continue;
        }
        if fields.len() != 2 {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected 2 columns, found {}", fields.len()),
            });
        }
        let (Some(v), Some(n)) = (parsed[0], parsed[1]) else {
            return Err(Error::Parse {
                line: line_no,
                message: format!("non-numeric row `{line}`"),
            });
        };
        check_row(line_no, v, n, rows.last().map(|r| r.0))?;
        rows.push((v, n));
    }
    if rows.is_empty() {
        return Err(Error::InvalidInput(
            "concentration table has no data rows".into(),
        ));
    }
    Ok(ConcentrationTable { rows })
}

/// Linear interpolation of ln n in V. Exact at the nodes; no extrapolation.
pub fn interpolate_concentration(table: &ConcentrationTable, voltage: f64) -> Result<f64> {
    let (min, max) = table.voltage_range();
    if !(voltage >= min && voltage <= max) {
        return Err(Error::OutOfRange {
            value: voltage,
            min,
            max,
        });
    }
    let rows = table.rows();
    let k = rows.partition_point(|r| r.0 < voltage);
    if rows[k].0 == voltage {
        return Ok(rows[k].1);
    }
    let (v0, n0) = rows[k - 1];
    let (v1, n1) = rows[k];
    let t = (voltage - v0) / (v1 - v0);
    Ok((n0.ln() * (1.0 - t) + n1.ln() * t).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_nodes() {
        let t = ConcentrationTable::bundled();
        assert_eq!(t.rows().len(), 8);
        assert_eq!(t.rows()[0], (2.0, 3.21e9));
        assert_eq!(t.rows()[7], (45.0, 2.3e14));
        assert_eq!(t.voltage_range(), (2.0, 45.0));
    }

    #[test]
    fn interpolation_at_and_between_nodes() {
        let t = ConcentrationTable::bundled();
        assert_eq!(interpolate_concentration(&t, 2.0).unwrap(), 3.21e9);
        assert_eq!(interpolate_concentration(&t, 9.0).unwrap(), 9.3e13);
        for &(v, n) in t.rows() {
            assert_eq!(interpolate_concentration(&t, v).unwrap(), n);
        }
        // geometric mean of 7e9 and 2.8e12 at the midpoint
        let mid = interpolate_concentration(&t, 3.5).unwrap();
        assert!((mid / (7e9f64 * 2.8e12).sqrt() - 1.0).abs() < 1e-12);
        assert!(mid > 7e9 && mid < 2.8e12);
    }

    #[test]
    fn no_extrapolation() {
        let t = ConcentrationTable::bundled();
        assert!(matches!(
            interpolate_concentration(&t, 1.99),
            Err(Error::OutOfRange { .. })
        ));
        assert!(interpolate_concentration(&t, 45.01).is_err());
        assert!(interpolate_concentration(&t, f64::NAN).is_err());
    }

    #[test]
    fn rejects_unsorted_and_bad_rows() {
        match load_concentration_table("V,n\n2,1e9\n5,1e10\n4,1e11\n") {
            Err(Error::NotIncreasing { line, .. }) => assert_eq!(line, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(load_concentration_table("2,1e9\n2,1e10\n").is_err());
        match load_concentration_table("2,1e9\n3,abc\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(load_concentration_table("2,1e9,4\n").is_err());
        assert!(load_concentration_table("2,-1e9\n").is_err());
        assert!(load_concentration_table("# nothing\n").is_err());
        assert!(ConcentrationTable::from_rows(vec![(1.0, 1.0), (0.5, 1.0)]).is_err());
    }

    #[test]
    fn accepts_whitespace_columns_and_non_monotone_n() {
        let t = load_concentration_table("1 5e10\n2\t1e10\n").unwrap();
        assert_eq!(t.rows(), &[(1.0, 5e10), (2.0, 1e10)]);
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let t = ConcentrationTable::bundled();
        let back = load_concentration_table(&t.to_csv()).unwrap();
        assert_eq!(back, t);
    }
}
