use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use mvtransport::current::magnetoresistance_ratio;
use mvtransport::emit::{emit_artifacts, iv_svg, sweep_svg, to_csv};
use mvtransport::geometry::standard_ge_valleys;
use mvtransport::sweep::{parse_value_list, row_violations, DEFAULT_SAMPLE_LENGTH_CM};
use mvtransport::units::ParamOverrides;
use mvtransport::validate::run_invariant_suite;
use mvtransport::{
    reconstruct_iv, sweep_magnetoresistance, volts_per_cm_to_statvolt, ConcentrationTable, Error,
    FieldPoint, MaterialParams, PhysConstants, SweepSpec,
};

const EXIT_INPUT: u8 = 1;
const EXIT_INVARIANT: u8 = 2;

/// Longitudinal magnetoresistance of many-valley semiconductors (n-Ge).
#[derive(Parser)]
#[command(name = "mvt", version)]
struct Cli {
    #[command(flatten)]
    material: MaterialArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct MaterialArgs {
    /// Material file with `key = value` lines.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Transverse effective mass, g.
    #[arg(long, global = true)]
    m_perp_g: Option<f64>,
    /// Longitudinal effective mass, g.
    #[arg(long, global = true)]
    m_par_g: Option<f64>,
    /// Transverse relaxation time, s.
    #[arg(long, global = true)]
    tau_perp_s: Option<f64>,
    /// Longitudinal relaxation time, s.
    #[arg(long, global = true)]
    tau_par_s: Option<f64>,
    /// Total electron concentration, cm^-3.
    #[arg(long, global = true)]
    n_total_cm3: Option<f64>,
    /// Number of valleys (only 4 is supported).
    #[arg(long, global = true)]
    n_valleys: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Magnetoresistance over a grid of electric and magnetic fields.
    Sweep {
        /// Electric fields in V/cm: `a,b,c` or `start:stop:count`.
        #[arg(long, default_value = "15,25,200")]
        e_vpcm: String,
        /// Magnetic fields in gauss: `a,b,c` or `start:stop:count`.
        #[arg(long, default_value = "0:300:7")]
        h_gauss: String,
        #[arg(long)]
        out_csv: Option<PathBuf>,
        #[arg(long)]
        out_svg: Option<PathBuf>,
    },
    /// Current-voltage curves using the measured concentration table.
    Iv {
        /// Two-column voltage/concentration table; defaults to the bundled data.
        #[arg(long)]
        table: Option<PathBuf>,
        #[arg(long, default_value = "0,300")]
        h_gauss: String,
        /// Voltages to evaluate; defaults to the table nodes.
        #[arg(long)]
        voltages: Option<String>,
        #[arg(long, default_value_t = DEFAULT_SAMPLE_LENGTH_CM)]
        sample_length_cm: f64,
        #[arg(long)]
        out_csv: Option<PathBuf>,
        #[arg(long)]
        out_svg: Option<PathBuf>,
    },
    /// Single-point estimate at the n-Ge parameters (H = 300 G by default).
    Anchor {
        #[arg(long, default_value_t = 300.0)]
        h_gauss: f64,
        #[arg(long, default_value_t = 200.0)]
        e_vpcm: f64,
    },
    /// Runs the invariant suite for the configured material.
    Validate {
        #[arg(long, default_value_t = 200.0)]
        e_vpcm: f64,
        #[arg(long, default_value_t = 300.0)]
        h_gauss: f64,
    },
}

enum Failure {
    Input(Error),
    Invariant(Vec<String>),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

fn resolve_material(args: &MaterialArgs) -> Result<MaterialParams, Error> {
    let file = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
                path: path.clone(),
                source: e,
            })?;
            ParamOverrides::parse(&text)?
        }
        None => ParamOverrides::default(),
    };
    let flags = ParamOverrides {
        m_perp_g: args.m_perp_g,
        m_par_g: args.m_par_g,
        tau_perp_s: args.tau_perp_s,
        tau_par_s: args.tau_par_s,
        n_total_cm3: args.n_total_cm3,
        n_valleys: args.n_valleys,
    };
    let params = file.merge(flags).resolve()?;
    if params.n_valleys() != 4 {
        return Err(Error::InvalidInput(format!(
            "only the four-valley n-Ge geometry is available, got n_valleys = {}",
            params.n_valleys()
        )));
    }
    Ok(params)
}

fn run(cli: Cli) -> Result<(), Failure> {
    let params = resolve_material(&cli.material)?;
    let valleys = standard_ge_valleys();
    match cli.command {
        Command::Sweep {
            e_vpcm,
            h_gauss,
            out_csv,
            out_svg,
        } => {
            let spec = SweepSpec::new(
                parse_value_list(&e_vpcm)?,
                parse_value_list(&h_gauss)?,
                params,
            )?;
            let rows = sweep_magnetoresistance(&spec)?;
            let mut violations = Vec::new();
            for row in &rows {
                violations.extend(row_violations(row, &params, &valleys)?);
            }
            if out_csv.is_none() {
                print!("{}", to_csv(&rows)?);
            }
            emit_artifacts(&rows, sweep_svg, out_csv.as_deref(), out_svg.as_deref())?;
            if !violations.is_empty() {
                return Err(Failure::Invariant(violations));
            }
        }
        Command::Iv {
            table,
            h_gauss,
            voltages,
            sample_length_cm,
            out_csv,
            out_svg,
        } => {
            let table = match table {
                Some(path) => ConcentrationTable::load(&path)?,
                None => ConcentrationTable::bundled(),
            };
            let mut spec = SweepSpec::new(vec![0.0], parse_value_list(&h_gauss)?, params)?;
            spec.sample_length_cm = sample_length_cm;
            spec.voltages = voltages.as_deref().map(parse_value_list).transpose()?;
            let rows = reconstruct_iv(&table, &spec)?;
            if out_csv.is_none() {
                print!("{}", to_csv(&rows)?);
            }
            emit_artifacts(&rows, iv_svg, out_csv.as_deref(), out_svg.as_deref())?;
            let violations: Vec<String> = rows
                .iter()
                .filter(|r| r.ratio.is_nan() || r.ratio > 0.0)
                .map(|r| format!("ratio {:e} > 0 at {} V", r.ratio, r.voltage))
                .collect();
            if !violations.is_empty() {
                return Err(Failure::Invariant(violations));
            }
        }
        Command::Anchor { h_gauss, e_vpcm } => {
            let consts = PhysConstants::GAUSSIAN;
            let fields = FieldPoint::longitudinal(volts_per_cm_to_statvolt(e_vpcm)?, h_gauss)?;
            let r = magnetoresistance_ratio(&fields, &valleys, &params, &consts)?;
            println!("m_perp_g            {:.6e}", params.m_perp());
            println!("m_par_g             {:.6e}", params.m_par());
            println!("tau_perp_s          {:.6e}", params.tau_perp());
            println!("tau_par_s           {:.6e}", params.tau_par());
            println!("h_gauss             {h_gauss}");
            println!("omega_tau           {:.12e}", r.omega_tau);
            println!("ratio               {:.12e}", r.ratio);
            println!("ratio_analytic      {:.12e}", r.ratio_analytic);
            println!("ratio_simplified    {:.12e}", r.ratio_simplified);
            println!("ratio_exact         {:.12e}", r.ratio_exact);
            println!("dj_percent          {:.4}", 100.0 * r.ratio.abs());
            if r.weak_field_violated {
                println!("warning: series parameter exceeds 1, weak-field series unreliable");
            }
            let violations = r.invariant_violations();
            if !violations.is_empty() {
                return Err(Failure::Invariant(violations));
            }
        }
        Command::Validate { e_vpcm, h_gauss } => {
            let checks = run_invariant_suite(&params, volts_per_cm_to_statvolt(e_vpcm)?, h_gauss)?;
            let mut failed = Vec::new();
            for c in &checks {
                let tag = if c.passed { "PASS" } else { "FAIL" };
                println!("{tag}  {:<45} {}", c.name, c.detail);
                if !c.passed {
                    failed.push(c.name.to_string());
                }
            }
            if !failed.is_empty() {
                return Err(Failure::Invariant(failed));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_INPUT)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(Failure::Invariant(list)) => {
            for v in list {
                eprintln!("invariant violated: {v}");
            }
            ExitCode::from(EXIT_INVARIANT)
        }
    }
}
