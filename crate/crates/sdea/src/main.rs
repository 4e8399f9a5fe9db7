mod config;
mod output;

use std::fmt;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use sdea_core::grid::LogGrid;
use sdea_core::model::{coupler_admittance, hybrid_matrix, plant_transfer, SystemParams, VirtualCoupler};
use sdea_core::optimize::{maximize_k22_over_alpha_with, maximize_k22_with, Criterion, OptimizeOptions};
use sdea_core::passivity::{
    absolute_stability_exact, check_absolute_stability, check_condition_a, check_condition_b, check_condition_c_i, check_condition_c_ii,
    check_two_port_passivity, k22_upper_bound, AbsoluteStabilityReport, PassivityReport, PlantGrid,
};
use sdea_core::perf::{frequency_response, transmitted_impedance, EnvironmentModel};
use sdea_core::rational::RationalFunction;
use sdea_core::tol::Tolerances;
use serde_json::json;

use config::{Config, ConfigError};
use output::{g9, SweepRow};

#[derive(Parser, Debug)]
#[command(name = "sdea", version, about = "Passivity and coupler design for series damped elastic actuators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CriterionArg {
    Passivity,
    Absolute,
}

impl From<CriterionArg> for Criterion {
    fn from(c: CriterionArg) -> Self {
        match c {
            CriterionArg::Passivity => Criterion::TwoPortPassivity,
            CriterionArg::Absolute => Criterion::AbsoluteStability,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Over {
    B22,
    #[value(name = "b22+alpha")]
    B22Alpha,
}

#[derive(clap::Args, Debug)]
struct Common {
    /// JSON parameter file.
    #[arg(long)]
    config: PathBuf,
    #[arg(long, value_enum, default_value = "passivity")]
    criterion: CriterionArg,
    /// Log frequency grid as min:max:points (rad/s).
    #[arg(long, default_value = "1e-3:1e6:4000")]
    grid: String,
    /// Relative tolerance of boundary equalities.
    #[arg(long, default_value_t = 1e-9)]
    boundary_tol: f64,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide passivity or absolute stability for the configured coupler.
    Check(Common),
    /// Evaluate the criterion while one parameter varies linearly.
    Sweep {
        #[command(flatten)]
        common: Common,
        /// Config key to vary (Kf, Bf, J, B, Pm, Im, Pf, If, alpha, k22, b22).
        #[arg(long)]
        vary: String,
        /// Values as min:max:points.
        #[arg(long)]
        range: String,
    },
    /// Maximize k22 over b22, or jointly over b22 and alpha.
    Optimize {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "b22")]
        over: Over,
    },
    /// Frequency response of h11, h12, h22 or the transmitted impedance.
    Bode {
        #[command(flatten)]
        common: Common,
        /// h11 | h12 | h22 | zto:null | zto:spring:Ke | zto:damper:Be | zto:voigt:Ke:Be
        #[arg(long)]
        target: String,
    },
}

#[derive(Debug)]
enum CliError {
    Config(ConfigError),
    Core(sdea_core::Error),
    Usage(String),
    Io(io::Error),
    Csv(csv::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(e) => write!(f, "{e}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Io(e) => write!(f, "write failed: {e}"),
            CliError::Csv(e) => write!(f, "write failed: {e}"),
        }
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Config(e)
    }
}

impl From<sdea_core::Error> for CliError {
    fn from(e: sdea_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Csv(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> CliResult<bool> {
    match cli.command {
        Command::Check(c) => cmd_check(&c),
        Command::Sweep { common, vary, range } => cmd_sweep(&common, &vary, &range),
        Command::Optimize { common, over } => cmd_optimize(&common, over),
        Command::Bode { common, target } => cmd_bode(&common, &target),
    }
}

fn triple(s: &str, what: &str) -> CliResult<(f64, f64, usize)> {
    let bad = || CliError::Usage(format!("{what} must look like min:max:points, got {s:?}"));
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(bad());
    }
    let lo = parts[0].trim().parse::<f64>().map_err(|_| bad())?;
    let hi = parts[1].trim().parse::<f64>().map_err(|_| bad())?;
    let n = parts[2].trim().parse::<usize>().map_err(|_| bad())?;
    Ok((lo, hi, n))
}

fn grid_of(c: &Common) -> CliResult<LogGrid> {
    let (lo, hi, n) = triple(&c.grid, "--grid")?;
    Ok(LogGrid::new(lo, hi, n)?)
}

fn tolerances(c: &Common) -> CliResult<Tolerances> {
    if !(c.boundary_tol.is_finite() && c.boundary_tol >= 0.0) {
        return Err(CliError::Usage("--boundary-tol must be a non-negative number".into()));
    }
    Ok(Tolerances { boundary_rel: c.boundary_tol, ..Tolerances::default() })
}

fn emit_json(c: &Common, v: &serde_json::Value) -> CliResult<()> {
    let mut w = output::sink(c.output.as_deref())?;
    serde_json::to_writer_pretty(&mut w, v).map_err(|e| CliError::Io(e.into()))?;
    writeln!(w)?;
    Ok(())
}

fn emit_text(c: &Common, lines: &[String]) -> CliResult<()> {
    let mut w = output::sink(c.output.as_deref())?;
    for l in lines {
        writeln!(w, "{l}")?;
    }
    Ok(())
}

fn verdict(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "fail"
    }
}

fn cmd_check(c: &Common) -> CliResult<bool> {
    let cfg = Config::load(&c.config)?;
    let p = cfg.params()?;
    let vc = cfg.coupler()?;
    let tol = tolerances(c)?;
    let omegas = grid_of(c)?.frequencies();
    let (pass, rows) = match c.criterion {
        CriterionArg::Passivity => {
            let r = check_two_port_passivity(&p, &vc, &tol)?;
            (r.overall, passivity_rows(&p, &vc, &r))
        }
        CriterionArg::Absolute => {
            let r = check_absolute_stability(&p, &vc, &omegas, &tol)?;
            let exact = absolute_stability_exact(&p, &vc)?;
            let pass = r.condition_a.pass && r.condition_b.pass && r.condition_c_i.pass && exact;
            (pass, absolute_rows(&r, exact, pass))
        }
    };
    match c.format {
        None => {
            let lines: Vec<String> = rows.iter().map(|(k, v)| format!("{k}: {v}")).collect();
            emit_text(c, &lines)?;
        }
        Some(Format::Csv) => output::key_values_csv(output::sink(c.output.as_deref())?, &rows)?,
        Some(Format::Json) => {
            let map: serde_json::Map<_, _> = rows.into_iter().map(|(k, v)| (k, json!(v))).collect();
            emit_json(c, &serde_json::Value::Object(map))?;
        }
    }
    Ok(pass)
}

fn passivity_rows(p: &SystemParams, vc: &VirtualCoupler, r: &PassivityReport) -> Vec<(String, String)> {
    let mut rows = Vec::new();
    let a = &r.condition_a;
    let detail = if a.closed_form {
        format!("Routh margin {}", g9(a.margin))
    } else {
        "reduced denominator, exact root location".to_string()
    };
    rows.push(("condition a".into(), format!("{} ({detail})", verdict(a.pass))));
    let b = &r.condition_b;
    let detail = if b.vacuous {
        "no imaginary-axis poles".to_string()
    } else {
        let poles: Vec<String> = b.axis_poles.iter().map(|w| g9(*w)).collect();
        format!("imaginary-axis poles at {} rad/s", poles.join(", "))
    };
    rows.push(("condition b".into(), format!("{} ({detail})", verdict(b.pass))));
    let ci = &r.condition_c_i;
    let detail = match (ci.branch, ci.failure, ci.witness_frequency) {
        (Some(br), _, _) => format!("branch {br:?}").to_lowercase(),
        (None, Some(f), Some(w)) => format!("{f:?} violated at omega = {} rad/s", g9(w)).to_lowercase(),
        (None, Some(f), None) => format!("{f:?} violated").to_lowercase(),
        (None, None, _) => "exact polynomial test".to_string(),
    };
    rows.push(("condition c-i".into(), format!("{} ({detail})", verdict(ci.pass))));
    let cii = &r.condition_c_ii;
    let mut detail = match cii.failure {
        Some(f) => format!("failing inequality {}", f.id()),
        None => match cii.branch {
            Some(br) => format!("branch {br:?}").to_lowercase(),
            None => "exact polynomial test".to_string(),
        },
    };
    if let Some(w) = cii.witness_frequency {
        detail.push_str(&format!(", violated at omega = {} rad/s", g9(w)));
    }
    detail.push_str(&format!(", margin {}", g9(cii.margin)));
    rows.push(("condition c-ii".into(), format!("{} ({detail})", verdict(cii.pass))));
    let routes = a.routes_agree && b.routes_agree && ci.routes_agree && cii.routes_agree;
    rows.push(("closed forms agree with exact tests".into(), yes_no(routes).into()));
    rows.push(("grid determinant minimum".into(), g9(r.grid_margin)));
    if vc.b22 > 0.0 {
        let bound = match k22_upper_bound(p, vc.b22) {
            Ok(k) => format!("{} ({} x Kf)", g9(k), g9(k / p.k_f)),
            Err(e) => format!("none ({e})"),
        };
        rows.push((format!("k22 bound at b22 = {}", g9(vc.b22)), bound));
    }
    rows.push(("two-port passive".into(), yes_no(r.overall).into()));
    rows
}

fn absolute_rows(r: &AbsoluteStabilityReport, exact: bool, pass: bool) -> Vec<(String, String)> {
    vec![
        ("condition a".into(), verdict(r.condition_a.pass).into()),
        ("condition b".into(), verdict(r.condition_b.pass).into()),
        ("condition c-i".into(), verdict(r.condition_c_i.pass).into()),
        (
            "coupled inequality on grid".into(),
            format!(
                "{} (minimum {} at omega = {} rad/s)",
                verdict(r.condition_c_ii),
                g9(r.min_margin),
                g9(r.argmin_frequency)
            ),
        ),
        ("coupled inequality for all omega".into(), verdict(exact).into()),
        ("absolutely stable".into(), yes_no(pass).into()),
    ]
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn cmd_sweep(c: &Common, vary: &str, range: &str) -> CliResult<bool> {
    let base = Config::load(&c.config)?;
    let (lo, hi, n) = triple(range, "--range")?;
    if n == 0 || !lo.is_finite() || !hi.is_finite() {
        return Err(CliError::Usage("--range needs finite ends and at least one point".into()));
    }
    let tol = tolerances(c)?;
    let omegas = grid_of(c)?.frequencies();
    let mut rows: Vec<SweepRow> = Vec::with_capacity(n);
    // plant-side work is shared when only the coupler varies
    let fixed_plant = matches!(vary, "k22" | "b22");
    let mut plant_cache: Option<(bool, Option<PlantGrid>)> = None;
    for i in 0..n {
        let v = if n == 1 { lo } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 };
        let mut cfg = base.clone();
        cfg.set(vary, v)?;
        let p = cfg.params()?;
        let vc = cfg.coupler()?;
        if !fixed_plant || plant_cache.is_none() {
            let plant_ok = check_condition_a(&p, &tol)?.pass
                && check_condition_b(&p, &tol)?.pass
                && check_condition_c_i(&p)?.pass;
            let grid = match c.criterion {
                CriterionArg::Absolute => Some(PlantGrid::new(&p, &omegas)?),
                CriterionArg::Passivity => None,
            };
            plant_cache = Some((plant_ok, grid));
        }
        let (plant_ok, grid) = plant_cache.as_ref().expect("filled above");
        let row = match grid {
            None => {
                let cii = check_condition_c_ii(&p, &vc)?;
                (v, cii.margin, *plant_ok && cii.pass)
            }
            Some(g) => {
                coupler_admittance(&vc)?;
                let (m, _) = g.absolute_margin(&vc)?;
                (v, m, *plant_ok && m >= -tol.sampling_rel)
            }
        };
        rows.push(row);
    }
    match c.format.unwrap_or(Format::Csv) {
        Format::Csv => output::sweep_csv(output::sink(c.output.as_deref())?, &rows)?,
        Format::Json => emit_json(c, &output::sweep_json(vary, &rows))?,
    }
    Ok(true)
}

fn cmd_optimize(c: &Common, over: Over) -> CliResult<bool> {
    let cfg = Config::load(&c.config)?;
    let p = cfg.params()?;
    let opts = OptimizeOptions { grid: grid_of(c)?, tol: tolerances(c)?, ..OptimizeOptions::default() };
    let criterion = Criterion::from(c.criterion);
    let r = match over {
        Over::B22 => maximize_k22_with(&p, criterion, &opts)?,
        Over::B22Alpha => maximize_k22_over_alpha_with(&p, criterion, &opts)?,
    };
    let feasible = r.k22_max > 0.0;
    match c.format {
        Some(Format::Json) => {
            let v = json!({
                "criterion": match criterion {
                    Criterion::TwoPortPassivity => "passivity",
                    Criterion::AbsoluteStability => "absolute",
                },
                "k22_max": r.k22_max,
                "b22_opt": r.b22_opt,
                "alpha_opt": r.alpha_opt.unwrap_or(p.alpha),
                "evaluations": r.trace.len(),
                "guard_ok": r.guard_ok,
                "note": r.note,
            });
            emit_json(c, &v)?;
        }
        Some(Format::Csv) => {
            let mut rows = vec![
                ("k22_max".to_string(), g9(r.k22_max)),
                ("b22_opt".to_string(), g9(r.b22_opt)),
                ("alpha_opt".to_string(), g9(r.alpha_opt.unwrap_or(p.alpha))),
            ];
            if let Some(n) = r.note {
                rows.push(("note".into(), n.into()));
            }
            output::key_values_csv(output::sink(c.output.as_deref())?, &rows)?;
        }
        None => {
            let mut lines = Vec::new();
            match r.note {
                Some(n) if !feasible => lines.push(format!("infeasible: {n}")),
                _ => {
                    lines.push(format!("k22_max: {:.1} N*m/rad", r.k22_max));
                    lines.push(format!("b22_opt: {:.3} N*m*s/rad", r.b22_opt));
                    lines.push(format!("alpha: {:.3}", r.alpha_opt.unwrap_or(p.alpha)));
                    lines.push(format!("k22_max / Kf: {:.3}", r.k22_max / p.k_f));
                }
            }
            if !r.guard_ok {
                lines.push("warning: the guard sweep found a better point than the bracketed search".into());
            }
            emit_text(c, &lines)?;
        }
    }
    Ok(feasible)
}

fn environment(spec: &str) -> CliResult<EnvironmentModel> {
    let bad = || CliError::Usage(format!("unknown environment {spec:?}"));
    let num = |s: &str| s.parse::<f64>().map_err(|_| bad());
    let parts: Vec<&str> = spec.split(':').collect();
    Ok(match parts.as_slice() {
        ["null"] => EnvironmentModel::Null,
        ["spring", ke] => EnvironmentModel::Spring { ke: num(ke)? },
        ["damper", be] => EnvironmentModel::Damper { be: num(be)? },
        ["voigt", ke, be] => EnvironmentModel::Voigt { ke: num(ke)?, be: num(be)? },
        _ => return Err(bad()),
    })
}

fn cmd_bode(c: &Common, target: &str) -> CliResult<bool> {
    let cfg = Config::load(&c.config)?;
    let p = cfg.params()?;
    let z: RationalFunction = match target {
        "h11" => plant_transfer(&p)?.h11(),
        "h12" => plant_transfer(&p)?.h12(),
        "h22" => coupler_admittance(&cfg.coupler()?)?,
        t => match t.strip_prefix("zto:") {
            Some(env) => {
                let h = hybrid_matrix(&p, &cfg.coupler()?)?;
                transmitted_impedance(&h, &environment(env)?)?
            }
            None => return Err(CliError::Usage(format!("unknown target {t:?}"))),
        },
    };
    let points = frequency_response(&z, &grid_of(c)?.frequencies())?;
    match c.format.unwrap_or(Format::Csv) {
        Format::Csv => output::bode_csv(output::sink(c.output.as_deref())?, &points)?,
        Format::Json => emit_json(c, &output::bode_json(&points))?,
    }
    Ok(true)
}
