mod args;
mod render;
mod scenario;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use rayon::prelude::*;

use udw_core::rates::{BathSpec, GeometrySpec, RateResult};
use udw_core::units::{self, Preset};
use udw_core::verify;

use args::{Cli, Command, EstimateArgs, Format, PresetName, RateArgs, SuiteName, SweepArgs, VerifyArgs};
use render::{Field, Record};
use scenario::{CliError, Scenario};

fn describe(rec: &mut Record, s: &Scenario) {
    rec.push("atoms", Field::Int(if s.cfg.is_some() { 2 } else { 1 }));
    match s.bath {
        BathSpec::Thermal { temperature } => rec.text("bath", "thermal").num("T_over_w0", temperature),
        BathSpec::UniformAcceleration { alpha } => rec.text("bath", "accel").num("alpha_over_w0", alpha),
    };
    match s.geom {
        GeometrySpec::FreeSpace => rec.text("geom", "free"),
        GeometrySpec::SingleBoundary { z0 } => rec.text("geom", "mirror").num("w0z0", z0),
        GeometrySpec::Cavity { length, z0 } => rec.text("geom", "cavity").num("w0L", length).num("w0z0", z0),
    };
    if let Some(c) = s.cfg {
        rec.num("w0d", c.d).num("theta", c.theta);
    }
    rec.text("dir", format!("{:?}", s.dir).to_lowercase());
}

fn cmd_rate(a: &RateArgs) -> Result<String, CliError> {
    let s = a.scenario.build()?;
    let r = s.evaluate()?;
    let mut rec = Record::new();
    describe(&mut rec, &s);
    rec.num("lambda", s.det.lambda)
        .num("geometric_factor", r.geometric_factor)
        .num("occupation_factor", r.occupation_factor)
        .num("rate", r.rate)
        .num("normalized_rate", r.normalized_rate)
        .push("terms_used", Field::Int(r.terms_used as u64));
    if let Some(ev) = a.scenario.omega0_ev {
        let rate_ev = r.rate * ev;
        rec.num("omega0_ev", ev)
            .num("rate_ev", rate_ev)
            .num("rate_per_s", units::rate_to_inverse_seconds(rate_ev.max(0.0))?);
    }
    let digits = a.output.fixed_digits;
    Ok(match a.output.format.unwrap_or(Format::Text) {
        Format::Text => rec.key_value(digits),
        Format::Csv => render::csv(&[rec], digits),
        Format::Json => render::json_object(&rec),
    })
}

fn linspace(min: f64, max: f64, steps: usize) -> Result<Vec<f64>, CliError> {
    if !(min.is_finite() && max.is_finite() && min < max) {
        return Err(CliError::invalid(format!("sweep needs finite --min < --max, got {min} and {max}")));
    }
    if steps < 2 {
        return Err(CliError::invalid("sweep needs --steps >= 2"));
    }
    Ok((0..steps)
        .map(|i| if i + 1 == steps { max } else { min + (max - min) * i as f64 / (steps - 1) as f64 })
        .collect())
}

fn sweep_row(name: &str, x: f64, r: &Result<RateResult, CliError>) -> Record {
    let mut rec = Record::new();
    rec.num(name, x);
    match r {
        Ok(r) => {
            rec.num("normalized_rate", r.normalized_rate)
                .num("geometric_factor", r.geometric_factor)
                .num("occupation_factor", r.occupation_factor)
                .push("converged", Field::Bool(true));
        }
        Err(_) => {
            rec.push("normalized_rate", Field::Missing)
                .push("geometric_factor", Field::Missing)
                .push("occupation_factor", Field::Missing)
                .push("converged", Field::Bool(false));
        }
    }
    rec
}

/// Table text and the number of failed points.
fn cmd_sweep(a: &SweepArgs) -> Result<(String, usize), CliError> {
    let xs = linspace(a.min, a.max, a.steps)?;
    // Reject a malformed scenario once instead of flagging every row.
    a.scenario.with_axis(a.axis, xs[0])?;
    let results: Vec<Result<RateResult, CliError>> = xs
        .par_iter()
        .map(|&x| {
            let s = a.scenario.with_axis(a.axis, x)?.build()?;
            Ok(s.evaluate()?)
        })
        .collect();
    let mut failures = 0;
    let rows: Vec<Record> = xs
        .iter()
        .zip(&results)
        .map(|(&x, r)| {
            if let Err(e) = r {
                failures += 1;
                log::warn!("{} = {x}: {e}", a.axis.name());
            }
            sweep_row(a.axis.name(), x, r)
        })
        .collect();
    let text = match a.output.format.unwrap_or(Format::Csv) {
        Format::Csv => render::csv(&rows, a.output.fixed_digits),
        Format::Json => render::json_array(&rows),
        Format::Text => return Err(CliError::invalid("sweep output is csv or json")),
    };
    Ok((text, failures))
}

fn compare(rec: &mut Record, key: &str, got: f64, published: f64) {
    rec.num(key, got)
        .num(&format!("{key}_published"), published)
        .num(&format!("{key}_rel_dev"), (got - published) / published);
}

fn cmd_estimate(a: &EstimateArgs) -> Result<String, CliError> {
    let preset: &Preset = match a.preset {
        PresetName::Rb87 => &units::RB87,
        PresetName::Cs133 => &units::CS133,
    };
    let d = preset.dimensionless(a.rounded)?;
    let e = preset.estimate(a.rounded)?;
    let mut rec = Record::new();
    rec.text("preset", preset.name)
        .text("inputs", if a.rounded { "rounded" } else { "exact" })
        .num("omega0_ev", preset.lab.omega0_ev)
        .num("lambda", preset.lab.lambda)
        .num("T_over_w0", d.t_over_w0)
        .num("w0L", d.w0l)
        .num("w0z0", d.w0z0);
    let p = preset.published;
    if a.atoms == 1 {
        compare(&mut rec, "rate_ev", e.single_ev, p.single_ev);
        compare(&mut rec, "rate_per_s", e.single_per_s, p.single_per_s);
    } else {
        let (ev, per_s) = match (d.w0d, e.two_atom_ev, e.two_atom_per_s) {
            (Some(w0d), Some(ev), Some(s)) => {
                rec.num("w0d", w0d).num("theta", preset.lab.theta.unwrap_or(std::f64::consts::FRAC_PI_4));
                (ev, s)
            }
            _ => return Err(CliError::invalid("preset has no two-atom separation")),
        };
        compare(&mut rec, "rate_ev", ev, p.two_atom_ev);
        compare(&mut rec, "rate_per_s", per_s, p.two_atom_per_s);
    }
    let digits = a.output.fixed_digits;
    Ok(match a.output.format.unwrap_or(Format::Text) {
        Format::Text => rec.key_value(digits),
        Format::Csv => render::csv(&[rec], digits),
        Format::Json => render::json_object(&rec),
    })
}

/// Report text and whether every check passed.
fn cmd_verify(a: &VerifyArgs) -> Result<(String, bool), CliError> {
    let name = match a.suite {
        SuiteName::Balance => "balance",
        SuiteName::Equivalence => "equivalence",
        SuiteName::Limits => "limits",
        SuiteName::Oracle => "oracle",
        SuiteName::Wightman => "wightman",
        SuiteName::All => "all",
    };
    let checks = verify::run(name)?;
    let ok = checks.iter().all(|c| c.passed);
    let digits = a.output.fixed_digits;
    let recs: Vec<Record> = checks
        .iter()
        .map(|c| {
            let mut r = Record::new();
            r.text("status", if c.passed { "PASS" } else { "FAIL" })
                .text("suite", c.suite)
                .text("check", c.name.clone())
                .num("worst", c.worst)
                .text("bound", if c.lower_bound { ">" } else { "<=" })
                .num("tolerance", c.tolerance);
            if let Some(e) = &c.error {
                r.text("error", e.clone());
            }
            r
        })
        .collect();
    let text = match a.output.format.unwrap_or(Format::Text) {
        Format::Text => checks
            .iter()
            .map(|c| {
                let bound = if c.lower_bound { ">" } else { "<=" };
                let mut line = format!(
                    "{} {}: {} (worst {} {bound} {})",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.suite,
                    c.name,
                    render::float(c.worst, digits),
                    render::float(c.tolerance, digits)
                );
                if let Some(e) = &c.error {
                    line.push_str(&format!(" error: {e}"));
                }
                line + "\n"
            })
            .collect(),
        Format::Json => render::json_array(&recs),
        Format::Csv => return Err(CliError::invalid("verify output is text or json")),
    };
    Ok((text, ok))
}

fn emit(text: &str, path: Option<&std::path::Path>) -> Result<(), CliError> {
    let res = match path {
        Some(p) => std::fs::write(p, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    res.map_err(|e| CliError { code: 2, message: format!("cannot write output: {e}") })
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Rate(a) => emit(&cmd_rate(&a)?, None).map(|_| 0),
        Command::Sweep(a) => {
            let (text, failures) = cmd_sweep(&a)?;
            emit(&text, a.output_file.as_deref())?;
            if failures > 0 {
                eprintln!("{failures} of {} sweep points failed", a.steps);
                return Ok(4);
            }
            Ok(0)
        }
        Command::Estimate(a) => emit(&cmd_estimate(&a)?, None).map(|_| 0),
        Command::Verify(a) => {
            let (text, ok) = cmd_verify(&a)?;
            emit(&text, None)?;
            Ok(if ok { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
