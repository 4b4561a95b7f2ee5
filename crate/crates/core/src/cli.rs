//! Command-line front end. [`run_command`] is the whole program; the binary
//! only forwards `argv` and the exit code.
//!
//! Exit codes: 0 when every check passed or was skipped, 1 when any check
//! failed, 2 for usage and configuration errors.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use crate::bounds::{corollary1_report, gv_check, theorem1_check, theorem2_report};
use crate::complexroots::verify_theorem3_instance;
use crate::config::Config;
use crate::ffield::{subgroup_of_order, FieldCtx};
use crate::independence::{lemma1_pipeline, Lemma1Input};
use crate::oracle::{coset_intersection, enumerate_m, verify_instance, InstanceSpec, Status};
use crate::poly::DensePoly;
use crate::stepanov::{
    check_admissible_polys, compute_params, construct_certificate, verify_certificate, PolySystem,
};
use crate::sweep::{run_sweep, SweepOptions};
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "stepanov",
    version,
    about = "Stepanov-method certificates over prime fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args, Clone, Default)]
struct InstanceArgs {
    /// JSON config supplying any field not given on the command line.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    t: Option<u64>,
    /// Ascending residues, e.g. "1020,1" for x - 1 mod 1021. Repeatable.
    #[arg(long = "poly")]
    polys: Vec<String>,
    /// Coset representative per polynomial. Repeatable; defaults to 1.
    #[arg(long = "coset")]
    cosets: Vec<u64>,
}

impl InstanceArgs {
    fn merged(&self) -> Result<Config> {
        let mut cfg = match &self.config {
            Some(path) => Config::load(path)?,
            None => Config::default(),
        };
        if self.p.is_some() {
            cfg.p = self.p;
        }
        if self.t.is_some() {
            cfg.t = self.t;
        }
        if !self.polys.is_empty() {
            cfg.polys = self.polys.clone();
        }
        if !self.cosets.is_empty() {
            cfg.cosets = self.cosets.clone();
        }
        Ok(cfg)
    }

    fn instance(&self) -> Result<(InstanceSpec, Option<u64>)> {
        let cfg = self.merged()?;
        Ok((cfg.instance()?, cfg.seed))
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the admissibility conditions for a set of polynomials.
    Admissible(InstanceArgs),
    /// Print the parameters and every hypothesis flag.
    Params(InstanceArgs),
    /// Enumerate M and M' exhaustively.
    Enumerate(InstanceArgs),
    /// Build the auxiliary polynomial and emit the certificate.
    Construct(InstanceArgs),
    /// Full single-instance report.
    Verify(InstanceArgs),
    /// Intersection of the subgroup with its shifts, with the single-shift
    /// and many-shift bounds.
    Intersect {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        t: u64,
        #[arg(long = "shift", required = true)]
        shifts: Vec<u64>,
    },
    /// Independence pipeline for f_1..f_{n-1}.
    Lemma1 {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        t: u64,
        #[arg(long = "poly", required = true)]
        polys: Vec<String>,
        #[arg(long)]
        a: u64,
        #[arg(long = "b", required = true)]
        b: Vec<u64>,
        #[arg(long)]
        last_degree: Option<u64>,
    },
    /// Roots-of-unity instance over the complex numbers.
    Complex {
        #[arg(long)]
        t: u64,
        /// Ascending coefficients, each "re" or "re:im". Repeatable.
        #[arg(long = "poly", required = true, allow_hyphen_values = true)]
        polys: Vec<String>,
        /// Representative "re" or "re:im" per polynomial; defaults to 1.
        #[arg(long = "coset", allow_hyphen_values = true)]
        cosets: Vec<String>,
    },
    /// Batch run over a config file's sweep section.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// JSON-lines results; existing rows are kept and skipped.
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        threads: Option<usize>,
    },
}

fn emit<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()))?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn status_code(status: Status) -> i32 {
    match status {
        Status::Failed => EXIT_FAILED,
        Status::Passed | Status::Skipped => EXIT_OK,
    }
}

fn parse_complex(s: &str) -> Result<Complex64> {
    let bad = |reason: &str| Error::Precondition(format!("bad complex number {s:?}: {reason}"));
    let mut parts = s.trim().splitn(2, ':');
    let re: f64 = parts
        .next()
        .unwrap_or("")
        .trim()
        .parse()
        .map_err(|_| bad("real part"))?;
    let im: f64 = match parts.next() {
        Some(x) => x.trim().parse().map_err(|_| bad("imaginary part"))?,
        None => 0.0,
    };
    Ok(Complex64::new(re, im))
}

fn parse_complex_poly(s: &str) -> Result<Vec<Complex64>> {
    s.split(',').map(parse_complex).collect()
}

fn run(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Admissible(args) => {
            let cfg = args.merged()?;
            let polys = cfg.polynomials()?;
            if polys.is_empty() {
                return Err(Error::Config("no polynomials given".into()));
            }
            let report = check_admissible_polys(&polys);
            let reason = report.reason();
            emit(
                out,
                &json!({"admissible": report.admissible, "reason": reason, "report": report}),
            )?;
            Ok(if report.admissible {
                EXIT_OK
            } else {
                EXIT_FAILED
            })
        }
        Command::Params(args) => {
            let (spec, _) = args.instance()?;
            let sys = PolySystem::new(FieldCtx::new(spec.p)?, spec.polys)?;
            let window = theorem2_report(sys.degrees(), spec.p, spec.t, 0);
            let params = compute_params(&sys, spec.t);
            let (params, error) = match params {
                Ok(p) => (Some(p), None),
                Err(e @ Error::DegenerateParams(_)) => (None, Some(e.to_string())),
                Err(e) => return Err(e),
            };
            let ok = window.window_ok && params.as_ref().is_some_and(|p| p.hypotheses_ok());
            let status = if ok { "OK" } else { "SKIPPED" };
            emit(
                out,
                &json!({
                    "status": status,
                    "window_ok": window.window_ok,
                    "lower_window": window.lower_window,
                    "upper_window": window.upper_window,
                    "constants": window.constants,
                    "params": params,
                    "failed_conditions": params.as_ref().map(|p| p.failed_conditions()),
                    "error": error,
                }),
            )?;
            Ok(EXIT_OK)
        }
        Command::Enumerate(args) => {
            let (spec, _) = args.instance()?;
            let ctx = FieldCtx::new(spec.p)?;
            let sys = PolySystem::new(ctx, spec.polys)?;
            let sg = subgroup_of_order(&ctx, spec.t)?;
            let cosets = spec
                .cosets
                .iter()
                .map(|&g| sg.coset(g))
                .collect::<Result<Vec<_>>>()?;
            let en = enumerate_m(&sys, &cosets)?;
            emit(
                out,
                &json!({"p": spec.p, "t": spec.t, "size": en.m.len(), "result": en}),
            )?;
            Ok(EXIT_OK)
        }
        Command::Construct(args) => {
            let (spec, _) = args.instance()?;
            let ctx = FieldCtx::new(spec.p)?;
            let sys = PolySystem::new(ctx, spec.polys)?;
            let sg = subgroup_of_order(&ctx, spec.t)?;
            let cosets = spec
                .cosets
                .iter()
                .map(|&g| sg.coset(g))
                .collect::<Result<Vec<_>>>()?;
            let params = compute_params(&sys, spec.t)?;
            if !params.hypotheses_ok() {
                emit(
                    out,
                    &json!({"status": "SKIPPED", "failed_conditions": params.failed_conditions(), "params": params}),
                )?;
                return Ok(EXIT_OK);
            }
            let cert = match construct_certificate(&sys, &params, &cosets) {
                Ok(c) => c,
                Err(e) => {
                    emit(out, &json!({"status": "FAILED", "error": e.to_string()}))?;
                    return Ok(EXIT_FAILED);
                }
            };
            let en = enumerate_m(&sys, &cosets)?;
            let outcome = verify_certificate(&cert, &en.m_prime, &sys)?;
            let status = if outcome.passed { "PASSED" } else { "FAILED" };
            emit(
                out,
                &json!({
                    "status": status,
                    "d": cert.d,
                    "deg_psi": cert.deg_psi,
                    "psi": cert.psi.to_text(),
                    "lambda": cert.lambda_entries(),
                    "verification": outcome,
                }),
            )?;
            Ok(if outcome.passed { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Verify(args) => {
            let (spec, seed) = args.instance()?;
            let mut report = verify_instance(&spec)?;
            report.seed = seed;
            emit(out, &report)?;
            Ok(status_code(report.status))
        }
        Command::Intersect { p, t, shifts } => {
            let ctx = FieldCtx::new(p)?;
            let set = coset_intersection(&ctx, t, &shifts)?;
            let size = set.len() as u64;
            let gv = (shifts.len() == 1).then(|| gv_check(t, size, p));
            let thm1 = theorem1_check(t, shifts.len() as u32, size, p);
            let cor = corollary1_report(shifts.len() + 1, p, t, size);
            let failed = gv.is_some_and(|g| g.hypothesis_ok && !g.bound_ok)
                || (thm1.size_hypothesis && thm1.field_hypothesis && !thm1.bound_ok)
                || (cor.window_ok && !cor.bound_holds);
            emit(
                out,
                &json!({
                    "status": if failed { "FAILED" } else { "PASSED" },
                    "p": p, "t": t, "shifts": shifts,
                    "size": size, "elements": set,
                    "gv": gv, "theorem1": thm1, "corollary1": cor,
                }),
            )?;
            Ok(if failed { EXIT_FAILED } else { EXIT_OK })
        }
        Command::Lemma1 {
            p,
            t,
            polys,
            a,
            b,
            last_degree,
        } => {
            let ctx = FieldCtx::new(p)?;
            let polys = polys
                .iter()
                .map(|s| DensePoly::parse(ctx, s))
                .collect::<Result<Vec<_>>>()?;
            let report = lemma1_pipeline(&Lemma1Input {
                polys,
                t,
                a,
                b,
                last_degree,
            })?;
            let status = match (report.hypotheses_ok, report.passed()) {
                (false, _) => "SKIPPED",
                (true, true) => "PASSED",
                (true, false) => "FAILED",
            };
            emit(out, &json!({"status": status, "report": report}))?;
            Ok(if status == "FAILED" {
                EXIT_FAILED
            } else {
                EXIT_OK
            })
        }
        Command::Complex { t, polys, cosets } => {
            let polys = polys
                .iter()
                .map(|s| parse_complex_poly(s))
                .collect::<Result<Vec<_>>>()?;
            let reps = if cosets.is_empty() {
                vec![Complex64::new(1.0, 0.0); polys.len()]
            } else {
                cosets
                    .iter()
                    .map(|s| parse_complex(s))
                    .collect::<Result<Vec<_>>>()?
            };
            let report = verify_theorem3_instance(&polys, t, &reps)?;
            emit(out, &report)?;
            Ok(status_code(report.status))
        }
        Command::Sweep {
            config,
            out: path,
            csv,
            threads,
        } => {
            let cfg = Config::load(&config)?;
            let summary = run_sweep(
                &cfg,
                &SweepOptions {
                    out: path,
                    csv,
                    threads,
                },
            )?;
            emit(out, &summary)?;
            Ok(if summary.all_ok() {
                EXIT_OK
            } else {
                EXIT_FAILED
            })
        }
    }
}

/// Parses `argv` (including the program name) and runs one subcommand.
pub fn run_command<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match run(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}
