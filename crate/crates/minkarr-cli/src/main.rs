//! `minkarr` command line: instance I/O, verification pipelines, generators,
//! and SVG rendering of planar covers.
//!
//! Exit codes are the machine contract: 0 on success (for `verify`: the
//! density bound holds), 1 on usage/input errors, 2 when the local
//! hypothesis fails, 3 when the configured depth bound is exceeded.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use minkarr::density::CertificateError;
use minkarr::generators;
use minkarr::io::{
    read_instance, write_instance, CertificateSection, CoverFile, DepthFile, HypothesisSection,
    ReportFile, VERDICT_SLACK,
};
use minkarr::svg::render_cover;
use minkarr::{
    check_hypothesis, default_depth_bound, global_ratio, greedy_cover, make_certificate, Instance,
    Point, TolerancePolicy,
};

#[derive(Parser)]
#[command(name = "minkarr", version, about = "Minkowski-arrangement covers, depth checks, and density certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the local hypothesis and emit a density certificate report.
    Verify {
        /// Instance JSON file.
        input: PathBuf,
        /// Depth bound: a positive integer, or "auto" (Euclidean plane: 5,
        /// l-infinity: 2^d, otherwise 3^d).
        #[arg(long, default_value = "auto")]
        depth_bound: String,
        /// Absolute containment tolerance.
        #[arg(long, default_value_t = 1e-9)]
        tol_abs: f64,
        /// Relative containment tolerance.
        #[arg(long, default_value_t = 1e-9)]
        tol_rel: f64,
    },
    /// Emit an instance JSON document on standard output.
    Generate {
        #[command(subcommand)]
        what: GenerateCommand,
    },
    /// Run the greedy cover; emit the selection as JSON, optionally as SVG.
    Cover {
        /// Instance JSON file.
        input: PathBuf,
        /// Write an SVG rendering here (planar instances only).
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Report how many members contain a probe point.
    Depth {
        /// Instance JSON file.
        input: PathBuf,
        /// Probe coordinates, comma-separated: x,y,...
        #[arg(long)]
        probe: String,
    },
}

#[derive(Subcommand)]
enum GenerateCommand {
    /// Five unit disks on a regular pentagon with one central blue point.
    Pentagon,
    /// 2^d unit cubes at the sign vectors with one blue point at the origin.
    Hypercube {
        #[arg(long)]
        d: usize,
    },
    /// Red points on a tangency segment whose witness translates all contain
    /// the blue points; the global ratio drops below eps.
    Counterexample {
        #[arg(long)]
        lambda: f64,
        #[arg(long)]
        eps: f64,
        /// Number of red points.
        #[arg(long)]
        n: usize,
    },
    /// Seeded random instance satisfying the local hypothesis.
    Random {
        #[arg(long)]
        seed: u64,
        /// Number of red points.
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// Norm body: "euclidean" or "linf".
        #[arg(long, default_value = "euclidean")]
        body: String,
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
        #[arg(long, default_value_t = 0.25)]
        radius_lo: f64,
        #[arg(long, default_value_t = 1.0)]
        radius_hi: f64,
        #[arg(long, default_value_t = 4.0)]
        box_side: f64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Verify { input, depth_bound, tol_abs, tol_rel } => {
            let inst = load_instance(&input)?;
            let tol = TolerancePolicy::new(tol_abs, tol_rel)
                .map_err(|e| anyhow::anyhow!("invalid tolerance flags: {e}"))?;
            let bound = resolve_depth_bound(&depth_bound, &inst)?;
            verify(&inst, bound, &tol)
        }
        Command::Generate { what } => {
            let inst = match what {
                GenerateCommand::Pentagon => generators::pentagon_tight(),
                GenerateCommand::Hypercube { d } => generators::hypercube_tight(d)?,
                GenerateCommand::Counterexample { lambda, eps, n } => {
                    let body = minkarr::NormBody::euclidean(2).expect("dimension 2 is valid");
                    generators::counterexample(&body, lambda, eps, n)?.instance
                }
                GenerateCommand::Random {
                    seed,
                    n,
                    dim,
                    body,
                    lambda,
                    radius_lo,
                    radius_hi,
                    box_side,
                } => {
                    let body = match body.as_str() {
                        "euclidean" => generators::RandomBody::Euclidean,
                        "linf" => generators::RandomBody::Linf,
                        other => bail!("unknown body {other:?}; expected \"euclidean\" or \"linf\""),
                    };
                    generators::random_instance(&generators::RandomSpec {
                        seed,
                        n_red: n,
                        dim,
                        body,
                        radius_range: (radius_lo, radius_hi),
                        box_side,
                        lambda,
                    })?
                }
            };
            println!("{}", write_instance(&inst));
            Ok(0)
        }
        Command::Cover { input, svg } => {
            let inst = load_instance(&input)?;
            let cover = greedy_cover(inst.red_family(), &TolerancePolicy::default());
            if let Some(path) = svg {
                let doc = render_cover(&inst, &cover)?;
                fs::write(&path, doc).with_context(|| format!("cannot write {}", path.display()))?;
            }
            println!("{}", serde_json::to_string_pretty(&CoverFile::from_result(&cover))?);
            Ok(0)
        }
        Command::Depth { input, probe } => {
            let inst = load_instance(&input)?;
            let coords: Vec<f64> = probe
                .split(',')
                .map(|s| s.trim().parse::<f64>().with_context(|| format!("malformed probe component {s:?}")))
                .collect::<Result<_>>()?;
            if coords.len() != inst.body().dim() {
                bail!(
                    "probe has {} coordinates but the instance dimension is {}",
                    coords.len(),
                    inst.body().dim()
                );
            }
            if coords.iter().any(|c| !c.is_finite()) {
                bail!("probe coordinates must be finite");
            }
            let report = inst.red_family().depth(&Point::new(coords), &TolerancePolicy::default());
            println!("{}", serde_json::to_string_pretty(&DepthFile::from_report(&report))?);
            Ok(0)
        }
    }
}

fn load_instance(path: &PathBuf) -> Result<Instance> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    Ok(read_instance(&text)?)
}

fn resolve_depth_bound(flag: &str, inst: &Instance) -> Result<usize> {
    if flag == "auto" {
        return default_depth_bound(inst.body())
            .context("dimension too large for an automatic depth bound");
    }
    let bound: usize = flag
        .parse()
        .with_context(|| format!("--depth-bound must be a positive integer or \"auto\", got {flag:?}"))?;
    if bound == 0 {
        bail!("--depth-bound must be at least 1");
    }
    Ok(bound)
}

fn verify(inst: &Instance, bound: usize, tol: &TolerancePolicy) -> Result<u8> {
    let hypothesis = check_hypothesis(inst, tol);
    let ratio = global_ratio(inst);
    let bound_value = inst.lambda() / bound as f64;

    let (certificate, verdict, code) = if !hypothesis.all_satisfied {
        (None, "hypothesis_failed", 2)
    } else {
        match make_certificate(inst, bound, tol) {
            Ok(cert) => {
                let holds = ratio >= bound_value - VERDICT_SLACK;
                (
                    Some(CertificateSection::from_certificate(&cert)),
                    if holds { "bound_holds" } else { "bound_violated" },
                    if holds { 0 } else { 3 },
                )
            }
            Err(CertificateError::DepthBoundExceeded { .. }) => (None, "depth_bound_exceeded", 3),
            Err(CertificateError::HypothesisNotSatisfied { .. }) => (None, "hypothesis_failed", 2),
        }
    };

    let report = ReportFile {
        hypothesis: HypothesisSection::from_report(&hypothesis),
        certificate,
        global_ratio: ratio,
        bound: bound_value,
        verdict: verdict.to_string(),
    };
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(code)
}
