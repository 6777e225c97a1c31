//! Command-line front end.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::covering::{
    build_annulus_covering, build_punctured_disk_covering, classify_trace, core_loop, correspondence_check, lift_curve,
    path_to_boundary, radial_trace, CorrespondenceReport, CoveringError, ExplicitCovering, RadialClass,
};
use crate::domain::{load_system, Domain, DomainError, DomainSpec};
use crate::exhaustion::{
    associated_addresses_of, classify_depth, depth_of_stream, radial_type_of, AssociatedAddress, DepthClass, DepthSequence,
    ExhaustionError, RadialType,
};
use crate::group::{code_boundary_point, limit_set_cover, CodingOptions, GroupError, Letter, SchottkySystem, StreamTail};
use crate::harmonic::{harmonic_measure_annulus, HarmonicError, HarmonicEstimate, MethodRequest};
use crate::prime_ends::{
    classify_prime_end, detect_true_crosscut, impression_of_chain, AdmissibleChain, Impression, PrimeEndClass,
    PrimeEndError, TrueCrosscutReport,
};
use crate::render::{svg_limit_set, svg_path, svg_planar};

const CSV_HELP: &str = "\
CSV outputs:
  cover       t,re,im             radial samples t and the value π(t·e^{iθ})
  lift        s,curve_re,curve_im,lift_re,lift_im
                                  curve parameter, curve point in the domain, lifted point in the disk
  limit-set   depth,start,end,length
                                  one row per arc of each cover (angles in radians)";

#[derive(Debug, Parser)]
#[command(name = "boundary-lab", version, about = "Boundary behaviour of universal coverings of plane domains", after_help = CSV_HELP)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct SystemArgs {
    /// Fixture name (cyclic, pants, rank2_interleaved, parabolic, mixed, nested_chains,
    /// binary_tree, dense_punctures, trivial) or a JSON file.
    #[arg(long)]
    pub system: String,
    /// Level horizon used to truncate infinite families.
    #[arg(long, default_value_t = 8)]
    pub levels: u32,
}

#[derive(Debug, Args)]
pub struct CoveringArgs {
    /// Outer radius R of the annulus {1/R < |z| < R}.
    #[arg(long, conflicts_with = "punctured")]
    pub annulus: Option<f64>,
    /// Use the punctured unit disk.
    #[arg(long)]
    pub punctured: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Itinerary, depth sequence, radial type and associated addresses of boundary points.
    Classify {
        #[command(flatten)]
        system: SystemArgs,
        /// An angle (accepts forms like 0.3, pi/3, -2pi/5) or an interval `a..b`.
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
        /// Maximum number of itinerary letters.
        #[arg(long, default_value_t = 64)]
        horizon: usize,
        /// Number of evenly spaced points classified when --theta is an interval.
        #[arg(long, default_value_t = 16)]
        samples: usize,
    },
    /// Covers of the limit set at depths 0..=depth.
    LimitSet {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long)]
        depth: usize,
        /// Output file: .svg draws the covers, .csv lists the arcs, anything else gets JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Depth sequence of a boundary point.
    Depth {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
        #[arg(long, default_value_t = 64)]
        horizon: usize,
    },
    /// Prime-end class and impression at an escaping boundary point.
    PrimeEnd {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
        #[arg(long, default_value_t = 64)]
        horizon: usize,
    },
    /// Search for a gap carrying a true crosscut.
    TrueCrosscut {
        #[command(flatten)]
        system: SystemArgs,
        /// Level horizon examined for infinite families.
        #[arg(long, default_value_t = 12)]
        depth: u32,
    },
    /// Radial trace of an explicit covering, as CSV.
    Cover {
        #[command(flatten)]
        covering: CoveringArgs,
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
        #[arg(long, default_value_t = 64)]
        samples: usize,
        #[arg(long, default_value_t = 1.0 - 1e-12)]
        t_max: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lift a curve of the domain to the disk, as CSV.
    Lift {
        #[command(flatten)]
        covering: CoveringArgs,
        /// `core` (loop around the core circle) or `boundary` (path toward --p).
        #[arg(long, default_value = "core")]
        curve: String,
        /// Number of core loops.
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        k: i32,
        /// Boundary point `re,im` for the boundary curve.
        #[arg(long, allow_hyphen_values = true)]
        p: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare lifts of two paths to a boundary point that differ by k core loops.
    Correspond {
        #[command(flatten)]
        covering: CoveringArgs,
        /// Boundary point `re,im`.
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        k: i32,
    },
    /// Harmonic measure of the inner circle of the annulus {1/R < |z| < R}.
    Harmonic {
        #[arg(long)]
        annulus: f64,
        /// Point `re` or `re,im`.
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        /// Number of Monte-Carlo walks; the closed form is used when absent.
        #[arg(long)]
        mc: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// SVG of a system's limit-set covers or of a domain document.
    Render {
        #[arg(long, conflicts_with = "domain")]
        system: Option<String>,
        #[arg(long)]
        domain: Option<PathBuf>,
        #[arg(long, default_value_t = 8)]
        levels: u32,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("GroupError: {0}")]
    Group(#[from] GroupError),
    #[error("ExhaustionError: {0}")]
    Exhaustion(#[from] ExhaustionError),
    #[error("PrimeEndError: {0}")]
    PrimeEnd(#[from] PrimeEndError),
    #[error("CoveringError: {0}")]
    Covering(#[from] CoveringError),
    #[error("HarmonicError: {0}")]
    Harmonic(#[from] HarmonicError),
    #[error("DomainError: {0}")]
    Domain(#[from] DomainError),
    #[error("usage: {0}")]
    Usage(String),
    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub theta: f64,
    pub itinerary: Vec<Letter>,
    pub tail: StreamTail,
    pub depths: DepthSequence,
    pub depth_class: DepthClass,
    pub radial_type: RadialType,
    pub associated_addresses: Vec<AssociatedAddress>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DepthReport {
    pub theta: f64,
    pub depths: DepthSequence,
    pub depth_class: DepthClass,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrimeEndReport {
    pub theta: f64,
    pub class: PrimeEndClass,
    pub impression: Impression,
    pub certificate: AdmissibleChain,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverSummary {
    pub depth: usize,
    pub arcs: usize,
    pub total_length: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitSetReport {
    pub covers: Vec<CoverSummary>,
}

/// Angle literal: a number, or `[±][k]pi[/m]`.
pub fn parse_angle(s: &str) -> Result<f64, CliError> {
    let t = s.trim().to_ascii_lowercase().replace('π', "pi");
    if let Ok(v) = t.parse::<f64>() {
        return Ok(v);
    }
    let bad = || CliError::Usage(format!("cannot parse angle {s:?}"));
    let (sign, rest) = match t.strip_prefix('-') {
        Some(r) => (-1.0, r),
        None => (1.0, t.strip_prefix('+').unwrap_or(&t)),
    };
    let (num, den) = match rest.split_once('/') {
        Some((n, d)) => (n, d.parse::<f64>().map_err(|_| bad())?),
        None => (rest, 1.0),
    };
    let k = num.strip_suffix("pi").ok_or_else(bad)?.trim_end_matches('*');
    let k = if k.is_empty() { 1.0 } else { k.parse::<f64>().map_err(|_| bad())? };
    Ok(sign * k * PI / den)
}

fn parse_point(s: &str) -> Result<Complex64, CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    let num = |x: &str| x.trim().parse::<f64>().map_err(|_| CliError::Usage(format!("cannot parse point {s:?}")));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(CliError::Usage(format!("cannot parse point {s:?}"))),
    }
}

fn thetas(spec: &str, samples: usize) -> Result<Vec<f64>, CliError> {
    match spec.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (parse_angle(a)?, parse_angle(b)?);
            let n = samples.max(1);
            Ok((0..n).map(|k| a + (b - a) * (k as f64 + 0.5) / n as f64).collect())
        }
        None => Ok(vec![parse_angle(spec)?]),
    }
}

fn system(args: &SystemArgs) -> Result<SchottkySystem, CliError> {
    Ok(load_system(&args.system, args.levels)?)
}

fn covering(args: &CoveringArgs) -> Result<ExplicitCovering, CliError> {
    match (args.annulus, args.punctured) {
        (Some(r), false) => Ok(build_annulus_covering(r)?),
        (None, true) => Ok(build_punctured_disk_covering()),
        _ => Err(CliError::Usage("give exactly one of --annulus R or --punctured".into())),
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable report");
    s.push('\n');
    s
}

pub fn classify_report(sys: &SchottkySystem, theta: f64, horizon: usize) -> Result<ClassifyReport, CliError> {
    let opts = CodingOptions { max_letters: horizon, ..Default::default() };
    let stream = code_boundary_point(sys, theta, &opts)?;
    let depths = depth_of_stream(sys, &stream);
    let depth_class = classify_depth(&depths);
    Ok(ClassifyReport {
        theta: stream.theta,
        itinerary: stream.itinerary.clone(),
        tail: stream.tail.clone(),
        depth_class,
        radial_type: radial_type_of(depth_class),
        associated_addresses: associated_addresses_of(sys, &stream)?,
        depths,
    })
}

fn emit(out: &Option<PathBuf>, text: &str, stdout: &mut String) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io { path: path.clone(), source }),
        None => {
            stdout.push_str(text);
            Ok(())
        }
    }
}

/// Execute a parsed command, returning what goes to standard output.
pub fn execute(cli: Cli) -> Result<String, CliError> {
    let mut stdout = String::new();
    match cli.command {
        Command::Classify { system: s, theta, horizon, samples } => {
            let sys = system(&s)?;
            let ts = thetas(&theta, samples)?;
            if ts.len() == 1 {
                stdout = json(&classify_report(&sys, ts[0], horizon)?);
            } else {
                let reports = ts.iter().map(|t| classify_report(&sys, *t, horizon)).collect::<Result<Vec<_>, _>>()?;
                stdout = json(&reports);
            }
        }
        Command::LimitSet { system: s, depth, out } => {
            let sys = system(&s)?;
            let covers = (0..=depth).map(|d| limit_set_cover(&sys, d)).collect::<Result<Vec<_>, _>>()?;
            let summary = LimitSetReport {
                covers: covers.iter().map(|c| CoverSummary { depth: c.depth, arcs: c.arcs.len(), total_length: c.total_length }).collect(),
            };
            let ext = out.as_ref().and_then(|p| p.extension()).and_then(|e| e.to_str()).map(str::to_ascii_lowercase);
            match ext.as_deref() {
                Some("svg") => {
                    emit(&out, &svg_limit_set(&covers), &mut stdout)?;
                    stdout.push_str(&json(&summary));
                }
                Some("csv") => {
                    let mut csv = String::from("depth,start,end,length\n");
                    for c in &covers {
                        for a in &c.arcs {
                            let _ = writeln!(csv, "{},{:.17e},{:.17e},{:.17e}", c.depth, a.start(), a.end(), a.length());
                        }
                    }
                    emit(&out, &csv, &mut stdout)?;
                    stdout.push_str(&json(&summary));
                }
                _ => emit(&out, &json(&summary), &mut stdout)?,
            }
        }
        Command::Depth { system: s, theta, horizon } => {
            let sys = system(&s)?;
            let r = classify_report(&sys, parse_angle(&theta)?, horizon)?;
            stdout = json(&DepthReport { theta: r.theta, depths: r.depths, depth_class: r.depth_class });
        }
        Command::PrimeEnd { system: s, theta, horizon } => {
            let sys = system(&s)?;
            let pe = classify_prime_end(&sys, parse_angle(&theta)?, horizon)?;
            let impression = impression_of_chain(&sys, &pe.chain)?;
            stdout = json(&PrimeEndReport { theta: pe.base.theta(), class: pe.class, impression, certificate: pe.chain });
        }
        Command::TrueCrosscut { system: s, depth } => {
            let sys = system(&s)?;
            let report: TrueCrosscutReport = detect_true_crosscut(&sys, depth)?;
            stdout = json(&report);
        }
        Command::Cover { covering: c, theta, samples, t_max, out } => {
            let cov = covering(&c)?;
            let trace = radial_trace(&cov, parse_angle(&theta)?, samples, t_max)?;
            let mut csv = String::from("t,re,im\n");
            for s in &trace.samples {
                let _ = writeln!(csv, "{:.17e},{:.17e},{:.17e}", s.t, s.value.re, s.value.im);
            }
            emit(&out, &csv, &mut stdout)?;
            if out.is_some() {
                let class: RadialClass = classify_trace(&cov, &trace);
                stdout.push_str(&json(&class));
            }
        }
        Command::Lift { covering: c, curve, k, p, out } => {
            let cov = covering(&c)?;
            let path = match curve.as_str() {
                "core" => core_loop(&cov, k, 256),
                "boundary" => {
                    let p = parse_point(p.as_deref().ok_or_else(|| CliError::Usage("--p is required for a boundary curve".into()))?)?;
                    path_to_boundary(&cov, p, 1e-9, 400)
                }
                other => return Err(CliError::Usage(format!("unknown curve {other:?}"))),
            };
            let lift = lift_curve(&cov, &path, Complex64::new(0.0, 0.0))?;
            let mut csv = String::from("s,curve_re,curve_im,lift_re,lift_im\n");
            let n = (path.len() - 1).max(1) as f64;
            for (i, (q, z)) in path.iter().zip(&lift).enumerate() {
                let _ = writeln!(csv, "{:.17e},{:.17e},{:.17e},{:.17e},{:.17e}", i as f64 / n, q.re, q.im, z.re, z.im);
            }
            emit(&out, &csv, &mut stdout)?;
        }
        Command::Correspond { covering: c, p, k } => {
            let cov = covering(&c)?;
            let report: CorrespondenceReport = correspondence_check(&cov, parse_point(&p)?, k)?;
            stdout = json(&report);
        }
        Command::Harmonic { annulus, z, mc, seed } => {
            let method = match mc {
                Some(n) => MethodRequest::MonteCarlo { n_walks: n, seed },
                None => MethodRequest::ClosedForm,
            };
            let est: HarmonicEstimate = harmonic_measure_annulus(annulus, parse_point(&z)?, method)?;
            stdout = json(&est);
        }
        Command::Render { system: s, domain, levels, depth, out } => {
            let svg = match (s, domain) {
                (Some(name), None) => {
                    let sys = load_system(&name, levels)?;
                    let covers = (0..=depth).map(|d| limit_set_cover(&sys, d)).collect::<Result<Vec<_>, _>>()?;
                    svg_limit_set(&covers)
                }
                (None, Some(path)) => {
                    let (spec, base) = DomainSpec::from_path(&path)?;
                    match spec.expand(&base)? {
                        Domain::Planar(g) => svg_planar(&g),
                        Domain::Schottky(sys) => {
                            let covers = (0..=depth).map(|d| limit_set_cover(&sys, d)).collect::<Result<Vec<_>, _>>()?;
                            svg_limit_set(&covers)
                        }
                        Domain::Covering(cov) => {
                            let lift = lift_curve(&cov, &core_loop(&cov, 1, 256), Complex64::new(0.0, 0.0))?;
                            svg_path(&lift, 1.0, true)
                        }
                    }
                }
                _ => return Err(CliError::Usage("give exactly one of --system or --domain".into())),
            };
            emit(&Some(out), &svg, &mut stdout)?;
        }
    }
    Ok(stdout)
}

/// Parse `argv`, run, print; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli) {
        Ok(out) => {
            print!("{out}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            if matches!(e, CliError::Usage(_)) {
                2
            } else {
                1
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angles() {
        assert_eq!(parse_angle("0.5").unwrap(), 0.5);
        assert!((parse_angle("pi/3").unwrap() - PI / 3.0).abs() < 1e-15);
        assert!((parse_angle("-2pi/5").unwrap() + 2.0 * PI / 5.0).abs() < 1e-15);
        assert!((parse_angle("π").unwrap() - PI).abs() < 1e-15);
        assert!(parse_angle("pie").is_err());
    }

    #[test]
    fn classify_cyclic_fixed_point_is_bounded() {
        let cli = Cli::try_parse_from(["boundary-lab", "classify", "--system", "cyclic", "--theta", "0"]).unwrap();
        let out = execute(cli).unwrap();
        let report: ClassifyReport = serde_json::from_str(&out).unwrap();
        assert_eq!(report.radial_type, RadialType::Bounded);
    }
}
