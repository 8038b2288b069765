use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use perfmatch::claims::{self, ClaimReport, Verdict};
use perfmatch::exact::{self, Method};
use perfmatch::regions::{central_rhombus_edge, RegionSpec};
use perfmatch::spectra::spectrum_summary;
use perfmatch::transfer::transfer_count;
use perfmatch::Edge;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::output::{render, report_json, spectrum_json, Format};
use crate::region_file::parse_region;

#[derive(Debug, Parser)]
#[command(name = "perfmatch", version, about = "Exact perfect-matching counts for lattice regions")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CountMethod {
    Auto,
    Brute,
    Kasteleyn,
    Permanent,
    Transfer,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RatioMethod {
    Auto,
    Brute,
    Kasteleyn,
    Permanent,
}

impl From<RatioMethod> for Method {
    fn from(m: RatioMethod) -> Self {
        match m {
            RatioMethod::Auto => Method::Auto,
            RatioMethod::Brute => Method::Brute,
            RatioMethod::Kasteleyn => Method::Kasteleyn,
            RatioMethod::Permanent => Method::Permanent,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClaimName {
    /// Central rhombus of the (2n-1, 2n-1, 2n, 2n-1, 2n-1, 2n) hexagon in 1/3 of tilings.
    #[value(name = "problem1")]
    CentralRatio,
    /// Aztec window counts are polynomial in x for fixed w.
    #[value(name = "problem14")]
    WindowPolynomial,
    /// Perfect matchings of the n-cube have the parity of n.
    #[value(name = "problem19-parity")]
    CubeParity,
    /// Orbit structure of n-cube matchings under reflections.
    #[value(name = "problem19-orbits")]
    CubeOrbits,
    /// Growth of f(n)^(2^(1-n)) against n/e.
    #[value(name = "problem19-asymptotic")]
    CubeGrowth,
    /// Counting routes agree on a seeded random corpus.
    #[value(name = "oracles")]
    Oracles,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count perfect matchings of a region.
    Count {
        /// Region file (JSON).
        #[arg(long)]
        region: PathBuf,
        #[arg(long, value_enum, default_value_t = CountMethod::Auto)]
        method: CountMethod,
    },
    /// Fraction of perfect matchings containing one edge.
    Ratio {
        #[arg(long)]
        region: PathBuf,
        /// `central` (hexagon central rhombus) or `I-J` (vertex indices).
        #[arg(long, default_value = "central")]
        edge: String,
        #[arg(long, value_enum, default_value_t = RatioMethod::Auto)]
        method: RatioMethod,
    },
    /// Kasteleyn matrix spectrum of a planar bipartite region.
    Spectrum {
        #[arg(long)]
        region: PathBuf,
    },
    /// Run one claim check and print its report.
    Verify {
        #[arg(long, value_enum)]
        claim: ClaimName,
        /// `n` for problem1 (default 1) and problem19-orbits (default 3).
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, default_value_t = 2)]
        w: u32,
        #[arg(long, default_value_t = 8)]
        x_to: u32,
        #[arg(long, default_value_t = 5)]
        n_max: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        cases: usize,
        /// Use the corner rhombus instead of the central one (problem1).
        #[arg(long)]
        off_center: bool,
    },
}

/// A rendered document and the exit code it implies.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub doc: Value,
    pub exit_code: u8,
}

fn load(path: &Path) -> Result<RegionSpec, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.display().to_string(),
        source,
    })?;
    parse_region(&text)
}

fn parse_edge(selector: &str, spec: &RegionSpec, g: &perfmatch::MatchGraph) -> Result<Edge, CliError> {
    if selector == "central" {
        return match spec {
            RegionSpec::Hexagon { sides, holes } if holes.is_empty() => Ok(central_rhombus_edge(sides)?),
            _ => Err(perfmatch::RegionError::NoCentralEdge.into()),
        };
    }
    let bad = || CliError::BadEdgeSelector(selector.to_string());
    let (a, b) = selector.split_once('-').ok_or_else(bad)?;
    let (a, b): (usize, usize) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
    if a >= g.vertex_count() || b >= g.vertex_count() || a == b {
        return Err(bad());
    }
    Ok(Edge::new(a, b))
}

fn exit_for(verdict: Verdict) -> u8 {
    match verdict {
        Verdict::Pass | Verdict::ReportOnly => 0,
        Verdict::Fail => 1,
    }
}

pub fn run_claim(claim: ClaimName, args: &ClaimArgs) -> Result<ClaimReport, CliError> {
    let start = Instant::now();
    let mut report = match claim {
        ClaimName::CentralRatio => claims::verify_central_ratio(args.n.unwrap_or(1), args.off_center)?,
        ClaimName::WindowPolynomial => claims::verify_window_polynomial(args.w, args.x_to)?,
        ClaimName::CubeParity => claims::verify_cube_parity(args.n_max)?,
        ClaimName::CubeOrbits => claims::verify_cube_orbits(args.n.unwrap_or(3))?,
        ClaimName::CubeGrowth => claims::verify_cube_growth(args.n_max)?,
        ClaimName::Oracles => claims::verify_oracles(args.seed, args.cases)?,
    };
    report.runtime_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// Claim parameters as given on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClaimArgs {
    pub n: Option<u32>,
    pub w: u32,
    pub x_to: u32,
    pub n_max: u32,
    pub seed: u64,
    pub cases: usize,
    pub off_center: bool,
}

impl Default for ClaimArgs {
    fn default() -> Self {
        ClaimArgs {
            n: None,
            w: 2,
            x_to: 8,
            n_max: 5,
            seed: 1,
            cases: 50,
            off_center: false,
        }
    }
}

pub fn execute(command: &Command) -> Result<Outcome, CliError> {
    let doc = match command {
        Command::Count { region, method } => {
            let spec = load(region)?;
            let kind = spec.kind().name();
            let count = match method {
                CountMethod::Transfer => transfer_count(&spec)?,
                CountMethod::Auto => exact::count(&spec.build()?, Method::Auto)?,
                CountMethod::Brute => exact::count_brute(&spec.build()?)?,
                CountMethod::Kasteleyn => exact::count_kasteleyn(&spec.build()?)?,
                CountMethod::Permanent => exact::count_permanent(&spec.build()?)?,
            };
            let method = method.to_possible_value().expect("no skipped variants");
            json!({"kind": kind, "method": method.get_name(), "count": count.to_string()})
        }
        Command::Ratio { region, edge, method } => {
            let spec = load(region)?;
            let g = spec.build()?;
            let e = parse_edge(edge, &spec, &g)?;
            let m = Method::from(*method);
            let forced = exact::count_with_forced_edge(&g, e, m)?;
            let total = exact::count(&g, m)?;
            let ratio = exact::containment_ratio(&g, e, m)?;
            json!({
                "kind": spec.kind().name(),
                "edge": [e.lo(), e.hi()],
                "edge_cells": [g.label(e.lo()).to_string(), g.label(e.hi()).to_string()],
                "method": m.name(),
                "forced": forced.to_string(),
                "total": total.to_string(),
                "ratio": ratio.to_string(),
            })
        }
        Command::Spectrum { region } => {
            let spec = load(region)?;
            let s = spectrum_summary(&spec.build()?)?;
            spectrum_json(spec.kind().name(), &s)
        }
        Command::Verify {
            claim,
            n,
            w,
            x_to,
            n_max,
            seed,
            cases,
            off_center,
        } => {
            let args = ClaimArgs {
                n: *n,
                w: *w,
                x_to: *x_to,
                n_max: *n_max,
                seed: *seed,
                cases: *cases,
                off_center: *off_center,
            };
            let report = run_claim(*claim, &args)?;
            return Ok(Outcome {
                doc: report_json(&report),
                exit_code: exit_for(report.verdict),
            });
        }
    };
    Ok(Outcome { doc, exit_code: 0 })
}

/// Runs the parsed command line and writes its output; returns the exit
/// code.
pub fn run(cli: &Cli) -> Result<u8, CliError> {
    let outcome = execute(&cli.command)?;
    let text = render(&outcome.doc, cli.format)?;
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Write {
            path: path.display().to_string(),
            source,
        })?,
        None => print!("{text}"),
    }
    Ok(outcome.exit_code)
}
