//! Command-line front end.
//!
//! Exit codes: 0 pass, 1 usage or input error, 2 verification violation,
//! 3 budget exhausted without a certificate.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::covers::{annulus_cover, cactus_cover, coarse_cactus_cover, planar_cover, Cover};
use crate::error::{invalid, Result};
use crate::generators::{generate, Family, GeneratorSpec};
use crate::graph::{Graph, VertexId};
use crate::metric::{components, set_diameter, Subspace};
use crate::theta::{
    check_annulus_theta_free, find_fat_theta, verify_certificate, Certificate, SearchMode,
    SearchOptions, SearchReport, SearchStatus,
};
use crate::verify::{verify_cover_with, Bounds};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "asdim",
    version,
    about = "Metric covers of graphs and fat theta search"
)]
pub struct RunConfig {
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, env = "ASDIM_THREADS", default_value_t = 0)]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a generated graph as JSON.
    Generate(GenerateArgs),
    /// Build a cover of a graph.
    Cover(CoverArgs),
    /// Check a cover's diameter and multiplicity bounds exactly.
    Verify(VerifyArgs),
    /// Search a graph for an M-fat theta.
    ThetaSearch(ThetaSearchArgs),
    /// Re-check a theta certificate.
    VerifyTheta(VerifyThetaArgs),
    /// Search every component of a thin annulus for an m-fat theta.
    AnnulusCheck(AnnulusCheckArgs),
    /// Print size, diameter and (with a cover) multiplicity summaries.
    Stats(StatsArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FamilyArg {
    Grid,
    Path,
    Cycle,
    Theta,
    CactusRandom,
    CactusChain,
    K5Subdivision,
    K33Subdivision,
    LambdaGrid,
    RandomPlanar,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(long)]
    pub w: Option<usize>,
    #[arg(long)]
    pub h: Option<usize>,
    /// Vertex count (path, cycle).
    #[arg(long)]
    pub n: Option<usize>,
    /// Three arm lengths, comma separated (theta).
    #[arg(long, value_delimiter = ',')]
    pub arms: Option<Vec<usize>>,
    #[arg(long)]
    pub cycles: Option<usize>,
    /// Cycle length (cactus families) or subdivision length.
    #[arg(long)]
    pub length: Option<usize>,
    #[arg(long)]
    pub dim: Option<usize>,
    /// Cube sides, comma separated (lambda-grid).
    #[arg(long, value_delimiter = ',')]
    pub sizes: Option<Vec<usize>>,
    /// Edge deletion probability (random-planar).
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file (stdout if omitted).
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum AlgorithmArg {
    Cactus,
    CoarseCactus,
    PlanarPipeline,
    /// A single thin annulus `A(s, s+m)` of the planar pipeline.
    Annulus,
}

#[derive(Debug, Args)]
pub struct CoverArgs {
    #[arg(long, short)]
    pub graph: PathBuf,
    #[arg(long, value_enum)]
    pub algorithm: AlgorithmArg,
    #[arg(long, default_value_t = 0)]
    pub base: VertexId,
    #[arg(long)]
    pub m: Option<f64>,
    /// Fatness parameter of the coarse-cactus cover.
    #[arg(long = "M")]
    pub big_m: Option<f64>,
    #[arg(long)]
    pub rho: Option<f64>,
    /// Inner radius of the annulus cover.
    #[arg(long)]
    pub s: Option<f64>,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    /// Also write a Graphviz rendering with sets as colors.
    #[arg(long)]
    pub dot: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, short)]
    pub graph: PathBuf,
    #[arg(long, short)]
    pub cover: PathBuf,
    /// Defaults to the bound recorded in the cover.
    #[arg(long)]
    pub diameter_bound: Option<f64>,
    #[arg(long)]
    pub radius: Option<f64>,
    #[arg(long)]
    pub multiplicity_bound: Option<usize>,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Exhaustive,
    Random,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long, value_enum, default_value = "exhaustive")]
    pub mode: ModeArg,
    /// Maximum theta path length in exhaustive mode.
    #[arg(long)]
    pub cutoff: Option<f64>,
    #[arg(long, default_value_t = 10_000_000)]
    pub budget: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl SearchArgs {
    fn options(&self) -> SearchOptions {
        SearchOptions {
            mode: match self.mode {
                ModeArg::Exhaustive => SearchMode::Exhaustive,
                ModeArg::Random => SearchMode::Random,
            },
            cutoff: self.cutoff.unwrap_or(f64::INFINITY),
            budget: self.budget,
            seed: self.seed,
        }
    }
}

#[derive(Debug, Args)]
pub struct ThetaSearchArgs {
    #[arg(long, short)]
    pub graph: PathBuf,
    #[arg(long = "M")]
    pub big_m: f64,
    #[command(flatten)]
    pub search: SearchArgs,
    /// Certificate file, written only when a theta is found.
    #[arg(long)]
    pub certificate: Option<PathBuf>,
    /// Search report (stdout if omitted).
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyThetaArgs {
    #[arg(long, short)]
    pub graph: PathBuf,
    /// A certificate, or a search report that contains one.
    #[arg(long, short)]
    pub certificate: PathBuf,
}

#[derive(Debug, Args)]
pub struct AnnulusCheckArgs {
    #[arg(long, short)]
    pub graph: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub base: VertexId,
    #[arg(long)]
    pub r: f64,
    #[arg(long)]
    pub m: f64,
    #[command(flatten)]
    pub search: SearchArgs,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    #[arg(long, short)]
    pub graph: PathBuf,
    #[arg(long, short)]
    pub cover: Option<PathBuf>,
}

/// Parses `args` (including the program name), runs, and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match run(&config) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

/// Runs a parsed configuration on a pool of `config.threads` workers.
pub fn run(config: &RunConfig) -> Result<i32> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads)
        .build()
        .map_err(|e| invalid(format!("cannot start thread pool: {e}")))?;
    pool.install(|| dispatch(&config.command))
}

fn dispatch(command: &Command) -> Result<i32> {
    match command {
        Command::Generate(a) => cmd_generate(a),
        Command::Cover(a) => cmd_cover(a),
        Command::Verify(a) => cmd_verify(a),
        Command::ThetaSearch(a) => cmd_theta_search(a),
        Command::VerifyTheta(a) => cmd_verify_theta(a),
        Command::AnnulusCheck(a) => cmd_annulus_check(a),
        Command::Stats(a) => cmd_stats(a),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Graph> {
    Graph::from_json_str(&read(path)?)
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => {
            fs::write(p, text).map_err(|e| invalid(format!("cannot write {}: {e}", p.display())))
        }
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialization cannot fail");
    s.push('\n');
    s
}

fn need<T>(value: Option<T>, flag: &str) -> Result<T> {
    value.ok_or_else(|| invalid(format!("--{flag} is required here")))
}

fn cmd_generate(a: &GenerateArgs) -> Result<i32> {
    let family = match a.family {
        FamilyArg::Grid => Family::Grid {
            w: need(a.w, "w")?,
            h: need(a.h, "h")?,
        },
        FamilyArg::Path => Family::Path { n: need(a.n, "n")? },
        FamilyArg::Cycle => Family::Cycle { n: need(a.n, "n")? },
        FamilyArg::Theta => {
            let arms = need(a.arms.clone(), "arms")?;
            if arms.len() != 3 {
                return Err(invalid(format!(
                    "--arms takes three lengths, got {}",
                    arms.len()
                )));
            }
            Family::Theta {
                arms: [arms[0], arms[1], arms[2]],
            }
        }
        FamilyArg::CactusRandom => Family::CactusRandom {
            cycles: need(a.cycles, "cycles")?,
            length: need(a.length, "length")?,
        },
        FamilyArg::CactusChain => Family::CactusChain {
            cycles: need(a.cycles, "cycles")?,
            length: need(a.length, "length")?,
        },
        FamilyArg::K5Subdivision => Family::K5Subdivision {
            length: need(a.length, "length")?,
        },
        FamilyArg::K33Subdivision => Family::K33Subdivision {
            length: need(a.length, "length")?,
        },
        FamilyArg::LambdaGrid => Family::LambdaGrid {
            dim: need(a.dim, "dim")?,
            sizes: need(a.sizes.clone(), "sizes")?,
        },
        FamilyArg::RandomPlanar => Family::RandomPlanar {
            w: need(a.w, "w")?,
            h: need(a.h, "h")?,
            p: need(a.p, "p")?,
        },
    };
    let g = generate(&GeneratorSpec::new(family, a.seed))?;
    emit(a.out.as_deref(), &g.to_json_string())?;
    Ok(EXIT_OK)
}

fn cmd_cover(a: &CoverArgs) -> Result<i32> {
    let g = load_graph(&a.graph)?;
    let cover = match a.algorithm {
        AlgorithmArg::Cactus => cactus_cover(&g, a.base, need(a.m, "m")?)?,
        AlgorithmArg::CoarseCactus => coarse_cactus_cover(
            &Subspace::whole(&g),
            a.base,
            need(a.m, "m")?,
            need(a.big_m, "M")?,
        )?,
        AlgorithmArg::PlanarPipeline => planar_cover(&g, a.base, need(a.rho, "rho")?)?,
        AlgorithmArg::Annulus => annulus_cover(&g, a.base, need(a.s, "s")?, need(a.m, "m")?)?,
    };
    emit(a.out.as_deref(), &cover.to_json_string())?;
    if let Some(p) = &a.dot {
        emit(Some(p), &cover.to_dot(&g))?;
    }
    Ok(EXIT_OK)
}

fn cmd_verify(a: &VerifyArgs) -> Result<i32> {
    let g = load_graph(&a.graph)?;
    let cover = Cover::from_json_str(&read(&a.cover)?)?;
    let recorded = Bounds::from_params(&cover);
    let bounds = match (a.diameter_bound, a.radius, a.multiplicity_bound) {
        (Some(d), Some(r), Some(k)) => Bounds {
            diameter: d,
            radius: r,
            multiplicity: k,
            per_annulus: recorded.ok().and_then(|b| b.per_annulus),
        },
        (d, r, k) => {
            let b = recorded?;
            Bounds {
                diameter: d.unwrap_or(b.diameter),
                radius: r.unwrap_or(b.radius),
                multiplicity: k.unwrap_or(b.multiplicity),
                per_annulus: b.per_annulus,
            }
        }
    };
    let report = verify_cover_with(&Subspace::whole(&g), &cover, &bounds);
    emit(a.out.as_deref(), &pretty(&report))?;
    if report.passed {
        Ok(EXIT_OK)
    } else {
        for v in report.violations.iter().take(20) {
            eprintln!("violation: {:?}: {}", v.subject, v.reason);
        }
        Ok(EXIT_VIOLATION)
    }
}

fn search_exit(report: &SearchReport) -> i32 {
    match report.status {
        SearchStatus::Found | SearchStatus::ProvedNone => EXIT_OK,
        SearchStatus::NoneWithinBudget | SearchStatus::BudgetExhausted => EXIT_BUDGET,
    }
}

fn cmd_theta_search(a: &ThetaSearchArgs) -> Result<i32> {
    let g = load_graph(&a.graph)?;
    let report = find_fat_theta(&Subspace::whole(&g), a.big_m, &a.search.options())?;
    if let (Some(p), Some(cert)) = (&a.certificate, &report.certificate) {
        emit(Some(p), &cert.to_json_string())?;
    }
    emit(a.out.as_deref(), &pretty(&report))?;
    Ok(search_exit(&report))
}

fn cmd_verify_theta(a: &VerifyThetaArgs) -> Result<i32> {
    let g = load_graph(&a.graph)?;
    let text = read(&a.certificate)?;
    let cert = match Certificate::from_json_str(&text) {
        Ok(c) => c,
        Err(_) => {
            let report: SearchReport = serde_json::from_str(&text)?;
            report
                .certificate
                .ok_or_else(|| invalid("search report holds no certificate"))?
        }
    };
    let check = verify_certificate(&Subspace::whole(&g), &cert)?;
    emit(None, &pretty(&check))?;
    Ok(if check.valid { EXIT_OK } else { EXIT_VIOLATION })
}

fn cmd_annulus_check(a: &AnnulusCheckArgs) -> Result<i32> {
    let g = load_graph(&a.graph)?;
    let report = check_annulus_theta_free(&g, a.base, a.r, a.m, &a.search.options())?;
    emit(a.out.as_deref(), &pretty(&report))?;
    Ok(if !report.theta_free {
        EXIT_VIOLATION
    } else if report
        .components
        .iter()
        .any(|c| search_exit(&c.report) == EXIT_BUDGET)
    {
        EXIT_BUDGET
    } else {
        EXIT_OK
    })
}

#[derive(Serialize)]
struct Stats {
    vertices: usize,
    edges: usize,
    weighted: bool,
    components: usize,
    max_degree: usize,
    /// Largest component diameter.
    diameter: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    cover: Option<CoverStats>,
}

#[derive(Serialize)]
struct CoverStats {
    algorithm: String,
    sets: usize,
    max_set_diameter: Option<f64>,
    multiplicity_radius: f64,
    max_multiplicity: usize,
    multiplicity_histogram: std::collections::BTreeMap<usize, usize>,
}

fn cmd_stats(a: &StatsArgs) -> Result<i32> {
    let g = load_graph(&a.graph)?;
    let whole = Subspace::whole(&g);
    let comps = components(&whole);
    let mut diameter: f64 = 0.0;
    for c in &comps {
        diameter = diameter.max(set_diameter(&whole, c)?);
    }
    let cover = match &a.cover {
        None => None,
        Some(p) => {
            let cover = Cover::from_json_str(&read(p)?)?;
            let bounds = Bounds::from_params(&cover)?;
            let report = verify_cover_with(&whole, &cover, &bounds);
            Some(CoverStats {
                algorithm: cover.algorithm.as_str().to_string(),
                sets: cover.len(),
                max_set_diameter: report.max_set_diameter,
                multiplicity_radius: bounds.radius,
                max_multiplicity: report.max_multiplicity,
                multiplicity_histogram: report.multiplicity_histogram,
            })
        }
    };
    let stats = Stats {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        weighted: g.is_weighted(),
        components: comps.len(),
        max_degree: (0..g.vertex_count() as VertexId)
            .map(|v| g.degree(v))
            .max()
            .unwrap_or(0),
        diameter,
        cover,
    };
    emit(None, &pretty(&stats))?;
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn usage_errors_map_to_one() {
        assert_eq!(main_with_args(["asdim", "no-such-command"]), EXIT_USAGE);
        assert_eq!(main_with_args(["asdim", "cover", "--graph"]), EXIT_USAGE);
    }

    #[test]
    fn missing_family_params_are_input_errors() {
        assert_eq!(
            main_with_args(["asdim", "generate", "--family", "grid", "--w", "3"]),
            EXIT_USAGE
        );
    }

    #[test]
    fn help_exits_cleanly() {
        assert_eq!(main_with_args(["asdim", "--help"]), EXIT_OK);
    }
}
