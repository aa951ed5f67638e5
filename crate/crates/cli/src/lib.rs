//! Batch front end: parses arguments into a [`RunConfig`], runs one command
//! and writes a deterministic report.
//!
//! Exit codes: 0 all checks pass, 1 a check fails, 2 a result is
//! inconclusive at the requested bounds, 64 malformed input.

pub mod commands;
pub mod config;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use tube_ncr::cohom::Bounds;
use tube_ncr::quivalg::ArrowConvention;
use tube_ncr::{Error, Field};

pub use commands::{Report, Verdict};
pub use config::{Format, RunConfig};

pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(name = "tube-ncr", version, about = "Exact computations for the tube algebra and its relatives")]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Default)]
pub struct CommonArgs {
    /// JSON run configuration; flags given on the command line override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// `q` for the rationals, `f<p>` for the prime field with p elements.
    #[arg(long, global = true)]
    pub field: Option<Field>,
    /// Family index: vertices 0..n for the tube algebra, 1..n for the contraction quiver.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Base-change polynomials f_0 … f_n. Give them after the subcommand; a
    /// polynomial with a leading minus is written `0 - x`.
    #[arg(long, global = true, num_args = 1..)]
    pub f: Vec<String>,
    /// `tube` (a_i b_i = f_i e_{i+1}) or `reversed` (a_i b_i = f_i e_i).
    #[arg(long, global = true)]
    pub convention: Option<ArrowConvention>,
    /// Variables the polynomials after --f are written in.
    #[arg(long, global = true, value_delimiter = ',')]
    pub vars: Vec<String>,
    /// Sets both the word-length and the polynomial-degree bound.
    #[arg(long, global = true)]
    pub bound: Option<u32>,
    /// Word-length bound.
    #[arg(long, global = true)]
    pub len: Option<usize>,
    /// Polynomial-degree bound.
    #[arg(long, global = true)]
    pub polydeg: Option<u32>,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a presentation.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Presentations generated from marked surfaces.
    #[command(subcommand)]
    Arc(ArcCmd),
    /// A-infinity tables and twisted complexes.
    #[command(subcommand)]
    Twcat(TwcatCmd),
    /// Cox-ring computations.
    #[command(subcommand)]
    Toric(ToricCmd),
    /// Bound-labelled cohomology.
    #[command(subcommand)]
    Cohom(CohomCmd),
    /// Composite checks.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Subcommand, Debug)]
pub enum AlgebraCmd {
    Tube,
    Contraction,
    Localize {
        #[arg(long, default_value = "0")]
        vertex: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum ArcCmd {
    Annulus,
    Disc,
    Compare,
}

#[derive(Subcommand, Debug)]
pub enum TwcatCmd {
    VerifyHalftwist,
}

#[derive(Subcommand, Debug)]
pub enum ToricCmd {
    Sections,
    Wedge,
    End,
    BaseChange,
}

#[derive(Subcommand, Debug)]
pub enum CohomCmd {
    Sphere,
    ContractionH0,
    Truncated {
        /// Cohomological degrees −m to compute.
        #[arg(long, value_delimiter = ',', default_value = "0,1,2,3,4")]
        m: Vec<i32>,
        #[arg(long, default_value = "1")]
        source: String,
        #[arg(long, default_value = "1")]
        target: String,
    },
    Localization,
}

#[derive(Subcommand, Debug)]
pub enum VerifyCmd {
    All,
}

impl Command {
    pub fn name(&self) -> String {
        let (group, sub) = match self {
            Command::Algebra(c) => ("algebra", format!("{c:?}")),
            Command::Arc(c) => ("arc", format!("{c:?}")),
            Command::Twcat(c) => ("twcat", format!("{c:?}")),
            Command::Toric(c) => ("toric", format!("{c:?}")),
            Command::Cohom(c) => ("cohom", format!("{c:?}")),
            Command::Verify(c) => ("verify", format!("{c:?}")),
        };
        let sub = sub.split([' ', '{']).next().unwrap_or_default();
        let mut kebab = String::new();
        for (i, ch) in sub.chars().enumerate() {
            if ch.is_uppercase() && i > 0 {
                kebab.push('-');
            }
            kebab.push(ch.to_ascii_lowercase());
        }
        format!("{group} {kebab}")
    }
}

/// Defaults, then `--config`, then explicit flags.
pub fn resolve_config(common: &CommonArgs) -> Result<RunConfig, String> {
    let mut cfg = match &common.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            serde_json::from_str(&text).map_err(|e| format!("bad config {}: {e}", path.display()))?
        }
        None => RunConfig::default(),
    };
    if let Some(f) = common.field {
        cfg.field = f;
    }
    if let Some(n) = common.n {
        cfg.n = n;
    }
    if !common.f.is_empty() {
        cfg.f = common.f.clone();
    }
    if let Some(c) = common.convention {
        cfg.convention = c;
    }
    if !common.vars.is_empty() {
        cfg.vars = common.vars.clone();
    }
    if let Some(b) = common.bound {
        cfg.bounds = Some(Bounds::new(b as usize, b));
    }
    if common.len.is_some() || common.polydeg.is_some() {
        let base = cfg.bounds.unwrap_or(Bounds::new(8, 8));
        cfg.bounds = Some(Bounds::new(common.len.unwrap_or(base.len), common.polydeg.unwrap_or(base.polydeg)));
    }
    if common.output.is_some() {
        cfg.output = common.output.clone();
    }
    if let Some(f) = common.format {
        cfg.format = f;
    }
    Ok(cfg)
}

pub fn execute(command: &Command, cfg: &RunConfig) -> tube_ncr::Result<Report> {
    use commands::*;
    match command {
        Command::Algebra(AlgebraCmd::Tube) => algebra_tube(cfg),
        Command::Algebra(AlgebraCmd::Contraction) => algebra_contraction(cfg),
        Command::Algebra(AlgebraCmd::Localize { vertex }) => algebra_localize(cfg, vertex),
        Command::Arc(ArcCmd::Annulus) => arc_generate(cfg, "annulus"),
        Command::Arc(ArcCmd::Disc) => arc_generate(cfg, "disc"),
        Command::Arc(ArcCmd::Compare) => arc_compare(cfg),
        Command::Twcat(TwcatCmd::VerifyHalftwist) => twcat_halftwist(cfg),
        Command::Toric(ToricCmd::Sections) => toric_sections(cfg),
        Command::Toric(ToricCmd::Wedge) => toric_wedge(cfg),
        Command::Toric(ToricCmd::End) => toric_end(cfg),
        Command::Toric(ToricCmd::BaseChange) => toric_base_change(cfg),
        Command::Cohom(CohomCmd::Sphere) => cohom_sphere(cfg),
        Command::Cohom(CohomCmd::ContractionH0) => cohom_contraction_h0(cfg),
        Command::Cohom(CohomCmd::Truncated { m, source, target }) => cohom_truncated(cfg, m, source, target),
        Command::Cohom(CohomCmd::Localization) => cohom_localization(cfg),
        Command::Verify(VerifyCmd::All) => verify_all(cfg),
    }
}

/// Renders a report; identical inputs give byte-identical output.
pub fn render(command: &str, cfg: &RunConfig, report: &Report) -> String {
    match cfg.format {
        Format::Json => {
            let doc = json!({
                "command": command,
                "config": cfg.echo(),
                "verdict": report.verdict,
                "report": report.body,
            });
            serde_json::to_string_pretty(&doc).expect("reports are serialisable") + "\n"
        }
        Format::Text => {
            let verdict = serde_json::to_value(report.verdict).expect("serialisable");
            let mut out = format!("{command}: {}\n", verdict.as_str().unwrap_or_default());
            for l in &report.lines {
                out.push_str("  ");
                out.push_str(l);
                out.push('\n');
            }
            out
        }
    }
}

fn usage_error(msg: &str) -> i32 {
    eprintln!("error: {msg}\n\nFor usage, run `tube-ncr --help`.");
    EXIT_USAGE
}

/// Parses `argv`, runs the command and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let cfg = match resolve_config(&cli.common) {
        Ok(c) => c,
        Err(msg) => return usage_error(&msg),
    };
    let report = match execute(&cli.command, &cfg) {
        Ok(r) => r,
        Err(Error::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            return Verdict::Fail.exit_code();
        }
        Err(e) => return usage_error(&e.to_string()),
    };
    let text = render(&cli.command.name(), &cfg, &report);
    match &cfg.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("cannot write {}: {e}", path.display());
                return Verdict::Fail.exit_code();
            }
        }
        None => print!("{text}"),
    }
    report.verdict.exit_code()
}
