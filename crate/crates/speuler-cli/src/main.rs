//! `speuler` command-line front end.
//!
//! Exit codes: 0 success, 2 invalid input (or a failed check), 3 a
//! description the pipeline cannot handle, 4 internal error. Failures print
//! one JSON object `{"error": kind, "reason": text}` to stderr.

mod svg_input;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use speuler::dual::BuildOptions;
use speuler::oracle::{census, DEFAULT_BUDGET};
use speuler::{
    classify, compute_metrics, emit_svg, extract_faces, fixtures, parse_description, AbstractDescription, BuildError,
    ParseOptions, PipelineError, Style,
};

#[derive(Parser)]
#[command(
    name = "speuler",
    version,
    about = "Monotone, well-matched Euler and Venn diagrams from abstract descriptions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build, lay out and render a description.
    Generate {
        /// Description file (text or JSON), or `fixture:NAME` for a bundled one.
        input: Option<String>,
        /// Output file; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Pipeline stage to emit.
        #[arg(long, value_enum, default_value_t = Stage::Diagram)]
        stage: Stage,
        /// Render the full Venn diagram on N sets instead of reading input.
        #[arg(long, value_name = "N", conflicts_with = "input")]
        venn: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Verify a description's rendering and report guideline metrics.
    Metrics {
        /// Description file (text or JSON), or `fixture:NAME`.
        input: String,
        /// Verify this SVG (as written by `generate`) instead of rendering anew.
        #[arg(long)]
        diagram: Option<PathBuf>,
        /// Emit JSON instead of the table.
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Check a description against the admissibility conditions.
    Validate {
        /// Description file (text or JSON), or `fixture:NAME`.
        input: String,
        #[arg(long)]
        strict_empty_set: bool,
    },
    /// Count admissible and fully monotone descriptions on N sets.
    Census {
        /// Number of sets (at most 4).
        n: usize,
        /// Output file for the table; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Worker threads; all cores when omitted.
        #[arg(long)]
        jobs: Option<usize>,
        /// Search states per description before giving up.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
}

#[derive(clap::Args)]
struct Common {
    /// Reject inputs that do not list the empty zone.
    #[arg(long)]
    strict_empty_set: bool,
    /// Style file (JSON).
    #[arg(long, env = "SPEULER_STYLE")]
    style: Option<PathBuf>,
    /// Accepted for scripts; every command is deterministic anyway.
    #[arg(long)]
    seedless: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Stage {
    Dual,
    Layout,
    Diagram,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    kind: &'static str,
    reason: String,
}

impl Failure {
    fn validation(reason: impl Into<String>) -> Self {
        Failure { code: 2, kind: "validation", reason: reason.into() }
    }

    fn unsupported(reason: impl Into<String>) -> Self {
        Failure { code: 3, kind: "unsupported", reason: reason.into() }
    }

    fn internal(reason: impl Into<String>) -> Self {
        Failure { code: 4, kind: "internal", reason: reason.into() }
    }
}

impl From<PipelineError> for Failure {
    fn from(e: PipelineError) -> Self {
        match e {
            PipelineError::Parse(e) => Failure::validation(e.to_string()),
            PipelineError::Build(e) => match e {
                BuildError::DisconnectedDescription(_) | BuildError::UnlinkedZone(_) => {
                    Failure::unsupported(e.to_string())
                }
                BuildError::VennOutOfRange(_) => Failure::validation(e.to_string()),
                BuildError::NoParentPlaced(_) => Failure::internal(e.to_string()),
            },
            PipelineError::Render(e) => Failure::internal(e.to_string()),
            PipelineError::Verify(e) => Failure::internal(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let doc = serde_json::json!({ "error": f.kind, "reason": f.reason });
            eprintln!("{doc}");
            ExitCode::from(f.code)
        }
    }
}

fn dispatch(command: Command) -> Result<(), Failure> {
    match command {
        Command::Generate { input, output, stage, venn, common } => {
            let d = match (venn, input) {
                (Some(n), _) => {
                    if !(1..=8).contains(&n) {
                        return Err(Failure::validation(BuildError::VennOutOfRange(n).to_string()));
                    }
                    AbstractDescription::full_venn(n).map_err(|e| Failure::validation(e.to_string()))?
                }
                (None, Some(input)) => load(&input, common.strict_empty_set)?,
                (None, None) => return Err(Failure::validation("an input file or --venn is required")),
            };
            generate(&d, stage, &load_style(common.style.as_deref())?, output.as_deref())
        }
        Command::Metrics { input, diagram, json, common } => {
            let d = load(&input, common.strict_empty_set)?;
            metrics(&d, diagram.as_deref(), json, &load_style(common.style.as_deref())?)
        }
        Command::Validate { input, strict_empty_set } => {
            let d = load(&input, strict_empty_set)?;
            let report = classify(&d);
            println!("{}", serde_json::to_string_pretty(&report).map_err(|e| Failure::internal(e.to_string()))?);
            if report.is_admissible() {
                Ok(())
            } else {
                Err(Failure::unsupported(report.reasons.join("; ")))
            }
        }
        Command::Census { n, output, jobs, budget } => {
            if n > 4 {
                return Err(Failure::validation(format!("census supports at most 4 sets, got {n}")));
            }
            let mut pool = rayon::ThreadPoolBuilder::new();
            if let Some(j) = jobs {
                pool = pool.num_threads(j.max(1));
            }
            let pool = pool.build().map_err(|e| Failure::internal(e.to_string()))?;
            let report = pool.install(|| census(n, budget));
            write_output(output.as_deref(), &report.to_table())?;
            if output.is_some() {
                println!("{}", report.summary());
            }
            Ok(())
        }
    }
}

fn load(input: &str, strict_empty_set: bool) -> Result<AbstractDescription, Failure> {
    let text = match input.strip_prefix("fixture:") {
        Some(name) => fixtures::by_name(name)
            .ok_or_else(|| Failure::validation(format!("unknown fixture {name:?}")))?
            .source
            .to_string(),
        None => fs::read_to_string(input).map_err(|e| Failure::validation(format!("{input}: {e}")))?,
    };
    let (d, warnings) =
        parse_description(&text, ParseOptions { strict_empty_set }).map_err(|e| Failure::validation(e.to_string()))?;
    for w in warnings {
        eprintln!("warning: {w}");
    }
    Ok(d)
}

fn load_style(path: Option<&Path>) -> Result<Style, Failure> {
    match path {
        None => Ok(Style::default()),
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| Failure::validation(format!("{}: {e}", p.display())))?;
            Style::from_json(&text).map_err(|e| Failure::validation(format!("{}: {e}", p.display())))
        }
    }
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::internal(format!("{}: {e}", p.display()))),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| Failure::internal(e.to_string())),
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(value).map(|s| s + "\n").map_err(|e| Failure::internal(e.to_string()))
}

fn generate(d: &AbstractDescription, stage: Stage, style: &Style, output: Option<&Path>) -> Result<(), Failure> {
    let options = BuildOptions::default();
    let text = match stage {
        Stage::Dual => {
            let dual = speuler::build_dual_with(d, options).map_err(PipelineError::from)?;
            to_json(&dual.export(d))?
        }
        Stage::Layout => {
            let dual = speuler::build_dual_with(d, options).map_err(PipelineError::from)?;
            let layout = speuler::layout_circular::<f64>(&dual);
            to_json(&layout.export(&dual, d))?
        }
        Stage::Diagram => {
            let out = speuler::run::<f64>(d, options, style)?;
            let m = &out.verified.metrics;
            eprintln!(
                "sets={} zones={} smoothing={:?} well_matched={} wf_violations={} bundles={}",
                d.set_count(),
                d.zones().len(),
                out.verified.diagram.smoothing,
                m.matching.well_matched,
                m.wf_violations.total(),
                out.verified.diagram.bundles.len()
            );
            emit_svg(&out.verified.diagram, style)
        }
    };
    write_output(output, &text)
}

fn metrics(d: &AbstractDescription, diagram: Option<&Path>, json: bool, style: &Style) -> Result<(), Failure> {
    let report = match diagram {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::validation(format!("{}: {e}", path.display())))?;
            let curves = svg_input::curves_for(d, &text).map_err(Failure::validation)?;
            let arrangement = extract_faces(&curves).map_err(|e| Failure::internal(e.to_string()))?;
            compute_metrics(d, &curves, &arrangement)
        }
        None => speuler::run::<f64>(d, BuildOptions::default(), style)?.verified.metrics,
    };
    let text = if json { to_json(&report)? } else { report.to_table() };
    write_output(None, &text)?;
    if report.matching.well_matched {
        Ok(())
    } else {
        Err(Failure::validation("diagram is not well-matched"))
    }
}
