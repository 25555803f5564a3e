use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use concordia::budget::Budget;
use concordia::cone::ConeMode;
use concordia::cross::{build_omega_s, CrossError, OmegaOptions};
use concordia::export::{category_dot, eggbox, icc_dot};
use concordia::icc::Icc;
use concordia::io::{self, CategoryJson, IccJson, SemigroupJson};
use concordia::preset::Preset;
use concordia::search::{parse_query, run_census, SearchSpec};
use concordia::semigroup::FiniteSemigroup;
use concordia::workbench::{analyze, roundtrip};

/// Concordant semigroups, their cross-connections and the round trip back.
///
/// Tables are read row by row: row i, column j holds the product i·j.
/// Exit codes: 0 success, 1 bad input, 2 not concordant, 3 certificate
/// failure, 4 budget exceeded.
#[derive(Parser)]
#[command(name = "concordia", version)]
struct Cli {
    /// Worker threads for the parallel steps (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
#[group(required = true, multiple = false)]
struct Source {
    /// Semigroup JSON: {"order": n, "table": [[...]], "names": [...], "one": k}.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Named preset, e.g. cyclic:3, brandt-B2, monogenic:2,2.
    #[arg(long)]
    preset: Option<String>,
}

impl Source {
    fn load(&self) -> anyhow::Result<FiniteSemigroup> {
        match (&self.input, &self.preset) {
            (Some(path), _) => {
                let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                io::parse_semigroup(&text).with_context(|| format!("parsing {}", path.display()))
            }
            (_, Some(p)) => Ok(p.parse::<Preset>()?.build()),
            _ => bail!("one of --input or --preset is required"),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Green and starred relations, abundance, IC, concordance, biorder.
    Analyze {
        #[command(flatten)]
        source: Source,
        /// Print JSON instead of the text summary.
        #[arg(long)]
        json: bool,
        /// Also write analysis.json and report.txt here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// S → Ω_S → 𝕊Ω_S → 𝓘(Ω_S) with every certificate written to --out.
    Roundtrip {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "principal-only")]
        cone_mode: ModeArg,
        /// Wall-clock limit in seconds.
        #[arg(long)]
        budget: Option<f64>,
    },
    /// Exhaustive census of semigroups up to a given order.
    Search {
        #[arg(long, default_value_t = 3)]
        max_order: usize,
        /// Conjunction such as "concordant & !regular".
        #[arg(long)]
        predicate: Option<String>,
        /// Enumerate labelled tables instead of isomorphism classes.
        #[arg(long)]
        no_symmetry: bool,
        #[arg(long, default_value_t = 10)]
        witnesses: usize,
        /// Output file (stdout when absent).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Wall-clock limit in seconds.
        #[arg(long)]
        budget: Option<f64>,
    },
    /// Egg-box diagram, ideal category or 𝓘(Ω_S) as DOT, JSON or text.
    Export {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum)]
        what: What,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
        /// Which ideal category to export.
        #[arg(long, value_enum, default_value = "left")]
        side: SideArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the table of a preset as semigroup JSON.
    Gen {
        #[arg(long)]
        preset: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    PrincipalOnly,
    EpsilonStarU,
    FullEnumeration,
}

impl From<ModeArg> for ConeMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::PrincipalOnly => ConeMode::PrincipalOnly,
            ModeArg::EpsilonStarU => ConeMode::EpsilonStarU,
            ModeArg::FullEnumeration => ConeMode::FullEnumeration,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    Eggbox,
    Category,
    Icc,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Dot,
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

enum Failure {
    Input(anyhow::Error),
    NotConcordant(String),
    Certificate(String),
    Budget(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Input(e.into())
    }
}

fn classify(e: CrossError) -> Failure {
    let text = e.to_string();
    match e {
        CrossError::NotConcordant(_) => Failure::NotConcordant(text),
        CrossError::Budget(_) | CrossError::Cone(concordia::cone::ConeError::Budget(_)) => Failure::Budget(text),
        _ => Failure::Certificate(text),
    }
}

fn budget_of(seconds: Option<f64>) -> anyhow::Result<Budget> {
    match seconds {
        None => Ok(Budget::unlimited()),
        Some(s) if s.is_finite() && s >= 0.0 => Ok(Budget::time(Duration::from_secs_f64(s))),
        Some(s) => bail!("--budget must be a non-negative number of seconds, got {s}"),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn write_file(dir: &Path, name: &str, text: &str) -> Result<(), Failure> {
    let p = dir.join(name);
    fs::write(&p, text).with_context(|| format!("writing {}", p.display()))?;
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring the worker pool")?;
    }
    match cli.command {
        Command::Analyze { source, json, out } => {
            let s = source.load()?;
            let a = analyze(&s);
            let text = a.render_text();
            if let Some(dir) = &out {
                fs::create_dir_all(dir)?;
                write_file(dir, "analysis.json", &io::to_json(&a))?;
                write_file(dir, "report.txt", &text)?;
            }
            emit(None, &if json { io::to_json(&a) } else { text })
        }
        Command::Roundtrip { source, out, cone_mode, budget } => {
            let s = source.load()?;
            fs::create_dir_all(&out).with_context(|| format!("creating {}", out.display()))?;
            let opts = OmegaOptions { mode: cone_mode.into(), budget: budget_of(budget)? };
            let bundle = match roundtrip(&s, &opts) {
                Ok(b) => b,
                Err(e) => {
                    let a = analyze(&s);
                    write_file(&out, "analysis.json", &io::to_json(&a))?;
                    let f = classify(e);
                    let why = match &f {
                        Failure::NotConcordant(w) | Failure::Certificate(w) | Failure::Budget(w) => w.clone(),
                        Failure::Input(e) => e.to_string(),
                    };
                    write_file(&out, "report.txt", &format!("{}\n{why}\n", a.render_text()))?;
                    return Err(f);
                }
            };
            write_file(&out, "analysis.json", &io::to_json(&bundle.analysis))?;
            write_file(&out, "lcat.json", &io::to_json(&bundle.lcat))?;
            write_file(&out, "rcat.json", &io::to_json(&bundle.rcat))?;
            write_file(&out, "omega.json", &io::to_json(&bundle.omega))?;
            write_file(&out, "somega.json", &io::to_json(&bundle.somega))?;
            write_file(&out, "phi.json", &io::to_json(&bundle.phi))?;
            write_file(&out, "icc.json", &io::to_json(&bundle.icc))?;
            let report = bundle.render_report();
            write_file(&out, "report.txt", &report)?;
            print!("{report}");
            if bundle.all_pass() {
                Ok(())
            } else {
                Err(Failure::Certificate("some certificates failed; see report.txt".into()))
            }
        }
        Command::Search { max_order, predicate, no_symmetry, witnesses, out, budget } => {
            let query = match &predicate {
                Some(p) => parse_query(p).map_err(anyhow::Error::from)?,
                None => Vec::new(),
            };
            let spec = SearchSpec { max_order, query, symmetry: !no_symmetry, max_witnesses: witnesses };
            let census = run_census(&spec, &budget_of(budget)?).map_err(anyhow::Error::from)?;
            emit(out.as_deref(), &io::to_json(&census))?;
            if census.complete {
                Ok(())
            } else {
                Err(Failure::Budget("budget exhausted; the census above is partial".into()))
            }
        }
        Command::Export { source, what, format, side, out } => {
            let s = source.load()?;
            let text = match (what, format) {
                (What::Eggbox, Format::Dot) => eggbox(&s).render_dot("eggbox"),
                (What::Eggbox, Format::Json) => io::to_json(&eggbox(&s)),
                (What::Eggbox, Format::Text) => eggbox(&s).render_text(),
                (What::Category, f) => {
                    let side = match side {
                        SideArg::Left => concordia::semigroup::Side::Left,
                        SideArg::Right => concordia::semigroup::Side::Right,
                    };
                    let cat = concordia::category::build_ideal_category(&s, side);
                    match f {
                        Format::Dot => category_dot(&cat, "category"),
                        Format::Json => io::to_json(&CategoryJson::from_category(&cat)),
                        Format::Text => return Err(Failure::Input(anyhow::anyhow!("categories export as dot or json"))),
                    }
                }
                (What::Icc, f) => {
                    let om = build_omega_s(&s, &OmegaOptions::default()).map_err(classify)?;
                    let so = om.omega.linked_semigroup().map_err(classify)?;
                    let icc = Icc::build(&om.omega, &so).map_err(classify)?;
                    match f {
                        Format::Dot => icc_dot(&icc, &om.omega.c.category, "icc"),
                        Format::Json => io::to_json(&IccJson::from_icc(&icc)),
                        Format::Text => return Err(Failure::Input(anyhow::anyhow!("the ICC exports as dot or json"))),
                    }
                }
            };
            emit(out.as_deref(), &text)
        }
        Command::Gen { preset, out } => {
            let s = preset.parse::<Preset>().map_err(anyhow::Error::from)?.build();
            emit(out.as_deref(), &io::to_json(&SemigroupJson::from_semigroup(&s)))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (code, msg) = match f {
                Failure::Input(e) => (1, format!("error: {e:#}")),
                Failure::NotConcordant(w) => (2, w),
                Failure::Certificate(w) => (3, format!("certificate failure: {w}")),
                Failure::Budget(w) => (4, format!("budget exceeded: {w}")),
            };
            eprintln!("{msg}");
            ExitCode::from(code)
        }
    }
}
