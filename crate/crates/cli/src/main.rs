use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use planeswitch::geometry::{affine_space, grid_board, projective_space, verify_axioms, IncidenceStructure};
use planeswitch::gf::field_of_order;
use planeswitch::reduce::{floor_strategy, reduce_by_search, reduce_to_floor, Certificate};
use planeswitch::rng::{random_configuration, SplitMix64};
use planeswitch::search::{conjecture_check, worst_case, Analyzer, SearchOptions};
use planeswitch::{Configuration, Error};

const EXIT_INVALID: u8 = 2;
const EXIT_REFUSED: u8 = 3;
const EXIT_VERIFY: u8 = 4;

#[derive(Parser)]
#[command(name = "planeswitch", version, about = "Light-switching games on grids and finite geometries")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a structure, check its axioms and write its incidences.
    Build(StructureArgs),
    /// Check the axioms of a structure and print the report.
    Verify(StructureArgs),
    /// Exact worst case: covering radius, coset spectrum and witnesses.
    Worst(StructureArgs),
    /// Reduce a configuration and print a replay-checked certificate.
    Reduce(ReduceArgs),
    /// Compare the largest single-flip-immune configurations with the worst case.
    Conjecture(StructureArgs),
    /// Write a configuration record (hex bits plus structure id).
    Export(ReduceArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Geometry {
    Grid,
    Projective,
    Affine,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct StructureArgs {
    #[arg(long, value_enum)]
    geometry: Geometry,
    /// Field order q for projective and affine structures.
    #[arg(long)]
    order: Option<u64>,
    #[arg(long, default_value_t = 2)]
    dimension: u32,
    /// Side length of a grid.
    #[arg(long)]
    n: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for exhaustive searches. Defaults to the available cores.
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Args)]
struct ReduceArgs {
    #[command(flatten)]
    structure: StructureArgs,
    /// Configuration as little-endian hex, or a JSON configuration record.
    #[arg(long, conflicts_with = "random")]
    config: Option<String>,
    /// Draw the configuration from the seeded generator.
    #[arg(long)]
    random: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

enum Failure {
    Invalid(String),
    Refused(String),
    Verify(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Verification(_) => Failure::Verify(e.to_string()),
            _ if e.is_size_refusal() => Failure::Refused(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

impl StructureArgs {
    fn structure(&self) -> Result<IncidenceStructure, Failure> {
        let need_order = || {
            self.order
                .ok_or_else(|| Failure::Invalid("--order is required for this geometry".into()))
        };
        let s = match self.geometry {
            Geometry::Grid => {
                let n = self
                    .n
                    .ok_or_else(|| Failure::Invalid("--n is required for grids".into()))?;
                if self.dimension != 2 {
                    return Err(Failure::Invalid("grids are two-dimensional".into()));
                }
                grid_board(n)?
            }
            Geometry::Projective => projective_space(&field_of_order(need_order()?)?, self.dimension)?,
            Geometry::Affine => affine_space(&field_of_order(need_order()?)?, self.dimension)?,
        };
        Ok(s)
    }

    fn options(&self) -> SearchOptions {
        let workers = self
            .workers
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
        SearchOptions::with_workers(workers).from_env()
    }

    fn render(&self, text: impl FnOnce() -> String, json: impl FnOnce() -> String) -> String {
        match self.format {
            Format::Text => text(),
            Format::Json => json(),
        }
    }
}

impl ReduceArgs {
    fn configuration(&self, s: &IncidenceStructure) -> Result<Configuration, Failure> {
        if self.random {
            return Ok(random_configuration(s, &mut SplitMix64::new(self.seed)));
        }
        let Some(raw) = self.config.as_deref().map(str::trim) else {
            return Ok(Configuration::dark(s));
        };
        if raw.starts_with('{') {
            let record: planeswitch::game::ConfigurationRecord =
                serde_json::from_str(raw).map_err(|e| Failure::Invalid(format!("configuration record: {e}")))?;
            Ok(record.into_configuration(s)?)
        } else {
            Ok(Configuration::from_hex(s, raw)?)
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn build(a: &StructureArgs) -> Outcome {
    let s = a.structure()?;
    let report = verify_axioms(&s);
    if !report.passed() {
        return Err(Failure::Verify(report.to_text()));
    }
    Ok(a.render(|| s.to_incidence_text(), || s.to_json()))
}

fn verify(a: &StructureArgs) -> Outcome {
    let s = a.structure()?;
    let report = verify_axioms(&s);
    let out = a.render(|| report.to_text(), || to_json(&report));
    if report.passed() {
        Ok(out)
    } else {
        Err(Failure::Verify(out))
    }
}

fn worst(a: &StructureArgs) -> Outcome {
    let s = a.structure()?;
    let report = worst_case(&s, &a.options())?;
    Ok(a.render(|| report.to_text(), || report.to_json()))
}

fn conjecture(a: &StructureArgs) -> Outcome {
    let s = a.structure()?;
    let report = conjecture_check(&s, &a.options())?;
    Ok(a.render(|| report.to_text(), || report.to_json()))
}

fn reduce(a: &ReduceArgs) -> Outcome {
    let s = a.structure.structure()?;
    let initial = a.configuration(&s)?;
    let (fin, steps) = if floor_strategy(&s).is_some() {
        reduce_to_floor(&s, &initial)?
    } else {
        let analyzer = Analyzer::new(&s, a.structure.options())?;
        reduce_by_search(&analyzer, &initial)?
    };
    let cert = Certificate::new(&initial, &steps, &fin);
    let replayed = cert.replay(&s)?;
    if replayed != fin {
        return Err(Failure::Verify("certificate replays to a different board".into()));
    }
    Ok(a.structure.render(|| certificate_text(&cert), || to_json(&cert)))
}

fn certificate_text(c: &Certificate) -> String {
    let mut out = format!(
        "{}: {} lit -> {} lit in {} steps\n",
        c.structure,
        c.initial_lit,
        c.final_lit,
        c.steps.len()
    );
    out.push_str(&format!("initial {}\n", c.initial.bits));
    for (i, st) in c.steps.iter().enumerate() {
        out.push_str(&format!(
            "  step {i}: {} off {:?} on {:?} lines {:?}\n",
            serde_json::to_value(st.rule).expect("rule").as_str().unwrap_or("?"),
            st.extinguished,
            st.lit,
            st.lines
        ));
    }
    out.push_str(&format!("final   {}\n", c.final_config.bits));
    out
}

fn export(a: &ReduceArgs) -> Outcome {
    let s = a.structure.structure()?;
    let c = a.configuration(&s)?;
    let record = c.to_record();
    Ok(a.structure.render(
        || format!("{} {}\n", record.structure, record.bits),
        || to_json(&record),
    ))
}

fn emit(out: Option<&PathBuf>, body: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, body).map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(body.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::Io(e.to_string()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (outcome, out) = match &cli.command {
        Command::Build(a) => (build(a), a.out.as_ref()),
        Command::Verify(a) => (verify(a), a.out.as_ref()),
        Command::Worst(a) => (worst(a), a.out.as_ref()),
        Command::Conjecture(a) => (conjecture(a), a.out.as_ref()),
        Command::Reduce(a) => (reduce(a), a.structure.out.as_ref()),
        Command::Export(a) => (export(a), a.structure.out.as_ref()),
    };
    let result = outcome.and_then(|body| emit(out, &body));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INVALID)
        }
        Err(Failure::Refused(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_REFUSED)
        }
        Err(Failure::Verify(msg)) => {
            eprintln!("verification failed:\n{msg}");
            ExitCode::from(EXIT_VERIFY)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
