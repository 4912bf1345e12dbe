// SPDX-License-Identifier: Apache-2.0

//! Command-line interface.
//!
//! Exit codes: 0 success, 1 a checked property is false, 2 bad input
//! (file, parse, unknown rule), 3 enumeration budget exceeded, 4 search
//! stopped before completion.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use consul_core::rangegraph::build_range_graph;
use consul_core::rules::RULE_NAMES;
use consul_core::search::{run as run_search, Engine, PropertySet, SearchSpec};
use consul_core::tabulate;

use crate::config;
use crate::dot::to_dot;
use crate::error::{CliError, ExitStatus, Result};
use crate::io::{self, load_rule};
use crate::report::{self, CheckProperty, Meta};

const DOT_NAME: &str = "range";

#[derive(Parser, Debug)]
#[command(name = "consul", version, about = "Analyse two-seat committee election rules")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate properties of a rule; exits 1 if any is false.
    Check(CheckArgs),
    /// Range graph, structure, dictators and linkedness of a rule.
    Analyze(AnalyzeArgs),
    /// Enumerate every rule satisfying a property set.
    Search(SearchArgs),
    /// Tabulate a registry rule and write its rule file.
    Construct(ConstructArgs),
    /// Write the range graph of a rule as DOT.
    ExportDot(ExportDotArgs),
}

#[derive(Args, Debug)]
pub struct RuleSource {
    /// Rule file, or registry identifier such as `dictator:4,2,0`.
    #[arg(value_name = "RULE", required_unless_present = "rule", conflicts_with = "rule")]
    positional: Option<String>,
    /// Same as the positional RULE.
    #[arg(long, value_name = "FILE|NAME:PARAMS")]
    rule: Option<String>,
}

impl RuleSource {
    fn get(&self) -> &str {
        self.rule.as_deref().or(self.positional.as_deref()).expect("clap enforces one source")
    }
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[command(flatten)]
    source: RuleSource,
    /// Comma-separated properties. Defaults to spo,spp,weak-viability.
    #[arg(long, value_enum, value_delimiter = ',')]
    properties: Vec<CheckProperty>,
    #[arg(long)]
    spo: bool,
    #[arg(long)]
    spp: bool,
    #[arg(long)]
    lex_sp: bool,
    #[arg(long)]
    weak_viability: bool,
    #[arg(long)]
    onto: bool,
    #[arg(long)]
    unanimity: bool,
    #[arg(long)]
    veto: bool,
    #[arg(long)]
    edge_connectivity: bool,
    /// Both upward and downward monotonicity.
    #[arg(long)]
    monotonicity: bool,
    #[arg(long)]
    weak_dictator: bool,
    #[arg(long)]
    strong_dictator: bool,
    #[arg(long)]
    range_dictator: bool,
    #[arg(long)]
    marian: bool,
    #[arg(long)]
    reducible: bool,
    #[arg(long)]
    irreducible: bool,
    #[arg(long)]
    linked: bool,
    /// Also write report.json and meta.json into this directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl CheckArgs {
    fn requested(&self) -> Vec<CheckProperty> {
        use CheckProperty as P;
        let flags = [
            (self.spo, &[P::Spo][..]),
            (self.spp, &[P::Spp]),
            (self.lex_sp, &[P::LexSp]),
            (self.weak_viability, &[P::WeakViability]),
            (self.onto, &[P::Onto]),
            (self.unanimity, &[P::Unanimity]),
            (self.veto, &[P::Veto]),
            (self.edge_connectivity, &[P::EdgeConnectivity]),
            (self.monotonicity, &[P::UpwardMonotonicity, P::DownwardMonotonicity]),
            (self.weak_dictator, &[P::WeakDictator]),
            (self.strong_dictator, &[P::StrongDictator]),
            (self.range_dictator, &[P::RangeDictator]),
            (self.marian, &[P::Marian]),
            (self.reducible, &[P::Reducible]),
            (self.irreducible, &[P::Irreducible]),
            (self.linked, &[P::Linked]),
        ];
        let mut out = self.properties.clone();
        out.extend(flags.iter().filter(|(on, _)| *on).flat_map(|(_, ps)| ps.iter().copied()));
        if out.is_empty() {
            out.extend(CheckProperty::DEFAULT);
        }
        out
    }
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    source: RuleSource,
    /// Write the range graph as DOT to this file.
    #[arg(long)]
    dot: Option<PathBuf>,
    /// Also write report.json and meta.json into this directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    /// Comma-separated: spo, spp, weak-viability, unanimity, irreducible,
    /// non-marian, no-range-dictator.
    #[arg(long, default_value = "")]
    properties: String,
    #[arg(long, default_value = "pruned", value_parser = ["naive", "pruned"])]
    engine: String,
    /// Stop after this many seconds and report an incomplete run.
    #[arg(long)]
    timeout_secs: Option<u64>,
    /// Disable monotonicity and forced-unanimity pruning.
    #[arg(long)]
    no_lemma_pruning: bool,
    /// Directory for results.ldjson, summary.json and meta.json.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    /// Registry name, optionally with `:params`.
    name: String,
    /// Parameters, joined with commas after the name.
    params: Vec<String>,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ExportDotArgs {
    #[command(flatten)]
    source: RuleSource,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn run(cli: Cli) -> Result<ExitStatus> {
    match cli.command {
        Command::Check(args) => check(args),
        Command::Analyze(args) => analyze(args),
        Command::Search(args) => search(args),
        Command::Construct(args) => construct(args),
        Command::ExportDot(args) => export_dot(args),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => io::write_text(path, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|()| stdout.flush())
                .map_err(|e| CliError::file("<stdout>", e))
        }
    }
}

fn create_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::file(dir, e))
}

fn write_sidecar(dir: &Path, body: &str, meta: Meta) -> Result<()> {
    create_dir(dir)?;
    io::write_text(&dir.join("report.json"), body)?;
    io::write_text(&dir.join("meta.json"), &report::render(&meta.finish()))
}

fn check(args: CheckArgs) -> Result<ExitStatus> {
    let meta = Meta::start("check", args.source.get());
    let rule = load_rule(args.source.get(), config::budget()?)?;
    let report = report::check(&rule.table, &args.requested());
    let body = report::render(&report);
    emit(None, &body)?;
    if let Some(dir) = &args.out {
        write_sidecar(dir, &body, meta)?;
    }
    Ok(if report.all_hold { ExitStatus::Ok } else { ExitStatus::PropertyFalse })
}

fn analyze(args: AnalyzeArgs) -> Result<ExitStatus> {
    let meta = Meta::start("analyze", args.source.get());
    let rule = load_rule(args.source.get(), config::budget()?)?;
    let body = report::render(&report::analyze(&rule.table));
    emit(None, &body)?;
    if let Some(path) = &args.dot {
        io::write_text(path, &to_dot(&build_range_graph(&rule.table), DOT_NAME))?;
    }
    if let Some(dir) = &args.out {
        write_sidecar(dir, &body, meta)?;
    }
    Ok(ExitStatus::Ok)
}

fn construct(args: ConstructArgs) -> Result<ExitStatus> {
    let id = if args.params.is_empty() {
        args.name.clone()
    } else {
        format!("{}:{}", args.name, args.params.join(","))
    };
    let rule = match io::construct(&id) {
        Err(CliError::Core(consul_core::Error::UnknownRule(name))) => {
            return Err(CliError::Invalid(format!(
                "unknown rule `{name}`; known rules: {}",
                RULE_NAMES.join(", ")
            )))
        }
        other => other?,
    };
    let table = tabulate(&rule, config::budget()?)?;
    emit(args.out.as_deref(), &io::to_json(&table))?;
    Ok(ExitStatus::Ok)
}

fn export_dot(args: ExportDotArgs) -> Result<ExitStatus> {
    let rule = load_rule(args.source.get(), config::budget()?)?;
    emit(args.out.as_deref(), &to_dot(&build_range_graph(&rule.table), DOT_NAME))?;
    Ok(ExitStatus::Ok)
}

fn search(args: SearchArgs) -> Result<ExitStatus> {
    let engine: Engine = args.engine.parse()?;
    let mut spec = SearchSpec::new(args.m, args.n, PropertySet::parse_list(&args.properties)?);
    spec.profile_budget = config::budget()?;
    spec.lemma_pruning = !args.no_lemma_pruning;
    let meta = Meta::start("search", &format!("{engine:?} m={} n={} [{}]", args.m, args.n, args.properties));
    create_dir(&args.out)?;
    let results_path = args.out.join("results.ldjson");
    let file = File::create(&results_path).map_err(|e| CliError::file(&results_path, e))?;
    let mut results = BufWriter::new(file);
    let mut write_error = None;
    let deadline = args.timeout_secs.map(|s| Instant::now() + Duration::from_secs(s));
    let mut stop = || deadline.is_some_and(|d| Instant::now() >= d);
    let outcome = run_search(engine, &spec, &mut stop, &mut |record| {
        if write_error.is_none() {
            let line = serde_json::to_string(&record).expect("records serialise");
            if let Err(e) = writeln!(results, "{line}") {
                write_error = Some(e);
            }
        }
    });
    let summary = match outcome {
        Err(e @ consul_core::Error::BudgetExceeded { .. }) if engine == Engine::Naive => {
            eprintln!("the naive engine cannot cover this space; try --engine pruned");
            return Err(e.into());
        }
        other => other?,
    };
    if let Some(e) = write_error {
        return Err(CliError::file(&results_path, e));
    }
    results.flush().map_err(|e| CliError::file(&results_path, e))?;
    let body = report::render(&summary);
    io::write_text(&args.out.join("summary.json"), &body)?;
    io::write_text(&args.out.join("meta.json"), &report::render(&meta.finish()))?;
    emit(None, &body)?;
    if summary.complete {
        Ok(ExitStatus::Ok)
    } else {
        let err = CliError::Timeout(args.timeout_secs.unwrap_or(0));
        eprintln!("{err}");
        Ok(err.status())
    }
}
