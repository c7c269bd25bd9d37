use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hamres::lab::{self, ExperimentConfig, ExperimentKind, OutputFormat};
use hamres::random::{sample_gnp, GnpParams};
use hamres::resilience::{global_resilience, Property};
use hamres::{Error, Graph};
use serde_json::json;

/// Exact Hamiltonicity resilience experiments on small random graphs.
#[derive(Parser)]
#[command(name = "hamres", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample G(n, p) and print it as an edge list.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Degree, connectivity, Hamiltonicity and related invariants of one graph.
    Analyze {
        #[command(flatten)]
        graph: GraphSource,
        #[arg(long, default_value_t = hamres::posa::DEFAULT_SUBSET_BUDGET)]
        budget_subsets: u64,
        #[arg(long, value_parser = parse_format)]
        format: Option<OutputFormat>,
    },
    /// Exact global resilience of one graph with respect to Hamiltonicity.
    Resilience(SingleResilience),
    /// Exact global resilience of one graph with respect to perfect matchings.
    PmResilience(SingleResilience),
    /// Property census: P1-P5 and Q1-Q3 over sampled graphs.
    Properties(CensusArgs),
    /// Sparse-regime pipeline trace over sampled graphs.
    Pipeline(CensusArgs),
    /// Sweep of the binomial coefficient and tail inequalities.
    Bounds(CensusArgs),
    /// Any experiment kind, usually driven by a config file.
    Census(CensusArgs),
}

#[derive(Args)]
struct GraphSource {
    /// Edge-list file (`-` for stdin); omit to sample with --n/--p/--seed.
    input: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl GraphSource {
    fn load(&self) -> hamres::Result<Graph> {
        match (&self.input, self.n, self.p) {
            (Some(path), None, None) => lab::read_graph(path),
            (None, Some(n), Some(p)) => sample_gnp(&GnpParams::new(n, p, self.seed)?),
            _ => Err(Error::InvalidArgument(
                "give either an edge-list file or both --n and --p".into(),
            )),
        }
    }
}

#[derive(Args)]
struct SingleResilience {
    #[command(flatten)]
    graph: GraphSource,
    #[arg(long, default_value_t = hamres::resilience::DEFAULT_ORACLE_BUDGET)]
    budget_oracle: u64,
    #[arg(long, value_parser = parse_format)]
    format: Option<OutputFormat>,
}

#[derive(Args)]
struct CensusArgs {
    /// Flat `key = value` config file; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Experiment kind (census only).
    #[arg(long)]
    kind: Option<String>,
    /// Comma-separated vertex counts.
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    p: Option<String>,
    /// `threshold+C`: p = (ln n + ln ln n + C)/n.
    #[arg(long)]
    p_rule: Option<String>,
    #[arg(long)]
    trials: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    budget_oracle: Option<String>,
    #[arg(long)]
    budget_subsets: Option<String>,
    #[arg(long)]
    out: Option<String>,
    #[arg(long)]
    format: Option<String>,
    /// Resilience census property: hamiltonicity or perfect_matching.
    #[arg(long)]
    property: Option<String>,
    /// Comma-separated property ids for the property census.
    #[arg(long)]
    properties: Option<String>,
    #[arg(long)]
    d0: Option<String>,
    /// Coefficient c in d0 = max(3, ceil(c np)).
    #[arg(long)]
    d0_c: Option<String>,
    #[arg(long)]
    retries: Option<String>,
    #[arg(long)]
    expander_k: Option<String>,
    #[arg(long)]
    bounds_n_max: Option<String>,
    #[arg(long)]
    bounds_p_denominator: Option<String>,
}

impl CensusArgs {
    fn config(&self, kind: Option<ExperimentKind>) -> hamres::Result<ExperimentConfig> {
        let mut cfg = lab::load_config(self.config.as_deref())?;
        if let Some(kind) = kind {
            cfg.kind = kind;
        }
        let overrides = [
            ("kind", &self.kind),
            ("n", &self.n),
            ("p", &self.p),
            ("p_rule", &self.p_rule),
            ("trials", &self.trials),
            ("seed", &self.seed),
            ("budget_oracle", &self.budget_oracle),
            ("budget_subsets", &self.budget_subsets),
            ("out", &self.out),
            ("format", &self.format),
            ("property", &self.property),
            ("properties", &self.properties),
            ("d0", &self.d0),
            ("d0_c", &self.d0_c),
            ("retries", &self.retries),
            ("expander_k", &self.expander_k),
            ("bounds_n_max", &self.bounds_n_max),
            ("bounds_p_denominator", &self.bounds_p_denominator),
        ];
        for (key, value) in overrides {
            if let Some(v) = value {
                cfg.set(key, v)?;
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Io(_) => 3,
        e if e.is_resource() => 2,
        _ => 1,
    }
}

fn run_census(cfg: &ExperimentConfig, out: &mut dyn Write) -> hamres::Result<()> {
    match cfg.kind {
        ExperimentKind::ResilienceCensus => lab::emit(cfg, &lab::run_resilience_census(cfg)?, out),
        ExperimentKind::PropertyCensus => lab::emit(cfg, &lab::run_property_census(cfg)?, out),
        ExperimentKind::PipelineTrace => lab::emit(cfg, &lab::run_pipeline_trace(cfg)?, out),
        ExperimentKind::BoundsSweep => lab::emit(cfg, &lab::run_bounds_sweep(cfg)?, out),
    }
}

fn print_json(out: &mut dyn Write, value: &serde_json::Value) -> hamres::Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(value).expect("json value"))?;
    Ok(())
}

fn resilience(args: &SingleResilience, property: Property, out: &mut dyn Write) -> hamres::Result<()> {
    let g = args.graph.load()?;
    let r = global_resilience(&g, property, args.budget_oracle)?;
    let witness: Vec<[usize; 2]> = r.witness.iter().map(|(u, v)| [u, v]).collect();
    let predicted = lab::predicted_resilience(&g, property);
    match args.format.unwrap_or(OutputFormat::Json) {
        OutputFormat::Json => print_json(
            out,
            &json!({
                "n": g.n(),
                "m": g.m(),
                "min_degree": g.min_degree(),
                "property": r.property,
                "value": r.value,
                "predicted": predicted,
                "witness": witness,
                "method": r.method,
                "oracle_calls": r.oracle_calls,
            }),
        ),
        OutputFormat::Csv => {
            let edges: Vec<String> = witness.iter().map(|[u, v]| format!("{u}-{v}")).collect();
            let method = serde_json::to_value(r.method).expect("json value");
            let property = serde_json::to_value(r.property).expect("json value");
            writeln!(out, "n,m,min_degree,property,value,predicted,witness,method,oracle_calls")?;
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                g.n(),
                g.m(),
                g.min_degree(),
                property.as_str().unwrap_or_default(),
                r.value,
                predicted,
                edges.join(" "),
                method.as_str().unwrap_or_default(),
                r.oracle_calls
            )?;
            Ok(())
        }
    }
}

fn run(cli: Cli, out: &mut dyn Write) -> hamres::Result<()> {
    match cli.command {
        Command::Gen { n, p, seed, out: path } => {
            let g = sample_gnp(&GnpParams::new(n, p, seed)?)?;
            match path {
                Some(path) => std::fs::write(path, g.to_edge_list_string())?,
                None => write!(out, "{}", g.to_edge_list_string())?,
            }
            Ok(())
        }
        Command::Analyze {
            graph,
            budget_subsets,
            format,
        } => {
            let g = graph.load()?;
            let a = lab::analyze_graph(&g, budget_subsets)?;
            match format.unwrap_or(OutputFormat::Json) {
                OutputFormat::Json => print_json(out, &serde_json::to_value(&a).expect("json value")),
                OutputFormat::Csv => lab::write_csv(&[a], out),
            }
        }
        Command::Resilience(args) => resilience(&args, Property::Hamiltonicity, out),
        Command::PmResilience(args) => resilience(&args, Property::PerfectMatching, out),
        Command::Properties(args) => run_census(&args.config(Some(ExperimentKind::PropertyCensus))?, out),
        Command::Pipeline(args) => run_census(&args.config(Some(ExperimentKind::PipelineTrace))?, out),
        Command::Bounds(args) => run_census(&args.config(Some(ExperimentKind::BoundsSweep))?, out),
        Command::Census(args) => run_census(&args.config(None)?, out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    match run(cli, &mut lock).and_then(|()| lock.flush().map_err(Error::from)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
