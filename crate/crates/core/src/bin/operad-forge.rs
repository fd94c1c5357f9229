use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use operad_forge::report::{Format, RunConfig};
use operad_forge::suites::run_suite;

/// Verification suites for combinatorial E_n operads.
#[derive(Parser)]
#[command(name = "operad-forge", version, about)]
struct Cli {
    #[command(subcommand)]
    suite: Suite,
}

#[derive(Subcommand)]
enum Suite {
    /// Operad axioms on every composable tuple up to --max-arity
    Axioms(Opts),
    /// Integer homology of the nerve of an arity poset
    Homology(Opts),
    /// Components, Σk orbits, fixed points and component homology
    Recognize(Opts),
    /// Fail-by-design examples: --target ru-c2 | rx-cyclic
    Counterexample(Opts),
    /// Cube configurations against their pair decompositions
    Roundtrip(Opts),
    /// Cells of the little cubes indexed by complete graphs
    Cells(Opts),
    /// The product of two cube operads inside a bigger one
    Gtensor(Opts),
    /// Fixed points forced by a finite monoid of unary operations
    Obstruction(Opts),
    /// Interchange diagrams: --case dunn | c2-fail | thm4 | all
    Interchange(Opts),
    /// Carrier of a complete-graphs operad with count oracles
    Enumerate(Opts),
    /// R2T2B against RUB for B = K^(n)
    Identification(Opts),
}

impl Suite {
    fn parts(self) -> (&'static str, Opts) {
        match self {
            Suite::Axioms(o) => ("axioms", o),
            Suite::Homology(o) => ("homology", o),
            Suite::Recognize(o) => ("recognize", o),
            Suite::Counterexample(o) => ("counterexample", o),
            Suite::Roundtrip(o) => ("roundtrip", o),
            Suite::Cells(o) => ("cells", o),
            Suite::Gtensor(o) => ("gtensor", o),
            Suite::Obstruction(o) => ("obstruction", o),
            Suite::Interchange(o) => ("interchange", o),
            Suite::Enumerate(o) => ("enumerate", o),
            Suite::Identification(o) => ("identification", o),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct Opts {
    /// k | khat | join | atomic | rx
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    max_arity: Option<usize>,
    /// ru-c2 | rx-cyclic
    #[arg(long)]
    target: Option<String>,
    /// z2 | z3 | zN | idempotent | path to a Cayley table CSV
    #[arg(long)]
    monoid: Option<String>,
    /// s0 | freeM | colorsN | path to a Z/2-set JSON file
    #[arg(long)]
    z2set: Option<String>,
    /// dunn | c2-fail | thm4 | all
    #[arg(long)]
    case: Option<String>,
    #[arg(long)]
    samples: Option<u64>,
    /// Decimal or 0x-prefixed hexadecimal
    #[arg(long)]
    seed: Option<String>,
    /// Families with more cases than this are sampled
    #[arg(long)]
    exhaustive_limit: Option<u64>,
    /// Largest nerve, in simplices, built before falling back to the core
    #[arg(long)]
    simplex_budget: Option<u64>,
    #[arg(long, value_enum)]
    format: Option<OutFormat>,
    /// Write the report here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
    /// key = value file; flags given on the command line win
    #[arg(long)]
    config: Option<PathBuf>,
}

fn build_config(suite: &str, o: &Opts) -> operad_forge::Result<RunConfig> {
    let mut cfg = RunConfig::new(suite);
    if let Some(path) = &o.config {
        cfg.apply_config_file(path)?;
        cfg.suite = suite.to_string();
    }
    let text = [
        ("family", o.family.clone()),
        ("n", o.n.map(|v| v.to_string())),
        ("k", o.k.map(|v| v.to_string())),
        ("m", o.m.map(|v| v.to_string())),
        ("max_arity", o.max_arity.map(|v| v.to_string())),
        ("target", o.target.clone()),
        ("monoid", o.monoid.clone()),
        ("z2set", o.z2set.clone()),
        ("case", o.case.clone()),
        ("samples", o.samples.map(|v| v.to_string())),
        ("seed", o.seed.clone()),
        ("exhaustive_limit", o.exhaustive_limit.map(|v| v.to_string())),
        ("simplex_budget", o.simplex_budget.map(|v| v.to_string())),
    ];
    for (key, value) in text {
        if let Some(v) = value {
            cfg.set(key, &v)?;
        }
    }
    if let Some(f) = o.format {
        cfg.format = match f {
            OutFormat::Text => Format::Text,
            OutFormat::Json => Format::Json,
            OutFormat::Csv => Format::Csv,
        };
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (suite, o) = cli.suite.parts();
    let run = || -> operad_forge::Result<i32> {
        let cfg = build_config(suite, &o)?;
        let report = run_suite(&cfg)?;
        let rendered = report.render(cfg.format)?;
        match &o.out {
            Some(path) => std::fs::write(path, rendered)?,
            None => std::io::stdout().write_all(rendered.as_bytes())?,
        }
        Ok(report.exit_code())
    };
    match run() {
        Ok(0) => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(e) => {
            eprintln!("operad-forge: {e}");
            ExitCode::from(1)
        }
    }
}
