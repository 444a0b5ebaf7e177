//! Command-line front end for `solitar-core`.
//!
//! Every subcommand produces a text rendering and a JSON document from the same
//! computed result, so the two modes always agree on verdicts.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

mod commands;
pub mod corpus;

pub use corpus::run_corpus;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Exit status for success or an all-pass verification.
pub const EXIT_OK: i32 = 0;
/// Exit status when a check fails or a corpus row mismatches.
pub const EXIT_FAIL: i32 = 1;
/// Exit status for usage errors, resource limits and inconclusive checks.
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "solitar", version, about = "Word problems, lower central series and nilpotent quotients of Baumslag-Solitar groups")]
struct Cli {
    /// Print one JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct GroupArgs {
    /// First Baumslag-Solitar parameter.
    #[arg(short, allow_negative_numbers = true)]
    m: i64,
    /// Second Baumslag-Solitar parameter.
    #[arg(short, allow_negative_numbers = true)]
    n: i64,
}

#[allow(clippy::enum_variant_names)]
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GeneratorSet {
    GammaOmega,
    NOmega,
    NpOmega,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Residual finiteness, nilpotence and p-properties of BS(m, n).
    Classify {
        #[command(flatten)]
        group: GroupArgs,
        /// Primes to test residual p-finiteness for.
        #[arg(long = "p", alias = "prime", num_args = 1.., default_values_t = [2i64, 3, 5, 7])]
        primes: Vec<i64>,
    },
    /// Normal-closure generating sets for gamma_omega, N_omega and (Np)_omega.
    Generators {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum)]
        set: GeneratorSet,
        /// Prime for the (Np)_omega family.
        #[arg(long)]
        prime: Option<i64>,
        #[arg(long, default_value_t = 3)]
        k_window: u32,
        /// Also list every generator with |k| <= k-window.
        #[arg(long)]
        instances: bool,
    },
    /// Britton normal form of a word.
    Reduce {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Nilpotent quotient G / gamma_{c+1}(G).
    Nq {
        #[arg(short, allow_negative_numbers = true, requires = "n", conflicts_with = "presentation")]
        m: Option<i64>,
        #[arg(short, allow_negative_numbers = true, requires = "m")]
        n: Option<i64>,
        /// Presentation file: a "gens: t a" header, then one relator per line.
        #[arg(long, required_unless_present = "m")]
        presentation: Option<PathBuf>,
        #[arg(long, default_value_t = 5)]
        class: usize,
        /// Cap on generators of the free nilpotent cover.
        #[arg(long)]
        max_generators: Option<usize>,
        /// Cap on coefficient bit length.
        #[arg(long)]
        max_bits: Option<u64>,
    },
    /// Free Lie ring of rank 2: Hall basis, Witt ranks, indices and bounds.
    Lie {
        #[command(flatten)]
        query: LieQuery,
    },
    /// Run verification checks against BS(m, n).
    Verify {
        #[command(flatten)]
        group: GroupArgs,
        /// Run every check (the default).
        #[arg(long, conflicts_with = "check")]
        all: bool,
        #[arg(long, value_parser = commands::parse_check)]
        check: Option<solitar_core::verifier::Check>,
        #[command(flatten)]
        knobs: VerifyKnobs,
    },
    /// Run a fixture corpus file, or the bundled one.
    Corpus {
        path: Option<PathBuf>,
        /// Worker threads; rows are reported in file order regardless.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[command(flatten)]
        knobs: VerifyKnobs,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct LieQuery {
    /// Hall basis of degree C.
    #[arg(long, value_name = "C")]
    basis: Option<usize>,
    /// Witt rank of degree C.
    #[arg(long, value_name = "C")]
    witt: Option<u32>,
    /// Index of psi(gr_C) for y -> KAPPA y.
    #[arg(long, num_args = 2, value_names = ["C", "KAPPA"], allow_negative_numbers = true)]
    index: Option<Vec<i64>>,
    /// Bound on |gr_C(BS(M, N))|.
    #[arg(long, num_args = 3, value_names = ["M", "N", "C"], allow_negative_numbers = true)]
    bound: Option<Vec<i64>>,
}

#[derive(Args, Debug, Clone)]
struct VerifyKnobs {
    #[arg(long, default_value_t = 5)]
    class: usize,
    #[arg(long, default_value_t = 3)]
    k_window: u32,
    #[arg(long, default_value_t = 2)]
    exp_window: u32,
    /// Primes for the bounds chain.
    #[arg(long = "prime", num_args = 1.., default_values_t = [2i64, 3])]
    primes: Vec<i64>,
    #[arg(long, default_value_t = 200)]
    sample_size: usize,
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
}

impl VerifyKnobs {
    fn config(&self) -> solitar_core::verifier::VerifyConfig {
        solitar_core::verifier::VerifyConfig {
            class: self.class,
            k_window: self.k_window,
            exp_window: self.exp_window,
            primes: self.primes.clone(),
            sample_size: self.sample_size,
            seed: self.seed,
        }
    }
}

/// What a subcommand computed: JSON parameters and result, the text rendering
/// and the exit status.
pub(crate) struct Output {
    pub params: Value,
    pub result: Value,
    pub text: String,
    pub code: i32,
}

fn subcommand_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Classify { .. } => "classify",
        Command::Generators { .. } => "generators",
        Command::Reduce { .. } => "reduce",
        Command::Nq { .. } => "nq",
        Command::Lie { .. } => "lie",
        Command::Verify { .. } => "verify",
        Command::Corpus { .. } => "corpus",
    }
}

fn dispatch(cmd: &Command) -> anyhow::Result<Output> {
    match cmd {
        Command::Classify { group, primes } => commands::classify(group.m, group.n, primes),
        Command::Generators { group, set, prime, k_window, instances } => {
            commands::generators(group.m, group.n, *set, *prime, *k_window, *instances)
        }
        Command::Reduce { group, word } => commands::reduce(group.m, group.n, word),
        Command::Nq { m, n, presentation, class, max_generators, max_bits } => {
            commands::nq(m.zip(*n), presentation.as_deref(), *class, *max_generators, *max_bits)
        }
        Command::Lie { query } => commands::lie(query),
        Command::Verify { group, check, knobs, .. } => commands::verify(group.m, group.n, *check, &knobs.config()),
        Command::Corpus { path, jobs, knobs } => corpus::corpus_command(path.as_deref(), *jobs, &knobs.config()),
    }
}

/// Parses `argv` (including the program name), runs the subcommand and writes
/// its output to `out`. Returns the process exit status.
pub fn run_with(argv: Vec<String>, out: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let output = match dispatch(&cli.command) {
        Ok(output) => output,
        Err(e) => {
            eprintln!("error: {e:#}");
            return EXIT_USAGE;
        }
    };
    let written = if cli.json {
        let doc = json!({
            "tool_version": TOOL_VERSION,
            "subcommand": subcommand_name(&cli.command),
            "params": output.params,
            "result": output.result,
        });
        serde_json::to_writer_pretty(&mut *out, &doc).map_err(std::io::Error::from).and_then(|_| writeln!(out))
    } else {
        write!(out, "{}", output.text)
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return EXIT_USAGE;
    }
    output.code
}

pub fn run(argv: Vec<String>) -> i32 {
    run_with(argv, &mut std::io::stdout().lock())
}
