use clap::{Args, Parser, Subcommand};
use ldescent_core::cli::case::{env_field, CaseBounds, CaseFile, FIELD_ENV};
use ldescent_core::cli::verify::{Suite, VerifyOptions};
use ldescent_core::cli::{self, Mode, Output};
use ldescent_core::hermitian::Family;
use ldescent_core::{Error, LocalField};
use serde_json::Value;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "ldescent", version, about = "Descent and first occurrence for enhanced L-parameters")]
struct Cli {
    /// Write the JSON result here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Worker threads for verification suites (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Case file (schema 1); `-` reads standard input.
    #[arg(long, short)]
    input: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants, Witt index and rational orbits of a space or group.
    ClassifySpace(Input),
    /// The Vogan packet of the case parameter.
    Packet(Input),
    /// The descent D_l of the case member.
    Descend {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        ell: usize,
        /// Restrict to one class z.
        #[arg(long)]
        z: Option<String>,
        #[arg(long)]
        max_dim: Option<usize>,
    },
    /// First occurrence index, arithmetic and/or spectral.
    FirstOccurrence {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "arithmetic", value_parser = parse_mode)]
        mode: Mode,
    },
    /// The spectrum along orbits of head p1.
    Spectrum {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        p1: usize,
    },
    /// A witnessing orbit and discrete member at the first occurrence.
    Submodule(Input),
    /// Randomised verification suites.
    Verify {
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        #[arg(long, default_value_t = 200)]
        cases: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Replay a single case (needs --family).
        #[arg(long, requires = "family")]
        case_seed: Option<u64>,
        #[arg(long, value_parser = parse_family)]
        family: Option<Family>,
        /// Restrict cases to one field.
        #[arg(long, value_parser = parse_field)]
        field: Option<LocalField>,
        /// Largest dimension of V in generated cases.
        #[arg(long, default_value_t = 6)]
        max_space_dim: usize,
    },
    /// Emit a random case file.
    Generate {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_parser = parse_field)]
        field: Option<LocalField>,
        #[arg(long, default_value_t = 6)]
        max_space_dim: usize,
    },
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_field(s: &str) -> Result<LocalField, String> {
    LocalField::parse(s).map_err(|e| e.to_string())
}

fn parse_family(s: &str) -> Result<Family, String> {
    Family::ALL
        .into_iter()
        .find(|f| f.name() == s)
        .ok_or_else(|| format!("family is one of SO_odd, SO_even, Sp, Mp, U; got {s:?}"))
}

fn read_json(input: &Input) -> Result<Value, Error> {
    let text = if input.input.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(&input.input)
    }
    .map_err(|e| Error::Input(format!("{}: {e}", input.input.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Input(format!("{}: {e}", input.input.display())))
}

fn load_case(input: &Input) -> Result<CaseFile, Error> {
    CaseFile::from_json(&read_json(input)?, env_field()?)
}

fn bounds(field: Option<LocalField>, max_space_dim: usize) -> CaseBounds {
    CaseBounds {
        field,
        max_space_dim,
        ..CaseBounds::default()
    }
}

fn run(cmd: Command) -> Result<Output, Error> {
    match cmd {
        Command::ClassifySpace(i) => cli::classify_space(&read_json(&i)?, env_field()?),
        Command::Packet(i) => cli::packet(&load_case(&i)?),
        Command::Descend { input, ell, z, max_dim } => cli::descend(&load_case(&input)?, ell, z.as_deref(), max_dim),
        Command::FirstOccurrence { input, mode } => cli::first_occurrence_cmd(&load_case(&input)?, mode),
        Command::Spectrum { input, p1 } => cli::spectrum(&load_case(&input)?, p1),
        Command::Submodule(i) => cli::submodule(&load_case(&i)?),
        Command::Verify {
            suite,
            cases,
            seed,
            case_seed,
            family,
            field,
            max_space_dim,
        } => {
            let mut opts = VerifyOptions::new(cases, seed);
            opts.bounds = bounds(field, max_space_dim);
            opts.case_seed = case_seed.zip(family);
            Ok(cli::verify(suite, &opts))
        }
        Command::Generate {
            family,
            seed,
            field,
            max_space_dim,
        } => cli::generate(family, seed, &bounds(field.or(env_field()?), max_space_dim)),
    }
}

fn main() -> ExitCode {
    let args = Cli::parse();
    if let Some(j) = args.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let out = match run(args.command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            if matches!(e, Error::Field(_)) && std::env::var_os(FIELD_ENV).is_some() {
                eprintln!("(check {FIELD_ENV})");
            }
            return ExitCode::from(2);
        }
    };
    let text = cli::render(&out.json);
    match &args.output {
        Some(p) => {
            if let Err(e) = std::fs::write(p, text) {
                eprintln!("error: {}: {e}", p.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if out.violations {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
