use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use effdual_cli::commands::{self, Context};
use effdual_cli::config::Config;
use effdual_cli::report::{Format, Report};

/// Checks the algebraic laws of states and exceptions over finite carriers.
#[derive(Parser)]
#[command(name = "effdual", version)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "human")]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every law and derived property on a signature.
    Laws { config: PathBuf },
    /// Decide whether two terms denote the same function.
    Equiv {
        config: PathBuf,
        term1: String,
        term2: String,
    },
    /// Apply a term to one element.
    Eval {
        config: PathBuf,
        term: String,
        input: String,
    },
    /// Print the dual of a term.
    Dualize { config: PathBuf, term: String },
    /// Trace a handle term on one input.
    ///
    /// Arguments after the body are `<index> <handler>` pairs followed by
    /// the input.
    HandleDemo {
        config: PathBuf,
        f: String,
        #[arg(required = true, num_args = 1.., allow_hyphen_values = true)]
        rest: Vec<String>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Laws { .. } => "laws",
            Command::Equiv { .. } => "equiv",
            Command::Eval { .. } => "eval",
            Command::Dualize { .. } => "dualize",
            Command::HandleDemo { .. } => "handle-demo",
        }
    }

    fn config(&self) -> &PathBuf {
        match self {
            Command::Laws { config }
            | Command::Equiv { config, .. }
            | Command::Eval { config, .. }
            | Command::Dualize { config, .. }
            | Command::HandleDemo { config, .. } => config,
        }
    }
}

fn run(cli: &Cli) -> Report {
    let name = cli.command.name();
    let config = match Config::load(cli.command.config()) {
        Ok(c) => c,
        Err(e) => {
            let mut r = Report::new(name, None);
            r.push_error("config", e.to_string());
            return r;
        }
    };
    let ctx = Context {
        config: &config,
        use_labels: cli.format == Format::Human,
    };
    match &cli.command {
        Command::Laws { .. } => commands::cmd_laws(&ctx),
        Command::Equiv { term1, term2, .. } => commands::cmd_equiv(&ctx, term1, term2),
        Command::Eval { term, input, .. } => commands::cmd_eval(&ctx, term, input),
        Command::Dualize { term, .. } => commands::cmd_dualize(&ctx, term),
        Command::HandleDemo { f, rest, .. } => {
            if rest.len() % 2 == 0 {
                return commands::usage_error(
                    name,
                    "expected `<index> <handler>` pairs followed by one input",
                );
            }
            let (input, pairs) = rest.split_last().expect("non-empty");
            let handlers: Vec<(String, String)> = pairs
                .chunks(2)
                .map(|c| (c[0].clone(), c[1].clone()))
                .collect();
            commands::cmd_handle_demo(&ctx, f, &handlers, input)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = run(&cli);
    print!("{}", report.emit(cli.format));
    ExitCode::from(report.exit_code() as u8)
}
