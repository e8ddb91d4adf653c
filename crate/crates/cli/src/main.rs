use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nuqec::circuit::parse_circuit;
use nuqec::ft::DEFAULT_PAIR_BUDGET;
use nuqec::report::{self, FtTarget, Report};
use nuqec::{Error, Result};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Table,
    Machine,
}

/// Verified non-uniform concatenated codes: catalog queries, distances,
/// gadget synthesis and fault-tolerance campaigns.
#[derive(Parser, Debug)]
#[command(name = "nuqec", version)]
struct Cli {
    /// Code catalog file (defaults to the embedded catalog).
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    /// Output rendering.
    #[arg(long, global = true, value_enum, default_value = "table")]
    format: Format,
    /// Extra output file: the circuit for `gadget`, the first witness replay
    /// for `ftcheck`, a copy of the report otherwise.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Catalog queries.
    Codes {
        #[command(subcommand)]
        action: CodesAction,
    },
    /// Exact overall distance of a layout.
    Distance {
        /// Preset name, descriptor file or inline descriptor.
        #[arg(long)]
        layout: String,
    },
    /// Synthesize and verify the gadget for one logical gate.
    Gadget {
        #[arg(long)]
        layout: String,
        /// Gate such as T, CCZ, H or CKZ(2,pi/4).
        #[arg(long)]
        gate: String,
        /// Angle replacing the gate's phase, e.g. pi/8.
        #[arg(long)]
        theta: Option<String>,
    },
    /// Single-fault campaign, optionally with the pair search.
    Ftcheck {
        #[arg(long)]
        layout: String,
        /// Comma-separated gates (default: the layout's universal set).
        #[arg(long, value_delimiter = ',')]
        gates: Vec<String>,
        /// Analyze this circuit file instead of synthesized gadgets.
        #[arg(long, conflicts_with = "gates")]
        circuit: Option<PathBuf>,
        /// Also search fault pairs and report the effective distance.
        #[arg(long)]
        pairs: bool,
        /// Largest number of location pairs a search may visit.
        #[arg(long, default_value_t = DEFAULT_PAIR_BUDGET)]
        budget: u64,
    },
    /// Distance comparison table for the standard layouts.
    Table1 {
        /// Add the 47-, 73- and 55-qubit layouts.
        #[arg(long)]
        extended: bool,
        #[arg(long, default_value_t = DEFAULT_PAIR_BUDGET)]
        budget: u64,
    },
    /// Replay a witness document written by `ftcheck --out`.
    Replay { file: PathBuf },
}

#[derive(Subcommand, Debug)]
enum CodesAction {
    List,
    Info { name: String },
    Dump,
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn write(path: &PathBuf, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn run(cli: &Cli) -> Result<(Report, Option<String>)> {
    let catalog = report::load_catalog(cli.catalog.as_deref())?;
    Ok(match &cli.command {
        Command::Codes { action } => match action {
            CodesAction::List => (report::cmd_codes_list(&catalog)?, None),
            CodesAction::Info { name } => (report::cmd_codes_info(&catalog, name)?, None),
            CodesAction::Dump => (report::cmd_codes_dump(&catalog), None),
        },
        Command::Distance { layout } => {
            let l = report::resolve_layout(layout, &catalog)?;
            (report::cmd_distance(&catalog, &l)?, None)
        }
        Command::Gadget { layout, gate, theta } => {
            let l = report::resolve_layout(layout, &catalog)?;
            let g = report::resolve_gate(gate, theta.as_deref())?;
            report::cmd_gadget(&catalog, &l, &g)?
        }
        Command::Ftcheck {
            layout,
            gates,
            circuit,
            pairs,
            budget,
        } => {
            let l = report::resolve_layout(layout, &catalog)?;
            let target = match circuit {
                Some(p) => FtTarget::Circuit(parse_circuit(&read(p)?, &catalog)?),
                None => FtTarget::Gates(
                    gates
                        .iter()
                        .map(|g| report::resolve_gate(g, None))
                        .collect::<Result<Vec<_>>>()?,
                ),
            };
            let (r, replays) = report::cmd_ftcheck(&catalog, &l, target, *pairs, *budget)?;
            let first = replays.into_iter().next();
            (r, first)
        }
        Command::Table1 { extended, budget } => (report::cmd_table1(&catalog, *extended, *budget)?, None),
        Command::Replay { file } => (report::cmd_replay(&catalog, &read(file)?)?, None),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((report, extra)) => {
            let rendered = match cli.format {
                Format::Table => report.table(),
                Format::Machine => report.machine(),
            };
            print!("{rendered}");
            if let Some(path) = &cli.out {
                let body = match &cli.command {
                    Command::Gadget { .. } | Command::Ftcheck { .. } => extra,
                    _ => Some(rendered),
                };
                if let Some(body) = body {
                    if let Err(e) = write(path, &body) {
                        eprintln!("error: {e}");
                        return ExitCode::from(e.exit_code() as u8);
                    }
                }
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
