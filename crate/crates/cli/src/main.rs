use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod output;

use output::{Failure, Format};

/// Structure detection, IF-coloring, discharging and reducibility checks for
/// plane graphs.
#[derive(Parser, Debug)]
#[command(name = "ifpart", version)]
pub struct Cli {
    /// Output style.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Seed for the random generators.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Print nothing; report through the exit code only.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum FormatArg {
    Text,
    Data,
}

#[derive(Args, Debug)]
pub struct GraphArg {
    /// Graph file in the text or JSON format; `-` reads stdin.
    pub graph: PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Checks that 5⁻-cycles are pairwise at distance at least 3.
    CheckClass(GraphArg),
    /// Chords, claws and triclaws of cycles, or the face role table.
    Detect {
        #[command(flatten)]
        input: GraphArg,
        /// Analyze one cycle, given as `v1,v2,...`.
        #[arg(long, value_delimiter = ',', conflicts_with_all = ["all_9", "faces"])]
        cycle: Option<Vec<usize>>,
        /// Classify every 9-cycle.
        #[arg(long = "all-9", conflicts_with = "faces")]
        all_9: bool,
        /// Print the face role table.
        #[arg(long)]
        faces: bool,
    },
    /// Finds an IF-coloring, or reports NONE.
    Color(GraphArg),
    /// Extends a precolored cycle to a super IF-coloring.
    Extend {
        #[command(flatten)]
        input: GraphArg,
        #[arg(long, value_delimiter = ',', required = true)]
        cycle: Vec<usize>,
        /// Colors of the cycle vertices, as `v=I,w=F,...`.
        #[arg(long, value_delimiter = ',', required = true)]
        precolor: Vec<String>,
    },
    /// Checks a coloring file (lines `v I` or `v F`).
    Verify {
        #[command(flatten)]
        input: GraphArg,
        coloring: PathBuf,
        /// Also require no splitting F-path of `--cycle`.
        #[arg(long = "super", requires = "cycle")]
        super_: bool,
        #[arg(long, value_delimiter = ',')]
        cycle: Option<Vec<usize>>,
    },
    /// Runs the discharging rules and the outer-face accounting.
    Discharge {
        #[command(flatten)]
        input: GraphArg,
        /// Restrict to this cycle and its interior, with the cycle as outer face.
        #[arg(long, value_delimiter = ',')]
        cycle: Option<Vec<usize>>,
        /// Print every transfer.
        #[arg(long)]
        log: bool,
    },
    /// Checks gadget reducibility by exhaustive boundary enumeration.
    ReduceCheck {
        /// Gadget family: L2, L4, L5 or L6.
        #[arg(long, required_unless_present = "all")]
        lemma: Option<String>,
        /// Family parameter, as `t=9` or `9`.
        #[arg(long, requires = "lemma")]
        param: Option<String>,
        /// Every lemma gadget.
        #[arg(long, conflicts_with = "lemma")]
        all: bool,
        #[arg(long, value_enum, default_value_t = ModelArg::Ibit)]
        model: ModelArg,
    },
    /// Lists occurrences of the reducible configurations.
    FindConfigs(GraphArg),
    /// Writes a generated instance.
    Gen {
        #[command(subcommand)]
        generator: GenCommand,
        /// Output file; stdout when absent.
        #[arg(long, short, global = true)]
        output: Option<PathBuf>,
    },
    /// Runs a batch spec file and writes a line-oriented report.
    Suite {
        spec: PathBuf,
        /// Report file; stdout when absent.
        #[arg(long, short)]
        output: Option<PathBuf>,
        /// Include per-check timings in the report.
        #[arg(long)]
        timings: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelArg {
    Ibit,
    Connectivity,
}

#[derive(Subcommand, Debug)]
pub enum GenCommand {
    /// Hexagonal lattice patch.
    Hex { rows: usize, cols: usize },
    /// Random plane graph in the class, from `--seed`.
    Random { n: usize },
    /// Hex patch mutated while avoiding every reducible configuration.
    Compliant { rows: usize, cols: usize },
    /// A figure or lemma gadget, e.g. `FIG2A` or `L4:t=9`.
    Gadget { id: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match cli.format {
        FormatArg::Text => Format::Text,
        FormatArg::Data => Format::Data,
    };
    match commands::run(&cli.command, cli.seed) {
        Ok(report) => {
            if !cli.quiet {
                report.print(format);
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Input(msg)) => {
            if !cli.quiet {
                eprintln!("error: {msg}");
            }
            ExitCode::from(2)
        }
    }
}
