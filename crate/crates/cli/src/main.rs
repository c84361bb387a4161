mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use proofbench::dag::Level;
use proofbench::nd::NdProfile;
use proofbench::oracle::Logic;
use proofbench::sequent::CalculusProfile;

fn after_help() -> String {
    format!(
        "Formula grammar:\n{}\n\n\
         Exit codes: 0 ok or provable, 1 unprovable or invalid, 2 budget spent or unknown,\n\
         3 usage or syntax error, 4 I/O or format error.\n\
         Errors go to stderr as one line: proofbench:<kind>: <message>",
        proofbench::parse::GRAMMAR
    )
}

#[derive(Parser, Debug)]
#[command(name = "proofbench", version, about = "Sequent and natural-deduction workbench for minimal implicational logic")]
#[command(after_help = after_help())]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse a formula and print its canonical form
    Parse { formula: String },
    /// Search for a sequent derivation of a formula
    Prove {
        #[arg(long, value_enum)]
        calculus: Calculus,
        formula: String,
        /// Write the derivation as JSON
        #[arg(long)]
        emit: Option<PathBuf>,
        /// Height bound c·|goal| for the search; 0 searches without a bound
        #[arg(long)]
        depth_factor: Option<usize>,
    },
    /// Check a sequent derivation file
    CheckSc {
        file: PathBuf,
        #[arg(long, value_enum)]
        calculus: Calculus,
    },
    /// Check a natural-deduction tree or dag file
    CheckNd {
        file: PathBuf,
        #[arg(long, value_enum)]
        profile: Profile,
    },
    /// Translate a sequent derivation into a natural-deduction tree
    Translate {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compress a natural-deduction tree into a dag
    Compress {
        file: PathBuf,
        #[arg(long, value_enum)]
        level: Compression,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Look for a Kripke countermodel, falling back to the naive prover
    Oracle {
        formula: String,
        #[arg(long, default_value_t = 5)]
        max_worlds: usize,
        #[arg(long, value_enum, default_value = "minimal")]
        logic: LogicArg,
    },
    /// Run a scripted experiment
    #[command(subcommand)]
    Experiment(Experiment),
}

#[derive(Subcommand, Debug)]
pub enum Experiment {
    /// (p & q) -> p against its implicational encoding
    Counterexample(ReportOut),
    /// Three-way agreement over every small implicational formula
    Sweep(SweepArgs),
    /// Proof and dag sizes over a formula family
    Growth(GrowthArgs),
    /// Fresh atoms from the GEimpOr rule
    Semisub(ReportOut),
}

#[derive(Args, Debug)]
pub struct ReportOut {
    /// Write the JSON report here
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 7)]
    pub max_connectives: usize,
    #[arg(long, value_delimiter = ',', default_value = "p,q")]
    pub atoms: Vec<String>,
    #[arg(long)]
    pub no_bot: bool,
    #[arg(long, default_value_t = 5)]
    pub max_worlds: usize,
    /// Skip the LG-MIN cross-check
    #[arg(long)]
    pub no_lg_min: bool,
    #[arg(long)]
    pub quiet: bool,
    #[command(flatten)]
    pub out: ReportOut,
}

#[derive(Args, Debug)]
pub struct GrowthArgs {
    /// nested-K, reuse-heavy or all
    #[arg(long, default_value = "all")]
    pub family: String,
    #[arg(long)]
    pub max_index: Option<usize>,
    /// Write the table as CSV; with several families the name gets a suffix
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[command(flatten)]
    pub out: ReportOut,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Calculus {
    LgInt,
    LgMin,
    LmImp,
}

impl From<Calculus> for CalculusProfile {
    fn from(c: Calculus) -> Self {
        match c {
            Calculus::LgInt => CalculusProfile::LgInt,
            Calculus::LgMin => CalculusProfile::LgMin,
            Calculus::LmImp => CalculusProfile::LmImp,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Profile {
    NmFull,
    NmInt,
    NmImp,
}

impl From<Profile> for NdProfile {
    fn from(p: Profile) -> Self {
        match p {
            Profile::NmFull => NdProfile::Full,
            Profile::NmInt => NdProfile::Int,
            Profile::NmImp => NdProfile::Imp,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Compression {
    L1,
    L2,
}

impl From<Compression> for Level {
    fn from(c: Compression) -> Self {
        match c {
            Compression::L1 => Level::L1,
            Compression::L2 => Level::L2,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum LogicArg {
    Minimal,
    Intuitionistic,
}

impl From<LogicArg> for Logic {
    fn from(l: LogicArg) -> Self {
        match l {
            LogicArg::Minimal => Logic::Minimal,
            LogicArg::Intuitionistic => Logic::Intuitionistic,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("").trim_start_matches("error: ");
            eprintln!("proofbench:usage: {first}");
            eprintln!("{}", text.trim_end());
            return ExitCode::from(commands::USAGE);
        }
    };
    match commands::run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("proofbench:{}: {}", failure.kind, failure.message);
            for line in &failure.notes {
                eprintln!("{line}");
            }
            ExitCode::from(failure.code)
        }
    }
}
