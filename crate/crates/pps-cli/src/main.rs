//! pps: periodic power spectra of DNA sequences and real-valued signals.
//!
//! Exit codes: 0 success, 2 I/O or empty input, 3 validation.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use output::Format;

#[derive(Debug)]
pub enum CliError {
    Io(String),
    Invalid(String),
}

impl CliError {
    fn message(&self) -> &str {
        match self {
            CliError::Io(m) | CliError::Invalid(m) => m,
        }
    }

    fn code(&self) -> u8 {
        match self {
            CliError::Io(_) => 2,
            CliError::Invalid(_) => 3,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "pps",
    version,
    about = "Periodic power spectra of DNA sequences and signals",
    long_about = "Computes tandem-repeat periodicity spectra directly in periodicity \
                  space, with a direct DFT as the frequency-domain cross-check."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Scan a periodicity range and report power and snr per p
    Scan(ScanArgs),
    /// Cross-check one periodicity against the reference DFT
    Compare(CompareArgs),
    /// Sliding-window snr profile at fixed periodicities
    Window(WindowArgs),
    /// Cumulative prefix power at fixed periodicities
    Walk(WalkArgs),
    /// Generate synthetic inputs
    #[command(subcommand)]
    Synth(SynthCommand),
}

#[derive(Args)]
struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write to PATH instead of standard output
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ScanArgs {
    /// FASTA file, or - for standard input
    input: String,
    /// Smallest periodicity to scan
    #[arg(long, default_value_t = 2)]
    pmin: usize,
    /// Largest periodicity to scan [default: ceil(sqrt(2N)), capped at N]
    #[arg(long)]
    pmax: Option<usize>,
    /// Emit only peaks: local snr maxima at or above the threshold
    #[arg(long)]
    peaks: bool,
    /// Peak detection threshold
    #[arg(long, default_value_t = 1.0)]
    threshold: f64,
    /// Reject residues outside A, C, G, T
    #[arg(long)]
    strict: bool,
    #[command(flatten)]
    io: OutputArgs,
}

#[derive(Args)]
struct CompareArgs {
    /// FASTA file, or - for standard input
    input: String,
    /// Periodicity to cross-check
    #[arg(long)]
    p: usize,
    /// Reject residues outside A, C, G, T
    #[arg(long)]
    strict: bool,
    #[command(flatten)]
    io: OutputArgs,
}

#[derive(Args)]
struct WindowArgs {
    /// FASTA file, or - for standard input
    input: String,
    /// Periodicity to profile (repeatable, or comma-separated)
    #[arg(long, required = true, value_delimiter = ',')]
    p: Vec<usize>,
    /// Window width in residues
    #[arg(long)]
    window: usize,
    /// Window stride in residues
    #[arg(long, default_value_t = 1)]
    step: usize,
    /// Reject residues outside A, C, G, T
    #[arg(long)]
    strict: bool,
    #[command(flatten)]
    io: OutputArgs,
}

#[derive(Args)]
struct WalkArgs {
    /// FASTA file, or - for standard input
    input: String,
    /// Periodicity to walk (repeatable, or comma-separated)
    #[arg(long, required = true, value_delimiter = ',')]
    p: Vec<usize>,
    /// Prefix stride in motif copies
    #[arg(long, default_value_t = 1)]
    step: usize,
    /// Reject residues outside A, C, G, T
    #[arg(long)]
    strict: bool,
    #[command(flatten)]
    io: OutputArgs,
}

#[derive(Subcommand)]
enum SynthCommand {
    /// Two-tone benchmark signal with optional Gaussian noise
    Fig1(Fig1Args),
    /// Tandem-repeat FASTA fixture with optional edits
    Repeat(RepeatArgs),
}

#[derive(Args)]
struct Fig1Args {
    /// Number of samples
    #[arg(long)]
    n: usize,
    /// Noise standard deviation
    #[arg(long, default_value_t = 0.0)]
    sigma: f64,
    /// Noise seed (unused when sigma is 0)
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    io: OutputArgs,
}

#[derive(Args)]
struct RepeatArgs {
    /// Repeat unit, e.g. ATCGA
    #[arg(long)]
    motif: String,
    /// Number of copies
    #[arg(long)]
    copies: usize,
    /// Drop this many residues from the end
    #[arg(long, default_value_t = 0)]
    trim: usize,
    /// Shuffle residues from this 0-based position (after trimming) to the end
    #[arg(long, value_name = "POS")]
    shuffle_from: Option<usize>,
    /// Substitute one residue, POS=BASE (repeatable; applies after trimming)
    #[arg(long = "sub", value_name = "POS=BASE")]
    sub: Vec<String>,
    /// Shuffle seed (unused without --shuffle-from)
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write to PATH instead of standard output
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Scan(args) => commands::cmd_scan(args),
        Command::Compare(args) => commands::cmd_compare(args),
        Command::Window(args) => commands::cmd_window(args),
        Command::Walk(args) => commands::cmd_walk(args),
        Command::Synth(SynthCommand::Fig1(args)) => commands::cmd_synth_fig1(args),
        Command::Synth(SynthCommand::Repeat(args)) => commands::cmd_synth_repeat(args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version surface here too; only real usage
            // errors are failures
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
