use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use orbicurve_cli::{
    cmd_audit_lemmas, cmd_branch_pullback, cmd_bundle_report, cmd_cover_report,
    cmd_divisor_report, cmd_equiv_report, cmd_selftest, Global,
};

#[derive(Parser)]
#[command(name = "orbicurve", version, about = "Exact calculator for tame orbifold curves")]
struct Cli {
    /// Seed for the property suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Multiplier on the number of cases per suite.
    #[arg(long, global = true, default_value_t = 1)]
    scale: usize,
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Characteristic of the base field: 0 or a prime.
    #[arg(long = "char", global = true, default_value_t = 0)]
    characteristic: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report on a monodromy datum.
    Cover { datum: PathBuf },
    /// Pull branch data back along a cover; also prints the cover's B_f.
    Branch { cover: PathBuf, branch: PathBuf },
    /// Degree, class and floor view of a divisor.
    Divisor {
        divisor: PathBuf,
        /// Finer branch data to pull back to.
        #[arg(long)]
        refine: Option<PathBuf>,
        /// Cover to pull back along.
        #[arg(long)]
        cover: Option<PathBuf>,
    },
    /// Slopes, HN strata and stability of a decomposable bundle.
    Bundle {
        bundle: PathBuf,
        #[arg(long)]
        cover: Option<PathBuf>,
        /// Branch data on the cover's source; defaults to the pullback.
        #[arg(long, requires = "cover")]
        target_branch: Option<PathBuf>,
    },
    /// Equivariant line bundle on the Kummer cover, or the pullback of a class.
    Equiv {
        bundle: PathBuf,
        /// Second bundle to compute Hom dimensions against.
        #[arg(long)]
        hom: Option<PathBuf>,
    },
    /// Probe the pullback-stability lemmas on a builtin id or a case file.
    Audit { case: String },
    /// Run the property suites.
    Selftest {
        /// Force the named suite to fail.
        #[arg(long)]
        inject_fault: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let global = Global {
        seed: cli.seed,
        scale: cli.scale,
        json: cli.json,
        characteristic: cli.characteristic,
    };
    let result = match &cli.command {
        Command::Cover { datum } => cmd_cover_report(&global, datum),
        Command::Branch { cover, branch } => cmd_branch_pullback(&global, cover, branch),
        Command::Divisor { divisor, refine, cover } => {
            cmd_divisor_report(&global, divisor, refine.as_deref(), cover.as_deref())
        }
        Command::Bundle { bundle, cover, target_branch } => {
            cmd_bundle_report(&global, bundle, cover.as_deref(), target_branch.as_deref())
        }
        Command::Equiv { bundle, hom } => cmd_equiv_report(&global, bundle, hom.as_deref()),
        Command::Audit { case } => cmd_audit_lemmas(&global, case),
        Command::Selftest { inject_fault } => cmd_selftest(&global, inject_fault.as_deref()),
    };
    match result {
        Ok(outcome) => {
            print!("{}", outcome.output);
            ExitCode::from(outcome.code as u8)
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
