mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use permpoly::harness::{Oracle, Profile, Retention, Suite};
use permpoly::Mode;

#[derive(Debug, Parser)]
#[command(
    name = "permpoly",
    version,
    about = "Permutation binomials and trinomials over binary fields"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the output here instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Worker threads (default: machine parallelism).
    #[arg(long, global = true, env = "PERMPOLY_WORKERS", value_name = "K")]
    pub workers: Option<usize>,
    /// Grid sizes for `verify`.
    #[arg(long, global = true, value_enum, default_value_t = ProfileArg::Ci)]
    pub profile: ProfileArg,
    /// Which cases a report keeps.
    #[arg(long, global = true, value_enum, default_value_t = CasesArg::Notable)]
    pub cases: CasesArg,
    /// Report `elapsed_ms` as 0 so repeated runs are byte-identical.
    #[arg(long, global = true)]
    pub no_timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ProfileArg {
    Ci,
    Extended,
}

impl From<ProfileArg> for Profile {
    fn from(p: ProfileArg) -> Profile {
        match p {
            ProfileArg::Ci => Profile::Ci,
            ProfileArg::Extended => Profile::Extended,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CasesArg {
    All,
    Notable,
}

impl From<CasesArg> for Retention {
    fn from(c: CasesArg) -> Retention {
        match c {
            CasesArg::All => Retention::All,
            CasesArg::Notable => Retention::Notable,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Literal,
    Canonical,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Literal => Mode::Literal,
            ModeArg::Canonical => Mode::Canonical,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum OracleArg {
    Brute,
    Wanlidl,
    Reduction,
    Auto,
}

impl From<OracleArg> for Oracle {
    fn from(o: OracleArg) -> Oracle {
        match o {
            OracleArg::Brute => Oracle::Brute,
            OracleArg::Wanlidl => Oracle::WanLidl,
            OracleArg::Reduction => Oracle::Reduction,
            OracleArg::Auto => Oracle::Auto,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Brute,
    Hermite,
    Wanlidl,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SuiteArg {
    Coeffs,
    Lucas,
    Fieldaxioms,
    Permtesters,
    Reduction,
    /// The trinomial grid `s <= t <= max_t`, canonical classifier against brute force.
    Trith,
}

impl TryFrom<SuiteArg> for Suite {
    type Error = anyhow::Error;

    fn try_from(s: SuiteArg) -> anyhow::Result<Suite> {
        Ok(match s {
            SuiteArg::Coeffs => Suite::Coeffs,
            SuiteArg::Lucas => Suite::Lucas,
            SuiteArg::Fieldaxioms => Suite::FieldAxioms,
            SuiteArg::Permtesters => Suite::PermTesters,
            SuiteArg::Reduction => Suite::Reduction,
            SuiteArg::Trith => anyhow::bail!("trith is not a library suite"),
        })
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Field construction details.
    Field {
        #[command(subcommand)]
        command: FieldCommand,
    },
    /// Test whether a polynomial permutes F_{2^n}.
    Check(CheckArgs),
    /// Trinomials x^(2^s+1) + x^(2^(s-1)+1) + alpha x over F_{2^t}.
    Trinomial {
        #[command(subcommand)]
        command: TrinomialCommand,
    },
    /// Binomials x^((2^n-1)/(2^t-1)+1) + a x over F_{2^n}, n = 2^s t.
    Binomial {
        #[command(subcommand)]
        command: BinomialCommand,
    },
    /// Run an invariant suite.
    Verify(VerifyArgs),
    /// List where the literal and canonical classifiers differ.
    Audit(AuditArgs),
}

#[derive(Debug, Subcommand)]
pub enum FieldCommand {
    /// Print n, modulus, gamma and the factorization of 2^n - 1.
    Info {
        #[arg(long)]
        n: u32,
        /// Irreducible modulus in hex, including the leading bit.
        #[arg(long)]
        modulus: Option<String>,
    },
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub modulus: Option<String>,
    /// `EXP:COEFHEX` terms, e.g. `5:1,3:1,1:1`.
    #[arg(long, required_unless_present = "inner_poly")]
    pub poly: Option<String>,
    #[arg(long, value_enum, default_value_t = MethodArg::Brute)]
    pub method: MethodArg,
    /// Wan-Lidl: `d` with `d | 2^n - 1`.
    #[arg(long)]
    pub d: Option<u64>,
    /// Wan-Lidl: exponent `r`.
    #[arg(long)]
    pub r: Option<u64>,
    /// Wan-Lidl: `f` in `x^r f(x^((q-1)/d))`.
    #[arg(long)]
    pub inner_poly: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum TrinomialCommand {
    Check {
        #[arg(long)]
        s: u32,
        #[arg(long)]
        t: u32,
        #[arg(long)]
        alpha: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Canonical)]
        mode: ModeArg,
        /// Attach the brute-force verdict.
        #[arg(long)]
        oracle: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum BinomialCommand {
    Check {
        #[arg(long)]
        s: u32,
        #[arg(long)]
        t: u32,
        /// Element of F_{2^{2t}} in hex.
        #[arg(long)]
        a: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Canonical)]
        mode: ModeArg,
        /// Attach the brute-force verdict (n <= 28).
        #[arg(long)]
        oracle: bool,
    },
    /// Run an oracle on every nonzero `a` in F_{2^{2t}}.
    Enumerate {
        #[arg(long)]
        s: u32,
        #[arg(long)]
        t: u32,
        #[arg(long, value_enum, default_value_t = OracleArg::Auto)]
        oracle: OracleArg,
    },
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: SuiteArg,
    #[arg(long)]
    pub max_t: Option<u32>,
    #[arg(long)]
    pub max_n: Option<u32>,
    #[arg(long)]
    pub max_k: Option<u64>,
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    #[arg(long, default_value_t = 6)]
    pub s_max: u32,
    #[arg(long, default_value_t = 5)]
    pub t_max: u32,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let workers = cli.common.workers;
    match permpoly::par::with_workers(workers, || commands::run(&cli)) {
        Ok(status) => status.into(),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
