//! Command-line front end: `gen`, `zsigmondy` and `sweep`.

pub mod error;
pub mod records;
pub mod sweep;

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use edskit_core::{zsigmondy_bound, FamilyInstance, FamilyKind, RationalPoint, ZsigmondyOptions};

pub use error::{CliError, CliResult};
pub use records::{Format, TermRecord};
pub use sweep::{SweepEntry, SweepRow};

pub const DIGIT_BUDGET_ENV: &str = "EDSKIT_DIGIT_BUDGET";

#[derive(Debug, Parser)]
#[command(
    name = "edskit",
    version,
    about = "Elliptic divisibility sequences and primitive divisors"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate terms with primitive-divisor verdicts.
    Gen(GenArgs),
    /// Certify the Zsigmondy bound of one instance and print the JSON report.
    Zsigmondy(ZsigmondyArgs),
    /// Run the pipeline over a range of parameters.
    Sweep(SweepArgs),
}

fn parse_family(s: &str) -> Result<FamilyKind, String> {
    s.parse().map_err(|e: edskit_core::Error| e.to_string())
}

fn parse_point(s: &str) -> Result<RationalPoint, String> {
    s.parse().map_err(|e: edskit_core::Error| e.to_string())
}

#[derive(Debug, Clone, Args)]
pub struct InstanceArgs {
    /// congruent, twist, product, cube or somos4-curve
    #[arg(long, value_parser = parse_family)]
    pub family: Option<FamilyKind>,
    #[arg(long)]
    pub t: Option<u64>,
    /// Marked point as `x,y`, rationals allowed.
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    pub point: Option<RationalPoint>,
}

impl InstanceArgs {
    pub fn instance(&self) -> CliResult<FamilyInstance> {
        let kind = self
            .family
            .ok_or_else(|| CliError::Usage("--family is required".into()))?;
        if kind.takes_parameter() && self.t.is_none() {
            return Err(CliError::Usage(format!("--t is required for {kind}")));
        }
        Ok(match &self.point {
            Some(p) => FamilyInstance::with_point(kind, self.t, p.clone())?,
            None => FamilyInstance::instantiate(kind, self.t)?,
        })
    }
}

#[derive(Debug, Clone, Args)]
pub struct BudgetArgs {
    /// Largest allowed term, in decimal digits.
    #[arg(long, env = DIGIT_BUDGET_ENV, default_value_t = edskit_core::DEFAULT_DIGIT_BUDGET,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub digit_budget: u64,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Somos-4 with seeds 1,1,1,1 instead of a curve.
    #[arg(long, conflicts_with_all = ["family", "t", "point"])]
    pub somos: bool,
    /// Number of terms.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    #[arg(long, value_enum, default_value_t = Format::Jsonl)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Debug, Clone, Args)]
pub struct PipelineArgs {
    /// Doublings used for the canonical height.
    #[arg(long, default_value_t = edskit_core::heights::DEFAULT_DOUBLINGS)]
    pub k: u32,
    /// Longest sequence the check may generate.
    #[arg(long, default_value_t = 500)]
    pub max_terms: u64,
    /// Terms generated for instances without explicit bounds.
    #[arg(long, default_value_t = 40)]
    pub observe_terms: u64,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

impl PipelineArgs {
    pub fn options(&self) -> ZsigmondyOptions {
        ZsigmondyOptions {
            doublings: self.k,
            digit_budget: self.budget.digit_budget,
            max_terms: self.max_terms,
            observe_terms: self.observe_terms,
        }
    }
}

#[derive(Debug, Args)]
pub struct ZsigmondyArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[command(flatten)]
    pub pipeline: PipelineArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_parser = parse_family, default_value = "congruent")]
    pub family: FamilyKind,
    /// Inclusive range such as `5..50`.
    #[arg(long, value_parser = sweep::parse_t_range)]
    pub t_range: std::ops::RangeInclusive<u64>,
    /// Worker threads.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: u64,
    /// Summary table; stdout when neither output is given.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// One full report per instance.
    #[arg(long)]
    pub jsonl: Option<PathBuf>,
    /// Leave the wall_ms column empty so reruns are byte-identical.
    #[arg(long)]
    pub omit_timing: bool,
    #[command(flatten)]
    pub pipeline: PipelineArgs,
}

fn open<'a>(path: &Option<PathBuf>, stdout: &'a mut dyn Write) -> CliResult<Box<dyn Write + 'a>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(stdout),
    })
}

fn run_gen(args: &GenArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let records = if args.somos {
        let n = usize::try_from(args.n).map_err(|_| CliError::Usage("--n too large".into()))?;
        records::somos_records(n)?
    } else {
        let inst = args.instance.instance()?;
        records::eds_records(&inst, args.n, args.budget.digit_budget)?
    };
    let mut out = open(&args.out, stdout)?;
    records::write_records(&mut out, &records, args.format)?;
    out.flush()?;
    Ok(())
}

fn run_zsigmondy(args: &ZsigmondyArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let inst = args.instance.instance()?;
    let report = zsigmondy_bound(&inst, &args.pipeline.options())?;
    let mut out = open(&args.out, stdout)?;
    serde_json::to_writer_pretty(&mut out, &report)?;
    out.write_all(b"\n")?;
    out.flush()?;
    Ok(())
}

fn run_sweep(args: &SweepArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let entries = sweep::sweep(
        args.family,
        args.t_range.clone(),
        args.jobs as usize,
        &args.pipeline.options(),
    )?;
    if let Some(path) = &args.jsonl {
        let mut out = BufWriter::new(File::create(path)?);
        sweep::write_jsonl(&mut out, &entries)?;
        out.flush()?;
    }
    if args.csv.is_some() || args.jsonl.is_none() {
        let mut out = open(&args.csv, stdout)?;
        sweep::write_csv(&mut out, &entries, !args.omit_timing)?;
        out.flush()?;
    }
    Ok(())
}

pub fn execute(cli: &Cli, stdout: &mut dyn Write) -> CliResult<()> {
    match &cli.command {
        Command::Gen(a) => run_gen(a, stdout),
        Command::Zsigmondy(a) => run_zsigmondy(a, stdout),
        Command::Sweep(a) => run_sweep(a, stdout),
    }
}

/// Parses `argv`, runs the command and returns the process exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(stdout, "{text}")
            } else {
                write!(stderr, "{text}")
            };
            return code;
        }
    };
    match execute(&cli, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "edskit: {e}");
            e.exit_code()
        }
    }
}
