use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use superhom_cli::commands;
use superhom_cli::config::RawConfig;
use superhom_cli::CliError;

#[derive(Parser)]
#[command(
    name = "superhom",
    version,
    about = "Embedded and persistent homology of subgraph families"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Betti numbers (absolute, relative, ambient) and gap series.
    Homology(JobArgs),
    /// Barcodes, correlation matrices and the long-exact-sequence report.
    Persist(JobArgs),
    /// Draw a barcode file as an SVG diagram.
    Render {
        /// `barcodes.csv` or `barcodes.json` from `persist`.
        input: PathBuf,
        #[arg(short, long, default_value = "diagram.svg")]
        output: PathBuf,
        /// Module family to draw (`ambient`, `embedded`, `relative` or `all`).
        #[arg(short, long, default_value = "embedded")]
        module: String,
    },
    /// Check face identities, regularity and completeness.
    Validate(JobArgs),
    /// Print the critical values of the scoring scheme.
    Score(JobArgs),
}

/// Every flag overrides the config key of the same name.
#[derive(Args)]
struct JobArgs {
    #[arg(short, long)]
    config: Option<PathBuf>,
    #[arg(long)]
    graph: Option<String>,
    #[arg(long)]
    points: Option<String>,
    #[arg(long)]
    witnesses: Option<String>,
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    clustering: Option<String>,
    #[arg(long)]
    marked: Option<String>,
    #[arg(long)]
    delta: Option<String>,
    #[arg(long)]
    hypergraph: Option<String>,
    #[arg(long)]
    construction: Option<String>,
    #[arg(long)]
    scheme: Option<String>,
    #[arg(long)]
    field: Option<String>,
    #[arg(long)]
    max_dim: Option<String>,
    #[arg(short, long)]
    out_dir: Option<String>,
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    constant: Option<String>,
    /// Accept non-monotone scoring schemes.
    #[arg(long)]
    experimental: bool,
    /// Run on one thread.
    #[arg(long)]
    sequential: bool,
}

impl JobArgs {
    fn resolve(&self) -> Result<superhom_cli::config::JobConfig, CliError> {
        let mut raw = match &self.config {
            Some(p) => RawConfig::load(p)?,
            None => RawConfig::default(),
        };
        let flags = [
            ("graph", &self.graph),
            ("points", &self.points),
            ("witnesses", &self.witnesses),
            ("family", &self.family),
            ("clustering", &self.clustering),
            ("marked", &self.marked),
            ("delta", &self.delta),
            ("hypergraph", &self.hypergraph),
            ("construction", &self.construction),
            ("scheme", &self.scheme),
            ("field", &self.field),
            ("max_dim", &self.max_dim),
            ("out_dir", &self.out_dir),
            ("format", &self.format),
            ("seed", &self.seed),
            ("constant", &self.constant),
        ];
        for (key, value) in flags {
            if let Some(v) = value {
                raw.set(key, v.clone())?;
            }
        }
        if self.experimental {
            raw.set("experimental", "true")?;
        }
        if self.sequential {
            raw.set("parallel", "false")?;
        }
        raw.resolve()
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let text = match cli.command {
        Command::Homology(a) => {
            let (text, _) = commands::homology(&a.resolve()?).context("homology")?;
            text
        }
        Command::Persist(a) => {
            let (text, _) = commands::persist(&a.resolve()?).context("persist")?;
            text
        }
        Command::Render {
            input,
            output,
            module,
        } => commands::render(&input, &output, &module).context("render")?,
        Command::Validate(a) => commands::validate(&a.resolve()?).context("validate")?,
        Command::Score(a) => commands::score(&a.resolve()?).context("score")?,
    };
    print!("{text}");
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = e.downcast_ref::<CliError>().map_or(3, CliError::exit_code);
            ExitCode::from(code as u8)
        }
    }
}
