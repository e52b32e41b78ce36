use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use peterson::certify::{
    default_suite, parse_checks, run_certification, run_suite, OutputFormat, RunConfig,
    REDUCED_WORD_CAP_ENV,
};
use peterson::roots::{parse_type, RootSystemType};

#[derive(Parser)]
#[command(
    name = "petcert",
    version,
    about = "Exact certification of the equivariant cohomology of Peterson varieties"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certify one root system, e.g. `certify --type G2 --checks all`.
    Certify {
        /// Root system such as A3, G2 or A2+A1.
        #[arg(long = "type")]
        lie_type: String,
        #[command(flatten)]
        common: Common,
    },
    /// Certify several root systems concurrently.
    Suite {
        /// Comma-separated root systems; defaults to A1-A4, B2, B3, C3, D4, F4, G2.
        #[arg(long)]
        types: Option<String>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    /// `all`, or a comma-separated subset of monk, giambelli, basis, quadratic,
    /// hilbert, regular_sequence, zero_set, graded_dims, billey_welldef.
    #[arg(long, default_value = "all")]
    checks: String,
    /// Even degree bound for the graded-dimension cross-check.
    #[arg(long, default_value_t = peterson::certify::DEFAULT_CUTOFF_DEGREE)]
    cutoff: usize,
    /// `text` or `json`.
    #[arg(long, default_value = "text")]
    format: String,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Longest element whose reduced words may be enumerated (overrides the
    /// environment variable).
    #[arg(long)]
    reduced_word_cap: Option<usize>,
    /// Length bound on `w` in the Billey well-definedness check.
    #[arg(long)]
    billey_max_length: Option<usize>,
}

impl Common {
    fn config(&self, lie_type: RootSystemType) -> Result<RunConfig, String> {
        let mut config = RunConfig::new(lie_type);
        config.checks = parse_checks(&self.checks).map_err(|e| e.to_string())?;
        config.cutoff_degree = self.cutoff;
        config.output_format = self
            .format
            .parse()
            .map_err(|e: peterson::Error| e.to_string())?;
        if let Some(cap) = self.reduced_word_cap {
            config.reduced_word_cap = cap;
        } else if let Ok(raw) = std::env::var(REDUCED_WORD_CAP_ENV) {
            config.reduced_word_cap = raw.trim().parse().map_err(|_| {
                format!("{REDUCED_WORD_CAP_ENV}={raw:?} is not a non-negative integer")
            })?;
        }
        config.billey_max_length = self.billey_max_length;
        config.validate().map_err(|e| e.to_string())?;
        Ok(config)
    }

    fn emit(
        &self,
        format: OutputFormat,
        text: String,
        json: serde_json::Value,
    ) -> Result<(), String> {
        let body = match format {
            OutputFormat::Text => text,
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(&json).map_err(|e| e.to_string())?;
                s.push('\n');
                s
            }
        };
        match &self.out {
            Some(path) => {
                std::fs::write(path, body).map_err(|e| format!("{}: {e}", path.display()))
            }
            None => {
                print!("{body}");
                Ok(())
            }
        }
    }
}

fn run(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::Certify { lie_type, common } => {
            let t = parse_type(&lie_type).map_err(|e| e.to_string())?;
            let config = common.config(t)?;
            let report = run_certification(&config);
            common.emit(config.output_format, report.render_text(), report.to_json())?;
            Ok(report.overall_pass)
        }
        Command::Suite { types, common } => {
            let types = match types {
                Some(list) => list
                    .split(',')
                    .map(parse_type)
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| e.to_string())?,
                None => default_suite(),
            };
            let first = types.first().cloned().ok_or("no types given")?;
            let template = common.config(first)?;
            let report = run_suite(&types, &template);
            common.emit(
                template.output_format,
                report.render_text(),
                report.to_json(),
            )?;
            Ok(report.overall_pass)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
