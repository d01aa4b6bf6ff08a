use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use diffusion_scope_core::overlay::GeoFormat;
use diffusion_scope_core::pipeline::{run, PipelineError, RunConfig, YearRange};
use diffusion_scope_core::validate_basemap;

#[derive(Parser)]
#[command(name = "diffusion-scope", version, about = "City coauthorship and diversity indicators from Web of Science exports")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute yearly indicators and write the artifact tree.
    Run(RunArgs),
    /// Check a basemap directory for consistency.
    ValidateBasemap { dir: PathBuf },
}

#[derive(Args)]
struct RunArgs {
    /// Export file or glob pattern; repeatable.
    #[arg(long = "input", required = true, num_args = 1..)]
    inputs: Vec<String>,
    #[arg(long)]
    gazetteer: PathBuf,
    #[arg(long)]
    basemap: PathBuf,
    /// FIRST:LAST, inclusive. Defaults to the span of the corpus.
    #[arg(long)]
    years: Option<String>,
    #[arg(long, default_value_t = 2)]
    min_city_papers: u32,
    #[arg(long, default_value_t = 2)]
    k_min: usize,
    /// Random-graph simulations per year; 0 disables them.
    #[arg(long, default_value_t = 100)]
    er_runs: usize,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_delimiter = ',', default_value = "geojson")]
    geo_format: Vec<String>,
    /// Also write Pajek .net/.vec files.
    #[arg(long)]
    pajek: bool,
    /// Worker thread cap.
    #[arg(long, env = "DIFFUSION_SCOPE_THREADS")]
    threads: Option<usize>,
}

fn expand_inputs(patterns: &[String]) -> Result<Vec<PathBuf>, PipelineError> {
    let mut paths = Vec::new();
    for pattern in patterns {
        let entries = glob::glob(pattern)
            .map_err(|e| PipelineError::Usage(format!("bad input pattern `{pattern}`: {e}")))?;
        let mut matched: Vec<PathBuf> = entries.filter_map(Result::ok).collect();
        if matched.is_empty() {
            // Report the literal path as missing.
            matched.push(PathBuf::from(pattern));
        }
        matched.sort();
        paths.extend(matched);
    }
    paths.dedup();
    Ok(paths)
}

fn config_from(args: RunArgs) -> Result<RunConfig, PipelineError> {
    let inputs = expand_inputs(&args.inputs)?;
    let mut config = RunConfig::new(inputs, args.gazetteer, args.basemap, args.out);
    config.years = args.years.as_deref().map(str::parse::<YearRange>).transpose()?;
    config.min_city_papers = args.min_city_papers;
    config.k_min = args.k_min;
    config.er_runs = args.er_runs;
    config.seed = args.seed;
    config.pajek = args.pajek;
    config.threads = args.threads;
    config.geo_formats = args
        .geo_format
        .iter()
        .map(|f| f.parse::<GeoFormat>().map_err(|e| PipelineError::Usage(e.to_string())))
        .collect::<Result<_, _>>()?;
    config.geo_formats.dedup();
    Ok(config)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run(args) => {
            match config_from(args).and_then(|config| run(&config)) {
                Ok(summary) => {
                    eprintln!(
                        "wrote {} files for {} years ({} records used)",
                        summary.files.len(),
                        summary.rows.len(),
                        summary.report.used
                    );
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(e.exit_code() as u8)
                }
            }
        }
        Command::ValidateBasemap { dir } => {
            if !dir.is_dir() {
                eprintln!("error: basemap directory {} not found", dir.display());
                return ExitCode::from(2);
            }
            let issues = validate_basemap(&dir);
            if issues.is_empty() {
                println!("ok");
                ExitCode::SUCCESS
            } else {
                for issue in &issues {
                    println!("{issue}");
                }
                ExitCode::from(3)
            }
        }
    }
}
