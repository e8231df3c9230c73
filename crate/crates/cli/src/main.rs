use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use kg_floquet_cli::parallel::Pool;
use kg_floquet_cli::{commands, output, selftest, CliError, Format, RunConfig};

const CONFIG_HELP: &str = "\
TOML run configuration. Every key except wave.c and wave.energy is optional:

  [potential]  name = \"sine-gordon\" | \"polynomial\"     (default sine-gordon)
               coefficients = [a0, a1, ...]             V(u) = sum a_k u^k
  [wave]       c, energy                                required, c^2 != 1
               nodes = 1024                             profile nodes per period
  [scan]       nu_min = -(40/T)^2                       lower end of the nu window
               step = (pi/T)/16                         grid step in sqrt(-nu)
               saturation_run = 8
  [curve]      samples = 2000                           beta samples for `curve`
  [spectrum]   re_min = -1, re_max = 1, im_min = 0
               im_max = |c^2-1| sqrt(-nu_min)
               nx = 512, ny = 512                       grid size, at least 64
  [output]     dir                                      output directory
               format = \"json\" | \"csv\"                 (default json)

Reports echo the configuration with all defaults filled in.";

#[derive(Parser)]
#[command(name = "kg-floquet", version, about = "Floquet spectra and Hamiltonian-Hopf points of Klein-Gordon traveling waves")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Cap on worker threads for grid sweeps (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(clap::Args)]
struct RunArgs {
    #[arg(long, long_help = CONFIG_HELP)]
    config: PathBuf,

    /// Output directory; overrides output.dir. Without one, results go to
    /// stdout.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Overrides output.format.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Subcommand)]
enum Command {
    /// Wave, band structure, indices and HH points, as a JSON report.
    Analyze(RunArgs),
    /// F(nu(i beta)) on a uniform beta grid (columns beta,nu,F,kind).
    Curve(RunArgs),
    /// Spectrum in a window of the lambda plane: axis_bands.csv and curves.json.
    Spectrum(RunArgs),
    /// Analytic oracle checks; exit status 0 iff all pass.
    Selftest {
        #[arg(long, hide = true)]
        perturb: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn load(args: &RunArgs) -> Result<RunConfig, CliError> {
    let mut cfg = RunConfig::load(&args.config)?;
    if let Some(out) = &args.out {
        cfg.output.dir = Some(out.clone());
    }
    if let Some(f) = args.format {
        cfg.output.format = f;
    }
    Ok(cfg)
}

fn emit(dir: Option<&Path>, name: &str, contents: &str) -> Result<(), CliError> {
    match dir {
        Some(d) => output::write(d, name, contents),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(contents.as_bytes()).map_err(|source| CliError::Io {
                path: PathBuf::from("<stdout>"),
                source,
            })
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Analyze(args) => {
            let cfg = load(&args)?;
            let pool = Pool::new(cli.threads)?;
            let report = commands::analyze(&cfg, &pool)?;
            let dir = cfg.output.dir.as_deref();
            emit(dir, "report.json", &output::to_json(&report))?;
            if cfg.output.format == Format::Csv {
                if let Some(d) = dir {
                    output::write(d, "bands.csv", &output::bands_csv(&report))?;
                    output::write(d, "hh_points.csv", &output::hh_csv(&report))?;
                }
            }
            let failures = report.consistency_failures();
            if !failures.is_empty() {
                return Err(CliError::Consistency(failures.join("; ")));
            }
        }
        Command::Curve(args) => {
            let cfg = load(&args)?;
            let pool = Pool::new(cli.threads)?;
            let rows = commands::curve(&cfg, &pool)?;
            let dir = cfg.output.dir.as_deref();
            match cfg.output.format {
                Format::Csv => emit(dir, "curve.csv", &output::curve_csv(&rows))?,
                Format::Json => emit(dir, "curve.json", &output::curve_json(&rows))?,
            }
        }
        Command::Spectrum(args) => {
            let cfg = load(&args)?;
            let dir = cfg
                .output
                .dir
                .clone()
                .ok_or_else(|| CliError::Config("spectrum writes two files; set --out or output.dir".into()))?;
            let pool = Pool::new(cli.threads)?;
            let curves = commands::spectrum(&cfg, &pool)?;
            output::write(&dir, "axis_bands.csv", &output::axis_bands_csv(&curves))?;
            output::write(&dir, "curves.json", &output::curves_json(&curves))?;
            if curves.skipped_cells > 0 {
                eprintln!("warning: {} cells skipped (non-finite indicator)", curves.skipped_cells);
            }
        }
        Command::Selftest { perturb } => {
            let rows = selftest::run(perturb.as_deref());
            print!("{}", selftest::table(&rows));
            if !rows.iter().all(|r| r.passed()) {
                return Ok(ExitCode::from(2));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
