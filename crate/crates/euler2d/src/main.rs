use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use euler2d::config::{Experiment, RunConfig};
use euler2d::error::Error;
use euler2d::experiments::{reference_config, run};
use euler2d::flux::FluxKind;
use euler2d::output::write_scaling_csv;
use euler2d::scaling::diffusion_scaling_probe;
use euler2d::state::GasModel;

#[derive(Parser)]
#[command(
    name = "euler2d",
    version,
    about = "Entropy-stable low-Mach finite-volume solver for the 2-d compressible Euler equations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment and write field.csv / diagnostics.csv.
    Run(RunArgs),
    /// Standing-sound-wave reference profile (LLF on a fine grid).
    Reference {
        /// Grid cells of the reference run.
        #[arg(long, default_value_t = 100_000)]
        cells: usize,
        #[arg(long, default_value = "out/reference")]
        output_dir: PathBuf,
    },
    /// Gresho matrix: every paper flux at mach_ref in {1, 0.1, 0.01}.
    Sweep {
        #[arg(long, default_value = "out/sweep")]
        output_dir: PathBuf,
        #[arg(long, default_value_t = 32)]
        nx: usize,
        #[arg(long, default_value_t = 32)]
        ny: usize,
        #[arg(long, default_value_t = 0.4)]
        cfl: f64,
    },
    /// Mach-scaling report of the diffusion matrix (CSV to stdout or a file).
    ProbeScaling {
        /// Flux kinds to probe.
        #[arg(long, value_delimiter = ',', default_values_t = [String::from("es"), String::from("es-lm")])]
        flux: Vec<String>,
        /// Reference Mach levels, strictly decreasing.
        #[arg(long, value_delimiter = ',', default_values_t = [1e-1, 1e-2, 1e-3, 1e-4])]
        levels: Vec<f64>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Flat key=value config file; flags below override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// sound-wave | contact | pure-contact | gresho
    #[arg(long)]
    experiment: Option<String>,
    /// roe | roe-lm | es | es-kes | es-lm | es-kes-lm | llf
    #[arg(long)]
    flux: Option<String>,
    #[arg(long)]
    m_cut: Option<f64>,
    #[arg(long)]
    nx: Option<usize>,
    #[arg(long)]
    ny: Option<usize>,
    /// constant | limited-linear
    #[arg(long)]
    reconstruction: Option<String>,
    #[arg(long)]
    cfl: Option<f64>,
    #[arg(long)]
    t_end: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    gas_constant: Option<f64>,
    #[arg(long)]
    output_dir: Option<PathBuf>,
    #[arg(long)]
    output_stride: Option<usize>,
    /// Maximal initial Mach number of the Gresho vortex.
    #[arg(long)]
    mach_ref: Option<f64>,
}

impl RunArgs {
    fn resolve(&self) -> Result<RunConfig, Error> {
        let mut config = match (&self.config, &self.experiment) {
            (Some(path), _) => RunConfig::from_file(path)?,
            (None, Some(name)) => RunConfig::defaults(Experiment::parse(name)?),
            (None, None) => {
                return Err(Error::InvalidConfig(
                    "either --config or --experiment is required".into(),
                ))
            }
        };
        if let Some(name) = &self.experiment {
            config.apply_override("experiment", name)?;
        }
        // m_cut first so a flux override picks it up.
        if let Some(v) = self.m_cut {
            config.apply_override("m_cut", &v.to_string())?;
        }
        if let Some(name) = &self.flux {
            config.apply_override("flux", name)?;
        }
        if let Some(v) = self.nx {
            config.apply_override("nx", &v.to_string())?;
        }
        if let Some(v) = self.ny {
            config.apply_override("ny", &v.to_string())?;
        }
        if let Some(name) = &self.reconstruction {
            config.apply_override("reconstruction", name)?;
        }
        if let Some(v) = self.cfl {
            config.apply_override("cfl", &v.to_string())?;
        }
        if let Some(v) = self.t_end {
            config.apply_override("t_end", &v.to_string())?;
        }
        if let Some(v) = self.gamma {
            config.apply_override("gamma", &v.to_string())?;
        }
        if let Some(v) = self.gas_constant {
            config.apply_override("gas_constant", &v.to_string())?;
        }
        if let Some(dir) = &self.output_dir {
            config.output_dir = dir.clone();
        }
        if let Some(v) = self.output_stride {
            config.apply_override("output_stride", &v.to_string())?;
        }
        if let Some(v) = self.mach_ref {
            config.apply_override("mach_ref", &v.to_string())?;
        }
        config.validate()?;
        Ok(config)
    }
}

fn execute_run(config: &RunConfig) -> Result<(), Error> {
    let result = run(config)?;
    let last = result.records.last().expect("records are never empty");
    println!(
        "{} [{}] {}x{} -> t = {}  ({} steps recorded, {:.2}s)",
        config.experiment.name(),
        config.flux.name(),
        config.nx,
        config.ny,
        result.final_field.time,
        result.records.len(),
        result.wall_time,
    );
    println!(
        "  total_entropy = {:.6e}  kinetic_energy = {:.6e}  max_mach = {:.4}",
        last.total_entropy, last.total_kinetic_energy, last.max_mach
    );
    println!("  wrote {}", config.output_dir.join("field.csv").display());
    Ok(())
}

fn execute(command: &Command) -> Result<(), Error> {
    match command {
        Command::Run(args) => execute_run(&args.resolve()?),
        Command::Reference { cells, output_dir } => {
            let mut config = reference_config(*cells);
            config.output_dir = output_dir.clone();
            config.validate()?;
            execute_run(&config)
        }
        Command::Sweep {
            output_dir,
            nx,
            ny,
            cfl,
        } => {
            let fluxes = ["roe", "roe-lm", "es", "es-kes", "es-lm", "es-kes-lm"];
            for mach_ref in [1.0, 0.1, 0.01] {
                for flux in fluxes {
                    let mut config = RunConfig::defaults(Experiment::Gresho);
                    config.flux = FluxKind::parse(flux, 0.0)?;
                    config.nx = *nx;
                    config.ny = *ny;
                    config.cfl = *cfl;
                    config.mach_ref = mach_ref;
                    config.output_dir = output_dir.join(format!("{flux}_mach{mach_ref}"));
                    config.validate()?;
                    execute_run(&config)?;
                }
            }
            Ok(())
        }
        Command::ProbeScaling {
            flux,
            levels,
            output,
        } => {
            let gas = GasModel::air();
            let mut buffer = Vec::new();
            for (index, name) in flux.iter().enumerate() {
                let kind = FluxKind::parse(name, 0.0)?;
                if !(kind.is_entropy_stable()) {
                    return Err(Error::InvalidConfig(format!(
                        "probe-scaling needs an entropy-stable flux, got '{name}'"
                    )));
                }
                let report = diffusion_scaling_probe(kind, levels, &gas)?;
                if index == 0 {
                    write_scaling_csv(&mut buffer, &report)?;
                } else {
                    // Append without repeating the header.
                    let mut block = Vec::new();
                    write_scaling_csv(&mut block, &report)?;
                    let body = block.splitn(2, |&b| b == b'\n').nth(1).unwrap_or(&[]).to_vec();
                    buffer.extend_from_slice(&body);
                }
            }
            match output {
                Some(path) => std::fs::write(path, &buffer)?,
                None => print!("{}", String::from_utf8_lossy(&buffer)),
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::InvalidConfig(_) | Error::InvalidGrid(_) | Error::DegenerateFit(_) => {
                    ExitCode::from(2)
                }
                _ => ExitCode::from(3),
            }
        }
    }
}
