//! `crn`: command-line front end for the reaction network analysis library.

mod render;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use crn_toric::generic::{GenericSettings, DEFAULT_TRIALS};
use crn_toric::{parse_network, Error, Network};

use report::{GeneratorChoice, Method};

#[derive(Parser)]
#[command(name = "crn", version, about = "Binomial steady states and mixed volumes of reaction networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full report: matrices, deficiency, binomiality, partitionability, mixed volume.
    Analyze {
        file: PathBuf,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Mixed volume of the steady-state system by one or all methods.
    Mixedvol {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Det)]
        method: Method,
        /// `odes`, `odes:SPECIES,...` or `pdsc`.
        #[arg(long, default_value = "odes", value_parser = parse_generators)]
        generators: GeneratorChoice,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Emit the species-overlapping cycle SOC_m with its closed-form mixed volume.
    Soc {
        m: usize,
        /// Recompute the value by determinant, and by both oracles when m ≤ 6.
        #[arg(long)]
        check: bool,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Edge coloring of a directed cycle induced by a disjoint-support kernel basis.
    CycleColoring {
        file: PathBuf,
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Args)]
struct CommonArgs {
    /// Seed for rate constants and liftings: an integer or `random`.
    #[arg(long, default_value = "0", value_parser = parse_seed)]
    seed: Seed,
    /// Independent rate samples that must agree.
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, Debug)]
enum Seed {
    Fixed(u64),
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn parse_seed(s: &str) -> Result<Seed, String> {
    if s == "random" {
        return Ok(Seed::Random);
    }
    s.parse().map(Seed::Fixed).map_err(|_| format!("expected an integer or `random`, got `{s}`"))
}

fn parse_generators(s: &str) -> Result<GeneratorChoice, String> {
    match s {
        "odes" => Ok(GeneratorChoice::Odes(None)),
        "pdsc" => Ok(GeneratorChoice::Pdsc),
        _ => match s.strip_prefix("odes:") {
            Some(list) if !list.is_empty() => Ok(GeneratorChoice::Odes(Some(
                list.split(',').map(|x| x.trim().to_string()).collect(),
            ))),
            _ => Err(format!("expected `odes`, `odes:SPECIES,...` or `pdsc`, got `{s}`")),
        },
    }
}

impl CommonArgs {
    fn settings(&self) -> Result<GenericSettings, Error> {
        if self.trials == 0 {
            return Err(Error::Contract("--trials must be at least 1".into()));
        }
        let seed = match self.seed {
            Seed::Fixed(n) => n,
            Seed::Random => {
                use std::hash::{BuildHasher, RandomState};
                RandomState::new().hash_one(std::time::SystemTime::now())
            }
        };
        Ok(GenericSettings::new(seed, self.trials))
    }
}

fn load(path: &PathBuf) -> Result<Network, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))?;
    parse_network(&text).map_err(Failure::Lib)
}

enum Failure {
    Io(String),
    Lib(Error),
    /// `soc --check` found a disagreement.
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn emit<T: serde::Serialize>(format: Format, value: &T, text: impl FnOnce(&T) -> String) {
    use std::io::Write;
    let body = match format {
        Format::Json => serde_json::to_string_pretty(value).expect("report serializes") + "\n",
        Format::Text => text(value),
    };
    // a closed pipe (`crn ... | head`) is not an error
    let _ = std::io::stdout().lock().write_all(body.as_bytes());
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Analyze { file, common } => {
            let network = load(&file)?;
            let r = report::analyze(&file.display().to_string(), &network, &common.settings()?)?;
            emit(common.format, &r, render::analysis);
        }
        Command::Mixedvol { file, method, generators, common } => {
            let network = load(&file)?;
            let r = report::mixedvol(&file.display().to_string(), &network, method, &generators, &common.settings()?)?;
            emit(common.format, &r, render::mixedvol);
        }
        Command::Soc { m, check, common } => {
            let r = report::soc(m, check, &common.settings()?)?;
            emit(common.format, &r, render::soc);
            if r.agreement == Some(false) {
                return Err(Failure::Check(format!("SOC_{m}: computed values disagree with the closed form")));
            }
        }
        Command::CycleColoring { file, common } => {
            let network = load(&file)?;
            let r = report::cycle_coloring(&file.display().to_string(), &network, &common.settings()?)?;
            emit(common.format, &r, render::coloring);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            let (code, message) = match failure {
                Failure::Io(m) => (2, m),
                Failure::Check(m) => (1, m),
                Failure::Lib(e) => {
                    let code = match e {
                        Error::Parse { .. } => 2,
                        Error::Contract(_) | Error::Dimension(_) => 3,
                        Error::Capability(_) => 4,
                        Error::NonGeneric(_) | Error::RetryBudgetExhausted(_) | Error::Overflow => 1,
                    };
                    (code, e.to_string())
                }
            };
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
