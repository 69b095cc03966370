use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use penrose_cli::commands::{self, CliError, CliResult, Normalization, Perturbation};

#[derive(Parser)]
#[command(name = "penrose", version, about = "Generate, verify and render Penrose tilings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inflate a seed patch of Robinson half-tiles.
    Inflate {
        #[arg(long)]
        seed: String,
        #[arg(long)]
        levels: u32,
        /// Join mirror halves into kites and darts.
        #[arg(long)]
        pair: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the rhombus tiling dual to a pentagrid.
    #[command(group(ArgGroup::new("norm").args(["sum_zero", "raw"])))]
    Pentagrid {
        /// Five offsets, each a decimal or a fraction a/b.
        #[arg(long, allow_hyphen_values = true)]
        gamma: String,
        #[arg(long)]
        radius: f64,
        /// Require the offsets to sum to zero instead of subtracting their mean.
        #[arg(long)]
        sum_zero: bool,
        /// Use the offsets as given.
        #[arg(long)]
        raw: bool,
        /// Shift γ₄ by a seeded random amount in [−ε, ε].
        #[arg(long)]
        perturb: Option<String>,
        #[arg(long, default_value_t = 0, requires = "perturb")]
        rng_seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cut-and-project vertices from a box of Z⁵.
    #[command(group(ArgGroup::new("norm").args(["sum_zero", "raw"])))]
    Project {
        #[arg(long, allow_hyphen_values = true)]
        gamma: String,
        #[arg(long = "box")]
        box_size: i64,
        #[arg(long)]
        radius: f64,
        #[arg(long)]
        sum_zero: bool,
        #[arg(long)]
        raw: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convert between index sequences and towers of tiles.
    #[command(group(ArgGroup::new("mode").args(["encode", "decode"]).required(true)))]
    Sequence {
        /// Print the sequence of a tower given as root:p0,p1,...
        #[arg(long, value_name = "TOWER")]
        encode: Option<String>,
        /// Print the tower of the sequence given by --bits.
        #[arg(long, requires = "bits")]
        decode: bool,
        #[arg(long)]
        bits: Option<String>,
        #[arg(long, default_value = "acute")]
        root: String,
    },
    /// Check a tiling document.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// List the vertex stars found in inflated patches.
    Atlas {
        #[arg(long)]
        levels: u32,
    },
    /// Draw a tiling document as SVG.
    Render {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        decorations: bool,
    },
    /// Smallest nonzero |Σ k_j ζ_n^j| over |k_j| ≤ box.
    Probe {
        #[arg(long)]
        n: u32,
        #[arg(long = "box")]
        box_size: u32,
    },
}

fn normalization(sum_zero: bool, raw: bool) -> Normalization {
    match (sum_zero, raw) {
        (true, _) => Normalization::SumZero,
        (_, true) => Normalization::Raw,
        _ => Normalization::Mean,
    }
}

fn emit(text: &str, out: Option<PathBuf>) -> CliResult<()> {
    match out {
        Some(path) => {
            std::fs::write(&path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn path_str(p: &std::path::Path) -> String {
    p.display().to_string()
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Inflate { seed, levels, pair, out } => emit(&commands::run_inflate(&seed, levels, pair)?, out),
        Command::Pentagrid { gamma, radius, sum_zero, raw, perturb, rng_seed, out } => {
            let gamma = commands::parse_gamma(&gamma)?;
            let perturb = perturb
                .map(|e| commands::parse_ratio(&e).map(|epsilon| Perturbation { epsilon, rng_seed }))
                .transpose()?;
            emit(&commands::run_pentagrid(gamma, radius, normalization(sum_zero, raw), perturb)?, out)
        }
        Command::Project { gamma, box_size, radius, sum_zero, raw, out } => {
            let gamma = commands::parse_gamma(&gamma)?;
            emit(&commands::run_project(gamma, normalization(sum_zero, raw), box_size, radius)?, out)
        }
        Command::Sequence { encode, decode, bits, root } => {
            let text = match (encode, decode) {
                (Some(tower), _) => commands::run_encode(&tower)?,
                _ => commands::run_decode(bits.as_deref().unwrap_or(""), &root)?,
            };
            emit(&text, None)
        }
        Command::Verify { input } => {
            let doc = commands::read_document(&path_str(&input))?;
            emit(&commands::run_verify(&doc)?, None)
        }
        Command::Atlas { levels } => emit(&commands::run_atlas(levels)?, None),
        Command::Render { input, out, decorations } => {
            let doc = commands::read_document(&path_str(&input))?;
            doc.tiles().map_err(|e| CliError::Invalid(format!("{}: {e}", path_str(&input))))?;
            emit(&commands::run_render(&doc, decorations), out)
        }
        Command::Probe { n, box_size } => emit(&commands::run_probe(n, box_size)?, None),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("penrose: {}", e.to_string().trim_end());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
