//! Command-line front end: validation, summaries, tunnel digging, curl
//! insertion and torsion of combinatorial Euler structures.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "spinetor", version, about = "Torsion of Euler structures on branched spines")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a triangulation or knot diagram and its cell complex.
    Validate(InputArgs),
    /// Summarize a triangulation or knot exterior.
    Info(InputArgs),
    /// Dig the tunnel of a knot diagram and write the exterior's triangulation.
    Dig {
        diagram: PathBuf,
        /// Spine file to use instead of the one named in the diagram.
        #[arg(long)]
        spine: Option<PathBuf>,
        /// Write the triangulation here instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Insert framing-preserving double curls into a knot diagram.
    Curl {
        diagram: PathBuf,
        /// `+` for right-turning curls, `-` for left-turning ones.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_sign)]
        sign: i8,
        /// Arc (counting from 0) at whose start the curls go.
        #[arg(long, default_value_t = 0)]
        site: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compute the torsion of the canonical Euler structure.
    Torsion(TorsionArgs),
}

#[derive(clap::Args, Debug)]
struct InputArgs {
    /// A triangulation, or a knot diagram whose tunnel is dug first.
    input: PathBuf,
    /// Spine file to use instead of the one named in a diagram.
    #[arg(long)]
    spine: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(clap::Args, Debug)]
struct TorsionArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Cells the complex is taken relative to.
    #[arg(long, value_enum)]
    rel: Option<RelArg>,
    /// Use the blackened structure on the absolute complex.
    #[arg(long)]
    blacken: bool,
    #[arg(long, value_enum, default_value_t = Subdivision::Full)]
    subdivision: Subdivision,
    /// Generator assignments such as `t=2` or `t=t^-1`.
    #[arg(long = "rep", value_name = "NAME=VALUE")]
    rep: Vec<String>,
    /// Seed for a random spanning tree instead of breadth-first search.
    #[arg(long)]
    tree_seed: Option<u64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum RelArg {
    Wbar,
    None,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Subdivision {
    Economical,
    Full,
}

fn parse_sign(s: &str) -> Result<i8, String> {
    match s {
        "+" | "+1" | "1" | "positive" | "right" => Ok(1),
        "-" | "-1" | "negative" | "left" => Ok(-1),
        _ => Err(format!("expected + or -, got `{s}`")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Validate(a) => commands::validate(&a.input, a.spine.as_deref(), a.json),
        Command::Info(a) => commands::info(&a.input, a.spine.as_deref(), a.json),
        Command::Dig { diagram, spine, output, json } => commands::dig(&diagram, spine.as_deref(), output.as_deref(), json),
        Command::Curl { diagram, sign, site, count, output } => commands::curl(&diagram, sign, site, count, output.as_deref()),
        Command::Torsion(a) => {
            if a.subdivision == Subdivision::Economical {
                Err(input::Failure::Usage("the economical subdivision is not implemented; use --subdivision full".into()))
            } else {
                let rel = a.rel.map(|r| match r {
                    RelArg::Wbar => spinetor::torsion::Rel::WBar,
                    RelArg::None => spinetor::torsion::Rel::Nothing,
                });
                let opts = commands::TorsionOptions { rel, blacken: a.blacken, rep: a.rep, tree_seed: a.tree_seed };
                commands::torsion(&a.input.input, a.input.spine.as_deref(), &opts, a.input.json)
            }
        }
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code() as u8)
        }
    }
}
