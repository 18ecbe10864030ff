use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use sigmorse_spectra::Rational;

#[derive(Parser, Debug)]
#[command(name = "sigmorse", version, about = "Signature invariants of algebraic links and curve-sphere link tracing")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Tristram-Levine signature of a torus link
    Signature {
        #[command(subcommand)]
        link: TorusOnly,
    },
    /// Piecewise-constant (σ*, n*) profile on (0, 1)
    Profile {
        #[command(subcommand)]
        link: TorusProfile,
    },
    /// Signature of an iterated torus knot
    Cable {
        /// Stages as p:q pairs, innermost first, e.g. "2:3,15:2"
        #[arg(long)]
        stages: String,
        #[arg(long, value_parser = parse_x)]
        x: Option<Rational>,
    },
    /// Signature and nullity of a positive braid closure
    Braid {
        /// Comma-separated generator indices, e.g. "1,1,1"
        #[arg(long)]
        word: String,
        #[arg(long)]
        strands: usize,
        #[arg(long, value_parser = parse_x)]
        x: Option<Rational>,
    },
    /// Run the inequality checkers on scenario files
    Check {
        #[arg(required_unless_present = "bundled")]
        path: Option<PathBuf>,
        /// Check the scenarios shipped with the library instead
        #[arg(long, conflicts_with = "path")]
        bundled: bool,
        /// Where to evaluate the Tristram-Levine checker
        #[arg(long, value_parser = parse_x, default_value = "1/2")]
        x: Rational,
    },
    /// Numeric bounds
    Bound {
        #[command(subcommand)]
        which: BoundKind,
    },
    /// Trace the links of a curve across a range of radii
    Trace(TraceArgs),
    /// JSON summary of bundled scenarios and torus-link nullities
    Report,
    /// Run the acceptance criteria
    Selftest {
        /// Only this criterion
        #[arg(long)]
        criterion: Option<u8>,
    },
}

#[derive(Subcommand, Debug)]
pub enum TorusOnly {
    Torus {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        q: i64,
        #[arg(long, value_parser = parse_x)]
        x: Option<Rational>,
    },
}

#[derive(Subcommand, Debug)]
pub enum TorusProfile {
    Torus {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        q: i64,
        /// Write the profile here instead of standard output
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum BoundKind {
    /// Largest k with an A_2k branch under a (p, q) parametrisation
    A2k {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        q: i64,
    },
    /// Largest number of cusps allowed on a rational cuspidal curve of degree D
    Cusps {
        #[arg(long)]
        degree: i64,
    },
}

#[derive(Args, Debug)]
pub struct TraceArgs {
    /// Curve JSON
    #[arg(long)]
    pub curve: PathBuf,
    #[arg(long)]
    pub r_min: f64,
    #[arg(long)]
    pub r_max: f64,
    /// Extra evenly spaced snapshot radii
    #[arg(long, default_value_t = 4)]
    pub samples: usize,
    /// Write one SVG per snapshot into this directory
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

/// `A/B` strictly between 0 and 1.
fn parse_x(s: &str) -> Result<Rational, String> {
    let x: Rational = s.parse().map_err(|e: sigmorse_spectra::SpectraError| e.to_string())?;
    if !x.in_open_unit() {
        return Err(format!("x = {x} must lie strictly between 0 and 1"));
    }
    Ok(x)
}
