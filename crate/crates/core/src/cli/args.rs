use std::ops::RangeInclusive;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::arith::{parse_rational, BigRational, GaussianRational};
use crate::combi::MatrixFamily;
use crate::error::{Error, Result};
use crate::torus::Lattice;

/// An inclusive range of sizes, written `7` or `1..80`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NRange(pub RangeInclusive<usize>);

impl FromStr for NRange {
    type Err = Error;
    fn from_str(text: &str) -> Result<Self> {
        let parse = |s: &str| s.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad size {s:?} in {text:?}")));
        let (lo, hi) = match text.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let n = parse(text)?;
                (n, n)
            }
        };
        if lo > hi {
            return Err(Error::Usage(format!("empty range {text:?}")));
        }
        Ok(Self(lo..=hi))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExampleKind {
    Coordinates,
    S7,
}

#[derive(Parser, Debug)]
#[command(name = "eigenkit", version, about = "Exact verification of eigenfamily identities, binomial determinants and flat-torus spectra")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for every randomized check; EIGENKIT_SEED takes precedence
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads (0 = all cores); never affects report content
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
}

// parsed once per process
#[allow(clippy::large_enum_variant)]
#[derive(Subcommand, Debug)]
pub enum Command {
    /// Binomial matrices, kernels, generating polynomials and recurrences
    #[command(subcommand)]
    Combi(CombiCommand),
    /// Eigenfamilies on round spheres
    #[command(subcommand)]
    Sphere(SphereCommand),
    /// Flat tori
    #[command(subcommand)]
    Torus(TorusCommand),
    /// Cone lemma and cone parameters
    #[command(subcommand)]
    Cone(ConeCommand),
    /// Every acceptance criterion with fixed parameters
    FullSuite {
        /// Run a single criterion (1..=11)
        #[arg(long)]
        criterion: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
pub enum CombiCommand {
    /// Closed-form determinants of A(n), B(n)
    Det {
        #[arg(long, value_parser = parse_family)]
        family: MatrixFamily,
        #[arg(long)]
        n: NRange,
        /// Print matrices transposed (text format, matrices up to 8 rows)
        #[arg(long)]
        transpose: bool,
        /// Also check the printed example matrices
        #[arg(long)]
        examples: bool,
    },
    /// The kernel of Brect(2n)
    Kernel {
        #[arg(long)]
        n: NRange,
    },
    /// Generating polynomials, derivative cases and surjectivity witnesses
    Polys {
        #[arg(long)]
        n: NRange,
    },
    /// Row relations, step matrices and the determinant chain
    Recur {
        #[arg(long)]
        n: NRange,
    },
}

#[derive(Args, Debug, Clone)]
pub struct S7Params {
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    pub a: GaussianRational,
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    pub b: GaussianRational,
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    pub c: GaussianRational,
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    pub d: GaussianRational,
}

#[derive(Subcommand, Debug)]
pub enum SphereCommand {
    /// Eigenfamily relations of a built-in example
    Verify {
        #[arg(long, value_enum)]
        example: ExampleKind,
        /// Complex dimension n of the coordinates example
        #[arg(long, default_value = "2")]
        n: NRange,
        /// Largest power d in the power-closure check [default: 4 for
        /// coordinates, 2 for s7]
        #[arg(long)]
        max_degree: Option<u32>,
        #[command(flatten)]
        params: S7Params,
    },
    /// L2 relations of the first member and of the whole family
    L2 {
        #[arg(long, value_enum)]
        example: ExampleKind,
        #[arg(long, default_value = "2")]
        n: NRange,
        /// Largest total degree of the integrated monomials
        #[arg(long, default_value_t = 6)]
        max_degree: u32,
        #[command(flatten)]
        params: S7Params,
    },
}

#[derive(Subcommand, Debug)]
pub enum TorusCommand {
    /// Classify the eigenfamilies inside one norm shell of the dual lattice
    Classify {
        #[arg(long, default_value = "1,0;0,1")]
        basis: Lattice,
        /// Squared norm of the shell; defaults to the smallest nonzero one
        #[arg(long, value_parser = parse_q)]
        q: Option<BigRational>,
    },
    /// The spectrum up to -q·PI2 with multiplicities
    Spectrum {
        #[arg(long, default_value = "1,0;0,1")]
        basis: Lattice,
        #[arg(long, value_parser = parse_q, default_value = "5")]
        q: BigRational,
    },
}

#[derive(Subcommand, Debug)]
pub enum ConeCommand {
    /// Cone lemma on seeded harmonic polynomials and cone parameter round trips
    Check {
        /// Ambient dimensions of the generated polynomials
        #[arg(long, default_value = "2..6")]
        n: NRange,
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
        /// Check one pair (λ, μ) instead; needs --mu and --m
        #[arg(long, value_parser = parse_q, allow_hyphen_values = true)]
        lambda: Option<BigRational>,
        #[arg(long, value_parser = parse_q, allow_hyphen_values = true)]
        mu: Option<BigRational>,
        /// Dimension of the base manifold
        #[arg(long)]
        m: Option<usize>,
    },
}

fn parse_family(s: &str) -> std::result::Result<MatrixFamily, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_q(s: &str) -> std::result::Result<BigRational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!("7".parse::<NRange>().unwrap(), NRange(7..=7));
        assert_eq!("1..80".parse::<NRange>().unwrap(), NRange(1..=80));
        assert_eq!("1..=3".parse::<NRange>().unwrap(), NRange(1..=3));
        assert!("5..2".parse::<NRange>().is_err());
        assert!("x".parse::<NRange>().is_err());
    }

    #[test]
    fn parses_commands() {
        let cli = Cli::try_parse_from(["eigenkit", "combi", "det", "--family", "A", "--n", "1..4", "--format", "json"]).unwrap();
        assert_eq!(cli.common.format, Format::Json);
        assert!(matches!(cli.command, Command::Combi(CombiCommand::Det { family: MatrixFamily::A, .. })));
        let cli = Cli::try_parse_from(["eigenkit", "sphere", "verify", "--example", "s7", "--a", "-1/2", "--d", "1+1*i"]).unwrap();
        let Command::Sphere(SphereCommand::Verify { params, .. }) = cli.command else { panic!() };
        assert_eq!(params.a, GaussianRational::ratio(-1, 2));
        assert!(Cli::try_parse_from(["eigenkit", "torus", "classify", "--basis", "1,0;0"]).is_err());
    }
}
