use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use treecoeff::enumerate::SignSumVariant;
use treecoeff::Partition;

#[derive(Parser, Debug)]
#[command(name = "treecoeff", version, about = "Exact tree polynomials and Kontsevich-cycle conversion coefficients")]
pub struct Cli {
    /// Output format (default: json for `table`, text otherwise).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write the output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Directory for cached results; caching is off when unset.
    #[arg(long, global = true, env = "TREECOEFF_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,

    /// Enumeration caps as `trees=6,letters=13,...`; the dedicated flags win.
    #[arg(long, global = true, env = "TREECOEFF_CAPS")]
    pub caps: Option<String>,

    /// Largest k for increasing-tree enumeration.
    #[arg(long, global = true)]
    pub cap_trees: Option<u32>,

    /// Largest letter count for cyclic-shuffle enumeration.
    #[arg(long, global = true)]
    pub cap_letters: Option<u32>,

    /// Largest k for the tree-polynomial recursion.
    #[arg(long, global = true)]
    pub cap_poly: Option<u32>,

    /// Print timings and cache activity to stderr.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print a tree polynomial.
    Treepoly {
        k: u32,
        /// reduced, full, pfamily, or l:<n>
        #[arg(long, default_value = "reduced")]
        variant: Variant,
        /// Set x0 = 0 in the reduced polynomial.
        #[arg(long)]
        x0_zero: bool,
    },
    /// Print one coefficient b_λ^μ or a_λ^μ.
    Coeff {
        #[arg(value_enum)]
        kind: CoeffKind,
        #[arg(long)]
        lambda: Partition,
        /// A partition, or auto-n for the one-part partition of |λ|.
        #[arg(long, default_value = "auto-n")]
        mu: MuArg,
    },
    /// Write the b and a matrices over the partitions of n.
    Table { n: u32 },
    /// Cup-product coefficients of [W_λ^*] and [W_μ^*].
    Cup {
        #[arg(long)]
        lambda: Partition,
        #[arg(long, default_value = "")]
        mu: Partition,
    },
    /// Expansion of [W_λ^*] in the adjusted classes.
    Witten {
        #[arg(long)]
        lambda: Partition,
    },
    /// Run the verification suite.
    Verify {
        #[arg(long, value_enum, default_value = "quick")]
        level: Level,
    },
    /// Compare a brute-force oracle with the closed form or recursion.
    Oracle {
        #[command(subcommand)]
        what: OracleCommand,
    },
}

#[derive(Subcommand, Debug)]
pub enum OracleCommand {
    /// Increasing trees against the recursion.
    Treepoly { k: u32 },
    /// Cyclic shuffles against x0·T̃_k at a tuple such as 3,1,1.
    ShuffleSum { tuple: String },
    /// The counting identity for sequences in 1..=n of length s.
    Counting { n: u32, s: u32 },
    /// A sign-sum table entry.
    Xe { variant: SignSumVariant, n: u32, m: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Latex,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CoeffKind {
    B,
    A,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Level {
    Quick,
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Reduced,
    Full,
    PFamily,
    L(u32),
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "reduced" => Ok(Variant::Reduced),
            "full" => Ok(Variant::Full),
            "pfamily" => Ok(Variant::PFamily),
            _ => s
                .strip_prefix("l:")
                .and_then(|n| n.parse().ok())
                .map(Variant::L)
                .ok_or_else(|| format!("unknown variant {s:?}; expected reduced, full, pfamily or l:<n>")),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::Reduced => f.write_str("reduced"),
            Variant::Full => f.write_str("full"),
            Variant::PFamily => f.write_str("pfamily"),
            Variant::L(n) => write!(f, "l:{n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MuArg {
    AutoN,
    Given(Partition),
}

impl FromStr for MuArg {
    type Err = treecoeff::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim() == "auto-n" {
            Ok(MuArg::AutoN)
        } else {
            s.parse().map(MuArg::Given)
        }
    }
}
