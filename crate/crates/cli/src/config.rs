use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use origami_core::{Budget, Family, TcOptions};

use crate::error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(
    name = "origami",
    version,
    about = "Enumerate and analyse origami monoids and Jones monoids"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Which monoid family.
    #[arg(long, global = true, value_enum, default_value_t = MonoidArg::Origami)]
    pub monoid: MonoidArg,
    /// Number of strands.
    #[arg(long, short = 'n', global = true, default_value_t = 3)]
    pub n: usize,
    /// Equality engine: Knuth-Bendix completion, congruence enumeration, or both (cross-checked).
    #[arg(long, global = true, value_enum, default_value_t = Engine::Tc)]
    pub engine: Engine,
    /// Leave out the derivable relation families of the origami presentation.
    #[arg(long, global = true)]
    pub no_redundant_rules: bool,
    /// Directory for cached monoid tables.
    #[arg(long, global = true, env = "ORIGAMI_CACHE_DIR")]
    pub cache: Option<PathBuf>,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Allow origami n >= 7 and jones n >= 12.
    #[arg(long, global = true)]
    pub large: bool,
    #[arg(long, global = true, default_value_t = Budget::default().max_rules)]
    pub kb_max_rules: usize,
    #[arg(long, global = true, default_value_t = Budget::default().max_pairs)]
    pub kb_max_pairs: u64,
    /// Cap on live classes during congruence enumeration.
    #[arg(long, global = true, default_value_t = TcOptions::default().max_nodes)]
    pub max_nodes: usize,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Enumerate the monoid and print its size.
    Enumerate,
    /// Green's relations, class counts and the D-class order.
    Greens,
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
    /// One regular form per element (origami only).
    NormalForms,
    /// Dump the monoid table (json), the D-class order (dot), per-element
    /// classes (csv), or the relations (text).
    Export,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MonoidArg {
    Jones,
    Origami,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    Kb,
    Tc,
    Both,
}

impl Engine {
    pub fn name(self) -> &'static str {
        match self {
            Engine::Kb => "kb",
            Engine::Tc => "tc",
            Engine::Both => "both",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Suite {
    Identities,
    Submonoids,
    Conjecture,
    Projections,
    HTrivial,
    RegularR,
    Core,
    Theorem,
    Redundancy,
    Finiteness,
    JonesCaps,
    Diagrams,
    Engines,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Submonoids => "submonoids",
            Suite::Conjecture => "conjecture",
            Suite::Projections => "projections",
            Suite::HTrivial => "h-trivial",
            Suite::RegularR => "regular-r",
            Suite::Core => "core",
            Suite::Theorem => "theorem",
            Suite::Redundancy => "redundancy",
            Suite::Finiteness => "finiteness",
            Suite::JonesCaps => "jones-caps",
            Suite::Diagrams => "diagrams",
            Suite::Engines => "engines",
            Suite::All => "all",
        }
    }

    pub fn applies_to(self, family: Family) -> bool {
        match self {
            Suite::HTrivial | Suite::RegularR | Suite::Engines | Suite::All => true,
            Suite::JonesCaps | Suite::Diagrams => family == Family::Jones,
            _ => family == Family::Origami,
        }
    }

    /// Every concrete suite for the family, in a fixed order.
    pub fn expand(self, family: Family) -> Vec<Suite> {
        if self != Suite::All {
            return vec![self];
        }
        Suite::value_variants()
            .iter()
            .copied()
            .filter(|&s| s != Suite::All && s.applies_to(family))
            .collect()
    }
}

/// Validated settings shared by every command.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub family: Family,
    pub n: usize,
    pub engine: Engine,
    pub include_redundant: bool,
    pub cache_dir: Option<PathBuf>,
    pub budget: Budget,
    pub tc: TcOptions,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
}

/// Largest rank accepted at all; generator indices are stored in a byte.
pub const MAX_RANK: usize = 64;

impl RunConfig {
    pub fn from_args(g: &GlobalArgs) -> CliResult<Self> {
        let family = match g.monoid {
            MonoidArg::Jones => Family::Jones,
            MonoidArg::Origami => Family::Origami,
        };
        if g.n < 2 {
            return Err(CliError::Usage(format!(
                "n must be at least 2, got {}",
                g.n
            )));
        }
        if g.n > MAX_RANK {
            return Err(CliError::Usage(format!(
                "n must be at most {MAX_RANK}, got {}",
                g.n
            )));
        }
        let large = match family {
            Family::Origami => g.n >= 7,
            Family::Jones => g.n >= 12,
        };
        if large && !g.large {
            return Err(CliError::Usage(format!(
                "{family} n = {} is a large run; pass --large to allow it",
                g.n
            )));
        }
        Ok(RunConfig {
            family,
            n: g.n,
            engine: g.engine,
            include_redundant: !g.no_redundant_rules,
            cache_dir: g.cache.clone(),
            budget: Budget {
                max_rules: g.kb_max_rules,
                max_pairs: g.kb_max_pairs,
            },
            tc: TcOptions {
                max_nodes: g.max_nodes,
            },
            out: g.out.clone(),
            format: g.format,
        })
    }

    /// Same settings for the Jones monoid of the same rank.
    pub fn jones(&self) -> RunConfig {
        RunConfig {
            family: Family::Jones,
            ..self.clone()
        }
    }

    pub fn with_redundant(&self, include_redundant: bool) -> RunConfig {
        RunConfig {
            include_redundant,
            ..self.clone()
        }
    }
}
