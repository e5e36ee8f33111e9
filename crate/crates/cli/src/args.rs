use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "jetforge", version, about = "Jet schemes of affine varieties")]
pub struct Cli {
    #[command(flatten)]
    pub budget: BudgetArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct BudgetArgs {
    /// Buchberger reductions allowed per basis [default: 10000]
    #[arg(long, global = true)]
    pub max_pairs: Option<usize>,
    /// Largest intermediate basis allowed [default: 2000]
    #[arg(long, global = true)]
    pub max_basis: Option<usize>,
    /// Extra jet levels for escape and forced [default: 4]
    #[arg(long, global = true)]
    pub depth: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct Input {
    /// System file
    pub file: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct Prefix {
    /// Use the jet of this declared arc as the prefix
    #[arg(long, conflicts_with = "point")]
    pub arc: Option<String>,
    /// Use the constant jet at this declared point as the prefix
    #[arg(long)]
    pub point: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Equations of the jet scheme X_m
    Prolong {
        #[arg(long)]
        level: usize,
        #[command(flatten)]
        input: Input,
    },
    /// Truncate X_from to X_to and compare with direct prolongation
    Truncate {
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        #[command(flatten)]
        input: Input,
    },
    /// The fiber of X_m over a declared point
    Fiber {
        #[arg(long)]
        level: usize,
        #[arg(long)]
        point: String,
        #[command(flatten)]
        input: Input,
    },
    /// Krull dimension of X_m or of a fiber
    Dim {
        #[arg(long, default_value_t = 0)]
        level: usize,
        /// Label of a declared point
        #[arg(long)]
        fiber: Option<String>,
        #[command(flatten)]
        input: Input,
    },
    /// Jacobian singular locus of X_m
    Singular {
        #[arg(long, default_value_t = 0)]
        level: usize,
        #[command(flatten)]
        input: Input,
    },
    /// Heuristic splitting of X_m into components
    Components {
        #[arg(long, default_value_t = 0)]
        level: usize,
        /// A declared hint label or a comma-separated generator list
        #[arg(long)]
        hint: Vec<String>,
        /// Also split along the Jacobian singular locus of X_m
        #[arg(long)]
        jacobian_hint: bool,
        #[command(flatten)]
        input: Input,
    },
    /// Prolong a polynomial map to a morphism of jet schemes
    Map {
        #[arg(long)]
        level: usize,
        /// Target system file
        #[arg(long)]
        target: PathBuf,
        /// Comma-separated images of the target variables
        #[arg(long)]
        images: String,
        #[command(flatten)]
        input: Input,
    },
    /// Product with another system, optionally compared at a jet level
    Product {
        /// The second factor
        #[arg(long)]
        with: PathBuf,
        #[arg(long)]
        level: Option<usize>,
        #[command(flatten)]
        input: Input,
    },
    /// Kernel of the coordinate-ring map of a polynomial arc
    ArcKernel {
        #[arg(long)]
        arc: String,
        #[command(flatten)]
        input: Input,
    },
    /// Finite-level test of whether a jet prefix lies in a subvariety
    Thin {
        #[arg(long)]
        level: usize,
        #[arg(long)]
        hint: String,
        #[command(flatten)]
        prefix: Prefix,
        #[command(flatten)]
        input: Input,
    },
    /// Look for a lift of a jet escaping a subvariety
    Escape {
        #[arg(long)]
        level: usize,
        #[arg(long)]
        hint: String,
        #[command(flatten)]
        prefix: Prefix,
        #[command(flatten)]
        input: Input,
    },
    /// Coefficients forced to vanish on every lift of a jet
    Forced {
        #[arg(long)]
        level: usize,
        /// Largest power tried in membership tests
        #[arg(long, default_value_t = 4)]
        max_power: u32,
        #[command(flatten)]
        prefix: Prefix,
        #[command(flatten)]
        input: Input,
    },
    /// Compare prolonged equations against direct series evaluation
    Oracle {
        #[arg(long)]
        level: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        input: Input,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Prolong { .. } => "prolong",
            Command::Truncate { .. } => "truncate",
            Command::Fiber { .. } => "fiber",
            Command::Dim { .. } => "dim",
            Command::Singular { .. } => "singular",
            Command::Components { .. } => "components",
            Command::Map { .. } => "map",
            Command::Product { .. } => "product",
            Command::ArcKernel { .. } => "arc-kernel",
            Command::Thin { .. } => "thin",
            Command::Escape { .. } => "escape",
            Command::Forced { .. } => "forced",
            Command::Oracle { .. } => "oracle",
        }
    }

    pub fn input(&self) -> &Input {
        match self {
            Command::Prolong { input, .. }
            | Command::Truncate { input, .. }
            | Command::Fiber { input, .. }
            | Command::Dim { input, .. }
            | Command::Singular { input, .. }
            | Command::Components { input, .. }
            | Command::Map { input, .. }
            | Command::Product { input, .. }
            | Command::ArcKernel { input, .. }
            | Command::Thin { input, .. }
            | Command::Escape { input, .. }
            | Command::Forced { input, .. }
            | Command::Oracle { input, .. } => input,
        }
    }
}
