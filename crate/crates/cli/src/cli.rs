use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use wlgroup::iso::Variant;
use wlgroup::wl::{SignatureMode, Version};

/// Weisfeiler-Leman refinement and isomorphism testing for finite groups
/// given as `.cay` Cayley tables.
#[derive(Debug, Parser)]
#[command(name = "wlgroup", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Maximum number of WL tuple records (overrides WLGROUP_MEMORY_BUDGET).
    #[arg(long, global = true, value_name = "RECORDS")]
    pub budget: Option<u64>,
    /// Action catalog used by `sdp:` specs instead of the shipped one.
    #[arg(long, global = true, value_name = "FILE")]
    pub catalog: Option<PathBuf>,
    /// Accept tables whose identity is not element 0 by swapping it into place.
    #[arg(long, global = true)]
    pub relabel_identity: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the Cayley table(s) named by a group spec.
    Gen(GenArgs),
    /// Run k-WL on two groups.
    Wl(WlArgs),
    /// Decide isomorphism of two groups.
    Iso(IsoArgs),
    /// Stream every isomorphism between two semisimple groups as JSON lines.
    IsoList(IsoListArgs),
    /// Write the canonical form of a group.
    Canon(CanonArgs),
    /// Run a batch experiment described by a key=value file.
    Experiment(ExperimentArgs),
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// e.g. `cyclic:6`, `dp:sym:3xcyclic:2`, `sdp:cyclic:3:cyclic:7:mul2`, `cfpair:2`.
    pub spec: String,
    /// Output path; pair specs write `<stem>.G.cay` and `<stem>.H.cay`.
    #[arg(short, long)]
    pub out: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VersionArg {
    #[value(name = "I", alias = "1")]
    I,
    #[value(name = "II", alias = "2")]
    II,
    #[value(name = "III", alias = "3")]
    III,
}

impl VersionArg {
    pub fn group_version(self) -> Option<Version> {
        match self {
            VersionArg::I => Some(Version::I),
            VersionArg::II => Some(Version::II),
            VersionArg::III => None,
        }
    }

    pub fn variant(self) -> Variant {
        match self {
            VersionArg::I => Variant::I,
            VersionArg::II => Variant::II,
            VersionArg::III => Variant::III,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            VersionArg::I => "I",
            VersionArg::II => "II",
            VersionArg::III => "III",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    /// Exact signatures up to k = 2, fingerprints above.
    Auto,
    Exact,
    Fingerprint,
}

impl ModeArg {
    pub fn resolve(self, k: usize) -> SignatureMode {
        match self {
            ModeArg::Auto if k <= 2 => SignatureMode::Exact,
            ModeArg::Auto | ModeArg::Fingerprint => SignatureMode::Fingerprint,
            ModeArg::Exact => SignatureMode::Exact,
        }
    }
}

#[derive(Debug, Args)]
pub struct WlArgs {
    /// Tuple dimension.
    #[arg(short, long, alias = "ka", default_value_t = 2)]
    pub k: usize,
    #[arg(long, value_enum, default_value_t = VersionArg::II)]
    pub version: VersionArg,
    /// Round limit, the initial colouring being round 1 (default: until stable).
    #[arg(long)]
    pub rounds: Option<u32>,
    /// Compare colour sets instead of colour multisets.
    #[arg(long)]
    pub count_free: bool,
    #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
    pub mode: ModeArg,
    pub first: PathBuf,
    pub second: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Auto,
    Abelian,
    Semisimple,
    Wl,
    Oracle,
    Canon,
}

impl MethodArg {
    pub fn name(self) -> &'static str {
        match self {
            MethodArg::Auto => "auto",
            MethodArg::Abelian => "abelian",
            MethodArg::Semisimple => "semisimple",
            MethodArg::Wl => "wl",
            MethodArg::Oracle => "oracle",
            MethodArg::Canon => "canon",
        }
    }
}

#[derive(Debug, Args)]
pub struct IsoArgs {
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    pub method: MethodArg,
    /// WL dimension actually run by the wl, auto and canon methods.
    #[arg(short, long, default_value_t = 3)]
    pub k: usize,
    pub first: PathBuf,
    pub second: PathBuf,
}

#[derive(Debug, Args)]
pub struct IsoListArgs {
    /// Stop after this many isomorphisms.
    #[arg(long)]
    pub limit: Option<u64>,
    pub first: PathBuf,
    pub second: PathBuf,
}

#[derive(Debug, Args)]
pub struct CanonArgs {
    /// Dimension under which WL is assumed to identify the group; runs use k + 1.
    #[arg(short, long, default_value_t = 2)]
    pub k: usize,
    #[arg(long, value_enum, default_value_t = VersionArg::I)]
    pub variant: VersionArg,
    #[arg(long)]
    pub count_free: bool,
    #[arg(long, value_enum, default_value_t = ModeArg::Fingerprint)]
    pub mode: ModeArg,
    /// Writes the table here and the label array next to it as `<stem>.labels.json`.
    #[arg(short, long)]
    pub out: Option<PathBuf>,
    pub input: PathBuf,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    pub spec: PathBuf,
    /// CSV report path (overrides `output` in the experiment file).
    #[arg(short, long)]
    pub out: Option<PathBuf>,
    /// JSON summary path (overrides `summary` in the experiment file).
    #[arg(long)]
    pub summary: Option<PathBuf>,
}
