use serde::Serialize;

use super::{check_budget, initial_coloring_multi, refine_round, ColoredGroup, SignatureMode, TupleColoring, Version};
use crate::error::Result;

/// Default cap on the number of tuple records across all sides.
pub const DEFAULT_BUDGET: u64 = 1 << 27;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WlConfig {
    pub k: usize,
    pub version: Version,
    /// Rounds including the initial colouring, which is round 1.
    pub max_rounds: u32,
    pub counting: bool,
    pub mode: SignatureMode,
    pub budget: u64,
}

impl WlConfig {
    pub fn new(k: usize, version: Version) -> Self {
        WlConfig { k, version, max_rounds: u32::MAX, counting: true, mode: SignatureMode::Exact, budget: DEFAULT_BUDGET }
    }

    pub fn rounds(mut self, r: u32) -> Self {
        self.max_rounds = r.max(1);
        self
    }

    pub fn count_free(mut self) -> Self {
        self.counting = false;
        self
    }

    pub fn counting(mut self, counting: bool) -> Self {
        self.counting = counting;
        self
    }

    pub fn mode(mut self, mode: SignatureMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunResult {
    pub distinguished: bool,
    /// First round at which the side signatures differed.
    pub distinguished_at: Option<u32>,
    pub rounds_used: u32,
    pub stabilized: bool,
    pub counting: bool,
    /// Number of colour classes after each round, starting with round 1.
    pub class_counts: Vec<usize>,
    /// Per side: sorted `(colour, multiplicity)` pairs. In count-free mode
    /// only the set of colours is compared.
    pub signatures: Vec<Vec<(u32, u64)>>,
    /// Per side: colour of the diagonal tuple of every point.
    pub element_colors: Vec<Vec<u32>>,
    #[serde(skip)]
    pub coloring: TupleColoring,
}

fn sides_differ(c: &TupleColoring, counting: bool) -> bool {
    if c.sides() < 2 {
        return false;
    }
    let first = c.histogram(0);
    (1..c.sides()).any(|s| {
        let other = c.histogram(s);
        if counting {
            other != first
        } else {
            other.len() != first.len() || other.iter().zip(&first).any(|(a, b)| a.0 != b.0)
        }
    })
}

/// Refines `init` (taken as round 1) until the partition is stable, the
/// sides are distinguished, or `max_rounds` is reached.
pub fn drive(init: TupleColoring, max_rounds: u32, counting: bool, mode: SignatureMode) -> Result<RunResult> {
    let mut current = init;
    let mut class_counts = vec![current.classes()];
    let mut distinguished_at = sides_differ(&current, counting).then_some(current.round());
    let mut stabilized = false;
    while distinguished_at.is_none() && current.round() < max_rounds {
        let next = refine_round(&current, counting, mode)?;
        class_counts.push(next.classes());
        let stable = next.classes() == current.classes() || next.classes() == next.all_colors().len();
        current = next;
        if sides_differ(&current, counting) {
            distinguished_at = Some(current.round());
        }
        if stable {
            stabilized = true;
            break;
        }
    }
    let sides = current.sides();
    let signatures = (0..sides)
        .map(|s| {
            let h = current.histogram(s);
            if counting {
                h
            } else {
                h.into_iter().map(|(c, _)| (c, 1)).collect()
            }
        })
        .collect();
    Ok(RunResult {
        distinguished: distinguished_at.is_some(),
        distinguished_at,
        rounds_used: current.round(),
        stabilized,
        counting,
        class_counts,
        signatures,
        element_colors: (0..sides).map(|s| current.diagonal(s)).collect(),
        coloring: current,
    })
}

/// Runs k-WL on two coloured groups with a shared dictionary.
pub fn run_wl(a: &ColoredGroup, b: &ColoredGroup, cfg: &WlConfig) -> Result<RunResult> {
    check_budget(&[a.group().order(), b.group().order()], cfg.k, cfg.budget)?;
    let init = initial_coloring_multi(&[a, b], cfg.k, cfg.version)?;
    drive(init, cfg.max_rounds, cfg.counting, cfg.mode)
}

/// Runs k-WL on a single coloured group, to stabilization or `max_rounds`.
pub fn run_wl_single(a: &ColoredGroup, cfg: &WlConfig) -> Result<RunResult> {
    check_budget(&[a.group().order()], cfg.k, cfg.budget)?;
    let init = initial_coloring_multi(&[a], cfg.k, cfg.version)?;
    drive(init, cfg.max_rounds, cfg.counting, cfg.mode)
}

pub fn pullback_element_colors(result: &RunResult) -> &[Vec<u32>] {
    &result.element_colors
}
