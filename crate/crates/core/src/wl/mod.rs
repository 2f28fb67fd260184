//! k-dimensional Weisfeiler-Leman refinement on groups.
//!
//! Version I colours a tuple by its equality and multiplication pattern,
//! Version II by the isomorphism type of the marked subgroup it generates.
//! Both refine with the same rule. Colourings of the compared structures
//! always share one id space.

mod coloring;
mod engine;
mod init;
mod lanes;
mod run;

use serde::{Deserialize, Serialize};

pub use coloring::ColoredGroup;
pub use engine::{check_budget, refine_round, tuple_records, SignatureMode, TupleColoring};
pub use init::{initial_coloring, initial_coloring_multi, structure_coloring};
pub use run::{drive, pullback_element_colors, run_wl, run_wl_single, RunResult, WlConfig, DEFAULT_BUDGET};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Version {
    I,
    II,
}

impl std::str::FromStr for Version {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "1" | "I" | "i" => Ok(Version::I),
            "2" | "II" | "ii" => Ok(Version::II),
            _ => Err(crate::Error::InvalidParameter(format!("unknown WL version {s:?}"))),
        }
    }
}
