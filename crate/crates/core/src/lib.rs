//! Weisfeiler-Leman machinery for finite groups given by Cayley tables.
//!
//! The crate is organised bottom-up:
//!
//! * [`group`] holds the Cayley-table representation, constructors and the
//!   elementary subgroup computations everything else is built on.
//! * [`analysis`] contains the structural subroutines (ranks, splitting,
//!   non-commuting graph components, socle factors).
//! * [`wl`] is the k-dimensional refinement engine for groups (Versions I
//!   and II, counting and count-free).
//! * [`gadget`] reduces a group to its multiplication-gadget graph and runs
//!   graph WL on it (Version III).
//! * [`iso`] assembles end-to-end deciders: a brute-force oracle, the
//!   Abelian order-multiset test, the semisimple lister and canonization.
//!
//! Work inside a refinement round is data-parallel over tuples. With the
//! default `parallel` feature it runs on rayon; without it the same code
//! paths run sequentially and produce identical colour ids.

pub mod analysis;
pub mod error;
pub mod gadget;
pub mod group;
pub mod iso;
pub mod par;
pub mod wl;

pub use error::{Error, Result};
pub use group::{CayleyTable, ElementSet};
