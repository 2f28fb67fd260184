//! Structural subroutines: word ranks, splitting, quotients, the
//! non-commuting graph and its components, and socle factors.

mod commuting;
mod rank;
mod socle;
mod split;

pub use commuting::{non_abelian_components, ComponentDecomposition, NonCommutingGraph};
pub use rank::{commutator_set, commutator_width, rank_of, Rank, RankTable};
pub use socle::{is_semisimple, is_simple, socle_factors, socle_factors_reference, SocleData};
pub use split::{quotient, splits_from_abelian, splits_from_group, Quotient};
