//! Finite groups as Cayley tables, with the identity pinned at index 0.

mod construct;
mod elements;
mod marked;
mod subgroup;
mod table;

pub use construct::{
    direct_product, make_abelian, make_alternating, make_cyclic, make_dihedral, make_symmetric,
    permutation_group, semidirect_product, Action, Constructors, DEFAULT_ORDER_CAP,
};
pub use elements::ElementSet;
pub use marked::{marked_cayley_signature, marked_isomorphism, marked_map, MarkedScratch};
pub use subgroup::{
    center, centralizer, commutator, commutator_subgroup, conjugacy_classes, element_order,
    is_abelian, is_normal, normal_closure, normal_closure_within, subgroup_closure, subgroup_table,
    SubgroupBuilder,
};
pub use table::{validate_group, CayleyTable};

/// Group elements are indices into the Cayley table.
pub type Elem = u32;
