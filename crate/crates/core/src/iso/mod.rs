//! End-to-end isomorphism deciders and canonization.

mod abelian;
mod auto;
mod canon;
mod corpus;
mod oracle;
mod semisimple;
mod verdict;

pub use abelian::{abelian_basis, abelian_iso};
pub use auto::{auto_pipeline, AutoConfig};
pub use canon::{canonical_form, CanonConfig, CanonicalForm, Variant};
pub use corpus::{
    abelian_corpus, abelian_types, catalog_actions, countfree_family, matrix_action, named_action, q8, scalar_action,
    semidirect_corpus, small_corpus, NamedGroup, SemidirectPair,
};
pub use oracle::{find_isomorphism, oracle_isomorphic, oracle_isomorphism_count, OracleConfig};
pub use semisimple::{semisimple_iso_list, semisimple_iso_list_with, IsoList, ListConfig, ListMode};
pub use verdict::{verify_isomorphism, IsoVerdict, Method, Status};
