//! Permutations, permutation groups, canonical labeling and the centralizer
//! computations.

mod canon;
mod centralizer;
mod group;
mod partition;
mod perm;

pub use canon::{
    are_isomorphic, are_isomorphic_with, automorphism_group, automorphism_group_with, automorphism_search,
    canonical_form, canonical_form_colored, canonical_form_with_group, isomorphism_from_forms,
    AutomorphismSearch, CanonicalForm, Certificate, SearchOptions,
};
pub use centralizer::{
    block_swap, centralizer_by_enumeration, centralizer_counts_by_enumeration, centralizer_in_symmetric, centralizer_order_formula, group_order,
    involution_class_index, phi_embedding, semidirect_multiply, star_monomorphism, StarMonomorphism,
};
pub use group::{orbits_of, GroupReport, PermutationGroup, StabChain};
pub use perm::Permutation;
