//! Concrete algebras and groups: a non-nilpotent char-2 algebra generated by
//! elements with `axa = 0`, the algebra V and truncations of V*, the
//! unipotent group they give rise to, and commutator type bookkeeping.

mod char2;
mod types;
mod unipotent;
mod vstar;

pub use char2::{build_char2_example, CHAR2_CAP};
pub use types::{commutator_type, multi_weight, relation4_filter, CommutatorTree, MultiWeight};
pub use unipotent::{
    build_unipotent_group, matrix_left_engel_check, nonnilpotence_witness, UnipotentContext,
    WitnessReport,
};
pub use vstar::{
    build_v, build_vstar, verify_simple_ideal, vstar_dim, Letter, SimpleIdealReport, SubsetIndex,
    SUBSPACE_CAP, VSTAR_CAP,
};
