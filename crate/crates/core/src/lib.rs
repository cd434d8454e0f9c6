//! Order matchings and Sperner chain decompositions of the boxed Young's
//! lattices `L(m,n)`.

pub mod chains;
pub mod greedy;
pub mod oracle;
pub mod phi;
pub mod poset;
pub mod recursive;

pub use chains::{
    chains_from_matching, chains_from_phi, chains_l4, classify_l3, classify_l4, closed_form_chain_l3, psi, render,
    s4_starting_set, tableau_of_chain, validate_decomposition, validate_full, Chain, ChainDecomposition, ChainError,
    ChainTableau, ClassificationL3, ClassificationL4, DecompositionKind, RenderFormat, ValidationReport, Violation,
};
pub use greedy::{ga_full, ga_level, Direction, LevelMatching, OrderMatching};
pub use oracle::{certify_matching, certify_profile, max_level_matching, MatchingCertificate};
pub use phi::{phi, phi_inverse, star_phi, PhiError};
pub use poset::{dual, make_partition, rank_profile, BoxShape, Partition, PosetError, RankProfile};
pub use recursive::{knead, rec_smn, rec_ud, HalfLattice, UDecomposition};
