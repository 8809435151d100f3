//! Exact-arithmetic engine for finite-dimensional Poincaré differential
//! graded commutative algebras (PDGCAs).
//!
//! The crate builds up, layer by layer:
//! - exact rational scalars and dense linear algebra ([`scalar`], [`matrix`]),
//! - graded spaces, graded linear maps, Koszul signs, sparse multilinear maps
//!   ([`graded`], [`multilinear`]),
//! - the PDGCA data model with axiom validation and cohomology ([`pdgca`]),
//! - Hodge homotopies, harmonic projectors, and the small-quotient shape test
//!   ([`hodge`]),
//! - homotopy transfer to minimal unital C∞-structures ([`transfer`]) with an
//!   independent tree-summation oracle,
//! - A∞/C∞ axiom and morphism checking ([`cinfty`]),
//! - Harrison cochains and the first formality obstruction ([`harrison`]),
//! - the Bianchi-Massey tensor ([`bianchi_massey`]),
//! - the text file format and theorem certificates ([`format`], [`certify`]).

pub mod scalar;
pub mod matrix;
pub mod graded;
pub mod multilinear;
pub mod pdgca;
pub mod hodge;
pub mod transfer;
pub mod cinfty;
pub mod format;
pub mod certify;
pub mod harrison;
pub mod bianchi_massey;

pub use bianchi_massey::{
    alpha2, bianchi_massey, bm_equivalence, gamma, verify_harr_to_sym, xi_bm,
    BianchiMasseyTensor, SymmetricSquareElement,
};

pub use harrison::{
    compare_classes, harrison_cohomology_dim, harrison_subspace_basis, hochschild_differential,
    restrict_to_degree_multiples, solve_formality_obstruction, HochschildCochain,
    InfeasibilityCertificate, ObstructionResult,
};
pub use cinfty::{
    check_morphism, check_shuffle_vanishing, check_stasheff, check_unitality, gauge_by_phi2,
    AInftyStructure, CInftyMorphism,
};
pub use graded::{koszul_sign, BasisRef, Element, GradedLinearMap, GradedVectorSpace};
pub use matrix::{image_basis, kernel_basis, solve, Mat};
pub use hodge::{construct_hodge_from_metric, qshape_check, validate_hodge, HodgeHomotopy};
pub use multilinear::MultilinearMap;
pub use pdgca::{
    cohomology, connectivity, is_nondegenerate, validate_pdgca, CohomologyRing, Pdgca,
    PdgcaBuilder, ValidationReport,
};
pub use scalar::Scalar;
