//! δ-superderivation solvers, bracket validators and structural checks.

mod brackets;
mod derivations;
mod lemmas;
mod simple;

pub use brackets::{
    bracket_derivation, check_phi_space, check_r_space, compute_phi, is_jordan_bracket,
    is_poisson_bracket, BracketCheck, BracketWitness, GradedSubspace, RSpaceReport,
};
pub use derivations::{
    centroid, classify, delta_derivations, delta_space, delta_superderivations,
    is_delta_derivation, is_delta_superderivation, supercentroid, MapParity, MapSpace,
    TrivialityReport,
};
pub use lemmas::{
    lemma_suite, LemmaCheck, LemmaReport, D_COMPATIBLE, D_POWER_IDENTITY, KERNEL_INVERTIBLE,
    PHI_D_STABLE, PRODUCT_SPAN,
};
pub use simple::{bracket_simple_certificate, SimplicityCertificate};
