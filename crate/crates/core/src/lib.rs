//! Exact-arithmetic verification engine for closed Hamiltonian circle
//! manifolds with isolated fixed points.
//!
//! A candidate manifold is described by combinatorial data only: the
//! half-dimension `N`, and for every fixed point its moment-map value and
//! the multiset of nonzero integer weights of the tangential circle
//! representation. From that data the engine
//!
//! * computes Betti numbers by Morse counting,
//! * evaluates Atiyah-Bott/Berline-Vergne localization sums,
//! * checks the localization residue identities the data must satisfy,
//! * verifies the axioms of a canonical-class basis,
//! * replays the restriction-evaluation (Phi) kernel argument with exact
//!   sign certificates, and
//! * checks the Betti-number inequality and unimodality of the even
//!   Betti profile.
//!
//! Every scalar is an arbitrary-precision rational; nothing is ever
//! rounded. A checker therefore answers pass/fail with an exact witness,
//! never "close enough".
//!
//! With the default `parallel` feature the per-point and per-pair inner
//! loops are distributed with rayon; disabling it yields a dependency-free
//! sequential build with identical results.

pub mod certificate;
pub mod classes;
mod exec;
pub mod generators;
pub mod laurent;
pub mod localization;
pub mod matrix;
pub mod model;
pub mod rat;
pub mod theorem;

pub use certificate::{Certificate, Verdict};
pub use classes::{CanonicalBasis, ClassError, ClassRestrictions, VerifyOptions};
pub use generators::{gen_cpn, gen_product, mutate, mutation_corpus, CpnSpec, GenError, Mutation};
pub use laurent::LaurentPoly;
pub use localization::{integrate, pairing_matrix, residue_check, LocalizationError, LocalizationSum};
pub use matrix::RatMatrix;
pub use model::{BettiProfile, FixedPoint, FixedPointSet};
pub use rat::{format_rat, parse_rat, rat, ratio, Rat};
pub use theorem::{
    build_phi, check_inequality, check_unimodality, phi_kernel, replay_proof, sign_certificate,
    Contradiction, PhiMap, ReplayReport, ReplayVerdict, SignCertificate, TheoremError,
};
