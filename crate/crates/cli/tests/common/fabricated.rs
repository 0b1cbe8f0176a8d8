//! Fabricated dimension-8 dataset with Betti profile (1,2,1,2,1).
//!
//! It passes structural validation, the residue identities and every
//! canonical-class axiom (the moment values reuse the CP^4 residue
//! solution, with interior ties splitting each middle point in two), but
//! its profile violates the main inequality. The dimension count then
//! forces a Phi kernel, and the kernel element `α_{a1} - α_{a2}` has a
//! sign-certificate total of -288, certifying that no closed Hamiltonian
//! circle manifold realizes the data.

pub const FABRICATED_B2_GT_B4: &str = r#"{
  "half_dim": 4,
  "points": [
    {"label": "q0",  "moment": "-4", "weights": [1, 2, 3, 4]},
    {"label": "a1",  "moment": "-3", "weights": [-12, 1, 1, 1]},
    {"label": "a2",  "moment": "-3", "weights": [-12, 1, 1, 1]},
    {"label": "m",   "moment": "-2", "weights": [-2, -1, 1, 2]},
    {"label": "b1",  "moment": "-1", "weights": [-1, -1, -12, 1]},
    {"label": "b2",  "moment": "-1", "weights": [-1, -1, -12, 1]},
    {"label": "top", "moment": "0",  "weights": [-1, -2, -3, -4]}
  ],
  "classes": [
    {"name": "q0",  "degree": 0, "restrictions": {"q0": "1", "a1": "1", "a2": "1", "m": "1", "b1": "1", "b2": "1", "top": "1"}},
    {"name": "a1",  "degree": 2, "restrictions": {"a1": "-12", "m": "-12", "b1": "-36", "top": "-24"}},
    {"name": "a2",  "degree": 2, "restrictions": {"a2": "-12", "m": "-12", "b2": "-36", "top": "-24"}},
    {"name": "m",   "degree": 4, "restrictions": {"m": "2", "b1": "4", "b2": "8", "top": "12"}},
    {"name": "b1",  "degree": 6, "restrictions": {"b1": "-12", "top": "-24"}},
    {"name": "b2",  "degree": 6, "restrictions": {"b2": "-12", "top": "-24"}},
    {"name": "top", "degree": 8, "restrictions": {"top": "24"}}
  ]
}"#;
