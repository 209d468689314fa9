//! Finite-ring computer algebra: Cayley-table rings, generalized
//! inverses (group, Drazin, pseudo-Drazin, generalized Drazin), strongly
//! clean and polar decompositions, constructive transfer formulas between
//! ab and ba, corner-ring equivalences, and an exhaustive verifier that
//! checks each of those statements over a registry of concrete rings.

pub mod inverses;
pub mod ring;
pub mod structure;
pub mod transfer;
pub mod verifier;
