//! Computations with dessins d'enfants given as transitive permutation
//! pairs: invariants, automorphisms, regular covers and quotients,
//! isomorphism, exhaustive enumeration, the real-field-of-moduli test, and
//! an exact polynomial-composition pipeline producing Belyi polynomials over
//! the rationals and over number fields.
//!
//! Everything is exact: permutations, big integers, and big rationals. No
//! floating point is used anywhere.

pub mod belyi;
pub mod corpus;
pub mod dessin;
pub mod dot;
pub mod dsnfile;
pub mod enumerate;
pub mod error;
pub mod expr;
pub mod group;
pub mod numfield;
pub mod perm;
pub mod poly;
pub mod word;

pub use dessin::{Dessin, DessinType, Passport};
pub use error::{Error, Result};
pub use group::{
    automorphisms, center, closure, closure_capped, genus_regular_formula, is_regular,
    moduli_conjugators, quotient_by_central_subgroup, quotient_by_partition, real_moduli_test,
    regular_cover, AutomorphismGroup, CartographicGroup, ModuliRealReport, ModuliStatus,
    DEFAULT_GROUP_CAP,
};
pub use perm::Permutation;
pub use word::{FreeWord, Gen, Letter};
