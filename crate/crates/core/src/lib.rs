//! Exact computations around the cohomology of nilpotent Lie algebras:
//! Chevalley–Eilenberg complexes, minimal A∞-models by homotopy transfer,
//! generation in degree one, bar constructions and the PBW comparison, and
//! the symmetric-function identities that come with free nilpotent algebras.

pub mod bar_pbw;
pub mod chevalley;
pub mod free_lie;
pub mod generation;
pub mod lie;
pub mod linalg;
pub mod symfun;
pub mod transfer;
