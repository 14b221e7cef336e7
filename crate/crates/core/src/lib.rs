//! Exact arithmetic for Tarry–Escott (multigrade) equations: verification,
//! normal forms, the Tarry shift, arithmetic-progression blocks, polynomial
//! parametric families, an elliptic-curve generator, Fermat's tangent ascent
//! on quartics, and brute-force search for small ideal solutions.

pub mod cli;
pub mod elliptic;
pub mod error;
pub mod families;
pub mod fermat;
pub mod format;
pub mod poly;
pub mod progression;
pub mod rational;
pub mod search;
pub mod shift;
pub mod solution;

pub use error::{Error, Result};
pub use families::{generate, FamilyId};
pub use format::{parse_solution, to_json};
pub use poly::{verify_identity_family, MultiPoly};
pub use progression::ApBlock;
pub use rational::Q;
pub use shift::{shift_chain, tarry_shift};
pub use solution::{
    classify_symmetry, equivalent, frolov_transform, reduce, verify_degree, MultigradeSolution,
    SymmetryClass, VerifyReport,
};
