//! Quantum decoherence simulator for a charged particle on a noncommutative
//! 2D plane in a perpendicular magnetic field.
//!
//! The composite system-environment Hamiltonian is H = H_S + H_E + H_int with
//! a linear interaction H_int = g_ij x_i C_j + f_pq p_p D_q. Noncommutativity
//! of positions (theta) and momenta (sigma) enters through the Bopp shift,
//! the field through minimal coupling k -> k - e A in the symmetric gauge,
//! which folds into four scalar channel coefficients multiplying the q and k
//! couplings. Scenario runs evolve a pure composite state exactly per field
//! segment, trace out the environment, and track basis-resolved l1 coherence
//! to extract decoherence times and classify the field-controlled pointer
//! regime.

pub mod diagnostics;
pub mod dynamics;
pub mod error;
pub mod harness;
pub mod linalg;
pub mod model;
pub mod operators;

pub use error::{Error, Result};
pub use linalg::C64;
pub use operators::{
    bopp_shift, build_canonical_ops, position_eigenbasis, BankLabel, BoppOps, CanonicalOps,
    Eigenbasis, HilbertSpec, NCParams, OperatorMatrix,
};
