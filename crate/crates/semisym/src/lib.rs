//! Exact-arithmetic toolkit for semi-symmetric curvature tensors on
//! neutral pseudo-Euclidean spaces.
//!
//! The crate builds curvature tensors as symmetric bilinear forms on the
//! bivector space of a pseudo-Euclidean vector space, decides the Bianchi
//! identity, semi-symmetry, Ricci type and holonomy exactly over the
//! rationals extended by free parameters, recomputes the curvature-tensor
//! spaces `R(g)` and `g_sym` for a built-in catalogue of Lie subalgebras
//! of `so(2,2)`, and runs a verification pipeline for homogeneous pairs
//! (invariant metrics, Levi-Civita data, curvature, Ricci, semi-symmetry
//! and local-symmetry verdicts).
//!
//! Start with the runnable examples (`cargo run --example catalogue_sweep`)
//! or the `semisym` binary (`catalogue`, `tensor`, `pair`, `group`
//! subcommands).

pub mod exact;
pub mod space;
pub mod curvature;
pub mod liealg;
pub mod catalogue;
pub mod homogeneous;
pub mod cli;
pub mod report;
pub mod tables;

pub use exact::{Assignment, Matrix, Scalar, Sym, UniPoly};
