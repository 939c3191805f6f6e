//! Exact approximation numbers of the embeddings `W_2^R(T^d) -> L_2(T^d)` and
//! `W_2^∞(T^d) -> L_2(T^d)`, the explicit constants and envelopes that bound
//! them, and information-complexity diagnostics built on top.
//!
//! The approximation numbers of these diagonal embeddings are the
//! non-increasing rearrangement of the weights `(1 + S(k))^{-1/2}` over
//! `k ∈ Z^d`, where `S(k) = Σ_j |k_j|^{2 R_j}`. Everything here is built on
//! exact lattice-point counting; no part of `Z^d` is materialized.

// negated float comparisons are deliberate: they route NaN to the rejecting branch
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bigmath;
pub mod envelopes;
pub mod error;
pub mod gamma;
pub mod lattice;
pub mod limitspace;
pub mod oracle;
pub mod profile;
pub mod spectrum;
pub mod tractability;
pub mod volumetrics;

pub use envelopes::{Envelope, Regime, Sandwich, StrongEquivBracket};
pub use error::{Error, Result};
pub use lattice::{AchievedBudgets, CountResult, Lattice, LatticePoint};
pub use limitspace::{LimitShell, ShellIndexBracket};
pub use profile::SmoothnessProfile;
pub use spectrum::{Spectrum, SpectrumEntry};
pub use tractability::{Space, TractabilityReport};
pub use volumetrics::LogVolume;
