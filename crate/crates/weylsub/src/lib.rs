//! Exact-arithmetic machinery for crystallographic root systems, affine Weyl
//! groups, and their reflection subgroups.
//!
//! Everything is computed over the rationals (no floating point anywhere):
//! roots carry integer coordinates in the simple-root basis, inner products go
//! through an exact Gram matrix, and alcove volumes are values `q·√r` with `q`
//! rational and `r` squarefree.
//!
//! The crate is organised around the pipeline
//!
//! * [`rootsys`] — finite root systems from Cartan types: roots, coroots,
//!   reflections, Weyl group enumeration, coroot/coweight lattices;
//! * [`finsub`] — subsystems of a finite system: simple/np subsets,
//!   elementary extensions, completed-diagram enumeration, closedness;
//! * [`affine`] — the affine root system `Φ + Zδ` and the (extended) affine
//!   Weyl group as exact affine transformations;
//! * [`refsub`] — reflection subgroups of the affine Weyl group under both
//!   parameterisations: `(Γ, f)` pairs and `(Ψ, X)` pairs, with alcoves,
//!   volumes, indices, coset representatives, stabilisers and normalisers;
//! * [`bijmap`] — the bijection between the two parameterisations, computed
//!   algebraically and through alcove geometry;
//! * [`identities`] — brute-force verification of the descent/partition
//!   identities attached to the counting of subgroup parameters;
//! * [`cli`] — the batch command-line surface.
//!
//! Heavy sweeps (Weyl-group scans, subsystem oracles, identity ranges) are
//! data-parallel via `rayon` when the `parallel` feature (default) is on; the
//! same entry points run sequentially when it is off. See [`par`].

pub mod affine;
pub mod bijmap;
pub mod cli;
pub mod finsub;
pub mod identities;
pub mod jsonio;
pub mod linalg;
pub mod par;
pub mod refsub;
pub mod rootsys;

pub use rootsys::{CartanType, LatticeData, Rat, RootSystem, Vector, WeylElement};

use thiserror::Error;

/// Crate-wide error type. The variants map onto the CLI exit codes:
/// validation/usage problems exit 1, internal-consistency violations (a
/// theorem of the underlying theory failing — always a bug) exit 2, and
/// resource-cap hits exit 3.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("internal consistency violation: {0}")]
    Internal(String),
    #[error("resource bound exceeded: {0}")]
    Resource(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    /// Process exit code for this error kind.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Invalid(_) => 1,
            Error::Internal(_) => 2,
            Error::Resource(_) => 3,
        }
    }
}
