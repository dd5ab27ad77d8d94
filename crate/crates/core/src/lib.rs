//! Exact q-rook theory of Ferrers diagrams through their diagonals.
//!
//! q-rook polynomials (classical, alternating, symmetric), rank distributions
//! of matrices supported on a diagram, and a brute-force finite-field oracle
//! to check them against.

pub mod diagrams;
pub mod error;
pub mod gf_oracle;
pub mod laurent;
pub mod placements;
pub mod qrook;
pub mod sequences;
pub mod verify;

pub use diagrams::{Cell, FerrersDiagram};
pub use error::{Error, Result};
pub use gf_oracle::{FiniteField, RankDistribution};
pub use laurent::LaurentPolynomial;
pub use placements::{PlacementKind, RookPlacement};
pub use qrook::{MatrixKind, QRookContext, SymbolicRankDistribution};
pub use sequences::{FerrersSequence, SymmetricFerrersSequence};
pub use verify::{VerificationReport, VerifyOptions};
