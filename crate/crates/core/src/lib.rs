//! Lattice codes in the Lee and Manhattan metrics.
//!
//! Everything is exact: generator matrices hold arbitrary-precision integers,
//! volumes and densities are rationals, and every claimed code parameter can be
//! re-derived by brute-force search over weight shells of `Z^n`.
//!
//! ```
//! use leecodes::{analyzer, constructions};
//!
//! let g4 = constructions::gn(4).unwrap();
//! let d = analyzer::min_distance(&g4, 8).unwrap().d;
//! let cert = analyzer::certify(&g4, d).unwrap();
//! assert_eq!(d, 4);
//! assert_eq!(cert.kind, analyzer::CertificateKind::DiameterPerfect);
//! ```

pub mod analyzer;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod hadamard;
pub mod intlat;
pub mod metric;
pub mod xform;

pub use error::{Error, Result};
pub use intlat::{CodeParams, IntMatrix, Lattice};
