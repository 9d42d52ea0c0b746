//! Toeplitz-type operators twisted by a group point ("lambda-Toeplitz"
//! operators) on Hardy spaces over compact abelian groups whose dual is
//! totally ordered, at desk scale.
//!
//! The crate builds the operators from `(lambda, symbol)` data, compresses
//! them to finite sections over windows of the positive cone, computes
//! rotation, winding and Fredholm indices, essential and full spectra,
//! spectral radii, and ships a verification harness that exercises the
//! defining identities numerically.
//!
//! Entry points:
//! - [`group`]: characters, total orders, cone membership, rotation indices,
//!   character evaluation at group points.
//! - [`symbol`]: trigonometric-polynomial symbols, the modified symbol,
//!   rotations, products, sup norms, log means, winding indices.
//! - [`operator`]: the operator as `(lambda, phi)` data, matrix entries,
//!   finite sections, symbol extraction, the weighted-shift action.
//! - [`spectral`]: spectrum descriptors, Fredholm indices, spectral radii,
//!   resolvent probes.
//! - [`verify`]: the check harness and its bundled catalog.
//! - [`config`]: the experiment config file format used by the CLI.
//!
//! The `examples/` directory has one runnable example per capability; start
//! with `ordered_groups` and `build_sections`.

pub mod config;
pub mod error;
pub mod group;
pub mod linalg;
pub mod operator;
pub mod spectral;
pub mod symbol;
pub mod verify;

pub use error::{Error, Result};
pub use group::{Angle, BruteForceIndex, Character, GroupPoint, GroupSpec};
pub use operator::{FiniteSection, LambdaToeplitz, TruncationWindow};
pub use spectral::{ResolventProbe, SpectrumDescriptor};
pub use symbol::{InvertibilityReport, SampledFunction, Symbol};
pub use verify::CheckReport;
