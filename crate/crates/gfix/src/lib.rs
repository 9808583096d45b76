//! gfix: a certification toolkit for fixed-point iteration on G-metric type
//! spaces (point sets carrying a ternary distance G and a relaxation
//! constant K).
//!
//! The toolkit represents finite and interval spaces, validates the ternary
//! distance axioms, decides epsilon-chainability with witness paths, checks
//! the hypotheses of a registry of fixed-point theorems, runs Picard and
//! round-robin iteration with explicit a-priori error bounds, and
//! cross-validates everything against an independent brute-force oracle on
//! finite spaces.
//!
//! # Modules
//!
//! - [`gspace`]: space representations, axiom validation, derived metric,
//!   builtin example spaces, JSON schema.
//! - [`map`]: tabulated / affine self-maps, iterates, indexed families.
//! - [`chains`]: epsilon-chainability, witness chains, minimal thresholds.
//! - [`analysis`]: Lipschitz constants, contraction conditions, coefficient
//!   sequences and tensors, series and lambda-sequence certificates.
//! - [`solver`]: Picard iteration, theorem certificates, a-priori bounds.
//! - [`oracle`]: independent exhaustive ground truth on finite spaces.
//! - [`cli`]: the batch front end behind the `gfix` binary.
//!
//! # Examples
//!
//! Each major capability has a runnable example:
//!
//! ```text
//! cargo run -p gfix --example validate_spaces     # axiom reports
//! cargo run -p gfix --example chainability        # thresholds + witnesses
//! cargo run -p gfix --example lipschitz_series    # Lip(T^n) and series
//! cargo run -p gfix --example picard_orbit        # traces + Cauchy check
//! cargo run -p gfix --example certify_ulc         # locally-contractive certs
//! cargo run -p gfix --example certify_sequential  # coefficient-condition certs
//! cargo run -p gfix --example lambda_sequences    # lambda certificates
//! cargo run -p gfix --example common_fixed_point  # map families + oracle
//! ```

pub mod analysis;
pub mod chains;
pub mod cli;
pub mod error;
pub mod gspace;
pub mod map;
pub mod oracle;
pub mod solver;

pub use error::{Error, Result};
