//! Fourier analysis on finite abelian groups.
//!
//! A finite abelian group is handled as a product of cyclic groups
//! `Z_{n_1} × … × Z_{n_k}` with row-major mixed-radix element indexing.
//! On top of that the crate provides:
//!
//! * [`transform`]: the Fourier transform (a direct reference sum and a fast
//!   mixed-radix / Bluestein path), both products of the group algebra and the
//!   involution `f*(x) = conj(f(-x))`;
//! * [`characterize`]: a checker for the algebraic laws an operator must obey
//!   to be "essentially the Fourier transform", and a constructive recovery of
//!   the underlying automorphism `ψ` and conjugation flag from a black box;
//! * [`io`] and [`cli`]: JSON file formats and the `abfourier` command line.
//!
//! Measures are fixed once and for all: counting measure on `G`, and
//! `1/|G|` times counting measure on the dual. With these weights the
//! transform exchanges convolution and pointwise product in both directions
//! and the inverse transform carries the `1/|G|` factor.
//!
//! ```
//! use abelian_fourier::{Group, GFunction};
//!
//! let g = Group::new(&[4, 2]).unwrap();
//! let delta = GFunction::delta(&g, 0);
//! let spectrum = delta.fft_forward().unwrap();
//! assert!(spectrum.values().iter().all(|v| (v - 1.0).norm() < 1e-12));
//! ```

pub mod bench;
pub mod characterize;
pub mod cli;
mod error;
pub mod group;
pub mod io;
pub mod random;
pub mod transform;

pub use characterize::{
    build_reference_operator, check_hypotheses, recover, verify_recovery, Form, HypothesisReport,
    Operator, RecoverOptions, RecoveryFailure, RecoveryReport,
};
pub use error::{Error, Result};
pub use group::{is_automorphism, random_automorphism, Automorphism, Element, Group};
pub use transform::{GFunction, Side, SupportSet};

pub use num_complex::Complex64;

/// Version string embedded in generated reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
