//! Numerical toolkit for the two-site Yangian Y(su(3)) acting on
//! quark-antiquark flavour qutrits.
//!
//! The crate is organised bottom-up:
//!
//! * [`su3`]: Gell-Mann matrices, fundamental/conjugate generators and the
//!   trace-derived structure constants.
//! * [`pair_state`]: nine-amplitude pure states on `q ⊗ q̄`, partial traces,
//!   base-3 Von Neumann entropy and the mean-entropy entanglement degree.
//! * [`meson`]: the light pseudoscalar nonet as an orthonormal basis.
//! * [`yangian`] and [`expr`]: the deformed two-site generators `J^a`, their
//!   ladder combinations and a small grammar for transition operators.
//! * [`claims`]: executable checks of the worked examples, figure sweeps and
//!   JSON/CSV reporting.
//!
//! Flattened pair index convention (public contract): quark `q` and antiquark
//! `q̄`, both ordered `u, d, s` as `0, 1, 2`, live at index `3 * q + q̄`.

pub mod claims;
pub mod error;
pub mod expr;
pub mod format;
pub mod meson;
pub mod pair_state;
pub mod su3;
pub mod yangian;

pub use error::{Error, Result};
pub use num_complex::Complex64;
