//! Exact arithmetic for the Pascal-triangle reproducing kernel Hilbert space.
//!
//! The positive definite kernel `K(x,y) = C(x+y,x)` on the non-negative
//! integers generates a Hilbert space in which the binomial functions
//! `e_n(x) = C(x,n)` form an orthonormal basis. This crate implements that
//! space and its surrounding machinery over arbitrary-precision rationals,
//! so every identity can be checked exactly rather than to floating-point
//! tolerance:
//!
//! - [`combinatorics`]: big-integer binomials, falling factorials, and the
//!   q-deformed (Gaussian) variants.
//! - [`kernels`]: the kernel family (Pascal, lambda-deformed, q-deformed,
//!   sign-conjugated), Gram matrices, and exact positive-definiteness
//!   certificates via leading principal minors.
//! - [`transforms`]: the lower-triangular binomial transform pair working on
//!   prefixes, and the upper-triangular pair working on finitely supported
//!   sequences, together with the kernel bilinear forms.
//! - [`operators`]: exact truncations of the triangular matrices `L(lambda)`,
//!   their one-parameter group law, and the nilpotent generator.
//! - [`rkhs`]: space elements as basis-coefficient vectors; evaluation,
//!   inner products, reproducing property, membership diagnostics.
//! - [`hurwitz`]: exponential generating function side; truncated formal
//!   power series and the intertwining with the inverse transform.
//! - [`hypergroup`]: structure coefficients of the pointwise product
//!   `e_m * e_n` expanded back in the basis.
//! - [`verify`]: a named registry of identity suites producing
//!   machine-readable pass/fail reports.
//!
//! All values are immutable and all operations pure; everything here is safe
//! to call concurrently.

pub mod combinatorics;
pub mod error;
pub mod hurwitz;
pub mod hypergroup;
pub mod kernels;
pub mod operators;
pub mod rkhs;
pub mod transforms;
pub mod verify;

pub use combinatorics::{parse_rat, rat, rat_int, QParam, Rat};
pub use error::Error;
