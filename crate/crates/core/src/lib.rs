//! Exact-arithmetic and high-precision verification of classical identities:
//! Apéry-style rational approximations to ζ(3), generalized hypergeometric
//! transformations, Appell-function reductions and series for 1/π, q-series
//! identities of Rogers–Ramanujan type, and the bilinear sequence transform
//! behind them.
//!
//! The crate is organised around small exact kernels:
//!
//! - [`exactnum`]: arbitrary-precision rationals, binomial/Pochhammer/divisor
//!   primitives, and a precision-tagged big-float ([`exactnum::PrecReal`])
//!   with π, ζ(s), sqrt and log constants.
//! - [`qseries`]: truncated formal power series in `q` over the rationals,
//!   with q-Pochhammer, Lambert-series and eta-quotient builders.
//! - [`linform`]: exact partial fractions of rational functions with integer
//!   poles and their summation into linear forms in zeta values.
//! - [`apery`]: the ζ(3) approximation machinery (recursion, binomial sums,
//!   residuals, rates, integrality, triple-integral cross-check).
//! - [`hypergeom`]: single-variable pFq evaluation (exact terminating and
//!   high-precision convergent) plus the Whipple and Clausen checks.
//! - [`appell`]: two-variable F2/F4 series, reduction/transformation checks,
//!   elliptic integrals via AGM, and the 1/π series.
//! - [`baileypair`]: the bilinear alpha/beta/gamma/delta transform, its
//!   q-Gauss specialization, and Rogers–Ramanujan-type derivations.
//! - [`catalog`]: a declarative registry binding every identity to a
//!   verification strategy, plus the (optionally parallel) driver.

pub mod apery;
pub mod appell;
pub mod baileypair;
pub mod catalog;
pub mod error;
pub mod exactnum;
pub mod hypergeom;
pub mod linform;
pub mod qseries;

mod quad;

pub use error::Error;
pub use exactnum::{PrecReal, Rational};
pub use qseries::QSeries;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
