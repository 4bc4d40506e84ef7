//! Crate error type.

use thiserror::Error;

/// Errors reported by the verification kernels.
///
/// Contract violations that a caller can always avoid (negative lengths,
/// out-of-range indices) panic instead; these variants cover conditions that
/// depend on runtime values such as parameters, arguments or budgets.
#[derive(Debug, Error)]
pub enum Error {
    /// Inversion of a power series whose constant term is zero.
    #[error("cannot invert a q-series with zero constant term")]
    ZeroConstantTerm,

    /// A rational-function summand whose simple-pole residues do not cancel.
    #[error("divergent sum over positive integers: residues at simple poles sum to {residue_sum}")]
    DivergentSum { residue_sum: String },

    /// Partial fractions of a non-proper rational function.
    #[error("rational function is not proper: numerator degree {num} >= denominator degree {den}")]
    ImproperRational { num: usize, den: usize },

    /// A lower hypergeometric parameter hit a nonpositive integer before the
    /// series terminated.
    #[error("lower parameter {param} reaches a pole at term {index} before termination")]
    LowerParameterPole { param: String, index: u64 },

    /// Divergent or unsupported parameter/argument combination for a
    /// convergent series evaluation.
    #[error("series does not converge fast enough to certify: {0}")]
    Divergent(String),

    /// Unknown named constant.
    #[error("unknown constant: {0}")]
    UnknownConstant(String),

    /// Parameter outside the documented domain of an operation.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Working precision exhausted (for example a sign certification that
    /// keeps failing as precision is raised).
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    /// An adaptive quadrature or optimizer did not reach its tolerance
    /// within the iteration budget.
    #[error("numerical budget exceeded: {0}")]
    BudgetExceeded(String),

    /// A truncated bilinear-transform sum needs a larger cutoff for the
    /// requested order.
    #[error("cutoff {cutoff} insufficient for order {order}: need at least {required}")]
    CutoffInsufficient { cutoff: usize, order: usize, required: usize },

    /// Unknown catalog identity.
    #[error("unknown identity: {0}")]
    UnknownIdentity(String),

    /// Bad override or unreadable catalog data.
    #[error("invalid catalog data: {0}")]
    InvalidCatalog(String),
}
