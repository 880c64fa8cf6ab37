//! Centralized numerical tolerances.
//!
//! Every tolerance used by the library's self-checks and recommended for its
//! test suites lives here, with the rationale for its value, so that accuracy
//! expectations are stated once instead of being scattered through the code.

/// Absolute tolerance for special-function identities (complement and
/// duplication identities of the regularized incomplete beta function,
/// partial-sum identities of the negative binomial distribution). The
/// underlying continued-fraction evaluation is accurate to a few units in the
/// last place, so 1e-12 leaves two to three orders of magnitude of headroom.
pub const IDENTITY_ABS: f64 = 1e-12;

/// Absolute tolerance when comparing walk closed forms against brute-force
/// linear-system oracles on small state spaces.
pub const ORACLE_ABS: f64 = 1e-10;

/// Absolute tolerance when comparing a closed form against its phase-by-phase
/// recomposition on the standard verification grid (moderate parameters, away
/// from the `q → 1/2` boundary).
pub const RECOMPOSITION_ABS: f64 = 1e-10;

/// Base disagreement threshold for the always-on dual-route evaluation inside
/// the model: the primary closed form and its recomposition must agree to
/// this level, relative to the magnitude of the result, wherever rounding
/// cannot amplify errors. Near the `q → 1/2` boundary the threshold is
/// widened by an explicitly computed rounding budget (see
/// [`crate::model`]); this constant alone governs the well-conditioned bulk
/// of the parameter space.
pub const DUAL_ROUTE_REL: f64 = 1e-8;

/// Number of standard errors within which a Monte Carlo estimate is expected
/// to agree with the corresponding closed form.
pub const MONTE_CARLO_SIGMA: f64 = 3.0;

/// Bundle of the tolerance defaults, for callers that want to thread a single
/// configuration record through their own validation harnesses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// See [`IDENTITY_ABS`].
    pub identity_abs: f64,
    /// See [`ORACLE_ABS`].
    pub oracle_abs: f64,
    /// See [`RECOMPOSITION_ABS`].
    pub recomposition_abs: f64,
    /// See [`DUAL_ROUTE_REL`].
    pub dual_route_rel: f64,
    /// See [`MONTE_CARLO_SIGMA`].
    pub monte_carlo_sigma: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            identity_abs: IDENTITY_ABS,
            oracle_abs: ORACLE_ABS,
            recomposition_abs: RECOMPOSITION_ABS,
            dual_route_rel: DUAL_ROUTE_REL,
            monte_carlo_sigma: MONTE_CARLO_SIGMA,
        }
    }
}
