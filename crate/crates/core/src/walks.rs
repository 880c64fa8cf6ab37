//! Biased random walks with two absorbing barriers, and the negative
//! binomial partial-sum identities built on top of the incomplete Beta
//! function.
//!
//! The walk takes a right step (+1) with probability `p` and a left step
//! (−1) with probability `q = 1 − p`, with `q < 1/2` so the drift points
//! away from 0. Absorption at 0 is called *ruin* (in the attack model: the
//! attacker catches up and wins); absorption at the upper barrier `M` means
//! the walk escaped (the attacker gives up). All closed forms are expressed
//! through powers of the odds ratio `λ = q/p < 1`.

use crate::error::{Error, Result};
use crate::numeric::{validate_minority_rate, LambdaPowers};
use crate::specfun::{log_beta_unchecked, log_binomial_unchecked, reg_inc_beta_with_complement};

/// A biased walk confined between the absorbing barriers 0 (ruin) and
/// `upper`, started at `start`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WalkSpec {
    p: f64,
    q: f64,
    start: u32,
    upper: u32,
}

impl WalkSpec {
    /// Builds a walk with left-step probability `q ∈ (0, 1/2)` (so
    /// `p = 1 − q`), starting position `start` and upper barrier `upper`,
    /// requiring `0 ≤ start ≤ upper` and `upper ≥ 1`.
    pub fn new(q: f64, start: u32, upper: u32) -> Result<Self> {
        validate_minority_rate(q, "WalkSpec")?;
        if upper == 0 {
            return Err(Error::domain(format!(
                "WalkSpec requires upper barrier >= 1 (got upper={upper})"
            )));
        }
        if start > upper {
            return Err(Error::domain(format!(
                "WalkSpec requires 0 <= start <= upper (got start={start}, upper={upper})"
            )));
        }
        Ok(WalkSpec {
            p: 1.0 - q,
            q,
            start,
            upper,
        })
    }

    /// Right-step probability `p = 1 − q`.
    pub fn p(&self) -> f64 {
        self.p
    }

    /// Left-step probability `q`.
    pub fn q(&self) -> f64 {
        self.q
    }

    /// Odds ratio `λ = q/p < 1`.
    pub fn lambda(&self) -> f64 {
        self.q / self.p
    }

    /// Starting position.
    pub fn start(&self) -> u32 {
        self.start
    }

    /// Upper absorbing barrier.
    pub fn upper(&self) -> u32 {
        self.upper
    }

    fn lambda_powers(&self) -> LambdaPowers {
        LambdaPowers::new(self.p, self.q)
    }
}

/// Probability that the walk hits 0 before its upper barrier:
/// `(λ^m − λ^M)/(1 − λ^M)` for start `m` and barrier `M`.
///
/// Equals 1 at `m = 0` and 0 at `m = M`. Strictly decreasing in `m` and
/// strictly increasing in `q` for interior starts.
pub fn ruin_probability(w: &WalkSpec) -> f64 {
    if w.start == 0 {
        return 1.0;
    }
    if w.start == w.upper {
        return 0.0;
    }
    let lp = w.lambda_powers();
    // λ^m (1 − λ^{M−m}) / (1 − λ^M): same value, no subtractive cancellation.
    lp.pow(w.start as u64) * lp.one_minus_pow((w.upper - w.start) as u64)
        / lp.one_minus_pow(w.upper as u64)
}

/// Expected number of steps until a walk that needs `+x_upper_gap` for one
/// absorption or `−y_lower_gap` for the other hits either barrier.
///
/// With `N = X + Y` (`X = x_upper_gap`, `Y = y_lower_gap`) the closed form
/// is `(N/(p−q)) · ((1−λ^Y)/(1−λ^N) − Y/N)`. The result is in units of
/// steps; each step of the attack model takes one mean-`τ₀` block event.
///
/// # Errors
///
/// [`Error::Domain`] unless `x_upper_gap ≥ 1`, `y_lower_gap ≥ 1` and
/// `q ∈ (0, 1/2)`.
pub fn expected_absorption_time(x_upper_gap: u32, y_lower_gap: u32, q: f64) -> Result<f64> {
    validate_minority_rate(q, "expected_absorption_time")?;
    if x_upper_gap == 0 || y_lower_gap == 0 {
        return Err(Error::domain(format!(
            "expected_absorption_time requires both gaps >= 1 \
             (got x_upper_gap={x_upper_gap}, y_lower_gap={y_lower_gap})"
        )));
    }
    let p = 1.0 - q;
    let lp = LambdaPowers::new(p, q);
    let n = x_upper_gap as u64 + y_lower_gap as u64;
    let y = y_lower_gap as f64;
    let n_f = n as f64;
    Ok(n_f / (p - q) * (lp.one_minus_pow(y_lower_gap as u64) / lp.one_minus_pow(n) - y / n_f))
}

/// Conditional expectation of the number of left steps taken before ruin,
/// given that the walk is ruined (hits 0 before `M`).
///
/// The closed form is
/// `m/2 + [mλ^m(1−λ^{2M−m}) − (2M−m)λ^M(1−λ^m)] / [2p(1−λ)(λ^m−λ^M)(1−λ^M)]`,
/// grouped so that every difference of λ-powers is evaluated without
/// cancellation.
///
/// # Errors
///
/// [`Error::Domain`] if `start == 0` (conditioning is trivial) or
/// `start == upper` (the conditioning event has probability zero).
pub fn expected_left_steps_given_ruin(w: &WalkSpec) -> Result<f64> {
    Ok(left_steps_given_ruin_with_budget(w)?.0)
}

/// [`expected_left_steps_given_ruin`] together with an upper bound on its
/// own rounding error.
///
/// The fraction's numerator is a difference of two products that nearly
/// cancel as `λ → 1`, so the achievable absolute accuracy degrades there;
/// the second component bounds that loss (machine epsilon times the
/// amplification actually incurred) so the model layer can widen its
/// dual-route disagreement gate accordingly instead of raising spurious
/// integrity errors near `q = 1/2`.
pub(crate) fn left_steps_given_ruin_with_budget(w: &WalkSpec) -> Result<(f64, f64)> {
    if w.start == 0 || w.start == w.upper {
        return Err(Error::domain(format!(
            "expected_left_steps_given_ruin requires 1 <= start < upper \
             (got start={}, upper={})",
            w.start, w.upper
        )));
    }
    let m = w.start as u64;
    let big_m = w.upper as u64;
    let lp = w.lambda_powers();
    let t1 = m as f64 * lp.pow(m) * lp.one_minus_pow(2 * big_m - m);
    let t2 = (2 * big_m - m) as f64 * lp.pow(big_m) * lp.one_minus_pow(m);
    let den = 2.0
        * w.p
        * lp.one_minus_lambda()
        * lp.pow(m)
        * lp.one_minus_pow(big_m - m)
        * lp.one_minus_pow(big_m);
    let fraction = (t1 - t2) / den;
    let value = m as f64 / 2.0 + fraction;
    let budget = 16.0 * f64::EPSILON * ((t1.abs() + t2.abs()) / den + fraction.abs() + m as f64);
    Ok((value, budget))
}

/// Parameters of the negative binomial distribution counting failures before
/// the `z`-th success, with per-trial success probability `p`, along with a
/// partial-sum bound `m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NegBinParams {
    p: f64,
    z: u32,
    m: u32,
}

impl NegBinParams {
    /// Requires `0 < p < 1`, `z ≥ 1`, `m ≥ 1`.
    pub fn new(p: f64, z: u32, m: u32) -> Result<Self> {
        if !p.is_finite() || p <= 0.0 || p >= 1.0 {
            return Err(Error::domain(format!(
                "NegBinParams requires 0 < p < 1 (got p={p})"
            )));
        }
        if z == 0 || m == 0 {
            return Err(Error::domain(format!(
                "NegBinParams requires z >= 1 and m >= 1 (got z={z}, m={m})"
            )));
        }
        Ok(NegBinParams { p, z, m })
    }

    /// Per-trial success probability.
    pub fn p(&self) -> f64 {
        self.p
    }

    /// Per-trial failure probability `1 − p`.
    pub fn q(&self) -> f64 {
        1.0 - self.p
    }

    /// Number of successes that ends the trial sequence.
    pub fn z(&self) -> u32 {
        self.z
    }

    /// Exclusive upper bound of the partial sums.
    pub fn m(&self) -> u32 {
        self.m
    }
}

/// Probability of exactly `j` failures before the `z`-th success:
/// `p^z q^j C(z+j−1, j)`. Evaluated in log space so that large `z` and `j`
/// neither overflow the binomial factor nor underflow prematurely.
pub fn negbin_pmf(nb: &NegBinParams, j: u64) -> f64 {
    let z = nb.z as u64;
    (nb.z as f64 * nb.p.ln() + j as f64 * nb.q().ln() + log_binomial_unchecked(z + j - 1, j)).exp()
}

/// The four closed-form partial sums of the negative binomial pmf.
///
/// With `pmf(j) = p^z q^j C(z+j−1,j)` and `λ = q/p`:
///
/// - `s0 = Σ_{j<m} pmf(j) = I_p(z, m)`
/// - `s1 = Σ_{j<m} j·pmf(j) = (qz/p)·I_p(z, m) − p^{z−1} q^m / B(z, m)`
/// - `t0 = Σ_{j<z} pmf(j)·λ^{z−j} = I_q(z, z)` (only defined when `m = z`)
/// - `t1 = Σ_{j<z} j·pmf(j)·λ^{z−j} = (pz/q)·I_q(z, z) − q^{z−1} p^z / B(z, z)`
///   (only defined when `m = z`)
///
/// `t0`/`t1` are `None` when `m ≠ z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NegBinPartialSums {
    pub s0: f64,
    pub s1: f64,
    pub t0: Option<f64>,
    pub t1: Option<f64>,
}

/// Evaluates the partial sums of [`NegBinPartialSums`] through the
/// incomplete Beta function (never by direct summation).
pub fn negbin_partial_sums(nb: &NegBinParams) -> Result<NegBinPartialSums> {
    let p = nb.p;
    let q = nb.q();
    let z = nb.z as f64;
    let m = nb.m as f64;
    let s0 = reg_inc_beta_with_complement(p, q, z, m)?;
    // p^{z−1} q^m / B(z, m), kept in log space: the ratio stays representable
    // long after B(z, m) itself has underflowed.
    let s_tail = ((z - 1.0) * p.ln() + m * q.ln() - log_beta_unchecked(z, m)).exp();
    let s1 = (q * z / p) * s0 - s_tail;
    let (t0, t1) = if nb.m == nb.z {
        let t0 = reg_inc_beta_with_complement(q, p, z, z)?;
        let t_tail = ((z - 1.0) * q.ln() + z * p.ln() - log_beta_unchecked(z, z)).exp();
        (Some(t0), Some((p * z / q) * t0 - t_tail))
    } else {
        (None, None)
    };
    Ok(NegBinPartialSums { s0, s1, t0, t1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ruin_is_certain_from_the_lower_barrier() {
        for upper in [1, 2, 9] {
            let w = WalkSpec::new(0.3, 0, upper).unwrap();
            assert_eq!(ruin_probability(&w), 1.0);
        }
    }

    #[test]
    fn ruin_is_impossible_from_the_upper_barrier() {
        let w = WalkSpec::new(0.3, 5, 5).unwrap();
        assert_eq!(ruin_probability(&w), 0.0);
    }

    #[test]
    fn one_step_from_both_barriers_ruin_equals_q() {
        // start 1, barrier 2: a single decisive step; λ/(1+λ) = q.
        for q in [0.05, 0.2, 0.45, 0.499] {
            let w = WalkSpec::new(q, 1, 2).unwrap();
            assert!((ruin_probability(&w) - q).abs() < 1e-14, "q={q}");
        }
    }

    #[test]
    fn walk_spec_rejects_bad_parameters() {
        assert!(matches!(WalkSpec::new(0.5, 1, 2), Err(Error::Domain(_))));
        assert!(matches!(WalkSpec::new(0.0, 1, 2), Err(Error::Domain(_))));
        assert!(matches!(WalkSpec::new(0.3, 3, 2), Err(Error::Domain(_))));
        assert!(matches!(WalkSpec::new(0.3, 0, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn absorption_time_with_unit_gaps_is_one_step() {
        for q in [0.01, 0.25, 0.49, 0.4999] {
            let t = expected_absorption_time(1, 1, q).unwrap();
            assert!((t - 1.0).abs() < 1e-12, "q={q}: {t}");
        }
    }

    #[test]
    fn absorption_time_rejects_degenerate_gaps() {
        assert!(matches!(
            expected_absorption_time(0, 1, 0.3),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            expected_absorption_time(1, 0, 0.3),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn left_steps_with_a_single_decisive_step_is_one() {
        // start 1, barrier 2: the only ruin path is one immediate left step.
        for q in [0.05, 0.2, 0.45] {
            let w = WalkSpec::new(q, 1, 2).unwrap();
            let l = expected_left_steps_given_ruin(&w).unwrap();
            assert!((l - 1.0).abs() < 1e-13, "q={q}: {l}");
        }
    }

    #[test]
    fn left_steps_rejects_degenerate_conditioning() {
        let at_zero = WalkSpec::new(0.3, 0, 4).unwrap();
        assert!(matches!(
            expected_left_steps_given_ruin(&at_zero),
            Err(Error::Domain(_))
        ));
        let at_barrier = WalkSpec::new(0.3, 4, 4).unwrap();
        assert!(matches!(
            expected_left_steps_given_ruin(&at_barrier),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn negbin_pmf_simple_values() {
        let nb = NegBinParams::new(0.7, 1, 1).unwrap();
        assert!((negbin_pmf(&nb, 0) - 0.7).abs() < 1e-15);
        let nb = NegBinParams::new(0.9, 2, 1).unwrap();
        // p² q C(2,1) = 0.81 · 0.1 · 2
        assert!((negbin_pmf(&nb, 1) - 0.162).abs() < 1e-15);
    }

    #[test]
    fn negbin_params_reject_bad_inputs() {
        assert!(matches!(NegBinParams::new(0.0, 1, 1), Err(Error::Domain(_))));
        assert!(matches!(NegBinParams::new(1.0, 1, 1), Err(Error::Domain(_))));
        assert!(matches!(NegBinParams::new(0.5, 0, 1), Err(Error::Domain(_))));
        assert!(matches!(NegBinParams::new(0.5, 1, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn partial_sums_with_single_term_reduce_to_the_pmf_at_zero() {
        // z = m = 1: only j = 0 contributes, so S0 = p, S1 = 0, T0 = λ·p = q,
        // T1 = 0.
        let nb = NegBinParams::new(0.8, 1, 1).unwrap();
        let sums = negbin_partial_sums(&nb).unwrap();
        assert!((sums.s0 - 0.8).abs() < 1e-14);
        assert!(sums.s1.abs() < 1e-14);
        assert!((sums.t0.unwrap() - 0.2).abs() < 1e-14);
        assert!(sums.t1.unwrap().abs() < 1e-14);
    }

    #[test]
    fn partial_sums_omit_the_lambda_weighted_forms_unless_m_equals_z() {
        let nb = NegBinParams::new(0.8, 2, 3).unwrap();
        let sums = negbin_partial_sums(&nb).unwrap();
        assert!(sums.t0.is_none());
        assert!(sums.t1.is_none());
    }
}
