//! Closed-form economics of the double-spend attack cycle.
//!
//! One attack cycle has three phases: the attacker first mines one secret
//! block (the premine), then lets the merchant collect `z` confirmations
//! while mining privately, and finally races the honest chain until he is
//! one block ahead (success: the official chain is replaced and the
//! double-spent value `v` is recovered together with every attacker block
//! reward) or has fallen `A + 1` blocks behind the position he must beat
//! (failure: all attacker blocks are orphaned, revenue 0).
//!
//! This module evaluates, exactly:
//!
//! - the per-cycle success probability,
//! - the expected revenue per cycle (in coinbase units `b`),
//! - the expected cycle duration (in mean-interblock-time units `τ₀`),
//! - their ratio Γ, the yardstick that is compared against the honest-mining
//!   baseline `Γ_H = q·b/τ₀`,
//! - and the asymptotic approximations of all of the above.
//!
//! Every quantity with a long closed form is also recomputed through its
//! phase decomposition — a negative-binomial mixture over the phase-2 block
//! count composed with the walk formulas of [`crate::walks`] — and the two
//! routes must agree within a computed error budget on every call. A
//! disagreement beyond the budget means a transcription or logic defect and
//! surfaces as [`Error::Integrity`] rather than a silently wrong number.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{validate_minority_rate, KahanSum, LambdaPowers};
use crate::specfun::{
    log_beta_unchecked, log_binomial_unchecked, reg_inc_beta_with_complement,
};
use crate::tolerances::DUAL_ROUTE_REL;
use crate::walks::{
    expected_absorption_time, left_steps_given_ruin_with_budget, negbin_partial_sums, negbin_pmf,
    ruin_probability, NegBinParams, WalkSpec,
};

/// Default coinbase reward used for display purposes (in native currency
/// units).
pub const DEFAULT_COINBASE: f64 = 12.5;

/// Default mean interblock time used for display purposes, in seconds.
pub const DEFAULT_BLOCK_INTERVAL_SECS: f64 = 600.0;

/// Parameters of one attack configuration.
///
/// All monetary quantities are handled in units of the coinbase `b` and all
/// times in units of the mean interblock time `τ₀`; the `b` and `tau0`
/// fields are carried for display only and never enter the arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AttackParams {
    q: f64,
    z: u32,
    a: u32,
    v: f64,
    b: f64,
    tau0: f64,
}

impl AttackParams {
    /// Builds a parameter set with the default display units
    /// ([`DEFAULT_COINBASE`], [`DEFAULT_BLOCK_INTERVAL_SECS`]).
    ///
    /// Invariants: `0 < q < 1/2`, `z ≥ 1`, `A ≥ z`, `v ≥ 0`.
    pub fn new(q: f64, z: u32, a: u32, v: f64) -> Result<Self> {
        validate_minority_rate(q, "AttackParams")?;
        if z == 0 {
            return Err(Error::domain(format!(
                "AttackParams requires z >= 1 confirmations (got z={z})"
            )));
        }
        if a < z {
            return Err(Error::domain(format!(
                "AttackParams requires the give-up threshold A >= z (got A={a}, z={z})"
            )));
        }
        if !v.is_finite() || v < 0.0 {
            return Err(Error::domain(format!(
                "AttackParams requires a double-spend value v >= 0 (got v={v})"
            )));
        }
        Ok(AttackParams {
            q,
            z,
            a,
            v,
            b: DEFAULT_COINBASE,
            tau0: DEFAULT_BLOCK_INTERVAL_SECS,
        })
    }

    /// Replaces the display-only units. Requires `b > 0` and `tau0 > 0`.
    pub fn with_display_units(mut self, b: f64, tau0: f64) -> Result<Self> {
        if !b.is_finite() || b <= 0.0 {
            return Err(Error::domain(format!(
                "AttackParams requires a coinbase b > 0 (got b={b})"
            )));
        }
        if !tau0.is_finite() || tau0 <= 0.0 {
            return Err(Error::domain(format!(
                "AttackParams requires an interblock time tau0 > 0 (got tau0={tau0})"
            )));
        }
        self.b = b;
        self.tau0 = tau0;
        Ok(self)
    }

    /// Returns a copy with a different double-spend value, keeping everything
    /// else. Requires `v ≥ 0`.
    pub fn with_value(mut self, v: f64) -> Result<Self> {
        if !v.is_finite() || v < 0.0 {
            return Err(Error::domain(format!(
                "AttackParams requires a double-spend value v >= 0 (got v={v})"
            )));
        }
        self.v = v;
        Ok(self)
    }

    /// Returns a copy with a different give-up threshold `A ≥ z`.
    pub fn with_threshold(mut self, a: u32) -> Result<Self> {
        if a < self.z {
            return Err(Error::domain(format!(
                "AttackParams requires the give-up threshold A >= z (got A={a}, z={})",
                self.z
            )));
        }
        self.a = a;
        Ok(self)
    }

    /// Attacker's relative hashrate `q ∈ (0, 1/2)`.
    pub fn q(&self) -> f64 {
        self.q
    }

    /// Honest majority's relative hashrate `p = 1 − q`.
    pub fn p(&self) -> f64 {
        1.0 - self.q
    }

    /// Odds ratio `λ = q/p`.
    pub fn lambda(&self) -> f64 {
        self.q / self.p()
    }

    /// Confirmations requested by the merchant.
    pub fn z(&self) -> u32 {
        self.z
    }

    /// Give-up lag threshold.
    pub fn a(&self) -> u32 {
        self.a
    }

    /// Double-spend value in coinbase units.
    pub fn v(&self) -> f64 {
        self.v
    }

    /// Coinbase reward (display only).
    pub fn b(&self) -> f64 {
        self.b
    }

    /// Mean interblock time in seconds (display only).
    pub fn tau0(&self) -> f64 {
        self.tau0
    }
}

/// The complete closed-form evaluation of one parameter set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClosedFormReport {
    /// Probability that an attack cycle succeeds.
    pub p_success: f64,
    /// Expected revenue per cycle, in coinbase units.
    pub e_revenue_b: f64,
    /// Expected cycle duration, in mean-interblock-time units.
    pub e_duration_tau0: f64,
    /// Revenue ratio of the attack, in units of `b/τ₀`.
    pub gamma_attack: f64,
    /// Revenue ratio of honest mining in the same units: exactly `q`.
    pub gamma_honest: f64,
    /// Whether the attack strictly beats honest mining
    /// (`gamma_attack > gamma_honest`; equality counts as not profitable).
    pub profitable: bool,
}

/// Precomputed quantities shared by the closed forms of one parameter set.
struct CommonTerms {
    p: f64,
    q: f64,
    /// `p − q`, exact near `q = 1/2`.
    delta: f64,
    lp: LambdaPowers,
    /// `I_{4pq}(z, 1/2)`: probability that the attacker, mining from one
    /// block behind with unlimited patience, ever produces a chain as long
    /// as `z` more honest blocks.
    i_4pq: f64,
    /// `I_{(p−q)²}(1/2, z)`, the complement of `i_4pq`.
    i_delta_sq: f64,
    /// `p^{z−1} q^z / B(z, z)`, evaluated in log space.
    g: f64,
    /// `λ^{A+1}`.
    lam_a1: f64,
    /// `1 − λ^{A+1}`, evaluated without cancellation.
    om_a1: f64,
}

impl CommonTerms {
    fn new(params: &AttackParams) -> Result<Self> {
        let q = params.q;
        let p = 1.0 - q;
        // Exact when q >= 1/4 (the operands are within a factor of two), and
        // fully accurate otherwise; never forms 1 - q/p.
        let delta = p - q;
        let z = params.z as f64;
        let four_pq = 4.0 * p * q;
        let delta_sq = delta * delta;
        let i_4pq = reg_inc_beta_with_complement(four_pq, delta_sq, z, 0.5)?;
        let i_delta_sq = reg_inc_beta_with_complement(delta_sq, four_pq, 0.5, z)?;
        let g = ((z - 1.0) * p.ln() + z * q.ln() - log_beta_unchecked(z, z)).exp();
        let lp = LambdaPowers::new(p, q);
        let a1 = params.a as u64 + 1;
        Ok(CommonTerms {
            p,
            q,
            delta,
            i_4pq,
            i_delta_sq,
            g,
            lam_a1: lp.pow(a1),
            om_a1: lp.one_minus_pow(a1),
            lp,
        })
    }
}

/// Compares the primary closed form against its phase recomposition and
/// fails with [`Error::Integrity`] when they disagree beyond the combined
/// gate: the base relative tolerance plus whatever rounding amplification
/// the recomposition itself reported (which only matters near `q → 1/2`).
fn check_dual_route(quantity: &str, primary: f64, recomposed: f64, budget: f64) -> Result<()> {
    let gate = (DUAL_ROUTE_REL * primary.abs().max(1.0)).max(budget);
    let diff = (primary - recomposed).abs();
    if !diff.is_finite() || diff > gate {
        return Err(Error::Integrity(format!(
            "{quantity}: closed form {primary:e} and phase recomposition {recomposed:e} \
             differ by {diff:e} (allowed {gate:e})"
        )));
    }
    Ok(())
}

/// Probability that an attack cycle succeeds:
/// `(I_{4pq}(z, 1/2) − λ^{A+1}) / (1 − λ^{A+1})`.
///
/// Strictly increasing in the give-up threshold `A`, approaching
/// [`success_probability_inf`] from below.
pub fn success_probability(params: &AttackParams) -> Result<f64> {
    let terms = CommonTerms::new(params)?;
    let primary = success_probability_from(&terms);
    let recomposed = success_probability_by_phase_mixture(params)?;
    check_dual_route("success_probability", primary, recomposed, 0.0)?;
    Ok(primary)
}

fn success_probability_from(terms: &CommonTerms) -> f64 {
    (terms.i_4pq - terms.lam_a1) / terms.om_a1
}

/// Limit of [`success_probability`] as the give-up threshold grows without
/// bound: `I_{4pq}(z, 1/2)`. An upper bound for every finite threshold.
pub fn success_probability_inf(q: f64, z: u32) -> Result<f64> {
    validate_minority_rate(q, "success_probability_inf")?;
    if z == 0 {
        return Err(Error::domain(format!(
            "success_probability_inf requires z >= 1 (got z={z})"
        )));
    }
    let p = 1.0 - q;
    let delta = p - q;
    reg_inc_beta_with_complement(4.0 * p * q, delta * delta, z as f64, 0.5)
}

/// [`success_probability`] recomputed from first principles: condition on
/// the number `j` of attacker blocks mined during the `z` confirmations
/// (negative binomial), then either the attacker is already ahead (`j ≥ z`)
/// or he must win a ruin race from lag `z − j` with give-up barrier `A + 1`.
pub fn success_probability_by_phase_mixture(params: &AttackParams) -> Result<f64> {
    let p = params.p();
    let nb = NegBinParams::new(p, params.z, params.z)?;
    let already_ahead = 1.0 - negbin_partial_sums(&nb)?.s0;
    let mut acc = KahanSum::new();
    acc.add(already_ahead);
    for j in 0..params.z {
        let lag = params.z - j;
        let walk = WalkSpec::new(params.q, lag, params.a + 1)?;
        acc.add(negbin_pmf(&nb, j as u64) * ruin_probability(&walk));
    }
    Ok(acc.value())
}

/// Expected cycle duration in units of `τ₀`:
///
/// `E[T]/τ₀ = (z/2p)·I_{4pq}(z,1/2) + ((A+1)/((p−q)(1−λ^{A+1})))·I_{(p−q)²}(1/2,z)
///            − (p^{z−1}q^z)/((p−q)B(z,z)) + 1/q`.
///
/// Always at least `1/q` (the premine phase alone).
pub fn expected_duration(params: &AttackParams) -> Result<f64> {
    let terms = CommonTerms::new(params)?;
    let primary = expected_duration_from(params, &terms);
    let (recomposed, budget) = expected_duration_by_phase_mixture_with_budget(params)?;
    check_dual_route("expected_duration", primary, recomposed, budget)?;
    Ok(primary)
}

fn expected_duration_from(params: &AttackParams, terms: &CommonTerms) -> f64 {
    let z = params.z as f64;
    let a1 = params.a as f64 + 1.0;
    z / (2.0 * terms.p) * terms.i_4pq + a1 / (terms.delta * terms.om_a1) * terms.i_delta_sq
        - terms.g / terms.delta
        + 1.0 / terms.q
}

/// An algebraically equivalent second closed form for [`expected_duration`],
/// kept as an independent numerical route for verification:
///
/// `E[T]/τ₀ = 1/q + K − D + (z/p − 2K)·I_q(z,z)` with
/// `K = (A+1)/((p−q)(1−λ^{A+1}))` and `D = p^{z−1}q^z/((p−q)B(z,z))`.
pub fn expected_duration_second_form(params: &AttackParams) -> Result<f64> {
    let terms = CommonTerms::new(params)?;
    let z = params.z as f64;
    let a1 = params.a as f64 + 1.0;
    let i_q = reg_inc_beta_with_complement(terms.q, terms.p, z, z)?;
    let k = a1 / (terms.delta * terms.om_a1);
    let d = terms.g / terms.delta;
    Ok(1.0 / terms.q + k - d + (z / terms.p - 2.0 * k) * i_q)
}

/// [`expected_duration`] recomputed phase by phase: premine (`1/q`), the
/// `z` confirmations (`z/p`), and for each under-water phase-2 outcome the
/// expected absorption time of the final race.
pub fn expected_duration_by_phase_mixture(params: &AttackParams) -> Result<f64> {
    Ok(expected_duration_by_phase_mixture_with_budget(params)?.0)
}

fn expected_duration_by_phase_mixture_with_budget(params: &AttackParams) -> Result<(f64, f64)> {
    let p = params.p();
    let q = params.q;
    let delta = p - q;
    let nb = NegBinParams::new(p, params.z, params.z)?;
    let mut acc = KahanSum::new();
    acc.add(1.0 / q);
    acc.add(params.z as f64 / p);
    let mut budget = 16.0 * f64::EPSILON * (1.0 / q + params.z as f64 / p);
    for j in 0..params.z {
        let lag = params.z - j;
        let x_gap = params.a + 1 - lag;
        if x_gap == 0 {
            // Unreachable for A >= z, but keep the arithmetic honest.
            continue;
        }
        let weight = negbin_pmf(&nb, j as u64);
        let time = expected_absorption_time(x_gap, lag, q)?;
        acc.add(weight * time);
        // The absorption-time bracket is a difference of O(1) terms scaled
        // by (X+Y)/(p−q); bound the rounding amplification accordingly.
        budget += 16.0 * f64::EPSILON * weight * (x_gap as f64 + lag as f64) / delta;
    }
    Ok((acc.value(), budget))
}

/// Expected revenue per cycle in units of `b`:
///
/// `E[R]/b = (qz/2p)·I_{4pq}(z,1/2)
///           − ((A+1)λ^{A+1} / (p(1−λ)(1−λ^{A+1})²))·I_{(p−q)²}(1/2,z)
///           + ((2−λ+λ^{A+2}) / ((1−λ)(1−λ^{A+1})))·p^{z−1}q^z/B(z,z)
///           + P_A(z)·(v + 1)`.
///
/// Affine in `v` with slope [`success_probability`], which is what makes the
/// profitability threshold exactly invertible.
pub fn expected_revenue(params: &AttackParams) -> Result<f64> {
    let terms = CommonTerms::new(params)?;
    let primary = expected_revenue_from(params, &terms);
    let (recomposed, budget) = expected_revenue_by_phase_mixture_with_budget(params)?;
    check_dual_route("expected_revenue", primary, recomposed, budget)?;
    Ok(primary)
}

fn expected_revenue_from(params: &AttackParams, terms: &CommonTerms) -> f64 {
    let z = params.z as f64;
    let a1 = params.a as f64 + 1.0;
    let olm = terms.lp.one_minus_lambda();
    let lam_a2 = terms.lp.pow(params.a as u64 + 2);
    let catch_up = success_probability_from(terms);
    terms.q * z / (2.0 * terms.p) * terms.i_4pq
        - a1 * terms.lam_a1 / (terms.p * olm * terms.om_a1 * terms.om_a1) * terms.i_delta_sq
        + (2.0 - terms.lp.lambda() + lam_a2) / (olm * terms.om_a1) * terms.g
        + catch_up * (params.v + 1.0)
}

/// [`expected_revenue`] recomputed phase by phase. A cycle that is already
/// won at the end of phase 2 (`j ≥ z` attacker blocks) pays `j + 1 + v`; a
/// cycle that enters the final race pays `j + 1 + v` plus one coinbase per
/// left step of the race, and only if the race is won.
pub fn expected_revenue_by_phase_mixture(params: &AttackParams) -> Result<f64> {
    Ok(expected_revenue_by_phase_mixture_with_budget(params)?.0)
}

fn expected_revenue_by_phase_mixture_with_budget(params: &AttackParams) -> Result<(f64, f64)> {
    let p = params.p();
    let q = params.q;
    let z = params.z as f64;
    let v = params.v;
    let nb = NegBinParams::new(p, params.z, params.z)?;
    let sums = negbin_partial_sums(&nb)?;
    // Σ_{j≥z} pmf(j)·(j + 1 + v) through the closed-form partial sums: the
    // full mean of the block count is qz/p.
    let tail_count = 1.0 - sums.s0;
    let tail_blocks = q * z / p - sums.s1;
    let mut acc = KahanSum::new();
    acc.add(tail_blocks);
    acc.add(tail_count * (1.0 + v));
    let mut budget = 16.0 * f64::EPSILON * (q * z / p + sums.s1.abs() + (1.0 + v) * tail_count);
    for j in 0..params.z {
        let lag = params.z - j;
        let walk = WalkSpec::new(q, lag, params.a + 1)?;
        let weight = negbin_pmf(&nb, j as u64);
        let ruin = ruin_probability(&walk);
        let (left_steps, left_budget) = left_steps_given_ruin_with_budget(&walk)?;
        let payoff = j as f64 + 1.0 + v + left_steps;
        acc.add(weight * ruin * payoff);
        budget += weight * ruin * (left_budget + 16.0 * f64::EPSILON * payoff);
    }
    Ok((acc.value(), budget))
}

/// Revenue ratio of the attack, `Γ = E[R]/E[T]`, in units of `b/τ₀`.
pub fn revenue_ratio(params: &AttackParams) -> Result<f64> {
    Ok(expected_revenue(params)? / expected_duration(params)?)
}

/// Revenue ratio of honest mining in the same `b/τ₀` units: exactly `q`.
pub fn honest_revenue_ratio(q: f64) -> Result<f64> {
    validate_minority_rate(q, "honest_revenue_ratio")?;
    Ok(q)
}

/// Evaluates every closed form for one parameter set.
pub fn closed_form_report(params: &AttackParams) -> Result<ClosedFormReport> {
    let p_success = success_probability(params)?;
    let e_revenue_b = expected_revenue(params)?;
    let e_duration_tau0 = expected_duration(params)?;
    let gamma_attack = e_revenue_b / e_duration_tau0;
    let gamma_honest = params.q;
    Ok(ClosedFormReport {
        p_success,
        e_revenue_b,
        e_duration_tau0,
        gamma_attack,
        gamma_honest,
        profitable: gamma_attack > gamma_honest,
    })
}

/// One asymptotic approximation next to the exact value it approximates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticEntry {
    /// The asymptotic estimate.
    pub estimate: f64,
    /// The exactly evaluated quantity.
    pub exact: f64,
    /// `|estimate − exact| / |exact|`.
    pub relative_gap: f64,
}

impl AsymptoticEntry {
    fn new(estimate: f64, exact: f64) -> Self {
        AsymptoticEntry {
            estimate,
            exact,
            relative_gap: (estimate - exact).abs() / exact.abs(),
        }
    }
}

/// The asymptotic regimes of the model, each evaluated alongside its exact
/// counterpart. Purely informational: nothing downstream branches on these.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticReport {
    /// Large-`z` tail of the unlimited-patience catch-up probability:
    /// `s^z / √(π(1−s)z)` with `s = 4pq`, versus `I_{4pq}(z, 1/2)`.
    pub catch_up_tail: AsymptoticEntry,
    /// Small-`q` expected revenue:
    /// `[2·C(2z−1, z)·(v+1) + 2/B(z,z)]·q^z` versus the exact `E[R]/b`.
    pub revenue_small_q: AsymptoticEntry,
    /// Small-`q` expected duration: `1/q` versus the exact `E[T]/τ₀`.
    pub duration_small_q: AsymptoticEntry,
    /// Small-`q` revenue ratio:
    /// `[2·C(2z−1, z)·(v+1) + 2/B(z,z)]·q^{z+1}` versus the exact `Γ`.
    pub gamma_small_q: AsymptoticEntry,
    /// Large-`A` duration growth: the slope `I_{(p−q)²}(1/2, z)/(p−q)`
    /// versus the realized per-threshold duration `E[T]/(τ₀·A)`.
    pub duration_slope_large_a: AsymptoticEntry,
}

/// Evaluates [`AsymptoticReport`] for one parameter set.
pub fn asymptotics(params: &AttackParams) -> Result<AsymptoticReport> {
    let terms = CommonTerms::new(params)?;
    let z = params.z as f64;
    let q = params.q;
    let s = 4.0 * terms.p * q;
    let one_minus_s = terms.delta * terms.delta;
    let exact_p_inf = terms.i_4pq;
    let tail_estimate =
        (z * s.ln()).exp() / (std::f64::consts::PI * one_minus_s * z).sqrt();

    // Both terms of the small-q coefficient are evaluated in log space so
    // that large z neither overflows the binomial factor nor underflows the
    // Beta ratio.
    let zq_log = z * q.ln();
    let log_two_binom = std::f64::consts::LN_2
        + log_binomial_unchecked(2 * params.z as u64 - 1, params.z as u64);
    let revenue_estimate = (log_two_binom + zq_log).exp() * (params.v + 1.0)
        + 2.0 * (zq_log - log_beta_unchecked(z, z)).exp();
    let exact_revenue = expected_revenue(params)?;
    let exact_duration = expected_duration(params)?;
    let gamma_estimate = revenue_estimate * q;
    let exact_gamma = exact_revenue / exact_duration;

    let slope_estimate = terms.i_delta_sq / terms.delta;
    let realized_slope = exact_duration / params.a as f64;

    Ok(AsymptoticReport {
        catch_up_tail: AsymptoticEntry::new(tail_estimate, exact_p_inf),
        revenue_small_q: AsymptoticEntry::new(revenue_estimate, exact_revenue),
        duration_small_q: AsymptoticEntry::new(1.0 / q, exact_duration),
        gamma_small_q: AsymptoticEntry::new(gamma_estimate, exact_gamma),
        duration_slope_large_a: AsymptoticEntry::new(slope_estimate, realized_slope),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(q: f64, z: u32, a: u32, v: f64) -> AttackParams {
        AttackParams::new(q, z, a, v).unwrap()
    }

    #[test]
    fn params_validation_names_the_violated_invariant() {
        let err = AttackParams::new(0.6, 2, 3, 1.0).unwrap_err();
        assert!(err.to_string().contains("(0, 1/2)"), "{err}");
        assert!(matches!(AttackParams::new(0.1, 0, 3, 1.0), Err(Error::Domain(_))));
        assert!(matches!(AttackParams::new(0.1, 4, 3, 1.0), Err(Error::Domain(_))));
        assert!(matches!(AttackParams::new(0.1, 2, 3, -1.0), Err(Error::Domain(_))));
        assert!(matches!(
            AttackParams::new(0.1, 2, 3, 1.0).unwrap().with_display_units(0.0, 600.0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            AttackParams::new(0.1, 2, 3, 1.0).unwrap().with_display_units(12.5, -1.0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn success_probability_vanishes_with_the_hashrate() {
        let p = success_probability(&params(1e-9, 3, 5, 1.0)).unwrap();
        assert!(p >= 0.0 && p < 1e-20, "{p}");
    }

    #[test]
    fn unlimited_patience_with_one_confirmation_is_two_q() {
        // I_{4pq}(1, 1/2) = 1 − √(1−4pq) = 1 − (p−q) = 2q.
        for q in [0.05, 0.17, 0.3, 0.45] {
            let p_inf = success_probability_inf(q, 1).unwrap();
            assert!((p_inf - 2.0 * q).abs() < 1e-13, "q={q}: {p_inf}");
        }
    }

    #[test]
    fn revenue_is_affine_in_v_with_slope_p_success() {
        for (q, z, a) in [(0.1, 2, 3), (0.3, 3, 6), (0.45, 1, 4)] {
            let at = |v: f64| expected_revenue(&params(q, z, a, v)).unwrap();
            let slope = at(1.0) - at(0.0);
            let p = success_probability(&params(q, z, a, 0.0)).unwrap();
            assert!((slope - p).abs() < 1e-12, "q={q} z={z} A={a}");
        }
    }

    #[test]
    fn duration_never_beats_the_premine_wait() {
        for (q, z, a) in [(0.05, 1, 1), (0.2, 3, 7), (0.45, 2, 10)] {
            let t = expected_duration(&params(q, z, a, 1.0)).unwrap();
            assert!(t >= 1.0 / q, "q={q}: {t} < {}", 1.0 / q);
        }
    }

    #[test]
    fn duration_approaches_the_premine_wait_for_small_q() {
        let t = expected_duration(&params(0.01, 1, 2, 1.0)).unwrap();
        assert!((t - 100.0).abs() / 100.0 < 0.05, "{t}");
    }

    #[test]
    fn honest_ratio_is_q_itself() {
        assert_eq!(honest_revenue_ratio(0.37).unwrap(), 0.37);
        assert!(matches!(honest_revenue_ratio(0.5), Err(Error::Domain(_))));
    }

    #[test]
    fn report_fields_are_mutually_consistent() {
        let report = closed_form_report(&params(0.1, 2, 3, 1.0)).unwrap();
        assert_eq!(
            report.gamma_attack,
            report.e_revenue_b / report.e_duration_tau0
        );
        assert_eq!(report.gamma_honest, 0.1);
        assert_eq!(
            report.profitable,
            report.gamma_attack > report.gamma_honest
        );
        assert!(report.p_success > 0.0 && report.p_success < 1.0);
    }

    #[test]
    fn second_form_matches_the_primary_duration() {
        for (q, z, a) in [(0.05, 1, 1), (0.1, 2, 3), (0.3, 4, 9), (0.45, 2, 12)] {
            let p = params(q, z, a, 1.0);
            let primary = expected_duration(&p).unwrap();
            let second = expected_duration_second_form(&p).unwrap();
            assert!((primary - second).abs() < 1e-10, "q={q} z={z} A={a}");
        }
    }
}
