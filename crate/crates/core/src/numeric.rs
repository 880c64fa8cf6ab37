//! Internal numeric helpers shared by the walk and model layers.

use crate::error::{Error, Result};

/// Checks that an attacker hashrate (equivalently a left-step probability)
/// lies strictly inside `(0, 1/2)`; `context` names the rejecting operation.
pub(crate) fn validate_minority_rate(q: f64, context: &str) -> Result<()> {
    if !q.is_finite() || q <= 0.0 || q >= 0.5 {
        return Err(Error::domain(format!(
            "{context} requires q in the open interval (0, 1/2) (got q={q})"
        )));
    }
    Ok(())
}

/// Powers of the odds ratio `λ = q/p` for a walk biased toward `p > q`,
/// evaluated through logarithms so that both `λⁿ` and `1 − λⁿ` stay accurate
/// when `λ` is close to 1 (`q` close to 1/2) or when `n` is large.
///
/// The key detail is that `1 − λ` is formed as `(p − q)/p`. When `q` is near
/// 1/2 the subtraction `p − q` is exact in floating point (the operands are
/// within a factor of two of each other), so `1 − λ` keeps full relative
/// precision where the naive `1.0 - q/p` would lose most of its digits.
#[derive(Debug, Clone, Copy)]
pub(crate) struct LambdaPowers {
    lambda: f64,
    one_minus_lambda: f64,
    ln_lambda: f64,
}

impl LambdaPowers {
    /// Builds the helper from step probabilities `p > q` with `p + q = 1`.
    pub fn new(p: f64, q: f64) -> Self {
        let one_minus_lambda = (p - q) / p;
        LambdaPowers {
            lambda: q / p,
            one_minus_lambda,
            ln_lambda: (-one_minus_lambda).ln_1p(),
        }
    }

    /// The odds ratio `λ = q/p` itself.
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// `1 − λ`, formed without cancellation.
    pub fn one_minus_lambda(&self) -> f64 {
        self.one_minus_lambda
    }

    /// `λⁿ`. Underflows to 0 for huge `n`, which every caller tolerates.
    pub fn pow(&self, n: u64) -> f64 {
        if n == 0 {
            1.0
        } else {
            (n as f64 * self.ln_lambda).exp()
        }
    }

    /// `1 − λⁿ` without cancellation, accurate for every `n ≥ 0`.
    pub fn one_minus_pow(&self, n: u64) -> f64 {
        if n == 0 {
            0.0
        } else {
            -(n as f64 * self.ln_lambda).exp_m1()
        }
    }
}

/// Compensated (Kahan–Neumaier) accumulator. Used wherever many terms of
/// mixed magnitude are summed and the result must not depend on luck: test
/// oracles, Monte Carlo aggregation, recomposition sums.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct KahanSum {
    sum: f64,
    compensation: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_powers_match_naive_evaluation_for_moderate_q() {
        let lp = LambdaPowers::new(0.7, 0.3);
        let lambda = 0.3 / 0.7;
        for n in [0u64, 1, 2, 5, 17] {
            let naive = lambda.powi(n as i32);
            assert!((lp.pow(n) - naive).abs() <= 1e-15 * naive.max(1.0));
            assert!((lp.one_minus_pow(n) - (1.0 - naive)).abs() <= 1e-15);
        }
    }

    #[test]
    fn one_minus_pow_keeps_precision_near_one_half() {
        // q = 0.5 - 1e-9 gives 1 - λ ≈ 4e-9; the naive subtraction
        // 1 - λ^n retains only ~7 significant digits, while the
        // log-space route keeps full precision.
        let q = 0.5 - 1e-9;
        let p = 1.0 - q;
        let lp = LambdaPowers::new(p, q);
        // 1 - λ^n = n(1-λ)(1 + (n-1)/2·(λ-1) + ...) for λ → 1.
        let olm = lp.one_minus_lambda();
        let n = 7u64;
        let expansion = n as f64 * olm * (1.0 - (n as f64 - 1.0) / 2.0 * olm);
        let got = lp.one_minus_pow(n);
        assert!(
            ((got - expansion) / expansion).abs() < 1e-12,
            "got {got:e}, series {expansion:e}"
        );
    }

    #[test]
    fn kahan_recovers_cancellation_lost_by_naive_summation() {
        let mut acc = KahanSum::new();
        let mut naive = 0.0f64;
        for &x in &[1.0e16, 3.14159, -1.0e16, 2.71828] {
            acc.add(x);
            naive += x;
        }
        let exact = 3.14159 + 2.71828;
        assert!((acc.value() - exact).abs() < 1e-12);
        // The naive sum loses the small addends entirely.
        assert!((naive - exact).abs() > 0.5);
    }
}
