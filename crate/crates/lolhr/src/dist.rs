//! Marginal probability distributions and the independent random vector.

use rand::Rng;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, LogNormal, Normal, Uniform};

use crate::{Error, Result, Scalar};

/// Distribution family of a marginal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Normal,
    Uniform,
    Lognormal,
    Degenerate,
}

/// How the standard deviation follows the (design) mean.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StdRule {
    /// Fixed standard deviation in problem units.
    Absolute(f64),
    /// `std = coefficient * mean`, re-evaluated whenever the mean moves.
    ProportionalToMean(f64),
}

/// One input variable: family, mean and standard deviation in problem units.
///
/// Uniform marginals are parameterized by mean and standard deviation as
/// well; the support half-width is `std * sqrt(3)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Marginal {
    pub family: Family,
    pub mean: f64,
    pub std_rule: StdRule,
    /// Whether the mean is a design variable moved by the optimizer.
    #[serde(default)]
    pub mean_is_design: bool,
}

impl Marginal {
    pub fn normal(mean: f64, std: f64) -> Self {
        Self {
            family: Family::Normal,
            mean,
            std_rule: StdRule::Absolute(std),
            mean_is_design: false,
        }
    }

    pub fn uniform_mean_std(mean: f64, std: f64) -> Self {
        Self {
            family: Family::Uniform,
            mean,
            std_rule: StdRule::Absolute(std),
            mean_is_design: false,
        }
    }

    pub fn lognormal(mean: f64, std: f64) -> Self {
        Self {
            family: Family::Lognormal,
            mean,
            std_rule: StdRule::Absolute(std),
            mean_is_design: false,
        }
    }

    pub fn degenerate(value: f64) -> Self {
        Self {
            family: Family::Degenerate,
            mean: value,
            std_rule: StdRule::Absolute(0.0),
            mean_is_design: false,
        }
    }

    /// Mark the mean as a design variable.
    pub fn design(mut self) -> Self {
        self.mean_is_design = true;
        self
    }

    /// Use `std = coefficient * mean` instead of a fixed value.
    pub fn proportional_std(mut self, coefficient: f64) -> Self {
        self.std_rule = StdRule::ProportionalToMean(coefficient);
        self
    }

    /// Current standard deviation under the std rule.
    pub fn std(&self) -> f64 {
        match self.std_rule {
            StdRule::Absolute(s) => s,
            StdRule::ProportionalToMean(c) => c * self.mean,
        }
    }

    /// Copy of this marginal with the mean moved to `mean`
    /// (proportional std re-evaluates automatically via [`Marginal::std`]).
    pub fn with_mean(&self, mean: f64) -> Self {
        Self { mean, ..*self }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.mean.is_finite() {
            return Err(Error::InvalidMarginal("mean must be finite".into()));
        }
        let std = self.std();
        if !std.is_finite() || std < 0.0 {
            return Err(Error::InvalidMarginal("std must be finite and >= 0".into()));
        }
        match self.family {
            Family::Degenerate => {
                if std != 0.0 {
                    return Err(Error::InvalidMarginal(
                        "degenerate marginal requires std = 0".into(),
                    ));
                }
            }
            Family::Lognormal => {
                if self.mean <= 0.0 {
                    return Err(Error::InvalidMarginal("lognormal requires mean > 0".into()));
                }
                if std <= 0.0 {
                    return Err(Error::InvalidMarginal(
                        "non-degenerate marginal requires std > 0".into(),
                    ));
                }
            }
            _ => {
                if std <= 0.0 {
                    return Err(Error::InvalidMarginal(
                        "non-degenerate marginal requires std > 0".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Parameters `(mu_ln, sigma_ln)` of the underlying normal for a
    /// lognormal with mean `mu` and standard deviation `sigma`:
    /// `mu_ln = ln(mu^2 / sqrt(mu^2 + sigma^2))`, `sigma_ln = sqrt(ln(1 + sigma^2/mu^2))`.
    fn lognormal_params(&self) -> (f64, f64) {
        let mu = self.mean;
        let var = self.std() * self.std();
        let mu2 = mu * mu;
        let mu_ln = (mu2 / (mu2 + var).sqrt()).ln();
        let sigma_ln = (1.0 + var / mu2).ln().sqrt();
        (mu_ln, sigma_ln)
    }

    /// Support `[lower, upper]` for a uniform marginal (half-width `std * sqrt(3)`).
    pub fn uniform_support(&self) -> (f64, f64) {
        let h = self.std() * 3.0f64.sqrt();
        (self.mean - h, self.mean + h)
    }

    /// Inverse cumulative distribution function.
    ///
    /// `u` outside `[0, 1]` is an error; `u` of exactly 0 or 1 is clamped to
    /// the nearest representable quantile for unbounded families.
    pub fn icdf<S: Scalar>(&self, u: S) -> Result<S> {
        let u = u.as_f64();
        if !(0.0..=1.0).contains(&u) {
            return Err(Error::InvalidMarginal(format!("icdf argument {u} not in [0,1]")));
        }
        let u = u.clamp(f64::MIN_POSITIVE, 1.0 - f64::EPSILON / 2.0);
        let x = match self.family {
            Family::Degenerate => self.mean,
            Family::Normal => Normal::new(self.mean, self.std())
                .map_err(|e| Error::InvalidMarginal(e.to_string()))?
                .inverse_cdf(u),
            Family::Uniform => {
                let (lo, hi) = self.uniform_support();
                lo + u * (hi - lo)
            }
            Family::Lognormal => {
                let (mu_ln, sigma_ln) = self.lognormal_params();
                LogNormal::new(mu_ln, sigma_ln)
                    .map_err(|e| Error::InvalidMarginal(e.to_string()))?
                    .inverse_cdf(u)
            }
        };
        Ok(S::of(x))
    }

    /// Cumulative distribution function (step function for degenerate).
    pub fn cdf<S: Scalar>(&self, x: S) -> S {
        let x = x.as_f64();
        let u = match self.family {
            Family::Degenerate => {
                if x < self.mean {
                    0.0
                } else {
                    1.0
                }
            }
            Family::Normal => Normal::new(self.mean, self.std())
                .expect("validated marginal")
                .cdf(x),
            Family::Uniform => {
                let (lo, hi) = self.uniform_support();
                Uniform::new(lo, hi).expect("validated marginal").cdf(x)
            }
            Family::Lognormal => {
                let (mu_ln, sigma_ln) = self.lognormal_params();
                LogNormal::new(mu_ln, sigma_ln)
                    .expect("validated marginal")
                    .cdf(x)
            }
        };
        S::of(u)
    }

    /// Draw one sample as `icdf(U)` with `U ~ Uniform(0, 1)`.
    pub fn sample<S: Scalar, R: Rng + ?Sized>(&self, rng: &mut R) -> S {
        let u: f64 = rng.gen();
        self.icdf(S::of(u)).expect("u in [0,1]")
    }
}

/// Independent random input vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomVector {
    pub marginals: Vec<Marginal>,
}

impl RandomVector {
    pub fn new(marginals: Vec<Marginal>) -> Result<Self> {
        if marginals.is_empty() {
            return Err(Error::InvalidMarginal(
                "random vector needs at least one marginal".into(),
            ));
        }
        for m in &marginals {
            m.validate()?;
        }
        Ok(Self { marginals })
    }

    pub fn len(&self) -> usize {
        self.marginals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.marginals.is_empty()
    }

    /// Indices of marginals whose mean is a design variable.
    pub fn design_dims(&self) -> Vec<usize> {
        self.marginals
            .iter()
            .enumerate()
            .filter(|(_, m)| m.mean_is_design)
            .map(|(i, _)| i)
            .collect()
    }

    /// Copy with design means replaced by `theta` (ordered by design dim).
    pub fn at_design(&self, theta: &[f64]) -> Result<Self> {
        let dims = self.design_dims();
        if dims.len() != theta.len() {
            return Err(Error::DimensionMismatch {
                expected: dims.len(),
                got: theta.len(),
            });
        }
        let mut marginals = self.marginals.clone();
        for (&dim, &mean) in dims.iter().zip(theta.iter()) {
            marginals[dim] = marginals[dim].with_mean(mean);
        }
        Ok(Self { marginals })
    }

    /// Mean vector of all marginals (the input-space image of a design).
    pub fn mean_point(&self) -> Vec<f64> {
        self.marginals.iter().map(|m| m.mean).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_normal_icdf_is_symmetric() {
        let m = Marginal::normal(0.0, 1.0);
        let x: f64 = m.icdf(0.5).unwrap();
        assert!(x.abs() < 1e-12);
    }

    #[test]
    fn uniform_from_variance_has_expected_support() {
        // mean 0, variance 0.5^2 / 12 -> support [-0.25, 0.25]
        let std = 0.5 / 12.0f64.sqrt();
        let m = Marginal::uniform_mean_std(0.0, std);
        let (lo, hi) = m.uniform_support();
        assert!((lo + 0.25).abs() < 1e-12);
        assert!((hi - 0.25).abs() < 1e-12);
        let x: f64 = m.icdf(0.0).unwrap();
        assert!((x + 0.25).abs() < 1e-12);
    }

    #[test]
    fn lognormal_moments_match_quadrature_and_samples() {
        let m = Marginal::lognormal(40.0, 4.0);
        // Quadrature oracle: E = int_0^1 icdf(u) du, Var likewise, via
        // composite Simpson on a clipped quantile range.
        let steps = 20_000;
        let (a, b) = (1e-9, 1.0 - 1e-9);
        let h = (b - a) / steps as f64;
        let f = |u: f64| -> f64 { m.icdf(u).unwrap() };
        let mut e = 0.0;
        let mut e2 = 0.0;
        for i in 0..steps {
            let u0 = a + i as f64 * h;
            let um = u0 + 0.5 * h;
            let u1 = u0 + h;
            e += h / 6.0 * (f(u0) + 4.0 * f(um) + f(u1));
            e2 += h / 6.0 * (f(u0).powi(2) + 4.0 * f(um).powi(2) + f(u1).powi(2));
        }
        let var = e2 - e * e;
        assert!((e - 40.0).abs() / 40.0 < 1e-3, "quadrature mean {e}");
        assert!((var - 16.0).abs() / 16.0 < 1e-2, "quadrature var {var}");

        // 10^6 samples within 1% of (40, 16).
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let n = 1_000_000;
        let mut sum = 0.0;
        let mut sum2 = 0.0;
        for _ in 0..n {
            let x: f64 = m.sample(&mut rng);
            sum += x;
            sum2 += x * x;
        }
        let mean = sum / n as f64;
        let svar = sum2 / n as f64 - mean * mean;
        assert!((mean - 40.0).abs() / 40.0 < 0.01);
        assert!((svar - 16.0).abs() / 16.0 < 0.01);
    }

    #[test]
    fn cdf_icdf_round_trip_all_families() {
        let marginals = [
            Marginal::normal(3.0, 0.2),
            Marginal::uniform_mean_std(-1.0, 0.5),
            Marginal::lognormal(250e6, 0.3 * 250e6),
        ];
        for m in &marginals {
            for k in 0..200 {
                let u = 1e-6 + (1.0 - 2e-6) * k as f64 / 199.0;
                let x: f64 = m.icdf(u).unwrap();
                let u2: f64 = m.cdf(x);
                assert!(
                    (u2 - u).abs() <= 1e-10,
                    "round trip failed for {:?} at u={u}: {u2}",
                    m.family
                );
            }
        }
    }

    #[test]
    fn degenerate_cdf_is_a_step() {
        let m = Marginal::degenerate(2.0);
        assert_eq!(m.cdf::<f64>(1.9999), 0.0);
        assert_eq!(m.cdf::<f64>(2.0), 1.0);
        let x: f64 = m.icdf(0.7).unwrap();
        assert_eq!(x, 2.0);
    }

    #[test]
    fn proportional_std_follows_mean() {
        let m = Marginal::lognormal(250e6, 1.0).proportional_std(0.3);
        assert_eq!(m.std(), 0.3 * 250e6);
        let moved = m.with_mean(100.0);
        assert_eq!(moved.std(), 30.0);
    }

    #[test]
    fn icdf_rejects_out_of_range() {
        let m = Marginal::normal(0.0, 1.0);
        assert!(m.icdf::<f64>(1.5).is_err());
        // u = 0 and 1 clamp rather than returning infinities
        let lo: f64 = m.icdf(0.0).unwrap();
        let hi: f64 = m.icdf(1.0).unwrap();
        assert!(lo.is_finite() && hi.is_finite());
    }

    #[test]
    fn invalid_marginals_are_rejected() {
        assert!(Marginal::lognormal(-1.0, 1.0).validate().is_err());
        assert!(Marginal::normal(0.0, 0.0).validate().is_err());
        assert!(Marginal::degenerate(1.0).validate().is_ok());
    }
}
