//! Problem definition: objectives, limit states, design bounds and the
//! sampling box derived from the marginal confidence bounds.

use serde::{Deserialize, Serialize};

use crate::dist::{Family, RandomVector};
use crate::{Error, Result};

/// Robustness scalarization applied to a response distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scalarization {
    Mean,
    Variance,
    /// `E + k * Var` (the variance, not the standard deviation).
    MeanPlusKVar(f64),
    /// `E + k * Std`, provided as an alternative formulation.
    MeanPlusKStd(f64),
}

impl Scalarization {
    pub fn apply(&self, mean: f64, var: f64) -> f64 {
        match *self {
            Scalarization::Mean => mean,
            Scalarization::Variance => var,
            Scalarization::MeanPlusKVar(k) => mean + k * var,
            Scalarization::MeanPlusKStd(k) => mean + k * var.max(0.0).sqrt(),
        }
    }
}

/// One optimization objective (minimization).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    /// Scalarized moments of a response column.
    Response {
        response: usize,
        scalarization: Scalarization,
    },
    /// Product of design means (deterministic, no sampling involved).
    DesignMeanProduct { dims: Vec<usize> },
    /// The failure probability itself, clamped from below by `pf_floor`.
    FailureProbability,
}

/// Deterministic constraint on the design means.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DesignConstraint {
    /// `lo <= theta[num] / theta[den] <= hi`.
    Ratio {
        num: usize,
        den: usize,
        lo: f64,
        hi: f64,
    },
}

impl DesignConstraint {
    /// Relative violation amount; 0 when satisfied.
    pub fn violation(&self, theta: &[f64]) -> f64 {
        match *self {
            DesignConstraint::Ratio { num, den, lo, hi } => {
                let r = theta[num] / theta[den];
                if r < lo {
                    (lo - r) / lo.abs().max(f64::MIN_POSITIVE)
                } else if r > hi {
                    (r - hi) / hi.abs().max(f64::MIN_POSITIVE)
                } else {
                    0.0
                }
            }
        }
    }
}

/// Full problem definition shared by the optimizer, the refinement engine
/// and the validation machinery.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemSpec {
    /// Input random vector; marginals flagged `mean_is_design` are moved by
    /// the optimizer.
    pub random_vector: RandomVector,
    /// Objectives, all minimized.
    pub objectives: Vec<Objective>,
    /// Response column indices acting as limit states (failure when the
    /// series minimum is negative).
    pub limit_states: Vec<usize>,
    /// Target failure probability, in (0, 1).
    pub target_pf: f64,
    /// Whether `P(F) <= target_pf` is an active constraint.
    pub pf_constrained: bool,
    /// Lower clamp applied to `P(F)` when used as an objective.
    pub pf_floor: Option<f64>,
    /// Lower design-mean bounds, one per design dimension.
    pub design_lower: Vec<f64>,
    /// Upper design-mean bounds, one per design dimension.
    pub design_upper: Vec<f64>,
    /// Deterministic constraints on the design means.
    #[serde(default)]
    pub design_constraints: Vec<DesignConstraint>,
    /// Total number of response columns produced by the evaluator.
    pub n_responses: usize,
}

impl ProblemSpec {
    pub fn validate(&self) -> Result<()> {
        for m in &self.random_vector.marginals {
            m.validate()?;
        }
        let n_design = self.random_vector.design_dims().len();
        if self.design_lower.len() != n_design || self.design_upper.len() != n_design {
            return Err(Error::InvalidProblem(format!(
                "design bounds must have one entry per design dimension ({n_design})"
            )));
        }
        for (lo, hi) in self.design_lower.iter().zip(self.design_upper.iter()) {
            if !(lo < hi) {
                return Err(Error::InvalidProblem(
                    "design bounds require lower < upper".into(),
                ));
            }
        }
        if !(self.target_pf > 0.0 && self.target_pf < 1.0) {
            return Err(Error::InvalidProblem("target_pf must lie in (0,1)".into()));
        }
        if let Some(floor) = self.pf_floor {
            if floor > self.target_pf {
                return Err(Error::InvalidProblem("pf_floor must be <= target_pf".into()));
            }
        }
        if self.objectives.is_empty() {
            return Err(Error::InvalidProblem("at least one objective".into()));
        }
        for obj in &self.objectives {
            if let Objective::Response { response, .. } = obj {
                if *response >= self.n_responses {
                    return Err(Error::InvalidProblem(format!(
                        "objective response index {response} out of range"
                    )));
                }
            }
        }
        for g in &self.limit_states {
            if *g >= self.n_responses {
                return Err(Error::InvalidProblem(format!(
                    "limit state index {g} out of range"
                )));
            }
        }
        Ok(())
    }

    pub fn n_inputs(&self) -> usize {
        self.random_vector.len()
    }

    pub fn n_objectives(&self) -> usize {
        self.objectives.len()
    }

    pub fn design_dims(&self) -> Vec<usize> {
        self.random_vector.design_dims()
    }

    /// Whether any objective needs moment estimation by sampling.
    pub fn needs_moments(&self) -> bool {
        self.objectives
            .iter()
            .any(|o| matches!(o, Objective::Response { .. }))
    }

    /// Total deterministic-constraint violation at `theta`.
    pub fn design_violation(&self, theta: &[f64]) -> f64 {
        self.design_constraints
            .iter()
            .map(|c| c.violation(theta))
            .sum()
    }

    /// Sampling box `[lower, upper]` per input dimension from the one-sided
    /// `alpha` confidence bound of each marginal, with design means pushed
    /// to their respective bounds.
    ///
    /// Degenerate design marginals fall back to the design bounds; fixed
    /// degenerate marginals collapse to their constant value.
    pub fn sampling_bounds(&self, alpha: f64) -> Result<(Vec<f64>, Vec<f64>)> {
        if !(alpha > 0.5 && alpha < 1.0) {
            return Err(Error::InvalidProblem("alpha must lie in (0.5, 1)".into()));
        }
        let design_dims = self.design_dims();
        let mut lower = Vec::with_capacity(self.n_inputs());
        let mut upper = Vec::with_capacity(self.n_inputs());
        for (i, m) in self.random_vector.marginals.iter().enumerate() {
            let design_slot = design_dims.iter().position(|&d| d == i);
            let (mean_lo, mean_hi) = match design_slot {
                Some(s) => (self.design_lower[s], self.design_upper[s]),
                None => (m.mean, m.mean),
            };
            if m.family == Family::Degenerate {
                lower.push(mean_lo);
                upper.push(mean_hi);
                continue;
            }
            let lo: f64 = m.with_mean(mean_lo).icdf(1.0 - alpha)?;
            let hi: f64 = m.with_mean(mean_hi).icdf(alpha)?;
            lower.push(lo);
            upper.push(hi);
        }
        Ok((lower, upper))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::Marginal;

    fn two_normal_problem() -> ProblemSpec {
        ProblemSpec {
            random_vector: RandomVector::new(vec![
                Marginal::normal(0.0, 0.2).design(),
                Marginal::normal(0.0, 0.2).design(),
            ])
            .unwrap(),
            objectives: vec![Objective::Response {
                response: 0,
                scalarization: Scalarization::MeanPlusKVar(1.96),
            }],
            limit_states: vec![1],
            target_pf: 1e-6,
            pf_constrained: true,
            pf_floor: None,
            design_lower: vec![-5.0, -5.0],
            design_upper: vec![5.0, 5.0],
            design_constraints: vec![],
            n_responses: 2,
        }
    }

    #[test]
    fn sampling_bounds_extend_by_confidence_margin() {
        let p = two_normal_problem();
        let (lo, hi) = p.sampling_bounds(0.999).unwrap();
        // -5 - 0.2 * Phi^-1(0.999) = -5.618
        for d in 0..2 {
            assert!((lo[d] + 5.618).abs() < 1e-3, "lower {}", lo[d]);
            assert!((hi[d] - 5.618).abs() < 1e-3, "upper {}", hi[d]);
        }
    }

    #[test]
    fn degenerate_marginal_uses_design_bounds() {
        let mut p = two_normal_problem();
        p.random_vector.marginals[0] = Marginal::degenerate(0.0).design();
        let (lo, hi) = p.sampling_bounds(0.999).unwrap();
        assert_eq!(lo[0], -5.0);
        assert_eq!(hi[0], 5.0);
    }

    #[test]
    fn uniform_bounds_clip_negligible_tail() {
        let mut p = two_normal_problem();
        let std = 0.25 / 3.0f64.sqrt(); // half-width 0.25
        p.random_vector.marginals[0] = Marginal::uniform_mean_std(0.0, std).design();
        p.design_lower = vec![-4.5, -5.0];
        p.design_upper = vec![4.5, 5.0];
        let (lo, hi) = p.sampling_bounds(0.999).unwrap();
        // -4.5 - 0.25 + 0.001 * 0.5 = -4.7495
        assert!((lo[0] + 4.7495).abs() < 1e-9);
        assert!((hi[0] - 4.7495).abs() < 1e-9);
    }

    #[test]
    fn ratio_constraint_flags_violation() {
        let c = DesignConstraint::Ratio {
            num: 0,
            den: 1,
            lo: 0.5,
            hi: 2.0,
        };
        assert_eq!(c.violation(&[1.0, 1.0]), 0.0);
        assert!(c.violation(&[3.0, 1.0]) > 0.0);
        assert!(c.violation(&[1.0, 3.0]) > 0.0);
    }

    #[test]
    fn validation_rejects_bad_bounds() {
        let mut p = two_normal_problem();
        p.design_upper = vec![-6.0, 5.0];
        assert!(p.validate().is_err());
        let mut p = two_normal_problem();
        p.target_pf = 0.0;
        assert!(p.validate().is_err());
        let mut p = two_normal_problem();
        p.pf_floor = Some(1e-3);
        assert!(p.validate().is_err());
    }
}
