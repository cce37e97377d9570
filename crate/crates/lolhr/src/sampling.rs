//! Latin hypercube and orthogonal sampling with simulated-annealing
//! optimization of the combined distance/correlation objective.

use ndarray::{Array1, Array2, ArrayView1, ArrayView2, Axis};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dist::RandomVector;
use crate::linalg::pearson_correlation;
use crate::{Error, Result, Scalar};

/// Correlation errors below this floor are clamped before taking the log.
pub const CORRELATION_FLOOR: f64 = 1e-12;

/// A Latin hypercube plan in the unit cube: each of the `bins_per_dim` bins
/// of every dimension holds exactly one point.
#[derive(Debug, Clone)]
pub struct LhsPlan<S> {
    pub points: Array2<S>,
    pub bins_per_dim: usize,
}

impl<S: Scalar> LhsPlan<S> {
    /// Check the Latin property: per dimension, bin indices form a permutation.
    pub fn is_latin(&self) -> bool {
        let m = self.points.nrows();
        if m != self.bins_per_dim {
            return false;
        }
        for col in self.points.columns() {
            let mut seen = vec![false; m];
            for &v in col.iter() {
                let bin = (v.as_f64() * m as f64).floor() as isize;
                if bin < 0 || bin >= m as isize || seen[bin as usize] {
                    return false;
                }
                seen[bin as usize] = true;
            }
        }
        true
    }
}

/// Generate a random Latin hypercube of `m` points in `n` dimensions.
/// Points are uniform within their bins.
pub fn lhs_generate<S: Scalar, R: Rng + ?Sized>(m: usize, n: usize, rng: &mut R) -> LhsPlan<S> {
    assert!(m >= 1 && n >= 1, "lhs_generate needs m >= 1 and n >= 1");
    let mut points = Array2::zeros((m, n));
    let mut perm: Vec<usize> = (0..m).collect();
    for j in 0..n {
        // Fisher-Yates shuffle of the bin assignment.
        for i in (1..m).rev() {
            let k = rng.gen_range(0..=i);
            perm.swap(i, k);
        }
        for i in 0..m {
            let u: f64 = rng.gen();
            points[[i, j]] = S::of((perm[i] as f64 + u) / m as f64);
        }
    }
    LhsPlan {
        points,
        bins_per_dim: m,
    }
}

/// Bounds and correlation target against which the sampling objective is
/// evaluated. For stationary sampling the local box equals the global box
/// and the target correlation is the identity.
#[derive(Debug, Clone)]
pub struct MetricSpace<S> {
    pub global_lower: Array1<S>,
    pub global_upper: Array1<S>,
    pub local_lower: Array1<S>,
    pub local_upper: Array1<S>,
    pub rho_target: Array2<S>,
}

impl<S: Scalar> MetricSpace<S> {
    pub fn stationary(lower: &[S], upper: &[S]) -> Self {
        let n = lower.len();
        Self {
            global_lower: Array1::from(lower.to_vec()),
            global_upper: Array1::from(upper.to_vec()),
            local_lower: Array1::from(lower.to_vec()),
            local_upper: Array1::from(upper.to_vec()),
            rho_target: Array2::eye(n),
        }
    }

    pub fn with_local(
        global_lower: &[S],
        global_upper: &[S],
        local_lower: &[S],
        local_upper: &[S],
        rho_target: Array2<S>,
    ) -> Self {
        Self {
            global_lower: Array1::from(global_lower.to_vec()),
            global_upper: Array1::from(global_upper.to_vec()),
            local_lower: Array1::from(local_lower.to_vec()),
            local_upper: Array1::from(local_upper.to_vec()),
            rho_target,
        }
    }

    /// Euclidean length of the global box diagonal, the scale reference in
    /// the distance term.
    pub fn d_max(&self) -> S {
        self.global_lower
            .iter()
            .zip(self.global_upper.iter())
            .map(|(lo, hi)| {
                let w = *hi - *lo;
                w * w
            })
            .sum::<S>()
            .sqrt()
    }

    pub fn in_local(&self, row: &ArrayView1<S>) -> bool {
        row.iter()
            .zip(self.local_lower.iter().zip(self.local_upper.iter()))
            .all(|(v, (lo, hi))| *v >= *lo && *v <= *hi)
    }
}

/// Value of the sampling objective and its two terms.
#[derive(Debug, Clone, Copy)]
pub struct LhsMetrics<S> {
    /// `log(d_max) - log(min pairwise distance)`.
    pub f_d: S,
    /// `log(max |rho_target - rho_local|)`, 0 when undefined.
    pub f_rho: S,
    /// `f_d + f_rho`.
    pub f_m: S,
    /// Number of rows inside the local box.
    pub local_rows: usize,
    /// False when fewer than two rows fell inside the local box.
    pub rho_defined: bool,
}

fn min_sq_dist_involving<S: Scalar>(
    fixed: &ArrayView2<S>,
    free: &ArrayView2<S>,
    fixed_min: S,
) -> S {
    let mut best = fixed_min;
    let mc = free.nrows();
    for i in 0..mc {
        let ri = free.row(i);
        for j in i + 1..mc {
            let d = crate::linalg::sq_dist(&ri, &free.row(j));
            if d < best {
                best = d;
            }
        }
        for j in 0..fixed.nrows() {
            let d = crate::linalg::sq_dist(&ri, &fixed.row(j));
            if d < best {
                best = d;
            }
        }
    }
    best
}

fn correlation_error<S: Scalar>(
    fixed: &ArrayView2<S>,
    free: &ArrayView2<S>,
    space: &MetricSpace<S>,
) -> (S, usize, bool) {
    let n = space.rho_target.nrows();
    let mut local: Vec<S> = Vec::new();
    let mut rows = 0;
    for row in fixed.rows().into_iter().chain(free.rows()) {
        if space.in_local(&row) {
            local.extend(row.iter().copied());
            rows += 1;
        }
    }
    if rows < 2 {
        return (S::zero(), rows, false);
    }
    let local = Array2::from_shape_vec((rows, n), local).expect("row width n");
    let rho = pearson_correlation(&local.view());
    let mut err = S::zero();
    for a in 0..n {
        for b in 0..n {
            let e = (space.rho_target[[a, b]] - rho[[a, b]]).abs();
            if e > err {
                err = e;
            }
        }
    }
    (err, rows, true)
}

fn metrics_split<S: Scalar>(
    fixed: &ArrayView2<S>,
    free: &ArrayView2<S>,
    fixed_min_sq: S,
    space: &MetricSpace<S>,
) -> Result<LhsMetrics<S>> {
    let total = fixed.nrows() + free.nrows();
    if total < 2 {
        return Err(Error::Sampling("metrics need at least 2 points".into()));
    }
    let min_sq = min_sq_dist_involving(fixed, free, fixed_min_sq);
    if !(min_sq > S::zero()) {
        return Err(Error::Sampling("duplicate points give zero distance".into()));
    }
    let f_d = space.d_max().ln() - min_sq.sqrt().ln();
    let (err, local_rows, rho_defined) = correlation_error(fixed, free, space);
    let f_rho = if rho_defined {
        err.max(S::of(CORRELATION_FLOOR)).ln()
    } else {
        S::zero()
    };
    Ok(LhsMetrics {
        f_d,
        f_rho,
        f_m: f_d + f_rho,
        local_rows,
        rho_defined,
    })
}

/// Evaluate the sampling objective `f_M = f_D + f_rho` for `points`.
///
/// `f_D` compares the minimum pairwise distance of all points against the
/// global box diagonal; `f_rho` measures the worst-entry deviation of the
/// Pearson correlation of the rows inside the local box from the target.
pub fn lhs_metrics<S: Scalar>(
    points: &ArrayView2<S>,
    space: &MetricSpace<S>,
) -> Result<LhsMetrics<S>> {
    let empty = Array2::zeros((0, points.ncols()));
    metrics_split(&empty.view(), points, S::infinity(), space)
}

/// Simulated-annealing schedule for plan optimization.
#[derive(Debug, Clone, Copy, serde::Serialize, serde::Deserialize)]
pub struct AnnealConfig {
    /// Total number of swap proposals.
    pub iterations: usize,
    pub initial_temperature: f64,
    /// Geometric cooling factor applied every 50 proposals, in (0, 1).
    pub cooling_rate: f64,
    pub rng_seed: u64,
}

impl AnnealConfig {
    /// Default schedule for an `m x n` plan: `10 m n` proposals, `T0 = 1`,
    /// cooling 0.95 per 50 proposals.
    pub fn for_plan(m: usize, n: usize, rng_seed: u64) -> Self {
        Self {
            iterations: 10 * m * n,
            initial_temperature: 1.0,
            cooling_rate: 0.95,
            rng_seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.cooling_rate > 0.0 && self.cooling_rate < 1.0) {
            return Err(Error::Sampling("cooling_rate must lie in (0,1)".into()));
        }
        if !(self.initial_temperature > 0.0) {
            return Err(Error::Sampling("initial_temperature must be > 0".into()));
        }
        Ok(())
    }
}

/// `(f_m with the staged floor, f_m with the final floor)`, infinite on
/// degenerate configurations.
fn eval_staged<S: Scalar>(
    fixed: &ArrayView2<S>,
    free: &ArrayView2<S>,
    fixed_min_sq: S,
    space: &MetricSpace<S>,
    staged_floor: S,
) -> (S, S) {
    let total = fixed.nrows() + free.nrows();
    if total < 2 {
        return (S::infinity(), S::infinity());
    }
    let min_sq = min_sq_dist_involving(fixed, free, fixed_min_sq);
    if !(min_sq > S::zero()) {
        return (S::infinity(), S::infinity());
    }
    let f_d = space.d_max().ln() - min_sq.sqrt().ln();
    let (err, _, rho_defined) = correlation_error(fixed, free, space);
    if !rho_defined {
        return (f_d, f_d);
    }
    let f_final = f_d + err.max(S::of(CORRELATION_FLOOR)).ln();
    let f_staged = f_d + err.max(staged_floor).ln();
    (f_staged, f_final)
}

/// Optimize the free `candidate` rows by switching values within columns,
/// keeping `existing` rows fixed. Returns the best configuration seen, so
/// the objective never exceeds that of the initial candidate.
///
/// Column value switching permutes bin assignments, so the Latin property
/// of the candidate columns is preserved.
pub fn lhs_anneal<S: Scalar>(
    existing: &ArrayView2<S>,
    candidate: &ArrayView2<S>,
    config: &AnnealConfig,
    space: &MetricSpace<S>,
) -> Result<Array2<S>> {
    config.validate()?;
    let mut current = candidate.to_owned();
    let mc = current.nrows();
    let n = current.ncols();
    if config.iterations == 0 || mc < 2 {
        return Ok(current);
    }
    // Distances among fixed rows never change.
    let fixed_min_sq = {
        let mut best = S::infinity();
        for i in 0..existing.nrows() {
            for j in i + 1..existing.nrows() {
                let d = crate::linalg::sq_dist(&existing.row(i), &existing.row(j));
                if d < best {
                    best = d;
                }
            }
        }
        best
    };
    let mut rng = ChaCha8Rng::seed_from_u64(config.rng_seed);
    // The chain first optimizes spacing with the correlation reward capped,
    // then releases the cap; otherwise the unbounded log of the correlation
    // error freezes the distance term early. Best-seen always tracks the
    // final objective.
    let stage_boundary = config.iterations * 2 / 5;
    let staged_floor = S::of(0.05);
    let final_floor = S::of(CORRELATION_FLOOR);
    let eval = |points: &ArrayView2<S>, floor: S| -> (S, S) {
        eval_staged(existing, points, fixed_min_sq, space, floor)
    };
    let (mut f_cur, mut f_cur_final) = eval(&current.view(), staged_floor);
    let mut best = current.clone();
    let mut f_best = f_cur_final;
    let mut temperature = config.initial_temperature;
    let mut swaps: [(usize, usize, usize); 2] = [(0, 0, 0); 2];
    let mut chosen: ([(usize, usize, usize); 2], usize) = (swaps, 1);
    for it in 0..config.iterations {
        if it > 0 && it % 50 == 0 {
            temperature *= config.cooling_rate;
        }
        let floor = if it < stage_boundary {
            staged_floor
        } else {
            final_floor
        };
        if it == stage_boundary {
            f_cur = f_cur_final;
        }
        // Pick the best of a few candidate moves, then apply the usual
        // Metropolis test. Half of the candidates move a row of the
        // currently closest pair; double swaps within one column can
        // rearrange distances while roughly preserving correlation.
        let mut f_new = S::infinity();
        let mut f_new_final = S::infinity();
        for _ in 0..4 {
            let dim = rng.gen_range(0..n);
            let a = if rng.gen::<bool>() {
                match closest_free_row(existing, &current.view()) {
                    Some(row) => row,
                    None => rng.gen_range(0..mc),
                }
            } else {
                rng.gen_range(0..mc)
            };
            let mut b = rng.gen_range(0..mc - 1);
            if b >= a {
                b += 1;
            }
            swaps[0] = (a, b, dim);
            let n_swaps = if rng.gen::<bool>() && mc > 3 {
                let c = rng.gen_range(0..mc);
                let mut d = rng.gen_range(0..mc - 1);
                if d >= c {
                    d += 1;
                }
                swaps[1] = (c, d, dim);
                2
            } else {
                1
            };
            for &(i, j, d) in &swaps[..n_swaps] {
                current.swap([i, d], [j, d]);
            }
            let (f_try, f_try_final) = eval(&current.view(), floor);
            for &(i, j, d) in swaps[..n_swaps].iter().rev() {
                current.swap([i, d], [j, d]);
            }
            if f_try < f_new {
                f_new = f_try;
                f_new_final = f_try_final;
                chosen = (swaps, n_swaps);
            }
        }
        let delta = (f_new - f_cur).as_f64();
        let accept = delta <= 0.0 || {
            let p = (-delta / temperature).exp();
            rng.gen::<f64>() < p
        };
        if accept {
            let (moves, n_swaps) = chosen;
            for &(i, j, d) in &moves[..n_swaps] {
                current.swap([i, d], [j, d]);
            }
            f_cur = f_new;
            f_cur_final = f_new_final;
            if f_new_final < f_best {
                f_best = f_new_final;
                best.assign(&current);
            }
        }
    }
    Ok(best)
}

/// Index of the free row involved in the smallest pairwise distance.
fn closest_free_row<S: Scalar>(fixed: &ArrayView2<S>, free: &ArrayView2<S>) -> Option<usize> {
    let mc = free.nrows();
    let mut best = S::infinity();
    let mut row = None;
    for i in 0..mc {
        let ri = free.row(i);
        for j in i + 1..mc {
            let d = crate::linalg::sq_dist(&ri, &free.row(j));
            if d < best {
                best = d;
                row = Some(i);
            }
        }
        for j in 0..fixed.nrows() {
            let d = crate::linalg::sq_dist(&ri, &fixed.row(j));
            if d < best {
                best = d;
                row = Some(i);
            }
        }
    }
    row
}

/// Annealed stratified plan in the unit cube targeting zero correlation.
pub fn orthogonal_plan<S: Scalar, R: Rng + ?Sized>(
    m: usize,
    n: usize,
    rng: &mut R,
) -> Result<Array2<S>> {
    let plan = lhs_generate::<S, _>(m, n, rng);
    let space = MetricSpace::stationary(&vec![S::zero(); n], &vec![S::one(); n]);
    let config = AnnealConfig::for_plan(m, n, rng.gen());
    let empty = Array2::zeros((0, n));
    lhs_anneal(&empty.view(), &plan.points.view(), &config, &space)
}

/// Map unit-cube rows through each marginal's inverse CDF.
pub fn map_through_marginals<S: Scalar>(
    rv: &RandomVector,
    unit: &ArrayView2<S>,
) -> Result<Array2<S>> {
    if unit.ncols() != rv.len() {
        return Err(Error::DimensionMismatch {
            expected: rv.len(),
            got: unit.ncols(),
        });
    }
    let mut out = unit.to_owned();
    for (j, marginal) in rv.marginals.iter().enumerate() {
        for v in out.column_mut(j).iter_mut() {
            *v = marginal.icdf(*v)?;
        }
    }
    Ok(out)
}

/// Stratified sample of `m` points following the joint distribution of `rv`,
/// used for moment estimation. The underlying unit-cube plan is annealed
/// for low correlation error before mapping through the marginal quantiles.
pub fn orthogonal_sample<S: Scalar, R: Rng + ?Sized>(
    rv: &RandomVector,
    m: usize,
    rng: &mut R,
) -> Result<Array2<S>> {
    let unit = orthogonal_plan::<S, _>(m, rv.len(), rng)?;
    map_through_marginals(rv, &unit.view())
}

/// Sample moments (mean, unbiased variance) of each column of `values`.
pub fn column_moments<S: Scalar>(values: &ArrayView2<S>) -> Vec<(S, S)> {
    let m = values.nrows();
    let mf = S::of(m as f64);
    values
        .axis_iter(Axis(1))
        .map(|col| {
            let mean = col.iter().copied().sum::<S>() / mf;
            let var = if m > 1 {
                col.iter().map(|v| (*v - mean) * (*v - mean)).sum::<S>()
                    / S::of((m - 1) as f64)
            } else {
                S::zero()
            };
            (mean, var)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::Marginal;
    use ndarray::array;

    #[test]
    fn generated_plans_are_latin() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let plan = lhs_generate::<f64, _>(4, 2, &mut rng);
        assert!(plan.is_latin());
        let single = lhs_generate::<f64, _>(1, 3, &mut rng);
        for &v in single.points.iter() {
            assert!(v > 0.0 && v < 1.0);
        }
    }

    #[test]
    fn hundred_point_plan_has_small_ks_statistic() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let plan = lhs_generate::<f64, _>(100, 2, &mut rng);
        for col in plan.points.columns() {
            let mut v: Vec<f64> = col.to_vec();
            v.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let m = v.len() as f64;
            let ks = v
                .iter()
                .enumerate()
                .map(|(i, &x)| {
                    let lo = (x - i as f64 / m).abs();
                    let hi = (x - (i as f64 + 1.0) / m).abs();
                    lo.max(hi)
                })
                .fold(0.0f64, f64::max);
            assert!(ks <= 0.12, "KS statistic {ks}");
        }
    }

    #[test]
    fn metrics_corner_points_give_zero_distance_term() {
        let x: Array2<f64> = array![[0.0, 0.0], [1.0, 1.0]];
        let space = MetricSpace::stationary(&[0.0, 0.0], &[1.0, 1.0]);
        let m = lhs_metrics(&x.view(), &space).unwrap();
        assert!(m.f_d.abs() < 1e-12, "f_d = {}", m.f_d);
    }

    #[test]
    fn zero_correlation_error_is_floored() {
        // Columns engineered to be exactly uncorrelated.
        let x = array![[0.0, 0.0], [1.0, 1.0], [0.0, 1.0], [1.0, 0.0]];
        let space = MetricSpace::stationary(&[0.0, 0.0], &[1.0, 1.0]);
        let m = lhs_metrics(&x.view(), &space).unwrap();
        assert!((m.f_rho - CORRELATION_FLOOR.ln()).abs() < 1e-9);
    }

    #[test]
    fn duplicate_points_error() {
        let x = array![[0.5, 0.5], [0.5, 0.5]];
        let space = MetricSpace::stationary(&[0.0, 0.0], &[1.0, 1.0]);
        assert!(lhs_metrics(&x.view(), &space).is_err());
    }

    #[test]
    fn fewer_than_two_local_rows_flags_rho() {
        let x = array![[0.1, 0.1], [0.9, 0.9]];
        let space = MetricSpace::with_local(
            &[0.0, 0.0],
            &[1.0, 1.0],
            &[0.0, 0.0],
            &[0.2, 0.2],
            Array2::eye(2),
        );
        let m = lhs_metrics(&x.view(), &space).unwrap();
        assert!(!m.rho_defined);
        assert_eq!(m.f_rho, 0.0);
        assert_eq!(m.local_rows, 1);
    }

    #[test]
    fn anneal_zero_iterations_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let plan = lhs_generate::<f64, _>(6, 2, &mut rng);
        let space = MetricSpace::stationary(&[0.0, 0.0], &[1.0, 1.0]);
        let mut config = AnnealConfig::for_plan(6, 2, 7);
        config.iterations = 0;
        let empty = Array2::zeros((0, 2));
        let out = lhs_anneal(&empty.view(), &plan.points.view(), &config, &space).unwrap();
        assert_eq!(out, plan.points);
    }

    #[test]
    fn anneal_never_worsens_objective_and_keeps_latin() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let plan = lhs_generate::<f64, _>(8, 2, &mut rng);
        let space = MetricSpace::stationary(&[0.0, 0.0], &[1.0, 1.0]);
        let config = AnnealConfig::for_plan(8, 2, 11);
        let empty = Array2::zeros((0, 2));
        let before = lhs_metrics(&plan.points.view(), &space).unwrap().f_m;
        let out = lhs_anneal(&empty.view(), &plan.points.view(), &config, &space).unwrap();
        let after = lhs_metrics(&out.view(), &space).unwrap().f_m;
        assert!(after <= before + 1e-12);
        let out_plan = LhsPlan {
            points: out,
            bins_per_dim: 8,
        };
        assert!(out_plan.is_latin());
    }

    #[test]
    fn annealed_plan_beats_median_random_min_distance() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let plan = lhs_generate::<f64, _>(8, 2, &mut rng);
        let space = MetricSpace::stationary(&[0.0, 0.0], &[1.0, 1.0]);
        let config = AnnealConfig {
            iterations: 2000,
            initial_temperature: 1.0,
            cooling_rate: 0.95,
            rng_seed: 13,
        };
        let empty = Array2::zeros((0, 2));
        let out = lhs_anneal(&empty.view(), &plan.points.view(), &config, &space).unwrap();
        let annealed = crate::linalg::min_pairwise_distance(&out.view()).unwrap();
        let mut draws: Vec<f64> = (0..100)
            .map(|_| {
                let p = lhs_generate::<f64, _>(8, 2, &mut rng);
                crate::linalg::min_pairwise_distance(&p.points.view()).unwrap()
            })
            .collect();
        draws.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let median = draws[50];
        assert!(
            annealed >= median,
            "annealed {annealed} vs median random {median}"
        );
    }

    #[test]
    fn orthogonal_sample_reproduces_analytic_moments() {
        let rv = RandomVector::new(vec![Marginal::normal(3.0, 0.2)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let x = orthogonal_sample::<f64, _>(&rv, 200, &mut rng).unwrap();
        let (mean, var) = column_moments(&x.view())[0];
        assert!((mean - 3.0).abs() < 0.02, "mean {mean}");
        assert!((var - 0.04).abs() / 0.04 < 0.15, "var {var}");

        // E[X^2] for standard normal inputs.
        let rv = RandomVector::new(vec![Marginal::normal(0.0, 1.0)]).unwrap();
        let x = orthogonal_sample::<f64, _>(&rv, 200, &mut rng).unwrap();
        let sq = x.mapv(|v| v * v);
        let (mean_sq, _) = column_moments(&sq.view())[0];
        assert!((mean_sq - 1.0).abs() < 0.1, "E[X^2] estimate {mean_sq}");
    }

    #[test]
    fn orthogonal_sample_degenerate_marginal_is_constant() {
        let rv = RandomVector::new(vec![
            Marginal::degenerate(4.0),
            Marginal::normal(0.0, 1.0),
        ])
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let x = orthogonal_sample::<f64, _>(&rv, 50, &mut rng).unwrap();
        assert!(x.column(0).iter().all(|&v| v == 4.0));
    }

    #[test]
    fn orthogonal_sample_marginal_ecdf_deviation_is_bounded() {
        let rv = RandomVector::new(vec![
            Marginal::normal(1.0, 2.0),
            Marginal::uniform_mean_std(0.0, 1.0),
            Marginal::lognormal(40.0, 4.0),
        ])
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let m = 64;
        let x = orthogonal_sample::<f64, _>(&rv, m, &mut rng).unwrap();
        for (j, marginal) in rv.marginals.iter().enumerate() {
            let mut u: Vec<f64> = x.column(j).iter().map(|&v| marginal.cdf(v)).collect();
            u.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let dev = u
                .iter()
                .enumerate()
                .map(|(i, &ui)| {
                    let lo = (ui - i as f64 / m as f64).abs();
                    let hi = (ui - (i + 1) as f64 / m as f64).abs();
                    lo.max(hi)
                })
                .fold(0.0f64, f64::max);
            assert!(dev <= 1.0 / m as f64 + 0.05, "dim {j} deviation {dev}");
        }
    }
}
