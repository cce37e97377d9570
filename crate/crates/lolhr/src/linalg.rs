//! Small dense linear-algebra helpers shared by the numeric modules.

use ndarray::{Array1, Array2, ArrayView1, ArrayView2};

use crate::{Error, Result, Scalar};

/// Lower-triangular Cholesky factor of a symmetric positive-definite matrix.
pub struct Cholesky<S> {
    factor: Array2<S>,
}

impl<S: Scalar> Cholesky<S> {
    /// Factor `a = L L^T`. Fails when a pivot is not strictly positive.
    pub fn new(a: &ArrayView2<S>) -> Result<Self> {
        let m = a.nrows();
        if m != a.ncols() {
            return Err(Error::DimensionMismatch {
                expected: m,
                got: a.ncols(),
            });
        }
        let mut l = Array2::zeros((m, m));
        for i in 0..m {
            for j in 0..=i {
                let mut sum = a[[i, j]];
                for k in 0..j {
                    sum = sum - l[[i, k]] * l[[j, k]];
                }
                if i == j {
                    if sum <= S::zero() || !sum.is_finite() {
                        return Err(Error::IllConditioned(format!(
                            "non-positive pivot at row {i}"
                        )));
                    }
                    l[[i, i]] = sum.sqrt();
                } else {
                    l[[i, j]] = sum / l[[j, j]];
                }
            }
        }
        Ok(Self { factor: l })
    }

    pub fn factor(&self) -> ArrayView2<'_, S> {
        self.factor.view()
    }

    /// Solve `L z = b` (forward substitution).
    pub fn solve_lower(&self, b: &ArrayView1<S>) -> Array1<S> {
        let m = self.factor.nrows();
        let mut z = Array1::zeros(m);
        for i in 0..m {
            let mut sum = b[i];
            for k in 0..i {
                sum = sum - self.factor[[i, k]] * z[k];
            }
            z[i] = sum / self.factor[[i, i]];
        }
        z
    }

    /// Solve `A x = b` via the two triangular solves.
    pub fn solve(&self, b: &ArrayView1<S>) -> Array1<S> {
        let m = self.factor.nrows();
        let z = self.solve_lower(b);
        let mut x = Array1::zeros(m);
        for i in (0..m).rev() {
            let mut sum = z[i];
            for k in i + 1..m {
                sum = sum - self.factor[[k, i]] * x[k];
            }
            x[i] = sum / self.factor[[i, i]];
        }
        x
    }

    /// `log |A| = 2 sum_i log L_ii`.
    pub fn log_determinant(&self) -> S {
        let two = S::of(2.0);
        (0..self.factor.nrows())
            .map(|i| self.factor[[i, i]].ln())
            .fold(S::zero(), |acc, v| acc + v)
            * two
    }
}

/// Squared Euclidean distance between two rows.
pub fn sq_dist<S: Scalar>(a: &ArrayView1<S>, b: &ArrayView1<S>) -> S {
    let mut acc = S::zero();
    for (x, y) in a.iter().zip(b.iter()) {
        let d = *x - *y;
        acc = acc + d * d;
    }
    acc
}

/// Minimum pairwise Euclidean distance between rows of `points`.
/// Returns `None` for fewer than two rows.
pub fn min_pairwise_distance<S: Scalar>(points: &ArrayView2<S>) -> Option<S> {
    let m = points.nrows();
    if m < 2 {
        return None;
    }
    let mut best = S::infinity();
    for i in 0..m {
        for j in i + 1..m {
            let d = sq_dist(&points.row(i), &points.row(j));
            if d < best {
                best = d;
            }
        }
    }
    Some(best.sqrt())
}

/// Condensed matrix of pairwise Euclidean distances (row-major upper triangle).
pub fn pairwise_distances<S: Scalar>(points: &ArrayView2<S>) -> Vec<S> {
    let m = points.nrows();
    let mut out = Vec::with_capacity(m * (m.saturating_sub(1)) / 2);
    for i in 0..m {
        for j in i + 1..m {
            out.push(sq_dist(&points.row(i), &points.row(j)).sqrt());
        }
    }
    out
}

/// Pearson correlation matrix of the columns of `x`.
///
/// Columns with (numerically) zero variance correlate 0 with everything,
/// keeping the matrix finite for degenerate inputs.
pub fn pearson_correlation<S: Scalar>(x: &ArrayView2<S>) -> Array2<S> {
    let m = x.nrows();
    let n = x.ncols();
    let mut corr = Array2::eye(n);
    if m < 2 {
        return corr;
    }
    let mf = S::of(m as f64);
    let means: Vec<S> = (0..n)
        .map(|j| x.column(j).iter().copied().sum::<S>() / mf)
        .collect();
    let mut centered = x.to_owned();
    for j in 0..n {
        centered.column_mut(j).mapv_inplace(|v| v - means[j]);
    }
    let stds: Vec<S> = (0..n)
        .map(|j| {
            centered
                .column(j)
                .iter()
                .map(|v| *v * *v)
                .sum::<S>()
                .sqrt()
        })
        .collect();
    let tiny = S::of(1e-30);
    for a in 0..n {
        for b in a + 1..n {
            let cov: S = centered
                .column(a)
                .iter()
                .zip(centered.column(b).iter())
                .map(|(x, y)| *x * *y)
                .sum();
            let denom = stds[a] * stds[b];
            let rho = if denom > tiny { cov / denom } else { S::zero() };
            corr[[a, b]] = rho;
            corr[[b, a]] = rho;
        }
    }
    corr
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::{array, Array2};

    #[test]
    fn cholesky_reproduces_known_factor() {
        let a: Array2<f64> = array![[4.0, 2.0], [2.0, 3.0]];
        let chol = Cholesky::new(&a.view()).unwrap();
        let l = chol.factor();
        assert!((l[[0, 0]] - 2.0).abs() < 1e-12);
        assert!((l[[1, 0]] - 1.0).abs() < 1e-12);
        assert!((l[[1, 1]] - 2.0f64.sqrt()).abs() < 1e-12);
        let b = array![1.0, 2.0];
        let x = chol.solve(&b.view());
        // A x = b check
        assert!((4.0 * x[0] + 2.0 * x[1] - 1.0).abs() < 1e-12);
        assert!((2.0 * x[0] + 3.0 * x[1] - 2.0).abs() < 1e-12);
        assert!((chol.log_determinant() - (8.0f64).ln()).abs() < 1e-12);
    }

    #[test]
    fn cholesky_rejects_singular() {
        let a: Array2<f64> = array![[1.0, 1.0], [1.0, 1.0]];
        assert!(Cholesky::new(&a.view()).is_err());
    }

    #[test]
    fn correlation_of_anticorrelated_columns() {
        let x: Array2<f64> = array![[0.0, 1.0], [1.0, 0.0], [2.0, -1.0]];
        let c = pearson_correlation(&x.view());
        assert!((c[[0, 1]] + 1.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_column_correlates_zero() {
        let x = array![[1.0, 0.3], [1.0, 0.7], [1.0, 0.1]];
        let c = pearson_correlation(&x.view());
        assert_eq!(c[[0, 1]], 0.0);
        assert_eq!(c[[0, 0]], 1.0);
    }

    #[test]
    fn min_distance_matches_hand_value() {
        let x: Array2<f64> = array![[0.0, 0.0], [1.0, 1.0], [0.1, 0.0]];
        let d = min_pairwise_distance(&x.view()).unwrap();
        assert!((d - 0.1).abs() < 1e-12);
    }
}
