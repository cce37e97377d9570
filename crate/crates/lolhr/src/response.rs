//! Batch evaluation interface shared by true models, surrogates and the
//! external-process bridge.

use ndarray::{Array2, ArrayView2};

use crate::Result;

/// Something that maps a batch of input points to all response columns.
///
/// Implementations must be pure (same input, same output) and safe to call
/// concurrently.
pub trait ResponseSet: Send + Sync {
    /// Number of input dimensions.
    fn n_inputs(&self) -> usize;
    /// Number of response columns.
    fn n_responses(&self) -> usize;
    /// Evaluate all responses for each row of `x`; returns `x.nrows() x n_responses`.
    fn eval(&self, x: &ArrayView2<f64>) -> Result<Array2<f64>>;
}

/// Closed-form response set built from per-row closures.
pub struct AnalyticResponses {
    n_inputs: usize,
    functions: Vec<Box<dyn Fn(&[f64]) -> f64 + Send + Sync>>,
}

impl AnalyticResponses {
    pub fn new(
        n_inputs: usize,
        functions: Vec<Box<dyn Fn(&[f64]) -> f64 + Send + Sync>>,
    ) -> Self {
        Self {
            n_inputs,
            functions,
        }
    }
}

impl ResponseSet for AnalyticResponses {
    fn n_inputs(&self) -> usize {
        self.n_inputs
    }

    fn n_responses(&self) -> usize {
        self.functions.len()
    }

    fn eval(&self, x: &ArrayView2<f64>) -> Result<Array2<f64>> {
        let mut out = Array2::zeros((x.nrows(), self.functions.len()));
        let mut row_buf = vec![0.0; x.ncols()];
        for (i, row) in x.rows().into_iter().enumerate() {
            for (b, v) in row_buf.iter_mut().zip(row.iter()) {
                *b = *v;
            }
            for (j, f) in self.functions.iter().enumerate() {
                out[[i, j]] = f(&row_buf);
            }
        }
        Ok(out)
    }
}

/// Count evaluations passing through an inner response set.
pub struct CountingResponses<'a> {
    inner: &'a dyn ResponseSet,
    count: std::sync::atomic::AtomicUsize,
}

impl<'a> CountingResponses<'a> {
    pub fn new(inner: &'a dyn ResponseSet) -> Self {
        Self {
            inner,
            count: std::sync::atomic::AtomicUsize::new(0),
        }
    }

    pub fn count(&self) -> usize {
        self.count.load(std::sync::atomic::Ordering::SeqCst)
    }
}

impl ResponseSet for CountingResponses<'_> {
    fn n_inputs(&self) -> usize {
        self.inner.n_inputs()
    }

    fn n_responses(&self) -> usize {
        self.inner.n_responses()
    }

    fn eval(&self, x: &ArrayView2<f64>) -> Result<Array2<f64>> {
        self.count
            .fetch_add(x.nrows(), std::sync::atomic::Ordering::SeqCst);
        self.inner.eval(x)
    }
}
