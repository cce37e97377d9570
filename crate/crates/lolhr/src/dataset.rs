//! Accumulated evaluation data across refinement steps.

use ndarray::{Array2, ArrayView1, ArrayView2, Axis};

use crate::{Error, Result};

/// Evaluated inputs `X` (physical units) and responses `Y`, with the
/// refinement step each row was added in. Rows are never re-evaluated or
/// mutated; appends only grow the set.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    x: Array2<f64>,
    y: Array2<f64>,
    step: Vec<usize>,
}

/// Relative tolerance under which two input rows count as duplicates.
pub const DUPLICATE_TOL: f64 = 1e-12;

fn rows_match(a: &ArrayView1<f64>, b: &ArrayView1<f64>) -> bool {
    a.iter().zip(b.iter()).all(|(p, q)| {
        let scale = p.abs().max(q.abs()).max(1.0);
        (p - q).abs() <= DUPLICATE_TOL * scale
    })
}

impl Dataset {
    pub fn new(n_inputs: usize, n_responses: usize) -> Self {
        Self {
            x: Array2::zeros((0, n_inputs)),
            y: Array2::zeros((0, n_responses)),
            step: Vec::new(),
        }
    }

    pub fn n_rows(&self) -> usize {
        self.x.nrows()
    }

    pub fn n_inputs(&self) -> usize {
        self.x.ncols()
    }

    pub fn n_responses(&self) -> usize {
        self.y.ncols()
    }

    pub fn x(&self) -> ArrayView2<'_, f64> {
        self.x.view()
    }

    pub fn y(&self) -> ArrayView2<'_, f64> {
        self.y.view()
    }

    pub fn steps(&self) -> &[usize] {
        &self.step
    }

    /// Whether `row` duplicates an existing input row within [`DUPLICATE_TOL`].
    pub fn contains_row(&self, row: &ArrayView1<f64>) -> bool {
        self.x.rows().into_iter().any(|r| rows_match(&r, row))
    }

    /// Append a batch evaluated at refinement step `step`.
    ///
    /// Rejects dimension mismatches, non-finite values and duplicate rows
    /// (both against existing data and within the batch).
    pub fn append(&mut self, x: &ArrayView2<f64>, y: &ArrayView2<f64>, step: usize) -> Result<()> {
        if x.ncols() != self.n_inputs() {
            return Err(Error::DimensionMismatch {
                expected: self.n_inputs(),
                got: x.ncols(),
            });
        }
        if y.ncols() != self.n_responses() {
            return Err(Error::DimensionMismatch {
                expected: self.n_responses(),
                got: y.ncols(),
            });
        }
        if x.nrows() != y.nrows() {
            return Err(Error::Dataset(format!(
                "input rows {} != response rows {}",
                x.nrows(),
                y.nrows()
            )));
        }
        for (i, row) in y.rows().into_iter().enumerate() {
            if row.iter().any(|v| !v.is_finite()) {
                return Err(Error::Dataset(format!("non-finite response in row {i}")));
            }
        }
        for (i, row) in x.rows().into_iter().enumerate() {
            if row.iter().any(|v| !v.is_finite()) {
                return Err(Error::Dataset(format!("non-finite input in row {i}")));
            }
            if self.contains_row(&row) {
                return Err(Error::Dataset(format!("row {i} duplicates an existing row")));
            }
            for other in x.rows().into_iter().skip(i + 1) {
                if rows_match(&row, &other) {
                    return Err(Error::Dataset(format!("row {i} duplicated within batch")));
                }
            }
        }
        self.x.append(Axis(0), x.view()).expect("shape checked");
        self.y.append(Axis(0), y.view()).expect("shape checked");
        self.step.extend(std::iter::repeat(step).take(x.nrows()));
        Ok(())
    }

    /// Serialize as CSV with header `x_1..x_n, y_1..y_nr, step`.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for j in 0..self.n_inputs() {
            out.push_str(&format!("x_{},", j + 1));
        }
        for j in 0..self.n_responses() {
            out.push_str(&format!("y_{},", j + 1));
        }
        out.push_str("step\n");
        for i in 0..self.n_rows() {
            for j in 0..self.n_inputs() {
                out.push_str(&format!("{:?},", self.x[[i, j]]));
            }
            for j in 0..self.n_responses() {
                out.push_str(&format!("{:?},", self.y[[i, j]]));
            }
            out.push_str(&format!("{}\n", self.step[i]));
        }
        out
    }

    /// Parse the CSV format written by [`Dataset::to_csv`].
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Dataset("empty csv".into()))?;
        let cols: Vec<&str> = header.split(',').collect();
        let n_inputs = cols.iter().filter(|c| c.starts_with("x_")).count();
        let n_responses = cols.iter().filter(|c| c.starts_with("y_")).count();
        if n_inputs == 0 || cols.last() != Some(&"step") {
            return Err(Error::Dataset("malformed dataset header".into()));
        }
        let mut ds = Dataset::new(n_inputs, n_responses);
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        let mut steps = Vec::new();
        for (ln, line) in lines.enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != n_inputs + n_responses + 1 {
                return Err(Error::Dataset(format!("bad field count on line {}", ln + 2)));
            }
            let parse = |s: &str| -> Result<f64> {
                s.trim()
                    .parse::<f64>()
                    .map_err(|e| Error::Dataset(format!("line {}: {e}", ln + 2)))
            };
            for f in &fields[..n_inputs] {
                xs.push(parse(f)?);
            }
            for f in &fields[n_inputs..n_inputs + n_responses] {
                ys.push(parse(f)?);
            }
            steps.push(
                fields[n_inputs + n_responses]
                    .trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Dataset(format!("line {}: {e}", ln + 2)))?,
            );
        }
        let m = steps.len();
        let x = Array2::from_shape_vec((m, n_inputs), xs).expect("consistent row widths");
        let y = Array2::from_shape_vec((m, n_responses), ys).expect("consistent row widths");
        // Steps may repeat arbitrarily; appends per distinct step keep the
        // duplicate guard active.
        ds.x = x;
        ds.y = y;
        ds.step = steps;
        Ok(ds)
    }
}
