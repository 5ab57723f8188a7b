//! Row-major design matrices.

use crate::error::{Error, Result};

/// `n` points in `d` dimensions, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Design {
    n: usize,
    d: usize,
    data: Vec<f64>,
}

impl Design {
    pub fn new(n: usize, d: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != n * d {
            return Err(Error::DimensionMismatch {
                expected: n * d,
                got: data.len(),
            });
        }
        Ok(Self { n, d, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let d = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * d);
        for r in rows {
            if r.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Self::new(rows.len(), d, data)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.d..(i + 1) * self.d]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> + '_ {
        // chunks_exact(0) panics; a zero-dimensional design has empty rows
        (0..self.n).map(move |i| self.row(i))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// Stacks two designs of equal width.
    pub fn concat(&self, other: &Design) -> Result<Design> {
        if self.d != other.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                got: other.d,
            });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Design::new(self.n + other.n, self.d, data)
    }

    /// Mean over rows of the squared sup-norm, written ‖x‖²_∞ in the cover bound.
    pub fn mean_sq_sup_norm(&self) -> f64 {
        if self.n == 0 {
            return 0.0;
        }
        self.rows()
            .map(|r| r.iter().fold(0.0f64, |m, v| m.max(v.abs())).powi(2))
            .sum::<f64>()
            / self.n as f64
    }

    /// Applies `f` to every row.
    pub fn map_rows<F: Fn(&[f64]) -> f64>(&self, f: F) -> Vec<f64> {
        self.rows().map(f).collect()
    }
}
