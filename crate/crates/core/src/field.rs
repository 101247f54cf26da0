//! Uniformly sampled functions on `[a, b]`.

use crate::error::{Error, Result};

/// Nodal values `u_0 .. u_M` of a function on a uniform grid with `M` cells.
#[derive(Clone, Debug, PartialEq)]
pub struct Field {
    a: f64,
    b: f64,
    values: Vec<f64>,
}

impl Field {
    pub fn new(a: f64, b: f64, values: Vec<f64>) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::InvalidParameter {
                name: "domain",
                reason: format!("need finite a < b, got [{a}, {b}]"),
            });
        }
        if values.len() < 3 {
            return Err(Error::InvalidParameter {
                name: "cells",
                reason: format!("a field needs at least 2 cells, got {}", values.len().saturating_sub(1)),
            });
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "values",
                reason: format!("non-finite value at node {i}"),
            });
        }
        Ok(Field { a, b, values })
    }

    /// Samples `f` at the `cells + 1` nodes of `[a, b]`.
    pub fn from_fn(a: f64, b: f64, cells: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        let nodes = uniform_nodes(a, b, cells);
        Field::new(a, b, nodes.into_iter().map(f).collect())
    }

    pub fn constant(a: f64, b: f64, cells: usize, value: f64) -> Result<Self> {
        Field::from_fn(a, b, cells, |_| value)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn cells(&self) -> usize {
        self.values.len() - 1
    }

    pub fn step(&self) -> f64 {
        (self.b - self.a) / self.cells() as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        node(self.a, self.b, self.cells(), i)
    }

    pub fn xs(&self) -> Vec<f64> {
        uniform_nodes(self.a, self.b, self.cells())
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Same grid, new values.
    pub fn with_values(&self, values: Vec<f64>) -> Result<Self> {
        if values.len() != self.values.len() {
            return Err(Error::FieldMismatch(format!(
                "expected {} values, got {}",
                self.values.len(),
                values.len()
            )));
        }
        Field::new(self.a, self.b, values)
    }

    pub fn same_grid(&self, other: &Field) -> bool {
        self.a == other.a && self.b == other.b && self.values.len() == other.values.len()
    }

    /// Piecewise-linear interpolation, clamped to the end values outside `[a, b]`.
    pub fn interpolate(&self, x: f64) -> f64 {
        let h = self.step();
        let s = (x - self.a) / h;
        if s <= 0.0 {
            return self.values[0];
        }
        let last = self.cells();
        if s >= last as f64 {
            return self.values[last];
        }
        let i = (s.floor() as usize).min(last - 1);
        let w = s - i as f64;
        self.values[i] * (1.0 - w) + self.values[i + 1] * w
    }

    pub fn max_abs_diff(&self, other: &Field) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(u, v)| (u - v).abs())
            .fold(0.0, f64::max)
    }

    /// Composite trapezoid rule for the integral of `g(u)` over `[a, b]`.
    pub fn trapezoid(&self, g: impl Fn(f64) -> f64) -> f64 {
        let last = self.cells();
        let inner: f64 = self.values[1..last].iter().map(|&u| g(u)).sum();
        self.step() * (inner + 0.5 * (g(self.values[0]) + g(self.values[last])))
    }
}

#[inline]
pub(crate) fn node(a: f64, b: f64, cells: usize, i: usize) -> f64 {
    if i == cells {
        b
    } else {
        a + (b - a) * (i as f64) / (cells as f64)
    }
}

pub fn uniform_nodes(a: f64, b: f64, cells: usize) -> Vec<f64> {
    (0..=cells).map(|i| node(a, b, cells, i)).collect()
}
