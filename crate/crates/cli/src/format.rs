//! Number and table formatting for command output.

use rayon::prelude::*;

use qcalc_core::{RealFn, Result};

/// Rounds to 12 significant digits, then prints the shortest decimal that
/// reads back as the rounded value. Very large or small magnitudes switch
/// to exponent notation.
pub fn format_value(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let rounded: f64 = format!("{v:.11e}").parse().expect("formatted float parses");
    let exponent = rounded.abs().log10().floor();
    if (-5.0..16.0).contains(&exponent) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

/// An inclusive arithmetic grid `x0, x0 + step, ...` up to `x1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub x0: f64,
    pub x1: f64,
    pub step: f64,
}

/// Largest grid size accepted, to keep accidental huge tables bounded.
pub const MAX_GRID_POINTS: usize = 10_000_000;

impl Grid {
    /// Parses `X0:X1:STEP`. The step must be nonzero and point from `x0`
    /// towards `x1`.
    pub fn parse(text: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("expected X0:X1:STEP, found '{text}'"));
        }
        let mut vals = [0.0; 3];
        for (slot, part) in vals.iter_mut().zip(&parts) {
            *slot = part
                .trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| format!("'{part}' is not a finite number"))?;
        }
        let [x0, x1, step] = vals;
        if step == 0.0 {
            return Err("STEP must be nonzero".into());
        }
        if (x1 - x0) * step < 0.0 {
            return Err("STEP points away from X1".into());
        }
        let grid = Grid { x0, x1, step };
        if grid.count() > MAX_GRID_POINTS {
            return Err(format!("grid exceeds {MAX_GRID_POINTS} points"));
        }
        Ok(grid)
    }

    pub fn count(&self) -> usize {
        // A small slack keeps x1 itself when (x1 - x0)/step is integral up to rounding.
        let n = ((self.x1 - self.x0) / self.step + 1e-9).floor();
        if n >= MAX_GRID_POINTS as f64 {
            usize::MAX
        } else {
            n as usize + 1
        }
    }

    pub fn point(&self, i: usize) -> f64 {
        self.x0 + i as f64 * self.step
    }
}

/// CSV with header `x,value`, rows in grid order. Rows are evaluated in
/// parallel; the first failing row in grid order decides the error.
pub fn render_table(grid: &Grid, f: &RealFn) -> Result<String> {
    let rows: Vec<Result<String>> = (0..grid.count())
        .into_par_iter()
        .map(|i| {
            let x = grid.point(i);
            Ok(format!("{},{}\n", format_value(x), format_value(f.eval(x)?)))
        })
        .collect();
    let mut out = String::from("x,value\n");
    for row in rows {
        out.push_str(&row?);
    }
    Ok(out)
}
