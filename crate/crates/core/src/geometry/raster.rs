//! Flood-fill oracle for the two-neighbourhood complement.
//!
//! The window `[a - 2a_n, b + 2a_n] x [0, 1.2 cap]` is split into
//! `grid x grid` cells. A cell is blocked when its centre lies in
//! `U(a) ∪ U(b)`, or when the anchor's vertical segment `{x0} x (0, cap)`
//! (which is inside `U(x0)`) crosses the cell. The free cells are labelled
//! by 4-connected flood fill. The bottom edge is the boundary line of the
//! half-plane, so only the left, right and top edges count as the frame.

use serde::Serialize;

use super::lens::{in_bounded_component, LensRegion};
use super::{Neighborhood, Point};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize)]
pub struct RasterLabels {
    pub grid: usize,
    pub x_min: f64,
    pub x_max: f64,
    pub y_max: f64,
    /// Row-major from the bottom row, `0` for blocked cells, components from `1`.
    pub labels: Vec<u32>,
    pub components: u32,
    /// The unique component that avoids the frame, if there is exactly one.
    pub bounded: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Agreement {
    pub compared: usize,
    pub agreed: usize,
    pub band_cells: usize,
}

impl Agreement {
    pub fn fraction(&self) -> f64 {
        if self.compared == 0 {
            1.0
        } else {
            self.agreed as f64 / self.compared as f64
        }
    }
}

impl RasterLabels {
    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / self.grid as f64
    }

    pub fn dy(&self) -> f64 {
        self.y_max / self.grid as f64
    }

    pub fn center(&self, col: usize, row: usize) -> Point {
        Point::new(self.x_min + (col as f64 + 0.5) * self.dx(), (row as f64 + 0.5) * self.dy())
    }

    pub fn label(&self, col: usize, row: usize) -> u32 {
        self.labels[row * self.grid + col]
    }

    /// Compares the bounded raster component with the analytic lens on every
    /// cell whose 5x5 neighbourhood of centres has a constant analytic
    /// classification, i.e. cells at least two cell widths from the boundary.
    pub fn agreement(&self, lens: &LensRegion) -> Agreement {
        let g = self.grid;
        let analytic: Vec<bool> =
            (0..g * g).map(|idx| in_bounded_component(self.center(idx % g, idx / g), lens)).collect();
        let mut result = Agreement { compared: 0, agreed: 0, band_cells: 0 };
        for row in 0..g {
            for col in 0..g {
                let here = analytic[row * g + col];
                let in_band = (row.saturating_sub(2)..=(row + 2).min(g - 1)).any(|r| {
                    (col.saturating_sub(2)..=(col + 2).min(g - 1)).any(|c| analytic[r * g + c] != here)
                });
                if in_band {
                    result.band_cells += 1;
                    continue;
                }
                result.compared += 1;
                let raster = self.bounded.is_some_and(|b| self.labels[row * g + col] == b);
                if raster == here {
                    result.agreed += 1;
                }
            }
        }
        result
    }
}

pub fn raster_components(lens: &LensRegion, grid: usize) -> Result<RasterLabels> {
    if grid < 100 {
        return Err(Error::Argument(format!("raster grid must be at least 100, got {grid}")));
    }
    let profile = lens.profile();
    let a_n = profile.half_width();
    let cap = profile.cap();
    let (x_min, x_max, y_max) = (lens.a() - 2.0 * a_n, lens.b() + 2.0 * a_n, 1.2 * cap);
    let dx = (x_max - x_min) / grid as f64;
    let dy = y_max / grid as f64;
    let sets = [
        Neighborhood::from_profile(profile.clone(), lens.a()),
        Neighborhood::from_profile(profile.clone(), lens.b()),
    ];
    let axis_cols: Vec<usize> =
        sets.iter().map(|u| (((u.anchor() - x_min) / dx).floor() as usize).min(grid - 1)).collect();

    let mut blocked = vec![false; grid * grid];
    for row in 0..grid {
        let y = (row as f64 + 0.5) * dy;
        for col in 0..grid {
            let p = Point::new(x_min + (col as f64 + 0.5) * dx, y);
            let on_axis = y < cap && axis_cols.contains(&col);
            blocked[row * grid + col] = on_axis || sets.iter().any(|u| u.contains_unchecked(p));
        }
    }

    let mut labels = vec![0u32; grid * grid];
    let mut touches_frame = vec![false];
    let mut next = 0u32;
    let mut stack = Vec::new();
    for start in 0..grid * grid {
        if blocked[start] || labels[start] != 0 {
            continue;
        }
        next += 1;
        let mut frame = false;
        labels[start] = next;
        stack.push(start);
        while let Some(idx) = stack.pop() {
            let (row, col) = (idx / grid, idx % grid);
            frame |= col == 0 || col == grid - 1 || row == grid - 1;
            let mut visit = |n: usize| {
                if !blocked[n] && labels[n] == 0 {
                    labels[n] = next;
                    stack.push(n);
                }
            };
            if col > 0 {
                visit(idx - 1);
            }
            if col + 1 < grid {
                visit(idx + 1);
            }
            if row > 0 {
                visit(idx - grid);
            }
            if row + 1 < grid {
                visit(idx + grid);
            }
        }
        touches_frame.push(frame);
    }
    let interior: Vec<u32> = (1..=next).filter(|&l| !touches_frame[l as usize]).collect();
    Ok(RasterLabels {
        grid,
        x_min,
        x_max,
        y_max,
        labels,
        components: next,
        bounded: (interior.len() == 1).then(|| interior[0]),
    })
}
