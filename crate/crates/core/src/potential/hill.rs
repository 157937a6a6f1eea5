//! Connected components of the Hill region `{V <= c}` on a uniform grid.

use std::collections::VecDeque;

use serde::Serialize;

use super::eval_v;
use crate::error::{Error, Result};
use crate::params::{MassParams, PlanePoint, CENTER_E, CENTER_M};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HillOptions {
    /// Half-width of the box when `{V <= c}` is unbounded.
    pub unbounded_half_width: Option<f64>,
    /// Finest resolution tried before giving up.
    pub max_resolution: usize,
}

impl Default for HillOptions {
    fn default() -> Self {
        HillOptions {
            unbounded_half_width: None,
            max_resolution: 4096,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HillComponent {
    pub label: usize,
    pub cells: usize,
    pub contains_e: bool,
    pub contains_m: bool,
    /// Touches the box boundary; the proxy for an unbounded component.
    pub touches_boundary: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HillReport {
    pub c: f64,
    pub resolution: usize,
    pub half_width: f64,
    pub component_count: usize,
    /// Count at the previous (half) resolution, which agreed with this one.
    pub coarse_count: usize,
    pub components: Vec<HillComponent>,
    /// Row-major `resolution x resolution` labels; `-1` outside the region.
    #[serde(skip)]
    pub mask: Vec<i32>,
}

impl HillReport {
    pub fn bounded_count(&self) -> usize {
        self.components.iter().filter(|c| !c.touches_boundary).count()
    }

    /// Cell center of row `i` (in `q2`) and column `j` (in `q1`).
    pub fn cell_center(&self, i: usize, j: usize) -> PlanePoint {
        cell_center(self.half_width, self.resolution, i, j)
    }
}

fn cell_center(r: f64, n: usize, i: usize, j: usize) -> PlanePoint {
    let h = 2.0 * r / n as f64;
    PlanePoint::new(-r + (j as f64 + 0.5) * h, -r + (i as f64 + 0.5) * h)
}

fn cell_of(r: f64, n: usize, q: PlanePoint) -> Option<(usize, usize)> {
    let h = 2.0 * r / n as f64;
    let j = ((q.q1 + r) / h).floor();
    let i = ((q.q2 + r) / h).floor();
    if i < 0.0 || j < 0.0 || i >= n as f64 || j >= n as f64 {
        return None;
    }
    Some((i as usize, j as usize))
}

/// Box half-width. When `c < 0` and there is no elastic term, the region is
/// bounded: `V >= -(m1 + m2^+)/(|q| - 1/2)` exceeds `c` outside the box.
fn box_half_width(params: &MassParams, c: f64, opts: &HillOptions) -> f64 {
    if params.eps == 0.0 && c < 0.0 {
        return 0.5 + 1.25 * (params.m1 + params.m2.max(0.0)) / -c + 0.25;
    }
    if let Some(r) = opts.unbounded_half_width {
        return r;
    }
    if params.eps > 0.0 {
        2.0 * (2.0 * c.abs() / params.eps).sqrt() + 1.0
    } else {
        4.0
    }
}

fn label_grid(params: &MassParams, c: f64, r: f64, n: usize) -> (Vec<i32>, Vec<HillComponent>) {
    let mut inside = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            inside[i * n + j] = match eval_v(cell_center(r, n, i, j), params) {
                Ok(v) => v <= c,
                Err(_) => true,
            };
        }
    }
    // the cell holding an attracting center is always in the region
    for (center, mass) in [(CENTER_E, params.m1), (CENTER_M, params.m2)] {
        if mass > 0.0 {
            if let Some((i, j)) = cell_of(r, n, center) {
                inside[i * n + j] = true;
            }
        }
    }
    let cell_e = cell_of(r, n, CENTER_E).map(|(i, j)| i * n + j);
    let cell_m = cell_of(r, n, CENTER_M).map(|(i, j)| i * n + j);

    let mut labels = vec![-1i32; n * n];
    let mut comps = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..n * n {
        if !inside[start] || labels[start] >= 0 {
            continue;
        }
        let label = comps.len();
        let mut comp = HillComponent {
            label,
            cells: 0,
            contains_e: false,
            contains_m: false,
            touches_boundary: false,
        };
        labels[start] = label as i32;
        queue.push_back(start);
        while let Some(k) = queue.pop_front() {
            let (i, j) = (k / n, k % n);
            comp.cells += 1;
            comp.contains_e |= Some(k) == cell_e;
            comp.contains_m |= Some(k) == cell_m;
            if i == 0 || j == 0 || i == n - 1 || j == n - 1 {
                comp.touches_boundary = true;
            }
            let mut visit = |kk: usize| {
                if inside[kk] && labels[kk] < 0 {
                    labels[kk] = label as i32;
                    queue.push_back(kk);
                }
            };
            if i > 0 {
                visit(k - n);
            }
            if i + 1 < n {
                visit(k + n);
            }
            if j > 0 {
                visit(k - 1);
            }
            if j + 1 < n {
                visit(k + 1);
            }
        }
        comps.push(comp);
    }
    (labels, comps)
}

/// Labels the connected components of `{V <= c}` with 4-connectivity,
/// starting at resolution `n` and doubling until two consecutive
/// resolutions agree on the component count.
pub fn hill_regions(params: &MassParams, c: f64, n: usize, opts: &HillOptions) -> Result<HillReport> {
    if !c.is_finite() || n < 4 {
        return Err(Error::InvalidArgument(format!(
            "hill regions need finite c and resolution >= 4 (got c={c}, n={n})"
        )));
    }
    let r = box_half_width(params, c, opts);
    let (_, first) = label_grid(params, c, r, n);
    let mut prev_count = first.len();
    let mut res = n;
    while res * 2 <= opts.max_resolution {
        res *= 2;
        let (mask, comps) = label_grid(params, c, r, res);
        if comps.len() == prev_count {
            return Ok(HillReport {
                c,
                resolution: res,
                half_width: r,
                component_count: comps.len(),
                coarse_count: prev_count,
                components: comps,
                mask,
            });
        }
        prev_count = comps.len();
    }
    Err(Error::GridTooCoarse { resolution: res })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equal_masses_three_components() {
        let par = MassParams::new(0.5, 0.5, 1.0).unwrap();
        let rep = hill_regions(&par, -2.2, 100, &HillOptions::default()).unwrap();
        assert_eq!(rep.component_count, 3);
        assert_eq!(rep.bounded_count(), 2);
        assert!(rep.components.iter().any(|c| c.contains_e && !c.touches_boundary));
        assert!(rep.components.iter().any(|c| c.contains_m && !c.touches_boundary));
    }

    #[test]
    fn single_mass_well_and_outer_part() {
        let par = MassParams::new(80.0, 0.0, 8.0).unwrap();
        let rep = hill_regions(&par, -70.0, 100, &HillOptions::default()).unwrap();
        assert_eq!(rep.component_count, 2);
        assert_eq!(rep.bounded_count(), 1);
        let well = rep.components.iter().find(|c| !c.touches_boundary).unwrap();
        assert!(well.contains_e);
    }

    #[test]
    fn negative_mass_single_bounded_well() {
        let par = MassParams::euler(1.0, -0.25).unwrap();
        let rep = hill_regions(&par, -2.3, 100, &HillOptions::default()).unwrap();
        assert_eq!(rep.component_count, 1);
        assert_eq!(rep.bounded_count(), 1);
        assert!(rep.components[0].contains_e);
    }

    #[test]
    fn every_region_cell_is_labelled() {
        let par = MassParams::new(1.0, 0.6, 0.5).unwrap();
        let rep = hill_regions(&par, -3.5, 64, &HillOptions::default()).unwrap();
        let n = rep.resolution;
        for i in 0..n {
            for j in 0..n {
                let inside = eval_v(rep.cell_center(i, j), &par).map(|v| v <= rep.c).unwrap_or(true);
                if inside {
                    assert!(rep.mask[i * n + j] >= 0);
                }
            }
        }
        let total: usize = rep.components.iter().map(|c| c.cells).sum();
        assert_eq!(total, rep.mask.iter().filter(|&&l| l >= 0).count());
    }
}
