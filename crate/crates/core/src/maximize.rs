//! Grid search followed by golden-section refinement.
//!
//! This is careful floating point, not a rigorous enclosure: results always
//! carry `certified = false`.

use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MaximizationResult {
    pub max_value: f64,
    pub arg_max: f64,
    pub grid_resolution: f64,
    pub refinement_iterations: usize,
    pub evaluations: usize,
    pub certified: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaximizeOptions {
    /// How many local maxima of the grid are refined.
    pub refine_top: usize,
    /// Width of the final golden-section bracket.
    pub tol: f64,
}

impl Default for MaximizeOptions {
    fn default() -> Self {
        MaximizeOptions { refine_top: 5, tol: 1e-8 }
    }
}

/// `lo, lo + h, ..., hi` with `hi` always included.
pub fn uniform_grid(lo: f64, hi: f64, h: f64) -> Vec<f64> {
    assert!(h > 0.0 && hi >= lo);
    let n = ((hi - lo) / h).floor() as usize;
    let mut pts: Vec<f64> = (0..=n).map(|i| lo + i as f64 * h).collect();
    if *pts.last().unwrap() < hi {
        pts.push(hi);
    }
    pts
}

/// Step `max(h, rel·r)`: uniform `h` near the origin, geometric further out.
pub fn graded_grid(lo: f64, hi: f64, h: f64, rel: f64) -> Vec<f64> {
    assert!(h > 0.0 && rel >= 0.0 && hi >= lo);
    let mut pts = vec![lo];
    let mut r = lo;
    while r < hi {
        r = (r + h.max(rel * r.abs())).min(hi);
        pts.push(r);
    }
    pts
}

fn golden<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64, usize) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    let mut it = 0;
    while (b - a).abs() > tol && it < 200 {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        it += 1;
    }
    if fc >= fd {
        (c, fc, it)
    } else {
        (d, fd, it)
    }
}

/// Maximise `f` over the sorted sample points `grid`, then refine the best
/// `refine_top` grid-local maxima inside their neighbouring cells.
pub fn maximize_on_grid<F>(f: F, grid: &[f64], opts: MaximizeOptions) -> MaximizationResult
where
    F: Fn(f64) -> f64 + Sync,
{
    assert!(!grid.is_empty());
    let vals: Vec<f64> = grid.par_iter().map(|&x| f(x)).collect();
    let n = vals.len();
    let mut peaks: Vec<usize> = (0..n)
        .filter(|&i| (i == 0 || vals[i] >= vals[i - 1]) && (i + 1 == n || vals[i] >= vals[i + 1]))
        .collect();
    peaks.sort_by(|&i, &j| vals[j].total_cmp(&vals[i]).then(i.cmp(&j)));
    peaks.truncate(opts.refine_top.max(1));

    let resolution = grid.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
    let mut best = (grid[peaks[0]], vals[peaks[0]]);
    let mut iters = 0;
    let mut evals = n;
    for &i in &peaks {
        let lo = grid[i.saturating_sub(1)];
        let hi = grid[(i + 1).min(n - 1)];
        if hi > lo {
            let (x, v, it) = golden(&f, lo, hi, opts.tol);
            iters += it;
            evals += it + 2;
            if v > best.1 {
                best = (x, v);
            }
        }
        if vals[i] > best.1 {
            best = (grid[i], vals[i]);
        }
    }
    MaximizationResult {
        max_value: best.1,
        arg_max: best.0,
        grid_resolution: if resolution.is_finite() { resolution } else { 0.0 },
        refinement_iterations: iters,
        evaluations: evals,
        certified: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_interior_peak() {
        let f = |x: f64| -(x - 1.234_567_89).powi(2) + 3.0;
        let r = maximize_on_grid(f, &uniform_grid(0.0, 5.0, 1e-3), MaximizeOptions::default());
        assert!((r.arg_max - 1.234_567_89).abs() < 1e-7);
        assert!((r.max_value - 3.0).abs() < 1e-12);
        assert!(!r.certified);
    }

    #[test]
    fn picks_global_among_several() {
        let f = |x: f64| (3.0 * x).sin() + 0.1 * x;
        let grid = uniform_grid(0.0, 10.0, 1e-3);
        let r = maximize_on_grid(f, &grid, MaximizeOptions::default());
        for &x in &grid {
            assert!(r.max_value >= f(x));
        }
    }

    #[test]
    fn grids_include_endpoints() {
        let g = uniform_grid(1.0, 2.0, 0.3);
        assert_eq!(*g.last().unwrap(), 2.0);
        let g = graded_grid(2.0, 1e4, 1e-3, 1e-4);
        assert_eq!(*g.last().unwrap(), 1e4);
        assert!(g.windows(2).all(|w| w[1] > w[0]));
    }
}
