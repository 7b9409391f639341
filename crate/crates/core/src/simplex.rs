//! Maximization over the probability simplex of diagonal qutrit inputs and
//! over real intervals: a coarse grid followed by golden-section line
//! searches.

use serde::Serialize;

use crate::error::{Error, Result};

pub const COARSE_STEP: f64 = 0.01;
pub const DEFAULT_TOL: f64 = 1e-9;
const MAX_SWEEPS: usize = 400;
const LINE_TOL: f64 = 1e-13;
const MAX_GOLDEN_ITERS: usize = 200;
const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Populations `(p0, p1, p2)` of a diagonal qutrit input.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimplexPoint {
    pub p0: f64,
    pub p1: f64,
    pub p2: f64,
}

impl SimplexPoint {
    pub fn new(p0: f64, p1: f64, p2: f64) -> Result<Self> {
        let ok = [p0, p1, p2].iter().all(|p| p.is_finite() && *p >= -1e-12);
        if !ok || (p0 + p1 + p2 - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidDensity(format!(
                "({p0}, {p1}, {p2}) is not a probability vector"
            )));
        }
        Ok(Self::clamped([p0, p1, p2]))
    }

    /// Projects small rounding errors back onto the simplex.
    fn clamped(p: [f64; 3]) -> Self {
        let p = p.map(|x| x.max(0.0));
        let s: f64 = p.iter().sum();
        Self {
            p0: p[0] / s,
            p1: p[1] / s,
            p2: p[2] / s,
        }
    }

    pub fn vertex(k: usize) -> Self {
        let mut p = [0.0; 3];
        p[k] = 1.0;
        Self::clamped(p)
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.p0, self.p1, self.p2]
    }

    pub fn swapped(&self, a: usize, b: usize) -> Self {
        let mut p = self.as_array();
        p.swap(a, b);
        Self {
            p0: p[0],
            p1: p[1],
            p2: p[2],
        }
    }
}

/// Golden-section search for the maximum of `f` on `[a, b]`. Returns the
/// best abscissa seen and its value.
pub fn golden_section_max<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: f64) -> (f64, f64) {
    let (mut lo, mut hi) = (a.min(b), a.max(b));
    let mut best = (lo, f(lo));
    let fh = f(hi);
    if fh > best.1 {
        best = (hi, fh);
    }
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..MAX_GOLDEN_ITERS {
        if hi - lo <= tol {
            break;
        }
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    for (x, v) in [(x1, f1), (x2, f2)] {
        if v > best.1 {
            best = (x, v);
        }
    }
    best
}

/// Maximum of `f` on `[a, b]`: a 101-point grid, then golden-section search
/// in the two cells around the best node.
pub fn maximize_interval<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64) -> (f64, f64) {
    const N: usize = 100;
    let h = (b - a) / N as f64;
    let mut best = (a, f(a));
    let mut best_k = 0;
    for k in 1..=N {
        let x = if k == N { b } else { a + k as f64 * h };
        let v = f(x);
        if v > best.1 {
            best = (x, v);
            best_k = k;
        }
    }
    let lo = a + best_k.saturating_sub(1) as f64 * h;
    let hi = (a + (best_k + 1) as f64 * h).min(b);
    let refined = golden_section_max(&mut f, lo, hi, LINE_TOL);
    if refined.1 > best.1 {
        refined
    } else {
        best
    }
}

fn coarse_grid<F: FnMut(&SimplexPoint) -> f64>(f: &mut F) -> Vec<(SimplexPoint, f64)> {
    let n = (1.0 / COARSE_STEP).round() as usize;
    let mut out = Vec::with_capacity((n + 1) * (n + 2) / 2);
    for i in 0..=n {
        for j in 0..=(n - i) {
            let p0 = i as f64 / n as f64;
            let p1 = j as f64 / n as f64;
            let p = SimplexPoint::clamped([p0, p1, 1.0 - p0 - p1]);
            let v = f(&p);
            out.push((p, v));
        }
    }
    out
}

/// Feasible range of `t` such that `p + t * dir` stays in the simplex.
fn feasible_range(p: &[f64; 3], dir: &[f64; 3]) -> (f64, f64) {
    let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
    for k in 0..3 {
        if dir[k] > 0.0 {
            lo = lo.max(-p[k] / dir[k]);
        } else if dir[k] < 0.0 {
            hi = hi.min(-p[k] / dir[k]);
        }
    }
    // with max |dir_k| = 1 no feasible step exceeds 1 in size
    (lo.clamp(-1.0, 0.0), hi.clamp(0.0, 1.0))
}

fn line_search<F: FnMut(&SimplexPoint) -> f64>(
    f: &mut F,
    p: &SimplexPoint,
    value: f64,
    dir: [f64; 3],
) -> (SimplexPoint, f64) {
    let base = p.as_array();
    let scale = dir.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if scale == 0.0 || !scale.is_finite() {
        return (*p, value);
    }
    let dir = dir.map(|x| x / scale);
    let (lo, hi) = feasible_range(&base, &dir);
    if hi - lo < 1e-15 {
        return (*p, value);
    }
    let at = |t: f64| {
        SimplexPoint::clamped([
            base[0] + t * dir[0],
            base[1] + t * dir[1],
            base[2] + t * dir[2],
        ])
    };
    let (t, v) = golden_section_max(|t| f(&at(t)), lo, hi, LINE_TOL);
    if v > value {
        (at(t), v)
    } else {
        (*p, value)
    }
}

/// Coordinate ascent along the three edge directions of the simplex, with
/// an extra search along each sweep's net displacement.
fn refine<F: FnMut(&SimplexPoint) -> f64>(
    f: &mut F,
    start: SimplexPoint,
    start_value: f64,
    tol: f64,
) -> (SimplexPoint, f64) {
    const DIRS: [[f64; 3]; 3] = [[1.0, -1.0, 0.0], [1.0, 0.0, -1.0], [0.0, 1.0, -1.0]];
    let (mut p, mut v) = (start, start_value);
    for _ in 0..MAX_SWEEPS {
        let (p_old, v_old) = (p, v);
        for dir in DIRS {
            (p, v) = line_search(f, &p, v, dir);
        }
        let a = p.as_array();
        let b = p_old.as_array();
        let mut disp = [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
        let shift = (disp[0] + disp[1] + disp[2]) / 3.0;
        disp.iter_mut().for_each(|x| *x -= shift);
        if disp.iter().any(|x| x.abs() > 1e-14) {
            (p, v) = line_search(f, &p, v, disp);
        }
        if v - v_old < tol {
            break;
        }
    }
    (p, v)
}

/// Maximum of `f` over the simplex from the best coarse-grid node.
pub fn maximize_simplex<F: FnMut(&SimplexPoint) -> f64>(mut f: F, tol: f64) -> (SimplexPoint, f64) {
    let grid = coarse_grid(&mut f);
    let (p, v) = grid
        .iter()
        .copied()
        .fold((SimplexPoint::vertex(0), f64::NEG_INFINITY), |best, cur| {
            if cur.1 > best.1 {
                cur
            } else {
                best
            }
        });
    refine(&mut f, p, v, tol)
}

/// Like [`maximize_simplex`] but refines from the `starts` best coarse-grid
/// nodes and keeps the best result; for objectives that may not be concave.
pub fn maximize_simplex_multistart<F: FnMut(&SimplexPoint) -> f64>(
    mut f: F,
    tol: f64,
    starts: usize,
) -> (SimplexPoint, f64) {
    let mut grid = coarse_grid(&mut f);
    // stable: ties keep grid order
    grid.sort_by(|a, b| b.1.total_cmp(&a.1));
    let mut best = (SimplexPoint::vertex(0), f64::NEG_INFINITY);
    for &(p, v) in grid.iter().take(starts.max(1)) {
        let r = refine(&mut f, p, v, tol);
        if r.1 > best.1 {
            best = r;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::shannon_entropy;

    #[test]
    fn entropy_maximum_is_uniform() {
        let (p, v) = maximize_simplex(|p| shannon_entropy(&p.as_array()), DEFAULT_TOL);
        assert!((v - 3f64.log2()).abs() < 1e-12);
        for x in p.as_array() {
            assert!((x - 1.0 / 3.0).abs() < 1e-5);
        }
    }

    #[test]
    fn linear_maximum_is_vertex() {
        let (p, v) = maximize_simplex(|p| p.p0, DEFAULT_TOL);
        assert_eq!(v, 1.0);
        assert_eq!(p, SimplexPoint::vertex(0));
    }

    #[test]
    fn off_grid_smooth_maximum() {
        let target = [0.123456, 0.654321, 0.222223];
        let f = |p: &SimplexPoint| {
            let a = p.as_array();
            -(0..3).map(|k| (a[k] - target[k]).powi(2) * (k as f64 + 1.0)).sum::<f64>()
        };
        let (p, v) = maximize_simplex(f, 1e-15);
        assert!(v > -1e-14, "{v}");
        assert!((p.p0 - target[0]).abs() < 1e-6);
    }

    #[test]
    fn multistart_finds_separated_peak() {
        // two narrow bumps; the higher one sits between coarse nodes
        let f = |p: &SimplexPoint| {
            let a = (-((p.p0 - 0.8).powi(2) + (p.p1 - 0.1).powi(2)) * 2000.0).exp();
            let b = 1.05 * (-((p.p0 - 0.105).powi(2) + (p.p1 - 0.105).powi(2)) * 2000.0).exp();
            a + b
        };
        let (_, single) = maximize_simplex(f, 1e-12);
        assert!((single - 1.0).abs() < 1e-6);
        let (_, v) = maximize_simplex_multistart(f, 1e-12, 16);
        assert!((v - 1.05).abs() < 1e-6);
    }

    #[test]
    fn golden_and_interval() {
        let (x, v) = golden_section_max(|x| -(x - 0.3).powi(2), 0.0, 1.0, 1e-12);
        assert!((x - 0.3).abs() < 1e-6 && v.abs() < 1e-12);
        let (x, _) = maximize_interval(|x| x, 0.0, 1.0);
        assert_eq!(x, 1.0);
        let (x, _) = maximize_interval(|x| (6.0 * x).sin(), 0.0, 1.0);
        assert!((x - std::f64::consts::FRAC_PI_2 / 6.0).abs() < 1e-6);
    }

    #[test]
    fn simplex_point_validation() {
        assert!(SimplexPoint::new(0.5, 0.5, 0.0).is_ok());
        assert!(SimplexPoint::new(0.5, 0.6, 0.0).is_err());
        assert!(SimplexPoint::new(-0.1, 0.6, 0.5).is_err());
    }
}
