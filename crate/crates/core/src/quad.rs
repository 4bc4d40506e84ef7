//! f64 quadrature and maximization helpers (crate-internal).
//!
//! Tanh-sinh (double-exponential) product rules over the unit interval,
//! square and cube. The node transform clusters points doubly-exponentially
//! at the endpoints, which tames the boundary quasi-singularities of the
//! triple integral checked in [`crate::apery`]. Each node carries its exact
//! distance to the nearer endpoint so integrands can evaluate 1-x without
//! cancellation.

use crate::error::Error;
use crate::Result;

/// A tanh-sinh node on (0, 1): position, distance to the nearer endpoint
/// written as (x, 1-x) accurately, and the weight (step factor included
/// separately).
#[derive(Clone, Copy, Debug)]
pub struct TsNode {
    pub x: f64,
    /// 1 - x computed without cancellation.
    pub one_minus_x: f64,
    pub w: f64,
}

/// Nodes for step h = 2^-level on (0, 1), both mirror halves included.
pub fn tanh_sinh_nodes(level: u32) -> Vec<TsNode> {
    let h = 0.5f64.powi(level as i32);
    let mut nodes = Vec::new();
    let mut j = 0u64;
    loop {
        let t = j as f64 * h;
        let s = std::f64::consts::FRAC_PI_2 * t.sinh();
        // 1 - tanh(s) = 2 e^(-2s) / (1 + e^(-2s)), stable for large s
        let e = (-2.0 * s).exp();
        let comp = 2.0 * e / (1.0 + e); // = 1 - tanh(s), in (0, 1]
        let w = std::f64::consts::FRAC_PI_2 * t.cosh() / s.cosh().powi(2);
        if w < 1e-17 || comp < 1e-17 {
            break;
        }
        // map from (-1, 1) to (0, 1): u = (1 + tanh)/2, complement comp/2
        let u_hi = 1.0 - comp / 2.0;
        nodes.push(TsNode { x: u_hi, one_minus_x: comp / 2.0, w: w / 2.0 });
        if j > 0 {
            nodes.push(TsNode { x: comp / 2.0, one_minus_x: u_hi, w: w / 2.0 });
        }
        j += 1;
        if j > 100_000 {
            break;
        }
    }
    nodes
}

fn level_step(level: u32) -> f64 {
    0.5f64.powi(level as i32)
}

/// Integrates f over (0,1) by level doubling until two consecutive levels
/// agree within tol/2.
pub fn integrate_unit_interval<F>(f: F, tol: f64, max_level: u32) -> Result<f64>
where
    F: Fn(&TsNode) -> f64,
{
    let mut prev = f64::NAN;
    for level in 2..=max_level {
        let nodes = tanh_sinh_nodes(level);
        let sum: f64 = nodes.iter().map(&f).sum();
        let val = sum * level_step(level);
        if prev.is_finite() && (val - prev).abs() <= tol / 2.0 {
            return Ok(val);
        }
        prev = val;
    }
    Err(Error::BudgetExceeded(format!("1d quadrature not within {} at level {}", tol, max_level)))
}

/// Integrates f over the open unit square.
pub fn integrate_unit_square<F>(f: F, tol: f64, max_level: u32) -> Result<f64>
where
    F: Fn(&TsNode, &TsNode) -> f64,
{
    let mut prev = f64::NAN;
    for level in 2..=max_level {
        let nodes = tanh_sinh_nodes(level);
        let mut sum = 0.0;
        for a in &nodes {
            let mut inner = 0.0;
            for b in &nodes {
                inner += f(a, b);
            }
            sum += inner;
        }
        let val = sum * level_step(level).powi(2);
        if prev.is_finite() && (val - prev).abs() <= tol / 2.0 {
            return Ok(val);
        }
        prev = val;
    }
    Err(Error::BudgetExceeded(format!("2d quadrature not within {} at level {}", tol, max_level)))
}

/// Integrates f over the open unit cube.
pub fn integrate_unit_cube<F>(f: F, tol: f64, max_level: u32) -> Result<f64>
where
    F: Fn(&TsNode, &TsNode, &TsNode) -> f64,
{
    let mut prev = f64::NAN;
    for level in 2..=max_level {
        let nodes = tanh_sinh_nodes(level);
        let mut sum = 0.0;
        for a in &nodes {
            for b in &nodes {
                let mut inner = 0.0;
                for c in &nodes {
                    inner += f(a, b, c);
                }
                sum += inner;
            }
        }
        let val = sum * level_step(level).powi(3);
        if prev.is_finite() && (val - prev).abs() <= tol / 2.0 {
            return Ok(val);
        }
        prev = val;
    }
    Err(Error::BudgetExceeded(format!("3d quadrature not within {} at level {}", tol, max_level)))
}

/// Coordinate-ascent maximization over the open unit cube: coarse grid scan
/// followed by golden-section sweeps along each axis.
pub fn maximize_unit_cube<F>(f: F, grid: usize, sweeps: usize) -> (f64, [f64; 3])
where
    F: Fn(f64, f64, f64) -> f64,
{
    let mut best = f64::NEG_INFINITY;
    let mut p = [0.5f64; 3];
    for i in 1..grid {
        for j in 1..grid {
            for k in 1..grid {
                let (x, y, z) =
                    (i as f64 / grid as f64, j as f64 / grid as f64, k as f64 / grid as f64);
                let v = f(x, y, z);
                if v > best {
                    best = v;
                    p = [x, y, z];
                }
            }
        }
    }
    let golden = |g: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64| -> f64 {
        let gr = (5.0f64.sqrt() - 1.0) / 2.0;
        let mut c = b - gr * (b - a);
        let mut d = a + gr * (b - a);
        let mut fc = g(c);
        let mut fd = g(d);
        for _ in 0..90 {
            if fc < fd {
                a = c;
                c = d;
                fc = fd;
                d = a + gr * (b - a);
                fd = g(d);
            } else {
                b = d;
                d = c;
                fd = fc;
                c = b - gr * (b - a);
                fc = g(c);
            }
        }
        (a + b) / 2.0
    };
    for _ in 0..sweeps {
        for axis in 0..3 {
            let q = p;
            let line = |t: f64| {
                let mut r = q;
                r[axis] = t;
                f(r[0], r[1], r[2])
            };
            p[axis] = golden(&line, 1e-4, 1.0 - 1e-4);
        }
    }
    (f(p[0], p[1], p[2]), p)
}
