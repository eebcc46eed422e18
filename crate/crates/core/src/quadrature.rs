//! Gauss–Legendre rules and composite integration on panels.
//!
//! The oscillatory integrals in this crate are all of the form
//! `∫ f(p) e^{i φ(p)} dp` with smooth `f` and a phase whose speed is known in
//! advance, so a composite rule whose panel count is keyed to the phase speed
//! is enough. [`NodeSet`] exposes the raw nodes so callers can cache
//! x-independent parts of an integrand and reuse them for every output point.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
#[derive(Clone, Debug)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(order: usize) -> Self {
        assert!(order >= 1);
        let n = order;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            // Tricomi initial guess, then Newton on P_n.
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Flattened composite-rule nodes over a union of intervals.
#[derive(Clone, Debug, Default)]
pub struct NodeSet {
    pub points: Vec<f64>,
    pub weights: Vec<f64>,
}

impl NodeSet {
    /// Composite rule with `panels` equal panels on each segment between
    /// consecutive breakpoints. Breakpoints must be increasing.
    pub fn composite(rule: &GaussLegendre, breakpoints: &[f64], panels: usize) -> Self {
        let mut set = NodeSet::default();
        for seg in breakpoints.windows(2) {
            let (a, b) = (seg[0], seg[1]);
            let h = (b - a) / panels as f64;
            for k in 0..panels {
                let lo = a + k as f64 * h;
                let half = 0.5 * h;
                let mid = lo + half;
                for (x, w) in rule.nodes.iter().zip(&rule.weights) {
                    set.points.push(mid + half * x);
                    set.weights.push(half * w);
                }
            }
        }
        set
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.points.iter().zip(&self.weights).map(|(&p, &w)| w * f(p)).sum()
    }

    pub fn integrate_complex<F: Fn(f64) -> Complex64>(&self, f: F) -> Complex64 {
        self.points.iter().zip(&self.weights).map(|(&p, &w)| f(p) * w).sum()
    }
}

/// Per-panel order used throughout the crate.
pub const PANEL_ORDER: usize = 20;

/// Number of panels per unit length that gives every oscillation of a phase
/// with speed `phase_speed` (radians per unit length) at least ~10 nodes.
pub fn panels_for(length: f64, phase_speed: f64, margin: usize) -> usize {
    let oscillations = length * phase_speed / (2.0 * std::f64::consts::PI);
    (oscillations * 10.0 / PANEL_ORDER as f64).ceil() as usize + margin
}

/// Integrates a real function over `breakpoints` by doubling the panel count
/// until two successive estimates agree to `tol` (absolute, scaled by
/// `max(1, |I|)`).
pub fn adaptive<F: Fn(f64) -> f64>(
    f: F,
    breakpoints: &[f64],
    initial_panels: usize,
    tol: f64,
    max_panels: usize,
) -> Result<f64> {
    let rule = GaussLegendre::new(PANEL_ORDER);
    let mut panels = initial_panels.max(1);
    let mut prev = NodeSet::composite(&rule, breakpoints, panels).integrate(&f);
    loop {
        panels *= 2;
        let cur = NodeSet::composite(&rule, breakpoints, panels).integrate(&f);
        let est = (cur - prev).abs();
        if est <= tol * cur.abs().max(1.0) {
            return Ok(cur);
        }
        if panels >= max_panels {
            return Err(Error::QuadratureNotConverged { estimate: est, tolerance: tol, panels });
        }
        prev = cur;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_integrates_polynomials_exactly() {
        let rule = GaussLegendre::new(10);
        let total: f64 = rule.weights.iter().sum();
        assert!((total - 2.0).abs() < 1e-14);
        // degree 19 is exact for a 10-point rule
        let v: f64 = rule.nodes.iter().zip(&rule.weights).map(|(x, w)| w * x.powi(18)).sum();
        assert!((v - 2.0 / 19.0).abs() < 1e-14);
    }

    #[test]
    fn composite_oscillatory() {
        let rule = GaussLegendre::new(PANEL_ORDER);
        let k = 200.0;
        let set = NodeSet::composite(&rule, &[0.0, 1.0], panels_for(1.0, k, 2));
        let v = set.integrate(|p| (k * p).cos());
        assert!((v - (k).sin() / k).abs() < 1e-13);
    }

    #[test]
    fn adaptive_converges() {
        let v = adaptive(|x: f64| (-x * x).exp(), &[-6.0, 6.0], 1, 1e-13, 1 << 12).unwrap();
        assert!((v - std::f64::consts::PI.sqrt()).abs() < 1e-12);
    }
}
