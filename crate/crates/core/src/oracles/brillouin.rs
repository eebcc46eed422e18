//! Direct quadrature of the Brillouin-zone integral solution.
//!
//! In the lattice momentum `s = δp` and lattice coordinates `n = x/h`,
//! `τ = t/h`, the solution is
//!
//! ```text
//! U(x, t) = (1/π) ∫_{-π/2}^{π/2} Re[(𝒜(s) cos(ω₁(s)τ) + ℬ(s) cos(ω₂(s)τ)) Ṽ(s) e^{isn}] ds,
//! ```
//!
//! the real part of the modal integral with `e^{iωτ}` replaced by `cos(ωτ)`
//! (the sine part integrates to a purely imaginary number for real data).
//! This removes the kink of `ω₁` at `s = 0` from the integrand.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::dispersion::{mat_vec, LatticeParams};
use crate::error::{Error, Result};
use crate::initial_data::SpectralData;
use crate::oracles::field::{Method, WaveField};
use crate::oracles::lattice::check_step;
use crate::quadrature::{panels_for, GaussLegendre, NodeSet, PANEL_ORDER};

/// Which modal part to integrate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Full,
    Acoustic,
    Optical,
}

impl Mode {
    pub fn method(self) -> Method {
        match self {
            Mode::Full => Method::QuadratureFull,
            Mode::Acoustic => Method::QuadratureAc,
            Mode::Optical => Method::QuadratureOpt,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureOptions {
    /// Convergence tolerance relative to the field's peak.
    pub tol: f64,
    /// Panel doublings allowed after the initial estimate.
    pub max_doublings: usize,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        Self { tol: 1e-8, max_doublings: 8 }
    }
}

/// x-independent integrand data at one node: `w · M(s) Ṽ(s)` per species,
/// with `M` the time-evolved modal matrix.
struct Node {
    s: f64,
    zu: Complex64,
    zv: Complex64,
}

fn node_data(params: &LatticeParams, spec: &SpectralData, set: &NodeSet, tau: f64, mode: Mode) -> Result<Vec<Node>> {
    let disp = params.dispersion()?;
    Ok(set
        .points
        .par_iter()
        .zip(&set.weights)
        .map(|(&s, &w)| {
            let (a, b) = disp.modal_matrices(s);
            let c1 = (disp.omega1_smooth(s) * tau).cos();
            let c2 = (disp.omega2(s) * tau).cos();
            let (ka, kb) = match mode {
                Mode::Full => (c1, c2),
                Mode::Acoustic => (c1, 0.0),
                Mode::Optical => (0.0, c2),
            };
            let m = [
                [ka * a[0][0] + kb * b[0][0], ka * a[0][1] + kb * b[0][1]],
                [ka * a[1][0] + kb * b[1][0], ka * a[1][1] + kb * b[1][1]],
            ];
            let z = mat_vec(&m, spec.lattice_transform(s));
            Node { s, zu: z[0] * w, zv: z[1] * w }
        })
        .collect())
}

fn evaluate(nodes: &[Node], n: f64) -> (f64, f64) {
    let (mut u, mut v) = (0.0, 0.0);
    for node in nodes {
        let (sn, cs) = (node.s * n).sin_cos();
        u += node.zu.re * cs - node.zu.im * sn;
        v += node.zv.re * cs - node.zv.im * sn;
    }
    (u / PI, v / PI)
}

/// Evaluates the selected modal part of the exact solution on `x_grid` at
/// time `t`. Panels are doubled until the whole field changes by at most
/// `opts.tol · peak`.
pub fn solve_quadrature(
    params: &LatticeParams,
    spec: &SpectralData,
    x_grid: &[f64],
    t: f64,
    mode: Mode,
    opts: &QuadratureOptions,
) -> Result<WaveField> {
    check_step(params, &spec.profile)?;
    if !t.is_finite() {
        return Err(Error::InvalidTime { t, reason: "must be finite" });
    }
    let h = params.h;
    let tau = t / h;
    let half = spec.significant_halfwidth();
    let n_max = x_grid.iter().fold(0.0f64, |m, x| m.max((x / h).abs()));
    let c = params.dispersion()?.c;
    let speed = n_max + c * tau.abs() + spec.samples.max_site() as f64 + 1.0;
    let rule = GaussLegendre::new(PANEL_ORDER);
    let mut panels = panels_for(2.0 * half, speed, 2);

    let solve = |panels: usize| -> Result<Vec<(f64, f64)>> {
        let set = NodeSet::composite(&rule, &[-half, half], panels);
        let nodes = node_data(params, spec, &set, tau, mode)?;
        Ok(x_grid.par_iter().map(|&x| evaluate(&nodes, x / h)).collect())
    };
    let mut prev = solve(panels)?;
    for _ in 0..=opts.max_doublings {
        panels *= 2;
        let cur = solve(panels)?;
        let peak = cur.iter().fold(0.0f64, |m, &(u, v)| m.max(u.abs()).max(v.abs()));
        let est = cur
            .iter()
            .zip(&prev)
            .fold(0.0f64, |m, (a, b)| m.max((a.0 - b.0).abs()).max((a.1 - b.1).abs()));
        if est <= opts.tol * peak.max(f64::MIN_POSITIVE) {
            let (u, v) = cur.into_iter().unzip();
            return WaveField::new(x_grid.to_vec(), u, v, t, mode.method());
        }
        prev = cur;
        if panels > 1 << 22 {
            return Err(Error::QuadratureNotConverged { estimate: est, tolerance: opts.tol, panels });
        }
    }
    let peak = prev.iter().fold(0.0f64, |m, &(u, v)| m.max(u.abs()).max(v.abs()));
    Err(Error::QuadratureNotConverged { estimate: f64::NAN, tolerance: opts.tol * peak, panels })
}

/// Lattice positions `x = n h` for `n ∈ [n_lo, n_hi]`.
pub fn lattice_grid(h: f64, n_lo: i64, n_hi: i64) -> Vec<f64> {
    (n_lo..=n_hi).map(|n| n as f64 * h).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::initial_data::{InitialProfile, Parity};

    fn setup(mu: f64, delta: f64) -> (LatticeParams, SpectralData) {
        let prof = InitialProfile::gaussian(mu, delta).unwrap();
        let params = LatticeParams::from_gammas(0.82, 1.27, prof.h()).unwrap();
        (params, prof.spectral().unwrap())
    }

    #[test]
    fn initial_time_reproduces_interpolants() {
        let (p, spec) = setup(0.01, 1.0);
        let xs = vec![0.0, 0.01, 0.013, 0.02, -0.035];
        let f = solve_quadrature(&p, &spec, &xs, 0.0, Mode::Full, &Default::default()).unwrap();
        for (i, &x) in xs.iter().enumerate() {
            assert!((f.u[i] - spec.kws_interpolate(Parity::Even, x).unwrap()).abs() < 1e-8);
            assert!((f.v[i] - spec.kws_interpolate(Parity::Odd, x).unwrap()).abs() < 1e-8);
        }
    }

    #[test]
    fn modes_add_up() {
        let (p, spec) = setup(0.01, 1.0);
        let xs = lattice_grid(0.01, -60, 60);
        let o = QuadratureOptions::default();
        let full = solve_quadrature(&p, &spec, &xs, 0.25, Mode::Full, &o).unwrap();
        let ac = solve_quadrature(&p, &spec, &xs, 0.25, Mode::Acoustic, &o).unwrap();
        let op = solve_quadrature(&p, &spec, &xs, 0.25, Mode::Optical, &o).unwrap();
        for i in 0..xs.len() {
            assert!((full.u[i] - ac.u[i] - op.u[i]).abs() < 1e-10);
            assert!((full.v[i] - ac.v[i] - op.v[i]).abs() < 1e-10);
        }
        let back = solve_quadrature(&p, &spec, &xs, -0.25, Mode::Full, &o).unwrap();
        assert_eq!(back.u, full.u);
    }
}
