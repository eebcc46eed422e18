//! Short-wave (`δ = 1`, `μ = h`) asymptotics of the acoustic and optical
//! parts near their wave fronts.
//!
//! Each modal part is a Brillouin-zone integral `∫ g(p) e^{iφ(p)/μ} dp`
//! whose phase has a pair of stationary points that merge at the front.
//! Two representations are provided:
//!
//! * front forms: Airy function of the distance to the front with the
//!   amplitude frozen at the merging point (valid within `O(μ^{2/3})`);
//! * uniform forms: the Chester–Friedman–Ursell mapping
//!   `φ = Θ + ζu - u³/3`, `(2/3)ζ^{3/2} = Ψ`, giving
//!   `2π√(2μ) e^{iΘ/μ} [½(Ĝ₊ + Ĝ₋) Z^{1/4} Ai(-Z) + ½ i(Ĝ₊ - Ĝ₋) Z^{-1/4} Ai'(-Z)]`
//!   with `Z = (3Ψ/2μ)^{2/3}` and `Ĝ = g/√|φ''|` at the maximum (`+`) and
//!   minimum (`-`) of the phase. This reduces to WKB away from the front.
//!
//! Past the front the smooth ingredients are continued by three-point
//! quadratic extrapolation and the field is set to zero beyond
//! `ε = 5` envelope widths.

use std::f64::consts::{FRAC_PI_2, PI};
use std::ops::{Add, Mul};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::airy::airy;
use crate::dispersion::{mat_vec, Branch, Dispersion, LatticeParams, Mat2};
use crate::error::{invalid, Error, Result};
use crate::initial_data::SpectralData;
use crate::oracles::field::{envelope_width, Method, WaveField};
use crate::oracles::lattice::check_step;
use crate::quadrature::{GaussLegendre, NodeSet};
use crate::roots::bracketed_root;

type C2 = [Complex64; 2];

/// Which of the two symmetric fronts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn of(x: f64) -> Self {
        if x < 0.0 {
            Side::Left
        } else {
            Side::Right
        }
    }

    fn sign(self) -> f64 {
        match self {
            Side::Left => -1.0,
            Side::Right => 1.0,
        }
    }
}

/// Stationary pair of one modal phase at a point `x`.
///
/// Acoustic: the pair is `∓p` around `0`, with `ω₁'(p) = |x|/t`.
/// Optical: `p⁻ < p* < p⁺` with `-ω₂'(p^±) = |x|/t`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StationaryPoints {
    pub branch: Branch,
    pub side: Side,
    pub p_minus: f64,
    pub p_plus: f64,
    /// Mean of the phase over the pair.
    pub theta: f64,
    /// Half the phase difference between the maximum and the minimum, `≥ 0`.
    pub psi: f64,
}

impl StationaryPoints {
    /// `(p at the phase maximum, p at the phase minimum)`.
    pub fn max_min(&self) -> (f64, f64) {
        match self.side {
            Side::Right => (self.p_minus, self.p_plus),
            Side::Left => (self.p_plus, self.p_minus),
        }
    }
}

/// `3f(0) - 3f(-z) + k f(-2z)`: quadratic continuation to `z > 0` of a
/// function known for non-positive arguments (`k = 1` is exact on
/// polynomials of degree ≤ 2).
pub fn three_point_continue<T, F>(f: F, z: f64, k: f64) -> T
where
    T: Add<Output = T> + Mul<f64, Output = T>,
    F: Fn(f64) -> T,
{
    f(0.0) * 3.0 + f(-z) * -3.0 + f(-2.0 * z) * k
}

/// Evaluation controls.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShortwaveOptions {
    /// Continuation margin beyond each front, in envelope widths.
    pub margin_widths: f64,
    /// Weight of the far node in the optical three-point continuation.
    pub optical_k: f64,
    /// Half-width (in envelope widths) of the zone around a front where the
    /// uniform ingredients are extrapolated instead of evaluated.
    pub front_blend: f64,
}

impl Default for ShortwaveOptions {
    fn default() -> Self {
        Self { margin_widths: 5.0, optical_k: 1.0, front_blend: 1e-3 }
    }
}

/// Smooth ingredients of a uniform form at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
struct Parts {
    z: f64,
    theta: f64,
    m1: C2,
    m2: C2,
}

impl Add for Parts {
    type Output = Parts;
    fn add(self, o: Parts) -> Parts {
        Parts {
            z: self.z + o.z,
            theta: self.theta + o.theta,
            m1: [self.m1[0] + o.m1[0], self.m1[1] + o.m1[1]],
            m2: [self.m2[0] + o.m2[0], self.m2[1] + o.m2[1]],
        }
    }
}

impl Mul<f64> for Parts {
    type Output = Parts;
    fn mul(self, s: f64) -> Parts {
        Parts { z: self.z * s, theta: self.theta * s, m1: [self.m1[0] * s, self.m1[1] * s], m2: [self.m2[0] * s, self.m2[1] * s] }
    }
}

impl Parts {
    fn value(&self, mu: f64) -> [f64; 2] {
        let a = airy(-self.z);
        let carrier = Complex64::from_polar(1.0, self.theta / mu);
        [0, 1].map(|i| (carrier * (self.m1[i] * a.ai + self.m2[i] * a.ai_prime)).re)
    }
}

/// Value at `r·s` past the front of the quadratic through `f0` (front),
/// `g1` (`s` inside) and `g2` (`2s` inside); `k` scales the last weight.
fn quad3<T>(f0: T, g1: T, g2: T, r: f64, k: f64) -> T
where
    T: Add<Output = T> + Mul<f64, Output = T>,
{
    f0 * (0.5 * (r + 1.0) * (r + 2.0)) + g1 * (-r * (r + 2.0)) + g2 * (0.5 * r * (r + 1.0) * k)
}

/// Short-wave evaluator for one time `t > 0`.
pub struct Shortwave<'a> {
    disp: Dispersion,
    spec: &'a SpectralData,
    mu: f64,
    t: f64,
    opts: ShortwaveOptions,
    gl: NodeSet,
}

impl<'a> Shortwave<'a> {
    pub fn new(params: &LatticeParams, spec: &'a SpectralData, t: f64, opts: ShortwaveOptions) -> Result<Self> {
        check_step(params, &spec.profile)?;
        require_shortwave(spec)?;
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::InvalidTime { t, reason: "short-wave asymptotics need t > 0" });
        }
        if !(opts.margin_widths > 0.0) || !(opts.front_blend > 0.0) {
            return Err(invalid("margin_widths", "continuation margins must be positive"));
        }
        let gl = NodeSet::composite(&GaussLegendre::new(20), &[0.0, 1.0], 2);
        Ok(Self { disp: params.dispersion()?, spec, mu: spec.profile.mu, t, opts, gl })
    }

    pub fn dispersion(&self) -> &Dispersion {
        &self.disp
    }

    /// Front position `ct` or `c*t`.
    pub fn front(&self, branch: Branch) -> f64 {
        match branch {
            Branch::Acoustic => self.disp.c * self.t,
            Branch::Optical => self.disp.c_star * self.t,
        }
    }

    /// Envelope width `μ^{2/3}(qt)^{1/3}` of the front.
    pub fn width(&self, branch: Branch) -> f64 {
        let q = match branch {
            Branch::Acoustic => self.disp.q,
            Branch::Optical => self.disp.q_star,
        };
        envelope_width(self.mu, q, self.t)
    }

    fn v(&self, p: f64) -> C2 {
        self.spec.lattice_transform(p)
    }

    /// `∫₀¹ f(a + (b - a)u) du · (b - a)`.
    fn integrate(&self, a: f64, b: f64, f: impl Fn(f64) -> f64) -> f64 {
        (b - a) * self.gl.integrate(|u| f(a + (b - a) * u))
    }

    /// Solves for the stationary pair at `x` (`|x|` strictly inside the front).
    pub fn stationary_points(&self, branch: Branch, x: f64) -> Result<StationaryPoints> {
        let side = Side::of(x);
        let speed = x.abs() / self.t;
        let t = self.t;
        let d = &self.disp;
        match branch {
            Branch::Acoustic => {
                let f = |p: f64| d.omega1_smooth_jet(p).derivative(1) - speed;
                let p = root_or_edge(f, 0.0, FRAC_PI_2)?;
                let psi = t * self.integrate(0.0, p, |s| s * d.omega1_smooth_jet(s).derivative(2).abs());
                Ok(StationaryPoints { branch, side, p_minus: -p, p_plus: p, theta: 0.0, psi })
            }
            Branch::Optical => {
                let f = |p: f64| -d.omega2_jet(p).derivative(1) - speed;
                let lo = root_or_edge(f, d.p_star, 0.0)?;
                let hi = root_or_edge(f, d.p_star, FRAC_PI_2)?;
                let phase = |p: f64| side.sign() * (p * x.abs() + d.omega2(p) * t);
                let psi = 0.5 * t * self.integrate(lo, hi, |s| -d.omega2_jet(s).derivative(1) - speed);
                let theta = 0.5 * (phase(lo) + phase(hi));
                Ok(StationaryPoints { branch, side, p_minus: lo, p_plus: hi, theta, psi })
            }
        }
    }

    /// Uniform ingredients from a freshly solved stationary pair.
    fn interior_parts(&self, branch: Branch, x: f64) -> Result<Parts> {
        let sp = self.stationary_points(branch, x)?;
        let (pmax, pmin) = sp.max_min();
        let (norm, proj): (f64, fn(&Dispersion, f64) -> Mat2) = match branch {
            Branch::Acoustic => (0.5 / PI, |d, p| d.modal_matrices(p).0),
            Branch::Optical => (1.0 / PI, |d, p| d.modal_matrices(p).1),
        };
        let g_hat = |p: f64| -> C2 {
            let curv = self.t * self.disp.omega_curvature(branch, p).abs();
            let v = mat_vec(&proj(&self.disp, p), self.v(p));
            v.map(|c| c / curv.sqrt())
        };
        let (ga, gb) = (g_hat(pmax), g_hat(pmin));
        let z = (1.5 * sp.psi / self.mu).powf(2.0 / 3.0);
        let pref = 2.0 * PI * (2.0 * self.mu).sqrt() * norm;
        let (alpha, beta) = (z.powf(0.25), z.powf(-0.25));
        let i = Complex64::i();
        let m1 = [0, 1].map(|k| (ga[k] + gb[k]) * (0.5 * pref * alpha));
        let m2 = [0, 1].map(|k| i * (ga[k] - gb[k]) * (0.5 * pref * beta));
        // The Θ term for the left side is measured from the mirrored point.
        Ok(Parts { z, theta: sp.theta, m1, m2 })
    }

    /// Uniform ingredients anywhere up to the continuation margin; `None`
    /// beyond it.
    fn parts(&self, branch: Branch, x: f64, k: f64) -> Result<Option<Parts>> {
        let front = self.front(branch);
        let w = self.width(branch);
        let sign = Side::of(x).sign();
        let d = x.abs() - front;
        if d > self.opts.margin_widths * w {
            return Ok(None);
        }
        let b = self.opts.front_blend * w;
        if d < -b {
            return self.interior_parts(branch, x).map(Some);
        }
        let at = |y: f64| self.interior_parts(branch, sign * y);
        // Front value by extrapolation from three nearby interior points.
        let (g1, g2, g3) = (at(front - b)?, at(front - 2.0 * b)?, at(front - 3.0 * b)?);
        let f0 = g1 * 3.0 + g2 * -3.0 + g3;
        if d <= b {
            return Ok(Some(quad3(f0, g1, g2, d / b, 1.0)));
        }
        // Nodes at d and 2d inside when they stay on this side, otherwise
        // at the largest spacing that does.
        let s = d.min(0.45 * front);
        Ok(Some(quad3(f0, at(front - s)?, at(front - 2.0 * s)?, d / s, k)))
    }

    /// Uniform acoustic representation (right-moving formula for `x ≥ 0`,
    /// left-moving for `x < 0`); `(u, v)`.
    pub fn acoustic_uniform(&self, x: f64) -> Result<[f64; 2]> {
        Ok(self.parts(Branch::Acoustic, x, 1.0)?.map_or([0.0; 2], |p| p.value(self.mu)))
    }

    /// Uniform optical representation; `(u, v)`.
    pub fn optical_uniform(&self, x: f64) -> Result<[f64; 2]> {
        Ok(self.parts(Branch::Optical, x, self.opts.optical_k)?.map_or([0.0; 2], |p| p.value(self.mu)))
    }

    /// Even and odd parts of `Ṽ` in `z = p²`: `(½(Ṽ(√z)+Ṽ(-√z)), (Ṽ(√z)-Ṽ(-√z))/(2√z))`.
    fn v0_parts(&self, z: f64) -> (C2, C2) {
        if z < 1e-14 {
            return (self.v(0.0), self.spec.lattice_transform_deriv(0.0));
        }
        let r = z.sqrt();
        let (a, b) = (self.v(r), self.v(-r));
        ([0, 1].map(|i| 0.5 * (a[i] + b[i])), [0, 1].map(|i| (a[i] - b[i]) / (2.0 * r)))
    }

    /// `F₁(η) = ½(Ṽ(p*-√η)+Ṽ(p*+√η))`, `F₂(η) = (Ṽ(p*-√η)-Ṽ(p*+√η))/(2√η)`.
    fn f_parts(&self, eta: f64) -> (C2, C2) {
        let ps = self.disp.p_star;
        if eta < 1e-14 {
            return (self.v(ps), self.spec.lattice_transform_deriv(ps).map(|c| -c));
        }
        let r = eta.sqrt();
        let (a, b) = (self.v(ps - r), self.v(ps + r));
        ([0, 1].map(|i| 0.5 * (a[i] + b[i])), [0, 1].map(|i| (a[i] - b[i]) / (2.0 * r)))
    }

    /// Continues an `η ≥ 0` evaluator to negative `η`.
    fn continued(&self, eta: f64, k: f64, f: impl Fn(f64) -> (C2, C2)) -> (C2, C2) {
        if eta >= 0.0 {
            return f(eta);
        }
        let pack = |y: f64| {
            let (a, b) = f(-y);
            Parts { z: 0.0, theta: 0.0, m1: a, m2: b }
        };
        let p = three_point_continue(pack, -eta, k);
        (p.m1, p.m2)
    }

    /// Airy form near the acoustic front on `side`; `(u, v)`.
    pub fn acoustic_front_airy(&self, x: f64, side: Side) -> [f64; 2] {
        let qt = self.disp.q * self.t;
        let s = side.sign();
        // Distance inside the front, in momentum-squared units.
        let eta = (self.front(Branch::Acoustic) - s * x) / qt;
        let arg = -eta * qt / self.width(Branch::Acoustic);
        let (v1, v2) = self.continued(eta, 1.0, |z| self.v0_parts(z));
        let a = airy(arg);
        let r = (self.mu / qt).cbrt();
        let i = Complex64::i();
        let inner: C2 = [0, 1].map(|k| v1[k] * a.ai - i * s * r * v2[k] * a.ai_prime);
        let (a0, _) = self.disp.modal_matrices(0.0);
        mat_vec(&a0, inner).map(|c| r * c.re)
    }

    /// Airy form near the optical front on `side`; `(u, v)`.
    pub fn optical_front_airy(&self, x: f64, side: Side) -> [f64; 2] {
        let d = &self.disp;
        let qt = d.q_star * self.t;
        let s = side.sign();
        let eta = (self.front(Branch::Optical) - s * x) / qt;
        let arg = -eta * qt / self.width(Branch::Optical);
        let (f1, f2) = self.continued(eta, self.opts.optical_k, |z| self.f_parts(z));
        let a = airy(arg);
        let r = (self.mu / qt).cbrt();
        let i = Complex64::i();
        let phase = d.p_star * x + s * d.omega2(d.p_star) * self.t;
        let carrier = Complex64::from_polar(1.0, phase / self.mu);
        let inner: C2 = [0, 1].map(|k| f1[k] * a.ai + i * s * r * f2[k] * a.ai_prime);
        let (_, b) = d.modal_matrices(d.p_star);
        mat_vec(&b, inner).map(|c| 2.0 * r * (carrier * c).re)
    }

    /// Front forms as fields: the nearer front's formula on each half-line,
    /// zero beyond the continuation margin.
    fn front_value(&self, branch: Branch, x: f64) -> [f64; 2] {
        if x.abs() - self.front(branch) > self.opts.margin_widths * self.width(branch) {
            return [0.0; 2];
        }
        match branch {
            Branch::Acoustic => self.acoustic_front_airy(x, Side::of(x)),
            Branch::Optical => self.optical_front_airy(x, Side::of(x)),
        }
    }

    /// Evaluates one short-wave method on a grid.
    pub fn field(&self, method: Method, xs: &[f64]) -> Result<WaveField> {
        let eval = |x: f64| -> Result<[f64; 2]> {
            match method {
                Method::AcousticFront => Ok(self.front_value(Branch::Acoustic, x)),
                Method::OpticalFront => Ok(self.front_value(Branch::Optical, x)),
                Method::AcousticUniform => self.acoustic_uniform(x),
                Method::OpticalUniform => self.optical_uniform(x),
                Method::ShortwaveTotal => {
                    let (a, o) = (self.acoustic_uniform(x)?, self.optical_uniform(x)?);
                    Ok([a[0] + o[0], a[1] + o[1]])
                }
                other => Err(invalid("method", format!("`{other}` is not a short-wave method"))),
            }
        };
        let rows: Vec<[f64; 2]> = xs.par_iter().map(|&x| eval(x)).collect::<Result<_>>()?;
        let (u, v) = rows.into_iter().map(|r| (r[0], r[1])).unzip();
        WaveField::new(xs.to_vec(), u, v, self.t, method)
    }
}

/// Root of `f` between `inner` (where `f > 0`) and `edge`, accepting the
/// zone edge itself when round-off leaves `f(edge)` marginally positive
/// (at `x = 0` the group velocity vanishes there exactly).
fn root_or_edge(f: impl Fn(f64) -> f64, inner: f64, edge: f64) -> Result<f64> {
    let fe = f(edge);
    if (0.0..1e-12).contains(&fe) {
        return Ok(edge);
    }
    bracketed_root(f, inner.min(edge), inner.max(edge), 1e-15)
}

/// Short-wave forms assume one lattice step per perturbation width.
pub fn require_shortwave(spec: &SpectralData) -> Result<()> {
    let delta = spec.profile.delta;
    if (delta - 1.0).abs() > 1e-12 {
        return Err(invalid(
            "delta",
            format!("short-wave methods need delta = 1 (mu = h), got delta = {delta}; use the long-wave or oracle methods"),
        ));
    }
    Ok(())
}

/// `acoustic_uniform + optical_uniform` on a grid.
pub fn shortwave_total(params: &LatticeParams, spec: &SpectralData, xs: &[f64], t: f64, opts: ShortwaveOptions) -> Result<WaveField> {
    Shortwave::new(params, spec, t, opts)?.field(Method::ShortwaveTotal, xs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::initial_data::InitialProfile;

    fn setup(mu: f64) -> (LatticeParams, SpectralData) {
        let prof = InitialProfile::gaussian(mu, 1.0).unwrap();
        let params = LatticeParams::new(5.88e-26, 3.81e-26, 15.0, 2.82e-10, 1e-3).unwrap();
        let params = LatticeParams::from_gammas(params.gamma1, params.gamma2, mu).unwrap();
        (params, prof.spectral().unwrap())
    }

    /// Stationary-phase (WKB) sum of the two points, no Airy smoothing.
    fn wkb(sw: &Shortwave, branch: Branch, x: f64) -> [f64; 2] {
        let sp = sw.stationary_points(branch, x).unwrap();
        let (pmax, pmin) = sp.max_min();
        let d = &sw.disp;
        let (norm, which) = match branch {
            Branch::Acoustic => (0.5 / PI, 0),
            Branch::Optical => (1.0 / PI, 1),
        };
        let phi = |p: f64| match (branch, sp.side) {
            (Branch::Acoustic, Side::Right) => p * x - d.omega1_smooth(p) * sw.t,
            (Branch::Acoustic, Side::Left) => p * x + d.omega1_smooth(p) * sw.t,
            (Branch::Optical, Side::Right) => p * x + d.omega2(p) * sw.t,
            (Branch::Optical, Side::Left) => p * x - d.omega2(p) * sw.t,
        };
        let mut out = [0.0; 2];
        for (p, sgn) in [(pmax, -1.0), (pmin, 1.0)] {
            let m = if which == 0 { d.modal_matrices(p).0 } else { d.modal_matrices(p).1 };
            let g = mat_vec(&m, sw.v(p));
            let curv = sw.t * d.omega_curvature(branch, p).abs();
            let f = Complex64::from_polar((2.0 * PI * sw.mu / curv).sqrt() * norm, phi(p) / sw.mu + sgn * PI / 4.0);
            for k in 0..2 {
                out[k] += (g[k] * f).re;
            }
        }
        out
    }

    #[test]
    fn continuation_is_exact_on_quadratics() {
        let c = three_point_continue(|_| 2.5, 0.7, 1.0);
        assert!((c - 2.5f64).abs() < 1e-14);
        let lin = three_point_continue(|z: f64| 3.0 * z - 1.0, 0.4, 1.0);
        assert!((lin - 0.2).abs() < 1e-14);
        let sq = three_point_continue(|z: f64| z * z, 0.3, 1.0);
        assert!((sq - 0.09).abs() < 1e-14);
        // Any other far-node weight breaks even constants.
        assert!((three_point_continue(|_| 1.0, 0.3, 2.0) - 2.0f64).abs() < 1e-14);
    }

    #[test]
    fn stationary_points_are_accurate() {
        let (p, spec) = setup(0.01);
        let sw = Shortwave::new(&p, &spec, 0.5, Default::default()).unwrap();
        let d = sw.dispersion();
        for x in [0.05, 0.2, 0.45, -0.3] {
            let sp = sw.stationary_points(Branch::Acoustic, x).unwrap();
            let r = x.abs() - d.omega1_smooth_jet(sp.p_plus).derivative(1) * 0.5;
            assert!(r.abs() < 1e-10 && sp.psi >= 0.0);
            assert!(sp.p_plus > 0.0 && sp.p_plus < FRAC_PI_2);
        }
        for x in [0.02, 0.1, 0.2, -0.15] {
            let sp = sw.stationary_points(Branch::Optical, x).unwrap();
            for p in [sp.p_minus, sp.p_plus] {
                assert!((x.abs() + d.omega2_jet(p).derivative(1) * 0.5).abs() < 1e-10);
            }
            assert!(sp.p_minus < d.p_star && d.p_star < sp.p_plus);
            assert!(d.omega2_jet(sp.p_minus).derivative(2) < 0.0 && d.omega2_jet(sp.p_plus).derivative(2) > 0.0);
            assert!(sp.psi >= 0.0);
        }
        assert!(sw.stationary_points(Branch::Optical, 0.3).is_err());
    }

    #[test]
    fn psi_matches_front_expansion() {
        let (p, spec) = setup(0.01);
        let sw = Shortwave::new(&p, &spec, 0.5, Default::default()).unwrap();
        let d = sw.dispersion();
        let front = d.c_star * 0.5;
        let mut prev = f64::INFINITY;
        for gap in [1e-2, 1e-3, 1e-4] {
            let sp = sw.stationary_points(Branch::Optical, front - gap).unwrap();
            let model = 2.0 / 3.0 * gap.powf(1.5) / (d.q_star * 0.5).sqrt();
            let rel = (sp.psi / model - 1.0).abs();
            assert!(rel < prev);
            prev = rel;
        }
        assert!(prev < 1e-2);
    }

    #[test]
    fn uniform_forms_reduce_to_wkb_inside() {
        let (p, spec) = setup(0.01);
        let sw = Shortwave::new(&p, &spec, 0.5, Default::default()).unwrap();
        let (amp_a, amp_o) = (0.1, 0.2);
        let a = sw.acoustic_uniform(0.25).unwrap();
        let w = wkb(&sw, Branch::Acoustic, 0.25);
        for k in 0..2 {
            assert!((a[k] - w[k]).abs() < 5.0 * 0.01 * amp_a, "{a:?} {w:?}");
        }
        let o = sw.optical_uniform(0.15).unwrap();
        let w = wkb(&sw, Branch::Optical, 0.15);
        for k in 0..2 {
            assert!((o[k] - w[k]).abs() < 5.0 * 0.01 * amp_o, "{o:?} {w:?}");
        }
        let o = sw.optical_uniform(-0.15).unwrap();
        let w = wkb(&sw, Branch::Optical, -0.15);
        for k in 0..2 {
            assert!((o[k] - w[k]).abs() < 5.0 * 0.01 * amp_o, "{o:?} {w:?}");
        }
    }

    #[test]
    fn uniform_forms_approach_front_forms() {
        let (p, spec) = setup(0.005);
        let sw = Shortwave::new(&p, &spec, 0.5, Default::default()).unwrap();
        let f = sw.front(Branch::Acoustic);
        let a = sw.acoustic_uniform(f).unwrap();
        let b = sw.acoustic_front_airy(f, Side::Right);
        for k in 0..2 {
            assert!((a[k] - b[k]).abs() < 1e-6, "{a:?} {b:?}");
        }
    }

    #[test]
    fn optical_ai_coefficient_matches_front_limit() {
        let mu = 0.005;
        let (p, spec) = setup(mu);
        let sw = Shortwave::new(&p, &spec, 0.5, Default::default()).unwrap();
        let d = sw.dispersion();
        let r = (mu / (d.q_star * 0.5)).cbrt();
        let expect = mat_vec(&d.modal_matrices(d.p_star).1, sw.v(d.p_star));
        for side in [1.0, -1.0] {
            let x = side * sw.front(Branch::Optical);
            let parts = sw.parts(Branch::Optical, x, 1.0).unwrap().unwrap();
            assert!(parts.z.abs() < 1e-8);
            let phase = d.p_star * x + side * d.omega2(d.p_star) * 0.5;
            assert!((parts.theta - phase).abs() < 1e-9);
            for k in 0..2 {
                assert!((parts.m1[k] - expect[k] * (2.0 * r)).norm() < 1e-7 * expect[k].norm());
            }
        }
    }

    #[test]
    fn tails_decay_and_light_atoms_dominate() {
        let (p, spec) = setup(0.01);
        let sw = Shortwave::new(&p, &spec, 0.5, Default::default()).unwrap();
        let wa = sw.width(Branch::Acoustic);
        let fa = sw.front(Branch::Acoustic);
        let peak = sw.acoustic_front_airy(fa - wa, Side::Right)[0].abs();
        let tail = sw.acoustic_front_airy(fa + 5.01 * wa, Side::Right);
        assert!(tail[0].abs() < 1e-3 * peak && tail[1].abs() < 1e-3 * peak);
        let wo = sw.width(Branch::Optical);
        let fo = sw.front(Branch::Optical);
        let (mut mu_, mut mv) = (0.0f64, 0.0f64);
        for j in 0..400 {
            let x = fo - 3.0 * wo + 4.0 * wo * j as f64 / 400.0;
            let v = sw.optical_front_airy(x, Side::Right);
            mu_ = mu_.max(v[0].abs());
            mv = mv.max(v[1].abs());
        }
        assert!(mv > mu_);
    }

    #[test]
    fn longwave_delta_is_refused() {
        let prof = InitialProfile::gaussian(0.01, 0.5).unwrap();
        let params = LatticeParams::from_gammas(0.82, 1.27, prof.h()).unwrap();
        let spec = prof.spectral().unwrap();
        assert!(Shortwave::new(&params, &spec, 0.5, Default::default()).is_err());
        let (p, spec) = setup(0.01);
        assert!(Shortwave::new(&p, &spec, 0.0, Default::default()).is_err());
    }
}
