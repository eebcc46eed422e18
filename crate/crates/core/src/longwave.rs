//! Long-wave (`δ ≪ 1`) asymptotics: the single-mode integral `U_as`, its
//! closed form for a Gaussian profile, the d'Alembert limit, and finite
//! difference residuals of the model equations they satisfy.
//!
//! Both species move together, `U ≈ U_as (1, 1)ᵀ`, with
//!
//! ```text
//! U_as(x, t) = (1/√(2π)) Re ∫ Ŵ(p) e^{ipx/μ} exp[it(c|p|/μ - q h² p²|p| / (3μ³))] dp.
//! ```

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::airy::{airy_ai_scaled, scaling_exponent};
use crate::dispersion::Dispersion;
use crate::error::{invalid, Error, Result};
use crate::initial_data::{InitialProfile, ProfileKind};
use crate::oracles::field::{Method, WaveField};

/// Which model equation the long-wave solution follows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    /// `h² ≍ μ³`: cubic dispersion matters.
    WeakDispersion,
    /// `h² ≪ μ³`: plain wave equation.
    WaveEquation,
    /// `h² ≫ μ³`: outside the long-wave analysis.
    StrongDispersion,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::WeakDispersion => "weak_dispersion",
            Regime::WaveEquation => "wave_equation",
            Regime::StrongDispersion => "strong_dispersion",
        }
    }
}

/// Classification of `(h, μ)` by the ratio `h²/μ³`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LongwaveRegime {
    pub h: f64,
    pub mu: f64,
    pub ratio: f64,
    pub regime: Regime,
}

/// Default `[lo, hi]` band of `h²/μ³` called weak dispersion.
pub const WEAK_DISPERSION_BAND: (f64, f64) = (0.1, 10.0);

impl LongwaveRegime {
    pub fn classify(h: f64, mu: f64) -> Self {
        Self::classify_with_band(h, mu, WEAK_DISPERSION_BAND)
    }

    pub fn classify_with_band(h: f64, mu: f64, band: (f64, f64)) -> Self {
        let ratio = h * h / (mu * mu * mu);
        let regime = if ratio < band.0 {
            Regime::WaveEquation
        } else if ratio <= band.1 {
            Regime::WeakDispersion
        } else {
            Regime::StrongDispersion
        };
        Self { h, mu, ratio, regime }
    }
}

/// Controls for [`uas_integral`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UasOptions {
    /// Absolute tolerance on the step-halving error estimate.
    pub tol: f64,
    /// Step halvings allowed.
    pub max_halvings: usize,
}

impl Default for UasOptions {
    fn default() -> Self {
        Self { tol: 1e-10, max_halvings: 6 }
    }
}

/// `U_as` on a grid by quadrature.
///
/// With `cos` in place of the complex exponential of the even phase, the
/// integral splits into two pieces `∫ Ŵ(p) e^{i(a p ∓ κ p³)} dp`,
/// `a = (x ± ct)/μ`, `κ = t q h² / (3μ³)`. Each has a rapidly decaying,
/// analytic integrand, so the trapezoidal rule on `[-P, P]` (`|Ŵ| < 1e-14`
/// outside) converges geometrically once the step resolves the largest
/// frequency `|a| + R + 3κP²`, `R` the profile's decay radius. The x-free
/// factors are computed once and the step is halved until two estimates
/// agree to `opts.tol`.
pub fn uas_integral(disp: &Dispersion, profile: &InitialProfile, xs: &[f64], t: f64, opts: &UasOptions) -> Result<Vec<f64>> {
    if !t.is_finite() {
        return Err(Error::InvalidTime { t, reason: "must be finite" });
    }
    let mu = profile.mu;
    let h = profile.h();
    let c = disp.c;
    let kappa = t * disp.q * h * h / (3.0 * mu * mu * mu);
    let p_max = profile.spectral_radius();
    let a_max = xs.iter().fold(0.0f64, |m, &x| m.max((x.abs() + c * t.abs()) / mu));
    let freq = a_max + profile.decay_radius() + 3.0 * kappa.abs() * p_max * p_max + 2.0;
    let mut step = 2.0 * PI / freq;
    for _ in 0..=opts.max_halvings {
        // Fine grid at step/2; the coarse estimate uses every other node.
        let half = 0.5 * step;
        let j_max = (p_max / half).ceil() as i64;
        let nodes: Vec<(f64, Complex64, Complex64)> = (-j_max..=j_max)
            .into_par_iter()
            .map(|j| {
                let p = j as f64 * half;
                let w = profile.mu_fourier(p);
                let cubic = kappa * p * p * p;
                (p, w * Complex64::from_polar(1.0, -cubic), w * Complex64::from_polar(1.0, cubic))
            })
            .collect();
        let results: Vec<(f64, f64)> = xs
            .par_iter()
            .map(|&x| {
                let mut fine = 0.0;
                let mut coarse = 0.0;
                for (sign, pick) in [(1.0, 1usize), (-1.0, 2usize)] {
                    let a = (x + sign * c * t) / mu;
                    let (even, odd) = rotating_sum(&nodes, pick, a, half, j_max);
                    // Re of each piece; the pair of pieces sums to a real value.
                    fine += (even + odd).re * half;
                    coarse += even.re * step;
                }
                let norm = 0.5 / (2.0 * PI).sqrt();
                (fine * norm, coarse * norm)
            })
            .collect();
        let est = results.iter().fold(0.0f64, |m, (f, c)| m.max((f - c).abs()));
        if est <= opts.tol {
            return Ok(results.into_iter().map(|(f, _)| f).collect());
        }
        if !est.is_finite() {
            break;
        }
        step = half;
    }
    Err(Error::QuadratureNotConverged { estimate: f64::NAN, tolerance: opts.tol, panels: 0 })
}

/// `Σ_j g_j e^{i p_j a}` split into even-`j` and odd-`j` node sums, with the
/// phase advanced by rotation and re-seeded periodically.
fn rotating_sum(nodes: &[(f64, Complex64, Complex64)], pick: usize, a: f64, step: f64, j_max: i64) -> (Complex64, Complex64) {
    let rot = Complex64::from_polar(1.0, a * step);
    let mut even = Complex64::new(0.0, 0.0);
    let mut odd = Complex64::new(0.0, 0.0);
    let mut z = Complex64::new(0.0, 0.0);
    for (k, node) in nodes.iter().enumerate() {
        if k % 256 == 0 {
            z = Complex64::from_polar(1.0, a * node.0);
        }
        let g = if pick == 1 { node.1 } else { node.2 };
        let term = g * z;
        if (k as i64 - j_max) % 2 == 0 {
            even += term;
        } else {
            odd += term;
        }
        z *= rot;
    }
    (even, odd)
}

/// Single-point convenience wrapper of [`uas_integral`].
pub fn uas_integral_at(disp: &Dispersion, profile: &InitialProfile, x: f64, t: f64) -> Result<f64> {
    Ok(uas_integral(disp, profile, &[x], t, &UasOptions::default())?[0])
}

/// Closed form of `U_as` for the Gaussian `Ŵ(p) = e^{-p²/2}`:
///
/// ```text
/// U_as = √(π/2) μ / (h^{2/3}(qt)^{1/3}) · exp(μ⁶ / (12 h⁴ (qt)²))
///        · [ exp(-(x+ct)/((h²/μ²)(2qt))) Ai(-(x+ct)/(h^{2/3}(qt)^{1/3}) + μ⁴/(4 h^{8/3}(qt)^{4/3}))
///          + exp( (x-ct)/((h²/μ²)(2qt))) Ai( (x-ct)/(h^{2/3}(qt)^{1/3}) + μ⁴/(4 h^{8/3}(qt)^{4/3})) ].
/// ```
///
/// Every exponential is combined in log space with the scaled Airy function,
/// so the large factors never overflow.
pub fn uas_gaussian_airy(disp: &Dispersion, profile: &InitialProfile, x: f64, t: f64) -> Result<f64> {
    if profile.kind != ProfileKind::Gaussian {
        return Err(invalid("profile", "the closed form needs the Gaussian profile; use uas_integral"));
    }
    if !(t > 0.0) {
        return Err(Error::InvalidTime { t, reason: "the closed form needs t > 0; use uas_integral at t = 0" });
    }
    let mu = profile.mu;
    let h = profile.h();
    let qt = disp.q * t;
    let scale_x = h.powf(2.0 / 3.0) * qt.cbrt();
    let shift = mu.powi(4) / (4.0 * h.powf(8.0 / 3.0) * qt.powf(4.0 / 3.0));
    let log_pref = (FRAC_PI_2.sqrt() * mu / scale_x).ln() + mu.powi(6) / (12.0 * h.powi(4) * qt * qt);
    let damping = (h * h / (mu * mu)) * 2.0 * qt;
    let term = |lin: f64, z: f64| -> f64 {
        // pref · e^{lin} · Ai(z) with Ai(z) = Ai_s(z) e^{-ζ(z)}
        let ai_s = airy_ai_scaled(z);
        if ai_s == 0.0 {
            return 0.0;
        }
        let e = log_pref + lin - scaling_exponent(z);
        ai_s * e.exp()
    };
    let right = term((x - disp.c * t) / damping, (x - disp.c * t) / scale_x + shift);
    let left = term(-(x + disp.c * t) / damping, -(x + disp.c * t) / scale_x + shift);
    Ok(left + right)
}

/// `(1/2)(W((x+ct)/μ) + W((x-ct)/μ))`.
pub fn uas_dalembert(disp: &Dispersion, profile: &InitialProfile, x: f64, t: f64) -> f64 {
    let mu = profile.mu;
    0.5 * (profile.w((x + disp.c * t) / mu) + profile.w((x - disp.c * t) / mu))
}

/// Wraps scalar long-wave values as a field with `u = v`.
pub fn longwave_field(xs: &[f64], values: Vec<f64>, t: f64, method: Method) -> Result<WaveField> {
    WaveField::new(xs.to_vec(), values.clone(), values, t, method)
}

/// Refuses `δ ≥ 1/2`: the long-wave formulas assume many atoms per
/// perturbation width.
pub fn require_longwave(profile: &InitialProfile) -> Result<()> {
    if profile.delta >= 0.5 {
        return Err(invalid(
            "delta",
            format!("long-wave methods need delta << 1, got delta = {}; use the short-wave or oracle methods", profile.delta),
        ));
    }
    Ok(())
}

/// Model equation for [`residual_pde_check`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PdeModel {
    /// `U_tt = c² U_xx`.
    Wave,
    /// `U_tt = c² U_xx + (2/3) c q h² U_xxxx + (1/9) q² h⁴ U_xxxxxx`, i.e.
    /// `-h² U_tt = (c²δ²P² - (2/3)cqδ⁴P⁴ + (1/9)q²δ⁶P⁶) U` with `P = -iμ∂ₓ`.
    WeakDispersion,
}

/// Result of [`residual_pde_check`]; all values are relative to
/// `scale = max |U_tt|` over the grid.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PdeResidual {
    /// `max |U_tt - RHS| / scale` at the requested steps.
    pub residual: f64,
    /// Discretization error estimate (difference against doubled steps)
    /// plus the round-off bound implied by `value_accuracy`.
    pub fd_tolerance: f64,
    pub scale: f64,
}

/// Finite-difference residual of a model equation for `field(x, t)`.
///
/// Derivatives use 8th-order central stencils with steps `dx`, `dt`.
/// `value_accuracy` is the absolute accuracy of `field` values.
#[allow(clippy::too_many_arguments)]
pub fn residual_pde_check<F>(
    field: F,
    disp: &Dispersion,
    h: f64,
    xs: &[f64],
    t: f64,
    steps: (f64, f64),
    value_accuracy: f64,
    model: PdeModel,
) -> PdeResidual
where
    F: Fn(f64, f64) -> f64 + Sync,
{
    let (dx, dt) = steps;
    let (c, q) = (disp.c, disp.q);
    let (k4, k6) = match model {
        PdeModel::Wave => (0.0, 0.0),
        PdeModel::WeakDispersion => (2.0 / 3.0 * c * q * h * h, q * q * h.powi(4) / 9.0),
    };
    let st2 = central_stencil(2, 8);
    let st4 = central_stencil(4, 8);
    let st6 = central_stencil(6, 8);
    let apply = |st: &Stencil, g: &dyn Fn(f64) -> f64, x0: f64, step: f64| -> f64 {
        st.offsets.iter().zip(&st.weights).map(|(&o, &w)| w * g(x0 + o * step)).sum::<f64>() / step.powi(st.order as i32)
    };
    let residual_at = |x: f64, sx: f64, st: f64| -> (f64, f64) {
        let in_t = |s: f64| field(x, s);
        let in_x = |y: f64| field(y, t);
        let utt = apply(&st2, &in_t, t, st);
        let mut rhs = c * c * apply(&st2, &in_x, x, sx);
        if k4 != 0.0 {
            rhs += k4 * apply(&st4, &in_x, x, sx) + k6 * apply(&st6, &in_x, x, sx);
        }
        (utt - rhs, utt)
    };
    let rows: Vec<(f64, f64, f64)> = xs
        .par_iter()
        .map(|&x| {
            let (r1, utt) = residual_at(x, dx, dt);
            let (r2, _) = residual_at(x, 2.0 * dx, 2.0 * dt);
            (r1, r2, utt)
        })
        .collect();
    let scale = rows.iter().fold(0.0f64, |m, r| m.max(r.2.abs())).max(f64::MIN_POSITIVE);
    let residual = rows.iter().fold(0.0f64, |m, r| m.max(r.0.abs())) / scale;
    let disc = rows.iter().fold(0.0f64, |m, r| m.max((r.0 - r.1).abs())) / scale;
    let norm1 = |st: &Stencil| st.weights.iter().map(|w| w.abs()).sum::<f64>();
    let roundoff = value_accuracy
        * (norm1(&st2) / (dt * dt) + c * c * norm1(&st2) / (dx * dx) + k4 * norm1(&st4) / dx.powi(4) + k6 * norm1(&st6) / dx.powi(6))
        / scale;
    PdeResidual { residual, fd_tolerance: disc + roundoff, scale }
}

/// Finite-difference weights for one derivative on integer offsets.
#[derive(Clone, Debug, PartialEq)]
pub struct Stencil {
    pub order: usize,
    pub offsets: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Central stencil for the `order`-th derivative with formal accuracy
/// `accuracy` (even).
pub fn central_stencil(order: usize, accuracy: usize) -> Stencil {
    let half = order.div_ceil(2) - 1 + accuracy / 2;
    let offsets: Vec<f64> = (-(half as i64)..=half as i64).map(|k| k as f64).collect();
    let weights = fornberg_weights(0.0, &offsets, order);
    Stencil { order, offsets, weights }
}

/// Fornberg's recursion: weights of the `m`-th derivative at `z` using the
/// nodes `x`.
pub fn fornberg_weights(z: f64, x: &[f64], m: usize) -> Vec<f64> {
    let n = x.len();
    let mut c = vec![vec![0.0; m + 1]; n];
    let mut c1 = 1.0;
    let mut c4 = x[0] - z;
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(m);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = x[i] - z;
        for j in 0..i {
            let c3 = x[i] - x[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.into_iter().map(|row| row[m]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dispersion::LatticeParams;

    fn nacl() -> Dispersion {
        LatticeParams::nacl().dispersion().unwrap()
    }

    #[test]
    fn regime_bands() {
        let r = LongwaveRegime::classify(2.82e-7, 80.0 * 2.82e-7);
        assert_eq!(r.regime, Regime::WeakDispersion);
        assert!((r.ratio - 6.97).abs() < 0.05);
        assert_eq!(LongwaveRegime::classify(1e-6, 1e-2).regime, Regime::WaveEquation);
        assert_eq!(LongwaveRegime::classify(0.01, 0.01).regime, Regime::StrongDispersion);
    }

    #[test]
    fn fornberg_matches_known_stencils() {
        let s = central_stencil(2, 2);
        assert_eq!(s.weights, vec![1.0, -2.0, 1.0]);
        let s = central_stencil(1, 4);
        let expect = [1.0 / 12.0, -2.0 / 3.0, 0.0, 2.0 / 3.0, -1.0 / 12.0];
        for (a, b) in s.weights.iter().zip(expect) {
            assert!((a - b).abs() < 1e-14);
        }
        // exact on x^6 for the sixth derivative
        let s = central_stencil(6, 8);
        let d6: f64 = s.offsets.iter().zip(&s.weights).map(|(o, w)| w * o.powi(6)).sum();
        assert!((d6 - 720.0).abs() < 1e-8);
    }

    #[test]
    fn integral_at_zero_time_is_profile() {
        let prof = InitialProfile::gaussian(0.01, 0.02).unwrap();
        let xs = [-0.02, 0.0, 0.005, 0.013];
        let v = uas_integral(&nacl(), &prof, &xs, 0.0, &UasOptions::default()).unwrap();
        for (x, u) in xs.iter().zip(v) {
            assert!((u - prof.w(x / 0.01)).abs() < 1e-12);
        }
    }

    #[test]
    fn closed_form_matches_integral_and_is_even() {
        let prof = InitialProfile::gaussian(0.01, 0.05).unwrap();
        let d = nacl();
        let xs: Vec<f64> = (0..41).map(|j| 0.4 + 0.004 * j as f64 - 0.08).collect();
        let num = uas_integral(&d, &prof, &xs, 0.4, &UasOptions::default()).unwrap();
        for (x, u) in xs.iter().zip(&num) {
            let a = uas_gaussian_airy(&d, &prof, *x, 0.4).unwrap();
            assert!((a - u).abs() < 1e-9, "x = {x}: {a} vs {u}");
            let b = uas_gaussian_airy(&d, &prof, -*x, 0.4).unwrap();
            assert!((a - b).abs() < 1e-12);
        }
        assert!(uas_gaussian_airy(&d, &prof, 0.1, 0.0).is_err());
    }

    #[test]
    fn dalembert_limits() {
        let prof = InitialProfile::gaussian(0.001, 0.01).unwrap();
        let d = nacl();
        assert_eq!(uas_dalembert(&d, &prof, 0.0003, 0.0), prof.w(0.3));
        assert!((uas_dalembert(&d, &prof, d.c * 0.5, 0.5) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn dalembert_satisfies_wave_equation() {
        let prof = InitialProfile::gaussian(0.01, 0.01).unwrap();
        let d = nacl();
        let xs: Vec<f64> = (0..21).map(|j| 0.3 + 0.002 * j as f64 - 0.02).collect();
        let f = |x: f64, t: f64| uas_dalembert(&d, &prof, x, t);
        let r = residual_pde_check(f, &d, prof.h(), &xs, 0.3, (5e-4, 5e-4), 1e-16, PdeModel::Wave);
        assert!(r.residual <= r.fd_tolerance, "{r:?}");
        assert!(r.fd_tolerance < 1e-6);
    }
}
