//! Airy function `Ai`, its derivative, and the uniform envelope functions
//! `A±(y)`.
//!
//! Evaluation strategy by argument:
//!
//! | range            | method                                                    |
//! |------------------|-----------------------------------------------------------|
//! | `z ≥ 2`          | steepest-descent integral through the saddle `√z`, scaled |
//! | `-5 ≤ z < 2`     | Maclaurin series                                          |
//! | `-9 ≤ z < -5`    | contour integral along the rays `arg t = ±π/3`            |
//! | `z < -9`         | oscillatory asymptotic expansion                          |
//!
//! The positive side keeps full *relative* accuracy, which the long-wave
//! closed form needs because it multiplies `Ai` by exponentially large
//! prefactors. [`airy_ai_scaled`] exposes `Ai(z) e^{2z^{3/2}/3}` directly.

use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, PI};
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{invalid, Result};
use crate::quadrature::{GaussLegendre, NodeSet};

/// `Ai(0) = 3^{-2/3} / Γ(2/3)`.
pub const AI0: f64 = 0.355_028_053_887_817_2;
/// `-Ai'(0) = 3^{-1/3} / Γ(1/3)`.
pub const AIP0_NEG: f64 = 0.258_819_403_792_806_8;

/// Value and derivative at one argument.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AiryValue {
    pub z: f64,
    pub ai: f64,
    pub ai_prime: f64,
}

pub fn airy_ai(z: f64) -> f64 {
    airy(z).ai
}

pub fn airy_ai_prime(z: f64) -> f64 {
    airy(z).ai_prime
}

/// `Ai(z)` and `Ai'(z)` together.
pub fn airy(z: f64) -> AiryValue {
    let (ai, ai_prime) = if z >= 2.0 {
        let (a, d) = saddle_scaled(z);
        let damp = (-zeta(z)).exp();
        (a * damp, d * damp)
    } else if z >= -5.0 {
        maclaurin(z)
    } else if z >= -9.0 {
        ray_integral(z)
    } else {
        oscillatory_asymptotic(-z)
    };
    AiryValue { z, ai, ai_prime }
}

/// `(Ai(z), Ai'(z))` multiplied by `e^{ζ}`, `ζ = 2 z^{3/2} / 3` for `z > 0`
/// (no scaling for `z ≤ 0`).
pub fn airy_scaled(z: f64) -> (f64, f64) {
    if z >= 2.0 {
        saddle_scaled(z)
    } else {
        let v = airy(z);
        let s = if z > 0.0 { zeta(z).exp() } else { 1.0 };
        (v.ai * s, v.ai_prime * s)
    }
}

pub fn airy_ai_scaled(z: f64) -> f64 {
    airy_scaled(z).0
}

/// Exponent used by [`airy_scaled`]: `2 z^{3/2} / 3` for `z > 0`, else 0.
pub fn scaling_exponent(z: f64) -> f64 {
    if z > 0.0 {
        zeta(z)
    } else {
        0.0
    }
}

fn zeta(z: f64) -> f64 {
    2.0 / 3.0 * z * z.sqrt()
}

fn maclaurin(z: f64) -> (f64, f64) {
    let z3 = z * z * z;
    // f = Σ t_k, g = Σ s_k with f(0) = 1, g(0) = z; df, dg their derivatives.
    let (mut t, mut s) = (1.0, z);
    let (mut f, mut g) = (t, s);
    let (mut u, mut v) = (0.5 * z * z, 1.0);
    let (mut df, mut dg) = (u, v);
    for k in 1..200 {
        let kf = k as f64;
        t *= z3 / ((3.0 * kf - 1.0) * (3.0 * kf));
        s *= z3 / ((3.0 * kf) * (3.0 * kf + 1.0));
        v *= z3 / ((3.0 * kf) * (3.0 * kf - 2.0));
        if k >= 2 {
            u *= z3 / ((3.0 * kf - 1.0) * (3.0 * kf - 3.0));
            df += u;
        }
        f += t;
        g += s;
        dg += v;
        let scale = f.abs() + g.abs() + 1.0;
        if t.abs() + s.abs() + u.abs() + v.abs() < 1e-18 * scale {
            break;
        }
    }
    (AI0 * f - AIP0_NEG * g, AI0 * df - AIP0_NEG * dg)
}

/// Nodes for the saddle-point integral over `s ∈ [0, 6.5]`.
fn saddle_nodes() -> &'static NodeSet {
    static NODES: OnceLock<NodeSet> = OnceLock::new();
    NODES.get_or_init(|| NodeSet::composite(&GaussLegendre::new(20), &[0.0, 6.5], 16))
}

/// Path `t = √z + i y` through the saddle gives
/// `Ai(z) e^{ζ} = (1/π) ∫₀^∞ e^{-√z y²} cos(y³/3) dy` and
/// `Ai'(z) e^{ζ} = -(1/π) ∫₀^∞ e^{-√z y²} (√z cos(y³/3) + y sin(y³/3)) dy`.
fn saddle_scaled(z: f64) -> (f64, f64) {
    let z14 = z.sqrt().sqrt();
    let k = 1.0 / (3.0 * z14 * z14 * z14);
    let nodes = saddle_nodes();
    let (mut ic, mut is) = (0.0, 0.0);
    for (&s, &w) in nodes.points.iter().zip(&nodes.weights) {
        let g = (-s * s).exp() * w;
        let (sn, cs) = (k * s * s * s).sin_cos();
        ic += g * cs;
        is += g * s * sn;
    }
    let ai = ic / (PI * z14);
    let aip = -(z14 * ic + is / (z14 * z14)) / PI;
    (ai, aip)
}

/// `Ai(z) = (1/π) Im[ω ∫₀^∞ exp(-r³/3 - z ω r) dr]`, `ω = e^{iπ/3}`.
fn ray_integral(z: f64) -> (f64, f64) {
    let omega = Complex64::from_polar(1.0, FRAC_PI_3);
    // Truncate where the integrand has decayed below e^{-45}.
    let mut r_max = 4.0;
    while r_max * r_max * r_max / 3.0 + 0.5 * z * r_max < 45.0 {
        r_max += 0.25;
    }
    let panels = 4 + ((z.abs() * 0.87 * r_max) / (2.0 * PI) * 10.0 / 20.0).ceil() as usize;
    let set = NodeSet::composite(&GaussLegendre::new(20), &[0.0, r_max], panels);
    let (mut ia, mut id) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    for (&r, &w) in set.points.iter().zip(&set.weights) {
        let e = (Complex64::new(-r * r * r / 3.0, 0.0) - omega * (z * r)).exp() * w;
        ia += e;
        id += e * r;
    }
    let ai = (omega * ia).im / PI;
    let aip = (-(omega * omega) * id).im / PI;
    (ai, aip)
}

/// `Ai(-x)`, `Ai'(-x)` for large `x` from the standard oscillatory expansions
/// with coefficients `u_k`, `v_k`; summed to the smallest term.
fn oscillatory_asymptotic(x: f64) -> (f64, f64) {
    let z = zeta(x);
    let (mut uc, mut us, mut vc, mut vs) = (0.0, 0.0, 0.0, 0.0);
    let mut u = 1.0;
    let mut zp = 1.0; // ζ^{-k}
    let mut last = f64::INFINITY;
    for k in 0..60 {
        let kf = k as f64;
        if k > 0 {
            u *= (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0) / ((2.0 * kf - 1.0) * 216.0 * kf);
            zp /= z;
        }
        let v = if k == 0 { 1.0 } else { -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u };
        let term_u = u * zp;
        let term_v = v * zp;
        let mag = term_u.abs().max(term_v.abs());
        if mag > last {
            break;
        }
        last = mag;
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            uc += sign * term_u;
            vc += sign * term_v;
        } else {
            us += sign * term_u;
            vs += sign * term_v;
        }
        if mag < 1e-17 {
            break;
        }
    }
    let (sn, cs) = (z - FRAC_PI_4).sin_cos();
    let x14 = x.sqrt().sqrt();
    let ai = (cs * uc + sn * us) / (PI.sqrt() * x14);
    let aip = x14 / PI.sqrt() * (sn * vc - cs * vs);
    (ai, aip)
}

/// Which envelope function: `A⁺` or `A⁻`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnvelopeSign {
    Plus,
    Minus,
}

/// `A±(y) = √π [ (3y/2)^{1/6} Ai(-(3y/2)^{2/3}) ± i (3y/2)^{-1/6} Ai'(-(3y/2)^{2/3}) ]`.
///
/// Tends to `e^{±i(y - π/4)}` for large `y`. Only defined for `y > 0`.
pub fn envelope_a(y: f64, sign: EnvelopeSign) -> Result<Complex64> {
    if !(y > 0.0) {
        return Err(invalid("y", format!("envelope argument must be positive, got {y}")));
    }
    let w = 1.5 * y;
    let arg = -w.powf(2.0 / 3.0);
    let v = airy(arg);
    let re = w.powf(1.0 / 6.0) * v.ai;
    let im = w.powf(-1.0 / 6.0) * v.ai_prime;
    let s = match sign {
        EnvelopeSign::Plus => 1.0,
        EnvelopeSign::Minus => -1.0,
    };
    Ok(Complex64::new(re, s * im) * PI.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_at_origin() {
        let v = airy(0.0);
        assert!((v.ai - 0.355_028_053_887_817_2).abs() < 1e-15);
        assert!((v.ai_prime + 0.258_819_403_792_806_8).abs() < 1e-15);
    }

    #[test]
    fn method_switchovers_are_continuous() {
        // Compare neighbouring methods on both sides of each switch.
        for z in [2.0, 2.5, 1.5] {
            let (a, d) = maclaurin(z);
            let (sa, sd) = saddle_scaled(z);
            let damp = (-zeta(z)).exp();
            assert!((a - sa * damp).abs() < 1e-13, "z = {z}");
            assert!((d - sd * damp).abs() < 1e-13, "z = {z}");
        }
        for z in [-5.0, -6.0, -4.0] {
            let (a, d) = maclaurin(z);
            let (ra, rd) = ray_integral(z);
            assert!((a - ra).abs() < 1e-11, "z = {z}: {a} vs {ra}");
            assert!((d - rd).abs() < 1e-11, "z = {z}");
        }
        for z in [-9.0, -8.5, -10.0] {
            let (ra, rd) = ray_integral(z);
            let (aa, ad) = oscillatory_asymptotic(-z);
            assert!((ra - aa).abs() < 1e-11, "z = {z}: {ra} vs {aa}");
            assert!((rd - ad).abs() < 1e-10, "z = {z}: {rd} vs {ad}");
        }
    }

    #[test]
    fn known_values() {
        // Reference values from standard tables.
        let cases = [
            (1.0, 0.135_292_416_312_881_4, -0.159_147_441_296_793_2),
            (-1.0, 0.535_560_883_292_352_1, -0.010_160_567_116_645_2),
            (5.0, 1.083_444_281_360_744e-4, -2.474_138_908_684_625e-4),
            (-10.0, 0.040_241_238_486_443_2, 0.996_265_044_132_79),
        ];
        for (z, a, d) in cases {
            let v = airy(z);
            assert!((v.ai - a).abs() < 1e-12 * a.abs().max(1e-3), "Ai({z}) = {} vs {a}", v.ai);
            assert!((v.ai_prime - d).abs() < 1e-12 * d.abs().max(1e-3), "Ai'({z}) = {} vs {d}", v.ai_prime);
        }
    }

    #[test]
    fn positive_axis_relative_accuracy() {
        // Ai(z) e^{ζ} → 1 / (2 √π z^{1/4}) (1 - 5/(72 ζ) + ...)
        let z = 40.0;
        let s = airy_ai_scaled(z);
        let zt = zeta(z);
        let approx = (1.0 - 5.0 / (72.0 * zt) + 385.0 / (10368.0 * zt * zt)) / (2.0 * PI.sqrt() * z.powf(0.25));
        assert!((s - approx).abs() / approx < 1e-6);
    }

    #[test]
    fn envelope_requires_positive_argument() {
        assert!(envelope_a(0.0, EnvelopeSign::Plus).is_err());
        assert!(envelope_a(-1.0, EnvelopeSign::Minus).is_err());
        let p = envelope_a(3.0, EnvelopeSign::Plus).unwrap();
        let m = envelope_a(3.0, EnvelopeSign::Minus).unwrap();
        assert!((p - m.conj()).norm() < 1e-15);
    }
}
