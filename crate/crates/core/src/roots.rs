//! Bracketed scalar root finding.

use crate::error::{Error, Result};

/// Finds a root of `f` on `[lo, hi]` where `f(lo)` and `f(hi)` differ in sign.
///
/// Bisection shrinks the bracket until it is narrow, then safeguarded secant
/// steps finish the job; any secant step that leaves the bracket falls back
/// to bisection. Terminates once the bracket is below `tol`.
pub fn bracketed_root<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() || !fa.is_finite() || !fb.is_finite() {
        return Err(Error::RootNotBracketed { lo, hi, f_lo: fa, f_hi: fb });
    }
    for _ in 0..200 {
        let width = b - a;
        if width.abs() <= tol {
            break;
        }
        let mut m = 0.5 * (a + b);
        if width.abs() < 1e-3 * (hi - lo).abs() {
            let s = b - fb * (b - a) / (fb - fa);
            if s > a.min(b) && s < a.max(b) {
                m = s;
            }
        }
        let fm = f(m);
        if fm == 0.0 {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
            fb = fm;
        }
        // Secant steps may stall on one side; force a bisection if so.
        if (b - a).abs() > 0.5 * width.abs() {
            let m = 0.5 * (a + b);
            let fm = f(m);
            if fm.signum() == fa.signum() {
                a = m;
                fa = fm;
            } else {
                b = m;
                fb = fm;
            }
        }
    }
    Ok(if fa.abs() < fb.abs() { a } else { b })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_simple_roots() {
        let r = bracketed_root(|x| x * x - 2.0, 0.0, 2.0, 1e-14).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-13);
        let r = bracketed_root(|x: f64| x.cos() - x, 0.0, 1.0, 1e-14).unwrap();
        assert!((r.cos() - r).abs() < 1e-13);
    }

    #[test]
    fn rejects_unbracketed() {
        assert!(matches!(
            bracketed_root(|x| x * x + 1.0, -1.0, 1.0, 1e-12),
            Err(Error::RootNotBracketed { .. })
        ));
    }

    #[test]
    fn flat_root_still_converges() {
        let r = bracketed_root(|x: f64| (x - 0.3).powi(3), 0.0, 1.0, 1e-13).unwrap();
        assert!((r - 0.3).abs() < 1e-4);
    }
}
