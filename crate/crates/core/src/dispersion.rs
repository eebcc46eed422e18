//! Lattice parameterization, the acoustic and optical dispersion branches,
//! their modal projectors and the derived front constants.
//!
//! Momenta here are the lattice-scaled ones (`δp` in the continuous model), so
//! both branches are π-periodic and even, and the Brillouin zone is
//! `[-π/2, π/2]`.

use std::f64::consts::FRAC_PI_2;

use crate::error::{invalid, Error, Result};
use crate::jet::Jet;
use crate::roots::bracketed_root;

/// Real 2×2 matrix, row-major.
pub type Mat2 = [[f64; 2]; 2];

/// Physical lattice constants and the dimensionless quantities derived from
/// them. Build with [`LatticeParams::new`] (physical inputs) or
/// [`LatticeParams::from_gammas`] (dimensionless inputs).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LatticeParams {
    /// Heavy mass (kg); zero when built from gammas.
    pub m1: f64,
    /// Light mass (kg); zero when built from gammas.
    pub m2: f64,
    /// Spring constant (N/m); zero when built from gammas.
    pub spring: f64,
    /// Nearest-neighbour distance (m); zero when built from gammas.
    pub spacing: f64,
    /// Propagation length (m); zero when built from gammas.
    pub length: f64,
    /// Reference speed (m/s); zero when built from gammas.
    pub c0: f64,
    pub gamma1: f64,
    pub gamma2: f64,
    /// Dimensionless lattice step `d / L`.
    pub h: f64,
}

impl LatticeParams {
    /// Derives the dimensionless constants. The reference speed is the
    /// harmonic-mean combination `c0² = 2 c₁² c₂² / (c₁² + c₂²)` with
    /// `c_i² = K d² / m_i`, which makes the acoustic speed exactly one.
    pub fn new(m1: f64, m2: f64, spring: f64, spacing: f64, length: f64) -> Result<Self> {
        for (name, v) in [("m1", m1), ("m2", m2), ("K", spring), ("d", spacing), ("L", length)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(invalid(name, format!("must be positive and finite, got {v}")));
            }
        }
        if m1 <= m2 {
            return Err(invalid("m1", format!("heavy mass must exceed light mass (m1 = {m1}, m2 = {m2})")));
        }
        let c1_sq = spring * spacing * spacing / m1;
        let c2_sq = spring * spacing * spacing / m2;
        let c0_sq = 2.0 * c1_sq * c2_sq / (c1_sq + c2_sq);
        Ok(Self {
            m1,
            m2,
            spring,
            spacing,
            length,
            c0: c0_sq.sqrt(),
            gamma1: c1_sq / c0_sq,
            gamma2: c2_sq / c0_sq,
            h: spacing / length,
        })
    }

    /// Dimensionless construction; physical fields are left at zero.
    pub fn from_gammas(gamma1: f64, gamma2: f64, h: f64) -> Result<Self> {
        for (name, v) in [("gamma1", gamma1), ("gamma2", gamma2), ("h", h)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(invalid(name, format!("must be positive and finite, got {v}")));
            }
        }
        if gamma1 >= gamma2 {
            return Err(invalid(
                "gamma1",
                format!("requires gamma1 < gamma2 (got {gamma1} >= {gamma2})"),
            ));
        }
        Ok(Self { m1: 0.0, m2: 0.0, spring: 0.0, spacing: 0.0, length: 0.0, c0: 0.0, gamma1, gamma2, h })
    }

    /// The NaCl-like lattice with a 1 mm propagation length.
    pub fn nacl() -> Self {
        Self::new(5.88e-26, 3.81e-26, 15.0, 2.82e-10, 1e-3).expect("valid constants")
    }

    pub fn dispersion(&self) -> Result<Dispersion> {
        Dispersion::new(self.gamma1, self.gamma2)
    }
}

/// Which dispersion branch.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    Acoustic,
    Optical,
}

/// Branch evaluators and derived constants for a pair `γ₁ < γ₂`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dispersion {
    pub gamma1: f64,
    pub gamma2: f64,
    /// Long-wave acoustic speed.
    pub c: f64,
    /// Cubic dispersion coefficient of the acoustic branch.
    pub q: f64,
    /// Inflection point of the optical branch in `(0, π/2)`.
    pub p_star: f64,
    /// Optical front speed `-ω₂'(p*)`.
    pub c_star: f64,
    /// `ω₂'''(p*) / 2`.
    pub q_star: f64,
}

type J5 = Jet<5>;

impl Dispersion {
    pub fn new(gamma1: f64, gamma2: f64) -> Result<Self> {
        if !(gamma1 > 0.0 && gamma2 > 0.0) {
            return Err(invalid("gamma", "both gammas must be positive"));
        }
        if gamma1 >= gamma2 {
            return Err(invalid("gamma1", format!("requires gamma1 < gamma2 (got {gamma1} >= {gamma2})")));
        }
        let sum = gamma1 + gamma2;
        let c = (2.0 * gamma1 * gamma2 / sum).sqrt();
        let q = c * (gamma1 * gamma1 - gamma1 * gamma2 + gamma2 * gamma2) / (2.0 * sum * sum);
        let mut d = Self { gamma1, gamma2, c, q, p_star: f64::NAN, c_star: f64::NAN, q_star: f64::NAN };
        let (p_star, c_star, q_star) = d.critical_point()?;
        d.p_star = p_star;
        d.c_star = c_star;
        d.q_star = q_star;
        Ok(d)
    }

    /// `C(p) = sqrt(γ₁² + γ₂² + 2γ₁γ₂ cos p)`.
    pub fn aux_c(&self, p: f64) -> f64 {
        let (g1, g2) = (self.gamma1, self.gamma2);
        (g1 * g1 + g2 * g2 + 2.0 * g1 * g2 * p.cos()).max(0.0).sqrt()
    }

    /// `G(p) = γ₂ - γ₁ + C(p)`.
    pub fn aux_g(&self, p: f64) -> f64 {
        self.gamma2 - self.gamma1 + self.aux_c(p)
    }

    /// `J(p) = G(2p)² + 4γ₁γ₂ cos² p`.
    pub fn aux_j(&self, p: f64) -> f64 {
        let g = self.aux_g(2.0 * p);
        let cp = p.cos();
        g * g + 4.0 * self.gamma1 * self.gamma2 * cp * cp
    }

    /// Acoustic branch `ω₁(p) ≥ 0`.
    ///
    /// Evaluated as `2 sqrt(γ₁γ₂) |sin p| / ω₂(p)`, which equals
    /// `sqrt(γ₁ + γ₂ - C(2p))` but has no cancellation near `p = 0`.
    pub fn omega1(&self, p: f64) -> f64 {
        self.omega1_smooth(p).abs()
    }

    /// Smooth odd continuation `Ω(p)` of the acoustic branch: equal to
    /// `ω₁(p)` for `p ∈ [0, π/2]` and odd in `p`.
    pub fn omega1_smooth(&self, p: f64) -> f64 {
        2.0 * (self.gamma1 * self.gamma2).sqrt() * p.sin() / self.omega2(p)
    }

    /// Optical branch `ω₂(p) > 0`.
    pub fn omega2(&self, p: f64) -> f64 {
        (self.gamma1 + self.gamma2 + self.aux_c(2.0 * p)).sqrt()
    }

    pub fn omega(&self, branch: Branch, p: f64) -> f64 {
        match branch {
            Branch::Acoustic => self.omega1(p),
            Branch::Optical => self.omega2(p),
        }
    }

    /// Taylor jet of `ω₂` at `p`.
    pub fn omega2_jet(&self, p: f64) -> J5 {
        let (g1, g2) = (self.gamma1, self.gamma2);
        let x = J5::variable(p);
        let (_, cos2) = (x * 2.0).sin_cos();
        let c2 = (cos2 * (2.0 * g1 * g2) + (g1 * g1 + g2 * g2)).sqrt();
        (c2 + (g1 + g2)).sqrt()
    }

    /// Taylor jet of the smooth acoustic continuation `Ω` at `p`.
    pub fn omega1_smooth_jet(&self, p: f64) -> J5 {
        let x = J5::variable(p);
        let (s, _) = x.sin_cos();
        s.scale(2.0 * (self.gamma1 * self.gamma2).sqrt()) / self.omega2_jet(p)
    }

    /// Derivative of order 1..=4 of `ω₁` or `ω₂`.
    ///
    /// `ω₁` is not differentiable where `sin p = 0`; requesting a branch-1
    /// derivative there is an error (use [`Self::omega1_smooth_jet`] or the
    /// one-sided limit `ω₁'(0⁺) = c`).
    pub fn omega_derivs(&self, branch: Branch, p: f64, order: usize) -> Result<f64> {
        if !(1..=4).contains(&order) {
            return Err(invalid("order", format!("derivative order must be 1..=4, got {order}")));
        }
        match branch {
            Branch::Optical => Ok(self.omega2_jet(p).derivative(order)),
            Branch::Acoustic => {
                let s = p.sin();
                if s == 0.0 || (p / std::f64::consts::PI).fract() == 0.0 {
                    return Err(Error::AcousticKink { p });
                }
                Ok(s.signum() * self.omega1_smooth_jet(p).derivative(order))
            }
        }
    }

    /// Signed second derivative of `Ω` (the odd smooth acoustic branch) or
    /// `ω₂`; defined everywhere.
    pub fn omega_curvature(&self, branch: Branch, p: f64) -> f64 {
        match branch {
            Branch::Acoustic => self.omega1_smooth_jet(p).derivative(2),
            Branch::Optical => self.omega2_jet(p).derivative(2),
        }
    }

    /// Modal projectors `(𝒜(p), ℬ(p))` onto the acoustic and optical
    /// eigenvectors of `2ΓL(p)`; they sum to the identity.
    pub fn modal_matrices(&self, p: f64) -> (Mat2, Mat2) {
        let (g1, g2) = (self.gamma1, self.gamma2);
        let g = self.aux_g(2.0 * p);
        let cp = p.cos();
        let j = g * g + 4.0 * g1 * g2 * cp * cp;
        let a = [
            [g * g / j, 2.0 * g1 * g * cp / j],
            [2.0 * g2 * g * cp / j, 4.0 * g1 * g2 * cp * cp / j],
        ];
        let b = [[1.0 - a[0][0], -a[0][1]], [-a[1][0], 1.0 - a[1][1]]];
        (a, b)
    }

    /// Projector of one branch.
    pub fn projector(&self, branch: Branch, p: f64) -> Mat2 {
        let (a, b) = self.modal_matrices(p);
        match branch {
            Branch::Acoustic => a,
            Branch::Optical => b,
        }
    }

    /// Inflection point `p*` of `ω₂` (root of `ω₂''` in `(0, π/2)`), the front
    /// speed `c* = -ω₂'(p*)` and `q* = ω₂'''(p*)/2`.
    pub fn critical_point(&self) -> Result<(f64, f64, f64)> {
        let second = |p: f64| self.omega2_jet(p).derivative(2);
        let p_star = bracketed_root(second, 0.05, FRAC_PI_2 - 0.05, 1e-12)?;
        let jet = self.omega2_jet(p_star);
        Ok((p_star, -jet.derivative(1), 0.5 * jet.derivative(3)))
    }

    /// Group velocity ceiling of the acoustic branch (`max ω₁' = c`).
    pub fn max_group_velocity(&self) -> f64 {
        self.c
    }
}

/// Matrix–vector product for any vector element supporting the needed ops.
pub fn mat_vec<T>(m: &Mat2, v: [T; 2]) -> [T; 2]
where
    T: Copy + std::ops::Mul<f64, Output = T> + std::ops::Add<Output = T>,
{
    [v[0] * m[0][0] + v[1] * m[0][1], v[0] * m[1][0] + v[1] * m[1][1]]
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn nacl() -> Dispersion {
        LatticeParams::nacl().dispersion().unwrap()
    }

    #[test]
    fn nacl_constants() {
        let lp = LatticeParams::nacl();
        assert!((lp.gamma1 - 0.82).abs() < 0.01, "{}", lp.gamma1);
        assert!((lp.gamma2 - 1.27).abs() < 0.01, "{}", lp.gamma2);
        assert!((lp.h - 2.82e-7).abs() < 1e-12);
        let d = lp.dispersion().unwrap();
        assert!((d.c - 1.0).abs() < 1e-12);
        assert!((d.q - 0.14).abs() < 0.005);
        assert!((d.p_star - 1.196).abs() < 0.005, "{}", d.p_star);
        assert!((d.c_star - 0.474).abs() < 0.005, "{}", d.c_star);
        assert!((d.q_star - 1.318).abs() < 0.01, "{}", d.q_star);
        assert!(d.c_star < d.c);
    }

    #[test]
    fn parameter_validation() {
        assert!(LatticeParams::new(1.0, 1.0, 1.0, 1.0, 1.0).is_err());
        assert!(LatticeParams::new(1.0, 2.0, 1.0, 1.0, 1.0).is_err());
        assert!(LatticeParams::new(2.0, 1.0, -1.0, 1.0, 1.0).is_err());
        assert!(LatticeParams::new(2.0, 1.0, 1.0, 0.0, 1.0).is_err());
        assert!(LatticeParams::from_gammas(1.0, 1.0, 0.1).is_err());
        let lp = LatticeParams::new(2.0, 1.0, 3.0, 0.5, 7.0).unwrap();
        assert!((lp.gamma2 - 2.0 * lp.gamma1).abs() < 1e-14);
        let k = lp.spring * lp.spacing * lp.spacing;
        assert!((lp.gamma1 - k / (lp.m1 * lp.c0 * lp.c0)).abs() < 1e-14);
    }

    #[test]
    fn aux_functions() {
        let d = Dispersion::new(0.82, 1.27).unwrap();
        assert!((d.aux_c(0.0) - 2.09).abs() < 1e-14);
        assert!((d.aux_c(PI) - 0.45).abs() < 1e-14);
        assert!((d.aux_j(PI / 2.0) - 0.81).abs() < 1e-12);
        for i in 0..100 {
            let p = -7.0 + 0.14 * i as f64;
            assert!(d.aux_g(p) > 0.0 && d.aux_j(p) > 0.0);
        }
    }

    #[test]
    fn branch_values() {
        let d = nacl();
        let (g1, g2) = (d.gamma1, d.gamma2);
        assert_eq!(d.omega1(0.0), 0.0);
        assert!((d.omega2(0.0) - (2.0 * (g1 + g2)).sqrt()).abs() < 1e-14);
        assert!((d.omega1(PI / 2.0) - (2.0 * g1).sqrt()).abs() < 1e-14);
        assert!((d.omega2(PI / 2.0) - (2.0 * g2).sqrt()).abs() < 1e-14);
        for i in 0..200 {
            let p = -3.0 + 0.031 * i as f64;
            let naive = (g1 + g2 - d.aux_c(2.0 * p)).max(0.0).sqrt();
            assert!((d.omega1(p) - naive).abs() < 1e-7);
            assert!(d.omega1(p) < d.omega2(p));
            for f in [Dispersion::omega1, Dispersion::omega2] {
                assert!((f(&d, p) - f(&d, -p)).abs() < 1e-14);
                assert!((f(&d, p) - f(&d, p + PI)).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn optical_derivative_zeros_and_kink() {
        let d = nacl();
        assert!(d.omega_derivs(Branch::Optical, 0.0, 1).unwrap().abs() < 1e-15);
        assert!(d.omega_derivs(Branch::Optical, PI / 2.0, 1).unwrap().abs() < 1e-14);
        assert!(d.omega_derivs(Branch::Optical, d.p_star, 2).unwrap().abs() < 1e-10);
        assert!(matches!(d.omega_derivs(Branch::Acoustic, 0.0, 1), Err(Error::AcousticKink { .. })));
        let right = d.omega_derivs(Branch::Acoustic, 1e-7, 1).unwrap();
        assert!((right - d.c).abs() < 1e-10);
        let left = d.omega_derivs(Branch::Acoustic, -1e-7, 1).unwrap();
        assert!((left + d.c).abs() < 1e-10);
    }

    #[test]
    fn second_derivative_sign_structure() {
        let d = nacl();
        for i in 1..=50 {
            let p = d.p_star * i as f64 / 51.0;
            assert!(d.omega_derivs(Branch::Optical, p, 2).unwrap() < 0.0, "p = {p}");
            let p = d.p_star + (FRAC_PI_2 - d.p_star) * i as f64 / 51.0;
            assert!(d.omega_derivs(Branch::Optical, p, 2).unwrap() > 0.0, "p = {p}");
        }
    }

    #[test]
    fn modal_matrices_identities() {
        let d = nacl();
        let s = d.gamma1 + d.gamma2;
        let (a0, _) = d.modal_matrices(0.0);
        let expect = [[d.gamma2 / s, d.gamma1 / s], [d.gamma2 / s, d.gamma1 / s]];
        for i in 0..2 {
            for j in 0..2 {
                assert!((a0[i][j] - expect[i][j]).abs() < 1e-14);
            }
        }
        // ker 𝒜(0) is spanned by (γ₁, -γ₂); (1, 1) spans ker ℬ(0).
        let k = mat_vec(&a0, [d.gamma1, -d.gamma2]);
        assert!(k[0].abs() < 1e-14 && k[1].abs() < 1e-14);
        let (_, b0) = d.modal_matrices(0.0);
        let k = mat_vec(&b0, [1.0, 1.0]);
        assert!(k[0].abs() < 1e-14 && k[1].abs() < 1e-14);
        let k = mat_vec(&a0, [1.0, -1.0]);
        assert!((k[0] - k[1]).abs() < 1e-14 && k[0].abs() > 0.1);
        for p in [0.0, 0.3, 1.2, PI / 2.0] {
            let (a, b) = d.modal_matrices(p);
            let (am, _) = d.modal_matrices(-p);
            for i in 0..2 {
                for j in 0..2 {
                    let id = if i == j { 1.0 } else { 0.0 };
                    assert!((a[i][j] + b[i][j] - id).abs() < 1e-15);
                    assert!((a[i][j] - am[i][j]).abs() < 1e-15);
                }
            }
        }
    }
}
