//! Initial perturbation `W(ξ)` of the lattice and its transforms.
//!
//! Sites are indexed by `n ∈ ℤ`; even sites carry the heavy atoms (`u`), odd
//! sites the light ones (`v`), and site `n` sits at `x = n h = n δ μ`.
//! Internally the semi-discrete transforms are evaluated in the lattice
//! momentum `s = δ p ∈ [-π/2, π/2]`:
//!
//! ```text
//! W̃₁(s/δ) = Σₖ W(2kδ) e^{-2iks},    W̃₂(s/δ) = Σₖ W((2k+1)δ) e^{-i(2k+1)s}.
//! ```

use std::f64::consts::{FRAC_PI_2, PI};
use std::path::Path;

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::quadrature::{panels_for, GaussLegendre, NodeSet, PANEL_ORDER};

/// Samples smaller than this are dropped from the lattice sums.
pub const SAMPLE_CUTOFF: f64 = 1e-14;

/// `√(2 ln 10¹⁴)`: the Gaussian falls below [`SAMPLE_CUTOFF`] beyond this.
pub const GAUSSIAN_RADIUS: f64 = 8.028_053_262_063_07;

/// Tabulated profile interpolated by a natural cubic spline; zero outside the
/// table.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleTable {
    xi: Vec<f64>,
    w: Vec<f64>,
    /// Spline second derivatives at the knots.
    m: Vec<f64>,
    radius: f64,
}

impl SampleTable {
    /// `xi` must be strictly increasing with at least four points, and all
    /// values with `|ξ| > radius` must be below `1e-12`.
    pub fn new(xi: Vec<f64>, w: Vec<f64>, radius: f64) -> Result<Self> {
        if xi.len() != w.len() {
            return Err(Error::SampleTable(format!("{} abscissae but {} values", xi.len(), w.len())));
        }
        if xi.len() < 4 {
            return Err(Error::SampleTable("need at least four samples".into()));
        }
        if xi.windows(2).any(|p| !(p[1] > p[0])) {
            return Err(Error::SampleTable("abscissae must be strictly increasing".into()));
        }
        if xi.iter().chain(&w).any(|v| !v.is_finite()) {
            return Err(Error::SampleTable("non-finite entry".into()));
        }
        if !(radius > 0.0) {
            return Err(Error::SampleTable(format!("decay radius must be positive, got {radius}")));
        }
        if let Some((x, v)) = xi.iter().zip(&w).find(|(x, v)| x.abs() > radius && v.abs() >= 1e-12) {
            return Err(Error::SampleTable(format!(
                "value {v:e} at xi = {x} exceeds 1e-12 outside the declared radius {radius}"
            )));
        }
        let m = natural_spline_moments(&xi, &w);
        Ok(Self { xi, w, m, radius })
    }

    /// Reads a two-column `(ξ, W)` text file. Columns may be separated by
    /// commas, semicolons or whitespace; `#` starts a comment; a first line
    /// that does not parse as numbers is taken as a header.
    pub fn from_file(path: &Path, radius: f64) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::SampleTable(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text, radius)
    }

    pub fn parse(text: &str, radius: f64) -> Result<Self> {
        let (mut xi, mut w) = (Vec::new(), Vec::new());
        let mut seen_data = false;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> =
                line.split(|c: char| c == ',' || c == ';' || c.is_whitespace()).filter(|f| !f.is_empty()).collect();
            let parsed: Option<Vec<f64>> = fields.iter().map(|f| f.parse().ok()).collect();
            match parsed {
                Some(v) if v.len() == 2 => {
                    xi.push(v[0]);
                    w.push(v[1]);
                    seen_data = true;
                }
                _ if !seen_data && xi.is_empty() => {
                    // header line
                    seen_data = true;
                }
                _ => {
                    return Err(Error::SampleTable(format!("line {}: expected two numbers, got `{raw}`", lineno + 1)))
                }
            }
        }
        Self::new(xi, w, radius)
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn knots(&self) -> &[f64] {
        &self.xi
    }

    pub fn eval(&self, x: f64) -> f64 {
        let n = self.xi.len();
        if x < self.xi[0] || x > self.xi[n - 1] {
            return 0.0;
        }
        let j = match self.xi.partition_point(|&k| k <= x) {
            0 => 0,
            i if i >= n => n - 2,
            i => i - 1,
        };
        let (x0, x1) = (self.xi[j], self.xi[j + 1]);
        let h = x1 - x0;
        let (a, b) = ((x1 - x) / h, (x - x0) / h);
        a * self.w[j]
            + b * self.w[j + 1]
            + ((a * a * a - a) * self.m[j] + (b * b * b - b) * self.m[j + 1]) * h * h / 6.0
    }
}

fn natural_spline_moments(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len();
    let mut m = vec![0.0; n];
    // Thomas algorithm on the interior equations.
    let mut c_prime = vec![0.0; n];
    let mut d_prime = vec![0.0; n];
    for i in 1..n - 1 {
        let h0 = x[i] - x[i - 1];
        let h1 = x[i + 1] - x[i];
        let a = h0 / 6.0;
        let b = (h0 + h1) / 3.0;
        let c = h1 / 6.0;
        let d = (y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0;
        let denom = b - a * c_prime[i - 1];
        c_prime[i] = c / denom;
        d_prime[i] = (d - a * d_prime[i - 1]) / denom;
    }
    for i in (1..n - 1).rev() {
        m[i] = d_prime[i] - c_prime[i] * m[i + 1];
    }
    m
}

/// Shape of the perturbation.
#[derive(Clone, Debug, PartialEq)]
pub enum ProfileKind {
    /// `W(ξ) = e^{-ξ²/2}`, self-dual: `Ŵ(p) = e^{-p²/2}`.
    Gaussian,
    Table(SampleTable),
}

/// Localized perturbation `W(x/μ)` together with `μ` and `δ = h/μ`.
#[derive(Clone, Debug, PartialEq)]
pub struct InitialProfile {
    pub kind: ProfileKind,
    pub mu: f64,
    pub delta: f64,
}

impl InitialProfile {
    pub fn new(kind: ProfileKind, mu: f64, delta: f64) -> Result<Self> {
        if !(mu > 0.0 && mu < 1.0) {
            return Err(invalid("mu", format!("must lie in (0, 1), got {mu}")));
        }
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(invalid("delta", format!("must be positive, got {delta}")));
        }
        Ok(Self { kind, mu, delta })
    }

    pub fn gaussian(mu: f64, delta: f64) -> Result<Self> {
        Self::new(ProfileKind::Gaussian, mu, delta)
    }

    /// Lattice step `h = δ μ`.
    pub fn h(&self) -> f64 {
        self.delta * self.mu
    }

    /// `W(ξ)`.
    pub fn w(&self, xi: f64) -> f64 {
        match &self.kind {
            ProfileKind::Gaussian => (-0.5 * xi * xi).exp(),
            ProfileKind::Table(t) => t.eval(xi),
        }
    }

    /// Beyond this `|ξ|` the profile is negligible.
    pub fn decay_radius(&self) -> f64 {
        match &self.kind {
            ProfileKind::Gaussian => GAUSSIAN_RADIUS,
            ProfileKind::Table(t) => t.radius(),
        }
    }

    /// Momentum radius beyond which `|Ŵ(p)|` is negligible.
    pub fn spectral_radius(&self) -> f64 {
        match &self.kind {
            ProfileKind::Gaussian => GAUSSIAN_RADIUS,
            // A cubic spline is only C², so its transform decays like p⁻⁴;
            // the knot spacing sets the useful band.
            ProfileKind::Table(t) => {
                let k = t.knots();
                let min_gap = k.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
                (4.0 * PI / min_gap).max(GAUSSIAN_RADIUS)
            }
        }
    }

    /// `μ`-Fourier transform `Ŵ(p) = (1/√(2π)) ∫ W(ξ) e^{-ipξ} dξ`.
    pub fn mu_fourier(&self, p: f64) -> Complex64 {
        match &self.kind {
            ProfileKind::Gaussian => Complex64::new((-0.5 * p * p).exp(), 0.0),
            ProfileKind::Table(t) => {
                let k = t.knots();
                let (lo, hi) = (k[0], k[k.len() - 1]);
                let rule = GaussLegendre::new(PANEL_ORDER);
                // Integrate knot interval by knot interval so the spline is
                // polynomial on every panel.
                let sub = panels_for(hi - lo, p.abs(), 0).div_ceil(k.len() - 1).max(1);
                let set = NodeSet::composite(&rule, k, sub);
                set.integrate_complex(|xi| Complex64::from_polar(t.eval(xi), -p * xi)) / (2.0 * PI).sqrt()
            }
        }
    }

    /// Convenience: samples and transforms for this profile.
    pub fn spectral(&self) -> Result<SpectralData> {
        SpectralData::new(self)
    }
}

/// Nonzero samples of each species.
///
/// `even[j] = W(2kδ)` with `k = even_start + j`, and
/// `odd[j] = W((2k+1)δ)` with `k = odd_start + j`.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeSamples {
    pub even_start: i64,
    pub even: Vec<f64>,
    pub odd_start: i64,
    pub odd: Vec<f64>,
}

impl LatticeSamples {
    /// Site index and value of every retained sample of one species.
    pub fn sites(&self, odd: bool) -> impl Iterator<Item = (i64, f64)> + '_ {
        let (start, vals, shift) = if odd { (self.odd_start, &self.odd, 1) } else { (self.even_start, &self.even, 0) };
        vals.iter().enumerate().map(move |(j, &w)| (2 * (start + j as i64) + shift, w))
    }

    /// Largest `|n|` of a retained site.
    pub fn max_site(&self) -> i64 {
        self.sites(false).chain(self.sites(true)).map(|(n, _)| n.abs()).max().unwrap_or(0)
    }

    pub fn count(&self) -> usize {
        self.even.len() + self.odd.len()
    }
}

/// Samples `W` on both sublattices, dropping the tails below
/// [`SAMPLE_CUTOFF`].
pub fn sample_lattice(profile: &InitialProfile) -> Result<LatticeSamples> {
    let delta = profile.delta;
    let radius = profile.decay_radius();
    let n_max = (radius / delta).ceil() as i64 + 1;
    let trim = |start: i64, vals: Vec<f64>| -> (i64, Vec<f64>) {
        let first = vals.iter().position(|v| v.abs() >= SAMPLE_CUTOFF);
        let last = vals.iter().rposition(|v| v.abs() >= SAMPLE_CUTOFF);
        match (first, last) {
            (Some(a), Some(b)) => (start + a as i64, vals[a..=b].to_vec()),
            _ => (0, Vec::new()),
        }
    };
    let k_lo = -(n_max / 2) - 1;
    let k_hi = n_max / 2 + 1;
    let even: Vec<f64> = (k_lo..=k_hi).map(|k| profile.w(2.0 * k as f64 * delta)).collect();
    let odd: Vec<f64> = (k_lo..=k_hi).map(|k| profile.w((2 * k + 1) as f64 * delta)).collect();
    let (even_start, even) = trim(k_lo, even);
    let (odd_start, odd) = trim(k_lo, odd);
    if even.is_empty() && odd.is_empty() {
        return Err(Error::NoSignificantSamples { delta, radius });
    }
    Ok(LatticeSamples { even_start, even, odd_start, odd })
}

/// Which sublattice transform.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Semi-discrete transforms `W̃₁, W̃₂` of a sampled profile and the
/// `μ`-Fourier transform of the profile itself. Immutable after
/// construction.
#[derive(Clone, Debug)]
pub struct SpectralData {
    pub profile: InitialProfile,
    pub samples: LatticeSamples,
    /// `π / (2δ)`.
    pub brillouin_halfwidth: f64,
}

impl SpectralData {
    pub fn new(profile: &InitialProfile) -> Result<Self> {
        let samples = sample_lattice(profile)?;
        Ok(Self { profile: profile.clone(), samples, brillouin_halfwidth: FRAC_PI_2 / profile.delta })
    }

    /// Number of lattice terms in the sums.
    pub fn truncation_count(&self) -> usize {
        self.samples.count()
    }

    /// Keeps only samples with `|W| ≥ threshold`: the short trigonometric
    /// polynomials one writes by hand for a few perturbed atoms. This is an
    /// approximation of the full transform.
    pub fn truncated(&self, threshold: f64) -> Self {
        let keep = |start: i64, vals: &[f64]| -> (i64, Vec<f64>) {
            let first = vals.iter().position(|v| v.abs() >= threshold);
            let last = vals.iter().rposition(|v| v.abs() >= threshold);
            match (first, last) {
                (Some(a), Some(b)) => (
                    start + a as i64,
                    vals[a..=b].iter().map(|&v| if v.abs() >= threshold { v } else { 0.0 }).collect(),
                ),
                _ => (0, Vec::new()),
            }
        };
        let (even_start, even) = keep(self.samples.even_start, &self.samples.even);
        let (odd_start, odd) = keep(self.samples.odd_start, &self.samples.odd);
        Self {
            profile: self.profile.clone(),
            samples: LatticeSamples { even_start, even, odd_start, odd },
            brillouin_halfwidth: self.brillouin_halfwidth,
        }
    }

    /// `W̃₁(p)` or `W̃₂(p)` for `p` in the Brillouin zone `[-π/(2δ), π/(2δ)]`.
    pub fn semi_discrete_ft(&self, parity: Parity, p: f64) -> Result<Complex64> {
        if !(p.abs() <= self.brillouin_halfwidth * (1.0 + 1e-12)) {
            return Err(Error::OutsideBrillouinZone { p, half_width: self.brillouin_halfwidth });
        }
        let v = self.lattice_transform(self.profile.delta * p);
        Ok(match parity {
            Parity::Even => v[0],
            Parity::Odd => v[1],
        })
    }

    /// Both transforms at lattice momentum `s = δ p`; no range check, so the
    /// (anti)periodic extension is returned for `|s| > π/2`.
    pub fn lattice_transform(&self, s: f64) -> [Complex64; 2] {
        [
            species_sum(self.samples.sites(false), s, false),
            species_sum(self.samples.sites(true), s, false),
        ]
    }

    /// `d/ds` of [`Self::lattice_transform`].
    pub fn lattice_transform_deriv(&self, s: f64) -> [Complex64; 2] {
        [
            species_sum(self.samples.sites(false), s, true),
            species_sum(self.samples.sites(true), s, true),
        ]
    }

    /// `W̃₁(p)` and `W̃₂(p)` at the original momentum `p`.
    pub fn tilde_pair(&self, p: f64) -> [Complex64; 2] {
        self.lattice_transform(self.profile.delta * p)
    }

    /// `Ŵ(p)`.
    pub fn w_hat(&self, p: f64) -> Complex64 {
        self.profile.mu_fourier(p)
    }

    /// Lattice momenta beyond which both transforms are negligible, used to
    /// trim the Brillouin zone when `δ` is small. Returns `π/2` when nothing
    /// can be trimmed.
    pub fn significant_halfwidth(&self) -> f64 {
        let s = self.profile.delta * self.profile.spectral_radius();
        s.min(FRAC_PI_2)
    }

    /// Kotel'nikov–Whittaker–Shannon interpolant
    /// `W_j(x/μ) = (δ/π) ∫_{B₁} W̃_j(p) e^{ipx/μ} dp`.
    pub fn kws_interpolate(&self, parity: Parity, x: f64) -> Result<f64> {
        let n = x / self.profile.h();
        let k_max = self.samples.max_site() as f64;
        let speed = n.abs() + k_max + 1.0;
        let rule = GaussLegendre::new(PANEL_ORDER);
        let mut panels = panels_for(PI, speed, 2);
        let f = |s: f64| {
            let v = self.lattice_transform(s);
            let w = match parity {
                Parity::Even => v[0],
                Parity::Odd => v[1],
            };
            (w * Complex64::from_polar(1.0, s * n)).re
        };
        let mut prev = NodeSet::composite(&rule, &[-FRAC_PI_2, FRAC_PI_2], panels).integrate(f);
        for _ in 0..12 {
            panels *= 2;
            let cur = NodeSet::composite(&rule, &[-FRAC_PI_2, FRAC_PI_2], panels).integrate(f);
            if (cur - prev).abs() <= 1e-12 * cur.abs().max(1.0) {
                return Ok(cur / PI);
            }
            prev = cur;
        }
        Err(Error::QuadratureNotConverged { estimate: f64::NAN, tolerance: 1e-12, panels })
    }
}

/// `Σ_n W_n e^{-ins}` (or its `s`-derivative) with compensated summation.
fn species_sum(sites: impl Iterator<Item = (i64, f64)>, s: f64, derivative: bool) -> Complex64 {
    let (mut re, mut im) = (Neumaier::default(), Neumaier::default());
    for (n, w) in sites {
        let (sn, cs) = (n as f64 * s).sin_cos();
        if derivative {
            // d/ds e^{-ins} = -in e^{-ins}
            let a = -(n as f64) * w;
            re.add(a * sn);
            im.add(a * cs);
        } else {
            re.add(w * cs);
            im.add(-w * sn);
        }
    }
    Complex64::new(re.total(), im.total())
}

#[derive(Default)]
struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Sup-norm gaps over `p_grid` between the two semi-discrete transforms, and
/// between them and the scaled continuous transform `(1/δ)√(π/2) Ŵ(p)`.
///
/// Returns `(max |W̃₁ - W̃₂|, max_j |W̃_j - (1/δ)√(π/2) Ŵ|)`. Grid points
/// outside the Brillouin zone are an error.
pub fn poisson_gap(profile: &InitialProfile, p_grid: &[f64]) -> Result<(f64, f64)> {
    let spec = SpectralData::new(profile)?;
    let scale = (FRAC_PI_2).sqrt() / profile.delta;
    let (mut g12, mut g_hat) = (0.0f64, 0.0f64);
    for &p in p_grid {
        let w1 = spec.semi_discrete_ft(Parity::Even, p)?;
        let w2 = spec.semi_discrete_ft(Parity::Odd, p)?;
        let hat = spec.w_hat(p) * scale;
        g12 = g12.max((w1 - w2).norm());
        g_hat = g_hat.max((w1 - hat).norm()).max((w2 - hat).norm());
    }
    Ok((g12, g_hat))
}

/// Uniform grid of `n` points over the Brillouin zone of `δ`.
pub fn brillouin_grid(delta: f64, n: usize) -> Vec<f64> {
    let hw = FRAC_PI_2 / delta;
    (0..n).map(|j| -hw + 2.0 * hw * j as f64 / (n - 1) as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaussian_table(step: f64, radius: f64) -> SampleTable {
        let n = (2.0 * radius / step).round() as usize;
        let xi: Vec<f64> = (0..=n).map(|j| -radius + j as f64 * step).collect();
        let w = xi.iter().map(|x| (-0.5 * x * x).exp()).collect();
        SampleTable::new(xi, w, radius).unwrap()
    }

    #[test]
    fn gaussian_samples_at_unit_delta() {
        let prof = InitialProfile::gaussian(0.01, 1.0).unwrap();
        let s = sample_lattice(&prof).unwrap();
        let get = |n: i64| s.sites(n % 2 != 0).find(|&(m, _)| m == n).map(|(_, w)| w).unwrap();
        assert_eq!(get(0), 1.0);
        assert!((get(2) - (-2.0f64).exp()).abs() < 1e-15);
        assert!((get(-4) - (-8.0f64).exp()).abs() < 1e-15);
        assert!((get(1) - (-0.5f64).exp()).abs() < 1e-15);
        assert!((get(3) - (-4.5f64).exp()).abs() < 1e-15);
        assert!(s.sites(false).chain(s.sites(true)).all(|(_, w)| w >= SAMPLE_CUTOFF));
    }

    #[test]
    fn too_coarse_lattice_is_rejected() {
        // Sites fall at multiples of 5, all outside the support.
        let t = SampleTable::new(vec![1.0, 1.2, 1.4, 1.6], vec![0.0, 1.0, 1.0, 0.0], 1.6).unwrap();
        let prof = InitialProfile::new(ProfileKind::Table(t), 0.1, 5.0).unwrap();
        assert!(matches!(sample_lattice(&prof), Err(Error::NoSignificantSamples { .. })));
    }

    #[test]
    fn transforms_at_zero() {
        let spec = InitialProfile::gaussian(0.01, 1.0).unwrap().spectral().unwrap();
        let w1 = spec.semi_discrete_ft(Parity::Even, 0.0).unwrap();
        let w2 = spec.semi_discrete_ft(Parity::Odd, 0.0).unwrap();
        // Full sums; the two-term hand forms are within 1e-3.
        assert!((w1.re - (1.0 + 2.0 * (-2.0f64).exp())).abs() < 1e-3);
        assert!((w2.re - (2.0 * (-0.5f64).exp() + 2.0 * (-4.5f64).exp())).abs() < 1e-5);
        assert!(w1.im.abs() < 1e-15 && w2.im.abs() < 1e-15);
        assert!(spec.semi_discrete_ft(Parity::Even, 2.0).is_err());
    }

    #[test]
    fn truncated_transform_matches_hand_form() {
        let spec = InitialProfile::gaussian(0.01, 1.0).unwrap().spectral().unwrap().truncated(1e-2);
        for p in [0.0, 0.4, 1.1] {
            let [w1, w2] = spec.tilde_pair(p);
            let e = std::f64::consts::E;
            assert!((w1.re - (1.0 + 2.0 / (e * e) * (2.0 * p).cos())).abs() < 1e-14);
            assert!((w2.re - (2.0 / e.sqrt() * p.cos() + 2.0 / e.powf(4.5) * (3.0 * p).cos())).abs() < 1e-14);
        }
    }

    #[test]
    fn periodicity_and_symmetry() {
        let t = gaussian_table(0.05, 9.0);
        let shifted: Vec<f64> = t.knots().iter().map(|x| x + 0.0).collect();
        let vals: Vec<f64> = shifted.iter().map(|x| (-0.5 * (x - 0.7) * (x - 0.7)).exp() * (1.0 + 0.3 * x)).collect();
        let t = SampleTable::new(shifted, vals, 9.0).unwrap();
        let prof = InitialProfile::new(ProfileKind::Table(t), 0.05, 0.4).unwrap();
        let spec = prof.spectral().unwrap();
        let period = PI / prof.delta;
        for p in [-3.0, -1.2, 0.3, 2.5] {
            let [a1, a2] = spec.tilde_pair(p);
            let [b1, b2] = spec.tilde_pair(p + period);
            assert!((a1 - b1).norm() < 1e-12);
            assert!((a2 + b2).norm() < 1e-12);
            let [c1, c2] = spec.tilde_pair(-p);
            assert!((c1 - a1.conj()).norm() < 1e-13);
            assert!((c2 - a2.conj()).norm() < 1e-13);
        }
    }

    #[test]
    fn derivative_matches_difference_quotient() {
        let spec = InitialProfile::gaussian(0.02, 0.5).unwrap().spectral().unwrap();
        for s in [-1.0, 0.2, 0.9] {
            let d = spec.lattice_transform_deriv(s);
            let e = 1e-6;
            let (a, b) = (spec.lattice_transform(s + e), spec.lattice_transform(s - e));
            for j in 0..2 {
                let fd = (a[j] - b[j]) / (2.0 * e);
                assert!((fd - d[j]).norm() < 1e-7 * (1.0 + d[j].norm()));
            }
        }
    }

    #[test]
    fn kws_reproduces_samples() {
        let prof = InitialProfile::gaussian(0.01, 1.0).unwrap();
        let spec = prof.spectral().unwrap();
        let h = prof.h();
        assert!((spec.kws_interpolate(Parity::Even, 0.0).unwrap() - 1.0).abs() < 1e-10);
        assert!((spec.kws_interpolate(Parity::Odd, h).unwrap() - (-0.5f64).exp()).abs() < 1e-10);
        assert!((spec.kws_interpolate(Parity::Even, 2.0 * h).unwrap() - (-2.0f64).exp()).abs() < 1e-10);
        for (n, w) in spec.samples.sites(true) {
            assert!((spec.kws_interpolate(Parity::Odd, n as f64 * h).unwrap() - w).abs() < 1e-10);
        }
    }

    #[test]
    fn spline_reproduces_smooth_profile_transform() {
        let t = gaussian_table(0.02, 9.0);
        assert!((t.eval(0.33) - (-0.5f64 * 0.33 * 0.33).exp()).abs() < 1e-7);
        let prof = InitialProfile::new(ProfileKind::Table(t), 0.01, 0.5).unwrap();
        for p in [0.0, 0.7, 2.0, 4.0] {
            let v = prof.mu_fourier(p);
            assert!((v.re - (-0.5 * p * p).exp()).abs() < 1e-8, "p = {p}: {v}");
            assert!(v.im.abs() < 1e-10);
        }
    }

    #[test]
    fn table_parsing() {
        let text = "# profile\nxi,W\n-2,0\n-1 0.5\n0;1\n1,0.5\n2,0 # tail\n";
        let t = SampleTable::parse(text, 2.0).unwrap();
        assert_eq!(t.knots(), &[-2.0, -1.0, 0.0, 1.0, 2.0]);
        assert!(SampleTable::parse("0,1\n1,x\n2,0\n3,0\n", 3.0).is_err());
        assert!(SampleTable::parse("0,1\n1,2\n2,3\n3,4\n", 1.0).is_err());
    }

    #[test]
    fn poisson_gaps_decay() {
        let gap = |d: f64| {
            let prof = InitialProfile::gaussian(0.01, d).unwrap();
            poisson_gap(&prof, &brillouin_grid(d, 201)).unwrap()
        };
        let (a12, a_hat) = gap(0.5);
        let (b12, b_hat) = gap(0.25);
        assert!(a12 > 1e-3 && a_hat > 1e-3);
        assert!(b12 < 1e-6 * a12 && b_hat < 1e-6 * a_hat);
        let (c12, c_hat) = gap(1.0);
        assert!(c12 > 0.1 && c_hat > 0.1);
    }
}
