//! Two-component wave fields on a spatial grid, CSV round-tripping and
//! field-to-field error reports.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use crate::dispersion::Dispersion;
use crate::error::{Error, Result};

/// How a field was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Ode,
    QuadratureFull,
    QuadratureAc,
    QuadratureOpt,
    UasIntegral,
    GaussianAiry,
    Dalembert,
    AcousticFront,
    AcousticUniform,
    OpticalFront,
    OpticalUniform,
    ShortwaveTotal,
}

impl Method {
    pub const ALL: [Method; 12] = [
        Method::Ode,
        Method::QuadratureFull,
        Method::QuadratureAc,
        Method::QuadratureOpt,
        Method::UasIntegral,
        Method::GaussianAiry,
        Method::Dalembert,
        Method::AcousticFront,
        Method::AcousticUniform,
        Method::OpticalFront,
        Method::OpticalUniform,
        Method::ShortwaveTotal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Ode => "ode",
            Method::QuadratureFull => "quadrature_full",
            Method::QuadratureAc => "quadrature_ac",
            Method::QuadratureOpt => "quadrature_opt",
            Method::UasIntegral => "uas_integral",
            Method::GaussianAiry => "gaussian_airy",
            Method::Dalembert => "dalembert",
            Method::AcousticFront => "acoustic_front",
            Method::AcousticUniform => "acoustic_uniform",
            Method::OpticalFront => "optical_front",
            Method::OpticalUniform => "optical_uniform",
            Method::ShortwaveTotal => "shortwave_total",
        }
    }

    /// Long-wave asymptotics (valid for `δ ≪ 1` only).
    pub fn is_longwave(self) -> bool {
        matches!(self, Method::UasIntegral | Method::GaussianAiry | Method::Dalembert)
    }

    /// Short-wave asymptotics (valid for `δ = 1` only).
    pub fn is_shortwave(self) -> bool {
        matches!(
            self,
            Method::AcousticFront
                | Method::AcousticUniform
                | Method::OpticalFront
                | Method::OpticalUniform
                | Method::ShortwaveTotal
        )
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL.iter().copied().find(|m| m.name() == s).ok_or_else(|| Error::InvalidParameter {
            name: "method",
            reason: format!(
                "unknown method `{s}`; expected one of {}",
                Method::ALL.iter().map(|m| m.name()).collect::<Vec<_>>().join(", ")
            ),
        })
    }
}

/// Displacements `(u, v)` of both species on a grid at time `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct WaveField {
    pub x: Vec<f64>,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    pub t: f64,
    pub method: Method,
}

impl WaveField {
    pub fn new(x: Vec<f64>, u: Vec<f64>, v: Vec<f64>, t: f64, method: Method) -> Result<Self> {
        if x.len() != u.len() || x.len() != v.len() {
            return Err(Error::MismatchedFields(format!(
                "grid has {} points but u has {} and v has {}",
                x.len(),
                u.len(),
                v.len()
            )));
        }
        Ok(Self { x, u, v, t, method })
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    /// `max |u|, |v|` over the grid.
    pub fn peak(&self) -> f64 {
        self.u.iter().chain(&self.v).fold(0.0, |m, a| m.max(a.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.u.iter().chain(&self.v).all(|a| a.is_finite())
    }

    /// Writes `#`-prefixed `comments`, the header `x,u,v,method,t`, then one
    /// row per point with round-trip precision.
    pub fn write_csv<W: Write>(&self, mut out: W, comments: &[String]) -> io::Result<()> {
        for c in comments {
            writeln!(out, "# {c}")?;
        }
        writeln!(out, "x,u,v,method,t")?;
        for i in 0..self.len() {
            writeln!(out, "{:e},{:e},{:e},{},{:e}", self.x[i], self.u[i], self.v[i], self.method, self.t)?;
        }
        Ok(())
    }

    /// Parses the format written by [`Self::write_csv`].
    pub fn read_csv(text: &str) -> Result<Self> {
        let bad = |line: usize, what: &str| Error::MismatchedFields(format!("csv line {line}: {what}"));
        let mut rows = text.lines().enumerate().filter(|(_, l)| !l.trim_start().starts_with('#') && !l.trim().is_empty());
        match rows.next() {
            Some((_, h)) if h.trim() == "x,u,v,method,t" => {}
            Some((i, _)) => return Err(bad(i + 1, "expected header `x,u,v,method,t`")),
            None => return Err(bad(0, "empty file")),
        }
        let (mut x, mut u, mut v) = (Vec::new(), Vec::new(), Vec::new());
        let mut meta: Option<(Method, f64)> = None;
        for (i, line) in rows {
            let f: Vec<&str> = line.split(',').map(str::trim).collect();
            if f.len() != 5 {
                return Err(bad(i + 1, "expected 5 columns"));
            }
            let num = |s: &str| s.parse::<f64>().map_err(|_| bad(i + 1, "not a number"));
            x.push(num(f[0])?);
            u.push(num(f[1])?);
            v.push(num(f[2])?);
            let m: Method = f[3].parse()?;
            let t = num(f[4])?;
            match meta {
                None => meta = Some((m, t)),
                Some((m0, t0)) if m0 == m && t0 == t => {}
                Some(_) => return Err(bad(i + 1, "method and time must be constant within a file")),
            }
        }
        let (method, t) = meta.ok_or_else(|| bad(0, "no data rows"))?;
        WaveField::new(x, u, v, t, method)
    }
}

/// Interval `[center - half_width, center + half_width]` for windowed norms.
#[derive(Clone, Debug, PartialEq)]
pub struct Window {
    pub label: String,
    pub center: f64,
    pub half_width: f64,
}

impl Window {
    pub fn contains(&self, x: f64) -> bool {
        (x - self.center).abs() <= self.half_width
    }
}

/// Airy envelope width `μ^{2/3} (q t)^{1/3}` of a front with dispersion
/// coefficient `q`.
pub fn envelope_width(mu: f64, q: f64, t: f64) -> f64 {
    mu.powf(2.0 / 3.0) * (q * t).cbrt()
}

/// Windows of total width `10 μ^{2/3}(q t)^{1/3}` around the acoustic fronts
/// `±ct` (using `q`) and the optical fronts `±c*t` (using `q*`).
pub fn front_windows(disp: &Dispersion, mu: f64, t: f64) -> Vec<Window> {
    let wa = 5.0 * envelope_width(mu, disp.q, t);
    let wo = 5.0 * envelope_width(mu, disp.q_star, t);
    vec![
        Window { label: "acoustic_right".into(), center: disp.c * t, half_width: wa },
        Window { label: "acoustic_left".into(), center: -disp.c * t, half_width: wa },
        Window { label: "optical_right".into(), center: disp.c_star * t, half_width: wo },
        Window { label: "optical_left".into(), center: -disp.c_star * t, half_width: wo },
    ]
}

/// Error norms between two fields.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldComparison {
    /// `max |Δu|, |Δv|` over the grid.
    pub linf: f64,
    /// Root mean square of `Δu` and `Δv` over the grid.
    pub l2: f64,
    /// Max of both fields' peaks, for relative errors.
    pub peak: f64,
    /// `(label, L∞ inside the window, points inside)`.
    pub windows: Vec<(String, f64, usize)>,
}

/// Compares two fields on the same grid at the same time.
pub fn compare_fields(a: &WaveField, b: &WaveField, windows: &[Window]) -> Result<FieldComparison> {
    if a.len() != b.len() {
        return Err(Error::MismatchedFields(format!("grid sizes differ: {} vs {}", a.len(), b.len())));
    }
    if a.t != b.t {
        return Err(Error::MismatchedFields(format!("times differ: {} vs {}", a.t, b.t)));
    }
    if let Some(i) = (0..a.len()).find(|&i| (a.x[i] - b.x[i]).abs() > 1e-12 * (1.0 + a.x[i].abs())) {
        return Err(Error::MismatchedFields(format!("grids differ at index {i}: {} vs {}", a.x[i], b.x[i])));
    }
    let diff: Vec<f64> = (0..a.len()).map(|i| (a.u[i] - b.u[i]).abs().max((a.v[i] - b.v[i]).abs())).collect();
    let linf = diff.iter().fold(0.0f64, |m, &d| m.max(d));
    let sq: f64 = (0..a.len()).map(|i| (a.u[i] - b.u[i]).powi(2) + (a.v[i] - b.v[i]).powi(2)).sum();
    let l2 = if a.is_empty() { 0.0 } else { (sq / (2 * a.len()) as f64).sqrt() };
    let windows = windows
        .iter()
        .map(|w| {
            let (mut m, mut n) = (0.0f64, 0usize);
            for (i, &x) in a.x.iter().enumerate() {
                if w.contains(x) {
                    m = m.max(diff[i]);
                    n += 1;
                }
            }
            (w.label.clone(), m, n)
        })
        .collect();
    Ok(FieldComparison { linf, l2, peak: a.peak().max(b.peak()), windows })
}

/// Compares two fields on lattice sites `x = n h` using only the atom that
/// actually sits there: `u` on even `n`, `v` on odd `n`.
pub fn compare_on_sites(a: &WaveField, b: &WaveField, h: f64, windows: &[Window]) -> Result<FieldComparison> {
    compare_fields(a, b, &[])?;
    let mut sites = Vec::with_capacity(a.len());
    for &x in &a.x {
        let n = (x / h).round();
        if (x / h - n).abs() > 1e-6 {
            return Err(Error::MismatchedFields(format!("x = {x} is not a lattice site of step {h}")));
        }
        sites.push(n as i64);
    }
    let pick = |f: &WaveField, i: usize| if sites[i].rem_euclid(2) == 0 { f.u[i] } else { f.v[i] };
    let diff: Vec<f64> = (0..a.len()).map(|i| (pick(a, i) - pick(b, i)).abs()).collect();
    let peak = (0..a.len()).fold(0.0f64, |m, i| m.max(pick(a, i).abs()).max(pick(b, i).abs()));
    let linf = diff.iter().fold(0.0f64, |m, &d| m.max(d));
    let l2 = if a.is_empty() { 0.0 } else { (diff.iter().map(|d| d * d).sum::<f64>() / a.len() as f64).sqrt() };
    let windows = windows
        .iter()
        .map(|w| {
            let inside = (0..a.len()).filter(|&i| w.contains(a.x[i]));
            let (m, n) = inside.fold((0.0f64, 0usize), |(m, n), i| (m.max(diff[i]), n + 1));
            (w.label.clone(), m, n)
        })
        .collect();
    Ok(FieldComparison { linf, l2, peak, windows })
}

/// Uniform grid of `n ≥ 2` points on `[lo, hi]`.
pub fn uniform_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2);
    (0..n).map(|j| lo + (hi - lo) * j as f64 / (n - 1) as f64).collect()
}
