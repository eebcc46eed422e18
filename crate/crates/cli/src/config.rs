//! Scenario configuration: `key = value` lines grouped under `[section]`
//! headers, `#` comments.
//!
//! ```text
//! [lattice]
//! m1 = 5.88e-26      # or: gamma1, gamma2, h
//! m2 = 3.81e-26
//! K = 15
//! d = 2.82e-10
//! L = 1e-3
//!
//! [profile]
//! kind = gaussian    # or: table (with `table = path`, `radius = 6`)
//! N = 80             # or: mu = 0.01
//!
//! [run]
//! times = 0.1, 0.5
//! methods = gaussian_airy, dalembert
//! x_min = -0.7
//! x_max = 0.7
//! points = 2001      # or: grid = lattice
//! out = results
//! ```

use std::path::{Path, PathBuf};
use std::str::FromStr;

use diatomic::initial_data::{ProfileKind, SampleTable};
use diatomic::longwave::{LongwaveRegime, WEAK_DISPERSION_BAND};
use diatomic::{InitialProfile, LatticeParams, Method};

use crate::CliError;

/// One `key = value` entry with its section and source line.
#[derive(Clone, Debug, PartialEq)]
pub struct Entry {
    pub section: String,
    pub key: String,
    pub value: String,
    pub line: usize,
}

/// Parsed but not yet interpreted configuration, in file order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RawConfig {
    pub entries: Vec<Entry>,
}

const KNOWN: &[(&str, &[&str])] = &[
    ("lattice", &["m1", "m2", "K", "d", "L", "gamma1", "gamma2", "h"]),
    ("profile", &["kind", "table", "radius", "mu", "N"]),
    ("run", &["times", "methods", "frame", "x_min", "x_max", "points", "grid", "out"]),
    ("dispersion", &["resolution"]),
    (
        "numerics",
        &["quadrature_tol", "uas_tol", "ode_step_fraction", "optical_k", "margin_widths", "regime_lo", "regime_hi"],
    ),
];

impl RawConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut section = String::new();
        let mut entries: Vec<Entry> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('[') {
                let name = name
                    .strip_suffix(']')
                    .ok_or_else(|| CliError::config(format!("line {}: unterminated section header", i + 1)))?
                    .trim();
                if !KNOWN.iter().any(|(s, _)| *s == name) {
                    return Err(CliError::config(format!("line {}: unknown section [{name}]", i + 1)));
                }
                section = name.to_string();
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::config(format!("line {}: expected `key = value`", i + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            let allowed = KNOWN.iter().find(|(s, _)| *s == section).map(|(_, k)| *k).unwrap_or(&[]);
            if !allowed.contains(&key) {
                let place = if section.is_empty() { "outside any section".to_string() } else { format!("in [{section}]") };
                return Err(CliError::config(format!("line {}: unknown key `{key}` {place}", i + 1)));
            }
            if entries.iter().any(|e| e.section == section && e.key == key) {
                return Err(CliError::config(format!("line {}: `{key}` given twice in [{section}]", i + 1)));
            }
            entries.push(Entry { section: section.clone(), key: key.to_string(), value: value.to_string(), line: i + 1 });
        }
        Ok(Self { entries })
    }

    pub fn get(&self, section: &str, key: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.section == section && e.key == key)
    }

    fn num<T: FromStr>(&self, section: &str, key: &str) -> Result<Option<T>, CliError> {
        self.get(section, key)
            .map(|e| {
                e.value.parse::<T>().map_err(|_| {
                    CliError::config(format!("line {}: [{section}] {key} = `{}` is not a valid number", e.line, e.value))
                })
            })
            .transpose()
    }
}

/// Where the lattice constants come from.
#[derive(Clone, Debug, PartialEq)]
pub enum LatticeSpec {
    Physical { m1: f64, m2: f64, spring: f64, spacing: f64, length: f64 },
    Direct { gamma1: f64, gamma2: f64, h: f64 },
}

/// Reference point the window `[x_min, x_max]` is measured from.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Frame {
    /// Absolute positions.
    Fixed,
    /// Offsets from the acoustic front `c t`.
    Acoustic,
    /// Offsets from the optical front `c* t`.
    Optical,
}

impl Frame {
    pub fn name(self) -> &'static str {
        match self {
            Frame::Fixed => "fixed",
            Frame::Acoustic => "acoustic",
            Frame::Optical => "optical",
        }
    }
}

/// Output grid.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GridKind {
    Uniform(usize),
    /// All lattice sites `n h` inside the window.
    Lattice,
}

/// Numerical knobs with their defaults.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Numerics {
    pub quadrature_tol: f64,
    pub uas_tol: f64,
    pub ode_step_fraction: f64,
    pub optical_k: f64,
    pub margin_widths: f64,
    pub regime_band: (f64, f64),
}

impl Default for Numerics {
    fn default() -> Self {
        Self {
            quadrature_tol: 1e-8,
            uas_tol: 1e-10,
            ode_step_fraction: 1e-4,
            optical_k: 1.0,
            margin_widths: 5.0,
            regime_band: WEAK_DISPERSION_BAND,
        }
    }
}

/// Fully resolved scenario.
#[derive(Clone, Debug)]
pub struct ScenarioConfig {
    pub lattice_spec: LatticeSpec,
    pub params: LatticeParams,
    pub profile: InitialProfile,
    pub regime: LongwaveRegime,
    pub times: Vec<f64>,
    pub methods: Vec<Method>,
    pub window: (f64, f64),
    pub frame: Frame,
    /// Front speeds `(c, c*)`.
    pub speeds: (f64, f64),
    pub grid: GridKind,
    pub out_dir: PathBuf,
    pub resolution: usize,
    pub numerics: Numerics,
}

impl ScenarioConfig {
    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::config(format!("cannot read config {}: {e}", path.display())))?;
        let base = path.parent().unwrap_or(Path::new("."));
        Self::from_raw(&RawConfig::parse(&text)?, base)
    }

    /// Interprets a parsed file; relative paths are taken from `base`.
    pub fn from_raw(raw: &RawConfig, base: &Path) -> Result<Self, CliError> {
        let lattice_spec = lattice_spec(raw)?;
        let params = match lattice_spec {
            LatticeSpec::Physical { m1, m2, spring, spacing, length } => LatticeParams::new(m1, m2, spring, spacing, length),
            LatticeSpec::Direct { gamma1, gamma2, h } => LatticeParams::from_gammas(gamma1, gamma2, h),
        }
        .map_err(CliError::from_config)?;
        let h = params.h;

        let mu = match (raw.num::<f64>("profile", "mu")?, raw.num::<f64>("profile", "N")?) {
            (Some(mu), None) => mu,
            (None, Some(n)) if n > 0.0 => n * h,
            (None, Some(n)) => return Err(CliError::config(format!("[profile] N must be positive, got {n}"))),
            _ => return Err(CliError::config("[profile] give exactly one of `mu` and `N`")),
        };
        let kind = match raw.get("profile", "kind").map(|e| e.value.as_str()).unwrap_or("gaussian") {
            "gaussian" => ProfileKind::Gaussian,
            "table" => {
                let path = raw
                    .get("profile", "table")
                    .ok_or_else(|| CliError::config("[profile] kind = table needs `table = <path>`"))?;
                let radius = raw.num::<f64>("profile", "radius")?.unwrap_or(f64::NAN);
                let file = base.join(&path.value);
                let table = SampleTable::from_file(&file, radius).map_err(CliError::from_config)?;
                ProfileKind::Table(table)
            }
            other => return Err(CliError::config(format!("[profile] kind must be `gaussian` or `table`, got `{other}`"))),
        };
        let profile = InitialProfile::new(kind, mu, h / mu).map_err(CliError::from_config)?;

        let mut numerics = Numerics::default();
        for (key, slot) in [
            ("quadrature_tol", &mut numerics.quadrature_tol),
            ("uas_tol", &mut numerics.uas_tol),
            ("ode_step_fraction", &mut numerics.ode_step_fraction),
            ("optical_k", &mut numerics.optical_k),
            ("margin_widths", &mut numerics.margin_widths),
            ("regime_lo", &mut numerics.regime_band.0),
            ("regime_hi", &mut numerics.regime_band.1),
        ] {
            if let Some(v) = raw.num::<f64>("numerics", key)? {
                if !(v > 0.0 && v.is_finite()) {
                    return Err(CliError::config(format!("[numerics] {key} must be positive, got {v}")));
                }
                *slot = v;
            }
        }
        let regime = LongwaveRegime::classify_with_band(h, mu, numerics.regime_band);

        let times = match raw.get("run", "times") {
            Some(e) => e
                .value
                .split(',')
                .map(|s| {
                    let t: f64 = s.trim().parse().map_err(|_| {
                        CliError::config(format!("line {}: [run] times entry `{}` is not a number", e.line, s.trim()))
                    })?;
                    if !(t >= 0.0 && t.is_finite()) {
                        return Err(CliError::config(format!("[run] times must be finite and non-negative, got {t}")));
                    }
                    Ok(t)
                })
                .collect::<Result<Vec<_>, _>>()?,
            None => Vec::new(),
        };
        let mut methods = Vec::new();
        if let Some(e) = raw.get("run", "methods") {
            for name in e.value.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                let m: Method = name.parse().map_err(CliError::from_config)?;
                if methods.contains(&m) {
                    return Err(CliError::config(format!("[run] method `{name}` listed twice")));
                }
                methods.push(m);
            }
        }

        let disp = params.dispersion().map_err(CliError::from_config)?;
        let t_max = times.iter().cloned().fold(0.0, f64::max);
        let spread = mu.powf(2.0 / 3.0) * (disp.q.max(disp.q_star) * t_max).cbrt() + mu;
        let frame = match raw.get("run", "frame").map(|e| e.value.as_str()).unwrap_or("fixed") {
            "fixed" => Frame::Fixed,
            "acoustic" => Frame::Acoustic,
            "optical" => Frame::Optical,
            other => return Err(CliError::config(format!("[run] frame must be `fixed`, `acoustic` or `optical`, got `{other}`"))),
        };
        let (lo, hi) = match frame {
            Frame::Fixed => {
                let reach = disp.c.max(disp.c_star) * t_max + 10.0 * spread;
                (-reach, reach)
            }
            _ => (-40.0 * spread, 10.0 * spread),
        };
        let x_min = raw.num::<f64>("run", "x_min")?.unwrap_or(lo);
        let x_max = raw.num::<f64>("run", "x_max")?.unwrap_or(hi);
        if !(x_min < x_max) {
            return Err(CliError::config(format!("[run] need x_min < x_max, got {x_min} and {x_max}")));
        }
        let grid = match (raw.get("run", "grid").map(|e| e.value.as_str()), raw.num::<usize>("run", "points")?) {
            (_, Some(n)) if n < 2 => return Err(CliError::config(format!("[run] points must be at least 2, got {n}"))),
            (Some("lattice"), None) => GridKind::Lattice,
            (Some("lattice"), Some(_)) => return Err(CliError::config("[run] `points` is meaningless with grid = lattice")),
            (Some("uniform") | None, n) => GridKind::Uniform(n.unwrap_or(2001)),
            (Some(other), _) => return Err(CliError::config(format!("[run] grid must be `uniform` or `lattice`, got `{other}`"))),
        };
        if grid == GridKind::Lattice && (x_max - x_min) / h > 2e6 {
            return Err(CliError::config(format!(
                "[run] the window holds {:.0} lattice sites; narrow it or use a uniform grid",
                (x_max - x_min) / h
            )));
        }
        let out_dir = base.join(raw.get("run", "out").map(|e| e.value.as_str()).unwrap_or("out"));
        let resolution = raw.num::<usize>("dispersion", "resolution")?.unwrap_or(101);
        if resolution < 2 {
            return Err(CliError::config(format!("[dispersion] resolution must be at least 2, got {resolution}")));
        }

        Ok(Self { lattice_spec, params, profile, regime, times, methods, window: (x_min, x_max), frame, speeds: (disp.c, disp.c_star), grid, out_dir, resolution, numerics })
    }

    pub fn delta(&self) -> f64 {
        self.profile.delta
    }

    /// Rejects methods that do not apply at this `δ` and the empty cases.
    pub fn check_runnable(&self, min_methods: usize) -> Result<(), CliError> {
        if self.times.is_empty() {
            return Err(CliError::config("[run] times is empty"));
        }
        if self.methods.len() < min_methods {
            return Err(CliError::config(format!("[run] needs at least {min_methods} method(s), got {}", self.methods.len())));
        }
        let delta = self.delta();
        let is_one = (delta - 1.0).abs() <= 1e-12;
        let valid: Vec<&str> = Method::ALL
            .iter()
            .filter(|m| if is_one { !m.is_longwave() } else { !m.is_shortwave() })
            .filter(|m| delta < 0.5 || !m.is_longwave())
            .map(|m| m.name())
            .collect();
        for m in &self.methods {
            let ok = valid.contains(&m.name());
            if !ok {
                return Err(CliError::config(format!(
                    "method `{m}` does not apply at delta = h/mu = {delta} ({}); valid here: {}",
                    if m.is_longwave() { "long-wave methods need delta << 1" } else { "short-wave methods need delta = 1" },
                    valid.join(", ")
                )));
            }
            if m.is_shortwave() && self.times.iter().any(|&t| t <= 0.0) {
                return Err(CliError::config(format!("method `{m}` needs every time > 0")));
            }
        }
        Ok(())
    }

    /// Window at time `t`, after shifting by the chosen front.
    pub fn window_at(&self, t: f64) -> (f64, f64) {
        let shift = match self.frame {
            Frame::Fixed => 0.0,
            Frame::Acoustic => self.speeds.0 * t,
            Frame::Optical => self.speeds.1 * t,
        };
        (self.window.0 + shift, self.window.1 + shift)
    }

    /// Output grid points at time `t`.
    pub fn x_grid(&self, t: f64) -> Vec<f64> {
        let (lo, hi) = self.window_at(t);
        match self.grid {
            GridKind::Uniform(n) => diatomic::oracles::field::uniform_grid(lo, hi, n),
            GridKind::Lattice => {
                let h = self.params.h;
                diatomic::oracles::brillouin::lattice_grid(h, (lo / h).ceil() as i64, (hi / h).floor() as i64)
            }
        }
    }

    /// Resolved configuration as `key = value` lines for file headers.
    pub fn echo(&self) -> Vec<String> {
        let p = &self.params;
        let mut out = Vec::new();
        match self.lattice_spec {
            LatticeSpec::Physical { m1, m2, spring, spacing, length } => {
                out.push(format!("lattice = physical m1={m1:e} m2={m2:e} K={spring:e} d={spacing:e} L={length:e}"));
            }
            LatticeSpec::Direct { .. } => out.push("lattice = direct".to_string()),
        }
        out.push(format!("gamma1 = {:e}", p.gamma1));
        out.push(format!("gamma2 = {:e}", p.gamma2));
        out.push(format!("h = {:e}", p.h));
        out.push(format!("mu = {:e}", self.profile.mu));
        out.push(format!("delta = {:e}", self.delta()));
        let kind = match &self.profile.kind {
            ProfileKind::Gaussian => "gaussian".to_string(),
            ProfileKind::Table(t) => format!("table ({} knots, radius {:e})", t.knots().len(), t.radius()),
        };
        out.push(format!("profile = {kind}"));
        out.push(format!("regime = {} (h^2/mu^3 = {:e}, weak band [{:e}, {:e}])", self.regime.regime.name(), self.regime.ratio, self.numerics.regime_band.0, self.numerics.regime_band.1));
        out.push(format!("times = {}", join(&self.times)));
        out.push(format!("methods = {}", self.methods.iter().map(|m| m.name()).collect::<Vec<_>>().join(",")));
        out.push(format!("window = [{:e}, {:e}] frame={}", self.window.0, self.window.1, self.frame.name()));
        out.push(match self.grid {
            GridKind::Uniform(n) => format!("grid = uniform {n}"),
            GridKind::Lattice => "grid = lattice".to_string(),
        });
        let n = &self.numerics;
        out.push(format!(
            "tolerances = quadrature_tol={:e} uas_tol={:e} ode_step_fraction={:e} optical_k={:e} margin_widths={:e}",
            n.quadrature_tol, n.uas_tol, n.ode_step_fraction, n.optical_k, n.margin_widths
        ));
        out
    }
}

fn lattice_spec(raw: &RawConfig) -> Result<LatticeSpec, CliError> {
    let phys = ["m1", "m2", "K", "d", "L"];
    let direct = ["gamma1", "gamma2", "h"];
    let has = |keys: &[&str]| keys.iter().filter(|k| raw.get("lattice", k).is_some()).count();
    let need = |k: &str| -> Result<f64, CliError> {
        raw.num::<f64>("lattice", k)?.ok_or_else(|| CliError::config(format!("[lattice] missing `{k}`")))
    };
    match (has(&phys), has(&direct)) {
        (0, 0) => Err(CliError::config("[lattice] give either m1, m2, K, d, L or gamma1, gamma2, h")),
        (_, 0) => Ok(LatticeSpec::Physical { m1: need("m1")?, m2: need("m2")?, spring: need("K")?, spacing: need("d")?, length: need("L")? }),
        (0, _) => Ok(LatticeSpec::Direct { gamma1: need("gamma1")?, gamma2: need("gamma2")?, h: need("h")? }),
        _ => Err(CliError::config("[lattice] mixes physical (m1, m2, K, d, L) and direct (gamma1, gamma2, h) keys")),
    }
}

pub(crate) fn join(v: &[f64]) -> String {
    v.iter().map(|t| format!("{t}")).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    const NACL: &str = "[lattice]\nm1 = 5.88e-26\nm2 = 3.81e-26\nK = 15\nd = 2.82e-10\nL = 1e-3\n";

    #[test]
    fn parses_sections_and_comments() {
        let raw = RawConfig::parse("# top\n[run]\ntimes = 0.1, 0.5 # trailing\n\n").unwrap();
        assert_eq!(raw.get("run", "times").unwrap().value, "0.1, 0.5");
        assert!(RawConfig::parse("[nope]\n").is_err());
        assert!(RawConfig::parse("[run]\nbogus = 1\n").is_err());
        assert!(RawConfig::parse("[run]\ntimes\n").is_err());
        assert!(RawConfig::parse("[run]\nout = a\nout = b\n").is_err());
    }

    #[test]
    fn atom_count_sets_mu() {
        let text = format!("{NACL}[profile]\nN = 80\n[run]\ntimes = 0.1\nmethods = gaussian_airy\n");
        let c = ScenarioConfig::from_raw(&RawConfig::parse(&text).unwrap(), Path::new(".")).unwrap();
        assert!((c.profile.mu - 80.0 * 2.82e-7).abs() < 1e-15);
        assert!((c.delta() - 1.0 / 80.0).abs() < 1e-12);
        c.check_runnable(1).unwrap();
    }

    #[test]
    fn mu_and_n_are_exclusive() {
        let text = format!("{NACL}[profile]\nN = 80\nmu = 0.01\n");
        assert!(ScenarioConfig::from_raw(&RawConfig::parse(&text).unwrap(), Path::new(".")).is_err());
    }

    #[test]
    fn regime_mismatch_names_valid_methods() {
        let text = "[lattice]\ngamma1 = 0.82\ngamma2 = 1.27\nh = 0.01\n[profile]\nmu = 0.01\n[run]\ntimes = 0.5\nmethods = dalembert\n";
        let c = ScenarioConfig::from_raw(&RawConfig::parse(text).unwrap(), Path::new(".")).unwrap();
        let err = c.check_runnable(1).unwrap_err().to_string();
        assert!(err.contains("delta") && err.contains("acoustic_uniform"), "{err}");
    }
}
