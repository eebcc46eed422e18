//! The three subcommands.

use std::f64::consts::FRAC_PI_2;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use diatomic::longwave::{longwave_field, require_longwave, uas_dalembert, uas_gaussian_airy, uas_integral, UasOptions};
use diatomic::oracles::brillouin::{solve_quadrature, Mode, QuadratureOptions};
use diatomic::oracles::field::{compare_fields, compare_on_sites, front_windows, FieldComparison};
use diatomic::oracles::lattice::{integrate_lattice, required_half_width, VerletOptions};
use diatomic::initial_data::sample_lattice;
use diatomic::shortwave::{Shortwave, ShortwaveOptions};
use diatomic::{Method, WaveField};

use crate::config::{join, GridKind, ScenarioConfig};
use crate::CliError;

/// Largest `sites × steps` product the chain integrator will attempt.
const ODE_WORK_LIMIT: f64 = 5e10;
/// Largest `nodes × points` product the zone quadrature will attempt.
const QUADRATURE_WORK_LIMIT: f64 = 2e10;

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    }
    File::create(path).map(BufWriter::new).map_err(|e| io_err(path, e))
}

fn io_err(path: &Path, source: std::io::Error) -> CliError {
    CliError::Io { path: path.display().to_string(), source }
}

fn write_lines(path: &Path, comments: &[String], lines: &[String]) -> Result<(), CliError> {
    let mut f = create(path)?;
    let mut go = || -> std::io::Result<()> {
        for c in comments {
            writeln!(f, "# {c}")?;
        }
        for l in lines {
            writeln!(f, "{l}")?;
        }
        f.flush()
    };
    go().map_err(|e| io_err(path, e))
}

/// Lattice constants, dispersion parameters and branch tables.
pub fn cmd_dispersion(cfg: &ScenarioConfig) -> Result<Vec<PathBuf>, CliError> {
    let d = cfg.params.dispersion().map_err(CliError::from_config)?;
    let echo = cfg.echo();
    let report = cfg.out_dir.join("dispersion.txt");
    let lines = vec![
        format!("gamma1={:e}", d.gamma1),
        format!("gamma2={:e}", d.gamma2),
        format!("c={:e}", d.c),
        format!("q={:e}", d.q),
        format!("p_star={:e}", d.p_star),
        format!("c_star={:e}", d.c_star),
        format!("q_star={:e}", d.q_star),
        format!("h={:e}", cfg.params.h),
        format!("mu={:e}", cfg.profile.mu),
        format!("delta={:e}", cfg.delta()),
        format!("regime={}", cfg.regime.regime.name()),
        format!("h2_over_mu3={:e}", cfg.regime.ratio),
    ];
    write_lines(&report, &echo, &lines)?;
    let table = cfg.out_dir.join("branches.csv");
    let n = cfg.resolution;
    let mut rows = vec!["p,omega1,omega2".to_string()];
    for j in 0..n {
        let p = FRAC_PI_2 * j as f64 / (n - 1) as f64;
        rows.push(format!("{:e},{:e},{:e}", p, d.omega1(p), d.omega2(p)));
    }
    write_lines(&table, &echo, &rows)?;
    Ok(vec![report, table])
}

/// Evaluates one method at one time on the configured grid.
pub fn run_method(cfg: &ScenarioConfig, method: Method, t: f64, xs: &[f64]) -> Result<WaveField, CliError> {
    let params = &cfg.params;
    let profile = &cfg.profile;
    let num = &cfg.numerics;
    let quad = |mode: Mode| -> Result<WaveField, CliError> {
        let h = params.h;
        let n_max = xs.iter().fold(0.0f64, |m, x| m.max((x / h).abs()));
        let speed = n_max + params.dispersion()?.c * t / h;
        // ten nodes per oscillation, one doubling, both estimates kept
        let work = 15.0 * speed * xs.len() as f64;
        if work > QUADRATURE_WORK_LIMIT {
            return Err(CliError::config(format!(
                "method `{method}` would need about {work:.1e} node evaluations at t/h = {:.1e}; \
                 the zone integral oscillates too fast at this scale, use mu = h of order 1e-2",
                t / h
            )));
        }
        let spec = profile.spectral()?;
        let opts = QuadratureOptions { tol: num.quadrature_tol, ..Default::default() };
        Ok(solve_quadrature(params, &spec, xs, t, mode, &opts)?)
    };
    match method {
        Method::Ode => run_ode(cfg, t, xs),
        Method::QuadratureFull => quad(Mode::Full),
        Method::QuadratureAc => quad(Mode::Acoustic),
        Method::QuadratureOpt => quad(Mode::Optical),
        Method::UasIntegral | Method::GaussianAiry | Method::Dalembert => {
            require_longwave(profile).map_err(CliError::from_config)?;
            let disp = params.dispersion()?;
            let values = match method {
                Method::UasIntegral => uas_integral(&disp, profile, xs, t, &UasOptions { tol: num.uas_tol, ..Default::default() })?,
                Method::GaussianAiry => xs.iter().map(|&x| uas_gaussian_airy(&disp, profile, x, t)).collect::<Result<_, _>>()?,
                _ => xs.iter().map(|&x| uas_dalembert(&disp, profile, x, t)).collect(),
            };
            Ok(longwave_field(xs, values, t, method)?)
        }
        _ => {
            let spec = profile.spectral()?;
            let opts = ShortwaveOptions { margin_widths: num.margin_widths, optical_k: num.optical_k, ..Default::default() };
            Ok(Shortwave::new(params, &spec, t, opts)?.field(method, xs)?)
        }
    }
}

/// The chain only has values at lattice sites; both columns carry the
/// displacement of the atom sitting at `x`.
fn run_ode(cfg: &ScenarioConfig, t: f64, xs: &[f64]) -> Result<WaveField, CliError> {
    let params = &cfg.params;
    let h = params.h;
    if cfg.grid != GridKind::Lattice {
        return Err(CliError::config("method `ode` needs `grid = lattice` in [run]"));
    }
    let radius = sample_lattice(&cfg.profile)?.max_site();
    let reach = xs.iter().fold(0i64, |m, x| m.max((x / h).round().abs() as i64)) as usize + 2;
    let hw = required_half_width(params, radius, t).max(reach);
    let omega_max = (2.0 * (params.gamma1 + params.gamma2)).sqrt();
    let steps = (t / h) * omega_max / cfg.numerics.ode_step_fraction;
    if (2 * hw + 1) as f64 * steps > ODE_WORK_LIMIT {
        return Err(CliError::config(format!(
            "method `ode` would need {:.1e} site-steps at h={h:e}, t={t}; use the quadrature oracle at this scale",
            (2 * hw + 1) as f64 * steps
        )));
    }
    let opts = VerletOptions { step_fraction: cfg.numerics.ode_step_fraction, ..Default::default() };
    let state = integrate_lattice(params, &cfg.profile, t, Some(hw), &opts)?;
    let y: Vec<f64> = xs.iter().map(|x| state.site((x / h).round() as i64).unwrap_or(0.0)).collect();
    Ok(WaveField::new(xs.to_vec(), y.clone(), y, t, Method::Ode)?)
}

fn csv_name(method: Method, t: f64) -> String {
    format!("{method}_t{t}.csv")
}

/// One CSV per (method, time).
pub fn cmd_simulate(cfg: &ScenarioConfig) -> Result<Vec<PathBuf>, CliError> {
    cfg.check_runnable(1)?;
    let echo = cfg.echo();
    let mut written = Vec::new();
    for &m in &cfg.methods {
        for &t in &cfg.times {
            let xs = cfg.x_grid(t);
            let field = run_method(cfg, m, t, &xs)?;
            if !field.is_finite() {
                return Err(CliError::Numerical(diatomic::Error::MismatchedFields(format!("{m} produced non-finite values at t={t}"))));
            }
            let path = cfg.out_dir.join(csv_name(m, t));
            let mut f = create(&path)?;
            field.write_csv(&mut f, &echo).and_then(|_| f.flush()).map_err(|e| io_err(&path, e))?;
            written.push(path);
        }
    }
    Ok(written)
}

/// One comparison of the report.
#[derive(Clone, Debug)]
pub struct PairReport {
    pub a: Method,
    pub b: Method,
    pub t: f64,
    pub result: FieldComparison,
}

/// Error norms for every pair of configured methods at every time.
pub fn compare(cfg: &ScenarioConfig) -> Result<Vec<PairReport>, CliError> {
    cfg.check_runnable(2)?;
    let disp = cfg.params.dispersion()?;
    let mut out = Vec::new();
    for &t in &cfg.times {
        let xs = cfg.x_grid(t);
        let fields = cfg.methods.iter().map(|&m| run_method(cfg, m, t, &xs)).collect::<Result<Vec<_>, _>>()?;
        let windows = front_windows(&disp, cfg.profile.mu, t);
        for i in 0..fields.len() {
            for j in i + 1..fields.len() {
                let result = match cfg.grid {
                    GridKind::Lattice => compare_on_sites(&fields[i], &fields[j], cfg.params.h, &windows)?,
                    GridKind::Uniform(_) => compare_fields(&fields[i], &fields[j], &windows)?,
                };
                out.push(PairReport { a: cfg.methods[i], b: cfg.methods[j], t, result });
            }
        }
    }
    Ok(out)
}

/// Writes `compare.txt` with `cmp.<k>.<field> = value` lines.
pub fn cmd_compare(cfg: &ScenarioConfig) -> Result<PathBuf, CliError> {
    let reports = compare(cfg)?;
    let mut lines = vec![format!("pairs={}", reports.len()), format!("times={}", join(&cfg.times))];
    lines.push(format!(
        "species={}",
        if cfg.grid == GridKind::Lattice { "resident (u on even sites, v on odd sites)" } else { "both" }
    ));
    for (k, r) in reports.iter().enumerate() {
        lines.push(format!("cmp.{k}.a={}", r.a));
        lines.push(format!("cmp.{k}.b={}", r.b));
        lines.push(format!("cmp.{k}.t={}", r.t));
        lines.push(format!("cmp.{k}.linf={:e}", r.result.linf));
        lines.push(format!("cmp.{k}.l2={:e}", r.result.l2));
        lines.push(format!("cmp.{k}.peak={:e}", r.result.peak));
        for (label, e, n) in &r.result.windows {
            lines.push(format!("cmp.{k}.window.{label}.linf={e:e}"));
            lines.push(format!("cmp.{k}.window.{label}.points={n}"));
        }
    }
    let path = cfg.out_dir.join("compare.txt");
    write_lines(&path, &cfg.echo(), &lines)?;
    Ok(path)
}

/// Reads a `key = value` report back, skipping comments.
pub fn read_report(text: &str) -> Vec<(String, String)> {
    text.lines()
        .filter(|l| !l.trim_start().starts_with('#'))
        .filter_map(|l| l.split_once('='))
        .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
        .collect()
}
