use std::io::Write;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use pdm_core::heun::{
    cm_manning_wavefunction, cm_sech64_wavefunction, heun_c, heun_t, pdm_manning_wavefunction,
    AnalyticWavefunction, ConfluentHeunParams, TriconfluentHeunParams,
};
use pdm_core::spectral::{
    cm_threshold_scan, find_bound_states_cm_with, find_bound_states_pdm_with, find_zero_mode_depths_with,
    ShootConfig, ZeroModeFamily,
};
use pdm_core::transform::linspace;
use pdm_core::{classify_wells_with_tol, BoundState, Parity, PotentialParams, SpectrumResult};

use crate::cli::{
    ClassifyArgs, Cli, Command, HeunArgs, HeunKind, ReproduceArgs, SampleArgs, SpectrumArgs,
    WavefunctionArgs, ZeroModeArgs,
};
use crate::config::{shoot_config, Layers, Mass, ParityArg, RunConfig};
use crate::error::{io_error, CliError, CliResult};
use crate::families::{zero_mode_family, Family};
use crate::format::fmt12;
use crate::reference::reference_table;
use crate::report::{CountCheck, TableReport};

const DEFAULT_XMAX: f64 = 8.0;
const DEFAULT_POINTS: usize = 2001;

pub fn run(cli: &Cli, out: &mut dyn Write) -> CliResult<()> {
    match &cli.command {
        Command::Spectrum(a) => cmd_spectrum(a, out),
        Command::Zeromodes(a) => cmd_zeromodes(a, out),
        Command::Wavefunction(a) => cmd_wavefunction(a, out),
        Command::Classify(a) => cmd_classify(a, out),
        Command::Heun(a) => cmd_heun(a, out),
        Command::Reproduce(a) => cmd_reproduce(a, out),
    }
}

fn emit(out: &mut dyn Write, text: &str) -> CliResult<()> {
    out.write_all(text.as_bytes())
        .map_err(|e| io_error(Path::new("<stdout>"), e))
}

fn write_file(dir: &Path, name: &str, text: &str) -> CliResult<PathBuf> {
    std::fs::create_dir_all(dir).map_err(|e| io_error(dir, e))?;
    let path = dir.join(name);
    std::fs::write(&path, text).map_err(|e| io_error(&path, e))?;
    Ok(path)
}

struct Sampling {
    xs: Vec<f64>,
    dir: PathBuf,
}

fn sampling(args: &SampleArgs, layers: &Layers) -> CliResult<Sampling> {
    let xmax = layers.get_or("xmax", args.xmax, DEFAULT_XMAX)?;
    let points = layers.get_or("points", args.points, DEFAULT_POINTS)?;
    if !(xmax.is_finite() && xmax > 0.0) {
        return Err(CliError::Usage(format!("xmax must be positive, got {xmax}")));
    }
    if !(5..=1_000_000).contains(&points) {
        return Err(CliError::Usage(format!("points = {points} outside [5, 1000000]")));
    }
    Ok(Sampling {
        xs: linspace(-xmax, xmax, points),
        dir: layers.get_or("out", args.out.clone(), PathBuf::from("."))?,
    })
}

pub fn solve_spectrum(cfg: &RunConfig, window: (f64, f64)) -> CliResult<SpectrumResult> {
    Ok(match cfg.mass {
        Mass::Pdm => find_bound_states_pdm_with(&cfg.params, window, &cfg.shoot)?,
        Mass::Constant => find_bound_states_cm_with(&cfg.params, window, &cfg.cm)?,
    })
}

pub fn spectrum_csv(spec: &SpectrumResult) -> String {
    let mut s = String::from("index,parity,energy,nodes\n");
    for (k, st) in spec.states.iter().enumerate() {
        s.push_str(&format!("{k},{},{},{}\n", st.parity.label(), fmt12(st.energy), st.nodes));
    }
    s
}

pub fn wavefunction_csv(state: &BoundState, xs: &[f64]) -> String {
    let mut s = String::from("x,psi,psi_sq\n");
    for &x in xs {
        let v = state.sample_psi(x);
        s.push_str(&format!("{},{},{}\n", fmt12(x), fmt12(v), fmt12(v * v)));
    }
    s
}

fn spectrum_window(cfg: &RunConfig, layers: &Layers, emin: Option<f64>, emax: Option<f64>) -> CliResult<(f64, f64)> {
    Ok(cfg.window(layers.get("emin", emin)?, layers.get("emax", emax)?))
}

fn cmd_spectrum(a: &SpectrumArgs, out: &mut dyn Write) -> CliResult<()> {
    let layers = Layers::new(a.model.config.as_deref())?;
    let cfg = RunConfig::resolve(&a.model, &layers)?;
    let window = spectrum_window(&cfg, &layers, a.emin, a.emax)?;
    let sample = sampling(&a.sample, &layers)?;
    let spec = solve_spectrum(&cfg, window)?;
    write_file(&sample.dir, "spectrum.csv", &spectrum_csv(&spec))?;
    for (k, st) in spec.states.iter().enumerate() {
        write_file(&sample.dir, &format!("wavefunction_{k}.csv"), &wavefunction_csv(st, &sample.xs))?;
    }
    let mut text = format!(
        "{} states ({} symmetric, {} antisymmetric) in [{}, {}]\n",
        spec.len(),
        spec.count_symmetric,
        spec.count_antisymmetric,
        fmt12(spec.window.0),
        fmt12(spec.window.1)
    );
    for (k, st) in spec.states.iter().enumerate() {
        text.push_str(&format!("{k:>3} {} {:>20} {:>3}\n", st.parity.label(), fmt12(st.energy), st.nodes));
    }
    emit(out, &text)
}

fn default_search(family: ZeroModeFamily) -> (f64, f64) {
    match family {
        ZeroModeFamily::Sech6 => (0.0, 200.0),
        _ => (-1400.0, 200.0),
    }
}

fn cmd_zeromodes(a: &ZeroModeArgs, out: &mut dyn Write) -> CliResult<()> {
    let layers = Layers::new(a.config.as_deref())?;
    let family = layers
        .get("family", a.family)?
        .ok_or_else(|| CliError::Usage("zeromodes needs --family sech6|sech64".into()))?;
    let zf = zero_mode_family(family, layers.get("C", a.c)?)?;
    let (lo, hi) = default_search(zf);
    let search = (layers.get_or("from", a.from, lo)?, layers.get_or("to", a.to, hi)?);
    let parity = layers.get_or("parity", a.parity, ParityArg::Both)?.filter();
    let text = match layers.get_or("mass", a.mass, Mass::Pdm)? {
        Mass::Pdm => {
            let cfg = shoot_config(&layers, a.n, a.eps)?;
            zero_mode_csv(zf, search, parity, &cfg)?
        }
        Mass::Constant => {
            let mut s = String::from("index,parity,A,decay_ratio,zero_mode\n");
            for (k, r) in cm_threshold_scan(zf, search, parity)?.iter().enumerate() {
                s.push_str(&format!(
                    "{k},{},{},{},{}\n",
                    r.parity.label(),
                    fmt12(r.a),
                    fmt12(r.decay_ratio),
                    r.is_zero_mode()
                ));
            }
            s
        }
    };
    emit(out, &text)
}

pub fn zero_mode_csv(
    family: ZeroModeFamily,
    search: (f64, f64),
    parity: Option<Parity>,
    cfg: &ShootConfig,
) -> CliResult<String> {
    let mut s = String::from("index,parity,nodes,A\n");
    for (k, d) in find_zero_mode_depths_with(family, search, parity, cfg)?.iter().enumerate() {
        s.push_str(&format!("{k},{},{},{}\n", d.parity.label(), d.nodes, fmt12(d.a)));
    }
    Ok(s)
}

/// Closed form for this potential and mass model, if the family has one.
pub fn closed_form(p: &PotentialParams, mass: Mass, state: &BoundState) -> CliResult<AnalyticWavefunction> {
    let (e, parity) = (state.energy, state.parity);
    let wf = match mass {
        Mass::Pdm if p.a == 0.0 && p.b != 0.0 => pdm_manning_wavefunction(p.b, p.c, e, parity)?,
        Mass::Constant if p.a == 0.0 => cm_manning_wavefunction(p.b, p.c, e, parity)?,
        Mass::Constant if p.c == 0.0 && p.b == -p.a => cm_sech64_wavefunction(p.a, e, parity)?,
        _ => {
            return Err(CliError::NoClosedForm(format!(
                "no closed-form wavefunction for (A, B, C) = ({}, {}, {}) with {mass:?} mass",
                p.a, p.b, p.c
            )))
        }
    };
    Ok(wf)
}

/// Points with `|psi_numeric|` below this fraction of its maximum are left
/// out of the fit. Off an exact eigenvalue the closed form carries a small
/// admixture of the growing solution, which dominates deep in the tails.
pub const OVERLAY_FIT_FLOOR: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OverlayStats {
    /// Largest deviation where `|psi_numeric| >= OVERLAY_FIT_FLOOR * max`.
    pub core: f64,
    pub full: f64,
}

/// `x,psi_numeric,psi_analytic,abs_diff`. The closed form is scaled by its
/// least-squares factor onto the numerical state over the fitted points,
/// which fixes both sign and normalization.
pub fn overlay_csv(numeric: &[f64], analytic: &[f64], xs: &[f64]) -> (String, OverlayStats) {
    let max = numeric.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let core = |n: f64| n.abs() >= OVERLAY_FIT_FLOOR * max;
    let (mut dot, mut aa) = (0.0, 0.0);
    for (&n, &a) in numeric.iter().zip(analytic) {
        if core(n) {
            dot += n * a;
            aa += a * a;
        }
    }
    let scale = if aa > 0.0 { dot / aa } else { 0.0 };
    let mut stats = OverlayStats { core: 0.0, full: 0.0 };
    let mut s = String::from("x,psi_numeric,psi_analytic,abs_diff\n");
    for ((x, &n), a) in xs.iter().zip(numeric).zip(analytic) {
        let a = scale * a;
        let d = (n - a).abs();
        stats.full = stats.full.max(d);
        if core(n) {
            stats.core = stats.core.max(d);
        }
        s.push_str(&format!("{},{},{},{}\n", fmt12(*x), fmt12(n), fmt12(a), fmt12(d)));
    }
    (s, stats)
}

fn cmd_wavefunction(a: &WavefunctionArgs, out: &mut dyn Write) -> CliResult<()> {
    let layers = Layers::new(a.model.config.as_deref())?;
    let cfg = RunConfig::resolve(&a.model, &layers)?;
    let k = layers.get_or("state", a.state, 0)?;
    let sample = sampling(&a.sample, &layers)?;
    let spec = solve_spectrum(&cfg, cfg.window(None, None))?;
    let state = spec.states.get(k).ok_or_else(|| {
        CliError::Usage(format!("state {k} requested, the spectrum has {} states", spec.len()))
    })?;
    let analytic = closed_form(&cfg.params, cfg.mass, state)?.real_values(&sample.xs)?;
    let numeric: Vec<f64> = sample.xs.iter().map(|&x| state.sample_psi(x)).collect();
    let (csv, stats) = overlay_csv(&numeric, &analytic, &sample.xs);
    let path = write_file(&sample.dir, &format!("overlay_{k}.csv"), &csv)?;
    emit(
        out,
        &format!(
            "state {k} ({}, E = {})\nmax |psi_numeric - psi_analytic| where |psi| >= {:e} max: {}\nmax |psi_numeric - psi_analytic| over [{}, {}]: {}\nwrote {}\n",
            state.parity.label(),
            fmt12(state.energy),
            OVERLAY_FIT_FLOOR,
            fmt12(stats.core),
            fmt12(sample.xs[0]),
            fmt12(sample.xs[sample.xs.len() - 1]),
            fmt12(stats.full),
            path.display()
        ),
    )
}

fn cmd_classify(a: &ClassifyArgs, out: &mut dyn Write) -> CliResult<()> {
    let layers = Layers::new(a.model.config.as_deref())?;
    let cfg = RunConfig::resolve(&a.model, &layers)?;
    if !(a.tol.is_finite() && a.tol >= 0.0) {
        return Err(CliError::Usage(format!("tol must be non-negative, got {}", a.tol)));
    }
    let phase = classify_wells_with_tol(&cfg.params, a.tol);
    let mut s = format!("{}\n", phase.kind.describe());
    s.push_str("x,V,kind\n");
    for sp in &phase.stationary {
        s.push_str(&format!("{},{},{:?}\n", fmt12(sp.x), fmt12(sp.value), sp.kind).to_lowercase());
    }
    emit(out, &s)
}

fn cmd_heun(a: &HeunArgs, out: &mut dyn Write) -> CliResult<()> {
    let u = Complex64::new(a.u, a.im);
    let v = match a.kind {
        HeunKind::Confluent => {
            let p = ConfluentHeunParams::real(a.alpha, a.beta, a.gamma, a.delta, a.eta)?;
            heun_c(&p, u)?
        }
        HeunKind::Triconfluent => {
            if a.delta != 0.0 || a.eta != 0.0 {
                return Err(CliError::Usage("--delta and --eta apply to the confluent form only".into()));
            }
            heun_t(&TriconfluentHeunParams::real(a.alpha, a.beta, a.gamma)?, u)?
        }
    };
    emit(out, &format!("{} {}\n", fmt12(v.re), fmt12(v.im)))
}

/// Search interval per zero-mode column of table 3.
const ZERO_MODE_COLUMNS: [(&str, ZeroModeFamily, (f64, f64)); 4] = [
    ("c0", ZeroModeFamily::Sech64, (-1400.0, 0.0)),
    ("c2", ZeroModeFamily::Sech64PlusC(2.0), (-1400.0, 0.0)),
    ("c10", ZeroModeFamily::Sech64PlusC(10.0), (-1500.0, 200.0)),
    ("sech6", ZeroModeFamily::Sech6, (0.0, 200.0)),
];

/// Potential of a spectrum table.
pub fn table_potential(table: u8) -> CliResult<PotentialParams> {
    Ok(match table {
        1 => PotentialParams::manning(-500.0, 500.0)?,
        2 => PotentialParams::new(60.0, -500.0, 500.0)?,
        4 => PotentialParams::zero_barrier_triple(800.0, 449.0)?,
        other => return Err(CliError::Usage(format!("table {other} is not a spectrum table"))),
    })
}

/// Recomputes a reference table. Solver failures are recorded in the
/// report rather than returned.
pub fn reproduce(table: u8) -> CliResult<TableReport> {
    let reference = reference_table(table)?;
    let mut report = TableReport::new(table);
    if table == 3 {
        let cfg = ShootConfig::default();
        for (column, family, search) in ZERO_MODE_COLUMNS {
            let Some(rows) = reference.column(column) else { continue };
            match find_zero_mode_depths_with(family, search, None, &cfg) {
                Ok(found) => {
                    let computed: Vec<(f64, Parity)> = found.iter().map(|d| (d.a, d.parity)).collect();
                    report.compare_column(column, rows, &computed);
                }
                Err(e) => {
                    report.compare_column(column, rows, &[]);
                    report.errors.push(format!("{column}: {}", CliError::from(e).render()));
                }
            }
        }
        return Ok(report);
    }
    let p = table_potential(table)?;
    let window = pdm_core::spectral::default_window(&p);
    for (column, mass) in [("pdm", Mass::Pdm), ("cm", Mass::Constant)] {
        let cfg = RunConfig {
            family: Family::General,
            params: p,
            mass,
            shoot: ShootConfig::default(),
            cm: Default::default(),
        };
        let rows = reference.column(column).unwrap_or(&[]);
        let expected = reference.counts.get(column).copied();
        match solve_spectrum(&cfg, window) {
            Ok(spec) => {
                let computed: Vec<(f64, Parity)> = spec.states.iter().map(|s| (s.energy, s.parity)).collect();
                report.compare_column(column, rows, &computed);
                if let Some(expected) = expected {
                    report.counts.push(CountCheck {
                        column: column.into(),
                        expected,
                        computed: Some(spec.len()),
                    });
                }
            }
            Err(e) => {
                report.compare_column(column, rows, &[]);
                if let Some(expected) = expected {
                    report.counts.push(CountCheck {
                        column: column.into(),
                        expected,
                        computed: None,
                    });
                }
                report.errors.push(format!("{column}: {}", e.render()));
            }
        }
    }
    Ok(report)
}

fn cmd_reproduce(a: &ReproduceArgs, out: &mut dyn Write) -> CliResult<()> {
    let report = reproduce(a.table)?;
    emit(out, &report.to_text())?;
    let dir = a.out.clone().unwrap_or_else(|| PathBuf::from("."));
    write_file(&dir, &format!("reproduce_table{}.csv", a.table), &report.to_csv())?;
    if !report.is_complete() {
        return Err(CliError::Incomplete(format!(
            "table {}: {} solver failure(s)",
            a.table,
            report.errors.len()
        )));
    }
    if !report.pass() {
        return Err(CliError::Mismatch(format!(
            "table {}: {}",
            a.table,
            report.failures().join("; ")
        )));
    }
    Ok(())
}
