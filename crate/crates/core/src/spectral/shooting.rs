//! Shooting for `-phi'' + U(z) phi = E phi` on `|z| < pi/2`, with
//! `U = 1/2 + 3/4 tan^2 z + V(cos^2 z)`.
//!
//! The sweep runs in `t = pi/2 - |z|` from `t = eps` to the symmetry point.
//! Near `t = 0`, `U ~ 3/(4t^2)` and the regular solution is
//! `t^{3/2} sum_m c_m t^{2m}`; that series seeds every node with `t` below a
//! small threshold, after which Numerov takes over.

use std::f64::consts::FRAC_PI_2;

use super::numerov::{sweep, Endpoint};
use super::search::{bisect_level, bracket_levels, refine_level, richardson4, SCAN_CELLS};
use super::state::{clip_window, BoundState, Convergence, Method, SpectrumResult};
use crate::error::{Error, Result};
use crate::model::{effective_potential_in_t, Parity, PotentialParams};
use crate::transform::{integrate, pullback_wavefunction, Grid, Space};

pub const DEFAULT_GRID_POINTS: usize = 4001;
pub const DEFAULT_EPS: f64 = 1e-6;
const MAX_EPS: f64 = 1e-3;
const SERIES_TERMS: usize = 40;

/// Full-line z grid: `n` points (odd; an even `n` drops one) on
/// `[-pi/2 + eps, pi/2 - eps]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShootConfig {
    pub n: usize,
    pub eps: f64,
}

impl Default for ShootConfig {
    fn default() -> Self {
        ShootConfig {
            n: DEFAULT_GRID_POINTS,
            eps: DEFAULT_EPS,
        }
    }
}

impl ShootConfig {
    pub fn new(n: usize, eps: f64) -> Result<Self> {
        let cfg = ShootConfig { n, eps };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eps > 0.0 && self.eps <= MAX_EPS) {
            return Err(Error::InvalidParameter(format!(
                "endpoint offset must lie in (0, {MAX_EPS:e}], got {}",
                self.eps
            )));
        }
        if self.n < 9 {
            return Err(Error::InvalidParameter(format!(
                "z grid needs at least 9 points, got {}",
                self.n
            )));
        }
        Ok(())
    }

    fn half(&self) -> usize {
        (self.n - 1) / 2
    }
}

#[derive(Debug, Clone)]
pub struct ShootResult {
    /// `phi(0)` (antisymmetric) or `phi'(0)` (symmetric), relative to `max|phi|`.
    pub match_value: f64,
    /// Sign changes of `phi` on `0 < z < pi/2`.
    pub nodes_half_line: usize,
    /// The half-line solution on `z in [0, pi/2 - eps]`, scaled to `max|phi| = 1`.
    pub grid: Grid<f64>,
}

/// Taylor coefficients in `u = t^2` of `sin t / t`, then the products needed
/// for the regular-branch recurrence.
struct SeriesBasis {
    /// `q(t) + E` where `U - E = 3/(4t^2) + q(t)`.
    q_plus_e: [f64; SERIES_TERMS],
}

type Series = [f64; SERIES_TERMS];

fn mul(a: &Series, b: &Series) -> Series {
    let mut c = [0.0; SERIES_TERMS];
    for i in 0..SERIES_TERMS {
        c[i] = (0..=i).map(|j| a[j] * b[i - j]).sum();
    }
    c
}

fn inv(a: &Series) -> Series {
    let mut b = [0.0; SERIES_TERMS];
    b[0] = 1.0 / a[0];
    for i in 1..SERIES_TERMS {
        b[i] = -(1..=i).map(|j| a[j] * b[i - j]).sum::<f64>() / a[0];
    }
    b
}

impl SeriesBasis {
    fn new(p: &PotentialParams) -> Self {
        let mut sinc = [0.0; SERIES_TERMS];
        let mut fact = 1.0; // (2k+1)!
        for (k, s) in sinc.iter_mut().enumerate() {
            if k > 0 {
                fact *= (2 * k) as f64 * (2 * k + 1) as f64;
            }
            *s = if k % 2 == 0 { 1.0 } else { -1.0 } / fact;
        }
        let sinc2 = mul(&sinc, &sinc);
        let mut sin2 = [0.0; SERIES_TERMS];
        sin2[1..].copy_from_slice(&sinc2[..SERIES_TERMS - 1]);
        let sin4 = mul(&sin2, &sin2);
        let sin6 = mul(&sin4, &sin2);
        // csc^2 t - 1/t^2 = (t^2/sin^2 t - 1) / u
        let r = inv(&sinc2);
        let mut q = [0.0; SERIES_TERMS];
        for m in 0..SERIES_TERMS - 1 {
            q[m] = 0.75 * r[m + 1];
        }
        q[0] -= 0.25;
        for m in 0..SERIES_TERMS {
            q[m] -= p.a * sin6[m] + p.b * sin4[m] + p.c * sin2[m];
        }
        SeriesBasis { q_plus_e: q }
    }

    fn coefficients(&self, energy: f64) -> Series {
        let mut q = self.q_plus_e;
        q[0] -= energy;
        let mut c = [0.0; SERIES_TERMS];
        c[0] = 1.0;
        for m in 1..SERIES_TERMS {
            let k = (2 * m) as f64;
            c[m] = (0..m).map(|j| q[j] * c[m - 1 - j]).sum::<f64>() / (k * (k + 2.0));
        }
        c
    }
}

/// Precomputed grid and potential for one `(p, grid)` pair.
pub(crate) struct ZShooter {
    p: PotentialParams,
    h: f64,
    t: Vec<f64>,
    u: Vec<f64>,
    basis: SeriesBasis,
}

impl ZShooter {
    pub(crate) fn new(p: &PotentialParams, half: usize, eps: f64) -> Self {
        let h = (FRAC_PI_2 - eps) / half as f64;
        let t: Vec<f64> = (0..=half)
            .map(|k| if k == half { FRAC_PI_2 } else { eps + k as f64 * h })
            .collect();
        let u = t.iter().map(|&t| effective_potential_in_t(p, t)).collect();
        ZShooter {
            p: *p,
            h,
            t,
            u,
            basis: SeriesBasis::new(p),
        }
    }

    pub(crate) fn half(&self) -> usize {
        self.t.len() - 1
    }

    /// Regular solution on the half-line nodes, `y[0]` at `t = eps`.
    pub(crate) fn solve(&self, energy: f64) -> Result<(Vec<f64>, Vec<f64>)> {
        if !energy.is_finite() {
            return Err(Error::InvalidParameter(format!("energy must be finite, got {energy}")));
        }
        let f: Vec<f64> = self.u.iter().map(|u| u - energy).collect();
        let qmax = 1.0 + energy.abs() + self.p.magnitude();
        let t_seed = (0.3 / qmax.sqrt()).min(0.1);
        let seeded = self.t.partition_point(|&t| t <= t_seed).clamp(2, self.t.len() - 1);
        let c = self.basis.coefficients(energy);
        let seed: Vec<f64> = self.t[..seeded]
            .iter()
            .map(|&t| {
                let u = t * t;
                t.powf(1.5) * c.iter().rev().fold(0.0, |acc, &ci| acc * u + ci)
            })
            .collect();
        let y = sweep(&f, self.h, &seed)?;
        Ok((y, f))
    }

    pub(crate) fn endpoint(&self, energy: f64) -> Result<Endpoint> {
        let (y, f) = self.solve(energy)?;
        Ok(Endpoint::of(&y, &f, self.h))
    }

    pub(crate) fn count(&self, energy: f64, parity: Parity) -> Result<usize> {
        Ok(self.endpoint(energy)?.count(parity))
    }

    /// z coordinates of the half-line nodes, increasing (`z = 0` first).
    fn z_points(&self) -> Vec<f64> {
        self.t.iter().rev().map(|&t| FRAC_PI_2 - t).collect()
    }

    /// Full-line normalized state at `energy`, extended by parity.
    fn state(&self, energy: f64, parity: Parity) -> Result<(Grid<f64>, usize)> {
        let (y, f) = self.solve(energy)?;
        let end = Endpoint::of(&y, &f, self.h);
        let m = self.half();
        let sign = match parity {
            Parity::Symmetric => 1.0,
            Parity::Antisymmetric => -1.0,
        };
        let z_half = self.z_points();
        let mut points = Vec::with_capacity(2 * m + 1);
        let mut values = Vec::with_capacity(2 * m + 1);
        // y runs from z = pi/2 - eps down to z = 0.
        for k in 0..m {
            points.push(-(FRAC_PI_2 - self.t[k]));
            values.push(sign * y[k] / end.scale);
        }
        for (j, &z) in z_half.iter().enumerate() {
            let k = m - j;
            let v = if k == m && parity == Parity::Antisymmetric {
                0.0
            } else {
                y[k] / end.scale
            };
            points.push(z);
            values.push(v);
        }
        let sq: Vec<f64> = values.iter().map(|v| v * v).collect();
        let norm = integrate(&points, &sq).sqrt();
        values.iter_mut().for_each(|v| *v /= norm);
        let nodes = 2 * end.interior_changes + usize::from(parity == Parity::Antisymmetric);
        Ok((Grid::new(Space::Z, points, values)?, nodes))
    }
}

pub fn shoot_z(
    p: &PotentialParams,
    energy: f64,
    parity: Parity,
    cfg: &ShootConfig,
) -> Result<ShootResult> {
    cfg.validate()?;
    let shooter = ZShooter::new(p, cfg.half(), cfg.eps);
    let (y, f) = shooter.solve(energy)?;
    let end = Endpoint::of(&y, &f, shooter.h);
    let values = y.iter().rev().map(|v| v / end.scale).collect();
    Ok(ShootResult {
        match_value: end.match_value(parity, shooter.h),
        nodes_half_line: end.interior_changes,
        grid: Grid::new(Space::Z, shooter.z_points(), values)?,
    })
}

fn bound_state(
    shooter: &ZShooter,
    energy: f64,
    parity: Parity,
    convergence: Convergence,
) -> Result<BoundState> {
    let (phi, nodes) = shooter.state(energy, parity)?;
    let psi = pullback_wavefunction(&phi)?;
    Ok(BoundState {
        energy,
        parity,
        nodes,
        phi: Some(phi),
        psi,
        method: Method::PdmShooting,
        convergence,
    })
}

/// Normalized PDM state of the given parity at an arbitrary energy, e.g. a
/// zero mode at `E = 0`. No eigenvalue search is done.
pub fn pdm_state_at(
    p: &PotentialParams,
    energy: f64,
    parity: Parity,
    cfg: &ShootConfig,
) -> Result<BoundState> {
    cfg.validate()?;
    let shooter = ZShooter::new(p, cfg.half(), cfg.eps);
    let convergence = Convergence {
        grid_sizes: vec![shooter.half()],
        energies: vec![energy],
        richardson_correction: 0.0,
        cross_method_delta: None,
    };
    bound_state(&shooter, energy, parity, convergence)
}

pub fn find_bound_states_pdm(p: &PotentialParams, window: (f64, f64)) -> Result<SpectrumResult> {
    find_bound_states_pdm_with(p, window, &ShootConfig::default())
}

/// Bound states in `window`, one parity at a time. Each level is bisected on
/// the state count for the configured grid and re-located on two successive
/// halvings; the reported energy is the Richardson value from the two finest.
pub fn find_bound_states_pdm_with(
    p: &PotentialParams,
    window: (f64, f64),
    cfg: &ShootConfig,
) -> Result<SpectrumResult> {
    cfg.validate()?;
    let (lo, hi) = clip_window(p, window)?;
    let m = cfg.half();
    let grids = [
        ZShooter::new(p, m, cfg.eps),
        ZShooter::new(p, 2 * m, cfg.eps),
        ZShooter::new(p, 4 * m, cfg.eps),
    ];
    let mut states = Vec::new();
    for parity in Parity::both() {
        let levels = bracket_levels(lo, hi, SCAN_CELLS, |e| grids[0].count(e, parity))?;
        for level in levels {
            let mut energies = Vec::with_capacity(grids.len());
            let mut e = bisect_level(level.index, level.lo, level.hi, |e| {
                grids[0].count(e, parity)
            })?;
            energies.push(e);
            for g in &grids[1..] {
                e = refine_level(level.index, e, (lo, hi), |e| g.count(e, parity))?;
                energies.push(e);
            }
            let extrapolated = richardson4(energies[1], energies[2]);
            let convergence = Convergence {
                grid_sizes: grids.iter().map(ZShooter::half).collect(),
                energies: energies.clone(),
                richardson_correction: extrapolated - energies[2],
                cross_method_delta: None,
            };
            let state = bound_state(&grids[0], energies[0], parity, convergence)?;
            let expected = 2 * level.index + usize::from(parity == Parity::Antisymmetric);
            if state.nodes != expected {
                return Err(Error::Completeness(format!(
                    "{} level {} at E = {} has {} nodes, expected {expected}",
                    parity.label(),
                    level.index,
                    energies[0],
                    state.nodes
                )));
            }
            states.push(BoundState {
                energy: extrapolated,
                ..state
            });
        }
    }
    SpectrumResult::assemble(states, (lo, hi))
}
