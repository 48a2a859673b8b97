//! Constant-mass spectra: Numerov shooting of `-psi'' + V psi = E psi` from
//! a decaying start at `x = L` in to the symmetry point.

use super::numerov::{sweep, Endpoint};
use super::search::{bisect_level, bracket_levels, refine_level, richardson4, SCAN_CELLS};
use super::state::{clip_window, BoundState, Convergence, Method, SpectrumResult};
use crate::error::{Error, Result};
use crate::model::{potential_at, Parity, PotentialParams};
use crate::transform::{integrate, Grid, Space};

pub const MAX_CM_BOX: f64 = 200.0;
const MIN_CM_BOX: f64 = 12.0;
/// Decay lengths `1/kappa` between the box edge and the origin.
const DECAY_LENGTHS: f64 = 14.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CmConfig {
    /// Coarsest x step; refinements use `h/2` and `h/4`.
    pub h: f64,
}

impl Default for CmConfig {
    fn default() -> Self {
        CmConfig { h: 0.01 }
    }
}

impl CmConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.h > 0.0 && self.h <= 0.1) {
            return Err(Error::InvalidParameter(format!(
                "constant-mass step must lie in (0, 0.1], got {}",
                self.h
            )));
        }
        Ok(())
    }
}

/// Half-width of the shooting box for a state near `energy`:
/// `max(12, 14/sqrt(-E))`, capped at 200.
pub fn cm_box_length(energy: f64) -> f64 {
    if energy >= 0.0 {
        return MAX_CM_BOX;
    }
    (DECAY_LENGTHS / (-energy).sqrt()).clamp(MIN_CM_BOX, MAX_CM_BOX)
}

struct CmShooter {
    p: PotentialParams,
    h: f64,
}

struct CmSweep {
    y: Vec<f64>,
    f: Vec<f64>,
    h: f64,
    l: f64,
}

impl CmShooter {
    /// Sweep from `x = l` to `x = 0` with the step rounded so the grid hits
    /// the origin.
    fn solve(&self, energy: f64, l: f64) -> Result<CmSweep> {
        if !energy.is_finite() {
            return Err(Error::InvalidParameter(format!("energy must be finite, got {energy}")));
        }
        let m = (l / self.h).ceil() as usize;
        let h = l / m as f64;
        let f: Vec<f64> = (0..=m)
            .map(|k| potential_at(&self.p, l - k as f64 * h) - energy)
            .collect();
        let seed = if energy < 0.0 {
            [1.0, ((-energy).sqrt() * h).exp()]
        } else {
            [0.0, h]
        };
        let y = sweep(&f, h, &seed)?;
        Ok(CmSweep { y, f, h, l })
    }

    fn count(&self, energy: f64, l: f64, parity: Parity) -> Result<usize> {
        let s = self.solve(energy, l)?;
        Ok(Endpoint::of(&s.y, &s.f, s.h).count(parity))
    }

    fn half_steps(&self, l: f64) -> usize {
        (l / self.h).ceil() as usize
    }
}

fn bound_state(sweep: CmSweep, energy: f64, parity: Parity, convergence: Convergence) -> Result<BoundState> {
    let CmSweep { y, f, h, l } = sweep;
    let end = Endpoint::of(&y, &f, h);
    let m = y.len() - 1;
    let sign = match parity {
        Parity::Symmetric => 1.0,
        Parity::Antisymmetric => -1.0,
    };
    let mut points = Vec::with_capacity(2 * m + 1);
    let mut values = Vec::with_capacity(2 * m + 1);
    for (k, v) in y.iter().enumerate().take(m) {
        points.push(-(l - k as f64 * h));
        values.push(sign * v / end.scale);
    }
    for k in (0..=m).rev() {
        points.push(if k == m { 0.0 } else { l - k as f64 * h });
        let v = if k == m && parity == Parity::Antisymmetric {
            0.0
        } else {
            y[k] / end.scale
        };
        values.push(v);
    }
    let sq: Vec<f64> = values.iter().map(|v| v * v).collect();
    let norm = integrate(&points, &sq).sqrt();
    values.iter_mut().for_each(|v| *v /= norm);
    Ok(BoundState {
        energy,
        parity,
        nodes: 2 * end.interior_changes + usize::from(parity == Parity::Antisymmetric),
        phi: None,
        psi: Grid::new(Space::X, points, values)?,
        method: Method::ConstantMassShooting,
        convergence,
    })
}

pub fn find_bound_states_cm(p: &PotentialParams, window: (f64, f64)) -> Result<SpectrumResult> {
    find_bound_states_cm_with(p, window, &CmConfig::default())
}

/// Same search contract as the PDM solver. The box is sized from the upper
/// end of each level's bracket and kept fixed through its refinements.
pub fn find_bound_states_cm_with(
    p: &PotentialParams,
    window: (f64, f64),
    cfg: &CmConfig,
) -> Result<SpectrumResult> {
    cfg.validate()?;
    let (lo, hi) = clip_window(p, window)?;
    let grids = [
        CmShooter { p: *p, h: cfg.h },
        CmShooter { p: *p, h: cfg.h / 2.0 },
        CmShooter { p: *p, h: cfg.h / 4.0 },
    ];
    let mut states = Vec::new();
    for parity in Parity::both() {
        let levels = bracket_levels(lo, hi, SCAN_CELLS, |e| {
            grids[0].count(e, cm_box_length(e), parity)
        })?;
        for level in levels {
            let l = cm_box_length(level.hi);
            let mut energies = Vec::with_capacity(grids.len());
            let mut e = bisect_level(level.index, level.lo, level.hi, |e| {
                grids[0].count(e, l, parity)
            })?;
            energies.push(e);
            for g in &grids[1..] {
                e = refine_level(level.index, e, (lo, hi), |e| g.count(e, l, parity))?;
                energies.push(e);
            }
            let extrapolated = richardson4(energies[1], energies[2]);
            let convergence = Convergence {
                grid_sizes: grids.iter().map(|g| g.half_steps(l)).collect(),
                energies: energies.clone(),
                richardson_correction: extrapolated - energies[2],
                cross_method_delta: None,
            };
            let state = bound_state(grids[0].solve(energies[0], l)?, energies[0], parity, convergence)?;
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
