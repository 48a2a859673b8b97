use crate::error::{Error, Result};
use crate::model::{classify_wells, sech, Parity, PotentialParams};
use crate::transform::{interpolate_uniform, z_of_x, Grid};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Numerov shooting of the z-space equation (position-dependent mass).
    PdmShooting,
    /// Numerov shooting of `-psi'' + V psi = E psi` in x.
    ConstantMassShooting,
}

impl Method {
    pub fn is_pdm(self) -> bool {
        matches!(self, Method::PdmShooting)
    }
}

/// How an energy was refined.
#[derive(Debug, Clone, PartialEq)]
pub struct Convergence {
    /// Half-line grid sizes of the successive refinements.
    pub grid_sizes: Vec<usize>,
    /// Grid eigenvalue per refinement, same order as `grid_sizes`.
    pub energies: Vec<f64>,
    /// Richardson estimate minus the finest grid eigenvalue.
    pub richardson_correction: f64,
    /// Relative difference to an independent method, once compared.
    pub cross_method_delta: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct BoundState {
    pub energy: f64,
    pub parity: Parity,
    /// Nodes of `psi` on the open real line.
    pub nodes: usize,
    /// Normalized z-space solution, when the solver works in z.
    pub phi: Option<Grid<f64>>,
    /// Normalized wavefunction, `int psi^2 dx = 1`.
    pub psi: Grid<f64>,
    pub method: Method,
    pub convergence: Convergence,
}

impl BoundState {
    /// `psi(x)` between grid points: interpolated in z for the z-space solver
    /// (where the samples are uniform), in x otherwise. Zero outside the grid.
    pub fn sample_psi(&self, x: f64) -> f64 {
        let g = self.phi.as_ref().unwrap_or(&self.psi);
        let pts = g.points();
        let h = g
            .uniform_step()
            .unwrap_or((pts[pts.len() - 1] - pts[0]) / (pts.len() - 1) as f64);
        match &self.phi {
            Some(_) => {
                let v = interpolate_uniform(pts[0], h, g.values(), z_of_x(x), 0.0);
                v * sech(x).sqrt()
            }
            None => interpolate_uniform(pts[0], h, g.values(), x, 0.0),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SpectrumResult {
    /// Ordered by energy.
    pub states: Vec<BoundState>,
    pub count_symmetric: usize,
    pub count_antisymmetric: usize,
    pub window: (f64, f64),
}

impl SpectrumResult {
    pub fn energies(&self) -> Vec<f64> {
        self.states.iter().map(|s| s.energy).collect()
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Merges per-parity levels into one list and checks the oscillation
    /// ladder: strictly increasing energies, consecutive node counts and
    /// parity `(-1)^nodes`.
    pub(crate) fn assemble(mut states: Vec<BoundState>, window: (f64, f64)) -> Result<Self> {
        states.sort_by(|a, b| a.energy.total_cmp(&b.energy));
        for w in states.windows(2) {
            if !(w[1].energy > w[0].energy) {
                return Err(Error::Ordering(format!(
                    "energies {} and {} are not strictly increasing",
                    w[0].energy, w[1].energy
                )));
            }
            if w[1].nodes != w[0].nodes + 1 {
                return Err(Error::Ordering(format!(
                    "node counts {} then {} at E = {}",
                    w[0].nodes, w[1].nodes, w[1].energy
                )));
            }
        }
        if let Some(s) = states.iter().find(|s| Parity::from_nodes(s.nodes) != s.parity) {
            return Err(Error::Ordering(format!(
                "state at E = {} has {} nodes but parity {}",
                s.energy,
                s.nodes,
                s.parity.label()
            )));
        }
        let count = |p| states.iter().filter(|s| s.parity == p).count();
        Ok(SpectrumResult {
            count_symmetric: count(Parity::Symmetric),
            count_antisymmetric: count(Parity::Antisymmetric),
            states,
            window,
        })
    }
}

/// `(min V - 1, 0)`: no bound state lies below the bottom of the potential,
/// nor (for either mass model) below the bottom of the z-space potential.
pub fn default_window(p: &PotentialParams) -> (f64, f64) {
    (potential_floor(p) - 1.0, 0.0)
}

pub(crate) fn potential_floor(p: &PotentialParams) -> f64 {
    let mesh = 4096;
    let mut min = 0.0f64;
    for i in 0..=mesh {
        min = min.min(p.value_in_t(i as f64 / mesh as f64));
    }
    for s in classify_wells(p).stationary {
        min = min.min(s.value);
    }
    min
}

/// Validates a search window and clips its lower end to the potential floor.
pub(crate) fn clip_window(p: &PotentialParams, window: (f64, f64)) -> Result<(f64, f64)> {
    let (lo, hi) = window;
    if lo.is_nan() || !hi.is_finite() || hi > 0.0 || lo >= hi {
        return Err(Error::InvalidParameter(format!(
            "energy window must satisfy lo < hi <= 0, got ({lo}, {hi})"
        )));
    }
    Ok((lo.max(potential_floor(p) - 1.0), hi))
}
