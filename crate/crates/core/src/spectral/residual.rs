use super::state::BoundState;
use crate::error::{Error, Result};
use crate::model::{classify_wells, potential_at, sech, PotentialParams};
use crate::transform::{integrate, linspace, Grid, Space};

/// Largest centered-difference residual of the x-space equation over the
/// interior points, relative to `max|psi|`. With `pdm` the equation is
/// `psi'' + 2 tanh x psi' + sech^2 x (E - V) psi = 0`, otherwise
/// `psi'' + (E - V) psi = 0`.
pub fn residual(p: &PotentialParams, pdm: bool, psi: &Grid<f64>, energy: f64) -> Result<f64> {
    if psi.space() != Space::X {
        return Err(Error::InvalidParameter("residual expects a grid in x".into()));
    }
    let h = psi
        .uniform_step()
        .ok_or_else(|| Error::InvalidParameter("residual needs a uniform x grid".into()))?;
    if psi.len() < 5 {
        return Err(Error::InvalidParameter(format!(
            "residual needs at least 5 points, got {}",
            psi.len()
        )));
    }
    let (x, y) = (psi.points(), psi.values());
    let scale = y.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if scale == 0.0 {
        return Ok(0.0);
    }
    let mut worst = 0.0f64;
    for i in 1..y.len() - 1 {
        let d2 = (y[i + 1] - 2.0 * y[i] + y[i - 1]) / (h * h);
        let gap = energy - potential_at(p, x[i]);
        let r = if pdm {
            let d1 = (y[i + 1] - y[i - 1]) / (2.0 * h);
            d2 + 2.0 * x[i].tanh() * d1 + sech(x[i]).powi(2) * gap * y[i]
        } else {
            d2 + gap * y[i]
        };
        worst = worst.max(r.abs());
    }
    Ok(worst / scale)
}

const BARRIER_MESH: usize = 20_000;
const PANEL_POINTS: usize = 2001;

/// `int psi^2 dx` over the classically forbidden region between the outer
/// wells, `{x : V(x) > E, |x| < x_outer}`.
pub fn tunneling_weight(state: &BoundState, p: &PotentialParams) -> Result<f64> {
    let e = state.energy;
    let outer = classify_wells(p)
        .outer_minimum()
        .ok_or(Error::NoBarrier(e))?;
    let above = |x: f64| potential_at(p, x) - e;
    // Forbidden intervals on [0, x_outer]; the integrand is even.
    let mut intervals = Vec::new();
    let xs = linspace(0.0, outer.x, BARRIER_MESH + 1);
    let mut start = (above(0.0) > 0.0).then_some(0.0);
    for w in xs.windows(2) {
        let (f0, f1) = (above(w[0]), above(w[1]));
        if (f0 > 0.0) != (f1 > 0.0) {
            let root = bisect(&above, w[0], w[1]);
            match start.take() {
                Some(s) => intervals.push((s, root)),
                None => start = Some(root),
            }
        }
    }
    if let Some(s) = start {
        intervals.push((s, outer.x));
    }
    intervals.retain(|(a, b)| b > a);
    if intervals.is_empty() {
        return Err(Error::NoBarrier(e));
    }
    let mut weight = 0.0;
    for (a, b) in intervals {
        let pts = linspace(a, b, PANEL_POINTS);
        let sq: Vec<f64> = pts.iter().map(|&x| state.sample_psi(x).powi(2)).collect();
        weight += 2.0 * integrate(&pts, &sq);
    }
    Ok(weight)
}

fn bisect(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let pos_lo = f(lo) > 0.0;
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if (f(mid) > 0.0) == pos_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_wavefunction_has_zero_residual() {
        let p = PotentialParams::manning(-500.0, 500.0).unwrap();
        let xs = linspace(-5.0, 5.0, 101);
        let g = Grid::new(Space::X, xs, vec![0.0; 101]).unwrap();
        assert_eq!(residual(&p, true, &g, -10.0).unwrap(), 0.0);
    }

    #[test]
    fn residual_rejects_short_or_z_grids() {
        let p = PotentialParams::manning(-500.0, 500.0).unwrap();
        let g = Grid::new(Space::X, vec![0.0, 0.1, 0.2], vec![1.0; 3]).unwrap();
        assert!(residual(&p, false, &g, -1.0).is_err());
        let g = Grid::new(Space::Z, linspace(-1.0, 1.0, 9), vec![1.0; 9]).unwrap();
        assert!(residual(&p, false, &g, -1.0).is_err());
    }

    #[test]
    fn free_exponential_passes_constant_mass_check() {
        // exp(x) solves the free problem at E = -1.
        let p = PotentialParams::new(0.0, 0.0, 0.0).unwrap();
        let xs = linspace(0.0, 1.0, 201);
        let ys = xs.iter().map(|x| x.exp()).collect();
        let g = Grid::new(Space::X, xs, ys).unwrap();
        assert!(residual(&p, false, &g, -1.0).unwrap() < 1e-4);
    }
}
