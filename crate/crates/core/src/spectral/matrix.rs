//! Finite-difference Sturm-Liouville oracle. The PDM equation is the
//! self-adjoint problem `-(cosh^2 x psi')' + V psi = E psi`, the constant-mass
//! one has `p = 1`. Both are discretized with `p` at half points on
//! `[-L, L]` with Dirichlet ends, giving a symmetric tridiagonal matrix whose
//! eigenvalues are isolated by Sturm-sequence bisection.

use super::constant_mass::{cm_box_length, MAX_CM_BOX};
use crate::error::{Error, Result};
use crate::model::{potential_at, PotentialParams};

pub const MIN_MATRIX_GRID: usize = 500;
/// PDM truncation, `sech^2 L = 1e-10`. The PDM tail decays only like
/// `e^{-2|x|}`, so the wall shifts levels by `O(e^{-2L})`.
const PDM_COSH_CUTOFF: f64 = 1e5;
/// Largest PDM step; `n_grid` is raised to respect it.
const PDM_MAX_STEP: f64 = 0.002;
/// Largest constant-mass step; `n_grid` is raised to respect it.
const CM_MAX_STEP: f64 = 0.0025;
const CM_SURVEY_STEP: f64 = 0.025;

struct Tridiagonal {
    d: Vec<f64>,
    /// Squared off-diagonal, `e2[i]` couples rows `i` and `i + 1`.
    e2: Vec<f64>,
}

impl Tridiagonal {
    fn new(p: &PotentialParams, pdm: bool, n: usize, l: f64) -> Self {
        let h = 2.0 * l / n as f64;
        let stiffness = |x: f64| if pdm { x.cosh().powi(2) } else { 1.0 };
        let half: Vec<f64> = (0..n)
            .map(|i| stiffness(-l + (i as f64 + 0.5) * h) / (h * h))
            .collect();
        let d = (1..n)
            .map(|i| half[i - 1] + half[i] + potential_at(p, -l + i as f64 * h))
            .collect();
        let e2 = (1..n - 1).map(|i| half[i] * half[i]).collect();
        Tridiagonal { d, e2 }
    }

    /// Gershgorin bounds on the spectrum.
    fn bounds(&self) -> (f64, f64) {
        let n = self.d.len();
        let e = |i: usize| self.e2.get(i).map_or(0.0, |v| v.sqrt());
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let r = e(i) + if i > 0 { e(i - 1) } else { 0.0 };
            lo = lo.min(self.d[i] - r);
            hi = hi.max(self.d[i] + r);
        }
        (lo, hi)
    }

    fn kth(&self, k: usize, mut lo: f64, mut hi: f64) -> f64 {
        for _ in 0..300 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if sturm_count(&self.d, &self.e2, mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }
}

/// Number of eigenvalues below `lambda` of the symmetric tridiagonal matrix
/// with diagonal `d` and squared off-diagonal `e2`.
pub fn sturm_count(d: &[f64], e2: &[f64], lambda: f64) -> usize {
    if d.is_empty() {
        return 0;
    }
    let mut q = d[0] - lambda;
    let mut k = usize::from(q < 0.0);
    for i in 1..d.len() {
        if q == 0.0 {
            q = 1e-300;
        }
        q = d[i] - lambda - e2[i - 1] / q;
        if q < 0.0 {
            k += 1;
        }
    }
    k
}

fn check(n_grid: usize, window: (f64, f64)) -> Result<()> {
    if n_grid < MIN_MATRIX_GRID {
        return Err(Error::InvalidParameter(format!(
            "matrix grid needs at least {MIN_MATRIX_GRID} intervals, got {n_grid}"
        )));
    }
    if window.0.is_nan() || window.1.is_nan() || window.0 >= window.1 {
        return Err(Error::InvalidParameter(format!(
            "invalid eigenvalue window ({}, {})",
            window.0, window.1
        )));
    }
    Ok(())
}

/// Box half-width and interval count. Constant-mass states are only
/// weakly confined, so the box is sized from the shallowest level found by a
/// coarse survey in the largest box.
fn discretization(p: &PotentialParams, pdm: bool, n_grid: usize, window: (f64, f64)) -> (f64, usize) {
    if pdm {
        let l = PDM_COSH_CUTOFF.acosh();
        return (l, n_grid.max((2.0 * l / PDM_MAX_STEP).ceil() as usize));
    }
    let n_survey = (2.0 * MAX_CM_BOX / CM_SURVEY_STEP) as usize;
    let survey = Tridiagonal::new(p, false, n_survey, MAX_CM_BOX);
    let top = window.1.min(0.0);
    let below = sturm_count(&survey.d, &survey.e2, top);
    let l = if below == 0 {
        cm_box_length(-1.0)
    } else {
        let (lo, _) = survey.bounds();
        cm_box_length(survey.kth(below - 1, lo, top))
    };
    let n = n_grid.max((2.0 * l / CM_MAX_STEP).ceil() as usize);
    (l, n)
}

fn eigenvalue_indices(t: &Tridiagonal, window: (f64, f64)) -> (usize, usize, f64, f64) {
    let (glo, ghi) = t.bounds();
    let lo = window.0.max(glo);
    let hi = window.1.min(ghi);
    (sturm_count(&t.d, &t.e2, lo), sturm_count(&t.d, &t.e2, hi), lo, hi)
}

/// Eigenvalues in `window` (ascending) for `n_grid` intervals on `[-L, L]`.
pub fn sl_matrix_eigenvalues(
    p: &PotentialParams,
    pdm: bool,
    n_grid: usize,
    window: (f64, f64),
) -> Result<Vec<f64>> {
    check(n_grid, window)?;
    let (l, n) = discretization(p, pdm, n_grid, window);
    let t = Tridiagonal::new(p, pdm, n, l);
    let (k0, k1, lo, hi) = eigenvalue_indices(&t, window);
    Ok((k0..k1).map(|k| t.kth(k, lo, hi)).collect())
}

/// `(4 E(2n) - E(n)) / 3`, pairing levels by their index in the spectrum.
pub fn sl_matrix_eigenvalues_richardson(
    p: &PotentialParams,
    pdm: bool,
    n_grid: usize,
    window: (f64, f64),
) -> Result<Vec<f64>> {
    check(n_grid, window)?;
    let (l, n) = discretization(p, pdm, n_grid, window);
    let fine = Tridiagonal::new(p, pdm, 2 * n, l);
    let coarse = Tridiagonal::new(p, pdm, n, l);
    let (k0, k1, lo, hi) = eigenvalue_indices(&fine, window);
    let (clo, chi) = coarse.bounds();
    Ok((k0..k1)
        .map(|k| {
            let ef = fine.kth(k, lo, hi);
            let ec = coarse.kth(k, clo, chi);
            (4.0 * ef - ec) / 3.0
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sturm_count_matches_closed_form() {
        // Dirichlet Laplacian: eigenvalues 2 - 2 cos(k pi / (n + 1)).
        let n = 50;
        let d = vec![2.0; n];
        let e2 = vec![1.0; n - 1];
        for k in 1..=n {
            let lam = 2.0 - 2.0 * (k as f64 * std::f64::consts::PI / (n + 1) as f64).cos();
            assert_eq!(sturm_count(&d, &e2, lam - 1e-9), k - 1);
            assert_eq!(sturm_count(&d, &e2, lam + 1e-9), k);
        }
    }

    #[test]
    fn free_problem_has_no_bound_states() {
        let p = PotentialParams::new(0.0, 0.0, 0.0).unwrap();
        for pdm in [true, false] {
            let e = sl_matrix_eigenvalues(&p, pdm, 600, (f64::NEG_INFINITY, 0.0)).unwrap();
            assert!(e.is_empty(), "{e:?}");
        }
    }

    #[test]
    fn small_grid_is_rejected() {
        let p = PotentialParams::new(0.0, 0.0, 0.0).unwrap();
        assert!(matches!(
            sl_matrix_eigenvalues(&p, true, 100, (-1.0, 0.0)),
            Err(Error::InvalidParameter(_))
        ));
    }
}
