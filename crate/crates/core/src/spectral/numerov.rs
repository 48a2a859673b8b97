//! Fixed-step Numerov sweep for `y'' = f y` and the end-of-sweep data used
//! for parity matching and state counting.

use crate::error::{Error, Result};
use crate::model::Parity;

const RESCALE_ABOVE: f64 = 1e200;

/// Integrates `y'' = f y` on a uniform grid from the seeded values
/// `y[0..seed.len()]` to the end of `f`. The solution is rescaled whenever it
/// grows past `1e200`, so only its shape is meaningful.
pub(crate) fn sweep(f: &[f64], h: f64, seed: &[f64]) -> Result<Vec<f64>> {
    let n = f.len();
    debug_assert!(seed.len() >= 2 && seed.len() <= n);
    let k = h * h / 12.0;
    let mut y = Vec::with_capacity(n);
    y.extend_from_slice(seed);
    let start = seed.len() - 1;
    let mut g_prev = 1.0 - k * f[start - 1];
    let mut g_cur = 1.0 - k * f[start];
    for i in start..n - 1 {
        let g_next = 1.0 - k * f[i + 1];
        if g_next <= 0.0 {
            return Err(Error::Integration(format!(
                "Numerov step {h:e} too coarse for f = {:e}",
                f[i + 1]
            )));
        }
        let next = ((2.0 + 10.0 * k * f[i]) * y[i] - g_prev * y[i - 1]) / g_next;
        y.push(next);
        if next.abs() > RESCALE_ABOVE {
            for v in y.iter_mut() {
                *v /= RESCALE_ABOVE;
            }
        }
        g_prev = g_cur;
        g_cur = g_next;
    }
    if !y[n - 1].is_finite() {
        return Err(Error::Integration("Numerov sweep produced a non-finite value".into()));
    }
    Ok(y)
}

/// Sign changes among the nonzero entries.
pub(crate) fn sign_changes(y: &[f64]) -> usize {
    let mut last = 0.0f64;
    let mut n = 0;
    for &v in y {
        if v == 0.0 {
            continue;
        }
        if last != 0.0 && (v > 0.0) != (last > 0.0) {
            n += 1;
        }
        last = v;
    }
    n
}

/// The sweep's value and reflection residual at its last node, which sits on
/// the symmetry point. `reflection` vanishes when the mirrored continuation
/// `y[M+1] = y[M-1]` satisfies the Numerov relation, and approximates
/// `-2h y'` there (derivative along the sweep direction).
#[derive(Debug, Clone, Copy)]
pub(crate) struct Endpoint {
    pub value: f64,
    pub reflection: f64,
    pub scale: f64,
    pub sign_changes: usize,
    /// Sign changes strictly before the symmetry point.
    pub interior_changes: usize,
}

impl Endpoint {
    pub(crate) fn of(y: &[f64], f: &[f64], h: f64) -> Self {
        let m = y.len() - 1;
        let k = h * h / 12.0;
        let reflection = 2.0 * (1.0 - k * f[m - 1]) * y[m - 1] - (2.0 + 10.0 * k * f[m]) * y[m];
        let scale = y.iter().fold(0.0f64, |s, v| s.max(v.abs()));
        Endpoint {
            value: y[m],
            reflection,
            scale,
            sign_changes: sign_changes(y),
            interior_changes: sign_changes(&y[..m]),
        }
    }

    /// Number of states of this parity strictly below the sweep energy.
    pub(crate) fn count(&self, parity: Parity) -> usize {
        match parity {
            Parity::Antisymmetric => self.sign_changes,
            Parity::Symmetric => {
                self.sign_changes + usize::from(self.value * self.reflection > 0.0)
            }
        }
    }

    /// `y(0)` or `y'(0)` (as a derivative towards the sweep's start), relative to `max|y|`.
    pub(crate) fn match_value(&self, parity: Parity, h: f64) -> f64 {
        if self.scale == 0.0 {
            return 0.0;
        }
        match parity {
            Parity::Antisymmetric => self.value / self.scale,
            Parity::Symmetric => self.reflection / (2.0 * h * self.scale),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_sweep_is_fourth_order() {
        // y'' = -y from y(0)=0: compare sin at x = 1.
        let err = |n: usize| {
            let h = 1.0 / n as f64;
            let f = vec![-1.0; n + 1];
            let y = sweep(&f, h, &[0.0, h.sin()]).unwrap();
            (y[n] - 1f64.sin()).abs()
        };
        let ratio = err(10) / err(20);
        assert!((ratio - 16.0).abs() < 1.0, "ratio {ratio}");
    }

    #[test]
    fn growth_is_rescaled() {
        let n = 20_000;
        let h = 0.1;
        let f = vec![1.0; n + 1];
        let y = sweep(&f, h, &[1.0, h.exp()]).unwrap();
        assert!(y.iter().all(|v| v.is_finite()));
        assert!((y[n] / y[n - 1] - h.exp()).abs() < 1e-6);
    }

    #[test]
    fn sign_changes_skip_zeros() {
        assert_eq!(sign_changes(&[1.0, 0.0, -1.0, 0.0, -2.0, 3.0]), 2);
        assert_eq!(sign_changes(&[0.0, 0.0]), 0);
    }
}
