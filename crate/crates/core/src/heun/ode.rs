//! Adaptive Dormand-Prince 5(4) integration of small complex systems along
//! a real path parameter.

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct OdeOptions {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
    /// First trial step as a fraction of the interval.
    pub initial_fraction: f64,
}

impl Default for OdeOptions {
    fn default() -> Self {
        Self {
            rtol: 1e-13,
            atol: 1e-300,
            max_steps: 2_000_000,
            initial_fraction: 1e-3,
        }
    }
}

const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
// Fifth-order weights minus the embedded fourth-order ones.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Integrates `du/ds = f(s, u)` from `s0` to `s1` and returns `u(s1)`.
pub fn dopri5<const N: usize, F>(
    mut f: F,
    s0: f64,
    s1: f64,
    u0: [Complex64; N],
    opts: &OdeOptions,
) -> Result<[Complex64; N]>
where
    F: FnMut(f64, &[Complex64; N]) -> Result<[Complex64; N]>,
{
    let span = s1 - s0;
    if span == 0.0 {
        return Ok(u0);
    }
    let dir = span.signum();
    let mut s = s0;
    let mut u = u0;
    let mut h = span.abs() * opts.initial_fraction;
    let mut k = [[Complex64::new(0.0, 0.0); N]; 7];
    k[0] = f(s, &u)?;
    let mut steps = 0usize;
    loop {
        let remaining = (s1 - s) * dir;
        if remaining <= 0.0 {
            return Ok(u);
        }
        let last = h >= remaining;
        if last {
            h = remaining;
        }
        steps += 1;
        if steps > opts.max_steps {
            return Err(Error::Integration(format!(
                "step limit {} reached at s = {s}",
                opts.max_steps
            )));
        }
        let hs = h * dir;
        for stage in 1..7 {
            let mut arg = u;
            for (i, a) in arg.iter_mut().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for j in 0..stage {
                    acc += k[j][i] * A[stage][j];
                }
                *a += acc * hs;
            }
            k[stage] = f(s + C[stage] * hs, &arg)?;
        }
        let mut next = u;
        for (i, v) in next.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..6 {
                acc += k[j][i] * A[6][j];
            }
            *v += acc * hs;
        }
        let mut err = 0.0f64;
        for i in 0..N {
            let mut e = Complex64::new(0.0, 0.0);
            for j in 0..7 {
                e += k[j][i] * E[j];
            }
            let sc = opts.atol + opts.rtol * u[i].norm().max(next[i].norm());
            err = err.max((e * hs).norm() / sc);
        }
        if !err.is_finite() {
            if h < span.abs() * 1e-300 {
                return Err(Error::Integration(format!(
                    "non-finite derivative at s = {s}"
                )));
            }
            h *= 0.1;
            continue;
        }
        if err <= 1.0 {
            s = if last { s1 } else { s + hs };
            u = next;
            k[0] = k[6];
        }
        let factor = if err == 0.0 {
            5.0
        } else {
            (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
        };
        h *= factor;
        if h <= f64::EPSILON * s.abs().max(span.abs()) {
            return Err(Error::Integration(format!(
                "step size underflow at s = {s}"
            )));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_and_oscillator() {
        let i = Complex64::new(0.0, 1.0);
        let opts = OdeOptions::default();
        let u = dopri5(|_, u: &[Complex64; 1]| Ok([u[0] * i]), 0.0, 3.0, [Complex64::new(1.0, 0.0)], &opts)
            .unwrap();
        assert!((u[0] - (i * 3.0).exp()).norm() < 1e-11);

        let u = dopri5(
            |_, u: &[Complex64; 2]| Ok([u[1], -u[0]]),
            2.0,
            -1.0,
            [Complex64::new(2f64.sin(), 0.0), Complex64::new(2f64.cos(), 0.0)],
            &opts,
        )
        .unwrap();
        assert!((u[0].re - (-1f64).sin()).abs() < 1e-11);
        assert!((u[1].re - (-1f64).cos()).abs() < 1e-11);
    }
}
