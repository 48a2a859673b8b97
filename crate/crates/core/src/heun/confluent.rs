//! Local confluent Heun function `Hc(alpha, beta, gamma, delta, eta; y)`,
//! the exponent-0 solution at `y = 0` of
//!
//! `H'' + (alpha + (beta+1)/y + (gamma+1)/(y-1)) H' + (P y + Q) / (y (y-1)) H = 0`,
//!
//! `P = delta + alpha (beta+gamma+2)/2`, `Q = eta + beta/2 + (gamma-alpha)(beta+1)/2`,
//! normalized by `Hc(0) = 1`.

use num_complex::Complex64;

use super::ode::{dopri5, OdeOptions};
use super::dd::DdComplex;
use crate::error::{Error, Result};

/// Series is used for `|y| <= SERIES_RADIUS`, ODE continuation beyond.
pub const SERIES_RADIUS: f64 = 0.5;
pub const MAX_SERIES_TERMS: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConfluentHeunParams {
    pub alpha: Complex64,
    pub beta: Complex64,
    pub gamma: Complex64,
    pub delta: Complex64,
    pub eta: Complex64,
}

impl ConfluentHeunParams {
    pub fn new(
        alpha: Complex64,
        beta: Complex64,
        gamma: Complex64,
        delta: Complex64,
        eta: Complex64,
    ) -> Result<Self> {
        let all = [alpha, beta, gamma, delta, eta];
        if all.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::InvalidParameter(
                "confluent Heun parameters must be finite".into(),
            ));
        }
        // beta = -1, -2, ... makes the exponent-0 Frobenius solution undefined.
        if beta.im == 0.0 && beta.re <= -1.0 && beta.re.fract() == 0.0 {
            return Err(Error::InvalidParameter(format!(
                "beta = {} is a negative integer; the exponent-0 solution does not exist",
                beta.re
            )));
        }
        Ok(Self {
            alpha,
            beta,
            gamma,
            delta,
            eta,
        })
    }

    pub fn real(alpha: f64, beta: f64, gamma: f64, delta: f64, eta: f64) -> Result<Self> {
        let c = |v: f64| Complex64::new(v, 0.0);
        Self::new(c(alpha), c(beta), c(gamma), c(delta), c(eta))
    }

    fn pq(&self) -> (Complex64, Complex64) {
        let p = self.delta + self.alpha * (self.beta + self.gamma + 2.0) * 0.5;
        let q = self.eta + self.beta * 0.5 + (self.gamma - self.alpha) * (self.beta + 1.0) * 0.5;
        (p, q)
    }

    fn second_derivative(&self, y: Complex64, h: Complex64, dh: Complex64) -> Complex64 {
        let (p, q) = self.pq();
        let one = Complex64::new(1.0, 0.0);
        let drift = self.alpha + (self.beta + one) / y + (self.gamma + one) / (y - one);
        -drift * dh - (p * y + q) / (y * (y - one)) * h
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: Complex64,
    pub derivative: Complex64,
    /// Largest term modulus; `max_term / |value|` bounds the cancellation loss.
    pub max_term: f64,
    pub terms: usize,
}

fn check_domain(y: Complex64) -> Result<()> {
    if !(y.re.is_finite() && y.im.is_finite()) {
        return Err(Error::Domain(format!("Hc argument must be finite, got {y}")));
    }
    if y.norm() >= 1.0 {
        return Err(Error::Domain(format!(
            "Hc needs |y| < 1 (regular singularity at y = 1), got |y| = {}",
            y.norm()
        )));
    }
    Ok(())
}

/// Power series `sum c_n y^n` with
/// `(n+1)(n+beta+1) c_{n+1} = [n(n+1-alpha+beta+gamma) + Q] c_n + [alpha(n-1) + P] c_{n-1}`.
///
/// Coefficients and partial sums are carried in double-double precision:
/// for deep wells the terms exceed the sum by many orders of magnitude.
pub fn heun_c_series(p: &ConfluentHeunParams, y: Complex64) -> Result<SeriesValue> {
    check_domain(y)?;
    let d = DdComplex::from_c64;
    let (alpha, beta, gamma) = (d(p.alpha), d(p.beta), d(p.gamma));
    let half = DdComplex::from_f64(0.5);
    let one = DdComplex::from_f64(1.0);
    let two = DdComplex::from_f64(2.0);
    let pp = d(p.delta) + alpha * (beta + gamma + two) * half;
    let qq = d(p.eta) + beta * half + (gamma - alpha) * (beta + one) * half;
    let shift = beta - alpha + gamma + one;
    let yd = d(y);

    if y == Complex64::new(0.0, 0.0) {
        let c1 = qq / (beta + one);
        return Ok(SeriesValue {
            value: Complex64::new(1.0, 0.0),
            derivative: c1.to_c64(),
            max_term: 1.0,
            terms: 1,
        });
    }

    let mut c_prev = DdComplex::ZERO;
    let mut c = one;
    let mut sum = one;
    let mut dsum = DdComplex::ZERO;
    let mut y_pow = one; // y^n
    let mut max_term = 1.0f64;
    let mut quiet = 0;
    let yn = y.norm();
    for n in 0..MAX_SERIES_TERMS {
        let nf = DdComplex::from_f64(n as f64);
        let num = (shift + nf) * nf + qq;
        let den = DdComplex::from_f64((n + 1) as f64) * (beta + DdComplex::from_f64((n + 1) as f64));
        let c_next = (num * c + (alpha * (nf - one) + pp) * c_prev) / den;
        c_prev = c;
        c = c_next;
        // Term n of the derivative, then term n+1 of the value.
        dsum = dsum + (c * y_pow).scale((n + 1) as f64);
        y_pow = y_pow * yd;
        let term = c * y_pow;
        sum = sum + term;
        let tn = term.norm_f64();
        max_term = max_term.max(tn);
        let s = sum.norm_f64().max(f64::MIN_POSITIVE);
        let ds = dsum.norm_f64().max(f64::MIN_POSITIVE);
        let small = tn <= 1e-17 * s
            && c_prev.norm_f64() * y_pow.norm_f64() <= 1e-17 * s
            && tn * (n + 2) as f64 <= 1e-17 * ds * yn;
        quiet = if small { quiet + 1 } else { 0 };
        if n > 8 && quiet >= 3 {
            return Ok(SeriesValue {
                value: sum.to_c64(),
                derivative: dsum.to_c64(),
                max_term,
                terms: n + 2,
            });
        }
    }
    Err(Error::SeriesDivergence {
        terms: MAX_SERIES_TERMS,
        last_term: (c * y_pow).norm_f64(),
        partial: sum.to_c64(),
    })
}

fn ode_options() -> OdeOptions {
    OdeOptions {
        rtol: 1e-13,
        ..OdeOptions::default()
    }
}

/// Integrates the Heun equation along the straight segment `from -> to`.
fn continue_segment(
    p: &ConfluentHeunParams,
    from: Complex64,
    to: Complex64,
    state: [Complex64; 2],
) -> Result<[Complex64; 2]> {
    let delta = to - from;
    dopri5(
        |s, u: &[Complex64; 2]| {
            let y = from + delta * s;
            Ok([delta * u[1], delta * p.second_derivative(y, u[0], u[1])])
        },
        0.0,
        1.0,
        state,
        &ode_options(),
    )
}

/// Evaluates `Hc` by ODE continuation from a series seed on the same ray.
///
/// The seed sits at `|y| = SERIES_RADIUS` for `|y|` beyond it, and at `|y|/4`
/// otherwise, so that for small arguments this is an evaluation path
/// independent of the direct series.
pub fn heun_c_continued(p: &ConfluentHeunParams, y: Complex64) -> Result<Complex64> {
    check_domain(y)?;
    let r = y.norm();
    if r == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let r0 = if r > SERIES_RADIUS { SERIES_RADIUS } else { 0.25 * r };
    let y0 = y * (r0 / r);
    let seed = heun_c_series(p, y0)?;
    let out = continue_segment(p, y0, y, [seed.value, seed.derivative])?;
    Ok(out[0])
}

/// Local confluent Heun function: series inside `SERIES_RADIUS`, radial ODE
/// continuation outside.
pub fn heun_c(p: &ConfluentHeunParams, y: Complex64) -> Result<Complex64> {
    check_domain(y)?;
    if y.norm() <= SERIES_RADIUS {
        Ok(heun_c_series(p, y)?.value)
    } else {
        heun_c_continued(p, y)
    }
}

/// Evaluates `Hc` at many real arguments in one sweep: the series handles
/// the points inside `SERIES_RADIUS`, and a single continuation passes
/// through the rest in increasing order.
#[derive(Debug, Clone, Copy)]
pub struct ConfluentHeunEvaluator {
    pub params: ConfluentHeunParams,
}

impl ConfluentHeunEvaluator {
    pub fn new(params: ConfluentHeunParams) -> Self {
        Self { params }
    }

    /// `ys` must be nondecreasing and lie in `[0, 1)`.
    pub fn eval_sorted(&self, ys: &[f64]) -> Result<Vec<Complex64>> {
        if ys.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::InvalidParameter(
                "batch Heun arguments must be sorted".into(),
            ));
        }
        let mut out = Vec::with_capacity(ys.len());
        let mut state: Option<(f64, [Complex64; 2])> = None;
        for &y in ys {
            if !(0.0..1.0).contains(&y) {
                return Err(Error::Domain(format!(
                    "batch Heun arguments must lie in [0, 1), got {y}"
                )));
            }
            if y <= SERIES_RADIUS {
                out.push(heun_c_series(&self.params, Complex64::new(y, 0.0))?.value);
                continue;
            }
            let (from, u) = match state {
                Some(st) => st,
                None => {
                    let seed = heun_c_series(&self.params, Complex64::new(SERIES_RADIUS, 0.0))?;
                    (SERIES_RADIUS, [seed.value, seed.derivative])
                }
            };
            let u = if y == from {
                u
            } else {
                continue_segment(
                    &self.params,
                    Complex64::new(from, 0.0),
                    Complex64::new(y, 0.0),
                    u,
                )?
            };
            state = Some((y, u));
            out.push(u[0]);
        }
        Ok(out)
    }
}
