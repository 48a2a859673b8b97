//! Triconfluent Heun function `Ht(alpha, beta, gamma; u)`, the entire
//! solution of
//!
//! `H'' - (gamma + 3u^2) H' + [alpha + (beta - 3) u] H = 0`
//!
//! with `Ht(0) = 1`, `Ht'(0) = 0`.

use num_complex::Complex64;

use super::CompensatedSum;
use crate::error::{Error, Result};

pub const MAX_TRICONFLUENT_TERMS: usize = 5_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriconfluentHeunParams {
    pub alpha: Complex64,
    pub beta: Complex64,
    pub gamma: Complex64,
}

impl TriconfluentHeunParams {
    pub fn new(alpha: Complex64, beta: Complex64, gamma: Complex64) -> Result<Self> {
        if [alpha, beta, gamma]
            .iter()
            .any(|v| !(v.re.is_finite() && v.im.is_finite()))
        {
            return Err(Error::InvalidParameter(
                "triconfluent Heun parameters must be finite".into(),
            ));
        }
        Ok(Self { alpha, beta, gamma })
    }

    pub fn real(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        let c = |v: f64| Complex64::new(v, 0.0);
        Self::new(c(alpha), c(beta), c(gamma))
    }
}

/// Scaled terms `d_n = c_n u^n` obey
/// `(n+1)(n+2) d_{n+2} = gamma (n+1) u d_{n+1} - alpha u^2 d_n + (3n - beta) u^3 d_{n-1}`.
struct Terms {
    p: TriconfluentHeunParams,
    u: Complex64,
    u2: Complex64,
    u3: Complex64,
    d: [Complex64; 3], // d_{n-1}, d_n, d_{n+1}
    n: usize,
}

impl Terms {
    fn new(p: TriconfluentHeunParams, u: Complex64) -> Self {
        let zero = Complex64::new(0.0, 0.0);
        Self {
            p,
            u,
            u2: u * u,
            u3: u * u * u,
            d: [zero, Complex64::new(1.0, 0.0), zero],
            n: 0,
        }
    }

    /// Returns `d_{n+2}` and advances `n`.
    fn next(&mut self) -> Complex64 {
        let nf = self.n as f64;
        let [dm1, d0, d1] = self.d;
        let next = (self.p.gamma * (nf + 1.0) * self.u * d1 - self.p.alpha * self.u2 * d0
            + (self.p.beta * -1.0 + 3.0 * nf) * self.u3 * dm1)
            / ((nf + 1.0) * (nf + 2.0));
        self.d = [d0, d1, next];
        self.n += 1;
        next
    }
}

fn check_argument(u: Complex64) -> Result<()> {
    if !(u.re.is_finite() && u.im.is_finite()) {
        return Err(Error::Domain(format!("Ht argument must be finite, got {u}")));
    }
    Ok(())
}

/// `Ht` summed until three consecutive terms are below `1e-17` of the sum,
/// past the point where terms stop growing. Partial sums are compensated
/// at every modulus: with `|gamma u|` large the terms cancel even for small `u`.
pub fn heun_t(p: &TriconfluentHeunParams, u: Complex64) -> Result<Complex64> {
    check_argument(u)?;
    let r = u.norm();
    if r == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    // Terms of an order-3 entire function peak near n ~ 3 r^3.
    let n_min = 8 + (3.0 * r.powi(3) + 2.0 * p.gamma.norm() * r + p.alpha.norm().sqrt() * r) as usize;
    let mut terms = Terms::new(*p, u);
    let mut sum = CompensatedSum::new(Complex64::new(1.0, 0.0));
    let mut quiet = 0;
    for k in 2..MAX_TRICONFLUENT_TERMS {
        let t = terms.next();
        sum.add(t);
        let s = sum.value();
        let small = t.norm() <= 1e-17 * s.norm();
        quiet = if small { quiet + 1 } else { 0 };
        if k > n_min && quiet >= 3 {
            return Ok(s);
        }
    }
    Err(Error::SeriesDivergence {
        terms: MAX_TRICONFLUENT_TERMS,
        last_term: terms.d[2].norm(),
        partial: sum.value(),
    })
}

/// The series truncated after `n_terms` coefficients (`c_0 .. c_{n_terms-1}`).
pub fn heun_t_truncated(p: &TriconfluentHeunParams, u: Complex64, n_terms: usize) -> Complex64 {
    let mut terms = Terms::new(*p, u);
    let mut sum = CompensatedSum::new(Complex64::new(1.0, 0.0));
    for _ in 2..n_terms.max(2) {
        sum.add(terms.next());
    }
    sum.value()
}

/// Second local solution `e^{u^3 + gamma u} Ht(alpha, -beta, gamma; -u)`.
pub fn heun_t_second(p: &TriconfluentHeunParams, u: Complex64) -> Result<Complex64> {
    check_argument(u)?;
    let mirrored = TriconfluentHeunParams {
        beta: -p.beta,
        ..*p
    };
    Ok((u * u * u + p.gamma * u).exp() * heun_t(&mirrored, -u)?)
}
