//! Closed-form eigenfunction candidates in x-space.
//!
//! Confluent families have the shape
//! `sech^p(x) tanh^j(x) exp(e y) Hc(...; y)` with `y = tanh^2 x`, so parity
//! is built in. Triconfluent zero modes are `phi(tanh x)` with
//! `phi(y) = exp(c1 y + c3 y^3) Ht(...; k y)`; the physical real states are
//! the even and odd parts of one branch.

use num_complex::Complex64;

use super::confluent::{ConfluentHeunEvaluator, ConfluentHeunParams};
use super::triconfluent::{heun_t, heun_t_second, TriconfluentHeunParams};
use crate::error::{Error, Result};
use crate::model::{Parity, PotentialParams};
use crate::transform::{Grid, Space};

/// Largest tolerated `max|Im psi| / max|psi|` before a formula is declared
/// to be on the wrong branch.
pub const REALITY_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WavefunctionFamily {
    PdmManning,
    CmManning,
    PdmSech6Zero,
    PdmSech64Zero,
    CmSech64,
}

impl WavefunctionFamily {
    pub fn is_pdm(self) -> bool {
        matches!(
            self,
            WavefunctionFamily::PdmManning
                | WavefunctionFamily::PdmSech6Zero
                | WavefunctionFamily::PdmSech64Zero
        )
    }
}

/// Which local triconfluent solution a zero mode is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    First,
    Second,
}

impl Branch {
    pub fn from_index(i: u8) -> Result<Self> {
        match i {
            1 => Ok(Branch::First),
            2 => Ok(Branch::Second),
            _ => Err(Error::InvalidParameter(format!(
                "branch must be 1 or 2, got {i}"
            ))),
        }
    }
}

#[derive(Debug, Clone)]
enum Kernel {
    Confluent {
        heun: ConfluentHeunParams,
        sech_power: Complex64,
        exp_coeff: Complex64,
        odd: bool,
    },
    Triconfluent {
        heun: TriconfluentHeunParams,
        k: Complex64,
        c1: Complex64,
        c3: Complex64,
        branch: Branch,
        take_imag: bool,
    },
}

#[derive(Debug, Clone)]
pub struct AnalyticWavefunction {
    pub family: WavefunctionFamily,
    pub parity: Parity,
    pub params: PotentialParams,
    pub energy: f64,
    kernel: Kernel,
}

fn cplx(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

/// `ln sech x` without overflow.
fn ln_sech(x: f64) -> f64 {
    let a = x.abs();
    -(a + (-2.0 * a).exp().ln_1p() - std::f64::consts::LN_2)
}

fn frobenius_beta(parity: Parity) -> f64 {
    match parity {
        Parity::Symmetric => -0.5,
        Parity::Antisymmetric => 0.5,
    }
}

fn require_negative_energy(energy: f64) -> Result<()> {
    if !(energy.is_finite() && energy < 0.0) {
        return Err(Error::InvalidParameter(format!(
            "constant-mass closed forms need E < 0, got {energy}"
        )));
    }
    Ok(())
}

/// PDM Manning state `sech^2 x [tanh x] e^{(sqrt(B)/2) y} Hc(sqrt(B), -+1/2, 1, (B+C)/4, 1/2 - (E+B+C)/4; y)`.
pub fn pdm_manning_wavefunction(
    b: f64,
    c: f64,
    energy: f64,
    parity: Parity,
) -> Result<AnalyticWavefunction> {
    if b == 0.0 {
        return Err(Error::InvalidParameter(
            "the PDM Manning closed form needs B != 0".into(),
        ));
    }
    let params = PotentialParams::manning(b, c)?;
    if !energy.is_finite() {
        return Err(Error::InvalidParameter("energy must be finite".into()));
    }
    let sqrt_b = cplx(b).sqrt();
    let heun = ConfluentHeunParams::new(
        sqrt_b,
        cplx(frobenius_beta(parity)),
        cplx(1.0),
        cplx((b + c) / 4.0),
        cplx(0.5 - (energy + b + c) / 4.0),
    )?;
    Ok(AnalyticWavefunction {
        family: WavefunctionFamily::PdmManning,
        parity,
        params,
        energy,
        kernel: Kernel::Confluent {
            heun,
            sech_power: cplx(2.0),
            exp_coeff: sqrt_b * 0.5,
            odd: parity == Parity::Antisymmetric,
        },
    })
}

/// Constant-mass Manning state `sech^{sqrt(-E)} x [tanh x] Hc(0, -+1/2, sqrt(-E), B/4, 1/4 - (E+B+C)/4; y)`.
pub fn cm_manning_wavefunction(
    b: f64,
    c: f64,
    energy: f64,
    parity: Parity,
) -> Result<AnalyticWavefunction> {
    require_negative_energy(energy)?;
    let params = PotentialParams::manning(b, c)?;
    let kappa = (-energy).sqrt();
    let heun = ConfluentHeunParams::new(
        cplx(0.0),
        cplx(frobenius_beta(parity)),
        cplx(kappa),
        cplx(b / 4.0),
        cplx(0.25 - (energy + b + c) / 4.0),
    )?;
    Ok(AnalyticWavefunction {
        family: WavefunctionFamily::CmManning,
        parity,
        params,
        energy,
        kernel: Kernel::Confluent {
            heun,
            sech_power: cplx(kappa),
            exp_coeff: cplx(0.0),
            odd: parity == Parity::Antisymmetric,
        },
    })
}

/// Constant-mass state of `V = -a sech^6 x + a sech^4 x`:
/// `e^{(sqrt(a)/2) y} sech^{sqrt(-E)} x [tanh x] Hc(sqrt(a), -+1/2, sqrt(-E), 0, (1-E)/4; y)`.
pub fn cm_sech64_wavefunction(a: f64, energy: f64, parity: Parity) -> Result<AnalyticWavefunction> {
    require_negative_energy(energy)?;
    let params = PotentialParams::new(a, -a, 0.0)?;
    let kappa = (-energy).sqrt();
    let sqrt_a = cplx(a).sqrt();
    let heun = ConfluentHeunParams::new(
        sqrt_a,
        cplx(frobenius_beta(parity)),
        cplx(kappa),
        cplx(0.0),
        cplx((1.0 - energy) / 4.0),
    )?;
    Ok(AnalyticWavefunction {
        family: WavefunctionFamily::CmSech64,
        parity,
        params,
        energy,
        kernel: Kernel::Confluent {
            heun,
            sech_power: cplx(kappa),
            exp_coeff: sqrt_a * 0.5,
            odd: parity == Parity::Antisymmetric,
        },
    })
}

/// PDM zero mode of `V = -a sech^6 x`:
/// `phi(y) = exp(-(s/3) y (y^2 - 3)) Ht(0, 0, -2s/k; k y)`, `s = sqrt(-a)`,
/// `k = (2s/3)^{1/3}`, evaluated at `y = tanh x`.
pub fn pdm_sech6_zeromode(a: f64, branch: Branch, parity: Parity) -> Result<AnalyticWavefunction> {
    if a == 0.0 || !a.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "sech^6 zero modes need a finite a != 0, got {a}"
        )));
    }
    let s = cplx(-a).sqrt();
    let k = (s * (2.0 / 3.0)).cbrt();
    let heun = TriconfluentHeunParams::new(cplx(0.0), cplx(0.0), -s * 2.0 / k)?;
    zero_mode(
        WavefunctionFamily::PdmSech6Zero,
        PotentialParams::new(a, 0.0, 0.0)?,
        heun,
        k,
        s,
        -s / 3.0,
        branch,
        parity,
    )
}

/// PDM zero mode of `V = -a sech^6 x + a sech^4 x`:
/// `phi(y) = exp(s y (1/2 - y^2/3)) Ht(-(a/4)/k^2, 0, -s/k; k y)`.
pub fn pdm_sech64_zeromode(a: f64, branch: Branch, parity: Parity) -> Result<AnalyticWavefunction> {
    if a == 0.0 || !a.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "sech^6 - sech^4 zero modes need a finite a != 0, got {a}"
        )));
    }
    let s = cplx(-a).sqrt();
    let k = (s * (2.0 / 3.0)).cbrt();
    let heun = TriconfluentHeunParams::new(-cplx(a / 4.0) / (k * k), cplx(0.0), -s / k)?;
    zero_mode(
        WavefunctionFamily::PdmSech64Zero,
        PotentialParams::new(a, -a, 0.0)?,
        heun,
        k,
        s * 0.5,
        -s / 3.0,
        branch,
        parity,
    )
}

#[allow(clippy::too_many_arguments)]
fn zero_mode(
    family: WavefunctionFamily,
    params: PotentialParams,
    heun: TriconfluentHeunParams,
    k: Complex64,
    c1: Complex64,
    c3: Complex64,
    branch: Branch,
    parity: Parity,
) -> Result<AnalyticWavefunction> {
    let mut wf = AnalyticWavefunction {
        family,
        parity,
        params,
        energy: 0.0,
        kernel: Kernel::Triconfluent {
            heun,
            k,
            c1,
            c3,
            branch,
            take_imag: false,
        },
    };
    // Pick the real or imaginary part of the projection by size.
    let ys: Vec<f64> = (0..=200).map(|i| i as f64 / 200.0).collect();
    let (mut re2, mut im2, mut full) = (0.0f64, 0.0f64, 0.0f64);
    for &y in &ys {
        let p = wf.projected(y)?;
        re2 += p.re * p.re;
        im2 += p.im * p.im;
        full = full.max(wf.branch_value(y)?.norm()).max(wf.branch_value(-y)?.norm());
    }
    let best = re2.max(im2).sqrt() / (ys.len() as f64).sqrt();
    if !(best > 1e-10 * full) {
        return Err(Error::NullProjection);
    }
    if let Kernel::Triconfluent { take_imag, .. } = &mut wf.kernel {
        *take_imag = im2 > re2;
    }
    Ok(wf)
}

impl AnalyticWavefunction {
    /// `phi_branch(y)` for zero modes.
    fn branch_value(&self, y: f64) -> Result<Complex64> {
        match &self.kernel {
            Kernel::Triconfluent {
                heun,
                k,
                c1,
                c3,
                branch,
                ..
            } => {
                let pre = (c1 * y + c3 * (y * y * y)).exp();
                let u = k * y;
                let h = match branch {
                    Branch::First => heun_t(heun, u)?,
                    Branch::Second => heun_t_second(heun, u)?,
                };
                Ok(pre * h)
            }
            Kernel::Confluent { .. } => unreachable!("branch_value is only used for zero modes"),
        }
    }

    fn projected(&self, y: f64) -> Result<Complex64> {
        let (f, m) = (self.branch_value(y)?, self.branch_value(-y)?);
        Ok(match self.parity {
            Parity::Symmetric => (f + m) * 0.5,
            Parity::Antisymmetric => (f - m) * 0.5,
        })
    }

    /// The printed closed form at `x`, before any real projection.
    pub fn raw(&self, x: f64) -> Result<Complex64> {
        match &self.kernel {
            Kernel::Confluent { .. } => Ok(self.eval_grid(&[x])?[0]),
            Kernel::Triconfluent { .. } => self.branch_value(x.tanh()),
        }
    }

    /// The evaluator `x -> psi(x)`; zero modes return their real projection.
    pub fn eval(&self, x: f64) -> Result<Complex64> {
        Ok(self.eval_grid(&[x])?[0])
    }

    /// Evaluates on many points; confluent families use one sorted sweep.
    pub fn eval_grid(&self, xs: &[f64]) -> Result<Vec<Complex64>> {
        if xs.iter().any(|x| !x.is_finite()) {
            return Err(Error::Domain("wavefunction arguments must be finite".into()));
        }
        match &self.kernel {
            Kernel::Confluent {
                heun,
                sech_power,
                exp_coeff,
                odd,
            } => {
                let mut order: Vec<usize> = (0..xs.len()).collect();
                order.sort_by(|&i, &j| xs[i].abs().partial_cmp(&xs[j].abs()).unwrap());
                let ys: Vec<f64> = order.iter().map(|&i| xs[i].tanh().powi(2)).collect();
                if ys.last().is_some_and(|&y| y >= 1.0) {
                    return Err(Error::Domain(
                        "tanh^2 x rounds to 1; |x| is beyond the closed form's reach".into(),
                    ));
                }
                let h = ConfluentHeunEvaluator::new(*heun).eval_sorted(&ys)?;
                let mut out = vec![Complex64::new(0.0, 0.0); xs.len()];
                for (&i, (&y, hv)) in order.iter().zip(ys.iter().zip(&h)) {
                    let x = xs[i];
                    let mut v = (sech_power * ln_sech(x) + exp_coeff * y).exp() * hv;
                    if *odd {
                        v *= x.tanh();
                    }
                    out[i] = v;
                }
                Ok(out)
            }
            Kernel::Triconfluent { take_imag, .. } => xs
                .iter()
                .map(|&x| {
                    let p = self.projected(x.tanh())?;
                    Ok(cplx(if *take_imag { p.im } else { p.re }))
                })
                .collect(),
        }
    }

    /// Real samples after the reality check `max|Im| <= REALITY_TOL max|psi|`.
    pub fn real_values(&self, xs: &[f64]) -> Result<Vec<f64>> {
        let vals = self.eval_grid(xs)?;
        let max_abs = vals.iter().map(|v| v.norm()).fold(0.0, f64::max);
        let max_im = vals.iter().map(|v| v.im.abs()).fold(0.0, f64::max);
        if max_abs > 0.0 && max_im > REALITY_TOL * max_abs {
            return Err(Error::RealityViolation(max_im / max_abs));
        }
        Ok(vals.iter().map(|v| v.re).collect())
    }

    /// For zero modes, `|psi(+-inf)| = |phi(+-1)|`: exactly zero only at an
    /// exact depth, so this is the noise floor of the tail.
    pub fn tail_value(&self) -> Result<f64> {
        match &self.kernel {
            Kernel::Triconfluent { take_imag, .. } => {
                let p = self.projected(1.0)?;
                Ok(if *take_imag { p.im } else { p.re }.abs())
            }
            Kernel::Confluent { .. } => Ok(0.0),
        }
    }

    /// Node count on the samples, ignoring values at or below ten times the
    /// tail plateau.
    pub fn nodes_on(&self, xs: &[f64]) -> Result<usize> {
        let v = self.real_values(xs)?;
        let max = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        Ok(count_nodes_above(&v, (10.0 * self.tail_value()?).max(1e-9 * max)))
    }

    /// `real_values` packaged as an x-grid.
    pub fn real_grid(&self, xs: &[f64]) -> Result<Grid<f64>> {
        let vals = self.real_values(xs)?;
        Grid::new(Space::X, xs.to_vec(), vals)
    }
}

/// Sign changes of sampled data, ignoring samples below `1e-9` of the
/// largest modulus (so an exact node at a grid point counts once).
pub fn count_nodes(values: &[f64]) -> usize {
    let max = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if max == 0.0 {
        return 0;
    }
    count_nodes_above(values, 1e-9 * max)
}

/// Sign changes among the samples with modulus above `floor`.
pub fn count_nodes_above(values: &[f64], floor: f64) -> usize {
    let mut last = 0.0f64;
    let mut nodes = 0;
    for &v in values {
        if v.abs() <= floor {
            continue;
        }
        if last != 0.0 && (v > 0.0) != (last > 0.0) {
            nodes += 1;
        }
        last = v;
    }
    nodes
}
