//! Depths at which a one-parameter potential family binds a state exactly at
//! the continuum threshold `E = 0`.

use super::numerov::sweep;
use super::search::{richardson4, SCAN_CELLS};
use super::shooting::{ShootConfig, ZShooter};
use crate::error::{Error, Result};
use crate::model::{potential_at, Parity, PotentialParams};

/// Sign of the `sech^2` term in `V = A (sech^6 - sech^4) + C sech^2`
/// when mapped to canonical coefficients: `c = C_TERM_SIGN * C`.
/// Fixed once by [`calibrate_c_term_sign`].
pub const C_TERM_SIGN: f64 = 1.0;

/// An accepted zero mode has `|psi(10)| <= ZERO_MODE_DECAY_TOL * max|psi|`.
pub const ZERO_MODE_DECAY_TOL: f64 = 1e-3;

/// Calibration reference: deepest-lying (nodeless) symmetric zero mode of the
/// `C = 2` family.
const CALIBRATION_C: f64 = 2.0;
const CALIBRATION_DEPTH: f64 = -5.121_637_132_19;
const CALIBRATION_TOL: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ZeroModeFamily {
    /// `V = -a sech^6 x`.
    Sech6,
    /// `V = -a sech^6 x + a sech^4 x`.
    Sech64,
    /// `V = -a sech^6 x + a sech^4 x - C_TERM_SIGN c sech^2 x`.
    Sech64PlusC(f64),
}

impl ZeroModeFamily {
    pub fn params(self, a: f64) -> Result<PotentialParams> {
        self.params_with_sign(a, C_TERM_SIGN)
    }

    fn params_with_sign(self, a: f64, sign: f64) -> Result<PotentialParams> {
        match self {
            ZeroModeFamily::Sech6 => PotentialParams::new(a, 0.0, 0.0),
            ZeroModeFamily::Sech64 => PotentialParams::new(a, -a, 0.0),
            ZeroModeFamily::Sech64PlusC(c) => PotentialParams::new(a, -a, sign * c),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroModeDepth {
    pub a: f64,
    pub parity: Parity,
    /// Nodes of the zero mode on the real line.
    pub nodes: usize,
}

fn search_bounds(search: (f64, f64)) -> Result<(f64, f64)> {
    let (lo, hi) = (search.0.min(search.1), search.0.max(search.1));
    if !(lo.is_finite() && hi.is_finite()) || lo == hi {
        return Err(Error::InvalidParameter(format!(
            "zero-mode search interval must be finite and non-empty, got ({}, {})",
            search.0, search.1
        )));
    }
    Ok((lo, hi))
}

fn parities(parity: Option<Parity>) -> Vec<Parity> {
    parity.map_or_else(|| Parity::both().to_vec(), |p| vec![p])
}

/// Bisection on a predicate that differs at the two ends.
fn bisect_flag(mut lo: f64, mut hi: f64, mut flag: impl FnMut(f64) -> Result<bool>) -> Result<f64> {
    let at_lo = flag(lo)?;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= 4.0 * f64::EPSILON * mid.abs().max(1.0) {
            break;
        }
        if flag(mid)? == at_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Grows a bracket around `guess` inside `outer` until `flag` differs at its ends.
fn rebracket(
    guess: f64,
    outer: (f64, f64),
    mut flag: impl FnMut(f64) -> Result<bool>,
) -> Result<f64> {
    let mut delta = 1e-7 * guess.abs().max(1.0);
    loop {
        let lo = (guess - delta).max(outer.0);
        let hi = (guess + delta).min(outer.1);
        if flag(lo)? != flag(hi)? {
            return bisect_flag(lo, hi, flag);
        }
        if lo <= outer.0 && hi >= outer.1 {
            return Err(Error::Completeness(format!(
                "zero mode near a = {guess} lost on grid refinement"
            )));
        }
        delta *= 8.0;
    }
}

pub fn find_zero_mode_depths(
    family: ZeroModeFamily,
    search: (f64, f64),
    parity: Option<Parity>,
) -> Result<Vec<ZeroModeDepth>> {
    find_zero_mode_depths_with(family, search, parity, &ShootConfig::default())
}

/// Scans the family coefficient at `E = 0` for steps in the state count of
/// each parity; every step is a zero mode. Depths are bisected on the
/// configured grid and on two halvings, then Richardson-extrapolated.
/// Results come ordered by node count, i.e. from the shallowest well.
pub fn find_zero_mode_depths_with(
    family: ZeroModeFamily,
    search: (f64, f64),
    parity: Option<Parity>,
    cfg: &ShootConfig,
) -> Result<Vec<ZeroModeDepth>> {
    find_with_sign(family, search, parity, cfg, C_TERM_SIGN)
}

fn find_with_sign(
    family: ZeroModeFamily,
    search: (f64, f64),
    parity: Option<Parity>,
    cfg: &ShootConfig,
    sign: f64,
) -> Result<Vec<ZeroModeDepth>> {
    cfg.validate()?;
    let (lo, hi) = search_bounds(search)?;
    let m = (cfg.n - 1) / 2;
    let count = |a: f64, half: usize, parity: Parity| -> Result<usize> {
        let p = family.params_with_sign(a, sign)?;
        ZShooter::new(&p, half, cfg.eps).count(0.0, parity)
    };
    let mut found = Vec::new();
    for parity in parities(parity) {
        let mesh: Vec<f64> = (0..=SCAN_CELLS)
            .map(|i| lo + (hi - lo) * i as f64 / SCAN_CELLS as f64)
            .collect();
        let counts = mesh
            .iter()
            .map(|&a| count(a, m, parity))
            .collect::<Result<Vec<_>>>()?;
        for i in 0..SCAN_CELLS {
            let (c0, c1) = (counts[i], counts[i + 1]);
            for j in c0.min(c1)..c0.max(c1) {
                let above = |half: usize| move |a: f64| Ok(count(a, half, parity)? > j);
                let a1 = bisect_flag(mesh[i], mesh[i + 1], above(m))?;
                let a2 = rebracket(a1, (lo, hi), above(2 * m))?;
                let a4 = rebracket(a2, (lo, hi), above(4 * m))?;
                found.push(ZeroModeDepth {
                    a: richardson4(a2, a4),
                    parity,
                    nodes: 2 * j + usize::from(parity == Parity::Antisymmetric),
                });
            }
        }
    }
    found.sort_by(|x, y| x.nodes.cmp(&y.nodes).then(x.a.total_cmp(&y.a)));
    Ok(found)
}

/// Determines the sign of the `C` term by locating the nodeless symmetric
/// `C = 2` zero mode under both candidate signs and keeping the one that
/// lands on the reference depth.
pub fn calibrate_c_term_sign() -> Result<f64> {
    let family = ZeroModeFamily::Sech64PlusC(CALIBRATION_C);
    let cfg = ShootConfig::default();
    for sign in [1.0, -1.0] {
        let depths = find_with_sign(family, (-60.0, 0.0), Some(Parity::Symmetric), &cfg, sign)?;
        if let Some(first) = depths.first() {
            if (first.a - CALIBRATION_DEPTH).abs() <= CALIBRATION_TOL * CALIBRATION_DEPTH.abs() {
                return Ok(sign);
            }
        }
    }
    Err(Error::Completeness(
        "neither sign of the sech^2 term reproduces the calibration depth".into(),
    ))
}

/// A constant-mass threshold resonance: at `E = 0` the even or odd solution
/// tends to a constant instead of growing linearly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdResonance {
    pub a: f64,
    pub parity: Parity,
    /// `|chi(X)| / max|chi|` at the end of the integration range; a
    /// normalizable zero mode would need this below [`ZERO_MODE_DECAY_TOL`].
    pub decay_ratio: f64,
}

impl ThresholdResonance {
    pub fn is_zero_mode(&self) -> bool {
        self.decay_ratio <= ZERO_MODE_DECAY_TOL
    }
}

const THRESHOLD_RANGE: f64 = 20.0;
const THRESHOLD_STEP: f64 = 0.005;

/// Slope of the asymptote `chi ~ alpha + beta x` and the decay ratio of the
/// constant-mass `E = 0` solution with parity initial data at the origin.
fn threshold_asymptote(p: &PotentialParams, parity: Parity) -> Result<(f64, f64)> {
    let n = (THRESHOLD_RANGE / THRESHOLD_STEP).round() as usize;
    let h = THRESHOLD_RANGE / n as f64;
    let f: Vec<f64> = (0..=n).map(|i| potential_at(p, i as f64 * h)).collect();
    let k = h * h / 12.0;
    let seed = match parity {
        // Numerov at the origin with chi(-h) = chi(h).
        Parity::Symmetric => [1.0, (2.0 + 10.0 * k * f[0]) / (2.0 * (1.0 - k * f[1]))],
        Parity::Antisymmetric => [0.0, h],
    };
    let y = sweep(&f, h, &seed)?;
    let beta = (y[n] - y[n - 1]) / h;
    let scale = y.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    Ok((beta / scale, y[n].abs() / scale))
}

/// Constant-mass analogue of the zero-mode search: brackets the depths where
/// the `E = 0` asymptotic slope vanishes and reports how strongly the
/// solution decays there.
pub fn cm_threshold_scan(
    family: ZeroModeFamily,
    search: (f64, f64),
    parity: Option<Parity>,
) -> Result<Vec<ThresholdResonance>> {
    let (lo, hi) = search_bounds(search)?;
    let slope = |a: f64, parity: Parity| -> Result<f64> {
        Ok(threshold_asymptote(&family.params(a)?, parity)?.0)
    };
    let mut out = Vec::new();
    for parity in parities(parity) {
        let mesh: Vec<f64> = (0..=SCAN_CELLS)
            .map(|i| lo + (hi - lo) * i as f64 / SCAN_CELLS as f64)
            .collect();
        let slopes = mesh
            .iter()
            .map(|&a| slope(a, parity))
            .collect::<Result<Vec<_>>>()?;
        for i in 0..SCAN_CELLS {
            if (slopes[i] > 0.0) != (slopes[i + 1] > 0.0) {
                let a = bisect_flag(mesh[i], mesh[i + 1], |a| Ok(slope(a, parity)? > 0.0))?;
                let (_, decay_ratio) = threshold_asymptote(&family.params(a)?, parity)?;
                out.push(ThresholdResonance {
                    a,
                    parity,
                    decay_ratio,
                });
            }
        }
    }
    out.sort_by(|x, y| x.a.total_cmp(&y.a));
    Ok(out)
}
