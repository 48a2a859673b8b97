//! Named potential families and their mapping onto the canonical
//! coefficients of `V = -a sech^6 - b sech^4 - c sech^2`. Every
//! caption-style convention is translated here and nowhere else.

use clap::ValueEnum;
use pdm_core::spectral::ZeroModeFamily;
use pdm_core::PotentialParams;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// `--A --B --C` are the canonical coefficients.
    General,
    /// `V = -B sech^4 - C sech^2`; `A` must be absent or zero.
    Manning,
    /// `V = -A sech^6`.
    Sech6,
    /// `V = -A (sech^6 - sech^4) - C sech^2`, the zero-mode family.
    Sech64,
    /// Zero central barrier: `B = -sqrt(4 A C)`.
    Triple,
}

impl std::str::FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <Family as ValueEnum>::from_str(s, true)
    }
}

/// Coefficients as given on the command line or in a config file.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Coefficients {
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub c: Option<f64>,
}

fn forbid(family: Family, name: &str, v: Option<f64>) -> CliResult<()> {
    match v {
        Some(x) if x != 0.0 => Err(CliError::Usage(format!(
            "--{name} is not a free coefficient of the {family:?} family"
        ))),
        _ => Ok(()),
    }
}

pub fn potential(family: Family, k: Coefficients) -> CliResult<PotentialParams> {
    let (a, b, c) = (k.a.unwrap_or(0.0), k.b.unwrap_or(0.0), k.c.unwrap_or(0.0));
    let p = match family {
        Family::General => PotentialParams::new(a, b, c)?,
        Family::Manning => {
            forbid(family, "A", k.a)?;
            PotentialParams::manning(b, c)?
        }
        Family::Sech6 | Family::Sech64 => {
            forbid(family, "B", k.b)?;
            zero_mode_family(family, k.c)?.params(a)?
        }
        Family::Triple => {
            forbid(family, "B", k.b)?;
            PotentialParams::zero_barrier_triple(a, c)?
        }
    };
    Ok(p)
}

/// The one-parameter family scanned in `A` by `zeromodes`.
pub fn zero_mode_family(family: Family, c: Option<f64>) -> CliResult<ZeroModeFamily> {
    match family {
        Family::Sech6 => {
            forbid(family, "C", c)?;
            Ok(ZeroModeFamily::Sech6)
        }
        Family::Sech64 => Ok(match c.unwrap_or(0.0) {
            0.0 => ZeroModeFamily::Sech64,
            c => ZeroModeFamily::Sech64PlusC(c),
        }),
        other => Err(CliError::Usage(format!(
            "zero-mode scans need --family sech6 or sech64, got {other:?}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(a: Option<f64>, b: Option<f64>, c: Option<f64>) -> Coefficients {
        Coefficients { a, b, c }
    }

    #[test]
    fn manning_keeps_canonical_signs() {
        let p = potential(Family::Manning, k(None, Some(-500.0), Some(500.0))).unwrap();
        assert_eq!((p.a, p.b, p.c), (0.0, -500.0, 500.0));
        assert!(potential(Family::Manning, k(Some(1.0), None, None)).is_err());
    }

    #[test]
    fn sech64_maps_onto_the_zero_mode_family() {
        let p = potential(Family::Sech64, k(Some(-25.0), None, Some(2.0))).unwrap();
        let q = ZeroModeFamily::Sech64PlusC(2.0).params(-25.0).unwrap();
        assert_eq!(p, q);
        assert_eq!(p.b, 25.0);
    }

    #[test]
    fn triple_has_zero_barrier() {
        let p = potential(Family::Triple, k(Some(800.0), None, Some(449.0))).unwrap();
        assert!((p.b + (4.0f64 * 800.0 * 449.0).sqrt()).abs() < 1e-12);
        assert!(potential(Family::Triple, k(Some(800.0), Some(1.0), Some(449.0))).is_err());
    }

    #[test]
    fn zero_mode_scans_reject_other_families() {
        assert!(zero_mode_family(Family::Manning, None).is_err());
        assert!(zero_mode_family(Family::Sech6, Some(1.0)).is_err());
    }
}
