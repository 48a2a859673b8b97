//! Level location for nondecreasing counting functions: `count(E)` is the
//! number of levels strictly below `E`, so level `k` sits where the count
//! steps from `k` to `k + 1`.

use crate::error::{Error, Result};

/// Cells of the coarse scan across a search window.
pub(crate) const SCAN_CELLS: usize = 400;

#[derive(Debug, Clone, Copy)]
pub(crate) struct Level {
    pub index: usize,
    pub lo: f64,
    pub hi: f64,
}

/// Scans `[lo, hi]` on a uniform mesh and returns one bracket per level.
/// A cell holding several levels yields several (identical) brackets; the
/// bisection on the count separates them.
pub(crate) fn bracket_levels<F>(lo: f64, hi: f64, cells: usize, mut count: F) -> Result<Vec<Level>>
where
    F: FnMut(f64) -> Result<usize>,
{
    if !(lo < hi) {
        return Ok(Vec::new());
    }
    let mesh: Vec<f64> = (0..=cells)
        .map(|i| if i == cells { hi } else { lo + (hi - lo) * i as f64 / cells as f64 })
        .collect();
    let counts = mesh.iter().map(|&e| count(e)).collect::<Result<Vec<_>>>()?;
    let mut levels = Vec::new();
    for i in 0..cells {
        let (c0, c1) = (counts[i], counts[i + 1]);
        if c1 < c0 {
            return Err(Error::Completeness(format!(
                "level count drops from {c0} to {c1} between E = {} and {}",
                mesh[i],
                mesh[i + 1]
            )));
        }
        levels.extend((c0..c1).map(|index| Level {
            index,
            lo: mesh[i],
            hi: mesh[i + 1],
        }));
    }
    Ok(levels)
}

/// Bisection for the step of level `index`, given `count(lo) <= index < count(hi)`.
pub(crate) fn bisect_level<F>(index: usize, mut lo: f64, mut hi: f64, mut count: F) -> Result<f64>
where
    F: FnMut(f64) -> Result<usize>,
{
    let (c_lo, c_hi) = (count(lo)?, count(hi)?);
    if !(c_lo <= index && index < c_hi) {
        return Err(Error::Completeness(format!(
            "level {index} is not bracketed by [{lo}, {hi}] (counts {c_lo}, {c_hi})"
        )));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= 4.0 * f64::EPSILON * mid.abs().max(1.0) {
            break;
        }
        if count(mid)? > index {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Re-locates level `index` near `guess` (typically the value on a coarser
/// grid) by growing a bracket inside `outer` until the count straddles it.
pub(crate) fn refine_level<F>(index: usize, guess: f64, outer: (f64, f64), mut count: F) -> Result<f64>
where
    F: FnMut(f64) -> Result<usize>,
{
    let mut delta = 1e-6 * guess.abs().max(1.0);
    let mut lo = (guess - delta).max(outer.0);
    loop {
        if count(lo)? <= index {
            break;
        }
        if lo <= outer.0 {
            return Err(Error::Completeness(format!(
                "level {index} moved below the bracket [{}, {}]",
                outer.0, outer.1
            )));
        }
        delta *= 8.0;
        lo = (guess - delta).max(outer.0);
    }
    delta = 1e-6 * guess.abs().max(1.0);
    let mut hi = (guess + delta).min(outer.1);
    loop {
        if count(hi)? > index {
            break;
        }
        if hi >= outer.1 {
            return Err(Error::Completeness(format!(
                "level {index} moved above the bracket [{}, {}]",
                outer.0, outer.1
            )));
        }
        delta *= 8.0;
        hi = (guess + delta).min(outer.1);
    }
    bisect_level(index, lo, hi, count)
}

/// Fourth-order Richardson step from grids `h` and `h/2`.
pub(crate) fn richardson4(coarse: f64, fine: f64) -> f64 {
    fine + (fine - coarse) / 15.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn staircase_levels_are_found() {
        let levels = [-7.25, -3.0, -2.999, 0.5];
        let count = |e: f64| Ok(levels.iter().filter(|&&l| l < e).count());
        let brackets = bracket_levels(-10.0, 1.0, 40, count).unwrap();
        assert_eq!(brackets.len(), 4);
        for (b, want) in brackets.iter().zip(levels) {
            let e = bisect_level(b.index, b.lo, b.hi, count).unwrap();
            assert!((e - want).abs() < 1e-14, "{e} vs {want}");
            let r = refine_level(b.index, want + 1e-3, (-10.0, 1.0), count).unwrap();
            assert!((r - want).abs() < 1e-14);
        }
    }

    #[test]
    fn decreasing_count_is_an_error() {
        let count = |e: f64| Ok(if e < 0.0 { 2 } else { 1 });
        assert!(matches!(
            bracket_levels(-1.0, 1.0, 10, count),
            Err(Error::Completeness(_))
        ));
    }
}
