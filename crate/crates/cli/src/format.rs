//! Locale-free number formatting shared by every table and CSV.

/// Twelve significant digits. Positional for `1e-4 <= |v| < 1e12`,
/// `d.ddddddddddde±XX` otherwise; `-0` prints as `0`.
pub fn fmt12(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let mag = v.abs();
    if (1e-4..1e12).contains(&mag) {
        let exp = mag.log10().floor() as i32;
        let decimals = (11 - exp).max(0) as usize;
        let s = format!("{v:.decimals$}");
        // A rounding carry can add a thirteenth digit.
        return s;
    }
    let s = format!("{v:.11e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    format!("{mantissa}e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs())
}
