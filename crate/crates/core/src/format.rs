//! Fixed 12-significant-digit number formatting shared by the CLI and CSV
//! writers. Independent of locale.

/// Significant digits in every emitted number.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// Formats `x` with 12 significant digits in positional notation, falling back
/// to scientific notation outside `[1e-5, 1e15)`. Negative zero prints as zero.
pub fn sig12(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return format!("{:.*}", SIGNIFICANT_DIGITS - 1, 0.0);
    }
    // rounding to 12 digits can bump the exponent (9.999…→10.0), so read it
    // back from the rounded scientific form
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let exponent: i32 = sci
        .rsplit('e')
        .next()
        .and_then(|e| e.parse().ok())
        .expect("scientific format has an exponent");
    if !(-5..15).contains(&exponent) {
        return sci;
    }
    let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exponent).max(0) as usize;
    format!("{:.*}", decimals, x)
}
