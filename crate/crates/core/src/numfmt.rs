//! Deterministic float formatting for CSV/JSON emission.
//!
//! All user-facing numbers are rounded to 12 significant digits before
//! printing so that outputs are byte-identical across platforms even when
//! the underlying floats differ in the last few ulps.

/// Number of significant digits used by every emitter in this crate.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// Formats `x` with [`SIGNIFICANT_DIGITS`] significant digits, trimming
/// trailing zeros (printf `%.12g` style).
pub fn format_amplitude(x: f64) -> String {
    format_significant(x, SIGNIFICANT_DIGITS)
}

/// Rounds `x` to [`SIGNIFICANT_DIGITS`] significant digits.
///
/// Used before handing values to JSON serializers so the emitted number
/// matches the formatted string representation.
pub fn round_amplitude(x: f64) -> f64 {
    format_amplitude(x).parse().expect("formatted float reparses")
}

/// Formats `x` with `sig` significant digits.
///
/// Plain decimal notation is used for exponents in `[-4, sig)`, scientific
/// notation otherwise; trailing fractional zeros are trimmed in both.
pub fn format_significant(x: f64, sig: usize) -> String {
    assert!(sig >= 1);
    if x == 0.0 {
        return "0".to_owned();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    // Round to `sig` digits via scientific formatting, then re-render.
    let sci = format!("{:.*e}", sig - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific notation");
    let exp: i32 = exp.parse().expect("exponent parses");
    if exp >= -4 && exp < sig as i32 {
        let rounded: f64 = sci.parse().expect("scientific float reparses");
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        trim_fraction(&format!("{rounded:.decimals$}"))
    } else {
        format!("{}e{}", trim_fraction(mantissa), exp)
    }
}

fn trim_fraction(s: &str) -> String {
    if !s.contains('.') {
        return s.to_owned();
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    t.to_owned()
}
