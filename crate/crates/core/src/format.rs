//! Fixed-precision rendering of reported numbers.

use crate::scalar::Real;

/// Rounds to 9 significant digits; `-0` becomes `0`.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    let r: f64 = format!("{x:.8e}").parse().expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Shortest decimal text of `x` rounded to 9 significant digits.
pub fn fmt_sig<T: Real>(x: T) -> String {
    format!("{}", round_sig(x.to_f64_lossy()))
}
