//! JSON number formatting with a fixed, lossless representation.
//!
//! Every floating-point value leaving this crate as JSON is rendered with
//! 17 significant digits (`{:.16e}`), which round-trips any f64 exactly and
//! keeps emitted bytes reproducible across runs.

use std::str::FromStr;

use serde_json::{Number, Value};

/// Renders an f64 with 17 significant digits in scientific notation.
pub fn fmt_f64(x: f64) -> String {
    format!("{:.16e}", x)
}

/// A JSON number carrying exactly the 17-digit rendering of `x`.
///
/// Panics on non-finite input; the crate's constructors keep NaN and
/// infinity out of every value that can reach serialization.
pub fn number(x: f64) -> Value {
    assert!(x.is_finite(), "non-finite value reached JSON output");
    Value::Number(Number::from_str(&fmt_f64(x)).expect("{:.16e} renders a valid JSON number"))
}

/// A JSON array [re, im] for a complex amplitude.
pub fn complex(z: num_complex::Complex64) -> Value {
    Value::Array(vec![number(z.re), number(z.im)])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_round_trip_exactly() {
        for x in [0.0, -0.5, 1.0 / 3.0, 35.0 / 74.0, 1e-300, -123456.789] {
            let v = number(x);
            let s = serde_json::to_string(&v).unwrap();
            let back: f64 = serde_json::from_str(&s).unwrap();
            assert_eq!(back, x);
        }
    }

    #[test]
    fn rendering_is_stable() {
        assert_eq!(fmt_f64(0.5), "5.0000000000000000e-1");
        assert_eq!(
            serde_json::to_string(&number(35.0 / 74.0)).unwrap(),
            "4.7297297297297297e-1"
        );
    }
}
