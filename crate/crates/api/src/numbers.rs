//! Decimal rounding for values shown to users.
//!
//! Values are rounded from their shortest round-trip decimal form, so
//! `8.145059999999999` (the binary result of `9.471 * 0.86`) is treated as
//! the decimal it prints as, and ties go to the even digit.

use std::str::FromStr;

use rust_decimal::{Decimal, RoundingStrategy};

/// Fractional digits for powers (kW, Mcal/h).
pub const POWER_DP: u32 = 4;
/// Fractional digits for every other number in a response.
pub const DEFAULT_DP: u32 = 6;

fn to_decimal(value: f64) -> Option<Decimal> {
    Decimal::from_str(&value.to_string()).ok()
}

fn rounded(value: f64, dp: u32) -> Option<Decimal> {
    to_decimal(value).map(|d| d.round_dp_with_strategy(dp, RoundingStrategy::MidpointNearestEven))
}

/// Rounds half-even to `dp` fractional digits. Values outside the decimal
/// range are returned unchanged.
pub fn round_half_even(value: f64, dp: u32) -> f64 {
    match rounded(value, dp) {
        Some(d) => {
            let r: f64 = d.to_string().parse().expect("decimal prints as a float");
            // avoid "-0.0" in output
            if r == 0.0 {
                0.0
            } else {
                r
            }
        }
        None => value,
    }
}

/// Formats with exactly `dp` fractional digits after half-even rounding.
pub fn format_fixed(value: f64, dp: u32) -> String {
    match rounded(value, dp) {
        Some(mut d) => {
            if d.is_zero() {
                d.set_sign_positive(true);
            }
            d.rescale(dp);
            d.to_string()
        }
        None => format!("{value:.*}", dp as usize),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn published_values() {
        assert_eq!(format_fixed(11.285 * 0.86, 4), "9.7051");
        assert_eq!(format_fixed(9.471, 4), "9.4710");
        assert_eq!(format_fixed(9.471 * 0.86, 4), "8.1451");
    }

    #[test]
    fn ties_go_even() {
        assert_eq!(format_fixed(0.00005, 4), "0.0000");
        assert_eq!(format_fixed(0.00015, 4), "0.0002");
        assert_eq!(format_fixed(2.5, 0), "2");
        assert_eq!(round_half_even(1.23445, 4), 1.2344);
    }

    #[test]
    fn zero_and_negative() {
        assert_eq!(format_fixed(0.0, 4), "0.0000");
        assert_eq!(format_fixed(-0.00001, 4), "0.0000");
        assert_eq!(round_half_even(-0.00001, 4).to_bits(), 0.0f64.to_bits());
        assert_eq!(format_fixed(-1.5, 4), "-1.5000");
    }

    #[test]
    fn six_digits() {
        assert_eq!(round_half_even(359.79999999999995, DEFAULT_DP), 359.8);
        assert_eq!(round_half_even(0.59, DEFAULT_DP), 0.59);
    }
}
