//! Power unit conversions.

/// Mcal/h per kW as used for display. The physical value is
/// 0.859845 Mcal/(h*kW); 0.86 is the rounded factor that heating catalogs
/// quote, and it reproduces the published `11.285 kW (9.7051 MCal)` pair.
pub const MCAL_PER_KW: f64 = 0.86;

pub const WATTS_PER_KILOWATT: f64 = 1000.0;

/// Converts kW to Mcal/h.
pub fn kw_to_mcal(power_kw: f64) -> f64 {
    power_kw * MCAL_PER_KW
}

pub fn watts_to_kw(power_w: f64) -> f64 {
    power_w / WATTS_PER_KILOWATT
}
