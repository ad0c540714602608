//! Serialization, rendering and the command-line front end.

pub mod cli;
pub mod document;
pub mod render;

use num_rational::Ratio;

pub use document::{BroadcastDocument, DocumentError};

/// Renders a nonnegative rational with `places` decimals, rounding half up.
pub fn format_decimal(value: Ratio<i64>, places: u32) -> String {
    assert!(*value.numer() >= 0 && *value.denom() > 0, "negative ratio {value}");
    let scale = 10i128.pow(places);
    let (num, den) = (i128::from(*value.numer()), i128::from(*value.denom()));
    let scaled = (2 * num * scale + den) / (2 * den);
    if places == 0 {
        return scaled.to_string();
    }
    format!("{}.{:0width$}", scaled / scale, scaled % scale, width = places as usize)
}
