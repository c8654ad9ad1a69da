//! Shared text-output helpers for the CSV and JSON export surfaces.

/// Formats a float with 12 significant digits in scientific notation.
/// Used for every angle/ratio column so exports are byte-stable.
pub(crate) fn sig12(x: f64) -> String {
    format!("{x:.11e}")
}
