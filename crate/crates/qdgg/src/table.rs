//! The Theorem 1 identity table as CSV.

use std::io::Write;

use qdgg_core::QDGGPair;

use crate::error::Result;
use crate::format::compact;

/// Rows `n, Σ f f′, rⁿ[n]_q!, equal` for `n = 0..=n_max`. Returns whether
/// every row is equal.
pub fn write_identity_table<P, W: Write>(pair: &QDGGPair<P>, n_max: usize, out: W) -> Result<bool> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(["n", "lhs", "rhs", "equal"])?;
    let mut all = true;
    for report in pair.check_theorem_all(n_max)? {
        let equal = report.passed();
        all &= equal;
        writer.write_record([
            report.n.to_string(),
            compact(&report.lhs),
            compact(&report.rhs),
            equal.to_string(),
        ])?;
    }
    writer.flush()?;
    Ok(all)
}
