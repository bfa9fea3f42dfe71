//! Shared formatting for witness-carrying verification reports.

use std::fmt;

pub(crate) fn write_findings<T: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    what: &str,
    items: &[T],
) -> fmt::Result {
    if items.is_empty() {
        return write!(f, "ok");
    }
    writeln!(f, "{} {what} violation(s):", items.len())?;
    for v in items.iter().take(16) {
        writeln!(f, "  {v}")?;
    }
    if items.len() > 16 {
        writeln!(f, "  ... and {} more", items.len() - 16)?;
    }
    Ok(())
}
