//! OEIS b-file export (`n value` per line, 1-indexed) and import of
//! primitive sequences from plain text (one integer per line).

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::{Int, Natural};

/// Write `1 v1`, `2 v2`, ... with a single space separator, one entry per
/// line, newline-terminated.
pub fn write_bfile<W: Write>(
    mut w: W,
    entries: impl IntoIterator<Item = (u64, Natural)>,
) -> std::io::Result<()> {
    for (n, v) in entries {
        writeln!(w, "{n} {v}")?;
    }
    Ok(())
}

/// Read one integer per line (ASCII decimal, optional leading `-`); blank
/// lines and `#` comments are skipped.
pub fn read_integer_lines<R: BufRead>(r: R) -> Result<Vec<Int>> {
    let mut out = Vec::new();
    for (idx, line) in r.lines().enumerate() {
        let line = line.map_err(|e| Error::Parse {
            line: idx + 1,
            details: e.to_string(),
        })?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let v: Int = t.parse().map_err(|e| Error::Parse {
            line: idx + 1,
            details: format!("{e}: {t:?}"),
        })?;
        out.push(v);
    }
    Ok(out)
}
