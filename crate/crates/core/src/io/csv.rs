//! Minimal CSV writer/reader for per-element scalar tables.
//!
//! Rows are `(integer id, values...)`, emitted in ascending id order with a
//! header row. Values are printed with 6 significant digits and a plain
//! decimal point regardless of locale.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};

/// Format with `sig` significant digits, plain decimal where reasonable.
pub fn format_sig(value: f64, sig: usize) -> String {
    if value == 0.0 {
        return "0".into();
    }
    if !value.is_finite() {
        return format!("{value}");
    }
    let exp = value.abs().log10().floor() as i32;
    if (-4..sig as i32).contains(&exp) {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        format!("{value:.decimals$}")
    } else {
        format!("{value:.*e}", sig - 1)
    }
}

/// Write `(id, values...)` rows sorted by id under the given header.
pub fn write_csv(path: impl AsRef<Path>, header: &[&str], rows: &[(u64, Vec<f64>)]) -> Result<()> {
    let mut sorted: Vec<&(u64, Vec<f64>)> = rows.iter().collect();
    sorted.sort_by_key(|r| r.0);
    let file = File::create(path)?;
    let mut w = BufWriter::new(file);
    writeln!(w, "{}", header.join(","))?;
    for (id, values) in sorted {
        write!(w, "{id}")?;
        for v in values {
            write!(w, ",{}", format_sig(*v, 6))?;
        }
        writeln!(w)?;
    }
    w.flush()?;
    Ok(())
}

/// Header names and `(id, values...)` rows of a CSV table.
pub type CsvTable = (Vec<String>, Vec<(u64, Vec<f64>)>);

/// Read a CSV written by [`write_csv`]: returns the header and the rows.
pub fn read_csv(path: impl AsRef<Path>) -> Result<CsvTable> {
    let file = File::open(path)?;
    let reader = BufReader::new(file);
    let mut lines = reader.lines();
    let header_line = lines.next().ok_or(Error::EmptyInput)??;
    let header: Vec<String> = header_line.split(',').map(str::to_string).collect();
    let mut rows = Vec::new();
    for (line_no, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let mut fields = line.split(',');
        let id: u64 = fields
            .next()
            .unwrap()
            .trim()
            .parse()
            .map_err(|e| Error::Parse {
                line: line_no + 2,
                message: format!("bad id: {e}"),
            })?;
        let values: std::result::Result<Vec<f64>, _> =
            fields.map(|f| f.trim().parse::<f64>()).collect();
        let values = values.map_err(|e| Error::Parse {
            line: line_no + 2,
            message: format!("bad value: {e}"),
        })?;
        rows.push((id, values));
    }
    Ok((header, rows))
}
