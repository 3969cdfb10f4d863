//! CSV and Markdown writers.

use std::io::Write;

use crate::experiments::{Product, Row};
use crate::references::Provenance;
use crate::BenchError;

pub const CSV_HEADER: [&str; 11] =
    ["experiment", "cell", "pair", "product", "n", "sigma", "computed", "reference", "abs_error", "runtime_ms", "status"];

/// 17 significant digits, enough to round-trip an `f64`.
pub fn fmt_real(x: f64) -> String {
    if x.is_nan() {
        String::new()
    } else {
        format!("{x:.16e}")
    }
}

fn status(row: &Row) -> String {
    match &row.failure {
        Some(msg) => format!("failed: {msg}"),
        None => "ok".into(),
    }
}

/// Writes rows as CSV. With `timing` off the runtime column is zero so
/// reruns produce identical bytes.
pub fn write_csv<W: Write>(out: W, rows: &[Row], timing: bool) -> Result<(), BenchError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        let runtime = if timing { format!("{:.3}", r.runtime_ms) } else { "0".into() };
        w.write_record([
            r.experiment.name().to_string(),
            r.cell.clone(),
            r.pair.clone(),
            r.product.name().to_string(),
            r.n.to_string(),
            r.sigma.to_string(),
            fmt_real(r.computed),
            fmt_real(r.reference.value),
            r.abs_error.map_or_else(String::new, fmt_real),
            runtime,
            status(r),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn short(x: Option<f64>) -> String {
    x.map_or_else(|| "—".into(), |v| format!("{v:.4e}"))
}

fn reference_note(row: &Row) -> String {
    match row.reference.provenance {
        Provenance::Exact => format!("{} (exact)", fmt_real(row.reference.value)),
        Provenance::Series { truncation, tail_bound } => {
            format!("{} (series, K = {truncation}, tail ≤ {tail_bound:.1e})", fmt_real(row.reference.value))
        }
        Provenance::None => "none".into(),
    }
}

/// One table per cell in the layout `pair | n | L² | L² error | H¹ | H¹ error`.
/// The error columns hold successive differences when there is no reference.
pub fn write_markdown<W: Write>(mut out: W, rows: &[Row]) -> Result<(), BenchError> {
    let mut cells: Vec<&str> = Vec::new();
    for r in rows {
        if !cells.contains(&r.cell.as_str()) {
            cells.push(&r.cell);
        }
    }
    for cell in cells {
        let of_cell: Vec<&Row> = rows.iter().filter(|r| r.cell == cell).collect();
        let experiment = of_cell[0].experiment;
        writeln!(out, "## {experiment}: {cell}\n")?;
        writeln!(out, "| pair | n | L² | L² error | H¹ | H¹ error |")?;
        writeln!(out, "|---|---|---|---|---|---|")?;
        let mut keys: Vec<(&str, usize)> = Vec::new();
        for r in &of_cell {
            if !keys.contains(&(r.pair.as_str(), r.n)) {
                keys.push((&r.pair, r.n));
            }
        }
        let mut notes: Vec<String> = Vec::new();
        for (pair, n) in keys {
            let get = |p: Product| of_cell.iter().find(|r| r.pair == pair && r.n == n && r.product == p);
            let value = |p: Product| match get(p) {
                Some(r) if r.failure.is_some() => "failed".to_string(),
                Some(r) => format!("{:.10e}", r.computed),
                None => "—".into(),
            };
            let err = |p: Product| short(get(p).and_then(|r| r.abs_error));
            writeln!(out, "| {pair} | {n} | {} | {} | {} | {} |", value(Product::L2), err(Product::L2), value(Product::H1), err(Product::H1))?;
            for p in [Product::L2, Product::H1] {
                if let Some(r) = get(p) {
                    let note = format!("- {pair} {}: {}", p.name(), reference_note(r));
                    if !notes.contains(&note) {
                        notes.push(note);
                    }
                }
            }
        }
        writeln!(out, "\nReferences:\n")?;
        for note in notes {
            writeln!(out, "{note}")?;
        }
        writeln!(out)?;
    }
    Ok(())
}
