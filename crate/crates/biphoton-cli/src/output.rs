//! CSV and JSON writers. Curves serialize with a small comment header so a
//! file is self-describing; numeric formatting is fixed-width scientific so
//! reruns of the same configuration are byte-identical.

use std::path::Path;

use biphoton::distribution::Distribution1D;

use crate::CliError;

pub fn curve_csv(curve: &Distribution1D) -> String {
    let meta = curve.metadata();
    let mut text = String::new();
    text.push_str(&format!("# label: {}\n", meta.label));
    text.push_str(&format!("# axis: {:?}\n", curve.axis()));
    text.push_str(&format!("# unit: {}\n", curve.unit()));
    for warning in &meta.warnings {
        text.push_str(&format!("# warning: {warning}\n"));
    }
    text.push_str("coordinate,value\n");
    for &(coordinate, value) in curve.samples() {
        text.push_str(&format!("{coordinate:.9e},{value:.9e}\n"));
    }
    text
}

pub fn write_curve_csv(path: &Path, curve: &Distribution1D) -> Result<(), CliError> {
    std::fs::write(path, curve_csv(curve))?;
    Ok(())
}

/// Plain table with a one-line header; used for sweep outputs.
pub fn write_table(path: &Path, header: &str, rows: &[Vec<f64>]) -> Result<(), CliError> {
    let mut text = String::new();
    text.push_str(header);
    text.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:.9e}")).collect();
        text.push_str(&cells.join(","));
        text.push('\n');
    }
    std::fs::write(path, text)?;
    Ok(())
}

pub fn write_json(path: &Path, value: &serde_json::Value) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Io(e.to_string()))?;
    std::fs::write(path, text + "\n")?;
    Ok(())
}

/// Minimal gnuplot script plotting every listed CSV on one canvas.
pub fn write_gnuplot(path: &Path, title: &str, files: &[(String, String)]) -> Result<(), CliError> {
    let mut text = String::new();
    text.push_str("set datafile separator ','\n");
    text.push_str(&format!("set title '{title}'\n"));
    text.push_str("set key outside\n");
    let plots: Vec<String> = files
        .iter()
        .map(|(file, label)| format!("'{file}' using 1:2 with lines title '{label}'"))
        .collect();
    text.push_str(&format!("plot {}\n", plots.join(", \\\n     ")));
    text.push_str("pause -1\n");
    std::fs::write(path, text)?;
    Ok(())
}
