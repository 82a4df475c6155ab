//! CSV/TSV emission helpers: deterministic formatting, header and comment
//! lines, and the per-series schemas.

use std::io::{self, Write};

use farey_core::products::{LogSeries, ValuationSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Tsv,
}

impl Format {
    pub fn sep(self) -> char {
        match self {
            Format::Csv => ',',
            Format::Tsv => '\t',
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Tsv => "tsv",
        }
    }
}

/// Formats a float with 12 significant digits, plain decimal notation.
pub fn fmt_sig12(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let exp = v.abs().log10().floor() as i32;
    let decimals = (11 - exp).clamp(0, 17) as usize;
    format!("{:.*}", decimals, v)
}

/// Writes the `# tool version | config` comment followed by the header row.
pub fn preamble(w: &mut dyn Write, config: &str, format: Format, header: &[&str]) -> io::Result<()> {
    writeln!(w, "# farey v{} | {}", env!("CARGO_PKG_VERSION"), config)?;
    writeln!(w, "{}", header.join(&format.sep().to_string()))
}

pub fn write_row(w: &mut dyn Write, format: Format, fields: &[String]) -> io::Result<()> {
    writeln!(w, "{}", fields.join(&format.sep().to_string()))
}

/// `n,value` rows of a valuation series.
pub fn write_valuation_series(
    w: &mut dyn Write,
    config: &str,
    format: Format,
    series: &ValuationSeries,
) -> io::Result<()> {
    preamble(w, config, format, &["n", "value"])?;
    for (i, v) in series.values.iter().enumerate() {
        write_row(w, format, &[(series.start + i as u64).to_string(), v.to_string()])?;
    }
    Ok(())
}

/// `n,log_value,err_bound` rows of a log series.
pub fn write_log_series(
    w: &mut dyn Write,
    config: &str,
    format: Format,
    series: &LogSeries,
) -> io::Result<()> {
    preamble(w, config, format, &["n", "log_value", "err_bound"])?;
    for (i, v) in series.values.iter().enumerate() {
        write_row(
            w,
            format,
            &[
                (series.start + i as u64).to_string(),
                fmt_sig12(*v),
                fmt_sig12(series.accumulation_error_bound),
            ],
        )?;
    }
    Ok(())
}
