//! Output formatting. Everything here writes to one sink, so a command
//! renders only after all its parallel work has finished.

use std::io::Write;

use num_bigint::BigInt;
use serde::Serialize;

use super::{CliResult, Format};
use crate::error::Error;
use crate::oracle::Enumerator;

/// Coefficient list as space-separated decimals, trailing zeros dropped.
pub(crate) fn coeff_line(e: &Enumerator) -> String {
    let len = e.poly.degree().map_or(1, |d| d + 1);
    e.padded_coeffs(len)
        .iter()
        .map(BigInt::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

/// `labelled` selects the multi-method shapes (method-prefixed text lines,
/// a JSON array) even when only one method ran.
pub(crate) fn enumerators(
    out: &mut dyn Write,
    list: &[Enumerator],
    format: Format,
    labelled: bool,
) -> CliResult<()> {
    match format {
        Format::Text if !labelled => writeln!(out, "{}", coeff_line(&list[0]))?,
        Format::Text => {
            for e in list {
                writeln!(out, "{}: {}", e.method, coeff_line(e))?;
            }
        }
        Format::Json if !labelled => writeln!(out, "{}", list[0].to_json()?)?,
        Format::Json => {
            let values = list
                .iter()
                .map(Enumerator::to_json_value)
                .collect::<Result<Vec<_>, _>>()?;
            writeln!(
                out,
                "{}",
                serde_json::to_string(&values).map_err(Error::from)?
            )?;
        }
        Format::Csv => {
            let len = list
                .iter()
                .map(|e| e.distance.max_value(e.code.n()) + 1)
                .max()
                .unwrap_or(0);
            let mut w = csv::Writer::from_writer(Vec::new());
            let mut header = vec!["i".to_string()];
            header.extend(list.iter().map(|e| e.method.to_string()));
            csv_row(&mut w, &header)?;
            let cols: Vec<Vec<BigInt>> = list.iter().map(|e| e.padded_coeffs(len)).collect();
            for i in 0..len {
                let mut row = vec![i.to_string()];
                row.extend(cols.iter().map(|c| c[i].to_string()));
                csv_row(&mut w, &row)?;
            }
            out.write_all(&csv_bytes(w)?)?;
        }
    }
    Ok(())
}

pub(crate) fn csv_row(w: &mut csv::Writer<Vec<u8>>, row: &[String]) -> CliResult<()> {
    w.write_record(row).map_err(csv_err)
}

pub(crate) fn csv_bytes(w: csv::Writer<Vec<u8>>) -> CliResult<Vec<u8>> {
    w.into_inner().map_err(|e| csv_err(e.into_error().into()))
}

fn csv_err(e: csv::Error) -> super::CliError {
    Error::Io(std::io::Error::other(e)).into()
}

pub(crate) fn json_line<T: Serialize>(out: &mut dyn Write, v: &T) -> CliResult<()> {
    writeln!(out, "{}", serde_json::to_string(v).map_err(Error::from)?)?;
    Ok(())
}

/// Describes the first coefficient where two enumerators differ.
pub(crate) fn first_difference(a: &Enumerator, b: &Enumerator) -> Option<String> {
    let len = a.poly.degree().max(b.poly.degree()).map_or(1, |d| d + 1);
    let (ca, cb) = (a.padded_coeffs(len), b.padded_coeffs(len));
    (0..len).find(|&i| ca[i] != cb[i]).map(|i| {
        format!(
            "{} ({}): z^{i} is {} by {} but {} by {}",
            a.code, a.distance, ca[i], a.method, cb[i], b.method
        )
    })
}
