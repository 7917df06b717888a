use std::path::Path;

use num_rational::BigRational;
use serde::Serialize;
use stopset::bigmath::format_sig;
use stopset::gf2core::{parse_alist, parse_text, to_alist, to_text};
use stopset::BinaryMatrix;

use crate::args::{MatrixFormat, MatrixInput};
use crate::error::{CliError, CliResult};

/// Significant digits of the decimal column next to exact values.
pub const DECIMAL_SIG: u32 = 6;

/// Buffers CSV rows; the header is fixed up front.
pub struct Csv {
    w: csv::Writer<Vec<u8>>,
}

impl Csv {
    pub fn new(header: &[&str]) -> CliResult<Self> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(header)?;
        Ok(Self { w })
    }

    pub fn row<I, S>(&mut self, fields: I) -> CliResult<()>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        self.w.write_record(fields)?;
        Ok(())
    }

    pub fn finish(self) -> CliResult<Vec<u8>> {
        self.w.into_inner().map_err(|e| CliError::Output(e.to_string()))
    }
}

pub fn json<T: Serialize>(value: &T) -> CliResult<Vec<u8>> {
    let mut out = serde_json::to_vec_pretty(value)?;
    out.push(b'\n');
    Ok(out)
}

/// `numerator, denominator, decimal` for an exact value.
pub fn exact_fields(v: &BigRational) -> [String; 3] {
    [v.numer().to_string(), v.denom().to_string(), format_sig(v, DECIMAL_SIG)]
}

/// Floats printed in Rust's shortest round-trip form, so output is stable.
pub fn float(v: f64) -> String {
    format!("{v}")
}

fn resolve(format: MatrixFormat, path: &Path) -> MatrixFormat {
    match format {
        MatrixFormat::Auto if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("alist")) => MatrixFormat::Alist,
        MatrixFormat::Auto => MatrixFormat::Text,
        f => f,
    }
}

pub fn read_matrix(input: &MatrixInput) -> CliResult<BinaryMatrix> {
    let path = &input.input;
    let src = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let parsed = match resolve(input.input_format, path) {
        MatrixFormat::Alist => parse_alist(&src),
        _ => parse_text(&src),
    };
    parsed.map_err(|source| CliError::Input {
        path: path.clone(),
        source,
    })
}

/// Serializes a matrix; with no output path `Auto` means the text format.
pub fn write_matrix(h: &BinaryMatrix, format: MatrixFormat, out: Option<&Path>) -> Vec<u8> {
    let format = match out {
        Some(p) => resolve(format, p),
        None if format == MatrixFormat::Auto => MatrixFormat::Text,
        None => format,
    };
    match format {
        MatrixFormat::Alist => to_alist(h),
        _ => to_text(h),
    }
    .into_bytes()
}

/// Writes the primary output to `out`, or stdout.
pub fn emit(bytes: &[u8], out: Option<&Path>) -> CliResult<()> {
    use std::io::Write;
    match out {
        Some(path) => std::fs::write(path, bytes).map_err(|e| CliError::io(path, e)),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(bytes)
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Output(e.to_string()))
        }
    }
}
