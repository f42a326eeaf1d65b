//! Plot-ready report rows as CSV or JSON.

use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};

/// A record with a fixed column schema.
pub trait CsvRecord {
    const HEADER: &'static [&'static str];
    fn row(&self) -> Vec<String>;
}

/// Header plus one row per record. An empty slice yields a header-only file.
pub fn write_csv<R: CsvRecord, W: Write>(records: &[R], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(R::HEADER).map_err(csv_err)?;
    for r in records {
        w.write_record(r.row()).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

pub fn to_csv_string<R: CsvRecord>(records: &[R]) -> String {
    let mut buf = Vec::new();
    write_csv(records, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("csv output is utf-8")
}

/// Pretty-printed JSON array.
pub fn write_json<R: Serialize, W: Write>(records: &[R], mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, records).map_err(|e| Error::Io(e.to_string()))?;
    out.write_all(b"\n")?;
    Ok(())
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}
