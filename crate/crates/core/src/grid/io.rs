//! Field serialization.
//!
//! CSV: one metadata comment line, a header row, then one row per node in
//! flat order with coordinates and value, all floats with 17 significant
//! digits:
//!
//! ```text
//! # dtheat-field v1 dim=1 points=256 extent=32 h=0.25 n=16
//! x,value
//! -1.6000000000000000e1,3.1415926535897931e-9
//! ```
//!
//! Binary ("DTHF"), little endian: magic `DTHF`, u32 version = 1, u32 dim,
//! u32 points, f64 extent, f64 h (NaN if absent), u64 n (0 if absent), then
//! M^N f64 values.

use std::io::{BufRead, Read, Write};

use super::{Field, Grid};
use crate::error::{Error, Result};

const MAGIC: &[u8; 4] = b"DTHF";
const VERSION: u32 = 1;
const AXES: [&str; 3] = ["x", "y", "z"];

/// Time-step information carried alongside a field.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FieldMeta {
    pub h: Option<f64>,
    pub n: Option<usize>,
}

fn io_err(e: std::io::Error) -> Error {
    Error::Precondition(format!("i/o failure: {e}"))
}

fn bad(detail: impl Into<String>) -> Error {
    Error::InvalidParameter(format!("malformed field data: {}", detail.into()))
}

/// 17 significant digits, enough to round-trip any f64.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_csv<W: Write>(field: &Field, meta: FieldMeta, mut out: W) -> Result<()> {
    let grid = field.grid();
    let mut line = format!(
        "# dtheat-field v1 dim={} points={} extent={}",
        grid.dim(),
        grid.points(),
        format_float(grid.extent())
    );
    if let Some(h) = meta.h {
        line.push_str(&format!(" h={}", format_float(h)));
    }
    if let Some(n) = meta.n {
        line.push_str(&format!(" n={n}"));
    }
    writeln!(out, "{line}").map_err(io_err)?;
    writeln!(out, "{},value", AXES[..grid.dim()].join(",")).map_err(io_err)?;
    for (i, v) in field.values().iter().enumerate() {
        let coords = grid.coords(i);
        let mut row: Vec<String> = coords[..grid.dim()]
            .iter()
            .map(|c| format_float(*c))
            .collect();
        row.push(format_float(*v));
        writeln!(out, "{}", row.join(",")).map_err(io_err)?;
    }
    Ok(())
}

pub fn read_csv<R: BufRead>(input: R) -> Result<(Field, FieldMeta)> {
    let mut lines = input.lines();
    let first = lines
        .next()
        .ok_or_else(|| bad("empty input"))?
        .map_err(io_err)?;
    let rest = first
        .strip_prefix("# dtheat-field v1")
        .ok_or_else(|| bad("missing metadata line"))?;
    let (mut dim, mut points, mut extent) = (None, None, None);
    let mut meta = FieldMeta::default();
    for token in rest.split_whitespace() {
        let (key, value) = token.split_once('=').ok_or_else(|| bad(token))?;
        match key {
            "dim" => dim = Some(value.parse::<usize>().map_err(|_| bad(token))?),
            "points" => points = Some(value.parse::<usize>().map_err(|_| bad(token))?),
            "extent" => extent = Some(value.parse::<f64>().map_err(|_| bad(token))?),
            "h" => meta.h = Some(value.parse::<f64>().map_err(|_| bad(token))?),
            "n" => meta.n = Some(value.parse::<usize>().map_err(|_| bad(token))?),
            _ => return Err(bad(format!("unknown key {key}"))),
        }
    }
    let grid = Grid::new(
        dim.ok_or_else(|| bad("no dim"))?,
        extent.ok_or_else(|| bad("no extent"))?,
        points.ok_or_else(|| bad("no points"))?,
    )?;
    lines
        .next()
        .ok_or_else(|| bad("missing header row"))?
        .map_err(io_err)?;
    let mut values = Vec::with_capacity(grid.len());
    for line in lines {
        let line = line.map_err(io_err)?;
        let last = line.rsplit(',').next().ok_or_else(|| bad("empty row"))?;
        values.push(last.trim().parse::<f64>().map_err(|_| bad(line.clone()))?);
    }
    Ok((Field::new(grid, values)?, meta))
}

pub fn write_binary<W: Write>(field: &Field, meta: FieldMeta, mut out: W) -> Result<()> {
    let grid = field.grid();
    let mut buf = Vec::with_capacity(36 + 8 * field.values().len());
    buf.extend_from_slice(MAGIC);
    buf.extend_from_slice(&VERSION.to_le_bytes());
    buf.extend_from_slice(&(grid.dim() as u32).to_le_bytes());
    buf.extend_from_slice(&(grid.points() as u32).to_le_bytes());
    buf.extend_from_slice(&grid.extent().to_le_bytes());
    buf.extend_from_slice(&meta.h.unwrap_or(f64::NAN).to_le_bytes());
    buf.extend_from_slice(&(meta.n.unwrap_or(0) as u64).to_le_bytes());
    for v in field.values() {
        buf.extend_from_slice(&v.to_le_bytes());
    }
    out.write_all(&buf).map_err(io_err)
}

pub fn read_binary<R: Read>(mut input: R) -> Result<(Field, FieldMeta)> {
    let mut bytes = Vec::new();
    input.read_to_end(&mut bytes).map_err(io_err)?;
    if bytes.len() < 40 || &bytes[..4] != MAGIC {
        return Err(bad("missing DTHF header"));
    }
    let u32_at = |i: usize| u32::from_le_bytes(bytes[i..i + 4].try_into().unwrap());
    let f64_at = |i: usize| f64::from_le_bytes(bytes[i..i + 8].try_into().unwrap());
    if u32_at(4) != VERSION {
        return Err(bad(format!("unsupported version {}", u32_at(4))));
    }
    let grid = Grid::new(u32_at(8) as usize, f64_at(16), u32_at(12) as usize)?;
    let h = f64_at(24);
    let n = u64::from_le_bytes(bytes[32..40].try_into().unwrap());
    let payload = &bytes[40..];
    if payload.len() != 8 * grid.len() {
        return Err(bad(format!(
            "expected {} values, found {} bytes",
            grid.len(),
            payload.len()
        )));
    }
    let values = payload
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    let meta = FieldMeta {
        h: if h.is_nan() { None } else { Some(h) },
        n: if n == 0 { None } else { Some(n as usize) },
    };
    Ok((Field::new(grid, values)?, meta))
}
