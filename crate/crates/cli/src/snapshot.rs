//! LAXF snapshots: `"LAXF"`, version `u32 = 1`, `n: u32`, `time: f64`, then
//! `n × n` `f64` physical vorticity values, x index outermost, all
//! little-endian.

use std::io;
use std::path::Path;

use euler_lax::{Grid, RealField};

use crate::output::write_atomic;

pub const MAGIC: &[u8; 4] = b"LAXF";
pub const VERSION: u32 = 1;
const HEADER_LEN: usize = 4 + 4 + 4 + 8;

#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub time: f64,
    pub omega: RealField,
}

pub fn encode(time: f64, omega: &RealField) -> Vec<u8> {
    let n = omega.grid().n();
    let mut bytes = Vec::with_capacity(HEADER_LEN + 8 * n * n);
    bytes.extend_from_slice(MAGIC);
    bytes.extend_from_slice(&VERSION.to_le_bytes());
    bytes.extend_from_slice(&(n as u32).to_le_bytes());
    bytes.extend_from_slice(&time.to_le_bytes());
    for v in omega.values() {
        bytes.extend_from_slice(&v.to_le_bytes());
    }
    bytes
}

fn bad(msg: impl Into<String>) -> io::Error {
    io::Error::new(io::ErrorKind::InvalidData, msg.into())
}

pub fn decode(bytes: &[u8]) -> io::Result<Snapshot> {
    if bytes.len() < HEADER_LEN || &bytes[..4] != MAGIC {
        return Err(bad("not a LAXF snapshot"));
    }
    let word = |at: usize| u32::from_le_bytes(bytes[at..at + 4].try_into().expect("4 bytes"));
    let version = word(4);
    if version != VERSION {
        return Err(bad(format!("unsupported LAXF version {version}")));
    }
    let n = word(8) as usize;
    let time = f64::from_le_bytes(bytes[12..20].try_into().expect("8 bytes"));
    let grid = Grid::new(n).map_err(|e| bad(e.to_string()))?;
    if bytes.len() != HEADER_LEN + 8 * n * n {
        return Err(bad(format!(
            "expected {} bytes for n = {n}, found {}",
            HEADER_LEN + 8 * n * n,
            bytes.len()
        )));
    }
    let values = bytes[HEADER_LEN..]
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().expect("8 bytes")))
        .collect();
    let omega = RealField::new(grid, values).map_err(|e| bad(e.to_string()))?;
    Ok(Snapshot { time, omega })
}

pub fn write_snapshot(path: &Path, time: f64, omega: &RealField) -> io::Result<()> {
    write_atomic(path, &encode(time, omega))
}

pub fn read_snapshot(path: &Path) -> io::Result<Snapshot> {
    decode(&std::fs::read(path)?)
}
