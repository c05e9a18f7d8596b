//! On-disk layout of a run directory.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::spectral::{Grid, RealField};

pub const MANIFEST_FILE: &str = "manifest.json";
pub const CONFIG_FILE: &str = "config.toml";
pub const DIAGNOSTICS_FILE: &str = "diagnostics.csv";
pub const TRAJECTORY_FILE: &str = "trajectory.bin";
pub const TRAJECTORY_META_FILE: &str = "trajectory.json";

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Write through a temporary sibling and rename into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, bytes).map_err(|e| Error::io(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
}

pub fn read_bytes(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|e| Error::io(path, e))
}

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

pub fn unix_seconds() -> f64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs_f64()).unwrap_or(0.0)
}

/// Inventory entry of a written file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FileEntry {
    pub name: String,
    pub bytes: u64,
    pub sha256: String,
}

/// Files written so far in one run directory.
#[derive(Debug)]
pub struct RunDirectory {
    pub path: PathBuf,
    pub files: Vec<FileEntry>,
}

impl RunDirectory {
    /// Create the directory and drop any manifest left by an earlier run.
    pub fn create(path: PathBuf) -> Result<Self> {
        fs::create_dir_all(&path).map_err(|e| Error::io(&path, e))?;
        let manifest = path.join(MANIFEST_FILE);
        if manifest.exists() {
            fs::remove_file(&manifest).map_err(|e| Error::io(&manifest, e))?;
        }
        Ok(Self { path, files: Vec::new() })
    }

    pub fn write(&mut self, name: &str, bytes: &[u8]) -> Result<()> {
        write_atomic(&self.path.join(name), bytes)?;
        self.files.retain(|f| f.name != name);
        self.files.push(FileEntry { name: name.into(), bytes: bytes.len() as u64, sha256: sha256_hex(bytes) });
        Ok(())
    }

    pub fn write_json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<()> {
        let mut text = serde_json::to_string_pretty(value)
            .map_err(|e| Error::Format { path: self.path.join(name), reason: e.to_string() })?;
        text.push('\n');
        self.write(name, text.as_bytes())
    }
}

/// Sidecar description of `trajectory.bin`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryMeta {
    pub n_points: usize,
    pub length: f64,
    pub delta: f64,
    pub flow: String,
    /// Sample encoding; always `f64-le`, checkpoint-major.
    pub dtype: String,
    pub times: Vec<f64>,
}

/// Checkpoints as consecutive little-endian `f64` blocks.
pub fn encode_checkpoints(checkpoints: &[RealField]) -> Vec<u8> {
    let mut out = Vec::with_capacity(checkpoints.iter().map(|c| 8 * c.samples().len()).sum());
    for c in checkpoints {
        for v in c.samples() {
            out.extend_from_slice(&v.to_le_bytes());
        }
    }
    out
}

/// Little-endian `f64` samples.
pub fn decode_f64(bytes: &[u8], path: &Path) -> Result<Vec<f64>> {
    if bytes.len() % 8 != 0 {
        return Err(Error::Format { path: path.into(), reason: format!("{} bytes is not a whole number of f64", bytes.len()) });
    }
    Ok(bytes.chunks_exact(8).map(|c| f64::from_le_bytes(c.try_into().expect("8-byte chunk"))).collect())
}

/// Read `trajectory.bin` with its sidecar from `dir`.
pub fn read_trajectory(dir: &Path) -> Result<(TrajectoryMeta, Vec<RealField>)> {
    let meta_path = dir.join(TRAJECTORY_META_FILE);
    let meta: TrajectoryMeta = serde_json::from_str(&read_text(&meta_path)?)
        .map_err(|e| Error::Format { path: meta_path.clone(), reason: e.to_string() })?;
    let bin_path = dir.join(TRAJECTORY_FILE);
    let values = decode_f64(&read_bytes(&bin_path)?, &bin_path)?;
    if meta.dtype != "f64-le" || values.len() != meta.n_points * meta.times.len() {
        return Err(Error::Format {
            path: bin_path,
            reason: format!("expected {} checkpoints of {} samples", meta.times.len(), meta.n_points),
        });
    }
    let grid = Grid::new(meta.n_points, meta.length)?;
    let fields = values
        .chunks_exact(meta.n_points)
        .zip(&meta.times)
        .map(|(c, &t)| RealField::new(&grid, c.to_vec()).map(|u| u.with_time(t)))
        .collect::<Result<Vec<_>>>()?;
    Ok((meta, fields))
}

/// Run record, written last and atomically.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub config: String,
    pub config_hash: String,
    pub code_version: String,
    pub seed: u64,
    pub threads: Option<usize>,
    pub started_unix: f64,
    pub finished_unix: f64,
    /// False when the run stopped early; outputs present are partial.
    pub complete: bool,
    pub abort: Option<String>,
    pub warnings: Vec<String>,
    pub clamped_omega_prime: usize,
    pub files: Vec<FileEntry>,
}

impl RunManifest {
    pub fn read(dir: &Path) -> Result<Self> {
        let path = dir.join(MANIFEST_FILE);
        serde_json::from_str(&read_text(&path)?).map_err(|e| Error::Format { path, reason: e.to_string() })
    }

    /// Check every listed file against its recorded size and checksum.
    pub fn verify(&self, dir: &Path) -> Result<()> {
        for f in &self.files {
            let path = dir.join(&f.name);
            let bytes = read_bytes(&path)?;
            if bytes.len() as u64 != f.bytes || sha256_hex(&bytes) != f.sha256 {
                return Err(Error::Format { path, reason: "checksum mismatch".into() });
            }
        }
        Ok(())
    }
}
