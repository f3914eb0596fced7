//! The `.meta.json` sidecar written next to every sketch.

use std::fs;
use std::path::{Path, PathBuf};

use cauchy_sketch_core::cauchy::{RngSeed, GENERATOR};
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::io::Format;

/// Identifier of the sidecar layout.
pub const META_FORMAT: &str = "cauchy-sketch-meta/1";

/// Where `k` came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KSource {
    /// Chosen by the dimension planner.
    Planned,
    /// Given with `--k`.
    Override,
}

/// Everything needed to interpret a sketch file later.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SketchMeta {
    /// Sidecar layout identifier.
    pub format: String,
    /// Version of the library that wrote the sketch.
    pub library_version: String,
    /// Generator identity.
    pub generator: String,
    /// Seed of the projection matrix.
    pub seed: u64,
    /// Stream of the projection matrix.
    pub stream: u64,
    /// Number of points.
    pub n: u64,
    /// Ambient dimension.
    pub d: u64,
    /// Target dimension.
    pub k: u64,
    /// Distortion parameter.
    pub epsilon: f64,
    /// Failure exponent.
    pub c: f64,
    /// Origin of `k`.
    pub k_source: KSource,
    /// Encoding of the input point set.
    pub input_format: Format,
}

impl SketchMeta {
    /// Metadata for a sketch written by this build.
    #[allow(clippy::too_many_arguments)]
    pub fn new(rng: RngSeed, n: u64, d: u64, k: u64, epsilon: f64, c: f64, k_source: KSource, input_format: Format) -> Self {
        Self {
            format: META_FORMAT.into(),
            library_version: env!("CARGO_PKG_VERSION").into(),
            generator: GENERATOR.into(),
            seed: rng.seed,
            stream: rng.stream_id,
            n,
            d,
            k,
            epsilon,
            c,
            k_source,
            input_format,
        }
    }

    /// The projection seed.
    pub fn rng(&self) -> RngSeed {
        RngSeed::new(self.seed, self.stream)
    }

    /// Write as pretty JSON with a trailing newline.
    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        let mut text = serde_json::to_string_pretty(self).map_err(|e| CliError::io(path.display(), e))?;
        text.push('\n');
        fs::write(path, text).map_err(|e| CliError::io(path.display(), e))
    }

    /// Read and check the layout identifier.
    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path.display(), e))?;
        let meta: SketchMeta = serde_json::from_str(&text).map_err(|e| CliError::io(path.display(), e))?;
        if meta.format != META_FORMAT {
            return Err(CliError::io(path.display(), format!("unsupported metadata format {:?}", meta.format)));
        }
        Ok(meta)
    }
}

/// `<sketch>.meta.json`.
pub fn sidecar_path(sketch: &Path) -> PathBuf {
    let mut name = sketch.as_os_str().to_owned();
    name.push(".meta.json");
    PathBuf::from(name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.bin.meta.json");
        let m = SketchMeta::new(RngSeed::new(1, 2), 3, 4, 5, 0.25, 3.0, KSource::Override, Format::Csv);
        m.write(&path).unwrap();
        assert_eq!(SketchMeta::read(&path).unwrap(), m);
        assert!(fs::read_to_string(&path).unwrap().contains("\"k_source\": \"override\""));
    }

    #[test]
    fn sidecar_name() {
        assert_eq!(sidecar_path(Path::new("out/s.bin")), PathBuf::from("out/s.bin.meta.json"));
    }
}
