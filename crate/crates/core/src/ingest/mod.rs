//! Codec-free frame loaders and output writers.
//!
//! Two input formats are supported: a directory of binary PGM/PPM frames
//! and a single `MGVT` raw tensor file. Frames have to be extracted from
//! video containers beforehand with an external tool.

mod export;
mod frames;
mod natural;
mod pnm;
mod raw;

use std::path::PathBuf;

use serde::Serialize;

pub use export::{export_outputs, ExportPaths};
pub use frames::{load_frame_directory, LoadOptions};
pub use natural::natural_cmp;
pub use pnm::{decode_pnm, encode_pnm, write_pnm, PnmImage};
pub use raw::{
    decode_raw_tensor, encode_raw_tensor, load_raw_tensor, save_raw_tensor, RawTensorHeader,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SourceFormat {
    ImageDir,
    RawTensor,
}

/// Where a frame volume came from and how its frames were ordered.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VideoManifest {
    pub source: PathBuf,
    pub format: SourceFormat,
    pub t_count: usize,
    pub height: usize,
    pub width: usize,
    pub channels: usize,
    /// File names in load order for image directories; empty for raw tensors.
    pub frame_ids: Vec<String>,
}
