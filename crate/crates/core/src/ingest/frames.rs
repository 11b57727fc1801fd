use std::path::Path;

use super::natural::natural_cmp;
use super::pnm::decode_pnm;
use super::{SourceFormat, VideoManifest};
use crate::error::{Error, Result};
use crate::motion::FrameVolume;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadOptions {
    /// Nearest-neighbour spatial downsampling factor applied after loading;
    /// 1 keeps full resolution.
    pub downsample: usize,
}

impl Default for LoadOptions {
    fn default() -> Self {
        Self { downsample: 1 }
    }
}

fn is_frame_file(name: &str) -> bool {
    Path::new(name)
        .extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| e.eq_ignore_ascii_case("pgm") || e.eq_ignore_ascii_case("ppm"))
}

/// Loads every `.pgm`/`.ppm` file in `dir` as one frame, in natural
/// filename order. All frames must share the same size and type.
pub fn load_frame_directory(
    dir: impl AsRef<Path>,
    options: &LoadOptions,
) -> Result<(FrameVolume, VideoManifest)> {
    let dir = dir.as_ref();
    let entries = std::fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    let mut names = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|e| Error::io(dir, e))?;
        let is_file = entry
            .file_type()
            .map_err(|e| Error::io(entry.path(), e))?
            .is_file()
            || entry.path().is_file();
        let Ok(name) = entry.file_name().into_string() else {
            continue;
        };
        if is_file && is_frame_file(&name) {
            names.push(name);
        }
    }
    if names.is_empty() {
        return Err(Error::EmptyInput(dir.to_path_buf()));
    }
    names.sort_by(|a, b| natural_cmp(a, b));

    let mut data = Vec::new();
    let mut shape = None;
    for name in &names {
        let path = dir.join(name);
        let bytes = std::fs::read(&path).map_err(|e| Error::io(&path, e))?;
        let img = decode_pnm(&bytes, &path)?;
        let this = (img.height, img.width, img.channels);
        match shape {
            None => shape = Some(this),
            Some(first) if first != this => {
                return Err(Error::Structural(format!(
                    "{} is {}x{} with {} channel(s), expected {}x{} with {} channel(s) like {}",
                    path.display(),
                    this.1,
                    this.0,
                    this.2,
                    first.1,
                    first.0,
                    first.2,
                    names[0]
                )))
            }
            Some(_) => {}
        }
        data.extend_from_slice(&img.pixels);
    }
    let (height, width, channels) = shape.expect("at least one frame");
    let mut video = FrameVolume::from_u8(names.len(), height, width, channels, data)?;
    if options.downsample != 1 {
        video = video.downsample(options.downsample)?;
    }
    let manifest = VideoManifest {
        source: dir.to_path_buf(),
        format: SourceFormat::ImageDir,
        t_count: video.t_count(),
        height: video.height(),
        width: video.width(),
        channels: video.channels(),
        frame_ids: names,
    };
    Ok((video, manifest))
}
