use std::path::Path;

use crate::error::{Error, Result};
use crate::motion::{FrameVolume, PixelData};

const MAGIC: &[u8; 4] = b"MGVT";
const VERSION: u32 = 1;
const HEADER_LEN: usize = 32;

/// Fixed 32-byte little-endian header of an `MGVT` raw tensor file:
/// magic, version, T, H, W, C, dtype (0 = u8, 1 = f32), 4 reserved zero
/// bytes. The payload is `T*H*W*C` values laid out `T x H x W x C`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RawTensorHeader {
    pub t_count: u32,
    pub height: u32,
    pub width: u32,
    pub channels: u32,
    pub dtype: u32,
}

impl RawTensorHeader {
    pub const DTYPE_U8: u32 = 0;
    pub const DTYPE_F32: u32 = 1;

    fn element_size(&self) -> u64 {
        if self.dtype == Self::DTYPE_U8 {
            1
        } else {
            4
        }
    }

    pub fn payload_len(&self) -> u64 {
        u64::from(self.t_count)
            * u64::from(self.height)
            * u64::from(self.width)
            * u64::from(self.channels)
            * self.element_size()
    }

    fn to_bytes(self) -> [u8; HEADER_LEN] {
        let mut out = [0u8; HEADER_LEN];
        out[..4].copy_from_slice(MAGIC);
        let fields = [
            VERSION,
            self.t_count,
            self.height,
            self.width,
            self.channels,
            self.dtype,
        ];
        for (i, f) in fields.iter().enumerate() {
            out[4 + 4 * i..8 + 4 * i].copy_from_slice(&f.to_le_bytes());
        }
        out
    }

    fn parse(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < HEADER_LEN {
            return Err(Error::Length {
                expected: HEADER_LEN as u64,
                actual: bytes.len() as u64,
            });
        }
        if &bytes[..4] != MAGIC {
            return Err(Error::Format("raw tensor does not start with MGVT".into()));
        }
        let word = |i: usize| u32::from_le_bytes(bytes[4 + 4 * i..8 + 4 * i].try_into().unwrap());
        if word(0) != VERSION {
            return Err(Error::Format(format!(
                "unsupported raw tensor version {}",
                word(0)
            )));
        }
        let header = Self {
            t_count: word(1),
            height: word(2),
            width: word(3),
            channels: word(4),
            dtype: word(5),
        };
        if header.dtype > Self::DTYPE_F32 {
            return Err(Error::Format(format!("unknown dtype tag {}", header.dtype)));
        }
        if bytes[28..32].iter().any(|&b| b != 0) {
            return Err(Error::Format(
                "raw tensor reserved bytes must be zero".into(),
            ));
        }
        Ok(header)
    }
}

pub fn encode_raw_tensor(video: &FrameVolume) -> Vec<u8> {
    let (dtype, payload): (u32, Vec<u8>) = match video.data() {
        PixelData::U8(v) => (RawTensorHeader::DTYPE_U8, v.clone()),
        PixelData::F32(v) => (
            RawTensorHeader::DTYPE_F32,
            v.iter().flat_map(|x| x.to_le_bytes()).collect(),
        ),
    };
    let header = RawTensorHeader {
        t_count: video.t_count() as u32,
        height: video.height() as u32,
        width: video.width() as u32,
        channels: video.channels() as u32,
        dtype,
    };
    let mut out = Vec::with_capacity(HEADER_LEN + payload.len());
    out.extend_from_slice(&header.to_bytes());
    out.extend_from_slice(&payload);
    out
}

pub fn decode_raw_tensor(bytes: &[u8]) -> Result<FrameVolume> {
    let header = RawTensorHeader::parse(bytes)?;
    let payload = &bytes[HEADER_LEN..];
    let expected = header.payload_len();
    if payload.len() as u64 != expected {
        return Err(Error::Length {
            expected,
            actual: payload.len() as u64,
        });
    }
    let data = match header.dtype {
        RawTensorHeader::DTYPE_U8 => PixelData::U8(payload.to_vec()),
        _ => PixelData::F32(
            payload
                .chunks_exact(4)
                .map(|b| f32::from_le_bytes(b.try_into().unwrap()))
                .collect(),
        ),
    };
    FrameVolume::new(
        header.t_count as usize,
        header.height as usize,
        header.width as usize,
        header.channels as usize,
        data,
    )
}

pub fn load_raw_tensor(path: impl AsRef<Path>) -> Result<FrameVolume> {
    let path = path.as_ref();
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    decode_raw_tensor(&bytes)
}

pub fn save_raw_tensor(video: &FrameVolume, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, encode_raw_tensor(video)).map_err(|e| Error::io(path, e))
}
