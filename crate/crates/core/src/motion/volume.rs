use crate::error::{Error, Result};

/// Pixel storage for a [`FrameVolume`], laid out `T x H x W x C`.
#[derive(Debug, Clone, PartialEq)]
pub enum PixelData {
    U8(Vec<u8>),
    F32(Vec<f32>),
}

impl PixelData {
    pub fn len(&self) -> usize {
        match self {
            PixelData::U8(v) => v.len(),
            PixelData::F32(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A decoded video: `t_count` frames of `height x width` pixels with
/// `channels` interleaved channels each.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameVolume {
    data: PixelData,
    t_count: usize,
    height: usize,
    width: usize,
    channels: usize,
}

/// Borrowed view of a single frame, `H x W x C` interleaved.
#[derive(Debug, Clone, Copy)]
pub enum Frame<'a> {
    U8(&'a [u8]),
    F32(&'a [f32]),
}

impl Frame<'_> {
    pub fn len(&self) -> usize {
        match self {
            Frame::U8(v) => v.len(),
            Frame::F32(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> f64 {
        match self {
            Frame::U8(v) => f64::from(v[i]),
            Frame::F32(v) => f64::from(v[i]),
        }
    }
}

impl FrameVolume {
    pub fn new(
        t_count: usize,
        height: usize,
        width: usize,
        channels: usize,
        data: PixelData,
    ) -> Result<Self> {
        if t_count == 0 || height == 0 || width == 0 {
            return Err(Error::Structural(format!(
                "frame volume dimensions must be positive, got T={t_count} H={height} W={width}"
            )));
        }
        if channels != 1 && channels != 3 {
            return Err(Error::Structural(format!(
                "channel count must be 1 or 3, got {channels}"
            )));
        }
        let expected = t_count
            .checked_mul(height)
            .and_then(|n| n.checked_mul(width))
            .and_then(|n| n.checked_mul(channels))
            .ok_or_else(|| Error::Structural("frame volume size overflows".into()))?;
        if data.len() != expected {
            return Err(Error::Structural(format!(
                "tensor length {} does not match T*H*W*C = {expected}",
                data.len()
            )));
        }
        Ok(Self {
            data,
            t_count,
            height,
            width,
            channels,
        })
    }

    pub fn from_u8(
        t_count: usize,
        height: usize,
        width: usize,
        channels: usize,
        data: Vec<u8>,
    ) -> Result<Self> {
        Self::new(t_count, height, width, channels, PixelData::U8(data))
    }

    pub fn from_f32(
        t_count: usize,
        height: usize,
        width: usize,
        channels: usize,
        data: Vec<f32>,
    ) -> Result<Self> {
        Self::new(t_count, height, width, channels, PixelData::F32(data))
    }

    pub fn t_count(&self) -> usize {
        self.t_count
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn data(&self) -> &PixelData {
        &self.data
    }

    pub fn into_data(self) -> PixelData {
        self.data
    }

    /// Number of scalar values in one frame (`H * W * C`).
    pub fn frame_len(&self) -> usize {
        self.height * self.width * self.channels
    }

    pub fn frame(&self, t: usize) -> Frame<'_> {
        let n = self.frame_len();
        let range = t * n..(t + 1) * n;
        match &self.data {
            PixelData::U8(v) => Frame::U8(&v[range]),
            PixelData::F32(v) => Frame::F32(&v[range]),
        }
    }

    /// The same frames in reverse temporal order.
    pub fn reversed(&self) -> Self {
        let n = self.frame_len();
        fn rev<T: Copy>(v: &[T], n: usize) -> Vec<T> {
            v.chunks_exact(n).rev().flatten().copied().collect()
        }
        let data = match &self.data {
            PixelData::U8(v) => PixelData::U8(rev(v, n)),
            PixelData::F32(v) => PixelData::F32(rev(v, n)),
        };
        Self { data, ..*self }
    }

    /// Nearest-neighbour spatial downsampling by an integer factor. Output
    /// dimensions are `ceil(H / factor) x ceil(W / factor)`, taking the
    /// top-left pixel of each `factor x factor` cell.
    pub fn downsample(&self, factor: usize) -> Result<Self> {
        if factor == 0 {
            return Err(Error::Config("downsample factor must be >= 1".into()));
        }
        if factor == 1 {
            return Ok(self.clone());
        }
        let (h, w, c) = (self.height, self.width, self.channels);
        let oh = h.div_ceil(factor);
        let ow = w.div_ceil(factor);
        fn pick<T: Copy>(
            v: &[T],
            t_count: usize,
            (h, w, c): (usize, usize, usize),
            (oh, ow): (usize, usize),
            factor: usize,
        ) -> Vec<T> {
            let mut out = Vec::with_capacity(t_count * oh * ow * c);
            for t in 0..t_count {
                let frame = &v[t * h * w * c..(t + 1) * h * w * c];
                for y in 0..oh {
                    for x in 0..ow {
                        let base = ((y * factor) * w + x * factor) * c;
                        out.extend_from_slice(&frame[base..base + c]);
                    }
                }
            }
            out
        }
        let data = match &self.data {
            PixelData::U8(v) => PixelData::U8(pick(v, self.t_count, (h, w, c), (oh, ow), factor)),
            PixelData::F32(v) => PixelData::F32(pick(v, self.t_count, (h, w, c), (oh, ow), factor)),
        };
        Self::new(self.t_count, oh, ow, c, data)
    }
}
