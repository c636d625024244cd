//! Artificial photoreceptor layer.
//!
//! Cone-like channels carry colour (R/G/B, or an alternative colour space) and
//! a rod-like channel carries luminance. Each assembled plane is quantized to
//! 8 bits so the IF encoder can consume it exactly, then encoded on its own.

use std::sync::OnceLock;

use crate::codecs::encode_plane;
use crate::error::{Error, Result};
use crate::types::{
    normalize, quantize_unit, ChannelLabel, ChannelSet, EncoderConfig, NormalizedPlane, Provenance, RawImage,
    SpikeTensor,
};

/// Rec.601 luma weights in thousandths.
const LUMA_MILLI: [u32; 3] = [299, 587, 114];

/// sRGB primaries to CIE XYZ, D65 white.
const SRGB_TO_XYZ: [[f64; 3]; 3] = [
    [0.412_456_4, 0.357_576_1, 0.180_437_5],
    [0.212_672_9, 0.715_152_2, 0.072_175_0],
    [0.019_333_9, 0.119_192_0, 0.950_304_1],
];

/// Hunt-Pointer-Estevez XYZ to LMS (equal-energy normalized).
const XYZ_TO_HPE: [[f64; 3]; 3] = [
    [0.389_71, 0.688_98, -0.078_68],
    [-0.229_81, 1.183_40, 0.046_41],
    [0.0, 0.0, 1.0],
];

/// A 3x3 linear map followed by a per-component scale and shift.
#[derive(Debug, Clone, PartialEq)]
pub struct ColorMatrix {
    pub name: &'static str,
    pub coefficients: [[f64; 3]; 3],
    pub post_scale: [f64; 3],
    pub post_shift: [f64; 3],
}

impl ColorMatrix {
    pub fn apply(&self, v: [f64; 3]) -> [f64; 3] {
        let m = mat_vec(&self.coefficients, v);
        [0, 1, 2].map(|i| m[i] * self.post_scale[i] + self.post_shift[i])
    }

    /// The exact inverse map (undo shift, undo scale, invert the matrix).
    pub fn invert(&self, v: [f64; 3]) -> [f64; 3] {
        let unscaled = [0, 1, 2].map(|i| (v[i] - self.post_shift[i]) / self.post_scale[i]);
        mat_vec(&invert3(&self.coefficients), unscaled)
    }

    /// BT.601 YUV with U and V divided by twice their peak magnitude and
    /// shifted by one half, so every sRGB input lands in `[0, 1]`.
    pub fn yuv() -> Self {
        let [wr, wg, wb] = LUMA_MILLI.map(|w| w as f64 / 1000.0);
        Self {
            name: "yuv",
            coefficients: [
                [wr, wg, wb],
                // B - Y
                [-wr, -wg, 1.0 - wb],
                // R - Y
                [1.0 - wr, -wg, -wb],
            ],
            post_scale: [1.0, 0.5 / (1.0 - wb), 0.5 / (1.0 - wr)],
            post_shift: [0.0, 0.5, 0.5],
        }
    }

    /// Linear sRGB to HPE cone responses, rows rescaled so D65 white maps to
    /// `(1, 1, 1)`.
    pub fn linear_rgb_to_lms() -> Self {
        let raw = mat_mul(&XYZ_TO_HPE, &SRGB_TO_XYZ);
        let white = mat_vec(&raw, [1.0; 3]);
        Self {
            name: "lms",
            coefficients: raw,
            post_scale: white.map(|w| 1.0 / w),
            post_shift: [0.0; 3],
        }
    }
}

fn mat_vec(m: &[[f64; 3]; 3], v: [f64; 3]) -> [f64; 3] {
    [0, 1, 2].map(|r| m[r][0] * v[0] + m[r][1] * v[1] + m[r][2] * v[2])
}

fn mat_mul(a: &[[f64; 3]; 3], b: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let mut out = [[0.0; 3]; 3];
    for (r, row) in out.iter_mut().enumerate() {
        for (c, cell) in row.iter_mut().enumerate() {
            *cell = (0..3).map(|k| a[r][k] * b[k][c]).sum();
        }
    }
    out
}

fn invert3(m: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let cof = |r0: usize, r1: usize, c0: usize, c1: usize| m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
    let adj = [
        [cof(1, 2, 1, 2), -cof(0, 2, 1, 2), cof(0, 1, 1, 2)],
        [-cof(1, 2, 0, 2), cof(0, 2, 0, 2), -cof(0, 1, 0, 2)],
        [cof(1, 2, 0, 1), -cof(0, 2, 0, 1), cof(0, 1, 0, 1)],
    ];
    let det = m[0][0] * adj[0][0] + m[0][1] * adj[1][0] + m[0][2] * adj[2][0];
    adj.map(|row| row.map(|x| x / det))
}

pub fn srgb_to_linear(c: f64) -> f64 {
    if c <= 0.040_45 {
        c / 12.92
    } else {
        ((c + 0.055) / 1.055).powf(2.4)
    }
}

pub fn linear_to_srgb(c: f64) -> f64 {
    if c <= 0.003_130_8 {
        c * 12.92
    } else {
        1.055 * c.powf(1.0 / 2.4) - 0.055
    }
}

struct Tables {
    linear: [f64; 256],
    lms: ColorMatrix,
    yuv: ColorMatrix,
    white_xyz: [f64; 3],
}

fn tables() -> &'static Tables {
    static TABLES: OnceLock<Tables> = OnceLock::new();
    TABLES.get_or_init(|| Tables {
        linear: std::array::from_fn(|v| srgb_to_linear(v as f64 / 255.0)),
        lms: ColorMatrix::linear_rgb_to_lms(),
        yuv: ColorMatrix::yuv(),
        white_xyz: mat_vec(&SRGB_TO_XYZ, [1.0; 3]),
    })
}

const LAB_DELTA: f64 = 6.0 / 29.0;

fn lab_f(t: f64) -> f64 {
    if t > LAB_DELTA.powi(3) {
        t.cbrt()
    } else {
        t / (3.0 * LAB_DELTA * LAB_DELTA) + 4.0 / 29.0
    }
}

fn lab_f_inv(f: f64) -> f64 {
    if f > LAB_DELTA {
        f.powi(3)
    } else {
        3.0 * LAB_DELTA * LAB_DELTA * (f - 4.0 / 29.0)
    }
}

/// Colour spaces that can replace RGB on the cone channels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ColorSpace {
    Lms,
    Lab,
    Yuv,
}

impl ColorSpace {
    pub fn labels(self) -> [ChannelLabel; 3] {
        match self {
            ColorSpace::Lms => [ChannelLabel::LCone, ChannelLabel::MCone, ChannelLabel::SCone],
            ColorSpace::Lab => [ChannelLabel::LabL, ChannelLabel::LabA, ChannelLabel::LabB],
            ColorSpace::Yuv => [ChannelLabel::Y, ChannelLabel::U, ChannelLabel::V],
        }
    }

    /// Shifted and normalized components before clamping.
    pub fn forward_unclamped(self, rgb: [u8; 3]) -> [f64; 3] {
        let tab = tables();
        match self {
            ColorSpace::Lms => tab.lms.apply(rgb.map(|c| tab.linear[c as usize])),
            ColorSpace::Lab => {
                let xyz = mat_vec(&SRGB_TO_XYZ, rgb.map(|c| tab.linear[c as usize]));
                let [fx, fy, fz] = [0, 1, 2].map(|i| lab_f(xyz[i] / tab.white_xyz[i]));
                let (l, a, b) = (116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz));
                [l / 100.0, (a + 128.0) / 255.0, (b + 128.0) / 255.0]
            }
            ColorSpace::Yuv => tab.yuv.apply(rgb.map(|c| c as f64 / 255.0)),
        }
    }

    /// Components in `[0, 1]`; out-of-range values are clamped.
    pub fn forward(self, rgb: [u8; 3]) -> [f64; 3] {
        self.forward_unclamped(rgb).map(|v| v.clamp(0.0, 1.0))
    }

    /// Maps components back to gamma-encoded sRGB in `[0, 1]` (unclamped).
    /// Used to verify the forward maps; the encoders never need it.
    pub fn inverse(self, v: [f64; 3]) -> [f64; 3] {
        let tab = tables();
        match self {
            ColorSpace::Lms => tab.lms.invert(v).map(linear_to_srgb),
            ColorSpace::Lab => {
                let (l, a, b) = (v[0] * 100.0, v[1] * 255.0 - 128.0, v[2] * 255.0 - 128.0);
                let fy = (l + 16.0) / 116.0;
                let f = [fy + a / 500.0, fy, fy - b / 200.0];
                let xyz = [0, 1, 2].map(|i| lab_f_inv(f[i]) * tab.white_xyz[i]);
                mat_vec(&invert3(&SRGB_TO_XYZ), xyz).map(linear_to_srgb)
            }
            ColorSpace::Yuv => tab.yuv.invert(v),
        }
    }
}

fn require_color(image: &RawImage) -> Result<()> {
    if image.channels() != 3 {
        return Err(Error::NotColor {
            channels: image.channels(),
        });
    }
    Ok(())
}

/// Rec.601 luma of one pixel, rounded half-up to 8 bits.
pub fn luma(rgb: [u8; 3]) -> u8 {
    let weighted: u32 = rgb.iter().zip(LUMA_MILLI).map(|(&c, w)| c as u32 * w).sum();
    ((weighted + 500) / 1000) as u8
}

/// Grayscale (rod) plane of a colour image.
pub fn to_luminance(image: &RawImage) -> Result<NormalizedPlane> {
    require_color(image)?;
    let pixels: Vec<u8> = (0..image.pixel_count()).map(|i| luma(image.rgb(i))).collect();
    NormalizedPlane::from_pixels(image.width(), image.height(), &pixels, ChannelLabel::L)
}

/// Converts a colour image to three 8-bit-quantized planes.
pub fn convert(image: &RawImage, space: ColorSpace) -> Result<Vec<NormalizedPlane>> {
    require_color(image)?;
    let n = image.pixel_count();
    let mut comps = [vec![0.0; n], vec![0.0; n], vec![0.0; n]];
    for i in 0..n {
        let v = space.forward(image.rgb(i));
        for c in 0..3 {
            comps[c][i] = v[c];
        }
    }
    comps
        .iter()
        .zip(space.labels())
        .map(|(vals, label)| NormalizedPlane::quantize(image.width(), image.height(), vals, label))
        .collect()
}

pub fn rgb_to_lms(image: &RawImage) -> Result<Vec<NormalizedPlane>> {
    convert(image, ColorSpace::Lms)
}

pub fn rgb_to_lab(image: &RawImage) -> Result<Vec<NormalizedPlane>> {
    convert(image, ColorSpace::Lab)
}

pub fn rgb_to_yuv(image: &RawImage) -> Result<Vec<NormalizedPlane>> {
    convert(image, ColorSpace::Yuv)
}

/// Builds the labelled input planes for a channel set.
pub fn assemble_channels(image: &RawImage, spec: ChannelSet) -> Result<Vec<NormalizedPlane>> {
    match spec {
        ChannelSet::Gray if image.channels() == 1 => Ok(normalize(image)),
        ChannelSet::Gray => Ok(vec![to_luminance(image)?.with_label(ChannelLabel::Gray)]),
        ChannelSet::Rgb => {
            require_color(image)?;
            Ok(normalize(image))
        }
        ChannelSet::Rgbl => {
            require_color(image)?;
            let mut planes = normalize(image);
            planes.push(to_luminance(image)?);
            Ok(planes)
        }
        ChannelSet::Lms => rgb_to_lms(image),
        ChannelSet::Lab => rgb_to_lab(image),
        ChannelSet::Yuv => rgb_to_yuv(image),
        ChannelSet::Single(label) => Err(Error::InvalidConfig(format!(
            "channel set for a single '{label}' plane cannot be assembled from an image"
        ))),
    }
}

/// Assembles the channels and encodes each one independently.
pub fn encode_photoreceptor(image: &RawImage, spec: ChannelSet, config: &EncoderConfig) -> Result<SpikeTensor> {
    let planes = assemble_channels(image, spec)?;
    let parts = planes.iter().map(|p| encode_plane(p, config)).collect();
    SpikeTensor::stack(parts, Provenance::new(spec, config))
}

/// Turns decoded planes back into a displayable image: gray for a single
/// plane, the first three planes for RGB and RGBL, and the inverse colour
/// transform for LMS, LAB and YUV. LMS planes hold linear light, so dark
/// components come back coarsely after 8-bit quantization.
pub fn reconstruct_image(planes: &[NormalizedPlane], spec: ChannelSet) -> Result<RawImage> {
    let first = planes
        .first()
        .ok_or_else(|| Error::InvalidImage("no planes to reconstruct".into()))?;
    let (w, h) = (first.width(), first.height());
    if planes.len() != spec.channel_count() || planes.iter().any(|p| (p.width(), p.height()) != (w, h)) {
        return Err(Error::ShapeMismatch(format!(
            "{} planes do not form a {spec} image",
            planes.len()
        )));
    }
    let space = match spec {
        ChannelSet::Gray | ChannelSet::Single(_) => return RawImage::new(w, h, 1, first.to_pixels()),
        ChannelSet::Rgb | ChannelSet::Rgbl => None,
        ChannelSet::Lms => Some(ColorSpace::Lms),
        ChannelSet::Lab => Some(ColorSpace::Lab),
        ChannelSet::Yuv => Some(ColorSpace::Yuv),
    };
    let n = w * h;
    let mut pixels = Vec::with_capacity(3 * n);
    for i in 0..n {
        let v = [0, 1, 2].map(|c| planes[c].value(i));
        let rgb = match space {
            Some(space) => space.inverse(v),
            None => v,
        };
        pixels.extend(rgb.map(|c| quantize_unit(c.clamp(0.0, 1.0))));
    }
    RawImage::new(w, h, 3, pixels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codecs::if_encode;
    use crate::types::Codec;

    fn rgb_image(pixels: &[[u8; 3]]) -> RawImage {
        RawImage::new(pixels.len(), 1, 3, pixels.concat()).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn reconstruction_inverts_assembly() {
        let img = rgb_image(&[[200, 60, 90], [0, 0, 0], [255, 255, 255], [70, 140, 250]]);
        for spec in [ChannelSet::Rgb, ChannelSet::Rgbl, ChannelSet::Lms, ChannelSet::Lab, ChannelSet::Yuv] {
            let back = reconstruct_image(&assemble_channels(&img, spec).unwrap(), spec).unwrap();
            assert_eq!(back.channels(), 3);
            for (a, b) in back.pixels().iter().zip(img.pixels()) {
                assert!((*a as i32 - *b as i32).abs() <= 3, "{spec}: {a} vs {b}");
            }
        }
        let gray = reconstruct_image(&assemble_channels(&img, ChannelSet::Gray).unwrap(), ChannelSet::Gray).unwrap();
        assert_eq!(gray.pixels(), &[luma([200, 60, 90]), 0, 255, luma([70, 140, 250])]);
        assert!(reconstruct_image(&[], ChannelSet::Gray).is_err());
        assert!(reconstruct_image(&assemble_channels(&img, ChannelSet::Rgb).unwrap(), ChannelSet::Rgbl).is_err());
    }

    #[test]
    fn luminance_examples() {
        let img = rgb_image(&[[255, 255, 255], [0, 0, 0], [255, 0, 0]]);
        let l = to_luminance(&img).unwrap();
        assert_eq!(l.value(0), 1.0);
        assert_eq!(l.value(1), 0.0);
        assert_eq!(l.levels()[2], 76);
        assert_eq!(l.label(), ChannelLabel::L);
    }

    #[test]
    fn luminance_needs_colour() {
        let gray = RawImage::uniform_gray(2, 2, 9);
        assert!(matches!(to_luminance(&gray), Err(Error::NotColor { channels: 1 })));
        assert!(rgb_to_lab(&gray).is_err());
        assert!(assemble_channels(&gray, ChannelSet::Rgbl).is_err());
    }

    #[test]
    fn lms_fixed_points() {
        assert_eq!(ColorSpace::Lms.forward([0, 0, 0]), [0.0; 3]);
        for v in ColorSpace::Lms.forward([255, 255, 255]) {
            assert!(close(v, 1.0, 1e-12));
        }
        let gray = ColorSpace::Lms.forward_unclamped([128, 128, 128]);
        assert!(close(gray[0], gray[1], 1e-12) && close(gray[1], gray[2], 1e-12));
        let planes = rgb_to_lms(&rgb_image(&[[128, 128, 128]])).unwrap();
        assert_eq!(planes[0].levels(), planes[1].levels());
        assert_eq!(planes[1].levels(), planes[2].levels());
    }

    #[test]
    fn lab_neutral_axis() {
        let mid = 128.0 / 255.0;
        let black = ColorSpace::Lab.forward([0, 0, 0]);
        assert!(close(black[0], 0.0, 1e-12) && close(black[1], mid, 1e-9) && close(black[2], mid, 1e-9));
        let white = ColorSpace::Lab.forward([255, 255, 255]);
        assert!(close(white[0], 1.0, 1e-9) && close(white[1], mid, 1e-9) && close(white[2], mid, 1e-9));
        let gray = ColorSpace::Lab.forward([119, 119, 119]);
        assert!(close(gray[1], mid, 1.0 / 255.0) && close(gray[2], mid, 1.0 / 255.0));
        // 119 sits near L* = 50
        assert!(close(gray[0], 0.5, 0.01), "{}", gray[0]);
    }

    #[test]
    fn yuv_examples() {
        for g in [0u8, 17, 128, 255] {
            let v = ColorSpace::Yuv.forward([g, g, g]);
            assert!(close(v[0], g as f64 / 255.0, 1e-12));
            assert!(close(v[1], 0.5, 1e-12) && close(v[2], 0.5, 1e-12));
        }
        let red = ColorSpace::Yuv.forward([255, 0, 0]);
        assert!(close(red[0], 0.299, 1e-12));
        assert!(close(red[2], 1.0, 1e-12));
        assert!(close(red[1], 0.5 - 0.299 / 1.772, 1e-12));
        let planes = rgb_to_yuv(&rgb_image(&[[255, 0, 0]])).unwrap();
        assert!(close(planes[0].value(0), 0.299, 1.0 / 255.0));
        assert_eq!(planes[2].value(0), 1.0);
    }

    #[test]
    fn colour_matrix_inverse_is_exact() {
        let lms = ColorMatrix::linear_rgb_to_lms();
        let v = [0.2, 0.7, 0.4];
        let back = lms.invert(lms.apply(v));
        for i in 0..3 {
            assert!(close(back[i], v[i], 1e-12));
        }
    }

    #[test]
    fn round_trips_on_corners() {
        for space in [ColorSpace::Lms, ColorSpace::Lab, ColorSpace::Yuv] {
            for rgb in [[0, 0, 0], [255, 0, 0], [0, 255, 0], [0, 0, 255], [255, 255, 0], [12, 200, 99]] {
                let back = space.inverse(space.forward(rgb));
                for c in 0..3 {
                    assert!(close(back[c], rgb[c] as f64 / 255.0, 1.0 / 255.0), "{space:?} {rgb:?} -> {back:?}");
                }
            }
        }
    }

    #[test]
    fn assemble_channel_sets() {
        let img = rgb_image(&[[10, 20, 30], [200, 100, 0]]);
        let rgbl = assemble_channels(&img, ChannelSet::Rgbl).unwrap();
        let labels: Vec<_> = rgbl.iter().map(|p| p.label()).collect();
        assert_eq!(labels, ChannelSet::Rgbl.labels());
        assert_eq!(&rgbl[..3], &normalize(&img)[..]);
        assert_eq!(assemble_channels(&img, ChannelSet::Rgb).unwrap(), normalize(&img));
        assert_eq!(assemble_channels(&img, ChannelSet::Gray).unwrap()[0].levels(), &[18, 119]);

        let gray = RawImage::new(2, 1, 1, vec![3, 250]).unwrap();
        assert_eq!(assemble_channels(&gray, ChannelSet::Gray).unwrap(), normalize(&gray));
    }

    #[test]
    fn photoreceptor_encoding() {
        let img = rgb_image(&[[10, 20, 30], [200, 100, 0], [255, 255, 255]]);
        let cfg = EncoderConfig::new(Codec::If);
        let t = encode_photoreceptor(&img, ChannelSet::Rgbl, &cfg).unwrap();
        assert_eq!((t.channels(), t.time_steps()), (4, 256));
        assert_eq!(t.labels(), ChannelSet::Rgbl.labels().as_slice());

        let black = rgb_image(&[[0, 0, 0]; 4]);
        assert_eq!(encode_photoreceptor(&black, ChannelSet::Rgb, &cfg).unwrap().total_spikes(), 0);

        let rgb = encode_photoreceptor(&img, ChannelSet::Rgb, &cfg).unwrap();
        let alone = if_encode(&normalize(&img)[0], &cfg);
        let n = alone.len();
        assert_eq!(&rgb.bits()[..n], alone.bits());
    }
}
