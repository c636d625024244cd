//! Fixtures shared by the encoder benchmarks.

use photospike::RawImage;

/// Deterministic `side x side` colour test card: horizontal red ramp, vertical green
/// ramp and a diagonal blue pattern.
pub fn test_card(side: usize) -> RawImage {
    let mut pixels = Vec::with_capacity(side * side * 3);
    for y in 0..side {
        for x in 0..side {
            let r = (x * 255 / side.max(2).saturating_sub(1)).min(255) as u8;
            let g = (y * 255 / side.max(2).saturating_sub(1)).min(255) as u8;
            let b = ((x + y) * 37 % 256) as u8;
            pixels.extend([r, g, b]);
        }
    }
    RawImage::new(side, side, 3, pixels).expect("dimensions match the buffer")
}

/// `count` test cards with the pixel values shifted so frames differ.
pub fn dataset(count: usize, side: usize) -> Vec<RawImage> {
    let base = test_card(side);
    (0..count)
        .map(|k| {
            let shifted = base.pixels().iter().map(|&p| p.wrapping_add((k * 13) as u8)).collect();
            RawImage::new(side, side, 3, shifted).expect("same shape as the base card")
        })
        .collect()
}
