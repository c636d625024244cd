//! Spike raster plots as standalone SVG 1.1.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::types::SpikeTensor;

const LEFT: f64 = 150.0;
const TOP: f64 = 40.0;
const RIGHT: f64 = 20.0;
const LANE: f64 = 28.0;
const AXIS: f64 = 44.0;

fn axis_stride(steps: usize) -> usize {
    let mut stride = 1;
    while steps / stride > 16 {
        stride *= 2;
    }
    stride
}

/// One lane per selected `(x, y, c)` pixel and one tick per spike. Every tick
/// carries its one-based step in a `data-step` attribute.
pub fn write_raster_svg(spikes: &SpikeTensor, selection: &[(usize, usize, usize)]) -> Result<String> {
    if selection.is_empty() {
        return Err(Error::OutOfBounds("empty pixel selection".into()));
    }
    if let Some(&(x, y, c)) = selection.iter().find(|&&(x, y, c)| !spikes.contains(c, y, x)) {
        return Err(Error::OutOfBounds(format!(
            "pixel (x={x}, y={y}, c={c}) outside {}x{}x{}",
            spikes.width(),
            spikes.height(),
            spikes.channels()
        )));
    }

    let steps = spikes.time_steps();
    let step_px = (800.0 / steps.max(1) as f64).clamp(2.0, 40.0);
    let plot_w = step_px * steps as f64;
    let width = LEFT + plot_w + RIGHT;
    let height = TOP + LANE * selection.len() as f64 + AXIS;
    let axis_y = TOP + LANE * selection.len() as f64;
    let prov = spikes.provenance();

    let mut svg = String::new();
    // writes to a String cannot fail
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{LEFT}" y="22" font-family="sans-serif" font-size="14">{} coding, T = {}, channels = {}</text>"#,
        prov.codec.name().to_uppercase(),
        steps,
        prov.channel_set
    );

    for (lane, &(x, y, c)) in selection.iter().enumerate() {
        let top = TOP + LANE * lane as f64;
        let mid = top + LANE / 2.0;
        let fired = spikes.spike_steps(c, y, x);
        let _ = writeln!(
            svg,
            r#"<g class="lane" data-x="{x}" data-y="{y}" data-c="{c}" data-count="{}">"#,
            fired.len()
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="12" text-anchor="end">({x},{y}) {} n={}</text>"#,
            LEFT - 8.0,
            mid + 4.0,
            spikes.labels()[c],
            fired.len()
        );
        let _ = writeln!(
            svg,
            r##"<line x1="{LEFT:.1}" y1="{mid:.1}" x2="{:.1}" y2="{mid:.1}" stroke="#dddddd" stroke-width="1"/>"##,
            LEFT + plot_w
        );
        for step in fired {
            let tx = LEFT + (step as f64 - 0.5) * step_px;
            let _ = writeln!(
                svg,
                r#"<line class="spike" data-step="{step}" x1="{tx:.2}" y1="{:.1}" x2="{tx:.2}" y2="{:.1}" stroke="black" stroke-width="{:.2}"/>"#,
                top + 5.0,
                top + LANE - 5.0,
                (step_px * 0.6).clamp(1.0, 3.0)
            );
        }
        let _ = writeln!(svg, "</g>");
    }

    let _ = writeln!(
        svg,
        r#"<line x1="{LEFT:.1}" y1="{axis_y:.1}" x2="{:.1}" y2="{axis_y:.1}" stroke="black" stroke-width="1"/>"#,
        LEFT + plot_w
    );
    let stride = axis_stride(steps);
    let labelled = std::iter::once(1).chain((stride..=steps).step_by(stride)).filter(|&s| s <= steps);
    let mut last = 0;
    for step in labelled {
        if step == last {
            continue;
        }
        last = step;
        let tx = LEFT + (step as f64 - 0.5) * step_px;
        let _ = writeln!(
            svg,
            r#"<line class="axis-tick" x1="{tx:.2}" y1="{axis_y:.1}" x2="{tx:.2}" y2="{:.1}" stroke="black" stroke-width="1"/>"#,
            axis_y + 5.0
        );
        let _ = writeln!(
            svg,
            r#"<text class="axis-label" x="{tx:.2}" y="{:.1}" font-family="sans-serif" font-size="11" text-anchor="middle">{step}</text>"#,
            axis_y + 18.0
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="12" text-anchor="middle">time step</text>"#,
        LEFT + plot_w / 2.0,
        axis_y + 36.0
    );
    svg.push_str("</svg>\n");
    Ok(svg)
}
