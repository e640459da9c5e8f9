//! Diagnostic SVG overlay: input curves, cut chords, extracted regions and
//! patch boundaries, in the input's coordinate system (y up).

use std::fmt::Write;

use crate::geom::{ClosedCurve, CubicSegment, Rect};
use crate::pipeline::PipelineTrace;

fn segment_data(out: &mut String, s: &CubicSegment, first: bool) {
    if first {
        let _ = write!(out, "M{} {} ", s.p0.x, s.p0.y);
    }
    let _ = write!(out, "C{} {} {} {} {} {} ", s.p1.x, s.p1.y, s.p2.x, s.p2.y, s.p3.x, s.p3.y);
}

fn curve_data(c: &ClosedCurve) -> String {
    let mut d = String::new();
    for (k, s) in c.segments().iter().enumerate() {
        segment_data(&mut d, s, k == 0);
    }
    d.push('Z');
    d
}

fn layer(out: &mut String, id: &str, style: &str, paths: impl Iterator<Item = String>) {
    let _ = writeln!(out, "  <g id=\"{id}\" {style}>");
    for d in paths {
        let _ = writeln!(out, "    <path d=\"{d}\"/>");
    }
    out.push_str("  </g>\n");
}

pub fn render(input: &[ClosedCurve], trace: &PipelineTrace) -> String {
    let bbox = input.iter().map(|c| c.control_bbox()).reduce(|a, b| a.union(&b)).unwrap_or(Rect {
        min: Default::default(),
        max: Default::default(),
    });
    let pad = 0.05 * bbox.diagonal().max(1e-9);
    let (x0, y0) = (bbox.min.x - pad, bbox.min.y - pad);
    let (w, h) = (bbox.max.x - bbox.min.x + 2.0 * pad, bbox.max.y - bbox.min.y + 2.0 * pad);
    let stroke = pad / 10.0;

    let mut out = String::new();
    let _ = writeln!(out, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>");
    let _ = writeln!(out, "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{x0} {} {w} {h}\">", -(y0 + h));
    let _ = writeln!(out, " <g transform=\"scale(1,-1)\" stroke-width=\"{stroke}\">");
    layer(&mut out, "regions", "fill=\"gray\" fill-opacity=\"0.35\" stroke=\"none\"", trace.regions.iter().map(curve_data));
    layer(&mut out, "input", "fill=\"none\" stroke=\"black\"", input.iter().map(curve_data));
    layer(
        &mut out,
        "chords",
        "fill=\"none\" stroke=\"red\"",
        trace.chords.iter().map(|s| {
            let mut d = String::new();
            segment_data(&mut d, s, true);
            d.trim_end().to_string()
        }),
    );
    layer(&mut out, "patches", "fill=\"none\" stroke=\"blue\"", trace.patch_boundaries.iter().map(curve_data));
    out.push_str(" </g>\n</svg>\n");
    out
}
