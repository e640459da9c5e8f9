//! From outline curves to an oriented set of nondegenerate Coons patches.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bezulate::{bezulate, BezulateError, BezulateLimits};
use crate::coons::{make_nondegenerate, Certificate, CoonsError, RepairOptions, RepairedPatch};
use crate::geom::{Affine3, ClosedCurve, CubicSegment, GeomError, Patch, Point2, Point3};
use crate::partition::{partition, PartitionError};

/// Serialized closed curve: a list of segments, each four `[x, y]` points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveRecord {
    pub segments: Vec<[Point2; 4]>,
}

impl CurveRecord {
    pub fn from_curve(c: &ClosedCurve) -> Self {
        Self { segments: c.segments().iter().map(CubicSegment::points).collect() }
    }

    pub fn to_curve(&self) -> Result<ClosedCurve, GeomError> {
        ClosedCurve::new(self.segments.iter().map(|p| CubicSegment::from_points(*p)).collect())
    }
}

fn curve_json(c: &ClosedCurve) -> String {
    serde_json::to_string(&CurveRecord::from_curve(c)).unwrap_or_default()
}

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("partition: {0}")]
    Partition(#[from] PartitionError),
    #[error("bezulate: {source} (curve {curve})")]
    Bezulate { curve: String, source: BezulateError },
    #[error("coons: {source} (curve {curve})")]
    Coons { curve: String, source: CoonsError },
    #[error("transform must be a rotation times a uniform scale")]
    NotSimilarity,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Plane {
    pub origin: Point3,
    pub u_axis: Point3,
    pub v_axis: Point3,
}

impl Default for Plane {
    fn default() -> Self {
        Self { origin: Point3::default(), u_axis: Point3::new(1.0, 0.0, 0.0), v_axis: Point3::new(0.0, 1.0, 0.0) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PatchEntry {
    pub control: [[Point3; 4]; 4],
    pub orientation: i8,
    /// Index of the top-level input curve whose region produced the patch.
    pub source_curve: usize,
    pub history: Vec<String>,
    pub certificate: String,
}

impl PatchEntry {
    pub fn patch(&self) -> Patch {
        Patch { control: self.control, orientation: self.orientation }
    }

    fn from_repaired(r: &RepairedPatch, source_curve: usize, prefix: &[String]) -> Self {
        let mut history = prefix.to_vec();
        history.extend(r.history.iter().cloned());
        Self {
            control: r.patch.control,
            orientation: r.patch.orientation,
            source_curve,
            history,
            certificate: match r.certificate {
                Certificate::SignTest => "sign-test".into(),
                Certificate::ProbeGrid => "probe-grid".into(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PatchSetDocument {
    pub patches: Vec<PatchEntry>,
    pub discarded: Vec<PatchEntry>,
    pub plane: Plane,
}

impl PatchSetDocument {
    pub fn from_patches(patches: &[Patch]) -> Self {
        Self {
            patches: patches
                .iter()
                .enumerate()
                .map(|(k, p)| PatchEntry {
                    control: p.control,
                    orientation: p.orientation,
                    source_curve: k,
                    history: Vec::new(),
                    certificate: "none".into(),
                })
                .collect(),
            discarded: Vec::new(),
            plane: Plane::default(),
        }
    }

    pub fn kept_patches(&self) -> Vec<Patch> {
        self.patches.iter().map(PatchEntry::patch).collect()
    }
}

/// Intermediate geometry, for diagnostics output.
#[derive(Debug, Clone, Default)]
pub struct PipelineTrace {
    /// Simply connected regions produced by the hole-merging stage.
    pub regions: Vec<ClosedCurve>,
    /// Every straight cut made: hole connections, bezulate chords, split lines.
    pub chords: Vec<CubicSegment>,
    /// Boundaries of the kept patches.
    pub patch_boundaries: Vec<ClosedCurve>,
}

pub fn region_to_patches(curves: &[ClosedCurve]) -> Result<PatchSetDocument, PipelineError> {
    region_to_patches_traced(curves, RepairOptions::default()).map(|(doc, _)| doc)
}

pub fn region_to_patches_traced(
    curves: &[ClosedCurve],
    opts: RepairOptions,
) -> Result<(PatchSetDocument, PipelineTrace), PipelineError> {
    let parts = partition(curves)?;
    let mut trace = PipelineTrace::default();
    for cut in &parts.cuts {
        trace.chords.push(CubicSegment::line(cut.a, cut.b));
        trace.chords.push(CubicSegment::line(cut.a_return, cut.c));
    }
    let mut doc = PatchSetDocument { patches: Vec::new(), discarded: Vec::new(), plane: Plane::default() };
    for (pi, piece) in parts.pieces.iter().enumerate() {
        trace.regions.push(piece.curve.clone());
        let pieces = bezulate(&piece.curve, BezulateLimits::default())
            .map_err(|source| PipelineError::Bezulate { curve: curve_json(&piece.curve), source })?;
        trace.chords.extend(pieces.chords.iter().copied());
        for (bi, c) in pieces.curves.iter().enumerate() {
            let repaired = make_nondegenerate(c, opts)
                .map_err(|source| PipelineError::Coons { curve: curve_json(c), source })?;
            trace.chords.extend(repaired.cuts.iter().copied());
            let prefix = [format!("region:{pi}"), format!("bezulate:{bi}")];
            for r in &repaired.kept {
                trace.patch_boundaries.push(r.boundary.clone());
                doc.patches.push(PatchEntry::from_repaired(r, piece.source, &prefix));
            }
            for r in &repaired.discarded {
                doc.discarded.push(PatchEntry::from_repaired(r, piece.source, &prefix));
            }
        }
    }
    Ok((doc, trace))
}

/// Maps a planar patch set into 3-space. Reflections flip orientation flags.
pub fn place_in_3d(doc: &PatchSetDocument, t: &Affine3) -> Result<PatchSetDocument, PipelineError> {
    let scale = t.similarity_scale(1e-9).ok_or(PipelineError::NotSimilarity)?;
    let flip = t.determinant() < 0.0;
    let map_entry = |e: &PatchEntry| {
        let mut e = e.clone();
        e.control = e.control.map(|row| row.map(|p| t.apply(p)));
        if flip {
            e.orientation = -e.orientation;
        }
        e
    };
    let axis = |v: Point3| t.apply_vector(v) * (1.0 / scale);
    Ok(PatchSetDocument {
        patches: doc.patches.iter().map(map_entry).collect(),
        discarded: doc.discarded.iter().map(map_entry).collect(),
        plane: Plane { origin: t.apply(doc.plane.origin), u_axis: axis(doc.plane.u_axis), v_axis: axis(doc.plane.v_axis) },
    })
}
