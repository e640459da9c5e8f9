//! The `geokit` command line: `patches`, `winding`, `bounds` and `sphere`.
//!
//! Exit codes: 0 on success, 1 on input or pipeline errors (a JSON error object
//! goes to standard error), 2 when a winding query point lies on the boundary.

pub mod input;
pub mod svg;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::bounds::{fov_angle, patches_bbox, BoundsError};
use crate::coons::{RepairOptions, SplitStrategy};
use crate::geom::{Affine3, Point2};
use crate::pipeline::{region_to_patches_traced, PatchSetDocument, PipelineError};
use crate::quadric::{radius_error, unit_sphere, QuadricError};
use crate::winding::{total_winding, WindingError};
use input::InputError;

#[derive(Debug, Parser)]
#[command(name = "geokit", version, about = "Coons patches from closed Bézier outlines")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Strategy {
    Quartic,
    Midpoint,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Partition an outline into nondegenerate Coons patches (JSON on stdout).
    Patches {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        /// Also write a diagnostic SVG overlay.
        #[arg(long, value_name = "FILE")]
        emit_svg: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "quartic")]
        strategy: Strategy,
    },
    /// Total winding number of the outline about a point.
    Winding {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(allow_hyphen_values = true)]
        x: f64,
        #[arg(allow_hyphen_values = true)]
        y: f64,
    },
    /// Bounding box (or field of view) of a patch document or outline.
    Bounds {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        /// Report the full perspective field-of-view angle instead of the box.
        #[arg(long)]
        fov: bool,
        /// Row-major 3x4 eye transform "m11,...,m34" applied before measuring.
        #[arg(long, value_name = "M", allow_hyphen_values = true)]
        projected: Option<String>,
        #[arg(long, default_value_t = crate::bounds::DEFAULT_DEPTH)]
        depth: u32,
    },
    /// The eight-patch unit sphere.
    Sphere {
        /// Report the largest radius deviation over an N x N grid per patch.
        #[arg(long, value_name = "N", value_parser = clap::value_parser!(u32).range(2..))]
        accuracy: Option<u32>,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error(transparent)]
    Winding(#[from] WindingError),
    #[error(transparent)]
    Quadric(#[from] QuadricError),
    #[error("invalid --projected: {0}")]
    Transform(String),
    #[error("cannot write {path}: {message}")]
    Output { path: String, message: String },
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Input(_) => "input",
            CliError::Pipeline(PipelineError::Partition(_)) => "partition",
            CliError::Pipeline(PipelineError::Bezulate { .. }) => "bezulate",
            CliError::Pipeline(PipelineError::Coons { .. }) => "coons",
            CliError::Pipeline(PipelineError::NotSimilarity) => "placement",
            CliError::Bounds(BoundsError::NonPositiveDepth { .. }) => "NonPositiveDepth",
            CliError::Bounds(_) => "bounds",
            CliError::Winding(_) => "OnBoundary",
            CliError::Quadric(_) => "usage",
            CliError::Transform(_) => "usage",
            CliError::Output { .. } => "output",
        }
    }

    fn exit_code(&self) -> i32 {
        match self {
            CliError::Winding(WindingError::OnBoundary) => 2,
            _ => 1,
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// Rounds to 12 significant digits, then serializes as the shortest decimal.
fn sig12(x: f64) -> f64 {
    format!("{x:.11e}").parse().unwrap_or(x)
}

fn parse_transform(s: &str) -> Result<Affine3, CliError> {
    let vals: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| CliError::Transform(format!("{t:?}: {e}"))))
        .collect::<Result<_, _>>()?;
    let m: [f64; 12] = vals
        .try_into()
        .map_err(|v: Vec<f64>| CliError::Transform(format!("expected 12 values, got {}", v.len())))?;
    let t = Affine3::from_row_major(m);
    if !t.is_finite() {
        return Err(CliError::Transform("non-finite entry".into()));
    }
    Ok(t)
}

/// A patch document, or an outline that is run through the pipeline first.
fn load_patch_document(path: &Path) -> Result<PatchSetDocument, CliError> {
    let text = input::read_file(path)?;
    if let Ok(doc) = serde_json::from_str::<PatchSetDocument>(&text) {
        return Ok(doc);
    }
    let curves = input::load_curves(path)?;
    Ok(region_to_patches_traced(&curves, RepairOptions::default())?.0)
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let text = match cli.command {
        Command::Patches { input, emit_svg, strategy } => {
            let curves = input::load_curves(&input)?;
            let opts = RepairOptions {
                strategy: match strategy {
                    Strategy::Quartic => SplitStrategy::Quartic,
                    Strategy::Midpoint => SplitStrategy::Midpoint,
                },
                ..RepairOptions::default()
            };
            let (doc, trace) = region_to_patches_traced(&curves, opts)?;
            if let Some(path) = emit_svg {
                std::fs::write(&path, svg::render(&curves, &trace)).map_err(|e| CliError::Output {
                    path: path.display().to_string(),
                    message: e.to_string(),
                })?;
            }
            to_json(&doc)
        }
        Command::Winding { input, x, y } => {
            let curves = input::load_curves(&input)?;
            format!("{}\n", total_winding(&curves, Point2::new(x, y))?)
        }
        Command::Bounds { input, fov, projected, depth } => {
            let doc = load_patch_document(&input)?;
            let eye = projected.as_deref().map(parse_transform).transpose()?.unwrap_or(Affine3::IDENTITY);
            let patches = doc.kept_patches();
            if fov {
                let a = fov_angle(&patches, &eye, depth)?;
                to_json(&json!({ "fov_radians": sig12(a), "fov_degrees": sig12(a.to_degrees()) }))
            } else {
                let moved: Vec<_> = patches.iter().map(|p| p.map(|q| eye.apply(q))).collect();
                let b = patches_bbox(&moved, depth)?;
                let v = |p: crate::geom::Point3| [sig12(p.x), sig12(p.y), sig12(p.z)];
                to_json(&json!({ "min": v(b.min), "max": v(b.max) }))
            }
        }
        Command::Sphere { accuracy } => {
            let patches = unit_sphere();
            let doc = PatchSetDocument::from_patches(&patches);
            let mut value = serde_json::to_value(&doc).expect("serializable");
            if let Some(n) = accuracy {
                value["radius_error"] = json!(radius_error(&patches, n as usize)?);
            }
            to_json(&value)
        }
    };
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::Output { path: "<stdout>".into(), message: e.to_string() })
}

/// Runs the command line `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let body = json!({ "error": { "kind": "usage", "message": e.to_string().trim_end() } });
            let _ = writeln!(err, "{body}");
            return 1;
        }
    };
    match execute(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let body = json!({ "error": { "kind": e.kind(), "message": e.to_string() } });
            let _ = writeln!(err, "{body}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig12_rounds() {
        assert_eq!(sig12(0.92729521800161223), 0.927295218002);
        assert_eq!(sig12(1.0), 1.0);
        assert_eq!(sig12(-0.0), 0.0);
    }

    #[test]
    fn transform_parsing() {
        assert!(parse_transform("1,0,0,0,0,1,0,0,0,0,1,1").is_ok());
        assert!(parse_transform("1,0,0").is_err());
        assert!(parse_transform("1,0,0,0,0,1,0,0,0,0,1,x").is_err());
    }

    #[test]
    fn accuracy_one_is_a_usage_error() {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        assert_eq!(run(["geokit", "sphere", "--accuracy", "1"], &mut o, &mut e), 1);
        assert!(String::from_utf8(e).unwrap().contains("usage"));
    }
}
