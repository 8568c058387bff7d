// Copyright 2026 the geoshape Authors
// SPDX-License-Identifier: Apache-2.0 OR MIT

//! JSON file formats: shapes, solved paths, and deformation fields.
//!
//! Every file carries `"format": "geoshape/1"`. Numbers are serialized in
//! shortest round-trip decimal form, so write-then-read is lossless for
//! finite doubles.

use crate::curvegeom::Polygon;
use crate::energy::Path;
use crate::vec2::Vec2;
use serde::{Deserialize, Serialize};
use std::fs;
use std::path::Path as FsPath;
use thiserror::Error;

pub const FORMAT: &str = "geoshape/1";

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported format `{got}`, expected `{expected}`")]
    Format { expected: &'static str, got: String },
    #[error("{0}")]
    Invalid(String),
}

fn invalid(msg: impl Into<String>) -> IoError {
    IoError::Invalid(msg.into())
}

/// A single closed curve on disk.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ShapeFile {
    pub format: String,
    pub vertices: Vec<[f64; 2]>,
    pub closed: bool,
}

impl ShapeFile {
    pub fn from_polygon(poly: &Polygon) -> ShapeFile {
        ShapeFile {
            format: FORMAT.to_string(),
            vertices: poly.vertices().iter().map(|v| [v.x, v.y]).collect(),
            closed: true,
        }
    }

    pub fn to_polygon(&self) -> Result<Polygon, IoError> {
        if self.format != FORMAT {
            return Err(IoError::Format {
                expected: FORMAT,
                got: self.format.clone(),
            });
        }
        if !self.closed {
            return Err(invalid("only closed curves are supported"));
        }
        if self.vertices.len() < 3 {
            return Err(invalid(format!(
                "a shape needs at least 3 vertices, got {}",
                self.vertices.len()
            )));
        }
        if let Some(i) = self
            .vertices
            .iter()
            .position(|v| !v[0].is_finite() || !v[1].is_finite())
        {
            return Err(invalid(format!("non-finite coordinate at vertex {i}")));
        }
        Polygon::new(
            self.vertices
                .iter()
                .map(|v| Vec2::new(v[0], v[1]))
                .collect(),
        )
        .map_err(|e| invalid(e.to_string()))
    }
}

/// A solved (or hand-built) path of curves on disk.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PathFile {
    pub format: String,
    #[serde(rename = "T")]
    pub t_steps: usize,
    #[serde(rename = "N")]
    pub vertex_count: usize,
    pub metric: String,
    pub objective: f64,
    pub slices: Vec<Vec<[f64; 2]>>,
}

impl PathFile {
    pub fn from_path(path: &Path, metric: &str, objective: f64) -> PathFile {
        PathFile {
            format: FORMAT.to_string(),
            t_steps: path.time_steps(),
            vertex_count: path.vertex_count(),
            metric: metric.to_string(),
            objective,
            slices: path
                .slices()
                .iter()
                .map(|s| s.vertices().iter().map(|v| [v.x, v.y]).collect())
                .collect(),
        }
    }

    pub fn to_path(&self) -> Result<Path, IoError> {
        if self.format != FORMAT {
            return Err(IoError::Format {
                expected: FORMAT,
                got: self.format.clone(),
            });
        }
        if self.slices.len() != self.t_steps + 1 {
            return Err(invalid(format!(
                "expected T+1 = {} slices, got {}",
                self.t_steps + 1,
                self.slices.len()
            )));
        }
        let polygons: Result<Vec<Polygon>, IoError> = self
            .slices
            .iter()
            .enumerate()
            .map(|(i, slice)| {
                if slice.len() != self.vertex_count {
                    return Err(invalid(format!(
                        "slice {i} has {} vertices, expected N = {}",
                        slice.len(),
                        self.vertex_count
                    )));
                }
                if slice.iter().any(|v| !v[0].is_finite() || !v[1].is_finite()) {
                    return Err(invalid(format!("non-finite coordinate in slice {i}")));
                }
                Polygon::new(slice.iter().map(|v| Vec2::new(v[0], v[1])).collect())
                    .map_err(|e| invalid(format!("slice {i}: {e}")))
            })
            .collect();
        Path::new(polygons?).map_err(|e| invalid(e.to_string()))
    }
}

/// A per-vertex deformation field on disk.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct FieldFile {
    pub format: String,
    pub vectors: Vec<[f64; 2]>,
}

impl FieldFile {
    pub fn from_field(field: &[Vec2]) -> FieldFile {
        FieldFile {
            format: FORMAT.to_string(),
            vectors: field.iter().map(|v| [v.x, v.y]).collect(),
        }
    }

    pub fn to_field(&self) -> Result<Vec<Vec2>, IoError> {
        if self.format != FORMAT {
            return Err(IoError::Format {
                expected: FORMAT,
                got: self.format.clone(),
            });
        }
        if let Some(i) = self
            .vectors
            .iter()
            .position(|v| !v[0].is_finite() || !v[1].is_finite())
        {
            return Err(invalid(format!("non-finite component at vertex {i}")));
        }
        Ok(self.vectors.iter().map(|v| Vec2::new(v[0], v[1])).collect())
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: impl AsRef<FsPath>) -> Result<T, IoError> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn write_json<T: Serialize>(path: impl AsRef<FsPath>, value: &T) -> Result<(), IoError> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

pub fn load_shape(path: impl AsRef<FsPath>) -> Result<Polygon, IoError> {
    read_json::<ShapeFile>(path)?.to_polygon()
}

pub fn save_shape(path: impl AsRef<FsPath>, poly: &Polygon) -> Result<(), IoError> {
    write_json(path, &ShapeFile::from_polygon(poly))
}
