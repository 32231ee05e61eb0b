//! Quiver spec files and the shipped presets.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Field;
use crate::quiver::Quiver;

/// `{name, vertices, arrows: [[s, t], …], p, L}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverSpec {
    pub name: String,
    pub vertices: usize,
    pub arrows: Vec<[usize; 2]>,
    pub p: u32,
    #[serde(rename = "L")]
    pub bound: usize,
}

impl QuiverSpec {
    pub fn quiver(&self) -> Result<Arc<Quiver>> {
        let arrows = self.arrows.iter().map(|a| (a[0], a[1])).collect();
        Ok(Arc::new(Quiver::new(self.name.clone(), self.vertices, arrows)?))
    }

    pub fn field(&self) -> Result<Field> {
        Field::new(self.p)
    }

    pub fn from_json(text: &str) -> Result<QuiverSpec> {
        let spec: QuiverSpec = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        spec.quiver()?;
        spec.field()?;
        if spec.bound < 2 {
            return Err(Error::Parse("L must be at least 2".into()));
        }
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serialises")
    }
}

fn spec(name: &str, vertices: usize, arrows: &[[usize; 2]], p: u32, bound: usize) -> QuiverSpec {
    QuiverSpec { name: name.into(), vertices, arrows: arrows.to_vec(), p, bound }
}

pub const PRESET_NAMES: [&str; 4] = ["kronecker", "a21", "a22_sink_source", "d4_tilde"];

/// A shipped quiver with its default field and length bound.
pub fn preset(name: &str) -> Result<QuiverSpec> {
    match name {
        "kronecker" => Ok(spec("kronecker", 2, &[[0, 1], [0, 1]], 2, 10)),
        // 0 → 1 → 2 together with 0 → 2
        "a21" => Ok(spec("a21", 3, &[[0, 1], [1, 2], [0, 2]], 2, 17)),
        // square with sinks 1, 3 and sources 0, 2
        "a22_sink_source" => Ok(spec("a22_sink_source", 4, &[[0, 1], [2, 1], [2, 3], [0, 3]], 2, 12)),
        // four leaves into a hub; F_3 is the smallest field with a rational homogeneous tube
        "d4_tilde" => Ok(spec("d4_tilde", 5, &[[0, 4], [1, 4], [2, 4], [3, 4]], 3, 14)),
        _ => Err(Error::Parse(format!("unknown preset {name}; expected one of {}", PRESET_NAMES.join(", ")))),
    }
}
