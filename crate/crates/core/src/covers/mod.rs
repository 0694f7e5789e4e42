//! Cover constructions and the [`Cover`] value they produce.

mod cactus;
mod planar;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::{Graph, VertexId};

pub use cactus::{cactus_cover, coarse_cactus_cover};
pub use planar::{annulus_cover, lemma0_cover, planar_cover};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Cactus,
    CoarseCactus,
    PlanarPipeline,
}

impl Algorithm {
    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Cactus => "cactus",
            Algorithm::CoarseCactus => "coarse-cactus",
            Algorithm::PlanarPipeline => "planar-pipeline",
        }
    }
}

/// One set of a cover with the construction step that produced it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoverSet {
    pub label: String,
    /// Outer annulus index.
    pub annulus: usize,
    /// Component id within the construction (graph component for the cactus
    /// covers, band component for the planar pipeline).
    #[serde(default)]
    pub component: usize,
    /// Chain class id within its component.
    #[serde(default)]
    pub class: usize,
    pub vertices: Vec<VertexId>,
}

/// A labeled family of vertex sets, tagged with its algorithm and constants.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cover {
    pub algorithm: Algorithm,
    pub params: BTreeMap<String, f64>,
    pub base: VertexId,
    pub sets: Vec<CoverSet>,
}

impl Cover {
    pub(crate) fn new(
        algorithm: Algorithm,
        base: VertexId,
        params: &[(&str, f64)],
        mut sets: Vec<CoverSet>,
    ) -> Self {
        for s in &mut sets {
            s.vertices.sort_unstable();
        }
        sets.retain(|s| !s.vertices.is_empty());
        sets.sort_by_key(|s| s.vertices[0]);
        Cover {
            algorithm,
            params: params.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            base,
            sets,
        }
    }

    pub fn param(&self, name: &str) -> Option<f64> {
        self.params.get(name).copied()
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Index of the (first) set holding each vertex.
    pub fn membership(&self, n: usize) -> Vec<Option<usize>> {
        let mut owner = vec![None; n];
        for (i, s) in self.sets.iter().enumerate() {
            for &v in &s.vertices {
                if let Some(slot) = owner.get_mut(v as usize) {
                    slot.get_or_insert(i);
                }
            }
        }
        owner
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string(self).expect("cover serialization cannot fail");
        s.push('\n');
        s
    }

    /// Graphviz rendering with one color class per set.
    pub fn to_dot(&self, graph: &Graph) -> String {
        graph.to_dot(Some(&self.membership(graph.vertex_count())))
    }
}
