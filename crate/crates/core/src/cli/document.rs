//! Serializable graph documents and their text, JSON and DOT renderings.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::groups::{Conjugation, Mat2, SubgroupSpec};
use crate::modgraph::{ModularGraph, VertexKind};
use crate::xicore::{classify_edges, XiGraph};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupEcho {
    /// `family`, `custom` or `preimage`.
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<[[u32; 2]; 2]>>,
    pub order: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexDoc {
    pub id: usize,
    pub kind: VertexKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDoc {
    pub id: usize,
    pub endpoints: [usize; 2],
    pub weight: u32,
    /// A representative triple `[x,y;z]` of the geodesic.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub geodesic: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentDoc {
    /// Vertex ids in cyclic order.
    pub vertices: Vec<usize>,
    /// Edge ids in the same order: edge `i` joins vertex `i` to vertex `i + 1`.
    pub edges: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub level: u32,
    pub group: GroupEcho,
    pub conjugation: [[u32; 2]; 2],
    pub vertices: Vec<VertexDoc>,
    pub edges: Vec<EdgeDoc>,
    pub components: Vec<ComponentDoc>,
    /// `T1a`, `T1b` or `T2` per edge, in edge order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge_types: Option<Vec<String>>,
}

fn rows(m: Mat2) -> [[u32; 2]; 2] {
    [[m.a, m.b], [m.c, m.d]]
}

impl GraphDocument {
    pub fn from_xi(xi: &XiGraph, spec: &SubgroupSpec, conj: Conjugation) -> Result<Self> {
        let mut doc = Self::from_graph(&xi.graph, spec, conj)?;
        for (e, c) in doc.edges.iter_mut().zip(&xi.classes) {
            e.geodesic = Some(c.canonical.to_string());
        }
        Ok(doc)
    }

    pub fn from_graph(g: &ModularGraph, spec: &SubgroupSpec, conj: Conjugation) -> Result<Self> {
        let cycles = g.cycles()?;
        let types = classify_edges(g)?;
        let group = GroupEcho {
            kind: match spec.label() {
                crate::groups::GroupLabel::Family(_) => "family",
                crate::groups::GroupLabel::Custom => "custom",
                crate::groups::GroupLabel::Preimage { .. } => "preimage",
            }
            .to_string(),
            family: spec.family().map(|f| f.tag().to_string()),
            generators: match spec.label() {
                crate::groups::GroupLabel::Custom => spec
                    .generators()
                    .map(|gs| gs.iter().map(|&m| rows(m)).collect()),
                _ => None,
            },
            order: spec.order(),
        };
        Ok(GraphDocument {
            level: spec.level(),
            group,
            conjugation: rows(conj.matrix()),
            vertices: g
                .vertices()
                .iter()
                .enumerate()
                .map(|(id, v)| VertexDoc {
                    id,
                    kind: v.kind,
                    label: v.label.clone(),
                })
                .collect(),
            edges: g
                .edges()
                .into_iter()
                .map(|(d, u, v, w)| EdgeDoc {
                    id: d / 2,
                    endpoints: [u, v],
                    weight: w.value(),
                    geodesic: None,
                })
                .collect(),
            components: cycles
                .iter()
                .map(|c| ComponentDoc {
                    vertices: c.vertices.clone(),
                    edges: c.darts.iter().map(|d| d / 2).collect(),
                })
                .collect(),
            edge_types: Some(types.iter().map(|t| t.to_string()).collect()),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    fn kind_of(&self, v: usize) -> VertexKind {
        self.vertices[v].kind
    }

    /// Human-readable cycle summary.
    pub fn to_text(&self) -> String {
        let describe = |c: &ComponentDoc| {
            let seq: Vec<(VertexKind, u32)> = c
                .vertices
                .iter()
                .zip(&c.edges)
                .map(|(&v, &e)| (self.kind_of(v), self.edges[e].weight))
                .collect();
            let best = canonical_rotation(&seq);
            let kinds: Vec<String> = best.iter().map(|(k, _)| k.letter().to_string()).collect();
            let weights: Vec<String> = best.iter().map(|(_, w)| w.to_string()).collect();
            format!(
                "cycle {}, weights {}",
                kinds.join("\u{2013}"),
                weights.join(",")
            )
        };
        let p = self
            .vertices
            .iter()
            .filter(|v| v.kind == VertexKind::Parabolic)
            .count();
        let e = self.vertices.len() - p;
        let mut out = String::new();
        match self.components.len() {
            1 => out.push_str(&format!("1 component: {}\n", describe(&self.components[0]))),
            k => {
                out.push_str(&format!("{k} components:\n"));
                for c in &self.components {
                    let cp = c
                        .vertices
                        .iter()
                        .filter(|&&v| self.kind_of(v) == VertexKind::Parabolic)
                        .count();
                    out.push_str(&format!(
                        "  {} ({} parabolic, {} elliptic)\n",
                        describe(c),
                        cp,
                        c.vertices.len() - cp
                    ));
                }
            }
        }
        out.push_str(&format!(
            "{p} parabolic, {e} elliptic, {} edges\n",
            self.edges.len()
        ));
        out
    }

    /// Graphviz rendering: parabolic vertices are filled dots, elliptic
    /// vertices hollow dots, weight-2 edges are drawn double.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph xi {\n");
        out.push_str("  node [shape=circle, label=\"\", width=0.15, fixedsize=true];\n");
        for v in &self.vertices {
            let style = match v.kind {
                VertexKind::Parabolic => "style=filled, fillcolor=black",
                VertexKind::Elliptic => "style=solid, fillcolor=white",
            };
            let label = v.label.as_deref().map(dot_escape).unwrap_or_default();
            out.push_str(&format!("  v{} [{style}, xlabel=\"{label}\"];\n", v.id));
        }
        for e in &self.edges {
            let attrs = if e.weight == 2 {
                "color=\"black:invis:black\", weight=2"
            } else {
                "color=black, weight=1"
            };
            out.push_str(&format!(
                "  v{} -- v{} [{attrs}];\n",
                e.endpoints[0], e.endpoints[1]
            ));
        }
        out.push_str("}\n");
        out
    }
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn canonical_rotation(seq: &[(VertexKind, u32)]) -> Vec<(VertexKind, u32)> {
    let n = seq.len();
    let rev: Vec<_> = (0..n)
        .map(|i| {
            let k = (n - i) % n;
            (seq[k].0, seq[(k + n - 1) % n].1)
        })
        .collect();
    let mut best: Vec<(VertexKind, u32)> = seq.to_vec();
    for s in [seq, &rev[..]] {
        for r in 0..n {
            let rot: Vec<_> = s[r..].iter().chain(&s[..r]).copied().collect();
            if rot < best {
                best = rot;
            }
        }
    }
    best
}
