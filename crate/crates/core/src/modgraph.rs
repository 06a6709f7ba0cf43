//! Modular graphs: disjoint unions of cycles with parabolic and elliptic
//! vertices and edges of weight 1 or 2, stored as darts with an involution.
//! Includes cycle decomposition, canonical cycle signatures, isomorphism
//! and the product of two modular graphs.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VertexKind {
    #[serde(rename = "parabolic")]
    Parabolic,
    #[serde(rename = "elliptic")]
    Elliptic,
}

impl VertexKind {
    pub fn letter(self) -> char {
        match self {
            VertexKind::Parabolic => 'P',
            VertexKind::Elliptic => 'E',
        }
    }
}

/// Edge weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Weight {
    One,
    Two,
}

impl Weight {
    pub fn value(self) -> u32 {
        match self {
            Weight::One => 1,
            Weight::Two => 2,
        }
    }

    pub fn from_value(w: u32) -> Option<Weight> {
        match w {
            1 => Some(Weight::One),
            2 => Some(Weight::Two),
            _ => None,
        }
    }

    /// The complementary weight `w' = 3 - w`.
    pub fn complement(self) -> Weight {
        match self {
            Weight::One => Weight::Two,
            Weight::Two => Weight::One,
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub kind: VertexKind,
    pub label: Option<String>,
}

/// A directed half of an edge. Its target is the source of its partner
/// under `tau`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Dart {
    pub source: usize,
    pub weight: Weight,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ModularGraph {
    vertices: Vec<Vertex>,
    darts: Vec<Dart>,
    tau: Vec<usize>,
}

/// One cycle, listed as consecutive vertices and the darts leaving them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    pub vertices: Vec<usize>,
    pub darts: Vec<usize>,
}

/// Canonical form of a cycle: the sequence of (vertex kind, weight of the
/// edge to the next vertex), minimized over rotations and both directions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleSignature(pub Vec<(VertexKind, Weight)>);

impl CycleSignature {
    pub fn from_sequence(seq: &[(VertexKind, Weight)]) -> Self {
        let n = seq.len();
        // Reverse direction: vertex k_i followed by the edge into it.
        let rev: Vec<(VertexKind, Weight)> = (0..n)
            .map(|i| {
                let k = (n - i) % n;
                (seq[k].0, seq[(k + n - 1) % n].1)
            })
            .collect();
        let mut best: Option<Vec<(VertexKind, Weight)>> = None;
        for s in [seq, &rev[..]] {
            for r in 0..n {
                let rot: Vec<_> = s[r..].iter().chain(&s[..r]).copied().collect();
                if best.as_ref().is_none_or(|b| rot < *b) {
                    best = Some(rot);
                }
            }
        }
        CycleSignature(best.unwrap_or_default())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for CycleSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, w)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}{}", k.letter(), w)?;
        }
        Ok(())
    }
}

/// Per-component counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentStats {
    pub parabolic: usize,
    pub elliptic: usize,
    pub weights: Vec<Weight>,
}

impl ModularGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Build from raw parts, validating the dart involution and edge types.
    pub fn from_parts(vertices: Vec<Vertex>, darts: Vec<Dart>, tau: Vec<usize>) -> Result<Self> {
        let g = ModularGraph {
            vertices,
            darts,
            tau,
        };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<()> {
        if self.tau.len() != self.darts.len() {
            return Err(Error::Invariant(
                "tau and dart lists differ in length".into(),
            ));
        }
        for (d, &e) in self.tau.iter().enumerate() {
            if e >= self.darts.len() || self.tau[e] != d || e == d {
                return Err(Error::Invariant(format!(
                    "tau is not a fixed-point-free involution at dart {d}"
                )));
            }
            if self.darts[d].weight != self.darts[e].weight {
                return Err(Error::Invariant(format!(
                    "dart {d} and its reverse differ in weight"
                )));
            }
            if self.darts[d].source >= self.vertices.len() {
                return Err(Error::Invariant(format!("dart {d} has no source vertex")));
            }
            if self.kind(self.darts[d].source) == VertexKind::Elliptic
                && self.kind(self.darts[e].source) == VertexKind::Elliptic
            {
                return Err(Error::Invariant(format!(
                    "edge of dart {d} joins two elliptic vertices"
                )));
            }
        }
        Ok(())
    }

    pub fn add_vertex(&mut self, kind: VertexKind, label: Option<String>) -> usize {
        self.vertices.push(Vertex { kind, label });
        self.vertices.len() - 1
    }

    /// Add an undirected edge; returns its first dart (source `u`).
    pub fn add_edge(&mut self, u: usize, v: usize, weight: Weight) -> usize {
        let d = self.darts.len();
        self.darts.push(Dart { source: u, weight });
        self.darts.push(Dart { source: v, weight });
        self.tau.push(d + 1);
        self.tau.push(d);
        d
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn darts(&self) -> &[Dart] {
        &self.darts
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.darts.len() / 2
    }

    pub fn kind(&self, v: usize) -> VertexKind {
        self.vertices[v].kind
    }

    pub fn tau(&self, d: usize) -> usize {
        self.tau[d]
    }

    pub fn source(&self, d: usize) -> usize {
        self.darts[d].source
    }

    pub fn target(&self, d: usize) -> usize {
        self.darts[self.tau[d]].source
    }

    pub fn weight(&self, d: usize) -> Weight {
        self.darts[d].weight
    }

    /// Undirected edges as `(first dart, u, v, weight)`, one per tau-pair.
    pub fn edges(&self) -> Vec<(usize, usize, usize, Weight)> {
        (0..self.darts.len())
            .filter(|&d| d < self.tau[d])
            .map(|d| (d, self.source(d), self.target(d), self.weight(d)))
            .collect()
    }

    pub fn parabolic_count(&self) -> usize {
        self.vertices
            .iter()
            .filter(|v| v.kind == VertexKind::Parabolic)
            .count()
    }

    pub fn elliptic_count(&self) -> usize {
        self.vertices
            .iter()
            .filter(|v| v.kind == VertexKind::Elliptic)
            .count()
    }

    fn darts_at(&self) -> Vec<Vec<usize>> {
        let mut at = vec![Vec::new(); self.vertices.len()];
        for (d, dart) in self.darts.iter().enumerate() {
            at[dart.source].push(d);
        }
        at
    }

    /// Decompose into cycles. Fails on the first vertex whose valence is
    /// not 2 (loops count twice).
    pub fn cycles(&self) -> Result<Vec<Cycle>> {
        let at = self.darts_at();
        for (v, ds) in at.iter().enumerate() {
            if ds.len() != 2 {
                return Err(Error::Valence {
                    vertex: v,
                    valence: ds.len(),
                });
            }
        }
        let mut seen = vec![false; self.darts.len()];
        let mut out = Vec::new();
        // Start from the lowest unvisited vertex so the output is deterministic.
        for v in 0..self.vertices.len() {
            let start = at[v][0];
            if seen[start] {
                continue;
            }
            let mut cycle = Cycle {
                vertices: Vec::new(),
                darts: Vec::new(),
            };
            let mut d = start;
            loop {
                seen[d] = true;
                seen[self.tau[d]] = true;
                cycle.vertices.push(self.source(d));
                cycle.darts.push(d);
                let back = self.tau[d];
                let here = &at[self.darts[back].source];
                let next = if here[0] == back { here[1] } else { here[0] };
                if next == start {
                    break;
                }
                d = next;
            }
            out.push(cycle);
        }
        Ok(out)
    }

    fn signature_of(&self, c: &Cycle) -> CycleSignature {
        let seq: Vec<_> = c
            .darts
            .iter()
            .map(|&d| (self.kind(self.source(d)), self.weight(d)))
            .collect();
        CycleSignature::from_sequence(&seq)
    }

    /// The sorted multiset of cycle signatures (loops and multi-edges
    /// included); fails with the first vertex of valence other than 2.
    pub fn verify_cyclic(&self) -> Result<Vec<CycleSignature>> {
        let mut sigs: Vec<_> = self
            .cycles()?
            .iter()
            .map(|c| self.signature_of(c))
            .collect();
        sigs.sort();
        Ok(sigs)
    }

    /// Every vertex meets exactly one edge of each weight (so no loops).
    pub fn is_regular(&self) -> bool {
        self.darts_at().iter().all(|ds| {
            ds.len() == 2 && self.weight(ds[0]) != self.weight(ds[1]) && self.tau[ds[0]] != ds[1]
        })
    }

    pub fn component_stats(&self) -> Result<Vec<ComponentStats>> {
        Ok(self
            .cycles()?
            .iter()
            .map(|c| {
                let parabolic = c
                    .vertices
                    .iter()
                    .filter(|&&v| self.kind(v) == VertexKind::Parabolic)
                    .count();
                let mut weights: Vec<Weight> = c.darts.iter().map(|&d| self.weight(d)).collect();
                weights.sort();
                ComponentStats {
                    parabolic,
                    elliptic: c.vertices.len() - parabolic,
                    weights,
                }
            })
            .collect())
    }

    /// Disjoint union.
    pub fn disjoint_union(&self, other: &ModularGraph) -> ModularGraph {
        let mut g = self.clone();
        let vo = g.vertices.len();
        let dof = g.darts.len();
        g.vertices.extend(other.vertices.iter().cloned());
        g.darts.extend(other.darts.iter().map(|d| Dart {
            source: d.source + vo,
            weight: d.weight,
        }));
        g.tau.extend(other.tau.iter().map(|t| t + dof));
        g
    }
}

/// The identity for the product: one parabolic and one elliptic vertex
/// joined by one edge of each weight.
pub fn identity_graph() -> ModularGraph {
    let mut g = ModularGraph::new();
    let p = g.add_vertex(VertexKind::Parabolic, None);
    let e = g.add_vertex(VertexKind::Elliptic, None);
    g.add_edge(p, e, Weight::One);
    g.add_edge(p, e, Weight::Two);
    g
}

pub fn verify_cyclic(g: &ModularGraph) -> Result<Vec<CycleSignature>> {
    g.verify_cyclic()
}

pub fn is_regular(g: &ModularGraph) -> bool {
    g.is_regular()
}

pub fn component_stats(g: &ModularGraph) -> Result<Vec<ComponentStats>> {
    g.component_stats()
}

/// Isomorphism of disjoint unions of cycles: equal signature multisets.
pub fn isomorphic(g1: &ModularGraph, g2: &ModularGraph) -> Result<bool> {
    Ok(g1.verify_cyclic()? == g2.verify_cyclic()?)
}

/// The product of two modular graphs, one of which must be regular.
pub fn product(g1: &ModularGraph, g2: &ModularGraph) -> Result<ModularGraph> {
    if !g1.is_regular() && !g2.is_regular() {
        return Err(Error::Precondition(
            "product requires at least one regular factor".into(),
        ));
    }
    let mut out = ModularGraph::new();
    let mut vid: HashMap<(usize, usize), usize> = HashMap::new();
    for (i, v1) in g1.vertices.iter().enumerate() {
        for (j, v2) in g2.vertices.iter().enumerate() {
            if v1.kind == v2.kind {
                let label = match (&v1.label, &v2.label) {
                    (Some(a), Some(b)) => Some(format!("{a}x{b}")),
                    _ => None,
                };
                vid.insert((i, j), out.add_vertex(v1.kind, label));
            }
        }
    }

    let p = VertexKind::Parabolic;
    // Each product dart with its source and its tau partner.
    let mut did: HashMap<(usize, usize), usize> = HashMap::new();
    let mut pending: Vec<((usize, usize), (usize, usize))> = Vec::new();
    for e1 in 0..g1.darts.len() {
        for e2 in 0..g2.darts.len() {
            if g1.weight(e1) != g2.weight(e2) {
                continue;
            }
            let (s1, s2) = (g1.kind(g1.source(e1)), g2.kind(g2.source(e2)));
            let (t1, t2) = (g1.kind(g1.target(e1)), g2.kind(g2.target(e2)));
            let partner = if s1 == s2 && t1 == t2 {
                (g1.tau(e1), g2.tau(e2))
            } else if s1 == p && s2 == p && t1 == p {
                (g1.tau(e1), e2)
            } else if s1 == p && s2 == p && t2 == p {
                (e1, g2.tau(e2))
            } else {
                continue;
            };
            let source = vid[&(g1.source(e1), g2.source(e2))];
            did.insert((e1, e2), out.darts.len());
            out.darts.push(Dart {
                source,
                weight: g1.weight(e1),
            });
            pending.push(((e1, e2), partner));
        }
    }
    out.tau = vec![usize::MAX; out.darts.len()];
    for (key, partner) in pending {
        let d = did[&key];
        let t = *did.get(&partner).ok_or_else(|| {
            Error::Invariant(format!("product dart {key:?} has no partner {partner:?}"))
        })?;
        out.tau[d] = t;
    }
    out.validate()?;
    out.verify_cyclic()?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    use VertexKind::{Elliptic as E, Parabolic as P};
    use Weight::{One, Two};

    /// A single cycle from (kind, weight-to-next) pairs.
    fn cycle(spec: &[(VertexKind, Weight)]) -> ModularGraph {
        let mut g = ModularGraph::new();
        let ids: Vec<usize> = spec.iter().map(|&(k, _)| g.add_vertex(k, None)).collect();
        for (i, &(_, w)) in spec.iter().enumerate() {
            g.add_edge(ids[i], ids[(i + 1) % ids.len()], w);
        }
        g
    }

    /// Relabel vertices and darts by random permutations.
    fn shuffle(g: &ModularGraph, seed: u64) -> ModularGraph {
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let mut vp: Vec<usize> = (0..g.vertex_count()).collect();
        vp.shuffle(&mut rng);
        let mut dp: Vec<usize> = (0..g.darts.len()).collect();
        dp.shuffle(&mut rng);
        let mut vertices = vec![g.vertices[0].clone(); g.vertex_count()];
        for (old, &new) in vp.iter().enumerate() {
            vertices[new] = g.vertices[old].clone();
        }
        let mut darts = vec![g.darts[0]; g.darts.len()];
        let mut tau = vec![0; g.darts.len()];
        for (old, &new) in dp.iter().enumerate() {
            darts[new] = Dart {
                source: vp[g.darts[old].source],
                weight: g.darts[old].weight,
            };
            tau[new] = dp[g.tau[old]];
        }
        ModularGraph::from_parts(vertices, darts, tau).unwrap()
    }

    #[test]
    fn identity_signature() {
        let sigs = identity_graph().verify_cyclic().unwrap();
        assert_eq!(sigs, vec![CycleSignature(vec![(P, One), (E, Two)])]);
        assert!(identity_graph().is_regular());
    }

    #[test]
    fn two_equal_cycles() {
        let c = cycle(&[(P, One), (P, Two)]);
        let g = c.disjoint_union(&c);
        let sigs = g.verify_cyclic().unwrap();
        assert_eq!(sigs.len(), 2);
        assert_eq!(sigs[0], sigs[1]);
    }

    #[test]
    fn path_has_bad_valence() {
        let mut g = ModularGraph::new();
        let a = g.add_vertex(P, None);
        let b = g.add_vertex(P, None);
        g.add_edge(a, b, One);
        assert_eq!(
            g.verify_cyclic().unwrap_err(),
            Error::Valence {
                vertex: 0,
                valence: 1
            }
        );
    }

    #[test]
    fn loop_is_a_cycle_of_length_one() {
        let mut g = ModularGraph::new();
        let a = g.add_vertex(P, None);
        g.add_edge(a, a, One);
        let sigs = g.verify_cyclic().unwrap();
        assert_eq!(sigs, vec![CycleSignature(vec![(P, One)])]);
        assert!(!g.is_regular());
    }

    #[test]
    fn from_parts_rejects_elliptic_edges() {
        let vertices = vec![
            Vertex {
                kind: E,
                label: None,
            },
            Vertex {
                kind: E,
                label: None,
            },
        ];
        let darts = vec![
            Dart {
                source: 0,
                weight: One,
            },
            Dart {
                source: 1,
                weight: One,
            },
        ];
        assert!(ModularGraph::from_parts(vertices, darts, vec![1, 0]).is_err());
    }

    #[test]
    fn signatures_distinguish_weights() {
        let a = cycle(&[(P, One), (P, Two)]);
        let b = cycle(&[(P, Two), (P, Two)]);
        assert!(!isomorphic(&a, &b).unwrap());
        assert!(isomorphic(&a, &a).unwrap());
    }

    #[test]
    fn reflection_invariance() {
        let a = cycle(&[(P, One), (P, One), (E, Two), (P, Two), (P, One)]);
        // a read backwards, starting from a different vertex.
        let b = cycle(&[(P, Two), (P, Two), (E, One), (P, One), (P, One)]);
        assert!(isomorphic(&a, &b).unwrap());
        let c = cycle(&[(P, One), (P, Two), (E, One), (P, One), (P, Two)]);
        assert!(!isomorphic(&a, &c).unwrap());
    }

    #[test]
    fn product_with_identity() {
        let id = identity_graph();
        let odd = cycle(&[(P, One), (P, Two)]);
        assert!(isomorphic(&product(&odd, &id).unwrap(), &odd).unwrap());
        assert!(isomorphic(&product(&id, &id).unwrap(), &id).unwrap());
    }

    #[test]
    fn odd_times_odd_is_two_copies() {
        let odd = cycle(&[(P, One), (P, Two)]);
        let prod = product(&odd, &odd).unwrap();
        assert!(isomorphic(&prod, &odd.disjoint_union(&odd)).unwrap());
    }

    #[test]
    fn odd_times_level_two() {
        // Level two: parabolic, parabolic and elliptic vertices in a triangle.
        let odd = cycle(&[(P, One), (P, Two)]);
        let two = cycle(&[(P, One), (P, Two), (E, One)]);
        let prod = product(&odd, &two).unwrap();
        let sigs = prod.verify_cyclic().unwrap();
        assert_eq!(sigs.len(), 1);
        assert_eq!(sigs[0].len(), 4);
        let mut weights: Vec<u32> = sigs[0].0.iter().map(|(_, w)| w.value()).collect();
        weights.sort();
        assert_eq!(weights, vec![1, 1, 1, 2]);
        assert!(sigs[0].0.iter().all(|(k, _)| *k == P));
    }

    #[test]
    fn product_needs_a_regular_factor() {
        let mut g = ModularGraph::new();
        let a = g.add_vertex(P, None);
        g.add_edge(a, a, One);
        assert!(matches!(product(&g, &g), Err(Error::Precondition(_))));
    }

    #[test]
    fn component_stats_of_identity() {
        let stats = identity_graph().component_stats().unwrap();
        assert_eq!(
            stats,
            vec![ComponentStats {
                parabolic: 1,
                elliptic: 1,
                weights: vec![One, Two],
            }]
        );
    }

    fn arb_graph() -> impl Strategy<Value = ModularGraph> {
        // Up to four cycles of up to six vertices; each edge touches a parabolic vertex.
        prop::collection::vec(
            prop::collection::vec((any::<bool>(), any::<bool>()), 1..6),
            1..4,
        )
        .prop_map(|cycles| {
            let mut g = ModularGraph::new();
            for c in cycles {
                let len = c.len();
                let kinds: Vec<VertexKind> = c
                    .iter()
                    .enumerate()
                    .map(|(i, &(e, _))| {
                        if e && i % 2 == 1 && len % 2 == 0 {
                            E
                        } else {
                            P
                        }
                    })
                    .collect();
                let ids: Vec<usize> = kinds.iter().map(|&k| g.add_vertex(k, None)).collect();
                for i in 0..len {
                    let w = if c[i].1 { Two } else { One };
                    g.add_edge(ids[i], ids[(i + 1) % len], w);
                }
            }
            g
        })
    }

    proptest! {
        #[test]
        fn signature_invariant_under_relabeling(g in arb_graph(), seed in any::<u64>()) {
            let h = shuffle(&g, seed);
            prop_assert_eq!(g.verify_cyclic().unwrap(), h.verify_cyclic().unwrap());
        }

        #[test]
        fn product_is_commutative_with_regular_factor(g in arb_graph(), n in 1usize..4) {
            let spec: Vec<(VertexKind, Weight)> =
                (0..2 * n).map(|i| (P, if i % 2 == 0 { One } else { Two })).collect();
            let r = cycle(&spec);
            let a = product(&g, &r).unwrap();
            let b = product(&r, &g).unwrap();
            prop_assert!(isomorphic(&a, &b).unwrap());
            for (_, u, v, _) in a.edges() {
                prop_assert!(a.kind(u) == P || a.kind(v) == P);
            }
        }
    }
}
