//! Brute-force construction of Xi_G: enumerate every triple, every
//! geodesic and every elliptic pair, then quotient the whole graph by the
//! explicit action of every group element.
//!
//! Shares nothing with the main construction beyond vector and matrix
//! arithmetic.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::groups::{Conjugation, Mat2, SubgroupSpec, Vec2};
use crate::modgraph::{ModularGraph, VertexKind, Weight};

/// Levels up to this bound are always accepted.
pub const ORACLE_MAX_LEVEL: u32 = 16;
/// Above [`ORACLE_MAX_LEVEL`], the group may have at most this many elements.
pub const ORACLE_MAX_CLOSURE: u64 = 100_000;

type Tri = (Vec2, Vec2, Vec2, u32);

fn local_rho(t: Tri) -> Tri {
    let (x, y, z, w) = t;
    let wc = 3 - w;
    (z, z.sub(x.scale(wc as i64)), y, wc)
}

fn local_neg(t: Tri) -> Tri {
    (t.0.neg(), t.1.neg(), t.2.neg(), t.3)
}

fn local_canonical(t: Tri) -> Tri {
    let r2 = local_rho(local_rho(t));
    [t, r2, local_neg(t), local_neg(r2)]
        .into_iter()
        .min()
        .expect("nonempty")
}

fn act(g: Mat2, t: Tri) -> Tri {
    (g.apply(t.0), g.apply(t.1), g.apply(t.2), t.3)
}

/// `I + k * a <-, b>` where `<v, b> = v1 b2 - v2 b1`.
fn rank_one_update(k: i64, a: Vec2, b: Vec2, n: u32) -> Mat2 {
    let (a1, a2) = (a.x as i64, a.y as i64);
    let (r1, r2) = (b.y as i64, -(b.x as i64));
    Mat2::new(
        1 + k * a1 * r1,
        k * a1 * r2,
        k * a2 * r1,
        1 + k * a2 * r2,
        n,
    )
}

fn outer(k: i64, a: Vec2, b: Vec2, n: u32) -> Mat2 {
    let (a1, a2) = (a.x as i64, a.y as i64);
    let (r1, r2) = (b.y as i64, -(b.x as i64));
    Mat2::new(k * a1 * r1, k * a1 * r2, k * a2 * r1, k * a2 * r2, n)
}

fn add(m: Mat2, o: Mat2) -> Mat2 {
    Mat2::new(
        m.a as i64 + o.a as i64,
        m.b as i64 + o.b as i64,
        m.c as i64 + o.c as i64,
        m.d as i64 + o.d as i64,
        m.n,
    )
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, mut a: usize) -> usize {
        while self.0[a] != a {
            self.0[a] = self.0[self.0[a]];
            a = self.0[a];
        }
        a
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Node {
    Cusp(Vec2),
    Elliptic(Tri),
}

/// An edge of the unquotiented graph: a geodesic, plus the endpoint it
/// runs to the elliptic vertex from when the geodesic has one.
type EdgeKey = (Tri, Option<Vec2>);

/// Xi_G by exhaustive enumeration. Refuses levels above 16 whose group has
/// more than 100000 elements.
pub fn build_xi_oracle(spec: &SubgroupSpec, conj: Conjugation) -> Result<ModularGraph> {
    let n = spec.level();
    if n > ORACLE_MAX_LEVEL && spec.order() > ORACLE_MAX_CLOSURE {
        return Err(Error::Guard(format!(
            "oracle limited to N <= {ORACLE_MAX_LEVEL} or groups of at most {ORACLE_MAX_CLOSURE} elements"
        )));
    }
    let group = spec.closure()?;
    let members: Vec<Mat2> = group.iter().copied().collect();
    let c = conj.matrix();
    let one = 1 % n;

    let basis: Vec<Vec2> = Vec2::all(n).filter(|v| v.is_basis()).collect();

    let mut cusps: BTreeSet<Vec2> = BTreeSet::new();
    for &g in &members {
        let cg = c.mul(g);
        if !cg.mul(cg).is_identity() {
            continue;
        }
        for &v in &basis {
            if cg.apply(v) == v {
                cusps.insert(v.canonical_sign());
            }
        }
    }

    let mut geodesics: BTreeSet<Tri> = BTreeSet::new();
    for &x in &basis {
        for &z in &basis {
            if x.pair(z) != one {
                continue;
            }
            for &y in &basis {
                if z.pair(y) != one {
                    continue;
                }
                for w in [1u32, 2] {
                    if x.add(y) != z.scale(w as i64) {
                        continue;
                    }
                    let wc = 3 - w as i64;
                    let cg = rank_one_update(wc, y, x, n);
                    let plus = add(cg, Mat2::identity(n));
                    if plus != outer(wc, x, y, n) {
                        return Err(Error::Invariant(format!(
                            "second geodesic identity fails at x={x} y={y}"
                        )));
                    }
                    if group.contains(&c.mul(cg)) {
                        geodesics.insert(local_canonical((x, y, z, w)));
                    }
                }
            }
        }
    }

    // Elliptic vertices, keyed by their weight-1 geodesic.
    let mut elliptic: BTreeSet<Tri> = BTreeSet::new();
    let mut meets: BTreeSet<Tri> = BTreeSet::new();
    for &t in &geodesics {
        let partner = local_canonical(local_rho(t));
        if geodesics.contains(&partner) {
            meets.insert(t);
            if t.3 == 1 {
                elliptic.insert(t);
            }
        }
    }

    let mut nodes: Vec<Node> = cusps.iter().map(|&v| Node::Cusp(v)).collect();
    nodes.extend(elliptic.iter().map(|&t| Node::Elliptic(t)));
    let node_id: BTreeMap<Node, usize> = nodes.iter().enumerate().map(|(i, &k)| (k, i)).collect();

    let mut edges: Vec<EdgeKey> = Vec::new();
    for &t in &geodesics {
        if meets.contains(&t) {
            edges.push((t, Some(t.0.canonical_sign())));
            let other = t.1.canonical_sign();
            if other != t.0.canonical_sign() {
                edges.push((t, Some(other)));
            }
        } else {
            edges.push((t, None));
        }
    }
    let edge_id: BTreeMap<EdgeKey, usize> =
        edges.iter().enumerate().map(|(i, &k)| (k, i)).collect();

    let endpoints = |e: &EdgeKey| -> Result<(Node, Node)> {
        let (t, end) = *e;
        let find = |v: Vec2| Node::Cusp(v.canonical_sign());
        match end {
            None => Ok((find(t.0), find(t.1))),
            Some(v) => {
                let key = if t.3 == 1 {
                    t
                } else {
                    local_canonical(local_rho(t))
                };
                Ok((Node::Cusp(v), Node::Elliptic(key)))
            }
        }
    };

    let act_node = |g: Mat2, k: Node| match k {
        Node::Cusp(v) => Node::Cusp(g.apply(v).canonical_sign()),
        Node::Elliptic(t) => Node::Elliptic(local_canonical(act(g, t))),
    };
    let act_edge = |g: Mat2, e: EdgeKey| -> EdgeKey {
        (
            local_canonical(act(g, e.0)),
            e.1.map(|v| g.apply(v).canonical_sign()),
        )
    };

    let mut vuf = UnionFind::new(nodes.len());
    let mut euf = UnionFind::new(edges.len());
    for &g in &members {
        for (i, &k) in nodes.iter().enumerate() {
            let j = *node_id
                .get(&act_node(g, k))
                .ok_or_else(|| Error::Invariant("group does not preserve the vertex set".into()))?;
            vuf.union(i, j);
        }
        for (i, &e) in edges.iter().enumerate() {
            let j = *edge_id
                .get(&act_edge(g, e))
                .ok_or_else(|| Error::Invariant("group does not preserve the edge set".into()))?;
            euf.union(i, j);
        }
    }

    let mut graph = ModularGraph::new();
    let mut vertex_of_root: BTreeMap<usize, usize> = BTreeMap::new();
    for i in 0..nodes.len() {
        let r = vuf.find(i);
        if let std::collections::btree_map::Entry::Vacant(slot) = vertex_of_root.entry(r) {
            let (kind, label) = match nodes[r] {
                Node::Cusp(v) => (VertexKind::Parabolic, v.to_string()),
                Node::Elliptic(t) => (VertexKind::Elliptic, format!("[{},{};{}]", t.0, t.1, t.2)),
            };
            slot.insert(graph.add_vertex(kind, Some(label)));
        }
    }
    let mut done: HashSet<usize> = HashSet::new();
    for i in 0..edges.len() {
        let r = euf.find(i);
        if !done.insert(r) {
            continue;
        }
        let (a, b) = endpoints(&edges[r])?;
        let mut vertex = |k: Node| -> Result<usize> {
            let i = *node_id
                .get(&k)
                .ok_or_else(|| Error::Invariant("geodesic ends at an unknown vertex".into()))?;
            Ok(vertex_of_root[&vuf.find(i)])
        };
        let (va, vb) = (vertex(a)?, vertex(b)?);
        let w = Weight::from_value(edges[r].0 .3).expect("weight 1 or 2");
        graph.add_edge(va, vb, w);
    }
    Ok(graph)
}
