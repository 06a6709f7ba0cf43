//! Construction of the graph Xi_G for a subgroup G of SL_2(Z/N) and a
//! conjugation C.
//!
//! Vertices are G-orbits of parabolic basis vectors (mod +-1) and of
//! elliptic vertices; edges are G-orbits of geodesics. A geodesic is the
//! `<rho^2>`-orbit of a triple `[x, y; z]` whose witness lies in G.

mod oracle;

pub use oracle::{build_xi_oracle, ORACLE_MAX_CLOSURE, ORACLE_MAX_LEVEL};

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::groups::{Conjugation, Mat2, SubgroupSpec, Vec2, VectorOrbits};
use crate::modgraph::{ModularGraph, VertexKind, Weight};
use crate::modring::inv_mod;

/// A triple `[x, y; z]` with `<x, z> = <z, y> = 1` and `x + y = w z`.
///
/// The weight is stored explicitly: over Z/1 and Z/2 it is not determined
/// by the vectors.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub x: Vec2,
    pub y: Vec2,
    pub z: Vec2,
    pub weight: Weight,
}

impl Triple {
    /// Validating constructor.
    pub fn new(x: Vec2, y: Vec2, z: Vec2, weight: Weight) -> Result<Triple> {
        let t = Triple { x, y, z, weight };
        if !t.is_valid() {
            return Err(Error::InvalidInput(format!("{t} is not a valid triple")));
        }
        Ok(t)
    }

    pub fn is_valid(&self) -> bool {
        let n = self.x.n;
        let one = 1 % n;
        let w = self.weight.value() as i64;
        self.x.is_basis()
            && self.y.is_basis()
            && self.z.is_basis()
            && self.x.pair(self.z) == one
            && self.z.pair(self.y) == one
            && self.x.add(self.y) == self.z.scale(w)
            && self.x.pair(self.y) == (w as u32) % n
    }

    pub fn modulus(&self) -> u32 {
        self.x.n
    }

    pub fn neg(&self) -> Triple {
        Triple {
            x: self.x.neg(),
            y: self.y.neg(),
            z: self.z.neg(),
            weight: self.weight,
        }
    }

    /// The image under a matrix of SL_2.
    pub fn apply(&self, h: Mat2) -> Triple {
        Triple {
            x: h.apply(self.x),
            y: h.apply(self.y),
            z: h.apply(self.z),
            weight: self.weight,
        }
    }

    /// The four members of the `<rho^2>`-orbit, starting with `self`.
    pub fn rho2_orbit(&self) -> [Triple; 4] {
        let a = *self;
        let b = rho(&rho(&a));
        [a, b, a.neg(), b.neg()]
    }

    /// Least member of the `<rho^2>`-orbit.
    pub fn canonical(&self) -> Triple {
        self.rho2_orbit().into_iter().min().expect("nonempty")
    }
}

impl fmt::Debug for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{};{}]w{}", self.x, self.y, self.z, self.weight)
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{};{}]", self.x, self.y, self.z)
    }
}

/// `rho[x, y; z] = [z, z - w'x; y]`, which has weight `w'`.
pub fn rho(t: &Triple) -> Triple {
    let wc = t.weight.complement();
    Triple {
        x: t.z,
        y: t.z.sub(t.x.scale(wc.value() as i64)),
        z: t.y,
        weight: wc,
    }
}

/// The element `g` with `C g - 1 = w' <-, x> y`, i.e. the matrix of
/// `v -> C v + w' <v, x> C y`.
pub fn witness(t: &Triple, conj: Conjugation) -> Mat2 {
    let n = t.modulus();
    let wc = t.weight.complement().value() as i64;
    let cy = conj.apply(t.y);
    // <e1, x> = x2 and <e2, x> = -x1.
    let c1 = conj
        .apply(Vec2::new(1, 0, n))
        .add(cy.scale(wc * t.x.y as i64));
    let c2 = conj
        .apply(Vec2::new(0, 1, n))
        .add(cy.scale(-wc * t.x.x as i64));
    Mat2::from_columns(c1, c2)
}

/// A triple satisfying the geodesic condition, with its witness in G.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeodesicTriple {
    pub triple: Triple,
    pub witness: Mat2,
}

/// A geodesic up to G, stored by one representative triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeodesicClass {
    /// A representative whose first vector is a parabolic orbit
    /// representative.
    pub representative: GeodesicTriple,
    /// The least member of the representative's `<rho^2>`-orbit.
    pub canonical: Triple,
    pub weight: Weight,
}

/// The matrix sending the basis `(x, z)` to `(x2, z2)`.
fn basis_change(x: Vec2, z: Vec2, x2: Vec2, z2: Vec2) -> Mat2 {
    // [x z] has determinant <x, z> = 1, so its inverse is the adjugate.
    let inv = Mat2::new(z.y as i64, -(z.x as i64), -(x.y as i64), x.x as i64, x.n);
    Mat2::from_columns(x2, z2).mul(inv)
}

/// Whether the basis vector `x` is fixed by `C g` for some admissible
/// `g` in G. With `<x, u> = 1`, such `C g` are exactly the maps
/// `x -> x, u -> -u + a x`, so `N` membership tests decide it.
pub fn is_parabolic(x: Vec2, spec: &SubgroupSpec, conj: Conjugation) -> bool {
    if !x.is_basis() {
        return false;
    }
    let n = x.n;
    let u = x.complement();
    let c = conj.matrix();
    (0..n as i64).any(|a| {
        let m = basis_change(x, u, x, u.neg().add(x.scale(a)));
        spec.contains(c.mul(m))
    })
}

/// Representatives (least in their orbit) of the parabolic vertex classes.
pub fn parabolic_classes(spec: &SubgroupSpec, conj: Conjugation) -> Result<Vec<Vec2>> {
    let orbits = spec.vector_orbits()?;
    Ok(orbits
        .reps()
        .iter()
        .copied()
        .filter(|&r| is_parabolic(r, spec, conj))
        .collect())
}

/// All geodesic triples `[x, y; z]` with first vector exactly `x`.
///
/// With `<x, u> = 1`: weight 1 has `y = u + s x`, `z = x + y`; weight 2 has
/// `y = 2u + s x` and `z = g x + u` for every `g` with `2g = 1 + s`
/// (two solutions at even level, one at odd level).
pub fn geodesics_at(x: Vec2, spec: &SubgroupSpec, conj: Conjugation) -> Vec<GeodesicTriple> {
    let n = x.n;
    let u = x.complement();
    let mut out = Vec::new();
    let mut emit = |t: Triple| {
        debug_assert!(t.is_valid(), "{t:?}");
        let g = witness(&t, conj);
        if spec.contains(g) {
            out.push(GeodesicTriple {
                triple: t,
                witness: g,
            });
        }
    };
    for s in 0..n as i64 {
        let y = u.add(x.scale(s));
        emit(Triple {
            x,
            y,
            z: x.add(y),
            weight: Weight::One,
        });
    }
    let even = n.is_multiple_of(2);
    for s in 0..n as i64 {
        if even && s % 2 == 0 {
            continue;
        }
        let y = u.scale(2).add(x.scale(s));
        let gammas: Vec<i64> = if even {
            let g0 = ((1 + s) / 2) % n as i64;
            vec![g0, g0 + n as i64 / 2]
        } else {
            let half = inv_mod(2 % n, n).unwrap_or(0) as i64;
            vec![(1 + s) * half]
        };
        for g in gammas {
            emit(Triple {
                x,
                y,
                z: x.scale(g).add(u),
                weight: Weight::Two,
            });
        }
    }
    out
}

/// The map `sigma` with `sigma x = -y`, `sigma z = z - w' y`.
pub fn sigma(t: &Triple) -> Mat2 {
    let wc = t.weight.complement().value() as i64;
    basis_change(t.x, t.z, t.y.neg(), t.z.sub(t.y.scale(wc)))
}

/// If the geodesic through `t` meets another one, the partner's canonical
/// triple (`rho` of this class).
pub fn intersects(t: &Triple, spec: &SubgroupSpec) -> Result<Option<Triple>> {
    let s = sigma(t);
    if s.det() != 1 % t.modulus() {
        return Err(Error::Invariant(format!(
            "sigma for {t:?} has determinant {}",
            s.det()
        )));
    }
    Ok(spec.contains(s).then(|| rho(t).canonical()))
}

/// Whether two triples of equal weight represent G-equivalent geodesics:
/// some `h` in G maps `t` to a `<rho^2>`-translate of `t2`. The candidate
/// `h` is determined by `h x = x'`, `h z = z'`.
pub fn equivalent(t: &Triple, t2: &Triple, spec: &SubgroupSpec) -> bool {
    t.weight == t2.weight
        && t2
            .rho2_orbit()
            .iter()
            .any(|v| spec.contains(basis_change(t.x, t.z, v.x, v.z)))
}

/// Edge classification for real congruence groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeType {
    /// Between two distinct parabolic vertices.
    T1a,
    /// A loop at a parabolic vertex.
    T1b,
    /// Incident to an elliptic vertex.
    T2,
}

impl fmt::Display for EdgeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EdgeType::T1a => "T1a",
            EdgeType::T1b => "T1b",
            EdgeType::T2 => "T2",
        })
    }
}

/// Types of the edges of `g`, in the order of [`ModularGraph::edges`].
pub fn classify_edges(g: &ModularGraph) -> Result<Vec<EdgeType>> {
    g.edges()
        .into_iter()
        .map(|(_, u, v, _)| match (g.kind(u), g.kind(v)) {
            (VertexKind::Elliptic, VertexKind::Elliptic) => Err(Error::Invariant(format!(
                "edge between elliptic vertices {u} and {v}"
            ))),
            (VertexKind::Parabolic, VertexKind::Parabolic) if u == v => Ok(EdgeType::T1b),
            (VertexKind::Parabolic, VertexKind::Parabolic) => Ok(EdgeType::T1a),
            _ => Ok(EdgeType::T2),
        })
        .collect()
}

/// The graph together with the data it was built from.
#[derive(Clone, Debug)]
pub struct XiGraph {
    pub graph: ModularGraph,
    /// One entry per edge of `graph` (edge `i` is darts `2i`, `2i + 1`).
    pub classes: Vec<GeodesicClass>,
    /// The parabolic vertices `0..p` in order.
    pub parabolic_reps: Vec<Vec2>,
    /// For each elliptic vertex (ids `p..`), its weight-1 geodesic class.
    pub elliptic_classes: Vec<usize>,
}

impl XiGraph {
    pub fn geodesic_class_count(&self) -> usize {
        self.classes.len()
    }
}

fn check_preconditions(spec: &SubgroupSpec, conj: Conjugation) -> Result<()> {
    if conj.modulus() != spec.level() {
        return Err(Error::InvalidInput(format!(
            "conjugation over Z/{} for a group over Z/{}",
            conj.modulus(),
            spec.level()
        )));
    }
    if !spec.contains_neg_identity() {
        return Err(Error::Precondition("group does not contain -1".into()));
    }
    if !spec.is_stable_under(conj) {
        return Err(Error::Precondition(
            "group is not stable under the conjugation".into(),
        ));
    }
    Ok(())
}

struct ClassIndex<'a> {
    spec: &'a SubgroupSpec,
    orbits: &'a VectorOrbits,
    classes: Vec<GeodesicClass>,
    buckets: HashMap<(Weight, usize, usize), Vec<usize>>,
}

impl ClassIndex<'_> {
    fn key(&self, t: &Triple) -> (Weight, usize, usize) {
        let a = self.orbits.class_of(t.x).expect("basis vector");
        let b = self.orbits.class_of(t.y).expect("basis vector");
        (t.weight, a.min(b), a.max(b))
    }

    fn find(&self, t: &Triple) -> Option<usize> {
        self.buckets.get(&self.key(t)).and_then(|ids| {
            ids.iter()
                .copied()
                .find(|&i| equivalent(&self.classes[i].representative.triple, t, self.spec))
        })
    }

    fn insert(&mut self, g: GeodesicTriple) {
        if self.find(&g.triple).is_some() {
            return;
        }
        let key = self.key(&g.triple);
        self.buckets
            .entry(key)
            .or_default()
            .push(self.classes.len());
        self.classes.push(GeodesicClass {
            representative: g,
            canonical: g.triple.canonical(),
            weight: g.triple.weight,
        });
    }
}

/// Build Xi_G. The group must contain -1 and be stable under `conj`.
pub fn build_xi(spec: &SubgroupSpec, conj: Conjugation) -> Result<XiGraph> {
    check_preconditions(spec, conj)?;
    let orbits = spec.vector_orbits()?;
    let parabolic_reps = parabolic_classes(spec, conj)?;
    let mut vertex_of_orbit = vec![usize::MAX; orbits.len()];
    for (i, r) in parabolic_reps.iter().enumerate() {
        vertex_of_orbit[orbits.class_of(*r).expect("basis vector")] = i;
    }

    let mut index = ClassIndex {
        spec,
        orbits: &orbits,
        classes: Vec::new(),
        buckets: HashMap::new(),
    };
    for &r in &parabolic_reps {
        for g in geodesics_at(r, spec, conj) {
            index.insert(g);
        }
    }

    let vid = |v: Vec2| -> Result<usize> {
        let id = vertex_of_orbit[orbits.class_of(v).expect("basis vector")];
        if id == usize::MAX {
            return Err(Error::Invariant(format!(
                "geodesic endpoint {v} is not a parabolic vertex"
            )));
        }
        Ok(id)
    };

    let mut graph = ModularGraph::new();
    for r in &parabolic_reps {
        graph.add_vertex(VertexKind::Parabolic, Some(r.to_string()));
    }

    // Pair weight-1 classes with their intersecting weight-2 partners.
    let mut elliptic_of = vec![None; index.classes.len()];
    let mut elliptic_classes = Vec::new();
    for i in 0..index.classes.len() {
        let c = index.classes[i];
        if c.weight != Weight::One {
            continue;
        }
        let t = c.representative.triple;
        if let Some(partner) = intersects(&t, spec)? {
            let j = index.find(&partner).ok_or_else(|| {
                Error::Invariant(format!("partner {partner:?} of {t:?} is not a geodesic"))
            })?;
            if elliptic_of[j].is_some() {
                return Err(Error::Invariant(format!(
                    "geodesic {partner:?} meets more than one elliptic vertex"
                )));
            }
            let e = graph.add_vertex(VertexKind::Elliptic, Some(c.canonical.to_string()));
            elliptic_of[i] = Some(e);
            elliptic_of[j] = Some(e);
            elliptic_classes.push(i);
        }
    }
    for (i, c) in index.classes.iter().enumerate() {
        let t = c.representative.triple;
        if c.weight == Weight::Two && intersects(&t, spec)?.is_some() != elliptic_of[i].is_some() {
            return Err(Error::Invariant(format!(
                "intersection of {t:?} is not symmetric"
            )));
        }
    }

    for (i, c) in index.classes.iter().enumerate() {
        let t = c.representative.triple;
        let a = vid(t.x)?;
        let b = match elliptic_of[i] {
            Some(e) => e,
            None => vid(t.y)?,
        };
        graph.add_edge(a, b, c.weight);
    }

    Ok(XiGraph {
        graph,
        classes: index.classes,
        parabolic_reps,
        elliptic_classes,
    })
}
