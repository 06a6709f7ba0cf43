//! Vectors and 2x2 matrices over Z/N, conjugations, and subgroups of
//! SL_2(Z/N) with membership tests, closures and orbits on basis vectors.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::modring::{crt_lift, ext_gcd, gcd, inv_mod, reduce, unit_generators, RingCtx};

/// Default cap on the number of elements a group closure may reach.
pub const DEFAULT_BUDGET: usize = 20_000_000;

/// An element of `U = (Z/N)^2`. Ordered lexicographically by `(x, y)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vec2 {
    pub x: u32,
    pub y: u32,
    pub n: u32,
}

// Arithmetic is mod n, so these are inherent rather than std::ops impls.
#[allow(clippy::should_implement_trait)]
impl Vec2 {
    pub fn new(x: i64, y: i64, n: u32) -> Self {
        Vec2 {
            x: reduce(x, n),
            y: reduce(y, n),
            n,
        }
    }

    pub fn zero(n: u32) -> Self {
        Vec2 { x: 0, y: 0, n }
    }

    /// The symplectic pairing `<v, w> = v1 w2 - v2 w1`.
    pub fn pair(self, w: Vec2) -> u32 {
        let n = self.n as u64;
        let p = self.x as u64 * w.y as u64 % n;
        let q = self.y as u64 * w.x as u64 % n;
        ((p + n - q) % n) as u32
    }

    /// Whether the vector spans a direct summand, i.e. `gcd(x1, x2, N) = 1`.
    pub fn is_basis(self) -> bool {
        gcd(gcd(self.x as u64, self.y as u64), self.n as u64) == 1
    }

    /// Some `u` with `<self, u> = 1`. Requires a basis vector.
    pub fn complement(self) -> Vec2 {
        let n = self.n;
        if n == 1 {
            return Vec2::zero(1);
        }
        let (g, s, t) = ext_gcd(self.x as i64, self.y as i64);
        let ginv = inv_mod(reduce(g, n), n).expect("complement of a non-basis vector") as i64;
        let alpha = reduce(s, n) as i64 * ginv;
        let beta = reduce(t, n) as i64 * ginv;
        Vec2::new(-beta, alpha, n)
    }

    pub fn add(self, w: Vec2) -> Vec2 {
        Vec2::new(
            self.x as i64 + w.x as i64,
            self.y as i64 + w.y as i64,
            self.n,
        )
    }

    pub fn sub(self, w: Vec2) -> Vec2 {
        Vec2::new(
            self.x as i64 - w.x as i64,
            self.y as i64 - w.y as i64,
            self.n,
        )
    }

    pub fn neg(self) -> Vec2 {
        Vec2::new(-(self.x as i64), -(self.y as i64), self.n)
    }

    pub fn scale(self, k: i64) -> Vec2 {
        let k = reduce(k, self.n) as i64;
        Vec2::new(self.x as i64 * k, self.y as i64 * k, self.n)
    }

    /// The lesser of `v` and `-v`.
    pub fn canonical_sign(self) -> Vec2 {
        self.min(self.neg())
    }

    /// Dense index `x * N + y`.
    pub fn index(self) -> usize {
        self.x as usize * self.n as usize + self.y as usize
    }

    pub fn from_index(i: usize, n: u32) -> Vec2 {
        Vec2 {
            x: (i / n as usize) as u32,
            y: (i % n as usize) as u32,
            n,
        }
    }

    /// All vectors of `(Z/N)^2` in lexicographic order.
    pub fn all(n: u32) -> impl Iterator<Item = Vec2> {
        (0..n as usize * n as usize).map(move |i| Vec2::from_index(i, n))
    }
}

impl fmt::Debug for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl fmt::Display for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// A 2x2 matrix `[[a, b], [c, d]]` over Z/N.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2 {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
    pub n: u32,
}

#[allow(clippy::should_implement_trait)]
impl Mat2 {
    pub fn new(a: i64, b: i64, c: i64, d: i64, n: u32) -> Self {
        Mat2 {
            a: reduce(a, n),
            b: reduce(b, n),
            c: reduce(c, n),
            d: reduce(d, n),
            n,
        }
    }

    /// Constructor for elements of SL_2; rejects determinant other than 1.
    pub fn sl2(a: i64, b: i64, c: i64, d: i64, n: u32) -> Result<Self> {
        let m = Mat2::new(a, b, c, d, n);
        if m.det() != 1 % n {
            return Err(Error::InvalidInput(format!(
                "matrix {m} has determinant {} mod {n}, expected 1",
                m.det()
            )));
        }
        Ok(m)
    }

    pub fn identity(n: u32) -> Self {
        Mat2::new(1, 0, 0, 1, n)
    }

    pub fn neg_identity(n: u32) -> Self {
        Mat2::new(-1, 0, 0, -1, n)
    }

    /// The matrix whose columns are `c1` and `c2`.
    pub fn from_columns(c1: Vec2, c2: Vec2) -> Self {
        Mat2 {
            a: c1.x,
            b: c2.x,
            c: c1.y,
            d: c2.y,
            n: c1.n,
        }
    }

    pub fn col1(self) -> Vec2 {
        Vec2 {
            x: self.a,
            y: self.c,
            n: self.n,
        }
    }

    pub fn col2(self) -> Vec2 {
        Vec2 {
            x: self.b,
            y: self.d,
            n: self.n,
        }
    }

    pub fn mul(self, o: Mat2) -> Mat2 {
        let n = self.n as u64;
        let e = |p: u32, q: u32, r: u32, s: u32| {
            ((p as u64 * q as u64 + r as u64 * s as u64) % n) as u32
        };
        Mat2 {
            a: e(self.a, o.a, self.b, o.c),
            b: e(self.a, o.b, self.b, o.d),
            c: e(self.c, o.a, self.d, o.c),
            d: e(self.c, o.b, self.d, o.d),
            n: self.n,
        }
    }

    pub fn apply(self, v: Vec2) -> Vec2 {
        let n = self.n as u64;
        Vec2 {
            x: ((self.a as u64 * v.x as u64 + self.b as u64 * v.y as u64) % n) as u32,
            y: ((self.c as u64 * v.x as u64 + self.d as u64 * v.y as u64) % n) as u32,
            n: self.n,
        }
    }

    pub fn det(self) -> u32 {
        let n = self.n as u64;
        let p = self.a as u64 * self.d as u64 % n;
        let q = self.b as u64 * self.c as u64 % n;
        ((p + n - q) % n) as u32
    }

    pub fn trace(self) -> u32 {
        ((self.a as u64 + self.d as u64) % self.n as u64) as u32
    }

    pub fn neg(self) -> Mat2 {
        Mat2::new(
            -(self.a as i64),
            -(self.b as i64),
            -(self.c as i64),
            -(self.d as i64),
            self.n,
        )
    }

    /// Inverse, when the determinant is a unit.
    pub fn inverse(self) -> Option<Mat2> {
        let di = inv_mod(self.det(), self.n)? as i64;
        Some(Mat2::new(
            self.d as i64 * di,
            -(self.b as i64) * di,
            -(self.c as i64) * di,
            self.a as i64 * di,
            self.n,
        ))
    }

    /// Reduction to a modulus dividing N.
    pub fn reduce_to(self, m: u32) -> Mat2 {
        debug_assert_eq!(self.n % m, 0);
        Mat2 {
            a: self.a % m,
            b: self.b % m,
            c: self.c % m,
            d: self.d % m,
            n: m,
        }
    }

    pub fn is_identity(self) -> bool {
        self == Mat2::identity(self.n)
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

/// An involution `C` of `U` with determinant -1. It acts on matrices by
/// `g -> C g C`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Conjugation {
    matrix: Mat2,
}

impl Conjugation {
    /// `diag(1, -1)`, complex conjugation `z -> conj(z)`.
    pub fn std(n: u32) -> Self {
        Conjugation {
            matrix: Mat2::new(1, 0, 0, -1, n),
        }
    }

    /// `[[0, 1], [1, 0]]`, the conjugation `z -> 1/conj(z)`.
    pub fn inv(n: u32) -> Self {
        Conjugation {
            matrix: Mat2::new(0, 1, 1, 0, n),
        }
    }

    pub fn new(matrix: Mat2) -> Result<Self> {
        let n = matrix.n;
        if matrix.det() != reduce(-1, n) {
            return Err(Error::InvalidInput(format!(
                "conjugation {matrix} must have determinant -1"
            )));
        }
        if !matrix.mul(matrix).is_identity() {
            return Err(Error::InvalidInput(format!(
                "conjugation {matrix} must square to the identity"
            )));
        }
        Ok(Conjugation { matrix })
    }

    pub fn matrix(self) -> Mat2 {
        self.matrix
    }

    pub fn modulus(self) -> u32 {
        self.matrix.n
    }

    /// `g^c = C g C`.
    pub fn conj(self, g: Mat2) -> Mat2 {
        self.matrix.mul(g).mul(self.matrix)
    }

    pub fn apply(self, v: Vec2) -> Vec2 {
        self.matrix.apply(v)
    }

    pub fn reduce_to(self, m: u32) -> Conjugation {
        Conjugation {
            matrix: self.matrix.reduce_to(m),
        }
    }

    pub fn is_std(self) -> bool {
        self == Conjugation::std(self.modulus())
    }

    pub fn is_inv(self) -> bool {
        self == Conjugation::inv(self.modulus())
    }
}

/// Whether `g` is admissible for `C`, i.e. `(C g)^2 = 1`.
pub fn is_admissible(g: Mat2, conj: Conjugation) -> bool {
    let cg = conj.matrix().mul(g);
    cg.mul(cg).is_identity()
}

/// The subgroup families with closed-form membership.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// All of SL_2(Z/N).
    Full,
    /// `{+-I}`.
    Gamma,
    /// `+-[[1, *], [0, 1]]`.
    Gamma1,
    /// Upper triangular matrices.
    Gamma0,
    /// Normalizer of the split Cartan subgroup, factor by factor.
    Split,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Full,
        Family::Gamma,
        Family::Gamma1,
        Family::Gamma0,
        Family::Split,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Family::Full => "full",
            Family::Gamma => "gamma",
            Family::Gamma1 => "gamma1",
            Family::Gamma0 => "gamma0",
            Family::Split => "split",
        }
    }

    fn contains(self, m: Mat2, ring: &RingCtx) -> bool {
        let n = m.n;
        if m.det() != 1 % n {
            return false;
        }
        let one = 1 % n;
        let minus = reduce(-1, n);
        match self {
            Family::Full => true,
            Family::Gamma => m.b == 0 && m.c == 0 && m.a == m.d && (m.a == one || m.a == minus),
            Family::Gamma1 => m.c == 0 && m.a == m.d && (m.a == one || m.a == minus),
            Family::Gamma0 => m.c == 0,
            Family::Split => ring.factors().iter().all(|f| {
                let q = f.modulus;
                (m.b.is_multiple_of(q) && m.c.is_multiple_of(q)) || (m.a.is_multiple_of(q) && m.d.is_multiple_of(q))
            }),
        }
    }

    fn generators(self, ring: &RingCtx) -> Vec<Mat2> {
        let n = ring.modulus();
        let t = Mat2::new(1, 1, 0, 1, n);
        let minus = Mat2::neg_identity(n);
        let diag = |u: u32| {
            let ui = inv_mod(u, n).expect("unit") as i64;
            Mat2::new(u as i64, 0, 0, ui, n)
        };
        match self {
            Family::Full => vec![t, Mat2::new(1, 0, 1, 1, n), minus],
            Family::Gamma => vec![minus],
            Family::Gamma1 => vec![minus, t],
            Family::Gamma0 => {
                let mut gens = vec![minus, t];
                gens.extend(unit_generators(n).into_iter().map(diag));
                gens
            }
            Family::Split => {
                let mut gens = vec![minus];
                let factors = ring.factors();
                // Embed an element of the q-th factor, identity elsewhere.
                let embed = |i: usize, local: [i64; 4]| {
                    let entry = |k: usize| {
                        let parts: Vec<(u32, u32)> = factors
                            .iter()
                            .enumerate()
                            .map(|(j, f)| {
                                let q = f.modulus;
                                let v = if j == i {
                                    local[k]
                                } else if k == 0 || k == 3 {
                                    1
                                } else {
                                    0
                                };
                                (reduce(v, q), q)
                            })
                            .collect();
                        crt_lift(&parts) as i64
                    };
                    Mat2::new(entry(0), entry(1), entry(2), entry(3), n)
                };
                for (i, f) in factors.iter().enumerate() {
                    let q = f.modulus;
                    for u in unit_generators(q) {
                        let ui = inv_mod(u, q).expect("unit") as i64;
                        gens.push(embed(i, [u as i64, 0, 0, ui]));
                    }
                    gens.push(embed(i, [0, 1, -1, 0]));
                }
                gens
            }
        }
    }

    /// Closed-form group order.
    pub fn order(self, ring: &RingCtx) -> u64 {
        let n = ring.modulus() as u64;
        match self {
            Family::Full => ring.sl2_order(),
            Family::Gamma => {
                if n <= 2 {
                    1
                } else {
                    2
                }
            }
            Family::Gamma1 => {
                if n <= 2 {
                    n
                } else {
                    2 * n
                }
            }
            Family::Gamma0 => n * crate::modring::phi(n),
            Family::Split => ring
                .factors()
                .iter()
                .map(|f| 2 * crate::modring::phi(f.modulus as u64))
                .product(),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// How a subgroup was specified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupLabel {
    Family(Family),
    Custom,
    /// Inverse image of a group over `Z/N0`.
    Preimage {
        base_level: u32,
    },
}

impl fmt::Display for GroupLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupLabel::Family(fam) => write!(f, "{fam}"),
            GroupLabel::Custom => f.write_str("custom"),
            GroupLabel::Preimage { base_level } => write!(f, "preimage(mod {base_level})"),
        }
    }
}

#[derive(Clone)]
enum Membership {
    Family(Family),
    Set(Arc<HashSet<Mat2>>),
    Preimage(Arc<SubgroupSpec>),
}

/// Orbits of a group on the basis vectors of `(Z/N)^2`.
#[derive(Clone, Debug)]
pub struct VectorOrbits {
    n: u32,
    class_of: Vec<u32>,
    reps: Vec<Vec2>,
}

impl VectorOrbits {
    pub const NONE: u32 = u32::MAX;

    /// Orbit index of a basis vector, `None` for non-basis vectors.
    pub fn class_of(&self, v: Vec2) -> Option<usize> {
        let c = self.class_of[v.index()];
        (c != Self::NONE).then_some(c as usize)
    }

    /// Orbit representatives; each is the least vector of its orbit.
    pub fn reps(&self) -> &[Vec2] {
        &self.reps
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn modulus(&self) -> u32 {
        self.n
    }
}

/// A subgroup of SL_2(Z/N), given by a membership test together with
/// generators when they are known. The explicit element set is computed
/// lazily on demand.
#[derive(Clone)]
pub struct SubgroupSpec {
    ring: RingCtx,
    label: GroupLabel,
    generators: Option<Vec<Mat2>>,
    membership: Membership,
    budget: usize,
    closure: OnceLock<Result<Arc<HashSet<Mat2>>>>,
    orbits: OnceLock<Result<Arc<VectorOrbits>>>,
}

impl fmt::Debug for SubgroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SubgroupSpec")
            .field("level", &self.ring.modulus())
            .field("label", &self.label)
            .finish()
    }
}

/// The family group of the given kind over `Z/N`.
pub fn family_group(family: Family, ring: &RingCtx) -> SubgroupSpec {
    SubgroupSpec {
        generators: Some(family.generators(ring)),
        ring: ring.clone(),
        label: GroupLabel::Family(family),
        membership: Membership::Family(family),
        budget: DEFAULT_BUDGET,
        closure: OnceLock::new(),
        orbits: OnceLock::new(),
    }
}

/// The group generated by `generators`, `-I` and the `C`-conjugates of the
/// generators, with the default closure budget.
pub fn custom_group(
    ring: &RingCtx,
    generators: &[Mat2],
    conj: Conjugation,
) -> Result<SubgroupSpec> {
    custom_group_with_budget(ring, generators, conj, DEFAULT_BUDGET)
}

pub fn custom_group_with_budget(
    ring: &RingCtx,
    generators: &[Mat2],
    conj: Conjugation,
    budget: usize,
) -> Result<SubgroupSpec> {
    let n = ring.modulus();
    if conj.modulus() != n {
        return Err(Error::InvalidInput(format!(
            "conjugation is over Z/{}, group over Z/{n}",
            conj.modulus()
        )));
    }
    let mut gens = vec![Mat2::neg_identity(n)];
    for &g in generators {
        if g.n != n {
            return Err(Error::InvalidInput(format!(
                "generator {g} is over Z/{}, expected Z/{n}",
                g.n
            )));
        }
        if g.det() != 1 % n {
            return Err(Error::InvalidInput(format!(
                "generator {g} has determinant {} mod {n}, expected 1",
                g.det()
            )));
        }
        gens.push(g);
        gens.push(conj.conj(g));
    }
    gens.sort();
    gens.dedup();
    let set = bfs_closure(n, &gens, budget)?;
    let set = Arc::new(set);
    let spec = SubgroupSpec {
        ring: ring.clone(),
        label: GroupLabel::Custom,
        generators: Some(gens),
        membership: Membership::Set(set.clone()),
        budget,
        closure: OnceLock::new(),
        orbits: OnceLock::new(),
    };
    let _ = spec.closure.set(Ok(set));
    Ok(spec)
}

/// The inverse image in SL_2(Z/N) of a group over `Z/N0`, where `N0 | N`.
pub fn preimage_group(base: &SubgroupSpec, ring: &RingCtx) -> Result<SubgroupSpec> {
    let n0 = base.level();
    let n = ring.modulus();
    if !n.is_multiple_of(n0) {
        return Err(Error::InvalidInput(format!(
            "base level {n0} does not divide {n}"
        )));
    }
    Ok(SubgroupSpec {
        ring: ring.clone(),
        label: GroupLabel::Preimage { base_level: n0 },
        generators: None,
        membership: Membership::Preimage(Arc::new(base.clone())),
        budget: base.budget,
        closure: OnceLock::new(),
        orbits: OnceLock::new(),
    })
}

fn bfs_closure(n: u32, gens: &[Mat2], budget: usize) -> Result<HashSet<Mat2>> {
    let id = Mat2::identity(n);
    let mut seen = HashSet::from([id]);
    let mut queue = VecDeque::from([id]);
    while let Some(m) = queue.pop_front() {
        for &g in gens {
            let p = m.mul(g);
            if seen.insert(p) {
                if seen.len() > budget {
                    return Err(Error::Budget { limit: budget });
                }
                queue.push_back(p);
            }
        }
    }
    Ok(seen)
}

impl SubgroupSpec {
    pub fn ring(&self) -> &RingCtx {
        &self.ring
    }

    pub fn level(&self) -> u32 {
        self.ring.modulus()
    }

    pub fn label(&self) -> &GroupLabel {
        &self.label
    }

    pub fn family(&self) -> Option<Family> {
        match self.label {
            GroupLabel::Family(f) => Some(f),
            _ => None,
        }
    }

    pub fn generators(&self) -> Option<&[Mat2]> {
        self.generators.as_deref()
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    /// Replace the closure budget (only affects closures not yet computed).
    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn contains(&self, m: Mat2) -> bool {
        match &self.membership {
            Membership::Family(f) => f.contains(m, &self.ring),
            Membership::Set(s) => s.contains(&m),
            Membership::Preimage(base) => {
                m.det() == 1 % m.n && base.contains(m.reduce_to(base.level()))
            }
        }
    }

    pub fn contains_neg_identity(&self) -> bool {
        self.contains(Mat2::neg_identity(self.level()))
    }

    /// The explicit element set. Family groups are closed from their
    /// generators; inverse images are enumerated from SL_2 by membership.
    pub fn closure(&self) -> Result<Arc<HashSet<Mat2>>> {
        self.closure
            .get_or_init(|| {
                let n = self.level();
                match &self.generators {
                    Some(gens) => bfs_closure(n, gens, self.budget).map(Arc::new),
                    None => {
                        let order = self.order();
                        if order > self.budget as u64 {
                            return Err(Error::Budget { limit: self.budget });
                        }
                        let mut set = HashSet::with_capacity(order as usize);
                        for_each_sl2(n, |m| {
                            if self.contains(m) {
                                set.insert(m);
                            }
                        });
                        Ok(Arc::new(set))
                    }
                }
            })
            .clone()
    }

    /// Group order, without enumerating when a closed form is available.
    pub fn order(&self) -> u64 {
        match &self.membership {
            Membership::Family(f) => f.order(&self.ring),
            Membership::Set(s) => s.len() as u64,
            Membership::Preimage(base) => {
                let base_ring = base.ring();
                base.order() * self.ring.sl2_order() / base_ring.sl2_order()
            }
        }
    }

    /// Whether `C g C` lies in the group for every `g` in it.
    pub fn is_stable_under(&self, conj: Conjugation) -> bool {
        match (&self.generators, &self.membership) {
            (Some(gens), _) => gens.iter().all(|&g| self.contains(conj.conj(g))),
            (None, Membership::Preimage(base)) => {
                base.is_stable_under(conj.reduce_to(base.level()))
            }
            (None, _) => false,
        }
    }

    /// Orbits on basis vectors. Uses the generators when known, otherwise
    /// applies every element of the closure.
    pub fn vector_orbits(&self) -> Result<Arc<VectorOrbits>> {
        self.orbits
            .get_or_init(|| {
                let n = self.level();
                let size = n as usize * n as usize;
                let mut class_of = vec![VectorOrbits::NONE; size];
                let mut reps = Vec::new();
                let elements: Vec<Mat2> = match &self.generators {
                    Some(g) => g.clone(),
                    None => self.closure()?.iter().copied().collect(),
                };
                let by_generators = self.generators.is_some();
                for v in Vec2::all(n) {
                    if class_of[v.index()] != VectorOrbits::NONE || !v.is_basis() {
                        continue;
                    }
                    let id = reps.len() as u32;
                    reps.push(v);
                    class_of[v.index()] = id;
                    if by_generators {
                        let mut stack = vec![v];
                        while let Some(w) = stack.pop() {
                            for &g in &elements {
                                let u = g.apply(w);
                                if class_of[u.index()] == VectorOrbits::NONE {
                                    class_of[u.index()] = id;
                                    stack.push(u);
                                }
                            }
                        }
                    } else {
                        for &g in &elements {
                            class_of[g.apply(v).index()] = id;
                        }
                    }
                }
                Ok(Arc::new(VectorOrbits { n, class_of, reps }))
            })
            .clone()
    }
}

/// The orbit of `seed`, optionally together with that of `-seed`.
pub fn orbit(spec: &SubgroupSpec, seed: Vec2, quotient_sign: bool) -> Result<Vec<Vec2>> {
    let orbits = spec.vector_orbits()?;
    let mut targets = vec![orbits.class_of(seed)];
    if quotient_sign {
        targets.push(orbits.class_of(seed.neg()));
    }
    if targets.iter().any(Option::is_none) {
        return Err(Error::InvalidInput(format!("{seed} is not a basis vector")));
    }
    Ok(Vec2::all(spec.level())
        .filter(|&v| {
            let c = orbits.class_of(v);
            c.is_some() && targets.contains(&c)
        })
        .collect())
}

/// Calls `f` on every element of SL_2(Z/N). Elements are produced column
/// first: for each basis vector `(a, c)` one solution `(b0, d0)` of
/// `a d - b c = 1` is shifted by multiples of `(a, c)`.
pub fn for_each_sl2(n: u32, mut f: impl FnMut(Mat2)) {
    for col in Vec2::all(n).filter(|v| v.is_basis()) {
        let u = col.complement();
        for k in 0..n as i64 {
            let second = u.add(col.scale(k));
            f(Mat2::from_columns(col, second));
        }
    }
}

/// Every element of SL_2(Z/N).
pub fn sl2_elements(n: u32) -> Vec<Mat2> {
    let mut out = Vec::new();
    for_each_sl2(n, |m| out.push(m));
    out
}
