//! Exact arithmetic in Z/N: residues, gcd and inverse helpers, prime-power
//! (CRT) decomposition, and the arithmetic functions phi and psi.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Greatest common divisor; `gcd(0, 0) == 0`.
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Extended Euclid on signed integers: returns `(g, s, t)` with `s*a + t*b = g`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Reduce a signed integer into `[0, n)`.
#[inline]
pub fn reduce(v: i64, n: u32) -> u32 {
    v.rem_euclid(n as i64) as u32
}

/// Inverse of `a` modulo `n`, if `a` is a unit.
pub fn inv_mod(a: u32, n: u32) -> Option<u32> {
    if n == 1 {
        return Some(0);
    }
    let (g, s, _) = ext_gcd(a as i64, n as i64);
    (g == 1).then(|| reduce(s, n))
}

/// Trial-division factorization as `(prime, exponent)` pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Euler's totient: the order of `(Z/N)^x`.
pub fn phi(n: u64) -> u64 {
    assert!(n >= 1, "phi is defined for N >= 1");
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Order of `(Z/N)^x / <-1, 2>` for odd `N`, computed by closing `{-1, 2}`
/// under multiplication.
pub fn psi(n: u64) -> Result<u64> {
    if n == 0 || n.is_multiple_of(2) {
        return Err(Error::InvalidInput(format!(
            "psi is only defined for odd N >= 1, got {n}"
        )));
    }
    let sub = unit_subgroup(n, &[n - 1, 2 % n]);
    Ok(phi(n) / sub.len() as u64)
}

/// The subgroup of `(Z/N)^x` generated by the given units.
pub fn unit_subgroup(n: u64, gens: &[u64]) -> BTreeSet<u64> {
    let one = 1 % n;
    let mut seen = BTreeSet::from([one]);
    let mut frontier = vec![one];
    while let Some(a) = frontier.pop() {
        for &g in gens {
            let b = a * (g % n) % n;
            if seen.insert(b) {
                frontier.push(b);
            }
        }
    }
    seen
}

/// A small generating set of `(Z/N)^x`, chosen greedily in increasing order.
pub fn unit_generators(n: u32) -> Vec<u32> {
    let n64 = n as u64;
    let mut gens: Vec<u64> = Vec::new();
    let mut sub = unit_subgroup(n64, &[]);
    for a in 1..n64 {
        if gcd(a, n64) == 1 && !sub.contains(&a) {
            gens.push(a);
            sub = unit_subgroup(n64, &gens);
        }
    }
    gens.into_iter().map(|g| g as u32).collect()
}

/// Chinese remainder lift: the unique value mod `prod(moduli)` with the given
/// residues. Moduli must be pairwise coprime.
pub fn crt_lift(parts: &[(u32, u32)]) -> u32 {
    let mut value: u64 = 0;
    let mut modulus: u64 = 1;
    for &(r, m) in parts {
        let m = m as u64;
        // value + modulus * k == r (mod m)
        let inv = inv_mod((modulus % m) as u32, m as u32).expect("moduli must be coprime") as u64;
        let diff = (r as u64 + m - value % m) % m;
        let k = diff * inv % m;
        value += modulus * k;
        modulus *= m;
    }
    value as u32
}

/// One prime-power factor `p^e` of the modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimePower {
    pub prime: u32,
    pub exponent: u32,
    pub modulus: u32,
}

/// The ring Z/N together with the data derived from N that the rest of the
/// crate needs: the 2-adic split `N = 2^r * N'`, the 2-torsion element and
/// the prime-power factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingCtx {
    modulus: u32,
    odd_part: u32,
    two_exponent: u32,
    factors: Vec<PrimePower>,
}

impl RingCtx {
    pub fn new(modulus: u32) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidInput("level must be at least 1".into()));
        }
        if modulus > 1 << 16 {
            return Err(Error::InvalidInput(format!(
                "level {modulus} is too large (max 65536)"
            )));
        }
        let factors: Vec<PrimePower> = factorize(modulus as u64)
            .into_iter()
            .map(|(p, e)| PrimePower {
                prime: p as u32,
                exponent: e,
                modulus: (p as u32).pow(e),
            })
            .collect();
        let two_exponent = modulus.trailing_zeros();
        Ok(RingCtx {
            modulus,
            odd_part: modulus >> two_exponent,
            two_exponent,
            factors,
        })
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// The odd part `N'` of `N = 2^r N'`.
    pub fn odd_part(&self) -> u32 {
        self.odd_part
    }

    /// The exponent `r` of `N = 2^r N'`.
    pub fn two_exponent(&self) -> u32 {
        self.two_exponent
    }

    /// `t = 2^(r-1) N'`, the unique nonzero element killed by 2, when N is even.
    pub fn two_torsion(&self) -> Option<u32> {
        (self.two_exponent >= 1).then_some(self.modulus / 2)
    }

    pub fn factors(&self) -> &[PrimePower] {
        &self.factors
    }

    pub fn is_odd(&self) -> bool {
        self.two_exponent == 0
    }

    pub fn residue(&self, v: i64) -> Residue {
        Residue::new(v, self.modulus)
    }

    /// Order of `SL_2(Z/N)`: `N^3 prod_{p | N} (1 - p^-2)`.
    pub fn sl2_order(&self) -> u64 {
        let n = self.modulus as u64;
        self.factors.iter().fold(n * n * n, |acc, f| {
            let p = f.prime as u64;
            acc / (p * p) * (p * p - 1)
        })
    }

    /// Number of basis vectors of `(Z/N)^2`: `N^2 prod_{p | N} (1 - p^-2)`.
    pub fn basis_vector_count(&self) -> u64 {
        self.sl2_order() / self.modulus as u64
    }
}

/// Split a ring context into its prime-power factors. The componentwise
/// reduction `Z/N -> prod Z/p^e` is a ring isomorphism; [`crt_lift`] inverts it.
pub fn crt_split(ctx: &RingCtx) -> Vec<RingCtx> {
    ctx.factors
        .iter()
        .map(|f| RingCtx::new(f.modulus).expect("factor of a valid modulus"))
        .collect()
}

/// An element of Z/N, stored as its canonical representative in `[0, N)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Residue {
    value: u32,
    modulus: u32,
}

impl Residue {
    pub fn new(v: i64, modulus: u32) -> Self {
        Residue {
            value: reduce(v, modulus),
            modulus,
        }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inverse(self) -> Option<Residue> {
        inv_mod(self.value, self.modulus).map(|v| Residue {
            value: v,
            modulus: self.modulus,
        })
    }

    pub fn is_unit(self) -> bool {
        gcd(self.value as u64, self.modulus as u64) == 1
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Residue {
    type Output = Residue;
    fn add(self, rhs: Residue) -> Residue {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Residue::new(self.value as i64 + rhs.value as i64, self.modulus)
    }
}

impl Sub for Residue {
    type Output = Residue;
    fn sub(self, rhs: Residue) -> Residue {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Residue::new(self.value as i64 - rhs.value as i64, self.modulus)
    }
}

impl Mul for Residue {
    type Output = Residue;
    fn mul(self, rhs: Residue) -> Residue {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Residue {
            value: ((self.value as u64 * rhs.value as u64) % self.modulus as u64) as u32,
            modulus: self.modulus,
        }
    }
}

impl Neg for Residue {
    type Output = Residue;
    fn neg(self) -> Residue {
        Residue::new(-(self.value as i64), self.modulus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_phi(n: u64) -> u64 {
        (0..n).filter(|&a| gcd(a, n) == 1).count() as u64
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(1), 1);
        assert_eq!(phi(12), brute_phi(12));
        assert_eq!(phi(12), 4);
        assert_eq!(phi(120), 32);
    }

    #[test]
    fn phi_matches_brute_force() {
        for n in 1..=500 {
            assert_eq!(phi(n), brute_phi(n), "N = {n}");
        }
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi(1).unwrap(), 1);
        assert_eq!(psi(7).unwrap(), 1);
        assert_eq!(psi(31).unwrap(), 3);
        assert!(psi(8).is_err());
        assert!(psi(0).is_err());
    }

    #[test]
    fn psi_times_subgroup_is_phi() {
        for n in (1..=500u64).step_by(2) {
            let sub = unit_subgroup(n, &[n - 1, 2 % n]).len() as u64;
            assert_eq!(psi(n).unwrap() * sub, phi(n), "N = {n}");
        }
    }

    #[test]
    fn crt_split_examples() {
        let moduli = |n| -> Vec<u32> {
            crt_split(&RingCtx::new(n).unwrap())
                .iter()
                .map(|r| r.modulus())
                .collect()
        };
        assert_eq!(moduli(12), vec![4, 3]);
        assert_eq!(moduli(120), vec![8, 3, 5]);
        assert_eq!(moduli(7), vec![7]);
        assert!(moduli(1).is_empty());
    }

    #[test]
    fn crt_round_trip() {
        for n in 1..=200u32 {
            let ctx = RingCtx::new(n).unwrap();
            let parts = crt_split(&ctx);
            let product: u32 = parts.iter().map(|p| p.modulus()).product();
            assert_eq!(product, n);
            for v in 0..n {
                let residues: Vec<(u32, u32)> = parts
                    .iter()
                    .map(|p| (v % p.modulus(), p.modulus()))
                    .collect();
                assert_eq!(crt_lift(&residues), v, "N = {n}, v = {v}");
            }
        }
    }

    #[test]
    fn two_torsion_element() {
        for n in 1..=300u32 {
            let ctx = RingCtx::new(n).unwrap();
            assert_eq!(ctx.odd_part() % 2, 1);
            assert_eq!(ctx.odd_part() << ctx.two_exponent(), n);
            match ctx.two_torsion() {
                None => assert!(n % 2 == 1),
                Some(t) => {
                    assert_ne!(t, 0);
                    assert_eq!((2 * t) % n, 0);
                    let killed: Vec<u32> = (1..n).filter(|a| (2 * a) % n == 0).collect();
                    assert_eq!(killed, vec![t]);
                }
            }
        }
    }

    #[test]
    fn sl2_order_matches_enumeration() {
        for n in 1..=20u32 {
            let ctx = RingCtx::new(n).unwrap();
            let mut count = 0u64;
            for a in 0..n as u64 {
                for b in 0..n as u64 {
                    for c in 0..n as u64 {
                        for d in 0..n as u64 {
                            if (a * d + (n as u64) * (n as u64) - b * c) % n as u64 == 1 % n as u64
                            {
                                count += 1;
                            }
                        }
                    }
                }
            }
            assert_eq!(ctx.sl2_order(), count, "N = {n}");
        }
    }

    #[test]
    fn unit_generators_generate() {
        for n in 1..=200u32 {
            let gens: Vec<u64> = unit_generators(n).iter().map(|&g| g as u64).collect();
            assert_eq!(unit_subgroup(n as u64, &gens).len() as u64, phi(n as u64));
        }
    }

    #[test]
    fn rejects_zero_level() {
        assert!(RingCtx::new(0).is_err());
    }

    proptest! {
        #[test]
        fn residue_ring_laws(n in 1u32..500, a in any::<i32>(), b in any::<i32>(), c in any::<i32>()) {
            let (a, b, c) = (Residue::new(a as i64, n), Residue::new(b as i64, n), Residue::new(c as i64, n));
            prop_assert_eq!(a * (b + c), a * b + a * c);
            prop_assert_eq!(a - a, Residue::new(0, n));
            prop_assert_eq!(-(-a), a);
            if let Some(inv) = a.inverse() {
                prop_assert_eq!(a * inv, Residue::new(1, n));
            }
        }
    }
}
