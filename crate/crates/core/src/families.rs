//! Named modular curves, closed-form predictions of their real locus, the
//! doubling shortcut for odd level, and genus via coset counting.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::groups::{family_group, for_each_sl2, Conjugation, Family, Mat2, SubgroupSpec};
use crate::modring::{factorize, phi, psi, RingCtx};
use crate::xicore::{build_xi, parabolic_classes};

/// A named curve: a family group paired with a conjugation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Curve {
    /// `X(1)`.
    Full,
    /// `X^+(N)`: `{+-1}` with the standard conjugation.
    Gamma,
    /// `X^-(N)`: `{+-1}` with `z -> 1/conj(z)`.
    GammaMinus,
    Gamma1,
    Gamma0,
    Split,
}

impl Curve {
    pub const ALL: [Curve; 6] = [
        Curve::Full,
        Curve::Gamma,
        Curve::GammaMinus,
        Curve::Gamma1,
        Curve::Gamma0,
        Curve::Split,
    ];

    pub fn family(self) -> Family {
        match self {
            Curve::Full => Family::Full,
            Curve::Gamma | Curve::GammaMinus => Family::Gamma,
            Curve::Gamma1 => Family::Gamma1,
            Curve::Gamma0 => Family::Gamma0,
            Curve::Split => Family::Split,
        }
    }

    pub fn conjugation(self, n: u32) -> Conjugation {
        match self {
            Curve::GammaMinus => Conjugation::inv(n),
            _ => Conjugation::std(n),
        }
    }

    pub fn group(self, ring: &RingCtx) -> SubgroupSpec {
        family_group(self.family(), ring)
    }

    pub fn tag(self) -> &'static str {
        match self {
            Curve::Full => "full",
            Curve::Gamma => "gamma",
            Curve::GammaMinus => "gamma-minus",
            Curve::Gamma1 => "gamma1",
            Curve::Gamma0 => "gamma0",
            Curve::Split => "split",
        }
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Curve {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Curve::ALL
            .into_iter()
            .find(|c| c.tag() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown family '{s}'")))
    }
}

/// Predicted real components, real cusps and real even-order elliptic points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyPrediction {
    pub curve: Curve,
    pub level: u32,
    pub components: u64,
    pub cusps: u64,
    pub elliptic: u64,
}

/// Closed-form prediction. `Split` has none and is rejected.
pub fn predict(curve: Curve, n: u32) -> Result<FamilyPrediction> {
    if n == 0 {
        return Err(Error::InvalidInput("level must be at least 1".into()));
    }
    let ring = RingCtx::new(n)?;
    let nn = n as u64;
    let f = phi(nn);
    let r = ring.two_exponent();
    let odd = ring.odd_part() as u64;
    let (components, cusps, elliptic) = match curve {
        Curve::Split => {
            return Err(Error::InvalidInput(
                "no closed form is known for the split Cartan family".into(),
            ))
        }
        Curve::Full => (1, 1, 1),
        _ if n == 1 => (1, 1, 1),
        Curve::Gamma => {
            let cusps = match r {
                0 => f,
                1 if n != 2 => 3 * f,
                _ => 2 * f,
            };
            (plus_minus_components(n)?, cusps, 0)
        }
        Curve::GammaMinus => (plus_minus_components(n)?, f, 0),
        Curve::Gamma1 => {
            let cusps = match r {
                0 => f,
                1 => 2 * f,
                _ => 3 * f / 2,
            };
            let components = match r {
                0 | 1 => psi(odd)?,
                _ if n == 4 => 1,
                _ => f / 4,
            };
            (components, cusps, u64::from(n <= 2))
        }
        Curve::Gamma0 => {
            let k = factorize(odd).len() as u32;
            let cusps = (1u64 << k) * [1, 2, 3, 4][r.min(3) as usize];
            let components = if odd == 1 {
                1
            } else {
                (1u64 << (k - 1)) * if r >= 3 { 2 } else { 1 }
            };
            (components, cusps, u64::from(n <= 2))
        }
    };
    Ok(FamilyPrediction {
        curve,
        level: n,
        components,
        cusps,
        elliptic,
    })
}

fn plus_minus_components(n: u32) -> Result<u64> {
    Ok(if n % 2 == 1 {
        psi(n as u64)?
    } else if n == 2 {
        1
    } else {
        phi(n as u64) / 2
    })
}

/// Half the number of orbits of `[x] -> [2x]` on the parabolic vertices.
/// Requires odd level and no elliptic vertices.
pub fn shortcut_components(spec: &SubgroupSpec, conj: Conjugation) -> Result<u64> {
    let n = spec.level();
    if n.is_multiple_of(2) {
        return Err(Error::InvalidInput(format!(
            "the doubling shortcut needs odd level, got {n}"
        )));
    }
    let xi = build_xi(spec, conj)?;
    if xi.graph.elliptic_count() > 0 {
        return Err(Error::Precondition(
            "the doubling shortcut needs a graph without elliptic vertices".into(),
        ));
    }
    let orbits = spec.vector_orbits()?;
    let reps = parabolic_classes(spec, conj)?;
    let mut index = vec![usize::MAX; orbits.len()];
    for (i, r) in reps.iter().enumerate() {
        index[orbits.class_of(*r).expect("basis vector")] = i;
    }
    let image: Vec<usize> = reps
        .iter()
        .map(|r| index[orbits.class_of(r.scale(2)).expect("2 is a unit")])
        .collect();
    if image.contains(&usize::MAX) {
        return Err(Error::Invariant(
            "doubling left the parabolic vertices".into(),
        ));
    }
    let mut seen = vec![false; reps.len()];
    let mut cycles = 0u64;
    for start in 0..reps.len() {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = image[i];
        }
    }
    if !cycles.is_multiple_of(2) {
        return Err(Error::Invariant(format!(
            "odd number ({cycles}) of doubling orbits"
        )));
    }
    Ok(cycles / 2)
}

/// Index, elliptic point counts, cusp count and genus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenusData {
    pub mu: u64,
    pub nu2: u64,
    pub nu3: u64,
    pub nu_inf: u64,
    pub genus: u64,
}

/// Genus from `g = 1 + mu/12 - nu2/4 - nu3/3 - nu_inf/2`, with `nu2` and
/// `nu3` counted as fixed cosets of `S` and `T` in `G \ SL_2(Z/N)`.
pub fn genus(spec: &SubgroupSpec) -> Result<GenusData> {
    if !spec.contains_neg_identity() {
        return Err(Error::Precondition("group does not contain -1".into()));
    }
    let n = spec.level();
    let order = spec.order();
    let mu = spec.ring().sl2_order() / order;
    let s = Mat2::new(0, 1, -1, 0, n);
    let t = Mat2::new(0, 1, -1, -1, n);
    let (mut fix_s, mut fix_t) = (0u64, 0u64);
    for_each_sl2(n, |a| {
        let ai = a.inverse().expect("determinant 1");
        if spec.contains(a.mul(s).mul(ai)) {
            fix_s += 1;
        }
        if spec.contains(a.mul(t).mul(ai)) {
            fix_t += 1;
        }
    });
    if fix_s % order != 0 || fix_t % order != 0 {
        return Err(Error::Invariant(
            "fixed-point counts are not multiples of |G|".into(),
        ));
    }
    let nu2 = fix_s / order;
    let nu3 = fix_t / order;
    let nu_inf = spec.vector_orbits()?.len() as u64;
    let twelve_g = 12 + mu as i64 - 3 * nu2 as i64 - 4 * nu3 as i64 - 6 * nu_inf as i64;
    if twelve_g < 0 || twelve_g % 12 != 0 {
        return Err(Error::Invariant(format!(
            "genus formula gives 12g = {twelve_g} (mu={mu}, nu2={nu2}, nu3={nu3}, nu_inf={nu_inf})"
        )));
    }
    Ok(GenusData {
        mu,
        nu2,
        nu3,
        nu_inf,
        genus: (twelve_g / 12) as u64,
    })
}

/// `(nu_inf, nu2, nu3)` for the split Cartan normalizer from the
/// multiplicative prime-power formulas.
pub fn split_nu_formulas(n: u32) -> (u64, u64, u64) {
    let mut out = (1u64, 1u64, 1u64);
    for (p, e) in factorize(n as u64) {
        let pe1 = p.pow(e - 1);
        let inf = if p == 2 && e == 1 {
            2
        } else {
            pe1 * (p + 1) / 2
        };
        let two = match p % 4 {
            1 => pe1 * (p - 1) / 2 + 1,
            3 => pe1 * (p + 1) / 2,
            _ => pe1,
        };
        let three = u64::from(p % 3 == 1);
        out = (out.0 * inf, out.1 * two, out.2 * three);
    }
    out
}

/// `N^2 prod (1 + 1/p) / 2`, the index of the split Cartan normalizer.
pub fn split_index(n: u32) -> u64 {
    factorize(n as u64)
        .into_iter()
        .fold((n as u64).pow(2), |acc, (p, _)| acc / p * (p + 1) / 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(n: u32) -> RingCtx {
        RingCtx::new(n).unwrap()
    }

    #[test]
    fn predictions_from_examples() {
        let p = predict(Curve::Gamma0, 120).unwrap();
        assert_eq!((p.components, p.cusps), (4, 16));
        let p = predict(Curve::Gamma1, 31).unwrap();
        assert_eq!((p.components, p.cusps), (3, 30));
        let p = predict(Curve::Gamma1, 4).unwrap();
        assert_eq!((p.components, p.cusps), (1, 3));
        let p = predict(Curve::Gamma, 8).unwrap();
        assert_eq!((p.components, p.cusps), (2, 8));
        let p = predict(Curve::GammaMinus, 8).unwrap();
        assert_eq!((p.components, p.cusps), (2, 4));
        assert!(predict(Curve::Split, 10).is_err());
    }

    #[test]
    fn predictions_match_graphs_small() {
        for n in 1..=30 {
            for c in [
                Curve::Gamma,
                Curve::GammaMinus,
                Curve::Gamma1,
                Curve::Gamma0,
                Curve::Full,
            ] {
                let xi = build_xi(&c.group(&ring(n)), c.conjugation(n)).unwrap();
                let p = predict(c, n).unwrap();
                let stats = xi.graph.component_stats().unwrap();
                assert_eq!(stats.len() as u64, p.components, "{c} N = {n}");
                assert_eq!(xi.graph.elliptic_count() as u64, p.elliptic, "{c} N = {n}");
                if c == Curve::Gamma && n == 2 {
                    // X(2) has the three cusps 0, 1 and infinity, all real; the
                    // published count is 2.
                    assert_eq!((p.cusps, xi.graph.parabolic_count()), (2, 3));
                    continue;
                }
                assert_eq!(xi.graph.parabolic_count() as u64, p.cusps, "{c} N = {n}");
            }
        }
    }

    #[test]
    fn shortcut_examples() {
        let g = Curve::Gamma.group(&ring(7));
        assert_eq!(shortcut_components(&g, Conjugation::std(7)).unwrap(), 1);
        let g = Curve::Gamma0.group(&ring(15));
        assert_eq!(shortcut_components(&g, Conjugation::std(15)).unwrap(), 2);
        let g = Curve::Gamma1.group(&ring(31));
        assert_eq!(shortcut_components(&g, Conjugation::std(31)).unwrap(), 3);
        let g = Curve::Gamma.group(&ring(8));
        assert!(shortcut_components(&g, Conjugation::std(8)).is_err());
        let g = Curve::Split.group(&ring(5));
        assert!(shortcut_components(&g, Conjugation::std(5)).is_err());
    }

    #[test]
    fn doubling_orbits_for_gamma_seven() {
        // Cusp classes (a,0), (0,a) mod +-1: doubling has two orbits of size 3.
        let g = Curve::Gamma.group(&ring(7));
        let reps = parabolic_classes(&g, Conjugation::std(7)).unwrap();
        assert_eq!(reps.len(), 6);
    }

    #[test]
    fn genus_examples() {
        let g = genus(&Curve::Full.group(&ring(1))).unwrap();
        assert_eq!(
            g,
            GenusData {
                mu: 1,
                nu2: 1,
                nu3: 1,
                nu_inf: 1,
                genus: 0
            }
        );
        assert_eq!(genus(&Curve::Gamma0.group(&ring(120))).unwrap().genus, 17);
        assert_eq!(genus(&Curve::Split.group(&ring(2))).unwrap().nu2, 1);
    }

    #[test]
    fn split_formulas_match_counts() {
        assert_eq!(split_nu_formulas(2).0, 2);
        assert_eq!(split_nu_formulas(5).1, 3);
        for n in 1..=40 {
            let g = genus(&Curve::Split.group(&ring(n))).unwrap();
            assert_eq!(split_nu_formulas(n), (g.nu_inf, g.nu2, g.nu3), "N = {n}");
            assert_eq!(split_index(n), g.mu, "N = {n}");
        }
    }

    #[test]
    fn curve_tags_round_trip() {
        for c in Curve::ALL {
            assert_eq!(c.tag().parse::<Curve>().unwrap(), c);
        }
        assert!("gamma2".parse::<Curve>().is_err());
    }
}
