//! Self-check suites run by `xigraph check`.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::{shortcut_components, Curve};
use crate::groups::{
    custom_group, family_group, preimage_group, Conjugation, Family, Mat2, SubgroupSpec, Vec2,
};
use crate::modgraph::{isomorphic, product, Weight};
use crate::modring::{gcd, RingCtx};
use crate::xicore::{build_xi, build_xi_oracle, rho, Triple};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Rho,
    Cycles,
    OddRegular,
    Oracle,
    Crt,
    Preimage,
    Shortcut,
    CountIdentity,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Rho,
        Suite::Cycles,
        Suite::OddRegular,
        Suite::Oracle,
        Suite::Crt,
        Suite::Preimage,
        Suite::Shortcut,
        Suite::CountIdentity,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Suite::Rho => "rho",
            Suite::Cycles => "cycles",
            Suite::OddRegular => "odd-regular",
            Suite::Oracle => "oracle",
            Suite::Crt => "crt",
            Suite::Preimage => "preimage",
            Suite::Shortcut => "shortcut",
            Suite::CountIdentity => "count-identity",
        }
    }

    pub fn from_tag(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.tag() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown suite '{s}'")))
    }

    /// Largest level (or level product, for `crt`; base level, for
    /// `preimage`) checked when no bound is given.
    pub fn default_max(self) -> u32 {
        match self {
            Suite::Rho => 16,
            Suite::Cycles => 40,
            Suite::OddRegular => 41,
            Suite::Oracle => 12,
            Suite::Crt => 60,
            Suite::Preimage => 12,
            Suite::Shortcut => 99,
            Suite::CountIdentity => 30,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub case: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub max: u32,
    pub cases: usize,
    pub failures: Vec<Failure>,
    pub passed: bool,
}

type Outcome = Result<Option<String>>;
type Case = (String, Box<dyn Fn() -> Outcome + Send + Sync>);

fn case(name: String, f: impl Fn() -> Outcome + Send + Sync + 'static) -> Case {
    (name, Box::new(f))
}

fn ring(n: u32) -> Result<RingCtx> {
    RingCtx::new(n)
}

fn conjugations(n: u32) -> [(&'static str, Conjugation); 2] {
    [("std", Conjugation::std(n)), ("inv", Conjugation::inv(n))]
}

/// Family groups with every conjugation they are stable under.
fn family_cases(n: u32) -> Result<Vec<(String, SubgroupSpec, Conjugation)>> {
    let r = ring(n)?;
    let mut out = Vec::new();
    for f in Family::ALL {
        let spec = family_group(f, &r);
        for (name, c) in conjugations(n) {
            if spec.is_stable_under(c) {
                out.push((format!("{f}/{name} N={n}"), spec.clone(), c));
            }
        }
    }
    Ok(out)
}

/// The three fixed custom generating sets used for oracle comparisons.
pub fn fixed_custom_generators(n: u32) -> Vec<(&'static str, Vec<Mat2>)> {
    let m = |a, b, c, d| Mat2::new(a, b, c, d, n);
    vec![
        ("T^2", vec![m(1, 2, 0, 1)]),
        ("cat", vec![m(2, 1, 1, 1)]),
        ("T^3,U^4", vec![m(1, 3, 0, 1), m(1, 0, 4, 1)]),
    ]
}

fn check_rho(n: u32) -> Outcome {
    let basis: Vec<Vec2> = Vec2::all(n).filter(|v| v.is_basis()).collect();
    let one = 1 % n;
    for &x in &basis {
        for &z in &basis {
            if x.pair(z) != one {
                continue;
            }
            for w in [Weight::One, Weight::Two] {
                let t = Triple::new(x, z.scale(w.value() as i64).sub(x), z, w)?;
                let mut s = t;
                for k in 1..=8 {
                    s = rho(&s);
                    if !s.is_valid() {
                        return Ok(Some(format!("rho^{k} {t} = {s} is not a triple")));
                    }
                    if s.weight != if k % 2 == 1 { w.complement() } else { w } {
                        return Ok(Some(format!("rho^{k} {t} has the wrong weight")));
                    }
                    if k == 4 && s != t.neg() {
                        return Ok(Some(format!("rho^4 {t} = {s}, expected {}", t.neg())));
                    }
                }
                if s != t {
                    return Ok(Some(format!("rho^8 {t} = {s}")));
                }
            }
        }
    }
    Ok(None)
}

fn build_cases(suite: Suite, max: u32) -> Result<Vec<Case>> {
    let mut cases = Vec::new();
    match suite {
        Suite::Rho => {
            for n in 1..=max {
                cases.push(case(format!("N={n}"), move || check_rho(n)));
            }
        }
        Suite::Cycles | Suite::CountIdentity => {
            for n in 1..=max {
                for (name, spec, c) in family_cases(n)? {
                    cases.push(case(name, move || {
                        let xi = build_xi(&spec, c)?;
                        if suite == Suite::Cycles {
                            xi.graph.verify_cyclic()?;
                            return Ok(None);
                        }
                        let (classes, vertices) =
                            (xi.geodesic_class_count(), xi.graph.vertex_count());
                        Ok((classes != vertices)
                            .then(|| format!("{classes} geodesic classes, {vertices} vertices")))
                    }));
                }
            }
        }
        Suite::OddRegular => {
            for n in (1..=max).step_by(2) {
                for (name, spec, c) in family_cases(n)? {
                    cases.push(case(name, move || {
                        let g = build_xi(&spec, c)?.graph;
                        Ok((!g.is_regular()).then(|| "graph is not regular".to_string()))
                    }));
                }
            }
        }
        Suite::Oracle => {
            for n in 1..=max {
                let mut specs = family_cases(n)?;
                for (label, gens) in fixed_custom_generators(n) {
                    for (name, c) in conjugations(n) {
                        specs.push((
                            format!("<{label}>/{name} N={n}"),
                            custom_group(&ring(n)?, &gens, c)?,
                            c,
                        ));
                    }
                }
                for (name, spec, c) in specs {
                    cases.push(case(name, move || {
                        let fast = build_xi(&spec, c)?.graph;
                        let slow = build_xi_oracle(&spec, c)?;
                        Ok((!isomorphic(&fast, &slow)?).then(|| {
                            format!(
                                "construction {:?} vs oracle {:?}",
                                fast.verify_cyclic(),
                                slow.verify_cyclic()
                            )
                        }))
                    }));
                }
            }
        }
        Suite::Crt => {
            for n1 in 2..=max / 2 {
                for n2 in n1 + 1..=max / n1 {
                    if gcd(n1 as u64, n2 as u64) != 1 {
                        continue;
                    }
                    for f in [Family::Gamma0, Family::Split, Family::Full] {
                        cases.push(case(format!("{f} N={n1}*{n2}"), move || {
                            let xi = |n: u32| -> Result<_> {
                                Ok(build_xi(&family_group(f, &ring(n)?), Conjugation::std(n))?
                                    .graph)
                            };
                            let whole = xi(n1 * n2)?;
                            let prod = product(&xi(n1)?, &xi(n2)?)?;
                            Ok((!isomorphic(&whole, &prod)?).then(|| {
                                format!(
                                    "Xi({}) = {:?}, product = {:?}",
                                    n1 * n2,
                                    whole.verify_cyclic(),
                                    prod.verify_cyclic()
                                )
                            }))
                        }));
                    }
                }
            }
        }
        Suite::Preimage => {
            for n0 in 5..=max {
                for m in [2u32, 3, 5] {
                    for (name, base, c0) in family_cases(n0)? {
                        let n = n0 * m;
                        let c = if c0.is_std() {
                            Conjugation::std(n)
                        } else {
                            Conjugation::inv(n)
                        };
                        cases.push(case(format!("{name} lifted to N={n}"), move || {
                            let lifted = preimage_group(&base, &ring(n)?)?;
                            let a = build_xi(&base, c0)?.graph;
                            let b = build_xi(&lifted, c)?.graph;
                            Ok((!isomorphic(&a, &b)?).then(|| "graphs differ".to_string()))
                        }));
                    }
                }
            }
        }
        Suite::Shortcut => {
            for n in (3..=max).step_by(2) {
                for curve in [Curve::Gamma, Curve::Gamma1, Curve::Gamma0, Curve::Split] {
                    cases.push(case(format!("{curve} N={n}"), move || {
                        let spec = curve.group(&ring(n)?);
                        let c = curve.conjugation(n);
                        let g = build_xi(&spec, c)?.graph;
                        if g.elliptic_count() > 0 {
                            return Ok(None);
                        }
                        let fast = shortcut_components(&spec, c)?;
                        let full = g.component_stats()?.len() as u64;
                        Ok((fast != full).then(|| format!("shortcut {fast}, graph {full}")))
                    }));
                }
            }
        }
    }
    Ok(cases)
}

/// Run one suite up to `max` (or its default bound).
pub fn run_suite(suite: Suite, max: Option<u32>) -> Result<SuiteReport> {
    let max = max.unwrap_or(suite.default_max());
    if max == 0 || max > 65536 {
        return Err(Error::InvalidInput(format!("bound {max} out of range")));
    }
    let cases = build_cases(suite, max)?;
    let mut failures: Vec<Failure> = cases
        .par_iter()
        .filter_map(|(name, f)| {
            let detail = match f() {
                Ok(None) => return None,
                Ok(Some(d)) => d,
                Err(e) => format!("error: {e}"),
            };
            Some(Failure {
                case: name.clone(),
                detail,
            })
        })
        .collect();
    failures.sort_by(|a, b| a.case.cmp(&b.case));
    Ok(SuiteReport {
        suite: suite.tag().to_string(),
        max,
        cases: cases.len(),
        passed: failures.is_empty(),
        failures,
    })
}
