use proptest::prelude::*;

use xigraph::families::{genus, split_nu_formulas, Curve};
use xigraph::groups::{custom_group, sl2_elements, Conjugation, Mat2};
use xigraph::modgraph::isomorphic;
use xigraph::modring::RingCtx;
use xigraph::xicore::{build_xi, build_xi_oracle};

fn ring(n: u32) -> RingCtx {
    RingCtx::new(n).unwrap()
}

#[test]
fn fixed_custom_groups_match_oracle() {
    for n in 2..=12 {
        let m = |a, b, c, d| Mat2::new(a, b, c, d, n);
        for gens in [
            vec![m(1, 2, 0, 1)],
            vec![m(2, 1, 1, 1)],
            vec![m(1, 3, 0, 1), m(1, 0, 4, 1)],
        ] {
            for conj in [Conjugation::std(n), Conjugation::inv(n)] {
                let spec = custom_group(&ring(n), &gens, conj).unwrap();
                let fast = build_xi(&spec, conj).unwrap().graph;
                let slow = build_xi_oracle(&spec, conj).unwrap();
                assert!(isomorphic(&fast, &slow).unwrap(), "N={n} {gens:?}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_groups_match_oracle(
        n in 2u32..=9,
        picks in proptest::collection::vec(any::<prop::sample::Index>(), 1..=2),
        inv in any::<bool>(),
    ) {
        let all = sl2_elements(n);
        let gens: Vec<Mat2> = picks.iter().map(|i| *i.get(&all)).collect();
        let conj = if inv { Conjugation::inv(n) } else { Conjugation::std(n) };
        let spec = custom_group(&ring(n), &gens, conj).unwrap();
        let fast = build_xi(&spec, conj).unwrap();
        let slow = build_xi_oracle(&spec, conj).unwrap();
        prop_assert!(isomorphic(&fast.graph, &slow).unwrap());
        prop_assert_eq!(fast.geodesic_class_count(), fast.graph.vertex_count());
    }
}

#[test]
fn plus_and_minus_share_components_but_not_structure() {
    for n in 2..=60 {
        let plus = build_xi(&Curve::Gamma.group(&ring(n)), Conjugation::std(n))
            .unwrap()
            .graph;
        let minus = build_xi(&Curve::GammaMinus.group(&ring(n)), Conjugation::inv(n))
            .unwrap()
            .graph;
        assert_eq!(
            plus.component_stats().unwrap().len(),
            minus.component_stats().unwrap().len(),
            "N={n}"
        );
        if n % 2 == 0 && n > 2 {
            assert!(!isomorphic(&plus, &minus).unwrap(), "N={n}");
        }
    }
}

#[test]
fn split_nu_formulas_match_coset_counts() {
    for n in 1..=100 {
        let g = genus(&Curve::Split.group(&ring(n))).unwrap();
        assert_eq!(split_nu_formulas(n), (g.nu_inf, g.nu2, g.nu3), "N={n}");
    }
}

#[test]
fn genus_spot_values() {
    assert_eq!(genus(&Curve::Split.group(&ring(100))).unwrap().genus, 348);
    assert_eq!(genus(&Curve::Gamma0.group(&ring(120))).unwrap().genus, 17);
    assert_eq!(genus(&Curve::Full.group(&ring(1))).unwrap().genus, 0);
    // X_split(13) has genus 3.
    assert_eq!(genus(&Curve::Split.group(&ring(13))).unwrap().genus, 3);
}
