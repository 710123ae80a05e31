mod oracles;

use cobweb_core::format::{parse_space, space_to_json, stem_from_json, stem_to_json};
use cobweb_core::premetric::FinitePremetricSpace;
use cobweb_core::sampling::{random_table, rng};
use cobweb_core::{gamma_distance, premetric_topology, Cobweb, GammaPoint, NonNegRational, TowerSpace};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = NonNegRational> {
    (0u64..=24, 1u64..=12).prop_map(|(n, d)| NonNegRational::frac(n, d))
}

fn unit() -> impl Strategy<Value = NonNegRational> {
    (1u64..12, 12u64..=12).prop_map(|(n, d)| NonNegRational::frac(n, d))
}

fn gamma_point(carrier: u8) -> impl Strategy<Value = GammaPoint<u8>> {
    prop_oneof![
        (0..carrier).prop_map(GammaPoint::Vertex),
        (0..carrier, 0..carrier, unit()).prop_map(|(x, y, t)| GammaPoint::normalize(x, y, t).unwrap()),
    ]
}

fn table(n: usize) -> impl Strategy<Value = FinitePremetricSpace> {
    proptest::collection::vec(rational(), n * n).prop_map(move |v| {
        FinitePremetricSpace::with_default_labels(n, |i, j| if i == j { NonNegRational::ZERO } else { v[i * n + j] })
    })
}

proptest! {
    #[test]
    fn rational_display_roundtrip(q in rational()) {
        prop_assert_eq!(q.to_string().parse::<NonNegRational>().unwrap(), q);
    }

    #[test]
    fn gamma_matches_path_search(a in gamma_point(5), b in gamma_point(5)) {
        prop_assert_eq!(gamma_distance(&a, &b), oracles::graph_distance(&a, &b));
    }

    #[test]
    fn cobweb_members_keep_graph_distance(s in table(3), i in 0usize..3, j in 0usize..3, t in unit()) {
        let web = Cobweb::new(&s);
        prop_assume!(i != j);
        let a = GammaPoint::normalize(i, j, t).unwrap();
        let kept = t <= NonNegRational::ONE.saturating_sub(s.d(j, i).truncated());
        prop_assert_eq!(web.contains(&a), kept);
        if kept {
            prop_assert_eq!(web.distance(&a, &GammaPoint::Vertex(i)).unwrap(), oracles::graph_distance(&a, &GammaPoint::Vertex(i)));
        }
    }

    #[test]
    fn topology_matches_subset_enumeration(s in table(4)) {
        let top = premetric_topology(&s).unwrap();
        prop_assert_eq!(top.open_sets().to_vec(), oracles::open_sets(&s));
    }

    #[test]
    fn space_spec_roundtrip(s in table(4)) {
        prop_assert_eq!(parse_space(&space_to_json(&s)).unwrap(), s);
    }

    #[test]
    fn tower_closed_form_matches_lifting(seed in any::<u64>(), n in 1usize..=4) {
        let mut r = rng(seed);
        let grid = [0u64, 1, 2, 3, 4, 6].map(|k| NonNegRational::frac(k, 4));
        let base = random_table(&mut r, n, &grid);
        let tower = TowerSpace::new(&base);
        let carrier: Vec<usize> = base.points().collect();
        let pools = tower.level_pools(&carrier, 2, &mut r);
        let a = tower.random_stem(&pools, 3, &mut r);
        let b = tower.random_stem(&pools, 2, &mut r);
        let levels = a.len().max(b.len()) + 8;
        prop_assert_eq!(tower.omega_distance(&a, &b), oracles::tower_max(&a, &b, levels));

        let label = |p: &usize| base.label_of(*p).to_string();
        let parse = |s: &str| base.index_of(s).ok_or_else(|| cobweb_core::Error::UnknownPoint(s.into()));
        let back = tower.validate_stem(stem_from_json(&stem_to_json(&a, &label), &parse).unwrap()).unwrap();
        prop_assert_eq!(back, a);
    }
}

#[test]
fn stems_are_canonical() {
    let base =
        FinitePremetricSpace::with_default_labels(
            2,
            |i, j| if i == j { NonNegRational::ZERO } else { NonNegRational::HALF },
        );
    let tower = TowerSpace::new(&base);
    let mut r = rng(5);
    let carrier = [0, 1];
    let pools = tower.level_pools(&carrier, 2, &mut r);
    for _ in 0..50 {
        let a = tower.random_stem(&pools, 3, &mut r);
        let padded: Vec<_> = (1..=a.len() + 2).map(|n| a.projection(n)).collect();
        assert_eq!(tower.validate_stem(padded).unwrap(), a);
    }
}
