//! Fixtures shared by the benchmarks.

use cobweb_core::premetric::FinitePremetricSpace;
use cobweb_core::sampling::{random_table, rng, unit_grid};
use cobweb_core::tower::{TowerPoint, TowerSpace};

/// A seeded random table on `n` points with entries in `{0, 1/4, …, 3/2}`.
pub fn table(n: usize, seed: u64) -> FinitePremetricSpace {
    let mut values = unit_grid(4);
    values.push(cobweb_core::NonNegRational::frac(3, 2));
    random_table(&mut rng(seed), n, &values)
}

/// `count` random stems over `base`, cycling through lengths `1..=max_len`.
pub fn stems(base: &FinitePremetricSpace, count: usize, max_len: usize, seed: u64) -> Vec<TowerPoint<usize>> {
    let tower = TowerSpace::new(base);
    let mut r = rng(seed);
    let carrier: Vec<usize> = base.points().collect();
    let pools = tower.level_pools(&carrier, max_len.saturating_sub(1).max(1), &mut r);
    (0..count).map(|i| tower.random_stem(&pools, i % max_len.max(1) + 1, &mut r)).collect()
}
