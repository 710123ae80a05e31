//! Seeded generators for randomized property checks.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gamma::GammaPoint;
use crate::premetric::FinitePremetricSpace;
use crate::rational::NonNegRational;

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `{0, 1/g, 2/g, …, 1}`.
pub fn unit_grid(g: u64) -> Vec<NonNegRational> {
    (0..=g).map(|k| NonNegRational::frac(k, g)).collect()
}

/// Every `n`-point table with off-diagonal entries from `values`, in
/// lexicographic order.
pub fn all_tables(n: usize, values: &[NonNegRational]) -> impl Iterator<Item = FinitePremetricSpace> + '_ {
    let cells = n * n - n;
    let total = values.len().pow(cells as u32);
    (0..total).map(move |mut code| {
        let mut entries = Vec::with_capacity(cells);
        for _ in 0..cells {
            entries.push(values[code % values.len()]);
            code /= values.len();
        }
        let mut it = entries.into_iter();
        FinitePremetricSpace::with_default_labels(n, |i, j| {
            if i == j {
                NonNegRational::ZERO
            } else {
                it.next().expect("one entry per cell")
            }
        })
    })
}

/// A table with off-diagonal entries drawn from `values`.
pub fn random_table<R: Rng>(rng: &mut R, n: usize, values: &[NonNegRational]) -> FinitePremetricSpace {
    FinitePremetricSpace::with_default_labels(n, |i, j| {
        if i == j {
            NonNegRational::ZERO
        } else {
            *values.choose(rng).expect("nonempty value list")
        }
    })
}

/// A random map `f: X → Y` and a target table on `m` points for which `f` is
/// non-expanding: each `d_Y(u, v)` with `u, v` in the image is the least
/// `d_X(a, b)` over preimages, other entries are random.
pub fn random_nonexpanding<R: Rng>(
    rng: &mut R,
    source: &FinitePremetricSpace,
    m: usize,
    values: &[NonNegRational],
) -> (Vec<usize>, FinitePremetricSpace) {
    let f: Vec<usize> = (0..source.len()).map(|_| rng.random_range(0..m)).collect();
    let target = FinitePremetricSpace::with_default_labels(m, |u, v| {
        if u == v {
            return NonNegRational::ZERO;
        }
        let pre = source
            .points()
            .flat_map(|a| source.points().map(move |b| (a, b)))
            .filter(|&(a, b)| f[a] == u && f[b] == v)
            .map(|(a, b)| source.d(a, b))
            .min();
        pre.unwrap_or_else(|| *values.choose(rng).expect("nonempty value list"))
    });
    (f, target)
}

/// Vertices and arc points at parameters `params` over `carrier`.
pub fn gamma_points<P: Clone + Ord + std::fmt::Debug>(carrier: &[P], params: &[NonNegRational]) -> Vec<GammaPoint<P>> {
    let mut out: Vec<_> = carrier.iter().cloned().map(GammaPoint::Vertex).collect();
    for x in carrier {
        for y in carrier {
            if x != y {
                out.extend(params.iter().filter_map(|t| GammaPoint::normalize(x.clone(), y.clone(), *t).ok()));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_enumeration() {
        let v = unit_grid(2);
        assert_eq!(all_tables(2, &v).count(), 9);
        assert_eq!(all_tables(3, &v).count(), 729);
    }

    #[test]
    fn nonexpanding_by_construction() {
        let mut r = rng(3);
        let v = unit_grid(4);
        for _ in 0..20 {
            let x = random_table(&mut r, 4, &v);
            let (f, y) = random_nonexpanding(&mut r, &x, 3, &v);
            for a in x.points() {
                for b in x.points() {
                    assert!(y.d(f[a], f[b]) <= x.d(a, b));
                }
            }
        }
    }
}
