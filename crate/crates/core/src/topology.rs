//! The premetric topology of a finite premetric space.
//!
//! `U` is open iff every `x ∈ U` has some ball `B(x, r) ⊆ U`. On a finite
//! carrier this engine enumerates every subset, so it doubles as the
//! brute-force oracle for the hereditary/basic and separation theorems.

use std::collections::BTreeSet;

use rand::Rng;

use crate::error::{Error, Result};
use crate::premetric::{ball, FinitePremetricSpace, PointSet};
use crate::rational::NonNegRational;

/// Largest carrier for which all open sets are enumerated.
pub const MAX_TOPOLOGY_POINTS: usize = 20;
/// Largest carrier for which heredity is checked on every subset.
pub const MAX_EXHAUSTIVE_HEREDITARY: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteTopology {
    n: usize,
    opens: Vec<PointSet>,
    minimal: Vec<PointSet>,
}

impl FiniteTopology {
    fn from_opens(n: usize, opens: Vec<PointSet>) -> Self {
        let minimal = (0..n)
            .map(|x| opens.iter().filter(|u| u.contains(x)).fold(PointSet::full(n), |acc, u| acc.intersection(*u)))
            .collect();
        FiniteTopology { n, opens, minimal }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// All open sets, ascending by bitmask.
    pub fn open_sets(&self) -> &[PointSet] {
        &self.opens
    }

    pub fn is_open(&self, set: PointSet) -> bool {
        self.opens.binary_search(&set).is_ok()
    }

    /// `U_x`, the intersection of all open sets containing `x`.
    pub fn minimal_neighborhood(&self, x: usize) -> PointSet {
        self.minimal[x]
    }

    pub fn interior(&self, set: PointSet) -> PointSet {
        self.opens.iter().filter(|u| u.is_subset(set)).fold(PointSet::EMPTY, |acc, u| acc.union(*u))
    }

    pub fn closure(&self, set: PointSet) -> PointSet {
        let all = PointSet::full(self.n);
        all.difference(self.interior(all.difference(set)))
    }

    /// `{U ∩ A : U open}`.
    pub fn subspace(&self, a: PointSet) -> BTreeSet<PointSet> {
        self.opens.iter().map(|u| u.intersection(a)).collect()
    }
}

fn check_size(space: &FinitePremetricSpace, max: usize) -> Result<()> {
    if space.len() > max {
        return Err(Error::TooManyPoints { n: space.len(), max });
    }
    Ok(())
}

/// Smallest ball around each point; an open set must contain it around each
/// of its points.
fn smallest_balls(space: &FinitePremetricSpace) -> Vec<PointSet> {
    let r = space.smallest_radius();
    space.points().map(|x| ball(space, x, r).expect("positive radius")).collect()
}

pub fn premetric_topology(space: &FinitePremetricSpace) -> Result<FiniteTopology> {
    check_size(space, MAX_TOPOLOGY_POINTS)?;
    let n = space.len();
    let balls = smallest_balls(space);
    let opens = (0..(1u64 << n)).map(PointSet).filter(|u| u.iter().all(|x| balls[x].is_subset(*u))).collect();
    Ok(FiniteTopology::from_opens(n, opens))
}

pub fn interior(top: &FiniteTopology, set: PointSet) -> PointSet {
    top.interior(set)
}

pub fn closure(top: &FiniteTopology, set: PointSet) -> PointSet {
    top.closure(set)
}

/// `None` if every ball is a neighborhood of its centre; otherwise the first
/// `(x, r)` whose ball does not contain `x` in its interior.
pub fn basic_failure(space: &FinitePremetricSpace) -> Result<Option<(usize, NonNegRational)>> {
    let top = premetric_topology(space)?;
    let radii = space.candidate_radii();
    for x in space.points() {
        for &r in &radii {
            if !top.interior(ball(space, x, r)?).contains(x) {
                return Ok(Some((x, r)));
            }
        }
    }
    Ok(None)
}

pub fn is_basic(space: &FinitePremetricSpace) -> Result<bool> {
    Ok(basic_failure(space)?.is_none())
}

/// The topology generated by `d|A×A`, expressed in the ambient indices.
fn induced_premetric_topology(space: &FinitePremetricSpace, a: PointSet) -> BTreeSet<PointSet> {
    let (sub, idx) = space.restrict(a);
    let top = premetric_topology(&sub).expect("subspace is no larger than the space");
    top.open_sets().iter().map(|u| PointSet::from_indices(u.iter().map(|i| idx[i]))).collect()
}

fn subset_is_hereditary(space: &FinitePremetricSpace, top: &FiniteTopology, a: PointSet) -> bool {
    top.subspace(a) == induced_premetric_topology(space, a)
}

/// First subset `A` whose subspace topology differs from the topology of the
/// induced premetric. Exhaustive over all `2^n` subsets.
pub fn hereditary_failure(space: &FinitePremetricSpace) -> Result<Option<PointSet>> {
    check_size(space, MAX_EXHAUSTIVE_HEREDITARY)?;
    let top = premetric_topology(space)?;
    Ok((0..(1u64 << space.len())).map(PointSet).find(|&a| !subset_is_hereditary(space, &top, a)))
}

pub fn is_hereditary(space: &FinitePremetricSpace) -> Result<bool> {
    Ok(hereditary_failure(space)?.is_none())
}

/// Heredity on `samples` random subsets; for carriers above the exhaustive
/// limit. A `true` verdict only covers the sampled subsets.
pub fn is_hereditary_sampled<R: Rng>(space: &FinitePremetricSpace, rng: &mut R, samples: usize) -> Result<bool> {
    let top = premetric_topology(space)?;
    let n = space.len();
    let full = PointSet::full(n).0;
    Ok((0..samples).all(|_| {
        let a = PointSet(rng.random::<u64>() & full);
        subset_is_hereditary(space, &top, a)
    }))
}

/// First pair `x ≠ y` with `U_x ∩ U_y ≠ ∅`: a constant sequence inside the
/// intersection converges to both.
pub fn seq_hausdorff_failure(space: &FinitePremetricSpace) -> Result<Option<(usize, usize)>> {
    let top = premetric_topology(space)?;
    let n = space.len();
    for x in 0..n {
        for y in (x + 1)..n {
            if !top.minimal_neighborhood(x).intersection(top.minimal_neighborhood(y)).is_empty() {
                return Ok(Some((x, y)));
            }
        }
    }
    Ok(None)
}

pub fn is_seq_hausdorff_finite(space: &FinitePremetricSpace) -> Result<bool> {
    Ok(seq_hausdorff_failure(space)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::premetric::{premetric_from_neighborhoods, NeighborhoodSystem};
    use crate::rational::NonNegRational as Q;

    fn two(pq: Q, qp: Q) -> FinitePremetricSpace {
        FinitePremetricSpace::with_default_labels(2, |i, j| match (i, j) {
            (0, 1) => pq,
            (1, 0) => qp,
            _ => Q::ZERO,
        })
    }

    #[test]
    fn discrete_two_points() {
        let top = premetric_topology(&two(Q::ONE, Q::ONE)).unwrap();
        assert_eq!(top.open_sets().len(), 4);
        assert!(is_seq_hausdorff_finite(&two(Q::ONE, Q::ONE)).unwrap());
    }

    #[test]
    fn indiscrete_two_points() {
        let s = two(Q::ZERO, Q::ZERO);
        let top = premetric_topology(&s).unwrap();
        assert_eq!(top.open_sets(), &[PointSet::EMPTY, PointSet::full(2)]);
        assert_eq!(top.closure(PointSet::singleton(0)), PointSet::full(2));
        assert!(!is_seq_hausdorff_finite(&s).unwrap());
    }

    #[test]
    fn one_point() {
        let s = FinitePremetricSpace::with_default_labels(1, |_, _| Q::ZERO);
        let top = premetric_topology(&s).unwrap();
        assert_eq!(top.open_sets(), &[PointSet::EMPTY, PointSet::singleton(0)]);
        assert!(is_basic(&s).unwrap());
        assert!(is_hereditary(&s).unwrap());
    }

    #[test]
    fn sierpinski_space() {
        // d(p,q) = 0, d(q,p) = 1: every ball around p contains q.
        let s = two(Q::ZERO, Q::ONE);
        let top = premetric_topology(&s).unwrap();
        assert_eq!(top.minimal_neighborhood(0), PointSet::full(2));
        assert_eq!(top.minimal_neighborhood(1), PointSet::singleton(1));
        assert_eq!(top.interior(PointSet::singleton(0)), PointSet::EMPTY);
        assert!(is_basic(&s).unwrap());
    }

    #[test]
    fn non_basic_chain() {
        // p sees q at distance 0, q sees r at distance 0, p sees r at 1: the
        // smallest ball around p omits r, but U_p contains it.
        let s = FinitePremetricSpace::with_default_labels(3, |i, j| match (i, j) {
            (a, b) if a == b => Q::ZERO,
            (0, 1) | (1, 2) => Q::ZERO,
            _ => Q::ONE,
        });
        let (x, _) = basic_failure(&s).unwrap().unwrap();
        assert_eq!(x, 0);
        assert!(!is_hereditary(&s).unwrap());
        assert_eq!(hereditary_failure(&s).unwrap(), Some(PointSet::from_indices([0, 2])));
    }

    #[test]
    fn spec_three_point_example_basic_matches_hereditary() {
        let half = Q::HALF;
        let s = FinitePremetricSpace::with_default_labels(3, |i, j| match (i, j) {
            (0, 1) => half,
            (1, 0) => Q::ONE,
            (0, 2) | (2, 0) => Q::ONE,
            (1, 2) => Q::ZERO,
            (2, 1) => Q::ONE,
            _ => Q::ZERO,
        });
        assert_eq!(is_basic(&s).unwrap(), is_hereditary(&s).unwrap());
        // Smallest balls: {p}, {q, r}, {r}; these are the minimal open sets.
        assert!(is_basic(&s).unwrap());
    }

    #[test]
    fn interior_closure_laws_on_small_space() {
        let s = FinitePremetricSpace::with_default_labels(
            3,
            |i, j| if i == j || (i, j) == (0, 1) { Q::ZERO } else { Q::ONE },
        );
        let top = premetric_topology(&s).unwrap();
        for a in (0..8).map(PointSet) {
            let int = top.interior(a);
            let cl = top.closure(a);
            assert!(int.is_subset(a) && a.is_subset(cl));
            assert_eq!(top.interior(int), int);
            assert_eq!(top.closure(cl), cl);
            assert!(top.is_open(int));
        }
    }

    #[test]
    fn too_large_is_rejected() {
        let s = FinitePremetricSpace::with_default_labels(13, |i, j| if i == j { Q::ZERO } else { Q::ONE });
        assert!(matches!(is_hereditary(&s), Err(Error::TooManyPoints { .. })));
    }

    #[test]
    fn neighborhood_topology_discrete() {
        let ns = NeighborhoodSystem::new(
            vec!["a".into(), "b".into(), "c".into()],
            (0..3).map(|x| vec![PointSet::singleton(x)]).collect(),
        )
        .unwrap();
        let top = premetric_topology(&premetric_from_neighborhoods(&ns)).unwrap();
        assert_eq!(top.open_sets().len(), 8);
    }
}
