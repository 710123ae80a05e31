//! Premetric spaces and their finitely decidable predicates.
//!
//! A premetric is any `d: X × X → [0, ∞)` with `d(x, x) = 0`; nothing else is
//! assumed. [`Premetric`] is the trait every carrier in the crate implements
//! (finite tables, rule-presented spaces, cobwebs, tower levels). Certified
//! answers are only given for [`FinitePremetricSpace`]; a presented space is
//! classified by restricting it to an explicit sample.

use std::collections::BTreeSet;
use std::fmt::Debug;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::rational::NonNegRational;

/// A carrier together with an exact premetric.
pub trait Premetric {
    type Point: Clone + Eq + Ord + Hash + Debug;

    fn dist(&self, a: &Self::Point, b: &Self::Point) -> NonNegRational;

    /// `min(1, d(a, b))`.
    fn truncated_dist(&self, a: &Self::Point, b: &Self::Point) -> NonNegRational {
        self.dist(a, b).truncated()
    }
}

impl<T: Premetric + ?Sized> Premetric for &T {
    type Point = T::Point;

    fn dist(&self, a: &Self::Point, b: &Self::Point) -> NonNegRational {
        (**self).dist(a, b)
    }
}

/// Spaces whose points have a textual form (spec files, CLI, reports).
pub trait Labeled: Premetric {
    fn label(&self, p: &Self::Point) -> String;
    fn parse_point(&self, s: &str) -> Result<Self::Point>;
}

impl<T: Labeled + ?Sized> Labeled for &T {
    fn label(&self, p: &Self::Point) -> String {
        (**self).label(p)
    }
    fn parse_point(&self, s: &str) -> Result<Self::Point> {
        (**self).parse_point(s)
    }
}

/// A subset of a finite carrier of at most 64 points.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PointSet(pub u64);

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);

    pub fn full(n: usize) -> Self {
        assert!(n <= 64);
        if n == 64 {
            PointSet(u64::MAX)
        } else {
            PointSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        PointSet(1u64 << i)
    }

    pub fn from_indices(it: impl IntoIterator<Item = usize>) -> Self {
        it.into_iter().fold(Self::EMPTY, |s, i| s.with(i))
    }

    pub fn with(self, i: usize) -> Self {
        PointSet(self.0 | (1u64 << i))
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 & (1u64 << i) != 0
    }

    pub fn union(self, other: Self) -> Self {
        PointSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        PointSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        PointSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..64).filter(move |i| bits & (1u64 << i) != 0)
    }
}

impl Debug for PointSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A premetric on `n` labelled points stored as a dense `n × n` table.
///
/// Construction does not validate `d(x, x) = 0`; see [`validate_premetric`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePremetricSpace {
    labels: Vec<String>,
    table: Vec<NonNegRational>,
}

impl FinitePremetricSpace {
    pub fn new(labels: Vec<String>, table: Vec<NonNegRational>) -> Result<Self> {
        let n = labels.len();
        if table.len() != n * n {
            return Err(Error::parse("dist", format!("table has {} entries, expected {}", table.len(), n * n)));
        }
        let unique: BTreeSet<&String> = labels.iter().collect();
        if unique.len() != n {
            return Err(Error::parse("points", "duplicate point label"));
        }
        Ok(FinitePremetricSpace { labels, table })
    }

    pub fn from_fn(labels: Vec<String>, mut dist: impl FnMut(usize, usize) -> NonNegRational) -> Result<Self> {
        let n = labels.len();
        let table = (0..n * n).map(|k| dist(k / n, k % n)).collect();
        Self::new(labels, table)
    }

    /// Points labelled `p0, p1, …`.
    pub fn with_default_labels(n: usize, dist: impl FnMut(usize, usize) -> NonNegRational) -> Self {
        Self::from_fn((0..n).map(|i| format!("p{i}")).collect(), dist).expect("labels are distinct")
    }

    /// The finite subspace of any labelled space spanned by `sample`
    /// (duplicates removed, order kept).
    pub fn from_sample<S: Labeled>(space: &S, sample: &[S::Point]) -> Self {
        let mut seen = BTreeSet::new();
        let pts: Vec<&S::Point> = sample.iter().filter(|p| seen.insert((*p).clone())).collect();
        let labels = pts.iter().map(|p| space.label(p)).collect();
        Self::from_fn(labels, |i, j| space.dist(pts[i], pts[j])).expect("distinct sample points have distinct labels")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_of(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn d(&self, i: usize, j: usize) -> NonNegRational {
        self.table[i * self.len() + j]
    }

    pub fn points(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    pub fn all(&self) -> PointSet {
        PointSet::full(self.len())
    }

    /// The induced premetric on the points of `subset`, in index order.
    pub fn restrict(&self, subset: PointSet) -> (FinitePremetricSpace, Vec<usize>) {
        let idx: Vec<usize> = subset.iter().filter(|&i| i < self.len()).collect();
        let labels = idx.iter().map(|&i| self.labels[i].clone()).collect();
        let sub = Self::from_fn(labels, |a, b| self.d(idx[a], idx[b])).expect("restriction keeps labels distinct");
        (sub, idx)
    }

    /// Distinct values of the table, ascending.
    pub fn realized_values(&self) -> BTreeSet<NonNegRational> {
        self.table.iter().copied().collect()
    }

    /// Radii at which balls can change: every positive realized value, the
    /// midpoints between consecutive realized values, and one value above the
    /// maximum. Ascending.
    pub fn candidate_radii(&self) -> Vec<NonNegRational> {
        let mut values = self.realized_values();
        values.insert(NonNegRational::ZERO);
        let values: Vec<_> = values.into_iter().collect();
        let mut out = BTreeSet::new();
        for w in values.windows(2) {
            out.insert(w[0].midpoint(w[1]));
            out.insert(w[1]);
        }
        out.insert(*values.last().expect("zero is present") + NonNegRational::ONE);
        out.into_iter().collect()
    }

    /// The smallest candidate radius. Balls are monotone in the radius, so
    /// every "there is r > 0" question reduces to this one.
    pub fn smallest_radius(&self) -> NonNegRational {
        self.candidate_radii()[0]
    }
}

impl Premetric for FinitePremetricSpace {
    type Point = usize;

    fn dist(&self, a: &usize, b: &usize) -> NonNegRational {
        self.d(*a, *b)
    }
}

impl Labeled for FinitePremetricSpace {
    fn label(&self, p: &usize) -> String {
        self.labels[*p].clone()
    }

    fn parse_point(&self, s: &str) -> Result<usize> {
        self.index_of(s).ok_or_else(|| Error::UnknownPoint(s.to_string()))
    }
}

/// `Ok` iff `d(x, x) = 0` for every point (entries are nonnegative by type).
pub fn validate_premetric(space: &FinitePremetricSpace) -> Result<()> {
    match space.points().find(|&x| !space.d(x, x).is_zero()) {
        Some(x) => Err(Error::Violation(space.label_of(x).to_string())),
        None => Ok(()),
    }
}

/// Axiom flags with the first failing witness for each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub is_symmetric: bool,
    pub is_pseudometric: bool,
    pub is_metric: bool,
    pub is_ultrametric: bool,
    /// `(x, y)` with `d(x, y) ≠ d(y, x)`.
    pub asymmetry: Option<(usize, usize)>,
    /// `(x, y, z)` with `d(x, z) > d(x, y) + d(y, z)`.
    pub triangle: Option<(usize, usize, usize)>,
    /// `(x, y)`, `x ≠ y`, with `d(x, y) = 0`.
    pub indiscernible: Option<(usize, usize)>,
    /// `(x, y, z)` with `d(x, z) > max(d(x, y), d(y, z))`.
    pub strong_triangle: Option<(usize, usize, usize)>,
}

pub fn classify(space: &FinitePremetricSpace) -> Classification {
    let pts = space.points();
    let asymmetry =
        pts.clone().flat_map(|x| pts.clone().map(move |y| (x, y))).find(|&(x, y)| space.d(x, y) != space.d(y, x));
    let indiscernible =
        pts.clone().flat_map(|x| pts.clone().map(move |y| (x, y))).find(|&(x, y)| x != y && space.d(x, y).is_zero());
    let mut triangle = None;
    let mut strong_triangle = None;
    'outer: for x in pts.clone() {
        for y in pts.clone() {
            for z in pts.clone() {
                let (xy, yz, xz) = (space.d(x, y), space.d(y, z), space.d(x, z));
                if triangle.is_none() && xz > xy + yz {
                    triangle = Some((x, y, z));
                }
                if strong_triangle.is_none() && xz > xy.max(yz) {
                    strong_triangle = Some((x, y, z));
                }
                if triangle.is_some() && strong_triangle.is_some() {
                    break 'outer;
                }
            }
        }
    }
    let is_symmetric = asymmetry.is_none();
    let is_pseudometric = is_symmetric && triangle.is_none();
    let is_metric = is_pseudometric && indiscernible.is_none();
    Classification {
        is_symmetric,
        is_pseudometric,
        is_metric,
        is_ultrametric: is_metric && strong_triangle.is_none(),
        asymmetry,
        triangle,
        indiscernible,
        strong_triangle,
    }
}

/// Where a verdict came from: an exhaustive check or a sample of a presented
/// space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Exhaustive,
    Sampled { points: usize },
}

/// Classifies a presented space on a finite sample. The flags only certify the
/// sample.
pub fn classify_sampled<S: Labeled>(space: &S, sample: &[S::Point]) -> (Classification, Provenance) {
    let finite = FinitePremetricSpace::from_sample(space, sample);
    let n = finite.len();
    (classify(&finite), Provenance::Sampled { points: n })
}

/// `d̄ = min(1, d)` pointwise.
pub fn truncate(space: &FinitePremetricSpace) -> FinitePremetricSpace {
    FinitePremetricSpace::from_fn(space.labels.clone(), |i, j| space.d(i, j).truncated()).expect("same labels")
}

/// `B(x, r) = {y : d(x, y) < r}`.
pub fn ball(space: &FinitePremetricSpace, x: usize, r: NonNegRational) -> Result<PointSet> {
    if r.is_zero() {
        return Err(Error::ZeroRadius);
    }
    Ok(PointSet::from_indices(space.points().filter(|&y| space.d(x, y) < r)))
}

/// The ball around `x` intersected with an explicit sample of a presented
/// space.
pub fn ball_in_sample<S: Premetric>(
    space: &S,
    x: &S::Point,
    r: NonNegRational,
    sample: &[S::Point],
) -> Result<Vec<S::Point>> {
    if r.is_zero() {
        return Err(Error::ZeroRadius);
    }
    Ok(sample.iter().filter(|y| space.dist(x, y) < r).cloned().collect())
}

/// First pair `(x, y)`, `x ≠ y`, such that `y` lies in every ball around `x`.
pub fn one_separation_failure(space: &FinitePremetricSpace) -> Option<(usize, usize)> {
    let pts = space.points();
    pts.clone().flat_map(|x| pts.clone().map(move |y| (x, y))).find(|&(x, y)| x != y && space.d(x, y).is_zero())
}

pub fn is_1_separating(space: &FinitePremetricSpace) -> bool {
    one_separation_failure(space).is_none()
}

/// First pair of distinct points whose balls meet at every radius. Balls shrink
/// with the radius, so only the smallest candidate radius has to be tried.
pub fn two_separation_failure(space: &FinitePremetricSpace) -> Option<(usize, usize)> {
    let r = space.smallest_radius();
    let balls: Vec<PointSet> = space.points().map(|x| ball(space, x, r).expect("positive radius")).collect();
    let pts = space.points();
    pts.clone()
        .flat_map(|x| pts.clone().map(move |y| (x, y)))
        .find(|&(x, y)| x < y && !balls[x].intersection(balls[y]).is_empty())
}

pub fn is_2_separating(space: &FinitePremetricSpace) -> bool {
    two_separation_failure(space).is_none()
}

/// In an ultrametric space every triangle is isoceles: the two largest of the
/// three pairwise distances agree.
pub fn isoceles_check(space: &FinitePremetricSpace) -> Result<bool> {
    let class = classify(space);
    if !class.is_ultrametric {
        let w = class
            .strong_triangle
            .or(class.triangle)
            .map(|(x, y, z)| format!("({}, {}, {})", space.label_of(x), space.label_of(y), space.label_of(z)))
            .unwrap_or_else(|| "(axioms other than the strong triangle fail)".to_string());
        return Err(Error::NotUltrametric(w));
    }
    let n = space.len();
    for x in 0..n {
        for y in (x + 1)..n {
            for z in (y + 1)..n {
                let mut sides = [space.d(x, y), space.d(y, z), space.d(x, z)];
                sides.sort();
                if sides[1] != sides[2] {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Distinct values `d(a, b)` over all ordered pairs.
pub fn distance_values(space: &FinitePremetricSpace) -> BTreeSet<NonNegRational> {
    space.realized_values()
}

/// For each point a finite decreasing chain `B₀(x) ⊇ B₁(x) ⊇ …` of sets
/// containing `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeighborhoodSystem {
    labels: Vec<String>,
    chains: Vec<Vec<PointSet>>,
}

impl NeighborhoodSystem {
    pub fn new(labels: Vec<String>, chains: Vec<Vec<PointSet>>) -> Result<Self> {
        let n = labels.len();
        if chains.len() != n {
            return Err(Error::InvalidNeighborhoods(format!("{} chains for {n} points", chains.len())));
        }
        if n > 64 {
            return Err(Error::TooManyPoints { n, max: 64 });
        }
        for (x, chain) in chains.iter().enumerate() {
            if chain.is_empty() {
                return Err(Error::InvalidNeighborhoods(format!("empty chain at {}", labels[x])));
            }
            for (k, set) in chain.iter().enumerate() {
                if !set.contains(x) {
                    return Err(Error::InvalidNeighborhoods(format!("B_{k}({0}) misses {0}", labels[x])));
                }
                if !set.is_subset(PointSet::full(n)) {
                    return Err(Error::InvalidNeighborhoods(format!("B_{k}({}) leaves the carrier", labels[x])));
                }
                if k > 0 && !set.is_subset(chain[k - 1]) {
                    return Err(Error::InvalidNeighborhoods(format!("B_{k}({}) is not decreasing", labels[x])));
                }
            }
        }
        Ok(NeighborhoodSystem { labels, chains })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn chain(&self, x: usize) -> &[PointSet] {
        &self.chains[x]
    }
}

/// Above every `2^-n`; stands in for the infimum over an empty set.
pub const OUTSIDE_ALL_NEIGHBORHOODS: NonNegRational = NonNegRational::TWO;

/// `d(x, y) = 2^-n` for the largest `n` with `y ∈ B_n(x)`; `0` when `y` lies in
/// the whole chain (the last set repeats forever); `2` when `y ∉ B₀(x)`.
pub fn premetric_from_neighborhoods(ns: &NeighborhoodSystem) -> FinitePremetricSpace {
    FinitePremetricSpace::from_fn(ns.labels.clone(), |x, y| {
        let chain = &ns.chains[x];
        match chain.iter().rposition(|b| b.contains(y)) {
            None => OUTSIDE_ALL_NEIGHBORHOODS,
            Some(k) if k + 1 == chain.len() => NonNegRational::ZERO,
            Some(k) => NonNegRational::pow2_neg(k as u32),
        }
    })
    .expect("labels validated")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: u64, d: u64) -> NonNegRational {
        NonNegRational::frac(n, d)
    }

    fn table(n: usize, entries: &[(usize, usize, NonNegRational)]) -> FinitePremetricSpace {
        FinitePremetricSpace::with_default_labels(n, |i, j| {
            entries.iter().find(|(a, b, _)| *a == i && *b == j).map(|e| e.2).unwrap_or(NonNegRational::ZERO)
        })
    }

    fn sym3(pq: NonNegRational, pr: NonNegRational, qr: NonNegRational) -> FinitePremetricSpace {
        table(3, &[(0, 1, pq), (1, 0, pq), (0, 2, pr), (2, 0, pr), (1, 2, qr), (2, 1, qr)])
    }

    #[test]
    fn validate_examples() {
        let ok = table(2, &[(0, 1, q(1, 3)), (1, 0, q(1, 2))]);
        assert_eq!(validate_premetric(&ok), Ok(()));
        let bad = table(2, &[(0, 0, q(1, 1))]);
        assert_eq!(validate_premetric(&bad), Err(Error::Violation("p0".into())));
        assert_eq!(validate_premetric(&table(1, &[])), Ok(()));
    }

    #[test]
    fn classify_triangle_with_equality_is_a_metric() {
        // d(q,r) = d(q,p) + d(p,r) exactly; the triangle inequality holds.
        let s = sym3(q(1, 1), q(1, 1), q(2, 1));
        let c = classify(&s);
        assert!(c.is_symmetric);
        assert!(c.is_metric);
        assert!(!c.is_ultrametric);
        assert_eq!(c.triangle, None);
    }

    #[test]
    fn classify_finds_triangle_witness() {
        let s = sym3(q(1, 1), q(1, 1), q(5, 2));
        let c = classify(&s);
        assert!(c.is_symmetric);
        assert!(!c.is_metric);
        assert_eq!(c.triangle, Some((1, 0, 2)));
    }

    #[test]
    fn classify_asymmetric() {
        let s = table(2, &[(0, 1, q(1, 3)), (1, 0, q(1, 2))]);
        let c = classify(&s);
        assert!(!c.is_symmetric);
        assert_eq!(c.asymmetry, Some((0, 1)));
        assert!(!c.is_pseudometric);
    }

    #[test]
    fn truncate_examples() {
        let s = table(2, &[(0, 1, q(3, 2)), (1, 0, q(1, 2))]);
        let t = truncate(&s);
        assert_eq!(t.d(0, 1), q(1, 1));
        assert_eq!(t.d(1, 0), q(1, 2));
        assert_eq!(truncate(&t), t);
    }

    #[test]
    fn ball_examples() {
        let s = table(2, &[(0, 1, q(1, 3)), (1, 0, q(1, 3))]);
        assert_eq!(ball(&s, 0, q(1, 2)).unwrap(), PointSet::from_indices([0, 1]));
        assert_eq!(ball(&s, 0, q(1, 3)).unwrap(), PointSet::singleton(0));
        assert_eq!(ball(&s, 0, NonNegRational::ZERO), Err(Error::ZeroRadius));
    }

    #[test]
    fn candidate_radii_cover_every_gap() {
        let s = table(2, &[(0, 1, q(1, 2)), (1, 0, q(1, 1))]);
        assert_eq!(s.candidate_radii(), vec![q(1, 4), q(1, 2), q(3, 4), q(1, 1), q(2, 1)]);
        assert_eq!(table(1, &[]).candidate_radii(), vec![q(1, 1)]);
    }

    #[test]
    fn separation_examples() {
        let discrete = table(2, &[(0, 1, q(1, 1)), (1, 0, q(1, 1))]);
        assert!(is_1_separating(&discrete) && is_2_separating(&discrete));
        let half = table(2, &[(0, 1, NonNegRational::ZERO), (1, 0, q(1, 1))]);
        assert_eq!(one_separation_failure(&half), Some((0, 1)));
        assert!(!is_2_separating(&half));
    }

    #[test]
    fn isoceles_examples() {
        let line = sym3(q(1, 1), q(2, 1), q(1, 1));
        assert!(matches!(isoceles_check(&line), Err(Error::NotUltrametric(_))));
        let two = table(2, &[(0, 1, q(1, 1)), (1, 0, q(1, 1))]);
        assert_eq!(isoceles_check(&two), Ok(true));
    }

    #[test]
    fn neighborhoods_discrete_chain_gives_sentinel() {
        let ns = NeighborhoodSystem::new(
            vec!["a".into(), "b".into()],
            vec![vec![PointSet::singleton(0)], vec![PointSet::singleton(1)]],
        )
        .unwrap();
        let s = premetric_from_neighborhoods(&ns);
        assert_eq!(s.d(0, 1), OUTSIDE_ALL_NEIGHBORHOODS);
        assert_eq!(s.d(0, 0), NonNegRational::ZERO);
    }

    #[test]
    fn neighborhoods_levels() {
        // B₀(a) = {a,b,c}, B₁(a) = {a,b}, B₂(a) = {a}.
        let ns = NeighborhoodSystem::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                vec![PointSet::full(3), PointSet::from_indices([0, 1]), PointSet::singleton(0)],
                vec![PointSet::singleton(1)],
                vec![PointSet::singleton(2)],
            ],
        )
        .unwrap();
        let s = premetric_from_neighborhoods(&ns);
        assert_eq!(s.d(0, 2), q(1, 1));
        assert_eq!(s.d(0, 1), q(1, 2));
    }

    #[test]
    fn neighborhoods_reject_bad_chains() {
        let labels = vec!["a".to_string(), "b".to_string()];
        let missing =
            NeighborhoodSystem::new(labels.clone(), vec![vec![PointSet::singleton(1)], vec![PointSet::singleton(1)]]);
        assert!(matches!(missing, Err(Error::InvalidNeighborhoods(_))));
        let increasing = NeighborhoodSystem::new(
            labels,
            vec![vec![PointSet::singleton(0), PointSet::full(2)], vec![PointSet::singleton(1)]],
        );
        assert!(matches!(increasing, Err(Error::InvalidNeighborhoods(_))));
    }
}
