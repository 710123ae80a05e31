//! The complete oriented graph over a set.
//!
//! Between every two distinct vertices `x`, `y` there are two unit arcs,
//! `[x, y]` and `[y, x]`, meeting only at their endpoints. A point of the
//! graph is a vertex or an interior arc point `⟨x, y, t⟩` with `0 < t < 1`,
//! where `t` is the distance from `x` along the arc.
//!
//! The path metric has a closed form. A route shorter than 1 crosses at most
//! one vertex, and two distinct vertices are exactly 1 apart, so the distance
//! is the minimum of the along-arc distance (when both points share an arc)
//! and `dist(a, p) + [p ≠ q] + dist(q, b)` over arc endpoints `p` of `a` and
//! `q` of `b`.

use std::fmt::Debug;
use std::hash::Hash;
use std::marker::PhantomData;

use crate::error::{Error, Result};
use crate::premetric::Premetric;
use crate::rational::NonNegRational;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum GammaPoint<P> {
    Vertex(P),
    /// `⟨x, y, t⟩` with `x ≠ y` and `0 < t < 1`. Build through
    /// [`GammaPoint::normalize`] so equal points compare equal.
    Edge(P, P, NonNegRational),
}

impl<P: Clone + Eq + Debug> GammaPoint<P> {
    /// `⟨x, y, t⟩` in normal form: `x` when `x = y` or `t = 0`, `y` when
    /// `t = 1`, the interior point otherwise.
    pub fn normalize(x: P, y: P, t: NonNegRational) -> Result<Self> {
        if t > NonNegRational::ONE {
            return Err(Error::OutOfRange(t));
        }
        Ok(if x == y || t.is_zero() {
            GammaPoint::Vertex(x)
        } else if t == NonNegRational::ONE {
            GammaPoint::Vertex(y)
        } else {
            GammaPoint::Edge(x, y, t)
        })
    }

    pub fn is_normalized(&self) -> bool {
        match self {
            GammaPoint::Vertex(_) => true,
            GammaPoint::Edge(x, y, t) => x != y && t.is_positive() && *t < NonNegRational::ONE,
        }
    }

    pub fn ensure_normalized(&self) -> Result<()> {
        if self.is_normalized() {
            Ok(())
        } else {
            Err(Error::NotNormalized(format!("{self:?}")))
        }
    }

    pub fn is_vertex(&self) -> bool {
        matches!(self, GammaPoint::Vertex(_))
    }

    pub fn as_vertex(&self) -> Option<&P> {
        match self {
            GammaPoint::Vertex(v) => Some(v),
            GammaPoint::Edge(..) => None,
        }
    }

    /// The initial vertex: the point itself for vertices, `x` for `⟨x, y, t⟩`.
    pub fn origin(&self) -> &P {
        match self {
            GammaPoint::Vertex(v) | GammaPoint::Edge(v, _, _) => v,
        }
    }

    /// Arc endpoints with their distance from this point.
    fn ends(&self) -> [Option<(&P, NonNegRational)>; 2] {
        match self {
            GammaPoint::Vertex(v) => [Some((v, NonNegRational::ZERO)), None],
            GammaPoint::Edge(x, y, t) => [Some((x, *t)), Some((y, NonNegRational::ONE.saturating_sub(*t)))],
        }
    }
}

/// Exact path distance between two normalized points of the graph.
pub fn gamma_distance<P: Clone + Eq + Debug>(a: &GammaPoint<P>, b: &GammaPoint<P>) -> NonNegRational {
    let mut best = match (a, b) {
        (GammaPoint::Edge(x1, y1, t), GammaPoint::Edge(x2, y2, s)) if x1 == x2 && y1 == y2 => t.abs_diff(*s),
        _ => NonNegRational::TWO + NonNegRational::ONE,
    };
    for (p, dp) in a.ends().into_iter().flatten() {
        for (q, dq) in b.ends().into_iter().flatten() {
            let hop = if p == q { NonNegRational::ZERO } else { NonNegRational::ONE };
            best = best.min(dp + hop + dq);
        }
    }
    best
}

/// `Γf: ⟨x, z, t⟩ ↦ ⟨f(x), f(z), t⟩`.
pub fn gamma_map<P, Q, F>(f: F, a: &GammaPoint<P>) -> GammaPoint<Q>
where
    P: Clone + Eq + Debug,
    Q: Clone + Eq + Debug,
    F: Fn(&P) -> Q,
{
    match a {
        GammaPoint::Vertex(v) => GammaPoint::Vertex(f(v)),
        GammaPoint::Edge(x, y, t) => GammaPoint::normalize(f(x), f(y), *t).expect("t already in (0, 1)"),
    }
}

/// Checks that `Γf` preserves every sampled distance, after confirming `f` is
/// injective on `carrier`. Returns `false` on the first distorted pair.
pub fn check_isometric_embedding<P, Q, F>(
    f: F,
    carrier: &[P],
    sample: &[(GammaPoint<P>, GammaPoint<P>)],
) -> Result<bool>
where
    P: Clone + Eq + Debug,
    Q: Clone + Eq + Debug,
    F: Fn(&P) -> Q,
{
    for (i, a) in carrier.iter().enumerate() {
        for b in &carrier[i + 1..] {
            if a != b && f(a) == f(b) {
                return Err(Error::NotInjective(format!("{a:?}"), format!("{b:?}")));
            }
        }
    }
    Ok(sample.iter().all(|(a, b)| gamma_distance(&gamma_map(&f, a), &gamma_map(&f, b)) == gamma_distance(a, b)))
}

/// The graph over carrier points of type `P`, as a (metric) premetric space.
pub struct GammaSpace<P>(PhantomData<fn() -> P>);

impl<P> GammaSpace<P> {
    pub fn new() -> Self {
        GammaSpace(PhantomData)
    }
}

impl<P> Default for GammaSpace<P> {
    fn default() -> Self {
        Self::new()
    }
}

impl<P: Clone + Eq + Ord + Hash + Debug> Premetric for GammaSpace<P> {
    type Point = GammaPoint<P>;

    fn dist(&self, a: &GammaPoint<P>, b: &GammaPoint<P>) -> NonNegRational {
        gamma_distance(a, b)
    }
}

/// Every vertex and every arc point at parameter `k/den`, `0 < k < den`, over
/// `carrier`.
pub fn grid_points<P: Clone + Eq + Debug>(carrier: &[P], den: u64) -> Vec<GammaPoint<P>> {
    let mut out: Vec<_> = carrier.iter().cloned().map(GammaPoint::Vertex).collect();
    for x in carrier {
        for y in carrier {
            if x != y {
                for k in 1..den {
                    out.push(GammaPoint::Edge(x.clone(), y.clone(), NonNegRational::frac(k, den)));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use GammaPoint::{Edge, Vertex};

    fn q(n: u64, d: u64) -> NonNegRational {
        NonNegRational::frac(n, d)
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(GammaPoint::normalize('p', 'q', q(0, 1)).unwrap(), Vertex('p'));
        assert_eq!(GammaPoint::normalize('p', 'p', q(1, 2)).unwrap(), Vertex('p'));
        assert_eq!(GammaPoint::normalize('p', 'q', q(1, 1)).unwrap(), Vertex('q'));
        assert_eq!(GammaPoint::normalize('p', 'q', q(1, 3)).unwrap(), Edge('p', 'q', q(1, 3)));
        assert_eq!(GammaPoint::normalize('p', 'q', q(4, 3)), Err(Error::OutOfRange(q(4, 3))));
    }

    #[test]
    fn distance_examples() {
        assert_eq!(gamma_distance(&Vertex('p'), &Vertex('q')), q(1, 1));
        assert_eq!(gamma_distance(&Edge('p', 'q', q(1, 4)), &Edge('p', 'q', q(3, 4))), q(1, 2));
        assert_eq!(gamma_distance(&Edge('p', 'q', q(1, 4)), &Edge('q', 'p', q(1, 4))), q(1, 1));
        assert_eq!(gamma_distance(&Edge('p', 'q', q(1, 2)), &Edge('u', 'v', q(1, 2))), q(2, 1));
        assert_eq!(gamma_distance(&Vertex('p'), &Edge('q', 'p', q(2, 3))), q(1, 3));
        assert_eq!(gamma_distance(&Edge('p', 'q', q(1, 4)), &Edge('p', 'r', q(1, 3))), q(7, 12));
        assert_eq!(gamma_distance(&Vertex('p'), &Vertex('p')), q(0, 1));
    }

    #[test]
    fn map_examples() {
        let a = Edge(0u8, 1u8, q(1, 3));
        assert_eq!(gamma_map(|x: &u8| *x, &a), a);
        assert_eq!(gamma_map(|_: &u8| 7u8, &a), Vertex(7u8));
    }

    #[test]
    fn isometric_embedding_examples() {
        let carrier = [0u8, 1];
        let pts = grid_points(&carrier, 4);
        let pairs: Vec<_> = pts.iter().flat_map(|a| pts.iter().map(move |b| (a.clone(), b.clone()))).collect();
        assert!(check_isometric_embedding(|x: &u8| *x + 10, &carrier, &pairs).unwrap());
        assert!(matches!(check_isometric_embedding(|_: &u8| 0u8, &carrier, &pairs), Err(Error::NotInjective(..))));
    }

    #[test]
    fn normalization_check() {
        assert!(!Edge('p', 'p', q(1, 2)).is_normalized());
        assert!(!Edge('p', 'q', q(1, 1)).is_normalized());
        assert!(Edge('p', 'q', q(1, 2)).is_normalized());
    }
}
