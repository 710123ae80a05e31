//! The double interval `II = {−1, +1} × [0, 1]` with the premetric
//!
//! `d((i, x), (j, y)) = x − y` if `i = −1` and `x ≥ y`; `y − x` if `i = +1`
//! and `y ≥ x`; `1` otherwise,
//!
//! with the cases tried in that order. Only the sign of the first point
//! matters. The carrier is cut down to rationals of bounded denominator.
//!
//! `f = pr ∘ π` on the cobweb is locally extremal: vertices on the `−1` side
//! are local maxima, vertices on the `+1` side local minima, and `f` is
//! locally constant off the vertices.

use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;

use crate::cobweb::Cobweb;
use crate::error::{Error, Result};
use crate::gamma::{gamma_distance, GammaPoint};
use crate::premetric::{Labeled, Premetric};
use crate::rational::NonNegRational;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Side {
    Minus,
    Plus,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct IiPoint {
    pub side: Side,
    pub x: NonNegRational,
}

impl IiPoint {
    pub fn new(side: Side, x: NonNegRational) -> Self {
        IiPoint { side, x }
    }
}

impl fmt::Display for IiPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.side {
            Side::Minus => "-1",
            Side::Plus => "+1",
        };
        write!(f, "({s},{})", self.x)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct DoubleInterval {
    pub max_den: u64,
}

impl Default for DoubleInterval {
    fn default() -> Self {
        DoubleInterval { max_den: 64 }
    }
}

impl DoubleInterval {
    pub fn check(&self, p: &IiPoint) -> Result<()> {
        if p.x > NonNegRational::ONE || p.x.denom() > self.max_den as i128 {
            return Err(Error::OutOfBounds(format!("{p} outside [0,1] with denominator ≤ {}", self.max_den)));
        }
        Ok(())
    }

    /// Both sides at `x = j/den`, `0 ≤ j ≤ den`.
    pub fn grid(&self, den: u64) -> Vec<IiPoint> {
        [Side::Minus, Side::Plus]
            .into_iter()
            .flat_map(|side| (0..=den).map(move |j| IiPoint::new(side, NonNegRational::frac(j, den))))
            .collect()
    }
}

pub fn ii_premetric(a: &IiPoint, b: &IiPoint) -> NonNegRational {
    let (x, y) = (a.x, b.x);
    if a.side == Side::Minus && x >= y {
        x.abs_diff(y)
    } else if a.side == Side::Plus && y >= x {
        y.abs_diff(x)
    } else {
        NonNegRational::ONE
    }
}

impl Premetric for DoubleInterval {
    type Point = IiPoint;

    fn dist(&self, a: &IiPoint, b: &IiPoint) -> NonNegRational {
        ii_premetric(a, b)
    }
}

impl Labeled for DoubleInterval {
    fn label(&self, p: &IiPoint) -> String {
        p.to_string()
    }

    fn parse_point(&self, s: &str) -> Result<IiPoint> {
        let bad = || Error::parse("point", format!("{s:?} is not a point of II (expected \"(-1,x)\" or \"(+1,x)\")"));
        let inner = s.trim().strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
        let (side, x) = inner.split_once(',').ok_or_else(bad)?;
        let side = match side.trim() {
            "-1" => Side::Minus,
            "+1" | "1" => Side::Plus,
            _ => return Err(bad()),
        };
        let p = IiPoint::new(side, x.trim().parse()?);
        self.check(&p)?;
        Ok(p)
    }
}

/// `f = pr ∘ π`.
pub fn locally_extremal_f(web: &Cobweb<DoubleInterval>, a: &GammaPoint<IiPoint>) -> Result<NonNegRational> {
    Ok(web.compression(a)?.x)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ExtremalKind {
    Max,
    Min,
    Const,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Extremality {
    pub radius: NonNegRational,
    pub kind: ExtremalKind,
}

pub fn extremality_witness(web: &Cobweb<DoubleInterval>, a: &GammaPoint<IiPoint>) -> Result<Extremality> {
    web.ensure_member(a)?;
    Ok(match a {
        GammaPoint::Vertex(v) => Extremality {
            radius: NonNegRational::ONE,
            kind: if v.side == Side::Minus { ExtremalKind::Max } else { ExtremalKind::Min },
        },
        GammaPoint::Edge(_, _, t) => {
            Extremality { radius: (*t).min(NonNegRational::ONE.saturating_sub(*t)), kind: ExtremalKind::Const }
        }
    })
}

/// Members of `⊛II` inside `B(a, radius)`: the vertex and arc points of
/// every arc between `a`'s endpoints and the grid `j/den` at parameters
/// `k/den`, the tips of those arcs, and up to 512 points on `a`'s own arc
/// spread across the radius.
pub fn ball_sample(
    web: &Cobweb<DoubleInterval>,
    a: &GammaPoint<IiPoint>,
    radius: NonNegRational,
    den: u64,
) -> Vec<GammaPoint<IiPoint>> {
    let mut candidates = BTreeSet::new();
    let ends: Vec<IiPoint> = match a {
        GammaPoint::Vertex(v) => vec![*v],
        GammaPoint::Edge(p, q, t) => {
            let step = radius * NonNegRational::frac(1, 256);
            for k in 0..256u64 {
                let off = step * NonNegRational::integer(k);
                candidates.insert(GammaPoint::normalize(*p, *q, *t + off).ok());
                candidates.insert(t.checked_sub(off).and_then(|s| GammaPoint::normalize(*p, *q, s).ok()));
            }
            vec![*p, *q]
        }
    };
    let grid = web.base().grid(den);
    for v in &ends {
        candidates.insert(Some(GammaPoint::Vertex(*v)));
        for w in grid.iter().chain(ends.iter()).filter(|w| *w != v) {
            candidates.insert(web.x_sub_y(v, w).ok());
            candidates.insert(web.x_sub_y(w, v).ok());
            for k in 1..den {
                let s = NonNegRational::frac(k, den);
                candidates.insert(GammaPoint::normalize(*v, *w, s).ok());
                candidates.insert(GammaPoint::normalize(*w, *v, s).ok());
            }
        }
    }
    candidates.into_iter().flatten().filter(|b| web.contains(b) && gamma_distance(a, b) < radius).collect()
}

/// Whether every sampled `b` satisfies the inequality promised by `w`.
pub fn extremality_holds(
    web: &Cobweb<DoubleInterval>,
    a: &GammaPoint<IiPoint>,
    w: &Extremality,
    sample: &[GammaPoint<IiPoint>],
) -> Result<bool> {
    let fa = locally_extremal_f(web, a)?;
    for b in sample {
        if gamma_distance(a, b) >= w.radius {
            continue;
        }
        let fb = locally_extremal_f(web, b)?;
        let ok = match w.kind {
            ExtremalKind::Max => fb <= fa,
            ExtremalKind::Min => fb >= fa,
            ExtremalKind::Const => fb == fa,
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A random member of `⊛II` with coordinates of denominator `≤ max_den`:
/// a vertex, or a point of a nondegenerate kept segment.
pub fn random_member<R: Rng>(web: &Cobweb<DoubleInterval>, rng: &mut R) -> GammaPoint<IiPoint> {
    let den = web.base().max_den;
    let point = |rng: &mut R| {
        let side = if rng.random_bool(0.5) { Side::Minus } else { Side::Plus };
        let d = rng.random_range(1..=den);
        IiPoint::new(side, NonNegRational::frac(rng.random_range(0..=d), d))
    };
    loop {
        let p = point(rng);
        if rng.random_bool(0.5) {
            return GammaPoint::Vertex(p);
        }
        let q = point(rng);
        if p == q {
            continue;
        }
        let c = web.cutoff(&p, &q).expect("distinct points");
        if c.is_zero() {
            continue;
        }
        let t = c * NonNegRational::frac(rng.random_range(1..=8), 8);
        return GammaPoint::normalize(p, q, t).expect("t ≤ 1");
    }
}
