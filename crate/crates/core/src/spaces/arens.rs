//! Arens' space `S₂ = {(0,0)} ∪ {(1/n, 0)} ∪ {(1/n, 1/(nm))}` with the
//! premetric
//!
//! `d(x, y) = 0` if `x = y`; `1/n` from `(0,0)` to `(1/n, 0)`; `1/(nm)` from
//! `(1/n, 0)` to `(1/n, 1/(nm))`; `1` otherwise.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::premetric::{Labeled, Premetric};
use crate::rational::NonNegRational;
use crate::seqdec::{Family, PointId, Region, SeqPresentation, SeqTail, Sequence};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum ArensPoint {
    Origin,
    /// `(1/n, 0)`.
    Spine(u64),
    /// `(1/n, 1/(nm))`.
    Row(u64, u64),
}

impl ArensPoint {
    pub fn label(&self) -> PointId {
        match *self {
            ArensPoint::Origin => Family::ArensSpine.limit(),
            ArensPoint::Spine(n) => Family::ArensSpine.term(n),
            ArensPoint::Row(n, m) => Family::ArensRow(n).term(m),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::parse("point", format!("{s:?} is not a point of Arens' space"));
        let inner = s.trim().strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
        let (a, b) = inner.split_once(',').ok_or_else(bad)?;
        let (a, b): (NonNegRational, NonNegRational) = (a.trim().parse()?, b.trim().parse()?);
        let unit = |v: NonNegRational| (v.numer() == 1).then_some(v.denom() as u64);
        match (a.is_zero(), b.is_zero()) {
            (true, true) => Ok(ArensPoint::Origin),
            (false, true) => unit(a).map(ArensPoint::Spine).ok_or_else(bad),
            (false, false) => {
                let n = unit(a).ok_or_else(bad)?;
                let nm = unit(b).ok_or_else(bad)?;
                if nm % n == 0 {
                    Ok(ArensPoint::Row(n, nm / n))
                } else {
                    Err(bad())
                }
            }
            (true, false) => Err(bad()),
        }
    }

    fn indices(&self) -> [u64; 2] {
        match *self {
            ArensPoint::Origin => [1, 1],
            ArensPoint::Spine(n) => [n, 1],
            ArensPoint::Row(n, m) => [n, m],
        }
    }
}

/// `S₂`, optionally truncated to `n, m ≤ bound`.
#[derive(Clone, Copy, Debug, Default)]
pub struct ArensSpace {
    pub bound: Option<u64>,
}

impl ArensSpace {
    pub fn bounded(n: u64) -> Self {
        ArensSpace { bound: Some(n) }
    }

    pub fn check(&self, p: &ArensPoint) -> Result<()> {
        let [n, m] = p.indices();
        let ok = n >= 1 && m >= 1 && self.bound.map_or(true, |b| n <= b && m <= b);
        if ok {
            Ok(())
        } else {
            Err(Error::OutOfBounds(format!("{p:?} outside bound {:?}", self.bound)))
        }
    }

    /// Every point with `n, m ≤ bound`.
    pub fn points(&self) -> Vec<ArensPoint> {
        let b = self.bound.expect("points of a bounded space");
        let mut out = vec![ArensPoint::Origin];
        for n in 1..=b {
            out.push(ArensPoint::Spine(n));
            out.extend((1..=b).map(|m| ArensPoint::Row(n, m)));
        }
        out
    }
}

fn rule(a: &ArensPoint, b: &ArensPoint) -> NonNegRational {
    match (*a, *b) {
        _ if a == b => NonNegRational::ZERO,
        (ArensPoint::Origin, ArensPoint::Spine(n)) => NonNegRational::recip_of(n),
        (ArensPoint::Spine(n), ArensPoint::Row(k, m)) if n == k => NonNegRational::recip_of(n * m),
        _ => NonNegRational::ONE,
    }
}

pub fn arens_premetric(space: &ArensSpace, a: &ArensPoint, b: &ArensPoint) -> Result<NonNegRational> {
    space.check(a)?;
    space.check(b)?;
    Ok(rule(a, b))
}

impl Premetric for ArensSpace {
    type Point = ArensPoint;

    fn dist(&self, a: &ArensPoint, b: &ArensPoint) -> NonNegRational {
        rule(a, b)
    }
}

impl Labeled for ArensSpace {
    fn label(&self, p: &ArensPoint) -> String {
        p.label()
    }

    fn parse_point(&self, s: &str) -> Result<ArensPoint> {
        let p = ArensPoint::parse(s)?;
        self.check(&p)?;
        Ok(p)
    }
}

/// On `A = {(0,0)} ∪ {(1/n, 1/(nm))}` (`n, m ≤ bound`) the induced premetric
/// only takes the values 0 and 1.
pub fn arens_a_subspace_check(bound: u64) -> bool {
    let space = ArensSpace::bounded(bound);
    let a: Vec<ArensPoint> = space.points().into_iter().filter(|p| !matches!(p, ArensPoint::Spine(_))).collect();
    a.iter().all(|x| a.iter().all(|y| matches!(space.dist(x, y), d if d.is_zero() || d == NonNegRational::ONE)))
}

/// The listed points with `n, m ≤ bound`, the spine `(1/n, 0) → (0, 0)` and
/// every row `(1/n, 1/(nm))_m → (1/n, 0)` for `n ≤ bound`.
pub fn arens_presentation(bound: u64) -> Result<SeqPresentation> {
    if bound < 1 {
        return Err(Error::OutOfBounds("Arens presentation needs bound ≥ 1".into()));
    }
    let space = ArensSpace::bounded(bound);
    let points = space.points().iter().map(ArensPoint::label).collect();
    let mut seqs = vec![Sequence {
        id: "spine".into(),
        limit: ArensPoint::Origin.label(),
        prefix: vec![],
        tail: SeqTail::Indexed(Family::ArensSpine),
    }];
    seqs.extend((1..=bound).map(|n| Sequence {
        id: format!("row:{n}"),
        limit: ArensPoint::Spine(n).label(),
        prefix: vec![],
        tail: SeqTail::Indexed(Family::ArensRow(n)),
    }));
    SeqPresentation::new(points, seqs)
}

/// `B(x, r)` as a [`Region`] of the full (unbounded) space.
pub fn arens_ball_region(x: &ArensPoint, r: NonNegRational) -> Result<Region> {
    if r.is_zero() {
        return Err(Error::ZeroRadius);
    }
    if r > NonNegRational::ONE {
        return Ok(Region::All);
    }
    // Least k with 1/(s·k) < r = a/b, i.e. k > b/(a·s).
    let first_index = |scale: u64| (r.denom() / (r.numer() * scale as i128)) as u64 + 1;
    let centre = Region::Points(BTreeSet::from([x.label()]));
    Ok(match *x {
        ArensPoint::Origin => centre.union(Region::FamilyTail { family: Family::ArensSpine, from: first_index(1) }),
        ArensPoint::Spine(n) => centre.union(Region::FamilyTail { family: Family::ArensRow(n), from: first_index(n) }),
        ArensPoint::Row(..) => centre,
    })
}
