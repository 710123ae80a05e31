//! The cobweb over a premetric space and its compression map.
//!
//! The cobweb keeps, on every arc `[x, y]` of the complete oriented graph, the
//! initial segment `t ≤ 1 − d̄(y, x)` where `d̄ = min(1, d)`. Note the argument
//! order: the arc leaving `x` towards `y` is cut back by the premetric
//! measured from `y` to `x`. The compression map sends every kept arc point to
//! its initial vertex; its fibres (spiders) are handled as predicates.

use std::collections::BTreeSet;
use std::fmt::Debug;

use crate::error::{Error, Result};
use crate::gamma::{gamma_distance, gamma_map, GammaPoint};
use crate::premetric::Premetric;
use crate::rational::NonNegRational;

#[derive(Clone, Debug)]
pub struct Cobweb<S> {
    base: S,
}

impl<S: Premetric> Cobweb<S> {
    pub fn new(base: S) -> Self {
        Cobweb { base }
    }

    pub fn base(&self) -> &S {
        &self.base
    }

    /// `1 − min(1, d(y, x))`, the length kept on the arc `[x, y]`.
    pub fn cutoff(&self, x: &S::Point, y: &S::Point) -> Result<NonNegRational> {
        if x == y {
            return Err(Error::SamePoint(format!("{x:?}")));
        }
        Ok(self.cutoff_unchecked(x, y))
    }

    fn cutoff_unchecked(&self, x: &S::Point, y: &S::Point) -> NonNegRational {
        NonNegRational::ONE.saturating_sub(self.base.truncated_dist(y, x))
    }

    /// Vertices always belong; `⟨x, y, t⟩` belongs iff `t ≤ cutoff(x, y)`.
    pub fn contains(&self, a: &GammaPoint<S::Point>) -> bool {
        match a {
            GammaPoint::Vertex(_) => true,
            GammaPoint::Edge(x, y, t) => a.is_normalized() && *t <= self.cutoff_unchecked(x, y),
        }
    }

    pub fn ensure_member(&self, a: &GammaPoint<S::Point>) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::NotMember(format!("{a:?}")))
        }
    }

    /// The tip `x_y` of the kept segment on `[x, y]`, at distance `d̄(y, x)`
    /// from `y`.
    pub fn x_sub_y(&self, x: &S::Point, y: &S::Point) -> Result<GammaPoint<S::Point>> {
        let c = self.cutoff(x, y)?;
        GammaPoint::normalize(x.clone(), y.clone(), c)
    }

    /// The metric induced from the graph, for members only.
    pub fn distance(&self, a: &GammaPoint<S::Point>, b: &GammaPoint<S::Point>) -> Result<NonNegRational> {
        self.ensure_member(a)?;
        self.ensure_member(b)?;
        Ok(gamma_distance(a, b))
    }

    /// `π(x) = x`, `π(⟨x, y, t⟩) = x`.
    pub fn compression(&self, a: &GammaPoint<S::Point>) -> Result<S::Point> {
        self.ensure_member(a)?;
        Ok(a.origin().clone())
    }

    /// Membership in the spider centred at `x`, i.e. the fibre `π⁻¹(x)`.
    pub fn in_spider(&self, a: &GammaPoint<S::Point>, x: &S::Point) -> bool {
        self.contains(a) && a.origin() == x
    }

    /// Points on which universally quantified inequalities about the cobweb
    /// over `carrier` are checked: all vertices and, on every nondegenerate
    /// kept segment of length `c`, the parameters `c/4, c/2, 3c/4, c`. When a
    /// segment reaches the far vertex (`c = 1`) the point `1 − ε` is added as
    /// well, with `ε` a quarter of the smallest positive gap the truncated
    /// premetric can produce on `carrier`.
    pub fn witness_grid(&self, carrier: &[S::Point]) -> Vec<GammaPoint<S::Point>> {
        let truncated: Vec<NonNegRational> = carrier
            .iter()
            .flat_map(|a| carrier.iter().map(move |b| (a, b)))
            .map(|(a, b)| self.base.truncated_dist(a, b))
            .collect();
        let lcm = NonNegRational::common_denominator(&truncated) as u64;
        let epsilon = NonNegRational::frac(1, 4 * lcm);

        let mut out = BTreeSet::new();
        for x in carrier {
            out.insert(GammaPoint::Vertex(x.clone()));
            for y in carrier {
                if x == y {
                    continue;
                }
                let c = self.cutoff_unchecked(x, y);
                if c.is_zero() {
                    continue;
                }
                for k in 1..=4u64 {
                    let t = c * NonNegRational::frac(k, 4);
                    out.insert(GammaPoint::normalize(x.clone(), y.clone(), t).expect("t ≤ 1"));
                }
                if c == NonNegRational::ONE {
                    let t = NonNegRational::ONE.saturating_sub(epsilon);
                    out.insert(GammaPoint::normalize(x.clone(), y.clone(), t).expect("t ≤ 1"));
                }
            }
        }
        out.into_iter().collect()
    }

    /// A point of the spider over `z` within `r` of the vertex `x`, following
    /// the construction for `z ∈ B(x, r)`: the tip `z_x` when it is not the
    /// vertex `x` itself, otherwise the point at distance `r/2` from `x` on the
    /// half-open arc `[z, x)`.
    pub fn ball_preimage_witness(&self, x: &S::Point, z: &S::Point, r: NonNegRational) -> Result<GammaPoint<S::Point>> {
        if z == x {
            return Ok(GammaPoint::Vertex(x.clone()));
        }
        let tip = self.x_sub_y(z, x)?;
        if tip != GammaPoint::Vertex(x.clone()) {
            return Ok(tip);
        }
        let t = NonNegRational::ONE.saturating_sub(r * NonNegRational::HALF);
        GammaPoint::normalize(z.clone(), x.clone(), t)
    }

    /// Checks `π(B_⊛(x, r)) = B_X(x, r)` for `0 < r ≤ 1`. The forward inclusion
    /// is checked on the members of `cobweb_sample` inside the ball; the
    /// reverse inclusion constructs a witness for every point of `base_sample`
    /// inside `B_X(x, r)`.
    pub fn pi_ball_image_check(
        &self,
        x: &S::Point,
        r: NonNegRational,
        base_sample: &[S::Point],
        cobweb_sample: &[GammaPoint<S::Point>],
    ) -> Result<bool> {
        if r.is_zero() || r > NonNegRational::ONE {
            return Err(Error::RadiusOutOfRange(r));
        }
        let center = GammaPoint::Vertex(x.clone());
        let forward = cobweb_sample
            .iter()
            .filter(|a| self.contains(a) && gamma_distance(&center, a) < r)
            .all(|a| self.base.dist(x, a.origin()) < r);
        if !forward {
            return Ok(false);
        }
        for z in base_sample.iter().filter(|z| self.base.dist(x, z) < r) {
            let w = self.ball_preimage_witness(x, z, r)?;
            if !(self.contains(&w) && w.origin() == z && gamma_distance(&center, &w) < r) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `d(a, b) ≥ min_x [d̄(x, π a) + d̄(x, π b)]` with the minimum over
    /// `carrier`.
    pub fn lower_bound_holds(&self, a: &GammaPoint<S::Point>, b: &GammaPoint<S::Point>, carrier: &[S::Point]) -> bool {
        let (pa, pb) = (a.origin(), b.origin());
        let bound = carrier.iter().map(|x| self.base.truncated_dist(x, pa) + self.base.truncated_dist(x, pb)).min();
        match bound {
            Some(m) => gamma_distance(a, b) >= m,
            None => true,
        }
    }
}

impl<S: Premetric> Premetric for Cobweb<S> {
    type Point = GammaPoint<S::Point>;

    fn dist(&self, a: &Self::Point, b: &Self::Point) -> NonNegRational {
        gamma_distance(a, b)
    }
}

/// Outcome of testing whether compression is non-expanding into `(X, d̄)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonexpansionExperiment<P> {
    pub nonexpanding: bool,
    pub pseudometric: bool,
    /// A grid pair with `d̄(π a, π b) > d(a, b)`.
    pub violation: Option<(GammaPoint<P>, GammaPoint<P>)>,
}

/// Compares non-expansion of compression on the witness grid with the
/// pseudometric test of `d̄` on `carrier`. The two verdicts agree.
pub fn compression_nonexpansion_experiment<S: Premetric>(
    web: &Cobweb<S>,
    carrier: &[S::Point],
) -> NonexpansionExperiment<S::Point> {
    let grid = web.witness_grid(carrier);
    let base = web.base();
    let mut violation = None;
    'search: for a in &grid {
        for b in &grid {
            if base.truncated_dist(a.origin(), b.origin()) > gamma_distance(a, b) {
                violation = Some((a.clone(), b.clone()));
                break 'search;
            }
        }
    }
    let pseudometric = carrier.iter().all(|x| {
        carrier.iter().all(|y| {
            let xy = base.truncated_dist(x, y);
            xy == base.truncated_dist(y, x)
                && carrier.iter().all(|z| base.truncated_dist(x, z) <= xy + base.truncated_dist(y, z))
        })
    });
    NonexpansionExperiment { nonexpanding: violation.is_none(), pseudometric, violation }
}

/// A map between premetric spaces checked to be non-expanding on a sample of
/// the source. Its action on cobweb points is `Γf` restricted to the cobweb.
pub struct NonExpandingMap<'a, S: Premetric, T: Premetric, F> {
    source: &'a Cobweb<S>,
    target: &'a Cobweb<T>,
    f: F,
}

impl<'a, S, T, F> NonExpandingMap<'a, S, T, F>
where
    S: Premetric,
    T: Premetric,
    F: Fn(&S::Point) -> T::Point,
{
    pub fn new(source: &'a Cobweb<S>, target: &'a Cobweb<T>, f: F, sample: &[S::Point]) -> Result<Self> {
        for a in sample {
            for b in sample {
                if target.base().dist(&f(a), &f(b)) > source.base().dist(a, b) {
                    return Err(Error::NotNonExpanding(format!("{a:?}"), format!("{b:?}")));
                }
            }
        }
        Ok(NonExpandingMap { source, target, f })
    }

    pub fn apply(&self, p: &S::Point) -> T::Point {
        (self.f)(p)
    }

    /// `⊛f(a)`; the image of a member is always a member of the target.
    pub fn map(&self, a: &GammaPoint<S::Point>) -> Result<GammaPoint<T::Point>> {
        self.source.ensure_member(a)?;
        let image = gamma_map(&self.f, a);
        if !self.target.contains(&image) {
            return Err(Error::MembershipViolation(format!("{image:?}")));
        }
        Ok(image)
    }
}

/// Convenience wrapper for [`NonExpandingMap::map`] on a single point.
pub fn cobweb_map<S, T, F>(
    source: &Cobweb<S>,
    target: &Cobweb<T>,
    f: F,
    sample: &[S::Point],
    a: &GammaPoint<S::Point>,
) -> Result<GammaPoint<T::Point>>
where
    S: Premetric,
    T: Premetric,
    F: Fn(&S::Point) -> T::Point,
{
    NonExpandingMap::new(source, target, f, sample)?.map(a)
}

/// Distinct compression images of a finite set of members.
pub fn compression_image<S: Premetric>(web: &Cobweb<S>, sample: &[GammaPoint<S::Point>]) -> Result<BTreeSet<S::Point>> {
    sample.iter().map(|a| web.compression(a)).collect()
}

#[allow(dead_code)]
fn assert_debug<T: Debug>() {}
