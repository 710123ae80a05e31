//! Iterated cobwebs `⊛ⁿX` and the finitely presented points of `⊛^ω X`.
//!
//! A level-`n` point is a [`Layered`] value of depth `n`: a graph point whose
//! carrier is the set of level-`(n − 1)` points, bottoming out in the base.
//! The graph metric only needs carrier equality, so level distances are plain
//! [`gamma_distance`]s; the premetric of level `n − 1` only enters through the
//! membership cutoffs of level `n`.
//!
//! A [`TowerPoint`] is a coherent stem `(x₁, …, x_N)` extended by vertex lifts
//! `x_{n+1} = x_n` for `n ≥ N`. Beyond the stem both coordinates of a pair are
//! vertex lifts, which are exactly 1 apart when distinct, so
//!
//! `d_ω(a, b) = max( max_{n ≤ N'} d_n(a_n, b_n)/n , δ/(N' + 1) )`
//!
//! with `δ = [a_{N'} ≠ b_{N'}]`.

use std::collections::BTreeSet;
use std::fmt::Debug;

use rand::seq::IndexedRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::gamma::{gamma_distance, gamma_map, GammaPoint};
use crate::premetric::Premetric;
use crate::rational::NonNegRational;

/// A point of some level of the tower: `Base` at level 0, a graph point over
/// the previous level otherwise.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Layered<P> {
    Base(P),
    Gamma(Box<GammaPoint<Layered<P>>>),
}

impl<P: Clone + Eq + Debug> Layered<P> {
    pub fn depth(&self) -> usize {
        match self {
            Layered::Base(_) => 0,
            Layered::Gamma(g) => 1 + g.origin().depth(),
        }
    }

    pub fn from_gamma(g: GammaPoint<Layered<P>>) -> Self {
        Layered::Gamma(Box::new(g))
    }

    /// The base point `p` seen as a level-1 vertex.
    pub fn vertex(p: P) -> Self {
        Layered::Base(p).lift()
    }

    /// A level-1 point from a graph point over the base.
    pub fn level1(g: &GammaPoint<P>) -> Self {
        Self::from_gamma(gamma_map(|p: &P| Layered::Base(p.clone()), g))
    }

    /// Normalized `⟨x, y, t⟩` one level above `x` and `y`.
    pub fn edge(x: Self, y: Self, t: NonNegRational) -> Result<Self> {
        Ok(Self::from_gamma(GammaPoint::normalize(x, y, t)?))
    }

    /// The same point one level up, as a vertex.
    pub fn lift(self) -> Self {
        Layered::Gamma(Box::new(GammaPoint::Vertex(self)))
    }

    pub fn as_gamma(&self) -> Option<&GammaPoint<Layered<P>>> {
        match self {
            Layered::Base(_) => None,
            Layered::Gamma(g) => Some(g),
        }
    }

    pub fn as_base(&self) -> Option<&P> {
        match self {
            Layered::Base(p) => Some(p),
            Layered::Gamma(_) => None,
        }
    }

    /// One compression step, `⊛ⁿX → ⊛ⁿ⁻¹X`; `None` on base points.
    pub fn compress(&self) -> Option<&Self> {
        self.as_gamma().map(|g| g.origin())
    }

    /// Compresses all the way down to the base.
    pub fn base_point(&self) -> &P {
        match self {
            Layered::Base(p) => p,
            Layered::Gamma(g) => g.origin().base_point(),
        }
    }

    /// `⊛ⁿf`: applies `f` at the bottom and `Γ` at every level above.
    pub fn map<Q, F>(&self, f: &F) -> Layered<Q>
    where
        Q: Clone + Eq + Debug,
        F: Fn(&P) -> Q,
    {
        match self {
            Layered::Base(p) => Layered::Base(f(p)),
            Layered::Gamma(g) => Layered::from_gamma(gamma_map(|x: &Layered<P>| x.map(f), g)),
        }
    }
}

/// A base premetric space together with all its iterated cobwebs.
#[derive(Clone, Debug)]
pub struct TowerSpace<S> {
    base: S,
}

/// Level `n` of a tower as a premetric space in its own right.
#[derive(Clone, Copy, Debug)]
pub struct LevelSpace<'a, S> {
    tower: &'a TowerSpace<S>,
    level: usize,
}

impl<S: Premetric> Premetric for LevelSpace<'_, S> {
    type Point = Layered<S::Point>;

    fn dist(&self, a: &Self::Point, b: &Self::Point) -> NonNegRational {
        self.tower.raw_distance(self.level, a, b)
    }
}

impl<S: Premetric> TowerSpace<S> {
    pub fn new(base: S) -> Self {
        TowerSpace { base }
    }

    pub fn base(&self) -> &S {
        &self.base
    }

    pub fn level(&self, n: usize) -> LevelSpace<'_, S> {
        LevelSpace { tower: self, level: n }
    }

    fn raw_distance(&self, level: usize, a: &Layered<S::Point>, b: &Layered<S::Point>) -> NonNegRational {
        match (a, b) {
            (Layered::Base(p), Layered::Base(q)) if level == 0 => self.base.dist(p, q),
            (Layered::Gamma(g), Layered::Gamma(h)) => gamma_distance(g, h),
            _ => panic!("points at different levels"),
        }
    }

    /// `1 − min(1, d_{n−1}(y, x))` for level-`(n − 1)` points `x ≠ y`.
    pub fn cutoff(&self, n: usize, x: &Layered<S::Point>, y: &Layered<S::Point>) -> NonNegRational {
        NonNegRational::ONE.saturating_sub(self.raw_distance(n - 1, y, x).truncated())
    }

    /// Membership in `⊛ⁿX` (`n ≥ 1`); level 0 is the whole base.
    pub fn is_member(&self, n: usize, a: &Layered<S::Point>) -> bool {
        match a {
            Layered::Base(_) => n == 0,
            Layered::Gamma(_) if n == 0 => false,
            Layered::Gamma(g) => match g.as_ref() {
                GammaPoint::Vertex(v) => self.is_member(n - 1, v),
                GammaPoint::Edge(x, y, t) => {
                    g.is_normalized()
                        && self.is_member(n - 1, x)
                        && self.is_member(n - 1, y)
                        && *t <= self.cutoff(n, x, y)
                }
            },
        }
    }

    /// The metric of `⊛ⁿX` on members.
    pub fn level_distance(&self, n: usize, a: &Layered<S::Point>, b: &Layered<S::Point>) -> Result<NonNegRational> {
        for p in [a, b] {
            if !self.is_member(n, p) {
                return Err(Error::NotMember(format!("level {n}: {p:?}")));
            }
        }
        Ok(self.raw_distance(n, a, b))
    }

    /// Checks levels, membership and coherence, and trims trailing vertex
    /// lifts.
    pub fn validate_stem(&self, stem: Vec<Layered<S::Point>>) -> Result<TowerPoint<S::Point>> {
        if stem.is_empty() {
            return Err(Error::EmptyStem);
        }
        for (k, x) in stem.iter().enumerate() {
            let level = k + 1;
            if x.depth() != level {
                return Err(Error::LevelMismatch { expected: level, found: x.depth() });
            }
            if !self.is_member(level, x) {
                return Err(Error::NotMemberAt(level));
            }
        }
        for k in 1..stem.len() {
            if stem[k].compress() != Some(&stem[k - 1]) {
                return Err(Error::IncoherentAt(k));
            }
        }
        Ok(TowerPoint::canonical(stem))
    }

    pub fn omega_distance(&self, a: &TowerPoint<S::Point>, b: &TowerPoint<S::Point>) -> NonNegRational {
        let depth = a.len().max(b.len());
        let mut best = NonNegRational::ZERO;
        let (mut x, mut y) = (None, None);
        for n in 1..=depth {
            let (xn, yn) = (a.projection(n), b.projection(n));
            best = best.max(self.raw_distance(n, &xn, &yn) / NonNegRational::integer(n as u64));
            (x, y) = (Some(xn), Some(yn));
        }
        if x != y {
            best = best.max(NonNegRational::recip_of(depth as u64 + 1));
        }
        best
    }

    /// `(1/n)·d_n(π_n a, π_n b)`, the `n`-th term of the scaled maximum.
    pub fn level_term(&self, a: &TowerPoint<S::Point>, b: &TowerPoint<S::Point>, n: usize) -> NonNegRational {
        self.raw_distance(n, &a.projection(n), &b.projection(n)) / NonNegRational::integer(n as u64)
    }

    /// `π^ω_X`, the compression of the first coordinate.
    pub fn omega_compression<'p>(&self, a: &'p TowerPoint<S::Point>) -> &'p S::Point {
        a.stem[0].base_point()
    }

    /// The finite shadow of the economy argument: every distance in `sample`
    /// is one of its level terms, and the number of distinct distances is at
    /// most `1 + Σ_n |π_n(sample)|²`.
    pub fn economy_census(&self, sample: &[TowerPoint<S::Point>]) -> Result<Census> {
        let max_len = sample.iter().map(TowerPoint::len).max().unwrap_or(0);
        let levels = max_len + 1;
        let mut values = BTreeSet::new();
        for (i, a) in sample.iter().enumerate() {
            for b in &sample[i..] {
                let d = self.omega_distance(a, b);
                let reach = a.len().max(b.len()) + 1;
                let terms: Vec<NonNegRational> = (1..=reach).map(|n| self.level_term(a, b, n)).collect();
                if !terms.contains(&d) || terms.iter().any(|t| *t > d) {
                    return Err(Error::MaxNotAttained(format!("{a:?} / {b:?}: {d}")));
                }
                values.insert(d);
            }
        }
        let per_level_images: Vec<usize> =
            (1..=levels).map(|n| sample.iter().map(|a| a.projection(n)).collect::<BTreeSet<_>>().len()).collect();
        let bound = 1 + per_level_images.iter().map(|k| k * k).sum::<usize>();
        Ok(Census { points: sample.len(), distance_values: values, per_level_images, bound })
    }

    /// Members of level `n + 1` compressing onto `x`: the vertex lift and,
    /// for every other level-`n` point `z` of `pool` with a nondegenerate
    /// kept segment `[x, z]`, one point on it at a random grid parameter.
    pub fn neighbors<R: Rng>(
        &self,
        n: usize,
        x: &Layered<S::Point>,
        pool: &[Layered<S::Point>],
        rng: &mut R,
    ) -> Vec<Layered<S::Point>> {
        let mut out = vec![x.clone().lift()];
        for z in pool {
            if z == x {
                continue;
            }
            let c = self.cutoff(n + 1, x, z);
            if c.is_zero() {
                continue;
            }
            let t = c * NonNegRational::frac(rng.random_range(1..=4), 4);
            out.push(Layered::edge(x.clone(), z.clone(), t).expect("t ≤ 1"));
        }
        out
    }

    /// Members of the first `levels` levels over `base_sample`: each level
    /// holds the vertex lifts of the previous one plus one kept arc point per
    /// ordered pair with a nondegenerate segment.
    pub fn level_pools<R: Rng>(
        &self,
        base_sample: &[S::Point],
        levels: usize,
        rng: &mut R,
    ) -> Vec<Vec<Layered<S::Point>>> {
        let mut pools: Vec<Vec<Layered<S::Point>>> = vec![base_sample.iter().cloned().map(Layered::Base).collect()];
        for n in 1..=levels {
            let prev = &pools[n - 1];
            let mut next = BTreeSet::new();
            for x in prev {
                next.extend(self.neighbors(n - 1, x, prev, rng));
            }
            pools.push(next.into_iter().collect());
        }
        pools
    }

    /// A random coherent stem of length `len` starting from a level-1 point
    /// of `pools[1]`; coordinate `n + 1` branches towards `pools[n]`, so
    /// `pools` needs levels up to `len − 1`.
    pub fn random_stem<R: Rng>(
        &self,
        pools: &[Vec<Layered<S::Point>>],
        len: usize,
        rng: &mut R,
    ) -> TowerPoint<S::Point> {
        assert!(len >= 1 && pools.len() >= len.max(2), "pools must cover every stem level below the top");
        let mut stem = vec![pools[1].choose(rng).expect("nonempty pool").clone()];
        for n in 1..len {
            let x = stem[n - 1].clone();
            let options = self.neighbors(n, &x, &pools[n], rng);
            stem.push(options.choose(rng).expect("vertex lift always present").clone());
        }
        self.validate_stem(stem).expect("sampled stems are coherent members")
    }
}

/// Distance census of a finite sample of tower points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub points: usize,
    pub distance_values: BTreeSet<NonNegRational>,
    /// `|π_n(sample)|` for `n = 1, …, N + 1`.
    pub per_level_images: Vec<usize>,
    pub bound: usize,
}

impl Census {
    pub fn within_bound(&self) -> bool {
        self.distance_values.len() <= self.bound
    }
}

/// A coherent stem in canonical form (no trailing vertex lifts).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TowerPoint<P> {
    stem: Vec<Layered<P>>,
}

impl<P: Clone + Eq + Debug> TowerPoint<P> {
    fn canonical(mut stem: Vec<Layered<P>>) -> Self {
        while stem.len() > 1 && stem[stem.len() - 1] == stem[stem.len() - 2].clone().lift() {
            stem.pop();
        }
        TowerPoint { stem }
    }

    /// The base point `p` as the stem `[p]`.
    pub fn from_base(p: P) -> Self {
        TowerPoint { stem: vec![Layered::vertex(p)] }
    }

    pub fn stem(&self) -> &[Layered<P>] {
        &self.stem
    }

    pub fn len(&self) -> usize {
        self.stem.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stem.is_empty()
    }

    /// `π^ω_n`: the `n`-th coordinate, vertex-lifted past the stem.
    pub fn projection(&self, n: usize) -> Layered<P> {
        assert!(n >= 1, "levels start at 1");
        let last = self.stem.len();
        if n <= last {
            return self.stem[n - 1].clone();
        }
        (last..n).fold(self.stem[last - 1].clone(), |x, _| x.lift())
    }

    /// `⊛^ω f`, re-canonicalized.
    pub fn map<Q, F>(&self, f: &F) -> TowerPoint<Q>
    where
        Q: Clone + Eq + Debug,
        F: Fn(&P) -> Q,
    {
        TowerPoint::canonical(self.stem.iter().map(|x| x.map(f)).collect())
    }
}

/// `π^ω_n(a)`.
pub fn limit_projection<P: Clone + Eq + Debug>(a: &TowerPoint<P>, n: usize) -> Layered<P> {
    a.projection(n)
}
