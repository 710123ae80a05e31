//! The sequence decomposition `D X` of a sequentially presented space.
//!
//! `X` is given by a finite list of point labels and a finite registry of
//! convergent sequences; `C(S₀, X)` is replaced by that registry, so every
//! verdict here is relative to it. A point of `D X` is a registered sequence
//! `f` together with a parameter of `S₀ = {0} ∪ {1/n}`, and
//!
//! `d((f, t), (g, s)) = 0` if `f(t) = g(s)`, `|t − s|` if `f = g`, `1` otherwise.
//!
//! Indexed tails come from built-in families with pairwise disjoint ranges;
//! this keeps "eventually inside `U`" decidable for the [`Region`] algebra.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::premetric::{Labeled, Premetric};
use crate::rational::NonNegRational;

pub type PointId = String;

/// A point of `S₀`: `0` or `1/n`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum S0Param {
    Limit,
    Term(u64),
}

impl S0Param {
    pub fn term(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::parse("param", "terms are indexed from 1"));
        }
        Ok(S0Param::Term(n))
    }
}

pub fn s0_value(p: S0Param) -> NonNegRational {
    match p {
        S0Param::Limit => NonNegRational::ZERO,
        S0Param::Term(n) => NonNegRational::recip_of(n),
    }
}

impl fmt::Display for S0Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", s0_value(*self))
    }
}

impl FromStr for S0Param {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let v: NonNegRational = s.parse()?;
        if v.is_zero() {
            return Ok(S0Param::Limit);
        }
        if v.numer() != 1 {
            return Err(Error::parse("param", format!("{s} is not of the form 1/n")));
        }
        S0Param::term(v.denom() as u64)
    }
}

fn pair_label(a: NonNegRational, b: NonNegRational) -> PointId {
    format!("({a},{b})")
}

/// Injective built-in sequences.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Family {
    /// `1/n → 0` on the real line.
    Harmonic,
    /// `(1/n, 0) → (0, 0)` in Arens' space.
    ArensSpine,
    /// `(1/n, 1/(nm)) → (1/n, 0)` in Arens' space, indexed by `m`.
    ArensRow(u64),
}

impl Family {
    pub fn term(&self, k: u64) -> PointId {
        match *self {
            Family::Harmonic => NonNegRational::recip_of(k).to_string(),
            Family::ArensSpine => pair_label(NonNegRational::recip_of(k), NonNegRational::ZERO),
            Family::ArensRow(n) => pair_label(NonNegRational::recip_of(n), NonNegRational::recip_of(n * k)),
        }
    }

    pub fn limit(&self) -> PointId {
        match *self {
            Family::Harmonic => "0".into(),
            Family::ArensSpine => pair_label(NonNegRational::ZERO, NonNegRational::ZERO),
            Family::ArensRow(n) => pair_label(NonNegRational::recip_of(n), NonNegRational::ZERO),
        }
    }

    /// The index `k` with `term(k) = label`, if any.
    pub fn index_of(&self, label: &str) -> Option<u64> {
        let unit = |v: NonNegRational| (v.numer() == 1).then_some(v.denom() as u64);
        match *self {
            Family::Harmonic => unit(label.parse().ok()?),
            Family::ArensSpine => {
                let (a, b) = parse_pair(label)?;
                if b.is_zero() {
                    unit(a)
                } else {
                    None
                }
            }
            Family::ArensRow(n) => {
                let (a, b) = parse_pair(label)?;
                if a != NonNegRational::recip_of(n) || b.is_zero() {
                    return None;
                }
                let nm = unit(b)?;
                (nm % n == 0).then_some(nm / n)
            }
        }
    }
}

fn parse_pair(label: &str) -> Option<(NonNegRational, NonNegRational)> {
    let inner = label.strip_prefix('(')?.strip_suffix(')')?;
    let (a, b) = inner.split_once(',')?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Harmonic => write!(f, "harmonic"),
            Family::ArensSpine => write!(f, "arens-diag"),
            Family::ArensRow(n) => write!(f, "arens-row({n})"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "harmonic" => Ok(Family::Harmonic),
            "arens-diag" | "arens-spine" => Ok(Family::ArensSpine),
            _ => {
                let n = s
                    .strip_prefix("arens-row(")
                    .and_then(|r| r.strip_suffix(')'))
                    .and_then(|n| n.parse::<u64>().ok())
                    .filter(|&n| n >= 1)
                    .ok_or_else(|| Error::parse("tail.indexed", format!("unknown family {s:?}")))?;
                Ok(Family::ArensRow(n))
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SeqTail {
    Constant(PointId),
    Indexed(Family),
}

/// A registered sequence. The tail is evaluated at the absolute index, so
/// `term(n)` is `prefix[n − 1]` for `n ≤ |prefix|` and the tail rule at `n`
/// afterwards.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Sequence {
    pub id: String,
    pub limit: PointId,
    pub prefix: Vec<PointId>,
    pub tail: SeqTail,
}

impl Sequence {
    pub fn term(&self, n: u64) -> PointId {
        assert!(n >= 1, "terms are indexed from 1");
        match self.prefix.get(n as usize - 1) {
            Some(p) => p.clone(),
            None => self.tail_term(n),
        }
    }

    fn tail_term(&self, n: u64) -> PointId {
        match &self.tail {
            SeqTail::Constant(c) => c.clone(),
            SeqTail::Indexed(f) => f.term(n),
        }
    }

    pub fn value(&self, p: S0Param) -> PointId {
        match p {
            S0Param::Limit => self.limit.clone(),
            S0Param::Term(n) => self.term(n),
        }
    }

    /// Drops prefix entries that agree with the tail rule.
    fn canonicalize(&mut self) {
        while let Some(last) = self.prefix.last() {
            if *last != self.tail_term(self.prefix.len() as u64) {
                break;
            }
            self.prefix.pop();
        }
    }

    fn same_function(&self, other: &Sequence) -> bool {
        self.limit == other.limit && self.prefix == other.prefix && self.tail == other.tail
    }

    /// Whether `p ∈ f(S₀)`.
    pub fn is_value(&self, p: &str) -> bool {
        if self.limit == p || self.prefix.iter().any(|x| x == p) {
            return true;
        }
        let after = self.prefix.len() as u64;
        match &self.tail {
            SeqTail::Constant(c) => c == p,
            SeqTail::Indexed(f) => f.index_of(p).is_some_and(|k| k > after),
        }
    }

    /// `{n : f(1/n) ∈ region}`.
    pub fn indices_in(&self, region: &Region) -> Result<IndexSet> {
        let after = self.prefix.len() as u64;
        let tail = match &self.tail {
            SeqTail::Constant(c) => {
                if region.contains(c) {
                    IndexSet::from(after + 1)
                } else {
                    IndexSet::default()
                }
            }
            SeqTail::Indexed(f) => region.indices_of(*f)?.intersection(&IndexSet::from(after + 1)),
        };
        let head = IndexSet::finite(
            self.prefix.iter().enumerate().filter(|(_, p)| region.contains(p)).map(|(i, _)| i as u64 + 1),
        );
        Ok(head.union(&tail))
    }
}

/// `finite ∪ [from, ∞)` inside `{1, 2, …}`; closed under the Boolean
/// operations.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct IndexSet {
    finite: BTreeSet<u64>,
    from: Option<u64>,
}

impl IndexSet {
    pub fn finite(it: impl IntoIterator<Item = u64>) -> Self {
        IndexSet { finite: it.into_iter().collect(), from: None }.normalized()
    }

    pub fn from(k: u64) -> Self {
        IndexSet { finite: BTreeSet::new(), from: Some(k.max(1)) }
    }

    pub fn all() -> Self {
        Self::from(1)
    }

    fn normalized(mut self) -> Self {
        self.finite.remove(&0);
        if let Some(mut k) = self.from {
            self.finite.retain(|&i| i < k);
            while k > 1 && self.finite.remove(&(k - 1)) {
                k -= 1;
            }
            self.from = Some(k);
        }
        self
    }

    pub fn contains(&self, n: u64) -> bool {
        self.from.is_some_and(|k| n >= k) || self.finite.contains(&n)
    }

    pub fn is_cofinite(&self) -> bool {
        self.from.is_some()
    }

    /// The least `m` with `[m, ∞)` inside the set.
    pub fn threshold(&self) -> Option<u64> {
        self.from
    }

    fn bound(&self, other: &Self) -> u64 {
        let top = |s: &Self| s.finite.iter().next_back().copied().unwrap_or(0).max(s.from.unwrap_or(0));
        top(self).max(top(other)) + 1
    }

    pub fn union(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a && b)
    }

    pub fn complement(&self) -> Self {
        let b = self.bound(self);
        let finite = (1..b).filter(|&n| !self.contains(n)).collect();
        let from = if self.contains(b) { None } else { Some(b) };
        IndexSet { finite, from }.normalized()
    }

    /// Both sets are constant on `[b, ∞)`, so the operation is decided on
    /// `1..b` and at `b`.
    fn combine(&self, other: &Self, op: impl Fn(bool, bool) -> bool) -> Self {
        let b = self.bound(other);
        let finite = (1..b).filter(|&n| op(self.contains(n), other.contains(n))).collect();
        let from = op(self.contains(b), other.contains(b)).then_some(b);
        IndexSet { finite, from }.normalized()
    }
}

type Predicate = Arc<dyn Fn(&str) -> bool + Send + Sync>;

/// A decidable set of points of `X`. Atoms other than [`Region::Opaque`] have a
/// finite description relative to every family, which decides eventual
/// membership of indexed tails.
#[derive(Clone)]
pub enum Region {
    All,
    Points(BTreeSet<PointId>),
    /// Everything except the listed points.
    Cofinite(BTreeSet<PointId>),
    /// `{family.term(k) : k ≥ from}`.
    FamilyTail {
        family: Family,
        from: u64,
    },
    Union(Box<Region>, Box<Region>),
    Intersection(Box<Region>, Box<Region>),
    Complement(Box<Region>),
    /// Membership only; eventual membership of indexed tails is undecidable.
    Opaque(Predicate),
}

impl fmt::Debug for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Region::All => write!(f, "All"),
            Region::Points(s) => f.debug_tuple("Points").field(s).finish(),
            Region::Cofinite(s) => f.debug_tuple("Cofinite").field(s).finish(),
            Region::FamilyTail { family, from } => write!(f, "FamilyTail({family}, {from})"),
            Region::Union(a, b) => f.debug_tuple("Union").field(a).field(b).finish(),
            Region::Intersection(a, b) => f.debug_tuple("Intersection").field(a).field(b).finish(),
            Region::Complement(a) => f.debug_tuple("Complement").field(a).finish(),
            Region::Opaque(_) => write!(f, "Opaque"),
        }
    }
}

impl Region {
    pub fn points<I: IntoIterator<Item = S>, S: Into<PointId>>(it: I) -> Self {
        Region::Points(it.into_iter().map(Into::into).collect())
    }

    pub fn without<I: IntoIterator<Item = S>, S: Into<PointId>>(it: I) -> Self {
        Region::Cofinite(it.into_iter().map(Into::into).collect())
    }

    pub fn union(self, other: Region) -> Self {
        Region::Union(Box::new(self), Box::new(other))
    }

    pub fn intersection(self, other: Region) -> Self {
        Region::Intersection(Box::new(self), Box::new(other))
    }

    pub fn complement(self) -> Self {
        Region::Complement(Box::new(self))
    }

    pub fn opaque(f: impl Fn(&str) -> bool + Send + Sync + 'static) -> Self {
        Region::Opaque(Arc::new(f))
    }

    pub fn contains(&self, p: &str) -> bool {
        match self {
            Region::All => true,
            Region::Points(s) => s.contains(p),
            Region::Cofinite(s) => !s.contains(p),
            Region::FamilyTail { family, from } => family.index_of(p).is_some_and(|k| k >= *from),
            Region::Union(a, b) => a.contains(p) || b.contains(p),
            Region::Intersection(a, b) => a.contains(p) && b.contains(p),
            Region::Complement(a) => !a.contains(p),
            Region::Opaque(f) => f(p),
        }
    }

    /// `{k : family.term(k) ∈ self}`.
    pub fn indices_of(&self, family: Family) -> Result<IndexSet> {
        let listed = |s: &BTreeSet<PointId>| IndexSet::finite(s.iter().filter_map(|p| family.index_of(p)));
        Ok(match self {
            Region::All => IndexSet::all(),
            Region::Points(s) => listed(s),
            Region::Cofinite(s) => listed(s).complement(),
            Region::FamilyTail { family: g, from } => {
                if *g == family {
                    IndexSet::from(*from)
                } else {
                    IndexSet::default()
                }
            }
            Region::Union(a, b) => a.indices_of(family)?.union(&b.indices_of(family)?),
            Region::Intersection(a, b) => a.indices_of(family)?.intersection(&b.indices_of(family)?),
            Region::Complement(a) => a.indices_of(family)?.complement(),
            Region::Opaque(_) => return Err(Error::UndecidableTail),
        })
    }
}

/// Points of `X` and the registry of convergent sequences.
#[derive(Clone, Debug)]
pub struct SeqPresentation {
    points: Vec<PointId>,
    listed: BTreeSet<PointId>,
    sequences: Vec<Sequence>,
    by_id: BTreeMap<String, usize>,
    constants: BTreeMap<PointId, usize>,
}

impl SeqPresentation {
    /// Registers `sequences` (canonicalized, duplicates rejected) and then a
    /// constant sequence `const:p` for every listed `p` not already covered by
    /// an identical registration.
    pub fn new(points: Vec<PointId>, sequences: Vec<Sequence>) -> Result<Self> {
        let listed: BTreeSet<PointId> = points.iter().cloned().collect();
        if listed.len() != points.len() {
            return Err(Error::parse("points", "duplicate point label"));
        }
        let mut pres = SeqPresentation {
            points,
            listed,
            sequences: Vec::new(),
            by_id: BTreeMap::new(),
            constants: BTreeMap::new(),
        };
        for s in sequences {
            pres.register(s)?;
        }
        for p in pres.points.clone() {
            let constant = Sequence {
                id: format!("const:{p}"),
                limit: p.clone(),
                prefix: vec![],
                tail: SeqTail::Constant(p.clone()),
            };
            let idx = match pres.sequences.iter().position(|s| s.same_function(&constant)) {
                Some(i) => i,
                None => pres.register(constant)?,
            };
            pres.constants.insert(p, idx);
        }
        Ok(pres)
    }

    fn require_listed(&self, id: &str, p: &str) -> Result<()> {
        if self.listed.contains(p) {
            Ok(())
        } else {
            Err(Error::InvalidSequence { id: id.into(), reason: format!("point {p:?} is not listed") })
        }
    }

    fn register(&mut self, mut s: Sequence) -> Result<usize> {
        if self.by_id.contains_key(&s.id) {
            return Err(Error::DuplicateSequence(s.id));
        }
        if s.id.is_empty() {
            return Err(Error::InvalidSequence { id: s.id, reason: "empty id".into() });
        }
        self.require_listed(&s.id, &s.limit)?;
        for p in &s.prefix {
            self.require_listed(&s.id, p)?;
        }
        match &s.tail {
            SeqTail::Constant(c) => self.require_listed(&s.id, c)?,
            SeqTail::Indexed(f) => {
                if f.limit() != s.limit {
                    return Err(Error::InvalidSequence {
                        id: s.id,
                        reason: format!("family {f} converges to {}, not {}", f.limit(), s.limit),
                    });
                }
            }
        }
        s.canonicalize();
        if let Some(other) = self.sequences.iter().find(|t| t.same_function(&s)) {
            return Err(Error::DuplicateSequence(format!("{} (same as {})", s.id, other.id)));
        }
        let idx = self.sequences.len();
        self.by_id.insert(s.id.clone(), idx);
        self.sequences.push(s);
        Ok(idx)
    }

    pub fn points(&self) -> &[PointId] {
        &self.points
    }

    pub fn is_listed(&self, p: &str) -> bool {
        self.listed.contains(p)
    }

    pub fn sequences(&self) -> &[Sequence] {
        &self.sequences
    }

    pub fn sequence(&self, idx: usize) -> Result<&Sequence> {
        self.sequences.get(idx).ok_or_else(|| Error::UnknownSequence(format!("#{idx}")))
    }

    pub fn sequence_index(&self, id: &str) -> Result<usize> {
        self.by_id.get(id).copied().ok_or_else(|| Error::UnknownSequence(id.into()))
    }

    /// The registered constant sequence at a listed point.
    pub fn constant_of(&self, p: &str) -> Result<usize> {
        self.constants.get(p).copied().ok_or_else(|| Error::UnknownPoint(p.into()))
    }

    pub fn dpoint(&self, id: &str, param: S0Param) -> Result<DPoint> {
        Ok(DPoint { seq: self.sequence_index(id)?, param })
    }

    /// The calculation map `c_X(f, t) = f(t)`.
    pub fn evaluate(&self, a: &DPoint) -> Result<PointId> {
        Ok(self.sequence(a.seq)?.value(a.param))
    }

    pub fn d_premetric(&self, a: &DPoint, b: &DPoint) -> Result<NonNegRational> {
        if self.evaluate(a)? == self.evaluate(b)? {
            Ok(NonNegRational::ZERO)
        } else if a.seq == b.seq {
            Ok(s0_value(a.param).abs_diff(s0_value(b.param)))
        } else {
            Ok(NonNegRational::ONE)
        }
    }

    /// The first registered sequence whose limit lies in `region` but whose
    /// terms are not eventually in it.
    pub fn seq_open_failure(&self, region: &Region) -> Result<Option<&Sequence>> {
        for s in &self.sequences {
            if region.contains(&s.limit) && !s.indices_in(region)?.is_cofinite() {
                return Ok(Some(s));
            }
        }
        Ok(None)
    }

    pub fn is_seq_open(&self, region: &Region) -> Result<bool> {
        Ok(self.seq_open_failure(region)?.is_none())
    }

    pub fn label(&self, a: &DPoint) -> String {
        let id = self.sequences.get(a.seq).map_or("?", |s| s.id.as_str());
        format!("{id}@{}", a.param)
    }

    pub fn parse_dpoint(&self, s: &str) -> Result<DPoint> {
        let (id, param) = s.rsplit_once('@').ok_or_else(|| Error::parse("dpoint", format!("{s:?} lacks '@'")))?;
        self.dpoint(id, param.parse()?)
    }
}

/// `(f, t) ∈ D X`, with `f` a registry index.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct DPoint {
    pub seq: usize,
    pub param: S0Param,
}

/// `D X` as a premetric space over a presentation.
#[derive(Clone, Debug)]
pub struct DSpace {
    pres: SeqPresentation,
}

impl DSpace {
    pub fn new(pres: SeqPresentation) -> Self {
        DSpace { pres }
    }

    pub fn presentation(&self) -> &SeqPresentation {
        &self.pres
    }

    /// Every registered sequence at `Limit` and at `Term(1..=terms)`.
    pub fn sample(&self, terms: u64) -> Vec<DPoint> {
        (0..self.pres.sequences.len())
            .flat_map(|seq| {
                std::iter::once(S0Param::Limit)
                    .chain((1..=terms).map(S0Param::Term))
                    .map(move |param| DPoint { seq, param })
            })
            .collect()
    }
}

impl Premetric for DSpace {
    type Point = DPoint;

    fn dist(&self, a: &DPoint, b: &DPoint) -> NonNegRational {
        self.pres.d_premetric(a, b).expect("points of this space")
    }
}

impl Labeled for DSpace {
    fn label(&self, p: &DPoint) -> String {
        self.pres.label(p)
    }

    fn parse_point(&self, s: &str) -> Result<DPoint> {
        self.pres.parse_dpoint(s)
    }
}

/// The witness of the ball construction at a limit point: the least `m` with
/// `f(1/n) ∈ V` for every `n ≥ m`, so that `c(B((f, 0), 1/m)) ⊆ V`.
pub fn seq_open_ball_witness(pres: &SeqPresentation, a: &DPoint, v: &Region) -> Result<u64> {
    if a.param != S0Param::Limit {
        return Err(Error::parse("param", "the ball witness is taken at the limit parameter"));
    }
    if let Some(s) = pres.seq_open_failure(v)? {
        return Err(Error::NotSeqOpen(s.id.clone()));
    }
    let value = pres.evaluate(a)?;
    if !v.contains(&value) {
        return Err(Error::NotInV(value));
    }
    let seq = pres.sequence(a.seq)?;
    let m = seq.indices_in(v)?.threshold().expect("the sequence converges into the seq-open set V");
    Ok(m)
}

/// Checks `c(B((f, 0), 1/m)) ⊆ V` symbolically (zero-distance points evaluate
/// to `f(0) ∈ V`; the remaining ball members are `(f, 1/n)` with `n > m`) and
/// on the sample `Term(1..=terms)` of every registered sequence.
pub fn verify_ball_inclusion(pres: &SeqPresentation, a: &DPoint, v: &Region, m: u64, terms: u64) -> Result<bool> {
    let seq = pres.sequence(a.seq)?;
    let symbolic = v.contains(&pres.evaluate(a)?)
        && IndexSet::from(m + 1).intersection(&seq.indices_in(v)?) == IndexSet::from(m + 1);
    if !symbolic {
        return Ok(false);
    }
    let r = NonNegRational::recip_of(m);
    let space = DSpace::new(pres.clone());
    for b in space.sample(terms) {
        if pres.d_premetric(a, &b)? < r && !v.contains(&pres.evaluate(&b)?) {
            return Ok(false);
        }
    }
    Ok(true)
}
