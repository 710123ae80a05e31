//! Sequences given by a finite prefix and a decidable tail, and the two
//! convergence predicates: `lim d(x, x_n) = 0`, and (on finite spaces)
//! eventual membership in the minimal neighborhood of `x`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::premetric::{FinitePremetricSpace, Premetric};
use crate::rational::NonNegRational;
use crate::topology::FiniteTopology;

type TermFn<P> = Arc<dyn Fn(u64) -> P + Send + Sync>;
type LimitFn<P> = Arc<dyn Fn(&P) -> Option<NonNegRational> + Send + Sync>;

/// An injective family `n ↦ x_n` that knows, for a given point `x`, the limit
/// of `d(x, x_n)` (or reports that it cannot tell).
#[derive(Clone)]
pub struct IndexedTail<P> {
    name: String,
    term: TermFn<P>,
    distance_limit: LimitFn<P>,
}

impl<P> IndexedTail<P> {
    pub fn new(
        name: impl Into<String>,
        term: impl Fn(u64) -> P + Send + Sync + 'static,
        distance_limit: impl Fn(&P) -> Option<NonNegRational> + Send + Sync + 'static,
    ) -> Self {
        IndexedTail { name: name.into(), term: Arc::new(term), distance_limit: Arc::new(distance_limit) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn term(&self, n: u64) -> P {
        (self.term)(n)
    }

    pub fn distance_limit(&self, x: &P) -> Option<NonNegRational> {
        (self.distance_limit)(x)
    }
}

impl<P> fmt::Debug for IndexedTail<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IndexedTail").field("name", &self.name).finish_non_exhaustive()
    }
}

#[derive(Clone, Debug)]
pub enum Tail<P> {
    Constant(P),
    Indexed(IndexedTail<P>),
}

/// `x_1, …, x_k` followed by the tail; terms are indexed from 1 and an
/// indexed tail is evaluated at the absolute index.
#[derive(Clone, Debug)]
pub struct SequenceSpec<P> {
    pub prefix: Vec<P>,
    pub tail: Tail<P>,
}

impl<P: Clone> SequenceSpec<P> {
    pub fn constant(p: P) -> Self {
        SequenceSpec { prefix: Vec::new(), tail: Tail::Constant(p) }
    }

    pub fn term(&self, n: u64) -> P {
        assert!(n >= 1, "sequence terms are indexed from 1");
        match self.prefix.get(n as usize - 1) {
            Some(p) => p.clone(),
            None => match &self.tail {
                Tail::Constant(p) => p.clone(),
                Tail::Indexed(f) => f.term(n),
            },
        }
    }
}

/// `lim d(x, x_n) = 0`, decided from the tail rule.
pub fn converges_by_premetric<S: Premetric>(space: &S, seq: &SequenceSpec<S::Point>, x: &S::Point) -> Result<bool> {
    match &seq.tail {
        Tail::Constant(c) => Ok(space.dist(x, c).is_zero()),
        Tail::Indexed(f) => f.distance_limit(x).map(|l| l.is_zero()).ok_or(Error::UndecidableTail),
    }
}

/// Eventually inside the minimal open neighborhood `U_x`.
pub fn converges_topologically_finite(
    space: &FinitePremetricSpace,
    top: &FiniteTopology,
    seq: &SequenceSpec<usize>,
    x: usize,
) -> Result<bool> {
    if x >= space.len() {
        return Err(Error::UnknownPoint(x.to_string()));
    }
    match &seq.tail {
        Tail::Constant(c) => Ok(top.minimal_neighborhood(x).contains(*c)),
        Tail::Indexed(_) => Err(Error::InfiniteTailOnFiniteSpace),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::premetric_topology;

    #[test]
    fn constant_sequence_converges_both_ways() {
        let s = FinitePremetricSpace::with_default_labels(2, |i, j| {
            if i == j {
                NonNegRational::ZERO
            } else {
                NonNegRational::ONE
            }
        });
        let top = premetric_topology(&s).unwrap();
        let seq = SequenceSpec { prefix: vec![1, 1, 0], tail: Tail::Constant(0) };
        assert!(converges_by_premetric(&s, &seq, &0).unwrap());
        assert!(converges_topologically_finite(&s, &top, &seq, 0).unwrap());
        assert!(!converges_by_premetric(&s, &seq, &1).unwrap());
        assert_eq!(seq.term(1), 1);
        assert_eq!(seq.term(3), 0);
        assert_eq!(seq.term(100), 0);
    }

    #[test]
    fn indexed_tail_without_limit_rule_is_undecidable() {
        struct Line;
        impl Premetric for Line {
            type Point = u64;
            fn dist(&self, a: &u64, b: &u64) -> NonNegRational {
                NonNegRational::integer(a.abs_diff(*b))
            }
        }
        let seq = SequenceSpec { prefix: vec![], tail: Tail::Indexed(IndexedTail::new("id", |n| n, |_| None)) };
        assert_eq!(converges_by_premetric(&Line, &seq, &0), Err(Error::UndecidableTail));
    }

    #[test]
    fn indexed_tail_on_finite_space_is_rejected() {
        let s = FinitePremetricSpace::with_default_labels(1, |_, _| NonNegRational::ZERO);
        let top = premetric_topology(&s).unwrap();
        let seq = SequenceSpec { prefix: vec![], tail: Tail::Indexed(IndexedTail::new("bad", |_| 0usize, |_| None)) };
        assert_eq!(converges_topologically_finite(&s, &top, &seq, 0), Err(Error::InfiniteTailOnFiniteSpace));
    }
}
