//! Truncations `{0,1}^k` of the Cantor cube with the ultrametric
//! `d(x, y) = 2^{−n}`, `n` the first index where `x` and `y` differ. Points
//! are bit strings stored in a `u32`, index 0 being the least significant bit.

use crate::error::{Error, Result};
use crate::premetric::{FinitePremetricSpace, Labeled, Premetric};
use crate::rational::NonNegRational;

pub const MAX_CANTOR_BITS: u32 = 12;

#[derive(Clone, Copy, Debug)]
pub struct CantorTruncation {
    k: u32,
}

impl CantorTruncation {
    pub fn new(k: u32) -> Result<Self> {
        if !(1..=MAX_CANTOR_BITS).contains(&k) {
            return Err(Error::OutOfBounds(format!("cantor:{k} needs 1 ≤ k ≤ {MAX_CANTOR_BITS}")));
        }
        Ok(CantorTruncation { k })
    }

    pub fn bits(&self) -> u32 {
        self.k
    }

    pub fn points(&self) -> impl Iterator<Item = u32> {
        0..(1u32 << self.k)
    }

    pub fn to_finite(&self) -> FinitePremetricSpace {
        let labels = self.points().map(|p| self.label(&p)).collect();
        FinitePremetricSpace::from_fn(labels, |i, j| self.dist(&(i as u32), &(j as u32))).expect("distinct labels")
    }
}

impl Premetric for CantorTruncation {
    type Point = u32;

    fn dist(&self, a: &u32, b: &u32) -> NonNegRational {
        if a == b {
            NonNegRational::ZERO
        } else {
            NonNegRational::pow2_neg((a ^ b).trailing_zeros())
        }
    }
}

impl Labeled for CantorTruncation {
    /// Bits in index order, `x₀x₁…`.
    fn label(&self, p: &u32) -> String {
        (0..self.k).map(|i| if p >> i & 1 == 1 { '1' } else { '0' }).collect()
    }

    fn parse_point(&self, s: &str) -> Result<u32> {
        if s.len() != self.k as usize || !s.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(Error::parse("point", format!("{s:?} is not a {}-bit string", self.k)));
        }
        Ok(s.bytes().enumerate().fold(0, |acc, (i, b)| acc | (u32::from(b == b'1') << i)))
    }
}

/// Number of distinct distances over all ordered pairs of `{0,1}^k`.
pub fn cantor_census(k: u32) -> Result<usize> {
    let c = CantorTruncation::new(k)?;
    let values: std::collections::BTreeSet<_> =
        c.points().flat_map(|a| c.points().map(move |b| c.dist(&a, &b))).collect();
    Ok(values.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::premetric::{classify, isoceles_check};

    #[test]
    fn census_values() {
        assert_eq!(cantor_census(1).unwrap(), 2);
        assert_eq!(cantor_census(3).unwrap(), 4);
        assert!(cantor_census(0).is_err());
        assert!(cantor_census(13).is_err());
    }

    #[test]
    fn three_bits_is_ultrametric() {
        let s = CantorTruncation::new(3).unwrap().to_finite();
        assert!(classify(&s).is_ultrametric);
        assert!(isoceles_check(&s).unwrap());
    }

    #[test]
    fn labels_round_trip() {
        let c = CantorTruncation::new(4).unwrap();
        for p in c.points() {
            assert_eq!(c.parse_point(&c.label(&p)).unwrap(), p);
        }
        assert_eq!(c.label(&1), "1000");
    }
}
