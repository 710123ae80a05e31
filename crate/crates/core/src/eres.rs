//! The economical resolution `E X = ⊛^ω(D X)` and `ξ_X = c_X ∘ π^ω_{D X}`.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::gamma::GammaPoint;
use crate::rational::NonNegRational;
use crate::seqdec::{DPoint, DSpace, PointId, S0Param, SeqPresentation};
use crate::tower::{Census, Layered, TowerPoint, TowerSpace};

pub type EPoint = TowerPoint<DPoint>;

#[derive(Clone, Debug)]
pub struct EResolution {
    tower: TowerSpace<DSpace>,
}

/// What the resolution of a small ball around a point is confined to.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum NeighborhoodImage {
    /// The values of a registered sequence.
    Sequence(String),
    Singleton(PointId),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NeighborhoodWitness {
    pub radius: NonNegRational,
    pub image: NeighborhoodImage,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionCensus {
    pub census: Census,
    /// Sample indices grouped by their resolution.
    pub fibers: BTreeMap<PointId, Vec<usize>>,
}

impl EResolution {
    pub fn new(pres: SeqPresentation) -> Self {
        EResolution { tower: TowerSpace::new(DSpace::new(pres)) }
    }

    pub fn tower(&self) -> &TowerSpace<DSpace> {
        &self.tower
    }

    pub fn dspace(&self) -> &DSpace {
        self.tower.base()
    }

    pub fn presentation(&self) -> &SeqPresentation {
        self.dspace().presentation()
    }

    pub fn resolve(&self, a: &EPoint) -> Result<PointId> {
        self.presentation().evaluate(self.tower.omega_compression(a))
    }

    /// `x ↦ [(const_x, 0)]`, a section of [`EResolution::resolve`].
    pub fn lift_base_point(&self, x: &str) -> Result<EPoint> {
        let seq = self.presentation().constant_of(x)?;
        Ok(TowerPoint::from_base(DPoint { seq, param: S0Param::Limit }))
    }

    /// A radius whose omega-ball around `a` resolves into a single
    /// convergent sequence: radius 1 and the sequence itself when the first
    /// coordinate is a vertex `(f, t)`; the distance to the nearer endpoint
    /// and the single value `ξ(a)` when it is an arc point.
    pub fn convergent_sequence_neighborhood(&self, a: &EPoint) -> Result<NeighborhoodWitness> {
        let first = a.stem()[0].as_gamma().expect("level-1 coordinate");
        match first {
            GammaPoint::Vertex(v) => {
                let d = v.as_base().expect("base point under a level-1 vertex");
                let id = self.presentation().sequence(d.seq)?.id.clone();
                Ok(NeighborhoodWitness { radius: NonNegRational::ONE, image: NeighborhoodImage::Sequence(id) })
            }
            GammaPoint::Edge(_, _, t) => Ok(NeighborhoodWitness {
                radius: (*t).min(NonNegRational::ONE.saturating_sub(*t)),
                image: NeighborhoodImage::Singleton(self.resolve(a)?),
            }),
        }
    }

    /// Whether `p` lies in the image promised by a witness.
    pub fn image_contains(&self, image: &NeighborhoodImage, p: &str) -> Result<bool> {
        Ok(match image {
            NeighborhoodImage::Sequence(id) => {
                let idx = self.presentation().sequence_index(id)?;
                self.presentation().sequence(idx)?.is_value(p)
            }
            NeighborhoodImage::Singleton(x) => x == p,
        })
    }

    pub fn resolution_census(&self, sample: &[EPoint]) -> Result<ResolutionCensus> {
        let census = self.tower.economy_census(sample)?;
        let mut fibers: BTreeMap<PointId, Vec<usize>> = BTreeMap::new();
        for (i, a) in sample.iter().enumerate() {
            fibers.entry(self.resolve(a)?).or_default().push(i);
        }
        Ok(ResolutionCensus { census, fibers })
    }

    /// Level-1 vertex `(f, t)` as a tower point.
    pub fn vertex(&self, d: DPoint) -> EPoint {
        TowerPoint::from_base(d)
    }

    /// A stem of level-1 arc point `⟨a, b, t⟩`, validated.
    pub fn edge(&self, a: DPoint, b: DPoint, t: NonNegRational) -> Result<EPoint> {
        let x = Layered::edge(Layered::Base(a), Layered::Base(b), t)?;
        self.tower.validate_stem(vec![x])
    }
}

/// `p ∈ f(S₀)` for the sequence registered as `id`.
pub fn is_value_of(pres: &SeqPresentation, id: &str, p: &str) -> Result<bool> {
    Ok(pres.sequence(pres.sequence_index(id)?)?.is_value(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqdec::{Family, SeqTail, Sequence};

    fn pres() -> SeqPresentation {
        SeqPresentation::new(
            vec!["0".into(), "1".into(), "1/2".into()],
            vec![Sequence {
                id: "h".into(),
                limit: "0".into(),
                prefix: vec![],
                tail: SeqTail::Indexed(Family::Harmonic),
            }],
        )
        .unwrap()
    }

    #[test]
    fn lift_and_resolve() {
        let e = EResolution::new(pres());
        for x in ["0", "1", "1/2"] {
            assert_eq!(e.resolve(&e.lift_base_point(x).unwrap()).unwrap(), x);
        }
        let a = e.lift_base_point("0").unwrap();
        let b = e.lift_base_point("1").unwrap();
        assert_eq!(e.tower().omega_distance(&a, &b), NonNegRational::ONE);
    }

    #[test]
    fn neighborhoods() {
        let e = EResolution::new(pres());
        let h = e.presentation().sequence_index("h").unwrap();
        let a = e.vertex(DPoint { seq: h, param: S0Param::Term(3) });
        assert_eq!(e.resolve(&a).unwrap(), "1/3");
        let w = e.convergent_sequence_neighborhood(&a).unwrap();
        assert_eq!(
            w,
            NeighborhoodWitness { radius: NonNegRational::ONE, image: NeighborhoodImage::Sequence("h".into()) }
        );
        let lim = DPoint { seq: h, param: S0Param::Limit };
        let t2 = DPoint { seq: h, param: S0Param::Term(2) };
        // d((h,1/2),(h,0)) = 1/2, so the arc [(h,0),(h,1/2)] keeps length 1/2.
        let b = e.edge(lim, t2, NonNegRational::frac(1, 4)).unwrap();
        assert_eq!(e.resolve(&b).unwrap(), "0");
        let w = e.convergent_sequence_neighborhood(&b).unwrap();
        assert_eq!(w.radius, NonNegRational::frac(1, 4));
        assert!(e.image_contains(&w.image, "0").unwrap());
    }

    #[test]
    fn census_of_lifts() {
        let e = EResolution::new(pres());
        let s: Vec<_> = ["0", "1", "1/2"].iter().map(|x| e.lift_base_point(x).unwrap()).collect();
        let c = e.resolution_census(&s).unwrap();
        assert_eq!(c.fibers.len(), 3);
        assert_eq!(c.census.distance_values.len(), 2);
    }
}
