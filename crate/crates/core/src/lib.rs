//! Exact premetric spaces, the complete oriented graph `Γ`, the cobweb `⊛`,
//! the tower `⊛^ω`, the sequence decomposition `D` and the resolution
//! `E = ⊛^ω ∘ D`.
//!
//! All distances are [`NonNegRational`]s. Finite spaces get certified
//! answers; rule-presented spaces are checked on explicit samples.

pub mod cobweb;
pub mod convergence;
pub mod eres;
pub mod error;
pub mod format;
pub mod gamma;
pub mod premetric;
pub mod rational;
pub mod sampling;
pub mod seqdec;
pub mod spaces;
pub mod topology;
pub mod tower;
pub mod verify;

pub use cobweb::{compression_nonexpansion_experiment, Cobweb, NonExpandingMap};
pub use eres::{EPoint, EResolution};
pub use error::{Error, Result};
pub use gamma::{gamma_distance, gamma_map, GammaPoint};
pub use premetric::{FinitePremetricSpace, Labeled, PointSet, Premetric};
pub use rational::NonNegRational;
pub use seqdec::{DPoint, DSpace, S0Param, SeqPresentation};
pub use topology::{premetric_topology, FiniteTopology};
pub use tower::{Layered, TowerPoint, TowerSpace};
