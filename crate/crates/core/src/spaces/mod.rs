//! Built-in spaces: Arens' space, the double interval and Cantor cube
//! truncations.

pub mod arens;
pub mod cantor;
pub mod double_interval;

pub use arens::{
    arens_a_subspace_check, arens_ball_region, arens_premetric, arens_presentation, ArensPoint, ArensSpace,
};
pub use cantor::{cantor_census, CantorTruncation};
pub use double_interval::{
    extremality_witness, locally_extremal_f, DoubleInterval, ExtremalKind, Extremality, IiPoint, Side,
};
