pub mod cli;
pub mod error;
pub mod exactmath;
pub mod graphs;
pub mod group_algebra;
pub mod lie_generators;
pub mod limits;
pub mod perm;
pub mod sdet;
pub mod verify;
pub mod wedge_rep;
pub mod weights;
