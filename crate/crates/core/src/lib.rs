//! Vanishing cycles on curves in toric surfaces.

pub mod exec;
pub mod lattice;
pub mod linalg;
pub mod samples;

pub use exec::Exec;
pub mod network;
pub mod surface;
pub mod spin;
pub mod suite;
pub mod symp;
pub mod wedge;
pub mod verify;
