//! Exact Hall and iHall algebra computations for quivers with involution
//! over small prime fields.

pub mod exactarith;
pub mod linalg;
pub mod quiver;
pub mod repmod;
pub mod report;
pub mod hallcore;
pub mod ihallalg;
pub mod iqgverify;
pub mod reflectors;
pub mod symfun;
