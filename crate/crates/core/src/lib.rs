pub mod error;
pub mod exactla;
pub mod fusion;
pub mod polalg;
pub mod scalar;
pub mod reldim;
pub mod folner;
pub mod solvers;
pub mod tower;
