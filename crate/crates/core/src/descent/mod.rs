//! Čech descent: cover nerves, the Čech L∞ structure obtained from the
//! Thom-Whitney totalization by Dupont transfer, torsor cocycles, the curved
//! structure governing lifts across an extension, and a lift solver.

mod arrows;
mod cocycle;
mod curved;
mod nerve;
mod solve;
mod tot;

pub use arrows::{Arrow, CurvedArrows, SimplexFukaya};
pub use cocycle::{
    apply_trivialization, check_shape, coboundary, cocycle_to_mc, compose_trivializations, mc_to_cocycle, restricted,
    verify_group_cocycle,
};
pub use curved::{check_cocycle_shape, lift_coboundary, CurvedCech, CurvedFukaya, CurvedL};
pub use nerve::{dim_of, face_of, positions, vertices, CoverNerve, Face, Level, Semicosimplicial};
pub use solve::{solve_lift, LiftOutcome, Obstruction};
pub use tot::{Cech, CechKey, CechTransfer, Cochain, FKey, FaceLie, TwContraction, TwKey};

#[cfg(test)]
mod tests;
