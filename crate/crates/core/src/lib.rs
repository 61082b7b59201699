//! Exact computational homotopical algebra over the rationals.
//!
//! The crate implements L∞ machinery (homotopy transfer, the formal Kuranishi
//! bijection, curved transfer), the Dupont contraction of polynomial forms onto
//! simplicial cochains, Deligne-Getzler simplices, Čech descent of unipotent
//! torsors and the lifting problem for torsors across Lie algebra extensions.
//!
//! All arithmetic is exact; see [`scalar::Scalar`].

pub mod error;
pub mod scalar;
pub mod linear;
pub mod matrix;
pub mod forms;
pub mod lie;
pub mod linfty;
pub mod transfer;
pub mod simplicial;
pub mod descent;
pub mod sample;
pub mod io;
pub mod cli;

pub use error::{Error, Result};
pub use scalar::Scalar;
