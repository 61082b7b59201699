//! Contractions, homotopy transfer, the Kuranishi bijection and curved transfer.

pub mod contraction;
pub mod curved;
pub mod kuranishi;
pub mod package;

pub use contraction::{check_contraction, Contraction, IdentityContraction};
pub use curved::{curved_compose, pro_nilpotence_check, Fukaya, Perturbation};
pub use kuranishi::{in_image_of_k, kuranishi, kuranishi_inverse};
pub use package::Transfer;

#[cfg(test)]
mod tests;
