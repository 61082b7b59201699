//! Cochains on standard simplices, the simplicial contractions, and the
//! Deligne-Getzler simplices, gauge action and horn-filling BCH product.

pub mod cochain;
pub mod contraction;
pub mod del;

pub use cochain::{cochain_diff, face_mask, face_vertices, on_face, value_on, CKey, Cochain};
pub use del::{bch_horn, classical_gauge, gauge_action, Filler};
pub use contraction::{cochain_basis, form_monomials, no_diff, BaseDiff, HornContraction, SimplexContraction};
