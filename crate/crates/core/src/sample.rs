//! Seeded random elements for tests and the `bijection-test` command.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::descent::{Cochain, CoverNerve, FaceLie};
use crate::lie::Vector;
use crate::linear::{BasisKey, LinComb};
use crate::linfty::{LieLInfty, TKey};
use crate::scalar::Scalar;
use crate::simplicial::{form_monomials, CKey};

pub use rand::SeedableRng;
pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small rationals `p/q` with `|p| ≤ 3`, `q ∈ {1, 2}`.
pub fn scalar(rng: &mut Rng8) -> Scalar {
    Scalar::frac(rng.gen_range(-3..=3), rng.gen_range(1..=2))
}

pub fn vector(rng: &mut Rng8, dim: usize) -> Vector {
    (0..dim).map(|_| scalar(rng)).collect()
}

/// A random value on every face of dimension `q`.
pub fn cochain(rng: &mut Rng8, local: &FaceLie, q: usize) -> Cochain {
    local.nerve.faces_of_dim(q).into_iter().map(|f| (f, vector(rng, local.at(f).dim()))).collect()
}

/// Adds a nonzero random vector to the value on one face.
pub fn perturb(rng: &mut Rng8, x: &Cochain) -> (Cochain, u32) {
    let mut y = x.clone();
    let faces: Vec<u32> = y.keys().copied().collect();
    let f = faces[rng.gen_range(0..faces.len())];
    let v = y.get_mut(&f).unwrap();
    loop {
        let d = vector(rng, v.len());
        if d.iter().any(|c| !c.is_zero()) {
            for (a, b) in v.iter_mut().zip(d) {
                *a += &b;
            }
            break;
        }
    }
    (y, f)
}

/// A polynomial one-form on `Δ₁` with values in a Lie algebra of dimension
/// `dim`; every such form is Maurer-Cartan.
pub fn interval_one_form(rng: &mut Rng8, dim: usize) -> LinComb<TKey<BasisKey>> {
    let mut x = LinComb::zero();
    for f in form_monomials(1, 2).into_iter().filter(|f| f.mask == 1) {
        for i in 0..dim {
            if rng.gen_bool(0.5) {
                x.add_term(TKey { l: LieLInfty::key(i), f }, &scalar(rng));
            }
        }
    }
    x
}

/// A cochain on the edge of `Δ₁`.
pub fn interval_edge(rng: &mut Rng8, dim: usize) -> LinComb<CKey<BasisKey>> {
    LinComb::from_terms((0..dim).map(|i| (CKey { l: LieLInfty::key(i), face: 0b11 }, scalar(rng))))
}

/// Random sections `σ_i ∈ L ⊗ A_i` for `L` of dimension `dim`.
pub fn sections(rng: &mut Rng8, nerve: &CoverNerve, dim: usize) -> Cochain {
    nerve.faces_of_dim(0).into_iter().map(|f| (f, vector(rng, dim * nerve.algebra(f).dim()))).collect()
}
