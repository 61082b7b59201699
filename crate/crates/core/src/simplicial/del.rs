use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linear::{Key, LinComb};
use crate::linfty::{eval, mc_defect, LInfty, TKey, TensorForms};
use crate::scalar::Scalar;
use crate::transfer::{kuranishi_inverse, Transfer};

use super::cochain::{on_face, value_on, CKey, Cochain};
use super::contraction::{BaseDiff, HornContraction, SimplexContraction};

pub type SimplexTransfer<K, Q> = Transfer<TKey<K>, CKey<K>, TensorForms<Arc<Q>>, SimplexContraction<K>>;

/// Simplices of `Del∞(L)_n` through the vertex-`i` horn contraction:
/// `C*(Δ_n; L)` carries the structure transferred from `Ω*(Δ_n) ⊗ L`, and
/// `(π*, e_i*, −h^i)` contracts it onto `L`.
pub struct Filler<K: Key, Q> {
    pub n: usize,
    pub vertex: usize,
    q: Arc<Q>,
    horn: Transfer<CKey<K>, K, Arc<SimplexTransfer<K, Q>>, HornContraction<K>>,
}

impl<K: Key, Q: LInfty<K>> Filler<K, Q> {
    pub fn new(q: Arc<Q>, base_d: BaseDiff<K>, n: usize, vertex: usize, arity: usize) -> Self {
        let simplex = Arc::new(Transfer::new(TensorForms::new(q.clone()), SimplexContraction::new(n, base_d.clone()), arity));
        let horn = Transfer::new(simplex, HornContraction::new(n, vertex, base_d), arity);
        Filler { n, vertex, q, horn }
    }

    /// The L∞ structure on `C*(Δ_n; L)`.
    pub fn cochains(&self) -> &SimplexTransfer<K, Q> {
        &self.horn.q
    }

    pub fn horn_datum(&self, a: &Cochain<K>) -> Cochain<K> {
        a.map(|k| self.horn.c.h(k))
    }

    /// The unique `α ∈ MC(C*(Δ_n; L))` with `e_i*(α) = x` and `h^i(α) = k`.
    pub fn fill(&self, x: &LinComb<K>, k: &Cochain<K>) -> Result<Cochain<K>> {
        if !mc_defect(&*self.q, x).is_zero() {
            return Err(Error::NotMaurerCartan("vertex value is not Maurer-Cartan".into()));
        }
        kuranishi_inverse(&self.horn, x, &-k)
    }
}

/// `a · x`: fill `Δ₁` from the vertex `[0]` with `x` and edge value `−a`
/// (the `h⁰`-datum at `[1]`), then read off the vertex `[1]`.
pub fn gauge_action<K: Key, Q: LInfty<K>>(filler: &Filler<K, Q>, a: &LinComb<K>, x: &LinComb<K>) -> Result<LinComb<K>> {
    assert!(filler.n == 1 && filler.vertex == 0);
    let alpha = filler.fill(x, &on_face(&-a, &[1]))?;
    Ok(value_on(&alpha, &[1]))
}

/// The horn-filling product: `x` at `[1]`, edge values `a` on `[01]` and
/// `b` on `[12]` (that is, `h¹`-datum `−a` at `[0]` and `b` at `[2]`); the
/// product is the value of the filler on `[02]`.
pub fn bch_horn<K: Key, Q: LInfty<K>>(filler: &Filler<K, Q>, x: &LinComb<K>, a: &LinComb<K>, b: &LinComb<K>) -> Result<LinComb<K>> {
    assert!(filler.n == 2 && filler.vertex == 1);
    let datum = on_face(&-a, &[0]) + on_face(b, &[2]);
    let alpha = filler.fill(x, &datum)?;
    Ok(value_on(&alpha, &[0, 2]))
}

/// Classical gauge action `x + Σ_n ad_a^n ([a, x] − da) / (n+1)!` for `a` of
/// degree 0, read from the structure maps: `da = q₁(a)`, `[a, y] = −q₂(a, y)`.
pub fn classical_gauge<K: Key, Q: LInfty<K> + ?Sized>(q: &Q, a: &LinComb<K>, x: &LinComb<K>) -> LinComb<K> {
    let ad = |y: &LinComb<K>| -eval(q, &[a, y]);
    let mut term = ad(x) - eval(q, &[a]);
    let mut out = x.clone();
    let mut n = 0;
    while !term.is_zero() {
        out.add_scaled(&term, &Scalar::inv_factorial(n + 1));
        term = ad(&term);
        n += 1;
    }
    out
}
