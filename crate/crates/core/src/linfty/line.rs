//! `V ⊗ k[s, ds]` and homotopies between Maurer-Cartan elements.
//!
//! The line algebra is the algebra of forms on Δ₁ with `s = t₁`.

use crate::error::{Error, Result};
use crate::forms::{eval_point, Form, FormKey};
use crate::linear::{Key, LinComb};
use crate::scalar::Scalar;

use super::{mc_defect, LInfty, Morphism, TKey, TensorForms};

pub fn tensor_line<K: Key, Q: LInfty<K>>(q: Q) -> TensorForms<Q> {
    TensorForms::new(q)
}

/// `Eval_{s = s₀}`: drops `ds`-terms and evaluates polynomial coefficients.
pub fn evaluate<K: Key>(z: &LinComb<TKey<K>>, s0: &Scalar) -> LinComb<K> {
    let mut out = LinComb::zero();
    for (k, c) in z.iter() {
        if k.f.mask != 0 {
            continue;
        }
        let v = eval_point(&Form::basis(k.f), std::slice::from_ref(s0));
        out.add_term(k.l, &(c * &v));
    }
    out
}

/// Evaluation at a point as a strict morphism `V ⊗ k[s, ds] → V`.
pub struct EvalAt(pub Scalar);

impl<K: Key> Morphism<TKey<K>, K> for EvalAt {
    fn max_arity(&self) -> usize {
        1
    }

    fn component(&self, word: &[TKey<K>]) -> LinComb<K> {
        if word.len() != 1 {
            return LinComb::zero();
        }
        evaluate(&LinComb::basis(word[0]), &self.0)
    }
}

/// The constant path at `a`.
pub fn constant_path<K: Key>(a: &LinComb<K>) -> LinComb<TKey<K>> {
    a.relabel(|l| TKey { l: *l, f: FormKey::ONE })
}

/// Whether the Maurer-Cartan element `z` of `V ⊗ k[s, ds]` joins `a` to `a′`.
pub fn homotopy_equiv_check<K: Key, Q: LInfty<K>>(
    q: &TensorForms<Q>,
    z: &LinComb<TKey<K>>,
    a: &LinComb<K>,
    a2: &LinComb<K>,
) -> Result<bool> {
    if !mc_defect(q, z).is_zero() {
        return Err(Error::NotMaurerCartan("path is not Maurer-Cartan in V ⊗ k[s, ds]".into()));
    }
    Ok(evaluate(z, &Scalar::zero()) == *a && evaluate(z, &Scalar::one()) == *a2)
}
