use crate::linear::{Key, LinComb, SymTensor};
use crate::scalar::Scalar;

use super::{apply_sym, LInfty};

/// The structure twisted by a degree-one element `a`,
/// `q^a_k(w) = Σ_m q_{k+m}(a^m ⊙ w) / m!`, followed by a projection onto the
/// keys accepted by `keep`. When `a` is Maurer-Cartan for the part of the
/// structure that is discarded by the projection, and the kept keys span an
/// ideal, the result is a curved L∞ structure with curvature `q^a_0`.
pub struct Twisted<K: Key, Q> {
    q: Q,
    powers: Vec<SymTensor<K>>,
    keep: Box<dyn Fn(&K) -> bool + Send + Sync>,
}

impl<K: Key, Q: LInfty<K>> Twisted<K, Q> {
    pub fn new(q: Q, a: &LinComb<K>, keep: Box<dyn Fn(&K) -> bool + Send + Sync>) -> Self {
        let n = q.max_arity();
        let powers = SymTensor::powers(a, n);
        Twisted { q, powers, keep }
    }

    pub fn inner(&self) -> &Q {
        &self.q
    }
}

impl<K: Key, Q: LInfty<K>> LInfty<K> for Twisted<K, Q> {
    fn max_arity(&self) -> usize {
        self.q.max_arity()
    }

    fn is_curved(&self) -> bool {
        true
    }

    fn bracket(&self, word: &[K]) -> LinComb<K> {
        let k = word.len();
        let mut out = LinComb::zero();
        for m in 0..self.powers.len() {
            if k + m > self.q.max_arity() {
                break;
            }
            if k + m == 0 && !self.q.is_curved() {
                continue;
            }
            let mut t = self.powers[m].clone();
            if t.is_zero() {
                break;
            }
            for w in word {
                t = t.times(&LinComb::basis(*w));
            }
            out.add_scaled(&apply_sym(&self.q, &t), &Scalar::inv_factorial(m));
        }
        out.filter(|key| (self.keep)(key))
    }
}
