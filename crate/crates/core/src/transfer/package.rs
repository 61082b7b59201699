use std::collections::HashMap;
use std::marker::PhantomData;
use std::sync::RwLock;

use crate::linear::{mask_sign, partition_sign, pick, set_partitions, signed, Key, LinComb, SymTensor};
use crate::linfty::{apply_sym, bracket_unsorted, component_unsorted, pushforward, LInfty, Morphism};
use crate::scalar::Scalar;

use super::contraction::{f_lin, g_lin, k_lin, Contraction};

type Cache<A, B> = RwLock<HashMap<Vec<A>, LinComb<B>>>;

/// Homotopy transfer of an L∞ structure `q` on `V` along a contraction onto `W`.
///
/// Tree components on sorted words of `W`:
/// `u_i = Σ_{≥2 blocks} ε q_k(f_{B₁}, …, f_{B_k})`, `f_i = K u_i`, `r_i = g u_i`,
/// and on sorted words of `V`: `g_i = Σ_{k<i} g_k Q^k_i K^Σ_i`.
/// Components above `arity` are taken to vanish.
pub struct Transfer<V: Key, W: Key, Q, C> {
    pub q: Q,
    pub c: C,
    arity: usize,
    u_cache: Cache<W, V>,
    g_cache: Cache<V, W>,
    _m: PhantomData<fn(V, W)>,
}

impl<V: Key, W: Key, Q: LInfty<V>, C: Contraction<V, W>> Transfer<V, W, Q, C> {
    pub fn new(q: Q, c: C, arity: usize) -> Self {
        Transfer { q, c, arity: arity.max(1), u_cache: RwLock::new(HashMap::new()), g_cache: RwLock::new(HashMap::new()), _m: PhantomData }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    fn u(&self, word: &[W]) -> LinComb<V> {
        if let Some(v) = self.u_cache.read().unwrap().get(word) {
            return v.clone();
        }
        let mut out = LinComb::zero();
        for blocks in set_partitions(word.len()) {
            if blocks.len() < 2 || blocks.len() > self.q.max_arity() {
                continue;
            }
            let mut prod = SymTensor::unit();
            for b in &blocks {
                let sub: Vec<W> = b.iter().map(|&i| word[i]).collect();
                prod = prod.times(&self.f_word(&sub));
                if prod.is_zero() {
                    break;
                }
            }
            if prod.is_zero() {
                continue;
            }
            out.add_scaled(&apply_sym(&self.q, &prod), &signed(partition_sign(word, &blocks), Scalar::one()));
        }
        self.u_cache.write().unwrap().insert(word.to_vec(), out.clone());
        out
    }

    /// `f_i` on a sorted word.
    pub fn f_word(&self, word: &[W]) -> LinComb<V> {
        match word.len() {
            0 => LinComb::zero(),
            1 => self.c.f(&word[0]),
            n if n > self.arity => LinComb::zero(),
            _ => k_lin(&self.c, &self.u(word)),
        }
    }

    /// `r_i` on a sorted word.
    pub fn r_word(&self, word: &[W]) -> LinComb<W> {
        match word.len() {
            0 => LinComb::zero(),
            1 => self.c.dw(&word[0]),
            n if n > self.arity => LinComb::zero(),
            _ => g_lin(&self.c, &self.u(word)),
        }
    }

    /// `K^Σ_i` on a sorted word: the symmetrisation of
    /// `Σ_j (fg)^{⊗(j−1)} ⊗ K ⊗ id^{⊗(i−j)}`.
    pub fn k_sigma(&self, word: &[V]) -> SymTensor<V> {
        let n = word.len();
        let mut out = SymTensor::zero();
        let fg: Vec<LinComb<V>> = word.iter().map(|v| f_lin(&self.c, &self.c.g(v))).collect();
        let inv_n = Scalar::inv_factorial(n);
        for j in 0..n {
            let kv = self.c.k(&word[j]);
            if kv.is_zero() {
                continue;
            }
            let others: Vec<usize> = (0..n).filter(|&i| i != j).collect();
            for sub in 0u32..(1 << others.len()) {
                let b: Vec<usize> = others.iter().enumerate().filter(|(p, _)| sub & (1 << p) != 0).map(|(_, &i)| i).collect();
                let a: Vec<usize> = others.iter().enumerate().filter(|(p, _)| sub & (1 << p) == 0).map(|(_, &i)| i).collect();
                let mut perm = b.clone();
                perm.push(j);
                perm.extend(&a);
                let mut neg = crate::linear::reorder_sign(word, &perm);
                for &i in &b {
                    neg ^= word[i].shifted_odd();
                }
                let basis: Vec<LinComb<V>> = a.iter().map(|&i| LinComb::basis(word[i])).collect();
                let mut factors: Vec<&LinComb<V>> = b.iter().map(|&i| &fg[i]).collect();
                factors.push(&kv);
                factors.extend(basis.iter());
                let coeff = Scalar::factorial(b.len()) * Scalar::factorial(a.len()) * inv_n.clone();
                out.add_scaled(&SymTensor::product_of(&factors), &signed(neg, coeff));
            }
        }
        out
    }

    /// `g_i` on a sorted word.
    pub fn g_word(&self, word: &[V]) -> LinComb<W> {
        let n = word.len();
        if n == 0 || n > self.arity {
            return LinComb::zero();
        }
        if n == 1 {
            return self.c.g(&word[0]);
        }
        if let Some(v) = self.g_cache.read().unwrap().get(word) {
            return v.clone();
        }
        let mut out = LinComb::zero();
        for (u, cu) in self.k_sigma(word).iter() {
            for mask in 0u32..(1 << n) {
                let size = mask.count_ones() as usize;
                if size < 2 || size > self.q.max_arity() {
                    continue;
                }
                let inner = self.q.bracket(&pick(u, mask));
                if inner.is_zero() {
                    continue;
                }
                let rest = pick(u, !mask & ((1u32 << n) - 1));
                let mut v = LinComb::zero();
                for (key, c) in inner.iter() {
                    let mut w = Vec::with_capacity(rest.len() + 1);
                    w.push(*key);
                    w.extend_from_slice(&rest);
                    v.add_scaled(&self.g_unsorted(&w), c);
                }
                out.add_scaled(&v, &signed(mask_sign(u, mask), cu.clone()));
            }
        }
        self.g_cache.write().unwrap().insert(word.to_vec(), out.clone());
        out
    }

    fn g_unsorted(&self, word: &[V]) -> LinComb<W> {
        let mut w = word.to_vec();
        match crate::linear::sort_word(&mut w) {
            None => LinComb::zero(),
            Some(neg) => {
                let v = self.g_word(&w);
                if neg {
                    -v
                } else {
                    v
                }
            }
        }
    }

    pub fn f_morphism(&self) -> FMorphism<'_, V, W, Q, C> {
        FMorphism(self)
    }

    pub fn g_morphism(&self) -> GMorphism<'_, V, W, Q, C> {
        GMorphism(self)
    }

    /// `F_*(y)` through the fixed point `X = f(y) + K Σ_{k≥2} q_k(X^k)/k!`.
    pub fn f_push(&self, y: &LinComb<W>) -> LinComb<V> {
        let fy = f_lin(&self.c, y);
        let mut x = fy.clone();
        for _ in 0..=self.arity {
            let next = &fy + &k_lin(&self.c, &self.higher(&x));
            if next == x {
                break;
            }
            x = next;
        }
        x
    }

    /// `Σ_i r_i(y^i)/i!` through `d_W y + g Σ_{k≥2} q_k(F_*(y)^k)/k!`.
    pub fn r_defect(&self, y: &LinComb<W>) -> LinComb<W> {
        let x = self.f_push(y);
        y.map(|w| self.c.dw(w)) + g_lin(&self.c, &self.higher(&x))
    }

    /// `Σ_{k≥2} q_k(x^k)/k!`.
    pub(crate) fn higher(&self, x: &LinComb<V>) -> LinComb<V> {
        let mut out = LinComb::zero();
        let mut pow = SymTensor::unit().times(x);
        for k in 2..=self.q.max_arity() {
            pow = pow.times(x);
            if pow.is_zero() {
                break;
            }
            out.add_scaled(&apply_sym(&self.q, &pow), &Scalar::inv_factorial(k));
        }
        out
    }

    pub fn g_push(&self, x: &LinComb<V>) -> LinComb<W> {
        pushforward(&self.g_morphism(), x)
    }

    /// `f_i` through the coalgebra formula on an arbitrary word, for checks.
    pub fn f_unsorted(&self, word: &[W]) -> LinComb<V> {
        component_unsorted(&self.f_morphism(), word)
    }

    pub fn q_unsorted(&self, word: &[V]) -> LinComb<V> {
        bracket_unsorted(&self.q, word)
    }
}

pub struct FMorphism<'a, V: Key, W: Key, Q, C>(&'a Transfer<V, W, Q, C>);
pub struct GMorphism<'a, V: Key, W: Key, Q, C>(&'a Transfer<V, W, Q, C>);

/// The transferred structure `R` on `W`.
impl<V: Key, W: Key, Q: LInfty<V>, C: Contraction<V, W>> LInfty<W> for Transfer<V, W, Q, C> {
    fn max_arity(&self) -> usize {
        self.arity
    }
    fn bracket(&self, word: &[W]) -> LinComb<W> {
        self.r_word(word)
    }
}

impl<V: Key, W: Key, Q: LInfty<V>, C: Contraction<V, W>> Morphism<W, V> for FMorphism<'_, V, W, Q, C> {
    fn max_arity(&self) -> usize {
        self.0.arity
    }
    fn component(&self, word: &[W]) -> LinComb<V> {
        self.0.f_word(word)
    }
}

impl<V: Key, W: Key, Q: LInfty<V>, C: Contraction<V, W>> Morphism<V, W> for GMorphism<'_, V, W, Q, C> {
    fn max_arity(&self) -> usize {
        self.0.arity
    }
    fn component(&self, word: &[V]) -> LinComb<W> {
        self.0.g_word(word)
    }
}
