//! Curved and uncurved L∞ structures in the symmetric convention on `V[1]`.
//!
//! A structure is a family of degree-one maps `q_n: S^n(V[1]) → V[1]`; it is
//! evaluated on canonically sorted words of basis keys (see
//! [`crate::linear::sort_word`]). `q_0` is the curvature. A DGLA `(L, d, [,])`
//! is packaged as `q₁ = d`, `q₂(v, w) = (−1)^{|v|−1}[v, w]`, so that the
//! Maurer-Cartan defect of a degree-one `x` is `dx + ½[x, x]`.
//!
//! With this convention `(Q∘Q)¹ = 0` on a one-letter word reads
//! `q₁(q₁ x) + q₂(q₀, x) = 0`; for a curved DGLA with curvature `C` this is
//! `d² = [C, −]`.

mod dgla;
pub mod line;
mod twist;

pub use dgla::{tensor_comb, DgAlgebra, Dgla, LieLInfty, TKey, TensorForms};
pub use twist::Twisted;

use std::collections::HashMap;
use std::sync::RwLock;

use rayon::prelude::*;

use crate::linear::{mask_sign, partition_sign, pick, set_partitions, signed, sort_word, Key, LinComb, SymTensor};
use crate::scalar::Scalar;

pub trait LInfty<K: Key>: Send + Sync {
    /// Largest `n` with `q_n` possibly nonzero.
    fn max_arity(&self) -> usize;

    fn is_curved(&self) -> bool {
        false
    }

    /// `q_n` on a sorted word of length `n`; the empty word gives `q₀`.
    fn bracket(&self, word: &[K]) -> LinComb<K>;
}

impl<K: Key, Q: LInfty<K> + ?Sized> LInfty<K> for &Q {
    fn max_arity(&self) -> usize {
        (**self).max_arity()
    }
    fn is_curved(&self) -> bool {
        (**self).is_curved()
    }
    fn bracket(&self, word: &[K]) -> LinComb<K> {
        (**self).bracket(word)
    }
}

impl<K: Key, Q: LInfty<K> + ?Sized> LInfty<K> for std::sync::Arc<Q> {
    fn max_arity(&self) -> usize {
        (**self).max_arity()
    }
    fn is_curved(&self) -> bool {
        (**self).is_curved()
    }
    fn bracket(&self, word: &[K]) -> LinComb<K> {
        (**self).bracket(word)
    }
}

/// `q` evaluated on an arbitrary (unsorted) word.
pub fn bracket_unsorted<K: Key, Q: LInfty<K> + ?Sized>(q: &Q, word: &[K]) -> LinComb<K> {
    let mut w = word.to_vec();
    match sort_word(&mut w) {
        None => LinComb::zero(),
        Some(neg) => {
            let v = q.bracket(&w);
            if neg {
                -v
            } else {
                v
            }
        }
    }
}

/// Linear extension of `q` to symmetric tensors.
pub fn apply_sym<K: Key, Q: LInfty<K> + ?Sized>(q: &Q, t: &SymTensor<K>) -> LinComb<K> {
    t.apply(|w| {
        if w.len() > q.max_arity() || (w.is_empty() && !q.is_curved()) {
            LinComb::zero()
        } else {
            q.bracket(w)
        }
    })
}

/// `q_n(x₁, …, x_n)`.
pub fn eval<K: Key, Q: LInfty<K> + ?Sized>(q: &Q, args: &[&LinComb<K>]) -> LinComb<K> {
    if args.len() > q.max_arity() {
        return LinComb::zero();
    }
    apply_sym(q, &SymTensor::product_of(args))
}

/// `Σ_n q_n(x^n) / n!`, including `q₀` when curved.
pub fn mc_defect<K: Key, Q: LInfty<K> + ?Sized>(q: &Q, x: &LinComb<K>) -> LinComb<K> {
    let mut out = LinComb::zero();
    let mut pow = SymTensor::unit();
    for n in 0..=q.max_arity() {
        if n > 0 {
            pow = pow.times(x);
            if pow.is_zero() {
                break;
            }
        }
        if n == 0 && !q.is_curved() {
            continue;
        }
        out.add_scaled(&apply_sym(q, &pow), &Scalar::inv_factorial(n));
    }
    out
}

/// `q_{1+|rest|}(y ⊙ rest)` for a linear combination `y` and a sorted word.
fn insert_eval<K: Key, Q: LInfty<K> + ?Sized>(q: &Q, y: &LinComb<K>, rest: &[K]) -> LinComb<K> {
    if rest.len() + 1 > q.max_arity() {
        return LinComb::zero();
    }
    let mut out = LinComb::zero();
    for (k, c) in y.iter() {
        let mut w = Vec::with_capacity(rest.len() + 1);
        w.push(*k);
        w.extend_from_slice(rest);
        out.add_scaled(&bracket_unsorted(q, &w), c);
    }
    out
}

/// `(Q∘Q)¹` on a sorted word: `Σ_A ε q(q(w_A) ⊙ w_rest)`.
pub fn jacobi_word<K: Key, Q: LInfty<K> + ?Sized>(q: &Q, word: &[K]) -> LinComb<K> {
    let n = word.len();
    let mut out = LinComb::zero();
    for mask in 0u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size == 0 && !q.is_curved() {
            continue;
        }
        if size > q.max_arity() {
            continue;
        }
        let inner = q.bracket(&pick(word, mask));
        if inner.is_zero() {
            continue;
        }
        let rest = pick(word, !mask & ((1u32 << n) - 1));
        let v = insert_eval(q, &inner, &rest);
        out.add_scaled(&v, &signed(mask_sign(word, mask), Scalar::one()));
    }
    out
}

/// All sorted words of length `lo..=hi` over `basis`, skipping those that
/// vanish in the symmetric algebra.
pub fn words<K: Key>(basis: &[K], lo: usize, hi: usize) -> Vec<Vec<K>> {
    let mut sorted = basis.to_vec();
    sorted.sort();
    sorted.dedup();
    let mut out = Vec::new();
    fn rec<K: Key>(b: &[K], start: usize, cur: &mut Vec<K>, lo: usize, hi: usize, out: &mut Vec<Vec<K>>) {
        if cur.len() >= lo {
            out.push(cur.clone());
        }
        if cur.len() == hi {
            return;
        }
        for i in start..b.len() {
            if let Some(last) = cur.last() {
                if *last == b[i] && b[i].shifted_odd() {
                    continue;
                }
            }
            cur.push(b[i]);
            rec(b, i, cur, lo, hi, out);
            cur.pop();
        }
    }
    rec(&sorted, 0, &mut Vec::new(), lo, hi, &mut out);
    out
}

pub type Report<K> = Vec<(Vec<K>, LinComb<K>)>;

/// Every nonzero component of `(Q∘Q)¹` on basis words of length `≤ bound`
/// (the empty word included when curved).
pub fn jacobi_check<K: Key, Q: LInfty<K> + ?Sized>(q: &Q, basis: &[K], bound: usize) -> Report<K> {
    let lo = if q.is_curved() { 0 } else { 1 };
    let ws = words(basis, lo, bound);
    let mut out: Report<K> = ws
        .par_iter()
        .filter_map(|w| {
            let v = jacobi_word(q, w);
            (!v.is_zero()).then(|| (w.clone(), v))
        })
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// Taylor components `g_n: S^n(V[1]) → W[1]` of a (possibly curved) morphism.
pub trait Morphism<K: Key, K2: Key>: Send + Sync {
    fn max_arity(&self) -> usize;

    fn has_constant(&self) -> bool {
        false
    }

    /// `g_n` on a sorted word; the empty word gives `g₀`.
    fn component(&self, word: &[K]) -> LinComb<K2>;
}

pub fn component_unsorted<K: Key, K2: Key, G: Morphism<K, K2> + ?Sized>(g: &G, word: &[K]) -> LinComb<K2> {
    if word.len() > g.max_arity() || (word.is_empty() && !g.has_constant()) {
        return LinComb::zero();
    }
    let mut w = word.to_vec();
    match sort_word(&mut w) {
        None => LinComb::zero(),
        Some(neg) => {
            let v = g.component(&w);
            if neg {
                -v
            } else {
                v
            }
        }
    }
}

pub fn morphism_apply_sym<K: Key, K2: Key, G: Morphism<K, K2> + ?Sized>(g: &G, t: &SymTensor<K>) -> LinComb<K2> {
    t.apply(|w| component_unsorted(g, w))
}

/// `G_*(x) = Σ_n g_n(x^n) / n!`.
pub fn pushforward<K: Key, K2: Key, G: Morphism<K, K2> + ?Sized>(g: &G, x: &LinComb<K>) -> LinComb<K2> {
    let mut out = LinComb::zero();
    let mut pow = SymTensor::unit();
    for n in 0..=g.max_arity() {
        if n > 0 {
            pow = pow.times(x);
            if pow.is_zero() {
                break;
            }
        }
        out.add_scaled(&morphism_apply_sym(g, &pow), &Scalar::inv_factorial(n));
    }
    out
}

/// `(R∘G)¹(w) = Σ_{unordered partitions} Σ_m ε r_{m+p}(g₀^m, g_{B₁}, …, g_{B_p}) / m!`.
///
/// The same formula computes the Taylor components of the composite `r • G`
/// of a Taylor sequence `r` with `G`.
pub fn compose_word<K: Key, K2: Key, G: Morphism<K, K2> + ?Sized, R: LInfty<K2> + ?Sized>(
    r: &R,
    g: &G,
    word: &[K],
) -> LinComb<K2> {
    let g0 = if g.has_constant() { g.component(&[]) } else { LinComb::zero() };
    let n = word.len();
    let mut out = LinComb::zero();
    let parts = if n == 0 { vec![vec![]] } else { set_partitions(n) };
    for blocks in parts {
        let p = blocks.len();
        if p > r.max_arity() {
            continue;
        }
        let neg = partition_sign(word, &blocks);
        let mut prod = SymTensor::unit();
        let mut zero = false;
        for b in &blocks {
            let sub: Vec<K> = b.iter().map(|&i| word[i]).collect();
            let v = component_unsorted(g, &sub);
            if v.is_zero() {
                zero = true;
                break;
            }
            prod = prod.times(&v);
        }
        if zero {
            continue;
        }
        let mut m = 0;
        while m + p <= r.max_arity() {
            out.add_scaled(&apply_sym(r, &prod), &signed(neg, Scalar::inv_factorial(m)));
            if g0.is_zero() {
                break;
            }
            prod = prod.times(&g0);
            if prod.is_zero() {
                break;
            }
            m += 1;
        }
    }
    out
}

/// `(G∘Q)¹(w) = Σ_A ε g(q(w_A) ⊙ w_rest)`.
pub fn precompose_word<K: Key, K2: Key, G: Morphism<K, K2> + ?Sized, Q: LInfty<K> + ?Sized>(
    g: &G,
    q: &Q,
    word: &[K],
) -> LinComb<K2> {
    let n = word.len();
    let mut out = LinComb::zero();
    for mask in 0u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if (size == 0 && !q.is_curved()) || size > q.max_arity() {
            continue;
        }
        let inner = q.bracket(&pick(word, mask));
        if inner.is_zero() {
            continue;
        }
        let rest = pick(word, !mask & ((1u32 << n) - 1));
        if rest.len() + 1 > g.max_arity() {
            continue;
        }
        let mut v = LinComb::zero();
        for (k, c) in inner.iter() {
            let mut w = Vec::with_capacity(rest.len() + 1);
            w.push(*k);
            w.extend_from_slice(&rest);
            v.add_scaled(&component_unsorted(g, &w), c);
        }
        out.add_scaled(&v, &signed(mask_sign(word, mask), Scalar::one()));
    }
    out
}

/// `(G∘Q − R∘G)¹` on a sorted word of the source.
pub fn morphism_defect<K: Key, K2: Key, G, Q, R>(g: &G, q: &Q, r: &R, word: &[K]) -> LinComb<K2>
where
    G: Morphism<K, K2> + ?Sized,
    Q: LInfty<K> + ?Sized,
    R: LInfty<K2> + ?Sized,
{
    precompose_word(g, q, word) - compose_word(r, g, word)
}

/// Every nonzero morphism defect on basis words of length `≤ bound`.
pub fn morphism_check<K: Key, K2: Key, G, Q, R>(g: &G, q: &Q, r: &R, basis: &[K], bound: usize) -> Vec<(Vec<K>, LinComb<K2>)>
where
    G: Morphism<K, K2> + ?Sized,
    Q: LInfty<K> + ?Sized,
    R: LInfty<K2> + ?Sized,
{
    let lo = if q.is_curved() || g.has_constant() { 0 } else { 1 };
    let ws = words(basis, lo, bound);
    let mut out: Vec<_> = ws
        .par_iter()
        .filter_map(|w| {
            let v = morphism_defect(g, q, r, w);
            (!v.is_zero()).then(|| (w.clone(), v))
        })
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

pub struct Identity;

impl<K: Key> Morphism<K, K> for Identity {
    fn max_arity(&self) -> usize {
        1
    }
    fn component(&self, word: &[K]) -> LinComb<K> {
        if word.len() == 1 {
            LinComb::basis(word[0])
        } else {
            LinComb::zero()
        }
    }
}

/// A strict morphism given by its linear part.
pub struct Strict<F>(pub F);

impl<K: Key, K2: Key, F: Fn(&K) -> LinComb<K2> + Send + Sync> Morphism<K, K2> for Strict<F> {
    fn max_arity(&self) -> usize {
        1
    }
    fn component(&self, word: &[K]) -> LinComb<K2> {
        if word.len() == 1 {
            (self.0)(&word[0])
        } else {
            LinComb::zero()
        }
    }
}

/// Caches bracket values of an inner structure per sorted word.
pub struct Memo<K: Key, Q> {
    inner: Q,
    cache: RwLock<HashMap<Vec<K>, LinComb<K>>>,
}

impl<K: Key, Q: LInfty<K>> Memo<K, Q> {
    pub fn new(inner: Q) -> Self {
        Memo { inner, cache: RwLock::new(HashMap::new()) }
    }

    pub fn inner(&self) -> &Q {
        &self.inner
    }
}

impl<K: Key, Q: LInfty<K>> LInfty<K> for Memo<K, Q> {
    fn max_arity(&self) -> usize {
        self.inner.max_arity()
    }
    fn is_curved(&self) -> bool {
        self.inner.is_curved()
    }
    fn bracket(&self, word: &[K]) -> LinComb<K> {
        if let Some(v) = self.cache.read().unwrap().get(word) {
            return v.clone();
        }
        let v = self.inner.bracket(word);
        self.cache.write().unwrap().insert(word.to_vec(), v.clone());
        v
    }
}

/// A structure given by explicit tables, used for small hand-built examples.
pub struct Table<K: Key> {
    pub curved: bool,
    pub arity: usize,
    pub entries: HashMap<Vec<K>, LinComb<K>>,
}

impl<K: Key> LInfty<K> for Table<K> {
    fn max_arity(&self) -> usize {
        self.arity
    }
    fn is_curved(&self) -> bool {
        self.curved
    }
    fn bracket(&self, word: &[K]) -> LinComb<K> {
        self.entries.get(word).cloned().unwrap_or_default()
    }
}
