//! Graded linear algebra on keyed bases.
//!
//! A basis element is a [`Key`]; it knows its (unshifted) degree. Elements are
//! finite linear combinations [`LinComb`]. Multilinear maps are evaluated on
//! words of keys, and graded-symmetric tensors on the shifted space `V[1]` are
//! stored as [`SymTensor`]s whose words are kept in canonical sorted order.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::hash::Hash;
use std::ops::{Add, Neg, Sub};

use crate::scalar::Scalar;

pub trait Key: Copy + Ord + Hash + Debug + Send + Sync + 'static {
    /// Degree in the unshifted space.
    fn degree(&self) -> i32;

    /// Degree in `V[1]`.
    fn shifted(&self) -> i32 {
        self.degree() - 1
    }

    fn shifted_odd(&self) -> bool {
        self.shifted().rem_euclid(2) == 1
    }
}

/// Basis element of a finite graded space: an index together with its degree.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct BasisKey {
    pub index: u32,
    pub deg: i16,
}

impl BasisKey {
    pub fn new(index: usize, deg: i32) -> Self {
        BasisKey { index: index as u32, deg: deg as i16 }
    }

    pub fn idx(&self) -> usize {
        self.index as usize
    }
}

impl Key for BasisKey {
    fn degree(&self) -> i32 {
        self.deg as i32
    }
}

/// Finite linear combination with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinComb<K: Ord>(BTreeMap<K, Scalar>);

impl<K: Key> Default for LinComb<K> {
    fn default() -> Self {
        LinComb(BTreeMap::new())
    }
}

impl<K: Key> Debug for LinComb<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.0 {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}·{k:?}")?;
        }
        Ok(())
    }
}

impl<K: Key> LinComb<K> {
    pub fn zero() -> Self {
        LinComb(BTreeMap::new())
    }

    pub fn basis(k: K) -> Self {
        Self::term(k, Scalar::one())
    }

    pub fn term(k: K, c: Scalar) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(k, c);
        }
        LinComb(m)
    }

    pub fn from_terms<I: IntoIterator<Item = (K, Scalar)>>(it: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in it {
            out.add_term(k, &c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Scalar)> {
        self.0.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.0.keys()
    }

    pub fn coeff(&self, k: &K) -> Scalar {
        self.0.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, k: K, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let remove = match self.0.get_mut(&k) {
            Some(v) => {
                *v += c;
                v.is_zero()
            }
            None => {
                self.0.insert(k, c.clone());
                false
            }
        };
        if remove {
            self.0.remove(&k);
        }
    }

    /// `self += c · other`
    pub fn add_scaled(&mut self, other: &LinComb<K>, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.0 {
            self.add_term(*k, &(v * c));
        }
    }

    pub fn add_assign(&mut self, other: &LinComb<K>) {
        for (k, v) in &other.0 {
            self.add_term(*k, v);
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LinComb(self.0.iter().map(|(k, v)| (*k, v * c)).collect())
    }

    /// Linear extension of a map defined on basis keys.
    pub fn map<K2: Key, F: FnMut(&K) -> LinComb<K2>>(&self, mut f: F) -> LinComb<K2> {
        let mut out = LinComb::zero();
        for (k, c) in &self.0 {
            out.add_scaled(&f(k), c);
        }
        out
    }

    /// Relabel keys by an injective-or-not function; coefficients accumulate.
    pub fn relabel<K2: Key, F: FnMut(&K) -> K2>(&self, mut f: F) -> LinComb<K2> {
        let mut out = LinComb::zero();
        for (k, c) in &self.0 {
            out.add_term(f(k), c);
        }
        out
    }

    pub fn filter<F: FnMut(&K) -> bool>(&self, mut keep: F) -> Self {
        LinComb(self.0.iter().filter(|(k, _)| keep(k)).map(|(k, c)| (*k, c.clone())).collect())
    }

    /// The common degree of all terms, `None` for zero or inhomogeneous input.
    pub fn degree(&self) -> Option<i32> {
        let mut it = self.0.keys().map(|k| k.degree());
        let d = it.next()?;
        if it.all(|e| e == d) {
            Some(d)
        } else {
            None
        }
    }

    pub fn is_homogeneous_of(&self, d: i32) -> bool {
        self.0.keys().all(|k| k.degree() == d)
    }

    pub fn into_map(self) -> BTreeMap<K, Scalar> {
        self.0
    }
}

impl<K: Key> Add for LinComb<K> {
    type Output = LinComb<K>;
    fn add(mut self, rhs: LinComb<K>) -> LinComb<K> {
        self.add_assign(&rhs);
        self
    }
}

impl<K: Key> Add<&LinComb<K>> for &LinComb<K> {
    type Output = LinComb<K>;
    fn add(self, rhs: &LinComb<K>) -> LinComb<K> {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl<K: Key> Sub for LinComb<K> {
    type Output = LinComb<K>;
    fn sub(mut self, rhs: LinComb<K>) -> LinComb<K> {
        self.add_scaled(&rhs, &-Scalar::one());
        self
    }
}

impl<K: Key> Sub<&LinComb<K>> for &LinComb<K> {
    type Output = LinComb<K>;
    fn sub(self, rhs: &LinComb<K>) -> LinComb<K> {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Scalar::one());
        out
    }
}

impl<K: Key> Neg for LinComb<K> {
    type Output = LinComb<K>;
    fn neg(self) -> LinComb<K> {
        self.scaled(&-Scalar::one())
    }
}

impl<K: Key> Neg for &LinComb<K> {
    type Output = LinComb<K>;
    fn neg(self) -> LinComb<K> {
        self.scaled(&-Scalar::one())
    }
}

/// Koszul sign of reordering `word` into the order `perm` (new position `i`
/// holds old position `perm[i]`), in shifted degrees. `true` means negative.
pub fn reorder_sign<K: Key>(word: &[K], perm: &[usize]) -> bool {
    let mut neg = false;
    for i in 0..perm.len() {
        for j in (i + 1)..perm.len() {
            if perm[i] > perm[j] && word[perm[i]].shifted_odd() && word[perm[j]].shifted_odd() {
                neg = !neg;
            }
        }
    }
    neg
}

/// Sorts `word` into canonical order in place. Returns the Koszul sign
/// (`Some(true)` = negative) or `None` when the symmetric product vanishes
/// because a shifted-odd key repeats.
pub fn sort_word<K: Key>(word: &mut [K]) -> Option<bool> {
    let mut neg = false;
    for i in 1..word.len() {
        let mut j = i;
        while j > 0 && word[j - 1] > word[j] {
            if word[j - 1].shifted_odd() && word[j].shifted_odd() {
                neg = !neg;
            }
            word.swap(j - 1, j);
            j -= 1;
        }
    }
    for w in word.windows(2) {
        if w[0] == w[1] && w[0].shifted_odd() {
            return None;
        }
    }
    Some(neg)
}

pub fn signed(neg: bool, c: Scalar) -> Scalar {
    if neg {
        -c
    } else {
        c
    }
}

/// Element of the symmetric algebra `S(V[1])`: sorted words with coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct SymTensor<K: Ord>(BTreeMap<Vec<K>, Scalar>);

impl<K: Key> Default for SymTensor<K> {
    fn default() -> Self {
        SymTensor(BTreeMap::new())
    }
}

impl<K: Key> Debug for SymTensor<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map().entries(self.0.iter()).finish()
    }
}

impl<K: Key> SymTensor<K> {
    pub fn zero() -> Self {
        SymTensor(BTreeMap::new())
    }

    /// The unit `1 ∈ S^0`.
    pub fn unit() -> Self {
        let mut m = BTreeMap::new();
        m.insert(Vec::new(), Scalar::one());
        SymTensor(m)
    }

    /// Adds `c · w₁ ⊙ … ⊙ w_n` for an arbitrary (unsorted) word.
    pub fn add_word(&mut self, word: &[K], c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let mut w = word.to_vec();
        let Some(neg) = sort_word(&mut w) else { return };
        let c = signed(neg, c.clone());
        let remove = match self.0.get_mut(&w) {
            Some(v) => {
                *v += &c;
                v.is_zero()
            }
            None => {
                self.0.insert(w.clone(), c);
                false
            }
        };
        if remove {
            self.0.remove(&w);
        }
    }

    pub fn add_scaled(&mut self, other: &SymTensor<K>, c: &Scalar) {
        for (w, v) in &other.0 {
            self.add_sorted(w.clone(), &(v * c));
        }
    }

    fn add_sorted(&mut self, w: Vec<K>, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let remove = match self.0.get_mut(&w) {
            Some(v) => {
                *v += c;
                v.is_zero()
            }
            None => {
                self.0.insert(w.clone(), c.clone());
                false
            }
        };
        if remove {
            self.0.remove(&w);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<K>, &Scalar)> {
        self.0.iter()
    }

    /// `x₁ ⊙ … ⊙ x_n` expanded multilinearly.
    pub fn product_of(factors: &[&LinComb<K>]) -> Self {
        let mut acc = SymTensor::unit();
        for f in factors {
            acc = acc.times(f);
        }
        acc
    }

    /// `self ⊙ x`
    pub fn times(&self, x: &LinComb<K>) -> Self {
        let mut out = SymTensor::zero();
        for (w, c) in &self.0 {
            for (k, d) in x.iter() {
                let mut nw = Vec::with_capacity(w.len() + 1);
                nw.extend_from_slice(w);
                nw.push(*k);
                out.add_word(&nw, &(c * d));
            }
        }
        out
    }

    /// `x^{⊙n}`
    pub fn power(x: &LinComb<K>, n: usize) -> Self {
        let mut acc = SymTensor::unit();
        for _ in 0..n {
            acc = acc.times(x);
        }
        acc
    }

    /// Successive powers `x^{⊙0}, …, x^{⊙n}`.
    pub fn powers(x: &LinComb<K>, n: usize) -> Vec<Self> {
        let mut out = Vec::with_capacity(n + 1);
        out.push(SymTensor::unit());
        for i in 0..n {
            let next = out[i].times(x);
            out.push(next);
        }
        out
    }

    /// Applies a map defined on sorted words and sums the results linearly.
    pub fn apply<K2: Key, F: FnMut(&[K]) -> LinComb<K2>>(&self, mut f: F) -> LinComb<K2> {
        let mut out = LinComb::zero();
        for (w, c) in &self.0 {
            out.add_scaled(&f(w), c);
        }
        out
    }
}

/// All set partitions of `{0, …, n-1}`; blocks are increasing and ordered by
/// their least element.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut cur: Vec<Vec<usize>> = Vec::new();
    fn rec(i: usize, n: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..cur.len() {
            cur[b].push(i);
            rec(i + 1, n, cur, out);
            cur[b].pop();
        }
        cur.push(vec![i]);
        rec(i + 1, n, cur, out);
        cur.pop();
    }
    rec(0, n, &mut cur, &mut out);
    out
}

/// Sign of the unshuffle taking `word` to (the blocks concatenated in order).
pub fn partition_sign<K: Key>(word: &[K], blocks: &[Vec<usize>]) -> bool {
    let perm: Vec<usize> = blocks.iter().flatten().copied().collect();
    reorder_sign(word, &perm)
}

/// Subwords of a word picked by a bitmask.
pub fn pick<K: Key>(word: &[K], mask: u32) -> Vec<K> {
    word.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, k)| *k).collect()
}

/// Unshuffle sign for moving the positions in `mask` to the front.
pub fn mask_sign<K: Key>(word: &[K], mask: u32) -> bool {
    let mut perm: Vec<usize> = (0..word.len()).filter(|i| mask & (1 << i) != 0).collect();
    perm.extend((0..word.len()).filter(|i| mask & (1 << i) == 0));
    reorder_sign(word, &perm)
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// All permutations of `0..n` (Heap order is irrelevant to callers).
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn rec(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(k + 1, p, out);
            p.swap(k, i);
        }
    }
    rec(0, &mut p, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(i: usize, d: i32) -> BasisKey {
        BasisKey::new(i, d)
    }

    #[test]
    fn koszul_swap_sign() {
        // shifted degrees: deg 0 -> -1 (odd), deg 1 -> 0 (even)
        let a = k(0, 0);
        let b = k(1, 0);
        let mut w = vec![b, a];
        assert_eq!(sort_word(&mut w), Some(true));
        let mut w = vec![k(1, 1), a];
        assert_eq!(sort_word(&mut w), Some(false));
        let mut w = vec![a, a];
        assert_eq!(sort_word(&mut w), None);
        let mut w = vec![k(3, 1), k(3, 1)];
        assert_eq!(sort_word(&mut w), Some(false));
    }

    #[test]
    fn partitions_count_bell() {
        let bell = [1, 1, 2, 5, 15, 52];
        for (n, b) in bell.iter().enumerate() {
            assert_eq!(set_partitions(n).len(), *b);
        }
    }

    #[test]
    fn power_multinomials() {
        let x = LinComb::from_terms([(k(0, 1), Scalar::one()), (k(1, 1), Scalar::one())]);
        let p = SymTensor::power(&x, 2);
        let mut expect = SymTensor::zero();
        expect.add_word(&[k(0, 1), k(0, 1)], &Scalar::one());
        expect.add_word(&[k(0, 1), k(1, 1)], &Scalar::from_int(2));
        expect.add_word(&[k(1, 1), k(1, 1)], &Scalar::one());
        assert_eq!(p, expect);
        // odd elements square to zero
        let y = LinComb::from_terms([(k(0, 0), Scalar::one())]);
        assert!(SymTensor::power(&y, 2).is_zero());
    }
}
