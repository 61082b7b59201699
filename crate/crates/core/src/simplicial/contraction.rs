use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::forms::{d_mono, dupont, whitney, Form, FormKey};
use crate::linear::{Key, LinComb};
use crate::linfty::TKey;
use crate::scalar::Scalar;
use crate::transfer::Contraction;

use super::cochain::{face_vertices, integrate_scalar, CKey};

pub type BaseDiff<K> = Arc<dyn Fn(&K) -> LinComb<K> + Send + Sync>;

/// A coefficient space with zero differential.
pub fn no_diff<K: Key>() -> BaseDiff<K> {
    Arc::new(|_| LinComb::zero())
}

fn koszul<K: Key>(l: &K, c: Scalar) -> Scalar {
    if l.degree().rem_euclid(2) == 1 {
        -c
    } else {
        c
    }
}

/// `(E, I, K)` between `Ω*(Δ_n) ⊗ L` and `C*(Δ_n) ⊗ L`, with `K = −s_n`
/// (Dupont's operator satisfies `ds + sd = id − EI`).
pub struct SimplexContraction<K: Key> {
    pub n: usize,
    base_d: BaseDiff<K>,
    dupont_cache: RwLock<HashMap<FormKey, Form>>,
    integral_cache: RwLock<HashMap<FormKey, Vec<(u8, Scalar)>>>,
    whitney_cache: RwLock<HashMap<u8, Form>>,
}

impl<K: Key> SimplexContraction<K> {
    pub fn new(n: usize, base_d: BaseDiff<K>) -> Self {
        SimplexContraction {
            n,
            base_d,
            dupont_cache: RwLock::new(HashMap::new()),
            integral_cache: RwLock::new(HashMap::new()),
            whitney_cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn base_d(&self) -> &BaseDiff<K> {
        &self.base_d
    }

    fn cached<A: Copy + Eq + std::hash::Hash, B: Clone>(cache: &RwLock<HashMap<A, B>>, key: A, make: impl FnOnce() -> B) -> B {
        if let Some(v) = cache.read().unwrap().get(&key) {
            return v.clone();
        }
        let v = make();
        cache.write().unwrap().insert(key, v.clone());
        v
    }

    pub fn whitney_face(&self, face: u8) -> Form {
        Self::cached(&self.whitney_cache, face, || whitney(self.n, &face_vertices(face)))
    }

    pub fn dupont_mono(&self, f: FormKey) -> Form {
        Self::cached(&self.dupont_cache, f, || dupont(self.n, &Form::basis(f)))
    }

    pub fn integral_mono(&self, f: FormKey) -> Vec<(u8, Scalar)> {
        Self::cached(&self.integral_cache, f, || integrate_scalar(self.n, &Form::basis(f)))
    }
}

impl<K: Key> Contraction<TKey<K>, CKey<K>> for SimplexContraction<K> {
    fn f(&self, w: &CKey<K>) -> LinComb<TKey<K>> {
        self.whitney_face(w.face).relabel(|f| TKey { l: w.l, f: *f })
    }

    fn g(&self, v: &TKey<K>) -> LinComb<CKey<K>> {
        LinComb::from_terms(self.integral_mono(v.f).into_iter().map(|(m, c)| (CKey { l: v.l, face: m }, c)))
    }

    fn k(&self, v: &TKey<K>) -> LinComb<TKey<K>> {
        let mut out = LinComb::zero();
        for (f, c) in self.dupont_mono(v.f).iter() {
            out.add_term(TKey { l: v.l, f: *f }, &koszul(&v.l, c.clone()));
        }
        out
    }

    fn dv(&self, v: &TKey<K>) -> LinComb<TKey<K>> {
        let mut out = LinComb::zero();
        for (l, c) in (self.base_d)(&v.l).iter() {
            out.add_term(TKey { l: *l, f: v.f }, c);
        }
        for (f, c) in d_mono(&v.f).iter() {
            out.add_term(TKey { l: v.l, f: *f }, &koszul(&v.l, c.clone()));
        }
        out
    }

    fn dw(&self, w: &CKey<K>) -> LinComb<CKey<K>> {
        super::cochain::cochain_diff(self.n, &LinComb::basis(*w), &*self.base_d)
    }
}

/// `(π*, e_i*, −h^i)` between `C*(Δ_n) ⊗ L` and `L`, where
/// `h^i(α)_{i₀…i_k} = (−1)^j α_{i₀…i_{j−1} i i_j…i_k}` (zero when `i` is a vertex).
pub struct HornContraction<K: Key> {
    pub n: usize,
    pub vertex: usize,
    base_d: BaseDiff<K>,
}

impl<K: Key> HornContraction<K> {
    pub fn new(n: usize, vertex: usize, base_d: BaseDiff<K>) -> Self {
        assert!(vertex <= n);
        HornContraction { n, vertex, base_d }
    }

    /// `h^i` on a basis cochain.
    pub fn h(&self, v: &CKey<K>) -> LinComb<CKey<K>> {
        let bit = 1u8 << self.vertex;
        if v.face & bit == 0 || v.face.count_ones() < 2 {
            return LinComb::zero();
        }
        let j = (v.face & (bit - 1)).count_ones();
        let c = if j % 2 == 1 { -Scalar::one() } else { Scalar::one() };
        LinComb::term(CKey { l: v.l, face: v.face & !bit }, koszul(&v.l, c))
    }
}

impl<K: Key> Contraction<CKey<K>, K> for HornContraction<K> {
    fn f(&self, w: &K) -> LinComb<CKey<K>> {
        LinComb::from_terms((0..=self.n).map(|v| (CKey { l: *w, face: 1 << v }, Scalar::one())))
    }

    fn g(&self, v: &CKey<K>) -> LinComb<K> {
        if v.face == 1 << self.vertex {
            LinComb::basis(v.l)
        } else {
            LinComb::zero()
        }
    }

    fn k(&self, v: &CKey<K>) -> LinComb<CKey<K>> {
        -self.h(v)
    }

    fn dv(&self, v: &CKey<K>) -> LinComb<CKey<K>> {
        super::cochain::cochain_diff(self.n, &LinComb::basis(*v), &*self.base_d)
    }

    fn dw(&self, w: &K) -> LinComb<K> {
        (self.base_d)(w)
    }
}

/// Every basis cochain `l ⊗ 1_σ` on `Δ_n` for the given coefficient keys.
pub fn cochain_basis<K: Key>(n: usize, coeffs: &[K]) -> Vec<CKey<K>> {
    let mut out = Vec::new();
    for m in 1u8..(1 << (n + 1)) {
        for l in coeffs {
            out.push(CKey { l: *l, face: m });
        }
    }
    out
}

/// Form monomials on Δ_n of polynomial degree `≤ p`, every exterior part.
pub fn form_monomials(n: usize, p: u32) -> Vec<FormKey> {
    let mut out = Vec::new();
    let mut exps = [0u8; crate::forms::MAX_DIM];
    fn rec(i: usize, n: usize, left: u32, exps: &mut [u8; crate::forms::MAX_DIM], out: &mut Vec<[u8; crate::forms::MAX_DIM]>) {
        if i == n {
            out.push(*exps);
            return;
        }
        for e in 0..=left {
            exps[i] = e as u8;
            rec(i + 1, n, left - e, exps, out);
        }
        exps[i] = 0;
    }
    let mut all = Vec::new();
    rec(0, n, p, &mut exps, &mut all);
    for e in all {
        for mask in 0u8..(1 << n) {
            out.push(FormKey { exps: e, mask });
        }
    }
    out
}

