use crate::forms::{faces_of_dim, integrate_face, whitney, Form};
use crate::linear::{Key, LinComb};
use crate::scalar::Scalar;

/// Basis element `l ⊗ 1_σ` of `C*(Δ_n; L)`; `face` is the vertex bitmask of `σ`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CKey<K> {
    pub l: K,
    pub face: u8,
}

impl<K: Key> Key for CKey<K> {
    fn degree(&self) -> i32 {
        self.l.degree() + self.face.count_ones() as i32 - 1
    }
}

pub type Cochain<K> = LinComb<CKey<K>>;

pub fn face_mask(face: &[usize]) -> u8 {
    face.iter().fold(0u8, |m, &v| m | (1 << v))
}

pub fn face_vertices(mask: u8) -> Vec<usize> {
    (0..8).filter(|v| mask & (1 << v) != 0).collect()
}

/// `(dα)_σ = Σ_i (−1)^i α_{∂_iσ}` on the indicator of `face` inside `Δ_n`.
pub fn coboundary_face(n: usize, face: u8) -> Vec<(u8, bool)> {
    let mut out = Vec::new();
    for v in 0..=n {
        if face & (1 << v) != 0 {
            continue;
        }
        let pos = (face & ((1u8 << v) - 1)).count_ones();
        out.push((face | (1 << v), pos % 2 == 1));
    }
    out
}

/// Cochain differential with coefficients in `L`, where `d_L` is `base_d`:
/// `d(l ⊗ 1_σ) = d_L l ⊗ 1_σ + (−1)^{|l|} l ⊗ δ1_σ`.
pub fn cochain_diff<K: Key>(n: usize, a: &Cochain<K>, base_d: &dyn Fn(&K) -> LinComb<K>) -> Cochain<K> {
    let mut out = LinComb::zero();
    for (k, c) in a.iter() {
        for (l, e) in base_d(&k.l).iter() {
            out.add_term(CKey { l: *l, face: k.face }, &(c * e));
        }
        let odd = k.l.degree().rem_euclid(2) == 1;
        for (f, neg) in coboundary_face(n, k.face) {
            let s = if neg ^ odd { -c.clone() } else { c.clone() };
            out.add_term(CKey { l: k.l, face: f }, &s);
        }
    }
    out
}

/// The value of a cochain on a face, as an element of `L`.
pub fn value_on<K: Key>(a: &Cochain<K>, face: &[usize]) -> LinComb<K> {
    let m = face_mask(face);
    let mut out = LinComb::zero();
    for (k, c) in a.iter() {
        if k.face == m {
            out.add_term(k.l, c);
        }
    }
    out
}

/// Places `x` on `face`.
pub fn on_face<K: Key>(x: &LinComb<K>, face: &[usize]) -> Cochain<K> {
    let m = face_mask(face);
    x.relabel(|l| CKey { l: *l, face: m })
}

/// Whitney map on a scalar cochain given as face-mask coefficients.
pub fn whitney_scalar(n: usize, values: &[(u8, Scalar)]) -> Form {
    let mut out = Form::zero();
    for (m, c) in values {
        out.add_scaled(&whitney(n, &face_vertices(*m)), c);
    }
    out
}

/// Integration of a form over every face of the matching dimension.
pub fn integrate_scalar(n: usize, a: &Form) -> Vec<(u8, Scalar)> {
    let mut degs: Vec<usize> = a.keys().map(|k| k.degree() as usize).collect();
    degs.sort();
    degs.dedup();
    let mut out = Vec::new();
    for k in degs {
        if k > n {
            continue;
        }
        let part = a.filter(|f| f.degree() as usize == k);
        for face in faces_of_dim(n, k) {
            let v = integrate_face(&part, n, &face);
            if !v.is_zero() {
                out.push((face_mask(&face), v));
            }
        }
    }
    out
}
