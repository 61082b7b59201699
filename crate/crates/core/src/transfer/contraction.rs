use crate::linear::{Key, LinComb};

/// Contraction data `(f, g, K)` between `(V, d_V)` and `(W, d_W)` with the
/// convention `K d_V + d_V K = f g − id_V`, `g f = id_W`,
/// `K f = K² = g K = 0`.
pub trait Contraction<V: Key, W: Key>: Send + Sync {
    fn f(&self, w: &W) -> LinComb<V>;
    fn g(&self, v: &V) -> LinComb<W>;
    fn k(&self, v: &V) -> LinComb<V>;
    fn dv(&self, v: &V) -> LinComb<V>;
    fn dw(&self, w: &W) -> LinComb<W>;
}

pub fn f_lin<V: Key, W: Key, C: Contraction<V, W> + ?Sized>(c: &C, x: &LinComb<W>) -> LinComb<V> {
    x.map(|w| c.f(w))
}

pub fn g_lin<V: Key, W: Key, C: Contraction<V, W> + ?Sized>(c: &C, x: &LinComb<V>) -> LinComb<W> {
    x.map(|v| c.g(v))
}

pub fn k_lin<V: Key, W: Key, C: Contraction<V, W> + ?Sized>(c: &C, x: &LinComb<V>) -> LinComb<V> {
    x.map(|v| c.k(v))
}

pub fn dv_lin<V: Key, W: Key, C: Contraction<V, W> + ?Sized>(c: &C, x: &LinComb<V>) -> LinComb<V> {
    x.map(|v| c.dv(v))
}

pub fn dw_lin<V: Key, W: Key, C: Contraction<V, W> + ?Sized>(c: &C, x: &LinComb<W>) -> LinComb<W> {
    x.map(|w| c.dw(w))
}

/// Checks the five contraction identities on the given basis elements.
pub fn check_contraction<V: Key, W: Key, C: Contraction<V, W> + ?Sized>(c: &C, basis_v: &[V], basis_w: &[W]) -> Vec<String> {
    let mut report = Vec::new();
    for w in basis_w {
        let fw = c.f(w);
        if g_lin(c, &fw) != LinComb::basis(*w) {
            report.push(format!("gf ≠ id on {w:?}"));
        }
        if !k_lin(c, &fw).is_zero() {
            report.push(format!("Kf ≠ 0 on {w:?}"));
        }
        if f_lin(c, &c.dw(w)) != dv_lin(c, &fw) {
            report.push(format!("f is not a chain map on {w:?}"));
        }
    }
    for v in basis_v {
        let kv = c.k(v);
        if !k_lin(c, &kv).is_zero() {
            report.push(format!("K² ≠ 0 on {v:?}"));
        }
        if !g_lin(c, &kv).is_zero() {
            report.push(format!("gK ≠ 0 on {v:?}"));
        }
        let lhs = k_lin(c, &c.dv(v)) + dv_lin(c, &kv);
        let rhs = f_lin(c, &c.g(v)) - LinComb::basis(*v);
        if lhs != rhs {
            report.push(format!("Kd + dK ≠ fg − id on {v:?}"));
        }
        if g_lin(c, &c.dv(v)) != dw_lin(c, &c.g(v)) {
            report.push(format!("g is not a chain map on {v:?}"));
        }
    }
    report
}

/// `W = V`, `f = g = id`, `K = 0`, with a given differential.
pub struct IdentityContraction<F>(pub F);

impl<K: Key, F: Fn(&K) -> LinComb<K> + Send + Sync> Contraction<K, K> for IdentityContraction<F> {
    fn f(&self, w: &K) -> LinComb<K> {
        LinComb::basis(*w)
    }
    fn g(&self, v: &K) -> LinComb<K> {
        LinComb::basis(*v)
    }
    fn k(&self, _: &K) -> LinComb<K> {
        LinComb::zero()
    }
    fn dv(&self, v: &K) -> LinComb<K> {
        (self.0)(v)
    }
    fn dw(&self, w: &K) -> LinComb<K> {
        (self.0)(w)
    }
}
