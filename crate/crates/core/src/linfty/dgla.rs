use crate::forms::{d_mono, mono_mul, FormKey};
use crate::lie::LieAlgebra;
use crate::linear::{BasisKey, Key, LinComb};
use crate::scalar::Scalar;

use super::{bracket_unsorted, LInfty};

/// A Lie algebra concentrated in degree 0, as an L∞ structure:
/// `q₂(eᵢ, eⱼ) = −[eᵢ, eⱼ]`.
pub struct LieLInfty {
    pub lie: LieAlgebra,
}

impl LieLInfty {
    pub fn new(lie: LieAlgebra) -> Self {
        LieLInfty { lie }
    }

    pub fn key(i: usize) -> BasisKey {
        BasisKey::new(i, 0)
    }

    pub fn basis(&self) -> Vec<BasisKey> {
        (0..self.lie.dim()).map(Self::key).collect()
    }

    pub fn to_comb(v: &[Scalar]) -> LinComb<BasisKey> {
        LinComb::from_terms(v.iter().enumerate().map(|(i, c)| (Self::key(i), c.clone())))
    }

    pub fn to_vec(&self, x: &LinComb<BasisKey>) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.lie.dim()];
        for (k, c) in x.iter() {
            v[k.idx()] = c.clone();
        }
        v
    }
}

impl LInfty<BasisKey> for LieLInfty {
    fn max_arity(&self) -> usize {
        2
    }

    fn bracket(&self, word: &[BasisKey]) -> LinComb<BasisKey> {
        if word.len() != 2 {
            return LinComb::zero();
        }
        let mut out = LinComb::zero();
        for (k, c) in self.lie.basis_bracket(word[0].idx(), word[1].idx()) {
            out.add_term(Self::key(*k), &-c);
        }
        out
    }
}

/// Basis element `l ⊗ f` of `V ⊗ Ω` for a polynomial form monomial `f`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TKey<K> {
    pub l: K,
    pub f: FormKey,
}

impl<K: Key> Key for TKey<K> {
    fn degree(&self) -> i32 {
        self.l.degree() + self.f.degree()
    }
}

/// `V ⊗ Ω` for an L∞ algebra `V` and polynomial forms `Ω` (on a simplex or
/// the line): `q_n((vᵢ ⊗ aᵢ)) = (−1)^{Σ_{i<j}|aᵢ|‖vⱼ‖} q_n(v) ⊗ a₁⋯a_n`,
/// plus `(−1)^{|v|} v ⊗ da` in `q₁`, and `q₀ ↦ q₀ ⊗ 1`.
pub struct TensorForms<Q> {
    pub q: Q,
}

impl<Q> TensorForms<Q> {
    pub fn new(q: Q) -> Self {
        TensorForms { q }
    }
}

/// `v ⊗ a` for a linear combination `v` and form `a`.
pub fn tensor_comb<K: Key>(v: &LinComb<K>, a: &LinComb<FormKey>) -> LinComb<TKey<K>> {
    let mut out = LinComb::zero();
    for (l, c) in v.iter() {
        for (f, d) in a.iter() {
            out.add_term(TKey { l: *l, f: *f }, &(c * d));
        }
    }
    out
}

impl<K: Key, Q: LInfty<K>> LInfty<TKey<K>> for TensorForms<Q> {
    fn max_arity(&self) -> usize {
        self.q.max_arity()
    }

    fn is_curved(&self) -> bool {
        self.q.is_curved()
    }

    fn bracket(&self, word: &[TKey<K>]) -> LinComb<TKey<K>> {
        let n = word.len();
        if n == 0 {
            let c = self.q.bracket(&[]);
            return c.relabel(|l| TKey { l: *l, f: FormKey::ONE });
        }
        let mut neg = false;
        let mut form = FormKey::ONE;
        for (i, w) in word.iter().enumerate() {
            match mono_mul(&form, &w.f) {
                Some((f, s)) => {
                    form = f;
                    neg ^= s;
                }
                None => return self.tail(word),
            }
            let fd = w.f.degree();
            if fd % 2 != 0 {
                for later in &word[i + 1..] {
                    if later.l.shifted_odd() {
                        neg = !neg;
                    }
                }
            }
        }
        let ls: Vec<K> = word.iter().map(|w| w.l).collect();
        let v = bracket_unsorted(&self.q, &ls);
        let mut out = LinComb::zero();
        for (l, c) in v.iter() {
            out.add_term(TKey { l: *l, f: form }, &if neg { -c } else { c.clone() });
        }
        out.add_assign(&self.tail(word));
        out
    }
}

impl<Q> TensorForms<Q> {
    /// The `(−1)^{|v|} v ⊗ da` part of `q₁`.
    fn tail<K: Key>(&self, word: &[TKey<K>]) -> LinComb<TKey<K>> {
        if word.len() != 1 {
            return LinComb::zero();
        }
        let w = word[0];
        let da = d_mono(&w.f);
        let sign = if w.l.degree().rem_euclid(2) == 1 { -Scalar::one() } else { Scalar::one() };
        let mut out = LinComb::zero();
        for (f, c) in da.iter() {
            out.add_term(TKey { l: w.l, f: *f }, &(c * &sign));
        }
        out
    }
}

/// A finite-dimensional graded-commutative unital dg algebra.
#[derive(Clone, Debug)]
pub struct DgAlgebra {
    pub names: Vec<String>,
    pub degrees: Vec<i32>,
    /// `mult[r * dim + s]` = coefficients of `a_r a_s`.
    mult: Vec<Vec<(usize, Scalar)>>,
    d: Vec<Vec<(usize, Scalar)>>,
}

impl DgAlgebra {
    /// `products` lists `a_r a_s` for `r ≤ s` (the unit at index 0 is implicit);
    /// `diff` lists `d a_r`.
    pub fn new(
        names: Vec<String>,
        degrees: Vec<i32>,
        products: &[(usize, usize, usize, Scalar)],
        diff: &[(usize, usize, Scalar)],
    ) -> crate::error::Result<Self> {
        let n = names.len();
        let mut mult = vec![Vec::new(); n * n];
        for r in 0..n {
            mult[r] = vec![(r, Scalar::one())];
            mult[r * n] = vec![(r, Scalar::one())];
        }
        for (r, s, t, c) in products {
            if *r == 0 || *s == 0 {
                continue;
            }
            mult[r * n + s].push((*t, c.clone()));
            if r != s {
                let sign = if degrees[*r] * degrees[*s] % 2 != 0 { -c.clone() } else { c.clone() };
                mult[s * n + r].push((*t, sign));
            }
        }
        let mut d = vec![Vec::new(); n];
        for (r, t, c) in diff {
            d[*r].push((*t, c.clone()));
        }
        let a = DgAlgebra { names, degrees, mult, d };
        let report = a.check();
        if !report.is_empty() {
            return Err(crate::error::Error::Invariant(report.join("; ")));
        }
        Ok(a)
    }

    /// `⟨1, u, e, ue⟩` with `|u| = 0`, `|e| = 1`, `u² = e² = 0`, `du = ue`.
    pub fn gauge_example() -> Self {
        let s1 = Scalar::one();
        DgAlgebra::new(
            vec!["1".into(), "u".into(), "e".into(), "ue".into()],
            vec![0, 0, 1, 1],
            &[(1, 2, 3, s1.clone())],
            &[(1, 3, s1)],
        )
        .unwrap()
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn mul_basis(&self, r: usize, s: usize) -> &[(usize, Scalar)] {
        &self.mult[r * self.dim() + s]
    }

    pub fn d_basis(&self, r: usize) -> &[(usize, Scalar)] {
        &self.d[r]
    }

    fn mul_vec(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim()];
        for (r, a) in x.iter().enumerate() {
            for (s, b) in y.iter().enumerate() {
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                for (t, c) in self.mul_basis(r, s) {
                    out[*t] += &(a * b) * c;
                }
            }
        }
        out
    }

    fn d_vec(&self, x: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim()];
        for (r, a) in x.iter().enumerate() {
            for (t, c) in &self.d[r] {
                out[*t] += a * c;
            }
        }
        out
    }

    /// Associativity, graded commutativity, degree bookkeeping, `d² = 0`
    /// and the Leibniz rule on basis elements.
    pub fn check(&self) -> Vec<String> {
        let n = self.dim();
        let e = |i: usize| crate::lie::unit_vector(n, i);
        let mut out = Vec::new();
        for r in 0..n {
            for (t, _) in &self.d[r] {
                if self.degrees[*t] != self.degrees[r] + 1 {
                    out.push(format!("d{} has the wrong degree", self.names[r]));
                }
            }
            if self.d_vec(&self.d_vec(&e(r))).iter().any(|c| !c.is_zero()) {
                out.push(format!("d² ≠ 0 on {}", self.names[r]));
            }
            for s in 0..n {
                let rs = self.mul_vec(&e(r), &e(s));
                for (t, c) in rs.iter().enumerate() {
                    if !c.is_zero() && self.degrees[t] != self.degrees[r] + self.degrees[s] {
                        out.push(format!("{}·{} has the wrong degree", self.names[r], self.names[s]));
                    }
                }
                let sign = self.degrees[r] * self.degrees[s] % 2 != 0;
                let sr = self.mul_vec(&e(s), &e(r));
                let sr = if sign { crate::lie::vneg(&sr) } else { sr };
                if rs != sr {
                    out.push(format!("{}·{} is not graded-commutative", self.names[r], self.names[s]));
                }
                let mut leib = self.mul_vec(&self.d_vec(&e(r)), &e(s));
                let tail = self.mul_vec(&e(r), &self.d_vec(&e(s)));
                let sg = if self.degrees[r] % 2 != 0 { -Scalar::one() } else { Scalar::one() };
                crate::lie::vaxpy(&mut leib, &sg, &tail);
                if self.d_vec(&rs) != leib {
                    out.push(format!("Leibniz fails on {}·{}", self.names[r], self.names[s]));
                }
                for t in 0..n {
                    let left = self.mul_vec(&rs, &e(t));
                    let right = self.mul_vec(&e(r), &self.mul_vec(&e(s), &e(t)));
                    if left != right {
                        out.push(format!("associativity fails on {}, {}, {}", self.names[r], self.names[s], self.names[t]));
                    }
                }
            }
        }
        out
    }
}

/// `g ⊗ A` for a Lie algebra `g` in degree 0 and a dg algebra `A`:
/// `[x⊗a, y⊗b] = [x,y]⊗ab`, `d(x⊗a) = x⊗da`. Basis index `i·dim A + r`.
pub struct Dgla {
    pub lie: LieAlgebra,
    pub alg: DgAlgebra,
}

impl Dgla {
    pub fn new(lie: LieAlgebra, alg: DgAlgebra) -> Self {
        Dgla { lie, alg }
    }

    pub fn dim(&self) -> usize {
        self.lie.dim() * self.alg.dim()
    }

    pub fn key(&self, i: usize, r: usize) -> BasisKey {
        BasisKey::new(i * self.alg.dim() + r, self.alg.degrees[r])
    }

    fn split(&self, k: &BasisKey) -> (usize, usize) {
        (k.idx() / self.alg.dim(), k.idx() % self.alg.dim())
    }

    pub fn basis(&self) -> Vec<BasisKey> {
        (0..self.lie.dim()).flat_map(|i| (0..self.alg.dim()).map(move |r| (i, r))).map(|(i, r)| self.key(i, r)).collect()
    }

    pub fn name(&self, k: &BasisKey) -> String {
        let (i, r) = self.split(k);
        format!("{}⊗{}", self.lie.names()[i], self.alg.names[r])
    }

    /// The unshifted bracket on basis elements.
    pub fn lie_bracket(&self, a: &BasisKey, b: &BasisKey) -> LinComb<BasisKey> {
        let (i, r) = self.split(a);
        let (j, s) = self.split(b);
        let mut out = LinComb::zero();
        for (t, c) in self.alg.mul_basis(r, s) {
            for (k, e) in self.lie.basis_bracket(i, j) {
                out.add_term(self.key(*k, *t), &(c * e));
            }
        }
        out
    }

    /// Nilpotency class of the underlying graded Lie algebra (ignoring `d`):
    /// the largest `i` with `γ_i ≠ 0`.
    pub fn nilpotency_class(&self) -> usize {
        let mut level: Vec<BasisKey> = self.basis();
        let mut span: Vec<LinComb<BasisKey>> = level.iter().map(|k| LinComb::basis(*k)).collect();
        let mut class = 1;
        for _ in 0..self.dim() + 1 {
            let mut next = Vec::new();
            for x in &span {
                for b in &level {
                    let mut v = LinComb::zero();
                    for (k, c) in x.iter() {
                        v.add_scaled(&self.lie_bracket(b, k), c);
                    }
                    if !v.is_zero() {
                        next.push(v);
                    }
                }
            }
            if next.is_empty() {
                return class;
            }
            class += 1;
            span = reduce_span(next);
            level = self.basis();
        }
        class
    }
}

fn reduce_span(vs: Vec<LinComb<BasisKey>>) -> Vec<LinComb<BasisKey>> {
    let mut keys: Vec<BasisKey> = vs.iter().flat_map(|v| v.keys().copied()).collect();
    keys.sort();
    keys.dedup();
    let rows: Vec<Vec<Scalar>> = vs.iter().map(|v| keys.iter().map(|k| v.coeff(k)).collect()).collect();
    crate::lie::row_basis(&rows, keys.len())
        .into_iter()
        .map(|r| LinComb::from_terms(keys.iter().copied().zip(r)))
        .collect()
}

impl LInfty<BasisKey> for Dgla {
    fn max_arity(&self) -> usize {
        2
    }

    fn bracket(&self, word: &[BasisKey]) -> LinComb<BasisKey> {
        match word {
            [a] => {
                let (i, r) = self.split(a);
                LinComb::from_terms(self.alg.d_basis(r).iter().map(|(t, c)| (self.key(i, *t), c.clone())))
            }
            [a, b] => {
                let v = self.lie_bracket(a, b);
                if a.degree().rem_euclid(2) == 0 {
                    -v
                } else {
                    v
                }
            }
            _ => LinComb::zero(),
        }
    }
}
