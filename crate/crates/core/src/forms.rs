//! Polynomial differential forms on standard simplices.
//!
//! A form on Δ_n is written in the coordinates `t₁ … t_n`; the relations
//! `t₀ = 1 − Σ tᵢ`, `dt₀ = −Σ dtᵢ` are eliminated on construction, so the
//! stored representation is a normal form and equality is structural.
//! At most four coordinates are supported.

use crate::error::{Error, Result};
use crate::linear::{Key, LinComb};
use crate::scalar::Scalar;

pub const MAX_DIM: usize = 4;

/// Monomial `t^exps dt_mask` (bit `i-1` of `mask` stands for `dtᵢ`).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FormKey {
    pub exps: [u8; MAX_DIM],
    pub mask: u8,
}

impl FormKey {
    pub const ONE: FormKey = FormKey { exps: [0; MAX_DIM], mask: 0 };

    pub fn poly_degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }
}

impl Key for FormKey {
    fn degree(&self) -> i32 {
        self.mask.count_ones() as i32
    }
}

pub type Form = LinComb<FormKey>;

pub fn one() -> Form {
    Form::basis(FormKey::ONE)
}

pub fn constant(c: Scalar) -> Form {
    Form::term(FormKey::ONE, c)
}

/// Coordinate `tᵢ` on Δ_n, `0 ≤ i ≤ n`.
pub fn coord(n: usize, i: usize) -> Form {
    assert!(i <= n && n <= MAX_DIM);
    if i == 0 {
        let mut f = one();
        for j in 1..=n {
            f.add_term(coord_key(j), &-Scalar::one());
        }
        f
    } else {
        Form::basis(coord_key(i))
    }
}

fn coord_key(i: usize) -> FormKey {
    let mut k = FormKey::ONE;
    k.exps[i - 1] = 1;
    k
}

/// `dtᵢ` on Δ_n, `0 ≤ i ≤ n`.
pub fn dcoord(n: usize, i: usize) -> Form {
    assert!(i <= n && n <= MAX_DIM);
    if i == 0 {
        let mut f = Form::zero();
        for j in 1..=n {
            f.add_term(FormKey { exps: [0; MAX_DIM], mask: 1 << (j - 1) }, &-Scalar::one());
        }
        f
    } else {
        Form::basis(FormKey { exps: [0; MAX_DIM], mask: 1 << (i - 1) })
    }
}

/// Product of monomials; `None` if the exterior parts overlap.
pub fn mono_mul(a: &FormKey, b: &FormKey) -> Option<(FormKey, bool)> {
    if a.mask & b.mask != 0 {
        return None;
    }
    let mut exps = [0u8; MAX_DIM];
    for i in 0..MAX_DIM {
        exps[i] = a.exps[i] + b.exps[i];
    }
    let mut neg = false;
    for j in 0..MAX_DIM {
        if b.mask & (1 << j) != 0 {
            let above = (a.mask >> (j + 1)).count_ones();
            if above % 2 == 1 {
                neg = !neg;
            }
        }
    }
    Some((FormKey { exps, mask: a.mask | b.mask }, neg))
}

pub fn wedge(a: &Form, b: &Form) -> Form {
    let mut out = Form::zero();
    for (ka, ca) in a.iter() {
        for (kb, cb) in b.iter() {
            if let Some((k, neg)) = mono_mul(ka, kb) {
                let c = ca * cb;
                out.add_term(k, &if neg { -c } else { c });
            }
        }
    }
    out
}

pub fn d_mono(k: &FormKey) -> Form {
    let mut out = Form::zero();
    for i in 0..MAX_DIM {
        let m = k.exps[i];
        if m == 0 || k.mask & (1 << i) != 0 {
            continue;
        }
        let mut exps = k.exps;
        exps[i] -= 1;
        let below = (k.mask & ((1 << i) - 1)).count_ones();
        let c = Scalar::from_int(m as i64);
        out.add_term(
            FormKey { exps, mask: k.mask | (1 << i) },
            &if below % 2 == 1 { -c } else { c },
        );
    }
    out
}

pub fn d(a: &Form) -> Form {
    a.map(d_mono)
}

/// Pullback along the simplicial map Δ_k → Δ_n induced by the monotone vertex
/// map `phi: [k] → [n]`. Covers face inclusions and degeneracies.
pub fn pull_vertex_map(a: &Form, n: usize, phi: &[usize]) -> Form {
    let k = phi.len() - 1;
    assert!(n <= MAX_DIM && k <= MAX_DIM);
    let images: Vec<Form> = (0..=n)
        .map(|i| {
            let mut f = Form::zero();
            for (j, &p) in phi.iter().enumerate() {
                if p == i {
                    f.add_assign(&coord(k, j));
                }
            }
            f
        })
        .collect();
    substitute(a, n, &images)
}

/// Algebra homomorphism sending `tᵢ ↦ images[i]` (0-forms) and `dtᵢ ↦ d images[i]`.
/// `images[0]` is ignored; `t₀` is already eliminated.
pub fn substitute(a: &Form, n: usize, images: &[Form]) -> Form {
    let dimages: Vec<Form> = images.iter().map(d).collect();
    let mut out = Form::zero();
    for (key, c) in a.iter() {
        let mut term = constant(c.clone());
        for i in 1..=n {
            for _ in 0..key.exps[i - 1] {
                term = wedge(&term, &images[i]);
            }
        }
        for i in 1..=n {
            if key.mask & (1 << (i - 1)) != 0 {
                term = wedge(&term, &dimages[i]);
            }
        }
        out.add_assign(&term);
    }
    out
}

/// Pullback along the `i`-th face Δ_{n-1} → Δ_n.
pub fn face_pull(i: usize, a: &Form, n: usize) -> Result<Form> {
    if n == 0 || i > n {
        return Err(Error::Input(format!("face index {i} out of range for Δ_{n}")));
    }
    let phi: Vec<usize> = (0..n).map(|j| if j < i { j } else { j + 1 }).collect();
    Ok(pull_vertex_map(a, n, &phi))
}

/// Pullback along the `i`-th degeneracy Δ_n → Δ_{n-1}.
pub fn degen_pull(i: usize, a: &Form, n: usize) -> Result<Form> {
    if n == 0 || i >= n || n > MAX_DIM {
        return Err(Error::Input(format!("degeneracy index {i} out of range for Δ_{n}")));
    }
    let phi: Vec<usize> = (0..=n).map(|j| if j <= i { j } else { j - 1 }).collect();
    Ok(pull_vertex_map(a, n - 1, &phi))
}

/// Pullback to the face spanned by the increasing vertex list `face`.
pub fn restrict_to_face(a: &Form, n: usize, face: &[usize]) -> Form {
    pull_vertex_map(a, n, face)
}

/// `∫_{Δ_k} a`, using the orientation `dt₁ ∧ … ∧ dt_k`.
pub fn integrate_top(a: &Form, k: usize) -> Scalar {
    let full: u8 = ((1u16 << k) - 1) as u8;
    let mut total = Scalar::zero();
    for (key, c) in a.iter() {
        if key.mask != full {
            continue;
        }
        let mut num = Scalar::one();
        for i in 0..k {
            num = num * Scalar::factorial(key.exps[i] as usize);
        }
        let den = Scalar::factorial(k + key.poly_degree() as usize);
        total += c * &(num / den);
    }
    total
}

/// Integral over the face spanned by `face` (vertex order gives orientation).
pub fn integrate_face(a: &Form, n: usize, face: &[usize]) -> Scalar {
    let k = face.len() - 1;
    integrate_top(&restrict_to_face(a, n, face), k)
}

/// Whitney elementary form of the face `face ⊆ [n]`.
pub fn whitney(n: usize, face: &[usize]) -> Form {
    let k = face.len() - 1;
    let mut out = Form::zero();
    for l in 0..=k {
        let mut term = coord(n, face[l]);
        for (m, &v) in face.iter().enumerate() {
            if m != l {
                term = wedge(&term, &dcoord(n, v));
            }
        }
        let sign = if l % 2 == 1 { -Scalar::one() } else { Scalar::one() };
        out.add_scaled(&term, &sign);
    }
    out.scaled(&Scalar::factorial(k))
}

/// Dilation homotopy towards vertex `j`: integrate the `du`-component of the
/// pullback along `(u, t) ↦ u·t + (1−u)·e_j` over `u ∈ [0, 1]`.
pub fn dilation(j: usize, a: &Form) -> Form {
    let mut out = Form::zero();
    for (key, c) in a.iter() {
        let p = key.mask.count_ones() as usize;
        if p == 0 {
            continue;
        }
        // Σ_a C(m_j, a) t_j^a (−) ∫ u^{base + a} (1−u)^{m_j − a} du
        let mj = if j == 0 { 0 } else { key.exps[j - 1] as usize };
        let others: usize = (0..MAX_DIM)
            .filter(|&i| j == 0 || i != j - 1)
            .map(|i| key.exps[i] as usize)
            .sum();
        let base = p - 1 + others;
        let mut poly = Form::zero();
        for a_ in 0..=mj {
            let alpha = base + a_;
            let beta = mj - a_;
            let beta_int = Scalar::factorial(alpha) * Scalar::factorial(beta) / Scalar::factorial(alpha + beta + 1);
            let coeff = Scalar::from_int(binomial(mj, a_) as i64) * beta_int;
            let mut exps = key.exps;
            if j > 0 {
                exps[j - 1] = a_ as u8;
            }
            poly.add_term(FormKey { exps, mask: 0 }, &coeff);
        }
        let bits: Vec<usize> = (0..MAX_DIM).filter(|&i| key.mask & (1 << i) != 0).collect();
        for (r, &b) in bits.iter().enumerate() {
            // (t_b − δ_{b j}) du ∧ dt_{I∖b}, du moved to the front
            let mut lin = Form::basis(coord_key(b + 1));
            if j == b + 1 {
                lin.add_term(FormKey::ONE, &-Scalar::one());
            }
            let rest = Form::basis(FormKey { exps: [0; MAX_DIM], mask: key.mask & !(1 << b) });
            let term = wedge(&wedge(&poly, &lin), &rest);
            let sign = if r % 2 == 1 { -c.clone() } else { c.clone() };
            out.add_scaled(&term, &sign);
        }
    }
    out
}

fn binomial(n: usize, k: usize) -> u64 {
    let mut r: u64 = 1;
    for i in 0..k {
        r = r * (n - i) as u64 / (i as u64 + 1);
    }
    r
}

/// All increasing vertex lists of `[n]` with `k + 1` elements.
pub fn faces_of_dim(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << (n + 1)) {
        if mask.count_ones() as usize == k + 1 {
            out.push((0..=n).filter(|i| mask & (1 << i) != 0).collect());
        }
    }
    out
}

/// Dupont's operator `s_n(a) = Σ_k (−1)^k Σ_I ω_I ∧ h_{i_k} ⋯ h_{i_0}(a)`.
///
/// The dilation homotopies anticommute, so the sign `(−1)^k` is what makes
/// `ds + sd = id − EI` hold once `k ≥ 1` terms appear (Δ₂ and up).
pub fn dupont_raw(n: usize, a: &Form) -> Form {
    let mut out = Form::zero();
    let top = a.keys().map(|k| k.degree()).max().unwrap_or(0) as usize;
    for k in 0..n.min(top) {
        for face in faces_of_dim(n, k) {
            let mut h = a.clone();
            for &v in &face {
                h = dilation(v, &h);
                if h.is_zero() {
                    break;
                }
            }
            if h.is_zero() {
                continue;
            }
            let w = wedge(&whitney(n, &face), &h);
            if k % 2 == 1 {
                out.add_assign(&-w);
            } else {
                out.add_assign(&w);
            }
        }
    }
    out
}

/// The contracting homotopy with the convention `Kd + dK = EI − id`.
/// Dupont's operator satisfies `ds + sd = id − EI`, so `K = −s_n`.
pub fn dupont(n: usize, a: &Form) -> Form {
    -dupont_raw(n, a)
}

/// Evaluates a 0-form at a point given by its coordinates `t₁ … t_n`;
/// positive-degree terms are dropped.
pub fn eval_point(a: &Form, point: &[Scalar]) -> Scalar {
    let mut total = Scalar::zero();
    for (key, c) in a.iter() {
        if key.mask != 0 {
            continue;
        }
        let mut v = c.clone();
        for (i, &e) in key.exps.iter().enumerate() {
            if e > 0 {
                v = v * point.get(i).cloned().unwrap_or_else(Scalar::zero).pow(e as u32);
            }
        }
        total += v;
    }
    total
}

/// Form on Δ_n together with its dimension.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyForm {
    pub n: usize,
    pub terms: Form,
}

impl PolyForm {
    pub fn new(n: usize, terms: Form) -> Result<Self> {
        if n > MAX_DIM {
            return Err(Error::Input(format!("simplex dimension {n} exceeds {MAX_DIM}")));
        }
        for k in terms.keys() {
            let used = (k.mask as u32) | k.exps.iter().enumerate().fold(0u32, |acc, (i, &e)| if e > 0 { acc | (1 << i) } else { acc });
            if used >> n != 0 {
                return Err(Error::Input(format!("coordinate beyond t_{n} in form on Δ_{n}")));
            }
        }
        Ok(PolyForm { n, terms })
    }

    pub fn t(n: usize, i: usize) -> Self {
        PolyForm { n, terms: coord(n, i) }
    }

    pub fn dt(n: usize, i: usize) -> Self {
        PolyForm { n, terms: dcoord(n, i) }
    }

    pub fn wedge(&self, other: &PolyForm) -> Result<PolyForm> {
        if self.n != other.n {
            return Err(Error::Dimension(format!("wedge of forms on Δ_{} and Δ_{}", self.n, other.n)));
        }
        Ok(PolyForm { n: self.n, terms: wedge(&self.terms, &other.terms) })
    }

    pub fn de_rham(&self) -> PolyForm {
        PolyForm { n: self.n, terms: d(&self.terms) }
    }

    pub fn face_pull(&self, i: usize) -> Result<PolyForm> {
        Ok(PolyForm { n: self.n - 1, terms: face_pull(i, &self.terms, self.n)? })
    }

    pub fn degen_pull(&self, i: usize) -> Result<PolyForm> {
        Ok(PolyForm { n: self.n + 1, terms: degen_pull(i, &self.terms, self.n + 1)? })
    }
}

/// `p(s) + q(s) ds` on the line, coefficient vectors indexed by power of `s`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LineForm {
    pub p: Vec<Scalar>,
    pub q: Vec<Scalar>,
}

impl LineForm {
    /// The form on Δ₁ with `s = t₁`.
    pub fn to_form(&self) -> Form {
        let mut out = Form::zero();
        for (i, c) in self.p.iter().enumerate() {
            out.add_term(FormKey { exps: [i as u8, 0, 0, 0], mask: 0 }, c);
        }
        for (i, c) in self.q.iter().enumerate() {
            out.add_term(FormKey { exps: [i as u8, 0, 0, 0], mask: 1 }, c);
        }
        out
    }

    pub fn from_form(f: &Form) -> Result<Self> {
        let mut out = LineForm::default();
        for (k, c) in f.iter() {
            if k.exps[1..].iter().any(|&e| e > 0) || k.mask > 1 {
                return Err(Error::Input("not a form on the line".into()));
            }
            let v = if k.mask == 0 { &mut out.p } else { &mut out.q };
            let i = k.exps[0] as usize;
            if v.len() <= i {
                v.resize(i + 1, Scalar::zero());
            }
            v[i] = c.clone();
        }
        Ok(out)
    }

    pub fn d(&self) -> LineForm {
        let q = self.p.iter().enumerate().skip(1).map(|(i, c)| c * &Scalar::from_int(i as i64)).collect();
        LineForm { p: Vec::new(), q }
    }
}

/// `Eval_{s = s₀}(x(s) + y(s) ds) = x(s₀)`.
pub fn eval_line(s0: &Scalar, a: &LineForm) -> Scalar {
    let mut acc = Scalar::zero();
    for c in a.p.iter().rev() {
        acc = acc * s0 + c;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, r: i64) -> Scalar {
        Scalar::frac(p, r)
    }

    #[test]
    fn t0_relation() {
        let mut s = Form::zero();
        for i in 0..=3 {
            s.add_assign(&coord(3, i));
        }
        assert_eq!(s, one());
        let mut ds = Form::zero();
        for i in 0..=3 {
            ds.add_assign(&dcoord(3, i));
        }
        assert!(ds.is_zero());
    }

    #[test]
    fn d_squares_to_zero_and_leibniz() {
        let a = wedge(&wedge(&coord(3, 1), &coord(3, 2)), &coord(3, 0));
        let b = wedge(&coord(3, 3), &dcoord(3, 1));
        assert!(d(&d(&a)).is_zero());
        let lhs = d(&wedge(&a, &b));
        let rhs = wedge(&d(&a), &b) + wedge(&a, &d(&b));
        assert_eq!(lhs, rhs);
        assert_eq!(wedge(&dcoord(2, 1), &dcoord(2, 2)), -wedge(&dcoord(2, 2), &dcoord(2, 1)));
    }

    #[test]
    fn integrals() {
        // ∫_{Δ2} t1 dt1 dt2 = 1/6
        let f = wedge(&coord(2, 1), &wedge(&dcoord(2, 1), &dcoord(2, 2)));
        assert_eq!(integrate_top(&f, 2), q(1, 6));
        // Stokes on the edge: ∫ d(t1²) = 1
        let g = wedge(&coord(1, 1), &coord(1, 1));
        assert_eq!(integrate_top(&d(&g), 1), q(1, 1));
    }

    #[test]
    fn whitney_duality() {
        for n in 1..=3 {
            for k in 0..=n {
                for face in faces_of_dim(n, k) {
                    let w = whitney(n, &face);
                    for other in faces_of_dim(n, k) {
                        let v = integrate_face(&w, n, &other);
                        let expect = if other == face { Scalar::one() } else { Scalar::zero() };
                        assert_eq!(v, expect, "n={n} face={face:?} other={other:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn dupont_known_values() {
        let a = wedge(&coord(1, 1), &dcoord(1, 1));
        let mut expect = Form::zero();
        expect.add_term(FormKey { exps: [2, 0, 0, 0], mask: 0 }, &q(1, 2));
        expect.add_term(FormKey { exps: [1, 0, 0, 0], mask: 0 }, &q(-1, 2));
        assert_eq!(dupont_raw(1, &a), expect);
        assert!(dupont_raw(1, &dcoord(1, 1)).is_zero());
    }

    #[test]
    fn face_and_degeneracy() {
        let a = wedge(&coord(2, 1), &dcoord(2, 2));
        // d_0 d_1 = d_0 d_0 on forms: pulling back twice along composable faces
        let x = face_pull(0, &face_pull(1, &a, 2).unwrap(), 1).unwrap();
        let y = face_pull(0, &face_pull(0, &a, 2).unwrap(), 1).unwrap();
        assert_eq!(x, y);
        // s_0 then d_0 is the identity
        let b = wedge(&coord(1, 1), &coord(1, 1));
        let up = degen_pull(0, &b, 2).unwrap();
        assert_eq!(face_pull(0, &up, 2).unwrap(), b);
        assert_eq!(face_pull(1, &up, 2).unwrap(), b);
    }

    #[test]
    fn line_eval() {
        let l = LineForm { p: vec![q(1, 1), q(0, 1), q(3, 1)], q: vec![q(2, 1)] };
        assert_eq!(eval_line(&q(1, 2), &l), q(7, 4));
        assert_eq!(LineForm::from_form(&l.to_form()).unwrap(), l);
        assert_eq!(LineForm::from_form(&d(&l.to_form())).unwrap(), l.d());
    }
}
