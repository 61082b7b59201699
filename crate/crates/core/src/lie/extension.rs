//! Extensions `0 → h → g̃ → g → 0` described by a non-abelian 2-cocycle
//! `(c, b)` relative to a vector space splitting `g̃ = g ⊕ h`.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

use super::{is_zero_vec, unit_vector, vadd, vaxpy, vneg, vsub, zeros, CoefficientAlgebra, LieAlgebra, Vector};

#[derive(Clone, Debug)]
pub struct ExtensionDatum {
    pub g: LieAlgebra,
    pub h: LieAlgebra,
    /// `b[i]` is the matrix of `b(e_i)` acting on `h`.
    b: Vec<Matrix>,
    /// `c[i * dim g + j] = c(e_i, e_j)`.
    c: Vec<Vector>,
    tilde: Option<LieAlgebra>,
}

impl ExtensionDatum {
    /// `b_entries`: `(i_g, j_h, k_h, v)` meaning `b(e_i)(f_j) ∋ v f_k`;
    /// `c_entries`: `(i_g, j_g, k_h, v)` meaning `c(e_i, e_j) ∋ v f_k`,
    /// antisymmetric partners filled when absent.
    pub fn new(
        g: LieAlgebra,
        h: LieAlgebra,
        b_entries: &[(usize, usize, usize, Scalar)],
        c_entries: &[(usize, usize, usize, Scalar)],
    ) -> Result<Self> {
        let (dg, dh) = (g.dim(), h.dim());
        let mut b = vec![Matrix::zeros(dh, dh); dg];
        for (i, j, k, v) in b_entries {
            if *i >= dg || *j >= dh || *k >= dh {
                return Err(Error::Input(format!("b entry ({i},{j},{k}) out of range")));
            }
            b[*i].add_to(*k, *j, v);
        }
        let mut c = vec![zeros(dh); dg * dg];
        let mut given = vec![false; dg * dg];
        for (i, j, k, v) in c_entries {
            if *i >= dg || *j >= dg || *k >= dh {
                return Err(Error::Input(format!("c entry ({i},{j},{k}) out of range")));
            }
            c[i * dg + j][*k] += v;
            given[i * dg + j] = true;
        }
        for i in 0..dg {
            for j in 0..dg {
                if given[i * dg + j] && !given[j * dg + i] {
                    c[j * dg + i] = vneg(&c[i * dg + j]);
                }
            }
        }
        let mut e = ExtensionDatum { g, h, b, c, tilde: None };
        let report = e.check();
        if !report.is_empty() {
            return Err(Error::Invariant(report.join("; ")));
        }
        e.tilde = e.build_tilde().ok();
        Ok(e)
    }

    pub fn dim_g(&self) -> usize {
        self.g.dim()
    }

    pub fn dim_h(&self) -> usize {
        self.h.dim()
    }

    pub fn b_matrix(&self, i: usize) -> &Matrix {
        &self.b[i]
    }

    pub fn b_apply(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = zeros(self.dim_h());
        for (i, a) in x.iter().enumerate() {
            if !a.is_zero() {
                vaxpy(&mut out, a, &self.b[i].apply(y));
            }
        }
        out
    }

    pub fn c_apply(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let dg = self.dim_g();
        let mut out = zeros(self.dim_h());
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, bj) in y.iter().enumerate() {
                if !bj.is_zero() {
                    vaxpy(&mut out, &(a * bj), &self.c[i * dg + j]);
                }
            }
        }
        out
    }

    pub fn is_trivial(&self) -> bool {
        self.b.iter().all(|m| m.is_zero()) && self.c.iter().all(|v| is_zero_vec(v))
    }

    /// Whether `c` lands in the center of `h` and `b = 0`.
    pub fn is_central(&self) -> bool {
        let dh = self.dim_h();
        self.b.iter().all(|m| m.is_zero())
            && self.c.iter().all(|v| (0..dh).all(|j| is_zero_vec(&self.h.bracket(v, &unit_vector(dh, j)))))
    }

    /// Derivation property of each `b(x)`, the two cocycle identities, and
    /// antisymmetry of `c`.
    pub fn check(&self) -> Vec<String> {
        let (dg, dh) = (self.dim_g(), self.dim_h());
        let eg = |i| unit_vector(dg, i);
        let eh = |i| unit_vector(dh, i);
        let gn = self.g.names();
        let hn = self.h.names();
        let mut report = Vec::new();
        for i in 0..dg {
            for j in 0..dg {
                if !is_zero_vec(&vadd(&self.c_apply(&eg(i), &eg(j)), &self.c_apply(&eg(j), &eg(i)))) {
                    report.push(format!("c not antisymmetric at ({}, {})", gn[i], gn[j]));
                }
            }
        }
        for i in 0..dg {
            for j in 0..dh {
                for k in 0..dh {
                    let lhs = self.b_apply(&eg(i), &self.h.bracket(&eh(j), &eh(k)));
                    let rhs = vadd(
                        &self.h.bracket(&self.b_apply(&eg(i), &eh(j)), &eh(k)),
                        &self.h.bracket(&eh(j), &self.b_apply(&eg(i), &eh(k))),
                    );
                    if lhs != rhs {
                        report.push(format!("b({}) is not a derivation at ({}, {})", gn[i], hn[j], hn[k]));
                    }
                }
            }
        }
        for i in 0..dg {
            for j in 0..dg {
                let (x, y) = (eg(i), eg(j));
                let cxy = self.c_apply(&x, &y);
                let bxy = self.g.bracket(&x, &y);
                for k in 0..dh {
                    let v = eh(k);
                    let lhs = vsub(
                        &vsub(&self.b_apply(&x, &self.b_apply(&y, &v)), &self.b_apply(&y, &self.b_apply(&x, &v))),
                        &self.b_apply(&bxy, &v),
                    );
                    let rhs = self.h.bracket(&cxy, &v);
                    if lhs != rhs {
                        report.push(format!(
                            "[b({0}), b({1})] - b([{0},{1}]) differs from ad c({0},{1}) on {2}",
                            gn[i], gn[j], hn[k]
                        ));
                    }
                }
            }
        }
        for i in 0..dg {
            for j in 0..dg {
                for k in 0..dg {
                    let (x, y, z) = (eg(i), eg(j), eg(k));
                    let mut s = zeros(dh);
                    for (a, b, c) in [(&x, &y, &z), (&y, &z, &x), (&z, &x, &y)] {
                        s = vadd(&s, &self.b_apply(a, &self.c_apply(b, c)));
                        s = vsub(&s, &self.c_apply(&self.g.bracket(a, b), c));
                    }
                    if !is_zero_vec(&s) {
                        report.push(format!("cyclic cocycle identity fails at ({}, {}, {})", gn[i], gn[j], gn[k]));
                    }
                }
            }
        }
        report
    }

    fn build_tilde(&self) -> Result<LieAlgebra> {
        let (dg, dh) = (self.dim_g(), self.dim_h());
        let mut names: Vec<String> = self.g.names().to_vec();
        names.extend(self.h.names().iter().cloned());
        let mut entries = Vec::new();
        for i in 0..dg {
            for j in 0..dg {
                for (k, v) in self.g.basis_bracket(i, j) {
                    entries.push((i, j, *k, v.clone()));
                }
                for (k, v) in self.c[i * dg + j].iter().enumerate() {
                    if !v.is_zero() {
                        entries.push((i, j, dg + k, v.clone()));
                    }
                }
            }
            for j in 0..dh {
                for k in 0..dh {
                    let v = self.b[i].get(k, j);
                    if !v.is_zero() {
                        entries.push((i, dg + j, dg + k, v.clone()));
                        entries.push((dg + j, i, dg + k, -v));
                    }
                }
            }
        }
        for i in 0..dh {
            for j in 0..dh {
                for (k, v) in self.h.basis_bracket(i, j) {
                    entries.push((dg + i, dg + j, dg + k, v.clone()));
                }
            }
        }
        LieAlgebra::new(names, &entries, None)
    }

    /// The Lie algebra `g̃ = g ⊕ h` with the split bracket.
    pub fn assemble_tilde(&self) -> Result<&LieAlgebra> {
        match &self.tilde {
            Some(t) => Ok(t),
            None => Err(self.build_tilde().err().unwrap_or_else(|| Error::Invariant("extension not nilpotent".into()))),
        }
    }

    fn tilde(&self) -> &LieAlgebra {
        self.tilde.as_ref().expect("extension is nilpotent")
    }

    pub fn embed_g(&self, x: &[Scalar]) -> Vector {
        let mut v = x.to_vec();
        v.extend(zeros(self.dim_h()));
        v
    }

    pub fn embed_h(&self, y: &[Scalar]) -> Vector {
        let mut v = zeros(self.dim_g());
        v.extend_from_slice(y);
        v
    }

    pub fn proj_g(&self, v: &[Scalar]) -> Vector {
        v[..self.dim_g()].to_vec()
    }

    pub fn proj_h(&self, v: &[Scalar]) -> Vector {
        v[self.dim_g()..].to_vec()
    }

    /// `exp(ψ)^φ = exp(Σ_s ad_φ^s(ψ) / s!)`, returned in log coordinates.
    pub fn twisted_conj(&self, psi: &[Scalar], phi: &[Scalar]) -> Vector {
        self.proj_h(&self.tilde().exp_ad(&self.embed_g(phi), &self.embed_h(psi)))
    }

    /// Log of the `H`-factor of `exp(φ)·exp(φ′)` in `G̃ = G × H`: with
    /// `z = φ ∗ φ′` in `g̃`, this is `(−z_g) ∗ z`, which lies in `h`. It agrees
    /// with the `h`-coordinate of `z` whenever `[z_g, z_h] = 0`.
    pub fn h_component_bch(&self, phi: &[Scalar], phi2: &[Scalar]) -> Vector {
        let t = self.tilde();
        let z = t.bch(&self.embed_g(phi), &self.embed_g(phi2));
        let zg = self.embed_g(&self.proj_g(&z));
        let f = t.bch(&vneg(&zg), &z);
        debug_assert!(is_zero_vec(&self.proj_g(&f)));
        self.proj_h(&f)
    }

    /// The equivalent cocycle `(c′, b′)` for `β: g → h` given as a
    /// `dim h × dim g` matrix.
    pub fn beta_equiv(&self, beta: &Matrix) -> Result<ExtensionDatum> {
        let (dg, dh) = (self.dim_g(), self.dim_h());
        if beta.rows != dh || beta.cols != dg {
            return Err(Error::Dimension("β must be a dim h × dim g matrix".into()));
        }
        let eg = |i| unit_vector(dg, i);
        let eh = |i| unit_vector(dh, i);
        let bx = |i: usize| beta.apply(&eg(i));
        let mut b_entries = Vec::new();
        for i in 0..dg {
            for j in 0..dh {
                let v = vadd(&self.b_apply(&eg(i), &eh(j)), &self.h.bracket(&bx(i), &eh(j)));
                for (k, c) in v.into_iter().enumerate() {
                    if !c.is_zero() {
                        b_entries.push((i, j, k, c));
                    }
                }
            }
        }
        let mut c_entries = Vec::new();
        for i in 0..dg {
            for j in 0..dg {
                let mut v = self.c_apply(&eg(i), &eg(j));
                v = vadd(&v, &self.b_apply(&eg(i), &bx(j)));
                v = vsub(&v, &self.b_apply(&eg(j), &bx(i)));
                v = vsub(&v, &beta.apply(&self.g.bracket(&eg(i), &eg(j))));
                v = vadd(&v, &self.h.bracket(&bx(i), &bx(j)));
                for (k, c) in v.into_iter().enumerate() {
                    if !c.is_zero() {
                        c_entries.push((i, j, k, c));
                    }
                }
            }
        }
        ExtensionDatum::new(self.g.clone(), self.h.clone(), &b_entries, &c_entries)
    }

    /// The extension of `g ⊗ A` by `h ⊗ A` with `(c, b)` extended `A`-bilinearly.
    pub fn tensor(&self, a: &CoefficientAlgebra) -> ExtensionDatum {
        let (dg, dh, da) = (self.dim_g(), self.dim_h(), a.dim());
        let g = self.g.tensor(a);
        let h = self.h.tensor(a);
        let mut b_entries = Vec::new();
        for i in 0..dg {
            for j in 0..dh {
                for k in 0..dh {
                    let v = self.b[i].get(k, j);
                    if v.is_zero() {
                        continue;
                    }
                    for r in 0..da {
                        for s in 0..da {
                            for (t, m) in a.product_basis(r, s) {
                                b_entries.push((i * da + r, j * da + s, k * da + t, v * m));
                            }
                        }
                    }
                }
            }
        }
        let mut c_entries = Vec::new();
        for i in 0..dg {
            for j in 0..dg {
                for (k, v) in self.c[i * dg + j].iter().enumerate() {
                    if v.is_zero() {
                        continue;
                    }
                    for r in 0..da {
                        for s in 0..da {
                            for (t, m) in a.product_basis(r, s) {
                                c_entries.push((i * da + r, j * da + s, k * da + t, v * m));
                            }
                        }
                    }
                }
            }
        }
        ExtensionDatum::new(g, h, &b_entries, &c_entries).expect("tensoring preserves the cocycle identities")
    }
}
