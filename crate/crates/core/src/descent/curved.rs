use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lie::{vneg, ExtensionDatum, Vector};
use crate::linear::LinComb;
use crate::linfty::{eval, jacobi_check, mc_defect, LInfty, Report, TKey, TensorForms, Twisted};
use crate::scalar::Scalar;
use crate::simplicial::form_monomials;
use crate::transfer::contraction::{g_lin, k_lin};
use crate::transfer::{pro_nilpotence_check, Fukaya, Perturbation};

use super::cocycle::{check_shape, cocycle_to_mc};
use super::nerve::{dim_of, vertices, CoverNerve, Face};
use super::tot::{Cech, CechKey, Cochain, FKey, FaceLie, TwContraction, TwKey};

pub type CurvedL = Twisted<TwKey, TensorForms<Arc<FaceLie>>>;
pub type CurvedFukaya = Fukaya<TwKey, CechKey, CurvedL, TwContraction>;

/// The curved structure governing lifts of a torsor cocycle `Φ` across an
/// extension `0 → h → g̃ → g → 0`: `a ∈ Tot_TW(g)` is the Maurer-Cartan lift
/// of `Φ` with `K a = 0`, the curved DGLA on `Tot_TW(h)` has `d_h = d + ad_a`
/// and curvature `C = ½ c(a, a)`, and `fukaya` carries its curved transfer to
/// the Čech complex of `h`.
pub struct CurvedCech {
    pub ext: ExtensionDatum,
    pub nerve: Arc<CoverNerve>,
    pub base: Cech,
    pub tilde: Cech,
    pub phi: Cochain,
    pub a: LinComb<TwKey>,
    pub fukaya: CurvedFukaya,
    local_ext: HashMap<Face, ExtensionDatum>,
    weights: Vec<usize>,
}

impl CurvedCech {
    pub fn new(nerve: Arc<CoverNerve>, ext: ExtensionDatum, phi: Cochain) -> Result<Self> {
        let report = ext.check();
        if !report.is_empty() {
            return Err(Error::Invariant(report.join("; ")));
        }
        let tilde_lie = ext.assemble_tilde()?.clone();
        let base = Cech::new(nerve.clone(), ext.g.clone());
        let y = cocycle_to_mc(&base, &phi)?;
        let a = base.transfer.f_push(&y);
        debug_assert!(k_lin(&base.transfer.c, &a).is_zero());
        let tilde = Cech::new(nerve.clone(), tilde_lie.clone());
        let dim_g = ext.dim_g();
        let n2 = nerve.clone();
        let keep = Box::new(move |k: &TwKey| k.l.l as usize / n2.algebra(k.l.face).dim() >= dim_g);
        let twisted = Twisted::new(TensorForms::new(tilde.local.clone()), &a, keep);
        let arity = tilde_lie.class().max(1);
        let max_iter = 2 * (arity + nerve.dim()) + 4;
        let fukaya = Fukaya::new(twisted, TwContraction::new(nerve.clone(), tilde_lie.dim()), arity, max_iter)?;
        let local_ext = nerve.faces().iter().map(|&f| (f, ext.tensor(nerve.algebra(f)))).collect();
        let weights = tilde_lie.weights();
        let cc = CurvedCech { ext, nerve, base, tilde, phi, a, fukaya, local_ext, weights };
        let report = cc.pro_nilpotence(1, 2);
        if !report.is_empty() {
            return Err(Error::Invariant(format!("perturbation is not pro-nilpotent: {}", report[0])));
        }
        Ok(cc)
    }

    pub fn ext_at(&self, face: Face) -> &ExtensionDatum {
        &self.local_ext[&face]
    }

    fn dim_a(&self, face: Face) -> usize {
        self.nerve.algebra(face).dim()
    }

    fn is_h(&self, face: Face, l: u16) -> bool {
        l as usize / self.dim_a(face) >= self.ext.dim_g()
    }

    /// Filtration depth of a `g̃ ⊗ A_σ` index: weight minus one.
    pub fn depth(&self, face: Face, l: u16) -> usize {
        self.weights[l as usize / self.dim_a(face)] - 1
    }

    pub fn depth_tw(&self, k: &TwKey) -> usize {
        self.depth(k.l.face, k.l.l)
    }

    pub fn depth_cech(&self, k: &CechKey) -> usize {
        self.depth(k.face, k.l)
    }

    /// Čech basis of `h` in degree `q`, indexed inside `g̃ ⊗ A_σ`.
    pub fn h_basis(&self, q: usize) -> Vec<CechKey> {
        self.tilde.basis(q).into_iter().filter(|k| self.is_h(k.face, k.l)).collect()
    }

    /// `Tot_TW(h)` basis elements with polynomial degree at most `p`.
    pub fn tw_basis(&self, p: u32) -> Vec<TwKey> {
        let mut out = Vec::new();
        for &f in self.nerve.faces() {
            let forms = form_monomials(dim_of(f), p);
            for l in 0..self.tilde.dim_at(f) as u16 {
                if self.is_h(f, l) {
                    out.extend(forms.iter().map(|m| TKey { l: FKey { face: f, l }, f: *m }));
                }
            }
        }
        out
    }

    pub fn curved(&self) -> &CurvedL {
        &self.fukaya.q
    }

    /// `C = ½ c(a, a)`, the curvature of `Tot_TW(h)`.
    pub fn curvature(&self) -> LinComb<TwKey> {
        self.curved().bracket(&[])
    }

    /// `d_h²(v) = [C, v]`, that is `q₁q₁(v) + q₂(q₀, v) = 0`, on each basis element.
    pub fn curvature_identity(&self, basis: &[TwKey]) -> Vec<String> {
        let q = self.curved();
        let c = self.curvature();
        basis
            .par_iter()
            .filter_map(|v| {
                let x = LinComb::basis(*v);
                let lhs = eval(q, &[&eval(q, &[&x])]);
                let rhs = -eval(q, &[&c, &x]);
                (lhs != rhs).then(|| format!("d_h² ≠ [C, −] on {v:?}"))
            })
            .collect()
    }

    /// `λ ∈ F₁`: every component of `λ = q − d` on words of `Tot_TW(h)`
    /// basis elements (polynomial degree `≤ p`, length `≤ bound`) deepens.
    pub fn pro_nilpotence(&self, p: u32, bound: usize) -> Vec<String> {
        let lam = Perturbation::<_, _, CechKey>::new(&self.fukaya.q, &self.fukaya.c);
        pro_nilpotence_check(&lam, &self.tw_basis(p), bound, |k| self.depth_tw(k))
    }

    /// Curved generalized Jacobi identities of the transferred structure on
    /// the Čech complex of `h`.
    pub fn jacobi(&self, bound: usize) -> Report<CechKey> {
        let basis: Vec<CechKey> = (0..=self.nerve.dim()).flat_map(|q| self.h_basis(q)).collect();
        jacobi_check(&self.fukaya.structure(), &basis, bound)
    }

    /// The curvature `μ₀` of the transferred structure, a Čech 2-cochain.
    pub fn transferred_curvature(&self) -> LinComb<CechKey> {
        self.fukaya.structure().bracket(&[])
    }

    pub fn mc_defect(&self, y: &LinComb<CechKey>) -> LinComb<CechKey> {
        mc_defect(&self.fukaya.structure(), y)
    }

    /// `h ⊗ A_σ`-coordinates to `g̃ ⊗ A_σ` Čech keys.
    pub fn h_to_comb(&self, x: &Cochain) -> LinComb<CechKey> {
        let mut out = LinComb::zero();
        for (f, v) in x {
            let e = self.ext_at(*f);
            for (l, c) in e.embed_h(v).iter().enumerate() {
                out.add_term(CechKey { face: *f, l: l as u16 }, c);
            }
        }
        out
    }

    /// The `h`-coordinates of the degree-`q` part of a Čech element.
    pub fn comb_to_h(&self, y: &LinComb<CechKey>, q: usize) -> Cochain {
        self.tilde.from_comb(y, q).into_iter().map(|(f, v)| (f, self.ext_at(f).proj_h(&v))).collect()
    }

    fn restrict_h(&self, x: &Cochain, tau: Face, sigma: Face) -> Vector {
        self.nerve.restrict(self.ext.dim_h(), &x[&tau], tau, sigma)
    }

    fn restrict_g(&self, tau: Face, sigma: Face) -> Vector {
        self.nerve.restrict(self.ext.dim_g(), &self.phi[&tau], tau, sigma)
    }

    /// The twisted cocycle condition on every triangle:
    /// `C(φ_ij, φ_jk) · exp(ψ_ij)^{−φ_jk} · exp(ψ_jk) = exp(ψ_ik)`.
    pub fn verify_twisted_cocycle(&self, psi: &Cochain) -> Vec<String> {
        let tris = self.nerve.faces_of_dim(2);
        let mut out: Vec<(Face, String)> = tris
            .par_iter()
            .filter_map(|&t| {
                let v = vertices(t);
                let edge = |i: usize, j: usize| (1u32 << v[i]) | (1 << v[j]);
                let e = self.ext_at(t);
                let (pij, pjk) = (self.restrict_g(edge(0, 1), t), self.restrict_g(edge(1, 2), t));
                let (sij, sjk, sik) = (self.restrict_h(psi, edge(0, 1), t), self.restrict_h(psi, edge(1, 2), t), self.restrict_h(psi, edge(0, 2), t));
                let c = e.h_component_bch(&pij, &pjk);
                let lhs = e.h.bch(&e.h.bch(&c, &e.twisted_conj(&sij, &vneg(&pjk))), &sjk);
                (lhs != sik).then(|| {
                    (t, format!("triangle {{{}}}: left side {} but ψ_ik = {}", self.nerve.face_name(t), e.h.format_element(&lhs), e.h.format_element(&sik)))
                })
            })
            .collect();
        out.sort();
        out.into_iter().map(|(_, s)| s).collect()
    }

    /// The twisted equivalence on every edge: `exp(ψ′_ij) = exp(−σ_i)^{−φ_ij} exp(ψ_ij) exp(σ_j)`.
    pub fn twisted_equiv(&self, psi: &Cochain, sigma: &Cochain) -> Cochain {
        let mut out = Cochain::new();
        for e in self.nerve.faces_of_dim(1) {
            let v = vertices(e);
            let x = self.ext_at(e);
            let (si, sj) = (self.restrict_h(sigma, 1 << v[0], e), self.restrict_h(sigma, 1 << v[1], e));
            let conj = x.twisted_conj(&vneg(&si), &vneg(&self.phi[&e]));
            out.insert(e, x.h.bch(&x.h.bch(&conj, &psi[&e]), &sj));
        }
        out
    }

    pub fn verify_twisted_equiv(&self, psi: &Cochain, psi2: &Cochain, sigma: &Cochain) -> bool {
        self.twisted_equiv(psi, sigma) == *psi2
    }

    pub fn check_lift_shape(&self, psi: &Cochain, q: usize) -> Result<()> {
        for (f, v) in psi {
            if !self.nerve.contains(*f) || dim_of(*f) != q {
                return Err(Error::Input(format!("{{{}}} is not a {q}-face of the nerve", self.nerve.face_name(*f))));
            }
            if v.len() != self.ext_at(*f).dim_h() {
                return Err(Error::Dimension(format!("value on {{{}}} has the wrong length", self.nerve.face_name(*f))));
            }
        }
        if self.nerve.faces_of_dim(q).iter().any(|f| !psi.contains_key(f)) {
            return Err(Error::Input(format!("missing values on some {q}-faces")));
        }
        Ok(())
    }

    /// `ψ ↦ α̃ = F̃_*(log Φ̃) − a` in `Tot_TW(h)` and its image `g(α̃)` in the
    /// Čech complex of `h`, without certifying `ψ`.
    pub fn forward_unchecked(&self, psi: &Cochain) -> Result<(LinComb<TwKey>, LinComb<CechKey>)> {
        self.check_lift_shape(psi, 1)?;
        let mut ytilde = Cochain::new();
        for (e, p) in &self.phi {
            let x = self.ext_at(*e);
            ytilde.insert(*e, self.tilde.local.at(*e).bch(&x.embed_g(p), &x.embed_h(&psi[e])));
        }
        let xt = self.tilde.transfer.f_push(&self.tilde.to_comb(&ytilde));
        let alpha = &xt - &self.a;
        if alpha.keys().any(|k| !self.is_h(k.l.face, k.l.l)) {
            return Err(Error::Invariant("lift does not project to a".into()));
        }
        let y = g_lin(&self.fukaya.c, &alpha);
        Ok((alpha, y))
    }

    /// Lift cocycle to curved Maurer-Cartan element of the Čech complex of `h`.
    pub fn forward(&self, psi: &Cochain) -> Result<LinComb<CechKey>> {
        let report = self.verify_twisted_cocycle(psi);
        if !report.is_empty() {
            return Err(Error::Invariant(report.join("; ")));
        }
        let (alpha, _) = self.forward_unchecked(psi)?;
        self.fukaya.kuranishi_forward(&alpha)
    }

    /// Curved Maurer-Cartan element to lift cocycle.
    pub fn backward(&self, y: &LinComb<CechKey>) -> Result<Cochain> {
        if y.keys().any(|k| dim_of(k.face) != 1 || !self.is_h(k.face, k.l)) {
            return Err(Error::Input("element is not an h-valued Čech 1-cochain".into()));
        }
        let alpha = self.fukaya.kuranishi_backward(y)?;
        let xt = &self.a + &alpha;
        let ytilde = self.tilde.from_comb(&g_lin(&self.tilde.transfer.c, &xt), 1);
        let mut psi = Cochain::new();
        for (e, yt) in ytilde {
            let x = self.ext_at(e);
            let z = self.tilde.local.at(e).bch(&vneg(&x.embed_g(&self.phi[&e])), &yt);
            if z[..x.dim_g()].iter().any(|c| !c.is_zero()) {
                return Err(Error::Invariant("edge value does not lie over φ".into()));
            }
            psi.insert(e, x.proj_h(&z));
        }
        let report = self.verify_twisted_cocycle(&psi);
        if !report.is_empty() {
            return Err(Error::Invariant(report.join("; ")));
        }
        Ok(psi)
    }

    /// The zero lift cochain.
    pub fn zero_lift(&self) -> Cochain {
        self.nerve.faces_of_dim(1).into_iter().map(|e| (e, vec![Scalar::zero(); self.ext_at(e).dim_h()])).collect()
    }

    pub fn check_sections(&self, sigma: &Cochain) -> Result<()> {
        self.check_lift_shape(sigma, 0)
    }
}

/// Checks that `phi` is an edge cochain of `g`.
pub fn check_cocycle_shape(nerve: &Arc<CoverNerve>, ext: &ExtensionDatum, phi: &Cochain) -> Result<()> {
    let local = FaceLie::new(nerve.clone(), ext.g.clone());
    check_shape(&local, phi, 1)
}

/// `Φ̃_ij = exp(−σ̃_i) exp(σ̃_j)` for sections `σ̃_i ∈ g̃ ⊗ A_i`, split as
/// `exp(φ_ij) exp(ψ_ij)`: a certified pair `(Φ, Ψ)`.
pub fn lift_coboundary(nerve: &CoverNerve, ext: &ExtensionDatum, sections: &Cochain) -> Result<(Cochain, Cochain)> {
    let tilde = ext.assemble_tilde()?;
    let (mut phi, mut psi) = (Cochain::new(), Cochain::new());
    for e in nerve.faces_of_dim(1) {
        let v = vertices(e);
        let x = ext.tensor(nerve.algebra(e));
        let t = x.assemble_tilde()?;
        let si = nerve.restrict(tilde.dim(), &sections[&(1 << v[0])], 1 << v[0], e);
        let sj = nerve.restrict(tilde.dim(), &sections[&(1 << v[1])], 1 << v[1], e);
        let z = t.bch(&vneg(&si), &sj);
        let p = x.proj_g(&z);
        let rest = t.bch(&vneg(&x.embed_g(&p)), &z);
        phi.insert(e, p);
        psi.insert(e, x.proj_h(&rest));
    }
    Ok((phi, psi))
}
