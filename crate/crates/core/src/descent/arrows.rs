use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linear::LinComb;
use crate::linfty::line::evaluate;
use crate::linfty::{mc_defect, TKey, TensorForms};
use crate::scalar::Scalar;
use crate::simplicial::{on_face, value_on, BaseDiff, CKey, SimplexContraction};
use crate::transfer::contraction::k_lin;
use crate::transfer::curved::CurvedTransferred;
use crate::transfer::{Contraction, Fukaya};

use super::curved::{CurvedCech, CurvedL};
use super::nerve::dim_of;
use super::tot::{CechKey, Cochain, TwContraction, TwKey};

type Structure<'a> = CurvedTransferred<'a, TwKey, CechKey, CurvedL, TwContraction>;

/// Curved transfer of `L(h) ⊗ Ω*(Δ_n)` onto `L(h) ⊗ C*(Δ_n)`.
pub type SimplexFukaya<'a> = Fukaya<TKey<CechKey>, CKey<CechKey>, TensorForms<Structure<'a>>, SimplexContraction<CechKey>>;

/// A curved Maurer-Cartan element of `L(h) ⊗ Ω₁` annihilated by the Dupont
/// homotopy, together with its cochain image `(source, edge, target)`.
#[derive(Clone, Debug)]
pub struct Arrow {
    pub source: LinComb<CechKey>,
    pub target: LinComb<CechKey>,
    pub edge: LinComb<CechKey>,
    pub path: LinComb<TKey<CechKey>>,
}

/// Arrows between curved Maurer-Cartan elements of the Čech complex of `h`
/// and their composition through 2-simplices.
pub struct CurvedArrows<'a> {
    pub cc: &'a CurvedCech,
    pub line: SimplexFukaya<'a>,
    pub triangle: SimplexFukaya<'a>,
    max_iter: usize,
}

fn simplex<'a>(cc: &'a CurvedCech, n: usize, arity: usize, max_iter: usize) -> Result<SimplexFukaya<'a>> {
    let dw = TwContraction::new(cc.nerve.clone(), cc.tilde.lie().dim());
    let base_d: BaseDiff<CechKey> = Arc::new(move |k: &CechKey| dw.dw(k));
    Fukaya::new(TensorForms::new(cc.fukaya.structure()), SimplexContraction::new(n, base_d), arity, max_iter)
}

impl<'a> CurvedArrows<'a> {
    /// Brackets of `n` elements of `h`-depth at least one have depth at least
    /// `n`, so the arity is the largest depth in `h`.
    pub fn new(cc: &'a CurvedCech) -> Result<Self> {
        let arity = cc.h_basis(0).iter().chain(&cc.h_basis(1)).map(|k| cc.depth_cech(k)).max().unwrap_or(1).max(1);
        let max_iter = 4 * (arity + cc.nerve.dim()) + 8;
        Ok(CurvedArrows { cc, line: simplex(cc, 1, arity, max_iter)?, triangle: simplex(cc, 2, arity, max_iter)?, max_iter })
    }

    fn check_h(&self, x: &LinComb<CechKey>, q: usize) -> Result<()> {
        let h: std::collections::HashSet<CechKey> = self.cc.h_basis(q).into_iter().collect();
        if x.keys().any(|k| !h.contains(k) || dim_of(k.face) != q) {
            return Err(Error::Input(format!("element is not an h-valued Čech {q}-cochain")));
        }
        Ok(())
    }

    /// The arrow leaving `y0` with edge value `e`: solves the edge component
    /// of the Maurer-Cartan equation on `C*(Δ₁)` for the target, then lifts
    /// to `Ω₁` by curved Kuranishi.
    pub fn arrow(&self, y0: &LinComb<CechKey>, e: &LinComb<CechKey>) -> Result<Arrow> {
        self.check_h(y0, 1)?;
        self.check_h(e, 0)?;
        if !self.cc.mc_defect(y0).is_zero() {
            return Err(Error::NotMaurerCartan("source of the arrow".into()));
        }
        let fixed = on_face(y0, &[0]) + on_face(e, &[0, 1]);
        let mut y1 = y0.clone();
        let mut n = 0;
        let y = loop {
            let y = &fixed + &on_face(&y1, &[1]);
            let defect = mc_defect(&self.line.structure(), &y);
            let edge = value_on(&defect, &[0, 1]);
            if edge.is_zero() {
                if !defect.is_zero() {
                    return Err(Error::Invariant("arrow target is not Maurer-Cartan".into()));
                }
                break y;
            }
            n += 1;
            if n > self.max_iter {
                return Err(Error::NotConverged(self.max_iter));
            }
            y1.add_assign(&edge);
        };
        let path = self.line.kuranishi_backward(&y)?;
        Ok(Arrow { source: y0.clone(), target: y1, edge: e.clone(), path })
    }

    /// Whether `path` is Maurer-Cartan in `L(h) ⊗ Ω₁` and annihilated by the homotopy.
    pub fn is_arrow(&self, path: &LinComb<TKey<CechKey>>) -> bool {
        mc_defect(&self.line.q, path).is_zero() && k_lin(&self.line.c, path).is_zero()
    }

    /// Values of a path at `s = 0` and `s = 1`.
    pub fn endpoints(path: &LinComb<TKey<CechKey>>) -> (LinComb<CechKey>, LinComb<CechKey>) {
        (evaluate(path, &Scalar::zero()), evaluate(path, &Scalar::one()))
    }

    /// `first` then `second`: the edge `[02]` of the Maurer-Cartan 2-simplex
    /// with edges `[01]`, `[12]` given, and the arrow it defines.
    pub fn compose(&self, first: &Arrow, second: &Arrow) -> Result<Arrow> {
        if first.target != second.source {
            return Err(Error::Input("arrows are not composable".into()));
        }
        let fixed = on_face(&first.source, &[0])
            + on_face(&first.target, &[1])
            + on_face(&second.target, &[2])
            + on_face(&first.edge, &[0, 1])
            + on_face(&second.edge, &[1, 2]);
        let mut e02 = &first.edge + &second.edge;
        let mut n = 0;
        loop {
            let y = &fixed + &on_face(&e02, &[0, 2]);
            let defect = mc_defect(&self.triangle.structure(), &y);
            let top = value_on(&defect, &[0, 1, 2]);
            if top.is_zero() {
                if !defect.is_zero() {
                    return Err(Error::Invariant("composite 2-simplex is not Maurer-Cartan".into()));
                }
                break;
            }
            n += 1;
            if n > self.max_iter {
                return Err(Error::NotConverged(self.max_iter));
            }
            e02.add_assign(&top);
        }
        let out = self.arrow(&first.source, &e02)?;
        if out.target != second.target {
            return Err(Error::Invariant("composite arrow misses the target".into()));
        }
        Ok(out)
    }

    /// The arrow attached to trivializing the lift `ψ` by sections `σ_i ∈ h ⊗ A_i`:
    /// it leaves the image of `ψ` with edge value `σ`.
    pub fn trivialization_arrow(&self, psi: &Cochain, sigma: &Cochain) -> Result<Arrow> {
        self.cc.check_sections(sigma)?;
        let y0 = self.cc.forward(psi)?;
        self.arrow(&y0, &self.cc.h_to_comb(sigma))
    }

    /// An arrow read back as `(ψ, ψ′, σ)` with `ψ′` the twisted equivalent of `ψ` by `σ`.
    pub fn arrow_to_trivialization(&self, arrow: &Arrow) -> Result<(Cochain, Cochain, Cochain)> {
        if !self.is_arrow(&arrow.path) || Self::endpoints(&arrow.path) != (arrow.source.clone(), arrow.target.clone()) {
            return Err(Error::Invariant("not an arrow between its endpoints".into()));
        }
        let psi = self.cc.backward(&arrow.source)?;
        let psi2 = self.cc.backward(&arrow.target)?;
        let sigma = self.cc.comb_to_h(&arrow.edge, 0);
        if !self.cc.verify_twisted_equiv(&psi, &psi2, &sigma) {
            return Err(Error::Invariant("arrow endpoints are not related by its edge".into()));
        }
        Ok((psi, psi2, sigma))
    }

    /// Trivializing by `σ` and then by `σ′` is trivializing by `σ ∗ σ′`.
    pub fn compose_sections(&self, sigma: &Cochain, sigma2: &Cochain) -> Cochain {
        sigma.iter().map(|(f, s)| (*f, self.cc.ext_at(*f).h.bch(s, &sigma2[f]))).collect()
    }
}
