use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lie::{vneg, Vector};
use crate::linear::LinComb;
use crate::scalar::Scalar;

use super::nerve::{vertices, Face};
use super::tot::{Cech, CechKey, Cochain, FaceLie};

/// Checks that `x` has a vector of the right length on exactly the faces of
/// dimension `q`.
pub fn check_shape(local: &FaceLie, x: &Cochain, q: usize) -> Result<()> {
    let nerve = &local.nerve;
    for (f, v) in x {
        if !nerve.contains(*f) || vertices(*f).len() != q + 1 {
            return Err(Error::Input(format!("{{{}}} is not a {q}-face of the nerve", nerve.face_name(*f))));
        }
        if v.len() != local.at(*f).dim() {
            return Err(Error::Dimension(format!("value on {{{}}} has length {}, expected {}", nerve.face_name(*f), v.len(), local.at(*f).dim())));
        }
    }
    for f in nerve.faces_of_dim(q) {
        if !x.contains_key(&f) {
            return Err(Error::Input(format!("no value on {{{}}}", nerve.face_name(f))));
        }
    }
    Ok(())
}

/// The value of a cochain on `tau`, restricted to `sigma ⊇ tau`.
pub fn restricted(local: &FaceLie, x: &Cochain, tau: Face, sigma: Face) -> Vector {
    local.nerve.restrict(local.lie.dim(), &x[&tau], tau, sigma)
}

/// Per triangle `ijk`, whether `φ_ij ∗ φ_jk = φ_ik` after restriction.
pub fn verify_group_cocycle(local: &FaceLie, phi: &Cochain) -> Vec<String> {
    let tris = local.nerve.faces_of_dim(2);
    let mut out: Vec<(Face, String)> = tris
        .par_iter()
        .filter_map(|&t| {
            let v = vertices(t);
            let e = |a: usize, b: usize| restricted(local, phi, (1 << v[a]) | (1 << v[b]), t);
            let l = local.at(t);
            let lhs = l.bch(&e(0, 1), &e(1, 2));
            let rhs = e(0, 2);
            (lhs != rhs).then(|| {
                (t, format!("triangle {{{}}}: φ_ij ∗ φ_jk = {} but φ_ik = {}", local.nerve.face_name(t), l.format_element(&lhs), l.format_element(&rhs)))
            })
        })
        .collect();
    out.sort();
    out.into_iter().map(|(_, s)| s).collect()
}

/// Forward direction of the correspondence between torsor cocycles and
/// Maurer-Cartan elements of the Čech structure: the same edge data, read as
/// a degree-one cochain.
pub fn cocycle_to_mc(cech: &Cech, phi: &Cochain) -> Result<LinComb<CechKey>> {
    check_shape(&cech.local, phi, 1)?;
    let report = verify_group_cocycle(&cech.local, phi);
    if !report.is_empty() {
        return Err(Error::Invariant(report.join("; ")));
    }
    let y = cech.to_comb(phi);
    if !cech.mc_defect(&y).is_zero() {
        return Err(Error::Invariant("cocycle gives a nonzero Maurer-Cartan defect".into()));
    }
    Ok(y)
}

/// Backward direction: a Maurer-Cartan element of degree one read as edge data.
pub fn mc_to_cocycle(cech: &Cech, y: &LinComb<CechKey>) -> Result<Cochain> {
    if !y.is_homogeneous_of(1) {
        return Err(Error::Input("element is not of Čech degree one".into()));
    }
    if !cech.mc_defect(y).is_zero() {
        return Err(Error::NotMaurerCartan("Čech element".into()));
    }
    let phi = cech.from_comb(y, 1);
    let report = verify_group_cocycle(&cech.local, &phi);
    if !report.is_empty() {
        return Err(Error::Invariant(report.join("; ")));
    }
    Ok(phi)
}

/// `φ̂_ij = (−σ_i) ∗ φ_ij ∗ σ_j` on every edge.
pub fn apply_trivialization(local: &FaceLie, phi: &Cochain, sigma: &Cochain) -> Cochain {
    let mut out = Cochain::new();
    for e in local.nerve.faces_of_dim(1) {
        let v = vertices(e);
        let (si, sj) = (restricted(local, sigma, 1 << v[0], e), restricted(local, sigma, 1 << v[1], e));
        let l = local.at(e);
        let base = phi.get(&e).cloned().unwrap_or_else(|| vec![Scalar::zero(); l.dim()]);
        out.insert(e, l.bch(&l.bch(&vneg(&si), &base), &sj));
    }
    out
}

/// `φ_ij = (−σ_i) ∗ σ_j`.
pub fn coboundary(local: &FaceLie, sigma: &Cochain) -> Cochain {
    apply_trivialization(local, &Cochain::new(), sigma)
}

/// Trivializing by `σ` and then by `σ′` is trivializing by `σ ∗ σ′`.
pub fn compose_trivializations(local: &FaceLie, sigma: &Cochain, sigma2: &Cochain) -> Cochain {
    sigma.iter().map(|(f, s)| (*f, local.at(*f).bch(s, &sigma2[f]))).collect()
}
