use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::linear::LinComb;

use super::curved::CurvedCech;
use super::tot::{CechKey, Cochain};

/// The first depth at which the linearized lift equation `d y_p = −R_p` has
/// no solution, with its inhomogeneous term `R_p` (an `h`-valued 2-cochain).
#[derive(Clone, Debug, PartialEq)]
pub struct Obstruction {
    pub level: usize,
    pub term: Cochain,
    pub partial: LinComb<CechKey>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LiftOutcome {
    Lift { psi: Cochain, y: LinComb<CechKey> },
    Obstruction(Obstruction),
}

/// Solves the curved Maurer-Cartan equation of `L(h)` depth by depth.
///
/// Brackets of two or more `h`-elements and the perturbation part of `μ₁`
/// raise the depth, so at depth `p` the equation on the depth-`p` part of `y`
/// is the Čech equation `d y_p = −R_p(y_{<p})`. A particular solution is taken
/// at every level.
pub fn solve_lift(cc: &CurvedCech) -> Result<LiftOutcome> {
    let ones = cc.h_basis(1);
    let twos = cc.h_basis(2);
    let depths: BTreeSet<usize> = ones.iter().chain(&twos).map(|k| cc.depth_cech(k)).collect();
    let mut y = LinComb::zero();
    for &p in &depths {
        let r = cc.mc_defect(&y);
        if r.keys().any(|k| cc.depth_cech(k) < p) {
            return Err(Error::Invariant(format!("defect below depth {p} after solving it")));
        }
        let b = r.filter(|k| cc.depth_cech(k) == p);
        if b.is_zero() {
            continue;
        }
        let cols: Vec<CechKey> = ones.iter().copied().filter(|k| cc.depth_cech(k) == p).collect();
        let rows: Vec<CechKey> = twos.iter().copied().filter(|k| cc.depth_cech(k) == p).collect();
        let m = cc.tilde.differential_matrix(&cols, &rows);
        let rhs: Vec<_> = rows.iter().map(|k| -b.coeff(k)).collect();
        match m.solve(&rhs) {
            Some(x) => y.add_assign(&LinComb::from_terms(cols.into_iter().zip(x))),
            None => return Ok(LiftOutcome::Obstruction(Obstruction { level: p, term: cc.comb_to_h(&b, 2), partial: y })),
        }
    }
    if !cc.mc_defect(&y).is_zero() {
        return Err(Error::Invariant("order-by-order solution leaves a defect".into()));
    }
    let psi = cc.backward(&y)?;
    Ok(LiftOutcome::Lift { psi, y })
}
