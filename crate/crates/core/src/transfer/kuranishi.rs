use crate::error::{Error, Result};
use crate::linear::{Key, LinComb, SymTensor};
use crate::linfty::{mc_defect, LInfty};
use crate::scalar::Scalar;

use super::contraction::{dv_lin, f_lin, k_lin, Contraction};
use super::package::Transfer;

/// `ρ(x) = (G_*(x), Kx)` for a Maurer-Cartan element `x` of `V`.
pub fn kuranishi<V: Key, W: Key, Q: LInfty<V>, C: Contraction<V, W>>(
    t: &Transfer<V, W, Q, C>,
    x: &LinComb<V>,
) -> Result<(LinComb<W>, LinComb<V>)> {
    if !mc_defect(&t.q, x).is_zero() {
        return Err(Error::NotMaurerCartan("element is not Maurer-Cartan in V".into()));
    }
    Ok((t.g_push(x), k_lin(&t.c, x)))
}

/// Whether `k` lies in the image of `K`, i.e. `K d k = −k`.
pub fn in_image_of_k<V: Key, W: Key, C: Contraction<V, W>>(c: &C, k: &LinComb<V>) -> bool {
    k_lin(c, &dv_lin(c, k)) == -k
}

/// `ρ⁻¹(y, k)` by the iteration
/// `x ← f(y) − d k + Σ_{i≥2} (K q_i − f g_i)(x^i)/i!`.
pub fn kuranishi_inverse<V: Key, W: Key, Q: LInfty<V>, C: Contraction<V, W>>(
    t: &Transfer<V, W, Q, C>,
    y: &LinComb<W>,
    k: &LinComb<V>,
) -> Result<LinComb<V>> {
    if !t.r_defect(y).is_zero() {
        return Err(Error::NotMaurerCartan("element is not Maurer-Cartan in W".into()));
    }
    if !in_image_of_k(&t.c, k) {
        return Err(Error::Input("second component is not in the image of K".into()));
    }
    let base = f_lin(&t.c, y) - dv_lin(&t.c, k);
    let bound = 2 * t.arity() + 4;
    let mut x = base.clone();
    for _ in 0..bound {
        let next = &base + &step(t, &x);
        if next == x {
            return Ok(x);
        }
        x = next;
    }
    Err(Error::NotConverged(bound))
}

fn step<V: Key, W: Key, Q: LInfty<V>, C: Contraction<V, W>>(t: &Transfer<V, W, Q, C>, x: &LinComb<V>) -> LinComb<V> {
    let mut gs = LinComb::zero();
    let mut pow = SymTensor::unit().times(x);
    for i in 2..=t.arity() {
        pow = pow.times(x);
        if pow.is_zero() {
            break;
        }
        let gi = pow.apply(|w| t.g_word(w));
        gs.add_scaled(&gi, &Scalar::inv_factorial(i));
    }
    k_lin(&t.c, &t.higher(x)) - f_lin(&t.c, &gs)
}
