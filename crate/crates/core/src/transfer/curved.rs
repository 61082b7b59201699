use std::collections::HashMap;
use std::marker::PhantomData;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::RwLock;

use crate::error::{Error, Result};
use crate::linear::{partition_sign, set_partitions, signed, Key, LinComb, SymTensor};
use crate::linfty::{apply_sym, compose_word, mc_defect, words, LInfty, Morphism};
use crate::scalar::Scalar;

use super::contraction::{f_lin, g_lin, k_lin, Contraction};

/// The perturbation `λ = q − d_V` of a (curved) structure relative to the
/// differential of a contraction.
pub struct Perturbation<'a, Q, C, M>(&'a Q, &'a C, PhantomData<fn() -> M>);

impl<'a, Q, C, M> Perturbation<'a, Q, C, M> {
    pub fn new(q: &'a Q, c: &'a C) -> Self {
        Perturbation(q, c, PhantomData)
    }
}

impl<L: Key, M: Key, Q: LInfty<L>, C: Contraction<L, M>> LInfty<L> for Perturbation<'_, Q, C, M> {
    fn max_arity(&self) -> usize {
        self.0.max_arity()
    }
    fn is_curved(&self) -> bool {
        self.0.is_curved()
    }
    fn bracket(&self, word: &[L]) -> LinComb<L> {
        let v = self.0.bracket(word);
        if word.len() == 1 {
            v - self.1.dv(&word[0])
        } else {
            v
        }
    }
}

/// A Taylor sequence viewed as a structure so that `a • b` can reuse the
/// composition formula.
struct AsSequence<'a, A>(&'a A);

impl<K: Key, A: Morphism<K, K>> LInfty<K> for AsSequence<'_, A> {
    fn max_arity(&self) -> usize {
        self.0.max_arity()
    }
    fn is_curved(&self) -> bool {
        self.0.has_constant()
    }
    fn bracket(&self, word: &[K]) -> LinComb<K> {
        self.0.component(word)
    }
}

/// `(a • b)_n` on a sorted word, for sequences `a` on `L` and `b: K → L`.
/// `depth` is the filtration degree of a basis key of `L`; `b₀` must lie in `F¹L`.
pub fn curved_compose<K: Key, L: Key, A, B>(a: &A, b: &B, word: &[K], depth: impl Fn(&L) -> usize) -> Result<LinComb<L>>
where
    A: Morphism<L, L>,
    B: Morphism<K, L>,
{
    if b.has_constant() && b.component(&[]).keys().any(|k| depth(k) == 0) {
        return Err(Error::Invariant("b₀ is not in F¹".into()));
    }
    Ok(compose_word(&AsSequence(a), b, word))
}

/// Whether every value of `λ` deepens the filtration by at least one step.
pub fn pro_nilpotence_check<L: Key, Q: LInfty<L> + ?Sized>(
    lambda: &Q,
    basis: &[L],
    bound: usize,
    depth: impl Fn(&L) -> usize,
) -> Vec<String> {
    let lo = if lambda.is_curved() { 0 } else { 1 };
    let mut out = Vec::new();
    for w in words(basis, lo, bound) {
        let need: usize = w.iter().map(&depth).sum::<usize>() + 1;
        for k in lambda.bracket(&w).keys() {
            if depth(k) < need {
                out.push(format!("λ{:?} has a term {k:?} of depth {} < {need}", w, depth(k)));
            }
        }
    }
    out
}

type Cache<A, B> = RwLock<HashMap<Vec<A>, LinComb<B>>>;

/// Curved transfer: `F = f + K (λ • F)`, `μ = d_M + g (λ • F)`.
pub struct Fukaya<L: Key, M: Key, Q, C> {
    pub q: Q,
    pub c: C,
    arity: usize,
    max_iter: usize,
    f0: LinComb<L>,
    cache: Cache<M, L>,
    iterations: AtomicUsize,
    _m: PhantomData<fn(L, M)>,
}

impl<L: Key, M: Key, Q: LInfty<L>, C: Contraction<L, M>> Fukaya<L, M, Q, C> {
    /// `max_iter` bounds every fixed-point loop; the filtration length of `L`
    /// plus one always suffices.
    pub fn new(q: Q, c: C, arity: usize, max_iter: usize) -> Result<Self> {
        let mut t = Fukaya {
            q,
            c,
            arity,
            max_iter,
            f0: LinComb::zero(),
            cache: RwLock::new(HashMap::new()),
            iterations: AtomicUsize::new(0),
            _m: PhantomData,
        };
        if t.q.is_curved() {
            let lam = Perturbation::new(&t.q, &t.c);
            let mut x = LinComb::zero();
            let mut n = 0;
            loop {
                n += 1;
                let next = k_lin(&t.c, &mc_defect(&lam, &x));
                if next == x {
                    break;
                }
                if n > max_iter {
                    return Err(Error::NotConverged(max_iter));
                }
                x = next;
            }
            t.iterations.fetch_max(n, Ordering::Relaxed);
            t.f0 = x;
        }
        Ok(t)
    }

    pub fn f0(&self) -> &LinComb<L> {
        &self.f0
    }

    /// Largest number of iterations any fixed point needed so far.
    pub fn iterations(&self) -> usize {
        self.iterations.load(Ordering::Relaxed)
    }

    /// `(λ • F)_n(w)` with `current` standing in for `F_n(w)`.
    fn lam_compose(&self, word: &[M], current: &LinComb<L>) -> Result<LinComb<L>> {
        let lam = Perturbation::new(&self.q, &self.c);
        let n = word.len();
        let mut out = LinComb::zero();
        let parts = if n == 0 { vec![vec![]] } else { set_partitions(n) };
        for blocks in parts {
            let p = blocks.len();
            if p > lam.max_arity() {
                continue;
            }
            let mut prod = SymTensor::unit();
            for b in &blocks {
                let v = if p == 1 {
                    current.clone()
                } else {
                    let sub: Vec<M> = b.iter().map(|&i| word[i]).collect();
                    self.f_word(&sub)?
                };
                prod = prod.times(&v);
                if prod.is_zero() {
                    break;
                }
            }
            if prod.is_zero() {
                continue;
            }
            let neg = partition_sign(word, &blocks);
            let mut m = 0;
            while m + p <= lam.max_arity() {
                out.add_scaled(&apply_sym(&lam, &prod), &signed(neg, Scalar::inv_factorial(m)));
                if self.f0.is_zero() {
                    break;
                }
                prod = prod.times(&self.f0);
                if prod.is_zero() {
                    break;
                }
                m += 1;
            }
        }
        Ok(out)
    }

    /// `F_n` on a sorted word.
    pub fn f_word(&self, word: &[M]) -> Result<LinComb<L>> {
        let n = word.len();
        if n == 0 {
            return Ok(self.f0.clone());
        }
        if n > self.arity {
            return Ok(LinComb::zero());
        }
        if let Some(v) = self.cache.read().unwrap().get(word) {
            return Ok(v.clone());
        }
        let base = if n == 1 { self.c.f(&word[0]) } else { LinComb::zero() };
        let mut x = base.clone();
        let mut it = 0;
        loop {
            it += 1;
            let next = &base + &k_lin(&self.c, &self.lam_compose(word, &x)?);
            if next == x {
                break;
            }
            if it > self.max_iter {
                return Err(Error::NotConverged(self.max_iter));
            }
            x = next;
        }
        self.iterations.fetch_max(it, Ordering::Relaxed);
        self.cache.write().unwrap().insert(word.to_vec(), x.clone());
        Ok(x)
    }

    /// `μ_n` on a sorted word.
    pub fn mu_word(&self, word: &[M]) -> Result<LinComb<M>> {
        if word.len() > self.arity {
            return Ok(LinComb::zero());
        }
        let fw = self.f_word(word)?;
        let mut out = g_lin(&self.c, &self.lam_compose(word, &fw)?);
        if word.len() == 1 {
            out.add_assign(&self.c.dw(&word[0]));
        }
        Ok(out)
    }

    pub fn structure(&self) -> CurvedTransferred<'_, L, M, Q, C> {
        CurvedTransferred(self)
    }

    pub fn morphism(&self) -> CurvedF<'_, L, M, Q, C> {
        CurvedF(self)
    }

    /// Curved Kuranishi, forward: `x ∈ MC(L)` with `K x = 0` goes to `g(x)`.
    pub fn kuranishi_forward(&self, x: &LinComb<L>) -> Result<LinComb<M>> {
        if !mc_defect(&self.q, x).is_zero() {
            return Err(Error::NotMaurerCartan("element is not Maurer-Cartan in L".into()));
        }
        if !k_lin(&self.c, x).is_zero() {
            return Err(Error::Input("element is not annihilated by the homotopy".into()));
        }
        Ok(g_lin(&self.c, x))
    }

    /// Curved Kuranishi, backward: the fixed point of `x ← f(y) + K λ_*(x)`,
    /// where `λ_*(x) = Σ_n λ_n(x^n)/n!` includes the curvature.
    pub fn kuranishi_backward(&self, y: &LinComb<M>) -> Result<LinComb<L>> {
        if !mc_defect(&self.structure(), y).is_zero() {
            return Err(Error::NotMaurerCartan("element is not Maurer-Cartan in M".into()));
        }
        let lam = Perturbation::new(&self.q, &self.c);
        let base = f_lin(&self.c, y);
        let mut x = base.clone();
        for _ in 0..=self.max_iter {
            let next = &base + &k_lin(&self.c, &mc_defect(&lam, &x));
            if next == x {
                return Ok(x);
            }
            x = next;
        }
        Err(Error::NotConverged(self.max_iter))
    }
}

pub struct CurvedTransferred<'a, L: Key, M: Key, Q, C>(&'a Fukaya<L, M, Q, C>);
pub struct CurvedF<'a, L: Key, M: Key, Q, C>(&'a Fukaya<L, M, Q, C>);

const STALL: &str = "curved transfer fixed point did not stabilise within the filtration length";

impl<L: Key, M: Key, Q: LInfty<L>, C: Contraction<L, M>> LInfty<M> for CurvedTransferred<'_, L, M, Q, C> {
    fn max_arity(&self) -> usize {
        self.0.arity
    }
    fn is_curved(&self) -> bool {
        self.0.q.is_curved()
    }
    fn bracket(&self, word: &[M]) -> LinComb<M> {
        self.0.mu_word(word).expect(STALL)
    }
}

impl<L: Key, M: Key, Q: LInfty<L>, C: Contraction<L, M>> Morphism<M, L> for CurvedF<'_, L, M, Q, C> {
    fn max_arity(&self) -> usize {
        self.0.arity
    }
    fn has_constant(&self) -> bool {
        !self.0.f0.is_zero()
    }
    fn component(&self, word: &[M]) -> LinComb<L> {
        self.0.f_word(word).expect(STALL)
    }
}
