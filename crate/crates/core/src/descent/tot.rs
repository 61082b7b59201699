use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use crate::forms::{d_mono, dupont, integrate_top, whitney, Form, FormKey};
use crate::lie::{LieAlgebra, Vector};
use crate::matrix::Matrix;
use crate::linear::{Key, LinComb};
use crate::linfty::{LInfty, TKey, TensorForms};
use crate::scalar::Scalar;
use crate::transfer::{Contraction, Transfer};

use super::nerve::{dim_of, positions, CoverNerve, Face};

/// Basis element of `L ⊗ A_σ` attached to the face `σ`, at index
/// `l = i · dim A_σ + r`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FKey {
    pub face: Face,
    pub l: u16,
}

impl Key for FKey {
    fn degree(&self) -> i32 {
        0
    }
}

/// Basis element of the Čech complex: `L ⊗ A_σ` in degree `dim σ`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CechKey {
    pub face: Face,
    pub l: u16,
}

impl Key for CechKey {
    fn degree(&self) -> i32 {
        dim_of(self.face) as i32
    }
}

impl CechKey {
    /// Filtration level: `q`-cochains sit in level `q − 1`.
    pub fn level(&self) -> i32 {
        self.degree() - 1
    }
}

/// Element of the Thom-Whitney totalization: a polynomial form per face.
pub type TwKey = TKey<FKey>;

/// A cochain given face by face.
pub type Cochain = BTreeMap<Face, Vector>;

/// `∏_σ L ⊗ A_σ` with the facewise bracket, as an L∞ structure on [`FKey`].
pub struct FaceLie {
    pub nerve: Arc<CoverNerve>,
    pub lie: LieAlgebra,
    local: HashMap<Face, LieAlgebra>,
}

impl FaceLie {
    pub fn new(nerve: Arc<CoverNerve>, lie: LieAlgebra) -> Self {
        let local = nerve.faces().iter().map(|&f| (f, lie.tensor(nerve.algebra(f)))).collect();
        FaceLie { nerve, lie, local }
    }

    /// `L ⊗ A_σ`.
    pub fn at(&self, face: Face) -> &LieAlgebra {
        &self.local[&face]
    }
}

impl LInfty<FKey> for FaceLie {
    fn max_arity(&self) -> usize {
        2
    }

    fn bracket(&self, word: &[FKey]) -> LinComb<FKey> {
        if word.len() != 2 || word[0].face != word[1].face {
            return LinComb::zero();
        }
        let face = word[0].face;
        let mut out = LinComb::zero();
        for (k, c) in self.at(face).basis_bracket(word[0].l as usize, word[1].l as usize) {
            out.add_term(FKey { face, l: *k as u16 }, &-c);
        }
        out
    }
}

type FormCache<K> = RwLock<HashMap<K, Form>>;

/// The termwise Dupont contraction between `Tot_TW` and the Čech complex:
/// on a face `σ` of dimension `n` it is `(E, I, K)` on `Ω*(Δ_n) ⊗ L ⊗ A_σ`.
pub struct TwContraction {
    pub nerve: Arc<CoverNerve>,
    dim_l: usize,
    whitney: FormCache<(usize, Vec<usize>)>,
    dupont: FormCache<(usize, FormKey)>,
}

impl TwContraction {
    pub fn new(nerve: Arc<CoverNerve>, dim_l: usize) -> Self {
        TwContraction { nerve, dim_l, whitney: RwLock::new(HashMap::new()), dupont: RwLock::new(HashMap::new()) }
    }

    fn cached<K: Eq + std::hash::Hash + Clone>(cache: &FormCache<K>, key: K, make: impl FnOnce() -> Form) -> Form {
        if let Some(v) = cache.read().unwrap().get(&key) {
            return v.clone();
        }
        let v = make();
        cache.write().unwrap().insert(key, v.clone());
        v
    }

    /// `l ∈ L ⊗ A_τ` restricted to `σ`.
    pub fn restrict_key(&self, l: u16, tau: Face, sigma: Face) -> Vec<(u16, Scalar)> {
        let m = self.nerve.restriction(tau, sigma);
        let (dt, ds) = (m.cols, m.rows);
        let (i, r) = (l as usize / dt, l as usize % dt);
        (0..ds).filter(|&s| !m.get(s, r).is_zero()).map(|s| ((i * ds + s) as u16, m.get(s, r).clone())).collect()
    }

    pub fn dim_l(&self) -> usize {
        self.dim_l
    }
}

impl Contraction<TwKey, CechKey> for TwContraction {
    fn f(&self, w: &CechKey) -> LinComb<TwKey> {
        let mut out = LinComb::zero();
        for &s in self.nerve.faces() {
            if w.face & !s != 0 {
                continue;
            }
            let n = dim_of(s);
            let pos = positions(w.face, s);
            let form = Self::cached(&self.whitney, (n, pos.clone()), || whitney(n, &pos));
            for (l, c) in self.restrict_key(w.l, w.face, s) {
                for (f, e) in form.iter() {
                    out.add_term(TKey { l: FKey { face: s, l }, f: *f }, &(&c * e));
                }
            }
        }
        out
    }

    fn g(&self, v: &TwKey) -> LinComb<CechKey> {
        let n = dim_of(v.l.face);
        let c = integrate_top(&Form::basis(v.f), n);
        LinComb::term(CechKey { face: v.l.face, l: v.l.l }, c)
    }

    fn k(&self, v: &TwKey) -> LinComb<TwKey> {
        let n = dim_of(v.l.face);
        if n == 0 {
            return LinComb::zero();
        }
        let form = Self::cached(&self.dupont, (n, v.f), || dupont(n, &Form::basis(v.f)));
        form.relabel(|f| TKey { l: v.l, f: *f })
    }

    fn dv(&self, v: &TwKey) -> LinComb<TwKey> {
        d_mono(&v.f).relabel(|f| TKey { l: v.l, f: *f })
    }

    fn dw(&self, w: &CechKey) -> LinComb<CechKey> {
        let mut out = LinComb::zero();
        for (s, pos) in self.nerve.cofaces(w.face) {
            let sign = Scalar::sign(pos as i64);
            for (l, c) in self.restrict_key(w.l, w.face, s) {
                out.add_term(CechKey { face: s, l }, &(&c * &sign));
            }
        }
        out
    }
}

pub type CechTransfer = Transfer<TwKey, CechKey, TensorForms<Arc<FaceLie>>, TwContraction>;

/// The Čech complex of a Lie algebra over a nerve with its transferred
/// L∞ structure.
pub struct Cech {
    pub nerve: Arc<CoverNerve>,
    pub local: Arc<FaceLie>,
    pub transfer: Arc<CechTransfer>,
}

impl Cech {
    /// Brackets of arity above the nilpotency class of `lie` vanish.
    pub fn new(nerve: Arc<CoverNerve>, lie: LieAlgebra) -> Self {
        let arity = lie.class().max(1);
        let dim_l = lie.dim();
        let local = Arc::new(FaceLie::new(nerve.clone(), lie));
        let c = TwContraction::new(nerve.clone(), dim_l);
        let transfer = Arc::new(Transfer::new(TensorForms::new(local.clone()), c, arity));
        Cech { nerve, local, transfer }
    }

    pub fn lie(&self) -> &LieAlgebra {
        &self.local.lie
    }

    pub fn dim_at(&self, face: Face) -> usize {
        self.lie().dim() * self.nerve.algebra(face).dim()
    }

    /// Basis of Čech degree `q`.
    pub fn basis(&self, q: usize) -> Vec<CechKey> {
        let mut out = Vec::new();
        for f in self.nerve.faces_of_dim(q) {
            out.extend((0..self.dim_at(f)).map(|l| CechKey { face: f, l: l as u16 }));
        }
        out
    }

    pub fn full_basis(&self) -> Vec<CechKey> {
        (0..=self.nerve.dim()).flat_map(|q| self.basis(q)).collect()
    }

    pub fn to_comb(&self, x: &Cochain) -> LinComb<CechKey> {
        let mut out = LinComb::zero();
        for (f, v) in x {
            for (l, c) in v.iter().enumerate() {
                out.add_term(CechKey { face: *f, l: l as u16 }, c);
            }
        }
        out
    }

    /// Components of the given Čech degree, zero faces included.
    pub fn from_comb(&self, x: &LinComb<CechKey>, q: usize) -> Cochain {
        let mut out: Cochain = self.nerve.faces_of_dim(q).into_iter().map(|f| (f, vec![Scalar::zero(); self.dim_at(f)])).collect();
        for (k, c) in x.iter() {
            if let Some(v) = out.get_mut(&k.face) {
                v[k.l as usize] = c.clone();
            }
        }
        out
    }

    pub fn differential(&self, x: &LinComb<CechKey>) -> LinComb<CechKey> {
        x.map(|w| self.transfer.c.dw(w))
    }

    /// `Σ_i q_i(y^i)/i!` for a degree-one element.
    pub fn mc_defect(&self, y: &LinComb<CechKey>) -> LinComb<CechKey> {
        self.transfer.r_defect(y)
    }

    /// Faces on which a degree-two element is nonzero.
    pub fn support(&self, x: &LinComb<CechKey>) -> Vec<Face> {
        let mut fs: Vec<Face> = x.keys().map(|k| k.face).collect();
        fs.dedup();
        fs
    }

    /// Basis words whose bracket has a term below `Σ levels + 1`.
    pub fn filtration_check(&self, bound: usize) -> Vec<String> {
        let basis = self.full_basis();
        let mut out = Vec::new();
        for w in crate::linfty::words(&basis, 1, bound) {
            let need: i32 = w.iter().map(|k| k.level()).sum::<i32>() + 1;
            for k in self.transfer.bracket(&w).keys() {
                if k.level() < need {
                    out.push(format!("q{} on {:?} has a term on level {} < {need}", w.len(), w, k.level()));
                }
            }
        }
        out
    }

    /// Matrix of the Čech differential from `cols` (degree `q`) to `rows` (degree `q + 1`).
    pub fn differential_matrix(&self, cols: &[CechKey], rows: &[CechKey]) -> Matrix {
        let index: HashMap<CechKey, usize> = rows.iter().enumerate().map(|(i, k)| (*k, i)).collect();
        let mut m = Matrix::zeros(rows.len(), cols.len());
        for (j, k) in cols.iter().enumerate() {
            for (r, c) in self.transfer.c.dw(k).iter() {
                if let Some(&i) = index.get(r) {
                    m.add_to(i, j, c);
                }
            }
        }
        m
    }

    /// A basis of the Čech `q`-cocycles.
    pub fn cocycle_basis(&self, q: usize) -> Vec<Cochain> {
        let cols = self.basis(q);
        let m = self.differential_matrix(&cols, &self.basis(q + 1));
        m.kernel().into_iter().map(|v| self.from_comb(&LinComb::from_terms(cols.iter().copied().zip(v)), q)).collect()
    }

    /// Whether the degree-`q` cochain `x` is a Čech coboundary.
    pub fn is_coboundary(&self, x: &Cochain, q: usize) -> bool {
        if q == 0 {
            return x.values().all(|v| v.iter().all(|c| c.is_zero()));
        }
        let rows = self.basis(q);
        let m = self.differential_matrix(&self.basis(q - 1), &rows);
        let b = self.to_comb(x);
        m.solve(&rows.iter().map(|k| b.coeff(k)).collect::<Vec<_>>()).is_some()
    }
}
