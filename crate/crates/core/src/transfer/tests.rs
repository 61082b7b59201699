use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::lie::examples::{heisenberg, upper_triangular};
use crate::lie::LieAlgebra;
use crate::linear::{permutations, reorder_sign, signed, BasisKey, Key, LinComb, SymTensor};
use crate::linfty::{eval, jacobi_check, mc_defect, morphism_check, words, LInfty, LieLInfty, Morphism, TKey, TensorForms};
use crate::scalar::Scalar;
use crate::simplicial::{cochain_basis, form_monomials, no_diff, CKey, SimplexContraction};

type V = TKey<BasisKey>;
type W = CKey<BasisKey>;
type SimplexTransfer = Transfer<V, W, TensorForms<LieLInfty>, SimplexContraction<BasisKey>>;

fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn simplex_transfer(lie: LieAlgebra, n: usize) -> SimplexTransfer {
    let arity = lie.class().max(2);
    Transfer::new(TensorForms::new(LieLInfty::new(lie)), SimplexContraction::new(n, no_diff()), arity)
}

fn lie_keys(dim: usize) -> Vec<BasisKey> {
    (0..dim).map(LieLInfty::key).collect()
}

fn v_sample(n: usize, p: u32, dim: usize) -> Vec<V> {
    form_monomials(n, p).into_iter().flat_map(|f| lie_keys(dim).into_iter().map(move |l| TKey { l, f })).collect()
}

#[test]
fn identity_contraction_collapses() {
    let q = LieLInfty::new(heisenberg());
    let basis = q.basis();
    let t = Transfer::new(LieLInfty::new(heisenberg()), IdentityContraction(|_: &BasisKey| LinComb::zero()), 3);
    for w in words(&basis, 1, 3) {
        assert_eq!(t.r_word(&w), q.bracket(&w));
        if w.len() >= 2 {
            assert!(t.f_word(&w).is_zero());
            assert!(t.g_word(&w).is_zero());
        }
    }
}

#[test]
fn binary_bracket_is_g_q_f_f() {
    let t = simplex_transfer(heisenberg(), 1);
    let ws = cochain_basis(1, &lie_keys(3));
    for w in words(&ws, 2, 2) {
        let fa = t.c.f(&w[0]);
        let fb = t.c.f(&w[1]);
        let expect = contraction::g_lin(&t.c, &eval(&t.q, &[&fa, &fb]));
        assert_eq!(t.r_word(&w), expect, "{w:?}");
    }
}

#[test]
fn transferred_structure_on_interval() {
    let t = simplex_transfer(heisenberg(), 1);
    let ws = cochain_basis(1, &lie_keys(3));
    assert!(jacobi_check(&t, &ws, 4).is_empty());
    assert!(morphism_check(&t.f_morphism(), &t, &t.q, &ws, 3).is_empty());
    let vs = v_sample(1, 1, 3);
    assert!(morphism_check(&t.g_morphism(), &t.q, &t, &vs, 3).is_empty());
}

#[test]
fn ternary_bracket_appears_in_class_three() {
    let t = simplex_transfer(upper_triangular(4), 1);
    let ws = cochain_basis(1, &lie_keys(6));
    let nonzero = words(&ws, 3, 3).into_iter().any(|w| !t.r_word(&w).is_zero());
    assert!(nonzero);
    // Heisenberg has class two, so every tree with three leaves vanishes
    let h = simplex_transfer(heisenberg(), 1);
    let hs = cochain_basis(1, &lie_keys(3));
    assert!(words(&hs, 3, 3).into_iter().all(|w| h.r_word(&w).is_zero()));
}

/// `K^Σ_i` by summing over all orderings:
/// `(1/i!) Σ_σ ε(σ) Σ_j (fg)^{⊗(j−1)} ⊗ K ⊗ id^{⊗(i−j)}` on `v_σ`.
fn brute_k_sigma(t: &SimplexTransfer, word: &[V]) -> SymTensor<V> {
    let n = word.len();
    let mut out = SymTensor::zero();
    for perm in permutations(n) {
        let neg = reorder_sign(word, &perm);
        let w: Vec<V> = perm.iter().map(|&i| word[i]).collect();
        for j in 0..n {
            let mut factors = Vec::new();
            let mut sign = neg;
            for (p, v) in w.iter().enumerate() {
                let x = LinComb::basis(*v);
                if p < j {
                    factors.push(contraction::f_lin(&t.c, &t.c.g(v)));
                    sign ^= v.shifted_odd();
                } else if p == j {
                    factors.push(contraction::k_lin(&t.c, &x));
                } else {
                    factors.push(x);
                }
            }
            let refs: Vec<&LinComb<V>> = factors.iter().collect();
            out.add_scaled(&SymTensor::product_of(&refs), &signed(sign, Scalar::inv_factorial(n)));
        }
    }
    out
}

#[test]
fn symmetrised_homotopy_matches_permutation_sum() {
    let t = simplex_transfer(heisenberg(), 2);
    let vs: Vec<V> = v_sample(2, 1, 2);
    for w in words(&vs, 2, 3).into_iter().step_by(7) {
        let a = t.k_sigma(&w);
        let b = brute_k_sigma(&t, &w);
        assert_eq!(format!("{a:?}"), format!("{b:?}"), "{w:?}");
    }
}

fn random_poly_one_form(rng: &mut ChaCha8Rng, dim: usize) -> LinComb<V> {
    let mut x = LinComb::zero();
    for f in form_monomials(1, 2).into_iter().filter(|f| f.mask == 1) {
        for l in lie_keys(dim) {
            if rng.gen_bool(0.5) {
                x.add_term(TKey { l, f }, &Scalar::frac(rng.gen_range(-3..=3), rng.gen_range(1..=3)));
            }
        }
    }
    x
}

fn random_edge(rng: &mut ChaCha8Rng, dim: usize) -> LinComb<W> {
    LinComb::from_terms(lie_keys(dim).into_iter().map(|l| (CKey { l, face: 0b11 }, s(rng.gen_range(-2..=2)))))
}

#[test]
fn kuranishi_round_trips_on_interval() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let t = simplex_transfer(heisenberg(), 1);
    for _ in 0..25 {
        // on Δ₁ every degree-one element of Ω ⊗ g is Maurer-Cartan
        let x = random_poly_one_form(&mut rng, 3);
        let (y, k) = kuranishi(&t, &x).unwrap();
        assert!(t.r_defect(&y).is_zero());
        assert_eq!(kuranishi_inverse(&t, &y, &k).unwrap(), x);
        let y2 = random_edge(&mut rng, 3);
        let k2 = contraction::k_lin(&t.c, &random_poly_one_form(&mut rng, 3));
        let x2 = kuranishi_inverse(&t, &y2, &k2).unwrap();
        assert_eq!(kuranishi(&t, &x2).unwrap(), (y2.clone(), k2));
        // ρ⁻¹(y, 0) = F_*(y) lies in Ker K and G_* restricts to g₁ there
        let x0 = kuranishi_inverse(&t, &y2, &LinComb::zero()).unwrap();
        assert_eq!(x0, t.f_push(&y2));
        assert!(contraction::k_lin(&t.c, &x0).is_zero());
        assert_eq!(contraction::g_lin(&t.c, &x0), y2);
    }
}

#[test]
fn element_routes_agree_with_tables() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let t = simplex_transfer(upper_triangular(4), 1);
    for _ in 0..5 {
        let y = random_edge(&mut rng, 6) + LinComb::basis(CKey { l: LieLInfty::key(1), face: 0b01 });
        assert_eq!(t.f_push(&y), crate::linfty::pushforward(&t.f_morphism(), &y));
        assert_eq!(t.r_defect(&y), mc_defect(&t, &y));
    }
}

#[test]
fn kuranishi_rejects_bad_input() {
    let t = simplex_transfer(heisenberg(), 1);
    let y = random_edge(&mut ChaCha8Rng::seed_from_u64(1), 3);
    // a Whitney form is not in the image of K
    let k = t.c.f(&CKey { l: LieLInfty::key(0), face: 0b01 });
    assert!(kuranishi_inverse(&t, &y, &k).is_err());
}

#[test]
fn abelian_inverse_is_linear() {
    let t = simplex_transfer(LieAlgebra::abelian(&["a", "b"]), 1);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let y = random_edge(&mut rng, 2);
    let k = contraction::k_lin(&t.c, &random_poly_one_form(&mut rng, 2));
    let x = kuranishi_inverse(&t, &y, &k).unwrap();
    assert_eq!(x, contraction::f_lin(&t.c, &y) - contraction::dv_lin(&t.c, &k));
}

#[test]
fn fukaya_reproduces_uncurved_transfer() {
    let lie = upper_triangular(4);
    let t = simplex_transfer(lie.clone(), 1);
    let fk = Fukaya::new(TensorForms::new(LieLInfty::new(lie)), SimplexContraction::new(1, no_diff()), 3, 8).unwrap();
    let ws = cochain_basis(1, &lie_keys(6));
    for w in words(&ws, 1, 3) {
        assert_eq!(fk.f_word(&w).unwrap(), t.f_word(&w), "{w:?}");
        assert_eq!(fk.mu_word(&w).unwrap(), t.r_word(&w), "{w:?}");
    }
    assert!(fk.f0().is_zero());
}

#[test]
fn fukaya_with_zero_homotopy() {
    let q = LieLInfty::new(heisenberg());
    let basis = q.basis();
    let fk = Fukaya::new(LieLInfty::new(heisenberg()), IdentityContraction(|_: &BasisKey| LinComb::zero()), 2, 4).unwrap();
    for w in words(&basis, 1, 2) {
        let f = fk.f_word(&w).unwrap();
        assert_eq!(f, if w.len() == 1 { LinComb::basis(w[0]) } else { LinComb::zero() });
        assert_eq!(fk.mu_word(&w).unwrap(), q.bracket(&w));
    }
    assert_eq!(fk.iterations(), 1);
}

/// `d + c₀` on `Ω(Δ₂) ⊗ g` with a Whitney curvature `c₀`.
struct ConstantCurvature {
    inner: TensorForms<LieLInfty>,
    c0: LinComb<V>,
}

impl LInfty<V> for ConstantCurvature {
    fn max_arity(&self) -> usize {
        1
    }
    fn is_curved(&self) -> bool {
        true
    }
    fn bracket(&self, word: &[V]) -> LinComb<V> {
        match word.len() {
            0 => self.c0.clone(),
            1 => self.inner.bracket(word),
            _ => LinComb::zero(),
        }
    }
}

#[test]
fn fukaya_constant_curvature() {
    let c = SimplexContraction::new(2, no_diff());
    let top = CKey { l: LieLInfty::key(2), face: 0b111 };
    let c0 = c.f(&top);
    let q = ConstantCurvature { inner: TensorForms::new(LieLInfty::new(heisenberg())), c0 };
    let fk = Fukaya::new(q, c, 1, 4).unwrap();
    assert!(fk.f0().is_zero());
    assert_eq!(fk.mu_word(&[]).unwrap(), LinComb::basis(top));
    let ws = cochain_basis(2, &lie_keys(3));
    for w in &ws {
        assert_eq!(fk.f_word(&[*w]).unwrap(), fk.c.f(w));
    }
}

#[test]
fn curved_kuranishi_reduces_to_uncurved() {
    let lie = heisenberg();
    let t = simplex_transfer(lie.clone(), 1);
    let fk = Fukaya::new(TensorForms::new(LieLInfty::new(lie)), SimplexContraction::new(1, no_diff()), 2, 8).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..5 {
        let y = random_edge(&mut rng, 3);
        let x = fk.kuranishi_backward(&y).unwrap();
        assert_eq!(x, kuranishi_inverse(&t, &y, &LinComb::zero()).unwrap());
        assert_eq!(fk.kuranishi_forward(&x).unwrap(), y);
    }
}

#[test]
fn composition_unit_and_constants() {
    use crate::linfty::{Identity, Table};
    let basis: Vec<BasisKey> = (0..3).map(|i| BasisKey::new(i, 1)).collect();
    struct Seq(Table<BasisKey>, bool);
    impl Morphism<BasisKey, BasisKey> for Seq {
        fn max_arity(&self) -> usize {
            self.0.arity
        }
        fn has_constant(&self) -> bool {
            self.1
        }
        fn component(&self, word: &[BasisKey]) -> LinComb<BasisKey> {
            self.0.bracket(word)
        }
    }
    let mut entries = std::collections::HashMap::new();
    entries.insert(vec![], LinComb::basis(basis[2]));
    entries.insert(vec![basis[0]], LinComb::term(basis[1], s(2)));
    entries.insert(vec![basis[0], basis[1]], LinComb::basis(basis[2]));
    let a = Seq(Table { curved: true, arity: 2, entries }, true);
    let depth = |_: &BasisKey| 1;
    for w in words(&basis, 0, 2) {
        assert_eq!(curved_compose(&a, &Identity, &w, depth).unwrap(), a.component(&w));
    }
    let mut only = std::collections::HashMap::new();
    only.insert(vec![], LinComb::basis(basis[0]));
    let c = Seq(Table { curved: true, arity: 0, entries: only }, true);
    assert_eq!(curved_compose(&c, &Identity, &[], depth).unwrap(), LinComb::basis(basis[0]));
    assert!(curved_compose(&c, &Identity, &[basis[1]], depth).unwrap().is_zero());
    assert!(curved_compose(&a, &a, &[], |_| 0).is_err());
}

#[test]
fn pro_nilpotence_witness() {
    // λ₂ = −[,] with F^k = γ_{k+1}
    let lie = heisenberg();
    let weights = lie.weights();
    let q = LieLInfty::new(lie);
    let depth = |k: &BasisKey| weights[k.idx()] - 1;
    assert!(pro_nilpotence_check(&q, &q.basis(), 3, depth).is_empty());
    // with the trivial filtration the bracket does not deepen anything
    assert!(!pro_nilpotence_check(&q, &q.basis(), 2, |_| 0).is_empty());
}
