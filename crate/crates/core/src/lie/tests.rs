use proptest::prelude::*;

use super::examples::*;
use super::*;

fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn vec_of(xs: &[i64]) -> Vector {
    xs.iter().map(|&x| s(x)).collect()
}

#[test]
fn jacobi_reports() {
    assert!(heisenberg().jacobi_check().is_empty());
    assert!(LieAlgebra::abelian(&["a", "b", "c"]).jacobi_check().is_empty());
    let bad = LieAlgebra::from_entries_unchecked(
        vec!["x".into(), "y".into(), "z".into()],
        &[(0, 1, 2, s(1)), (1, 0, 2, s(1))],
    )
    .unwrap();
    let r = bad.jacobi_check();
    assert!(r.iter().any(|m| m.contains("antisymmetry") && m.contains("(x, y)")), "{r:?}");
}

#[test]
fn classes_and_weights() {
    assert_eq!(heisenberg().class(), 2);
    assert_eq!(upper_triangular(4).class(), 3);
    assert_eq!(free_nilpotent_2_3().class(), 3);
    assert_eq!(free_nilpotent_2_3().weights(), vec![1, 1, 2, 3, 3]);
    for (_, l) in test_algebras() {
        assert!(l.has_adapted_basis());
    }
    let wrong = LieAlgebra::new(vec!["x".into(), "y".into(), "z".into()], &[(0, 1, 2, s(1))], Some(3));
    assert!(wrong.is_err());
}

#[test]
fn heisenberg_bch() {
    let l = heisenberg();
    let x = vec_of(&[1, 0, 0]);
    let y = vec_of(&[0, 1, 0]);
    assert_eq!(l.bch(&x, &y), vec![s(1), s(1), Scalar::frac(1, 2)]);
    assert_eq!(l.bch_matrix(&x, &y).unwrap(), l.bch(&x, &y));
    assert_eq!(l.format_element(&l.bch(&x, &y)), "x + y + 1/2 z");
    assert_eq!(l.bch(&x, &zeros(3)), x);
}

#[test]
fn free_nilpotent_degree_three() {
    let l = free_nilpotent_2_3();
    let x = l.parse_element("x").unwrap();
    let y = l.parse_element("y").unwrap();
    // x + y + ½[x,y] + 1/12[x,[x,y]] − 1/12[y,[x,y]]
    let expect = l.parse_element("x + y + 1/2 z + 1/12 u - 1/12 v").unwrap();
    assert_eq!(l.bch(&x, &y), expect);
}

#[test]
fn parse_and_format() {
    let l = heisenberg();
    let v = l.parse_element("-x + 3/4 z - 2*y").unwrap();
    assert_eq!(v, vec![s(-1), s(-2), Scalar::frac(3, 4)]);
    assert_eq!(l.format_element(&v), "-x - 2 y + 3/4 z");
    assert_eq!(l.parse_element(&l.format_element(&v)).unwrap(), v);
    assert!(l.parse_element("q").is_err());
}

#[test]
fn heisenberg_extension_assembles() {
    let e = heisenberg_extension();
    let t = e.assemble_tilde().unwrap();
    assert!(t.jacobi_check().is_empty());
    assert_eq!(t.class(), 2);
    let x = vec_of(&[1, 0]);
    let y = vec_of(&[0, 1]);
    assert_eq!(e.h_component_bch(&x, &y), vec![Scalar::frac(1, 2)]);
    assert_eq!(e.h_component_bch(&x, &zeros(2)), zeros(1));
    let p = vec_of(&[2, -3]);
    assert_eq!(e.h_component_bch(&p, &p), zeros(1));
}

#[test]
fn split_product_and_solvable_rejection() {
    let g = LieAlgebra::abelian(&["x"]);
    let h = LieAlgebra::abelian(&["y"]);
    let prod = ExtensionDatum::new(g.clone(), h.clone(), &[], &[]).unwrap();
    assert_eq!(prod.assemble_tilde().unwrap().class(), 1);
    let solv = ExtensionDatum::new(g, h, &[(0, 0, 0, s(1))], &[]).unwrap();
    let err = solv.assemble_tilde().unwrap_err();
    assert!(err.to_string().contains("not nilpotent"), "{err}");
}

#[test]
fn twisted_conjugation_example() {
    let e = noncentral_extension();
    let x1 = vec_of(&[1, 0]);
    let y = vec_of(&[1, 0]);
    assert_eq!(e.twisted_conj(&y, &x1), vec_of(&[1, 1]));
    assert_eq!(e.twisted_conj(&y, &zeros(2)), y);
    let w = vec_of(&[0, 1]);
    assert_eq!(e.twisted_conj(&w, &x1), w);
}

#[test]
fn h_component_is_group_factor() {
    // exp(φ)exp(φ′) = exp(z_g)·exp(C) in G̃
    let e = noncentral_extension();
    let t = e.assemble_tilde().unwrap();
    let phi = vec_of(&[1, 2]);
    let phi2 = vec_of(&[-3, 1]);
    let z = t.bch(&e.embed_g(&phi), &e.embed_g(&phi2));
    let c = e.h_component_bch(&phi, &phi2);
    let zg = e.embed_g(&e.proj_g(&z));
    assert_eq!(t.bch(&zg, &e.embed_h(&c)), z);
}

#[test]
fn beta_equivalence() {
    let e = heisenberg_extension();
    let beta = crate::matrix::Matrix::from_rows(&[vec![s(1), s(0)]]);
    let e2 = e.beta_equiv(&beta).unwrap();
    let t1 = e.assemble_tilde().unwrap();
    let t2 = e2.assemble_tilde().unwrap();
    // (x, y) ↦ (x, y + β(x)) is an isomorphism g̃′ → g̃
    let map = |v: &[Scalar]| -> Vector {
        let x = e.proj_g(v);
        let y = vadd(&e.proj_h(v), &beta.apply(&x));
        let mut out = x;
        out.extend(y);
        out
    };
    let n = t1.dim();
    for i in 0..n {
        for j in 0..n {
            let (a, b) = (unit_vector(n, i), unit_vector(n, j));
            assert_eq!(map(&t2.bracket(&a, &b)), t1.bracket(&map(&a), &map(&b)));
        }
    }
    assert!(e.beta_equiv(&crate::matrix::Matrix::zeros(1, 2)).unwrap().check().is_empty());
}

#[test]
fn tensor_with_dual_numbers() {
    let a = CoefficientAlgebra::dual_numbers();
    let l = heisenberg().tensor(&a);
    assert_eq!(l.dim(), 6);
    assert!(l.jacobi_check().is_empty());
    // [x⊗ε, y⊗ε] = 0, [x⊗1, y⊗ε] = z⊗ε
    let xe = l.parse_element("x⊗ε").unwrap();
    let ye = l.parse_element("y⊗ε").unwrap();
    let x1 = l.parse_element("x⊗1").unwrap();
    assert!(is_zero_vec(&l.bracket(&xe, &ye)));
    assert_eq!(l.bracket(&x1, &ye), l.parse_element("z⊗ε").unwrap());
    let e = heisenberg_extension().tensor(&a);
    assert!(e.check().is_empty());
}

fn small_vec(n: usize) -> impl Strategy<Value = Vector> {
    proptest::collection::vec(-3i64..=3, n).prop_map(|v| v.into_iter().map(Scalar::from_int).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn bch_associative_and_inverse(
        which in 0usize..3,
        a in small_vec(6), b in small_vec(6), c in small_vec(6)
    ) {
        let (_, l) = &test_algebras()[which];
        let n = l.dim();
        let (a, b, c) = (&a[..n.min(6)], &b[..n.min(6)], &c[..n.min(6)]);
        let pad = |v: &[Scalar]| { let mut w = v.to_vec(); w.resize(n, Scalar::zero()); w };
        let (a, b, c) = (pad(a), pad(b), pad(c));
        prop_assert_eq!(l.bch(&l.bch(&a, &b), &c), l.bch(&a, &l.bch(&b, &c)));
        prop_assert!(is_zero_vec(&l.bch(&a, &vneg(&a))));
        prop_assert_eq!(l.bch(&vneg(&b), &vneg(&a)), vneg(&l.bch(&a, &b)));
        if let Some(m) = l.bch_matrix(&a, &b) {
            prop_assert_eq!(m, l.bch(&a, &b));
        }
    }

    #[test]
    fn twisted_conj_is_homomorphism(p in small_vec(2), u in small_vec(2), v in small_vec(2)) {
        let e = noncentral_extension();
        let lhs = e.twisted_conj(&e.h.bracket(&u, &v), &p);
        let rhs = e.h.bracket(&e.twisted_conj(&u, &p), &e.twisted_conj(&v, &p));
        prop_assert_eq!(lhs, rhs);
    }
}
