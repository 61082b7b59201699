use std::sync::Arc;

use super::*;
use crate::lie::examples::{heisenberg, test_algebras};
use crate::lie::{CoefficientAlgebra, LieAlgebra};
use crate::linear::LinComb;
use crate::linfty::{jacobi_check, LInfty};
use crate::matrix::Matrix;
use crate::sample;
use crate::scalar::Scalar;
use crate::transfer::Contraction;

fn cech(nerve: CoverNerve, lie: LieAlgebra) -> Cech {
    Cech::new(Arc::new(nerve), lie)
}

fn scalar_rank(c: &Cech, q: usize) -> usize {
    let rows = c.basis(q + 1);
    let cols = c.basis(q);
    let mut m = Matrix::zeros(rows.len(), cols.len());
    for (j, k) in cols.iter().enumerate() {
        for (key, v) in c.transfer.c.dw(k).iter() {
            let i = rows.iter().position(|r| r == key).unwrap();
            m.set(i, j, v.clone());
        }
    }
    m.rank()
}

#[test]
fn level_dimensions() {
    let g = heisenberg();
    let k = CoefficientAlgebra::scalars();
    let e = CoverNerve::edge(&k);
    let s = Semicosimplicial::new(&e, &g);
    assert_eq!((s.level_dim(0), s.level_dim(1), s.level_dim(2)), (6, 3, 0));
    let t = CoverNerve::triangle(&k);
    let s = Semicosimplicial::new(&t, &g);
    assert_eq!((s.level_dim(0), s.level_dim(1), s.level_dim(2)), (9, 9, 3));
    let eps = CoverNerve::tetrahedron_boundary(&CoefficientAlgebra::dual_numbers());
    let s = Semicosimplicial::new(&eps, &g);
    assert_eq!((s.level_dim(0), s.level_dim(1), s.level_dim(2)), (24, 36, 24));
    for n in [e, t, eps, CoverNerve::octahedron_double_cover()] {
        assert!(Semicosimplicial::new(&n, &g).check_identities().is_empty());
    }
}

#[test]
fn invalid_nerves_are_rejected() {
    let k = CoefficientAlgebra::scalars();
    assert!(CoverNerve::constant(3, vec![vec![0], vec![1], vec![0, 1, 2]], &k).is_err());
    let faces = CoverNerve::closure(&[vec![0, 1]]);
    let algs = vec![k.clone(), k.clone(), CoefficientAlgebra::split(2)];
    assert!(CoverNerve::new(vec!["a".into(), "b".into()], faces.clone(), algs.clone(), vec![]).is_err());
    let not_unital = Matrix::from_rows(&[vec![Scalar::zero()], vec![Scalar::one()]]);
    let bad = vec![(vec![0], vec![0, 1], not_unital.clone()), (vec![1], vec![0, 1], not_unital)];
    assert!(CoverNerve::new(vec!["a".into(), "b".into()], faces, algs, bad).is_err());
}

#[test]
fn double_cover_has_torus_cohomology() {
    let c = cech(CoverNerve::octahedron_double_cover(), LieAlgebra::abelian(&["x"]));
    let dims: Vec<usize> = (0..3).map(|q| c.basis(q).len()).collect();
    assert_eq!(dims, vec![8, 24, 16]);
    let r0 = scalar_rank(&c, 0);
    let r1 = scalar_rank(&c, 1);
    let betti = [dims[0] - r0, dims[1] - r1 - r0, dims[2] - r1];
    assert_eq!(betti, [1, 2, 1]);
    let plain = cech(CoverNerve::octahedron(&CoefficientAlgebra::scalars()), LieAlgebra::abelian(&["x"]));
    let r0 = scalar_rank(&plain, 0);
    let r1 = scalar_rank(&plain, 1);
    assert_eq!((6 - r0, 12 - r1 - r0, 8 - r1), (1, 0, 1));
}

#[test]
fn cech_differential_and_contraction() {
    let c = cech(CoverNerve::triangle(&CoefficientAlgebra::dual_numbers()), heisenberg());
    let basis = c.full_basis();
    for k in &basis {
        assert!(c.differential(&c.differential(&LinComb::basis(*k))).is_zero());
        assert_eq!(c.transfer.bracket(&[*k]), c.transfer.c.dw(k));
    }
    let report = crate::transfer::check_contraction(&c.transfer.c, &[], &basis);
    assert!(report.is_empty(), "{report:?}");
    let q = &c.transfer.q;
    let t = &c.transfer.c;
    let ones = c.basis(0);
    let edges = c.basis(1);
    for a in ones.iter().chain(&edges).take(12) {
        for b in edges.iter().take(9) {
            let fa = t.f(a);
            let fb = t.f(b);
            let u = crate::linfty::eval(q, &[&fa, &fb]);
            let lhs = u.map(|v| t.dv(v)).map(|v| t.k(v)) + u.map(|v| t.k(v)).map(|v| t.dv(v));
            let rhs = u.map(|v| t.g(v)).map(|w| t.f(w)) - u.clone();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn abelian_cech_structure_is_the_complex() {
    let c = cech(CoverNerve::tetrahedron_boundary(&CoefficientAlgebra::scalars()), LieAlgebra::abelian(&["x", "y"]));
    assert_eq!(c.transfer.max_arity(), 1);
    let e = c.basis(1);
    assert!(c.transfer.bracket(&[e[0], e[3]]).is_zero());
}

#[test]
fn transferred_cech_structure_is_sound() {
    let c = cech(CoverNerve::triangle(&CoefficientAlgebra::scalars()), heisenberg());
    let basis: Vec<CechKey> = c.basis(0).into_iter().chain(c.basis(1)).collect();
    assert!(jacobi_check(&c.transfer, &basis, 3).is_empty());
    assert!(c.filtration_check(3).is_empty());
    let e = c.basis(1);
    assert!(e.iter().any(|a| e.iter().any(|b| !c.transfer.bracket(&[*a, *b]).is_zero())));
}

#[test]
fn group_cocycles_are_maurer_cartan() {
    let mut rng = sample::rng(7);
    for (name, g) in test_algebras() {
        for nerve in [CoverNerve::triangle(&CoefficientAlgebra::dual_numbers()), CoverNerve::tetrahedron_boundary(&CoefficientAlgebra::scalars())] {
            let c = cech(nerve, g.clone());
            for _ in 0..3 {
                let sigma = sample::cochain(&mut rng, &c.local, 0);
                let phi = coboundary(&c.local, &sigma);
                assert!(verify_group_cocycle(&c.local, &phi).is_empty(), "{name}");
                let y = cocycle_to_mc(&c, &phi).unwrap();
                assert_eq!(mc_to_cocycle(&c, &y).unwrap(), phi);
                let (bad, _) = sample::perturb(&mut rng, &phi);
                let report = verify_group_cocycle(&c.local, &bad);
                let defect = c.mc_defect(&c.to_comb(&bad));
                assert!(!report.is_empty() && !defect.is_zero(), "{name}");
                assert_eq!(report.len(), c.support(&defect).len());
            }
        }
    }
}

#[test]
fn trivializations_compose() {
    let mut rng = sample::rng(11);
    let c = cech(CoverNerve::triangle(&CoefficientAlgebra::scalars()), heisenberg());
    let phi = coboundary(&c.local, &sample::cochain(&mut rng, &c.local, 0));
    let s1 = sample::cochain(&mut rng, &c.local, 0);
    let s2 = sample::cochain(&mut rng, &c.local, 0);
    let twice = apply_trivialization(&c.local, &apply_trivialization(&c.local, &phi, &s1), &s2);
    let once = apply_trivialization(&c.local, &phi, &compose_trivializations(&c.local, &s1, &s2));
    assert_eq!(twice, once);
    assert!(verify_group_cocycle(&c.local, &twice).is_empty());
}

#[test]
fn trivialization_is_the_inverse_gauge_action() {
    use crate::simplicial::{gauge_action, BaseDiff, Filler};
    let mut rng = sample::rng(5);
    let c = cech(CoverNerve::triangle(&CoefficientAlgebra::scalars()), heisenberg());
    let t = c.transfer.clone();
    let d: BaseDiff<CechKey> = Arc::new(move |k: &CechKey| t.c.dw(k));
    let filler = Filler::new(c.transfer.clone(), d, 1, 0, 2);
    for _ in 0..3 {
        let phi = coboundary(&c.local, &sample::cochain(&mut rng, &c.local, 0));
        let sigma = sample::cochain(&mut rng, &c.local, 0);
        let y = c.to_comb(&phi);
        let moved = gauge_action(&filler, &c.to_comb(&sigma), &y).unwrap();
        let inverse: Cochain = sigma.iter().map(|(f, v)| (*f, crate::lie::vneg(v))).collect();
        assert_eq!(moved, c.to_comb(&apply_trivialization(&c.local, &phi, &inverse)));
    }
}

mod curved {
    use super::*;
    use crate::lie::examples::{heisenberg_extension, noncentral_extension};
    use crate::lie::ExtensionDatum;
    use crate::lie::vneg;

    fn certified(nerve: &Arc<CoverNerve>, ext: &ExtensionDatum, seed: u64) -> (Cochain, Cochain) {
        let mut rng = sample::rng(seed);
        let dt = ext.dim_g() + ext.dim_h();
        let sections: Cochain = nerve.faces_of_dim(0).into_iter().map(|f| (f, sample::vector(&mut rng, dt * nerve.algebra(f).dim()))).collect();
        lift_coboundary(nerve, ext, &sections).unwrap()
    }

    #[test]
    fn curved_structure_on_triangle() {
        for ext in [heisenberg_extension(), noncentral_extension()] {
            let nerve = Arc::new(CoverNerve::triangle(&CoefficientAlgebra::scalars()));
            let (phi, psi) = certified(&nerve, &ext, 3);
            let cc = CurvedCech::new(nerve.clone(), ext.clone(), phi).unwrap();
            assert!(cc.curvature_identity(&cc.tw_basis(2)).is_empty());
            assert!(cc.pro_nilpotence(2, 2).is_empty());
            assert!(cc.jacobi(3).is_empty());
            assert!(cc.verify_twisted_cocycle(&psi).is_empty());
            let y = cc.forward(&psi).unwrap();
            assert!(cc.mc_defect(&y).is_zero());
            assert_eq!(cc.backward(&y).unwrap(), psi);
            let (bad, _) = sample::perturb(&mut sample::rng(1), &psi);
            assert!(!cc.verify_twisted_cocycle(&bad).is_empty());
            let (_, yb) = cc.forward_unchecked(&bad).unwrap();
            assert!(!cc.mc_defect(&yb).is_zero());
        }
    }

    #[test]
    fn curvature_matches_group_defect() {
        let ext = heisenberg_extension();
        let nerve = Arc::new(CoverNerve::triangle(&CoefficientAlgebra::scalars()));
        let (phi, _) = certified(&nerve, &ext, 9);
        let cc = CurvedCech::new(nerve.clone(), ext.clone(), phi.clone()).unwrap();
        let mu0 = cc.comb_to_h(&cc.transferred_curvature(), 2);
        let t = ext.assemble_tilde().unwrap();
        let e = |i: u32, j: u32| ext.embed_g(&phi[&((1 << i) | (1 << j))]);
        let z = t.bch(&t.bch(&vneg(&e(0, 2)), &e(0, 1)), &e(1, 2));
        assert_eq!(mu0[&7], ext.proj_h(&z));
    }
}

mod arrows {
    use super::*;
    use crate::lie::examples::{heisenberg_extension, noncentral_extension};

    fn sections(rng: &mut sample::Rng8, nerve: &CoverNerve, dim: usize) -> Cochain {
        nerve.faces_of_dim(0).into_iter().map(|f| (f, sample::vector(rng, dim * nerve.algebra(f).dim()))).collect()
    }

    #[test]
    fn trivializations_are_arrows_and_compose() {
        for ext in [heisenberg_extension(), noncentral_extension()] {
            let nerve = Arc::new(CoverNerve::triangle(&CoefficientAlgebra::dual_numbers()));
            let mut rng = sample::rng(4);
            let (phi, psi) = lift_coboundary(&nerve, &ext, &sections(&mut rng, &nerve, ext.dim_g() + ext.dim_h())).unwrap();
            let cc = CurvedCech::new(nerve.clone(), ext.clone(), phi).unwrap();
            let ar = CurvedArrows::new(&cc).unwrap();
            let s1 = sections(&mut rng, &nerve, ext.dim_h());
            let s2 = sections(&mut rng, &nerve, ext.dim_h());
            let psi1 = cc.twisted_equiv(&psi, &s1);
            let psi2 = cc.twisted_equiv(&psi1, &s2);
            let a1 = ar.trivialization_arrow(&psi, &s1).unwrap();
            let a2 = ar.trivialization_arrow(&psi1, &s2).unwrap();
            assert!(ar.is_arrow(&a1.path));
            assert_eq!(a1.target, cc.forward(&psi1).unwrap());
            assert_eq!(ar.arrow_to_trivialization(&a1).unwrap(), (psi.clone(), psi1.clone(), s1.clone()));
            let both = ar.compose(&a1, &a2).unwrap();
            let s12 = ar.compose_sections(&s1, &s2);
            assert_eq!(cc.twisted_equiv(&psi, &s12), psi2);
            assert_eq!(both.edge, cc.h_to_comb(&s12));
            let wrong = ar.arrow(&a1.source, &cc.h_to_comb(&s2)).unwrap();
            assert!(ar.arrow_to_trivialization(&wrong).is_ok());
            assert_ne!(wrong.target, a1.target);
        }
    }
}

mod solver {
    use super::*;
    use crate::lie::examples::{heisenberg_extension, noncentral_extension};
    use crate::lie::ExtensionDatum;

    fn certified(cc: &CurvedCech, outcome: LiftOutcome) -> Cochain {
        match outcome {
            LiftOutcome::Lift { psi, y } => {
                assert!(cc.verify_twisted_cocycle(&psi).is_empty());
                assert_eq!(cc.forward(&psi).unwrap(), y);
                psi
            }
            LiftOutcome::Obstruction(o) => panic!("unexpected obstruction at level {}", o.level),
        }
    }

    /// `x ⊗ α + y ⊗ β` for scalar cochains `α`, `β`.
    fn pair(alpha: &Cochain, beta: &Cochain) -> Cochain {
        alpha.iter().map(|(f, a)| (*f, a.iter().chain(&beta[f]).cloned().collect())).collect()
    }

    #[test]
    fn trivial_extension_lifts_by_zero() {
        let g = heisenberg();
        let ext = ExtensionDatum::new(g.clone(), LieAlgebra::abelian(&["w"]), &[], &[]).unwrap();
        let nerve = Arc::new(CoverNerve::triangle(&CoefficientAlgebra::dual_numbers()));
        let c = cech(CoverNerve::triangle(&CoefficientAlgebra::dual_numbers()), g);
        let phi = coboundary(&c.local, &sample::cochain(&mut sample::rng(2), &c.local, 0));
        let cc = CurvedCech::new(nerve, ext, phi).unwrap();
        assert!(cc.transferred_curvature().is_zero());
        let psi = certified(&cc, solve_lift(&cc).unwrap());
        assert_eq!(psi, cc.zero_lift());
    }

    #[test]
    fn exact_curvature_is_solved() {
        for ext in [heisenberg_extension(), noncentral_extension()] {
            for nerve in [CoverNerve::triangle(&CoefficientAlgebra::scalars()), CoverNerve::triangle_boundary(&CoefficientAlgebra::scalars())] {
                let nerve = Arc::new(nerve);
                let base = Cech::new(nerve.clone(), ext.g.clone());
                let phi = coboundary(&base.local, &sample::cochain(&mut sample::rng(8), &base.local, 0));
                let cc = CurvedCech::new(nerve, ext.clone(), phi).unwrap();
                certified(&cc, solve_lift(&cc).unwrap());
            }
        }
    }

    #[test]
    fn cup_product_obstructs_on_the_torus() {
        let nerve = Arc::new(CoverNerve::octahedron_double_cover());
        let line = Cech::new(nerve.clone(), LieAlgebra::abelian(&["x"]));
        let classes: Vec<Cochain> = line.cocycle_basis(1).into_iter().filter(|z| !line.is_coboundary(z, 1)).collect();
        let ext = heisenberg_extension();
        let mut found = None;
        'search: for (i, a) in classes.iter().enumerate() {
            for b in &classes[i + 1..] {
                let cc = CurvedCech::new(nerve.clone(), ext.clone(), pair(a, b)).unwrap();
                if let LiftOutcome::Obstruction(o) = solve_lift(&cc).unwrap() {
                    found = Some((a.clone(), o));
                    break 'search;
                }
            }
        }
        let (alpha, o) = found.expect("no pair of classes obstructs");
        assert_eq!(o.level, 1);
        let w = Cech::new(nerve.clone(), LieAlgebra::abelian(&["w"]));
        assert!(!w.is_coboundary(&o.term, 2));
        let beta = coboundary(&line.local, &sample::cochain(&mut sample::rng(3), &line.local, 0));
        let cc = CurvedCech::new(nerve.clone(), ext, pair(&alpha, &beta)).unwrap();
        certified(&cc, solve_lift(&cc).unwrap());
    }
}
