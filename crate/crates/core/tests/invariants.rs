use std::sync::Arc;

use proptest::prelude::*;

use curvlift::descent::*;
use curvlift::lie::examples::{heisenberg, heisenberg_extension, noncentral_extension, test_algebras};
use curvlift::lie::CoefficientAlgebra;
use curvlift::linear::LinComb;
use curvlift::linfty::{mc_defect, LieLInfty, TensorForms};
use curvlift::sample;
use curvlift::simplicial::{no_diff, SimplexContraction};
use curvlift::transfer::contraction::{g_lin, k_lin};
use curvlift::transfer::{kuranishi, kuranishi_inverse, Transfer};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn kuranishi_is_a_bijection(which in 0usize..3, seed in any::<u64>()) {
        let (_, lie) = &test_algebras()[which];
        let t = Transfer::new(TensorForms::new(LieLInfty::new(lie.clone())), SimplexContraction::new(1, no_diff()), lie.class().max(2));
        let mut rng = sample::rng(seed);
        let x = sample::interval_one_form(&mut rng, lie.dim());
        let (y, k) = kuranishi(&t, &x).unwrap();
        prop_assert_eq!(kuranishi_inverse(&t, &y, &k).unwrap(), x);
        let x0 = kuranishi_inverse(&t, &y, &LinComb::zero()).unwrap();
        prop_assert!(k_lin(&t.c, &x0).is_zero());
        prop_assert!(mc_defect(&t.q, &x0).is_zero());
        prop_assert_eq!(g_lin(&t.c, &x0), y);
    }

    #[test]
    fn coboundaries_are_maurer_cartan(which in 0usize..3, dual in any::<bool>(), seed in any::<u64>()) {
        let (_, lie) = &test_algebras()[which];
        let a = if dual { CoefficientAlgebra::dual_numbers() } else { CoefficientAlgebra::scalars() };
        let c = Cech::new(Arc::new(CoverNerve::triangle(&a)), lie.clone());
        let mut rng = sample::rng(seed);
        let phi = coboundary(&c.local, &sample::cochain(&mut rng, &c.local, 0));
        let y = cocycle_to_mc(&c, &phi).unwrap();
        prop_assert!(c.mc_defect(&y).is_zero());
        prop_assert_eq!(mc_to_cocycle(&c, &y).unwrap(), phi.clone());
        let (bad, _) = sample::perturb(&mut rng, &phi);
        prop_assert_eq!(verify_group_cocycle(&c.local, &bad).is_empty(), c.mc_defect(&c.to_comb(&bad)).is_zero());
    }

    #[test]
    fn trivializations_compose_by_bch(seed in any::<u64>()) {
        let c = Cech::new(Arc::new(CoverNerve::tetrahedron_boundary(&CoefficientAlgebra::scalars())), heisenberg());
        let mut rng = sample::rng(seed);
        let phi = coboundary(&c.local, &sample::cochain(&mut rng, &c.local, 0));
        let (s1, s2) = (sample::cochain(&mut rng, &c.local, 0), sample::cochain(&mut rng, &c.local, 0));
        let twice = apply_trivialization(&c.local, &apply_trivialization(&c.local, &phi, &s1), &s2);
        prop_assert_eq!(twice.clone(), apply_trivialization(&c.local, &phi, &compose_trivializations(&c.local, &s1, &s2)));
        prop_assert!(verify_group_cocycle(&c.local, &twice).is_empty());
    }

    #[test]
    fn lifts_round_trip_and_equivalences_are_twisted(central in any::<bool>(), seed in any::<u64>()) {
        let ext = if central { heisenberg_extension() } else { noncentral_extension() };
        let nerve = Arc::new(CoverNerve::triangle(&CoefficientAlgebra::scalars()));
        let mut rng = sample::rng(seed);
        let (phi, psi) = lift_coboundary(&nerve, &ext, &sample::sections(&mut rng, &nerve, ext.dim_g() + ext.dim_h())).unwrap();
        let cc = CurvedCech::new(nerve.clone(), ext.clone(), phi).unwrap();
        prop_assert!(cc.verify_twisted_cocycle(&psi).is_empty());
        let y = cc.forward(&psi).unwrap();
        prop_assert!(cc.mc_defect(&y).is_zero());
        prop_assert_eq!(cc.backward(&y).unwrap(), psi.clone());
        let moved = cc.twisted_equiv(&psi, &sample::sections(&mut rng, &nerve, ext.dim_h()));
        prop_assert!(cc.verify_twisted_cocycle(&moved).is_empty());
    }
}
