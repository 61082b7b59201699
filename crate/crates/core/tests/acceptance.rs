//! Acceptance criteria, one PASS/FAIL line each; exits nonzero if any fails.

use std::sync::Arc;

use curvlift::descent::*;
use curvlift::lie::examples::{heisenberg_extension, noncentral_extension, test_algebras, upper_triangular};
use curvlift::lie::{unit_vector, CoefficientAlgebra, ExtensionDatum, LieAlgebra};
use curvlift::linear::{BasisKey, LinComb};
use curvlift::linfty::{jacobi_check, mc_defect, morphism_check, words, LInfty, LieLInfty, TKey, TensorForms};
use curvlift::sample;
use curvlift::simplicial::{bch_horn, cochain_basis, form_monomials, no_diff, CKey, Filler, SimplexContraction};
use curvlift::transfer::contraction::{g_lin, k_lin};
use curvlift::transfer::{check_contraction, kuranishi, kuranishi_inverse, Fukaya, IdentityContraction, Transfer};

type Failures = Vec<String>;
type SimplexTransfer = Transfer<TKey<BasisKey>, CKey<BasisKey>, TensorForms<LieLInfty>, SimplexContraction<BasisKey>>;

fn lie_keys(dim: usize) -> Vec<BasisKey> {
    (0..dim).map(LieLInfty::key).collect()
}

fn form_sample(n: usize, p: u32, keys: &[BasisKey]) -> Vec<TKey<BasisKey>> {
    form_monomials(n, p).into_iter().flat_map(|f| keys.iter().map(move |l| TKey { l: *l, f })).collect()
}

fn simplex_transfer(lie: &LieAlgebra, n: usize) -> SimplexTransfer {
    Transfer::new(TensorForms::new(LieLInfty::new(lie.clone())), SimplexContraction::new(n, no_diff()), lie.class().max(2))
}

fn c1_dupont_contraction() -> Failures {
    let coeffs = [BasisKey::new(0, 0), BasisKey::new(1, 1)];
    let mut out = Failures::new();
    for (n, p) in [(1, 3), (2, 2), (3, 1)] {
        let c = SimplexContraction::new(n, no_diff());
        let report = check_contraction(&c, &form_sample(n, p, &coeffs), &cochain_basis(n, &coeffs));
        out.extend(report.into_iter().map(|s| format!("Δ{n}: {s}")));
    }
    out
}

fn c2_transfer_soundness() -> Failures {
    let mut out = Failures::new();
    for (name, lie) in test_algebras() {
        for n in [1, 2] {
            let t = simplex_transfer(&lie, n);
            let keys = lie_keys(lie.dim());
            let ws = cochain_basis(n, &keys);
            let vs = form_sample(n, 1, &keys);
            if !jacobi_check(&t, &ws, 4).is_empty() {
                out.push(format!("{name} on Δ{n}: generalized Jacobi fails"));
            }
            if !morphism_check(&t.f_morphism(), &t, &t.q, &ws, 3).is_empty() {
                out.push(format!("{name} on Δ{n}: f is not a morphism"));
            }
            if !morphism_check(&t.g_morphism(), &t.q, &t, &vs, 3).is_empty() {
                out.push(format!("{name} on Δ{n}: g is not a morphism"));
            }
        }
    }
    out
}

fn c3_kuranishi_bijection() -> Failures {
    let mut out = Failures::new();
    let mut rng = sample::rng(31);
    for (name, lie) in test_algebras() {
        let t = simplex_transfer(&lie, 1);
        let d = lie.dim();
        for i in 0..25 {
            let x = sample::interval_one_form(&mut rng, d);
            let (y, k) = kuranishi(&t, &x).unwrap();
            if kuranishi_inverse(&t, &y, &k).unwrap() != x {
                out.push(format!("{name} #{i}: ρ⁻¹ρ ≠ id"));
            }
            let y2 = sample::interval_edge(&mut rng, d);
            let k2 = k_lin(&t.c, &sample::interval_one_form(&mut rng, d));
            let x2 = kuranishi_inverse(&t, &y2, &k2).unwrap();
            if kuranishi(&t, &x2).unwrap() != (y2.clone(), k2) {
                out.push(format!("{name} #{i}: ρρ⁻¹ ≠ id"));
            }
            let x0 = kuranishi_inverse(&t, &y2, &LinComb::zero()).unwrap();
            if !k_lin(&t.c, &x0).is_zero() || !mc_defect(&t.q, &x0).is_zero() || g_lin(&t.c, &x0) != y2 {
                out.push(format!("{name} #{i}: ρ⁻¹(y, 0) is not in Ker K ∩ MC over y"));
            }
        }
    }
    out
}

fn c4_bch_by_horn_filling() -> Failures {
    let mut out = Failures::new();
    let mut rng = sample::rng(41);
    for (name, lie) in test_algebras() {
        let d = lie.dim();
        let filler = Filler::new(Arc::new(LieLInfty::new(lie.clone())), no_diff(), 2, 1, lie.class().max(2));
        let mut pairs: Vec<_> = (0..d).flat_map(|i| (0..d).map(move |j| (unit_vector(d, i), unit_vector(d, j)))).collect();
        pairs.extend((0..25).map(|_| (sample::vector(&mut rng, d), sample::vector(&mut rng, d))));
        for (a, b) in &pairs {
            let horn = bch_horn(&filler, &LinComb::zero(), &LieLInfty::to_comb(a), &LieLInfty::to_comb(b)).unwrap();
            if horn != LieLInfty::to_comb(&lie.bch(a, b)) {
                out.push(format!("{name}: horn filling ≠ bch on {a:?}, {b:?}"));
            }
        }
    }
    let ut = upper_triangular(4);
    for _ in 0..25 {
        let (a, b) = (sample::vector(&mut rng, 6), sample::vector(&mut rng, 6));
        match ut.bch_matrix(&a, &b) {
            Some(m) if m == ut.bch(&a, &b) => {}
            _ => out.push(format!("upper triangular: matrix exponential disagrees on {a:?}, {b:?}")),
        }
    }
    out
}

fn c5_cocycles_are_maurer_cartan() -> Failures {
    let mut out = Failures::new();
    let mut rng = sample::rng(51);
    for a in [CoefficientAlgebra::scalars(), CoefficientAlgebra::dual_numbers()] {
        for nerve in [CoverNerve::edge(&a), CoverNerve::triangle(&a), CoverNerve::tetrahedron_boundary(&a)] {
            let nerve = Arc::new(nerve);
            for (name, lie) in test_algebras() {
                let c = Cech::new(nerve.clone(), lie);
                let phi = coboundary(&c.local, &sample::cochain(&mut rng, &c.local, 0));
                let y = cocycle_to_mc(&c, &phi).unwrap();
                if !verify_group_cocycle(&c.local, &phi).is_empty() || !c.mc_defect(&y).is_zero() {
                    out.push(format!("{name}: a coboundary fails a cocycle check"));
                }
                for i in 0..25 {
                    let (bad, _) = sample::perturb(&mut rng, &phi);
                    let group = verify_group_cocycle(&c.local, &bad).is_empty();
                    let mc = c.mc_defect(&c.to_comb(&bad)).is_zero();
                    if group != mc {
                        out.push(format!("{name} perturbation {i}: group cocycle {group}, Maurer-Cartan {mc}"));
                    }
                }
                let (s1, s2) = (sample::cochain(&mut rng, &c.local, 0), sample::cochain(&mut rng, &c.local, 0));
                let twice = apply_trivialization(&c.local, &apply_trivialization(&c.local, &phi, &s1), &s2);
                if twice != apply_trivialization(&c.local, &phi, &compose_trivializations(&c.local, &s1, &s2)) {
                    out.push(format!("{name}: trivializations do not compose by BCH"));
                }
            }
        }
    }
    out
}

fn certified(nerve: &Arc<CoverNerve>, ext: &ExtensionDatum, rng: &mut sample::Rng8) -> (Cochain, Cochain) {
    let sections = sample::sections(rng, nerve, ext.dim_g() + ext.dim_h());
    lift_coboundary(nerve, ext, &sections).unwrap()
}

fn c6_curved_structure() -> Failures {
    let mut out = Failures::new();
    let mut rng = sample::rng(61);
    for (name, ext) in [("central", heisenberg_extension()), ("non-central", noncentral_extension())] {
        for nerve in [CoverNerve::triangle(&CoefficientAlgebra::scalars()), CoverNerve::octahedron(&CoefficientAlgebra::scalars())] {
            let nerve = Arc::new(nerve);
            let (phi, _) = certified(&nerve, &ext, &mut rng);
            let cc = CurvedCech::new(nerve.clone(), ext.clone(), phi).unwrap();
            let bound = if nerve.faces().len() > 7 { 2 } else { 3 };
            out.extend(cc.curvature_identity(&cc.tw_basis(2)).into_iter().map(|s| format!("{name}: {s}")));
            out.extend(lines(name, "curved Jacobi", cc.jacobi(bound)));
            out.extend(cc.pro_nilpotence(2, 3).into_iter().map(|s| format!("{name}: {s}")));
        }
    }
    out
}

fn lines<A: std::fmt::Debug, B: std::fmt::Debug>(name: &str, what: &str, r: Vec<(Vec<A>, B)>) -> Failures {
    r.into_iter().map(|(w, v)| format!("{name}: {what} fails on {w:?}: {v:?}")).collect()
}

fn c7_lifts_and_equivalences() -> Failures {
    let mut out = Failures::new();
    let mut rng = sample::rng(71);
    for (name, ext) in [("central", heisenberg_extension()), ("non-central", noncentral_extension())] {
        for nerve in [CoverNerve::triangle(&CoefficientAlgebra::scalars()), CoverNerve::octahedron(&CoefficientAlgebra::scalars())] {
            let nerve = Arc::new(nerve);
            let (phi, psi) = certified(&nerve, &ext, &mut rng);
            let cc = CurvedCech::new(nerve.clone(), ext.clone(), phi).unwrap();
            let mut cases = vec![psi.clone()];
            cases.extend((0..5).map(|_| sample::perturb(&mut rng, &psi).0));
            for (i, p) in cases.iter().enumerate() {
                let twisted = cc.verify_twisted_cocycle(p).is_empty();
                let (alpha, _) = cc.forward_unchecked(p).unwrap();
                let mc = mc_defect(cc.curved(), &alpha).is_zero();
                if twisted != mc {
                    out.push(format!("{name} case {i}: twisted cocycle {twisted}, curved Maurer-Cartan {mc}"));
                }
                if twisted && (!cc.mc_defect(&cc.forward(p).unwrap()).is_zero() || cc.backward(&cc.forward(p).unwrap()).unwrap() != *p) {
                    out.push(format!("{name} case {i}: lift correspondence does not round trip"));
                }
            }
            let ar = CurvedArrows::new(&cc).unwrap();
            let (s1, s2) = (sample::sections(&mut rng, &nerve, ext.dim_h()), sample::sections(&mut rng, &nerve, ext.dim_h()));
            let psi1 = cc.twisted_equiv(&psi, &s1);
            let psi2 = cc.twisted_equiv(&psi1, &s2);
            let a1 = ar.trivialization_arrow(&psi, &s1).unwrap();
            let a2 = ar.trivialization_arrow(&psi1, &s2).unwrap();
            let ends = CurvedArrows::endpoints(&a1.path);
            if !ar.is_arrow(&a1.path) || ends != (cc.forward(&psi).unwrap(), cc.forward(&psi1).unwrap()) {
                out.push(format!("{name}: trivialization arrow has the wrong endpoints"));
            }
            if ar.arrow_to_trivialization(&a1).ok() != Some((psi.clone(), psi1.clone(), s1.clone())) {
                out.push(format!("{name}: arrow does not read back as its trivialization"));
            }
            let other = ar.arrow(&a1.source, &cc.h_to_comb(&s2)).unwrap();
            match ar.arrow_to_trivialization(&other) {
                Ok((p, p2, s)) if p == psi && s == s2 && p2 == cc.twisted_equiv(&psi, &s2) => {}
                _ => out.push(format!("{name}: an arrow is not a trivialization")),
            }
            let both = ar.compose(&a1, &a2).unwrap();
            let s12 = ar.compose_sections(&s1, &s2);
            if both.edge != cc.h_to_comb(&s12) || cc.twisted_equiv(&psi, &s12) != psi2 || both.target != cc.forward(&psi2).unwrap() {
                out.push(format!("{name}: composition is not preserved"));
            }
        }
    }
    out
}

fn pair(alpha: &Cochain, beta: &Cochain) -> Cochain {
    alpha.iter().map(|(f, a)| (*f, a.iter().chain(&beta[f]).cloned().collect())).collect()
}

fn c8_obstruction_realization() -> Failures {
    let mut out = Failures::new();
    let nerve = Arc::new(CoverNerve::octahedron_double_cover());
    let line = Cech::new(nerve.clone(), LieAlgebra::abelian(&["x"]));
    let w = Cech::new(nerve.clone(), LieAlgebra::abelian(&["w"]));
    let ext = heisenberg_extension();
    let classes: Vec<Cochain> = line.cocycle_basis(1).into_iter().filter(|z| !line.is_coboundary(z, 1)).collect();
    let mut found = None;
    'search: for (i, a) in classes.iter().enumerate() {
        for b in &classes[i + 1..] {
            let cc = CurvedCech::new(nerve.clone(), ext.clone(), pair(a, b)).unwrap();
            if !w.is_coboundary(&cc.comb_to_h(&cc.transferred_curvature(), 2), 2) {
                found = Some((a.clone(), solve_lift(&cc).unwrap()));
                break 'search;
            }
        }
    }
    match &found {
        Some((_, LiftOutcome::Obstruction(o))) if !w.is_coboundary(&o.term, 2) => {}
        Some((_, LiftOutcome::Obstruction(_))) => out.push("obstruction term is a coboundary".into()),
        Some((_, LiftOutcome::Lift { .. })) => out.push("nontrivial curvature class was lifted".into()),
        None => out.push("no cocycle with a nontrivial curvature class".into()),
    }
    if let Some((alpha, _)) = found {
        let beta = coboundary(&line.local, &sample::cochain(&mut sample::rng(81), &line.local, 0));
        let cc = CurvedCech::new(nerve.clone(), ext, pair(&alpha, &beta)).unwrap();
        if !w.is_coboundary(&cc.comb_to_h(&cc.transferred_curvature(), 2), 2) {
            out.push("curvature of the modified cocycle is not a coboundary".into());
        }
        match solve_lift(&cc).unwrap() {
            LiftOutcome::Lift { psi, .. } if cc.verify_twisted_cocycle(&psi).is_empty() => {}
            LiftOutcome::Lift { .. } => out.push("solver lift is not a twisted cocycle".into()),
            LiftOutcome::Obstruction(o) => out.push(format!("exact curvature obstructed at level {}", o.level)),
        }
    }
    out
}

fn c9_curved_transfer_consistency() -> Failures {
    let mut out = Failures::new();
    for (name, lie) in test_algebras() {
        let t = simplex_transfer(&lie, 1);
        let fk = Fukaya::new(TensorForms::new(LieLInfty::new(lie.clone())), SimplexContraction::new(1, no_diff()), lie.class().max(2), 8).unwrap();
        if !fk.f0().is_zero() {
            out.push(format!("{name}: uncurved input has F₀ ≠ 0"));
        }
        for w in words(&cochain_basis(1, &lie_keys(lie.dim())), 1, 3) {
            if fk.f_word(&w).unwrap() != t.f_word(&w) || fk.mu_word(&w).unwrap() != t.r_word(&w) {
                out.push(format!("{name}: tables differ on {w:?}"));
            }
        }
        let q = LieLInfty::new(lie.clone());
        let zero = Fukaya::new(LieLInfty::new(lie.clone()), IdentityContraction(|_: &BasisKey| LinComb::zero()), lie.class().max(2), 4).unwrap();
        for w in words(&q.basis(), 1, lie.class().max(2)) {
            let expect = if w.len() == 1 { LinComb::basis(w[0]) } else { LinComb::zero() };
            if zero.f_word(&w).unwrap() != expect || zero.mu_word(&w).unwrap() != q.bracket(&w) {
                out.push(format!("{name}: zero homotopy does not give F = f on {w:?}"));
            }
        }
        if zero.iterations() != 1 {
            out.push(format!("{name}: zero homotopy took {} iterations", zero.iterations()));
        }
    }
    out
}

fn main() {
    let criteria = [
        (1, "Dupont contraction identities on Δ1, Δ2, Δ3", c1_dupont_contraction as fn() -> Failures),
        (2, "transferred structures and morphisms", c2_transfer_soundness as fn() -> Failures),
        (3, "Kuranishi bijection round trips", c3_kuranishi_bijection as fn() -> Failures),
        (4, "BCH by horn filling and matrix exponentials", c4_bch_by_horn_filling as fn() -> Failures),
        (5, "group cocycles ⟺ Čech Maurer-Cartan elements", c5_cocycles_are_maurer_cartan as fn() -> Failures),
        (6, "curvature identity, curved Jacobi, pro-nilpotence", c6_curved_structure as fn() -> Failures),
        (7, "lifts ⟺ curved Maurer-Cartan elements, equivalences ⟺ arrows", c7_lifts_and_equivalences as fn() -> Failures),
        (8, "obstruction on the octahedral torus, lift once the curvature is exact", c8_obstruction_realization as fn() -> Failures),
        (9, "curved transfer reduces to transfer", c9_curved_transfer_consistency as fn() -> Failures),
    ];
    let results: Vec<Failures> = std::thread::scope(|scope| {
        let handles: Vec<_> = criteria.iter().map(|(_, _, f)| scope.spawn(*f)).collect();
        handles.into_iter().map(|h| h.join().unwrap_or_else(|_| vec!["panicked".into()])).collect()
    });
    let mut failed = 0;
    for ((n, name, _), failures) in criteria.iter().zip(&results) {
        let verdict = if failures.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {n}: {verdict}  {name}");
        for f in failures.iter().take(10) {
            println!("    {f}");
        }
        failed += usize::from(!failures.is_empty());
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
