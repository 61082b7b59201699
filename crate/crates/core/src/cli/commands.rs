use std::path::Path;
use std::sync::Arc;

use crate::descent::{
    apply_trivialization, check_shape, solve_lift, verify_group_cocycle, Cech, Cochain, CoverNerve, CurvedArrows, CurvedCech,
    LiftOutcome,
};
use crate::error::Result;
use crate::io::{read_json, CochainDoc, CoverDoc, ExtensionDoc, LieDoc};
use crate::lie::{ExtensionDatum, LieAlgebra};
use crate::linear::{BasisKey, LinComb};
use crate::linfty::{jacobi_check, morphism_check, words, LInfty, LieLInfty, TKey, TensorForms};
use crate::sample;
use crate::simplicial::{bch_horn, cochain_basis, form_monomials, no_diff, Filler, SimplexContraction};
use crate::transfer::contraction::{g_lin, k_lin};
use crate::transfer::{check_contraction, kuranishi, kuranishi_inverse, Transfer};

use super::{input, Check, Command, Outcome};

pub fn dispatch(c: &Command) -> Result<Outcome> {
    match c {
        Command::CheckLie { lie } => check_lie(lie),
        Command::CheckExtension { extension } => check_extension(extension),
        Command::Bch { lie, a, b } => bch(lie, a, b),
        Command::DupontSelftest { n, degree } => dupont_selftest(*n, *degree),
        Command::Transfer { lie, n, bound, morphism_bound } => transfer(lie, *n, *bound, *morphism_bound),
        Command::Kuranishi { lie, samples, seed } => kuranishi_test(lie, *samples, *seed),
        Command::Cech { cover, lie, bound } => cech(cover, lie, *bound),
        Command::McCheck { cover, lie, cocycle } => mc_check(cover, lie, cocycle),
        Command::CocycleVerify { cover, lie, cocycle } => cocycle_verify(cover, lie, cocycle),
        Command::Trivialize { cover, lie, cocycle, sections } => trivialize(cover, lie, cocycle, sections),
        Command::LiftSolve { cover, extension, cocycle } => lift_solve(cover, extension, cocycle),
        Command::LiftVerify { cover, extension, cocycle, lift } => lift_verify(cover, extension, cocycle, lift),
        Command::EquivVerify { cover, extension, cocycle, lift, lift2, sections } => equiv_verify(cover, extension, cocycle, lift, lift2, sections),
        Command::BijectionTest { cover, extension, cocycle, samples, seed } => bijection_test(cover, extension, cocycle, *samples, *seed),
    }
}

fn lines<A: std::fmt::Debug, B: std::fmt::Debug>(r: Vec<(Vec<A>, B)>) -> Vec<String> {
    r.into_iter().map(|(w, v)| format!("{w:?} ↦ {v:?}")).collect()
}

fn load_lie(p: &Path) -> Result<LieAlgebra> {
    read_json::<LieDoc>(p)?.build()
}

fn load_extension(p: &Path) -> Result<ExtensionDatum> {
    read_json::<ExtensionDoc>(p)?.build()
}

fn load_cover(p: &Path) -> Result<Arc<CoverNerve>> {
    Ok(Arc::new(read_json::<CoverDoc>(p)?.build()?))
}

fn load_cochain(p: &Path, nerve: &CoverNerve, lie: &LieAlgebra, q: usize) -> Result<Cochain> {
    read_json::<CochainDoc>(p)?.to_cochain(nerve, lie, q, false)
}

fn check_lie(p: &Path) -> Result<Outcome> {
    let lie = load_lie(p)?;
    let mut o = Outcome::default();
    o.check(Check::from_report("jacobi", lie.jacobi_check()));
    o.check(Check::from_report("representation", lie.check_representation()));
    o.put("dim", lie.dim());
    o.put("class", lie.class());
    o.put("weights", lie.weights());
    o.put("adapted_basis", lie.has_adapted_basis());
    Ok(o)
}

fn check_extension(p: &Path) -> Result<Outcome> {
    let ext = load_extension(p)?;
    let mut o = Outcome::default();
    o.check(Check::from_report("extension datum", ext.check()));
    let tilde = ext.assemble_tilde()?;
    o.check(Check::from_report("jacobi of the extension algebra", tilde.jacobi_check()));
    o.put("dim_g", ext.dim_g());
    o.put("dim_h", ext.dim_h());
    o.put("central", ext.is_central());
    o.put("trivial", ext.is_trivial());
    o.put("extension_algebra", LieDoc::from_lie(tilde));
    Ok(o)
}

fn bch(p: &Path, a: &str, b: &str) -> Result<Outcome> {
    let lie = load_lie(p)?;
    let (x, y) = (lie.parse_element(a)?, lie.parse_element(b)?);
    let z = lie.bch(&x, &y);
    let mut o = Outcome::default();
    o.put("result", lie.format_element(&z));
    o.put("coordinates", &z);
    let q = Arc::new(LieLInfty::new(lie.clone()));
    let filler = Filler::new(q, no_diff(), 2, 1, lie.class().max(2));
    let horn = bch_horn(&filler, &LinComb::zero(), &LieLInfty::to_comb(&x), &LieLInfty::to_comb(&y))?;
    let hz = LieLInfty::to_comb(&z);
    o.check(Check::flag("horn filling", horn == hz, format!("horn filling gives {horn:?}")));
    if let Some(m) = lie.bch_matrix(&x, &y) {
        o.check(Check::flag("matrix exponential", m == z, format!("matrices give {}", lie.format_element(&m))));
    }
    Ok(o)
}

/// Sample keys `(0, degree 0)` and `(1, degree 1)` tensored with forms of
/// polynomial degree at most `p`.
fn dupont_selftest(n: usize, degree: Option<u32>) -> Result<Outcome> {
    if !(1..=3).contains(&n) {
        return Err(input("dupont-selftest supports n = 1, 2, 3"));
    }
    let p = degree.unwrap_or(4 - n as u32);
    let coeffs = [BasisKey::new(0, 0), BasisKey::new(1, 1)];
    let c = SimplexContraction::new(n, no_diff());
    let vs: Vec<TKey<BasisKey>> = form_monomials(n, p).into_iter().flat_map(|f| coeffs.iter().map(move |l| TKey { l: *l, f })).collect();
    let ws = cochain_basis(n, &coeffs);
    let report = check_contraction(&c, &vs, &ws);
    let mut o = Outcome::default();
    for (name, prefix) in [
        ("gf = id", "gf"),
        ("Kf = 0", "Kf"),
        ("K² = 0", "K²"),
        ("gK = 0", "gK"),
        ("Kd + dK = fg − id", "Kd"),
        ("f chain map", "f is"),
        ("g chain map", "g is"),
    ] {
        o.check(Check::from_report(name, report.iter().filter(|s| s.starts_with(prefix)).cloned().collect()));
    }
    o.put("n", n);
    o.put("forms_checked", vs.len());
    o.put("cochains_checked", ws.len());
    Ok(o)
}

type SimplexTransfer = Transfer<TKey<BasisKey>, crate::simplicial::CKey<BasisKey>, TensorForms<LieLInfty>, SimplexContraction<BasisKey>>;

fn simplex_transfer(lie: &LieAlgebra, n: usize) -> SimplexTransfer {
    Transfer::new(TensorForms::new(LieLInfty::new(lie.clone())), SimplexContraction::new(n, no_diff()), lie.class().max(2))
}

fn transfer(p: &Path, n: usize, bound: usize, mb: usize) -> Result<Outcome> {
    if !(1..=3).contains(&n) {
        return Err(input("transfer supports n = 1, 2, 3"));
    }
    let lie = load_lie(p)?;
    let t = simplex_transfer(&lie, n);
    let keys: Vec<BasisKey> = (0..lie.dim()).map(LieLInfty::key).collect();
    let ws = cochain_basis(n, &keys);
    let vs: Vec<TKey<BasisKey>> = form_monomials(n, 1).into_iter().flat_map(|f| keys.iter().map(move |l| TKey { l: *l, f })).collect();
    let mut o = Outcome::default();
    o.check(Check::from_report("generalized Jacobi", lines(jacobi_check(&t, &ws, bound))));
    o.check(Check::from_report("f is an L∞ morphism", lines(morphism_check(&t.f_morphism(), &t, &t.q, &ws, mb))));
    o.check(Check::from_report("g is an L∞ morphism", lines(morphism_check(&t.g_morphism(), &t.q, &t, &vs, mb))));
    let nonzero: Vec<usize> = (1..=bound).map(|k| words(&ws, k, k).iter().filter(|w| !t.bracket(w).is_zero()).count()).collect();
    o.put("nonzero_brackets_by_arity", nonzero);
    o.put("cochain_dim", ws.len());
    Ok(o)
}

fn kuranishi_test(p: &Path, samples: usize, seed: u64) -> Result<Outcome> {
    let lie = load_lie(p)?;
    let t = simplex_transfer(&lie, 1);
    let mut rng = sample::rng(seed);
    let (mut forward, mut backward, mut section) = (vec![], vec![], vec![]);
    for i in 0..samples {
        let x = sample::interval_one_form(&mut rng, lie.dim());
        let (y, k) = kuranishi(&t, &x)?;
        if kuranishi_inverse(&t, &y, &k)? != x {
            forward.push(format!("sample {i}: ρ⁻¹ρ(x) ≠ x"));
        }
        let y2 = sample::interval_edge(&mut rng, lie.dim());
        let k2 = k_lin(&t.c, &sample::interval_one_form(&mut rng, lie.dim()));
        let x2 = kuranishi_inverse(&t, &y2, &k2)?;
        if kuranishi(&t, &x2)? != (y2.clone(), k2) {
            backward.push(format!("sample {i}: ρρ⁻¹(y, k) ≠ (y, k)"));
        }
        let x0 = kuranishi_inverse(&t, &y2, &LinComb::zero())?;
        if !k_lin(&t.c, &x0).is_zero() || !crate::linfty::mc_defect(&t.q, &x0).is_zero() || g_lin(&t.c, &x0) != y2 {
            section.push(format!("sample {i}: ρ⁻¹(y, 0) is not a Maurer-Cartan element of Ker K over y"));
        }
    }
    let mut o = Outcome::default();
    o.check(Check::from_report("ρ⁻¹ ∘ ρ = id", forward));
    o.check(Check::from_report("ρ ∘ ρ⁻¹ = id", backward));
    o.check(Check::from_report("ρ⁻¹(y, 0) ∈ Ker K ∩ MC", section));
    o.put("samples", samples);
    Ok(o)
}

fn cech(cover: &Path, lie: &Path, bound: usize) -> Result<Outcome> {
    let (nerve, lie) = (load_cover(cover)?, load_lie(lie)?);
    let cech = Cech::new(nerve.clone(), lie);
    let full = cech.full_basis();
    let mut o = Outcome::default();
    o.check(Check::from_report("generalized Jacobi", lines(jacobi_check(cech.transfer.as_ref(), &full, bound))));
    o.check(Check::from_report("brackets respect the filtration", cech.filtration_check(bound)));
    o.put("opens", nerve.opens());
    o.put("dimension", nerve.dim());
    o.put("cochain_dims", (0..=nerve.dim()).map(|q| cech.basis(q).len()).collect::<Vec<_>>());
    Ok(o)
}

fn load_cocycle(cover: &Path, lie: &Path, cocycle: &Path) -> Result<(Cech, Cochain)> {
    let (nerve, lie) = (load_cover(cover)?, load_lie(lie)?);
    let phi = load_cochain(cocycle, &nerve, &lie, 1)?;
    let cech = Cech::new(nerve, lie);
    check_shape(&cech.local, &phi, 1)?;
    Ok((cech, phi))
}

fn group_and_mc(o: &mut Outcome, cech: &Cech, phi: &Cochain) -> Result<bool> {
    let group = verify_group_cocycle(&cech.local, phi);
    let y = cech.to_comb(phi);
    let defect = cech.mc_defect(&y);
    let is_mc = defect.is_zero();
    let agree = group.is_empty() == is_mc;
    o.put("group_cocycle", group.is_empty());
    o.put("maurer_cartan", is_mc);
    o.put("defect", CochainDoc::from_cochain(&cech.nerve, cech.lie(), &cech.from_comb(&defect, 2)));
    o.check(Check::flag("group cocycle ⟺ Maurer-Cartan", agree, "the two conditions disagree"));
    Ok(group.is_empty() && is_mc)
}

fn mc_check(cover: &Path, lie: &Path, cocycle: &Path) -> Result<Outcome> {
    let (cech, phi) = load_cocycle(cover, lie, cocycle)?;
    let mut o = Outcome::default();
    let ok = group_and_mc(&mut o, &cech, &phi)?;
    o.check(Check::flag("Maurer-Cartan", ok, "nonzero Maurer-Cartan defect"));
    Ok(o)
}

fn cocycle_verify(cover: &Path, lie: &Path, cocycle: &Path) -> Result<Outcome> {
    let (cech, phi) = load_cocycle(cover, lie, cocycle)?;
    let mut o = Outcome::default();
    group_and_mc(&mut o, &cech, &phi)?;
    o.check(Check::from_report("group cocycle", verify_group_cocycle(&cech.local, &phi)));
    Ok(o)
}

fn trivialize(cover: &Path, lie: &Path, cocycle: &Path, sections: &Path) -> Result<Outcome> {
    let (cech, phi) = load_cocycle(cover, lie, cocycle)?;
    let sigma = load_cochain(sections, &cech.nerve, cech.lie(), 0)?;
    let out = apply_trivialization(&cech.local, &phi, &sigma);
    let mut o = Outcome::default();
    let before = verify_group_cocycle(&cech.local, &phi).is_empty();
    let after = verify_group_cocycle(&cech.local, &out).is_empty();
    o.check(Check::flag("cocycle condition preserved", before == after, "trivialization changed the cocycle condition"));
    o.put("cocycle", CochainDoc::from_cochain(&cech.nerve, cech.lie(), &out));
    Ok(o)
}

fn load_curved(cover: &Path, extension: &Path, cocycle: &Path) -> Result<CurvedCech> {
    let (nerve, ext) = (load_cover(cover)?, load_extension(extension)?);
    let phi = load_cochain(cocycle, &nerve, &ext.g, 1)?;
    let local = crate::descent::FaceLie::new(nerve.clone(), ext.g.clone());
    let report = verify_group_cocycle(&local, &phi);
    if !report.is_empty() {
        return Err(input(&format!("not a cocycle: {}", report.join("; "))));
    }
    CurvedCech::new(nerve, ext, phi)
}

fn load_lift(cc: &CurvedCech, p: &Path) -> Result<Cochain> {
    let psi = load_cochain(p, &cc.nerve, &cc.ext.h, 1)?;
    cc.check_lift_shape(&psi, 1)?;
    Ok(psi)
}

fn lift_doc(cc: &CurvedCech, psi: &Cochain) -> CochainDoc {
    CochainDoc::from_cochain(&cc.nerve, &cc.ext.h, psi)
}

fn lift_solve(cover: &Path, extension: &Path, cocycle: &Path) -> Result<Outcome> {
    let cc = load_curved(cover, extension, cocycle)?;
    let mut o = Outcome::default();
    o.check(Check::from_report("pro-nilpotence", cc.pro_nilpotence(1, 3)));
    match solve_lift(&cc)? {
        LiftOutcome::Lift { psi, y } => {
            o.check(Check::from_report("twisted cocycle", cc.verify_twisted_cocycle(&psi)));
            o.check(Check::flag("curved Maurer-Cartan", cc.mc_defect(&y).is_zero(), "nonzero curved defect"));
            o.put("lift", lift_doc(&cc, &psi));
        }
        LiftOutcome::Obstruction(ob) => {
            let class = !Cech::new(cc.nerve.clone(), cc.ext.h.clone()).is_coboundary(&ob.term, 2);
            o.obstruction = true;
            o.put("level", ob.level);
            o.put("term", lift_doc_q(&cc, &ob.term));
            o.check(Check::flag("obstruction is not exact", class, "obstruction term is a coboundary"));
        }
    }
    Ok(o)
}

fn lift_doc_q(cc: &CurvedCech, x: &Cochain) -> CochainDoc {
    CochainDoc::from_cochain(&cc.nerve, &cc.ext.h, x)
}

fn lift_verify(cover: &Path, extension: &Path, cocycle: &Path, lift: &Path) -> Result<Outcome> {
    let cc = load_curved(cover, extension, cocycle)?;
    let psi = load_lift(&cc, lift)?;
    let report = cc.verify_twisted_cocycle(&psi);
    let (alpha, y) = cc.forward_unchecked(&psi)?;
    let is_mc = crate::linfty::mc_defect(cc.curved(), &alpha).is_zero();
    let mut o = Outcome::default();
    o.put("twisted_cocycle", report.is_empty());
    o.put("curved_maurer_cartan", is_mc);
    o.check(Check::flag("twisted cocycle ⟺ curved Maurer-Cartan", report.is_empty() == is_mc, "the two conditions disagree"));
    o.check(Check::from_report("twisted cocycle", report));
    o.put("image", lift_doc_q(&cc, &cc.comb_to_h(&y, 1)));
    Ok(o)
}

fn equiv_verify(cover: &Path, extension: &Path, cocycle: &Path, lift: &Path, lift2: &Path, sections: &Path) -> Result<Outcome> {
    let cc = load_curved(cover, extension, cocycle)?;
    let (psi, psi2) = (load_lift(&cc, lift)?, load_lift(&cc, lift2)?);
    let sigma = load_cochain(sections, &cc.nerve, &cc.ext.h, 0)?;
    cc.check_sections(&sigma)?;
    let mut o = Outcome::default();
    o.check(Check::from_report("first lift is a twisted cocycle", cc.verify_twisted_cocycle(&psi)));
    o.check(Check::from_report("second lift is a twisted cocycle", cc.verify_twisted_cocycle(&psi2)));
    let related = cc.verify_twisted_equiv(&psi, &psi2, &sigma);
    o.put("equivalent", related);
    o.check(Check::flag("related by the sections", related, "the sections carry the first lift elsewhere"));
    if related {
        let ar = CurvedArrows::new(&cc)?;
        let arrow = ar.trivialization_arrow(&psi, &sigma)?;
        let ends = CurvedArrows::endpoints(&arrow.path);
        let ok = ar.is_arrow(&arrow.path) && ends.0 == cc.forward(&psi)? && ends.1 == cc.forward(&psi2)?;
        o.check(Check::flag("arrow between the images", ok, "arrow endpoints differ from the images of the lifts"));
    }
    Ok(o)
}

fn bijection_test(cover: &Path, extension: &Path, cocycle: &Path, samples: usize, seed: u64) -> Result<Outcome> {
    let cc = load_curved(cover, extension, cocycle)?;
    let mut o = Outcome::default();
    let psi = match solve_lift(&cc)? {
        LiftOutcome::Lift { psi, .. } => psi,
        LiftOutcome::Obstruction(ob) => {
            o.obstruction = true;
            o.put("level", ob.level);
            o.put("term", lift_doc_q(&cc, &ob.term));
            return Ok(o);
        }
    };
    let ar = CurvedArrows::new(&cc)?;
    let mut rng = sample::rng(seed);
    let (mut round, mut arrows, mut compose) = (vec![], vec![], vec![]);
    for i in 0..samples {
        let s1 = sample::sections(&mut rng, &cc.nerve, cc.ext.dim_h());
        let s2 = sample::sections(&mut rng, &cc.nerve, cc.ext.dim_h());
        let psi1 = cc.twisted_equiv(&psi, &s1);
        let y1 = cc.forward(&psi1)?;
        if cc.backward(&y1)? != psi1 {
            round.push(format!("sample {i}: lift does not survive the round trip"));
        }
        let a1 = ar.trivialization_arrow(&psi, &s1)?;
        let a2 = ar.trivialization_arrow(&psi1, &s2)?;
        match ar.arrow_to_trivialization(&a1) {
            Ok((p, p2, s)) if p == psi && p2 == psi1 && s == s1 => {}
            _ => arrows.push(format!("sample {i}: arrow does not read back as its trivialization")),
        }
        let c = ar.compose(&a1, &a2)?;
        if cc.comb_to_h(&c.edge, 0) != ar.compose_sections(&s1, &s2) {
            compose.push(format!("sample {i}: composite edge is not the product of the sections"));
        }
    }
    o.check(Check::from_report("lift ↦ Maurer-Cartan ↦ lift", round));
    o.check(Check::from_report("trivializations are arrows", arrows));
    o.check(Check::from_report("composition of arrows", compose));
    o.put("samples", samples);
    o.put("lift", lift_doc(&cc, &psi));
    Ok(o)
}
