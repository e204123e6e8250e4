//! The acceptance suite: one test per criterion, each printing a pass
//! line and enforcing its runtime bound. Randomized parts run at the
//! default seed.

mod common;

use std::rc::Rc;
use std::time::Instant;

use common::*;
use sigforge::amds::{self, EmitKind, InterpKind};
use sigforge::diag::Code;
use sigforge::inner::{self, Style};
use sigforge::term_algebra::{self, AlgebraSpec, DispAlgebraSpec, TermValue};
use sigforge::tos::{
    nbe, subst, syntax::tms, tm_alpha_eq, verify, Ctx, Profile, Sub, SubItem, Ty, TmNode,
};
use sigforge::{elab, surface};

fn load(name: &str) -> (Ctx, String) {
    let path = format!("{}/../../corpus/{name}", env!("CARGO_MANIFEST_DIR"));
    let src = std::fs::read_to_string(path).unwrap();
    let sig = surface::parse_file(&src).unwrap();
    (elab::elaborate(&sig).unwrap(), sig.name)
}

fn emit_body(name: &str, kind: EmitKind) -> String {
    let (ctx, sig_name) = load(name);
    let unit = amds::emit_unit(&ctx, &sig_name, "acceptance", kind).unwrap();
    inner::check_unit(&unit, &ctx.externs).unwrap();
    inner::print_unit(&unit, &ctx.externs, Style::Ascii)
        .lines()
        .filter(|l| !l.starts_with("--") && !l.is_empty())
        .collect::<Vec<_>>()
        .join("\n")
}

fn finish(criterion: &str, start: Instant, bound_secs: f64) {
    let elapsed = start.elapsed().as_secs_f64();
    assert!(
        elapsed < bound_secs,
        "{criterion}: exceeded the runtime bound ({elapsed:.2}s >= {bound_secs}s)"
    );
    println!("acceptance {criterion}: PASS ({elapsed:.2}s < {bound_secs}s)");
}

/// Criterion 1: the emitted telescopes for the natural-number signature
/// match the classical computed forms, and the circle's displayed algebra and
/// section carry the pinned transport and dependent-lifting shapes.
#[test]
fn criterion_1_golden_equivalence() {
    let start = Instant::now();
    assert_eq!(
        emit_body("nat_simple.sig", EmitKind::Alg),
        "NatAlg = (X : Set) * (zero : X) * (X -> X)"
    );
    assert_eq!(
        emit_body("nat_simple.sig", EmitKind::Mor),
        "NatMor (X0 : Set) (zero0 : X0) (suc0 : X0 -> X0) (X1 : Set) (zero1 : X1) (suc1 : X1 -> X1) = \
         (XM : X0 -> X1) * (zeroM : XM zero0 = zero1) * ((x : X0) -> XM (suc0 x) = suc1 (XM x))"
    );
    assert_eq!(
        emit_body("nat_simple.sig", EmitKind::DispAlg),
        "NatDispAlg (X : Set) (zero : X) (suc : X -> X) = \
         (XD : X -> Set) * (zeroD : XD zero) * ((x : X) -> XD x -> XD (suc x))"
    );
    assert_eq!(
        emit_body("nat_simple.sig", EmitKind::Section),
        "NatSection (X : Set) (zero : X) (suc : X -> X) (XD : X -> Set) (zeroD : XD zero) \
         (sucD : (x : X) -> XD x -> XD (suc x)) = \
         (XS : (x : X) -> XD x) * (zeroS : XS zero = zeroD) * ((x : X) -> XS (suc x) = sucD x (XS x))"
    );
    let alg = emit_body("s1.sig", EmitKind::Alg);
    assert_eq!(alg, "S1Alg = (S1 : Ty0) * (base : S1) * (base = base)");
    let disp = emit_body("s1.sig", EmitKind::DispAlg);
    assert!(disp.contains("tr S1D loop baseD = baseD"), "{disp}");
    let sect = emit_body("s1.sig", EmitKind::Section);
    assert!(sect.contains("apd S1S loop ≡ loopD"), "{sect}");
    assert!(sect.contains("S1S base ≡ baseD"), "{sect}");
    finish("criterion 1 (golden equivalence)", start, 1.0);
}

/// Criterion 2: the profile-gating matrix, plus the torus accepted under
/// the weak profile and rejected under the strict one.
#[test]
fn criterion_2_profile_gating_matrix() {
    let start = Instant::now();
    let cases: &[(&str, &str)] = &[
        ("reflect anywhere", "profile fqii\nsignature X where\n N : U\n r : El reflect\n"),
        ("J under simple", "profile simple\nsignature X where\n a : iota -> iota\n b : J (x p. iota) a a\n"),
        ("J under fqii", "profile fqii\nsignature X where\n N : U\n x : El N\n b : El (J (y p. N) x x)\n"),
        ("J under hiit-strict", "profile hiit-strict\nsignature X where\n N : U\n x : El N\n p : El (Id x x)\n b : El (J (y q. Id x y) refl p)\n"),
        ("ID under fqii", "profile fqii\nsignature X where\n N : U\n e : ID N N\n"),
        ("ID under hiit-strict", "profile hiit-strict\nsignature X where\n N : U\n e : ID N N\n"),
        ("Top under fqii", "profile fqii\nsignature X where\n N : U\n t : El Top\n"),
        ("Sg under fqii", "profile fqii\nsignature X where\n N : U\n s : El (Sg (x : N) N)\n"),
        ("small ext product under fqii", "profile fqii\nextern A : Type\nsignature X where\n N : U\n f : El ((x : A) ~> N)\n"),
        ("small Id under fqii", "profile fqii\nsignature X where\n N : U\n x : El N\n e : El (Id x x)\n"),
        ("large Id under hiit-strict", "profile hiit-strict\nsignature X where\n N : U\n x : El N\n e : Id x x\n"),
        ("iota under fqii", "profile fqii\nsignature X where\n z : iota\n"),
    ];
    assert_eq!(cases.len(), 12);
    for (what, src) in cases {
        let sig = surface::parse_file(src).unwrap_or_else(|d| panic!("{what}: {d}"));
        match elab::elaborate(&sig) {
            Err(d) => assert_eq!(d.code, Code::EProfile, "{what}: got {d}"),
            Ok(_) => panic!("{what}: accepted but must be rejected"),
        }
    }
    let (weak, _) = load("torus_weak.sig");
    assert_eq!(weak.len(), 5);
    let strict_src = std::fs::read_to_string(format!(
        "{}/../../corpus/torus_strict.sig",
        env!("CARGO_MANIFEST_DIR")
    ))
    .unwrap();
    let strict_sig = surface::parse_file(&strict_src).unwrap();
    assert_eq!(
        elab::elaborate(&strict_sig).unwrap_err().code,
        Code::EProfile
    );
    finish("criterion 2 (profile-gating matrix)", start, 1.0);
}

/// Criterion 3: every derivable interpretation of every bundled signature
/// re-checks under the inner checker.
#[test]
fn criterion_3_recheck_suite() {
    let start = Instant::now();
    let corpus = [
        "nat_simple.sig",
        "tree_simple.sig",
        "nat.sig",
        "tree.sig",
        "list.sig",
        "vec.sig",
        "cat.sig",
        "monoid.sig",
        "preorder.sig",
        "cwf_k.sig",
        "russell.sig",
        "s1.sig",
        "torus_weak.sig",
        "int_weak.sig",
        "w_type.sig",
        "sigma_pair.sig",
        "coe_weak.sig",
        "id_eq_fqii.sig",
        "id_eq_strict.sig",
        "two_paths_strict.sig",
        "iterated_id_weak.sig",
        "empty.sig",
    ];
    assert!(corpus.len() >= 12);
    let mut checked = 0usize;
    for name in corpus {
        let (ctx, sig_name) = load(name);
        verify::verify_ctx(&ctx).unwrap_or_else(|e| panic!("{name}: {e}"));
        for (kind, res) in amds::emit_all(&ctx, &sig_name, "acceptance") {
            match res {
                Ok(unit) => {
                    inner::with_fuel(100_000_000, || {
                        inner::check_unit(&unit, &ctx.externs)
                            .unwrap_or_else(|e| panic!("{name} {kind:?}: {e}"))
                    });
                    checked += 1;
                }
                Err(d) => {
                    assert_eq!(d.code, Code::EUnsupported, "{name} {kind:?}: {d}");
                    assert_eq!(name, "torus_weak.sig");
                }
            }
        }
    }
    assert!(checked >= 110, "re-checked {checked} units");
    finish("criterion 3 (re-check suite)", start, 10.0);
}

/// Criterion 4: substitution laws on 1000 random well-typed pairs per
/// profile, and interpretation/substitution commutation on 500 samples.
#[test]
fn criterion_4_substitution_laws() {
    let start = Instant::now();
    let mut r = rng(0xACCE97);

    // simple profile: 1000 pairs
    let mut done = 0;
    while done < 1000 {
        let xi = gen_simple_ctx(&mut r, 4);
        let delta = gen_simple_ctx(&mut r, 4);
        let gamma = gen_simple_ctx(&mut r, 4);
        let (Some(sigma), Some(delta_sub)) = (
            gen_simple_sub(&mut r, &delta, &xi),
            gen_simple_sub(&mut r, &gamma, &delta),
        ) else {
            continue;
        };
        let t = gen_simple_tm(&mut r, &xi, 3);
        let t_id = subst::subst_tm(&t, &Sub::id(&xi));
        assert!(tm_alpha_eq(&nbe::normalize(&xi, &t), &nbe::normalize(&xi, &t_id)));
        let lhs = subst::subst_tm(&t, &sigma.compose(&delta_sub));
        let rhs = subst::subst_tm(&subst::subst_tm(&t, &sigma), &delta_sub);
        assert!(tm_alpha_eq(
            &nbe::normalize(&gamma, &lhs),
            &nbe::normalize(&gamma, &rhs)
        ));
        done += 1;
    }

    // dependent profiles: 1000 pairs each
    for profile in [Profile::Fqii, Profile::HiitStrict, Profile::HiitWeak] {
        let mut done = 0;
        let mut attempts = 0;
        while done < 1000 && attempts < 40000 {
            attempts += 1;
            let xi = gen_dep_ctx(&mut r, 5, profile);
            let delta = gen_dep_ctx(&mut r, 5, profile);
            let gamma = gen_dep_ctx(&mut r, 5, profile);
            let sorts = sort_vars(&xi);
            let target = tms::var(&xi, sorts[0]).unwrap();
            let Some(t) = gen_fqii_tm(&mut r, &xi, &target, 3) else {
                continue;
            };
            let t_id = subst::subst_tm(&t, &Sub::id(&xi));
            assert!(tm_alpha_eq(&nbe::normalize(&xi, &t), &nbe::normalize(&xi, &t_id)));
            let (Some(sigma), Some(delta_sub)) = (
                gen_fqii_sub(&mut r, &delta, &xi),
                gen_fqii_sub(&mut r, &gamma, &delta),
            ) else {
                continue;
            };
            let lhs = subst::subst_tm(&t, &sigma.compose(&delta_sub));
            let rhs = subst::subst_tm(&subst::subst_tm(&t, &sigma), &delta_sub);
            assert!(
                tm_alpha_eq(&nbe::normalize(&gamma, &lhs), &nbe::normalize(&gamma, &rhs)),
                "{profile:?} composition law"
            );
            done += 1;
        }
        assert!(done >= 1000, "{profile:?}: only {done} samples");
    }

    // interpretation commutes with substitution: 250 + 250 samples
    let mut done_simple = 0;
    while done_simple < 250 {
        let gamma = gen_simple_ctx(&mut r, 4);
        let delta = gen_simple_ctx(&mut r, 4);
        let Some(sigma) = gen_simple_sub(&mut r, &gamma, &delta) else {
            continue;
        };
        let a = gen_simple_entry_ty(&mut r, &delta);
        commute_simple(&gamma, &delta, &sigma, &a);
        done_simple += 1;
    }
    let mut done_fqii = 0;
    let mut attempts = 0;
    while done_fqii < 250 && attempts < 10000 {
        attempts += 1;
        let gamma = gen_fqii_ctx(&mut r, 5);
        let delta = gen_fqii_ctx(&mut r, 5);
        let Some(sigma) = gen_fqii_sub(&mut r, &gamma, &delta) else {
            continue;
        };
        let a = gen_fqii_entry_ty(&mut r, &delta);
        commute_fqii(&gamma, &delta, &sigma, &a);
        done_fqii += 1;
    }
    assert!(done_fqii >= 250);
    finish("criterion 4 (substitution-law property suite)", start, 60.0);
}

fn commute_simple(gamma: &Ctx, delta: &Ctx, sigma: &Sub, a: &sigforge::tos::RcTy) {
    let mut cx1 = amds::Cx::new(gamma);
    let carrier = cx1.bind();
    cx1.set_carrier("", carrier);
    for _ in gamma.entries() {
        let v = cx1.bind();
        cx1.push_a0(v);
    }
    let lhs = cx1
        .interp_ty(InterpKind::A, &subst::subst_ty(a, sigma), &[])
        .unwrap();
    let mut images = Vec::new();
    for item in &sigma.items {
        let SubItem::Tm(t) = item else { unreachable!() };
        images.push(cx1.interp_tm(InterpKind::A, t).unwrap());
    }
    let mut cx2 = amds::Cx::new(delta);
    let carrier2 = cx2.bind();
    cx2.set_carrier("", carrier2);
    for _ in gamma.entries() {
        let _ = cx2.bind();
    }
    for img in images {
        let c = cx2.cap_here(img);
        cx2.push_a0(c);
    }
    let rhs = cx2.interp_ty(InterpKind::A, a, &[]).unwrap();
    assert!(inner::conv(&lhs, &rhs), "simple commutation");
}

fn commute_fqii(gamma: &Ctx, delta: &Ctx, sigma: &Sub, a: &sigforge::tos::RcTy) {
    let mut cx1 = amds::Cx::new(gamma);
    for _ in gamma.entries() {
        let v = cx1.bind();
        cx1.push_a0(v);
    }
    let lhs = cx1
        .interp_ty(InterpKind::A, &subst::subst_ty(a, sigma), &[])
        .unwrap();
    let mut images = Vec::new();
    for item in &sigma.items {
        let SubItem::Tm(t) = item else { unreachable!() };
        images.push(cx1.interp_tm(InterpKind::A, t).unwrap());
    }
    let mut cx2 = amds::Cx::new(delta);
    for _ in gamma.entries() {
        let _ = cx2.bind();
    }
    for img in images {
        let c = cx2.cap_here(img);
        cx2.push_a0(c);
    }
    let rhs = cx2.interp_ty(InterpKind::A, a, &[]).unwrap();
    assert!(inner::conv(&lhs, &rhs), "fqii commutation");
}

/// Criterion 5: executable semantics — morphism and computation laws hold
/// exactly on the enumerated and random corpora, with the two worked
/// evaluations fixed.
#[test]
fn criterion_5_executable_semantics() {
    let start = Instant::now();
    let (nat, _) = load("nat_simple.sig");
    let numeral =
        AlgebraSpec::from_json(&nat, r#"{"carrier":"int64","ops":{"zero":"0","suc":"x0 + 1"}}"#)
            .unwrap();
    let budget = term_algebra::DEFAULT_NODE_BUDGET;

    let terms = term_algebra::enumerate_terms(&nat, 11).unwrap();
    assert_eq!(terms.len(), 11, "the numerals zero through ten");
    for t in &terms {
        let folded = term_algebra::eval_recursor(&nat, &numeral, t, budget).unwrap();
        let args: Vec<i64> = t
            .args
            .iter()
            .map(|a| term_algebra::eval_recursor(&nat, &numeral, a, budget).unwrap())
            .collect();
        assert_eq!(folded, numeral.ops[t.head].eval(&args, &[]).unwrap());
    }

    let two = term_algebra::parse_term(&nat, "suc (suc zero)").unwrap();
    assert_eq!(term_algebra::eval_recursor(&nat, &numeral, &two, budget).unwrap(), 2);

    let tri = DispAlgebraSpec::from_json(
        &nat,
        r#"{"carrier":"int64","companion":{"zero":"0","suc":"x0 + 1"},"ops":{"zero":"0","suc":"x0 + ih0 + 1"}}"#,
    )
    .unwrap();
    // independent loop: the triangular number of 2
    let mut looped = 0i64;
    for k in 0..2 {
        looped += k + 1;
    }
    assert_eq!(
        term_algebra::eval_eliminator(&nat, &tri, &two, budget).unwrap(),
        looped
    );

    let (tree, _) = load("tree_simple.sig");
    let weird = AlgebraSpec::from_json(
        &tree,
        r#"{"carrier":"int64","ops":{"leaf":"3","node":"x0 * 2 - x1 + 5"}}"#,
    )
    .unwrap();
    let dep = DispAlgebraSpec::from_json(
        &tree,
        r#"{"carrier":"int64","companion":{"leaf":"1","node":"x0 + x1"},"ops":{"leaf":"0","node":"max(ih0, ih1) + x0 + x1"}}"#,
    )
    .unwrap();
    let mut r = rng(0x5EED);
    fn random_tree(r: &mut impl rand::Rng, depth: usize) -> TermValue {
        if depth <= 1 || r.gen_bool(0.3) {
            TermValue { head: 0, args: vec![] }
        } else {
            TermValue {
                head: 1,
                args: vec![random_tree(r, depth - 1), random_tree(r, depth - 1)],
            }
        }
    }
    for _ in 0..200 {
        let t = random_tree(&mut r, 6);
        let folded = term_algebra::eval_recursor(&tree, &weird, &t, budget).unwrap();
        let args: Vec<i64> = t
            .args
            .iter()
            .map(|a| term_algebra::eval_recursor(&tree, &weird, a, budget).unwrap())
            .collect();
        assert_eq!(folded, weird.ops[t.head].eval(&args, &[]).unwrap());

        let whole = term_algebra::eval_eliminator(&tree, &dep, &t, budget).unwrap();
        let xs: Vec<i64> = t
            .args
            .iter()
            .map(|a| term_algebra::eval_recursor(&tree, &dep.companion, a, budget).unwrap())
            .collect();
        let ihs: Vec<i64> = t
            .args
            .iter()
            .map(|a| term_algebra::eval_eliminator(&tree, &dep, a, budget).unwrap())
            .collect();
        assert_eq!(whole, dep.methods[t.head].eval(&xs, &ihs).unwrap());
    }
    finish("criterion 5 (executable semantics)", start, 5.0);
}

/// Criterion 6: the divergence witness — distinct pinned morphism
/// emissions for the identity equation under the two profiles.
#[test]
fn criterion_6_divergence_witness() {
    let start = Instant::now();
    let fq = emit_body("id_eq_fqii.sig", EmitKind::Mor);
    let st = emit_body("id_eq_strict.sig", EmitKind::Mor);
    assert_eq!(
        fq,
        "IdEqMor (X0 : Set) (x0 : X0) (e0 : x0 ≡ x0) (X1 : Set) (x1 : X1) (e1 : x1 ≡ x1) = \
         (XM : X0 -> X1) * (xM : XM x0 ≡ x1) * (xM ≡ xM)"
    );
    assert_eq!(
        st,
        "IdEqMor (X0 : Ty0) (x0 : X0) (e0 : x0 = x0) (X1 : Ty0) (x1 : X1) (e1 : x1 = x1) = \
         (XM : X0 -> X1) * (xM : XM x0 ≡ x1) * (ap XM e0 ≡ e1)"
    );
    assert_ne!(fq, st);
    finish("criterion 6 (divergence witness)", start, 1.0);
}

/// Criterion 7: the eliminator of the large weak identity computes at
/// refl; the small identity's stays neutral, with its propositional
/// computation rule statable as an ID type.
#[test]
fn criterion_7_strict_j_beta() {
    let start = Instant::now();
    let mut ctx = Ctx::new(Profile::HiitWeak, Rc::new(sigforge::tos::ExternTable::default()));
    ctx = ctx.push_ty("A", Rc::new(Ty::U));
    let sort = tms::var(&ctx, 0).unwrap();
    ctx = ctx.push_ty("a", Rc::new(Ty::El(sort)));
    let a_point = tms::var(&ctx, 0).unwrap();
    let sort = tms::var(&ctx, 1).unwrap();

    // large identity: J (y q. El A) a refl reduces to a
    let motive_large = {
        let s_up = subst::shift_tm(&sort, 2, 0);
        Rc::new(Ty::El(s_up))
    };
    let refl_large = tms::refl(
        &ctx,
        Rc::new(Ty::IdWeak(
            Rc::new(Ty::El(sort.clone())),
            a_point.clone(),
            a_point.clone(),
        )),
    )
    .unwrap();
    let j_large = tms::j_weak(&ctx, motive_large.clone(), a_point.clone(), refl_large).unwrap();
    assert!(tm_alpha_eq(&nbe::normalize(&ctx, &j_large), &a_point));

    // small identity: J (y q. El A) a refl stays neutral
    let id_small = tms::id_small(&ctx, a_point.clone(), a_point.clone()).unwrap();
    let refl_small = tms::refl(&ctx, Rc::new(Ty::El(id_small))).unwrap();
    let j_small = tms::j_small(&ctx, motive_large, a_point.clone(), refl_small).unwrap();
    let nf = nbe::normalize(&ctx, &j_small);
    assert!(matches!(nf.node, TmNode::JSmall(_, _, _)), "{nf:?}");
    assert!(!nbe::conv(&ctx, &j_small, &a_point));

    // the propositional rule is statable: ID (J b pr refl) pr
    let beta_stmt = sigforge::tos::syntax::ty::id_weak(&ctx, j_small, a_point).unwrap();
    verify::verify_ty(&ctx, &beta_stmt).unwrap();
    finish("criterion 7 (strict J beta)", start, 1.0);
}
