//! Pinned golden emissions (reviewed once against the computed examples),
//! the clause-exhaustiveness grid, the corpus re-check suite, and the
//! substitution-commutation property of the interpretations.

mod common;

use std::rc::Rc;

use common::*;
use sigforge::amds::{self, EmitKind, InterpKind, Side};
use sigforge::diag::Code;
use sigforge::inner::{self, Style};
use sigforge::tos::{subst, syntax::tms, verify, Ctx, Profile, Sub, SubItem, Ty};
use sigforge::{elab, surface};

fn load(name: &str) -> (Ctx, String) {
    let path = format!("{}/../../corpus/{name}", env!("CARGO_MANIFEST_DIR"));
    let src = std::fs::read_to_string(path).unwrap();
    let sig = surface::parse_file(&src).unwrap();
    (elab::elaborate(&sig).unwrap(), sig.name)
}

fn emit_body(name: &str, kind: EmitKind, style: Style) -> String {
    let (ctx, sig_name) = load(name);
    let unit = amds::emit_unit(&ctx, &sig_name, "golden", kind).unwrap();
    inner::check_unit(&unit, &ctx.externs).unwrap_or_else(|e| panic!("{name}: {e}"));
    let printed = inner::print_unit(&unit, &ctx.externs, style);
    printed
        .lines()
        .filter(|l| !l.starts_with("--") && !l.is_empty())
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn golden_nat_simple_algebra_ascii_and_agda() {
    assert_eq!(
        emit_body("nat_simple.sig", EmitKind::Alg, Style::Ascii),
        "NatAlg = (X : Set) * (zero : X) * (X -> X)"
    );
    assert_eq!(
        emit_body("nat_simple.sig", EmitKind::Alg, Style::Agda),
        "NatAlg = Σ Set λ X → Σ X λ zero → (X → X)"
    );
}

#[test]
fn golden_nat_simple_morphism() {
    assert_eq!(
        emit_body("nat_simple.sig", EmitKind::Mor, Style::Ascii),
        "NatMor (X0 : Set) (zero0 : X0) (suc0 : X0 -> X0) (X1 : Set) (zero1 : X1) (suc1 : X1 -> X1) = \
         (XM : X0 -> X1) * (zeroM : XM zero0 = zero1) * ((x : X0) -> XM (suc0 x) = suc1 (XM x))"
    );
}

#[test]
fn golden_nat_simple_displayed_algebra() {
    assert_eq!(
        emit_body("nat_simple.sig", EmitKind::DispAlg, Style::Ascii),
        "NatDispAlg (X : Set) (zero : X) (suc : X -> X) = \
         (XD : X -> Set) * (zeroD : XD zero) * ((x : X) -> XD x -> XD (suc x))"
    );
}

#[test]
fn golden_nat_simple_section() {
    assert_eq!(
        emit_body("nat_simple.sig", EmitKind::Section, Style::Ascii),
        "NatSection (X : Set) (zero : X) (suc : X -> X) (XD : X -> Set) (zeroD : XD zero) \
         (sucD : (x : X) -> XD x -> XD (suc x)) = \
         (XS : (x : X) -> XD x) * (zeroS : XS zero = zeroD) * ((x : X) -> XS (suc x) = sucD x (XS x))"
    );
}

#[test]
fn golden_nat_simple_induction_and_recursion() {
    assert_eq!(
        emit_body("nat_simple.sig", EmitKind::Induction, Style::Ascii),
        "NatInd = (X : Set) -> (zero : X) -> (suc : X -> X) -> (XD : X -> Set) -> (zeroD : XD zero) -> \
         (sucD : (x : X) -> XD x -> XD (suc x)) -> \
         (XS : (x : X) -> XD x) * (zeroS : XS zero = zeroD) * ((x : X) -> XS (suc x) = sucD x (XS x))"
    );
    assert_eq!(
        emit_body("nat_simple.sig", EmitKind::Recursion, Style::Ascii),
        "NatRec = (X0 : Set) -> (zero0 : X0) -> (suc0 : X0 -> X0) -> (X1 : Set) -> (zero1 : X1) -> \
         (suc1 : X1 -> X1) -> \
         (XM : X0 -> X1) * (zeroM : XM zero0 = zero1) * ((x : X0) -> XM (suc0 x) = suc1 (XM x))"
    );
}

#[test]
fn golden_fqii_nat_matches_dependent_computation() {
    assert_eq!(
        emit_body("nat.sig", EmitKind::Alg, Style::Ascii),
        "NatAlg = (N : Set) * (zero : N) * (N -> N)"
    );
    assert_eq!(
        emit_body("nat.sig", EmitKind::Mor, Style::Ascii),
        "NatMor (N0 : Set) (zero0 : N0) (suc0 : N0 -> N0) (N1 : Set) (zero1 : N1) (suc1 : N1 -> N1) = \
         (NM : N0 -> N1) * (zeroM : NM zero0 ≡ zero1) * ((x : N0) -> NM (suc0 x) ≡ suc1 (NM x))"
    );
}

#[test]
fn golden_circle_algebra_displayed_and_section() {
    assert_eq!(
        emit_body("s1.sig", EmitKind::Alg, Style::Ascii),
        "S1Alg = (S1 : Ty0) * (base : S1) * (base = base)"
    );
    let disp = emit_body("s1.sig", EmitKind::DispAlg, Style::Ascii);
    assert_eq!(
        disp,
        "S1DispAlg (S1 : Ty0) (base : S1) (loop : base = base) = \
         (S1D : S1 -> Ty0) * (baseD : S1D base) * (tr S1D loop baseD = baseD)"
    );
    assert!(disp.contains("tr S1D loop baseD = baseD"));
    let sect = emit_body("s1.sig", EmitKind::Section, Style::Ascii);
    assert_eq!(
        sect,
        "S1Section (S1 : Ty0) (base : S1) (loop : base = base) (S1D : S1 -> Ty0) (baseD : S1D base) \
         (loopD : tr S1D loop baseD = baseD) = \
         (S1S : (x : S1) -> S1D x) * (baseS : S1S base ≡ baseD) * (apd S1S loop ≡ loopD)"
    );
    assert!(sect.contains("apd S1S loop ≡ loopD"));
}

#[test]
fn golden_empty_signature() {
    assert_eq!(emit_body("empty.sig", EmitKind::Alg, Style::Ascii), "EmptyAlg = Top");
    assert_eq!(
        emit_body("empty.sig", EmitKind::Induction, Style::Ascii),
        "EmptyInd = Top -> Top -> Top"
    );
}

/// The same identity-equation entry emits a strict equation between the
/// component morphisms under fqii, and the lifted square under strict hiit.
#[test]
fn divergence_witness_for_the_identity_equation() {
    let fq = emit_body("id_eq_fqii.sig", EmitKind::Mor, Style::Ascii);
    let st = emit_body("id_eq_strict.sig", EmitKind::Mor, Style::Ascii);
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
    assert!(st.contains("ap XM e0"));
}

#[test]
fn weak_identity_interpretations_use_transport_squares() {
    let mor = emit_body("int_weak.sig", EmitKind::Mor, Style::Ascii);
    assert!(mor.contains("tr"), "weak ID morphism carries transports: {mor}");
    let disp = emit_body("int_weak.sig", EmitKind::DispAlg, Style::Ascii);
    assert!(disp.contains("tr"), "weak ID displayed algebra transports: {disp}");
}

#[test]
fn unsupported_cells_are_reported_for_small_j() {
    let (ctx, name) = load("torus_weak.sig");
    for kind in [EmitKind::Mor, EmitKind::Section, EmitKind::Induction, EmitKind::Recursion] {
        let err = amds::emit_unit(&ctx, &name, "h", kind).unwrap_err();
        assert_eq!(err.code, Code::EUnsupported, "{kind:?}");
    }
    for kind in [EmitKind::Alg, EmitKind::DispAlg] {
        let unit = amds::emit_unit(&ctx, &name, "h", kind).unwrap();
        inner::check_unit(&unit, &ctx.externs).unwrap();
    }
}

/// Every derivable interpretation of every bundled signature re-checks
/// under the inner checker, with the two documented unsupported cells.
#[test]
fn recheck_suite_over_the_corpus() {
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
    for name in corpus {
        let (ctx, sig_name) = load(name);
        for (kind, res) in amds::emit_all(&ctx, &sig_name, "corpus") {
            match res {
                Ok(unit) => {
                    if let Err(e) = inner::check_unit(&unit, &ctx.externs) {
                        panic!("{name} {kind:?}: inner check failed: {e}");
                    }
                }
                Err(d) if d.code == Code::EUnsupported => {
                    assert_eq!(
                        name, "torus_weak.sig",
                        "only the small-identity elimination is unsupported"
                    );
                }
                Err(d) => panic!("{name} {kind:?}: {d}"),
            }
        }
    }
}

/// One clause per legal former and kind: a signature exercising every
/// former of each profile goes through all four interpretations (minus
/// the two documented cells).
#[test]
fn clause_table_is_exhaustive_per_profile() {
    let sources = [
        (
            Profile::Simple,
            "profile simple\nsignature G where\n z : iota\n s : iota -> iota\n w : iota -> iota -> iota\n",
            true,
        ),
        (
            Profile::Fqii,
            "profile fqii\nextern Ix : Type\nextern i0 : Ix\nsignature G where\n N : U\n zero : El N\n suc : (n : N) -> El N\n F : (i : Ix) *> U\n mk : (i : Ix) *> (x : F i) -> El (F i0)\n eq : (n : N) -> Id (suc n) n\n sort_eq : Id N N\n req : Id (suc zero) zero\n",
            true,
        ),
        (
            Profile::HiitStrict,
            "profile hiit-strict\nextern Ix : Type\nextern i0 : Ix\nsignature G where\n A : U\n a : El A\n u : El Top\n g : Top -> El A\n s : El (Sg (x : A) (Id x x))\n f : Sg (x : A) (Id x x) -> El A\n pr : El (Id (proj1 s) a)\n pr2 : El (Id (proj2 s) (proj2 s))\n pair_eq : El (Id (f (a , refl)) a)\n h : El ((i : Ix) ~> A)\n happ : El (Id (h i0) (h i0))\n",
            true,
        ),
        (
            Profile::HiitWeak,
            "profile hiit-weak\nextern Ix : Type\nextern i0 : Ix\nsignature G where\n A : U\n a : El A\n b : El A\n p : El (Id a b)\n P : ID A A\n jl : ID (J (Y q. El Y) a P) a\n u : El Top\n s : El (Sg (x : A) (Id x x))\n f : Sg (x : A) (Id x x) -> El A\n pr : El (Id (proj1 s) a)\n pair_eq : El (Id (f (a , refl)) a)\n h : El ((i : Ix) ~> A)\n happ : El (Id (h i0) (h i0))\n",
            true,
        ),
    ];
    for (profile, src, full) in sources {
        let sig = match surface::parse_file(src) {
            Ok(s) => s,
            Err(d) => panic!("{profile:?} grid source: {d}"),
        };
        let ctx = match elab::elaborate(&sig) {
            Ok(c) => c,
            Err(d) => panic!("{profile:?} grid source: {d}"),
        };
        for (kind, res) in amds::emit_all(&ctx, &sig.name, "grid") {
            match res {
                Ok(unit) => {
                    if let Err(e) = inner::check_unit(&unit, &ctx.externs) {
                        panic!("{profile:?} {kind:?}: {e}");
                    }
                }
                Err(d) => {
                    assert!(!full, "{profile:?} {kind:?} must be supported: {d}");
                    assert_eq!(d.code, Code::EUnsupported);
                }
            }
        }
    }
}

/// Interpreting a substituted type agrees with interpreting the type in
/// the image environment, on random (type, substitution) pairs in the
/// simple and fqii profiles.
#[test]
fn interpretation_commutes_with_substitution() {
    let mut r = rng(41);
    let mut done_simple = 0;
    while done_simple < 250 {
        let gamma = gen_simple_ctx(&mut r, 4);
        let delta = gen_simple_ctx(&mut r, 4);
        let Some(sigma) = gen_simple_sub(&mut r, &gamma, &delta) else {
            continue;
        };
        let a = gen_simple_entry_ty(&mut r, &delta);
        check_commutation_simple(&gamma, &delta, &sigma, &a);
        done_simple += 1;
    }
    let mut done_fqii = 0;
    let mut attempts = 0;
    while done_fqii < 250 && attempts < 5000 {
        attempts += 1;
        let gamma = gen_fqii_ctx(&mut r, 5);
        let delta = gen_fqii_ctx(&mut r, 5);
        let Some(sigma) = gen_fqii_sub(&mut r, &gamma, &delta) else {
            continue;
        };
        let a = gen_fqii_entry_ty(&mut r, &delta);
        check_commutation_fqii(&gamma, &delta, &sigma, &a);
        done_fqii += 1;
    }
    assert!(done_fqii >= 200, "too few fqii samples: {done_fqii}");
}

fn check_commutation_simple(
    gamma: &Ctx,
    delta: &Ctx,
    sigma: &Sub,
    a: &sigforge::tos::RcTy,
) {
    let mut cx1 = amds::Cx::new(gamma);
    let carrier = cx1.bind();
    cx1.set_carrier("", carrier.clone());
    let mut gamma_vars = Vec::new();
    for _ in gamma.entries() {
        let v = cx1.bind();
        cx1.push_a0(v.clone());
        gamma_vars.push(v);
    }
    let substituted = subst::subst_ty(a, sigma);
    let lhs = cx1.interp_ty(InterpKind::A, &substituted, &[]).unwrap();

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
    assert!(
        inner::conv(&lhs, &rhs),
        "simple commutation failed:\n lhs {lhs:?}\n rhs {rhs:?}"
    );
}

fn check_commutation_fqii(gamma: &Ctx, delta: &Ctx, sigma: &Sub, a: &sigforge::tos::RcTy) {
    let mut cx1 = amds::Cx::new(gamma);
    for _ in gamma.entries() {
        let v = cx1.bind();
        cx1.push_a0(v);
    }
    let substituted = subst::subst_ty(a, sigma);
    let lhs = cx1.interp_ty(InterpKind::A, &substituted, &[]).unwrap();

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
    assert!(
        inner::conv(&lhs, &rhs),
        "fqii commutation failed:\n lhs {lhs:?}\n rhs {rhs:?}"
    );
}

/// The morphism interpretation of the fqii Nat signature specializes to
/// the logical-relation computation from the worked example.
#[test]
fn interp_entry_types_by_hand() {
    let (ctx, _) = load("nat.sig");
    // suc : (n : N) -> El N; its morphism component over chosen points
    let suc_ty = match &ctx.entries()[2].binder {
        sigforge::tos::Binder::Ty(t) => t.clone(),
        _ => unreachable!(),
    };
    let prefix = {
        let mut p = Ctx::new(ctx.profile, ctx.externs.clone());
        for e in &ctx.entries()[..2] {
            match &e.binder {
                sigforge::tos::Binder::Ty(t) => p = p.push_ty(e.name.clone(), t.clone()),
                _ => unreachable!(),
            }
        }
        p
    };
    let _ = prefix;
    let mut cx = amds::Cx::new(&ctx);
    // two copies of (N, zero) plus morphism slots
    let n0 = cx.bind();
    cx.push_a0(n0.clone());
    let z0 = cx.bind();
    cx.push_a0(z0.clone());
    let n1 = cx.bind();
    cx.set_a1(0, n1.clone());
    let z1 = cx.bind();
    cx.set_a1(1, z1.clone());
    let nm = cx.bind();
    cx.set_m(0, nm);
    let zm = cx.bind();
    cx.set_m(1, zm);
    let s0 = cx.bind();
    let s1 = cx.bind();
    let got = cx.entry_ty_m(2, &suc_ty, &s0, &s1).unwrap();
    // (x : N0) -> NM (s0 x) ≡ s1 (NM x)
    let printed = format!("{got:?}");
    assert!(printed.contains("StrictEq"), "fqii morphism uses strict equality: {printed}");
    let _ = tms::var(&ctx, 0);
    let _ = Rc::new(Ty::U);
    let _ = Side::Left;
}

/// Lambda terms cannot be written in surface syntax, but their clauses
/// exist for every kind; force them through builder-constructed equations
/// and re-check all emissions.
#[test]
fn lambda_clauses_interpret_under_every_kind() {
    use sigforge::tos::{subst, syntax::ty as tyf, ExternDecl, ExternKind, ExternTable};

    // fqii: N : U, suc : (n : N) -> El N, eta : Id (lam x. suc x) suc,
    // plus external lambdas under both product flavors
    let externs = Rc::new(ExternTable {
        decls: vec![ExternDecl {
            name: "Ix".into(),
            kind: ExternKind::Type,
        }],
    });
    let mut ctx = Ctx::new(Profile::Fqii, externs.clone());
    ctx = ctx.push_ty("N", Rc::new(Ty::U));
    let n = tms::var(&ctx, 0).unwrap();
    let suc_ty = {
        let ctx_b = ctx.push_ty("_", Rc::new(Ty::El(n.clone())));
        let n_up = tms::var(&ctx_b, 1).unwrap();
        tyf::pi(&ctx, n.clone(), Rc::new(Ty::El(n_up))).unwrap()
    };
    ctx = ctx.push_ty("suc", suc_ty);
    let suc = tms::var(&ctx, 0).unwrap();
    let n = tms::var(&ctx, 1).unwrap();
    let eta_lam = {
        let ctx_b = ctx.push_ty("x", Rc::new(Ty::El(n.clone())));
        let body = tms::app(
            &ctx_b,
            tms::var(&ctx_b, 1).unwrap(),
            tms::var(&ctx_b, 0).unwrap(),
        )
        .unwrap();
        tms::lam(&ctx, n.clone(), body).unwrap()
    };
    let eta = tyf::id_large(&ctx, eta_lam, suc.clone()).unwrap();
    ctx = ctx.push_ty("eta", eta);
    // g : (i : Ix) *> El N and its external eta equation
    let g_ty = {
        let ctx_b = ctx.push_ext("i", 0);
        let n_up = tms::var(&ctx_b, 3).unwrap();
        tyf::pi_ext(&ctx, 0, Rc::new(Ty::El(n_up))).unwrap()
    };
    ctx = ctx.push_ty("g", g_ty);
    let g = tms::var(&ctx, 0).unwrap();
    let g_eta = {
        let ctx_b = ctx.push_ext("i", 0);
        let g_up = subst::shift_tm(&g, 1, 0);
        let body = tms::app_ext(&ctx_b, g_up, sigforge::tos::ExtArg::Var(0)).unwrap();
        tms::lam_ext_large(&ctx, 0, body).unwrap()
    };
    let ext_eq = tyf::id_large(&ctx, g_eta, g).unwrap();
    ctx = ctx.push_ty("g_eta", ext_eq);
    verify::verify_ctx(&ctx).unwrap();
    for (kind, res) in amds::emit_all(&ctx, "LamGrid", "grid") {
        let unit = res.unwrap_or_else(|d| panic!("{kind:?}: {d}"));
        inner::check_unit(&unit, &externs).unwrap_or_else(|e| panic!("{kind:?}: {e}"));
    }

    // weak profile: small external lambda under the small identity
    for profile in [Profile::HiitStrict, Profile::HiitWeak] {
        let mut ctx = Ctx::new(profile, externs.clone());
        ctx = ctx.push_ty("A", Rc::new(Ty::U));
        let a = tms::var(&ctx, 0).unwrap();
        let pse = {
            let ctx_b = ctx.push_ext("i", 0);
            let a_up = tms::var(&ctx_b, 1).unwrap();
            tms::pi_small_ext(&ctx, 0, a_up).unwrap()
        };
        ctx = ctx.push_ty("h", Rc::new(Ty::El(pse)));
        let h = tms::var(&ctx, 0).unwrap();
        let h_eta = {
            let ctx_b = ctx.push_ext("i", 0);
            let h_up = subst::shift_tm(&h, 1, 0);
            let body = tms::app_ext(&ctx_b, h_up, sigforge::tos::ExtArg::Var(0)).unwrap();
            tms::lam_ext_small(&ctx, 0, body).unwrap()
        };
        let eq = tms::id_small(&ctx, h_eta, h).unwrap();
        ctx = ctx.push_ty("h_eta", Rc::new(Ty::El(eq)));
        if profile == Profile::HiitWeak {
            // internal lambda equated through the large identity
            let a = tms::var(&ctx, 2).unwrap();
            let f_ty = {
                let ctx_b = ctx.push_ty("_", Rc::new(Ty::El(a.clone())));
                let a_up = tms::var(&ctx_b, 3).unwrap();
                tyf::pi(&ctx, a.clone(), Rc::new(Ty::El(a_up))).unwrap()
            };
            ctx = ctx.push_ty("f", f_ty);
            let f = tms::var(&ctx, 0).unwrap();
            let a = tms::var(&ctx, 3).unwrap();
            let f_eta = {
                let ctx_b = ctx.push_ty("x", Rc::new(Ty::El(a.clone())));
                let body = tms::app(
                    &ctx_b,
                    tms::var(&ctx_b, 1).unwrap(),
                    tms::var(&ctx_b, 0).unwrap(),
                )
                .unwrap();
                tms::lam(&ctx, a, body).unwrap()
            };
            let weak_eq = tyf::id_weak(&ctx, f_eta, f).unwrap();
            ctx = ctx.push_ty("f_eta", weak_eq);
        }
        verify::verify_ctx(&ctx).unwrap();
        for (kind, res) in amds::emit_all(&ctx, "LamGridS", "grid") {
            let unit = res.unwrap_or_else(|d| panic!("{profile:?} {kind:?}: {d}"));
            inner::check_unit(&unit, &externs)
                .unwrap_or_else(|e| panic!("{profile:?} {kind:?}: {e}"));
        }
    }
}

/// Generated component names that collide with existing entry names are
/// disambiguated with numeric suffixes.
#[test]
fn component_name_collisions_get_numeric_suffixes() {
    let src = "profile fqii\nsignature C where\n x : U\n xD : U\n y : El x\n";
    let sig = surface::parse_file(src).unwrap();
    let ctx = elab::elaborate(&sig).unwrap();
    let unit = amds::emit_unit(&ctx, &sig.name, "h", EmitKind::DispAlg).unwrap();
    inner::check_unit(&unit, &ctx.externs).unwrap();
    let printed = inner::print_unit(&unit, &ctx.externs, Style::Ascii);
    // the displayed component of `x` cannot reuse the entry name `xD`
    assert!(printed.contains("xD2"), "{printed}");
    let mut names: Vec<String> = Vec::new();
    for def in &unit.defs {
        for (n, _) in &def.params {
            names.push(n.clone());
        }
    }
    let mut dedup = names.clone();
    dedup.sort();
    dedup.dedup();
    assert_eq!(dedup.len(), names.len(), "duplicate names in {printed}");
}
