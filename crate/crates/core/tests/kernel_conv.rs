//! Conversion checking: profile-gated beta rules, strict versus
//! propositional J, idempotent normalization, and termination under a
//! fuel bound on the corpus.

mod common;

use common::*;
use std::rc::Rc;
use sigforge::elab;
use sigforge::surface;
use sigforge::tos::{
    nbe, syntax::tms, tm_alpha_eq, Binder, Ctx, ExternTable, Profile, RcTm, Sub, Ty, TmNode,
};

fn hiit_ctx(profile: Profile) -> (Ctx, RcTm, RcTm) {
    // A : U, a : El A, b : El A
    let mut ctx = Ctx::new(profile, Rc::new(ExternTable::default()));
    ctx = ctx.push_ty("A", Rc::new(Ty::U));
    let a_sort = tms::var(&ctx, 0).unwrap();
    ctx = ctx.push_ty("a", Rc::new(Ty::El(a_sort)));
    let a_sort = tms::var(&ctx, 1).unwrap();
    ctx = ctx.push_ty("b", Rc::new(Ty::El(a_sort)));
    let a = tms::var(&ctx, 1).unwrap();
    let b = tms::var(&ctx, 0).unwrap();
    (ctx, a, b)
}

#[test]
fn beta_for_internal_application_fqii() {
    // lam (x. x) applied to a point reduces to the point
    let mut ctx = Ctx::new(Profile::Fqii, Rc::new(ExternTable::default()));
    ctx = ctx.push_ty("A", Rc::new(Ty::U));
    let sort = tms::var(&ctx, 0).unwrap();
    ctx = ctx.push_ty("a", Rc::new(Ty::El(sort)));
    let sort = tms::var(&ctx, 1).unwrap();
    let ctx_body = ctx.push_ty("x", Rc::new(Ty::El(sort.clone())));
    let body = tms::var(&ctx_body, 0).unwrap();
    let idf = tms::lam(&ctx, sort, body).unwrap();
    let arg = tms::var(&ctx, 0).unwrap();
    let app = tms::app(&ctx, idf, arg.clone()).unwrap();
    assert!(nbe::conv(&ctx, &app, &arg), "Pi beta must hold under fqii");
}

#[test]
fn eta_for_internal_products_fqii_only() {
    // f : (x : A) -> El A; conv(lam(x. f x), f) holds under fqii
    let mut ctx = Ctx::new(Profile::Fqii, Rc::new(ExternTable::default()));
    ctx = ctx.push_ty("A", Rc::new(Ty::U));
    let sort = tms::var(&ctx, 0).unwrap();
    let ctx_f = ctx.push_ty("_", Rc::new(Ty::El(sort.clone())));
    let cod = {
        let s = tms::var(&ctx_f, 1).unwrap();
        Rc::new(Ty::El(s))
    };
    let pi = Rc::new(Ty::Pi(sort.clone(), cod));
    let ctx = ctx.push_ty("f", pi);
    let f = tms::var(&ctx, 0).unwrap();
    let dom = tms::var(&ctx, 1).unwrap();
    let ctx_body = ctx.push_ty("x", Rc::new(Ty::El(dom.clone())));
    let fx = tms::app(
        &ctx_body,
        tms::var(&ctx_body, 1).unwrap(),
        tms::var(&ctx_body, 0).unwrap(),
    )
    .unwrap();
    let eta = tms::lam(&ctx, dom, fx).unwrap();
    assert!(nbe::conv(&ctx, &eta, &f), "Pi eta must hold under fqii");
}

#[test]
fn projection_beta_strict_in_hiit_strict_weak_in_hiit_weak() {
    for (profile, expect) in [(Profile::HiitStrict, true), (Profile::HiitWeak, false)] {
        let (ctx, a, b) = hiit_ctx(profile);
        // Sg (x : A) A, pair (a , b)
        let sort = tms::var(&ctx, 2).unwrap();
        let ctx_b = ctx.push_ty("_", Rc::new(Ty::El(sort.clone())));
        let snd_sort = tms::var(&ctx_b, 3).unwrap();
        let sg = tms::sg(&ctx, sort, snd_sort).unwrap();
        let pair = tms::pair(&ctx, sg, a.clone(), b.clone()).unwrap();
        let p1 = tms::proj1(&ctx, pair).unwrap();
        assert_eq!(
            nbe::conv(&ctx, &p1, &a),
            expect,
            "projection beta under {profile:?}"
        );
    }
}

#[test]
fn j_on_large_identity_reduces_at_refl() {
    // weak profile: J (y q. El A) a refl  ==  a
    let (ctx, a, _) = hiit_ctx(Profile::HiitWeak);
    let sort = tms::var(&ctx, 2).unwrap();
    let el_a = Rc::new(Ty::El(sort.clone()));
    // motive over Gamma, y : El A, q : ID a y — constantly El A
    let motive = {
        let s_up = sigforge::tos::subst::shift_tm(&sort, 2, 0);
        Rc::new(Ty::El(s_up))
    };
    let refl = tms::refl(&ctx, Rc::new(Ty::IdWeak(el_a.clone(), a.clone(), a.clone()))).unwrap();
    let j = tms::j_weak(&ctx, motive, a.clone(), refl).unwrap();
    let nf = nbe::normalize(&ctx, &j);
    assert!(
        tm_alpha_eq(&nf, &a),
        "strict J beta for the large identity"
    );
}

#[test]
fn j_on_small_identity_stays_neutral_at_refl() {
    // weak profile: J (y q. El A) a refl on the small identity must NOT reduce
    let (ctx, a, _) = hiit_ctx(Profile::HiitWeak);
    let id_aa = tms::id_small(&ctx, a.clone(), a.clone()).unwrap();
    let refl = tms::refl(&ctx, Rc::new(Ty::El(id_aa))).unwrap();
    let sort = tms::var(&ctx, 2).unwrap();
    let motive = {
        let s_up = sigforge::tos::subst::shift_tm(&sort, 2, 0);
        Rc::new(Ty::El(s_up))
    };
    let j = tms::j_small(&ctx, motive, a.clone(), refl).unwrap();
    let nf = nbe::normalize(&ctx, &j);
    assert!(
        matches!(nf.node, TmNode::JSmall(_, _, _)),
        "small J must stay neutral: {nf:?}"
    );
    assert!(!nbe::conv(&ctx, &j, &a));
}

#[test]
fn normalization_is_idempotent_on_random_terms() {
    let mut r = rng(21);
    for _ in 0..200 {
        let ctx = gen_simple_ctx(&mut r, 4);
        let t = gen_simple_tm(&mut r, &ctx, 4);
        let n1 = nbe::normalize(&ctx, &t);
        let n2 = nbe::normalize(&ctx, &n1);
        assert!(tm_alpha_eq(&n1, &n2));
    }
    let mut done = 0;
    while done < 100 {
        let ctx = gen_fqii_ctx(&mut r, 5);
        let sorts = sort_vars(&ctx);
        let target = tms::var(&ctx, sorts[0]).unwrap();
        let Some(t) = gen_fqii_tm(&mut r, &ctx, &target, 3) else {
            continue;
        };
        let n1 = nbe::normalize(&ctx, &t);
        let n2 = nbe::normalize(&ctx, &n1);
        assert!(tm_alpha_eq(&n1, &n2));
        done += 1;
    }
}

#[test]
fn conv_is_equivalence_and_congruence_on_samples() {
    let mut r = rng(22);
    let mut done = 0;
    while done < 100 {
        let ctx = gen_fqii_ctx(&mut r, 5);
        let sorts = sort_vars(&ctx);
        let target = tms::var(&ctx, sorts[0]).unwrap();
        let (Some(t), Some(u)) = (
            gen_fqii_tm(&mut r, &ctx, &target, 3),
            gen_fqii_tm(&mut r, &ctx, &target, 3),
        ) else {
            continue;
        };
        // reflexivity and symmetry
        assert!(nbe::conv(&ctx, &t, &t));
        assert_eq!(nbe::conv(&ctx, &t, &u), nbe::conv(&ctx, &u, &t));
        // congruence under substitution: x := t vs x := u in a var body
        if nbe::conv(&ctx, &t, &u) {
            let el = Rc::new(Ty::El(target.clone()));
            let ctx2 = ctx.push_ty("x", el);
            let body = tms::var(&ctx2, 0).unwrap();
            let bt = sigforge::tos::subst::subst_tm(&body, &Sub::single(&ctx, t.clone()));
            let bu = sigforge::tos::subst::subst_tm(&body, &Sub::single(&ctx, u.clone()));
            assert!(nbe::conv(&ctx, &bt, &bu));
        }
        done += 1;
    }
}

#[test]
fn normalization_terminates_on_corpus_within_fuel() {
    let dir = format!("{}/../../corpus", env!("CARGO_MANIFEST_DIR"));
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) != Some("sig") {
            continue;
        }
        let src = std::fs::read_to_string(&path).unwrap();
        let Ok(sig) = surface::parse_file(&src) else {
            continue;
        };
        let Ok(ctx) = elab::elaborate(&sig) else {
            continue; // the deliberately-rejected files
        };
        nbe::with_fuel(50_000_000, || {
            let mut prefix = Ctx::new(ctx.profile, ctx.externs.clone());
            for e in ctx.entries() {
                match &e.binder {
                    Binder::Ty(t) => {
                        let norm = nbe::normalize_ty(&prefix, t);
                        let norm2 = nbe::normalize_ty(&prefix, &norm);
                        assert!(sigforge::tos::ty_alpha_eq(&norm, &norm2));
                        prefix = prefix.push_ty(e.name.clone(), t.clone());
                    }
                    Binder::Ext(x) => prefix = prefix.push_ext(e.name.clone(), *x),
                }
            }
        });
    }
}

/// The builder API refuses profile-illegal nodes, so gating is structural.
#[test]
fn builders_assert_profile_gating() {
    use sigforge::tos::syntax::ty as tyf;
    let strict = {
        let mut c = Ctx::new(Profile::HiitStrict, Rc::new(ExternTable::default()));
        c = c.push_ty("A", Rc::new(Ty::U));
        let s = tms::var(&c, 0).unwrap();
        c.push_ty("a", Rc::new(Ty::El(s)))
    };
    let a = tms::var(&strict, 0).unwrap();
    let id_aa = tms::id_small(&strict, a.clone(), a.clone()).unwrap();
    let refl = tms::refl(&strict, Rc::new(Ty::El(id_aa))).unwrap();
    let motive = {
        let s = tms::var(&strict, 1).unwrap();
        Rc::new(Ty::El(sigforge::tos::subst::shift_tm(&s, 2, 0)))
    };
    assert!(tms::j_small(&strict, motive.clone(), a.clone(), refl.clone()).is_err());
    assert!(tms::j_weak(&strict, motive, a.clone(), refl).is_err());
    assert!(tyf::id_weak(&strict, a.clone(), a.clone()).is_err());
    assert!(tyf::id_large(&strict, a.clone(), a).is_err());

    let fqii = Ctx::new(Profile::Fqii, Rc::new(ExternTable::default()));
    assert!(tms::top(&fqii).is_err());
    assert!(tms::tt(&fqii).is_err());
    assert!(tyf::siota(&fqii).is_err());

    let simple = Ctx::new(Profile::Simple, Rc::new(ExternTable::default()));
    assert!(tyf::u(&simple).is_err());
}

/// The worked single-substitution example: substituting the zero variable
/// of `El q` by the unit former yields `El Top`.
#[test]
fn single_substitution_of_the_zero_variable() {
    use sigforge::tos::{subst, Sub};
    let mut ctx = Ctx::new(Profile::HiitStrict, Rc::new(ExternTable::default()));
    ctx = ctx.push_ty("a", Rc::new(Ty::U));
    let q = tms::var(&ctx, 0).unwrap();
    let el_q = Rc::new(Ty::El(q));
    let base = Ctx::new(Profile::HiitStrict, Rc::new(ExternTable::default()));
    let top = tms::top(&base).unwrap();
    let substituted = subst::subst_ty(&el_q, &Sub::single(&base, top.clone()));
    assert!(sigforge::tos::ty_alpha_eq(
        &substituted,
        &Rc::new(Ty::El(top))
    ));
}
