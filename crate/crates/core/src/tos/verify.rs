//! Whole-context well-formedness verification, written as a direct
//! recursive derivation of the typing rules. This is a separate code path
//! from the elaborator and the builder API: it re-derives the type of
//! every node and compares it with the cached annotation, so a bug in
//! elaboration that smuggles an ill-typed node through is caught here.

use std::rc::Rc;

use super::nbe;
use super::subst::{self, Sub};
use super::syntax::*;
use super::Profile;

pub fn verify_ctx(ctx: &Ctx) -> Result<(), String> {
    let mut prefix = Ctx::new(ctx.profile, ctx.externs.clone());
    for entry in ctx.entries() {
        match &entry.binder {
            Binder::Ty(ty) => {
                verify_ty(&prefix, ty)?;
                prefix = prefix.push_ty(entry.name.clone(), ty.clone());
            }
            Binder::Ext(e) => {
                if !matches!(ctx.externs.kind(*e), ExternKind::Type) {
                    return Err(format!(
                        "external binder {} is not an extern type",
                        entry.name
                    ));
                }
                prefix = prefix.push_ext(entry.name.clone(), *e);
            }
        }
    }
    Ok(())
}

pub fn verify_ty(ctx: &Ctx, ty: &RcTy) -> Result<(), String> {
    let p = ctx.profile;
    match &**ty {
        Ty::SIota => allowed(p == Profile::Simple, "iota outside the simple profile"),
        Ty::SArrow(cod) => {
            allowed(p == Profile::Simple, "iota -> _ outside the simple profile")?;
            verify_ty(ctx, cod)
        }
        Ty::U => allowed(p != Profile::Simple, "U in the simple profile"),
        Ty::El(a) => {
            allowed(p != Profile::Simple, "El in the simple profile")?;
            let got = verify_tm(ctx, a)?;
            expect_conv_ty(ctx, &got, &Rc::new(Ty::U), "El argument")
        }
        Ty::Pi(a, cod) => {
            allowed(p != Profile::Simple, "internal product in the simple profile")?;
            let got = verify_tm(ctx, a)?;
            expect_conv_ty(ctx, &got, &Rc::new(Ty::U), "internal product domain")?;
            let ctx2 = ctx.push_ty("_", Rc::new(Ty::El(a.clone())));
            verify_ty(&ctx2, cod)
        }
        Ty::PiExt(e, cod) => {
            allowed(p != Profile::Simple, "external product in the simple profile")?;
            allowed(
                matches!(ctx.externs.kind(*e), ExternKind::Type),
                "external product over a non-type extern",
            )?;
            let ctx2 = ctx.push_ext("_", *e);
            verify_ty(&ctx2, cod)
        }
        Ty::IdLarge(a, t, u) => {
            allowed(p == Profile::Fqii, "large identity outside fqii")?;
            verify_ty(ctx, a)?;
            let t_ty = verify_tm(ctx, t)?;
            let u_ty = verify_tm(ctx, u)?;
            expect_conv_ty(ctx, &t_ty, a, "identity left endpoint")?;
            expect_conv_ty(ctx, &u_ty, a, "identity right endpoint")
        }
        Ty::IdWeak(a, t, u) => {
            allowed(p == Profile::HiitWeak, "ID outside the weak hiit profile")?;
            verify_ty(ctx, a)?;
            let t_ty = verify_tm(ctx, t)?;
            let u_ty = verify_tm(ctx, u)?;
            expect_conv_ty(ctx, &t_ty, a, "ID left endpoint")?;
            expect_conv_ty(ctx, &u_ty, a, "ID right endpoint")
        }
    }
}

/// Derives the type of a term and checks it against the cached annotation.
pub fn verify_tm(ctx: &Ctx, t: &RcTm) -> Result<RcTy, String> {
    let p = ctx.profile;
    let derived: RcTy = match &t.node {
        TmNode::Var(i) => ctx.lookup_ty(*i).map_err(|e| e.to_string())?,
        TmNode::App(f, a) => {
            let f_ty = verify_tm(ctx, f)?;
            let a_ty = verify_tm(ctx, a)?;
            match &*nbe::normalize_ty(ctx, &f_ty) {
                Ty::Pi(dom, cod) => {
                    expect_conv_ty(ctx, &a_ty, &Rc::new(Ty::El(dom.clone())), "argument")?;
                    subst::subst_ty(cod, &Sub::single(ctx, a.clone()))
                }
                Ty::SArrow(cod) => {
                    expect_conv_ty(ctx, &a_ty, &Rc::new(Ty::SIota), "argument")?;
                    cod.clone()
                }
                _ => return Err("application head is not a product".into()),
            }
        }
        TmNode::Lam(body) => {
            let dom = match &*t.ty {
                Ty::Pi(dom, _) => dom.clone(),
                _ => return Err("lambda annotated with a non-product type".into()),
            };
            let ctx2 = ctx.push_ty("_", Rc::new(Ty::El(dom.clone())));
            let body_ty = verify_tm(&ctx2, body)?;
            Rc::new(Ty::Pi(dom, body_ty))
        }
        TmNode::AppExtLarge(f, e) => {
            let f_ty = verify_tm(ctx, f)?;
            verify_extarg(ctx, e)?;
            match &*f_ty {
                Ty::PiExt(_, cod) => subst::subst_ty(cod, &Sub::single_ext(ctx, e.clone())),
                _ => return Err("external application head is not an external product".into()),
            }
        }
        TmNode::LamExtLarge(body) => {
            let ext = match &*t.ty {
                Ty::PiExt(e, _) => *e,
                _ => return Err("external lambda annotated with a non-product type".into()),
            };
            let ctx2 = ctx.push_ext("_", ext);
            let body_ty = verify_tm(&ctx2, body)?;
            Rc::new(Ty::PiExt(ext, body_ty))
        }
        TmNode::AppExtSmall(f, e) => {
            let f_ty = verify_tm(ctx, f)?;
            verify_extarg(ctx, e)?;
            match &*nbe::normalize_ty(ctx, &f_ty) {
                Ty::El(hd) => match &hd.node {
                    TmNode::PiSmallExt(_, fam) => Rc::new(Ty::El(subst::subst_tm(
                        fam,
                        &Sub::single_ext(ctx, e.clone()),
                    ))),
                    _ => return Err("small external application head shape".into()),
                },
                _ => return Err("small external application head shape".into()),
            }
        }
        TmNode::LamExtSmall(body) => {
            allowed(p.is_hiit(), "small external lambda outside hiit")?;
            let ext = match &*t.ty {
                Ty::El(hd) => match &hd.node {
                    TmNode::PiSmallExt(e, _) => *e,
                    _ => return Err("small external lambda annotation shape".into()),
                },
                _ => return Err("small external lambda annotation shape".into()),
            };
            let ctx2 = ctx.push_ext("_", ext);
            let body_ty = verify_tm(&ctx2, body)?;
            match &*body_ty {
                Ty::El(fam) => {
                    let pse = Rc::new(Tm {
                        node: TmNode::PiSmallExt(ext, fam.clone()),
                        ty: Rc::new(Ty::U),
                    });
                    Rc::new(Ty::El(pse))
                }
                _ => return Err("small external lambda body must be El-typed".into()),
            }
        }
        TmNode::Top => {
            allowed(p.is_hiit(), "Top outside hiit")?;
            Rc::new(Ty::U)
        }
        TmNode::Tt => {
            allowed(p.is_hiit(), "tt outside hiit")?;
            let top = Rc::new(Tm {
                node: TmNode::Top,
                ty: Rc::new(Ty::U),
            });
            Rc::new(Ty::El(top))
        }
        TmNode::Sg(a, b) => {
            allowed(p.is_hiit(), "Sg outside hiit")?;
            let a_ty = verify_tm(ctx, a)?;
            expect_conv_ty(ctx, &a_ty, &Rc::new(Ty::U), "Sg first component")?;
            let ctx2 = ctx.push_ty("_", Rc::new(Ty::El(a.clone())));
            let b_ty = verify_tm(&ctx2, b)?;
            expect_conv_ty(&ctx2, &b_ty, &Rc::new(Ty::U), "Sg second component")?;
            Rc::new(Ty::U)
        }
        TmNode::Pair(x, y) => {
            allowed(p.is_hiit(), "pair outside hiit")?;
            let (a, b) = match &*t.ty {
                Ty::El(hd) => match &hd.node {
                    TmNode::Sg(a, b) => (a.clone(), b.clone()),
                    _ => return Err("pair annotated with a non-sigma type".into()),
                },
                _ => return Err("pair annotated with a non-sigma type".into()),
            };
            let x_ty = verify_tm(ctx, x)?;
            expect_conv_ty(ctx, &x_ty, &Rc::new(Ty::El(a)), "pair first component")?;
            let y_ty = verify_tm(ctx, y)?;
            let want = Rc::new(Ty::El(subst::subst_tm(&b, &Sub::single(ctx, x.clone()))));
            expect_conv_ty(ctx, &y_ty, &want, "pair second component")?;
            t.ty.clone()
        }
        TmNode::Proj1(x) => {
            allowed(p.is_hiit(), "proj1 outside hiit")?;
            let x_ty = verify_tm(ctx, x)?;
            match &*nbe::normalize_ty(ctx, &x_ty) {
                Ty::El(hd) => match &hd.node {
                    TmNode::Sg(a, _) => Rc::new(Ty::El(a.clone())),
                    _ => return Err("proj1 head is not of a sigma type".into()),
                },
                _ => return Err("proj1 head is not of a sigma type".into()),
            }
        }
        TmNode::Proj2(x) => {
            allowed(p.is_hiit(), "proj2 outside hiit")?;
            let x_ty = verify_tm(ctx, x)?;
            match &*nbe::normalize_ty(ctx, &x_ty) {
                Ty::El(hd) => match &hd.node {
                    TmNode::Sg(a, b) => {
                        let fst = Rc::new(Tm {
                            node: TmNode::Proj1(x.clone()),
                            ty: Rc::new(Ty::El(a.clone())),
                        });
                        Rc::new(Ty::El(subst::subst_tm(b, &Sub::single(ctx, fst))))
                    }
                    _ => return Err("proj2 head is not of a sigma type".into()),
                },
                _ => return Err("proj2 head is not of a sigma type".into()),
            }
        }
        TmNode::IdSmall(a, x, y) => {
            allowed(p.is_hiit(), "small identity outside hiit")?;
            let a_ty = verify_tm(ctx, a)?;
            expect_conv_ty(ctx, &a_ty, &Rc::new(Ty::U), "small identity family")?;
            let x_ty = verify_tm(ctx, x)?;
            let y_ty = verify_tm(ctx, y)?;
            let el_a = Rc::new(Ty::El(a.clone()));
            expect_conv_ty(ctx, &x_ty, &el_a, "identity left endpoint")?;
            expect_conv_ty(ctx, &y_ty, &el_a, "identity right endpoint")?;
            Rc::new(Ty::U)
        }
        TmNode::PiSmallExt(e, fam) => {
            allowed(p.is_hiit(), "small external product outside hiit")?;
            allowed(
                matches!(ctx.externs.kind(*e), ExternKind::Type),
                "small external product over a non-type extern",
            )?;
            let ctx2 = ctx.push_ext("_", *e);
            let fam_ty = verify_tm(&ctx2, fam)?;
            expect_conv_ty(&ctx2, &fam_ty, &Rc::new(Ty::U), "small external family")?;
            Rc::new(Ty::U)
        }
        TmNode::Refl => {
            match &*t.ty {
                Ty::El(hd) => match &hd.node {
                    TmNode::IdSmall(_, x, y) => {
                        allowed(nbe::conv(ctx, x, y), "refl with unequal endpoints")?;
                    }
                    _ => return Err("refl annotated with a non-identity type".into()),
                },
                Ty::IdLarge(_, x, y) | Ty::IdWeak(_, x, y) => {
                    allowed(nbe::conv(ctx, x, y), "refl with unequal endpoints")?;
                }
                _ => return Err("refl annotated with a non-identity type".into()),
            }
            verify_ty(ctx, &t.ty)?;
            t.ty.clone()
        }
        TmNode::JSmall(motive, pr, path) => {
            allowed(p == Profile::HiitWeak, "J outside the weak hiit profile")?;
            let path_ty = verify_tm(ctx, path)?;
            let (a, tt_, u) = match &*nbe::normalize_ty(ctx, &path_ty) {
                Ty::El(hd) => match &hd.node {
                    TmNode::IdSmall(a, x, y) => (a.clone(), x.clone(), y.clone()),
                    _ => return Err("J path must prove a small identity".into()),
                },
                _ => return Err("J path must prove a small identity".into()),
            };
            let el_a = Rc::new(Ty::El(a.clone()));
            let ctx1 = ctx.push_ty("_", el_a.clone());
            let a_up = subst::shift_tm(&a, 1, 0);
            let t_up = subst::shift_tm(&tt_, 1, 0);
            let q0 = Rc::new(Tm {
                node: TmNode::Var(0),
                ty: Rc::new(Ty::El(a_up.clone())),
            });
            let idt = Rc::new(Tm {
                node: TmNode::IdSmall(a_up, t_up, q0),
                ty: Rc::new(Ty::U),
            });
            let ctx2 = ctx1.push_ty("_", Rc::new(Ty::El(idt)));
            verify_ty(&ctx2, motive)?;
            let refl_ty = Rc::new(Ty::El(Rc::new(Tm {
                node: TmNode::IdSmall(a.clone(), tt_.clone(), tt_.clone()),
                ty: Rc::new(Ty::U),
            })));
            let refl_tm = Rc::new(Tm {
                node: TmNode::Refl,
                ty: refl_ty,
            });
            let base = subst::subst_ty(motive, &Sub::double(ctx, tt_.clone(), refl_tm));
            let pr_ty = verify_tm(ctx, pr)?;
            expect_conv_ty(ctx, &pr_ty, &base, "J base case")?;
            subst::subst_ty(motive, &Sub::double(ctx, u, path.clone()))
        }
        TmNode::JWeak(motive, pr, path) => {
            allowed(p == Profile::HiitWeak, "J outside the weak hiit profile")?;
            let path_ty = verify_tm(ctx, path)?;
            let (a, tt_, u) = match &*path_ty {
                Ty::IdWeak(a, x, y) => (a.clone(), x.clone(), y.clone()),
                _ => return Err("J path must prove an ID type".into()),
            };
            let ctx1 = ctx.push_ty("_", a.clone());
            let a_up = subst::shift_ty(&a, 1, 0);
            let t_up = subst::shift_tm(&tt_, 1, 0);
            let q0 = Rc::new(Tm {
                node: TmNode::Var(0),
                ty: a_up.clone(),
            });
            let idt = Rc::new(Ty::IdWeak(a_up, t_up, q0));
            let ctx2 = ctx1.push_ty("_", idt);
            verify_ty(&ctx2, motive)?;
            let refl_tm = Rc::new(Tm {
                node: TmNode::Refl,
                ty: Rc::new(Ty::IdWeak(a.clone(), tt_.clone(), tt_.clone())),
            });
            let base = subst::subst_ty(motive, &Sub::double(ctx, tt_.clone(), refl_tm));
            let pr_ty = verify_tm(ctx, pr)?;
            expect_conv_ty(ctx, &pr_ty, &base, "J base case")?;
            subst::subst_ty(motive, &Sub::double(ctx, u, path.clone()))
        }
    };
    if !nbe::conv_ty(ctx, &derived, &t.ty) {
        return Err("cached type annotation disagrees with the derived type".into());
    }
    Ok(derived)
}

fn verify_extarg(ctx: &Ctx, e: &ExtArg) -> Result<(), String> {
    match e {
        ExtArg::Var(i) => ctx.lookup_ext(*i).map(|_| ()).map_err(|e| e.to_string()),
        ExtArg::Cst(id, args) => {
            match ctx.externs.kind(*id) {
                ExternKind::Type => allowed(args.is_empty(), "applied extern type")?,
                ExternKind::Term { params, .. } => allowed(
                    params.len() == args.len(),
                    "extern constant arity mismatch",
                )?,
            }
            for a in args {
                verify_extarg(ctx, a)?;
            }
            Ok(())
        }
    }
}

fn allowed(cond: bool, msg: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.to_string())
    }
}

fn expect_conv_ty(ctx: &Ctx, got: &RcTy, want: &RcTy, what: &str) -> Result<(), String> {
    if nbe::conv_ty(ctx, got, want) {
        Ok(())
    } else {
        Err(format!("{what}: type mismatch"))
    }
}
