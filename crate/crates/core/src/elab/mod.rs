//! Scope resolution and bidirectional type checking: surface trees become
//! well-typed core contexts. Entry annotations are checked to be types;
//! `El` arguments and product domains infer terms of `U`. Per-profile
//! former availability is enforced here (the builder API asserts it again).

use std::rc::Rc;

use crate::diag::{Code, Diagnostic, Span};
use crate::surface::{ExternKindSurf, RawExpr, RawNode, SigFile};
use crate::tos::{
    nbe, pretty, subst, syntax::tms, syntax::ty as tyf, Binder, BuildError, Ctx, ExtArg,
    ExternDecl, ExternKind, ExternTable, Profile, RcTm, RcTy, Sub, Tm, TmNode, Ty,
};

type Elab<T> = Result<T, Diagnostic>;

pub fn elaborate(sig: &SigFile) -> Elab<Ctx> {
    let externs = elaborate_externs(sig)?;
    let mut ctx = Ctx::new(sig.profile, Rc::new(externs));
    for entry in &sig.entries {
        let ty = check_is_ty(&ctx, &entry.ty)?;
        ctx = ctx.push_ty(entry.name.clone(), ty);
    }
    Ok(ctx)
}

fn elaborate_externs(sig: &SigFile) -> Elab<ExternTable> {
    let mut table = ExternTable::default();
    for decl in &sig.externs {
        let kind = match &decl.kind {
            ExternKindSurf::Type => ExternKind::Type,
            ExternKindSurf::Term { params, ret } => {
                let mut ids = Vec::new();
                for name in params.iter().chain(std::iter::once(ret)) {
                    match table.lookup(name) {
                        Some(id) if matches!(table.kind(id), ExternKind::Type) => ids.push(id),
                        Some(_) => {
                            return Err(Diagnostic::new(
                                Code::EExtern,
                                format!("`{name}` is an extern constant, not an extern type"),
                            )
                            .with_span(decl.span)
                            .with_profile(sig.profile))
                        }
                        None => {
                            return Err(Diagnostic::new(
                                Code::EScope,
                                format!("unknown extern type `{name}`"),
                            )
                            .with_span(decl.span)
                            .with_profile(sig.profile))
                        }
                    }
                }
                let ret = ids.pop().unwrap();
                ExternKind::Term { params: ids, ret }
            }
        };
        table.decls.push(ExternDecl {
            name: decl.name.clone(),
            kind,
        });
    }
    Ok(table)
}

fn scope_lookup(ctx: &Ctx, name: &str) -> Option<usize> {
    if name == "_" {
        return None;
    }
    ctx.entries()
        .iter()
        .rev()
        .position(|e| e.name == name)
}

fn err(code: Code, msg: impl Into<String>, span: Span, ctx: &Ctx) -> Diagnostic {
    Diagnostic::new(code, msg)
        .with_span(span)
        .with_profile(ctx.profile)
}

fn build_err(e: BuildError, span: Span, ctx: &Ctx) -> Diagnostic {
    err(Code::EType, e.0, span, ctx)
}

/// Entry annotations and binder codomains: elaborate as a type.
pub fn check_is_ty(ctx: &Ctx, raw: &RawExpr) -> Elab<RcTy> {
    let p = ctx.profile;
    match &raw.node {
        RawNode::Iota => {
            tyf::siota(ctx).map_err(|e| err(Code::EProfile, e.0, raw.span, ctx))
        }
        RawNode::U => tyf::u(ctx).map_err(|e| err(Code::EProfile, e.0, raw.span, ctx)),
        RawNode::El(t) => {
            if p == Profile::Simple {
                return Err(err(Code::EProfile, "El is not available in the simple profile", raw.span, ctx));
            }
            let tm = check_tm(ctx, t, &Rc::new(Ty::U))?;
            tyf::el(ctx, tm).map_err(|e| build_err(e, raw.span, ctx))
        }
        RawNode::PiInt { binder, dom, cod } => {
            if p == Profile::Simple {
                if !matches!(dom.node, RawNode::Iota) {
                    return Err(err(
                        Code::EProfile,
                        "simple-profile functions are first-order: the domain must be iota",
                        dom.span,
                        ctx,
                    ));
                }
                if binder != "_" {
                    return Err(err(
                        Code::EProfile,
                        "simple-profile functions do not bind names",
                        raw.span,
                        ctx,
                    ));
                }
                let cod_ty = check_is_ty(ctx, cod)?;
                return tyf::sarrow(ctx, cod_ty).map_err(|e| err(Code::EProfile, e.0, raw.span, ctx));
            }
            let dom_tm = check_tm(ctx, dom, &Rc::new(Ty::U))?;
            let ctx2 = ctx.push_ty(binder.clone(), Rc::new(Ty::El(dom_tm.clone())));
            let cod_ty = check_is_ty(&ctx2, cod)?;
            tyf::pi(ctx, dom_tm, cod_ty).map_err(|e| build_err(e, raw.span, ctx))
        }
        RawNode::PiExt { binder, dom, cod } => {
            if p == Profile::Simple {
                return Err(err(
                    Code::EProfile,
                    "external products are not available in the simple profile",
                    raw.span,
                    ctx,
                ));
            }
            let ext = extern_type_of(ctx, dom)?;
            let ctx2 = ctx.push_ext(binder.clone(), ext);
            let cod_ty = check_is_ty(&ctx2, cod)?;
            tyf::pi_ext(ctx, ext, cod_ty).map_err(|e| build_err(e, raw.span, ctx))
        }
        RawNode::PiSmallExt { .. } => Err(err(
            Code::EType,
            "a small external product is a term of U; wrap it in El to use it as a type",
            raw.span,
            ctx,
        )),
        RawNode::Id(a, b) => match p {
            Profile::Fqii => {
                let (ta, tb) = infer_pair_same_type(ctx, a, b, raw.span)?;
                tyf::id_large(ctx, ta, tb).map_err(|e| build_err(e, raw.span, ctx))
            }
            Profile::Simple => Err(err(
                Code::EProfile,
                "identity types are not available in the simple profile",
                raw.span,
                ctx,
            )),
            Profile::HiitStrict | Profile::HiitWeak => Err(err(
                Code::EProfile,
                "in the hiit profiles Id lives in U; write El (Id t u) (the large identity is fqii-only)",
                raw.span,
                ctx,
            )),
        },
        RawNode::IdCap(a, b) => match p {
            Profile::HiitWeak => {
                let (ta, tb) = infer_pair_same_type(ctx, a, b, raw.span)?;
                tyf::id_weak(ctx, ta, tb).map_err(|e| build_err(e, raw.span, ctx))
            }
            _ => Err(err(
                Code::EProfile,
                "ID is available in the hiit-weak profile only",
                raw.span,
                ctx,
            )),
        },
        RawNode::Reflect => Err(err(
            Code::EProfile,
            "equality reflection is not part of any profile",
            raw.span,
            ctx,
        )),
        node => {
            if let Some(msg) = former_outside_profile(node, p) {
                return Err(err(Code::EProfile, msg, raw.span, ctx));
            }
            Err(err(
                Code::EType,
                "expected a type here; a term of U must be wrapped in El",
                raw.span,
                ctx,
            ))
        }
    }
}

/// A term former that the current profile excludes altogether, reported
/// as a profile error even when it additionally sits in a type position.
fn former_outside_profile(node: &RawNode, p: Profile) -> Option<&'static str> {
    match node {
        RawNode::J { .. } if p != Profile::HiitWeak => {
            Some("J is available in the hiit-weak profile only")
        }
        RawNode::Top | RawNode::Tt if !p.is_hiit() => {
            Some("the unit type is available in the hiit profiles only")
        }
        RawNode::Sg { .. } | RawNode::Pair(_, _) | RawNode::Proj1(_) | RawNode::Proj2(_)
            if !p.is_hiit() =>
        {
            Some("Sg and its formers are available in the hiit profiles only")
        }
        _ => None,
    }
}

fn infer_pair_same_type(ctx: &Ctx, a: &RawExpr, b: &RawExpr, span: Span) -> Elab<(RcTm, RcTm)> {
    let ta = infer_tm(ctx, a)?;
    let tb = infer_tm(ctx, b)?;
    if !nbe::conv_ty(ctx, &ta.ty, &tb.ty) {
        return Err(err(
            Code::EType,
            "identity endpoints have different types",
            span,
            ctx,
        )
        .with_types(pretty::print_ty(ctx, &ta.ty), pretty::print_ty(ctx, &tb.ty)));
    }
    Ok((ta, tb))
}

fn extern_type_of(ctx: &Ctx, dom: &RawExpr) -> Elab<usize> {
    match &dom.node {
        RawNode::Var(name) => {
            if scope_lookup(ctx, name).is_some() {
                return Err(err(
                    Code::EExtern,
                    format!("`{name}` is bound in the signature; external product domains must be extern types"),
                    dom.span,
                    ctx,
                ));
            }
            match ctx.externs.lookup(name) {
                Some(id) if matches!(ctx.externs.kind(id), ExternKind::Type) => Ok(id),
                Some(_) => Err(err(
                    Code::EExtern,
                    format!("extern `{name}` is a constant, not a type"),
                    dom.span,
                    ctx,
                )),
                None => Err(err(Code::EScope, format!("unknown name `{name}`"), dom.span, ctx)),
            }
        }
        _ => Err(err(
            Code::EExtern,
            "external product domains must be extern type names",
            dom.span,
            ctx,
        )),
    }
}

/// Bidirectional checking of a term against an expected type.
pub fn check_tm(ctx: &Ctx, raw: &RawExpr, expected: &RcTy) -> Elab<RcTm> {
    match &raw.node {
        RawNode::Refl => {
            let norm = nbe::normalize_ty(ctx, expected);
            tms::refl(ctx, norm).map_err(|e| {
                err(Code::EType, e.0, raw.span, ctx)
                    .with_types(pretty::print_ty(ctx, expected), "refl".to_string())
            })
        }
        RawNode::Pair(a, b) => {
            let norm = nbe::normalize_ty(ctx, expected);
            if let Ty::El(hd) = &*norm {
                if let TmNode::Sg(sa, sb) = &hd.node {
                    let fst = check_tm(ctx, a, &Rc::new(Ty::El(sa.clone())))?;
                    let snd_ty =
                        Rc::new(Ty::El(subst::subst_tm(sb, &Sub::single(ctx, fst.clone()))));
                    let snd = check_tm(ctx, b, &snd_ty)?;
                    return tms::pair(ctx, hd.clone(), fst, snd)
                        .map_err(|e| build_err(e, raw.span, ctx));
                }
            }
            let t = infer_tm(ctx, raw)?;
            expect_ty(ctx, &t, expected, raw.span)
        }
        _ => {
            let t = infer_tm(ctx, raw)?;
            expect_ty(ctx, &t, expected, raw.span)
        }
    }
}

fn expect_ty(ctx: &Ctx, t: &RcTm, expected: &RcTy, span: Span) -> Elab<RcTm> {
    if nbe::conv_ty(ctx, &t.ty, expected) {
        Ok(t.clone())
    } else {
        Err(err(Code::EType, "type mismatch", span, ctx).with_types(
            pretty::print_ty(ctx, &nbe::normalize_ty(ctx, expected)),
            pretty::print_ty(ctx, &nbe::normalize_ty(ctx, &t.ty)),
        ))
    }
}

/// Type inference for terms.
pub fn infer_tm(ctx: &Ctx, raw: &RawExpr) -> Elab<RcTm> {
    let p = ctx.profile;
    match &raw.node {
        RawNode::Var(name) => match scope_lookup(ctx, name) {
            Some(ix) => match ctx.entry_by_index(ix).map(|e| &e.binder) {
                Some(Binder::Ty(_)) => tms::var(ctx, ix).map_err(|e| build_err(e, raw.span, ctx)),
                Some(Binder::Ext(_)) => Err(err(
                    Code::EExtern,
                    format!("`{name}` is an external variable; it can only index external products"),
                    raw.span,
                    ctx,
                )),
                None => unreachable!(),
            },
            None => match ctx.externs.lookup(name) {
                Some(_) => Err(err(
                    Code::EExtern,
                    format!("extern `{name}` cannot be used where a term of the theory is required"),
                    raw.span,
                    ctx,
                )),
                None => Err(err(Code::EScope, format!("unknown name `{name}`"), raw.span, ctx)),
            },
        },
        RawNode::App(f, a) => {
            let vf = infer_normalized(ctx, f)?;
            match &*vf.ty.clone() {
                Ty::Pi(dom, _) => {
                    let va = check_tm(ctx, a, &Rc::new(Ty::El(dom.clone())))?;
                    tms::app(ctx, vf, va).map_err(|e| build_err(e, raw.span, ctx))
                }
                Ty::SArrow(_) => {
                    let va = check_tm(ctx, a, &Rc::new(Ty::SIota))?;
                    tms::app(ctx, vf, va).map_err(|e| build_err(e, raw.span, ctx))
                }
                Ty::PiExt(_, _) => {
                    let ea = ext_arg_of_raw(ctx, a)?;
                    tms::app_ext(ctx, vf, ea).map_err(|e| err(Code::EExtern, e.0, a.span, ctx))
                }
                Ty::El(hd) if matches!(hd.node, TmNode::PiSmallExt(_, _)) => {
                    let ea = ext_arg_of_raw(ctx, a)?;
                    tms::app_ext(ctx, vf, ea).map_err(|e| err(Code::EExtern, e.0, a.span, ctx))
                }
                other => Err(err(
                    Code::EType,
                    "application head is not of a product type",
                    f.span,
                    ctx,
                )
                .with_types("a product type", pretty::print_ty(ctx, other))),
            }
        }
        RawNode::Top => tms::top(ctx).map_err(|e| err(Code::EProfile, e.0, raw.span, ctx)),
        RawNode::Tt => tms::tt(ctx).map_err(|e| err(Code::EProfile, e.0, raw.span, ctx)),
        RawNode::Sg { binder, dom, cod } => {
            if !p.is_hiit() {
                return Err(err(
                    Code::EProfile,
                    "Sg is available in the hiit profiles only",
                    raw.span,
                    ctx,
                ));
            }
            let dom_tm = check_tm(ctx, dom, &Rc::new(Ty::U))?;
            let ctx2 = ctx.push_ty(binder.clone(), Rc::new(Ty::El(dom_tm.clone())));
            let cod_tm = check_tm(&ctx2, cod, &Rc::new(Ty::U))?;
            tms::sg(ctx, dom_tm, cod_tm).map_err(|e| build_err(e, raw.span, ctx))
        }
        RawNode::Proj1(t) => {
            if !p.is_hiit() {
                return Err(err(Code::EProfile, "proj1 is available in the hiit profiles only", raw.span, ctx));
            }
            let tm_ = infer_normalized(ctx, t)?;
            tms::proj1(ctx, tm_).map_err(|e| build_err(e, raw.span, ctx))
        }
        RawNode::Proj2(t) => {
            if !p.is_hiit() {
                return Err(err(Code::EProfile, "proj2 is available in the hiit profiles only", raw.span, ctx));
            }
            let tm_ = infer_normalized(ctx, t)?;
            tms::proj2(ctx, tm_).map_err(|e| build_err(e, raw.span, ctx))
        }
        RawNode::Id(a, b) => match p {
            Profile::HiitStrict | Profile::HiitWeak => {
                let (ta, tb) = infer_pair_same_type(ctx, a, b, raw.span)?;
                tms::id_small(ctx, ta, tb).map_err(|e| build_err(e, raw.span, ctx))
            }
            Profile::Fqii => Err(err(
                Code::EProfile,
                "under fqii, Id is a type former and cannot appear inside U",
                raw.span,
                ctx,
            )),
            Profile::Simple => Err(err(
                Code::EProfile,
                "identity types are not available in the simple profile",
                raw.span,
                ctx,
            )),
        },
        RawNode::IdCap(_, _) => Err(err(
            if p == Profile::HiitWeak {
                Code::EType
            } else {
                Code::EProfile
            },
            if p == Profile::HiitWeak {
                "ID is a type, not a term of U"
            } else {
                "ID is available in the hiit-weak profile only"
            },
            raw.span,
            ctx,
        )),
        RawNode::PiSmallExt { binder, dom, cod } => {
            if !p.is_hiit() {
                return Err(err(
                    Code::EProfile,
                    "small external products are available in the hiit profiles only",
                    raw.span,
                    ctx,
                ));
            }
            let ext = extern_type_of(ctx, dom)?;
            let ctx2 = ctx.push_ext(binder.clone(), ext);
            let fam = check_tm(&ctx2, cod, &Rc::new(Ty::U))?;
            tms::pi_small_ext(ctx, ext, fam).map_err(|e| build_err(e, raw.span, ctx))
        }
        RawNode::J {
            binder_tm,
            binder_path,
            motive,
            pr_case,
            path,
        } => {
            if p != Profile::HiitWeak {
                return Err(err(
                    Code::EProfile,
                    "J is available in the hiit-weak profile only",
                    raw.span,
                    ctx,
                ));
            }
            let path_tm = infer_normalized(ctx, path)?;
            match &*path_tm.ty.clone() {
                Ty::El(hd) => match &hd.node {
                    TmNode::IdSmall(a, t, _) => {
                        let el_a = Rc::new(Ty::El(a.clone()));
                        let ctx1 = ctx.push_ty(binder_tm.clone(), el_a);
                        let a_up = subst::shift_tm(a, 1, 0);
                        let t_up = subst::shift_tm(t, 1, 0);
                        let q0 = Rc::new(Tm {
                            node: TmNode::Var(0),
                            ty: Rc::new(Ty::El(a_up.clone())),
                        });
                        let idt = Rc::new(Tm {
                            node: TmNode::IdSmall(a_up, t_up, q0),
                            ty: Rc::new(Ty::U),
                        });
                        let ctx2 = ctx1.push_ty(binder_path.clone(), Rc::new(Ty::El(idt)));
                        let motive_ty = check_is_ty(&ctx2, motive)?;
                        let refl_ty = Rc::new(Ty::El(Rc::new(Tm {
                            node: TmNode::IdSmall(a.clone(), t.clone(), t.clone()),
                            ty: Rc::new(Ty::U),
                        })));
                        let refl_tm = Rc::new(Tm {
                            node: TmNode::Refl,
                            ty: refl_ty,
                        });
                        let base =
                            subst::subst_ty(&motive_ty, &Sub::double(ctx, t.clone(), refl_tm));
                        let pr = check_tm(ctx, pr_case, &base)?;
                        tms::j_small(ctx, motive_ty, pr, path_tm)
                            .map_err(|e| build_err(e, raw.span, ctx))
                    }
                    _ => Err(err(
                        Code::EType,
                        "J eliminates identity proofs; the scrutinee is not one",
                        path.span,
                        ctx,
                    )),
                },
                Ty::IdWeak(a, t, _) => {
                    let ctx1 = ctx.push_ty(binder_tm.clone(), a.clone());
                    let a_up = subst::shift_ty(a, 1, 0);
                    let t_up = subst::shift_tm(t, 1, 0);
                    let q0 = Rc::new(Tm {
                        node: TmNode::Var(0),
                        ty: a_up.clone(),
                    });
                    let idt = Rc::new(Ty::IdWeak(a_up, t_up, q0));
                    let ctx2 = ctx1.push_ty(binder_path.clone(), idt);
                    let motive_ty = check_is_ty(&ctx2, motive)?;
                    let refl_tm = Rc::new(Tm {
                        node: TmNode::Refl,
                        ty: Rc::new(Ty::IdWeak(a.clone(), t.clone(), t.clone())),
                    });
                    let base = subst::subst_ty(&motive_ty, &Sub::double(ctx, t.clone(), refl_tm));
                    let pr = check_tm(ctx, pr_case, &base)?;
                    tms::j_weak(ctx, motive_ty, pr, path_tm)
                        .map_err(|e| build_err(e, raw.span, ctx))
                }
                _ => Err(err(
                    Code::EType,
                    "J eliminates identity proofs; the scrutinee is not one",
                    path.span,
                    ctx,
                )),
            }
        }
        RawNode::Refl => Err(err(
            Code::EType,
            "refl needs an expected identity type; annotate the position",
            raw.span,
            ctx,
        )),
        RawNode::Pair(_, _) => Err(err(
            Code::EType,
            "pairs only check against an expected Sg type",
            raw.span,
            ctx,
        )),
        RawNode::Iota | RawNode::U | RawNode::El(_) | RawNode::PiInt { .. }
        | RawNode::PiExt { .. } => Err(err(
            Code::EType,
            "expected a term, found a type former",
            raw.span,
            ctx,
        )),
        RawNode::Reflect => Err(err(
            Code::EProfile,
            "equality reflection is not part of any profile",
            raw.span,
            ctx,
        )),
    }
}

/// Infer, then re-annotate with the normalized type so that structural
/// matches on the type (projections, applications, J scrutinees) see head
/// forms.
fn infer_normalized(ctx: &Ctx, raw: &RawExpr) -> Elab<RcTm> {
    let t = infer_tm(ctx, raw)?;
    let norm = nbe::normalize_ty(ctx, &t.ty);
    Ok(Rc::new(Tm {
        node: t.node.clone(),
        ty: norm,
    }))
}

fn ext_arg_of_raw(ctx: &Ctx, raw: &RawExpr) -> Elab<ExtArg> {
    match &raw.node {
        RawNode::Var(name) => {
            if let Some(ix) = scope_lookup(ctx, name) {
                return match ctx.entry_by_index(ix).map(|e| &e.binder) {
                    Some(Binder::Ext(_)) => Ok(ExtArg::Var(ix)),
                    _ => Err(err(
                        Code::EExtern,
                        format!("`{name}` is internal to the signature; external arguments must be external"),
                        raw.span,
                        ctx,
                    )),
                };
            }
            match ctx.externs.lookup(name) {
                Some(id) => Ok(ExtArg::Cst(id, Vec::new())),
                None => Err(err(Code::EScope, format!("unknown name `{name}`"), raw.span, ctx)),
            }
        }
        RawNode::App(f, a) => {
            let head = ext_arg_of_raw(ctx, f)?;
            let arg = ext_arg_of_raw(ctx, a)?;
            match head {
                ExtArg::Cst(id, mut args) => {
                    args.push(arg);
                    Ok(ExtArg::Cst(id, args))
                }
                ExtArg::Var(_) => Err(err(
                    Code::EExtern,
                    "external variables cannot be applied",
                    raw.span,
                    ctx,
                )),
            }
        }
        _ => Err(err(
            Code::EExtern,
            "external arguments are built from extern names and external variables only",
            raw.span,
            ctx,
        )),
    }
}
