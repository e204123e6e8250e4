//! Core syntax: contexts, types, terms, externs, and the checked builder
//! API. Terms are intrinsically typed: every node caches its type, and the
//! public constructors refuse ill-typed or profile-illegal nodes. Raw node
//! construction is crate-internal (substitution and readback use it).

use std::fmt;
use std::rc::Rc;

use super::nbe;
use super::subst::{self, Sub};
use super::Profile;

pub type RcTy = Rc<Ty>;
pub type RcTm = Rc<Tm>;
pub type ExternId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExternKind {
    /// An opaque external type (`extern A : Type`).
    Type,
    /// A first-order external constant over declared external types.
    Term { params: Vec<ExternId>, ret: ExternId },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExternDecl {
    pub name: String,
    pub kind: ExternKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExternTable {
    pub decls: Vec<ExternDecl>,
}

impl ExternTable {
    pub fn lookup(&self, name: &str) -> Option<ExternId> {
        self.decls.iter().position(|d| d.name == name)
    }

    pub fn name(&self, id: ExternId) -> &str {
        &self.decls[id].name
    }

    pub fn kind(&self, id: ExternId) -> &ExternKind {
        &self.decls[id].kind
    }
}

/// Types of the theory of signatures. Profile gating:
/// `SIota`/`SArrow` are simple-only; `U`/`El`/`Pi`/`PiExt` belong to the
/// dependent profiles; `IdLarge` is fqii-only; `IdWeak` is the weak hiit
/// profile's large identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ty {
    SIota,
    SArrow(RcTy),
    U,
    El(RcTm),
    /// Internal product: domain is a term of `U`, codomain under `El dom`.
    Pi(RcTm, RcTy),
    /// Product over an external type, codomain under an extern binder.
    PiExt(ExternId, RcTy),
    /// Extensional identity between two terms of a common type (fqii);
    /// equates terms of arbitrary type, including sort equations.
    IdLarge(RcTy, RcTm, RcTm),
    /// Large identity of the weak hiit profile; supports `J` with a strict
    /// beta rule.
    IdWeak(RcTy, RcTm, RcTm),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tm {
    pub node: TmNode,
    pub ty: RcTy,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TmNode {
    Var(usize),
    /// Pointful internal application `t u`.
    App(RcTm, RcTm),
    /// Internal abstraction; body under an `El dom` binder.
    Lam(RcTm),
    /// Application of a term of large external product type.
    AppExtLarge(RcTm, ExtArg),
    /// Body under an extern binder; type is a large external product.
    LamExtLarge(RcTm),
    /// Application of a term whose type is `El` of a small external product.
    AppExtSmall(RcTm, ExtArg),
    /// Body under an extern binder; type is `El` of a small external product.
    LamExtSmall(RcTm),
    /// The unit element of `U` (hiit profiles).
    Top,
    Tt,
    /// Sigma in `U`: first component a term of `U`, second under `El` of it.
    Sg(RcTm, RcTm),
    Pair(RcTm, RcTm),
    Proj1(RcTm),
    Proj2(RcTm),
    /// Small identity in `U` between terms of `El a` (hiit profiles).
    IdSmall(RcTm, RcTm, RcTm),
    /// Small external product in `U`; family under an extern binder.
    PiSmallExt(ExternId, RcTm),
    /// Reflexivity; the cached type says which identity it proves.
    Refl,
    /// Eliminator of the small identity (weak profile): motive over
    /// `Γ ▷ El a ▷ El (Id a t q)`, then the base case, then the path.
    /// Its beta rule is propositional only: `J m pr refl` does not reduce.
    JSmall(RcTy, RcTm, RcTm),
    /// Eliminator of the large weak identity; `J m pr refl ≡ pr` strictly.
    JWeak(RcTy, RcTm, RcTm),
}

/// External argument expressions: externally-bound variables and
/// applications of extern constants. Opaque to evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtArg {
    Var(usize),
    Cst(ExternId, Vec<ExtArg>),
}

/// What a context entry binds: a type of the theory, or an external
/// variable of a declared external type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Binder {
    Ty(RcTy),
    Ext(ExternId),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CtxEntry {
    pub name: String,
    pub binder: Binder,
}

/// A typing context / signature: an ordered telescope. Entry `i` is
/// well-formed in the prefix of length `i`; de Bruijn index 0 is the most
/// recently bound entry.
#[derive(Debug, Clone)]
pub struct Ctx {
    pub profile: Profile,
    pub externs: Rc<ExternTable>,
    entries: Vec<CtxEntry>,
}

#[derive(Debug, Clone)]
pub struct BuildError(pub String);

impl fmt::Display for BuildError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub type Build<T> = Result<T, BuildError>;

fn bail<T>(msg: impl Into<String>) -> Build<T> {
    Err(BuildError(msg.into()))
}

impl Ctx {
    pub fn new(profile: Profile, externs: Rc<ExternTable>) -> Ctx {
        Ctx {
            profile,
            externs,
            entries: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[CtxEntry] {
        &self.entries
    }

    /// Entry addressed by de Bruijn index (0 = innermost).
    pub fn entry_by_index(&self, ix: usize) -> Option<&CtxEntry> {
        let n = self.entries.len();
        if ix < n {
            Some(&self.entries[n - 1 - ix])
        } else {
            None
        }
    }

    pub fn push_ty(&self, name: impl Into<String>, ty: RcTy) -> Ctx {
        let mut c = self.clone();
        c.entries.push(CtxEntry {
            name: name.into(),
            binder: Binder::Ty(ty),
        });
        c
    }

    pub fn push_ext(&self, name: impl Into<String>, ext: ExternId) -> Ctx {
        let mut c = self.clone();
        c.entries.push(CtxEntry {
            name: name.into(),
            binder: Binder::Ext(ext),
        });
        c
    }

    /// The weakened type of the entry at de Bruijn index `ix`.
    pub fn lookup_ty(&self, ix: usize) -> Build<RcTy> {
        match self.entry_by_index(ix) {
            Some(CtxEntry {
                binder: Binder::Ty(ty),
                ..
            }) => Ok(subst::shift_ty(ty, ix + 1, 0)),
            Some(_) => bail(format!("variable {ix} is an external binder, not a term")),
            None => bail(format!("variable {ix} out of range")),
        }
    }

    /// The extern type of the external variable at index `ix`.
    pub fn lookup_ext(&self, ix: usize) -> Build<ExternId> {
        match self.entry_by_index(ix) {
            Some(CtxEntry {
                binder: Binder::Ext(e),
                ..
            }) => Ok(*e),
            Some(_) => bail(format!("variable {ix} is a term binder, not external")),
            None => bail(format!("variable {ix} out of range")),
        }
    }
}

pub(crate) fn tm(node: TmNode, ty: RcTy) -> RcTm {
    Rc::new(Tm { node, ty })
}

/// Structural equality on types ignoring nothing (types carry no spans);
/// used as alpha-equality because the syntax is de Bruijn.
pub fn ty_alpha_eq(a: &Ty, b: &Ty) -> bool {
    match (a, b) {
        (Ty::SIota, Ty::SIota) | (Ty::U, Ty::U) => true,
        (Ty::SArrow(x), Ty::SArrow(y)) => ty_alpha_eq(x, y),
        (Ty::El(x), Ty::El(y)) => tm_alpha_eq(x, y),
        (Ty::Pi(a1, b1), Ty::Pi(a2, b2)) => tm_alpha_eq(a1, a2) && ty_alpha_eq(b1, b2),
        (Ty::PiExt(e1, b1), Ty::PiExt(e2, b2)) => e1 == e2 && ty_alpha_eq(b1, b2),
        (Ty::IdLarge(a1, t1, u1), Ty::IdLarge(a2, t2, u2))
        | (Ty::IdWeak(a1, t1, u1), Ty::IdWeak(a2, t2, u2)) => {
            ty_alpha_eq(a1, a2) && tm_alpha_eq(t1, t2) && tm_alpha_eq(u1, u2)
        }
        _ => false,
    }
}

/// Alpha equality of terms: structural on nodes, ignoring cached types
/// (they are determined by the nodes in a fixed context).
pub fn tm_alpha_eq(a: &Tm, b: &Tm) -> bool {
    use TmNode::*;
    match (&a.node, &b.node) {
        (Var(i), Var(j)) => i == j,
        (App(f1, a1), App(f2, a2)) => tm_alpha_eq(f1, f2) && tm_alpha_eq(a1, a2),
        (Lam(b1), Lam(b2)) | (LamExtLarge(b1), LamExtLarge(b2)) | (LamExtSmall(b1), LamExtSmall(b2)) => {
            tm_alpha_eq(b1, b2)
        }
        (AppExtLarge(f1, x1), AppExtLarge(f2, x2)) | (AppExtSmall(f1, x1), AppExtSmall(f2, x2)) => {
            tm_alpha_eq(f1, f2) && x1 == x2
        }
        (Top, Top) | (Tt, Tt) | (Refl, Refl) => true,
        (Sg(a1, b1), Sg(a2, b2)) | (Pair(a1, b1), Pair(a2, b2)) => {
            tm_alpha_eq(a1, a2) && tm_alpha_eq(b1, b2)
        }
        (Proj1(x), Proj1(y)) | (Proj2(x), Proj2(y)) => tm_alpha_eq(x, y),
        (IdSmall(a1, t1, u1), IdSmall(a2, t2, u2)) => {
            tm_alpha_eq(a1, a2) && tm_alpha_eq(t1, t2) && tm_alpha_eq(u1, u2)
        }
        (PiSmallExt(e1, b1), PiSmallExt(e2, b2)) => e1 == e2 && tm_alpha_eq(b1, b2),
        (JSmall(m1, p1, q1), JSmall(m2, p2, q2)) | (JWeak(m1, p1, q1), JWeak(m2, p2, q2)) => {
            ty_alpha_eq(m1, m2) && tm_alpha_eq(p1, p2) && tm_alpha_eq(q1, q2)
        }
        _ => false,
    }
}

// ---------------------------------------------------------------------------
// Checked builder API
// ---------------------------------------------------------------------------

fn require(cond: bool, msg: impl Into<String>) -> Build<()> {
    if cond {
        Ok(())
    } else {
        bail(msg)
    }
}

fn dependent(p: Profile) -> bool {
    p != Profile::Simple
}

/// Type formers.
pub mod ty {
    use super::*;

    pub fn siota(ctx: &Ctx) -> Build<RcTy> {
        require(ctx.profile == Profile::Simple, "iota is simple-profile only")?;
        Ok(Rc::new(Ty::SIota))
    }

    pub fn sarrow(ctx: &Ctx, cod: RcTy) -> Build<RcTy> {
        require(ctx.profile == Profile::Simple, "iota -> _ is simple-profile only")?;
        require(
            matches!(&*cod, Ty::SIota | Ty::SArrow(_)),
            "simple codomain must again be iota or iota -> _",
        )?;
        Ok(Rc::new(Ty::SArrow(cod)))
    }

    pub fn u(ctx: &Ctx) -> Build<RcTy> {
        require(dependent(ctx.profile), "U is not available in the simple profile")?;
        Ok(Rc::new(Ty::U))
    }

    pub fn el(ctx: &Ctx, a: RcTm) -> Build<RcTy> {
        require(dependent(ctx.profile), "El is not available in the simple profile")?;
        require(
            nbe::conv_ty(ctx, &a.ty, &Rc::new(Ty::U)),
            "El expects a term of U",
        )?;
        Ok(Rc::new(Ty::El(a)))
    }

    /// `Pi a B` with `a : Tm Γ U` and `B : Ty (Γ ▷ El a)`.
    pub fn pi(ctx: &Ctx, a: RcTm, cod: RcTy) -> Build<RcTy> {
        require(dependent(ctx.profile), "internal products need a dependent profile")?;
        require(
            nbe::conv_ty(ctx, &a.ty, &Rc::new(Ty::U)),
            "internal product domain must be a term of U",
        )?;
        Ok(Rc::new(Ty::Pi(a, cod)))
    }

    pub fn pi_ext(ctx: &Ctx, ext: ExternId, cod: RcTy) -> Build<RcTy> {
        require(dependent(ctx.profile), "external products need a dependent profile")?;
        require(
            matches!(ctx.externs.kind(ext), ExternKind::Type),
            "external product domain must be an extern type",
        )?;
        Ok(Rc::new(Ty::PiExt(ext, cod)))
    }

    pub fn id_large(ctx: &Ctx, t: RcTm, u: RcTm) -> Build<RcTy> {
        require(
            ctx.profile == Profile::Fqii,
            "the large identity type is fqii-only",
        )?;
        require(
            nbe::conv_ty(ctx, &t.ty, &u.ty),
            "identity endpoints must share a type",
        )?;
        let a = t.ty.clone();
        Ok(Rc::new(Ty::IdLarge(a, t, u)))
    }

    pub fn id_weak(ctx: &Ctx, t: RcTm, u: RcTm) -> Build<RcTy> {
        require(
            ctx.profile == Profile::HiitWeak,
            "ID is available in the weak hiit profile only",
        )?;
        require(
            nbe::conv_ty(ctx, &t.ty, &u.ty),
            "ID endpoints must share a type",
        )?;
        let a = t.ty.clone();
        Ok(Rc::new(Ty::IdWeak(a, t, u)))
    }
}

/// Term formers.
pub mod tms {
    use super::*;

    pub fn var(ctx: &Ctx, ix: usize) -> Build<RcTm> {
        let ty = ctx.lookup_ty(ix)?;
        Ok(tm(TmNode::Var(ix), ty))
    }

    /// Pointful application; works for internal products of every
    /// dependent profile and for the simple first-order function type.
    pub fn app(ctx: &Ctx, f: RcTm, arg: RcTm) -> Build<RcTm> {
        let res = match &*f.ty {
            Ty::Pi(a, cod) => {
                let expected = Rc::new(Ty::El(a.clone()));
                require(
                    nbe::conv_ty(ctx, &arg.ty, &expected),
                    "application argument does not match the product domain",
                )?;
                subst::subst_ty(cod, &Sub::single(ctx, arg.clone()))
            }
            Ty::SArrow(cod) => {
                require(
                    matches!(&*arg.ty, Ty::SIota),
                    "first-order application expects an iota argument",
                )?;
                cod.clone()
            }
            _ => return bail("application head is not of product type"),
        };
        Ok(tm(TmNode::App(f, arg), res))
    }

    /// `lam body` where `body : Tm (Γ ▷ El a) B`; the binder type is passed
    /// explicitly since the body alone does not determine it.
    pub fn lam(ctx: &Ctx, a: RcTm, body: RcTm) -> Build<RcTm> {
        require(dependent(ctx.profile), "lambdas need a dependent profile")?;
        require(
            nbe::conv_ty(ctx, &a.ty, &Rc::new(Ty::U)),
            "lambda domain must be a term of U",
        )?;
        let ty = Rc::new(Ty::Pi(a, body.ty.clone()));
        Ok(tm(TmNode::Lam(body), ty))
    }

    pub fn app_ext(ctx: &Ctx, f: RcTm, arg: ExtArg) -> Build<RcTm> {
        check_ext_arg(ctx, &arg)?;
        match &*f.ty {
            Ty::PiExt(ext, cod) => {
                check_ext_arg_against(ctx, &arg, *ext)?;
                let res = subst::subst_ty(cod, &Sub::single_ext(ctx, arg.clone()));
                Ok(tm(TmNode::AppExtLarge(f, arg), res))
            }
            Ty::El(hd) => match &hd.node {
                TmNode::PiSmallExt(ext, fam) => {
                    check_ext_arg_against(ctx, &arg, *ext)?;
                    let resfam = subst::subst_tm(fam, &Sub::single_ext(ctx, arg.clone()));
                    Ok(tm(TmNode::AppExtSmall(f, arg), Rc::new(Ty::El(resfam))))
                }
                _ => bail("external application head is not an external product"),
            },
            _ => bail("external application head is not an external product"),
        }
    }

    pub fn lam_ext_large(ctx: &Ctx, ext: ExternId, body: RcTm) -> Build<RcTm> {
        require(dependent(ctx.profile), "external lambdas need a dependent profile")?;
        let ty = Rc::new(Ty::PiExt(ext, body.ty.clone()));
        Ok(tm(TmNode::LamExtLarge(body), ty))
    }

    pub fn lam_ext_small(ctx: &Ctx, ext: ExternId, body: RcTm) -> Build<RcTm> {
        require(
            ctx.profile.is_hiit(),
            "small external lambdas are hiit-only",
        )?;
        let fam = match &*body.ty {
            Ty::El(a) => a.clone(),
            _ => return bail("small external lambda body must be of an El type"),
        };
        let ty = Rc::new(Ty::El(tm(TmNode::PiSmallExt(ext, fam), Rc::new(Ty::U))));
        Ok(tm(TmNode::LamExtSmall(body), ty))
    }

    pub fn top(ctx: &Ctx) -> Build<RcTm> {
        require(ctx.profile.is_hiit(), "Top is available in hiit profiles only")?;
        Ok(tm(TmNode::Top, Rc::new(Ty::U)))
    }

    pub fn tt(ctx: &Ctx) -> Build<RcTm> {
        require(ctx.profile.is_hiit(), "tt is available in hiit profiles only")?;
        let top = tm(TmNode::Top, Rc::new(Ty::U));
        Ok(tm(TmNode::Tt, Rc::new(Ty::El(top))))
    }

    /// `Sg a b` with `a : Tm Γ U`, `b : Tm (Γ ▷ El a) U`.
    pub fn sg(ctx: &Ctx, a: RcTm, b: RcTm) -> Build<RcTm> {
        require(ctx.profile.is_hiit(), "Sg is available in hiit profiles only")?;
        require(
            nbe::conv_ty(ctx, &a.ty, &Rc::new(Ty::U)),
            "Sg first component must be a term of U",
        )?;
        Ok(tm(TmNode::Sg(a, b), Rc::new(Ty::U)))
    }

    pub fn pair(ctx: &Ctx, sg_tm: RcTm, fst: RcTm, snd: RcTm) -> Build<RcTm> {
        require(ctx.profile.is_hiit(), "pairs are available in hiit profiles only")?;
        let (a, b) = match &sg_tm.node {
            TmNode::Sg(a, b) => (a.clone(), b.clone()),
            _ => return bail("pair annotation must be a Sg term"),
        };
        require(
            nbe::conv_ty(ctx, &fst.ty, &Rc::new(Ty::El(a))),
            "pair first component type mismatch",
        )?;
        let want = Rc::new(Ty::El(subst::subst_tm(&b, &Sub::single(ctx, fst.clone()))));
        require(
            nbe::conv_ty(ctx, &snd.ty, &want),
            "pair second component type mismatch",
        )?;
        Ok(tm(TmNode::Pair(fst, snd), Rc::new(Ty::El(sg_tm))))
    }

    pub fn proj1(ctx: &Ctx, t: RcTm) -> Build<RcTm> {
        require(ctx.profile.is_hiit(), "proj1 is available in hiit profiles only")?;
        let (a, _) = sg_components(&t)?;
        Ok(tm(TmNode::Proj1(t), Rc::new(Ty::El(a))))
    }

    pub fn proj2(ctx: &Ctx, t: RcTm) -> Build<RcTm> {
        require(ctx.profile.is_hiit(), "proj2 is available in hiit profiles only")?;
        let (_, b) = sg_components(&t)?;
        let fst = tm(TmNode::Proj1(t.clone()), {
            let (a, _) = sg_components(&t)?;
            Rc::new(Ty::El(a))
        });
        let resfam = subst::subst_tm(&b, &Sub::single(ctx, fst));
        Ok(tm(TmNode::Proj2(t), Rc::new(Ty::El(resfam))))
    }

    fn sg_components(t: &RcTm) -> Build<(RcTm, RcTm)> {
        match &*t.ty {
            Ty::El(hd) => match &hd.node {
                TmNode::Sg(a, b) => Ok((a.clone(), b.clone())),
                _ => bail("projection head is not of a Sg type"),
            },
            _ => bail("projection head is not of a Sg type"),
        }
    }

    pub fn id_small(ctx: &Ctx, t: RcTm, u: RcTm) -> Build<RcTm> {
        require(
            ctx.profile.is_hiit(),
            "the small identity type is available in hiit profiles only",
        )?;
        require(
            nbe::conv_ty(ctx, &t.ty, &u.ty),
            "identity endpoints must share a type",
        )?;
        let a = match &*t.ty {
            Ty::El(a) => a.clone(),
            _ => return bail("small identity endpoints must have a type in U"),
        };
        Ok(tm(TmNode::IdSmall(a, t, u), Rc::new(Ty::U)))
    }

    pub fn pi_small_ext(ctx: &Ctx, ext: ExternId, fam: RcTm) -> Build<RcTm> {
        require(
            ctx.profile.is_hiit(),
            "small external products are hiit-only",
        )?;
        require(
            matches!(ctx.externs.kind(ext), ExternKind::Type),
            "small external product domain must be an extern type",
        )?;
        Ok(tm(TmNode::PiSmallExt(ext, fam), Rc::new(Ty::U)))
    }

    /// `refl` at `El (Id a t t)`, at `IdLarge A t t` or at `IdWeak A t t`;
    /// the target type is passed in and its endpoints must be convertible.
    pub fn refl(ctx: &Ctx, at: RcTy) -> Build<RcTm> {
        match &*at {
            Ty::El(hd) => match &hd.node {
                TmNode::IdSmall(_, t, u) => {
                    require(
                        nbe::conv(ctx, t, u),
                        "refl requires definitionally equal endpoints",
                    )?;
                    Ok(tm(TmNode::Refl, at.clone()))
                }
                _ => bail("refl must be checked against an identity type"),
            },
            Ty::IdLarge(_, t, u) | Ty::IdWeak(_, t, u) => {
                require(
                    nbe::conv(ctx, t, u),
                    "refl requires definitionally equal endpoints",
                )?;
                Ok(tm(TmNode::Refl, at.clone()))
            }
            _ => bail("refl must be checked against an identity type"),
        }
    }

    /// Small-identity eliminator (weak profile). `path : El (Id a t u)`;
    /// `motive : Ty (Γ ▷ El a ▷ El (Id a+ t+ q0))`; `pr : motive[t, refl]`.
    pub fn j_small(ctx: &Ctx, motive: RcTy, pr: RcTm, path: RcTm) -> Build<RcTm> {
        require(
            ctx.profile == Profile::HiitWeak,
            "J is available in the weak hiit profile only",
        )?;
        let (a, t, u) = match &*path.ty {
            Ty::El(hd) => match &hd.node {
                TmNode::IdSmall(a, t, u) => (a.clone(), t.clone(), u.clone()),
                _ => return bail("J path must prove a small identity"),
            },
            _ => return bail("J path must prove a small identity"),
        };
        let refl_ty = {
            let idt = tm(
                TmNode::IdSmall(a.clone(), t.clone(), t.clone()),
                Rc::new(Ty::U),
            );
            Rc::new(Ty::El(idt))
        };
        let refl_tm = tm(TmNode::Refl, refl_ty);
        let at_base = subst::subst_ty(&motive, &Sub::double(ctx, t.clone(), refl_tm));
        require(
            nbe::conv_ty(ctx, &pr.ty, &at_base),
            "J base case does not match the motive at refl",
        )?;
        let res = subst::subst_ty(&motive, &Sub::double(ctx, u, path.clone()));
        Ok(tm(TmNode::JSmall(motive, pr, path), res))
    }

    /// Large-identity eliminator (weak profile); strict beta.
    pub fn j_weak(ctx: &Ctx, motive: RcTy, pr: RcTm, path: RcTm) -> Build<RcTm> {
        require(
            ctx.profile == Profile::HiitWeak,
            "J is available in the weak hiit profile only",
        )?;
        let (t, u) = match &*path.ty {
            Ty::IdWeak(_, t, u) => (t.clone(), u.clone()),
            _ => return bail("J path must prove an ID type"),
        };
        let refl_ty = Rc::new(Ty::IdWeak(t.ty.clone(), t.clone(), t.clone()));
        let refl_tm = tm(TmNode::Refl, refl_ty);
        let at_base = subst::subst_ty(&motive, &Sub::double(ctx, t.clone(), refl_tm));
        require(
            nbe::conv_ty(ctx, &pr.ty, &at_base),
            "J base case does not match the motive at refl",
        )?;
        let res = subst::subst_ty(&motive, &Sub::double(ctx, u, path.clone()));
        Ok(tm(TmNode::JWeak(motive, pr, path), res))
    }

    fn check_ext_arg(ctx: &Ctx, arg: &ExtArg) -> Build<()> {
        match arg {
            ExtArg::Var(ix) => {
                ctx.lookup_ext(*ix)?;
                Ok(())
            }
            ExtArg::Cst(id, args) => {
                match ctx.externs.kind(*id) {
                    ExternKind::Type => require(
                        args.is_empty(),
                        "an extern type takes no arguments in argument position",
                    )?,
                    ExternKind::Term { params, .. } => require(
                        params.len() == args.len(),
                        "extern constant applied to the wrong number of arguments",
                    )?,
                }
                for a in args {
                    check_ext_arg(ctx, a)?;
                }
                Ok(())
            }
        }
    }

    /// The external type of an argument expression, when determinable.
    pub fn ext_arg_type(ctx: &Ctx, arg: &ExtArg) -> Build<Option<ExternId>> {
        match arg {
            ExtArg::Var(ix) => Ok(Some(ctx.lookup_ext(*ix)?)),
            ExtArg::Cst(id, _) => match ctx.externs.kind(*id) {
                ExternKind::Type => Ok(None),
                ExternKind::Term { ret, .. } => Ok(Some(*ret)),
            },
        }
    }

    fn check_ext_arg_against(ctx: &Ctx, arg: &ExtArg, want: ExternId) -> Build<()> {
        if let Some(e) = ext_arg_type(ctx, arg)? {
            require(
                e == want,
                format!(
                    "external argument has type {} where {} is required",
                    ctx.externs.name(e),
                    ctx.externs.name(want)
                ),
            )?;
        }
        Ok(())
    }
}
