//! Parallel substitutions as lists of images, with the derived calculus:
//! identity, weakening, extension, composition, and lifting over binders.
//! Substitution acts structurally on syntax; cached types are substituted
//! along with the nodes that carry them.

use std::rc::Rc;

use super::syntax::*;

/// A substitution `σ : Sub Γ Δ`, represented by one image per entry of `Δ`
/// (outermost first). Term entries map to terms over `Γ`, external entries
/// to external argument expressions over `Γ`.
#[derive(Debug, Clone)]
pub struct Sub {
    pub items: Vec<SubItem>,
}

#[derive(Debug, Clone)]
pub enum SubItem {
    Tm(RcTm),
    Ext(ExtArg),
}

impl Sub {
    /// `id : Sub Γ Γ`.
    pub fn id(ctx: &Ctx) -> Sub {
        let n = ctx.len();
        let items = ctx
            .entries()
            .iter()
            .enumerate()
            .map(|(j, e)| {
                let ix = n - 1 - j;
                match &e.binder {
                    Binder::Ty(ty) => SubItem::Tm(tm(TmNode::Var(ix), shift_ty(ty, ix + 1, 0))),
                    Binder::Ext(_) => SubItem::Ext(ExtArg::Var(ix)),
                }
            })
            .collect();
        Sub { items }
    }

    /// Weakening `p : Sub (Γ ▷ A) Γ` (images of Γ's entries, shifted).
    pub fn weaken(ctx: &Ctx) -> Sub {
        let id = Sub::id(ctx);
        Sub {
            items: id.items.iter().map(|it| shift_item(it, 1, 0)).collect(),
        }
    }

    /// Single substitution `(id, t) : Sub Γ (Γ ▷ A)` for `t : Tm Γ A`.
    pub fn single(ctx: &Ctx, t: RcTm) -> Sub {
        let mut s = Sub::id(ctx);
        s.items.push(SubItem::Tm(t));
        s
    }

    /// `(id, e) : Sub Γ (Γ ▷ ext)`.
    pub fn single_ext(ctx: &Ctx, e: ExtArg) -> Sub {
        let mut s = Sub::id(ctx);
        s.items.push(SubItem::Ext(e));
        s
    }

    /// `(id, t, u) : Sub Γ (Γ ▷ A ▷ B)` with `u : Tm Γ (B[id, t])`.
    pub fn double(ctx: &Ctx, t: RcTm, u: RcTm) -> Sub {
        let mut s = Sub::id(ctx);
        s.items.push(SubItem::Tm(t));
        s.items.push(SubItem::Tm(u));
        s
    }

    /// Lift over a binder: from `σ : Sub Γ Δ` and the `Δ`-side binder,
    /// `(σ ∘ p, q) : Sub (Γ ▷ binder[σ]) (Δ ▷ binder)`. The zero variable
    /// maps to itself.
    pub fn lift(&self, binder_under_sigma: &Binder) -> Sub {
        let mut items: Vec<SubItem> = self.items.iter().map(|it| shift_item(it, 1, 0)).collect();
        match binder_under_sigma {
            Binder::Ty(a_sub) => {
                items.push(SubItem::Tm(tm(TmNode::Var(0), shift_ty(a_sub, 1, 0))));
            }
            Binder::Ext(_) => items.push(SubItem::Ext(ExtArg::Var(0))),
        }
        Sub { items }
    }

    /// `σ ∘ δ` where `σ : Sub Δ Ξ`, `δ : Sub Γ Δ`: images of `σ` pushed
    /// through `δ`.
    pub fn compose(&self, delta: &Sub) -> Sub {
        Sub {
            items: self
                .items
                .iter()
                .map(|it| match it {
                    SubItem::Tm(t) => SubItem::Tm(subst_tm(t, delta)),
                    SubItem::Ext(e) => SubItem::Ext(subst_extarg(e, delta)),
                })
                .collect(),
        }
    }

    fn lookup(&self, ix: usize) -> &SubItem {
        &self.items[self.items.len() - 1 - ix]
    }
}

fn shift_item(it: &SubItem, by: usize, cutoff: usize) -> SubItem {
    match it {
        SubItem::Tm(t) => SubItem::Tm(shift_tm(t, by, cutoff)),
        SubItem::Ext(e) => SubItem::Ext(shift_extarg(e, by, cutoff)),
    }
}

pub fn shift_ty(ty: &RcTy, by: usize, cutoff: usize) -> RcTy {
    if by == 0 {
        return ty.clone();
    }
    Rc::new(match &**ty {
        Ty::SIota => Ty::SIota,
        Ty::SArrow(c) => Ty::SArrow(shift_ty(c, by, cutoff)),
        Ty::U => Ty::U,
        Ty::El(a) => Ty::El(shift_tm(a, by, cutoff)),
        Ty::Pi(a, b) => Ty::Pi(shift_tm(a, by, cutoff), shift_ty(b, by, cutoff + 1)),
        Ty::PiExt(e, b) => Ty::PiExt(*e, shift_ty(b, by, cutoff + 1)),
        Ty::IdLarge(a, t, u) => Ty::IdLarge(
            shift_ty(a, by, cutoff),
            shift_tm(t, by, cutoff),
            shift_tm(u, by, cutoff),
        ),
        Ty::IdWeak(a, t, u) => Ty::IdWeak(
            shift_ty(a, by, cutoff),
            shift_tm(t, by, cutoff),
            shift_tm(u, by, cutoff),
        ),
    })
}

pub fn shift_tm(t: &RcTm, by: usize, cutoff: usize) -> RcTm {
    if by == 0 {
        return t.clone();
    }
    let ty = shift_ty(&t.ty, by, cutoff);
    let node = match &t.node {
        TmNode::Var(i) => TmNode::Var(if *i >= cutoff { i + by } else { *i }),
        TmNode::App(f, a) => TmNode::App(shift_tm(f, by, cutoff), shift_tm(a, by, cutoff)),
        TmNode::Lam(b) => TmNode::Lam(shift_tm(b, by, cutoff + 1)),
        TmNode::AppExtLarge(f, e) => {
            TmNode::AppExtLarge(shift_tm(f, by, cutoff), shift_extarg(e, by, cutoff))
        }
        TmNode::LamExtLarge(b) => TmNode::LamExtLarge(shift_tm(b, by, cutoff + 1)),
        TmNode::AppExtSmall(f, e) => {
            TmNode::AppExtSmall(shift_tm(f, by, cutoff), shift_extarg(e, by, cutoff))
        }
        TmNode::LamExtSmall(b) => TmNode::LamExtSmall(shift_tm(b, by, cutoff + 1)),
        TmNode::Top => TmNode::Top,
        TmNode::Tt => TmNode::Tt,
        TmNode::Sg(a, b) => TmNode::Sg(shift_tm(a, by, cutoff), shift_tm(b, by, cutoff + 1)),
        TmNode::Pair(a, b) => TmNode::Pair(shift_tm(a, by, cutoff), shift_tm(b, by, cutoff)),
        TmNode::Proj1(x) => TmNode::Proj1(shift_tm(x, by, cutoff)),
        TmNode::Proj2(x) => TmNode::Proj2(shift_tm(x, by, cutoff)),
        TmNode::IdSmall(a, x, y) => TmNode::IdSmall(
            shift_tm(a, by, cutoff),
            shift_tm(x, by, cutoff),
            shift_tm(y, by, cutoff),
        ),
        TmNode::PiSmallExt(e, f) => TmNode::PiSmallExt(*e, shift_tm(f, by, cutoff + 1)),
        TmNode::Refl => TmNode::Refl,
        TmNode::JSmall(m, pr, p) => TmNode::JSmall(
            shift_ty(m, by, cutoff + 2),
            shift_tm(pr, by, cutoff),
            shift_tm(p, by, cutoff),
        ),
        TmNode::JWeak(m, pr, p) => TmNode::JWeak(
            shift_ty(m, by, cutoff + 2),
            shift_tm(pr, by, cutoff),
            shift_tm(p, by, cutoff),
        ),
    };
    tm(node, ty)
}

pub fn shift_extarg(e: &ExtArg, by: usize, cutoff: usize) -> ExtArg {
    match e {
        ExtArg::Var(i) => ExtArg::Var(if *i >= cutoff { i + by } else { *i }),
        ExtArg::Cst(id, args) => ExtArg::Cst(
            *id,
            args.iter().map(|a| shift_extarg(a, by, cutoff)).collect(),
        ),
    }
}

/// `A[σ]`.
pub fn subst_ty(a: &RcTy, s: &Sub) -> RcTy {
    match &**a {
        Ty::SIota => a.clone(),
        Ty::SArrow(c) => Rc::new(Ty::SArrow(subst_ty(c, s))),
        Ty::U => a.clone(),
        Ty::El(t) => Rc::new(Ty::El(subst_tm(t, s))),
        Ty::Pi(dom, cod) => {
            let dom2 = subst_tm(dom, s);
            let binder = Binder::Ty(Rc::new(Ty::El(dom2.clone())));
            Rc::new(Ty::Pi(dom2, subst_ty(cod, &s.lift(&binder))))
        }
        Ty::PiExt(e, cod) => {
            let binder = Binder::Ext(*e);
            Rc::new(Ty::PiExt(*e, subst_ty(cod, &s.lift(&binder))))
        }
        Ty::IdLarge(t, x, y) => Rc::new(Ty::IdLarge(subst_ty(t, s), subst_tm(x, s), subst_tm(y, s))),
        Ty::IdWeak(t, x, y) => Rc::new(Ty::IdWeak(subst_ty(t, s), subst_tm(x, s), subst_tm(y, s))),
    }
}

/// `t[σ]`; `(var x)[σ] = σ x`, homomorphic elsewhere.
pub fn subst_tm(t: &RcTm, s: &Sub) -> RcTm {
    match &t.node {
        TmNode::Var(i) => match s.lookup(*i) {
            SubItem::Tm(image) => image.clone(),
            SubItem::Ext(_) => unreachable!("term variable mapped to an external image"),
        },
        node => {
            let ty = subst_ty(&t.ty, s);
            let node = match node {
                TmNode::Var(_) => unreachable!(),
                TmNode::App(f, a) => TmNode::App(subst_tm(f, s), subst_tm(a, s)),
                TmNode::Lam(b) => {
                    let binder = lam_binder(t, s);
                    TmNode::Lam(subst_tm(b, &s.lift(&binder)))
                }
                TmNode::AppExtLarge(f, e) => {
                    TmNode::AppExtLarge(subst_tm(f, s), subst_extarg(e, s))
                }
                TmNode::LamExtLarge(b) => {
                    let ext = match &*t.ty {
                        Ty::PiExt(e, _) => *e,
                        _ => unreachable!("external lambda without external product type"),
                    };
                    TmNode::LamExtLarge(subst_tm(b, &s.lift(&Binder::Ext(ext))))
                }
                TmNode::AppExtSmall(f, e) => {
                    TmNode::AppExtSmall(subst_tm(f, s), subst_extarg(e, s))
                }
                TmNode::LamExtSmall(b) => {
                    let ext = match &*t.ty {
                        Ty::El(hd) => match &hd.node {
                            TmNode::PiSmallExt(e, _) => *e,
                            _ => unreachable!("small external lambda type shape"),
                        },
                        _ => unreachable!("small external lambda type shape"),
                    };
                    TmNode::LamExtSmall(subst_tm(b, &s.lift(&Binder::Ext(ext))))
                }
                TmNode::Top => TmNode::Top,
                TmNode::Tt => TmNode::Tt,
                TmNode::Refl => TmNode::Refl,
                TmNode::Sg(a, b) => {
                    let a2 = subst_tm(a, s);
                    let binder = Binder::Ty(Rc::new(Ty::El(a2.clone())));
                    TmNode::Sg(a2, subst_tm(b, &s.lift(&binder)))
                }
                TmNode::Pair(a, b) => TmNode::Pair(subst_tm(a, s), subst_tm(b, s)),
                TmNode::Proj1(x) => TmNode::Proj1(subst_tm(x, s)),
                TmNode::Proj2(x) => TmNode::Proj2(subst_tm(x, s)),
                TmNode::IdSmall(a, x, y) => {
                    TmNode::IdSmall(subst_tm(a, s), subst_tm(x, s), subst_tm(y, s))
                }
                TmNode::PiSmallExt(e, f) => {
                    TmNode::PiSmallExt(*e, subst_tm(f, &s.lift(&Binder::Ext(*e))))
                }
                TmNode::JSmall(m, pr, p) => {
                    let s2 = lift_j_small(p, s);
                    TmNode::JSmall(subst_ty(m, &s2), subst_tm(pr, s), subst_tm(p, s))
                }
                TmNode::JWeak(m, pr, p) => {
                    let s2 = lift_j_weak(p, s);
                    TmNode::JWeak(subst_ty(m, &s2), subst_tm(pr, s), subst_tm(p, s))
                }
            };
            tm(node, ty)
        }
    }
}

fn lam_binder(t: &RcTm, s: &Sub) -> Binder {
    match &*t.ty {
        Ty::Pi(dom, _) => Binder::Ty(Rc::new(Ty::El(subst_tm(dom, s)))),
        _ => unreachable!("lambda without product type"),
    }
}

/// Lift `σ` over the two binders of a small-J motive context
/// `Γ ▷ El a ▷ El (Id a t q)`.
fn lift_j_small(p: &RcTm, s: &Sub) -> Sub {
    let (a, t) = match &*p.ty {
        Ty::El(hd) => match &hd.node {
            TmNode::IdSmall(a, t, _) => (a.clone(), t.clone()),
            _ => unreachable!("small J path type shape"),
        },
        _ => unreachable!("small J path type shape"),
    };
    let a_s = subst_tm(&a, s);
    let s1 = s.lift(&Binder::Ty(Rc::new(Ty::El(a_s.clone()))));
    let a_up = shift_tm(&a_s, 1, 0);
    let t_up = shift_tm(&subst_tm(&t, s), 1, 0);
    let q0 = tm(TmNode::Var(0), Rc::new(Ty::El(a_up.clone())));
    let id_ty = tm(TmNode::IdSmall(a_up, t_up, q0), Rc::new(Ty::U));
    s1.lift(&Binder::Ty(Rc::new(Ty::El(id_ty))))
}

fn lift_j_weak(p: &RcTm, s: &Sub) -> Sub {
    let (big_a, t) = match &*p.ty {
        Ty::IdWeak(a, t, _) => (a.clone(), t.clone()),
        _ => unreachable!("weak J path type shape"),
    };
    let a_s = subst_ty(&big_a, s);
    let s1 = s.lift(&Binder::Ty(a_s.clone()));
    let a_up = shift_ty(&a_s, 1, 0);
    let t_up = shift_tm(&subst_tm(&t, s), 1, 0);
    let q0 = tm(TmNode::Var(0), a_up.clone());
    let id_ty = Rc::new(Ty::IdWeak(a_up, t_up, q0));
    s1.lift(&Binder::Ty(id_ty))
}

pub fn subst_extarg(e: &ExtArg, s: &Sub) -> ExtArg {
    match e {
        ExtArg::Var(i) => match s.lookup(*i) {
            SubItem::Ext(image) => image.clone(),
            SubItem::Tm(_) => unreachable!("external variable mapped to a term image"),
        },
        ExtArg::Cst(id, args) => ExtArg::Cst(*id, args.iter().map(|a| subst_extarg(a, s)).collect()),
    }
}
