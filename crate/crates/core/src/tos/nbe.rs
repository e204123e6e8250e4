//! Environment-based normalization by evaluation with de Bruijn levels in
//! values and type-directed readback. Beta rules are profile-gated:
//!
//! - internal application over lambda: strict in fqii and hiit-strict,
//!   propositional only under hiit-weak;
//! - projections over pairs and small external application over small
//!   external lambda: strict in hiit-strict only;
//! - large external application over large external lambda: strict
//!   wherever the former exists;
//! - `J` over `refl`: strict for the large weak identity, never for the
//!   small identity;
//! - eta for internal products applies in fqii readback.

use std::cell::Cell;
use std::rc::Rc;

use super::subst;
use super::syntax::*;
use super::Profile;

thread_local! {
    static FUEL: Cell<u64> = const { Cell::new(u64::MAX) };
}

/// Runs `f` under an evaluation-step budget; exceeding it panics. Used by
/// the termination assertions in tests.
pub fn with_fuel<T>(limit: u64, f: impl FnOnce() -> T) -> T {
    let prev = FUEL.with(|c| c.replace(limit));
    let out = f();
    FUEL.with(|c| c.set(prev));
    out
}

fn burn() {
    FUEL.with(|c| {
        let left = c.get();
        if left == 0 {
            panic!("normalization fuel exhausted");
        }
        if left != u64::MAX {
            c.set(left - 1);
        }
    });
}

pub type RcVal = Rc<Val>;
pub type RcTyVal = Rc<TyVal>;

#[derive(Debug, Clone)]
pub struct Env {
    items: Vec<EnvItem>,
}

#[derive(Debug, Clone)]
pub enum EnvItem {
    Tm(RcVal),
    Ext(ExtVal),
}

impl Env {
    pub fn empty() -> Env {
        Env { items: Vec::new() }
    }

    pub fn push(&self, item: EnvItem) -> Env {
        let mut e = self.clone();
        e.items.push(item);
        e
    }

    fn lookup_tm(&self, ix: usize) -> RcVal {
        match &self.items[self.items.len() - 1 - ix] {
            EnvItem::Tm(v) => v.clone(),
            EnvItem::Ext(_) => unreachable!("term variable bound to external value"),
        }
    }

    fn lookup_ext(&self, ix: usize) -> ExtVal {
        match &self.items[self.items.len() - 1 - ix] {
            EnvItem::Ext(v) => v.clone(),
            EnvItem::Tm(_) => unreachable!("external variable bound to term value"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Closure {
    pub env: Env,
    pub body: RcTm,
}

#[derive(Debug, Clone)]
pub struct TyClosure {
    pub env: Env,
    pub body: RcTy,
}

/// A type under two binders (J motives).
#[derive(Debug, Clone)]
pub struct TyClosure2 {
    pub env: Env,
    pub body: RcTy,
}

#[derive(Debug, Clone)]
pub enum Val {
    Lam(Closure),
    LamExtLarge(Closure),
    LamExtSmall(Closure),
    Top,
    Tt,
    Sg(RcVal, Closure),
    Pair(RcVal, RcVal),
    IdSmall(RcVal, RcVal, RcVal),
    PiSmallExt(ExternId, Closure),
    Refl,
    Ne(Neutral),
}

#[derive(Debug, Clone)]
pub struct Neutral {
    pub head: Head,
    pub head_ty: RcTyVal,
    pub spine: Vec<Elim>,
}

/// Stuck heads. Non-variable heads arise only under the weak profile,
/// where the corresponding beta rules are propositional.
#[derive(Debug, Clone)]
pub enum Head {
    Var(usize),
    StuckLam(Closure),
    StuckPair(RcVal, RcVal),
    StuckLamExtSmall(Closure),
    StuckJSmall(Box<JSmallStuck>),
}

#[derive(Debug, Clone)]
pub struct JSmallStuck {
    pub motive: TyClosure2,
    pub pr: RcVal,
    pub path: RcVal,
    pub path_ty: RcTyVal,
}

#[derive(Debug, Clone)]
pub enum Elim {
    App(RcVal),
    AppExt(ExtVal),
    Proj1,
    Proj2,
    JWeak { motive: TyClosure2, pr: RcVal },
}

#[derive(Debug, Clone)]
pub enum TyVal {
    SIota,
    SArrow(RcTyVal),
    U,
    El(RcVal),
    Pi(RcVal, TyClosure),
    PiExt(ExternId, TyClosure),
    IdLarge(RcTyVal, RcVal, RcVal),
    IdWeak(RcTyVal, RcVal, RcVal),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtVal {
    Var(usize),
    Cst(ExternId, Vec<ExtVal>),
}

impl Closure {
    pub fn apply(&self, p: Profile, item: EnvItem) -> RcVal {
        eval_tm(p, &self.env.push(item), &self.body)
    }
}

impl TyClosure {
    pub fn apply(&self, p: Profile, item: EnvItem) -> RcTyVal {
        eval_ty(p, &self.env.push(item), &self.body)
    }
}

impl TyClosure2 {
    pub fn apply2(&self, p: Profile, a: EnvItem, b: EnvItem) -> RcTyVal {
        eval_ty(p, &self.env.push(a).push(b), &self.body)
    }
}

fn var_val(level: usize, ty: RcTyVal) -> RcVal {
    Rc::new(Val::Ne(Neutral {
        head: Head::Var(level),
        head_ty: ty,
        spine: Vec::new(),
    }))
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

pub fn eval_tm(p: Profile, env: &Env, t: &RcTm) -> RcVal {
    burn();
    match &t.node {
        TmNode::Var(i) => env.lookup_tm(*i),
        TmNode::App(f, a) => {
            let vf = eval_tm(p, env, f);
            let va = eval_tm(p, env, a);
            apply_int(p, vf, va, || eval_ty(p, env, &f.ty))
        }
        TmNode::Lam(body) => Rc::new(Val::Lam(Closure {
            env: env.clone(),
            body: body.clone(),
        })),
        TmNode::AppExtLarge(f, e) => {
            let vf = eval_tm(p, env, f);
            let ve = eval_ext(env, e);
            apply_ext_large(p, vf, ve, || eval_ty(p, env, &f.ty))
        }
        TmNode::LamExtLarge(body) => Rc::new(Val::LamExtLarge(Closure {
            env: env.clone(),
            body: body.clone(),
        })),
        TmNode::AppExtSmall(f, e) => {
            let vf = eval_tm(p, env, f);
            let ve = eval_ext(env, e);
            apply_ext_small(p, vf, ve, || eval_ty(p, env, &f.ty))
        }
        TmNode::LamExtSmall(body) => Rc::new(Val::LamExtSmall(Closure {
            env: env.clone(),
            body: body.clone(),
        })),
        TmNode::Top => Rc::new(Val::Top),
        TmNode::Tt => Rc::new(Val::Tt),
        TmNode::Sg(a, b) => Rc::new(Val::Sg(
            eval_tm(p, env, a),
            Closure {
                env: env.clone(),
                body: b.clone(),
            },
        )),
        TmNode::Pair(a, b) => Rc::new(Val::Pair(eval_tm(p, env, a), eval_tm(p, env, b))),
        TmNode::Proj1(x) => {
            let vx = eval_tm(p, env, x);
            project(p, vx, true, || eval_ty(p, env, &x.ty))
        }
        TmNode::Proj2(x) => {
            let vx = eval_tm(p, env, x);
            project(p, vx, false, || eval_ty(p, env, &x.ty))
        }
        TmNode::IdSmall(a, x, y) => Rc::new(Val::IdSmall(
            eval_tm(p, env, a),
            eval_tm(p, env, x),
            eval_tm(p, env, y),
        )),
        TmNode::PiSmallExt(e, f) => Rc::new(Val::PiSmallExt(
            *e,
            Closure {
                env: env.clone(),
                body: f.clone(),
            },
        )),
        TmNode::Refl => Rc::new(Val::Refl),
        TmNode::JSmall(m, pr, path) => {
            let vpr = eval_tm(p, env, pr);
            let vpath = eval_tm(p, env, path);
            let path_ty = eval_ty(p, env, &path.ty);
            let motive = TyClosure2 {
                env: env.clone(),
                body: m.clone(),
            };
            let head_ty = eval_ty(p, env, &t.ty);
            Rc::new(Val::Ne(Neutral {
                head: Head::StuckJSmall(Box::new(JSmallStuck {
                    motive,
                    pr: vpr,
                    path: vpath,
                    path_ty,
                })),
                head_ty,
                spine: Vec::new(),
            }))
        }
        TmNode::JWeak(m, pr, path) => {
            let vpath = eval_tm(p, env, path);
            match &*vpath {
                Val::Refl => eval_tm(p, env, pr),
                Val::Ne(ne) => {
                    let mut ne = ne.clone();
                    ne.spine.push(Elim::JWeak {
                        motive: TyClosure2 {
                            env: env.clone(),
                            body: m.clone(),
                        },
                        pr: eval_tm(p, env, pr),
                    });
                    Rc::new(Val::Ne(ne))
                }
                other => unreachable!("J applied to non-path value {other:?}"),
            }
        }
    }
}

pub fn apply_int(p: Profile, f: RcVal, a: RcVal, fty: impl FnOnce() -> RcTyVal) -> RcVal {
    burn();
    match &*f {
        Val::Lam(cl) if p != Profile::HiitWeak => cl.apply(p, EnvItem::Tm(a)),
        Val::Lam(cl) => Rc::new(Val::Ne(Neutral {
            head: Head::StuckLam(cl.clone()),
            head_ty: fty(),
            spine: vec![Elim::App(a)],
        })),
        Val::Ne(ne) => {
            let mut ne = ne.clone();
            ne.spine.push(Elim::App(a));
            Rc::new(Val::Ne(ne))
        }
        other => unreachable!("application of non-function value {other:?}"),
    }
}

fn apply_ext_large(p: Profile, f: RcVal, e: ExtVal, _fty: impl FnOnce() -> RcTyVal) -> RcVal {
    burn();
    match &*f {
        Val::LamExtLarge(cl) => cl.apply(p, EnvItem::Ext(e)),
        Val::Ne(ne) => {
            let mut ne = ne.clone();
            ne.spine.push(Elim::AppExt(e));
            Rc::new(Val::Ne(ne))
        }
        other => unreachable!("external application of non-function value {other:?}"),
    }
}

fn apply_ext_small(p: Profile, f: RcVal, e: ExtVal, fty: impl FnOnce() -> RcTyVal) -> RcVal {
    burn();
    match &*f {
        Val::LamExtSmall(cl) if p != Profile::HiitWeak => cl.apply(p, EnvItem::Ext(e)),
        Val::LamExtSmall(cl) => Rc::new(Val::Ne(Neutral {
            head: Head::StuckLamExtSmall(cl.clone()),
            head_ty: fty(),
            spine: vec![Elim::AppExt(e)],
        })),
        Val::Ne(ne) => {
            let mut ne = ne.clone();
            ne.spine.push(Elim::AppExt(e));
            Rc::new(Val::Ne(ne))
        }
        other => unreachable!("external application of non-function value {other:?}"),
    }
}

fn project(p: Profile, x: RcVal, first: bool, xty: impl FnOnce() -> RcTyVal) -> RcVal {
    burn();
    let elim = if first { Elim::Proj1 } else { Elim::Proj2 };
    match &*x {
        Val::Pair(a, b) if p != Profile::HiitWeak => {
            if first {
                a.clone()
            } else {
                b.clone()
            }
        }
        Val::Pair(a, b) => Rc::new(Val::Ne(Neutral {
            head: Head::StuckPair(a.clone(), b.clone()),
            head_ty: xty(),
            spine: vec![elim],
        })),
        Val::Ne(ne) => {
            let mut ne = ne.clone();
            ne.spine.push(elim);
            Rc::new(Val::Ne(ne))
        }
        other => unreachable!("projection from non-pair value {other:?}"),
    }
}

pub fn eval_ext(env: &Env, e: &ExtArg) -> ExtVal {
    match e {
        ExtArg::Var(i) => env.lookup_ext(*i),
        ExtArg::Cst(id, args) => ExtVal::Cst(*id, args.iter().map(|a| eval_ext(env, a)).collect()),
    }
}

pub fn eval_ty(p: Profile, env: &Env, ty: &RcTy) -> RcTyVal {
    burn();
    Rc::new(match &**ty {
        Ty::SIota => TyVal::SIota,
        Ty::SArrow(c) => TyVal::SArrow(eval_ty(p, env, c)),
        Ty::U => TyVal::U,
        Ty::El(a) => TyVal::El(eval_tm(p, env, a)),
        Ty::Pi(a, b) => TyVal::Pi(
            eval_tm(p, env, a),
            TyClosure {
                env: env.clone(),
                body: b.clone(),
            },
        ),
        Ty::PiExt(e, b) => TyVal::PiExt(
            *e,
            TyClosure {
                env: env.clone(),
                body: b.clone(),
            },
        ),
        Ty::IdLarge(a, t, u) => TyVal::IdLarge(
            eval_ty(p, env, a),
            eval_tm(p, env, t),
            eval_tm(p, env, u),
        ),
        Ty::IdWeak(a, t, u) => TyVal::IdWeak(
            eval_ty(p, env, a),
            eval_tm(p, env, t),
            eval_tm(p, env, u),
        ),
    })
}

/// The identity environment of a context: each entry becomes a fresh
/// variable value at its level.
pub fn id_env(ctx: &Ctx) -> Env {
    let mut env = Env::empty();
    for (level, entry) in ctx.entries().iter().enumerate() {
        match &entry.binder {
            Binder::Ty(ty) => {
                let tyv = eval_ty(ctx.profile, &env, ty);
                env = env.push(EnvItem::Tm(var_val(level, tyv)));
            }
            Binder::Ext(_) => env = env.push(EnvItem::Ext(ExtVal::Var(level))),
        }
    }
    env
}

// ---------------------------------------------------------------------------
// Conversion
// ---------------------------------------------------------------------------

fn dummy_ty() -> RcTyVal {
    Rc::new(TyVal::U)
}

/// Conversion of terms at a common type: evaluate and compare values.
/// Eta for internal products applies under fqii.
pub fn conv(ctx: &Ctx, t: &RcTm, u: &RcTm) -> bool {
    let env = id_env(ctx);
    let vt = eval_tm(ctx.profile, &env, t);
    let vu = eval_tm(ctx.profile, &env, u);
    val_conv(ctx.profile, ctx.len(), &vt, &vu)
}

pub fn conv_ty(ctx: &Ctx, a: &RcTy, b: &RcTy) -> bool {
    if std::ptr::eq(&**a, &**b) || a == b {
        return true;
    }
    let env = id_env(ctx);
    let va = eval_ty(ctx.profile, &env, a);
    let vb = eval_ty(ctx.profile, &env, b);
    tyval_conv(ctx.profile, ctx.len(), &va, &vb)
}

pub fn val_conv(p: Profile, lvl: usize, a: &RcVal, b: &RcVal) -> bool {
    burn();
    match (&**a, &**b) {
        (Val::Lam(c1), Val::Lam(c2)) => {
            let fresh = var_val(lvl, dummy_ty());
            val_conv(
                p,
                lvl + 1,
                &c1.apply(p, EnvItem::Tm(fresh.clone())),
                &c2.apply(p, EnvItem::Tm(fresh)),
            )
        }
        // eta for internal products (fqii readback/conversion)
        (Val::Lam(c1), Val::Ne(_)) if p == Profile::Fqii => {
            let fresh = var_val(lvl, dummy_ty());
            let lhs = c1.apply(p, EnvItem::Tm(fresh.clone()));
            let rhs = apply_int(p, b.clone(), fresh, dummy_ty);
            val_conv(p, lvl + 1, &lhs, &rhs)
        }
        (Val::Ne(_), Val::Lam(c2)) if p == Profile::Fqii => {
            let fresh = var_val(lvl, dummy_ty());
            let lhs = apply_int(p, a.clone(), fresh.clone(), dummy_ty);
            let rhs = c2.apply(p, EnvItem::Tm(fresh));
            val_conv(p, lvl + 1, &lhs, &rhs)
        }
        (Val::LamExtLarge(c1), Val::LamExtLarge(c2))
        | (Val::LamExtSmall(c1), Val::LamExtSmall(c2)) => {
            let fresh = ExtVal::Var(lvl);
            val_conv(
                p,
                lvl + 1,
                &c1.apply(p, EnvItem::Ext(fresh.clone())),
                &c2.apply(p, EnvItem::Ext(fresh)),
            )
        }
        (Val::Top, Val::Top) | (Val::Tt, Val::Tt) | (Val::Refl, Val::Refl) => true,
        (Val::Sg(a1, b1), Val::Sg(a2, b2)) => {
            val_conv(p, lvl, a1, a2) && {
                let fresh = var_val(lvl, dummy_ty());
                val_conv(
                    p,
                    lvl + 1,
                    &b1.apply(p, EnvItem::Tm(fresh.clone())),
                    &b2.apply(p, EnvItem::Tm(fresh)),
                )
            }
        }
        (Val::Pair(x1, y1), Val::Pair(x2, y2)) => {
            val_conv(p, lvl, x1, x2) && val_conv(p, lvl, y1, y2)
        }
        (Val::IdSmall(a1, t1, u1), Val::IdSmall(a2, t2, u2)) => {
            val_conv(p, lvl, a1, a2) && val_conv(p, lvl, t1, t2) && val_conv(p, lvl, u1, u2)
        }
        (Val::PiSmallExt(e1, f1), Val::PiSmallExt(e2, f2)) => {
            e1 == e2 && {
                let fresh = ExtVal::Var(lvl);
                val_conv(
                    p,
                    lvl + 1,
                    &f1.apply(p, EnvItem::Ext(fresh.clone())),
                    &f2.apply(p, EnvItem::Ext(fresh)),
                )
            }
        }
        (Val::Ne(n1), Val::Ne(n2)) => neutral_conv(p, lvl, n1, n2),
        _ => false,
    }
}

fn neutral_conv(p: Profile, lvl: usize, a: &Neutral, b: &Neutral) -> bool {
    let heads = match (&a.head, &b.head) {
        (Head::Var(i), Head::Var(j)) => i == j,
        (Head::StuckLam(c1), Head::StuckLam(c2)) => {
            let fresh = var_val(lvl, dummy_ty());
            val_conv(
                p,
                lvl + 1,
                &c1.apply(p, EnvItem::Tm(fresh.clone())),
                &c2.apply(p, EnvItem::Tm(fresh)),
            )
        }
        (Head::StuckPair(x1, y1), Head::StuckPair(x2, y2)) => {
            val_conv(p, lvl, x1, x2) && val_conv(p, lvl, y1, y2)
        }
        (Head::StuckLamExtSmall(c1), Head::StuckLamExtSmall(c2)) => {
            let fresh = ExtVal::Var(lvl);
            val_conv(
                p,
                lvl + 1,
                &c1.apply(p, EnvItem::Ext(fresh.clone())),
                &c2.apply(p, EnvItem::Ext(fresh)),
            )
        }
        (Head::StuckJSmall(j1), Head::StuckJSmall(j2)) => {
            let f1 = var_val(lvl, dummy_ty());
            let f2 = var_val(lvl + 1, dummy_ty());
            tyval_conv(
                p,
                lvl + 2,
                &j1.motive
                    .apply2(p, EnvItem::Tm(f1.clone()), EnvItem::Tm(f2.clone())),
                &j2.motive.apply2(p, EnvItem::Tm(f1), EnvItem::Tm(f2)),
            ) && val_conv(p, lvl, &j1.pr, &j2.pr)
                && val_conv(p, lvl, &j1.path, &j2.path)
        }
        _ => false,
    };
    heads
        && a.spine.len() == b.spine.len()
        && a.spine
            .iter()
            .zip(&b.spine)
            .all(|(e1, e2)| elim_conv(p, lvl, e1, e2))
}

fn elim_conv(p: Profile, lvl: usize, a: &Elim, b: &Elim) -> bool {
    match (a, b) {
        (Elim::App(x), Elim::App(y)) => val_conv(p, lvl, x, y),
        (Elim::AppExt(x), Elim::AppExt(y)) => x == y,
        (Elim::Proj1, Elim::Proj1) | (Elim::Proj2, Elim::Proj2) => true,
        (
            Elim::JWeak {
                motive: m1,
                pr: p1,
            },
            Elim::JWeak {
                motive: m2,
                pr: p2,
            },
        ) => {
            let f1 = var_val(lvl, dummy_ty());
            let f2 = var_val(lvl + 1, dummy_ty());
            tyval_conv(
                p,
                lvl + 2,
                &m1.apply2(p, EnvItem::Tm(f1.clone()), EnvItem::Tm(f2.clone())),
                &m2.apply2(p, EnvItem::Tm(f1), EnvItem::Tm(f2)),
            ) && val_conv(p, lvl, p1, p2)
        }
        _ => false,
    }
}

pub fn tyval_conv(p: Profile, lvl: usize, a: &RcTyVal, b: &RcTyVal) -> bool {
    burn();
    match (&**a, &**b) {
        (TyVal::SIota, TyVal::SIota) | (TyVal::U, TyVal::U) => true,
        (TyVal::SArrow(x), TyVal::SArrow(y)) => tyval_conv(p, lvl, x, y),
        (TyVal::El(x), TyVal::El(y)) => val_conv(p, lvl, x, y),
        (TyVal::Pi(a1, b1), TyVal::Pi(a2, b2)) => {
            val_conv(p, lvl, a1, a2) && {
                let fresh = var_val(lvl, dummy_ty());
                tyval_conv(
                    p,
                    lvl + 1,
                    &b1.apply(p, EnvItem::Tm(fresh.clone())),
                    &b2.apply(p, EnvItem::Tm(fresh)),
                )
            }
        }
        (TyVal::PiExt(e1, b1), TyVal::PiExt(e2, b2)) => {
            e1 == e2 && {
                let fresh = ExtVal::Var(lvl);
                tyval_conv(
                    p,
                    lvl + 1,
                    &b1.apply(p, EnvItem::Ext(fresh.clone())),
                    &b2.apply(p, EnvItem::Ext(fresh)),
                )
            }
        }
        (TyVal::IdLarge(a1, t1, u1), TyVal::IdLarge(a2, t2, u2))
        | (TyVal::IdWeak(a1, t1, u1), TyVal::IdWeak(a2, t2, u2)) => {
            tyval_conv(p, lvl, a1, a2) && val_conv(p, lvl, t1, t2) && val_conv(p, lvl, u1, u2)
        }
        _ => false,
    }
}

// ---------------------------------------------------------------------------
// Readback
// ---------------------------------------------------------------------------

struct RbCx {
    ctx: Ctx,
}

impl RbCx {
    fn fresh_level(&self) -> usize {
        self.ctx.len()
    }

    fn push_ty(&self, ty: RcTy) -> RbCx {
        RbCx {
            ctx: self.ctx.push_ty("_", ty),
        }
    }

    fn push_ext(&self, e: ExternId) -> RbCx {
        RbCx {
            ctx: self.ctx.push_ext("_", e),
        }
    }
}

/// Full normalization: evaluate, then read the value back under the term's
/// own type. Idempotent on well-typed terms.
pub fn normalize(ctx: &Ctx, t: &RcTm) -> RcTm {
    let env = id_env(ctx);
    let v = eval_tm(ctx.profile, &env, t);
    let tyv = eval_ty(ctx.profile, &env, &t.ty);
    rb_tm(&RbCx { ctx: ctx.clone() }, &v, &tyv)
}

pub fn normalize_ty(ctx: &Ctx, a: &RcTy) -> RcTy {
    let env = id_env(ctx);
    let v = eval_ty(ctx.profile, &env, a);
    rb_ty(&RbCx { ctx: ctx.clone() }, &v)
}

fn rb_ty(cx: &RbCx, tyv: &RcTyVal) -> RcTy {
    let p = cx.ctx.profile;
    match &**tyv {
        TyVal::SIota => Rc::new(Ty::SIota),
        TyVal::SArrow(c) => Rc::new(Ty::SArrow(rb_ty(cx, c))),
        TyVal::U => Rc::new(Ty::U),
        TyVal::El(a) => Rc::new(Ty::El(rb_tm(cx, a, &Rc::new(TyVal::U)))),
        TyVal::Pi(a, b) => {
            let a_tm = rb_tm(cx, a, &Rc::new(TyVal::U));
            let binder = Rc::new(Ty::El(a_tm.clone()));
            let cx2 = cx.push_ty(binder);
            let fresh = var_val(cx.fresh_level(), Rc::new(TyVal::El(a.clone())));
            let cod = rb_ty(&cx2, &b.apply(p, EnvItem::Tm(fresh)));
            Rc::new(Ty::Pi(a_tm, cod))
        }
        TyVal::PiExt(e, b) => {
            let cx2 = cx.push_ext(*e);
            let fresh = ExtVal::Var(cx.fresh_level());
            let cod = rb_ty(&cx2, &b.apply(p, EnvItem::Ext(fresh)));
            Rc::new(Ty::PiExt(*e, cod))
        }
        TyVal::IdLarge(a, t, u) => {
            let a_ty = rb_ty(cx, a);
            Rc::new(Ty::IdLarge(a_ty, rb_tm(cx, t, a), rb_tm(cx, u, a)))
        }
        TyVal::IdWeak(a, t, u) => {
            let a_ty = rb_ty(cx, a);
            Rc::new(Ty::IdWeak(a_ty, rb_tm(cx, t, a), rb_tm(cx, u, a)))
        }
    }
}

fn rb_tm(cx: &RbCx, v: &RcVal, tyv: &RcTyVal) -> RcTm {
    let p = cx.ctx.profile;
    match &**tyv {
        TyVal::Pi(a, b) if p == Profile::Fqii => {
            // eta-expand at internal product types
            let a_tm = rb_tm(cx, a, &Rc::new(TyVal::U));
            let binder = Rc::new(Ty::El(a_tm.clone()));
            let cx2 = cx.push_ty(binder);
            let fresh = var_val(cx.fresh_level(), Rc::new(TyVal::El(a.clone())));
            let body_v = apply_int(p, v.clone(), fresh.clone(), || tyv.clone());
            let body = rb_tm(&cx2, &body_v, &b.apply(p, EnvItem::Tm(fresh)));
            tm(TmNode::Lam(body.clone()), Rc::new(Ty::Pi(a_tm, body.ty.clone())))
        }
        _ => match &**v {
            Val::Lam(cl) => {
                let (a, b) = match &**tyv {
                    TyVal::Pi(a, b) => (a, b),
                    _ => unreachable!("lambda at non-product type"),
                };
                let a_tm = rb_tm(cx, a, &Rc::new(TyVal::U));
                let binder = Rc::new(Ty::El(a_tm.clone()));
                let cx2 = cx.push_ty(binder);
                let fresh = var_val(cx.fresh_level(), Rc::new(TyVal::El(a.clone())));
                let body = rb_tm(
                    &cx2,
                    &cl.apply(p, EnvItem::Tm(fresh.clone())),
                    &b.apply(p, EnvItem::Tm(fresh)),
                );
                tm(TmNode::Lam(body.clone()), Rc::new(Ty::Pi(a_tm, body.ty.clone())))
            }
            Val::LamExtLarge(cl) => {
                let (e, b) = match &**tyv {
                    TyVal::PiExt(e, b) => (*e, b),
                    _ => unreachable!("external lambda at non-product type"),
                };
                let cx2 = cx.push_ext(e);
                let fresh = ExtVal::Var(cx.fresh_level());
                let body = rb_tm(
                    &cx2,
                    &cl.apply(p, EnvItem::Ext(fresh.clone())),
                    &b.apply(p, EnvItem::Ext(fresh)),
                );
                tm(
                    TmNode::LamExtLarge(body.clone()),
                    Rc::new(Ty::PiExt(e, body.ty.clone())),
                )
            }
            Val::LamExtSmall(cl) => {
                let (e, fam) = match &**tyv {
                    TyVal::El(hd) => match &**hd {
                        Val::PiSmallExt(e, fam) => (*e, fam),
                        _ => unreachable!("small external lambda type shape"),
                    },
                    _ => unreachable!("small external lambda type shape"),
                };
                let cx2 = cx.push_ext(e);
                let fresh = ExtVal::Var(cx.fresh_level());
                let body_fam = fam.apply(p, EnvItem::Ext(fresh.clone()));
                let body = rb_tm(
                    &cx2,
                    &cl.apply(p, EnvItem::Ext(fresh)),
                    &Rc::new(TyVal::El(body_fam)),
                );
                let fam_tm = match &*body.ty {
                    Ty::El(a) => a.clone(),
                    _ => unreachable!(),
                };
                let pse = tm(TmNode::PiSmallExt(e, fam_tm), Rc::new(Ty::U));
                tm(TmNode::LamExtSmall(body), Rc::new(Ty::El(pse)))
            }
            Val::Top => tm(TmNode::Top, Rc::new(Ty::U)),
            Val::Tt => {
                let top = tm(TmNode::Top, Rc::new(Ty::U));
                tm(TmNode::Tt, Rc::new(Ty::El(top)))
            }
            Val::Sg(a, bcl) => {
                let a_tm = rb_tm(cx, a, &Rc::new(TyVal::U));
                let binder = Rc::new(Ty::El(a_tm.clone()));
                let cx2 = cx.push_ty(binder);
                let fresh = var_val(cx.fresh_level(), Rc::new(TyVal::El(a.clone())));
                let b_tm = rb_tm(&cx2, &bcl.apply(p, EnvItem::Tm(fresh)), &Rc::new(TyVal::U));
                tm(TmNode::Sg(a_tm, b_tm), Rc::new(Ty::U))
            }
            Val::Pair(x, y) => {
                let (a, bcl) = match &**tyv {
                    TyVal::El(hd) => match &**hd {
                        Val::Sg(a, b) => (a.clone(), b.clone()),
                        _ => unreachable!("pair at non-sigma type"),
                    },
                    _ => unreachable!("pair at non-sigma type"),
                };
                let x_tm = rb_tm(cx, x, &Rc::new(TyVal::El(a.clone())));
                let y_ty = bcl.apply(p, EnvItem::Tm(x.clone()));
                let y_tm = rb_tm(cx, y, &Rc::new(TyVal::El(y_ty)));
                let sg_tm = rb_tm(cx, &Rc::new(Val::Sg(a, bcl)), &Rc::new(TyVal::U));
                tm(TmNode::Pair(x_tm, y_tm), Rc::new(Ty::El(sg_tm)))
            }
            Val::IdSmall(a, x, y) => {
                let elty = Rc::new(TyVal::El(a.clone()));
                tm(
                    TmNode::IdSmall(
                        rb_tm(cx, a, &Rc::new(TyVal::U)),
                        rb_tm(cx, x, &elty),
                        rb_tm(cx, y, &elty),
                    ),
                    Rc::new(Ty::U),
                )
            }
            Val::PiSmallExt(e, fam) => {
                let cx2 = cx.push_ext(*e);
                let fresh = ExtVal::Var(cx.fresh_level());
                let f_tm = rb_tm(&cx2, &fam.apply(p, EnvItem::Ext(fresh)), &Rc::new(TyVal::U));
                tm(TmNode::PiSmallExt(*e, f_tm), Rc::new(Ty::U))
            }
            Val::Refl => tm(TmNode::Refl, rb_ty(cx, tyv)),
            Val::Ne(ne) => rb_neutral(cx, ne),
        },
    }
}

fn rb_neutral(cx: &RbCx, ne: &Neutral) -> RcTm {
    let p = cx.ctx.profile;
    let (mut head_tm, mut cur_ty) = rb_head(cx, &ne.head, &ne.head_ty);
    // the value of the neutral rebuilt so far, needed by dependent elims
    let mut partial = Neutral {
        head: ne.head.clone(),
        head_ty: ne.head_ty.clone(),
        spine: Vec::new(),
    };
    for elim in &ne.spine {
        match elim {
            Elim::App(arg) => match &*cur_ty.clone() {
                TyVal::Pi(a, b) => {
                    let arg_tm = rb_tm(cx, arg, &Rc::new(TyVal::El(a.clone())));
                    cur_ty = b.apply(p, EnvItem::Tm(arg.clone()));
                    let res_ty = rb_ty(cx, &cur_ty);
                    head_tm = tm(TmNode::App(head_tm, arg_tm), res_ty);
                }
                TyVal::SArrow(c) => {
                    let arg_tm = rb_tm(cx, arg, &Rc::new(TyVal::SIota));
                    cur_ty = c.clone();
                    head_tm = tm(TmNode::App(head_tm, arg_tm), rb_ty(cx, &cur_ty));
                }
                other => unreachable!("application elim at {other:?}"),
            },
            Elim::AppExt(e) => {
                let e_arg = rb_extval(cx, e);
                match &*cur_ty.clone() {
                    TyVal::PiExt(_, b) => {
                        cur_ty = b.apply(p, EnvItem::Ext(e.clone()));
                        head_tm = tm(TmNode::AppExtLarge(head_tm, e_arg), rb_ty(cx, &cur_ty));
                    }
                    TyVal::El(hd) => match &**hd {
                        Val::PiSmallExt(_, fam) => {
                            let fam_v = fam.apply(p, EnvItem::Ext(e.clone()));
                            cur_ty = Rc::new(TyVal::El(fam_v));
                            head_tm = tm(TmNode::AppExtSmall(head_tm, e_arg), rb_ty(cx, &cur_ty));
                        }
                        other => unreachable!("external application elim at El {other:?}"),
                    },
                    other => unreachable!("external application elim at {other:?}"),
                }
            }
            Elim::Proj1 => {
                let (a, _) = sigma_parts(&cur_ty);
                cur_ty = Rc::new(TyVal::El(a));
                head_tm = tm(TmNode::Proj1(head_tm), rb_ty(cx, &cur_ty));
            }
            Elim::Proj2 => {
                let (_, bcl) = sigma_parts(&cur_ty);
                let mut fst = partial.clone();
                fst.spine.push(Elim::Proj1);
                let fst_v = Rc::new(Val::Ne(fst));
                cur_ty = Rc::new(TyVal::El(bcl.apply(p, EnvItem::Tm(fst_v))));
                head_tm = tm(TmNode::Proj2(head_tm), rb_ty(cx, &cur_ty));
            }
            Elim::JWeak { motive, pr } => {
                let (a, t, u) = match &*cur_ty.clone() {
                    TyVal::IdWeak(a, t, u) => (a.clone(), t.clone(), u.clone()),
                    other => unreachable!("J elim at {other:?}"),
                };
                let motive_tm = rb_jweak_motive(cx, motive, &a, &t);
                let refl_v = Rc::new(Val::Refl);
                let pr_ty =
                    motive.apply2(p, EnvItem::Tm(t.clone()), EnvItem::Tm(refl_v));
                let pr_tm = rb_tm(cx, pr, &pr_ty);
                let path_v = Rc::new(Val::Ne(partial.clone()));
                cur_ty = motive.apply2(p, EnvItem::Tm(u), EnvItem::Tm(path_v));
                head_tm = tm(
                    TmNode::JWeak(motive_tm, pr_tm, head_tm),
                    rb_ty(cx, &cur_ty),
                );
            }
        }
        partial.spine.push(elim.clone());
    }
    head_tm
}

fn sigma_parts(tyv: &RcTyVal) -> (RcVal, Closure) {
    match &**tyv {
        TyVal::El(hd) => match &**hd {
            Val::Sg(a, b) => (a.clone(), b.clone()),
            other => unreachable!("projection elim at El {other:?}"),
        },
        other => unreachable!("projection elim at {other:?}"),
    }
}

fn rb_jweak_motive(cx: &RbCx, motive: &TyClosure2, a: &RcTyVal, t: &RcVal) -> RcTy {
    let p = cx.ctx.profile;
    let a_ty = rb_ty(cx, a);
    let t_tm = rb_tm(cx, t, a);
    let cx1 = cx.push_ty(a_ty.clone());
    let fresh_u = var_val(cx.fresh_level(), a.clone());
    let a_up = subst::shift_ty(&a_ty, 1, 0);
    let t_up = subst::shift_tm(&t_tm, 1, 0);
    let q0 = tm(TmNode::Var(0), a_up.clone());
    let id_ty = Rc::new(Ty::IdWeak(a_up, t_up, q0));
    let cx2 = cx1.push_ty(id_ty);
    let fresh_p = var_val(
        cx1.fresh_level(),
        Rc::new(TyVal::IdWeak(a.clone(), t.clone(), fresh_u.clone())),
    );
    let body = motive.apply2(p, EnvItem::Tm(fresh_u), EnvItem::Tm(fresh_p));
    rb_ty(&cx2, &body)
}

fn rb_head(cx: &RbCx, head: &Head, head_ty: &RcTyVal) -> (RcTm, RcTyVal) {
    let p = cx.ctx.profile;
    match head {
        Head::Var(level) => {
            let ix = cx.ctx.len() - 1 - level;
            let ty = cx
                .ctx
                .lookup_ty(ix)
                .unwrap_or_else(|e| unreachable!("readback variable: {e}"));
            (tm(TmNode::Var(ix), ty), head_ty.clone())
        }
        Head::StuckLam(cl) => {
            let (a, b) = match &**head_ty {
                TyVal::Pi(a, b) => (a.clone(), b.clone()),
                other => unreachable!("stuck lambda at {other:?}"),
            };
            let a_tm = rb_tm(cx, &a, &Rc::new(TyVal::U));
            let binder = Rc::new(Ty::El(a_tm.clone()));
            let cx2 = cx.push_ty(binder);
            let fresh = var_val(cx.fresh_level(), Rc::new(TyVal::El(a.clone())));
            let body = rb_tm(
                &cx2,
                &cl.apply(p, EnvItem::Tm(fresh.clone())),
                &b.apply(p, EnvItem::Tm(fresh)),
            );
            (
                tm(TmNode::Lam(body.clone()), Rc::new(Ty::Pi(a_tm, body.ty.clone()))),
                head_ty.clone(),
            )
        }
        Head::StuckPair(x, y) => {
            let v = Rc::new(Val::Pair(x.clone(), y.clone()));
            (rb_tm(cx, &v, head_ty), head_ty.clone())
        }
        Head::StuckLamExtSmall(cl) => {
            let v = Rc::new(Val::LamExtSmall(cl.clone()));
            (rb_tm(cx, &v, head_ty), head_ty.clone())
        }
        Head::StuckJSmall(data) => {
            let (a_small, t, u) = match &*data.path_ty {
                TyVal::El(hd) => match &**hd {
                    Val::IdSmall(a, t, u) => (a.clone(), t.clone(), u.clone()),
                    other => unreachable!("small J path at El {other:?}"),
                },
                other => unreachable!("small J path at {other:?}"),
            };
            let a_tm = rb_tm(cx, &a_small, &Rc::new(TyVal::U));
            let el_a = Rc::new(Ty::El(a_tm.clone()));
            let t_tm = rb_tm(cx, &t, &Rc::new(TyVal::El(a_small.clone())));
            let cx1 = cx.push_ty(el_a.clone());
            let fresh_u = var_val(cx.fresh_level(), Rc::new(TyVal::El(a_small.clone())));
            let a_up = subst::shift_tm(&a_tm, 1, 0);
            let t_up = subst::shift_tm(&t_tm, 1, 0);
            let q0 = tm(TmNode::Var(0), Rc::new(Ty::El(a_up.clone())));
            let id_tm = tm(TmNode::IdSmall(a_up, t_up, q0), Rc::new(Ty::U));
            let cx2 = cx1.push_ty(Rc::new(Ty::El(id_tm)));
            let fresh_p = var_val(
                cx1.fresh_level(),
                Rc::new(TyVal::El(Rc::new(Val::IdSmall(
                    a_small.clone(),
                    t.clone(),
                    fresh_u.clone(),
                )))),
            );
            let motive_tm = rb_ty(
                &cx2,
                &data.motive.apply2(p, EnvItem::Tm(fresh_u), EnvItem::Tm(fresh_p)),
            );
            let refl_v = Rc::new(Val::Refl);
            let pr_ty = data
                .motive
                .apply2(p, EnvItem::Tm(t.clone()), EnvItem::Tm(refl_v));
            let pr_tm = rb_tm(cx, &data.pr, &pr_ty);
            let path_tm = rb_tm(cx, &data.path, &data.path_ty);
            let res_ty = data
                .motive
                .apply2(p, EnvItem::Tm(u), EnvItem::Tm(data.path.clone()));
            (
                tm(
                    TmNode::JSmall(motive_tm, pr_tm, path_tm),
                    rb_ty(cx, &res_ty),
                ),
                head_ty.clone(),
            )
        }
    }
}

fn rb_extval(cx: &RbCx, e: &ExtVal) -> ExtArg {
    match e {
        ExtVal::Var(level) => ExtArg::Var(cx.ctx.len() - 1 - level),
        ExtVal::Cst(id, args) => {
            ExtArg::Cst(*id, args.iter().map(|a| rb_extval(cx, a)).collect())
        }
    }
}
