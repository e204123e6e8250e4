//! Shared test support: seeded random generation of well-typed contexts,
//! terms and substitutions, and an independent nameful substitution oracle.
//! Everything is built through the checked builder API, so a generator bug
//! fails loudly instead of producing ill-typed syntax.

#![allow(dead_code)]

use std::rc::Rc;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use sigforge::tos::{
    nbe, syntax::tms, syntax::ty as tyf, Binder, Ctx, ExternTable, Profile, RcTm, RcTy, Sub,
    SubItem, Ty, TmNode,
};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

// ---------------------------------------------------------------------------
// Simple-profile generation
// ---------------------------------------------------------------------------

/// A random simple signature: entry 0 is always nullary so every sort is
/// inhabited; arities up to 3.
pub fn gen_simple_ctx(r: &mut StdRng, max_entries: usize) -> Ctx {
    let mut ctx = Ctx::new(Profile::Simple, Rc::new(ExternTable::default()));
    let n = r.gen_range(1..=max_entries.max(1));
    for i in 0..n {
        let arity = if i == 0 { 0 } else { r.gen_range(0..=3) };
        let mut ty = tyf::siota(&ctx).unwrap();
        for _ in 0..arity {
            ty = tyf::sarrow(&ctx, ty).unwrap();
        }
        ctx = ctx.push_ty(format!("c{i}"), ty);
    }
    ctx
}

fn arity_of(ty: &Ty) -> usize {
    match ty {
        Ty::SArrow(c) => 1 + arity_of(c),
        _ => 0,
    }
}

/// A random closed-in-context term of type iota.
pub fn gen_simple_tm(r: &mut StdRng, ctx: &Ctx, depth: usize) -> RcTm {
    let n = ctx.len();
    let pick = loop {
        let ix = r.gen_range(0..n);
        let ar = match &ctx.entry_by_index(ix).unwrap().binder {
            Binder::Ty(t) => arity_of(t),
            Binder::Ext(_) => continue,
        };
        if depth == 0 && ar > 0 {
            // force a leaf
            if let Some(leaf) = (0..n).find(|i| {
                matches!(&ctx.entry_by_index(*i).unwrap().binder, Binder::Ty(t) if arity_of(t) == 0)
            }) {
                break (leaf, 0);
            }
        }
        break (ix, ar);
    };
    let (ix, ar) = pick;
    let mut t = tms::var(ctx, ix).unwrap();
    for _ in 0..ar {
        let arg = gen_simple_tm(r, ctx, depth.saturating_sub(1));
        t = tms::app(ctx, t, arg).unwrap();
    }
    t
}

/// A random substitution between two random simple contexts: every entry
/// of `delta` is mapped to a term of the same arity over `gamma`, built by
/// wrapping a partial application (simple terms have no lambdas, so images
/// of arrow-typed entries are eta-short partial applications).
pub fn gen_simple_sub(r: &mut StdRng, gamma: &Ctx, delta: &Ctx) -> Option<Sub> {
    let mut items = Vec::new();
    for entry in delta.entries() {
        let want = match &entry.binder {
            Binder::Ty(t) => arity_of(t),
            Binder::Ext(_) => return None,
        };
        let candidates: Vec<usize> = (0..gamma.len())
            .filter(|ix| {
                matches!(&gamma.entry_by_index(*ix).unwrap().binder,
                    Binder::Ty(t) if arity_of(t) >= want)
            })
            .collect();
        let ix = *pick(r, &candidates)?;
        let have = match &gamma.entry_by_index(ix).unwrap().binder {
            Binder::Ty(t) => arity_of(t),
            _ => unreachable!(),
        };
        let mut t = tms::var(gamma, ix).unwrap();
        for _ in 0..(have - want) {
            let arg = gen_simple_tm(r, gamma, 2);
            t = tms::app(gamma, t, arg).unwrap();
        }
        items.push(SubItem::Tm(t));
    }
    Some(Sub { items })
}

fn pick<'a, T>(r: &mut StdRng, xs: &'a [T]) -> Option<&'a T> {
    if xs.is_empty() {
        None
    } else {
        Some(&xs[r.gen_range(0..xs.len())])
    }
}

// ---------------------------------------------------------------------------
// Fqii-profile generation
// ---------------------------------------------------------------------------

/// A random fqii signature built from sorts (`U`), points (`El s`) and
/// operations (non-dependent product chains over sorts ending in a point).
/// Entry 0 is a sort and entry 1 a point of it, so terms always exist.
pub fn gen_fqii_ctx(r: &mut StdRng, max_entries: usize) -> Ctx {
    gen_dep_ctx(r, max_entries, Profile::Fqii)
}

/// The same shapes are legal in every dependent profile.
pub fn gen_dep_ctx(r: &mut StdRng, max_entries: usize, profile: Profile) -> Ctx {
    let mut ctx = Ctx::new(profile, Rc::new(ExternTable::default()));
    ctx = ctx.push_ty("S0", tyf::u(&ctx).unwrap());
    let s0 = tms::var(&ctx, 0).unwrap();
    ctx = ctx.push_ty("p0", tyf::el(&ctx, s0).unwrap());
    let extra = r.gen_range(0..=max_entries);
    for i in 0..extra {
        let sorts: Vec<usize> = sort_vars(&ctx);
        let choice = r.gen_range(0..12);
        if choice >= 10 {
            // an equation between two terms of a common random sort
            let s = *pick(r, &sorts).unwrap();
            let target = tms::var(&ctx, s).unwrap();
            let (Some(t), Some(u)) = (
                gen_fqii_tm(r, &ctx, &target, 2),
                gen_fqii_tm(r, &ctx, &target, 2),
            ) else {
                continue;
            };
            let eq_ty = match profile {
                Profile::Fqii => tyf::id_large(&ctx, t, u).ok(),
                Profile::HiitStrict | Profile::HiitWeak => tms::id_small(&ctx, t, u)
                    .ok()
                    .and_then(|id| tyf::el(&ctx, id).ok()),
                Profile::Simple => None,
            };
            if let Some(ty) = eq_ty {
                ctx = ctx.push_ty(format!("e{}", i + 1), ty);
            }
            continue;
        }
        if choice < 3 {
            ctx = ctx.push_ty(format!("S{}", i + 1), tyf::u(&ctx).unwrap());
        } else if choice < 6 {
            let s = *pick(r, &sorts).unwrap();
            let sv = tms::var(&ctx, s).unwrap();
            ctx = ctx.push_ty(format!("p{}", i + 1), tyf::el(&ctx, sv).unwrap());
        } else {
            // an operation: dom sorts d1..dk, cod sort s
            let k = r.gen_range(1..=2);
            let cod_pick = *pick(r, &sorts).unwrap();
            let mut doms = Vec::new();
            for _ in 0..k {
                doms.push(*pick(r, &sorts).unwrap());
            }
            // build Pi(d1, Pi(d2, El cod)) inside out with index shifting
            let mut inner_ctx = ctx.clone();
            let mut dom_tms = Vec::new();
            for (j, d) in doms.iter().enumerate() {
                let dv = tms::var(&inner_ctx, d + j).unwrap();
                dom_tms.push(dv.clone());
                inner_ctx = inner_ctx.push_ty("_", Rc::new(Ty::El(dv)));
            }
            let cod_v = tms::var(&inner_ctx, cod_pick + k).unwrap();
            let mut ty = tyf::el(&inner_ctx, cod_v).unwrap();
            for j in (0..k).rev() {
                let mut outer = ctx.clone();
                for (jj, dv) in dom_tms.iter().enumerate().take(j) {
                    let _ = jj;
                    outer = outer.push_ty("_", Rc::new(Ty::El(dv.clone())));
                }
                ty = tyf::pi(&outer, dom_tms[j].clone(), ty).unwrap();
            }
            ctx = ctx.push_ty(format!("f{}", i + 1), ty);
        }
    }
    ctx
}

/// A random simple entry type (an arity).
pub fn gen_simple_entry_ty(r: &mut StdRng, ctx: &Ctx) -> RcTy {
    let arity = r.gen_range(0..=3);
    let mut ty = tyf::siota(ctx).unwrap();
    for _ in 0..arity {
        ty = tyf::sarrow(ctx, ty).unwrap();
    }
    ty
}

/// A random fqii entry type over the whole context: a sort, a point of a
/// random sort, or an operation over random sorts.
pub fn gen_fqii_entry_ty(r: &mut StdRng, ctx: &Ctx) -> RcTy {
    let sorts = sort_vars(ctx);
    let choice = r.gen_range(0..10);
    if choice < 2 || sorts.is_empty() {
        return tyf::u(ctx).unwrap();
    }
    if choice < 5 {
        let s = *pick(r, &sorts).unwrap();
        let sv = tms::var(ctx, s).unwrap();
        return tyf::el(ctx, sv).unwrap();
    }
    let k = r.gen_range(1..=2);
    let cod_pick = *pick(r, &sorts).unwrap();
    let mut doms = Vec::new();
    for _ in 0..k {
        doms.push(*pick(r, &sorts).unwrap());
    }
    let mut inner_ctx = ctx.clone();
    let mut dom_tms = Vec::new();
    for (j, d) in doms.iter().enumerate() {
        let dv = tms::var(&inner_ctx, d + j).unwrap();
        dom_tms.push(dv.clone());
        inner_ctx = inner_ctx.push_ty("_", Rc::new(Ty::El(dv)));
    }
    let cod_v = tms::var(&inner_ctx, cod_pick + k).unwrap();
    let mut ty = tyf::el(&inner_ctx, cod_v).unwrap();
    for j in (0..k).rev() {
        let mut outer = ctx.clone();
        for dv in dom_tms.iter().take(j) {
            outer = outer.push_ty("_", Rc::new(Ty::El(dv.clone())));
        }
        ty = tyf::pi(&outer, dom_tms[j].clone(), ty).unwrap();
    }
    ty
}

/// Indices of entries of type `U`.
pub fn sort_vars(ctx: &Ctx) -> Vec<usize> {
    (0..ctx.len())
        .filter(|ix| {
            matches!(&ctx.entry_by_index(*ix).unwrap().binder, Binder::Ty(t) if matches!(&**t, Ty::U))
        })
        .collect()
}

/// A random term of type `El target` over `ctx` (target a term of `U`).
/// Backtracks over entry heads; `None` when the sort is uninhabited within
/// the depth budget.
pub fn gen_fqii_tm(r: &mut StdRng, ctx: &Ctx, target: &RcTm, depth: usize) -> Option<RcTm> {
    let want = Rc::new(Ty::El(target.clone()));
    let mut order: Vec<usize> = (0..ctx.len()).collect();
    for i in (1..order.len()).rev() {
        order.swap(i, r.gen_range(0..=i));
    }
    for ix in order {
        let entry_ty = match &ctx.entry_by_index(ix).unwrap().binder {
            Binder::Ty(t) => t.clone(),
            Binder::Ext(_) => continue,
        };
        if let Some(t) = try_head(r, ctx, ix, &entry_ty, &want, depth) {
            return Some(t);
        }
    }
    None
}

fn try_head(
    r: &mut StdRng,
    ctx: &Ctx,
    ix: usize,
    entry_ty: &RcTy,
    want: &RcTy,
    depth: usize,
) -> Option<RcTm> {
    match &**entry_ty {
        Ty::El(_) => {
            let head = tms::var(ctx, ix).unwrap();
            if nbe::conv_ty(ctx, &head.ty, want) {
                Some(head)
            } else {
                None
            }
        }
        Ty::Pi(_, _) => {
            if depth == 0 {
                return None;
            }
            let mut t = tms::var(ctx, ix).unwrap();
            for _ in 0..4 {
                match &*t.ty.clone() {
                    Ty::Pi(dom, _) => {
                        let arg = gen_fqii_tm(r, ctx, dom, depth - 1)?;
                        t = tms::app(ctx, t, arg).unwrap();
                    }
                    _ => break,
                }
            }
            if nbe::conv_ty(ctx, &t.ty, want) {
                Some(t)
            } else {
                None
            }
        }
        _ => None,
    }
}

/// A random substitution between two random fqii contexts. Sort entries
/// map to sorts of `gamma`; points and operations map to terms of the
/// substituted type (operations via lambdas).
pub fn gen_fqii_sub(r: &mut StdRng, gamma: &Ctx, delta: &Ctx) -> Option<Sub> {
    let mut sub = Sub { items: Vec::new() };
    for (j, entry) in delta.entries().iter().enumerate() {
        let _ = j;
        let image_ty = match &entry.binder {
            Binder::Ty(t) => sigforge::tos::subst::subst_ty(t, &sub),
            Binder::Ext(_) => return None,
        };
        let image = gen_tm_of_type(r, gamma, &image_ty, 3)?;
        sub.items.push(SubItem::Tm(image));
    }
    Some(sub)
}

/// A random well-typed term of an arbitrary (sort/point/operation) type.
pub fn gen_tm_of_type(r: &mut StdRng, ctx: &Ctx, ty: &RcTy, depth: usize) -> Option<RcTm> {
    match &**ty {
        Ty::U => {
            let sorts = sort_vars(ctx);
            let s = *pick(r, &sorts)?;
            Some(tms::var(ctx, s).unwrap())
        }
        Ty::El(target) => gen_fqii_tm(r, ctx, target, depth),
        Ty::Pi(dom, cod) => {
            let ctx2 = ctx.push_ty("_", Rc::new(Ty::El(dom.clone())));
            let body = gen_tm_of_type(r, &ctx2, cod, depth)?;
            Some(tms::lam(ctx, dom.clone(), body).unwrap())
        }
        _ => None,
    }
}

// ---------------------------------------------------------------------------
// Independent nameful substitution oracle
// ---------------------------------------------------------------------------

/// Nameful lambda terms for the capture-avoiding oracle. Only the shapes
/// produced by the fqii generator are needed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Named {
    Var(String),
    App(Box<Named>, Box<Named>),
    Lam(String, Box<Named>),
}

pub fn to_named(ctx_names: &[String], t: &RcTm) -> Named {
    fn go(names: &mut Vec<String>, fresh: &mut usize, t: &RcTm) -> Named {
        match &t.node {
            TmNode::Var(ix) => Named::Var(names[names.len() - 1 - ix].clone()),
            TmNode::App(f, a) => Named::App(
                Box::new(go(names, fresh, f)),
                Box::new(go(names, fresh, a)),
            ),
            TmNode::Lam(b) => {
                let name = format!("v{}", *fresh);
                *fresh += 1;
                names.push(name.clone());
                let body = go(names, fresh, b);
                names.pop();
                Named::Lam(name, Box::new(body))
            }
            other => panic!("oracle handles var/app/lam shapes only, got {other:?}"),
        }
    }
    let mut names = ctx_names.to_vec();
    let mut fresh = 0usize;
    go(&mut names, &mut fresh, t)
}

fn free_vars(t: &Named, acc: &mut Vec<String>) {
    match t {
        Named::Var(x) => {
            if !acc.contains(x) {
                acc.push(x.clone());
            }
        }
        Named::App(f, a) => {
            free_vars(f, acc);
            free_vars(a, acc);
        }
        Named::Lam(x, b) => {
            let mut inner = Vec::new();
            free_vars(b, &mut inner);
            for v in inner {
                if v != *x && !acc.contains(&v) {
                    acc.push(v);
                }
            }
        }
    }
}

/// Naive capture-avoiding single substitution `t[x := u]`, renaming bound
/// variables that would capture free variables of `u`.
pub fn named_subst(t: &Named, x: &str, u: &Named, fresh: &mut usize) -> Named {
    match t {
        Named::Var(y) => {
            if y == x {
                u.clone()
            } else {
                t.clone()
            }
        }
        Named::App(f, a) => Named::App(
            Box::new(named_subst(f, x, u, fresh)),
            Box::new(named_subst(a, x, u, fresh)),
        ),
        Named::Lam(y, b) => {
            if y == x {
                return t.clone();
            }
            let mut fv = Vec::new();
            free_vars(u, &mut fv);
            if fv.contains(y) {
                let y2 = loop {
                    let cand = format!("r{}", *fresh);
                    *fresh += 1;
                    if !fv.contains(&cand) {
                        break cand;
                    }
                };
                let renamed = named_subst(b, y, &Named::Var(y2.clone()), fresh);
                Named::Lam(y2, Box::new(named_subst(&renamed, x, u, fresh)))
            } else {
                Named::Lam(y.clone(), Box::new(named_subst(b, x, u, fresh)))
            }
        }
    }
}

/// Alpha equality of nameful terms.
pub fn named_alpha_eq(a: &Named, b: &Named) -> bool {
    fn go(a: &Named, b: &Named, pairs: &mut Vec<(String, String)>) -> bool {
        match (a, b) {
            (Named::Var(x), Named::Var(y)) => {
                for (l, r) in pairs.iter().rev() {
                    if l == x || r == y {
                        return l == x && r == y;
                    }
                }
                x == y
            }
            (Named::App(f1, a1), Named::App(f2, a2)) => {
                go(f1, f2, pairs) && go(a1, a2, pairs)
            }
            (Named::Lam(x, b1), Named::Lam(y, b2)) => {
                pairs.push((x.clone(), y.clone()));
                let ok = go(b1, b2, pairs);
                pairs.pop();
                ok
            }
            _ => false,
        }
    }
    go(a, b, &mut Vec::new())
}

pub fn ctx_names(ctx: &Ctx) -> Vec<String> {
    ctx.entries().iter().map(|e| e.name.clone()).collect()
}
