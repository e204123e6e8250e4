//! Per-former clause tables for the four interpretations, one set per
//! profile family: the simple tables, the fqii tables (strict equality
//! everywhere), the strict hiit tables (strict morphism/section equations,
//! paths for identity data), and the weak hiit tables (paths everywhere,
//! with the transports and path inductions that make them well-typed).
//!
//! Emission is in plain de Bruijn index world. Environment components are
//! stored as captures `(term, depth-at-capture)` and shifted on read, so a
//! component built outside a binder stays valid inside it.

use super::{u_sort, InterpKind};
use crate::inner::{rc, shift, subst1, ITm, RcITm};
use crate::tos::{Ctx, ExtArg, Profile, RcTm, RcTy, TmNode, Ty};

#[derive(Debug, Clone)]
pub struct Unsupported(pub String);

type Res = Result<RcITm, Unsupported>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A term captured at a binder depth; reading it at a deeper point shifts
/// its free variables accordingly.
#[derive(Debug, Clone)]
pub struct Cap {
    t: RcITm,
    at: usize,
}

#[derive(Debug, Clone, Default)]
struct TmSlots {
    a0: Option<Cap>,
    a1: Option<Cap>,
    m: Option<Cap>,
    d: Option<Cap>,
    s: Option<Cap>,
}

#[derive(Debug, Clone)]
enum Slot {
    Ext(Cap),
    Tm(TmSlots),
}

pub struct Cx {
    profile: Profile,
    depth: usize,
    binder_counter: usize,
    tos: Vec<Slot>,
    carriers: Vec<(&'static str, Cap)>,
}

impl Cx {
    pub fn new(ctx: &Ctx) -> Cx {
        Cx {
            profile: ctx.profile,
            depth: 0,
            binder_counter: 0,
            tos: Vec::new(),
            carriers: Vec::new(),
        }
    }

    fn read(&self, c: &Cap) -> RcITm {
        shift(&c.t, self.depth - c.at, 0)
    }

    fn cap(&self, t: RcITm) -> Cap {
        Cap { t, at: self.depth }
    }

    /// Captures a term built at the current depth (test support).
    pub fn cap_here(&self, t: RcITm) -> Cap {
        self.cap(t)
    }

    /// Allocates one telescope binder; the returned capture is its
    /// variable, valid at any deeper point.
    pub fn bind(&mut self) -> Cap {
        self.depth += 1;
        Cap {
            t: rc(ITm::Var(0)),
            at: self.depth,
        }
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn push_a0(&mut self, v: Cap) {
        self.tos.push(Slot::Tm(TmSlots {
            a0: Some(v),
            ..TmSlots::default()
        }));
    }

    pub fn push_ext_slot(&mut self, v: Cap) {
        self.tos.push(Slot::Ext(v));
    }

    pub fn set_a1(&mut self, i: usize, v: Cap) {
        if let Slot::Tm(sl) = &mut self.tos[i] {
            sl.a1 = Some(v);
        }
    }

    pub fn set_m(&mut self, i: usize, v: Cap) {
        if let Slot::Tm(sl) = &mut self.tos[i] {
            sl.m = Some(v);
        }
    }

    pub fn set_d(&mut self, i: usize, v: Cap) {
        if let Slot::Tm(sl) = &mut self.tos[i] {
            sl.d = Some(v);
        }
    }

    pub fn set_s(&mut self, i: usize, v: Cap) {
        if let Slot::Tm(sl) = &mut self.tos[i] {
            sl.s = Some(v);
        }
    }

    pub fn d_cap(&self, i: usize) -> Cap {
        match &self.tos[i] {
            Slot::Tm(sl) => sl.d.clone().expect("displayed slot"),
            Slot::Ext(_) => unreachable!(),
        }
    }

    pub fn set_carrier(&mut self, tag: &'static str, v: Cap) {
        self.carriers.retain(|(t, _)| *t != tag);
        self.carriers.push((tag, v));
    }

    /// Reads a simple-profile carrier at the current depth.
    pub fn carrier_read(&self, tag: &str) -> RcITm {
        self.carrier(tag)
    }

    fn carrier(&self, tag: &str) -> RcITm {
        let c = self
            .carriers
            .iter()
            .find(|(t, _)| *t == tag)
            .map(|(_, v)| v.clone())
            .expect("carrier slot");
        self.read(&c)
    }

    fn carrier_tag(side: Side) -> &'static str {
        match side {
            Side::Left => "",
            Side::Right => "1c",
        }
    }

    fn fresh_name(&mut self, base: &str) -> String {
        self.binder_counter += 1;
        if self.binder_counter == 1 {
            base.to_string()
        } else {
            format!("{base}{}", self.binder_counter)
        }
    }

    pub fn reset_names(&mut self) {
        self.binder_counter = 0;
    }

    // binder helpers -------------------------------------------------------

    fn under<T>(
        &mut self,
        f: impl FnOnce(&mut Self, Cap) -> Result<T, Unsupported>,
    ) -> Result<T, Unsupported> {
        self.depth += 1;
        let v = Cap {
            t: rc(ITm::Var(0)),
            at: self.depth,
        };
        let out = f(self, v);
        self.depth -= 1;
        out
    }

    fn pi(&mut self, name: String, dom: RcITm, f: impl FnOnce(&mut Self, Cap) -> Res) -> Res {
        let body = self.under(f)?;
        Ok(rc(ITm::Pi(name, dom, body)))
    }

    fn lam(&mut self, name: String, dom: RcITm, f: impl FnOnce(&mut Self, Cap) -> Res) -> Res {
        let body = self.under(f)?;
        Ok(rc(ITm::Lam(name, dom, body)))
    }

    fn sg(&mut self, name: String, dom: RcITm, f: impl FnOnce(&mut Self, Cap) -> Res) -> Res {
        let body = self.under(f)?;
        Ok(rc(ITm::Sg(name, dom, body)))
    }

    /// A two-argument lambda (the shape of motives for path induction).
    fn lam2(
        &mut self,
        n1: String,
        dom1: RcITm,
        mk_dom2: impl FnOnce(&mut Self, &Cap) -> Res,
        f: impl FnOnce(&mut Self, Cap, Cap) -> Res,
    ) -> Res {
        self.lam(n1, dom1, |cx, v1| {
            let dom2 = mk_dom2(cx, &v1)?;
            cx.lam("q".into(), dom2, |cx, v2| f(cx, v1, v2))
        })
    }

    fn with_slot<T>(
        &mut self,
        slot: Slot,
        f: impl FnOnce(&mut Self) -> Result<T, Unsupported>,
    ) -> Result<T, Unsupported> {
        self.tos.push(slot);
        let out = f(self);
        self.tos.pop();
        out
    }

    fn with_slots<T>(
        &mut self,
        s1: Slot,
        s2: Slot,
        f: impl FnOnce(&mut Self) -> Result<T, Unsupported>,
    ) -> Result<T, Unsupported> {
        self.tos.push(s1);
        self.tos.push(s2);
        let out = f(self);
        self.tos.pop();
        self.tos.pop();
        out
    }

    fn slot(&self, ix: usize) -> &Slot {
        &self.tos[self.tos.len() - 1 - ix]
    }

    fn tm_slot(&self, ix: usize) -> TmSlots {
        match self.slot(ix) {
            Slot::Tm(sl) => sl.clone(),
            Slot::Ext(_) => unreachable!("term variable at an external slot"),
        }
    }

    // equality selection ----------------------------------------------------

    fn strict_eqs(&self) -> bool {
        matches!(self.profile, Profile::Fqii | Profile::HiitStrict)
    }

    fn eq(&self, ann: RcITm, lhs: RcITm, rhs: RcITm) -> RcITm {
        if self.strict_eqs() {
            rc(ITm::StrictEq(ann, lhs, rhs))
        } else {
            rc(ITm::Path(ann, lhs, rhs))
        }
    }

    fn eq_refl(&self, ty: RcITm, tm: RcITm) -> RcITm {
        rc(ITm::Refl {
            strict: self.strict_eqs(),
            ty,
            tm,
        })
    }

    fn ext_arg(&self, e: &ExtArg) -> RcITm {
        match e {
            ExtArg::Var(ix) => match self.slot(*ix) {
                Slot::Ext(v) => self.read(v),
                Slot::Tm(_) => unreachable!("external argument at a term slot"),
            },
            ExtArg::Cst(id, args) => args
                .iter()
                .fold(rc(ITm::Ext(*id)), |f, a| mk_app(f, self.ext_arg(a))),
        }
    }
}

fn prefl(ty: RcITm, tm: RcITm) -> RcITm {
    rc(ITm::Refl {
        strict: false,
        ty,
        tm,
    })
}

// smart constructors: definitional reductions applied at build time so the
// emitted types read like the computed examples

pub(crate) fn mk_app(f: RcITm, a: RcITm) -> RcITm {
    if let ITm::Lam(_, _, body) = &*f {
        return subst1(body, &a);
    }
    rc(ITm::App(f, a))
}

fn mk_tr(motive: RcITm, path: RcITm, point: RcITm) -> RcITm {
    if matches!(&*path, ITm::Refl { .. }) {
        return point;
    }
    rc(ITm::Tr { motive, path, point })
}

fn mk_j(motive: RcITm, pr: RcITm, path: RcITm) -> RcITm {
    if matches!(&*path, ITm::Refl { .. }) {
        return pr;
    }
    rc(ITm::J { motive, pr, path })
}

fn mk_comp(p: RcITm, q: RcITm) -> RcITm {
    if matches!(&*p, ITm::Refl { .. }) {
        return q;
    }
    if matches!(&*q, ITm::Refl { .. }) {
        return p;
    }
    rc(ITm::Comp(p, q))
}

fn mk_inv(p: RcITm) -> RcITm {
    if matches!(&*p, ITm::Refl { .. }) {
        return p;
    }
    rc(ITm::Inv(p))
}

// ---------------------------------------------------------------------------
// Public entry points
// ---------------------------------------------------------------------------

impl Cx {
    /// Runs `f` with only the first `prefix` entry slots visible, so that
    /// an entry's type resolves its variables against its own prefix.
    fn with_prefix<T>(
        &mut self,
        prefix: usize,
        f: impl FnOnce(&mut Self) -> Result<T, Unsupported>,
    ) -> Result<T, Unsupported> {
        let tail = self.tos.split_off(prefix);
        let out = f(self);
        self.tos.extend(tail);
        out
    }

    pub fn entry_ty_a(&mut self, i: usize, ty: &RcTy, side: Side) -> Res {
        self.reset_names();
        self.with_prefix(i, |cx| cx.ty_a(ty, side))
    }

    pub fn entry_ty_m(&mut self, i: usize, ty: &RcTy, p0: &Cap, p1: &Cap) -> Res {
        self.reset_names();
        let p0 = self.read(p0);
        let p1 = self.read(p1);
        self.with_prefix(i, |cx| cx.ty_m(ty, p0, p1))
    }

    pub fn entry_ty_d(&mut self, i: usize, ty: &RcTy, p: &Cap) -> Res {
        self.reset_names();
        let p = self.read(p);
        self.with_prefix(i, |cx| cx.ty_d(ty, p))
    }

    pub fn entry_ty_s(&mut self, i: usize, ty: &RcTy, p: &Cap, pd: &Cap) -> Res {
        self.reset_names();
        let p = self.read(p);
        let pd = self.read(pd);
        self.with_prefix(i, |cx| cx.ty_s(ty, p, pd))
    }

    /// Standalone interpretation of a type at the current environment, for
    /// the table-exhaustiveness tests. Points are given at current depth.
    pub fn interp_ty(&mut self, kind: InterpKind, ty: &RcTy, points: &[RcITm]) -> Res {
        match kind {
            InterpKind::A => self.ty_a(ty, Side::Left),
            InterpKind::M => self.ty_m(ty, points[0].clone(), points[1].clone()),
            InterpKind::D => self.ty_d(ty, points[0].clone()),
            InterpKind::S => self.ty_s(ty, points[0].clone(), points[1].clone()),
        }
    }

    pub fn interp_tm(&mut self, kind: InterpKind, tm: &RcTm) -> Res {
        match kind {
            InterpKind::A => self.tm_a(tm, Side::Left),
            InterpKind::M => self.tm_m(tm),
            InterpKind::D => self.tm_d(tm),
            InterpKind::S => self.tm_s(tm),
        }
    }

    // -----------------------------------------------------------------------
    // Algebras
    // -----------------------------------------------------------------------

    fn ty_a(&mut self, ty: &RcTy, side: Side) -> Res {
        match &**ty {
            Ty::SIota => Ok(self.carrier(Self::carrier_tag(side))),
            Ty::SArrow(cod) => {
                let dom = self.carrier(Self::carrier_tag(side));
                let body = self.ty_a(cod, side)?;
                Ok(rc(ITm::Pi("_".into(), dom, shift(&body, 1, 0))))
            }
            Ty::U => Ok(rc(ITm::Sort(u_sort(self.profile)))),
            Ty::El(a) => self.tm_a(a, side),
            Ty::Pi(a, cod) => {
                let dom = self.tm_a(a, side)?;
                let name = self.fresh_name("x");
                self.pi(name, dom, |cx, v| {
                    cx.with_slot(Slot::Tm(slots_a(side, v)), |cx| cx.ty_a(cod, side))
                })
            }
            Ty::PiExt(e, cod) => {
                let name = self.fresh_name("i");
                self.pi(name, rc(ITm::Ext(*e)), |cx, v| {
                    cx.with_slot(Slot::Ext(v), |cx| cx.ty_a(cod, side))
                })
            }
            Ty::IdLarge(a, t, u) => {
                let ann = self.ty_a(a, side)?;
                let lhs = self.tm_a(t, side)?;
                let rhs = self.tm_a(u, side)?;
                Ok(rc(ITm::StrictEq(ann, lhs, rhs)))
            }
            Ty::IdWeak(a, t, u) => {
                let ann = self.ty_a(a, side)?;
                let lhs = self.tm_a(t, side)?;
                let rhs = self.tm_a(u, side)?;
                Ok(rc(ITm::Path(ann, lhs, rhs)))
            }
        }
    }

    fn tm_a(&mut self, t: &RcTm, side: Side) -> Res {
        match &t.node {
            TmNode::Var(ix) => {
                let sl = self.tm_slot(*ix);
                let c = match side {
                    Side::Left => sl.a0.expect("left algebra slot"),
                    Side::Right => sl.a1.expect("right algebra slot"),
                };
                Ok(self.read(&c))
            }
            TmNode::App(f, u) => {
                let vf = self.tm_a(f, side)?;
                let vu = self.tm_a(u, side)?;
                Ok(mk_app(vf, vu))
            }
            TmNode::Lam(body) => {
                let dom_tm = pi_dom(t);
                let dom = self.tm_a(&dom_tm, side)?;
                let name = self.fresh_name("x");
                self.lam(name, dom, |cx, v| {
                    cx.with_slot(Slot::Tm(slots_a(side, v)), |cx| cx.tm_a(body, side))
                })
            }
            TmNode::AppExtLarge(f, e) | TmNode::AppExtSmall(f, e) => {
                let vf = self.tm_a(f, side)?;
                let ve = self.ext_arg(e);
                Ok(mk_app(vf, ve))
            }
            TmNode::LamExtLarge(body) | TmNode::LamExtSmall(body) => {
                let e = ext_binder(t);
                let name = self.fresh_name("i");
                self.lam(name, rc(ITm::Ext(e)), |cx, v| {
                    cx.with_slot(Slot::Ext(v), |cx| cx.tm_a(body, side))
                })
            }
            TmNode::Top => Ok(rc(ITm::Unit)),
            TmNode::Tt => Ok(rc(ITm::UnitVal)),
            TmNode::Sg(a, b) => {
                let dom = self.tm_a(a, side)?;
                let name = self.fresh_name("x");
                self.sg(name, dom, |cx, v| {
                    cx.with_slot(Slot::Tm(slots_a(side, v)), |cx| cx.tm_a(b, side))
                })
            }
            TmNode::Pair(x, y) => {
                let ann = self.tm_a(&el_head(t), side)?;
                let vx = self.tm_a(x, side)?;
                let vy = self.tm_a(y, side)?;
                Ok(rc(ITm::Pair(ann, vx, vy)))
            }
            TmNode::Proj1(x) => Ok(rc(ITm::Proj1(self.tm_a(x, side)?))),
            TmNode::Proj2(x) => Ok(rc(ITm::Proj2(self.tm_a(x, side)?))),
            TmNode::IdSmall(a, x, y) => {
                let ann = self.tm_a(a, side)?;
                let vx = self.tm_a(x, side)?;
                let vy = self.tm_a(y, side)?;
                Ok(rc(ITm::Path(ann, vx, vy)))
            }
            TmNode::PiSmallExt(e, fam) => {
                let name = self.fresh_name("i");
                self.pi(name, rc(ITm::Ext(*e)), |cx, v| {
                    cx.with_slot(Slot::Ext(v), |cx| cx.tm_a(fam, side))
                })
            }
            TmNode::Refl => {
                let (ann, lhs, strict) = self.refl_parts(t, side)?;
                Ok(rc(ITm::Refl {
                    strict,
                    ty: ann,
                    tm: lhs,
                }))
            }
            TmNode::JSmall(motive, pr, path) | TmNode::JWeak(motive, pr, path) => {
                let jb = j_binder(path);
                let vp = self.tm_a(path, side)?;
                self.j_a_point(&jb, motive, pr, side, vp)
            }
        }
    }

    /// The algebra interpretation of a path elimination at an arbitrary
    /// path argument: `J (y q. P^A) (pr^A) q`.
    fn j_a_point(
        &mut self,
        jb: &JBinder,
        motive: &RcTy,
        pr: &RcTm,
        side: Side,
        q: RcITm,
    ) -> Res {
        let a_i = self.ty_a(&jb.binder_ty, side)?;
        let t_i = self.tm_a(&jb.t, side)?;
        let a_c = self.cap(a_i.clone());
        let t_c = self.cap(t_i);
        let mot = self.lam2(
            "y".into(),
            a_i,
            |cx, y| Ok(rc(ITm::Path(cx.read(&a_c), cx.read(&t_c), cx.read(y)))),
            |cx, y, q2| {
                cx.with_slots(
                    Slot::Tm(slots_a(side, y)),
                    Slot::Tm(slots_a(side, q2)),
                    |cx| cx.ty_a(motive, side),
                )
            },
        )?;
        let vpr = self.tm_a(pr, side)?;
        Ok(mk_j(mot, vpr, q))
    }

    fn refl_parts(&mut self, t: &RcTm, side: Side) -> Result<(RcITm, RcITm, bool), Unsupported> {
        match &*t.ty {
            Ty::El(hd) => match &hd.node {
                TmNode::IdSmall(a, x, _) => {
                    Ok((self.tm_a(a, side)?, self.tm_a(x, side)?, false))
                }
                _ => unreachable!("refl at a non-identity type"),
            },
            Ty::IdLarge(a, x, _) => Ok((self.ty_a(a, side)?, self.tm_a(x, side)?, true)),
            Ty::IdWeak(a, x, _) => Ok((self.ty_a(a, side)?, self.tm_a(x, side)?, false)),
            _ => unreachable!("refl at a non-identity type"),
        }
    }
}

fn slots_a(side: Side, v: Cap) -> TmSlots {
    match side {
        Side::Left => TmSlots {
            a0: Some(v),
            ..TmSlots::default()
        },
        Side::Right => TmSlots {
            a1: Some(v),
            ..TmSlots::default()
        },
    }
}

fn pi_dom(t: &RcTm) -> RcTm {
    match &*t.ty {
        Ty::Pi(a, _) => a.clone(),
        _ => unreachable!("lambda without a product type"),
    }
}

fn ext_binder(t: &RcTm) -> usize {
    match &*t.ty {
        Ty::PiExt(e, _) => *e,
        Ty::El(hd) => match &hd.node {
            TmNode::PiSmallExt(e, _) => *e,
            _ => unreachable!("external lambda type shape"),
        },
        _ => unreachable!("external lambda type shape"),
    }
}

fn el_head(t: &RcTm) -> RcTm {
    match &*t.ty {
        Ty::El(hd) => hd.clone(),
        _ => unreachable!("term type is not El"),
    }
}

// ---------------------------------------------------------------------------
// Morphisms
// ---------------------------------------------------------------------------

impl Cx {
    /// `A^M p0 p1` — the statement that a morphism preserves a component
    /// of type `A` with values `p0`, `p1` in the two algebras.
    fn ty_m(&mut self, ty: &RcTy, p0: RcITm, p1: RcITm) -> Res {
        match &**ty {
            Ty::SIota => {
                let x1 = self.carrier("1c");
                let xm = self.carrier("M");
                Ok(rc(ITm::Path(x1, mk_app(xm, p0), p1)))
            }
            Ty::SArrow(cod) => {
                let dom = self.carrier("");
                let p0c = self.cap(p0);
                let p1c = self.cap(p1);
                let name = self.fresh_name("x");
                self.pi(name, dom, |cx, v| {
                    let xm = cx.carrier("M");
                    let lhs = mk_app(cx.read(&p0c), cx.read(&v));
                    let rhs = mk_app(cx.read(&p1c), mk_app(xm, cx.read(&v)));
                    cx.ty_m(cod, lhs, rhs)
                })
            }
            Ty::U => Ok(rc(ITm::Pi("_".into(), p0, shift(&p1, 1, 0)))),
            Ty::El(a) => {
                let ann = self.tm_a(a, Side::Right)?;
                let map = self.tm_m(a)?;
                Ok(self.eq(ann, mk_app(map, p0), p1))
            }
            Ty::Pi(a, cod) => {
                let dom = self.tm_a(a, Side::Left)?;
                let p0c = self.cap(p0);
                let p1c = self.cap(p1);
                let name = self.fresh_name("x");
                self.pi(name, dom, |cx, v| {
                    let mapped = mk_app(cx.tm_m(a)?, cx.read(&v));
                    let ann = cx.tm_a(a, Side::Right)?;
                    let slots = TmSlots {
                        a0: Some(v.clone()),
                        a1: Some(cx.cap(mapped.clone())),
                        m: Some(cx.cap(cx.eq_refl(ann, mapped.clone()))),
                        ..TmSlots::default()
                    };
                    let lhs = mk_app(cx.read(&p0c), cx.read(&v));
                    let rhs = mk_app(cx.read(&p1c), mapped);
                    cx.with_slot(Slot::Tm(slots), |cx| cx.ty_m(cod, lhs, rhs))
                })
            }
            Ty::PiExt(e, cod) => {
                let p0c = self.cap(p0);
                let p1c = self.cap(p1);
                let name = self.fresh_name("i");
                self.pi(name, rc(ITm::Ext(*e)), |cx, v| {
                    let lhs = mk_app(cx.read(&p0c), cx.read(&v));
                    let rhs = mk_app(cx.read(&p1c), cx.read(&v));
                    cx.with_slot(Slot::Ext(v), |cx| cx.ty_m(cod, lhs, rhs))
                })
            }
            Ty::IdLarge(a, t, u) => {
                let t_l = self.tm_a(t, Side::Left)?;
                let t_r = self.tm_a(t, Side::Right)?;
                let ann = self.ty_m(a, t_l, t_r)?;
                let lhs = self.tm_m(t)?;
                let rhs = self.tm_m(u)?;
                Ok(rc(ITm::StrictEq(ann, lhs, rhs)))
            }
            Ty::IdWeak(a, t, u) => {
                // tr p1 (tr p0 (t^M)) = u^M, transports in each endpoint slot
                let trtr = self.weak_id_m_carry(a, t, u, &p0, &p1)?;
                let u_l = self.tm_a(u, Side::Left)?;
                let u_r = self.tm_a(u, Side::Right)?;
                let ann = self.ty_m(a, u_l, u_r)?;
                let rhs = self.tm_m(u)?;
                Ok(rc(ITm::Path(ann, trtr, rhs)))
            }
        }
    }

    /// `tr_{x. A^M x (t^A γ1)} p0 (t^M)` then `tr_{x. A^M (u^A γ0) x} p1 (..)`.
    fn weak_id_m_carry(
        &mut self,
        a: &RcTy,
        t: &RcTm,
        u: &RcTm,
        p0: &RcITm,
        p1: &RcITm,
    ) -> Res {
        let a_l = self.ty_a(a, Side::Left)?;
        let a_r = self.ty_a(a, Side::Right)?;
        let t_m = self.tm_m(t)?;
        let t_r = self.tm_a(t, Side::Right)?;
        let t_r_cap = self.cap(t_r);
        let mot_in = self.lam("z".into(), a_l, |cx, z| {
            let zr = cx.read(&z);
            let tr = cx.read(&t_r_cap);
            cx.ty_m(a, zr, tr)
        })?;
        let inner = mk_tr(mot_in, p0.clone(), t_m);
        let u_l = self.tm_a(u, Side::Left)?;
        let u_l_cap = self.cap(u_l);
        let mot_out = self.lam("z".into(), a_r, |cx, z| {
            let ul = cx.read(&u_l_cap);
            let zr = cx.read(&z);
            cx.ty_m(a, ul, zr)
        })?;
        Ok(mk_tr(mot_out, p1.clone(), inner))
    }

    fn tm_m(&mut self, t: &RcTm) -> Res {
        let weak = self.profile == Profile::HiitWeak;
        match &t.node {
            TmNode::Var(ix) => {
                let sl = self.tm_slot(*ix);
                let c = sl.m.expect("morphism slot");
                Ok(self.read(&c))
            }
            TmNode::App(f, u) => {
                if !weak {
                    let vf = self.tm_m(f)?;
                    let vu = self.tm_a(u, Side::Left)?;
                    return Ok(mk_app(vf, vu));
                }
                // J over u's morphism path
                let (a, cod) = match &*f.ty {
                    Ty::Pi(a, cod) => (a.clone(), cod.clone()),
                    _ => unreachable!("application head type"),
                };
                let u_l = self.tm_a(u, Side::Left)?;
                let base = mk_app(self.tm_m(f)?, u_l.clone());
                let a_r = self.tm_a(&a, Side::Right)?;
                let mapped = mk_app(self.tm_m(&a)?, u_l.clone());
                let u_l_cap = self.cap(u_l);
                let mapped_cap = self.cap(mapped);
                let a_r_cap = self.cap(a_r.clone());
                let f_cl = f.clone();
                let cod_cl = cod.clone();
                let mot = self.lam2(
                    "y".into(),
                    a_r,
                    |cx, y| {
                        Ok(rc(ITm::Path(
                            cx.read(&a_r_cap),
                            cx.read(&mapped_cap),
                            cx.read(y),
                        )))
                    },
                    |cx, y, q| {
                        let slots = TmSlots {
                            a0: Some(u_l_cap.clone()),
                            a1: Some(y.clone()),
                            m: Some(q),
                            ..TmSlots::default()
                        };
                        let lhs = mk_app(cx.tm_a(&f_cl, Side::Left)?, cx.read(&u_l_cap));
                        let rhs = mk_app(cx.tm_a(&f_cl, Side::Right)?, cx.read(&y));
                        cx.with_slot(Slot::Tm(slots), |cx| cx.ty_m(&cod_cl, lhs, rhs))
                    },
                )?;
                Ok(mk_j(mot, base, self.tm_m(u)?))
            }
            TmNode::Lam(body) => {
                let a = pi_dom(t);
                let dom = self.tm_a(&a, Side::Left)?;
                let name = self.fresh_name("x");
                self.lam(name, dom, |cx, v| {
                    let mapped = mk_app(cx.tm_m(&a)?, cx.read(&v));
                    let ann = cx.tm_a(&a, Side::Right)?;
                    let slots = TmSlots {
                        a0: Some(v.clone()),
                        a1: Some(cx.cap(mapped.clone())),
                        m: Some(cx.cap(cx.eq_refl(ann, mapped))),
                        ..TmSlots::default()
                    };
                    cx.with_slot(Slot::Tm(slots), |cx| cx.tm_m(body))
                })
            }
            TmNode::AppExtLarge(f, e) => {
                let vf = self.tm_m(f)?;
                let ve = self.ext_arg(e);
                Ok(mk_app(vf, ve))
            }
            TmNode::LamExtLarge(body) => {
                let e = ext_binder(t);
                let name = self.fresh_name("i");
                self.lam(name, rc(ITm::Ext(e)), |cx, v| {
                    cx.with_slot(Slot::Ext(v), |cx| cx.tm_m(body))
                })
            }
            TmNode::AppExtSmall(f, e) => {
                if weak {
                    Ok(rc(ITm::Happly {
                        path: self.tm_m(f)?,
                        arg: self.ext_arg(e),
                    }))
                } else {
                    let ann = self.tm_a(&el_head(t), Side::Right)?;
                    let val = self.tm_a(t, Side::Right)?;
                    Ok(rc(ITm::Refl {
                        strict: true,
                        ty: ann,
                        tm: val,
                    }))
                }
            }
            TmNode::LamExtSmall(body) => {
                let e = ext_binder(t);
                if weak {
                    let pse = el_head(t);
                    let map = self.tm_m(&pse)?;
                    let lhs = mk_app(map, self.tm_a(t, Side::Left)?);
                    let rhs = self.tm_a(t, Side::Right)?;
                    let name = self.fresh_name("i");
                    let h = self.lam(name, rc(ITm::Ext(e)), |cx, v| {
                        cx.with_slot(Slot::Ext(v), |cx| cx.tm_m(body))
                    })?;
                    Ok(rc(ITm::Funext { f: lhs, g: rhs, h }))
                } else {
                    let ann = self.tm_a(&el_head(t), Side::Right)?;
                    let val = self.tm_a(t, Side::Right)?;
                    Ok(rc(ITm::Refl {
                        strict: true,
                        ty: ann,
                        tm: val,
                    }))
                }
            }
            TmNode::Top => Ok(rc(ITm::Lam(
                "_".into(),
                rc(ITm::Unit),
                rc(ITm::UnitVal),
            ))),
            TmNode::Tt => Ok(self.eq_refl(rc(ITm::Unit), rc(ITm::UnitVal))),
            TmNode::Sg(a, b) => {
                let dom = self.tm_a(t, Side::Left)?; // the sigma type on the left
                let name = self.fresh_name("p");
                self.lam(name, dom, |cx, pv| {
                    let fst = rc(ITm::Proj1(cx.read(&pv)));
                    let snd = rc(ITm::Proj2(cx.read(&pv)));
                    let mapped = mk_app(cx.tm_m(a)?, fst.clone());
                    let ann_fst = cx.tm_a(a, Side::Right)?;
                    let slots = TmSlots {
                        a0: Some(cx.cap(fst)),
                        a1: Some(cx.cap(mapped.clone())),
                        m: Some(cx.cap(cx.eq_refl(ann_fst, mapped.clone()))),
                        ..TmSlots::default()
                    };
                    let b_mapped = cx.with_slot(Slot::Tm(slots), |cx| {
                        let bm = cx.tm_m(b)?;
                        Ok(mk_app(bm, snd))
                    })?;
                    let sg_r = cx.tm_a(t, Side::Right)?;
                    Ok(rc(ITm::Pair(sg_r, mapped, b_mapped)))
                })
            }
            TmNode::Pair(x, y) => {
                if !weak {
                    let ann = self.tm_a(&el_head(t), Side::Right)?;
                    let val = self.tm_a(t, Side::Right)?;
                    return Ok(rc(ITm::Refl {
                        strict: true,
                        ty: ann,
                        tm: val,
                    }));
                }
                self.weak_pair_m(t, x, y)
            }
            TmNode::Proj1(x) => {
                if weak {
                    let sg_r = self.tm_a(&el_head(x), Side::Right)?;
                    let f = self.lam("p".into(), sg_r, |cx, v| Ok(rc(ITm::Proj1(cx.read(&v)))))?;
                    Ok(rc(ITm::Ap {
                        f,
                        path: self.tm_m(x)?,
                    }))
                } else {
                    let ann = self.tm_a(&el_head(t), Side::Right)?;
                    let val = self.tm_a(t, Side::Right)?;
                    Ok(rc(ITm::Refl {
                        strict: true,
                        ty: ann,
                        tm: val,
                    }))
                }
            }
            TmNode::Proj2(x) => {
                if weak {
                    self.weak_proj2_m(t, x)
                } else {
                    let ann = self.tm_a(&el_head(t), Side::Right)?;
                    let val = self.tm_a(t, Side::Right)?;
                    Ok(rc(ITm::Refl {
                        strict: true,
                        ty: ann,
                        tm: val,
                    }))
                }
            }
            TmNode::IdSmall(a, x, y) => {
                let dom = {
                    let ann = self.tm_a(a, Side::Left)?;
                    let xl = self.tm_a(x, Side::Left)?;
                    let yl = self.tm_a(y, Side::Left)?;
                    rc(ITm::Path(ann, xl, yl))
                };
                let a_cl = a.clone();
                let x_cl = x.clone();
                let y_cl = y.clone();
                let name = self.fresh_name("p");
                self.lam(name, dom, |cx, pv| {
                    let lifted = rc(ITm::Ap {
                        f: cx.tm_m(&a_cl)?,
                        path: cx.read(&pv),
                    });
                    if cx.profile == Profile::HiitWeak {
                        let xm = cx.tm_m(&x_cl)?;
                        let ym = cx.tm_m(&y_cl)?;
                        Ok(mk_comp(mk_inv(xm), mk_comp(lifted, ym)))
                    } else {
                        Ok(lifted)
                    }
                })
            }
            TmNode::PiSmallExt(e, fam) => {
                let dom = self.tm_a(t, Side::Left)?;
                let e = *e;
                let fam = fam.clone();
                let name = self.fresh_name("f");
                self.lam(name, dom, |cx, fv| {
                    let iname = cx.fresh_name("i");
                    cx.lam(iname, rc(ITm::Ext(e)), |cx, iv| {
                        let applied = mk_app(cx.read(&fv), cx.read(&iv));
                        cx.with_slot(Slot::Ext(iv), |cx| {
                            let map = cx.tm_m(&fam)?;
                            Ok(mk_app(map, applied))
                        })
                    })
                })
            }
            TmNode::Refl => self.refl_m(t),
            TmNode::JSmall(_, _, _) => Err(Unsupported(
                "the weak semantics of J on the small identity is not given for morphisms; \
                 the construction is deferred to the mechanized development"
                    .into(),
            )),
            TmNode::JWeak(motive, pr, path) => self.weak_j_m(motive, pr, path),
        }
    }

    fn refl_m(&mut self, t: &RcTm) -> Res {
        match &*t.ty {
            Ty::El(hd) => match &hd.node {
                TmNode::IdSmall(a, x, _) => {
                    if self.profile == Profile::HiitWeak {
                        // by induction on x^M: inv q . (ap (a^M) refl . q) = refl
                        let a_r = self.tm_a(a, Side::Right)?;
                        let x_l = self.tm_a(x, Side::Left)?;
                        let a_l_tm = self.tm_a(a, Side::Left)?;
                        let mapped = mk_app(self.tm_m(a)?, x_l.clone());
                        let a_r_cap = self.cap(a_r.clone());
                        let mapped_cap = self.cap(mapped.clone());
                        let am = self.tm_m(a)?;
                        let am_cap = self.cap(am);
                        let xl_cap = self.cap(x_l);
                        let al_cap = self.cap(a_l_tm);
                        let mot = self.lam2(
                            "y".into(),
                            a_r,
                            |cx, y| {
                                Ok(rc(ITm::Path(
                                    cx.read(&a_r_cap),
                                    cx.read(&mapped_cap),
                                    cx.read(y),
                                )))
                            },
                            |cx, y, q| {
                                let yv = cx.read(&y);
                                let qv = cx.read(&q);
                                let ar = cx.read(&a_r_cap);
                                let lifted = rc(ITm::Ap {
                                    f: cx.read(&am_cap),
                                    path: prefl(cx.read(&al_cap), cx.read(&xl_cap)),
                                });
                                let lhs =
                                    mk_comp(mk_inv(qv.clone()), mk_comp(lifted, qv.clone()));
                                let rhs = prefl(ar.clone(), yv.clone());
                                Ok(rc(ITm::Path(
                                    rc(ITm::Path(ar, yv.clone(), yv)),
                                    lhs,
                                    rhs,
                                )))
                            },
                        )?;
                        let base = {
                            let m = self.read(&mapped_cap);
                            let ar = self.read(&a_r_cap);
                            prefl(rc(ITm::Path(ar, m.clone(), m.clone())), prefl(self.read(&a_r_cap), m))
                        };
                        let xm = self.tm_m(x)?;
                        Ok(mk_j(mot, base, xm))
                    } else {
                        let ann = self.tm_a(&el_head(t), Side::Right)?;
                        let val = self.tm_a(t, Side::Right)?;
                        Ok(rc(ITm::Refl {
                            strict: true,
                            ty: ann,
                            tm: val,
                        }))
                    }
                }
                _ => unreachable!("refl type shape"),
            },
            Ty::IdLarge(a, x, _) => {
                let x_l = self.tm_a(x, Side::Left)?;
                let x_r = self.tm_a(x, Side::Right)?;
                let ann = self.ty_m(a, x_l, x_r)?;
                Ok(rc(ITm::Refl {
                    strict: true,
                    ty: ann,
                    tm: self.tm_m(x)?,
                }))
            }
            Ty::IdWeak(a, x, _) => {
                let x_l = self.tm_a(x, Side::Left)?;
                let x_r = self.tm_a(x, Side::Right)?;
                let ann = self.ty_m(a, x_l, x_r)?;
                Ok(prefl(ann, self.tm_m(x)?))
            }
            _ => unreachable!("refl type shape"),
        }
    }

    /// Weak pairing: nested path inductions on the component morphisms.
    fn weak_pair_m(&mut self, t: &RcTm, x: &RcTm, y: &RcTm) -> Res {
        let sg_tm = el_head(t);
        let (a, b) = match &sg_tm.node {
            TmNode::Sg(a, b) => (a.clone(), b.clone()),
            _ => unreachable!("pair at a non-sigma type"),
        };
        let sg_r = self.tm_a(&sg_tm, Side::Right)?;
        let sg_r_cap = self.cap(sg_r.clone());
        let a_r = self.tm_a(&a, Side::Right)?;
        let a_r_cap = self.cap(a_r.clone());
        let x_l = self.tm_a(x, Side::Left)?;
        let x_l_cap = self.cap(x_l.clone());
        let y_l = self.tm_a(y, Side::Left)?;
        let y_l_cap = self.cap(y_l);
        let x_mapped = mk_app(self.tm_m(&a)?, x_l);
        let x_mapped_cap = self.cap(x_mapped);
        let x_r = self.tm_a(x, Side::Right)?;
        let x_r_cap = self.cap(x_r);

        // the mapped pair on the left of the goal, rebuilt at any depth
        let _ = &a;
        let b2 = b.clone();
        let mapped_pair = |cx: &mut Cx| -> Res {
            let fst = cx.read(&x_mapped_cap);
            let ann_fst = cx.read(&a_r_cap);
            let slots = TmSlots {
                a0: Some(x_l_cap.clone()),
                a1: Some(cx.cap(fst.clone())),
                m: Some(cx.cap(prefl(ann_fst, fst.clone()))),
                ..TmSlots::default()
            };
            let snd = cx.with_slot(Slot::Tm(slots), |cx| {
                let bm = cx.tm_m(&b2)?;
                Ok(mk_app(bm, cx.read(&y_l_cap)))
            })?;
            Ok(rc(ITm::Pair(cx.read(&sg_r_cap), fst, snd)))
        };

        // inner induction on x^M: motive over (y1, q)
        let b3 = b.clone();
        let y_l_cap2 = y_l_cap.clone();
        let x_l_cap2 = x_l_cap.clone();
        let mot_inner = self.lam2(
            "y".into(),
            a_r.clone(),
            |cx, y1| {
                Ok(rc(ITm::Path(
                    cx.read(&a_r_cap),
                    cx.read(&x_mapped_cap),
                    cx.read(y1),
                )))
            },
            |cx, y1, q| {
                let lhs = mapped_pair(cx)?;
                let slots = TmSlots {
                    a0: Some(x_l_cap2.clone()),
                    a1: Some(y1.clone()),
                    m: Some(q),
                    ..TmSlots::default()
                };
                let snd = cx.with_slot(Slot::Tm(slots), |cx| {
                    let bm = cx.tm_m(&b3)?;
                    Ok(mk_app(bm, cx.read(&y_l_cap2)))
                })?;
                let rhs = rc(ITm::Pair(cx.read(&sg_r_cap), cx.read(&y1), snd));
                Ok(rc(ITm::Path(cx.read(&sg_r_cap), lhs, rhs)))
            },
        )?;
        let base_inner = {
            let lhs = mapped_pair(self)?;
            prefl(self.read(&sg_r_cap), lhs)
        };
        let inner = mk_j(mot_inner, base_inner, self.tm_m(x)?);

        // outer induction on y^M: motive over (z, r)
        let b4 = b.clone();
        let fiber_r = {
            // (b [id, x])^A on the right: interpret b with the x-slots
            let slots = TmSlots {
                a0: Some(x_l_cap.clone()),
                a1: Some(x_r_cap.clone()),
                m: Some(self.cap(prefl(self.read(&a_r_cap), self.read(&x_mapped_cap)))),
                ..TmSlots::default()
            };
            self.with_slot(Slot::Tm(slots), |cx| cx.tm_a(&b4, Side::Right))?
        };
        let x_r_cap2 = x_r_cap.clone();
        let mot_outer = self.lam2(
            "z".into(),
            fiber_r,
            |cx, z| {
                // base point of y^M's path
                let x_m = cx.tm_m(x)?;
                let slots = TmSlots {
                    a0: Some(x_l_cap.clone()),
                    a1: Some(x_r_cap.clone()),
                    m: Some(cx.cap(x_m)),
                    ..TmSlots::default()
                };
                let start = cx.with_slot(Slot::Tm(slots), |cx| {
                    let bm = cx.tm_m(&b4)?;
                    Ok(mk_app(bm, cx.read(&y_l_cap)))
                })?;
                let fiber = {
                    let x_m2 = cx.tm_m(x)?;
                    let slots = TmSlots {
                        a0: Some(x_l_cap.clone()),
                        a1: Some(x_r_cap.clone()),
                        m: Some(cx.cap(x_m2)),
                        ..TmSlots::default()
                    };
                    cx.with_slot(Slot::Tm(slots), |cx| cx.tm_a(&b4, Side::Right))?
                };
                Ok(rc(ITm::Path(fiber, start, cx.read(z))))
            },
            |cx, z, _r| {
                let lhs = mapped_pair(cx)?;
                let rhs = rc(ITm::Pair(
                    cx.read(&sg_r_cap),
                    cx.read(&x_r_cap2),
                    cx.read(&z),
                ));
                Ok(rc(ITm::Path(cx.read(&sg_r_cap), lhs, rhs)))
            },
        )?;
        Ok(mk_j(mot_outer, inner, self.tm_m(y)?))
    }

    /// Weak second projection: direct path induction on the pair morphism.
    fn weak_proj2_m(&mut self, t: &RcTm, x: &RcTm) -> Res {
        let sg_tm = el_head(x);
        let (a, b) = match &sg_tm.node {
            TmNode::Sg(a, b) => (a.clone(), b.clone()),
            _ => unreachable!("projection at a non-sigma type"),
        };
        let _ = t;
        let sg_r = self.tm_a(&sg_tm, Side::Right)?;
        let sg_r_cap = self.cap(sg_r);
        let x_l = self.tm_a(x, Side::Left)?;
        let x_l_cap = self.cap(x_l);
        let mapped = {
            let map = self.tm_m(&sg_tm)?;
            mk_app(map, self.read(&x_l_cap))
        };
        let mapped_cap = self.cap(mapped);
        let a_r = self.tm_a(&a, Side::Right)?;
        let a_r_cap = self.cap(a_r);
        let b2 = b.clone();
        let mot = self.lam2(
            "z".into(),
            self.read(&sg_r_cap),
            |cx, z| {
                Ok(rc(ITm::Path(
                    cx.read(&sg_r_cap),
                    cx.read(&mapped_cap),
                    cx.read(z),
                )))
            },
            |cx, z, r| {
                // fiber over proj1 z, with the first-component path ap proj1 r
                let fst_l = rc(ITm::Proj1(cx.read(&x_l_cap)));
                let fst_map = rc(ITm::Ap {
                    f: cx.lam("p".into(), cx.read(&sg_r_cap), |cx2, v| {
                        Ok(rc(ITm::Proj1(cx2.read(&v))))
                    })?,
                    path: cx.read(&r),
                });
                let slots = TmSlots {
                    a0: Some(cx.cap(fst_l)),
                    a1: Some(cx.cap(rc(ITm::Proj1(cx.read(&z))))),
                    m: Some(cx.cap(fst_map)),
                    ..TmSlots::default()
                };
                let (fiber, bmapped) = cx.with_slot(Slot::Tm(slots), |cx| {
                    let fib = cx.tm_a(&b2, Side::Right)?;
                    let bm = cx.tm_m(&b2)?;
                    Ok((fib, bm))
                })?;
                let lhs = mk_app(bmapped, rc(ITm::Proj2(cx.read(&x_l_cap))));
                let rhs = rc(ITm::Proj2(cx.read(&z)));
                Ok(rc(ITm::Path(fiber, lhs, rhs)))
            },
        )?;
        let base = {
            let fst_l = rc(ITm::Proj1(self.read(&x_l_cap)));
            let fst_map_refl = prefl(self.read(&a_r_cap), rc(ITm::Proj1(self.read(&mapped_cap))));
            let _ = fst_map_refl;
            let slots = TmSlots {
                a0: Some(self.cap(fst_l)),
                a1: Some(self.cap(rc(ITm::Proj1(self.read(&mapped_cap))))),
                m: Some(self.cap(prefl(
                    self.read(&a_r_cap),
                    rc(ITm::Proj1(self.read(&mapped_cap))),
                ))),
                ..TmSlots::default()
            };
            let (fiber, lhs) = self.with_slot(Slot::Tm(slots), |cx| {
                let fib = cx.tm_a(&b2, Side::Right)?;
                let bm = cx.tm_m(&b2)?;
                Ok((fib, mk_app(bm, rc(ITm::Proj2(cx.read(&x_l_cap))))))
            })?;
            prefl(fiber, lhs)
        };
        Ok(mk_j(mot, base, self.tm_m(x)?))
    }
}

// ---------------------------------------------------------------------------
// Displayed algebras
// ---------------------------------------------------------------------------

impl Cx {
    fn ty_d(&mut self, ty: &RcTy, p: RcITm) -> Res {
        match &**ty {
            Ty::SIota => Ok(mk_app(self.carrier("D"), p)),
            Ty::SArrow(cod) => {
                let x = self.carrier("");
                let pc = self.cap(p);
                let name = self.fresh_name("x");
                self.pi(name, x, |cx, v| {
                    let fib = mk_app(cx.carrier("D"), cx.read(&v));
                    let dname = cx.fresh_name("xD");
                    cx.pi(dname, fib, |cx, _vd| {
                        let point = mk_app(cx.read(&pc), cx.read(&v));
                        cx.ty_d(cod, point)
                    })
                })
            }
            Ty::U => {
                let s = rc(ITm::Sort(u_sort(self.profile)));
                Ok(rc(ITm::Pi("_".into(), p, s)))
            }
            Ty::El(a) => {
                let fam = self.tm_d(a)?;
                Ok(mk_app(fam, p))
            }
            Ty::Pi(a, cod) => {
                let dom = self.tm_a(a, Side::Left)?;
                let pc = self.cap(p);
                let name = self.fresh_name("x");
                self.pi(name, dom, |cx, v| {
                    let fib = mk_app(cx.tm_d(a)?, cx.read(&v));
                    let dname = cx.fresh_name("xD");
                    cx.pi(dname, fib, |cx, vd| {
                        let slots = TmSlots {
                            a0: Some(v.clone()),
                            d: Some(vd),
                            ..TmSlots::default()
                        };
                        let point = mk_app(cx.read(&pc), cx.read(&v));
                        cx.with_slot(Slot::Tm(slots), |cx| cx.ty_d(cod, point))
                    })
                })
            }
            Ty::PiExt(e, cod) => {
                let pc = self.cap(p);
                let name = self.fresh_name("i");
                self.pi(name, rc(ITm::Ext(*e)), |cx, v| {
                    let point = mk_app(cx.read(&pc), cx.read(&v));
                    cx.with_slot(Slot::Ext(v), |cx| cx.ty_d(cod, point))
                })
            }
            Ty::IdLarge(a, t, u) => {
                let t_l = self.tm_a(t, Side::Left)?;
                let ann = self.ty_d(a, t_l)?;
                let lhs = self.tm_d(t)?;
                let rhs = self.tm_d(u)?;
                Ok(rc(ITm::StrictEq(ann, lhs, rhs)))
            }
            Ty::IdWeak(a, t, u) => {
                // tr (x. A^D x) p (t^D) = u^D
                let a_l = self.ty_a(a, Side::Left)?;
                let mot = self.lam("z".into(), a_l, |cx, z| {
                    let zv = cx.read(&z);
                    cx.ty_d(a, zv)
                })?;
                let t_d = self.tm_d(t)?;
                let u_l = self.tm_a(u, Side::Left)?;
                let ann = self.ty_d(a, u_l)?;
                Ok(rc(ITm::Path(
                    ann,
                    mk_tr(mot, p, t_d),
                    self.tm_d(u)?,
                )))
            }
        }
    }

    fn tm_d(&mut self, t: &RcTm) -> Res {
        match &t.node {
            TmNode::Var(ix) => {
                let sl = self.tm_slot(*ix);
                let c = sl.d.expect("displayed slot");
                Ok(self.read(&c))
            }
            TmNode::App(f, u) => {
                let vf = self.tm_d(f)?;
                let ua = self.tm_a(u, Side::Left)?;
                let ud = self.tm_d(u)?;
                Ok(mk_app(mk_app(vf, ua), ud))
            }
            TmNode::Lam(body) => {
                let a = pi_dom(t);
                let dom = self.tm_a(&a, Side::Left)?;
                let name = self.fresh_name("x");
                self.lam(name, dom, |cx, v| {
                    let fib = mk_app(cx.tm_d(&a)?, cx.read(&v));
                    let dname = cx.fresh_name("xD");
                    cx.lam(dname, fib, |cx, vd| {
                        let slots = TmSlots {
                            a0: Some(v.clone()),
                            d: Some(vd),
                            ..TmSlots::default()
                        };
                        cx.with_slot(Slot::Tm(slots), |cx| cx.tm_d(body))
                    })
                })
            }
            TmNode::AppExtLarge(f, e) | TmNode::AppExtSmall(f, e) => {
                let vf = self.tm_d(f)?;
                let ve = self.ext_arg(e);
                Ok(mk_app(vf, ve))
            }
            TmNode::LamExtLarge(body) | TmNode::LamExtSmall(body) => {
                let e = ext_binder(t);
                let name = self.fresh_name("i");
                self.lam(name, rc(ITm::Ext(e)), |cx, v| {
                    cx.with_slot(Slot::Ext(v), |cx| cx.tm_d(body))
                })
            }
            TmNode::Top => Ok(rc(ITm::Lam("_".into(), rc(ITm::Unit), rc(ITm::Unit)))),
            TmNode::Tt => Ok(rc(ITm::UnitVal)),
            TmNode::Sg(a, b) => {
                let dom = self.tm_a(t, Side::Left)?;
                let a2 = a.clone();
                let b2 = b.clone();
                let name = self.fresh_name("p");
                self.lam(name, dom, |cx, pv| {
                    let fst = rc(ITm::Proj1(cx.read(&pv)));
                    let snd = rc(ITm::Proj2(cx.read(&pv)));
                    let fst_cap = cx.cap(fst.clone());
                    let snd_cap = cx.cap(snd);
                    let fib = mk_app(cx.tm_d(&a2)?, fst);
                    let dname = cx.fresh_name("xD");
                    cx.sg(dname, fib, |cx, vd| {
                        let slots = TmSlots {
                            a0: Some(fst_cap.clone()),
                            d: Some(vd),
                            ..TmSlots::default()
                        };
                        let snd_here = cx.read(&snd_cap);
                        cx.with_slot(Slot::Tm(slots), |cx| {
                            let bm = cx.tm_d(&b2)?;
                            Ok(mk_app(bm, snd_here))
                        })
                    })
                })
            }
            TmNode::Pair(x, y) => {
                let sg_tm = el_head(t);
                let fam = self.tm_d(&sg_tm)?;
                let point = self.tm_a(t, Side::Left)?;
                let ann = mk_app(fam, point);
                let vx = self.tm_d(x)?;
                let vy = self.tm_d(y)?;
                Ok(rc(ITm::Pair(ann, vx, vy)))
            }
            TmNode::Proj1(x) => Ok(rc(ITm::Proj1(self.tm_d(x)?))),
            TmNode::Proj2(x) => Ok(rc(ITm::Proj2(self.tm_d(x)?))),
            TmNode::IdSmall(a, x, y) => {
                let ann0 = self.tm_a(a, Side::Left)?;
                let x_l = self.tm_a(x, Side::Left)?;
                let y_l = self.tm_a(y, Side::Left)?;
                let dom = rc(ITm::Path(ann0, x_l, y_l));
                let a2 = a.clone();
                let x2 = x.clone();
                let y2 = y.clone();
                let name = self.fresh_name("p");
                self.lam(name, dom, |cx, pv| {
                    let fam = cx.tm_d(&a2)?;
                    let x_d = cx.tm_d(&x2)?;
                    let y_d = cx.tm_d(&y2)?;
                    let y_l2 = cx.tm_a(&y2, Side::Left)?;
                    let fib = mk_app(cx.tm_d(&a2)?, y_l2);
                    Ok(rc(ITm::Path(
                        fib,
                        mk_tr(fam, cx.read(&pv), x_d),
                        y_d,
                    )))
                })
            }
            TmNode::PiSmallExt(e, fam) => {
                let dom = self.tm_a(t, Side::Left)?;
                let e = *e;
                let fam = fam.clone();
                let name = self.fresh_name("f");
                self.lam(name, dom, |cx, fv| {
                    let iname = cx.fresh_name("i");
                    cx.pi(iname, rc(ITm::Ext(e)), |cx, iv| {
                        let applied = mk_app(cx.read(&fv), cx.read(&iv));
                        cx.with_slot(Slot::Ext(iv), |cx| {
                            let d = cx.tm_d(&fam)?;
                            Ok(mk_app(d, applied))
                        })
                    })
                })
            }
            TmNode::Refl => self.refl_d(t),
            TmNode::JSmall(motive, pr, path) | TmNode::JWeak(motive, pr, path) => {
                self.weak_j_d(motive, pr, path)
            }
        }
    }

    fn refl_d(&mut self, t: &RcTm) -> Res {
        match &*t.ty {
            Ty::El(hd) => match &hd.node {
                TmNode::IdSmall(a, x, _) => {
                    let fib = mk_app(self.tm_d(a)?, self.tm_a(x, Side::Left)?);
                    Ok(prefl(fib, self.tm_d(x)?))
                }
                _ => unreachable!("refl type shape"),
            },
            Ty::IdLarge(a, x, _) => {
                let x_l = self.tm_a(x, Side::Left)?;
                let ann = self.ty_d(a, x_l)?;
                Ok(rc(ITm::Refl {
                    strict: true,
                    ty: ann,
                    tm: self.tm_d(x)?,
                }))
            }
            Ty::IdWeak(a, x, _) => {
                let x_l = self.tm_a(x, Side::Left)?;
                let ann = self.ty_d(a, x_l)?;
                Ok(prefl(ann, self.tm_d(x)?))
            }
            _ => unreachable!("refl type shape"),
        }
    }
}



/// The binder data of a path elimination, shared between the small and the
/// large identity: the motive's first binder type, and the two endpoints.
struct JBinder {
    binder_ty: RcTy,
    t: RcTm,
    u: RcTm,
}

fn j_binder(path: &RcTm) -> JBinder {
    match &*path.ty {
        Ty::El(hd) => match &hd.node {
            TmNode::IdSmall(a, t, u) => JBinder {
                binder_ty: std::rc::Rc::new(Ty::El(a.clone())),
                t: t.clone(),
                u: u.clone(),
            },
            _ => unreachable!("J path type shape"),
        },
        Ty::IdWeak(a, t, u) => JBinder {
            binder_ty: a.clone(),
            t: t.clone(),
            u: u.clone(),
        },
        _ => unreachable!("J path type shape"),
    }
}

// ---------------------------------------------------------------------------
// Weak path eliminations at the other interpretations
// ---------------------------------------------------------------------------

impl Cx {
    /// `λ z. B^D z` for the binder type of a path elimination.
    fn j_fam_d(&mut self, jb: &JBinder) -> Res {
        let a_l = self.ty_a(&jb.binder_ty, Side::Left)?;
        let bty = jb.binder_ty.clone();
        self.lam("z".into(), a_l, |cx, z| {
            let zv = cx.read(&z);
            cx.ty_d(&bty, zv)
        })
    }

    /// `(J P pr p)^D = J (J (pr^D) (p^A)) (p^D)`, split into two reusable
    /// stages: the inner induction over an arbitrary algebra path, and the
    /// outer induction over an arbitrary displayed path.
    fn weak_j_d(&mut self, motive: &RcTy, pr: &RcTm, path: &RcTm) -> Res {
        let pd = self.tm_d(path)?;
        self.j_d_stage2(motive, pr, path, pd)
    }

    /// Inner displayed induction `J (pr^D) q` with the motive generalizing
    /// the endpoint and its transported displayed value.
    fn j_d_stage1(&mut self, motive: &RcTy, pr: &RcTm, path: &RcTm, q_arg: RcITm) -> Res {
        let jb = j_binder(path);
        let a_l = self.ty_a(&jb.binder_ty, Side::Left)?;
        let a_l_cap = self.cap(a_l.clone());
        let t_l = self.tm_a(&jb.t, Side::Left)?;
        let t_l_cap = self.cap(t_l);
        let t_d = self.tm_d(&jb.t)?;
        let t_d_cap = self.cap(t_d);
        let fam = self.j_fam_d(&jb)?;
        let fam_cap = self.cap(fam);
        let bty = jb.binder_ty.clone();
        let mot1 = self.lam2(
            "y".into(),
            a_l,
            |cx, y| Ok(rc(ITm::Path(cx.read(&a_l_cap), cx.read(&t_l_cap), cx.read(y)))),
            |cx, y, q| {
                let jb_in = JBinder {
                    binder_ty: bty.clone(),
                    t: jb.t.clone(),
                    u: jb.u.clone(),
                };
                let point = cx.j_a_point(&jb_in, motive, pr, Side::Left, cx.read(&q))?;
                let trv = mk_tr(cx.read(&fam_cap), cx.read(&q), cx.read(&t_d_cap));
                let fib_y = {
                    let yv = cx.read(&y);
                    cx.ty_d(&bty, yv)?
                };
                let u_slots = TmSlots {
                    a0: Some(y.clone()),
                    d: Some(cx.cap(trv.clone())),
                    ..TmSlots::default()
                };
                let p_slots = TmSlots {
                    a0: Some(q.clone()),
                    d: Some(cx.cap(prefl(fib_y, trv))),
                    ..TmSlots::default()
                };
                cx.with_slots(Slot::Tm(u_slots), Slot::Tm(p_slots), |cx| {
                    cx.ty_d(motive, point)
                })
            },
        )?;
        let base = self.tm_d(pr)?;
        Ok(mk_j(mot1, base, q_arg))
    }

    /// Outer displayed induction over an arbitrary displayed-path argument;
    /// the inner stage runs at the scrutinee's full algebra path.
    fn j_d_stage2(&mut self, motive: &RcTy, pr: &RcTm, path: &RcTm, qd_arg: RcITm) -> Res {
        let jb = j_binder(path);
        let u_l = self.tm_a(&jb.u, Side::Left)?;
        let u_l_cap = self.cap(u_l.clone());
        let p_a = self.tm_a(path, Side::Left)?;
        let p_a_cap = self.cap(p_a.clone());
        let t_d = self.tm_d(&jb.t)?;
        let fam = self.j_fam_d(&jb)?;
        let inner = self.j_d_stage1(motive, pr, path, p_a.clone())?;
        let fiber_u = self.ty_d(&jb.binder_ty, u_l)?;
        let trv_full = mk_tr(fam, p_a, t_d);
        let trv_cap = self.cap(trv_full);
        let fiber_u_cap = self.cap(fiber_u.clone());
        let bty = jb.binder_ty.clone();
        let mot2 = self.lam2(
            "yD".into(),
            fiber_u,
            |cx, y_d| {
                Ok(rc(ITm::Path(
                    cx.read(&fiber_u_cap),
                    cx.read(&trv_cap),
                    cx.read(y_d),
                )))
            },
            |cx, y_d, r_d| {
                let jb_in = JBinder {
                    binder_ty: bty.clone(),
                    t: jb.t.clone(),
                    u: jb.u.clone(),
                };
                let point = cx.j_a_point(&jb_in, motive, pr, Side::Left, cx.read(&p_a_cap))?;
                let u_slots = TmSlots {
                    a0: Some(u_l_cap.clone()),
                    d: Some(y_d.clone()),
                    ..TmSlots::default()
                };
                let p_slots = TmSlots {
                    a0: Some(p_a_cap.clone()),
                    d: Some(r_d),
                    ..TmSlots::default()
                };
                cx.with_slots(Slot::Tm(u_slots), Slot::Tm(p_slots), |cx| {
                    cx.ty_d(motive, point)
                })
            },
        )?;
        Ok(mk_j(mot2, inner, qd_arg))
    }

    /// The morphism interpretation of the large-identity elimination:
    /// three nested path inductions over `p^A γ1`, `p^A γ0` and `p^M`.
    fn weak_j_m(&mut self, motive: &RcTy, pr: &RcTm, path: &RcTm) -> Res {
        let jb = j_binder(path);
        let bty = jb.binder_ty.clone();
        let a_l = self.ty_a(&bty, Side::Left)?;
        let a_r = self.ty_a(&bty, Side::Right)?;
        let a_l_cap = self.cap(a_l.clone());
        let a_r_cap = self.cap(a_r.clone());
        let t_l = self.tm_a(&jb.t, Side::Left)?;
        let t_r = self.tm_a(&jb.t, Side::Right)?;
        let t_l_cap = self.cap(t_l.clone());
        let t_r_cap = self.cap(t_r);
        let u_l = self.tm_a(&jb.u, Side::Left)?;
        let u_r = self.tm_a(&jb.u, Side::Right)?;
        let u_l_cap = self.cap(u_l);
        let u_r_cap = self.cap(u_r);
        let p_a_l = self.tm_a(path, Side::Left)?;
        let p_a_r = self.tm_a(path, Side::Right)?;
        let p_a_l_cap = self.cap(p_a_l.clone());
        let p_a_r_cap = self.cap(p_a_r.clone());
        let t_m = self.tm_m(&jb.t)?;
        let t_m_cap = self.cap(t_m);

        // carried morphism component of the endpoint: transports of t^M in
        // each endpoint slot
        let bty_c1 = bty.clone();
        let carry = move |cx: &mut Cx,
                          a0_cur: &Cap,
                          q0: RcITm,
                          q1: RcITm,
                          t_r_cap: &Cap,
                          t_m_cap: &Cap,
                          a_l_cap: &Cap,
                          a_r_cap: &Cap|
              -> Res {
            let bty = bty_c1.clone();
            let t_r_loc = cx.cap(cx.read(t_r_cap));
            let mot_in = cx.lam("z".into(), cx.read(a_l_cap), {
                let bty = bty.clone();
                move |cx, z| {
                    let zv = cx.read(&z);
                    let tr = cx.read(&t_r_loc);
                    cx.ty_m(&bty, zv, tr)
                }
            })?;
            let inner = mk_tr(mot_in, q0, cx.read(t_m_cap));
            let a0_loc = cx.cap(cx.read(a0_cur));
            let mot_out = cx.lam("z".into(), cx.read(a_r_cap), {
                let bty = bty.clone();
                move |cx, z| {
                    let a0v = cx.read(&a0_loc);
                    let zv = cx.read(&z);
                    cx.ty_m(&bty, a0v, zv)
                }
            })?;
            Ok(mk_tr(mot_out, q1, inner))
        };

        // stage 1: induction on p^A γ1
        let jb1 = j_binder(path);
        let mot1 = self.lam2(
            "y".into(),
            a_r,
            |cx, y| Ok(rc(ITm::Path(cx.read(&a_r_cap), cx.read(&t_r_cap), cx.read(y)))),
            |cx, y, q1| {
                let refl_q0 = prefl(cx.read(&a_l_cap), cx.read(&t_l_cap));
                let val = carry(
                    cx, &t_l_cap, refl_q0.clone(), cx.read(&q1), &t_r_cap, &t_m_cap,
                    &a_l_cap, &a_r_cap,
                )?;
                let ann = {
                    let tl = cx.read(&t_l_cap);
                    let yv = cx.read(&y);
                    cx.ty_m(&jb1.binder_ty, tl, yv)?
                };
                let u_slots = TmSlots {
                    a0: Some(t_l_cap.clone()),
                    a1: Some(y.clone()),
                    m: Some(cx.cap(val.clone())),
                    ..TmSlots::default()
                };
                let p_slots = TmSlots {
                    a0: Some(cx.cap(refl_q0)),
                    a1: Some(q1.clone()),
                    m: Some(cx.cap(prefl(ann, val))),
                    ..TmSlots::default()
                };
                let pt_l = cx.j_a_point(
                    &jb1,
                    motive,
                    pr,
                    Side::Left,
                    prefl(cx.read(&a_l_cap), cx.read(&t_l_cap)),
                )?;
                let pt_r = cx.j_a_point(&jb1, motive, pr, Side::Right, cx.read(&q1))?;
                cx.with_slots(Slot::Tm(u_slots), Slot::Tm(p_slots), |cx| {
                    cx.ty_m(motive, pt_l, pt_r)
                })
            },
        )?;
        let stage1 = mk_j(mot1, self.tm_m(pr)?, p_a_r);

        // stage 2: induction on p^A γ0
        let jb2 = j_binder(path);
        let mot2 = self.lam2(
            "y".into(),
            a_l,
            |cx, y| Ok(rc(ITm::Path(cx.read(&a_l_cap), cx.read(&t_l_cap), cx.read(y)))),
            |cx, y, q0| {
                let val = carry(
                    cx, &y, cx.read(&q0), cx.read(&p_a_r_cap), &t_r_cap, &t_m_cap,
                    &a_l_cap, &a_r_cap,
                )?;
                let ann = {
                    let yv = cx.read(&y);
                    let ur = cx.read(&u_r_cap);
                    cx.ty_m(&jb2.binder_ty, yv, ur)?
                };
                let u_slots = TmSlots {
                    a0: Some(y.clone()),
                    a1: Some(u_r_cap.clone()),
                    m: Some(cx.cap(val.clone())),
                    ..TmSlots::default()
                };
                let p_slots = TmSlots {
                    a0: Some(q0.clone()),
                    a1: Some(p_a_r_cap.clone()),
                    m: Some(cx.cap(prefl(ann, val))),
                    ..TmSlots::default()
                };
                let pt_l = cx.j_a_point(&jb2, motive, pr, Side::Left, cx.read(&q0))?;
                let pt_r =
                    cx.j_a_point(&jb2, motive, pr, Side::Right, cx.read(&p_a_r_cap))?;
                cx.with_slots(Slot::Tm(u_slots), Slot::Tm(p_slots), |cx| {
                    cx.ty_m(motive, pt_l, pt_r)
                })
            },
        )?;
        let stage2 = mk_j(mot2, stage1, p_a_l);

        // stage 3: induction on p^M
        let jb3 = j_binder(path);
        let hom = {
            let ul = self.read(&u_l_cap);
            let ur = self.read(&u_r_cap);
            self.ty_m(&bty, ul, ur)?
        };
        let hom_cap = self.cap(hom.clone());
        let trtr_full = carry(
            self,
            &u_l_cap,
            self.read(&p_a_l_cap),
            self.read(&p_a_r_cap),
            &t_r_cap,
            &t_m_cap,
            &a_l_cap,
            &a_r_cap,
        )?;
        let trtr_cap = self.cap(trtr_full);
        let mot3 = self.lam2(
            "w".into(),
            hom,
            |cx, w| Ok(rc(ITm::Path(cx.read(&hom_cap), cx.read(&trtr_cap), cx.read(w)))),
            |cx, w, r| {
                let u_slots = TmSlots {
                    a0: Some(u_l_cap.clone()),
                    a1: Some(u_r_cap.clone()),
                    m: Some(w.clone()),
                    ..TmSlots::default()
                };
                let p_slots = TmSlots {
                    a0: Some(p_a_l_cap.clone()),
                    a1: Some(p_a_r_cap.clone()),
                    m: Some(r),
                    ..TmSlots::default()
                };
                let pt_l =
                    cx.j_a_point(&jb3, motive, pr, Side::Left, cx.read(&p_a_l_cap))?;
                let pt_r =
                    cx.j_a_point(&jb3, motive, pr, Side::Right, cx.read(&p_a_r_cap))?;
                cx.with_slots(Slot::Tm(u_slots), Slot::Tm(p_slots), |cx| {
                    cx.ty_m(motive, pt_l, pt_r)
                })
            },
        )?;
        Ok(mk_j(mot3, stage2, self.tm_m(path)?))
    }
}

// ---------------------------------------------------------------------------
// Sections
// ---------------------------------------------------------------------------

impl Cx {
    /// `A^S p pd` — the statement that a section agrees with a displayed
    /// component `pd` over the base component `p`.
    fn ty_s(&mut self, ty: &RcTy, p: RcITm, pd: RcITm) -> Res {
        match &**ty {
            Ty::SIota => {
                let xd = self.carrier("D");
                let xs = self.carrier("S");
                Ok(rc(ITm::Path(mk_app(xd, p.clone()), mk_app(xs, p), pd)))
            }
            Ty::SArrow(cod) => {
                let x = self.carrier("");
                let pc = self.cap(p);
                let pdc = self.cap(pd);
                let name = self.fresh_name("x");
                self.pi(name, x, |cx, v| {
                    let xs = cx.carrier("S");
                    let point = mk_app(cx.read(&pc), cx.read(&v));
                    let pointd = mk_app(
                        mk_app(cx.read(&pdc), cx.read(&v)),
                        mk_app(xs, cx.read(&v)),
                    );
                    cx.ty_s(cod, point, pointd)
                })
            }
            Ty::U => {
                let pdc = self.cap(pd);
                let name = self.fresh_name("x");
                self.pi(name, p, |cx, v| Ok(mk_app(cx.read(&pdc), cx.read(&v))))
            }
            Ty::El(a) => {
                let fib = mk_app(self.tm_d(a)?, p.clone());
                let map = self.tm_s(a)?;
                Ok(self.eq(fib, mk_app(map, p), pd))
            }
            Ty::Pi(a, cod) => {
                let dom = self.tm_a(a, Side::Left)?;
                let pc = self.cap(p);
                let pdc = self.cap(pd);
                let name = self.fresh_name("x");
                self.pi(name, dom, |cx, v| {
                    let mapped = mk_app(cx.tm_s(a)?, cx.read(&v));
                    let fib = mk_app(cx.tm_d(a)?, cx.read(&v));
                    let slots = TmSlots {
                        a0: Some(v.clone()),
                        d: Some(cx.cap(mapped.clone())),
                        s: Some(cx.cap(cx.eq_refl(fib, mapped.clone()))),
                        ..TmSlots::default()
                    };
                    let point = mk_app(cx.read(&pc), cx.read(&v));
                    let pointd = mk_app(mk_app(cx.read(&pdc), cx.read(&v)), mapped);
                    cx.with_slot(Slot::Tm(slots), |cx| cx.ty_s(cod, point, pointd))
                })
            }
            Ty::PiExt(e, cod) => {
                let pc = self.cap(p);
                let pdc = self.cap(pd);
                let name = self.fresh_name("i");
                self.pi(name, rc(ITm::Ext(*e)), |cx, v| {
                    let point = mk_app(cx.read(&pc), cx.read(&v));
                    let pointd = mk_app(cx.read(&pdc), cx.read(&v));
                    cx.with_slot(Slot::Ext(v), |cx| cx.ty_s(cod, point, pointd))
                })
            }
            Ty::IdLarge(a, t, u) => {
                let t_l = self.tm_a(t, Side::Left)?;
                let t_d = self.tm_d(t)?;
                let ann = self.ty_s(a, t_l, t_d)?;
                let lhs = self.tm_s(t)?;
                let rhs = self.tm_s(u)?;
                Ok(rc(ITm::StrictEq(ann, lhs, rhs)))
            }
            Ty::IdWeak(a, t, u) => {
                // tr pd (J (t^S) p) = u^S
                let a_l = self.ty_a(a, Side::Left)?;
                let t_l = self.tm_a(t, Side::Left)?;
                let t_d = self.tm_d(t)?;
                let a_l_cap = self.cap(a_l.clone());
                let t_l_cap = self.cap(t_l);
                let t_d_cap = self.cap(t_d);
                let a2 = a.clone();
                let fam = self.lam("z".into(), a_l.clone(), |cx, z| {
                    let zv = cx.read(&z);
                    cx.ty_d(&a2, zv)
                })?;
                let fam_cap = self.cap(fam);
                let a3 = a.clone();
                let mot_js = self.lam2(
                    "y".into(),
                    a_l,
                    |cx, y| {
                        Ok(rc(ITm::Path(
                            cx.read(&a_l_cap),
                            cx.read(&t_l_cap),
                            cx.read(y),
                        )))
                    },
                    |cx, y, q| {
                        let trv = mk_tr(cx.read(&fam_cap), cx.read(&q), cx.read(&t_d_cap));
                        let yv = cx.read(&y);
                        cx.ty_s(&a3, yv, trv)
                    },
                )?;
                let inner = mk_j(mot_js, self.tm_s(t)?, p);
                let u_l = self.tm_a(u, Side::Left)?;
                let u_l_cap = self.cap(u_l.clone());
                let fiber_u = self.ty_d(a, u_l.clone())?;
                let a4 = a.clone();
                let mot_out = self.lam("zD".into(), fiber_u, |cx, z_d| {
                    let ul = cx.read(&u_l_cap);
                    let zv = cx.read(&z_d);
                    cx.ty_s(&a4, ul, zv)
                })?;
                let u_d = self.tm_d(u)?;
                let ann = self.ty_s(a, u_l, u_d)?;
                Ok(rc(ITm::Path(
                    ann,
                    mk_tr(mot_out, pd, inner),
                    self.tm_s(u)?,
                )))
            }
        }
    }

    fn tm_s(&mut self, t: &RcTm) -> Res {
        let weak = self.profile == Profile::HiitWeak;
        match &t.node {
            TmNode::Var(ix) => {
                let sl = self.tm_slot(*ix);
                let c = sl.s.expect("section slot");
                Ok(self.read(&c))
            }
            TmNode::App(f, u) => {
                if !weak {
                    let vf = self.tm_s(f)?;
                    let vu = self.tm_a(u, Side::Left)?;
                    return Ok(mk_app(vf, vu));
                }
                let (a, cod) = match &*f.ty {
                    Ty::Pi(a, cod) => (a.clone(), cod.clone()),
                    _ => unreachable!("application head type"),
                };
                let u_l = self.tm_a(u, Side::Left)?;
                let base = mk_app(self.tm_s(f)?, u_l.clone());
                let fiber = mk_app(self.tm_d(&a)?, u_l.clone());
                let mapped = mk_app(self.tm_s(&a)?, u_l.clone());
                let u_l_cap = self.cap(u_l);
                let fiber_cap = self.cap(fiber.clone());
                let mapped_cap = self.cap(mapped);
                let f_cl = f.clone();
                let cod_cl = cod.clone();
                let mot = self.lam2(
                    "zD".into(),
                    fiber,
                    |cx, z_d| {
                        Ok(rc(ITm::Path(
                            cx.read(&fiber_cap),
                            cx.read(&mapped_cap),
                            cx.read(z_d),
                        )))
                    },
                    |cx, z_d, r| {
                        let slots = TmSlots {
                            a0: Some(u_l_cap.clone()),
                            d: Some(z_d.clone()),
                            s: Some(r),
                            ..TmSlots::default()
                        };
                        let point = mk_app(cx.tm_a(&f_cl, Side::Left)?, cx.read(&u_l_cap));
                        let pointd = mk_app(
                            mk_app(cx.tm_d(&f_cl)?, cx.read(&u_l_cap)),
                            cx.read(&z_d),
                        );
                        cx.with_slot(Slot::Tm(slots), |cx| cx.ty_s(&cod_cl, point, pointd))
                    },
                )?;
                Ok(mk_j(mot, base, self.tm_s(u)?))
            }
            TmNode::Lam(body) => {
                let a = pi_dom(t);
                let dom = self.tm_a(&a, Side::Left)?;
                let name = self.fresh_name("x");
                self.lam(name, dom, |cx, v| {
                    let mapped = mk_app(cx.tm_s(&a)?, cx.read(&v));
                    let fib = mk_app(cx.tm_d(&a)?, cx.read(&v));
                    let slots = TmSlots {
                        a0: Some(v.clone()),
                        d: Some(cx.cap(mapped.clone())),
                        s: Some(cx.cap(cx.eq_refl(fib, mapped))),
                        ..TmSlots::default()
                    };
                    cx.with_slot(Slot::Tm(slots), |cx| cx.tm_s(body))
                })
            }
            TmNode::AppExtLarge(f, e) => {
                let vf = self.tm_s(f)?;
                let ve = self.ext_arg(e);
                Ok(mk_app(vf, ve))
            }
            TmNode::LamExtLarge(body) => {
                let e = ext_binder(t);
                let name = self.fresh_name("i");
                self.lam(name, rc(ITm::Ext(e)), |cx, v| {
                    cx.with_slot(Slot::Ext(v), |cx| cx.tm_s(body))
                })
            }
            TmNode::AppExtSmall(f, e) => {
                if weak {
                    Ok(rc(ITm::Happly {
                        path: self.tm_s(f)?,
                        arg: self.ext_arg(e),
                    }))
                } else {
                    self.srefl_s(t)
                }
            }
            TmNode::LamExtSmall(body) => {
                if weak {
                    let e = ext_binder(t);
                    let pse = el_head(t);
                    let map = self.tm_s(&pse)?;
                    let lhs = mk_app(map, self.tm_a(t, Side::Left)?);
                    let rhs = self.tm_d(t)?;
                    let name = self.fresh_name("i");
                    let h = self.lam(name, rc(ITm::Ext(e)), |cx, v| {
                        cx.with_slot(Slot::Ext(v), |cx| cx.tm_s(body))
                    })?;
                    Ok(rc(ITm::Funext { f: lhs, g: rhs, h }))
                } else {
                    self.srefl_s(t)
                }
            }
            TmNode::Top => Ok(rc(ITm::Lam(
                "_".into(),
                rc(ITm::Unit),
                rc(ITm::UnitVal),
            ))),
            TmNode::Tt => Ok(self.eq_refl(rc(ITm::Unit), rc(ITm::UnitVal))),
            TmNode::Sg(a, b) => {
                let dom = self.tm_a(t, Side::Left)?;
                let fam = self.tm_d(t)?;
                let fam_cap = self.cap(fam);
                let a2 = a.clone();
                let b2 = b.clone();
                let name = self.fresh_name("p");
                self.lam(name, dom, |cx, pv| {
                    let fst = rc(ITm::Proj1(cx.read(&pv)));
                    let snd = rc(ITm::Proj2(cx.read(&pv)));
                    let mapped = mk_app(cx.tm_s(&a2)?, fst.clone());
                    let fib = mk_app(cx.tm_d(&a2)?, fst.clone());
                    let slots = TmSlots {
                        a0: Some(cx.cap(fst)),
                        d: Some(cx.cap(mapped.clone())),
                        s: Some(cx.cap(cx.eq_refl(fib, mapped.clone()))),
                        ..TmSlots::default()
                    };
                    let snd_mapped = cx.with_slot(Slot::Tm(slots), |cx| {
                        let bs = cx.tm_s(&b2)?;
                        Ok(mk_app(bs, snd))
                    })?;
                    let ann = mk_app(cx.read(&fam_cap), cx.read(&pv));
                    Ok(rc(ITm::Pair(ann, mapped, snd_mapped)))
                })
            }
            TmNode::Pair(x, y) => {
                if !weak {
                    return self.srefl_s(t);
                }
                self.weak_pair_s(t, x, y)
            }
            TmNode::Proj1(x) => {
                if weak {
                    let sg_tm = el_head(x);
                    let fib = mk_app(self.tm_d(&sg_tm)?, self.tm_a(x, Side::Left)?);
                    let f = self.lam("p".into(), fib, |cx, v| Ok(rc(ITm::Proj1(cx.read(&v)))))?;
                    Ok(rc(ITm::Ap {
                        f,
                        path: self.tm_s(x)?,
                    }))
                } else {
                    self.srefl_s(t)
                }
            }
            TmNode::Proj2(x) => {
                if weak {
                    self.weak_proj2_s(t, x)
                } else {
                    self.srefl_s(t)
                }
            }
            TmNode::IdSmall(a, x, y) => {
                let ann0 = self.tm_a(a, Side::Left)?;
                let x_l = self.tm_a(x, Side::Left)?;
                let y_l = self.tm_a(y, Side::Left)?;
                let dom = rc(ITm::Path(ann0, x_l.clone(), y_l));
                let a2 = a.clone();
                let x2 = x.clone();
                let y2 = y.clone();
                let x_l_cap = self.cap(x_l);
                let name = self.fresh_name("p");
                self.lam(name, dom, |cx, pv| {
                    if cx.profile == Profile::HiitWeak {
                        // ap (tr p) (x^S)⁻¹ . apd (a^S) p . y^S
                        let fam = cx.tm_d(&a2)?;
                        let fib_x = mk_app(fam.clone(), cx.read(&x_l_cap));
                        let fam_cap = cx.cap(fam);
                        let pv2 = cx.cap(cx.read(&pv));
                        let trf = cx.lam("zD".into(), fib_x, |cx, z| {
                            Ok(mk_tr(cx.read(&fam_cap), cx.read(&pv2), cx.read(&z)))
                        })?;
                        let first = rc(ITm::Ap {
                            f: trf,
                            path: mk_inv(cx.tm_s(&x2)?),
                        });
                        let second = rc(ITm::Apd {
                            f: cx.tm_s(&a2)?,
                            path: cx.read(&pv),
                        });
                        Ok(mk_comp(first, mk_comp(second, cx.tm_s(&y2)?)))
                    } else {
                        Ok(rc(ITm::Apd {
                            f: cx.tm_s(&a2)?,
                            path: cx.read(&pv),
                        }))
                    }
                })
            }
            TmNode::PiSmallExt(e, fam) => {
                let dom = self.tm_a(t, Side::Left)?;
                let e = *e;
                let fam = fam.clone();
                let name = self.fresh_name("f");
                self.lam(name, dom, |cx, fv| {
                    let iname = cx.fresh_name("i");
                    cx.lam(iname, rc(ITm::Ext(e)), |cx, iv| {
                        let applied = mk_app(cx.read(&fv), cx.read(&iv));
                        cx.with_slot(Slot::Ext(iv), |cx| {
                            let map = cx.tm_s(&fam)?;
                            Ok(mk_app(map, applied))
                        })
                    })
                })
            }
            TmNode::Refl => self.refl_s(t),
            TmNode::JSmall(_, _, _) => Err(Unsupported(
                "the weak semantics of J on the small identity is not given for sections; \
                 the construction is deferred to the mechanized development"
                    .into(),
            )),
            TmNode::JWeak(motive, pr, path) => self.weak_j_s(motive, pr, path),
        }
    }

    /// Strict-profile section component of an `El`-typed term: a strict
    /// reflexivity over the displayed value.
    fn srefl_s(&mut self, t: &RcTm) -> Res {
        let fam = self.tm_d(&el_head(t))?;
        let fib = mk_app(fam, self.tm_a(t, Side::Left)?);
        Ok(rc(ITm::Refl {
            strict: true,
            ty: fib,
            tm: self.tm_d(t)?,
        }))
    }

    fn refl_s(&mut self, t: &RcTm) -> Res {
        match &*t.ty {
            Ty::El(hd) => match &hd.node {
                TmNode::IdSmall(a, x, _) => {
                    if self.profile != Profile::HiitWeak {
                        return self.srefl_s(t);
                    }
                    // induction on x^S, with the transport function reduced
                    // at the refl path
                    let fib = mk_app(self.tm_d(a)?, self.tm_a(x, Side::Left)?);
                    let mapped = mk_app(self.tm_s(a)?, self.tm_a(x, Side::Left)?);
                    let fib_cap = self.cap(fib.clone());
                    let mapped_cap = self.cap(mapped.clone());
                    let a_l = self.tm_a(a, Side::Left)?;
                    let x_l = self.tm_a(x, Side::Left)?;
                    let al_cap = self.cap(a_l);
                    let xl_cap = self.cap(x_l);
                    let a2 = a.clone();
                    let mot = self.lam2(
                        "zD".into(),
                        fib,
                        |cx, z_d| {
                            Ok(rc(ITm::Path(
                                cx.read(&fib_cap),
                                cx.read(&mapped_cap),
                                cx.read(z_d),
                            )))
                        },
                        |cx, z_d, r| {
                            let refl0 = prefl(cx.read(&al_cap), cx.read(&xl_cap));
                            let fam = cx.tm_d(&a2)?;
                            let fam_cap = cx.cap(fam);
                            let trf = cx.lam("w".into(), cx.read(&fib_cap), |cx2, w| {
                                Ok(mk_tr(cx2.read(&fam_cap), refl0.clone(), cx2.read(&w)))
                            })?;
                            let refl0b = prefl(cx.read(&al_cap), cx.read(&xl_cap));
                            let lhs = mk_comp(
                                rc(ITm::Ap {
                                    f: trf,
                                    path: mk_inv(cx.read(&r)),
                                }),
                                mk_comp(
                                    rc(ITm::Apd {
                                        f: cx.tm_s(&a2)?,
                                        path: refl0b,
                                    }),
                                    cx.read(&r),
                                ),
                            );
                            let zv = cx.read(&z_d);
                            let rhs = prefl(cx.read(&fib_cap), zv.clone());
                            Ok(rc(ITm::Path(
                                rc(ITm::Path(cx.read(&fib_cap), zv.clone(), zv)),
                                lhs,
                                rhs,
                            )))
                        },
                    )?;
                    let base = {
                        let m = self.read(&mapped_cap);
                        let f = self.read(&fib_cap);
                        prefl(rc(ITm::Path(f.clone(), m.clone(), m.clone())), prefl(f, m))
                    };
                    Ok(mk_j(mot, base, self.tm_s(x)?))
                }
                _ => unreachable!("refl type shape"),
            },
            Ty::IdLarge(a, x, _) => {
                let x_l = self.tm_a(x, Side::Left)?;
                let x_d = self.tm_d(x)?;
                let ann = self.ty_s(a, x_l, x_d)?;
                Ok(rc(ITm::Refl {
                    strict: true,
                    ty: ann,
                    tm: self.tm_s(x)?,
                }))
            }
            Ty::IdWeak(a, x, _) => {
                let x_l = self.tm_a(x, Side::Left)?;
                let x_d = self.tm_d(x)?;
                let ann = self.ty_s(a, x_l, x_d)?;
                Ok(prefl(ann, self.tm_s(x)?))
            }
            _ => unreachable!("refl type shape"),
        }
    }
}

// ---------------------------------------------------------------------------
// Weak sigma and path eliminations at sections
// ---------------------------------------------------------------------------

impl Cx {
    /// Weak pairing at sections: nested inductions on the component
    /// sections, mirroring the morphism case with displayed fibers.
    fn weak_pair_s(&mut self, t: &RcTm, x: &RcTm, y: &RcTm) -> Res {
        let sg_tm = el_head(t);
        let (a, b) = match &sg_tm.node {
            TmNode::Sg(a, b) => (a.clone(), b.clone()),
            _ => unreachable!("pair at a non-sigma type"),
        };
        let pair_l = self.tm_a(t, Side::Left)?;
        let fib_sg = mk_app(self.tm_d(&sg_tm)?, pair_l);
        let fib_sg_cap = self.cap(fib_sg);
        let x_l = self.tm_a(x, Side::Left)?;
        let x_l_cap = self.cap(x_l.clone());
        let y_l = self.tm_a(y, Side::Left)?;
        let y_l_cap = self.cap(y_l);
        let fib_a = mk_app(self.tm_d(&a)?, x_l);
        let fib_a_cap = self.cap(fib_a.clone());
        let x_mapped = mk_app(self.tm_s(&a)?, self.read(&x_l_cap));
        let x_mapped_cap = self.cap(x_mapped);
        let x_d = self.tm_d(x)?;
        let x_d_cap = self.cap(x_d);
        let x_s_tm = x.clone();

        let b2 = b.clone();
        let mapped_pair = move |cx: &mut Cx,
                                fib_sg_cap: &Cap,
                                x_l_cap: &Cap,
                                x_mapped_cap: &Cap,
                                fib_a_cap: &Cap,
                                y_l_cap: &Cap|
              -> Res {
            let fst = cx.read(x_mapped_cap);
            let slots = TmSlots {
                a0: Some(x_l_cap.clone()),
                d: Some(cx.cap(fst.clone())),
                s: Some(cx.cap(prefl(cx.read(fib_a_cap), fst.clone()))),
                ..TmSlots::default()
            };
            let snd = cx.with_slot(Slot::Tm(slots), |cx| {
                let bs = cx.tm_s(&b2)?;
                Ok(mk_app(bs, cx.read(y_l_cap)))
            })?;
            Ok(rc(ITm::Pair(cx.read(fib_sg_cap), fst, snd)))
        };

        let b3 = b.clone();
        let mot_inner = self.lam2(
            "zD".into(),
            fib_a.clone(),
            |cx, z_d| {
                Ok(rc(ITm::Path(
                    cx.read(&fib_a_cap),
                    cx.read(&x_mapped_cap),
                    cx.read(z_d),
                )))
            },
            |cx, z_d, q| {
                let lhs = mapped_pair(cx, &fib_sg_cap, &x_l_cap, &x_mapped_cap, &fib_a_cap, &y_l_cap)?;
                let slots = TmSlots {
                    a0: Some(x_l_cap.clone()),
                    d: Some(z_d.clone()),
                    s: Some(q),
                    ..TmSlots::default()
                };
                let snd = cx.with_slot(Slot::Tm(slots), |cx| {
                    let bs = cx.tm_s(&b3)?;
                    Ok(mk_app(bs, cx.read(&y_l_cap)))
                })?;
                let rhs = rc(ITm::Pair(cx.read(&fib_sg_cap), cx.read(&z_d), snd));
                Ok(rc(ITm::Path(cx.read(&fib_sg_cap), lhs, rhs)))
            },
        )?;
        let base_inner = {
            let lhs = mapped_pair(
                self,
                &fib_sg_cap,
                &x_l_cap,
                &x_mapped_cap,
                &fib_a_cap,
                &y_l_cap,
            )?;
            prefl(self.read(&fib_sg_cap), lhs)
        };
        let inner = mk_j(mot_inner, base_inner, self.tm_s(&x_s_tm)?);

        // outer induction on y^S
        let b4 = b.clone();
        let x_full_slots = |cx: &mut Cx| -> TmSlots {
            TmSlots {
                a0: Some(x_l_cap.clone()),
                d: Some(x_d_cap.clone()),
                s: Some(cx.cap(rc(ITm::UnitVal))),
                ..TmSlots::default()
            }
        };
        let fiber_b = {
            let mut slots = x_full_slots(self);
            let xs0 = self.tm_s(x)?;
            slots.s = Some(self.cap(xs0));
            self.with_slot(Slot::Tm(slots), |cx| {
                let fam = cx.tm_d(&b4)?;
                Ok(mk_app(fam, cx.read(&y_l_cap)))
            })?
        };
        let fiber_b_cap = self.cap(fiber_b.clone());
        let b5 = b.clone();
        let x2 = x.clone();
        let mot_outer = self.lam2(
            "w".into(),
            fiber_b,
            |cx, w| {
                let start = {
                    let xs = cx.tm_s(&x2)?;
                    let mut slots = x_full_slots(cx);
                    slots.s = Some(cx.cap(xs));
                    cx.with_slot(Slot::Tm(slots), |cx| {
                        let bs = cx.tm_s(&b5)?;
                        Ok(mk_app(bs, cx.read(&y_l_cap)))
                    })?
                };
                Ok(rc(ITm::Path(cx.read(&fiber_b_cap), start, cx.read(w))))
            },
            |cx, w, _r| {
                let lhs = mapped_pair(cx, &fib_sg_cap, &x_l_cap, &x_mapped_cap, &fib_a_cap, &y_l_cap)?;
                let rhs = rc(ITm::Pair(
                    cx.read(&fib_sg_cap),
                    cx.read(&x_d_cap),
                    cx.read(&w),
                ));
                Ok(rc(ITm::Path(cx.read(&fib_sg_cap), lhs, rhs)))
            },
        )?;
        Ok(mk_j(mot_outer, inner, self.tm_s(y)?))
    }

    /// Weak second projection at sections: direct induction on the pair
    /// section.
    fn weak_proj2_s(&mut self, t: &RcTm, x: &RcTm) -> Res {
        let _ = t;
        let sg_tm = el_head(x);
        let (a, b) = match &sg_tm.node {
            TmNode::Sg(a, b) => (a.clone(), b.clone()),
            _ => unreachable!("projection at a non-sigma type"),
        };
        let x_l = self.tm_a(x, Side::Left)?;
        let x_l_cap = self.cap(x_l.clone());
        let fib_sg = mk_app(self.tm_d(&sg_tm)?, x_l);
        let fib_sg_cap = self.cap(fib_sg.clone());
        let mapped = mk_app(self.tm_s(&sg_tm)?, self.read(&x_l_cap));
        let mapped_cap = self.cap(mapped);
        let fib_a = mk_app(self.tm_d(&a)?, rc(ITm::Proj1(self.read(&x_l_cap))));
        let fib_a_cap = self.cap(fib_a);
        let b2 = b.clone();
        let mot = self.lam2(
            "z".into(),
            fib_sg,
            |cx, z| {
                Ok(rc(ITm::Path(
                    cx.read(&fib_sg_cap),
                    cx.read(&mapped_cap),
                    cx.read(z),
                )))
            },
            |cx, z, r| {
                let fst_l = rc(ITm::Proj1(cx.read(&x_l_cap)));
                let proj_fun =
                    cx.lam("pp".into(), cx.read(&fib_sg_cap), |cx2, v| {
                        Ok(rc(ITm::Proj1(cx2.read(&v))))
                    })?;
                let fst_map = rc(ITm::Ap {
                    f: proj_fun,
                    path: cx.read(&r),
                });
                let slots = TmSlots {
                    a0: Some(cx.cap(fst_l)),
                    d: Some(cx.cap(rc(ITm::Proj1(cx.read(&z))))),
                    s: Some(cx.cap(fst_map)),
                    ..TmSlots::default()
                };
                let (fiber, bs) = cx.with_slot(Slot::Tm(slots), |cx| {
                    let fam = cx.tm_d(&b2)?;
                    let fib = mk_app(fam, rc(ITm::Proj2(cx.read(&x_l_cap))));
                    let bs = cx.tm_s(&b2)?;
                    Ok((fib, bs))
                })?;
                let lhs = mk_app(bs, rc(ITm::Proj2(cx.read(&x_l_cap))));
                let rhs = rc(ITm::Proj2(cx.read(&z)));
                Ok(rc(ITm::Path(fiber, lhs, rhs)))
            },
        )?;
        let base = {
            let fst_l = rc(ITm::Proj1(self.read(&x_l_cap)));
            let slots = TmSlots {
                a0: Some(self.cap(fst_l)),
                d: Some(self.cap(rc(ITm::Proj1(self.read(&mapped_cap))))),
                s: Some(self.cap(prefl(
                    self.read(&fib_a_cap),
                    rc(ITm::Proj1(self.read(&mapped_cap))),
                ))),
                ..TmSlots::default()
            };
            let (fiber, lhs) = self.with_slot(Slot::Tm(slots), |cx| {
                let fam = cx.tm_d(&b2)?;
                let fib = mk_app(fam, rc(ITm::Proj2(cx.read(&x_l_cap))));
                let bs = cx.tm_s(&b2)?;
                Ok((fib, mk_app(bs, rc(ITm::Proj2(cx.read(&x_l_cap))))))
            })?;
            prefl(fiber, lhs)
        };
        Ok(mk_j(mot, base, self.tm_s(x)?))
    }

    /// The section interpretation of the large-identity elimination: three
    /// nested inductions over the algebra path, the displayed path and the
    /// section path.
    fn weak_j_s(&mut self, motive: &RcTy, pr: &RcTm, path: &RcTm) -> Res {
        let jb = j_binder(path);
        let bty = jb.binder_ty.clone();
        let a_l = self.ty_a(&bty, Side::Left)?;
        let a_l_cap = self.cap(a_l.clone());
        let t_l = self.tm_a(&jb.t, Side::Left)?;
        let t_l_cap = self.cap(t_l);
        let u_l = self.tm_a(&jb.u, Side::Left)?;
        let u_l_cap = self.cap(u_l.clone());
        let t_d = self.tm_d(&jb.t)?;
        let t_d_cap = self.cap(t_d);
        let u_d = self.tm_d(&jb.u)?;
        let u_d_cap = self.cap(u_d);
        let p_a = self.tm_a(path, Side::Left)?;
        let p_a_cap = self.cap(p_a.clone());

        // inner section induction `J (t^S) q` with its displayed transport
        let t_tm = jb.t.clone();
        let bty2 = bty.clone();
        let js_inner = move |cx: &mut Cx,
                             a_l_cap: &Cap,
                             t_l_cap: &Cap,
                             t_d_cap: &Cap,
                             q_arg: RcITm|
              -> Res {
            let jbl = JBinder {
                binder_ty: bty2.clone(),
                t: t_tm.clone(),
                u: t_tm.clone(),
            };
            let fam = cx.j_fam_d(&jbl)?;
            let fam_cap = cx.cap(fam);
            let a_loc = cx.cap(cx.read(a_l_cap));
            let t_loc = cx.cap(cx.read(t_l_cap));
            let td_loc = cx.cap(cx.read(t_d_cap));
            let bty3 = bty2.clone();
            let mot = cx.lam2(
                "y".into(),
                cx.read(a_l_cap),
                |cx, y| Ok(rc(ITm::Path(cx.read(&a_loc), cx.read(&t_loc), cx.read(y)))),
                |cx, y, q| {
                    let trv = mk_tr(cx.read(&fam_cap), cx.read(&q), cx.read(&td_loc));
                    let yv = cx.read(&y);
                    cx.ty_s(&bty3, yv, trv)
                },
            )?;
            let base = cx.tm_s(&t_tm)?;
            Ok(mk_j(mot, base, q_arg))
        };

        // carried section value at generalized stages
        let bty4 = bty.clone();
        let s_val = move |cx: &mut Cx,
                          a_l_cap: &Cap,
                          t_l_cap: &Cap,
                          t_d_cap: &Cap,
                          endpoint: &Cap,
                          q_cur: RcITm,
                          qd_cur: RcITm,
                          js_inner: &dyn Fn(&mut Cx, &Cap, &Cap, &Cap, RcITm) -> Res|
              -> Res {
            let fib = {
                let e = cx.read(endpoint);
                cx.ty_d(&bty4, e)?
            };
            let e_loc = cx.cap(cx.read(endpoint));
            let bty5 = bty4.clone();
            let mot = cx.lam("zD".into(), fib, |cx, z_d| {
                let ev = cx.read(&e_loc);
                let zv = cx.read(&z_d);
                cx.ty_s(&bty5, ev, zv)
            })?;
            let inner = js_inner(cx, a_l_cap, t_l_cap, t_d_cap, q_cur)?;
            Ok(mk_tr(mot, qd_cur, inner))
        };

        // stage 1: induction on p^A
        let jb1 = j_binder(path);
        let js_inner_ref = &js_inner;
        let s_val_ref = &s_val;
        let mot1 = self.lam2(
            "y".into(),
            a_l,
            |cx, y| Ok(rc(ITm::Path(cx.read(&a_l_cap), cx.read(&t_l_cap), cx.read(y)))),
            |cx, y, q| {
                let jbl = JBinder {
                    binder_ty: jb1.binder_ty.clone(),
                    t: jb1.t.clone(),
                    u: jb1.u.clone(),
                };
                let fam = cx.j_fam_d(&jbl)?;
                let trv = mk_tr(fam, cx.read(&q), cx.read(&t_d_cap));
                let fib_y = {
                    let yv = cx.read(&y);
                    cx.ty_d(&jbl.binder_ty, yv)?
                };
                let s_j = js_inner_ref(cx, &a_l_cap, &t_l_cap, &t_d_cap, cx.read(&q))?;
                let s_stmt = {
                    let yv = cx.read(&y);
                    cx.ty_s(&jbl.binder_ty, yv, trv.clone())?
                };
                let u_slots = TmSlots {
                    a0: Some(y.clone()),
                    d: Some(cx.cap(trv.clone())),
                    s: Some(cx.cap(s_j.clone())),
                    ..TmSlots::default()
                };
                let p_slots = TmSlots {
                    a0: Some(q.clone()),
                    d: Some(cx.cap(prefl(fib_y, trv))),
                    s: Some(cx.cap(prefl(s_stmt, s_j))),
                    ..TmSlots::default()
                };
                let pt_a = cx.j_a_point(&jbl, motive, pr, Side::Left, cx.read(&q))?;
                let pt_d = cx.j_d_stage1(motive, pr, path, cx.read(&q))?;
                cx.with_slots(Slot::Tm(u_slots), Slot::Tm(p_slots), |cx| {
                    cx.ty_s(motive, pt_a, pt_d)
                })
            },
        )?;
        let stage1 = mk_j(mot1, self.tm_s(pr)?, p_a);

        // stage 2: induction on p^D
        let jb2 = j_binder(path);
        let fiber_u = self.ty_d(&bty, self.read(&u_l_cap))?;
        let trv_full = {
            let fam = self.j_fam_d(&jb2)?;
            mk_tr(fam, self.read(&p_a_cap), self.read(&t_d_cap))
        };
        let trv_cap = self.cap(trv_full);
        let fiber_u_cap = self.cap(fiber_u.clone());
        let mot2 = self.lam2(
            "yD".into(),
            fiber_u,
            |cx, y_d| {
                Ok(rc(ITm::Path(
                    cx.read(&fiber_u_cap),
                    cx.read(&trv_cap),
                    cx.read(y_d),
                )))
            },
            |cx, y_d, r_d| {
                let jbl = JBinder {
                    binder_ty: jb2.binder_ty.clone(),
                    t: jb2.t.clone(),
                    u: jb2.u.clone(),
                };
                let s_v = s_val_ref(
                    cx, &a_l_cap, &t_l_cap, &t_d_cap, &u_l_cap,
                    cx.read(&p_a_cap),
                    cx.read(&r_d),
                    js_inner_ref,
                )?;
                let s_stmt = {
                    let ul = cx.read(&u_l_cap);
                    let yv = cx.read(&y_d);
                    cx.ty_s(&jbl.binder_ty, ul, yv)?
                };
                let u_slots = TmSlots {
                    a0: Some(u_l_cap.clone()),
                    d: Some(y_d.clone()),
                    s: Some(cx.cap(s_v.clone())),
                    ..TmSlots::default()
                };
                let p_slots = TmSlots {
                    a0: Some(p_a_cap.clone()),
                    d: Some(r_d.clone()),
                    s: Some(cx.cap(prefl(s_stmt, s_v))),
                    ..TmSlots::default()
                };
                let pt_a = cx.j_a_point(&jbl, motive, pr, Side::Left, cx.read(&p_a_cap))?;
                let pt_d = cx.j_d_stage2(motive, pr, path, cx.read(&r_d))?;
                cx.with_slots(Slot::Tm(u_slots), Slot::Tm(p_slots), |cx| {
                    cx.ty_s(motive, pt_a, pt_d)
                })
            },
        )?;
        let stage2 = mk_j(mot2, stage1, self.tm_d(path)?);

        // stage 3: induction on p^S
        let jb3 = j_binder(path);
        let s_space = self.ty_s(&bty, self.read(&u_l_cap), self.read(&u_d_cap))?;
        let p_d_full = self.tm_d(path)?;
        let s_full = s_val(
            self,
            &a_l_cap,
            &t_l_cap,
            &t_d_cap,
            &u_l_cap,
            self.read(&p_a_cap),
            p_d_full.clone(),
            &js_inner,
        )?;
        let s_full_cap = self.cap(s_full);
        let s_space_cap = self.cap(s_space.clone());
        let p_d_cap = self.cap(p_d_full);
        let mot3 = self.lam2(
            "w".into(),
            s_space,
            |cx, w| {
                Ok(rc(ITm::Path(
                    cx.read(&s_space_cap),
                    cx.read(&s_full_cap),
                    cx.read(w),
                )))
            },
            |cx, w, r| {
                let jbl = JBinder {
                    binder_ty: jb3.binder_ty.clone(),
                    t: jb3.t.clone(),
                    u: jb3.u.clone(),
                };
                let u_slots = TmSlots {
                    a0: Some(u_l_cap.clone()),
                    d: Some(u_d_cap.clone()),
                    s: Some(w.clone()),
                    ..TmSlots::default()
                };
                let p_slots = TmSlots {
                    a0: Some(p_a_cap.clone()),
                    d: Some(p_d_cap.clone()),
                    s: Some(r),
                    ..TmSlots::default()
                };
                let pt_a = cx.j_a_point(&jbl, motive, pr, Side::Left, cx.read(&p_a_cap))?;
                let pt_d = cx.j_d_stage2(motive, pr, path, cx.read(&p_d_cap))?;
                cx.with_slots(Slot::Tm(u_slots), Slot::Tm(p_slots), |cx| {
                    cx.ty_s(motive, pt_a, pt_d)
                })
            },
        )?;
        Ok(mk_j(mot3, stage2, self.tm_s(path)?))
    }
}
