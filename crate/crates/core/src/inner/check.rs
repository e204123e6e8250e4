//! A validating checker for the inner theory: type inference with
//! beta-normalizing conversion, cumulative sorts, and proof irrelevance at
//! strict equality. Every emitted unit must pass.

use std::cell::Cell;
use std::fmt;
use std::rc::Rc;

use super::syntax::*;
use crate::tos::{ExternKind, ExternTable, Profile};

#[derive(Debug, Clone)]
pub struct InnerErr {
    pub path: Vec<String>,
    pub message: String,
}

impl fmt::Display for InnerErr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            write!(f, "{}", self.message)
        } else {
            write!(f, "{}: {}", self.path.join("."), self.message)
        }
    }
}

fn fail<T>(msg: impl Into<String>) -> Result<T, InnerErr> {
    Err(InnerErr {
        path: Vec::new(),
        message: msg.into(),
    })
}

thread_local! {
    static FUEL: Cell<u64> = const { Cell::new(u64::MAX) };
}

/// Run `f` under a normalization-step budget (the termination assertion in
/// tests); exceeding the budget panics.
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
            panic!("inner normalization fuel exhausted");
        }
        if left != u64::MAX {
            c.set(left - 1);
        }
    });
}

/// Full beta normalization. Transport, path lifting and path induction
/// compute at refl; inversion and composition simplify at refl.
pub fn normalize(t: &RcITm) -> RcITm {
    burn();
    match &**t {
        ITm::Sort(_) | ITm::Ext(_) | ITm::Var(_) | ITm::Unit | ITm::UnitVal => t.clone(),
        ITm::Pi(x, a, b) => rc(ITm::Pi(x.clone(), normalize(a), normalize(b))),
        ITm::Lam(x, a, b) => {
            let nb = normalize(b);
            // eta contraction: λx. f x — with x not free in f — is f
            if let ITm::App(f, arg) = &*nb {
                if matches!(&**arg, ITm::Var(0)) {
                    if let Some(f0) = try_unshift(f) {
                        return f0;
                    }
                }
            }
            rc(ITm::Lam(x.clone(), normalize(a), nb))
        }
        ITm::App(f, a) => {
            let nf = normalize(f);
            let na = normalize(a);
            match &*nf {
                ITm::Lam(_, _, body) => normalize(&subst1(body, &na)),
                _ => rc(ITm::App(nf, na)),
            }
        }
        ITm::Sg(x, a, b) => rc(ITm::Sg(x.clone(), normalize(a), normalize(b))),
        ITm::Pair(s, a, b) => rc(ITm::Pair(normalize(s), normalize(a), normalize(b))),
        ITm::Proj1(x) => {
            let nx = normalize(x);
            match &*nx {
                ITm::Pair(_, a, _) => a.clone(),
                _ => rc(ITm::Proj1(nx)),
            }
        }
        ITm::Proj2(x) => {
            let nx = normalize(x);
            match &*nx {
                ITm::Pair(_, _, b) => b.clone(),
                _ => rc(ITm::Proj2(nx)),
            }
        }
        ITm::Path(a, x, y) => rc(ITm::Path(normalize(a), normalize(x), normalize(y))),
        ITm::StrictEq(a, x, y) => rc(ITm::StrictEq(normalize(a), normalize(x), normalize(y))),
        ITm::Refl { strict, ty, tm } => rc(ITm::Refl {
            strict: *strict,
            ty: normalize(ty),
            tm: normalize(tm),
        }),
        ITm::Tr { motive, path, point } => {
            let np = normalize(path);
            if matches!(&*np, ITm::Refl { .. }) {
                return normalize(point);
            }
            rc(ITm::Tr {
                motive: normalize(motive),
                path: np,
                point: normalize(point),
            })
        }
        ITm::Ap { f, path } => {
            let np = normalize(path);
            if let ITm::Refl { ty, tm, .. } = &*np {
                let at = rc(ITm::App(normalize(f), tm.clone()));
                return rc(ITm::Refl {
                    strict: false,
                    ty: ty.clone(),
                    tm: normalize(&at),
                });
            }
            rc(ITm::Ap {
                f: normalize(f),
                path: np,
            })
        }
        ITm::Apd { f, path } => {
            let np = normalize(path);
            if let ITm::Refl { ty, tm, .. } = &*np {
                let at = rc(ITm::App(normalize(f), tm.clone()));
                return rc(ITm::Refl {
                    strict: false,
                    ty: ty.clone(),
                    tm: normalize(&at),
                });
            }
            rc(ITm::Apd {
                f: normalize(f),
                path: np,
            })
        }
        ITm::J { motive, pr, path } => {
            let np = normalize(path);
            if matches!(&*np, ITm::Refl { .. }) {
                return normalize(pr);
            }
            rc(ITm::J {
                motive: normalize(motive),
                pr: normalize(pr),
                path: np,
            })
        }
        ITm::Funext { f, g, h } => rc(ITm::Funext {
            f: normalize(f),
            g: normalize(g),
            h: normalize(h),
        }),
        ITm::Happly { path, arg } => {
            let np = normalize(path);
            let na = normalize(arg);
            if let ITm::Refl { tm, .. } = &*np {
                let at = rc(ITm::App(tm.clone(), na));
                return rc(ITm::Refl {
                    strict: false,
                    ty: rc(ITm::Unit),
                    tm: normalize(&at),
                });
            }
            rc(ITm::Happly { path: np, arg: na })
        }
        ITm::Inv(p) => {
            let np = normalize(p);
            if matches!(&*np, ITm::Refl { .. }) {
                return np;
            }
            rc(ITm::Inv(np))
        }
        ITm::Comp(p, q) => {
            let np = normalize(p);
            let nq = normalize(q);
            if matches!(&*np, ITm::Refl { .. }) {
                return nq;
            }
            if matches!(&*nq, ITm::Refl { .. }) {
                return np;
            }
            rc(ITm::Comp(np, nq))
        }
    }
}

pub fn conv(a: &RcITm, b: &RcITm) -> bool {
    alpha_eq(&normalize(a), &normalize(b))
}

/// Conversion with sort cumulativity (`got` may sit in a smaller sort than
/// `want`), pushed through pi and sigma codomains.
fn conv_le(got: &RcITm, want: &RcITm) -> bool {
    fn go(a: &ITm, b: &ITm) -> bool {
        match (a, b) {
            (ITm::Sort(s1), ITm::Sort(s2)) => s1 <= s2,
            (ITm::Pi(_, a1, b1), ITm::Pi(_, a2, b2)) | (ITm::Sg(_, a1, b1), ITm::Sg(_, a2, b2)) => {
                alpha_eq(a1, a2) && go(b1, b2)
            }
            _ => alpha_eq(a, b),
        }
    }
    go(&normalize(got), &normalize(want))
}

/// Typing environment: extern signature plus bound variables.
pub struct CheckCx {
    pub externs: Rc<ExternTable>,
    /// Sort assigned to extern types (profile dependent).
    pub ext_sort: Sort,
    vars: Vec<RcITm>,
}

impl CheckCx {
    pub fn new(externs: Rc<ExternTable>, profile: Profile) -> CheckCx {
        let ext_sort = match profile {
            Profile::Simple | Profile::Fqii => Sort::Set,
            Profile::HiitStrict => Sort::Ty0,
            Profile::HiitWeak => Sort::U0,
        };
        CheckCx {
            externs,
            ext_sort,
            vars: Vec::new(),
        }
    }

    fn push(&mut self, ty: RcITm) {
        self.vars.push(ty);
    }

    /// Extends the context with one binder (library clients and tests).
    pub fn push_var(&mut self, ty: RcITm) {
        self.push(ty);
    }

    fn pop(&mut self) {
        self.vars.pop();
    }

    fn lookup(&self, ix: usize) -> Result<RcITm, InnerErr> {
        let n = self.vars.len();
        if ix >= n {
            return fail(format!("variable {ix} out of scope"));
        }
        Ok(shift(&self.vars[n - 1 - ix], ix + 1, 0))
    }
}

fn sort_of_sort(s: Sort) -> Sort {
    match s {
        Sort::U0 => Sort::U1,
        Sort::U1 => Sort::Ty0,
        Sort::Ty0 => Sort::Set,
        Sort::Set => Sort::Set,
    }
}

/// Infers the (normalized) type of a term.
pub fn infer(cx: &mut CheckCx, t: &RcITm) -> Result<RcITm, InnerErr> {
    burn();
    match &**t {
        ITm::Sort(s) => Ok(rc(ITm::Sort(sort_of_sort(*s)))),
        ITm::Ext(id) => match cx.externs.kind(*id) {
            ExternKind::Type => Ok(rc(ITm::Sort(cx.ext_sort))),
            ExternKind::Term { params, ret } => {
                let mut ty = rc(ITm::Ext(*ret));
                for p in params.iter().rev() {
                    ty = rc(ITm::Pi("_".into(), rc(ITm::Ext(*p)), shift(&ty, 1, 0)));
                }
                Ok(ty)
            }
        },
        ITm::Var(i) => Ok(normalize(&cx.lookup(*i)?)),
        ITm::Pi(_, a, b) | ITm::Sg(_, a, b) => {
            let sa = infer_sort(cx, a)?;
            cx.push(a.clone());
            let sb = infer_sort(cx, b);
            cx.pop();
            Ok(rc(ITm::Sort(sa.max(sb?))))
        }
        ITm::Lam(x, a, body) => {
            infer_sort(cx, a)?;
            cx.push(a.clone());
            let tb = infer(cx, body);
            cx.pop();
            Ok(rc(ITm::Pi(x.clone(), normalize(a), tb?)))
        }
        ITm::App(f, u) => {
            let tf = infer(cx, f)?;
            match &*tf {
                ITm::Pi(_, a, b) => {
                    let tu = infer(cx, u)?;
                    if !conv_le(&tu, a) {
                        return fail(format!(
                            "application argument type mismatch: argument has {tu:?}, domain is {a:?}"
                        ));
                    }
                    Ok(normalize(&subst1(b, u)))
                }
                other => fail(format!("application head is not a function: {other:?}")),
            }
        }
        ITm::Pair(s, a, b) => {
            let ns = normalize(s);
            match &*ns {
                ITm::Sg(_, ta, tb) => {
                    let ta_got = infer(cx, a)?;
                    if !conv_le(&ta_got, ta) {
                        return fail("pair first component type mismatch");
                    }
                    let want = normalize(&subst1(tb, a));
                    let tb_got = infer(cx, b)?;
                    if !conv_le(&tb_got, &want) {
                        return fail("pair second component type mismatch");
                    }
                    Ok(ns)
                }
                other => fail(format!("pair annotation is not a sigma type: {other:?}")),
            }
        }
        ITm::Proj1(x) => match &*infer(cx, x)? {
            ITm::Sg(_, a, _) => Ok(a.clone()),
            other => fail(format!("proj1 of a non-pair: {other:?}")),
        },
        ITm::Proj2(x) => match &*infer(cx, x)? {
            ITm::Sg(_, _, b) => Ok(normalize(&subst1(b, &rc(ITm::Proj1(x.clone()))))),
            other => fail(format!("proj2 of a non-pair: {other:?}")),
        },
        ITm::Unit => Ok(rc(ITm::Sort(Sort::U0))),
        ITm::UnitVal => Ok(rc(ITm::Unit)),
        ITm::Path(a, x, y) => {
            let s = infer_sort(cx, a)?;
            let tx = infer(cx, x)?;
            let ty_ = infer(cx, y)?;
            let na = normalize(a);
            if !conv_le(&tx, &na) {
                return fail("path left endpoint type mismatch");
            }
            if !conv_le(&ty_, &na) {
                return fail("path right endpoint type mismatch");
            }
            Ok(rc(ITm::Sort(s)))
        }
        ITm::StrictEq(a, x, y) => {
            // strict equality is extensional and may relate terms of
            // different types (transports along it stay implicit), so both
            // endpoints are typed independently and the annotation records
            // the intended type without constraining them
            infer_sort(cx, a)?;
            infer(cx, x)?;
            infer(cx, y)?;
            Ok(rc(ITm::Sort(Sort::Set)))
        }
        ITm::Refl { strict, ty, tm } => {
            infer_sort(cx, ty)?;
            let tt = infer(cx, tm)?;
            if !*strict && !conv_le(&tt, &normalize(ty)) {
                return fail("refl annotation type mismatch");
            }
            let n_ty = normalize(ty);
            let n_tm = normalize(tm);
            Ok(if *strict {
                rc(ITm::StrictEq(n_ty, n_tm.clone(), n_tm))
            } else {
                rc(ITm::Path(n_ty, n_tm.clone(), n_tm))
            })
        }
        ITm::Tr { motive, path, point } => {
            let tp = infer(cx, path)?;
            let (a, x, y) = match &*tp {
                ITm::Path(a, x, y) => (a.clone(), x.clone(), y.clone()),
                other => fail(format!("transport along a non-path: {other:?}"))?,
            };
            let tm_mot = infer(cx, motive)?;
            match &*tm_mot {
                ITm::Pi(_, dom, cod) => {
                    if !conv(dom, &a) {
                        return fail("transport motive domain mismatch");
                    }
                    if !matches!(&*normalize(cod), ITm::Sort(_)) {
                        return fail("transport motive must land in a sort");
                    }
                }
                other => fail(format!("transport motive is not a function: {other:?}"))?,
            }
            let want = normalize(&rc(ITm::App(motive.clone(), x)));
            let tp_ = infer(cx, point)?;
            if !conv_le(&tp_, &want) {
                return fail(format!(
                    "transported point has the wrong fiber: expected over the path source, got {tp_:?}"
                ));
            }
            Ok(normalize(&rc(ITm::App(motive.clone(), y))))
        }
        ITm::Ap { f, path } => {
            let tf = infer(cx, f)?;
            let (a, b) = match &*tf {
                ITm::Pi(_, a, b) => (a.clone(), b.clone()),
                other => fail(format!("ap of a non-function: {other:?}"))?,
            };
            // non-dependent codomain required
            let b0 = try_unshift(&b)
                .ok_or_else(|| InnerErr {
                    path: Vec::new(),
                    message: "ap requires a non-dependent function".into(),
                })?;
            let tp = infer(cx, path)?;
            let (pa, x, y) = match &*tp {
                ITm::Path(pa, x, y) => (pa.clone(), x.clone(), y.clone()),
                other => fail(format!("ap along a non-path: {other:?}"))?,
            };
            if !conv(&pa, &a) {
                return fail("ap path type and function domain disagree");
            }
            Ok(normalize(&rc(ITm::Path(
                b0,
                rc(ITm::App(f.clone(), x)),
                rc(ITm::App(f.clone(), y)),
            ))))
        }
        ITm::Apd { f, path } => {
            let tf = infer(cx, f)?;
            let (a, b) = match &*tf {
                ITm::Pi(_, a, b) => (a.clone(), b.clone()),
                other => fail(format!("apd of a non-function: {other:?}"))?,
            };
            let tp = infer(cx, path)?;
            let (pa, x, y) = match &*tp {
                ITm::Path(pa, x, y) => (pa.clone(), x.clone(), y.clone()),
                other => fail(format!("apd along a non-path: {other:?}"))?,
            };
            if !conv(&pa, &a) {
                return fail("apd path type and function domain disagree");
            }
            let motive = rc(ITm::Lam("z".into(), a, b.clone()));
            let fiber_y = normalize(&subst1(&b, &y));
            Ok(normalize(&rc(ITm::Path(
                fiber_y,
                rc(ITm::Tr {
                    motive,
                    path: path.clone(),
                    point: rc(ITm::App(f.clone(), x)),
                }),
                rc(ITm::App(f.clone(), y)),
            ))))
        }
        ITm::J { motive, pr, path } => {
            let tp = infer(cx, path)?;
            let (a, x, y) = match &*tp {
                ITm::Path(a, x, y) => (a.clone(), x.clone(), y.clone()),
                other => fail(format!("J along a non-path: {other:?}"))?,
            };
            // motive : (z : A) -> Path A x z -> sort
            let tm_mot = infer(cx, motive)?;
            let ok_shape = matches!(&*tm_mot, ITm::Pi(_, dom, cod)
                if conv(dom, &a) && matches!(&**cod, ITm::Pi(_, _, s) if matches!(&*normalize(s), ITm::Sort(_))));
            if !ok_shape {
                return fail("J motive must be a two-argument function into a sort");
            }
            let base_refl = rc(ITm::Refl {
                strict: false,
                ty: a,
                tm: x.clone(),
            });
            let want_pr = normalize(&apps(motive.clone(), [x, base_refl]));
            let t_pr = infer(cx, pr)?;
            if !conv_le(&t_pr, &want_pr) {
                return fail(format!(
                    "J base case has the wrong type: expected {want_pr:?}, got {t_pr:?}"
                ));
            }
            Ok(normalize(&apps(motive.clone(), [y, path.clone()])))
        }
        ITm::Funext { f, g, h } => {
            let tf = infer(cx, f)?;
            let (a, b) = match &*tf {
                ITm::Pi(_, a, b) => (a.clone(), b.clone()),
                other => fail(format!("funext of a non-function: {other:?}"))?,
            };
            let tg = infer(cx, g)?;
            if !conv(&tg, &tf) {
                return fail("funext endpoints have different function types");
            }
            let f_up = shift(f, 1, 0);
            let g_up = shift(g, 1, 0);
            let expected_h = rc(ITm::Pi(
                "x".into(),
                a,
                rc(ITm::Path(
                    b,
                    rc(ITm::App(f_up, var(0))),
                    rc(ITm::App(g_up, var(0))),
                )),
            ));
            let th = infer(cx, h)?;
            if !conv(&th, &normalize(&expected_h)) {
                return fail("funext pointwise family has the wrong type");
            }
            Ok(rc(ITm::Path(tf, normalize(f), normalize(g))))
        }
        ITm::Happly { path, arg } => {
            let tp = infer(cx, path)?;
            let (fty, f, g) = match &*tp {
                ITm::Path(fty, f, g) => (fty.clone(), f.clone(), g.clone()),
                other => fail(format!("happly along a non-path: {other:?}"))?,
            };
            let (a, b) = match &*fty {
                ITm::Pi(_, a, b) => (a.clone(), b.clone()),
                other => fail(format!("happly needs a path between functions: {other:?}"))?,
            };
            let ta = infer(cx, arg)?;
            if !conv_le(&ta, &a) {
                return fail("happly argument type mismatch");
            }
            Ok(normalize(&rc(ITm::Path(
                subst1(&b, arg),
                rc(ITm::App(f, arg.clone())),
                rc(ITm::App(g, arg.clone())),
            ))))
        }
        ITm::Inv(p) => {
            let tp = infer(cx, p)?;
            match &*tp {
                ITm::Path(a, x, y) => Ok(rc(ITm::Path(a.clone(), y.clone(), x.clone()))),
                other => fail(format!("inversion of a non-path: {other:?}")),
            }
        }
        ITm::Comp(p, q) => {
            let tp = infer(cx, p)?;
            let tq = infer(cx, q)?;
            match (&*tp, &*tq) {
                (ITm::Path(a, x, y), ITm::Path(a2, y2, z)) => {
                    if !conv(a, a2) {
                        return fail("path composition over different types");
                    }
                    if !conv(y, y2) {
                        return fail("path composition endpoints do not meet");
                    }
                    Ok(rc(ITm::Path(a.clone(), x.clone(), z.clone())))
                }
                _ => fail("path composition of non-paths"),
            }
        }
    }
}

fn infer_sort(cx: &mut CheckCx, t: &RcITm) -> Result<Sort, InnerErr> {
    match &*infer(cx, t)? {
        ITm::Sort(s) => Ok(*s),
        other => fail(format!("expected a type, found a term of {other:?}")),
    }
}

/// Shift down by one when variable 0 does not occur; None otherwise.
fn try_unshift(t: &RcITm) -> Option<RcITm> {
    fn occurs(t: &ITm, ix: usize) -> bool {
        match t {
            ITm::Var(i) => *i == ix,
            ITm::Sort(_) | ITm::Ext(_) | ITm::Unit | ITm::UnitVal => false,
            ITm::Pi(_, a, b) | ITm::Lam(_, a, b) | ITm::Sg(_, a, b) => {
                occurs(a, ix) || occurs(b, ix + 1)
            }
            ITm::App(f, a) | ITm::Comp(f, a) => occurs(f, ix) || occurs(a, ix),
            ITm::Pair(s, a, b) => occurs(s, ix) || occurs(a, ix) || occurs(b, ix),
            ITm::Proj1(x) | ITm::Proj2(x) | ITm::Inv(x) => occurs(x, ix),
            ITm::Path(a, x, y) | ITm::StrictEq(a, x, y) => {
                occurs(a, ix) || occurs(x, ix) || occurs(y, ix)
            }
            ITm::Refl { ty, tm, .. } => occurs(ty, ix) || occurs(tm, ix),
            ITm::Tr { motive, path, point } => {
                occurs(motive, ix) || occurs(path, ix) || occurs(point, ix)
            }
            ITm::Ap { f, path } | ITm::Apd { f, path } => occurs(f, ix) || occurs(path, ix),
            ITm::J { motive, pr, path } => {
                occurs(motive, ix) || occurs(pr, ix) || occurs(path, ix)
            }
            ITm::Funext { f, g, h } => occurs(f, ix) || occurs(g, ix) || occurs(h, ix),
            ITm::Happly { path, arg } => occurs(path, ix) || occurs(arg, ix),
        }
    }
    if occurs(t, 0) {
        None
    } else {
        Some(subst1(t, &rc(ITm::UnitVal)))
    }
}

/// Checks that `t` is a well-formed type in `cx`.
pub fn check_type(cx: &mut CheckCx, t: &RcITm) -> Result<(), InnerErr> {
    infer_sort(cx, t).map(|_| ())
}

/// Checks a whole emitted unit: every definition's parameter telescope and
/// body must be well-formed types.
pub fn check_unit(unit: &EmitUnit, externs: &Rc<ExternTable>) -> Result<(), InnerErr> {
    for def in &unit.defs {
        let mut cx = CheckCx::new(externs.clone(), unit.profile);
        for (pname, pty) in &def.params {
            check_type(&mut cx, pty).map_err(|mut e| {
                e.path.insert(0, format!("{}({pname})", def.name));
                e
            })?;
            cx.push(pty.clone());
        }
        check_type(&mut cx, &def.body).map_err(|mut e| {
            e.path.insert(0, def.name.clone());
            e
        })?;
    }
    Ok(())
}
