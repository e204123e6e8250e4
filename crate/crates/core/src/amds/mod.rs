//! The four interpretations of signatures — algebras, morphisms,
//! displayed algebras, sections — together with packaged induction and
//! recursion principle types. Each clause follows the per-profile
//! equation tables; emission targets the inner theory and every emitted
//! unit re-checks under the inner checker.
//!
//! Contexts interpret to right-nested sigma telescopes (a leading unit is
//! elided); morphism/displayed/section units take the component spreads of
//! the relevant algebras as parameters.

mod interp;

pub use interp::{Cap, Cx, Side, Unsupported};

use crate::diag::{Code, Diagnostic};
use crate::inner::{rc, EmitDef, EmitUnit, ITm, RcITm, Sort};
use crate::tos::{Binder, Ctx, Profile, RcTy};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InterpKind {
    A,
    M,
    D,
    S,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmitKind {
    Alg,
    Mor,
    DispAlg,
    Section,
    Induction,
    Recursion,
}

impl EmitKind {
    pub fn parse(token: &str) -> Option<EmitKind> {
        Some(match token {
            "a" | "alg" => EmitKind::Alg,
            "m" | "mor" => EmitKind::Mor,
            "d" | "disp" => EmitKind::DispAlg,
            "s" | "sect" => EmitKind::Section,
            "ind" => EmitKind::Induction,
            "rec" => EmitKind::Recursion,
            _ => return None,
        })
    }
}

/// The universe that algebra sorts land in, per profile.
pub(crate) fn u_sort(profile: Profile) -> Sort {
    match profile {
        Profile::Simple | Profile::Fqii => Sort::Set,
        Profile::HiitStrict => Sort::Ty0,
        Profile::HiitWeak => Sort::U0,
    }
}

fn entry_tys(ctx: &Ctx) -> Vec<(String, RcTy)> {
    ctx.entries()
        .iter()
        .map(|e| match &e.binder {
            Binder::Ty(t) => (e.name.clone(), t.clone()),
            Binder::Ext(_) => unreachable!("top-level signatures bind no external entries"),
        })
        .collect()
}

struct NamePool {
    used: Vec<String>,
    agda: Vec<(String, String)>,
}

/// Names the printed dialects treat as operators or constants; emitted
/// binders avoid them.
const RESERVED_NAMES: &[&str] = &[
    "tr", "ap", "apd", "J", "funext", "happly", "inv", "comp", "proj1", "proj2", "refl", "tt",
    "Top", "Set", "Ty0", "U0", "U1",
];

impl NamePool {
    fn new() -> NamePool {
        NamePool {
            used: RESERVED_NAMES.iter().map(|s| s.to_string()).collect(),
            agda: Vec::new(),
        }
    }

    /// `base` + component suffix, de-clashed with a numeric suffix; records
    /// the Agda rendering (superscript components, subscript copies).
    fn decorated(&mut self, base: &str, suffix: &str) -> String {
        let mut ascii = format!("{base}{suffix}");
        let mut k = 1usize;
        while self.used.contains(&ascii) {
            k += 1;
            ascii = format!("{base}{suffix}{k}");
        }
        self.used.push(ascii.clone());
        let agda_suffix: String = suffix
            .chars()
            .map(|c| match c {
                'M' => 'ᴹ',
                'D' => 'ᴰ',
                'S' => 'ˢ',
                '0' => '₀',
                '1' => '₁',
                other => other,
            })
            .collect();
        let mut agda = format!("{base}{agda_suffix}");
        if k > 1 {
            agda.push_str(&k.to_string());
        }
        if agda != ascii {
            self.agda.push((ascii.clone(), agda));
        }
        ascii
    }

    fn plain(&mut self, base: &str) -> String {
        self.decorated(base, "")
    }
}

/// Emits one interpretation (or a packaged principle) of an elaborated
/// signature.
pub fn emit_unit(
    ctx: &Ctx,
    sig_name: &str,
    source_hash: &str,
    kind: EmitKind,
) -> Result<EmitUnit, Diagnostic> {
    let mut pool = NamePool::new();
    let def = build_def(ctx, sig_name, &mut pool, kind).map_err(|u| {
        Diagnostic::new(Code::EUnsupported, u.0).with_profile(ctx.profile)
    })?;
    Ok(EmitUnit {
        profile: ctx.profile,
        sig_name: sig_name.to_string(),
        source_hash: source_hash.to_string(),
        defs: vec![def],
        agda_names: pool.agda,
    })
}

/// All six emissions, used by the re-check suites.
pub fn emit_all(
    ctx: &Ctx,
    sig_name: &str,
    source_hash: &str,
) -> Vec<(EmitKind, Result<EmitUnit, Diagnostic>)> {
    [
        EmitKind::Alg,
        EmitKind::Mor,
        EmitKind::DispAlg,
        EmitKind::Section,
        EmitKind::Induction,
        EmitKind::Recursion,
    ]
    .into_iter()
    .map(|k| (k, emit_unit(ctx, sig_name, source_hash, k)))
    .collect()
}

// ---------------------------------------------------------------------------
// Telescope assembly
// ---------------------------------------------------------------------------

/// Right-nested sigma telescope; one component stays bare, none is unit.
fn sigma_telescope(comps: Vec<(String, RcITm)>) -> RcITm {
    let mut it = comps.into_iter().rev();
    let Some((_, last)) = it.next() else {
        return rc(ITm::Unit);
    };
    let mut body = last;
    for (name, ty) in it {
        body = rc(ITm::Sg(name, ty, body));
    }
    body
}

fn pis_over(params: &[(String, RcITm)], body: RcITm) -> RcITm {
    let mut out = body;
    for (name, ty) in params.iter().rev() {
        out = rc(ITm::Pi(name.clone(), ty.clone(), out));
    }
    out
}

/// Peels `count` outer pi binders back into an explicit parameter list.
fn peel_params(body: RcITm, count: usize) -> (Vec<(String, RcITm)>, RcITm) {
    let mut params = Vec::with_capacity(count);
    let mut cur = body;
    for _ in 0..count {
        match &*cur.clone() {
            ITm::Pi(name, dom, cod) => {
                params.push((name.clone(), dom.clone()));
                cur = cod.clone();
            }
            _ => unreachable!("fewer binders than parameters"),
        }
    }
    (params, cur)
}

use crate::inner::shift;

fn build_def(
    ctx: &Ctx,
    sig: &str,
    pool: &mut NamePool,
    kind: EmitKind,
) -> Result<EmitDef, Unsupported> {
    let simple = ctx.profile == Profile::Simple;
    let mut cx = Cx::new(ctx);
    let mut params: Vec<(String, RcITm)> = Vec::new();
    let mut comps: Vec<(String, RcITm)> = Vec::new();

    // one spread of algebra components, written into the a0 or a1 slots
    fn spread_alg(
        ctx: &Ctx,
        cx: &mut Cx,
        pool: &mut NamePool,
        out: &mut Vec<(String, RcITm)>,
        suffix: &str,
        side: Side,
    ) -> Result<Vec<Cap>, Unsupported> {
        if ctx.profile == Profile::Simple {
            let name = pool.decorated("X", suffix);
            out.push((name, rc(ITm::Sort(Sort::Set))));
            let v = cx.bind();
            cx.set_carrier(if side == Side::Left { "" } else { "1c" }, v);
        }
        let mut vars = Vec::new();
        for (i, (name, ty)) in entry_tys(ctx).into_iter().enumerate() {
            let comp_ty = cx.entry_ty_a(i, &ty, side)?;
            let pname = pool.decorated(&name, suffix);
            out.push((pname, comp_ty));
            let v = cx.bind();
            match side {
                Side::Left => cx.push_a0(v.clone()),
                Side::Right => cx.set_a1(i, v.clone()),
            }
            vars.push(v);
        }
        Ok(vars)
    }

    match kind {
        EmitKind::Alg => {
            if simple {
                let name = pool.plain("X");
                comps.push((name, rc(ITm::Sort(Sort::Set))));
                let v = cx.bind();
                cx.set_carrier("", v);
            }
            for (i, (name, ty)) in entry_tys(ctx).into_iter().enumerate() {
                let comp_ty = cx.entry_ty_a(i, &ty, Side::Left)?;
                let cname = pool.plain(&name);
                comps.push((cname, comp_ty));
                let v = cx.bind();
                cx.push_a0(v);
            }
            Ok(EmitDef {
                name: format!("{sig}Alg"),
                params: Vec::new(),
                body: sigma_telescope(comps),
            })
        }
        EmitKind::Mor | EmitKind::Recursion => {
            let left = spread_alg(ctx, &mut cx, pool, &mut params, "0", Side::Left)?;
            let right = spread_alg(ctx, &mut cx, pool, &mut params, "1", Side::Right)?;
            if simple {
                let x0 = cx.carrier_read("");
                let x1 = cx.carrier_read("1c");
                let name = pool.decorated("X", "M");
                let fun = rc(ITm::Pi("_".into(), x0, shift(&x1, 1, 0)));
                comps.push((name, fun));
                let v = cx.bind();
                cx.set_carrier("M", v);
            }
            for (i, (name, ty)) in entry_tys(ctx).into_iter().enumerate() {
                let comp_ty = cx.entry_ty_m(i, &ty, &left[i], &right[i])?;
                let cname = pool.decorated(&name, "M");
                comps.push((cname, comp_ty));
                let v = cx.bind();
                cx.set_m(i, v);
            }
            let closed = pis_over(&params, sigma_telescope(comps));
            if kind == EmitKind::Mor {
                let (params, body) = peel_params(closed, params.len());
                Ok(EmitDef {
                    name: format!("{sig}Mor"),
                    params,
                    body,
                })
            } else {
                Ok(EmitDef {
                    name: format!("{sig}Rec"),
                    params: Vec::new(),
                    body: closed,
                })
            }
        }
        EmitKind::DispAlg => {
            let base = spread_alg(ctx, &mut cx, pool, &mut params, "", Side::Left)?;
            if simple {
                let x = cx.carrier_read("");
                let name = pool.decorated("X", "D");
                let fam = rc(ITm::Pi("_".into(), x, rc(ITm::Sort(Sort::Set))));
                comps.push((name, fam));
                let v = cx.bind();
                cx.set_carrier("D", v);
            }
            for (i, (name, ty)) in entry_tys(ctx).into_iter().enumerate() {
                let comp_ty = cx.entry_ty_d(i, &ty, &base[i])?;
                let cname = pool.decorated(&name, "D");
                comps.push((cname, comp_ty));
                let v = cx.bind();
                cx.set_d(i, v);
            }
            let closed = pis_over(&params, sigma_telescope(comps));
            let (params, body) = peel_params(closed, params.len());
            Ok(EmitDef {
                name: format!("{sig}DispAlg"),
                params,
                body,
            })
        }
        EmitKind::Section | EmitKind::Induction => {
            if ctx.is_empty() && !simple && kind == EmitKind::Induction {
                let unit = rc(ITm::Unit);
                let body = rc(ITm::Pi(
                    "g".into(),
                    unit.clone(),
                    rc(ITm::Pi("gD".into(), unit.clone(), unit)),
                ));
                return Ok(EmitDef {
                    name: format!("{sig}Ind"),
                    params: Vec::new(),
                    body,
                });
            }
            let base = spread_alg(ctx, &mut cx, pool, &mut params, "", Side::Left)?;
            if simple {
                let x = cx.carrier_read("");
                let name = pool.decorated("X", "D");
                let fam = rc(ITm::Pi("_".into(), x, rc(ITm::Sort(Sort::Set))));
                params.push((name, fam));
                let v = cx.bind();
                cx.set_carrier("D", v);
            }
            for (i, (name, ty)) in entry_tys(ctx).into_iter().enumerate() {
                let comp_ty = cx.entry_ty_d(i, &ty, &base[i])?;
                let cname = pool.decorated(&name, "D");
                params.push((cname, comp_ty));
                let v = cx.bind();
                cx.set_d(i, v);
            }
            if simple {
                let x = cx.carrier_read("");
                let xd = cx.carrier_read("D");
                let name = pool.decorated("X", "S");
                let fam = rc(ITm::Pi(
                    "x".into(),
                    x,
                    rc(ITm::App(shift(&xd, 1, 0), rc(ITm::Var(0)))),
                ));
                comps.push((name, fam));
                let v = cx.bind();
                cx.set_carrier("S", v);
            }
            for (i, (name, ty)) in entry_tys(ctx).into_iter().enumerate() {
                let pd = cx.d_cap(i);
                let comp_ty = cx.entry_ty_s(i, &ty, &base[i], &pd)?;
                let cname = pool.decorated(&name, "S");
                comps.push((cname, comp_ty));
                let v = cx.bind();
                cx.set_s(i, v);
            }
            let closed = pis_over(&params, sigma_telescope(comps));
            if kind == EmitKind::Section {
                let (params, body) = peel_params(closed, params.len());
                Ok(EmitDef {
                    name: format!("{sig}Section"),
                    params,
                    body,
                })
            } else {
                Ok(EmitDef {
                    name: format!("{sig}Ind"),
                    params: Vec::new(),
                    body: closed,
                })
            }
        }
    }
}
