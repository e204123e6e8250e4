//! Executable semantics for simple-profile signatures: enumeration of the
//! term algebra, and evaluation-based recursors and eliminators over a
//! concrete 64-bit integer carrier. The recursor is the fold of a term in
//! a chosen algebra; the eliminator additionally feeds each method the
//! companion-recursor value of every inductive argument, which is enough
//! to exercise the dependency structure of induction.

mod expr;

pub use expr::Expr;

use crate::diag::{Code, Diagnostic};
use crate::tos::{syntax::tms, Binder, Ctx, Profile, RcTm, TmNode, Ty};

/// A closed term of the base sort over a fixed simple signature, in
/// constructor-spine form: a head entry and its argument terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TermValue {
    pub head: usize,
    pub args: Vec<TermValue>,
}

impl TermValue {
    pub fn depth(&self) -> usize {
        1 + self.args.iter().map(|a| a.depth()).max().unwrap_or(0)
    }

    pub fn node_count(&self) -> usize {
        1 + self.args.iter().map(|a| a.node_count()).sum::<usize>()
    }

    /// Renders with signature entry names, e.g. `suc (suc zero)`.
    pub fn render(&self, ctx: &Ctx) -> String {
        let name = &ctx.entries()[self.head].name;
        if self.args.is_empty() {
            name.clone()
        } else {
            let mut out = name.clone();
            for a in &self.args {
                out.push(' ');
                if a.args.is_empty() {
                    out.push_str(&a.render(ctx));
                } else {
                    out.push('(');
                    out.push_str(&a.render(ctx));
                    out.push(')');
                }
            }
            out
        }
    }

    /// The corresponding well-typed core term over the signature context.
    pub fn to_core(&self, ctx: &Ctx) -> RcTm {
        let ix = ctx.len() - 1 - self.head;
        let mut t = tms::var(ctx, ix).expect("term value head");
        for a in &self.args {
            let arg = a.to_core(ctx);
            t = tms::app(ctx, t, arg).expect("term value application");
        }
        t
    }

    /// Reads a constructor spine back from a core term.
    pub fn from_core(ctx: &Ctx, t: &RcTm) -> Option<TermValue> {
        match &t.node {
            TmNode::Var(ix) => Some(TermValue {
                head: ctx.len() - 1 - ix,
                args: Vec::new(),
            }),
            TmNode::App(f, a) => {
                let mut spine = TermValue::from_core(ctx, f)?;
                spine.args.push(TermValue::from_core(ctx, a)?);
                Some(spine)
            }
            _ => None,
        }
    }
}

fn arity_of(ty: &Ty) -> usize {
    match ty {
        Ty::SArrow(c) => 1 + arity_of(c),
        _ => 0,
    }
}

/// Entry arities of a simple signature.
pub fn arities(ctx: &Ctx) -> Result<Vec<usize>, Diagnostic> {
    if ctx.profile != Profile::Simple {
        return Err(Diagnostic::new(
            Code::EProfile,
            "term algebras are executable for the simple profile only",
        )
        .with_profile(ctx.profile));
    }
    Ok(ctx
        .entries()
        .iter()
        .map(|e| match &e.binder {
            Binder::Ty(t) => arity_of(t),
            Binder::Ext(_) => unreachable!(),
        })
        .collect())
}

/// Exactly the closed base-sort terms of spine depth <= `max_depth`, in a
/// deterministic order (by depth, then head entry, then argument tuples),
/// without duplicates.
pub fn enumerate_terms(ctx: &Ctx, max_depth: usize) -> Result<Vec<TermValue>, Diagnostic> {
    let ars = arities(ctx)?;
    let mut all: Vec<TermValue> = Vec::new();
    let mut out: Vec<TermValue> = Vec::new();
    for depth in 1..=max_depth {
        let mut level = Vec::new();
        for (head, &k) in ars.iter().enumerate() {
            if k == 0 {
                if depth == 1 {
                    level.push(TermValue {
                        head,
                        args: Vec::new(),
                    });
                }
                continue;
            }
            if depth == 1 || all.is_empty() {
                continue;
            }
            let pool = &all;
            let mut tuple = vec![0usize; k];
            loop {
                let args: Vec<TermValue> = tuple.iter().map(|&i| pool[i].clone()).collect();
                if args.iter().map(|a| a.depth()).max().unwrap_or(0) == depth - 1 {
                    level.push(TermValue { head, args });
                }
                let mut j = k;
                let mut carried = true;
                while carried && j > 0 {
                    j -= 1;
                    tuple[j] += 1;
                    if tuple[j] < pool.len() {
                        carried = false;
                    } else {
                        tuple[j] = 0;
                    }
                }
                if carried {
                    break;
                }
            }
        }
        all.extend(level.iter().cloned());
        out.extend(level);
    }
    Ok(out)
}

/// A concrete algebra on the 64-bit integer carrier: one arithmetic
/// expression per entry, over the positional argument names `x0..`.
#[derive(Debug, Clone)]
pub struct AlgebraSpec {
    pub ops: Vec<Expr>,
}

/// A concrete displayed algebra: methods additionally see `ih0..` (the
/// eliminator value of each inductive argument); the companion algebra
/// supplies the `x0..` values and defaults to the all-zero algebra.
#[derive(Debug, Clone)]
pub struct DispAlgebraSpec {
    pub companion: AlgebraSpec,
    pub methods: Vec<Expr>,
}

fn parse_ops(
    ctx: &Ctx,
    obj: &serde_json::Map<String, serde_json::Value>,
    allow_ih: bool,
) -> Result<Vec<Expr>, Diagnostic> {
    let ars = arities(ctx)?;
    let mut ops = Vec::with_capacity(ctx.len());
    for (i, e) in ctx.entries().iter().enumerate() {
        let src = obj.get(&e.name).and_then(|v| v.as_str()).ok_or_else(|| {
            Diagnostic::new(
                Code::EArity,
                format!("algebra is missing an expression for `{}`", e.name),
            )
        })?;
        let expr = Expr::parse(src).map_err(|m| {
            Diagnostic::new(Code::EParse, format!("in expression for `{}`: {m}", e.name))
        })?;
        expr.check_arity(ars[i], allow_ih).map_err(|m| {
            Diagnostic::new(Code::EArity, format!("in expression for `{}`: {m}", e.name))
        })?;
        ops.push(expr);
    }
    Ok(ops)
}

fn check_carrier(v: &serde_json::Value) -> Result<(), Diagnostic> {
    match v.get("carrier").and_then(|c| c.as_str()) {
        Some("int64") | None => Ok(()),
        Some(other) => Err(Diagnostic::new(
            Code::EParse,
            format!("unsupported carrier `{other}` (only int64)"),
        )),
    }
}

impl AlgebraSpec {
    /// Loads `{"carrier":"int64","ops":{"zero":"0","suc":"x0 + 1"}}`.
    pub fn from_json(ctx: &Ctx, source: &str) -> Result<AlgebraSpec, Diagnostic> {
        let v: serde_json::Value = serde_json::from_str(source)
            .map_err(|e| Diagnostic::new(Code::EParse, format!("algebra JSON: {e}")))?;
        check_carrier(&v)?;
        let obj = v
            .get("ops")
            .and_then(|o| o.as_object())
            .ok_or_else(|| Diagnostic::new(Code::EParse, "algebra JSON needs an `ops` object"))?;
        Ok(AlgebraSpec {
            ops: parse_ops(ctx, obj, false)?,
        })
    }
}

impl DispAlgebraSpec {
    /// Loads `{"carrier":"int64","companion":{...},"ops":{...}}`.
    pub fn from_json(ctx: &Ctx, source: &str) -> Result<DispAlgebraSpec, Diagnostic> {
        let v: serde_json::Value = serde_json::from_str(source)
            .map_err(|e| Diagnostic::new(Code::EParse, format!("algebra JSON: {e}")))?;
        check_carrier(&v)?;
        let methods = {
            let obj = v.get("ops").and_then(|o| o.as_object()).ok_or_else(|| {
                Diagnostic::new(Code::EParse, "displayed algebra JSON needs an `ops` object")
            })?;
            parse_ops(ctx, obj, true)?
        };
        let companion = match v.get("companion").and_then(|o| o.as_object()) {
            Some(obj) => AlgebraSpec {
                ops: parse_ops(ctx, obj, false)?,
            },
            None => AlgebraSpec {
                ops: ctx.entries().iter().map(|_| Expr::zero()).collect(),
            },
        };
        Ok(DispAlgebraSpec { companion, methods })
    }
}

/// Default evaluation budget in visited nodes.
pub const DEFAULT_NODE_BUDGET: usize = 1_000_000;

/// Post-order fold over a term with an explicit work stack; each step sees
/// the head entry plus the folded values of the arguments.
fn eval_fold<V: Clone>(
    t: &TermValue,
    budget: usize,
    step: &mut impl FnMut(usize, Vec<V>) -> Result<V, Diagnostic>,
) -> Result<V, Diagnostic> {
    enum Frame<'a> {
        Enter(&'a TermValue),
        Combine(&'a TermValue),
    }
    let mut work = vec![Frame::Enter(t)];
    let mut values: Vec<V> = Vec::new();
    let mut visited = 0usize;
    while let Some(frame) = work.pop() {
        match frame {
            Frame::Enter(node) => {
                visited += 1;
                if visited > budget {
                    return Err(Diagnostic::new(
                        Code::EOverflow,
                        format!("evaluation exceeded the node budget of {budget}"),
                    ));
                }
                work.push(Frame::Combine(node));
                for a in node.args.iter().rev() {
                    work.push(Frame::Enter(a));
                }
            }
            Frame::Combine(node) => {
                let n = node.args.len();
                let xs: Vec<V> = values.split_off(values.len() - n);
                values.push(step(node.head, xs)?);
            }
        }
    }
    Ok(values.pop().expect("evaluation produced a value"))
}

/// Structural evaluation in an algebra: `R t = t` folded through the ops.
pub fn eval_recursor(
    ctx: &Ctx,
    alg: &AlgebraSpec,
    t: &TermValue,
    budget: usize,
) -> Result<i64, Diagnostic> {
    let _ = ctx;
    eval_fold(t, budget, &mut |head, xs| alg.ops[head].eval(&xs, &[]))
}

/// Dependent structural evaluation: methods receive the companion value
/// and the eliminator value of every inductive argument.
pub fn eval_eliminator(
    ctx: &Ctx,
    dalg: &DispAlgebraSpec,
    t: &TermValue,
    budget: usize,
) -> Result<i64, Diagnostic> {
    let _ = ctx;
    let pair = eval_fold(t, budget, &mut |head, xs: Vec<(i64, i64)>| {
        let comp_args: Vec<i64> = xs.iter().map(|p| p.0).collect();
        let elim_args: Vec<i64> = xs.iter().map(|p| p.1).collect();
        let comp = dalg.companion.ops[head].eval(&comp_args, &[])?;
        let elim = dalg.methods[head].eval(&comp_args, &elim_args)?;
        Ok((comp, elim))
    })?;
    Ok(pair.1)
}

/// Parses a closed term such as `suc (suc zero)` against a simple
/// signature, via the surface expression grammar and the elaborator.
pub fn parse_term(ctx: &Ctx, source: &str) -> Result<TermValue, Diagnostic> {
    let raw = crate::surface::parse_term_expr(source)?;
    let core = crate::elab::infer_tm(ctx, &raw)?;
    if !matches!(&*core.ty, Ty::SIota) {
        return Err(Diagnostic::new(
            Code::EType,
            "the term must have the base sort",
        ));
    }
    TermValue::from_core(ctx, &core).ok_or_else(|| {
        Diagnostic::new(Code::EType, "the term is not a constructor spine")
    })
}
