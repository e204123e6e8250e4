//! The parse → elaborate → interpret/evaluate pipeline shared by the
//! command line front end and the C interface: one entry point per
//! command, diagnostics rendered in the line format or as JSON.

use std::rc::Rc;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::amds::{self, EmitKind};
use crate::diag::{line_col, Code, Diagnostic};
use crate::inner::{self, Style};
use crate::surface::{self, SigFile};
use crate::term_algebra::{self, AlgebraSpec, DispAlgebraSpec};
use crate::tos::Ctx;

/// A parsed and elaborated signature with its provenance.
pub struct Compiled {
    pub file: String,
    pub source: String,
    pub source_hash: String,
    pub sig: SigFile,
    pub ctx: Ctx,
}

pub fn source_hash(source: &str) -> String {
    let mut h = Sha256::new();
    h.update(source.as_bytes());
    let out = h.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn compile_source(file: &str, source: String) -> Result<Compiled, Diagnostic> {
    let sig = surface::parse_file(&source)?;
    let ctx = crate::elab::elaborate(&sig)?;
    Ok(Compiled {
        file: file.to_string(),
        source_hash: source_hash(&source),
        source,
        sig,
        ctx,
    })
}

pub fn compile_path(path: &str) -> Result<Compiled, Diagnostic> {
    let source = std::fs::read_to_string(path)
        .map_err(|e| Diagnostic::new(Code::EParse, format!("cannot read {path}: {e}")))?;
    compile_source(path, source)
}

/// Parses the `--what` list (`a,m,d,s,ind,rec`).
pub fn parse_what(list: &str) -> Result<Vec<EmitKind>, String> {
    let mut kinds = Vec::new();
    for tok in list.split(',') {
        let tok = tok.trim();
        if tok.is_empty() {
            continue;
        }
        match EmitKind::parse(tok) {
            Some(k) => {
                if !kinds.contains(&k) {
                    kinds.push(k);
                }
            }
            None => return Err(format!("unknown interpretation `{tok}` (a,m,d,s,ind,rec)")),
        }
    }
    if kinds.is_empty() {
        return Err("--what selected nothing".into());
    }
    Ok(kinds)
}

/// Emits the selected interpretations of one compiled signature as one
/// printed block, in the order requested. Every unit re-checks before it
/// is printed.
pub fn emit(c: &Compiled, kinds: &[EmitKind], style: Style) -> Result<String, Diagnostic> {
    let mut out = String::new();
    for kind in kinds {
        let unit = amds::emit_unit(&c.ctx, &c.sig.name, &c.source_hash, *kind)?;
        inner::check_unit(&unit, &c.ctx.externs).map_err(|e| {
            Diagnostic::new(
                Code::EInnerType,
                format!("emitted unit fails to re-check: {e}"),
            )
        })?;
        out.push_str(&inner::print_unit(&unit, &c.ctx.externs, style));
    }
    Ok(out)
}

pub fn eval_term(
    c: &Compiled,
    algebra_json: Option<&str>,
    dalgebra_json: Option<&str>,
    term: &str,
) -> Result<i64, Diagnostic> {
    eval_term_with_budget(
        c,
        algebra_json,
        dalgebra_json,
        term,
        term_algebra::DEFAULT_NODE_BUDGET,
    )
}

pub fn eval_term_with_budget(
    c: &Compiled,
    algebra_json: Option<&str>,
    dalgebra_json: Option<&str>,
    term: &str,
    budget: usize,
) -> Result<i64, Diagnostic> {
    let t = term_algebra::parse_term(&c.ctx, term)?;
    match (algebra_json, dalgebra_json) {
        (Some(json), None) => {
            let alg = AlgebraSpec::from_json(&c.ctx, json)?;
            term_algebra::eval_recursor(&c.ctx, &alg, &t, budget)
        }
        (None, Some(json)) => {
            let dalg = DispAlgebraSpec::from_json(&c.ctx, json)?;
            term_algebra::eval_eliminator(&c.ctx, &dalg, &t, budget)
        }
        _ => Err(Diagnostic::new(
            Code::EArity,
            "evaluation needs exactly one of --algebra or --dalgebra",
        )),
    }
}

pub fn enumerate(c: &Compiled, depth: usize) -> Result<Vec<String>, Diagnostic> {
    let terms = term_algebra::enumerate_terms(&c.ctx, depth)?;
    Ok(terms.iter().map(|t| t.render(&c.ctx)).collect())
}

/// The wire form of a diagnostic: code, message, and resolved position.
#[derive(Serialize)]
pub struct DiagJson<'a> {
    pub file: &'a str,
    pub line: usize,
    pub col: usize,
    #[serde(flatten)]
    pub diag: &'a Diagnostic,
}

pub fn render_diag_json(file: &str, source: &str, d: &Diagnostic) -> String {
    let (line, col) = match d.span {
        Some(span) => line_col(source, span.start),
        None => (1, 1),
    };
    serde_json::to_string(&DiagJson {
        file,
        line,
        col,
        diag: d,
    })
    .expect("diagnostic serialization")
}

/// `file:line:col: CODE: message`, optionally with the code colored.
pub fn render_diag_line(file: &str, source: &str, d: &Diagnostic, color: bool) -> String {
    if color {
        let plain = d.render_line(file, source);
        plain.replacen(d.code.as_str(), &format!("\x1b[31m{}\x1b[0m", d.code), 1)
    } else {
        d.render_line(file, source)
    }
}

pub fn color_enabled() -> bool {
    matches!(std::env::var("SIGFORGE_COLOR").as_deref(), Ok("1"))
}

/// Convenience for the C interface: all six emissions of a source buffer.
pub fn emit_all_checked(c: &Compiled, style: Style) -> Vec<(EmitKind, Result<String, Diagnostic>)> {
    amds::emit_all(&c.ctx, &c.sig.name, &c.source_hash)
        .into_iter()
        .map(|(k, res)| {
            (
                k,
                res.and_then(|unit| {
                    inner::check_unit(&unit, &c.ctx.externs)
                        .map_err(|e| {
                            Diagnostic::new(
                                Code::EInnerType,
                                format!("emitted unit fails to re-check: {e}"),
                            )
                        })
                        .map(|()| inner::print_unit(&unit, &c.ctx.externs, style))
                }),
            )
        })
        .collect()
}

/// Re-derivation of the whole context through the independent verifier.
pub fn verify(c: &Compiled) -> Result<(), Diagnostic> {
    crate::tos::verify::verify_ctx(&c.ctx).map_err(|m| {
        Diagnostic::new(Code::EPositivityInternal, format!("internal invariant: {m}"))
            .with_profile(c.ctx.profile)
    })
}

pub fn externs_of(c: &Compiled) -> Rc<crate::tos::ExternTable> {
    c.ctx.externs.clone()
}
