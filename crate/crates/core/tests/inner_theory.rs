//! The inner checker on hand-built terms, proof irrelevance at strict
//! equality, and the print-then-parse round trip of the ASCII dialect.

use std::rc::Rc;

use sigforge::amds::{self, EmitKind};
use sigforge::inner::*;
use sigforge::tos::{Ctx, ExternDecl, ExternKind, ExternTable, Profile};
use sigforge::{elab, surface};

fn externs(names: &[&str]) -> Rc<ExternTable> {
    Rc::new(ExternTable {
        decls: names
            .iter()
            .map(|n| ExternDecl {
                name: n.to_string(),
                kind: ExternKind::Type,
            })
            .collect(),
    })
}

fn cx(ext: &Rc<ExternTable>) -> CheckCx {
    CheckCx::new(ext.clone(), Profile::Fqii)
}

#[test]
fn sigma_telescope_is_well_formed() {
    // (X : Set) * (x : X) * (X -> X)
    let ext = externs(&[]);
    let t = rc(ITm::Sg(
        "X".into(),
        rc(ITm::Sort(Sort::Set)),
        rc(ITm::Sg(
            "x".into(),
            var(0),
            rc(ITm::Pi("_".into(), var(1), var(2))),
        )),
    ));
    check_type(&mut cx(&ext), &t).unwrap();
}

#[test]
fn transport_direction_errors_are_caught() {
    // C : A -> Set, a b : A, p : a = b, x : C b; tr C p x is ill-typed
    let ext = externs(&["A"]);
    let a_ty = rc(ITm::Ext(0));
    let c_ty = rc(ITm::Pi("_".into(), a_ty.clone(), rc(ITm::Sort(Sort::Set))));
    let tele = [
        c_ty,                                        // C : Var 4 at the end
        a_ty.clone(),                                // a : Var 3
        a_ty.clone(),                                // b : Var 2
        rc(ITm::Path(a_ty.clone(), var(1), var(0))), // p : Var 1
        rc(ITm::App(var(3), var(1))),                // x : C b, Var 0
    ];
    let mut cc = cx(&ext);
    for t in &tele {
        check_type(&mut cc, t).unwrap();
        cc.push_var(t.clone());
    }
    let bad = rc(ITm::Tr {
        motive: var(4),
        path: var(1),
        point: var(0),
    });
    let err = infer(&mut cc, &bad).unwrap_err();
    assert!(
        err.message.contains("fiber"),
        "transport direction error: {err}"
    );
    // the well-directed transport checks
    let good = rc(ITm::Tr {
        motive: var(4),
        path: rc(ITm::Inv(var(1))),
        point: var(0),
    });
    infer(&mut cc, &good).unwrap();
}

#[test]
fn strict_proofs_are_interchangeable_paths_are_not() {
    let _ext = externs(&["A", "c1", "c2"]);
    // two refl proofs with different annotations compare equal
    let r1 = rc(ITm::Refl {
        strict: true,
        ty: rc(ITm::Ext(0)),
        tm: rc(ITm::Ext(1)),
    });
    let r2 = rc(ITm::Refl {
        strict: true,
        ty: rc(ITm::Ext(0)),
        tm: rc(ITm::Ext(2)),
    });
    assert!(conv(&r1, &r2), "strict proofs are irrelevant");

    // a refl does not prove a path between distinct closed constants
    let mut cc = CheckCx::new(
        Rc::new(ExternTable {
            decls: vec![
                ExternDecl {
                    name: "A".into(),
                    kind: ExternKind::Type,
                },
                ExternDecl {
                    name: "c1".into(),
                    kind: ExternKind::Term {
                        params: vec![],
                        ret: 0,
                    },
                },
                ExternDecl {
                    name: "c2".into(),
                    kind: ExternKind::Term {
                        params: vec![],
                        ret: 0,
                    },
                },
            ],
        }),
        Profile::Fqii,
    );
    let claimed = rc(ITm::Path(rc(ITm::Ext(0)), rc(ITm::Ext(1)), rc(ITm::Ext(2))));
    let refl = rc(ITm::Refl {
        strict: false,
        ty: rc(ITm::Ext(0)),
        tm: rc(ITm::Ext(1)),
    });
    let got = infer(&mut cc, &refl).unwrap();
    assert!(
        !conv(&got, &claimed),
        "a path between distinct constants is not proved by refl"
    );
}

#[test]
fn normalization_computes_at_refl_and_terminates() {
    let refl = rc(ITm::Refl {
        strict: false,
        ty: rc(ITm::Unit),
        tm: rc(ITm::UnitVal),
    });
    let tr = rc(ITm::Tr {
        motive: rc(ITm::Lam("x".into(), rc(ITm::Unit), rc(ITm::Unit))),
        path: refl.clone(),
        point: rc(ITm::UnitVal),
    });
    assert!(alpha_eq(&normalize(&tr), &rc(ITm::UnitVal)));
    let j = rc(ITm::J {
        motive: rc(ITm::Lam(
            "y".into(),
            rc(ITm::Unit),
            rc(ITm::Lam("q".into(), rc(ITm::Unit), rc(ITm::Unit))),
        )),
        pr: rc(ITm::UnitVal),
        path: refl.clone(),
    });
    assert!(alpha_eq(&normalize(&j), &rc(ITm::UnitVal)));
    assert!(alpha_eq(
        &normalize(&rc(ITm::Comp(refl.clone(), refl.clone()))),
        &normalize(&refl)
    ));
}

fn corpus_units() -> Vec<(String, Rc<ExternTable>, EmitUnit)> {
    let dir = format!("{}/../../corpus", env!("CARGO_MANIFEST_DIR"));
    let mut out = Vec::new();
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().and_then(|e| e.to_str()) == Some("sig"))
        .collect();
    files.sort();
    for path in files {
        let src = std::fs::read_to_string(&path).unwrap();
        let Ok(sig) = surface::parse_file(&src) else {
            continue;
        };
        let Ok(ctx) = elab::elaborate(&sig) else {
            continue;
        };
        for (_, res) in amds::emit_all(&ctx, &sig.name, "roundtrip") {
            if let Ok(unit) = res {
                out.push((
                    path.file_name().unwrap().to_string_lossy().to_string(),
                    ctx.externs.clone(),
                    unit,
                ));
            }
        }
    }
    out
}

/// Printing is injective on the emitted corpus, and the ASCII dialect
/// reads back to alpha-equal definitions (annotations elided by the
/// printer come back as placeholders that alpha comparison ignores).
#[test]
fn ascii_print_parse_round_trip_and_injectivity() {
    let units = corpus_units();
    assert!(units.len() > 40);
    let mut printed_all: Vec<(String, String)> = Vec::new();
    for (file, ext, unit) in &units {
        with_fuel(50_000_000, || {
            let printed = print_unit(unit, ext, Style::Ascii);
            for (line, def) in printed
                .lines()
                .filter(|l| !l.starts_with("--") && !l.is_empty())
                .zip(&unit.defs)
            {
                let parsed = parse_ascii_def(line, ext)
                    .unwrap_or_else(|e| panic!("{file}: reading back `{line}`: {e}"));
                assert_eq!(parsed.name, def.name, "{file}");
                assert_eq!(parsed.params.len(), def.params.len(), "{file}");
                for ((_, got), (_, want)) in parsed.params.iter().zip(&def.params) {
                    assert!(alpha_eq(got, want), "{file}: param mismatch in {line}");
                }
                assert!(alpha_eq(&parsed.body, &def.body), "{file}: body mismatch in {line}");
                printed_all.push((file.clone(), line.to_string()));
            }
        });
    }
    for (i, (f1, l1)) in printed_all.iter().enumerate() {
        for (f2, l2) in &printed_all[i + 1..] {
            if l1 == l2 {
                panic!("distinct units print identically: {f1} vs {f2}: {l1}");
            }
        }
    }
}

#[test]
fn agda_dialect_uses_superscripts() {
    let path = format!("{}/../../corpus/s1.sig", env!("CARGO_MANIFEST_DIR"));
    let src = std::fs::read_to_string(path).unwrap();
    let sig = surface::parse_file(&src).unwrap();
    let ctx = elab::elaborate(&sig).unwrap();
    let unit = amds::emit_unit(&ctx, &sig.name, "h", EmitKind::Section).unwrap();
    let agda = print_unit(&unit, &ctx.externs, Style::Agda);
    assert!(agda.contains("S1ˢ"), "superscript section names: {agda}");
    assert!(agda.contains("baseᴰ"));
    assert!(agda.contains("λ"));
    let _ = Ctx::new(Profile::Fqii, ctx.externs.clone());
}
