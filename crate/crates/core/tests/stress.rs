//! Randomized end-to-end stress: generated signatures of every profile go
//! through all six emissions and the inner checker; random byte soup must
//! never panic the parser.

mod common;

use common::*;
use rand::Rng;
use sigforge::amds;
use sigforge::diag::Code;
use sigforge::inner;
use sigforge::surface;
use sigforge::tos::Profile;

#[test]
fn random_signatures_emit_and_recheck() {
    let mut r = rng(0x57AE55);
    for profile in [Profile::Simple, Profile::Fqii, Profile::HiitStrict, Profile::HiitWeak] {
        let mut done = 0;
        while done < 120 {
            let ctx = if profile == Profile::Simple {
                gen_simple_ctx(&mut r, 5)
            } else {
                gen_dep_ctx(&mut r, 6, profile)
            };
            for (kind, res) in amds::emit_all(&ctx, "Stress", "stress") {
                match res {
                    Ok(unit) => inner::check_unit(&unit, &ctx.externs).unwrap_or_else(|e| {
                        panic!("{profile:?} {kind:?}: {e}\nctx: {ctx:#?}")
                    }),
                    Err(d) => {
                        panic!("{profile:?} {kind:?}: unexpected {d}")
                    }
                }
            }
            done += 1;
        }
    }
}

#[test]
fn parser_never_panics_on_byte_soup() {
    let mut r = rng(0xF00D);
    let alphabet: Vec<char> =
        "abcXYZ_()->*>~>:., \n\tιU≡=ElIdJSgproj12reflToptt0123".chars().collect();
    for _ in 0..2000 {
        let len = r.gen_range(0..200);
        let s: String = (0..len)
            .map(|_| alphabet[r.gen_range(0..alphabet.len())])
            .collect();
        let _ = surface::parse_file(&s);
        let _ = surface::parse_term_expr(&s);
    }
    // structured prefixes with random tails
    for _ in 0..500 {
        let len = r.gen_range(0..80);
        let tail: String = (0..len)
            .map(|_| alphabet[r.gen_range(0..alphabet.len())])
            .collect();
        let s = format!("profile fqii\nsignature X where\n a : {tail}\n");
        match surface::parse_file(&s) {
            Ok(sig) => {
                let _ = sigforge::elab::elaborate(&sig);
            }
            Err(d) => assert!(matches!(
                d.code,
                Code::ELex | Code::EParse | Code::EDupName | Code::EProfileMissing
            )),
        }
    }
}
