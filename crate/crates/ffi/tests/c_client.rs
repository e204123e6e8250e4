//! Compiles and runs a small C program against the generated header and
//! the static library, exercising the interface from actual C.

use std::path::PathBuf;
use std::process::Command;

#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let include = manifest.join("include");
    // locate the staticlib next to the test binary
    let mut lib_dir = std::env::current_exe().unwrap();
    lib_dir.pop(); // test binary
    lib_dir.pop(); // deps
    let lib = lib_dir.join("libsigforge_ffi.a");
    if !lib.exists() {
        panic!("staticlib not found at {}", lib.display());
    }
    let work = std::env::temp_dir().join("sigforge-c-client");
    std::fs::create_dir_all(&work).unwrap();
    let c_src = work.join("client.c");
    std::fs::write(
        &c_src,
        r#"
#include "sigforge.h"
#include <stdio.h>
#include <string.h>
#include <stdint.h>

int main(void) {
    SfCompiled *h = NULL;
    const char *src =
        "profile simple\nsignature Nat where\n zero : iota\n suc : iota -> iota\n";
    if (sf_compile(src, "nat.sig", &h) != SF_STATUS_OK) return 1;
    if (sf_entry_count(h) != 2) return 2;
    char *text = NULL;
    if (sf_emit(h, "a", SF_STYLE_ASCII, &text) != SF_STATUS_OK) return 3;
    if (strstr(text, "NatAlg") == NULL) return 4;
    sf_string_free(text);
    int64_t v = 0;
    const char *alg = "{\"carrier\":\"int64\",\"ops\":{\"zero\":\"0\",\"suc\":\"x0 + 1\"}}";
    if (sf_eval(h, alg, NULL, "suc (suc zero)", &v) != SF_STATUS_OK) return 5;
    if (v != 2) return 6;
    sf_free(h);
    printf("c client ok\n");
    return 0;
}
"#,
    )
    .unwrap();
    let exe = work.join("client");
    let cc = Command::new("cc")
        .arg(&c_src)
        .arg("-I")
        .arg(&include)
        .arg(lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .arg("-o")
        .arg(&exe)
        .output()
        .expect("cc runs");
    assert!(
        cc.status.success(),
        "cc failed: {}",
        String::from_utf8_lossy(&cc.stderr)
    );
    let run = Command::new(&exe).output().expect("client runs");
    assert!(run.status.success(), "client exit: {:?}", run.status.code());
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "c client ok");
}
