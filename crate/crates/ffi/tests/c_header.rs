//! Compiles a small C program against the generated header and the static
//! library, then runs it.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "operad_forge.h"

int main(void) {
    OfPoset *p = NULL;
    if (of_poset_complete_graphs(2, 3, true, &p) != OF_STATUS_OK) return 10;
    if (of_poset_size(p) != 48) return 11;
    OfHomology *h = NULL;
    if (of_poset_homology(p, 0, &h) != OF_STATUS_OK) return 12;
    size_t b1 = 0, b2 = 0;
    of_homology_betti(h, 1, &b1);
    of_homology_betti(h, 2, &b2);
    if (b1 != 3 || b2 != 2) return 13;
    of_homology_free(h);
    of_poset_free(p);

    OfPoset *bad = NULL;
    if (of_poset_from_json("{", &bad) != OF_STATUS_PARSE) return 14;
    if (of_last_error() == NULL || strlen(of_last_error()) == 0) return 15;

    char *report = NULL;
    int code = -1;
    if (of_run_suite("enumerate", "n = 1\nk = 3", &report, &code) != OF_STATUS_OK) return 16;
    if (code != 0 || strstr(report, "\"status\": \"pass\"") == NULL) return 17;
    of_string_free(report);
    printf("ok %s\n", of_version());
    return 0;
}
"#;

#[test]
fn header_compiles_and_links() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let target = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("..");
    let profile = if cfg!(debug_assertions) { "debug" } else { "release" };
    let lib = target.join(profile).join("liboperad_forge_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let tmp = tempfile::tempdir().unwrap();
    let src = tmp.path().join("main.c");
    let exe = tmp.path().join("main");
    std::fs::write(&src, PROGRAM).unwrap();
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(&cc)
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("a C compiler");
    assert!(status.success(), "{cc} failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok 0.1.0"));
}
