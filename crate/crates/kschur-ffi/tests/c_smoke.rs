//! Compiles and runs a small C program against the generated header and the
//! static library, proving the ABI end to end. Skipped when no C compiler
//! is on PATH.

use std::path::PathBuf;
use std::process::Command;

const C_PROGRAM: &str = r#"
#include <assert.h>
#include <stdio.h>
#include <string.h>
#include "kschur.h"

int main(void) {
    uint32_t word[] = {3, 5, 1, 4, 2};
    uint64_t charge = 0;
    assert(ks_charge_word(word, 5, &charge) == KS_STATUS_OK);
    assert(charge == 6);

    uint32_t bounded[] = {6, 2, 2, 1};
    uint32_t core[8];
    size_t len = 0;
    assert(ks_core_from_bounded(6, bounded, 4, core, 8, &len) == KS_STATUS_OK);
    assert(len == 4 && core[0] == 8 && core[1] == 2 && core[2] == 2 && core[3] == 1);

    KsKostkaMatrix *matrix = NULL;
    assert(ks_kostka_matrix_new(2, 2, &matrix) == KS_STATUS_OK);
    assert(ks_kostka_matrix_dim(matrix) == 2);
    char *json = ks_kostka_matrix_to_json(matrix);
    assert(json != NULL && strstr(json, "[[[1],[0,1]],[[0],[1]]]") != NULL);
    ks_string_free(json);
    ks_kostka_matrix_free(matrix);

    uint32_t too_wide[] = {4};
    assert(ks_core_from_bounded(3, too_wide, 1, core, 8, &len) == KS_STATUS_INVALID_INPUT);
    char *message = ks_last_error();
    assert(message != NULL);
    ks_string_free(message);

    printf("ok\n");
    return 0;
}
"#;

fn find_static_lib() -> Option<PathBuf> {
    // the deps dir for this test binary contains the freshly built
    // staticlib; fall back to the profile dir
    let exe = std::env::current_exe().ok()?;
    let deps = exe.parent()?;
    let profile = deps.parent()?;
    for dir in [deps, profile] {
        let direct = dir.join("libkschur_ffi.a");
        if direct.exists() {
            return Some(direct);
        }
        if let Ok(entries) = std::fs::read_dir(dir) {
            let mut candidates: Vec<PathBuf> = entries
                .flatten()
                .map(|e| e.path())
                .filter(|p| {
                    p.file_name()
                        .and_then(|n| n.to_str())
                        .is_some_and(|n| n.starts_with("libkschur_ffi") && n.ends_with(".a"))
                })
                .collect();
            candidates.sort_by_key(|p| std::fs::metadata(p).and_then(|m| m.modified()).ok());
            if let Some(found) = candidates.pop() {
                return Some(found);
            }
        }
    }
    None
}

#[test]
fn c_program_links_and_runs() {
    let cc = ["cc", "gcc", "clang"]
        .iter()
        .find(|cc| Command::new(cc).arg("--version").output().is_ok())
        .copied();
    let Some(cc) = cc else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    let Some(lib) = find_static_lib() else {
        eprintln!("staticlib not built; skipping");
        return;
    };
    let include = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    assert!(include.join("kschur.h").exists(), "header not generated");

    let dir = std::env::temp_dir().join(format!("kschur-c-smoke-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let source = dir.join("smoke.c");
    let binary = dir.join("smoke");
    std::fs::write(&source, C_PROGRAM).unwrap();

    let compile = Command::new(cc)
        .arg(&source)
        .arg("-I")
        .arg(&include)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .arg("-o")
        .arg(&binary)
        .output()
        .expect("compiler runs");
    assert!(
        compile.status.success(),
        "compilation failed: {}",
        String::from_utf8_lossy(&compile.stderr)
    );

    let run = Command::new(&binary).output().expect("program runs");
    assert!(run.status.success());
    assert_eq!(String::from_utf8_lossy(&run.stdout), "ok\n");
    let _ = std::fs::remove_dir_all(&dir);
}
