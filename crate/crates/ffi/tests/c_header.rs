//! Compiles a small C program against the generated header and the static
//! library, then runs it.

use std::path::{Path, PathBuf};
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "qpcollapse.h"

int main(void) {
    QpPolygon *p = NULL;
    if (qp_polygon_from_json("{\"vertices\":[[\"1\",\"0\"],[\"0\",\"1\"],[\"-1\",\"-4\"]]}", &p) != QP_STATUS_OK) return 1;
    uint64_t r = 0, pi = 0;
    if (qp_dual_denominator(p, &r) != QP_STATUS_OK || r != 2) return 2;
    if (qp_dual_quasi_period(p, &pi) != QP_STATUS_OK || pi != 1) return 3;
    QpPolygon *q = NULL;
    if (qp_polygon_mutate(p, 1, 1, 1, -1, 3, true, &q) != QP_STATUS_INVALID_MUTATION) return 4;
    if (qp_last_error() == NULL) return 5;
    char *json = NULL;
    if (qp_polygon_dual_json(p, &json) != QP_STATUS_OK) return 6;
    printf("%s\n", json);
    qp_string_free(json);
    qp_polygon_free(p);
    return 0;
}
"#;

fn target_dir() -> PathBuf {
    // tests/ binaries live in <target>/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

fn find_cc() -> Option<String> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| Command::new(c).arg("--version").output().is_ok())
        .map(String::from)
}

#[test]
fn c_program_links_and_runs() {
    let Some(cc) = find_cc() else {
        eprintln!("no C compiler found; skipping C header check");
        return;
    };
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let lib = target_dir().join("libqpcollapse_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let work = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let src = work.join("qp_smoke.c");
    let bin = work.join("qp_smoke");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new(&cc)
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "C program exited with {:?}", out.status.code());
    assert_eq!(
        String::from_utf8(out.stdout).unwrap().trim(),
        r#"{"vertices":[["-1","-1"],["5","-1"],["-1","1/2"]]}"#
    );
}
