use std::path::{Path, PathBuf};
use std::process::Command;

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn header() -> String {
    std::fs::read_to_string(crate_dir().join("include/cclosed.h")).expect("header generated by build.rs")
}

#[test]
fn header_declares_the_interface() {
    let h = header();
    for name in [
        "cc_last_error_message",
        "cc_graph_from_edge_list",
        "cc_graph_load",
        "cc_graph_from_edges",
        "cc_graph_free",
        "cc_graph_vertex_count",
        "cc_graph_edge_count",
        "cc_graph_label",
        "cc_c_closure",
        "cc_weak_closure",
        "cc_a_bound",
        "cc_count_maximal_cliques",
        "cc_cliques_exact",
        "cc_clique_set_len",
        "cc_clique_set_get",
        "cc_clique_set_free",
        "cc_bounds",
        "cc_bound_init_log10",
        "cc_bound_improved_log10",
        "typedef struct CcGraph CcGraph;",
        "typedef struct CcCliqueSet CcCliqueSet;",
        "CC_STATUS_OK = 0",
        "CC_STATUS_PANIC = 10",
    ] {
        assert!(h.contains(name), "header lacks {name}");
    }
    assert!(h.starts_with("#ifndef CCLOSED_H"));
}

/// Directory holding the library artifacts next to this test binary.
fn artifact_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_the_static_library() {
    let lib = artifact_dir().join("libcclosed_ffi.a");
    let Ok(cc) = which_cc() else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let out_dir = std::env::temp_dir().join(format!("cclosed-c-{}", std::process::id()));
    std::fs::create_dir_all(&out_dir).unwrap();
    let exe = out_dir.join("smoke");
    let status = Command::new(cc)
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(crate_dir().join("include"))
        .arg(crate_dir().join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
    std::fs::remove_dir_all(out_dir).unwrap();
}

fn which_cc() -> Result<&'static str, ()> {
    for cc in ["cc", "gcc", "clang"] {
        if Command::new(cc).arg("--version").output().is_ok() {
            return Ok(cc);
        }
    }
    Err(())
}
