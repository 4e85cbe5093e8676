//! End-to-end runs of the `flatspec` binary: exit codes, formats and golden outputs.
//!
//! Set `FLATSPEC_BLESS=1` to rewrite the golden files after an intended change.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use flatspec::corpus;
use flatspec::group_file::GroupDefinition;

fn flatspec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flatspec")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    Path::new(env!("CARGO_TARGET_TMPDIR")).join(name)
}

fn golden(file: &str, exit: i32, args: &[&str]) {
    let o = flatspec(args);
    assert_eq!(o.status.code(), Some(exit), "{args:?}: {}", stderr(&o));
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(file);
    if std::env::var_os("FLATSPEC_BLESS").is_some() {
        std::fs::write(&path, stdout(&o)).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(stdout(&o), want, "{file}");
}

#[test]
fn middle_degree_pair_exits_zero_only_where_isospectral() {
    let pair = ["compare", "corpus:ex23i_gamma", "corpus:ex23i_gammap", "--mode", "p-spectrum"];
    let o = flatspec(&[&pair[..], &["--p", "2"]].concat());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = flatspec(&[&pair[..], &["--p", "0"]].concat());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sunada_pair_is_certified() {
    let o = flatspec(&["compare", "corpus:ex34_gamma", "corpus:ex34_gammap", "--mode", "sunada"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("sunada: yes"));
}

#[test]
fn counted_lengths_separate_the_sunada_pair() {
    let o = flatspec(&["compare", "corpus:ex34_gamma", "corpus:ex34_gammap", "--mode", "counted", "--max-len2", "1/4"]);
    assert_eq!(o.status.code(), Some(2));
    let csv = flatspec(&["lengths", "corpus:ex34_gammap", "--max-len2", "1/4", "--format", "csv"]);
    assert_eq!(stdout(&csv), "squared_length,length,count\n1/4,0.5,6\n");
}

#[test]
fn golden_outputs() {
    golden("compare_ex23i_p0.json", 2, &["compare", "corpus:ex23i_gamma", "corpus:ex23i_gammap", "--mode", "p-spectrum", "--p", "0", "--format", "json"]);
    golden("lengths_ex34.json", 0, &["lengths", "corpus:ex34_gamma", "--max-len2", "1/4", "--format", "json"]);
    golden("info_ex23iii_gammap.json", 0, &["info", "corpus:ex23iii_gammap", "--format", "json"]);
    golden("spectrum_klein.csv", 0, &["spectrum", "corpus:klein_bottle", "--p", "0", "--max-mu", "2", "--format", "csv"]);
    golden("info_ex23iii_gammap.txt", 0, &["info", "corpus:ex23iii_gammap"]);
}

#[test]
fn emitted_corpus_files_load_back_identically() {
    for name in corpus::names() {
        let o = flatspec(&["corpus", "emit", name]);
        assert!(o.status.success());
        let path = scratch(&format!("{name}.toml"));
        std::fs::write(&path, stdout(&o)).unwrap();
        let from_file = flatspec(&["info", path.to_str().unwrap(), "--format", "json"]);
        let from_corpus = flatspec(&["info", &format!("corpus:{name}"), "--format", "json"]);
        assert_eq!(stdout(&from_file), stdout(&from_corpus), "{name}");
    }
}

#[test]
fn emit_parse_emit_is_byte_stable() {
    for name in corpus::names() {
        let text = corpus::get(name).unwrap().emit();
        let parsed = GroupDefinition::parse(&text).unwrap();
        assert_eq!(parsed.emit(), text, "{name}");
        assert_eq!(parsed, corpus::get(name).unwrap(), "{name}");
    }
}

#[test]
fn torsion_warns_and_strict_rejects() {
    let path = scratch("mirror.toml");
    std::fs::write(&path, "name = \"mirror\"\ndimension = 1\n\n[[generator]]\nmatrix = [[-1]]\ntranslation = [\"0\"]\n").unwrap();
    let p = path.to_str().unwrap();
    let o = flatspec(&["spectrum", p, "--max-mu", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("warning"), "{}", stderr(&o));
    let o = flatspec(&["spectrum", p, "--strict"]);
    assert_eq!(o.status.code(), Some(1));
    let o = flatspec(&["lengths", p]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("torsion-free"));
}

#[test]
fn malformed_inputs_fail_with_a_message() {
    let path = scratch("broken.toml");
    std::fs::write(&path, "name = \"broken\"\ndimension = 2\n\n[[generator]]\nmatrix = [[0, 2], [1, 0]]\ntranslation = [\"0\", \"1/2\"]\n").unwrap();
    let o = flatspec(&["info", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error:"), "{}", stderr(&o));

    std::fs::write(&path, "name = \"broken\"\ndimension = 2\nbogus = 1\n").unwrap();
    let o = flatspec(&["info", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line"), "{}", stderr(&o));

    for args in [
        &["info", "corpus:no_such_group"][..],
        &["compare", "corpus:klein_bottle", "corpus:torus_4"],
        &["spectrum", "corpus:klein_bottle", "--max-mu", "x/y"],
        &["frobnicate"],
    ] {
        assert_eq!(flatspec(args).status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn poisson_check_passes_from_the_command_line() {
    let o = flatspec(&["zeta", "corpus:ex23i_gamma", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "pass");
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(flatspec(&["--help"]).status.code(), Some(0));
    assert_eq!(flatspec(&["--version"]).status.code(), Some(0));
}
