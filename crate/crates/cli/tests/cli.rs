use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use radford_cli::format;
use radford_core::zoo::{self, Group};

fn radford(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_radford")).args(args).output().expect("run radford")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn make(dir: &Path, file: &str, args: &[&str]) -> PathBuf {
    let path = dir.join(file);
    let mut full = vec!["zoo"];
    full.extend_from_slice(args);
    full.extend(["-o", path.to_str().unwrap()]);
    let o = radford(&full);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    path
}

#[test]
fn zoo_files_have_expected_dimensions() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("s3.tbl");
    std::fs::write(&table, Group::symmetric3().to_text()).unwrap();
    for (file, args, dim) in [
        ("h4.json", vec!["sweedler"], 4),
        ("t9.json", vec!["taft", "--n", "3", "--q", "z"], 9),
        ("cs3.json", vec!["group", "--cayley", table.to_str().unwrap()], 6),
        ("c5.json", vec!["function", "--n", "5"], 5),
    ] {
        let h = radford_cli::load(&make(dir.path(), file, &args)).unwrap();
        assert_eq!(h.dim, dim, "{file}");
    }
}

#[test]
fn zoo_without_output_writes_stdout() {
    let o = radford(&["zoo", "sweedler"]);
    assert_eq!(stdout(&o), format::write(&zoo::sweedler()).unwrap());
}

#[test]
fn tensor_of_files() {
    let dir = tempfile::tempdir().unwrap();
    let a = make(dir.path(), "a.json", &["group", "--n", "2"]);
    let b = make(dir.path(), "b.json", &["group", "--n", "3"]);
    let p = make(dir.path(), "p.json", &["tensor", "--left", a.to_str().unwrap(), "--right", b.to_str().unwrap()]);
    let expected = zoo::tensor_product(&zoo::group_algebra(&Group::cyclic(2)), &zoo::group_algebra(&Group::cyclic(3)));
    assert_eq!(radford_cli::load(&p).unwrap(), expected);
}

#[test]
fn input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(radford(&["zoo", "octonions"]).status.code(), Some(2));
    assert_eq!(radford(&["zoo", "taft", "--n", "4", "--q", "-1"]).status.code(), Some(2));
    let junk = dir.path().join("junk.json");
    std::fs::write(&junk, "{ not json").unwrap();
    assert_eq!(radford(&["verify", junk.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(radford(&["verify", "/nonexistent/file.json"]).status.code(), Some(2));
    let h4 = make(dir.path(), "h4.json", &["sweedler"]);
    assert_eq!(radford(&["verify", "--only", "no.such.check", h4.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(radford(&["verify", "--tolerance", "-1", h4.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(radford(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn h4_report_lines() {
    let dir = tempfile::tempdir().unwrap();
    let h4 = make(dir.path(), "h4.json", &["sweedler"]);
    let o = radford(&["verify", h4.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("CHECK radford.s4 PASS "));
    assert!(out.contains("CHECK star.positivity SKIP:not-positive "));
    assert!(out.contains("CHECK gns.build SKIP:not-positive "));
    assert!(out.lines().all(|l| l.starts_with("CHECK ") || l.starts_with("NOTE ")));

    let o = radford(&["report", h4.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for needle in ["δ = [0, 1, 0, 0]", "ord(S²) = 2", "ν = -1", "counimodular: no", "group-likes (2)"] {
        assert!(out.contains(needle), "missing {needle:?} in\n{out}");
    }
}

#[test]
fn cs3_passes_everything() {
    let dir = tempfile::tempdir().unwrap();
    let cs3 = make(dir.path(), "cs3.json", &["s3"]);
    let o = radford(&["verify", cs3.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for line in out.lines().filter(|l| l.starts_with("CHECK ")) {
        let skippable = line.contains("radford.half-power-squared");
        assert!(line.contains(" PASS ") || skippable, "{line}");
    }
    let report = stdout(&radford(&["report", cs3.to_str().unwrap()]));
    for needle in ["δ = 1", "δ̂ = 1̂", "S² = id: yes", "Kac: finite quantum group"] {
        assert!(report.contains(needle), "missing {needle:?} in\n{report}");
    }
}

#[test]
fn t9_report() {
    let dir = tempfile::tempdir().unwrap();
    let t9 = make(dir.path(), "t9.json", &["taft", "--n", "3", "--q", "z"]);
    let report = stdout(&radford(&["report", t9.to_str().unwrap()]));
    assert!(report.contains("ord(S²) = 3"), "{report}");
    assert!(report.contains("ν = -1-z"), "{report}");
}

#[test]
fn double_dual_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for (file, args) in [("h4.json", vec!["sweedler"]), ("t9.json", vec!["taft", "--n", "3", "--q", "z"]), ("cs3.json", vec!["s3"])] {
        let path = make(dir.path(), file, &args);
        let once = dir.path().join(format!("d-{file}"));
        let twice = dir.path().join(format!("dd-{file}"));
        assert_eq!(radford(&["dual", path.to_str().unwrap(), "-o", once.to_str().unwrap()]).status.code(), Some(0));
        assert_eq!(radford(&["verify", once.to_str().unwrap()]).status.code(), Some(0), "dual of {file}");
        assert_eq!(radford(&["dual", once.to_str().unwrap(), "-o", twice.to_str().unwrap()]).status.code(), Some(0));
        assert_eq!(std::fs::read(&path).unwrap(), std::fs::read(&twice).unwrap(), "{file}");
    }
}

#[test]
fn dual_of_group_algebra_is_function_algebra() {
    let dir = tempfile::tempdir().unwrap();
    let cs3 = make(dir.path(), "cs3.json", &["s3"]);
    let d = radford_cli::load(&cs3).unwrap();
    let out = stdout(&radford(&["dual", cs3.to_str().unwrap()]));
    let dual = format::parse(&out).unwrap();
    let f = zoo::function_algebra(&Group::symmetric3());
    assert_eq!(dual.name, format!("dual({})", d.name));
    assert_eq!((dual.mult, dual.comult, dual.antipode, dual.star), (f.mult, f.comult, f.antipode, f.star));
}

#[test]
fn only_filters_and_multiple_files_are_labelled() {
    let dir = tempfile::tempdir().unwrap();
    let h4 = make(dir.path(), "h4.json", &["sweedler"]);
    let cs3 = make(dir.path(), "cs3.json", &["s3"]);
    let o = radford(&["verify", "--only", "radford", h4.to_str().unwrap(), cs3.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.starts_with("FILE ")).count(), 2);
    assert!(out.lines().filter(|l| l.starts_with("CHECK ")).all(|l| l.starts_with("CHECK radford.")));
    let o = radford(&["verify", "--only", "radford.s4", h4.to_str().unwrap()]);
    assert_eq!(stdout(&o).lines().count(), 1);
}

#[test]
fn corrupted_antipode_fails_report_and_dual() {
    let dir = tempfile::tempdir().unwrap();
    let mut file = format::HopfFile::from_hopf(&zoo::sweedler()).unwrap();
    file.antipode[0][0] = "-1".into();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, serde_json::to_string(&file).unwrap()).unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(radford(&["verify", p]).status.code(), Some(1));
    assert_eq!(radford(&["report", p]).status.code(), Some(1));
    assert_eq!(radford(&["dual", p]).status.code(), Some(1));
}

#[test]
fn whole_zoo_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let mut paths = Vec::new();
    for (i, h) in zoo::standard_zoo().iter().enumerate() {
        let path = dir.path().join(format!("{i}.json"));
        std::fs::write(&path, format::write(h).unwrap()).unwrap();
        paths.push(path);
    }
    let mut args = vec!["verify"];
    args.extend(paths.iter().map(|p| p.to_str().unwrap()));
    let o = radford(&args);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}
