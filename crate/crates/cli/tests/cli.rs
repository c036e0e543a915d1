use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skewhecke")).args(args).output().expect("binary runs")
}

fn with_config(name: &str, args: &[&str]) -> Output {
    let path = configs().join(name);
    let mut all = vec!["--config", path.to_str().unwrap()];
    all.extend_from_slice(args);
    run(&all)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("skewhecke-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn classical_dimensions() {
    let o = with_config("s3_classical.cfg", &["dims"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("double cosets = 2\n"), "{text}");
    assert!(text.ends_with("dim H = 2\n"), "{text}");
}

#[test]
fn polynomial_dimension_with_degree_cap() {
    let o = with_config("s3_polynomials.cfg", &["--degree-cap", "1", "dims"]);
    let text = stdout(&o);
    assert!(text.contains("dim H_0 = 2\ndim H_1 = 5\ndim H = 7\n"), "{text}");
}

#[test]
fn whole_group_on_functions_has_one_invariant() {
    let text = std::fs::read_to_string(configs().join("s3_functions.cfg")).unwrap();
    let text = text.replace("generators = (12)", "generators = whole");
    let text = &text[..text.find("[cocycle]").unwrap()];
    let p = scratch("whole.cfg", text);
    let o = run(&["--config", p.to_str().unwrap(), "dims"]);
    assert!(stdout(&o).ends_with("dim H = 1\n"), "{}", stdout(&o));
}

#[test]
fn products() {
    let o = with_config("s3_classical.cfg", &["mul", "[((23), [(1, 1)])]", "[((23), [(1, 1)])]"]);
    assert_eq!(stdout(&o), "[(id, [(1, 2)]), ((23), [(1, 1)])]\n");
    let unit = "[(id, [(1, 1)])]";
    let x = "[(id, [(1, -3)]), ((13), [(1, 1/2)])]";
    let o = with_config("s3_classical.cfg", &["mul", unit, x]);
    assert_eq!(stdout(&o), "[(id, [(1, -3)]), ((23), [(1, 1/2)])]\n");
    let o = with_config("s3_polynomials.cfg", &["mul", "[((23), [(x1, 1)])]", "[((23), [(x1, 1)])]"]);
    assert_eq!(stdout(&o), "[(id, [(x1^2, 1), (x2^2, 1)]), ((23), [(x2*x3, 1)])]\n");
}

#[test]
fn invalid_literal_is_an_error() {
    let o = with_config("s3_classical.cfg", &["mul", "[((14), [(1, 1)])]", "[]"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn structure_constants_table() {
    let out = scratch("classical.tsv", "");
    let o = with_config("s3_classical.cfg", &["--out", out.to_str().unwrap(), "sc"]);
    assert!(o.status.success());
    let tsv = std::fs::read_to_string(&out).unwrap();
    let rows: Vec<&str> = tsv.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows, ["0\t0\t0\t1", "0\t1\t1\t1", "1\t0\t1\t1", "1\t1\t0\t2", "1\t1\t1\t1"]);
    let o = with_config("s3_functions.cfg", &["sc"]);
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("b") && l.contains('=')).count(), 9);
}

#[test]
fn inapplicable_suite_is_skipped() {
    let o = with_config("s3_classical.cfg", &["verify", "stone"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("SKIP stone/stone"));
}

#[test]
fn cocycle_violation_fails_with_witness() {
    let o = with_config("cocycle_violation.cfg", &["verify", "cocycle"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL cocycle/condition_c: violated: chi((12)) = (12)"), "{}", stdout(&o));
    let o = with_config("inner_action.cfg", &["verify", "cocycle"]);
    assert!(o.status.success(), "{}", stdout(&o));
}

#[test]
fn output_is_deterministic_for_a_seed() {
    let a = with_config("s3_conjugation.cfg", &["--seed", "17", "verify", "thm5"]);
    let b = with_config("s3_conjugation.cfg", &["--seed", "17", "verify", "thm5"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("# verify thm5 seed=17 "));
}

#[test]
fn canonical_form_is_a_fixed_point() {
    for entry in std::fs::read_dir(configs()).unwrap() {
        let path = entry.unwrap().path();
        let once = stdout(&run(&["--config", path.to_str().unwrap(), "canonical"]));
        let p = scratch("canonical.cfg", &once);
        let twice = stdout(&run(&["--config", p.to_str().unwrap(), "canonical"]));
        assert_eq!(once, twice, "{}", path.display());
    }
}

#[test]
fn diagnostics_name_the_line() {
    let p = scratch("bad.cfg", "[scalars]\nfield = Q\n[group]\nkind = symmetric\ndegree = x\n");
    let o = run(&["--config", p.to_str().unwrap(), "dims"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("[subgroup]"), "{err}");
    let p = scratch(
        "bad2.cfg",
        "[scalars]\nfield = Q\n[group]\nkind = symmetric\ndegree = x\n[subgroup]\ngenerators = (12)\n[algebra]\nkind = scalars\n[action]\nkind = trivial\n",
    );
    let err = String::from_utf8(run(&["--config", p.to_str().unwrap(), "dims"]).stderr).unwrap();
    assert!(err.contains("line 5: [group] degree"), "{err}");
}

#[test]
fn job_command_list_runs_in_order() {
    let o = with_config("s3_classical.cfg", &["run"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let dims = text.find("dim H = 2").unwrap();
    let sc = text.find("b1 * b1 : 2 b0").unwrap();
    let verify = text.find("# verify all").unwrap();
    assert!(dims < sc && sc < verify);
}

#[test]
fn every_shipped_config_verifies() {
    for entry in std::fs::read_dir(configs()).unwrap() {
        let path = entry.unwrap().path();
        let o = run(&["--config", path.to_str().unwrap(), "verify", "all"]);
        let expected = if path.ends_with("cocycle_violation.cfg") { 1 } else { 0 };
        assert_eq!(o.status.code(), Some(expected), "{}\n{}", path.display(), stdout(&o));
    }
}
