use hopfkit::construct::{group_algebra, taft_fd, GroupTable};
use hopfkit::hopf::HopfFile;
use hopfkit::scalars::FieldDesc;
use std::path::PathBuf;
use std::process::{Command, Output};

fn hopfkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hopfkit")).args(args).output().expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hopfkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn verify_taft_family_passes() {
    let o = hopfkit(&["verify", "taft:2,1,-1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("verify: pass\n"));
}

#[test]
fn verify_dihedral_records_degree() {
    let path = scratch("dihedral.json");
    let o = hopfkit(&["verify", "dihedral", "--degree", "6", "--json", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["degree"], 6);
    assert_eq!(v["report"]["degree"], 6);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["schema"], 1);
}

#[test]
fn malformed_json_is_an_input_error() {
    let path = scratch("bad.json");
    std::fs::write(&path, "{\"field\": ").unwrap();
    let o = hopfkit(&["verify", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("parse error"));
}

#[test]
fn dual_of_based_family_is_refused() {
    let o = hopfkit(&["dual", "dihedral"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("finite dual of based families is handled by suites, not cmd_dual"));
}

#[test]
fn dual_of_group_algebra_round_trips() {
    let kc2 = group_algebra(&GroupTable::cyclic(2), FieldDesc::Rationals).unwrap();
    let path = scratch("kc2.json");
    std::fs::write(&path, serde_json::to_string(&HopfFile::from_hopf(&kc2)).unwrap()).unwrap();
    let o = hopfkit(&["dual", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let file: HopfFile = serde_json::from_str(&stdout(&o)).unwrap();
    let d = file.to_hopf().unwrap();
    assert_eq!(d.dim(), 2);
    assert!(d.verify().all_pass());
    assert!(d.alg.is_commutative() && d.is_cocommutative());
}

#[test]
fn dual_of_sweedler_passes_verify() {
    let f = FieldDesc::Rationals;
    let t = taft_fd(2, 1, &f.from_i64(-1), f).unwrap();
    let src = scratch("sweedler.json");
    std::fs::write(&src, serde_json::to_string(&HopfFile::from_hopf(&t)).unwrap()).unwrap();
    let o = hopfkit(&["dual", src.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = scratch("sweedler-dual.json");
    std::fs::write(&out, stdout(&o)).unwrap();
    let v = hopfkit(&["verify", out.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
}

#[test]
fn unknown_suite_and_family_are_input_errors() {
    assert_eq!(hopfkit(&["suite", "nope"]).status.code(), Some(2));
    assert_eq!(hopfkit(&["verify", "taft:4,2"]).status.code(), Some(2));
    assert_eq!(hopfkit(&["suite", "taft-dual", "dihedral"]).status.code(), Some(2));
    assert_eq!(hopfkit(&["verify", "dihedral", "--field", "Q(zeta"]).status.code(), Some(2));
}

#[test]
fn orbits_and_cosplit_commands() {
    let o = hopfkit(&["orbits", "taft:4,2,zeta4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("OrbSemi"));
    let c = hopfkit(&["cosplit", "ueps_sl2:3", "--degree", "4"]);
    assert_eq!(c.status.code(), Some(0), "{}", stdout(&c));
}

#[test]
fn suite_json_is_byte_identical_across_runs() {
    let a = scratch("run-a.json");
    let b = scratch("run-b.json");
    for p in [&a, &b] {
        let o = Command::new(env!("CARGO_BIN_EXE_hopfkit"))
            .args(["suite", "dihedral-dual", "--seed", "7", "--json", p.to_str().unwrap()])
            .env("HOPFKIT_JOBS", "2")
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn field_override_is_applied() {
    let o = hopfkit(&["verify", "dihedral", "--field", "Q(zeta4)"]);
    assert_eq!(o.status.code(), Some(0));
    let path = scratch("field.json");
    hopfkit(&["verify", "dihedral", "--field", "Q(zeta4)", "--json", path.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["field"], "Q(zeta4)");
}
