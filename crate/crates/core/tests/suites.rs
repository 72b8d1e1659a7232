use hopfkit::families::Dihedral;
use hopfkit::hopf::FdHopf;
use hopfkit::scalars::FieldDesc;
use hopfkit::suites::*;

fn failures(r: &SuiteReport) -> Vec<String> {
    r.checks.iter().filter(|c| !c.pass).map(|c| format!("{} {:?}", c.name, c.witness)).collect()
}

fn detail<'a>(r: &'a SuiteReport, prefix: &str) -> &'a str {
    r.checks.iter().find(|c| c.name.starts_with(prefix)).and_then(|c| c.detail.as_deref()).unwrap_or_else(|| panic!("no check {prefix}"))
}

#[test]
fn dihedral_dual_suite_passes() {
    let r = run_suite("dihedral-dual", None, None, 6, 0).unwrap();
    assert!(r.pass(), "{:?}", failures(&r));
    assert!(!r.conditional);
    assert!(r.checks.len() >= 15);
}

#[test]
fn dual_decompositions() {
    for (suite, fam) in [("taft-dual", "taft:4,2,zeta4"), ("taft-dual", "taft:3,1,zeta3"), ("liu-dual", "liu:2,1,-1"), ("qplane-dual", "qplane:4,2,zeta4")] {
        let r = run_suite(suite, Some(fam), None, 5, 0).unwrap();
        assert!(r.pass(), "{fam}: {:?}", failures(&r));
    }
    let r = run_suite("taft-dual", Some("taft:4,2,zeta4"), None, 5, 0).unwrap();
    assert!(r.checks.iter().any(|c| c.name == "H̄* ≅ kC_2 ⊗ T_f(2, 1, -1) as algebras"));
    assert_eq!(detail(&r, "H̄* ≅"), "not isomorphic as Hopf algebras for this choice of generators");
    let r = run_suite("taft-dual", Some("taft:3,1,zeta3"), None, 5, 0).unwrap();
    assert_eq!(detail(&r, "H̄* ≅"), "also isomorphic as Hopf algebras");
}

#[test]
fn coalgebra_certificate_rejects_wrong_shapes() {
    let f = FieldDesc::cyclotomic(4).unwrap();
    let q = f.root_of_unity(4).unwrap();
    let t4 = taft_model(4, 1, &q).unwrap().0;
    let shape = |t: usize| PointedShape::new(vec![4], vec![(4, vec![t])], |g, e| g[0] * 4 + e[0]);
    assert!(pointed_coalgebra_iso(&t4, &shape(1), &t4, &shape(1)).pass);
    let t43 = taft_model(4, 3, &q).unwrap().0;
    assert!(pointed_coalgebra_iso(&t4, &shape(1), &t43, &shape(3)).pass);
    let wrong = PointedShape::new(vec![2, 2], vec![(4, vec![0, 1])], |g, e| (g[0] * 2 + g[1]) * 4 + e[0]);
    assert!(!pointed_coalgebra_iso(&t4, &shape(1), &t4, &wrong).pass);
}

#[test]
fn orbit_suites_report_sizes() {
    for (fam, sizes) in [("taft:4,2,zeta4", "[2]"), ("dihedral", "[1]"), ("liu:2,1,-1", "[1]"), ("qplane:4,2,zeta4", "[2]")] {
        let r = run_suite("orbits", Some(fam), None, 6, 0).unwrap();
        assert!(r.pass(), "{fam}: {:?}", failures(&r));
        assert_eq!(detail(&r, "orbit sizes"), sizes, "{fam}");
    }
}

#[test]
fn engine_audit_on_dihedral_shadows() {
    for n in [4u32, 6, 8] {
        let h = Dihedral::new(FieldDesc::cyclotomic(n).unwrap());
        let s = hopfkit::based::finite_shadow(&h, n as usize).unwrap();
        assert_eq!(s.action.space.dim(), n as usize);
        let r = engine_audit(&s.action, 0, 20);
        assert!(r.pass(), "N={n}: {:?}", failures(&r));
    }
}

#[test]
fn dimension_law_holds() {
    for fam in ["dihedral", "taft:4,2,zeta4", "liu:2,1,-1"] {
        let h = based_family(fam, None).unwrap();
        let r = dimension_law(h.as_ref(), 4).unwrap();
        assert!(r.pass(), "{fam}: {:?}", failures(&r));
        assert_eq!(r.checks.len(), 6);
    }
}

#[test]
fn w_filtration_and_crux() {
    for fam in ["dihedral", "taft:2,1,-1"] {
        let r = run_suite("w-filtration", Some(fam), None, 6, 0).unwrap();
        assert!(r.pass(), "{fam}: {:?}", failures(&r));
    }
    let r = run_suite("crux", Some("taft:4,2,zeta4"), None, 5, 0).unwrap();
    assert!(r.pass(), "{:?}", failures(&r));
}

#[test]
fn suite_errors() {
    assert!(matches!(run_suite("bogus", None, None, 4, 0), Err(SuiteError::UnknownSuite(_))));
    assert!(matches!(run_suite("liu-dual", Some("taft:2,1,-1"), None, 4, 0), Err(SuiteError::NotApplicable(..))));
    assert!(matches!(run_suite("orbits", Some("up:sl2,3"), None, 4, 0), Err(SuiteError::NotApplicable(..))));
}

#[test]
fn reports_serialize_deterministically() {
    let a = serde_json::to_string(&run_suite("dihedral-dual", None, None, 5, 3).unwrap()).unwrap();
    let b = serde_json::to_string(&run_suite("dihedral-dual", None, None, 5, 3).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn models_are_hopf_algebras() {
    let f = FieldDesc::cyclotomic(3).unwrap();
    let m: (FdHopf, _) = tensor_model(&cyclic_model(3, f).unwrap(), &taft_model(3, 1, &f.root_of_unity(3).unwrap()).unwrap()).unwrap();
    assert_eq!(m.0.dim(), 27);
    assert!(m.0.verify().all_pass());
}
