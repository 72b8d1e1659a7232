use hopfkit::based::*;
use hopfkit::families::*;
use hopfkit::scalars::{FieldDesc, Scalar};

fn based(r: &str) -> Box<dyn BasedHopf> {
    match parse_family(r, None).unwrap() {
        Family::Based(h) => h,
        _ => panic!("{r} is not based"),
    }
}

#[test]
fn every_family_verifies_and_cosplits() {
    for (r, n) in [
        ("dihedral", 6),
        ("taft:2,1,-1", 6),
        ("taft:3,1,zeta3", 6),
        ("taft:4,2,zeta4", 6),
        ("liu:2,1,-1", 6),
        ("liu:3,1,zeta3", 5),
        ("qplane:4,2,zeta4", 6),
        ("bfam:1,1,2,3", 6),
        ("ueps_sl2:3", 4),
        ("abf:2:2:0,1/1,0", 4),
    ] {
        let h = based(r);
        let t = std::time::Instant::now();
        let rep = verify_based(h.as_ref(), n);
        assert!(rep.pass(), "{r}: {:?}", rep.checks.iter().filter(|c| !c.check.pass).collect::<Vec<_>>());
        assert_eq!(rep.verified_degree, n);
        let cs = cosplit_check(h.as_ref(), n);
        assert!(cs.pass(), "{r}: {:?}", cs.checks.iter().filter(|c| !c.check.pass).collect::<Vec<_>>());
        eprintln!("{r}: {:?}", t.elapsed());
    }
}

#[test]
fn hbar_dimensions() {
    for (r, d) in [("dihedral", 2), ("taft:4,2,zeta4", 8), ("liu:2,1,-1", 4), ("qplane:4,2,zeta4", 8), ("bfam:1,1,2,3", 36)] {
        let h = based(r);
        let hb = hbar(h.as_ref()).unwrap();
        assert_eq!(hb.dim(), d, "{r}");
        assert!(hb.verify().all_pass(), "{r}");
    }
}

#[test]
fn dihedral_examples() {
    let h = Dihedral::new(FieldDesc::Rationals);
    assert_eq!(h.product(&vec![2, 1], &vec![3, 0]), single(vec![-1, 1], Scalar::rational(1, 1)));
    let two = vec![Scalar::rational(2, 1)];
    assert_eq!(resolve(&h, &IdealKind::CoreIdeal(two.clone())).unwrap().dim(), 4);
    assert_eq!(resolve(&h, &IdealKind::CoreIdeal(vec![Scalar::rational(-1, 1)])).unwrap().dim(), 2);
    let t = tangent_functional(&h, 0, 6).unwrap();
    for w in h.words_up_to(6) {
        assert_eq!(t.eval(&h, &w), Scalar::rational(w[0], 1));
    }
    let chi = character_functional(&h, &two, 6).unwrap();
    for w in h.words_up_to(6) {
        assert_eq!(chi.eval(&h, &w), Scalar::rational(2, 1).pow(w[0]));
    }
}
