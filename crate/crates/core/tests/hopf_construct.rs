use hopfkit::construct::*;
use hopfkit::exactla::Subspace;
use hopfkit::hopf::*;
use hopfkit::scalars::{FieldDesc, Scalar};

fn q() -> FieldDesc {
    FieldDesc::Rationals
}

fn sweedler() -> FdHopf {
    taft_fd(2, 1, &Scalar::rational(-1, 1), q()).unwrap()
}

fn cyc(n: u32) -> FieldDesc {
    FieldDesc::cyclotomic(n).unwrap()
}

fn kc(n: usize, f: FieldDesc) -> FdHopf {
    group_algebra(&GroupTable::cyclic(n), f).unwrap()
}

fn vec_of(f: FieldDesc, v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| f.from_i64(x)).collect()
}

#[test]
fn group_algebra_axioms() {
    let h = kc(3, q());
    let r = h.verify();
    assert!(r.all_pass());
    assert!(r.is_commutative && r.is_cocommutative);
    for m in 1..=12 {
        assert!(kc(m, q()).verify().all_pass(), "kC{m}");
    }
}

#[test]
fn sweedler_axioms_and_sabotage() {
    let h = sweedler();
    assert_eq!(h.dim(), 4);
    let r = h.verify();
    assert!(r.all_pass(), "{r:?}");
    assert!(!r.is_commutative && !r.is_cocommutative);
    let mut bad = h.clone();
    bad.antipode = Some(vec![vec![q().zero(); 4]; 4]);
    assert!(!bad.verify().antipode.pass);
}

#[test]
fn taft_families() {
    let z3 = cyc(3).root_of_unity(3).unwrap();
    let t = taft_fd(3, 1, &z3, cyc(3)).unwrap();
    assert_eq!(t.dim(), 9);
    assert!(t.verify().all_pass());
    // S² ≠ id.
    let x = t.alg.basis_vector(1);
    let s2 = t.antipode_of(&t.antipode_of(&x).unwrap()).unwrap();
    assert_ne!(s2, x);
    let i = cyc(4).root_of_unity_generator();
    let t42 = taft_fd(4, 2, &i, cyc(4)).unwrap();
    assert_eq!(t42.dim(), 8);
    assert!(t42.verify().all_pass());
    let z6 = cyc(6).root_of_unity(6).unwrap();
    for tt in [2, 3] {
        assert!(taft_fd(6, tt, &z6, cyc(6)).unwrap().verify().all_pass());
    }
    assert!(taft_fd(3, 1, &Scalar::rational(-1, 1), cyc(3)).is_err());
}

#[test]
fn taft_nilpotent_product() {
    let h = sweedler();
    // (gx)(gx) = −g²x² = 0
    let gx = h.alg.basis_vector(3);
    assert!(h.alg.mul(&gx, &gx).iter().all(|s| s.is_zero()));
}

#[test]
fn restricted_enveloping_sl2() {
    let u3 = restricted_enveloping(&RestrictedLie::sl2(3).unwrap()).unwrap();
    assert_eq!(u3.dim(), 27);
    let r = u3.verify();
    assert!(r.all_pass() && r.is_cocommutative, "{r:?}");
    let ab = restricted_enveloping(&RestrictedLie::abelian(1, 3).unwrap()).unwrap();
    assert_eq!(ab.dim(), 3);
    assert_eq!(augmentation_ideal(&ab).dim(), 2);
}

#[test]
fn dual_and_bidual() {
    for h in [kc(2, q()), sweedler(), kc(3, cyc(3))] {
        let d = h.dual();
        assert!(d.verify().all_pass());
        assert!(h.bidual_certified());
        let (r, rd) = (h.verify(), d.verify());
        assert_eq!(r.is_commutative, rd.is_cocommutative);
    }
}

#[test]
fn characters_and_group_likes() {
    let f = cyc(3);
    let h = kc(3, f);
    assert_eq!(characters(&h.alg, &[]).characters.len(), 3);
    assert_eq!(h.group_likes(&[]).elements.len(), 3);
    let z3 = f.root_of_unity(3).unwrap();
    let t = taft_fd(3, 1, &z3, f).unwrap();
    let cs = characters(&t.alg, &[]);
    assert_eq!(cs.characters.len(), 3);
    assert!(cs.complete);
    let gl = t.group_likes(&[]);
    assert_eq!(gl.elements.len(), 3);
    assert!(gl.closed_under_multiplication);
    let k4 = kc(4, cyc(4));
    assert_eq!(characters(&k4.alg, &[]).characters.len(), 4);
    assert_eq!(kc(2, q()).dual().group_likes(&[]).elements.len(), 2);
}

#[test]
fn group_likes_of_dual_match_characters() {
    let h = sweedler();
    let chars: Vec<Vec<Scalar>> = characters(&h.alg, &[]).characters.into_iter().map(|c| c.values).collect();
    let gl = h.dual().group_likes(&[]).elements;
    assert_eq!(chars.len(), gl.len());
    for c in &chars {
        assert!(gl.contains(c));
        let inv = h.antipode.as_ref().unwrap().iter().map(|col| hopfkit::exactla::dot(col, c, &h.field())).collect::<Vec<_>>();
        assert_eq!(h.convolve(c, &inv), h.counit);
    }
}

#[test]
fn skew_primitives_sweedler() {
    let h = sweedler();
    let one = h.alg.unit.clone();
    let g = h.alg.basis_vector(2);
    let p = h.skew_primitives(&one, &g).unwrap();
    assert_eq!(p.dim(), 2);
    assert!(p.contains(&h.alg.basis_vector(1)));
    assert!(p.contains(&vec_of(q(), &[-1, 0, 1, 0])));
    assert_eq!(h.essential_skew_count(&one, &g).unwrap(), 1);
    assert_eq!(kc(2, q()).skew_primitives(&vec_of(q(), &[1, 0]), &vec_of(q(), &[1, 0])).unwrap().dim(), 0);
    assert!(h.skew_primitives(&h.alg.basis_vector(1), &one).is_err());
}

#[test]
fn skew_primitives_restricted_sl2() {
    let u = restricted_enveloping(&RestrictedLie::sl2(3).unwrap()).unwrap();
    let one = u.alg.unit.clone();
    assert!(u.skew_primitives(&one, &one).unwrap().dim() >= 3);
}

#[test]
fn convolution_sign_character() {
    let h = kc(2, q());
    let sign = vec_of(q(), &[1, -1]);
    assert_eq!(h.convolve(&sign, &sign), h.counit);
    assert_eq!(h.convolve(&h.counit, &sign), sign);
}

fn sweedler_spec(h: &FdHopf) -> GenSpec {
    let f = h.field();
    GenSpec {
        names: vec!["g".into(), "x".into()],
        vectors: vec![h.alg.basis_vector(2), h.alg.basis_vector(1)],
        kinds: vec![GenKind::GroupLike, GenKind::Skew { a: vec![], b: vec![0] }],
        relations: vec![
            vec![(f.one(), vec![0, 0]), (-f.one(), vec![])],
            vec![(f.one(), vec![1, 1])],
            vec![(f.one(), vec![1, 0]), (f.one(), vec![0, 1])],
        ],
    }
}

#[test]
fn iso_search_self_duality() {
    let h = sweedler();
    let spec = sweedler_spec(&h);
    let r = iso_search(&h, &h.dual(), &spec, &[]).unwrap();
    assert!(r.found, "{}", r.summary);
    let c22 = kc(2, q()).tensor_product(&kc(2, q())).unwrap();
    assert!(!iso_search(&h, &c22, &spec, &[]).unwrap().found);
    let h2 = kc(2, q());
    let spec2 = GenSpec {
        names: vec!["g".into()],
        vectors: vec![h2.alg.basis_vector(1)],
        kinds: vec![GenKind::GroupLike],
        relations: vec![vec![(q().one(), vec![0, 0]), (-q().one(), vec![])]],
    };
    assert!(iso_search(&h2, &h2, &spec2, &[]).unwrap().found);
}

#[test]
fn tensor_products() {
    let t = kc(2, q()).tensor_product(&sweedler()).unwrap();
    assert_eq!(t.dim(), 8);
    assert!(t.verify().all_pass());
    assert!(kc(2, q()).tensor_product(&kc(2, FieldDesc::prime(3).unwrap())).is_err());
}

#[test]
fn quotient_and_normality() {
    let h = sweedler();
    let xi = two_sided_ideal(&h.alg, &[h.alg.basis_vector(1)]);
    let qh = quotient_hopf(&h, &xi).unwrap();
    assert_eq!(qh.dim(), 2);
    assert!(qh.verify().all_pass());
    let z = quotient_hopf(&h, &Subspace::zero(q(), 4)).unwrap();
    assert!(z.same_structure(&h));
    let k1 = Subspace::span(q(), 4, std::slice::from_ref(&h.alg.unit));
    assert!(is_normal(&h, &k1).unwrap().normal);
    assert!(is_normal(&h, &h.alg.center()).unwrap().normal);
    assert!(is_normal(&h, &Subspace::span(q(), 4, &[h.alg.basis_vector(2)])).is_err());
    // (g + gx) is an ideal but not a coideal.
    let bad = two_sided_ideal(&h.alg, &[vec_of(q(), &[0, 0, 1, 1])]);
    assert!(quotient_hopf(&h, &bad).is_err());
}

#[test]
fn adjoint_actions() {
    let h = sweedler();
    let ad = adjoint_action(&h, Side::Left).unwrap();
    let f = q();
    // ad(g)(x) = g x g⁻¹ = −x
    assert_eq!(ad.apply(&h.alg.basis_vector(2), &h.alg.basis_vector(1), &f), vec_of(f, &[0, -1, 0, 0]));
    let rep = module_algebra_check(&h, &h.alg, &ad);
    assert!(rep.passes(), "{rep:?}");
    let k2 = kc(2, q());
    let adk = adjoint_action(&k2, Side::Left).unwrap();
    assert_eq!(adk.apply(&k2.alg.basis_vector(1), &k2.alg.basis_vector(1), &f), k2.alg.basis_vector(1));
}

#[test]
fn smash_products() {
    let f = q();
    let t = kc(2, f);
    let r = cyclic_group_ring_algebra(2, f);
    // b ↦ −b
    let act = ModAction::from_group_images(vec![
        vec![vec_of(f, &[1, 0]), vec_of(f, &[0, 1])],
        vec![vec_of(f, &[1, 0]), vec_of(f, &[0, -1])],
    ]);
    let s = smash_product(&r, &t, &act).unwrap();
    assert_eq!(s.dim(), 4);
    assert!(!s.is_commutative());
    // (1#a)(b#1) = −b#a
    let lhs = s.mul(&s.basis_vector(1), &s.basis_vector(2));
    assert_eq!(lhs, vec_of(f, &[0, 0, 0, -1]));
    let triv = smash_product(&r, &t, &ModAction::trivial(&t, 2)).unwrap();
    assert!(triv.is_commutative());
    let swap = ModAction::from_group_images(vec![
        vec![vec_of(f, &[1, 0]), vec_of(f, &[0, 1])],
        vec![vec_of(f, &[0, 1]), vec_of(f, &[1, 0])],
    ]);
    let m2 = smash_product(&split_semisimple(2, f), &t, &swap).unwrap();
    assert_eq!(m2.center().dim(), 1);
    let non_auto = ModAction::from_group_images(vec![
        vec![vec_of(f, &[1, 0]), vec_of(f, &[0, 1])],
        vec![vec_of(f, &[1, 0]), vec_of(f, &[1, 1])],
    ]);
    assert!(!module_algebra_check(&t, &r, &non_auto).passes());
}

#[test]
fn crossed_products() {
    let f = cyc(4);
    let t = kc(2, f);
    let k = truncated_polynomial(1, f, "x");
    let act = ModAction::trivial(&t, 1);
    let mut sigma = Cocycle::trivial(&t, &k);
    sigma.values[1][1] = vec![f.from_i64(-1)];
    let c = crossed_product(&k, &t, &act, &sigma).unwrap();
    assert_eq!(characters(&c, &[]).characters.len(), 2);
    let cq = crossed_product(&truncated_polynomial(1, q(), "x"), &kc(2, q()), &ModAction::trivial(&kc(2, q()), 1), &{
        let mut s = Cocycle::trivial(&kc(2, q()), &truncated_polynomial(1, q(), "x"));
        s.values[1][1] = vec![q().from_i64(-1)];
        s
    })
    .unwrap();
    assert_eq!(characters(&cq, &[]).characters.len(), 0);
    let mut bad = Cocycle::trivial(&t, &k);
    bad.values[0][1] = vec![f.from_i64(2)];
    assert!(matches!(crossed_product(&k, &t, &act, &bad), Err(ConstructError::Cocycle(_))));
}

#[test]
fn s3_characters() {
    let s3 = group_algebra(&GroupTable::dihedral(3), cyc(3)).unwrap();
    let r = s3.verify();
    assert!(r.all_pass() && !r.is_commutative && r.is_cocommutative);
    assert_eq!(characters(&s3.alg, &[]).characters.len(), 2);
    let v4 = group_algebra(&GroupTable::cyclic(2).direct_product(&GroupTable::cyclic(2)), q()).unwrap();
    assert_eq!(characters(&v4.alg, &[]).characters.len(), 4);
}

#[test]
fn file_round_trip() {
    let h = sweedler();
    let file = HopfFile::from_hopf(&h);
    let text = serde_json::to_string(&file).unwrap();
    let back: HopfFile = serde_json::from_str(&text).unwrap();
    assert!(back.to_hopf().unwrap().same_structure(&h));
    let mut no_s = file.clone();
    no_s.antipode = None;
    assert_eq!(no_s.to_hopf().unwrap().antipode, h.antipode);
}

#[test]
fn restricted_enveloping_sl2_p5() {
    let u = restricted_enveloping(&RestrictedLie::sl2(5).unwrap()).unwrap();
    assert_eq!(u.dim(), 125);
    let r = u.verify();
    assert!(r.all_pass() && r.is_cocommutative && !r.is_commutative);
}
