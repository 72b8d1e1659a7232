use hopfkit::construct::*;
use hopfkit::exactla::Subspace;
use hopfkit::hopf::FdHopf;
use hopfkit::orbits::*;
use hopfkit::scalars::{FieldDesc, Scalar};

fn f4() -> FieldDesc {
    FieldDesc::cyclotomic(4).unwrap()
}

fn vec_of(f: FieldDesc, v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| f.from_i64(x)).collect()
}

/// C₂ acting on k[b]/(b⁴ − 1) by b ↦ b³.
fn inversion_action() -> Action {
    let f = f4();
    let kc2 = group_algebra(&GroupTable::cyclic(2), f).unwrap();
    let a = CommAlgFd::new(cyclic_group_ring_algebra(4, f), &[]).unwrap();
    assert!(a.complete);
    let id: Vec<Vec<Scalar>> = (0..4).map(|i| a.alg.basis_vector(i)).collect();
    let inv: Vec<Vec<Scalar>> = (0..4).map(|i| a.alg.basis_vector((4 - i) % 4)).collect();
    Action::new(kc2, a, ModAction::from_group_images(vec![id, inv])).unwrap()
}

fn point(action: &Action, b: &Scalar) -> hopfkit::hopf::Character {
    action.space.points.iter().find(|p| &p.values[1] == b).unwrap().clone()
}

#[test]
fn stability_and_core() {
    let act = inversion_action();
    let f = f4();
    let i = f.root_of_unity(4).unwrap();
    let ideal = act.space.ideal_generated(&[vec![-&i, f.one(), f.zero(), f.zero()]]);
    assert_eq!(ideal.codim(), 1);
    assert!(!is_stable(&act, &ideal));
    let c = core(&act, &ideal);
    assert_eq!(c.codim(), 2);
    assert_eq!(c, act.space.ideal_generated(&[vec_of(f, &[1, 0, 1, 0])]));
    assert!(is_stable(&act, &c));
    assert_eq!(core(&act, &c), c);
    assert!(is_stable(&act, &act.space.zero_ideal()));
}

#[test]
fn orbits_of_inversion() {
    let act = inversion_action();
    let f = f4();
    let i = f.root_of_unity(4).unwrap();
    let o = orbit(&act, &point(&act, &i)).unwrap();
    let vals: Vec<Scalar> = o.iter().map(|&k| act.space.points[k].values[1].clone()).collect();
    assert_eq!(vals.len(), 2);
    assert!(vals.contains(&i) && vals.contains(&-&i));
    assert_eq!(orbit(&act, &point(&act, &f.one())).unwrap().len(), 1);
    let parts = orbits(&act);
    assert_eq!(parts.iter().map(|p| p.len()).sum::<usize>(), 4);
    for p in &parts {
        for &k in p {
            let mut o = orbit(&act, &act.space.points[k]).unwrap();
            o.sort();
            let mut pp = p.clone();
            pp.sort();
            assert_eq!(o, pp);
        }
    }
    let rep = is_orbitally_semisimple(&act);
    assert!(rep.holds && !rep.conditional);
    assert!(!is_h_simple(&act).simple);
}

#[test]
fn group_orbit_matches_core() {
    let act = inversion_action();
    let f = f4();
    let group = vec![vec_of(f, &[1, 0]), vec_of(f, &[0, 1])];
    for p in act.space.points.clone() {
        let ker = IdealFd { space: act.space.kernel_of(&p) };
        assert_eq!(core(&act, &ker), group_translate_intersection(&act, &group, &ker));
    }
}

#[test]
fn quotient_by_core_is_simple() {
    let act = inversion_action();
    let f = f4();
    let i = f.root_of_unity(4).unwrap();
    let c = core(&act, &IdealFd { space: act.space.kernel_of(&point(&act, &i)) });
    let q = act.quotient(&c).unwrap();
    assert_eq!(q.space.dim(), 2);
    assert!(is_h_simple(&q).simple);
    assert!(frobenius_search(&q.space.alg, 7, 64).is_some());
}

#[test]
fn trivial_actions() {
    let f = FieldDesc::Rationals;
    let kc2 = group_algebra(&GroupTable::cyclic(2), f).unwrap();
    let a = CommAlgFd::new(split_semisimple(3, f), &[]).unwrap();
    let act = Action::trivial(kc2.clone(), a);
    assert!(is_orbitally_semisimple(&act).holds);
    for p in act.space.points.clone() {
        let ker = IdealFd { space: act.space.kernel_of(&p) };
        assert_eq!(core(&act, &ker), ker);
        assert_eq!(orbit(&act, &p).unwrap().len(), 1);
    }
    let k = CommAlgFd::new(truncated_polynomial(1, f, "x"), &[]).unwrap();
    assert!(is_h_simple(&Action::trivial(kc2.clone(), k)).simple);
    let dual = CommAlgFd::new(truncated_polynomial(2, f, "x"), &[]).unwrap();
    let act2 = Action::trivial(kc2, dual);
    let rep = is_orbitally_semisimple(&act2);
    assert!(!rep.holds);
    assert!(rep.orbits[0].core_equals_intersection);
    assert!(!rep.ambient_reduced);
}

#[test]
fn frobenius() {
    let f = FieldDesc::Rationals;
    let a = truncated_polynomial(2, f, "x");
    assert!(frobenius_witness(&a, &vec_of(f, &[0, 1])));
    assert!(!frobenius_witness(&a, &vec_of(f, &[1, 0])));
    let kc2 = group_algebra(&GroupTable::cyclic(2), f).unwrap();
    assert!(frobenius_witness(&kc2.alg, &vec_of(f, &[0, 1])));
}

#[test]
fn nilradicals() {
    let f = FieldDesc::Rationals;
    let ss = CommAlgFd::new(split_semisimple(3, f), &[]).unwrap();
    assert_eq!(nilradical(&ss).unwrap().ideal.dim(), 0);
    let d = CommAlgFd::new(truncated_polynomial(2, f, "x"), &[]).unwrap();
    assert_eq!(nilradical(&d).unwrap().ideal.dim(), 1);
    let prod = CommAlgFd::new(tensor_algebra(&cyclic_group_ring_algebra(2, f), &truncated_polynomial(2, f, "x")), &[]).unwrap();
    let n = nilradical(&prod).unwrap();
    assert_eq!(n.ideal.codim(), 2);
    let empty = CommAlgFd::with_points(split_semisimple(2, f), vec![], false).unwrap();
    assert!(nilradical(&empty).is_err());
}

/// Brute force over the stable ideals spanned by subsets of the idempotent basis.
#[test]
fn core_is_largest_stable_subideal() {
    let f = FieldDesc::Rationals;
    let kc2 = group_algebra(&GroupTable::cyclic(2), f).unwrap();
    let a = CommAlgFd::new(split_semisimple(4, f), &[]).unwrap();
    // swap e1 ↔ e2, fix e3, e4
    let id: Vec<Vec<Scalar>> = (0..4).map(|i| a.alg.basis_vector(i)).collect();
    let sw: Vec<Vec<Scalar>> = [1, 0, 2, 3].iter().map(|&i| a.alg.basis_vector(i)).collect();
    let act = Action::new(kc2, a, ModAction::from_group_images(vec![id, sw])).unwrap();
    let all: Vec<IdealFd> = (0u32..16)
        .map(|mask| {
            let gens: Vec<Vec<Scalar>> = (0..4).filter(|i| mask >> i & 1 == 1).map(|i| act.space.alg.basis_vector(i)).collect();
            IdealFd { space: Subspace::span(f, 4, &gens) }
        })
        .collect();
    for i in &all {
        let c = core(&act, i);
        assert!(is_stable(&act, &c));
        assert!(c.space.is_subspace_of(&i.space).unwrap());
        for j in &all {
            if is_stable(&act, j) && j.space.is_subspace_of(&i.space).unwrap() {
                assert!(j.space.is_subspace_of(&c.space).unwrap());
            }
            if i.space.is_subspace_of(&j.space).unwrap() {
                assert!(c.space.is_subspace_of(&core(&act, j).space).unwrap());
            }
        }
    }
}

#[test]
fn invalid_action_rejected() {
    let f = FieldDesc::Rationals;
    let kc2: FdHopf = group_algebra(&GroupTable::cyclic(2), f).unwrap();
    let a = CommAlgFd::new(cyclic_group_ring_algebra(2, f), &[]).unwrap();
    let bad = ModAction::from_group_images(vec![
        vec![vec_of(f, &[1, 0]), vec_of(f, &[0, 1])],
        vec![vec_of(f, &[1, 0]), vec_of(f, &[1, 1])],
    ]);
    assert!(Action::new(kc2, a, bad).is_err());
}
