use hopfkit::based::{finite_shadow, hbar};
use hopfkit::construct::*;
use hopfkit::families::Dihedral;
use hopfkit::hopf::{iso_search, FdAlgebra, FdHopf};
use hopfkit::scalars::{FieldDesc, Scalar};
use hopfkit::suites::*;
use std::time::Instant;

type Outcome = Result<String, String>;

fn cyc(n: u32) -> FieldDesc {
    FieldDesc::cyclotomic(n).unwrap()
}

fn root(n: u32) -> Scalar {
    cyc(n).root_of_unity(n as u64).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn failures(r: &SuiteReport) -> String {
    r.checks.iter().filter(|c| !c.pass).map(|c| format!("{}: {}", c.name, c.witness.clone().unwrap_or_default())).collect::<Vec<_>>().join("; ")
}

fn suite_ok(r: &SuiteReport) -> Result<(), String> {
    ensure(r.pass() && !r.conditional, || format!("{} on {}: {}", r.suite, r.family, failures(r)))
}

/// Finite-dimensional Hopf algebras named in the axiom criterion, plus the ones the suites build.
fn axiom_objects() -> Vec<(String, FdHopf)> {
    let mut out = Vec::new();
    for m in 1..=12 {
        out.push((format!("kC{m}"), group_algebra(&GroupTable::cyclic(m), FieldDesc::Rationals).unwrap()));
    }
    for (n, t) in [(2usize, 1usize), (3, 1), (4, 2), (6, 2), (6, 3)] {
        let f = cyc(n as u32);
        out.push((format!("T_f({n},{t})"), taft_fd(n, t, &root(n as u32), f).unwrap()));
    }
    for p in [3, 5] {
        out.push((format!("u(sl2) p={p}"), restricted_enveloping(&RestrictedLie::sl2(p).unwrap()).unwrap()));
    }
    for fam in ["dihedral", "taft:2,1,-1", "taft:3,1,zeta3", "taft:4,2,zeta4", "liu:2,1,-1", "qplane:4,2,zeta4", "bfam:1,1,2,3", "ueps_sl2:3"] {
        let h = based_family(fam, None).unwrap();
        out.push((format!("H̄ of {fam}"), hbar(h.as_ref()).unwrap()));
    }
    let f = cyc(4);
    let m = tensor_model(&cyclic_model(2, f).unwrap(), &taft_model(2, 1, &f.from_i64(-1)).unwrap()).unwrap();
    out.push(("kC2 ⊗ T_f(2,1,-1)".into(), m.0));
    out
}

/// `k[b]/(bᴺ − 1) # kC₂` with the inversion action, and a twisted crossed product.
fn smash_objects() -> Vec<(String, FdAlgebra)> {
    let mut out = Vec::new();
    for n in [4usize, 6, 8] {
        let f = cyc(n as u32);
        let r = cyclic_group_ring_algebra(n, f);
        let e = |i: usize| r.basis_vector(i);
        let act = ModAction::from_group_images(vec![(0..n).map(e).collect(), (0..n).map(|i| e((n - i) % n)).collect()]);
        let c2 = group_algebra(&GroupTable::cyclic(2), f).unwrap();
        out.push((format!("k[b]/(b^{n}-1) # kC2"), smash_product(&r, &c2, &act).unwrap()));
    }
    let f = cyc(4);
    let t = group_algebra(&GroupTable::cyclic(2), f).unwrap();
    let k = truncated_polynomial(1, f, "x");
    let mut sigma = Cocycle::trivial(&t, &k);
    sigma.values[1][1] = vec![f.from_i64(-1)];
    out.push(("k #_σ kC2".into(), crossed_product(&k, &t, &ModAction::trivial(&t, 1), &sigma).unwrap()));
    out
}

fn c1_axioms() -> Outcome {
    let start = Instant::now();
    let objs = axiom_objects();
    for (name, h) in &objs {
        let r = h.verify();
        ensure(r.all_pass(), || format!("{name}: {r:?}"))?;
    }
    let smash = smash_objects();
    for (name, a) in &smash {
        ensure(a.check_associative(&a.generators()).pass, || format!("{name} is not associative"))?;
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, || format!("took {secs:.1}s"))?;
    Ok(format!("{} Hopf algebras and {} smash/crossed products in {secs:.1}s", objs.len(), smash.len()))
}

fn c2_bidual() -> Outcome {
    let objs = axiom_objects();
    for (name, h) in &objs {
        ensure(h.bidual_certified(), || name.to_string())?;
        ensure(h.dual().dual().same_structure(h), || format!("{name}: structure differs"))?;
    }
    Ok(format!("{} objects", objs.len()))
}

fn c3_taft_self_dual() -> Outcome {
    for n in [2u32, 3, 4] {
        let (h, spec) = taft_model(n as usize, 1, &root(n)).map_err(|e| e.to_string())?;
        let r = iso_search(&h, &h.dual(), &spec, &[]).map_err(|e| e.to_string())?;
        ensure(r.found, || format!("n={n}: {}", r.summary))?;
    }
    Ok("n = 2, 3, 4".into())
}

fn c4_restricted() -> Outcome {
    for (p, dim) in [(3u64, 27usize), (5, 125)] {
        let u = restricted_enveloping(&RestrictedLie::sl2(p).unwrap()).map_err(|e| e.to_string())?;
        ensure(u.dim() == dim, || format!("p={p}: dim {}", u.dim()))?;
        ensure(u.is_cocommutative(), || format!("p={p}: not cocommutative"))?;
        ensure(u.dual().alg.is_commutative(), || format!("p={p}: dual not commutative"))?;
    }
    Ok("dims 27 and 125, duals commutative".into())
}

fn c5_dihedral() -> Outcome {
    let r = run_suite("dihedral-dual", None, None, 14, 0).map_err(|e| e.to_string())?;
    suite_ok(&r)?;
    let want = ["Δ of the tangent functional", "Δ of the character functional", "dim ĝ at λ = 2", "dim ĝ at λ = -1", "span(ĝĥ)", "H̄* is split semisimple commutative of dimension 2"];
    for w in want {
        ensure(r.checks.iter().any(|c| c.name.starts_with(w)), || format!("missing check {w}"))?;
    }
    let spans = r.checks.iter().filter(|c| c.name.starts_with("span(ĝĥ)")).count();
    ensure(spans == 3, || format!("{spans} product-law parameter choices"))?;
    Ok(format!("{} checks at degree 14", r.checks.len()))
}

fn c6_engine() -> Outcome {
    for n in [4u32, 6, 8] {
        let s = finite_shadow(&Dihedral::new(cyc(n)), n as usize).map_err(|e| e.to_string())?;
        let r = engine_audit(&s.action, 0, 100);
        suite_ok(&r)?;
        ensure(r.checks.iter().any(|c| c.name.contains("brute force")), || format!("N={n}: brute-force oracle not run"))?;
    }
    Ok("N = 4, 6, 8 with 100 random ideals each".into())
}

fn c7_dimension_law() -> Outcome {
    for fam in ["dihedral", "taft:4,2,zeta4", "liu:2,1,-1", "qplane:4,2,zeta4"] {
        let h = based_family(fam, None).map_err(|e| e.to_string())?;
        let r = dimension_law(h.as_ref(), 6).map_err(|e| e.to_string())?;
        suite_ok(&r)?;
        ensure(r.checks.len() == 6, || format!("{fam}: {} checks", r.checks.len()))?;
    }
    Ok("3 sample points for each of 4 families".into())
}

fn c8_cosplit() -> Outcome {
    let cases = [
        ("dihedral", 6),
        ("taft:2,1,-1", 6),
        ("taft:3,1,zeta3", 6),
        ("taft:4,2,zeta4", 6),
        ("liu:2,1,-1", 6),
        ("qplane:4,2,zeta4", 6),
        ("bfam:1,1,2,3", 6),
        ("ueps_sl2:3", 4),
    ];
    for (fam, n) in cases {
        suite_ok(&run_suite("cosplit", Some(fam), None, n, 0).map_err(|e| e.to_string())?)?;
    }
    Ok(format!("{} families", cases.len()))
}

fn c9_dual_decompositions() -> Outcome {
    let cases = [("taft-dual", "taft:4,2,zeta4"), ("liu-dual", "liu:2,1,-1"), ("qplane-dual", "qplane:4,2,zeta4"), ("bfam-dual", "bfam:1,1,2,3")];
    for (suite, fam) in cases {
        let r = run_suite(suite, Some(fam), None, 6, 0).map_err(|e| e.to_string())?;
        suite_ok(&r)?;
        ensure(r.checks.iter().any(|c| c.name == "character homomorphism on 10 pairs"), || format!("{fam}: no character check"))?;
    }
    let r = run_suite("taft-dual", Some("taft:4,2,zeta4"), None, 6, 0).map_err(|e| e.to_string())?;
    ensure(r.checks.iter().any(|c| c.name == "H̄* ≅ kC_2 ⊗ T_f(2, 1, -1) as algebras" && c.pass), || "taft(4,2,i) decomposition".into())?;
    Ok("taft, liu, qplane, bfam".into())
}

fn c10_filtration() -> Outcome {
    for fam in ["dihedral", "taft:2,1,-1"] {
        let r = run_suite("w-filtration", Some(fam), None, 6, 0).map_err(|e| e.to_string())?;
        suite_ok(&r)?;
        ensure(r.checks.iter().any(|c| c.name == "normality shadow to degree 6"), || format!("{fam}: no normality check"))?;
    }
    Ok("dihedral and taft(2,1,-1) to degree 6".into())
}

fn full_run() -> Result<String, String> {
    let mut reports = Vec::new();
    for s in SUITES {
        reports.push(run_suite(s, None, None, 6, 0).map_err(|e| e.to_string())?);
    }
    serde_json::to_string_pretty(&reports).map_err(|e| e.to_string())
}

fn c11_determinism() -> Outcome {
    let a = full_run()?;
    let b = full_run()?;
    ensure(a == b, || "reports differ".into())?;
    Ok(format!("{} suites, {} bytes", SUITES.len(), a.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("axiom suite", c1_axioms),
        ("bidual", c2_bidual),
        ("Taft self-duality", c3_taft_self_dual),
        ("restricted enveloping algebras", c4_restricted),
        ("dihedral suite", c5_dihedral),
        ("orbit engine", c6_engine),
        ("dimension law", c7_dimension_law),
        ("coideal complements", c8_cosplit),
        ("dual decompositions", c9_dual_decompositions),
        ("filtration and normality", c10_filtration),
        ("determinism", c11_determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let r = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match r {
            Ok(msg) => println!("PASS {:>2} {name}: {msg} ({secs:.2}s)", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {msg} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
