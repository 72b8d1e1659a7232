use super::*;
use crate::based::*;
use crate::exactla::Subspace;
use crate::orbits::{core, is_orbitally_semisimple, is_stable, orbit, Action, IdealFd};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Engine self-audit on a split finite shadow: brute-force cores, OrbSemi, random ideals.
pub fn engine_audit(action: &Action, seed: u64, trials: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("engine", format!("dim {}", action.space.dim()), 0, seed);
    let a = &action.space;
    let f = a.alg.field;
    let npts = a.points.len();
    let orb = is_orbitally_semisimple(action);
    rep.conditional |= orb.conditional;
    rep.claim("OrbSemi", orb.holds, format!("{} orbits", orb.orbits.len()));
    if npts <= 12 && a.complete && npts == a.dim() {
        let kernels: Vec<Subspace> = a.points.iter().map(|p| a.kernel_of(p)).collect();
        let ideal_of = |mask: u32| -> IdealFd {
            let mut s = Subspace::full(f, a.dim());
            for (i, k) in kernels.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    s = s.intersection(k).expect("same ambient");
                }
            }
            IdealFd { space: s }
        };
        let stable: Vec<(u32, IdealFd)> = (1u32..1 << npts).map(|m| (m, ideal_of(m))).filter(|(_, i)| is_stable(action, i)).collect();
        let mut ok = true;
        for i in 0..npts {
            let c = core(action, &IdealFd { space: kernels[i].clone() });
            let best = stable.iter().filter(|(m, _)| m >> i & 1 == 1).map(|(_, id)| id).max_by_key(|id| id.dim()).expect("full orbit is stable");
            ok &= c == *best;
        }
        rep.claim("core(ker χ) is the largest stable subideal (brute force)", ok, format!("{} stable ideals among {} subsets", stable.len(), (1u32 << npts) - 1));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = a.dim();
    let random_vec = |rng: &mut ChaCha8Rng| -> Vec<Scalar> {
        let mut v = vec![f.zero(); d];
        for _ in 0..rng.gen_range(1..=3) {
            v[rng.gen_range(0..d)] = f.from_i64([-2, -1, 1, 2][rng.gen_range(0..4)]);
        }
        v
    };
    let mut failures = Vec::new();
    for t in 0..trials {
        let g1 = random_vec(&mut rng);
        let g2 = random_vec(&mut rng);
        let i = a.ideal_generated(std::slice::from_ref(&g1));
        let j = a.ideal_generated(&[g1, g2]);
        let ci = core(action, &i);
        let cj = core(action, &j);
        let ok = is_stable(action, &ci) && ci.space.is_subspace_of(&i.space).unwrap_or(false) && core(action, &ci) == ci && ci.space.is_subspace_of(&cj.space).unwrap_or(false);
        if !ok {
            failures.push(t);
        }
    }
    rep.claim(format!("{trials} seeded random ideals: stable, contained, idempotent, monotone"), failures.is_empty(), format!("failures {failures:?}"));
    rep
}

/// Based orbits against the engine on `A/(a_j^M − 1)`.
pub fn orbit_suite<H: BasedHopf + ?Sized>(h: &H, n: usize, seed: u64) -> Result<SuiteReport, SuiteError> {
    let mut rep = SuiteReport::new("orbits", h.name(), n, seed);
    let m = h.field().roots_of_unity_order() as usize;
    let shadow = finite_shadow(h, m)?;
    let gens = h.a_gens().len();
    let mut mismatch = None;
    let mut sizes = Vec::new();
    for k in 0..shadow.action.space.points.len() {
        let p = shadow.point_of(k, gens);
        let based: Vec<Point> = point_orbit(h, &p)?;
        let engine: Vec<Point> = orbit(&shadow.action, &shadow.action.space.points[k])?.into_iter().map(|i| shadow.point_of(i, gens)).collect();
        let same = based.len() == engine.len() && based.iter().all(|x| engine.contains(x));
        if !same && mismatch.is_none() {
            mismatch = Some(format!("point {k}: based {} vs engine {}", based.len(), engine.len()));
        }
        sizes.push(based.len());
    }
    rep.check(format!("based orbits agree with the engine on A/(a^{m} − 1)"), mismatch.map_or_else(Check::pass, Check::fail));
    sizes.sort();
    sizes.dedup();
    rep.claim("orbit sizes", true, format!("{sizes:?}"));
    for p in sample_points(h) {
        let o = point_orbit(h, &p)?;
        let spec = resolve(h, &IdealKind::CoreIdeal(p.clone()))?;
        let hb = h.module_basis().len();
        rep.claim(format!("dim H/H𝔪_g^(H̄) = |𝒪|·dim H̄ at {}", show_point(&p)), spec.dim() == o.len() * hb, format!("{} = {}·{}", spec.dim(), o.len(), hb));
    }
    rep.absorb("engine", engine_audit(&shadow.action, seed, 100));
    Ok(rep)
}

pub fn show_point(p: &[Scalar]) -> String {
    format!("({})", p.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", "))
}

fn report_checks(rep: &mut SuiteReport, prefix: &str, r: &BasedReport) {
    for c in &r.checks {
        rep.checks.push(SuiteCheck { name: format!("{prefix}: {}", c.name), pass: c.check.pass, witness: c.check.witness.clone(), detail: None });
    }
}

pub fn cosplit_suite<H: BasedHopf + ?Sized>(h: &H, n: usize, seed: u64) -> Result<SuiteReport, SuiteError> {
    let mut rep = SuiteReport::new("cosplit", h.name(), n, seed);
    let v = verify_based(h, n);
    report_checks(&mut rep, "verify", &v);
    report_checks(&mut rep, "cosplit", &cosplit_check(h, n));
    Ok(rep)
}

/// Classification of `π°(β)`, tangents and `Π°(χ_g)` by `H̄*` and `W_k` membership, plus the normality shadow.
pub fn w_filtration_suite<H: BasedHopf + ?Sized>(h: &H, n: usize, seed: u64) -> Result<SuiteReport, SuiteError> {
    let mut rep = SuiteReport::new("w-filtration", h.name(), n, seed);
    let f = h.field();
    let d = h.module_basis().len();
    let basis: Vec<CofiniteFunctional> = (0..d)
        .map(|i| {
            let mut b = vec![f.zero(); d];
            b[i] = f.one();
            pi_upper(h, &b, n)
        })
        .collect::<Result<_, _>>()?;
    let all_pass = |fs: &[CofiniteFunctional], t: &dyn Fn(&CofiniteFunctional) -> Check| fs.iter().map(t).find(|c| !c.pass).unwrap_or_else(Check::pass);
    rep.check("π°(β) ∈ H̄*", all_pass(&basis, &|b| in_hbar_star(h, b, n)));
    rep.check("π°(β) ∈ W_1", all_pass(&basis, &|b| in_w(h, b, 1, n)));
    let tangents: Vec<CofiniteFunctional> = (0..h.a_gens().len()).map(|j| tangent_functional(h, j, n)).collect::<Result<_, _>>()?;
    for (j, t) in tangents.iter().enumerate() {
        let name = &h.a_gens()[j].name;
        rep.claim(format!("tangent along {name} ∉ H̄*"), !in_hbar_star(h, t, n).pass, "expected a witness");
        rep.claim(format!("tangent along {name} ∉ W_1"), !in_w(h, t, 1, n).pass, "expected a witness");
        rep.check(format!("tangent along {name} ∈ W_2 to degree {n}"), in_w(h, t, 2, n));
    }
    let chis: Vec<(Point, CofiniteFunctional)> = sample_points(h).into_iter().take(2).map(|p| character_functional(h, &p, n).map(|c| (p, c))).collect::<Result<_, _>>()?;
    for (p, c) in &chis {
        rep.claim(format!("Π°(χ) at {} ∉ H̄*", show_point(p)), !in_hbar_star(h, c, n).pass, "expected a witness");
        let outside = (1..=3).all(|k| !in_w(h, c, k, n).pass);
        rep.claim(format!("Π°(χ) at {} ∉ W_k for k ≤ 3", show_point(p)), outside, "expected witnesses");
    }
    let phis: Vec<&CofiniteFunctional> = chis.iter().map(|(_, c)| c).take(1).chain(tangents.iter()).collect();
    let mut failure = None;
    for phi in &phis {
        for psi in &basis {
            let c = normality_shadow(h, phi, psi, n);
            if !c.pass && failure.is_none() {
                failure = c.witness;
            }
        }
    }
    rep.check(format!("normality shadow to degree {n}"), failure.map_or_else(Check::pass, Check::fail));
    Ok(rep)
}

/// The conjunction of the structural shadows for one family.
pub fn crux_suite<H: BasedHopf + ?Sized>(h: &H, n: usize, seed: u64) -> Result<SuiteReport, SuiteError> {
    let mut rep = SuiteReport::new("crux", h.name(), n, seed);
    rep.absorb("cosplit", cosplit_suite(h, n, seed)?);
    let hb = hbar(h)?;
    rep.check("H̄ passes the Hopf axioms", Check::from_bool(hb.verify().all_pass(), || "H̄ axiom failure".into()));
    rep.absorb("dimension law", dimension_law(h, n)?);
    rep.absorb("orbits", orbit_suite(h, n, seed)?);
    rep.absorb("w-filtration", w_filtration_suite(h, n, seed)?);
    Ok(rep)
}

/// `dim H/H𝔪_g = dim H̄` and `dim ĝ = |𝒪|·dim H̄` by the word-span oracle at two truncation degrees.
pub fn dimension_law<H: BasedHopf + ?Sized>(h: &H, n: usize) -> Result<SuiteReport, SuiteError> {
    let mut rep = SuiteReport::new("dimension-law", h.name(), n, 0);
    let hb = h.module_basis().len();
    for p in sample_points(h) {
        let point = resolve(h, &IdealKind::PointIdeal(p.clone()))?;
        let d0 = quotient_dim_oracle(h, &point, n + 2);
        let d1 = quotient_dim_oracle(h, &point, n + 3);
        rep.claim(format!("dim H/H𝔪_g = dim H̄ at {}", show_point(&p)), d0 == hb && d1 == hb, format!("oracle {d0}, {d1}; dim H̄ = {hb}"));
        let o = point_orbit(h, &p)?;
        let core_spec = resolve(h, &IdealKind::CoreIdeal(p.clone()))?;
        let hat = hat_space(h, &p, n)?;
        let c0 = quotient_dim_oracle(h, &core_spec, n + 2 + o.len());
        let c1 = quotient_dim_oracle(h, &core_spec, n + 3 + o.len());
        let want = o.len() * hb;
        rep.claim(format!("dim ĝ = |𝒪|·dim H̄ at {}", show_point(&p)), hat.len() == want && c0 == want && c1 == want, format!("ĝ {}, oracle {c0}, {c1}; |𝒪| = {}", hat.len(), o.len()));
    }
    Ok(rep)
}
