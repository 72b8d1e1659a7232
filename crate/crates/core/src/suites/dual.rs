use super::*;
use crate::based::*;
use crate::exactla::Echelon;
use crate::families::{Dihedral, SkewPlane};
use crate::hopf::iso_search;
use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn q(k: i64, f: &FieldDesc) -> Scalar {
    f.from_i64(k)
}

fn rat(n: i64, d: i64, f: &FieldDesc) -> Scalar {
    Scalar::rational(n, d).coerce(f).expect("rational")
}

fn table(words: &[Word], eval: impl Fn(&Word) -> Scalar) -> Vec<Scalar> {
    words.iter().map(eval).collect()
}

/// Rank of `xs`, rank of `ys`, rank of both together.
fn span_ranks(xs: &[Vec<Scalar>], ys: &[Vec<Scalar>]) -> (usize, usize, usize) {
    let all: Vec<Vec<Scalar>> = xs.iter().chain(ys).cloned().collect();
    (grid_rank(xs), grid_rank(ys), grid_rank(&all))
}

fn grid_rank(rows: &[Vec<Scalar>]) -> usize {
    let Some(first) = rows.first() else { return 0 };
    let f = first.first().map(|s| s.field()).unwrap_or(FieldDesc::Rationals);
    let mut ech = Echelon::new(f, first.len());
    rows.iter().filter(|r| ech.insert(r).is_ok()).count()
}

/// The dihedral experiment: coproduct formulas, `ĝ` spaces, the product law and the structure of `H̄*`.
pub fn dihedral_dual(field: FieldDesc, n: usize, seed: u64) -> Result<SuiteReport, SuiteError> {
    let h = Dihedral::new(field);
    let f = field;
    let mut rep = SuiteReport::new("dihedral-dual", h.name(), n, seed);
    let words = h.words_up_to(n);
    let alpha = pi_upper(&h, &[f.one(), -f.one()], n)?;
    let eps = pi_upper(&h, &[f.one(), f.one()], n)?;
    let tangent = tangent_functional(&h, 0, n)?;
    let pt = |x: Scalar| vec![x];

    // Δ(Π°(f)) = Π°(f)⊗1 + α⊗Π°(f)
    let mut bad = None;
    for u in &words {
        for v in &words {
            let lhs = dual_coproduct_eval(&h, &tangent, &word_elem(&h, u), &word_elem(&h, v));
            let rhs = &(&tangent.eval(&h, u) * &eps.eval(&h, v)) + &(&alpha.eval(&h, u) * &tangent.eval(&h, v));
            if lhs != rhs && bad.is_none() {
                bad = Some(format!("{} ⊗ {}", h.show(u), h.show(v)));
            }
        }
    }
    rep.check("Δ of the tangent functional", bad.map_or_else(Check::pass, Check::fail));

    // Δ(Π°(χ_λ)) = ½(Π°(χ_λ)⊗Π°(χ_λ))((1+α)⊗1 + (1−α)⊗Π°(χ_{λ⁻²}))
    let one_plus = pi_upper(&h, &[q(2, &f), q(0, &f)], n)?;
    let one_minus = pi_upper(&h, &[q(0, &f), q(2, &f)], n)?;
    let half = rat(1, 2, &f);
    for lam in [q(2, &f), q(3, &f), rat(1, 3, &f)] {
        let chi = character_functional(&h, &pt(lam.clone()), n)?;
        let chi2 = character_functional(&h, &pt(lam.pow(-2)), n)?;
        let mut bad = None;
        for u in &words {
            let a = conv_eval(&h, &[&chi, &one_plus], u);
            let b = conv_eval(&h, &[&chi, &one_minus], u);
            for v in &words {
                let lhs = dual_coproduct_eval(&h, &chi, &word_elem(&h, u), &word_elem(&h, v));
                let rhs = &half * &(&(&a * &chi.eval(&h, v)) + &(&b * &conv_eval(&h, &[&chi, &chi2], v)));
                if lhs != rhs && bad.is_none() {
                    bad = Some(format!("{} ⊗ {}", h.show(u), h.show(v)));
                }
            }
        }
        rep.check(format!("Δ of the character functional at λ = {lam}"), bad.map_or_else(Check::pass, Check::fail));
    }

    // dim ĝ
    for (lam, d) in [(q(2, &f), 4), (q(3, &f), 4), (q(1, &f), 2), (q(-1, &f), 2)] {
        let hs = hat_space(&h, &pt(lam.clone()), n)?;
        rep.claim(format!("dim ĝ at λ = {lam}"), hs.len() == d, format!("{} (expected {d})", hs.len()));
    }

    // span(ĝĥ) = span(ĝh ∪ g⁻¹h)
    for (g, k) in [(q(2, &f), q(3, &f)), (q(2, &f), q(5, &f)), (q(3, &f), rat(1, 2, &f))] {
        let gk = &g * &k;
        let gik = &g.pow(-1) * &k;
        let target = resolve(&h, &IdealKind::Intersection(vec![IdealKind::CoreIdeal(pt(gk.clone())), IdealKind::CoreIdeal(pt(gik.clone()))]))?;
        let hg = hat_space(&h, &pt(g.clone()), n)?;
        let hk = hat_space(&h, &pt(k.clone()), n)?;
        let mut prods = Vec::new();
        for a in &hg {
            for b in &hk {
                if let Some(c) = rep.attempt(&format!("product ĝĥ at ({g}, {k}) lands in the target"), convolve(&h, a, b, &target, n)) {
                    prods.push(c.values);
                }
            }
        }
        let mut union = Vec::new();
        for p in [&gk, &gik] {
            for b in hat_space(&h, &pt(p.clone()), n)? {
                union.push(materialize(&h, &target, &|w| b.eval(&h, w), n)?.values);
            }
        }
        let (rp, ru, rb) = span_ranks(&prods, &union);
        rep.claim(format!("span(ĝĥ) = span(ĝh ∪ g⁻¹h) at ({g}, {k})"), rp == ru && ru == rb, format!("ranks {rp}, {ru}, joint {rb}"));
    }

    // H̄* ≅ k ⊕ k
    let hb = hbar(&h)?;
    let dual = hb.dual();
    let chars = crate::hopf::characters(&dual.alg, &[]);
    rep.claim("H̄* is split semisimple commutative of dimension 2", dual.dim() == 2 && dual.alg.is_commutative() && chars.characters.len() == 2, format!("{} characters", chars.characters.len()));
    let model = cyclic_model(2, f)?;
    let iso = iso_search(&model.0, &dual, &model.1, &[])?;
    rep.claim("H̄* ≅ kC₂ as Hopf algebras", iso.found, iso.summary);

    dihedral_invariants(&h, &mut rep, n, seed)?;
    Ok(rep)
}

fn dihedral_invariants(h: &Dihedral, rep: &mut SuiteReport, n: usize, seed: u64) -> Result<(), SuiteError> {
    let f = h.field;
    let words = h.words_up_to(n);
    let pt = |x: Scalar| vec![x];
    let lam = q(2, &f);
    let chi = character_functional(h, &pt(lam.clone()), n)?;
    let tangent = tangent_functional(h, 0, n)?;
    let hbar_basis = [pi_upper(h, &[f.one(), f.zero()], n)?, pi_upper(h, &[f.zero(), f.one()], n)?];

    let iota_ok = (-(n as i64)..=n as i64).all(|i| iota_upper_eval(h, &chi, &[i]) == lam.pow(i) && iota_upper_eval(h, &tangent, &[i]) == q(i, &f));
    rep.claim("ι°∘Π° = id on characters and tangents", iota_ok, "A-words b^i with |i| ≤ N");

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool: Vec<Scalar> = vec![q(2, &f), q(3, &f), q(-1, &f), rat(1, 2, &f), q(5, &f), rat(-1, 3, &f)];
    let mut ok = true;
    for _ in 0..4 {
        pool.shuffle(&mut rng);
        let (a, b) = (pool[0].clone(), pool[1].clone());
        let ca = character_functional(h, &pt(a.clone()), n)?;
        let cb = character_functional(h, &pt(b.clone()), n)?;
        let target = resolve(h, &IdealKind::CoreIdeal(pt(&a * &b)))?;
        let prod = convolve(h, &ca, &cb, &target, n)?;
        let expect = character_functional(h, &pt(&a * &b), n)?;
        ok &= words.iter().all(|w| prod.eval(h, w) == expect.eval(h, w));
    }
    rep.claim("Π°(χ_λ) * Π°(χ_μ) = Π°(χ_λμ)", ok, "4 seeded pairs");

    let ba = vec![1, 1];
    let commute = |a: &CofiniteFunctional, b: &CofiniteFunctional| words.iter().all(|w| conv_eval(h, &[a, b], w) == conv_eval(h, &[b, a], w));
    let all_commute = hbar_basis.iter().all(|b| commute(b, &chi) && commute(b, &tangent));
    rep.claim(
        "π°(H̄*) commutes with Π°(χ_λ) and Π°(f)",
        all_commute,
        format!("α * Π°(χ_λ) and Π°(χ_λ) * α at ba: {} and {}", conv_eval(h, &[&hbar_basis[1], &chi], &ba), conv_eval(h, &[&chi, &hbar_basis[1]], &ba)),
    );

    let gs = [q(2, &f), q(3, &f), q(1, &f)];
    let mut all = Vec::new();
    let mut total = 0;
    for g in &gs {
        let hs = hat_space(h, &pt(g.clone()), n)?;
        total += hs.len();
        all.extend(hs.iter().map(|b| table(&words, |w| b.eval(h, w))));
    }
    let r = grid_rank(&all);
    rep.claim("ĝ for inequivalent g are independent", r == total, format!("rank {r} of {total}"));

    let left: Vec<Vec<Scalar>> = hbar_basis.iter().map(|b| table(&words, |w| conv_eval(h, &[b, &chi], w))).collect();
    let right: Vec<Vec<Scalar>> = hbar_basis.iter().map(|b| table(&words, |w| conv_eval(h, &[&chi, b], w))).collect();
    let (rl, rr, rb) = span_ranks(&left, &right);
    rep.claim("H̄*·Π°(χ_g) = Π°(χ_g)·H̄*, of dimension dim H̄", rl == 2 && rr == 2 && rb == 2, format!("ranks {rl}, {rr}, joint {rb}"));

    let a_words: Vec<i64> = (-(n as i64)..=n as i64).collect();
    let restr: Vec<Vec<Scalar>> = hat_space(h, &pt(lam.clone()), n)?.iter().map(|b| a_words.iter().map(|&i| iota_upper_eval(h, b, &[i])).collect()).collect();
    let chis: Vec<Vec<Scalar>> = [lam.clone(), lam.pow(-1)].iter().map(|c| a_words.iter().map(|&i| c.pow(i)).collect()).collect();
    let (r1, r2, r3) = span_ranks(&restr, &chis);
    rep.claim("ι°(ĝ) has basis {χ_h : h ∼ g}", r1 == 2 && r2 == 2 && r3 == 2, format!("ranks {r1}, {r2}, joint {r3}"));

    let chi_inv = character_functional(h, &pt(lam.pow(-1)), n)?;
    let aug = resolve(h, &IdealKind::AugPower(1))?;
    let mut ok = true;
    for b in &hbar_basis {
        ok &= materialize(h, &aug, &|w| conv_eval(h, &[&chi, b, &chi_inv], w), n).is_ok();
    }
    rep.claim("Π°(χ_g) π°(φ) Π°(χ_g⁻¹) ∈ π°(H̄*)", ok, "materialized on H̄ with audit");

    let zero = hbar_basis.iter().all(|b| words.iter().all(|w| conv_eval(h, &[&tangent, b], w) == conv_eval(h, &[b, &tangent], w)));
    rep.claim("Π°(f) acts trivially on H̄* by commutators", zero, "commutator vanishes on words ≤ N");

    let s_chi = antipode_dual(h, &chi, n)?;
    let on_a = (-(n as i64)..=n as i64).all(|i| iota_upper_eval(h, &s_chi, &[i]) == lam.pow(-i));
    let off_a = words.iter().filter(|w| s_chi.eval(h, w) != chi_inv.eval(h, w)).count();
    rep.claim("ι°S°(Π°(χ_λ)) = χ_λ⁻¹", on_a, format!("S°(Π°(χ_λ)) and Π°(χ_λ⁻¹) differ on {off_a} words outside A"));
    let s_hat: Vec<Vec<Scalar>> = hat_space(h, &pt(q(3, &f)), n)?.iter().map(|b| Ok(table(&words, |w| antipode_dual(h, b, n).map(|s| s.eval(h, w)).unwrap_or_else(|_| f.zero())))).collect::<Result<_, SuiteError>>()?;
    let inv_hat: Vec<Vec<Scalar>> = hat_space(h, &pt(rat(1, 3, &f)), n)?.iter().map(|b| table(&words, |w| b.eval(h, w))).collect();
    let (a, b, c) = span_ranks(&s_hat, &inv_hat);
    rep.claim("S°(ĝ) = ĝ⁻¹", a == b && b == c, format!("ranks {a}, {b}, joint {c}"));
    Ok(())
}

/// Checks `Π°(χ_p) * Π°(χ_q) = Π°(χ_{pq})` on ten seeded pairs of sample points.
pub fn character_homomorphism<H: BasedHopf + ?Sized>(h: &H, rep: &mut SuiteReport, n: usize, seed: u64) -> Result<(), SuiteError> {
    let pts = sample_points(h);
    let mut pool = pts.clone();
    pool.push(counit_point(h));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let words = h.words_up_to(n);
    let mut failures = Vec::new();
    for k in 0..10 {
        let a = pool.choose(&mut rng).expect("points").clone();
        let b = pool.choose(&mut rng).expect("points").clone();
        let ab = point_mul(h, &a, &b)?;
        let ca = character_functional(h, &a, n)?;
        let cb = character_functional(h, &b, n)?;
        let cab = character_functional(h, &ab, n)?;
        if let Some(w) = words.iter().find(|w| conv_eval(h, &[&ca, &cb], w) != cab.eval(h, w)) {
            failures.push(format!("pair {k} at {}", h.show(w)));
        }
    }
    rep.check("character homomorphism on 10 pairs", failures.first().cloned().map_or_else(Check::pass, Check::fail));
    Ok(())
}

/// `H̄*` (or `H̄`) against its predicted tensor decomposition, plus the character homomorphism.
pub fn family_dual<H: BasedHopf + ?Sized>(suite: &str, fam: &str, h: &H, n: usize, seed: u64) -> Result<SuiteReport, SuiteError> {
    let mut rep = SuiteReport::new(suite, h.name(), n, seed);
    let hb = hbar(h)?;
    rep.check("H̄ passes the Hopf axioms", Check::from_bool(hb.verify().all_pass(), || "H̄ axiom failure".into()));
    let args: Vec<&str> = fam.split_once(':').map(|(_, a)| a.split(',').collect()).unwrap_or_default();
    let int = |i: usize| -> Result<usize, SuiteError> { args.get(i).and_then(|s| s.trim().parse().ok()).ok_or_else(|| SuiteError::NotApplicable(suite.into(), fam.into())) };
    let parse_q = |i: usize| -> Result<Scalar, SuiteError> { Ok(crate::families::parse_scalar_token(args.get(i).copied().unwrap_or(""), &h.field())?) };
    let words = h.module_basis();
    let position = |w: &Word| words.iter().position(|x| x == w).expect("module basis word");
    let (d, factors, shape) = match suite {
        "liu-dual" => {
            let (nn, qq) = (int(0)?, parse_q(2)?);
            let model = taft_model(nn, 1, &qq)?;
            let iso = iso_search(&model.0, &hb, &model.1, &[])?;
            rep.claim(format!("H̄ ≅ T_f({nn}, 1, q)"), iso.found, iso.summary);
            character_homomorphism(h, &mut rep, n, seed)?;
            return Ok(rep);
        }
        "taft-dual" => {
            let (nn, t, qq) = (int(0)?, int(1)?, parse_q(2)?);
            let d = nn.gcd(&t);
            let np = nn / d;
            let shape = PointedShape::new(vec![nn], vec![(np, vec![t % nn])], |g, e| position(&vec![g[0] as i64, e[0] as i64]));
            (d, vec![(np, t / d, qq.pow(d as i64))], shape)
        }
        "qplane-dual" => {
            let (l, nn, qq) = (int(0)?, int(1)?, parse_q(2)?);
            let d = l.gcd(&nn);
            let lp = l / d;
            let shape = PointedShape::new(vec![l], vec![(lp, vec![nn % l])], |g, e| position(&vec![e[0] as i64, g[0] as i64]));
            (d, vec![(lp, nn / d, qq.pow(-(d as i64)))], shape)
        }
        "bfam-dual" => {
            let v: Vec<usize> = (0..args.len()).map(int).collect::<Result<_, _>>()?;
            let (nn, p0, ps) = (v[0], v[1], &v[2..]);
            let plane = SkewPlane::bfam(nn as u64, &v[1..].iter().map(|&x| x as u64).collect::<Vec<_>>(), None)?;
            let prod: usize = ps.iter().product();
            let l = plane.ell as usize;
            let skews = ps.iter().zip(&plane.y_gens).map(|(&p, (_, c))| (p, vec![(*c as usize) % l])).collect();
            let ms: Vec<i64> = plane.y_gens.iter().map(|(m, _)| *m).collect();
            let shape = PointedShape::new(vec![l], skews, |g, e| position(&vec![e.iter().zip(&ms).map(|(a, m)| *a as i64 * m).sum(), g[0] as i64]));
            let factors = ps
                .iter()
                .enumerate()
                .map(|(i, &p)| (p, p0 * ps[i + 1..].iter().product::<usize>(), plane.q.pow(-(((nn / p0) * (prod / p)) as i64))))
                .collect();
            (nn / p0, factors, shape)
        }
        _ => return Err(SuiteError::UnknownSuite(suite.into())),
    };
    let mut model = cyclic_model(d, h.field())?;
    let mut names = Vec::new();
    for (p, t, xi) in &factors {
        let tf = taft_model(*p, *t, xi)?;
        names.push(format!("T_f({p}, {t}, {xi})"));
        model = if model.0.dim() == 1 { tf } else { tensor_model(&model, &tf)? };
    }
    let label = format!("kC_{d} ⊗ {}", names.join(" ⊗ "));
    let coalg = pointed_coalgebra_iso(&hb, &shape, &model.0, &model_shape(d, &factors));
    let coalg_pass = coalg.pass;
    rep.check(format!("H̄ ≅ {label} as coalgebras"), coalg);
    let selfdual = iso_search(&model.0, &model.0.dual(), &model.1, &[])?;
    rep.claim(format!("{label} is self-dual"), selfdual.found, selfdual.summary);
    let hopf = iso_search(&model.0, &hb.dual(), &model.1, &[])?;
    let note = if hopf.found { "also isomorphic as Hopf algebras" } else { "not isomorphic as Hopf algebras for this choice of generators" };
    rep.claim(format!("H̄* ≅ {label} as algebras"), coalg_pass && selfdual.found, note);
    character_homomorphism(h, &mut rep, n, seed)?;
    Ok(rep)
}

/// Shape of `kC_d ⊗ T_f(p₁,t₁,·) ⊗ ⋯` with basis `c^r ⊗ g₁^{s₁}x₁^{e₁} ⊗ ⋯`.
fn model_shape(d: usize, factors: &[(usize, usize, Scalar)]) -> PointedShape {
    let nil: Vec<usize> = factors.iter().map(|(p, t, _)| p / p.gcd(&(t % p))).collect();
    let mut orders = vec![d];
    orders.extend(factors.iter().map(|(p, _, _)| *p));
    let skews = factors
        .iter()
        .enumerate()
        .map(|(k, (p, t, _))| {
            let mut shift = vec![0; factors.len() + 1];
            shift[k + 1] = t % p;
            (nil[k], shift)
        })
        .collect();
    PointedShape::new(orders, skews, |g, e| {
        let mut idx = g[0];
        for (k, (p, _, _)) in factors.iter().enumerate() {
            idx = idx * p * nil[k] + g[k + 1] * nil[k] + e[k];
        }
        idx
    })
}
