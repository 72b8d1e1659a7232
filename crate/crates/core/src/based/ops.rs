use super::*;
use crate::construct::ModAction;
use crate::orbits::{Action, CommAlgFd};

type Elem3 = BTreeMap<(Word, Word, Word), Scalar>;

fn elem_degree<H: BasedHopf + ?Sized>(h: &H, x: &Elem) -> usize {
    x.keys().map(|w| h.degree(w)).max().unwrap_or(0)
}

fn sorted_words<H: BasedHopf + ?Sized>(h: &H, n: usize) -> Vec<Word> {
    let mut ws = h.words_up_to(n);
    ws.sort_by_key(|w| h.degree(w));
    ws
}

/// `A`-words with exponent vectors, degree ≤ `n`.
pub fn a_words<H: BasedHopf + ?Sized>(h: &H, n: usize) -> Vec<Word> {
    sorted_words(h, n).into_iter().filter(|w| h.a_mono(w).is_some()).collect()
}

/// `a_j − ε(a_j)` and, for invertible generators, `a_j⁻¹ − ε(a_j)⁻¹`.
pub fn augmentation_generators<H: BasedHopf + ?Sized>(h: &H) -> Vec<Elem> {
    let f = h.field();
    let m = h.a_gens().len();
    let mut out = Vec::new();
    for (j, g) in h.a_gens().iter().enumerate() {
        let mut e = vec![0i64; m];
        e[j] = 1;
        let mut x = single(h.a_word(&e), f.one());
        add_to(&mut x, h.one(), -h.counit(&g.word));
        out.push(x);
        if g.laurent {
            e[j] = -1;
            let w = h.a_word(&e);
            let mut y = single(w.clone(), f.one());
            add_to(&mut y, h.one(), -h.counit(&w));
            out.push(y);
        }
    }
    out
}

/// Functional `w ↦ rule(Π(w))` where `rule` acts on exponent vectors of `A`-words.
pub fn pi_dual_a<H: BasedHopf + ?Sized>(h: &H, kind: &IdealKind, rule: &(dyn Fn(&[i64]) -> Scalar + Sync), n: usize) -> Result<CofiniteFunctional, BasedError> {
    let spec = resolve(h, kind)?;
    let f = h.field();
    let full = |w: &Word| {
        h.project_to_a(w).iter().fold(f.zero(), |acc, (v, c)| match h.a_mono(v) {
            Some(e) => &acc + &(c * &rule(&e)),
            None => panic!("projection left A at {}", h.show(v)),
        })
    };
    materialize(h, &spec, &full, n)
}

/// `Π°(χ_g)`, supported on `H/H𝔪_g^{(H̄)}`.
pub fn character_functional<H: BasedHopf + ?Sized>(h: &H, point: &[Scalar], n: usize) -> Result<CofiniteFunctional, BasedError> {
    check_point(h, point)?;
    let p = point.to_vec();
    pi_dual_a(h, &IdealKind::CoreIdeal(p.clone()), &move |e| eval_mono(&p, e), n)
}

/// `π°(β)` for a covector `β` on `H̄` in module-basis coordinates.
pub fn pi_upper<H: BasedHopf + ?Sized>(h: &H, beta: &[Scalar], n: usize) -> Result<CofiniteFunctional, BasedError> {
    let spec = resolve(h, &IdealKind::AugPower(1))?;
    if beta.len() != spec.dim() {
        return Err(BasedError::InvalidPoint(format!("covector of length {} on H̄ of dimension {}", beta.len(), spec.dim())));
    }
    Ok(CofiniteFunctional { spec, values: beta.to_vec(), verified_degree: n })
}

/// `Π°` of the derivation of `A` at the counit in the direction of generator `j`.
pub fn tangent_functional<H: BasedHopf + ?Sized>(h: &H, j: usize, n: usize) -> Result<CofiniteFunctional, BasedError> {
    let m = h.a_gens().len();
    if j >= m {
        return Err(BasedError::InvalidPoint(format!("no A-generator with index {j}")));
    }
    let c = counit_point(h);
    let f = h.field();
    let mut alpha = vec![0usize; m];
    alpha[j] = 1;
    pi_dual_a(h, &IdealKind::AugPower(2), &move |e| jet_coefficient(&f, &c, e, &alpha), n)
}

/// `ι°(f)` evaluated at the `A`-monomial with exponent vector `e`.
pub fn iota_upper_eval<H: BasedHopf + ?Sized>(h: &H, f: &CofiniteFunctional, e: &[i64]) -> Scalar {
    f.eval(h, &h.a_word(e))
}

/// `Δ^{(k−1)}(w)` as a list of `k`-fold tensors.
pub fn iterated_coproduct<H: BasedHopf + ?Sized>(h: &H, w: &Word, k: usize) -> Vec<(Vec<Word>, Scalar)> {
    let mut cur: Vec<(Vec<Word>, Scalar)> = vec![(vec![w.clone()], h.field().one())];
    for _ in 1..k {
        let mut next: BTreeMap<Vec<Word>, Scalar> = BTreeMap::new();
        for (t, c) in &cur {
            let (last, init) = t.split_last().expect("nonempty tensor");
            for ((a, b), d) in h.coproduct(last) {
                let mut key = init.to_vec();
                key.push(a);
                key.push(b);
                let e = next.entry(key).or_insert_with(|| h.field().zero());
                *e = &*e + &(c * &d);
            }
        }
        cur = next.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    }
    cur
}

/// `(f₁ * ⋯ * f_k)(w)`.
pub fn conv_eval<H: BasedHopf + ?Sized>(h: &H, fs: &[&CofiniteFunctional], w: &Word) -> Scalar {
    let f = h.field();
    if fs.is_empty() {
        return h.counit(w);
    }
    iterated_coproduct(h, w, fs.len()).iter().fold(f.zero(), |acc, (t, c)| {
        let mut v = c.clone();
        for (fi, wi) in fs.iter().zip(t) {
            if v.is_zero() {
                break;
            }
            v = &v * &fi.eval(h, wi);
        }
        &acc + &v
    })
}

/// `f * f′` on an explicitly named target quotient.
pub fn convolve<H: BasedHopf + ?Sized>(h: &H, a: &CofiniteFunctional, b: &CofiniteFunctional, target: &IdealSpec, n: usize) -> Result<CofiniteFunctional, BasedError> {
    materialize(h, target, &|w| conv_eval(h, &[a, b], w), n)
}

/// `Δ°(f)(x ⊗ y) = f(xy)`.
pub fn dual_coproduct_eval<H: BasedHopf + ?Sized>(h: &H, f: &CofiniteFunctional, x: &Elem, y: &Elem) -> Scalar {
    f.eval_elem(h, &mul(h, x, y))
}

/// `S°(f) = f ∘ S` on the transported quotient.
pub fn antipode_dual<H: BasedHopf + ?Sized>(h: &H, f: &CofiniteFunctional, n: usize) -> Result<CofiniteFunctional, BasedError> {
    let target = f.spec.inverted(h)?;
    materialize(h, &target, &|w| f.eval_elem(h, &h.antipode(w)), n)
}

fn a_generator_words<H: BasedHopf + ?Sized>(h: &H) -> Vec<Word> {
    let m = h.a_gens().len();
    let mut out = Vec::new();
    for (j, g) in h.a_gens().iter().enumerate() {
        let mut e = vec![0i64; m];
        e[j] = 1;
        out.push(h.a_word(&e));
        if g.laurent {
            e[j] = -1;
            out.push(h.a_word(&e));
        }
    }
    out
}

/// `f(ah) = ε(a)f(h) = f(ha)` for `A`-generators `a` and words `h` of degree ≤ `n`.
pub fn in_hbar_star<H: BasedHopf + ?Sized>(h: &H, f: &CofiniteFunctional, n: usize) -> Check {
    let gens = a_generator_words(h);
    let words = sorted_words(h, n);
    let bad = words.par_iter().find_map_first(|w| {
        let fw = f.eval(h, w);
        let we = word_elem(h, w);
        gens.iter().find_map(|a| {
            let ae = word_elem(h, a);
            let target = &h.counit(a) * &fw;
            if f.eval_elem(h, &mul(h, &ae, &we)) != target {
                Some(format!("f({}·{}) ≠ ε·f", h.show(a), h.show(w)))
            } else if f.eval_elem(h, &mul(h, &we, &ae)) != target {
                Some(format!("f({}·{}) ≠ ε·f", h.show(w), h.show(a)))
            } else {
                None
            }
        })
    });
    bad.map_or_else(Check::pass, Check::fail)
}

fn aug_products<H: BasedHopf + ?Sized>(h: &H, k: usize) -> Vec<Elem> {
    let gens = augmentation_generators(h);
    let mut out: Vec<(usize, Elem)> = vec![(0, single(h.one(), h.field().one()))];
    for _ in 0..k {
        let mut next = Vec::new();
        for (start, p) in &out {
            for (i, g) in gens.iter().enumerate().skip(*start) {
                next.push((i, mul(h, p, g)));
            }
        }
        out = next;
    }
    out.into_iter().map(|(_, e)| e).collect()
}

/// Vanishing on `w·m` and `m·w` for `m` a product of `k` augmentation generators, `deg w ≤ n`.
pub fn in_w<H: BasedHopf + ?Sized>(h: &H, f: &CofiniteFunctional, k: usize, n: usize) -> Check {
    let prods = aug_products(h, k);
    let words = sorted_words(h, n);
    let bad = words.par_iter().find_map_first(|w| {
        let we = word_elem(h, w);
        prods.iter().enumerate().find_map(|(i, m)| {
            let l = f.eval_elem(h, &mul(h, &we, m));
            let r = f.eval_elem(h, &mul(h, m, &we));
            (!l.is_zero() || !r.is_zero()).then(|| format!("product #{i} of {k} augmentation generators beside {}", h.show(w)))
        })
    });
    bad.map_or_else(Check::pass, Check::fail)
}

/// Dual basis of `H/H𝔪_g^{(H̄)}`, after auditing the quotient coordinates to degree `n`.
pub fn hat_space<H: BasedHopf + ?Sized>(h: &H, point: &[Scalar], n: usize) -> Result<Vec<CofiniteFunctional>, BasedError> {
    let spec = resolve(h, &IdealKind::CoreIdeal(point.to_vec()))?;
    let audit = audit_spec(h, &spec, n);
    if !audit.pass {
        return Err(BasedError::Audit(audit.witness.unwrap_or_default()));
    }
    let f = h.field();
    Ok((0..spec.dim())
        .map(|i| {
            let mut values = vec![f.zero(); spec.dim()];
            values[i] = f.one();
            CofiniteFunctional { spec: spec.clone(), values, verified_degree: n }
        })
        .collect())
}

/// Rank of a family of functionals, compared by their values on words of degree ≤ `n`.
pub fn functional_rank<H: BasedHopf + ?Sized>(h: &H, fs: &[&CofiniteFunctional], n: usize) -> usize {
    let words = h.words_up_to(n);
    let rows: Vec<Vec<Scalar>> = fs.iter().map(|f| words.iter().map(|w| f.eval(h, w)).collect()).collect();
    let mut ech = Echelon::new(h.field(), words.len());
    rows.iter().filter(|r| ech.insert(r).is_ok()).count()
}

/// `θ(w) = Σ φ(S(w₁)w₃) ψ(w₂)` must vanish on `A⁺`-generator-times-word products.
pub fn normality_shadow<H: BasedHopf + ?Sized>(h: &H, phi: &CofiniteFunctional, psi: &CofiniteFunctional, n: usize) -> Check {
    let theta = |x: &Elem| {
        let mut acc = h.field().zero();
        for (w, c) in x {
            for (t, d) in iterated_coproduct(h, w, 3) {
                let mid = psi.eval(h, &t[1]);
                if mid.is_zero() {
                    continue;
                }
                let outer = phi.eval_elem(h, &mul(h, &h.antipode(&t[0]), &word_elem(h, &t[2])));
                acc = &acc + &(&(c * &d) * &(&mid * &outer));
            }
        }
        acc
    };
    let gens = augmentation_generators(h);
    let words = sorted_words(h, n);
    let bad = words.par_iter().find_map_first(|w| {
        let we = word_elem(h, w);
        gens.iter().find_map(|m| {
            let l = theta(&mul(h, m, &we));
            let r = theta(&mul(h, &we, m));
            (!l.is_zero() || !r.is_zero()).then(|| format!("θ ≠ 0 beside {}", h.show(w)))
        })
    });
    bad.map_or_else(Check::pass, Check::fail)
}

/// One named axiom check.
#[derive(Clone, Debug, Serialize)]
pub struct NamedCheck {
    pub name: String,
    #[serde(flatten)]
    pub check: Check,
    /// Smallest degree at which the check failed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failed_at: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BasedReport {
    pub family: String,
    pub degree: usize,
    pub verified_degree: usize,
    pub checks: Vec<NamedCheck>,
}

impl BasedReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.check.pass)
    }

    fn from_checks(family: String, degree: usize, checks: Vec<NamedCheck>) -> BasedReport {
        let verified_degree = checks.iter().filter_map(|c| c.failed_at).min().map_or(degree, |d| d.saturating_sub(1));
        BasedReport { family, degree, verified_degree, checks }
    }
}

fn named(name: &str, found: Option<(usize, String)>) -> NamedCheck {
    match found {
        None => NamedCheck { name: name.into(), check: Check::pass(), failed_at: None },
        Some((d, w)) => NamedCheck { name: name.into(), check: Check::fail(w), failed_at: Some(d) },
    }
}

fn first_failure<T: Sync>(items: &[T], test: impl Fn(&T) -> Option<(usize, String)> + Sync + Send) -> Option<(usize, String)> {
    items.par_iter().filter_map(test).min_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)))
}

fn tensor_id_delta<H: BasedHopf + ?Sized>(h: &H, t: &Elem2, left: bool) -> Elem3 {
    let mut out = Elem3::new();
    for ((a, b), c) in t {
        let (split, keep) = if left { (a, b) } else { (b, a) };
        for ((x, y), d) in h.coproduct(split) {
            let key = if left { (x, y, keep.clone()) } else { (keep.clone(), x, y) };
            let e = out.entry(key).or_insert_with(|| h.field().zero());
            *e = &*e + &(c * &d);
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn with_one<H: BasedHopf + ?Sized>(h: &H, x: Elem, c: Scalar) -> Elem {
    let mut x = x;
    add_to(&mut x, h.one(), -&c);
    x
}

/// Hopf axioms on words, pairs and triples of total degree ≤ `n`.
pub fn verify_based<H: BasedHopf + ?Sized>(h: &H, n: usize) -> BasedReport {
    let f = h.field();
    let words = sorted_words(h, n);
    let deg = |w: &Word| h.degree(w);
    let one = word_elem(h, &h.one());
    let pairs: Vec<(Word, Word)> = words.iter().flat_map(|u| words.iter().filter(|v| deg(u) + deg(v) <= n).map(move |v| (u.clone(), v.clone()))).collect();
    let triples: Vec<(Word, Word, Word)> = pairs
        .iter()
        .flat_map(|(u, v)| words.iter().filter(move |w| deg(u) + deg(v) + deg(w) <= n).map(move |w| (u.clone(), v.clone(), w.clone())))
        .collect();
    let mut checks = Vec::new();
    checks.push(named(
        "unit",
        first_failure(&words, |w| {
            let we = word_elem(h, w);
            (mul(h, &one, &we) != we || mul(h, &we, &one) != we).then(|| (deg(w), format!("1·{0} or {0}·1", h.show(w))))
        }),
    ));
    checks.push(named(
        "associativity",
        first_failure(&triples, |(u, v, w)| {
            let (ue, ve, we) = (word_elem(h, u), word_elem(h, v), word_elem(h, w));
            (mul(h, &mul(h, &ue, &ve), &we) != mul(h, &ue, &mul(h, &ve, &we))).then(|| (deg(u) + deg(v) + deg(w), format!("({})({})({})", h.show(u), h.show(v), h.show(w))))
        }),
    ));
    checks.push(named(
        "coassociativity",
        first_failure(&words, |w| {
            let d = h.coproduct(w);
            (tensor_id_delta(h, &d, true) != tensor_id_delta(h, &d, false)).then(|| (deg(w), h.show(w)))
        }),
    ));
    checks.push(named(
        "counit",
        first_failure(&words, |w| {
            let mut l = Elem::new();
            let mut r = Elem::new();
            for ((a, b), c) in h.coproduct(w) {
                add_to(&mut l, b.clone(), &c * &h.counit(&a));
                add_to(&mut r, a, &c * &h.counit(&b));
            }
            let we = word_elem(h, w);
            (l != we || r != we).then(|| (deg(w), h.show(w)))
        }),
    ));
    checks.push(named(
        "comultiplication multiplicative",
        first_failure(&pairs, |(u, v)| {
            let lhs = elem_coproduct(h, &h.product(u, v));
            let rhs = mul2(h, &h.coproduct(u), &h.coproduct(v));
            (lhs != rhs).then(|| (deg(u) + deg(v), format!("Δ({}·{})", h.show(u), h.show(v))))
        }),
    ));
    checks.push(named(
        "counit multiplicative",
        first_failure(&pairs, |(u, v)| (elem_counit(h, &h.product(u, v)) != &h.counit(u) * &h.counit(v)).then(|| (deg(u) + deg(v), format!("ε({}·{})", h.show(u), h.show(v))))),
    ));
    checks.push(named(
        "antipode",
        first_failure(&words, |w| {
            let mut l = Elem::new();
            let mut r = Elem::new();
            for ((a, b), c) in h.coproduct(w) {
                for (x, d) in mul(h, &h.antipode(&a), &word_elem(h, &b)) {
                    add_to(&mut l, x, &c * &d);
                }
                for (x, d) in mul(h, &word_elem(h, &a), &h.antipode(&b)) {
                    add_to(&mut r, x, &c * &d);
                }
            }
            let target = single(h.one(), h.counit(w));
            (l != target || r != target).then(|| (deg(w), h.show(w)))
        }),
    ));
    let in_a = |x: &Elem| x.keys().all(|w| h.a_mono(w).is_some());
    let a_list: Vec<Word> = words.iter().filter(|w| h.a_mono(w).is_some()).cloned().collect();
    let a_pairs: Vec<(Word, Word)> = pairs.iter().filter(|(u, v)| h.a_mono(u).is_some() && h.a_mono(v).is_some()).cloned().collect();
    let mut closure = first_failure(&a_pairs, |(u, v)| {
        let p = h.product(u, v);
        (!in_a(&p) || p != h.product(v, u)).then(|| (deg(u) + deg(v), format!("{}·{}", h.show(u), h.show(v))))
    });
    if closure.is_none() {
        closure = first_failure(&a_list, |w| {
            let cop_ok = h.coproduct(w).keys().all(|(a, b)| h.a_mono(a).is_some() && h.a_mono(b).is_some());
            (!cop_ok || !in_a(&h.antipode(w))).then(|| (deg(w), h.show(w)))
        });
    }
    checks.push(named("A commutative Hopf subalgebra", closure));
    let _ = f;
    BasedReport::from_checks(h.name(), n, checks)
}

/// `(Π⊗Π)Δ = Δ_A Π`, `εΠ = ε`, `Π|_A = id`, and `X` a coideal, on degree ≤ `n`.
pub fn cosplit_check<H: BasedHopf + ?Sized>(h: &H, n: usize) -> BasedReport {
    let words = sorted_words(h, n);
    let deg = |w: &Word| h.degree(w);
    let proj2 = |t: &Elem2| {
        let mut out = Elem2::new();
        for ((a, b), c) in t {
            let pa = h.project_to_a(a);
            let pb = h.project_to_a(b);
            for (x, d) in &pa {
                for (y, e) in &pb {
                    add_to2(&mut out, (x.clone(), y.clone()), &(c * d) * e);
                }
            }
        }
        out
    };
    let mut checks = Vec::new();
    checks.push(named(
        "Π restricts to the identity on A",
        first_failure(&words, |w| (h.a_mono(w).is_some() && h.project_to_a(w) != word_elem(h, w)).then(|| (deg(w), h.show(w)))),
    ));
    checks.push(named(
        "Π is a coalgebra map",
        first_failure(&words, |w| {
            let pw = h.project_to_a(w);
            let lhs = proj2(&h.coproduct(w));
            let rhs = elem_coproduct(h, &pw);
            (lhs != rhs || elem_counit(h, &pw) != h.counit(w)).then(|| (deg(w), h.show(w)))
        }),
    ));
    let side = h.x_side();
    let a_list = a_words(h, n);
    let xs: Vec<Elem> = h
        .x_generators()
        .iter()
        .flat_map(|beta| {
            a_list.iter().filter_map(move |a| {
                let ae = word_elem(h, a);
                let x = match side {
                    Side::Left => mul(h, &ae, beta),
                    Side::Right => mul(h, beta, &ae),
                };
                (elem_degree(h, &x) <= n).then_some(x)
            })
        })
        .collect();
    checks.push(named(
        "X is a coideal in ker Π",
        first_failure(&xs, |x| {
            let ok = elem_project(h, x).is_empty() && proj2(&elem_coproduct(h, x)).is_empty() && elem_counit(h, x).is_zero();
            (!ok).then(|| (elem_degree(h, x), x.keys().map(|w| h.show(w)).collect::<Vec<_>>().join(" + ")))
        }),
    ));
    BasedReport::from_checks(h.name(), n, checks)
}

/// `dim span(words ≤ D) / span{w·m ⊆ degree ≤ D}` for generators `m` of `J`.
pub fn quotient_dim_oracle<H: BasedHopf + ?Sized>(h: &H, spec: &IdealSpec, d: usize) -> usize {
    let words = h.words_up_to(d);
    let index: BTreeMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut gens = spec.generators(h);
    if spec.parts.len() == 1 && spec.parts[0].1 == 1 {
        let pt = &spec.parts[0].0;
        let m = h.a_gens().len();
        for (j, g) in h.a_gens().iter().enumerate() {
            if g.laurent {
                let mut e = vec![0i64; m];
                e[j] = -1;
                gens.push(with_one(h, single(h.a_word(&e), h.field().one()), pt[j].pow(-1)));
            }
        }
    }
    let rows: Vec<Vec<Scalar>> = words
        .par_iter()
        .flat_map_iter(|w| {
            let we = word_elem(h, w);
            gens.iter()
                .filter_map(|m| {
                    let p = mul(h, &we, m);
                    let mut row = vec![h.field().zero(); words.len()];
                    for (v, c) in p {
                        row[*index.get(&v)?] = c;
                    }
                    Some(row)
                })
                .collect::<Vec<_>>()
        })
        .collect();
    let mut ech = Echelon::new(h.field(), words.len());
    for r in &rows {
        let _ = ech.insert(r);
    }
    words.len() - ech.rank()
}

/// `A/(a_j^M − 1)` with the adjoint action of `H̄`.
pub struct FiniteShadow {
    pub action: Action,
    pub modulus: usize,
}

impl FiniteShadow {
    /// Index of the character of the finite algebra matching `point`.
    pub fn point_index(&self, point: &[Scalar]) -> Option<usize> {
        let m = self.modulus;
        let r = point.len();
        self.action.space.points.iter().position(|chi| {
            (0..r).all(|j| {
                let idx = m.pow((r - 1 - j) as u32);
                chi.values[idx] == point[j]
            })
        })
    }

    pub fn point_of(&self, k: usize, gens: usize) -> Point {
        let m = self.modulus;
        (0..gens).map(|j| self.action.space.points[k].values[m.pow((gens - 1 - j) as u32)].clone()).collect()
    }
}

fn exps_of(mut k: usize, m: usize, r: usize) -> Vec<i64> {
    let mut e = vec![0i64; r];
    for j in (0..r).rev() {
        e[j] = (k % m) as i64;
        k /= m;
    }
    e
}

fn index_of(e: &[i64], m: usize) -> usize {
    e.iter().fold(0usize, |acc, &x| acc * m + x.rem_euclid(m as i64) as usize)
}

pub fn finite_shadow<H: BasedHopf + ?Sized>(h: &H, m: usize) -> Result<FiniteShadow, BasedError> {
    let f = h.field();
    let r = h.a_gens().len();
    let dim = m.pow(r as u32);
    let mult = (0..dim)
        .map(|i| {
            let ei = exps_of(i, m, r);
            (0..dim)
                .map(|j| {
                    let ej = exps_of(j, m, r);
                    let s: Vec<i64> = ei.iter().zip(&ej).map(|(a, b)| a + b).collect();
                    vec![(index_of(&s, m), f.one())]
                })
                .collect()
        })
        .collect();
    let mut unit = vec![f.zero(); dim];
    unit[0] = f.one();
    let labels = (0..dim).map(|i| h.show(&h.a_word(&exps_of(i, m, r)))).collect();
    let alg = FdAlgebra { field: f, labels, mult, unit };
    let space = CommAlgFd::new(alg, &[])?;
    let hb = hbar(h)?;
    let act = h
        .module_basis()
        .iter()
        .map(|b| {
            (0..dim)
                .map(|i| {
                    let a = word_elem(h, &h.a_word(&exps_of(i, m, r)));
                    let mut v = vec![f.zero(); dim];
                    for (w, c) in ad_left(h, b, &a) {
                        let e = h.a_mono(&w).ok_or_else(|| BasedError::NotInA(h.show(&w)))?;
                        let k = index_of(&e, m);
                        v[k] = &v[k] + &c;
                    }
                    Ok(v)
                })
                .collect::<Result<Vec<_>, BasedError>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let action = Action::new(hb, space, ModAction { act })?;
    Ok(FiniteShadow { action, modulus: m })
}
