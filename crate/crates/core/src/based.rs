//! Infinite-dimensional Hopf algebras with explicit normal forms, and finite-dual functionals on them.
//!
//! A family is a free right module `H = ⊕ b_k A` over a normal commutative Hopf subalgebra `A`
//! that is a (Laurent) polynomial ring in its generators. Ideals `H·J` with `J` of finite
//! codimension in `A` are described by finitely many points of `Spec A` with jet orders, and
//! `H/HJ ≅ ⊕_k b_k ⊗ A/J` carries Taylor-coefficient coordinates.

use crate::construct::Side;
use crate::exactla::{Echelon, Matrix};
use crate::hopf::{Check, FdAlgebra, FdHopf, HopfError};
use crate::scalars::{FieldDesc, Scalar};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

pub mod ops;

pub use ops::*;

pub type Word = Vec<i64>;
pub type Elem = BTreeMap<Word, Scalar>;
pub type Elem2 = BTreeMap<(Word, Word), Scalar>;
/// Values of a character of `A` on the generators of `A`.
pub type Point = Vec<Scalar>;

#[derive(Debug, Error)]
pub enum BasedError {
    #[error("audit failed at {0}")]
    Audit(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("not in A: {0}")]
    NotInA(String),
    #[error("coordinates of {1} not reached by words of degree ≤ {0}")]
    Coordinates(usize, String),
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Orbit(#[from] crate::orbits::OrbitError),
}

/// A generator of the commutative subalgebra `A`.
#[derive(Clone, Debug)]
pub struct AGen {
    pub name: String,
    pub word: Word,
    /// Invertible in `A`.
    pub laurent: bool,
}

pub fn add_to(e: &mut Elem, w: Word, c: Scalar) {
    if c.is_zero() {
        return;
    }
    if let Some(x) = e.get_mut(&w) {
        *x = &*x + &c;
        if x.is_zero() {
            e.remove(&w);
        }
    } else {
        e.insert(w, c);
    }
}

pub fn add_to2(e: &mut Elem2, k: (Word, Word), c: Scalar) {
    if c.is_zero() {
        return;
    }
    if let Some(x) = e.get_mut(&k) {
        *x = &*x + &c;
        if x.is_zero() {
            e.remove(&k);
        }
    } else {
        e.insert(k, c);
    }
}

pub fn single(w: Word, c: Scalar) -> Elem {
    let mut e = Elem::new();
    add_to(&mut e, w, c);
    e
}

/// Normal-form Hopf algebra given by words.
pub trait BasedHopf: Send + Sync {
    fn name(&self) -> String;
    fn field(&self) -> FieldDesc;
    /// All normal-form words of degree at most `n`.
    fn words_up_to(&self, n: usize) -> Vec<Word>;
    fn degree(&self, w: &Word) -> usize;
    fn show(&self, w: &Word) -> String;
    fn one(&self) -> Word;
    fn product(&self, a: &Word, b: &Word) -> Elem;
    /// Factorization of a word into generator letters, left to right.
    fn letters(&self, w: &Word) -> Vec<Word>;
    fn letter_coproduct(&self, l: &Word) -> Elem2;
    fn letter_counit(&self, l: &Word) -> Scalar;
    fn letter_antipode(&self, l: &Word) -> Elem;

    fn coproduct(&self, w: &Word) -> Elem2 {
        let mut acc = Elem2::new();
        acc.insert((self.one(), self.one()), self.field().one());
        for l in self.letters(w) {
            acc = mul2(self, &acc, &self.letter_coproduct(&l));
        }
        acc
    }

    fn counit(&self, w: &Word) -> Scalar {
        self.letters(w).iter().fold(self.field().one(), |acc, l| &acc * &self.letter_counit(l))
    }

    fn antipode(&self, w: &Word) -> Elem {
        let mut acc = single(self.one(), self.field().one());
        for l in self.letters(w) {
            acc = mul(self, &self.letter_antipode(&l), &acc);
        }
        acc
    }

    fn a_gens(&self) -> Vec<AGen>;
    /// Exponent vector over the `A`-generators when `w` is an `A`-word.
    fn a_mono(&self, w: &Word) -> Option<Vec<i64>>;
    fn a_word(&self, e: &[i64]) -> Word;
    /// Free right `A`-module basis, starting with `1`.
    fn module_basis(&self) -> Vec<Word>;
    /// `w = Σ c · b_k · a^e`.
    fn split_right(&self, w: &Word) -> Vec<(usize, Scalar, Vec<i64>)>;
    /// The projection `Π : H → A` with kernel `X`.
    fn project_to_a(&self, w: &Word) -> Elem;
    /// Generators `𝓑` of the complement `X` as an `A`-module.
    fn x_generators(&self) -> Vec<Elem>;
    /// Side on which `A` acts on the generators of `X`.
    fn x_side(&self) -> Side;
}

pub fn mul<H: BasedHopf + ?Sized>(h: &H, x: &Elem, y: &Elem) -> Elem {
    let mut out = Elem::new();
    for (a, c) in x {
        for (b, d) in y {
            let cd = c * d;
            for (w, e) in h.product(a, b) {
                add_to(&mut out, w, &cd * &e);
            }
        }
    }
    out
}

pub fn mul2<H: BasedHopf + ?Sized>(h: &H, x: &Elem2, y: &Elem2) -> Elem2 {
    let mut out = Elem2::new();
    for ((a1, a2), c) in x {
        for ((b1, b2), d) in y {
            let cd = c * d;
            let p1 = h.product(a1, b1);
            let p2 = h.product(a2, b2);
            for (w1, e1) in &p1 {
                let s = &cd * e1;
                for (w2, e2) in &p2 {
                    add_to2(&mut out, (w1.clone(), w2.clone()), &s * e2);
                }
            }
        }
    }
    out
}

pub fn elem_coproduct<H: BasedHopf + ?Sized>(h: &H, x: &Elem) -> Elem2 {
    let mut out = Elem2::new();
    for (w, c) in x {
        for (k, d) in h.coproduct(w) {
            add_to2(&mut out, k, c * &d);
        }
    }
    out
}

pub fn elem_antipode<H: BasedHopf + ?Sized>(h: &H, x: &Elem) -> Elem {
    let mut out = Elem::new();
    for (w, c) in x {
        for (v, d) in h.antipode(w) {
            add_to(&mut out, v, c * &d);
        }
    }
    out
}

pub fn elem_counit<H: BasedHopf + ?Sized>(h: &H, x: &Elem) -> Scalar {
    x.iter().fold(h.field().zero(), |acc, (w, c)| &acc + &(c * &h.counit(w)))
}

pub fn elem_project<H: BasedHopf + ?Sized>(h: &H, x: &Elem) -> Elem {
    let mut out = Elem::new();
    for (w, c) in x {
        for (v, d) in h.project_to_a(w) {
            add_to(&mut out, v, c * &d);
        }
    }
    out
}

pub fn word_elem<H: BasedHopf + ?Sized>(h: &H, w: &Word) -> Elem {
    single(w.clone(), h.field().one())
}

/// `Π_j c_j^{e_j}`.
pub fn eval_mono(point: &[Scalar], e: &[i64]) -> Scalar {
    let f = point.first().map(|c| c.field()).unwrap_or(FieldDesc::Rationals);
    point.iter().zip(e).fold(f.one(), |acc, (c, &k)| if k == 0 { acc } else { &acc * &c.pow(k) })
}

/// Character of `A` at `point`, applied to an element supported on `A`-words.
pub fn eval_on_a<H: BasedHopf + ?Sized>(h: &H, point: &[Scalar], x: &Elem) -> Result<Scalar, BasedError> {
    let mut acc = h.field().zero();
    for (w, c) in x {
        let e = h.a_mono(w).ok_or_else(|| BasedError::NotInA(h.show(w)))?;
        acc = &acc + &(c * &eval_mono(point, &e));
    }
    Ok(acc)
}

pub fn check_point<H: BasedHopf + ?Sized>(h: &H, point: &[Scalar]) -> Result<(), BasedError> {
    let gens = h.a_gens();
    if point.len() != gens.len() {
        return Err(BasedError::InvalidPoint(format!("expected {} coordinates", gens.len())));
    }
    for (g, c) in gens.iter().zip(point) {
        if c.field() != h.field() {
            return Err(BasedError::InvalidPoint(format!("{c} is not in the field {:?}", h.field())));
        }
        if g.laurent && c.is_zero() {
            return Err(BasedError::InvalidPoint(format!("{} is invertible and cannot vanish", g.name)));
        }
    }
    Ok(())
}

/// The counit as a point.
pub fn counit_point<H: BasedHopf + ?Sized>(h: &H) -> Point {
    h.a_gens().iter().map(|g| h.counit(&g.word)).collect()
}

/// Convolution product of points: `χ_{pq}(a) = Σ χ_p(a₁) χ_q(a₂)`.
pub fn point_mul<H: BasedHopf + ?Sized>(h: &H, p: &[Scalar], q: &[Scalar]) -> Result<Point, BasedError> {
    h.a_gens()
        .iter()
        .map(|g| {
            let mut acc = h.field().zero();
            for ((w1, w2), c) in h.coproduct(&g.word) {
                let e1 = h.a_mono(&w1).ok_or_else(|| BasedError::NotInA(h.show(&w1)))?;
                let e2 = h.a_mono(&w2).ok_or_else(|| BasedError::NotInA(h.show(&w2)))?;
                acc = &acc + &(&c * &(&eval_mono(p, &e1) * &eval_mono(q, &e2)));
            }
            Ok(acc)
        })
        .collect()
}

/// `χ_p ∘ S`.
pub fn point_inv<H: BasedHopf + ?Sized>(h: &H, p: &[Scalar]) -> Result<Point, BasedError> {
    h.a_gens().iter().map(|g| eval_on_a(h, p, &h.antipode(&g.word))).collect()
}

/// `ad_ℓ(b)(x) = Σ b₁ x S(b₂)`.
pub fn ad_left<H: BasedHopf + ?Sized>(h: &H, b: &Word, x: &Elem) -> Elem {
    let mut out = Elem::new();
    for ((b1, b2), c) in h.coproduct(b) {
        let left = mul(h, &word_elem(h, &b1), x);
        let t = mul(h, &left, &h.antipode(&b2));
        for (w, d) in t {
            add_to(&mut out, w, &c * &d);
        }
    }
    out
}

pub fn is_group_like_word<H: BasedHopf + ?Sized>(h: &H, w: &Word) -> bool {
    let d = h.coproduct(w);
    d.len() == 1 && d.get(&(w.clone(), w.clone())).is_some_and(|c| c.is_one())
}

/// Orbit of a point under the group-like module-basis words acting by `χ ∘ ad_ℓ(b)`.
pub fn point_orbit<H: BasedHopf + ?Sized>(h: &H, p: &[Scalar]) -> Result<Vec<Point>, BasedError> {
    check_point(h, p)?;
    let gl: Vec<Word> = h.module_basis().into_iter().filter(|b| is_group_like_word(h, b)).collect();
    let gens = h.a_gens();
    let mut orbit: Vec<Point> = vec![p.to_vec()];
    let mut i = 0;
    while i < orbit.len() {
        let cur = orbit[i].clone();
        for b in &gl {
            let next: Point = gens.iter().map(|g| eval_on_a(h, &cur, &ad_left(h, b, &word_elem(h, &g.word)))).collect::<Result<_, _>>()?;
            if !orbit.contains(&next) {
                orbit.push(next);
            }
        }
        i += 1;
        if orbit.len() > 4096 {
            return Err(BasedError::Unsupported("orbit too large".into()));
        }
    }
    Ok(orbit)
}

/// Which ideal `H·J` a quotient describes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum IdealKind {
    /// `(A⁺H)ⁿ`.
    AugPower(usize),
    /// `H𝔪_g`.
    PointIdeal(Point),
    /// `H𝔪_g^{(H̄)}`.
    CoreIdeal(Point),
    Intersection(Vec<IdealKind>),
}

/// Resolved ideal: points of `Spec A` with jet orders, plus coordinates on `H/HJ`.
#[derive(Clone, Debug)]
pub struct IdealSpec {
    pub kind: IdealKind,
    pub parts: Vec<(Point, usize)>,
    pub two_sided: bool,
    pub rank: usize,
    jets: Vec<Vec<Vec<usize>>>,
}

fn multi_indices(m: usize, below: usize) -> Vec<Vec<usize>> {
    // All α ∈ ℕ^m with |α| < below, graded then lexicographic.
    let mut out = Vec::new();
    for total in 0..below {
        let mut cur = vec![0usize; m];
        fill(&mut out, &mut cur, 0, total);
    }
    out
}

fn fill(out: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>, pos: usize, left: usize) {
    if pos + 1 == cur.len() {
        cur[pos] = left;
        out.push(cur.clone());
        return;
    }
    if cur.is_empty() {
        if left == 0 {
            out.push(Vec::new());
        }
        return;
    }
    for k in (0..=left).rev() {
        cur[pos] = k;
        fill(out, cur, pos + 1, left - k);
    }
    cur[pos] = 0;
}

/// Generalized binomial coefficient `e(e−1)⋯(e−α+1)/α!` for any integer `e`.
pub fn gen_binom(e: i64, a: usize) -> i64 {
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for t in 0..a as i64 {
        num *= (e - t) as i128;
        den *= (t + 1) as i128;
    }
    (num / den) as i64
}

/// Taylor coefficient of `a^e` at `c` in direction `α`.
pub fn jet_coefficient(f: &FieldDesc, c: &[Scalar], e: &[i64], alpha: &[usize]) -> Scalar {
    let mut acc = f.one();
    for j in 0..c.len() {
        let b = gen_binom(e[j], alpha[j]);
        if b == 0 {
            return f.zero();
        }
        let rest = e[j] - alpha[j] as i64;
        let p = if rest == 0 {
            f.one()
        } else if c[j].is_zero() {
            return f.zero();
        } else {
            c[j].pow(rest)
        };
        acc = &acc * &(&f.from_i64(b) * &p);
    }
    acc
}

impl IdealSpec {
    pub fn dim(&self) -> usize {
        self.rank * self.part_dim()
    }

    fn part_dim(&self) -> usize {
        self.jets.iter().map(|j| j.len()).sum()
    }

    /// Coordinates of a word in `H/HJ`.
    pub fn project<H: BasedHopf + ?Sized>(&self, h: &H, w: &Word) -> Vec<Scalar> {
        let f = h.field();
        let pd = self.part_dim();
        let mut out = vec![f.zero(); self.dim()];
        for (k, c, e) in h.split_right(w) {
            let mut off = k * pd;
            for ((pt, _), jets) in self.parts.iter().zip(&self.jets) {
                for alpha in jets {
                    let v = jet_coefficient(&f, pt, &e, alpha);
                    if !v.is_zero() {
                        out[off] = &out[off] + &(&c * &v);
                    }
                    off += 1;
                }
            }
        }
        out
    }

    pub fn project_elem<H: BasedHopf + ?Sized>(&self, h: &H, x: &Elem) -> Vec<Scalar> {
        let f = h.field();
        let mut out = vec![f.zero(); self.dim()];
        for (w, c) in x {
            crate::exactla::axpy(&mut out, c, &self.project(h, w));
        }
        out
    }

    /// Elements of `A` generating `J`.
    pub fn generators<H: BasedHopf + ?Sized>(&self, h: &H) -> Vec<Elem> {
        let gens = h.a_gens();
        let f = h.field();
        let mut acc: Vec<Elem> = vec![single(h.one(), f.one())];
        for (pt, order) in &self.parts {
            let lin: Vec<Elem> = gens
                .iter()
                .zip(pt)
                .map(|(g, c)| {
                    let mut e = single(g.word.clone(), f.one());
                    add_to(&mut e, h.one(), -c);
                    e
                })
                .collect();
            let lin: Vec<Elem> = lin.into_iter().chain(gens.iter().zip(pt).enumerate().filter(|(_, (g, _))| g.laurent).map(|(j, (_, c))| {
                let mut e = vec![0i64; gens.len()];
                e[j] = -1;
                let mut x = single(h.a_word(&e), f.one());
                add_to(&mut x, h.one(), -&c.pow(-1));
                x
            })).collect();
            let mut powers: Vec<Elem> = vec![single(h.one(), f.one())];
            for _ in 0..*order {
                let mut next = Vec::new();
                for p in &powers {
                    for l in &lin {
                        next.push(mul(h, p, l));
                    }
                }
                powers = next;
            }
            let mut next = Vec::new();
            for a in &acc {
                for p in &powers {
                    next.push(mul(h, a, p));
                }
            }
            acc = next;
        }
        acc
    }

    /// The same ideal with every point replaced by its inverse.
    fn inverted<H: BasedHopf + ?Sized>(&self, h: &H) -> Result<IdealSpec, BasedError> {
        if !self.two_sided {
            return Err(BasedError::Unsupported("transport of a one-sided point ideal through the antipode".into()));
        }
        let parts: Vec<(Point, usize)> = self.parts.iter().map(|(p, o)| Ok((point_inv(h, p)?, *o))).collect::<Result<_, BasedError>>()?;
        Ok(IdealSpec { kind: invert_kind(h, &self.kind)?, parts, two_sided: true, rank: self.rank, jets: self.jets.clone() })
    }
}

fn invert_kind<H: BasedHopf + ?Sized>(h: &H, k: &IdealKind) -> Result<IdealKind, BasedError> {
    Ok(match k {
        IdealKind::AugPower(n) => IdealKind::AugPower(*n),
        IdealKind::PointIdeal(p) => IdealKind::PointIdeal(point_inv(h, p)?),
        IdealKind::CoreIdeal(p) => IdealKind::CoreIdeal(point_inv(h, p)?),
        IdealKind::Intersection(v) => IdealKind::Intersection(v.iter().map(|x| invert_kind(h, x)).collect::<Result<_, _>>()?),
    })
}

pub fn resolve<H: BasedHopf + ?Sized>(h: &H, kind: &IdealKind) -> Result<IdealSpec, BasedError> {
    let mut parts: Vec<(Point, usize)> = Vec::new();
    let mut two_sided = true;
    collect_parts(h, kind, &mut parts, &mut two_sided)?;
    let m = h.a_gens().len();
    let jets = parts.iter().map(|(_, o)| multi_indices(m, *o)).collect();
    Ok(IdealSpec { kind: kind.clone(), parts, two_sided, rank: h.module_basis().len(), jets })
}

fn collect_parts<H: BasedHopf + ?Sized>(h: &H, kind: &IdealKind, parts: &mut Vec<(Point, usize)>, two_sided: &mut bool) -> Result<(), BasedError> {
    let mut push = |p: Point, o: usize| match parts.iter_mut().find(|(q, _)| *q == p) {
        Some(entry) => entry.1 = entry.1.max(o),
        None => parts.push((p, o)),
    };
    match kind {
        IdealKind::AugPower(n) => push(counit_point(h), *n),
        IdealKind::PointIdeal(p) => {
            check_point(h, p)?;
            if point_orbit(h, p)?.len() > 1 {
                *two_sided = false;
            }
            push(p.clone(), 1);
        }
        IdealKind::CoreIdeal(p) => {
            for q in point_orbit(h, p)? {
                push(q, 1);
            }
        }
        IdealKind::Intersection(list) => {
            for k in list {
                collect_parts(h, k, parts, two_sided)?;
            }
        }
    }
    Ok(())
}

/// A functional on `H` factoring through `H/HJ`.
#[derive(Clone, Debug)]
pub struct CofiniteFunctional {
    pub spec: IdealSpec,
    pub values: Vec<Scalar>,
    /// Degree to which the defining rule was audited against the coordinates.
    pub verified_degree: usize,
}

impl CofiniteFunctional {
    pub fn eval<H: BasedHopf + ?Sized>(&self, h: &H, w: &Word) -> Scalar {
        crate::exactla::dot(&self.values, &self.spec.project(h, w), &h.field())
    }

    pub fn eval_elem<H: BasedHopf + ?Sized>(&self, h: &H, x: &Elem) -> Scalar {
        x.iter().fold(h.field().zero(), |acc, (w, c)| &acc + &(c * &self.eval(h, w)))
    }
}

const MAX_MATERIALIZE_DEGREE: usize = 48;

/// Finds the covector on `spec` reproducing `rule`, then audits agreement on all words of degree ≤ `n`.
pub fn materialize<H: BasedHopf + ?Sized>(h: &H, spec: &IdealSpec, rule: &(dyn Fn(&Word) -> Scalar + Sync), n: usize) -> Result<CofiniteFunctional, BasedError> {
    let f = h.field();
    let dim = spec.dim();
    let mut ech = Echelon::new(f, dim);
    let mut rows: Vec<(Vec<Scalar>, Scalar)> = Vec::new();
    let mut deg = 0usize;
    while rows.len() < dim {
        if deg > MAX_MATERIALIZE_DEGREE {
            return Err(BasedError::Coordinates(MAX_MATERIALIZE_DEGREE, format!("{:?}", spec.kind)));
        }
        let words = h.words_up_to(deg);
        for w in words.iter().filter(|w| h.degree(w) == deg) {
            let p = spec.project(h, w);
            if ech.insert(&p).is_ok() {
                rows.push((p, rule(w)));
            }
        }
        deg += 1;
    }
    let values = if dim == 0 {
        Vec::new()
    } else {
        let m = Matrix { field: f, rows: dim, cols: dim, data: rows.iter().map(|r| r.0.clone()).collect() };
        let rhs: Vec<Scalar> = rows.iter().map(|r| r.1.clone()).collect();
        m.solve(&rhs).map_err(HopfError::from)?.ok_or_else(|| BasedError::Coordinates(deg, format!("{:?}", spec.kind)))?
    };
    let func = CofiniteFunctional { spec: spec.clone(), values, verified_degree: n.max(deg) };
    let audit_words = h.words_up_to(n.max(deg));
    let bad = audit_words.par_iter().find_first(|w| func.eval(h, w) != rule(w));
    if let Some(w) = bad {
        return Err(BasedError::Audit(h.show(w)));
    }
    Ok(func)
}

/// Projection audit: every generator of `J` times every word of degree ≤ `n` projects to zero.
pub fn audit_spec<H: BasedHopf + ?Sized>(h: &H, spec: &IdealSpec, n: usize) -> Check {
    let gens = spec.generators(h);
    let words = h.words_up_to(n);
    let bad = words.par_iter().find_map_first(|w| {
        let we = word_elem(h, w);
        gens.iter().find_map(|g| {
            let p = spec.project_elem(h, &mul(h, &we, g));
            (!crate::exactla::is_zero_vec(&p)).then(|| format!("{} · J-generator", h.show(w)))
        })
    });
    match bad {
        None => Check::pass(),
        Some(w) => Check::fail(w),
    }
}

/// Algebra structure of `A/J` is not needed here; `H̄ = H/A⁺H` as a finite-dimensional Hopf algebra.
pub fn hbar<H: BasedHopf + ?Sized>(h: &H) -> Result<FdHopf, BasedError> {
    let spec = resolve(h, &IdealKind::AugPower(1))?;
    let basis = h.module_basis();
    let d = basis.len();
    let f = h.field();
    let proj = |x: &Elem| spec.project_elem(h, x);
    let mult = basis
        .iter()
        .map(|a| basis.iter().map(|b| crate::exactla::dense_to_sparse(&proj(&h.product(a, b)))).collect())
        .collect();
    let comult = basis
        .iter()
        .map(|b| {
            let mut t: BTreeMap<usize, Scalar> = BTreeMap::new();
            for ((w1, w2), c) in h.coproduct(b) {
                let p1 = spec.project(h, &w1);
                let p2 = spec.project(h, &w2);
                for (i, x) in p1.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in p2.iter().enumerate() {
                        if !y.is_zero() {
                            let e = t.entry(i * d + j).or_insert_with(|| f.zero());
                            *e = &*e + &(&c * &(x * y));
                        }
                    }
                }
            }
            t.into_iter().filter(|(_, v)| !v.is_zero()).collect()
        })
        .collect();
    let counit = basis.iter().map(|b| h.counit(b)).collect();
    let antipode = basis.iter().map(|b| proj(&h.antipode(b))).collect();
    let unit = proj(&word_elem(h, &h.one()));
    let alg = FdAlgebra { field: f, labels: basis.iter().map(|b| h.show(b)).collect(), mult, unit };
    Ok(FdHopf::new(alg, comult, counit, Some(antipode))?)
}
