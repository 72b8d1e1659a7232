//! Finite-dimensional algebras, bialgebras and Hopf algebras by structure constants.

use crate::exactla::{axpy, axpy_sparse, dense_to_sparse, flat, is_zero_vec, Echelon, LinAlgError, Matrix, SVec, Subspace};
use crate::scalars::{find_roots, FieldDesc, Scalar, ScalarError};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HopfError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error("{0} is not group-like")]
    NotGroupLike(String),
    #[error("generator specification inconsistent with the source algebra: {0}")]
    InconsistentSpec(String),
    #[error("structure file: {0}")]
    File(String),
}

/// Sparse element of a tensor power, keyed by flattened index.
pub type TVec = BTreeMap<usize, Scalar>;

fn tadd(acc: &mut TVec, k: usize, v: Scalar) {
    if v.is_zero() {
        return;
    }
    match acc.get_mut(&k) {
        Some(x) => {
            *x = &*x + &v;
            if x.is_zero() {
                acc.remove(&k);
            }
        }
        None => {
            acc.insert(k, v);
        }
    }
}

fn tvec_eq(a: &TVec, b: &TVec) -> bool {
    a.iter().all(|(k, v)| b.get(k).is_some_and(|w| w == v)) && b.keys().all(|k| a.contains_key(k))
}

/// Finite-dimensional unital algebra: `e_i e_j = Σ_k mult[i][j]_k e_k`.
#[derive(Clone, Debug)]
pub struct FdAlgebra {
    pub field: FieldDesc,
    pub labels: Vec<String>,
    pub mult: Vec<Vec<SVec>>,
    pub unit: Vec<Scalar>,
}

impl FdAlgebra {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[i] = self.field.one();
        v
    }

    pub fn zero_vector(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.dim()]
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.zero_vector();
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    axpy_sparse(&mut out, &(x * y), &self.mult[i][j]);
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &[Scalar], e: usize) -> Vec<Scalar> {
        (0..e).fold(self.unit.clone(), |acc, _| self.mul(&acc, a))
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim();
        let m = |i: usize, j: usize| -> TVec { self.mult[i][j].iter().cloned().collect() };
        (0..d).all(|i| (i + 1..d).all(|j| tvec_eq(&m(i, j), &m(j, i))))
    }

    /// Left multiplication matrix acting on column vectors.
    pub fn left_mult_matrix(&self, a: &[Scalar]) -> Matrix {
        let d = self.dim();
        let mut m = Matrix::zeros(self.field, d, d);
        for j in 0..d {
            let col = self.mul(a, &self.basis_vector(j));
            for i in 0..d {
                m.data[i][j] = col[i].clone();
            }
        }
        m
    }

    /// Monic minimal polynomial of `a`, coefficients from degree 0.
    pub fn minimal_polynomial(&self, a: &[Scalar]) -> Vec<Scalar> {
        let mut ech = Echelon::new(self.field, self.dim());
        let mut cur = self.unit.clone();
        loop {
            match ech.insert(&cur) {
                Ok(_) => cur = self.mul(&cur, a),
                Err(expr) => {
                    let mut p: Vec<Scalar> = expr.iter().map(|x| -x).collect();
                    p.push(self.field.one());
                    return p;
                }
            }
        }
    }

    /// Greedy algebra generating set drawn from the basis.
    pub fn generators(&self) -> Vec<Vec<Scalar>> {
        let mut gens: Vec<Vec<Scalar>> = Vec::new();
        loop {
            let cl = Closure::build(self, &gens);
            if cl.words.len() == self.dim() {
                return gens;
            }
            let next = (0..self.dim()).find(|&i| !cl.echelon.contains(&self.basis_vector(i))).expect("missing basis vector");
            gens.push(self.basis_vector(next));
        }
    }

    /// Associativity and unit checks, reduced to a generating set.
    pub fn check_associative(&self, gens: &[Vec<Scalar>]) -> Check {
        let d = self.dim();
        for k in 0..d {
            let e = self.basis_vector(k);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return Check::fail(format!("unit fails at {}", self.labels[k]));
            }
        }
        let cl = Closure::build(self, gens);
        if cl.words.len() != d {
            return Check::fail("generating set does not span".into());
        }
        for x in gens {
            for a in 0..d {
                let xa = self.mul(x, &self.basis_vector(a));
                for b in 0..d {
                    let lhs = self.mul(&xa, &self.basis_vector(b));
                    let ab = sparse_dense(&self.mult[a][b], d, &self.field);
                    let rhs = self.mul(x, &ab);
                    if lhs != rhs {
                        return Check::fail(format!("({} {}) {}", self.label_of(x), self.labels[a], self.labels[b]));
                    }
                }
            }
        }
        Check::pass()
    }

    pub fn label_of(&self, v: &[Scalar]) -> String {
        format_vector(v, &self.labels)
    }

    pub fn center(&self) -> Subspace {
        let d = self.dim();
        let mut m = Matrix::zeros(self.field, d * d, d);
        for j in 0..d {
            for i in 0..d {
                // row (i, k): coefficient of e_k in e_j e_i − e_i e_j.
                let mut diff = sparse_dense(&self.mult[j][i], d, &self.field);
                axpy_sparse(&mut diff, &-&self.field.one(), &self.mult[i][j]);
                for k in 0..d {
                    m.data[i * d + k][j] = diff[k].clone();
                }
            }
        }
        Subspace::span(self.field, d, &m.kernel())
    }
}

pub fn sparse_dense(v: &SVec, d: usize, f: &FieldDesc) -> Vec<Scalar> {
    crate::exactla::sparse_to_dense(v, d, f)
}

pub fn format_vector(v: &[Scalar], labels: &[String]) -> String {
    let terms: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| if x.is_one() { labels[i].clone() } else { format!("({x})*{}", labels[i]) })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// Right-nested words in a set of generators spanning a subalgebra.
#[derive(Clone, Debug)]
pub struct Closure {
    pub words: Vec<Word>,
    pub relations: Vec<Relation>,
    pub echelon: Echelon,
}

#[derive(Clone, Debug)]
pub struct Word {
    pub vector: Vec<Scalar>,
    /// `(generator, parent word)`; the word equals `gen · parent`.
    pub origin: Option<(usize, usize)>,
    pub stage: usize,
}

/// `gen · words[word] = Σ expr_t words[t]`.
#[derive(Clone, Debug)]
pub struct Relation {
    pub gen: usize,
    pub word: usize,
    pub expr: Vec<Scalar>,
    pub stage: usize,
}

impl Closure {
    pub fn build(alg: &FdAlgebra, gens: &[Vec<Scalar>]) -> Closure {
        let mut echelon = Echelon::new(alg.field, alg.dim());
        echelon.insert(&alg.unit).expect("unit is nonzero");
        let mut words = vec![Word { vector: alg.unit.clone(), origin: None, stage: 0 }];
        let mut relations = Vec::new();
        for k in 0..gens.len() {
            let mut queue: std::collections::VecDeque<(usize, usize)> = (0..words.len()).map(|w| (k, w)).collect();
            while let Some((g, w)) = queue.pop_front() {
                let v = alg.mul(&gens[g], &words[w].vector);
                match echelon.insert(&v) {
                    Ok(idx) => {
                        words.push(Word { vector: v, origin: Some((g, w)), stage: k });
                        for g2 in 0..=k {
                            queue.push_back((g2, idx));
                        }
                    }
                    Err(expr) => relations.push(Relation { gen: g, word: w, expr, stage: k }),
                }
            }
        }
        Closure { words, relations, echelon }
    }

    /// Evaluates a multiplicative assignment on the words generated so far.
    fn word_values(&self, vals: &[Scalar], field: &FieldDesc, upto_stage: usize) -> Vec<Option<Scalar>> {
        let mut out: Vec<Option<Scalar>> = vec![None; self.words.len()];
        out[0] = Some(field.one());
        for (i, w) in self.words.iter().enumerate().skip(1) {
            if w.stage > upto_stage {
                continue;
            }
            let (g, p) = w.origin.expect("non-unit word");
            if let Some(pv) = &out[p] {
                out[i] = Some(&vals[g] * pv);
            }
        }
        out
    }

    /// Solves for coordinates of each basis vector over the words.
    pub fn basis_in_words(&self, alg: &FdAlgebra) -> Option<Matrix> {
        let d = alg.dim();
        if self.words.len() != d {
            return None;
        }
        let mut w = Matrix::zeros(alg.field, d, d);
        for (j, word) in self.words.iter().enumerate() {
            for i in 0..d {
                w.data[i][j] = word.vector[i].clone();
            }
        }
        w.inverse()
    }
}

/// Pass/fail with an optional witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn pass() -> Check {
        Check { pass: true, witness: None }
    }
    pub fn fail(w: String) -> Check {
        Check { pass: false, witness: Some(w) }
    }
    pub fn from_bool(b: bool, w: impl FnOnce() -> String) -> Check {
        if b {
            Check::pass()
        } else {
            Check::fail(w())
        }
    }
}

/// Certificate level of an [`FdHopf`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Certificate {
    Hopf,
    Bialgebra,
}

/// Finite-dimensional bialgebra with optional antipode.
#[derive(Clone, Debug)]
pub struct FdHopf {
    pub alg: FdAlgebra,
    /// `Δe_i = Σ comult[i][flat(j,k)] e_j ⊗ e_k`.
    pub comult: Vec<SVec>,
    pub counit: Vec<Scalar>,
    /// `antipode[i] = S(e_i)` as a dense vector.
    pub antipode: Option<Vec<Vec<Scalar>>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HopfReport {
    pub dim: usize,
    pub associativity: Check,
    pub unit: Check,
    pub coassociativity: Check,
    pub counit: Check,
    pub comult_algebra_map: Check,
    pub counit_algebra_map: Check,
    pub antipode: Check,
    pub is_commutative: bool,
    pub is_cocommutative: bool,
    pub certificate: Certificate,
}

impl HopfReport {
    pub fn all_pass(&self) -> bool {
        [&self.associativity, &self.unit, &self.coassociativity, &self.counit, &self.comult_algebra_map, &self.counit_algebra_map, &self.antipode]
            .iter()
            .all(|c| c.pass)
    }
}

impl FdHopf {
    /// Builds the object, solving for the antipode when none is given.
    pub fn new(alg: FdAlgebra, comult: Vec<SVec>, counit: Vec<Scalar>, antipode: Option<Vec<Vec<Scalar>>>) -> Result<FdHopf, HopfError> {
        let d = alg.dim();
        if comult.len() != d || counit.len() != d || alg.unit.len() != d || alg.mult.len() != d {
            return Err(HopfError::Dimension(format!("structure tensors disagree with dimension {d}")));
        }
        if let Some(s) = &antipode {
            if s.len() != d || s.iter().any(|r| r.len() != d) {
                return Err(HopfError::Dimension("antipode must be a square matrix".into()));
            }
        }
        let mut h = FdHopf { alg, comult, counit, antipode };
        if h.antipode.is_none() {
            h.antipode = h.solve_antipode();
        }
        Ok(h)
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn field(&self) -> FieldDesc {
        self.alg.field
    }

    pub fn certificate(&self) -> Certificate {
        if self.antipode.is_some() {
            Certificate::Hopf
        } else {
            Certificate::Bialgebra
        }
    }

    /// Convolution inverse of the identity, when it exists.
    pub fn solve_antipode(&self) -> Option<Vec<Vec<Scalar>>> {
        let d = self.dim();
        if d > 40 {
            return None;
        }
        let f = self.field();
        // Unknown s[l][j] = coefficient of e_l in S(e_j); equation for (i, m): Σ d_i^{jk} s[l][j] c_{lk}^m = ε_i u_m.
        let mut m = Matrix::zeros(f, d * d, d * d);
        let mut rhs = vec![f.zero(); d * d];
        for i in 0..d {
            for (idx, c) in &self.comult[i] {
                let (j, k) = (idx / d, idx % d);
                for l in 0..d {
                    for (mm, cc) in &self.alg.mult[l][k] {
                        let row = i * d + mm;
                        let col = l * d + j;
                        m.data[row][col] = &m.data[row][col] + &(c * cc);
                    }
                }
            }
            for mm in 0..d {
                rhs[i * d + mm] = &self.counit[i] * &self.alg.unit[mm];
            }
        }
        let sol = m.solve(&rhs).ok()??;
        let s: Vec<Vec<Scalar>> = (0..d).map(|j| (0..d).map(|l| sol[l * d + j].clone()).collect()).collect();
        let cand = FdHopf { antipode: Some(s.clone()), ..self.clone() };
        cand.check_antipode().pass.then_some(s)
    }

    pub fn comult_of(&self, v: &[Scalar]) -> TVec {
        let mut out = TVec::new();
        for (i, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (k, c) in &self.comult[i] {
                tadd(&mut out, *k, x * c);
            }
        }
        out
    }

    pub fn counit_of(&self, v: &[Scalar]) -> Scalar {
        crate::exactla::dot(v, &self.counit, &self.field())
    }

    pub fn antipode_of(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let s = self.antipode.as_ref()?;
        let mut out = self.alg.zero_vector();
        for (i, x) in v.iter().enumerate() {
            axpy(&mut out, x, &s[i]);
        }
        Some(out)
    }

    /// Product in `H ⊗ H`.
    pub fn tensor_mul(&self, a: &TVec, b: &TVec) -> TVec {
        let d = self.dim();
        let mut out = TVec::new();
        for (ka, va) in a {
            let (i, j) = (ka / d, ka % d);
            for (kb, vb) in b {
                let (k, l) = (kb / d, kb % d);
                let s = va * vb;
                for (p, x) in &self.alg.mult[i][k] {
                    let sx = &s * x;
                    for (q, y) in &self.alg.mult[j][l] {
                        tadd(&mut out, flat(*p, *q, d), &sx * y);
                    }
                }
            }
        }
        out
    }

    pub fn verify(&self) -> HopfReport {
        let gens = self.alg.generators();
        let assoc = self.alg.check_associative(&gens);
        let unit_ok = {
            let d = self.dim();
            let bad = (0..d).find(|&k| {
                let e = self.alg.basis_vector(k);
                self.alg.mul(&self.alg.unit, &e) != e || self.alg.mul(&e, &self.alg.unit) != e
            });
            match bad {
                None => Check::pass(),
                Some(k) => Check::fail(self.alg.labels[k].clone()),
            }
        };
        HopfReport {
            dim: self.dim(),
            associativity: assoc,
            unit: unit_ok,
            coassociativity: self.check_coassociative(),
            counit: self.check_counit(),
            comult_algebra_map: self.check_comult_multiplicative(&gens),
            counit_algebra_map: self.check_counit_multiplicative(),
            antipode: self.check_antipode(),
            is_commutative: self.alg.is_commutative(),
            is_cocommutative: self.is_cocommutative(),
            certificate: self.certificate(),
        }
    }

    pub fn is_cocommutative(&self) -> bool {
        let d = self.dim();
        self.comult.iter().all(|row| {
            row.iter().all(|(k, v)| {
                let sw = flat(k % d, k / d, d);
                row.iter().any(|(k2, v2)| *k2 == sw && v2 == v)
            })
        })
    }

    fn check_coassociative(&self) -> Check {
        let d = self.dim();
        for i in 0..d {
            let mut left = TVec::new();
            let mut right = TVec::new();
            for (k, c) in &self.comult[i] {
                let (a, b) = (k / d, k % d);
                for (k2, c2) in &self.comult[a] {
                    tadd(&mut left, (k2 / d) * d * d + (k2 % d) * d + b, c * c2);
                }
                for (k2, c2) in &self.comult[b] {
                    tadd(&mut right, a * d * d + k2, c * c2);
                }
            }
            if !tvec_eq(&left, &right) {
                return Check::fail(self.alg.labels[i].clone());
            }
        }
        Check::pass()
    }

    fn check_counit(&self) -> Check {
        let d = self.dim();
        for i in 0..d {
            let mut l = self.alg.zero_vector();
            let mut r = self.alg.zero_vector();
            for (k, c) in &self.comult[i] {
                let (a, b) = (k / d, k % d);
                l[b] = &l[b] + &(c * &self.counit[a]);
                r[a] = &r[a] + &(c * &self.counit[b]);
            }
            let e = self.alg.basis_vector(i);
            if l != e || r != e {
                return Check::fail(self.alg.labels[i].clone());
            }
        }
        Check::pass()
    }

    fn check_comult_multiplicative(&self, gens: &[Vec<Scalar>]) -> Check {
        let d = self.dim();
        let one = self.comult_of(&self.alg.unit);
        let mut expect = TVec::new();
        tadd(&mut expect, 0, self.field().zero());
        let unit_sq: TVec = {
            let mut t = TVec::new();
            for (i, x) in self.alg.unit.iter().enumerate() {
                for (j, y) in self.alg.unit.iter().enumerate() {
                    tadd(&mut t, flat(i, j, d), x * y);
                }
            }
            t
        };
        if !tvec_eq(&one, &unit_sq) {
            return Check::fail("Δ(1) ≠ 1⊗1".into());
        }
        for x in gens {
            let dx = self.comult_of(x);
            for j in 0..d {
                let dj: TVec = self.comult[j].iter().cloned().collect();
                let lhs = self.comult_of(&self.alg.mul(x, &self.alg.basis_vector(j)));
                let rhs = self.tensor_mul(&dx, &dj);
                if !tvec_eq(&lhs, &rhs) {
                    return Check::fail(format!("Δ({} {})", self.alg.label_of(x), self.alg.labels[j]));
                }
            }
        }
        Check::pass()
    }

    fn check_counit_multiplicative(&self) -> Check {
        let d = self.dim();
        if !self.counit_of(&self.alg.unit).is_one() {
            return Check::fail("ε(1) ≠ 1".into());
        }
        for i in 0..d {
            for j in 0..d {
                let lhs = self.counit_of(&sparse_dense(&self.alg.mult[i][j], d, &self.field()));
                if lhs != &self.counit[i] * &self.counit[j] {
                    return Check::fail(format!("ε({} {})", self.alg.labels[i], self.alg.labels[j]));
                }
            }
        }
        Check::pass()
    }

    pub fn check_antipode(&self) -> Check {
        let Some(s) = &self.antipode else {
            return Check::fail("no antipode".into());
        };
        let d = self.dim();
        for i in 0..d {
            let mut l = self.alg.zero_vector();
            let mut r = self.alg.zero_vector();
            for (k, c) in &self.comult[i] {
                let (a, b) = (k / d, k % d);
                let eb = self.alg.basis_vector(b);
                let ea = self.alg.basis_vector(a);
                axpy(&mut l, c, &self.alg.mul(&s[a], &eb));
                axpy(&mut r, c, &self.alg.mul(&ea, &s[b]));
            }
            let target: Vec<Scalar> = self.alg.unit.iter().map(|u| u * &self.counit[i]).collect();
            if l != target || r != target {
                return Check::fail(self.alg.labels[i].clone());
            }
        }
        Check::pass()
    }

    /// Dual bialgebra on the dual basis.
    pub fn dual(&self) -> FdHopf {
        let d = self.dim();
        let f = self.field();
        let mut mult: Vec<Vec<TVec>> = vec![vec![TVec::new(); d]; d];
        for (i, row) in self.comult.iter().enumerate() {
            for (k, c) in row {
                tadd(&mut mult[k / d][k % d], i, c.clone());
            }
        }
        let mut comult: Vec<TVec> = vec![TVec::new(); d];
        for i in 0..d {
            for j in 0..d {
                for (k, c) in &self.alg.mult[i][j] {
                    tadd(&mut comult[*k], flat(i, j, d), c.clone());
                }
            }
        }
        let antipode = self.antipode.as_ref().map(|s| (0..d).map(|i| (0..d).map(|j| s[j][i].clone()).collect()).collect());
        FdHopf {
            alg: FdAlgebra {
                field: f,
                labels: self.alg.labels.iter().map(|l| format!("{l}*")).collect(),
                mult: mult.into_iter().map(|r| r.into_iter().map(|t| t.into_iter().collect()).collect()).collect(),
                unit: self.counit.clone(),
            },
            comult: comult.into_iter().map(|t| t.into_iter().collect()).collect(),
            counit: self.alg.unit.clone(),
            antipode,
        }
    }

    /// Structure tensors agree exactly with `other` on the same index set.
    pub fn same_structure(&self, other: &FdHopf) -> bool {
        let eq = |a: &SVec, b: &SVec| tvec_eq(&a.iter().cloned().collect(), &b.iter().cloned().collect());
        self.dim() == other.dim()
            && self.alg.mult.iter().zip(&other.alg.mult).all(|(r, s)| r.iter().zip(s).all(|(a, b)| eq(a, b)))
            && self.alg.unit == other.alg.unit
            && self.comult.iter().zip(&other.comult).all(|(a, b)| eq(a, b))
            && self.counit == other.counit
            && self.antipode == other.antipode
    }

    /// The evaluation map `H → H**` is the identity on coordinates; it is a Hopf
    /// isomorphism exactly when the double transpose reproduces every tensor.
    pub fn bidual_certified(&self) -> bool {
        self.same_structure(&self.dual().dual())
    }

    pub fn relabel(mut self, labels: Vec<String>) -> FdHopf {
        self.alg.labels = labels;
        self
    }

    /// Convolution of covectors: `(f*g)(c) = Σ f(c₁) g(c₂)`.
    pub fn convolve(&self, f: &[Scalar], g: &[Scalar]) -> Vec<Scalar> {
        let d = self.dim();
        self.comult
            .iter()
            .map(|row| {
                let mut acc = self.field().zero();
                for (k, c) in row {
                    let t = &f[k / d] * &g[k % d];
                    if !t.is_zero() {
                        acc = &acc + &(c * &t);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_group_like(&self, x: &[Scalar]) -> bool {
        let d = self.dim();
        if !self.counit_of(x).is_one() {
            return false;
        }
        let mut xx = TVec::new();
        for (i, a) in x.iter().enumerate() {
            for (j, b) in x.iter().enumerate() {
                tadd(&mut xx, flat(i, j, d), a * b);
            }
        }
        tvec_eq(&self.comult_of(x), &xx)
    }

    /// `Δx − x⊗a − b⊗x` as a linear map, one sparse column per basis element.
    fn skew_columns(&self, a: &[Scalar], b: &[Scalar]) -> Vec<TVec> {
        let d = self.dim();
        (0..d)
            .map(|i| {
                let mut t: TVec = self.comult[i].iter().cloned().collect();
                for (j, x) in a.iter().enumerate() {
                    tadd(&mut t, flat(i, j, d), -x);
                }
                for (j, x) in b.iter().enumerate() {
                    tadd(&mut t, flat(j, i, d), -x);
                }
                t
            })
            .collect()
    }

    /// Solution space of `Δx = x⊗a + b⊗x`.
    pub fn skew_primitives(&self, a: &[Scalar], b: &[Scalar]) -> Result<Subspace, HopfError> {
        for (name, g) in [("a", a), ("b", b)] {
            if !self.is_group_like(g) {
                return Err(HopfError::NotGroupLike(format!("{name} = {}", self.alg.label_of(g))));
            }
        }
        let cols = self.skew_columns(a, b);
        let rows: Vec<usize> = {
            let mut r: Vec<usize> = cols.iter().flat_map(|c| c.keys().copied()).collect();
            r.sort_unstable();
            r.dedup();
            r
        };
        let d = self.dim();
        let f = self.field();
        let mut m = Matrix::zeros(f, rows.len(), d);
        for (c, col) in cols.iter().enumerate() {
            for (k, v) in col {
                let r = rows.binary_search(k).expect("row present");
                m.data[r][c] = v.clone();
            }
        }
        let ker = if rows.is_empty() { Matrix::identity(f, d).data } else { m.kernel() };
        Ok(Subspace::span(f, d, &ker))
    }

    /// Number of skew-primitives beyond the trivial line spanned by `b − a`.
    pub fn essential_skew_count(&self, a: &[Scalar], b: &[Scalar]) -> Result<usize, HopfError> {
        let p = self.skew_primitives(a, b)?;
        let diff: Vec<Scalar> = b.iter().zip(a).map(|(x, y)| x - y).collect();
        Ok(p.dim() - usize::from(!is_zero_vec(&diff)))
    }

    /// Group-likes, computed as characters of the dual algebra.
    pub fn group_likes(&self, candidates: &[Scalar]) -> GroupLikes {
        let dual = self.dual();
        let chars = characters(&dual.alg, candidates);
        let elements: Vec<Vec<Scalar>> = chars.characters.into_iter().map(|c| c.values).collect();
        let closed = elements.iter().all(|x| {
            elements.iter().all(|y| {
                let p = self.alg.mul(x, y);
                elements.contains(&p)
            })
        });
        GroupLikes { elements, complete: chars.complete, closed_under_multiplication: closed }
    }

    pub fn tensor_product(&self, other: &FdHopf) -> Result<FdHopf, HopfError> {
        let f = self.field().join(&other.field())?;
        let a = self.coerce(&f)?;
        let b = other.coerce(&f)?;
        let (d1, d2) = (a.dim(), b.dim());
        let d = d1 * d2;
        let idx = |i: usize, j: usize| flat(i, j, d2);
        let mut labels = Vec::with_capacity(d);
        for i in 0..d1 {
            for j in 0..d2 {
                labels.push(format!("{}⊗{}", a.alg.labels[i], b.alg.labels[j]));
            }
        }
        let mut mult = vec![vec![SVec::new(); d]; d];
        for i in 0..d1 {
            for j in 0..d2 {
                for k in 0..d1 {
                    for l in 0..d2 {
                        let mut t = TVec::new();
                        for (p, x) in &a.alg.mult[i][k] {
                            for (q, y) in &b.alg.mult[j][l] {
                                tadd(&mut t, idx(*p, *q), x * y);
                            }
                        }
                        mult[idx(i, j)][idx(k, l)] = t.into_iter().collect();
                    }
                }
            }
        }
        let mut unit = vec![f.zero(); d];
        let mut counit = vec![f.zero(); d];
        let mut comult = vec![SVec::new(); d];
        for i in 0..d1 {
            for j in 0..d2 {
                unit[idx(i, j)] = &a.alg.unit[i] * &b.alg.unit[j];
                counit[idx(i, j)] = &a.counit[i] * &b.counit[j];
                let mut t = TVec::new();
                for (k1, x) in &a.comult[i] {
                    for (k2, y) in &b.comult[j] {
                        let left = idx(k1 / d1, k2 / d2);
                        let right = idx(k1 % d1, k2 % d2);
                        tadd(&mut t, flat(left, right, d), x * y);
                    }
                }
                comult[idx(i, j)] = t.into_iter().collect();
            }
        }
        let antipode = match (&a.antipode, &b.antipode) {
            (Some(s1), Some(s2)) => Some(
                (0..d)
                    .map(|ij| {
                        let (i, j) = (ij / d2, ij % d2);
                        let mut v = vec![f.zero(); d];
                        for (p, x) in s1[i].iter().enumerate() {
                            if x.is_zero() {
                                continue;
                            }
                            for (q, y) in s2[j].iter().enumerate() {
                                if !y.is_zero() {
                                    v[idx(p, q)] = x * y;
                                }
                            }
                        }
                        v
                    })
                    .collect(),
            ),
            _ => None,
        };
        FdHopf::new(FdAlgebra { field: f, labels, mult, unit }, comult, counit, antipode)
    }

    /// Re-expresses all structure constants in a larger compatible field.
    pub fn coerce(&self, f: &FieldDesc) -> Result<FdHopf, HopfError> {
        if self.field() == *f {
            return Ok(self.clone());
        }
        let cv = |v: &[Scalar]| -> Result<Vec<Scalar>, ScalarError> { v.iter().map(|x| x.coerce(f)).collect() };
        let cs = |v: &SVec| -> Result<SVec, ScalarError> { v.iter().map(|(k, x)| Ok((*k, x.coerce(f)?))).collect() };
        Ok(FdHopf {
            alg: FdAlgebra {
                field: *f,
                labels: self.alg.labels.clone(),
                mult: self.alg.mult.iter().map(|r| r.iter().map(&cs).collect()).collect::<Result<_, _>>()?,
                unit: cv(&self.alg.unit)?,
            },
            comult: self.comult.iter().map(&cs).collect::<Result<_, _>>()?,
            counit: cv(&self.counit)?,
            antipode: match &self.antipode {
                Some(s) => Some(s.iter().map(|r| cv(r)).collect::<Result<_, _>>()?),
                None => None,
            },
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    pub values: Vec<Scalar>,
}

#[derive(Clone, Debug)]
pub struct CharacterSet {
    pub characters: Vec<Character>,
    /// Every generator's minimal polynomial split over the candidate roots.
    pub complete: bool,
}

#[derive(Clone, Debug)]
pub struct GroupLikes {
    pub elements: Vec<Vec<Scalar>>,
    pub complete: bool,
    pub closed_under_multiplication: bool,
}

/// All algebra maps `alg → k` reachable from minimal-polynomial roots of a generating set.
pub fn characters(alg: &FdAlgebra, candidates: &[Scalar]) -> CharacterSet {
    let gens = alg.generators();
    characters_with_generators(alg, &gens, candidates)
}

pub fn characters_with_generators(alg: &FdAlgebra, gens: &[Vec<Scalar>], candidates: &[Scalar]) -> CharacterSet {
    let f = alg.field;
    let mut complete = true;
    let roots: Vec<Vec<Scalar>> = gens
        .iter()
        .map(|g| {
            let mp = alg.minimal_polynomial(g);
            let (rs, ok) = find_roots(&mp, &f, candidates);
            complete &= ok;
            rs.into_iter().map(|(r, _)| r).collect()
        })
        .collect();
    let cl = Closure::build(alg, gens);
    let Some(inv) = cl.basis_in_words(alg) else {
        return CharacterSet { characters: Vec::new(), complete: false };
    };
    let mut out = Vec::new();
    let mut vals: Vec<Scalar> = Vec::new();
    dfs_characters(alg, &cl, &inv, &roots, &mut vals, &mut out);
    CharacterSet { characters: out, complete }
}

fn dfs_characters(alg: &FdAlgebra, cl: &Closure, inv: &Matrix, roots: &[Vec<Scalar>], vals: &mut Vec<Scalar>, out: &mut Vec<Character>) {
    let f = alg.field;
    let k = vals.len();
    if k == roots.len() {
        let wv = cl.word_values(vals, &f, usize::MAX);
        let w: Vec<Scalar> = wv.into_iter().map(|x| x.expect("all words valued")).collect();
        // χ(e_i) = Σ_j inv[j][i]·χ(word_j), since e_i = Σ_j inv[j][i] word_j.
        let chi: Vec<Scalar> = (0..alg.dim())
            .map(|i| {
                let mut acc = f.zero();
                for (j, wj) in w.iter().enumerate() {
                    if !inv.data[j][i].is_zero() {
                        acc = &acc + &(&inv.data[j][i] * wj);
                    }
                }
                acc
            })
            .collect();
        if is_multiplicative(alg, &chi) {
            out.push(Character { values: chi });
        }
        return;
    }
    for r in &roots[k] {
        vals.push(r.clone());
        let wv = cl.word_values(vals, &f, k);
        let ok = cl.relations.iter().filter(|rel| rel.stage == k).all(|rel| {
            let (Some(lhs_w), Some(_)) = (&wv[rel.word], Some(())) else { return true };
            let lhs = &vals[rel.gen] * lhs_w;
            let mut rhs = f.zero();
            for (t, c) in rel.expr.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                match &wv[t] {
                    Some(v) => rhs = &rhs + &(c * v),
                    None => return true,
                }
            }
            lhs == rhs
        });
        if ok {
            dfs_characters(alg, cl, inv, roots, vals, out);
        }
        vals.pop();
    }
}

pub fn is_multiplicative(alg: &FdAlgebra, chi: &[Scalar]) -> bool {
    let f = alg.field;
    let d = alg.dim();
    if !crate::exactla::dot(chi, &alg.unit, &f).is_one() {
        return false;
    }
    (0..d).all(|i| {
        (0..d).all(|j| {
            let mut acc = f.zero();
            for (k, c) in &alg.mult[i][j] {
                acc = &acc + &(c * &chi[*k]);
            }
            acc == &chi[i] * &chi[j]
        })
    })
}

/// Kind of an iso-search generator.
#[derive(Clone, Debug)]
pub enum GenKind {
    GroupLike,
    /// `Δx = x⊗a + b⊗x` with `a`, `b` products of earlier group-like generators.
    Skew { a: Vec<usize>, b: Vec<usize> },
}

/// Noncommutative polynomial in the generators: `Σ c · g_{w₀} g_{w₁} ⋯`.
pub type NcPoly = Vec<(Scalar, Vec<usize>)>;

#[derive(Clone, Debug)]
pub struct GenSpec {
    pub names: Vec<String>,
    pub vectors: Vec<Vec<Scalar>>,
    pub kinds: Vec<GenKind>,
    pub relations: Vec<NcPoly>,
}

#[derive(Clone, Debug, Serialize)]
pub struct IsoResult {
    pub found: bool,
    /// Images of the generators, formatted in the target basis.
    pub images: Vec<String>,
    #[serde(skip)]
    pub matrix: Option<Matrix>,
    pub candidates_tried: usize,
    pub summary: String,
}

fn eval_word(alg: &FdAlgebra, imgs: &[Vec<Scalar>], w: &[usize]) -> Vec<Scalar> {
    w.iter().fold(alg.unit.clone(), |acc, &g| alg.mul(&acc, &imgs[g]))
}

fn eval_poly(alg: &FdAlgebra, imgs: &[Vec<Scalar>], p: &NcPoly) -> Vec<Scalar> {
    let mut out = alg.zero_vector();
    for (c, w) in p {
        axpy(&mut out, c, &eval_word(alg, imgs, w));
    }
    out
}

/// Depth-first search for a Hopf isomorphism sending the named generators of `h1`
/// to group-likes and skew-primitives of `h2`.
pub fn iso_search(h1: &FdHopf, h2: &FdHopf, spec: &GenSpec, candidates: &[Scalar]) -> Result<IsoResult, HopfError> {
    let f = h1.field().join(&h2.field())?;
    let h1 = h1.coerce(&f)?;
    let h2 = h2.coerce(&f)?;
    let n = spec.vectors.len();
    if spec.names.len() != n || spec.kinds.len() != n {
        return Err(HopfError::InconsistentSpec("names, vectors and kinds differ in length".into()));
    }
    let src: Vec<Vec<Scalar>> = spec.vectors.iter().map(|v| v.iter().map(|x| x.coerce(&f)).collect::<Result<_, _>>()).collect::<Result<_, _>>()?;
    for (k, kind) in spec.kinds.iter().enumerate() {
        let ok = match kind {
            GenKind::GroupLike => h1.is_group_like(&src[k]),
            GenKind::Skew { a, b } => {
                let av = eval_word(&h1.alg, &src, a);
                let bv = eval_word(&h1.alg, &src, b);
                h1.skew_primitives(&av, &bv).map(|p| p.contains(&src[k])).unwrap_or(false)
            }
        };
        if !ok {
            return Err(HopfError::InconsistentSpec(format!("generator {} has the wrong coproduct", spec.names[k])));
        }
    }
    for rel in &spec.relations {
        if !is_zero_vec(&eval_poly(&h1.alg, &src, rel)) {
            return Err(HopfError::InconsistentSpec("a relation fails in the source".into()));
        }
    }
    let cl1 = Closure::build(&h1.alg, &src);
    if cl1.words.len() != h1.dim() {
        return Err(HopfError::InconsistentSpec("generators do not generate the source".into()));
    }
    let mut res = IsoResult { found: false, images: Vec::new(), matrix: None, candidates_tried: 0, summary: String::new() };
    if h1.dim() != h2.dim() {
        res.summary = format!("dimensions differ ({} vs {})", h1.dim(), h2.dim());
        return Ok(res);
    }
    let gl = h2.group_likes(candidates);
    let mut imgs: Vec<Vec<Scalar>> = Vec::new();
    let mut st = IsoState { h1: &h1, h2: &h2, spec, src: &src, cl1: &cl1, group_likes: &gl.elements, tried: 0 };
    let found = st.dfs(&mut imgs);
    res.candidates_tried = st.tried;
    match found {
        Some(m) => {
            res.found = true;
            res.images = imgs.iter().map(|v| h2.alg.label_of(v)).collect();
            res.matrix = Some(m);
            res.summary = format!("isomorphism found after {} candidate assignments", res.candidates_tried);
        }
        None => {
            res.summary = format!(
                "no isomorphism among {} group-like images and skew-primitive solution spaces ({} assignments tried)",
                gl.elements.len(),
                res.candidates_tried
            );
        }
    }
    Ok(res)
}

struct IsoState<'a> {
    h1: &'a FdHopf,
    h2: &'a FdHopf,
    spec: &'a GenSpec,
    src: &'a [Vec<Scalar>],
    cl1: &'a Closure,
    group_likes: &'a [Vec<Scalar>],
    tried: usize,
}

impl IsoState<'_> {
    fn relations_hold(&self, imgs: &[Vec<Scalar>]) -> bool {
        let k = imgs.len();
        self.spec
            .relations
            .iter()
            .filter(|p| p.iter().all(|(_, w)| w.iter().all(|&g| g < k)))
            .all(|p| is_zero_vec(&eval_poly(&self.h2.alg, imgs, p)))
    }

    fn skew_candidates(&self, imgs: &[Vec<Scalar>], a: &[usize], b: &[usize]) -> Vec<Vec<Scalar>> {
        let alg = &self.h2.alg;
        let k = imgs.len();
        let av = eval_word(alg, imgs, a);
        let bv = eval_word(alg, imgs, b);
        let Ok(p) = self.h2.skew_primitives(&av, &bv) else { return Vec::new() };
        // Relations linear in the new generator cut the space down further.
        let mut space = p;
        for rel in &self.spec.relations {
            let linear = rel.iter().all(|(_, w)| w.iter().filter(|&&g| g == k).count() == 1 && w.iter().all(|&g| g <= k));
            if !linear {
                continue;
            }
            let d = alg.dim();
            let mut cols = Vec::with_capacity(space.dim());
            for basis in &space.basis {
                let mut with = imgs.to_vec();
                with.push(basis.clone());
                cols.push(eval_poly(alg, &with, rel));
            }
            let mut m = Matrix::zeros(alg.field, d, cols.len());
            for (c, col) in cols.iter().enumerate() {
                for r in 0..d {
                    m.data[r][c] = col[r].clone();
                }
            }
            let ker = m.kernel();
            let vecs: Vec<Vec<Scalar>> = ker
                .iter()
                .map(|coef| {
                    let mut v = alg.zero_vector();
                    for (c, b) in coef.iter().zip(&space.basis) {
                        axpy(&mut v, c, b);
                    }
                    v
                })
                .collect();
            space = Subspace::span(alg.field, d, &vecs);
        }
        let trivial = Subspace::span(alg.field, alg.dim(), &[bv.iter().zip(&av).map(|(x, y)| x - y).collect()]);
        let mut cands: Vec<Vec<Scalar>> = space.basis.iter().filter(|v| !trivial.contains(v)).cloned().collect();
        let extra: Vec<Vec<Scalar>> = (0..space.dim())
            .flat_map(|i| (i + 1..space.dim()).map(move |j| (i, j)))
            .map(|(i, j)| space.basis[i].iter().zip(&space.basis[j]).map(|(x, y)| x + y).collect())
            .collect();
        cands.extend(extra.into_iter().filter(|v: &Vec<Scalar>| !trivial.contains(v)));
        cands
    }

    fn dfs(&mut self, imgs: &mut Vec<Vec<Scalar>>) -> Option<Matrix> {
        let k = imgs.len();
        if k == self.spec.kinds.len() {
            self.tried += 1;
            return self.certify(imgs);
        }
        let cands = match &self.spec.kinds[k] {
            GenKind::GroupLike => self.group_likes.to_vec(),
            GenKind::Skew { a, b } => self.skew_candidates(imgs, a, b),
        };
        for c in cands {
            imgs.push(c);
            if self.relations_hold(imgs) {
                if let Some(m) = self.dfs(imgs) {
                    return Some(m);
                }
            }
            imgs.pop();
        }
        None
    }

    /// Extends generator images along words and certifies a bijective Hopf map.
    fn certify(&self, imgs: &[Vec<Scalar>]) -> Option<Matrix> {
        let (a1, a2) = (&self.h1.alg, &self.h2.alg);
        let d = a1.dim();
        let f = a1.field;
        let mut word_imgs: Vec<Vec<Scalar>> = Vec::with_capacity(d);
        for w in &self.cl1.words {
            let v = match w.origin {
                None => a2.unit.clone(),
                Some((g, p)) => a2.mul(&imgs[g], &word_imgs[p]),
            };
            word_imgs.push(v);
        }
        let inv = self.cl1.basis_in_words(a1)?;
        // φ(e_i) = Σ_j inv[j][i] φ(word_j); store as columns.
        let mut phi = Matrix::zeros(f, d, d);
        let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(d);
        for i in 0..d {
            let mut v = a2.zero_vector();
            for (j, wi) in word_imgs.iter().enumerate() {
                axpy(&mut v, &inv.data[j][i], wi);
            }
            for r in 0..d {
                phi.data[r][i] = v[r].clone();
            }
            cols.push(v);
        }
        if phi.rank() != d {
            return None;
        }
        let apply = |v: &[Scalar]| -> Vec<Scalar> {
            let mut out = a2.zero_vector();
            for (i, x) in v.iter().enumerate() {
                axpy(&mut out, x, &cols[i]);
            }
            out
        };
        for x in self.src {
            let px = apply(x);
            for b in 0..d {
                let lhs = apply(&a1.mul(x, &a1.basis_vector(b)));
                if lhs != a2.mul(&px, &cols[b]) {
                    return None;
                }
            }
            if self.h2.counit_of(&px) != self.h1.counit_of(x) {
                return None;
            }
            let lhs = self.h2.comult_of(&px);
            let mut rhs = TVec::new();
            for (k, c) in self.h1.comult_of(x) {
                let (i, j) = (k / d, k % d);
                for (p, u) in cols[i].iter().enumerate() {
                    if u.is_zero() {
                        continue;
                    }
                    for (q, v) in cols[j].iter().enumerate() {
                        if !v.is_zero() {
                            tadd(&mut rhs, flat(p, q, d), &c * &(u * v));
                        }
                    }
                }
            }
            if !tvec_eq(&lhs, &rhs) {
                return None;
            }
        }
        Some(phi)
    }
}

/// Structure-constant file shared with the command line.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HopfFile {
    pub field: FieldDesc,
    pub basis: Vec<String>,
    pub mult: Vec<(usize, usize, usize, String)>,
    pub unit: Vec<String>,
    pub comult: Vec<(usize, usize, usize, String)>,
    pub counit: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antipode: Option<Vec<Vec<String>>>,
}

impl HopfFile {
    pub fn from_hopf(h: &FdHopf) -> HopfFile {
        let d = h.dim();
        let mut mult = Vec::new();
        for i in 0..d {
            for j in 0..d {
                for (k, c) in &h.alg.mult[i][j] {
                    mult.push((i, j, *k, c.to_string()));
                }
            }
        }
        let mut comult = Vec::new();
        for (i, row) in h.comult.iter().enumerate() {
            for (k, c) in row {
                comult.push((i, k / d, k % d, c.to_string()));
            }
        }
        let s = |v: &[Scalar]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        HopfFile {
            field: h.field(),
            basis: h.alg.labels.clone(),
            mult,
            unit: s(&h.alg.unit),
            comult,
            counit: s(&h.counit),
            antipode: h.antipode.as_ref().map(|m| m.iter().map(|r| s(r)).collect()),
        }
    }

    pub fn to_hopf(&self) -> Result<FdHopf, HopfError> {
        let f = self.field;
        let d = self.basis.len();
        let p = |s: &str| Scalar::parse(s, &f);
        let vec = |v: &[String], what: &str| -> Result<Vec<Scalar>, HopfError> {
            if v.len() != d {
                return Err(HopfError::File(format!("{what} has length {} but the basis has {d} elements", v.len())));
            }
            Ok(v.iter().map(|s| p(s)).collect::<Result<_, _>>()?)
        };
        let mut mult: Vec<Vec<TVec>> = vec![vec![TVec::new(); d]; d];
        for (i, j, k, c) in &self.mult {
            if *i >= d || *j >= d || *k >= d {
                return Err(HopfError::File(format!("mult index ({i},{j},{k}) out of range")));
            }
            tadd(&mut mult[*i][*j], *k, p(c)?);
        }
        let mut comult: Vec<TVec> = vec![TVec::new(); d];
        for (i, j, k, c) in &self.comult {
            if *i >= d || *j >= d || *k >= d {
                return Err(HopfError::File(format!("comult index ({i},{j},{k}) out of range")));
            }
            tadd(&mut comult[*i], flat(*j, *k, d), p(c)?);
        }
        let antipode = match &self.antipode {
            Some(rows) => {
                if rows.len() != d {
                    return Err(HopfError::File("antipode must have one row per basis element".into()));
                }
                Some(rows.iter().map(|r| vec(r, "antipode row")).collect::<Result<_, _>>()?)
            }
            None => None,
        };
        FdHopf::new(
            FdAlgebra {
                field: f,
                labels: self.basis.clone(),
                mult: mult.into_iter().map(|r| r.into_iter().map(|t| t.into_iter().collect()).collect()).collect(),
                unit: vec(&self.unit, "unit")?,
            },
            comult.into_iter().map(|t| t.into_iter().collect()).collect(),
            vec(&self.counit, "counit")?,
            antipode,
        )
    }
}

/// Sparse vector helper for callers building tensors.
pub fn svec_from_dense(v: &[Scalar]) -> SVec {
    dense_to_sparse(v)
}
