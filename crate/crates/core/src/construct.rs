//! Group algebras, Taft algebras, restricted enveloping algebras, quotients and smash/crossed products.

use crate::exactla::{axpy, dense_to_sparse, is_zero_vec, Matrix, SVec, Subspace};
use crate::hopf::{Check, FdAlgebra, FdHopf, HopfError, HopfReport, TVec};
use crate::scalars::{FieldDesc, Scalar, ScalarError};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConstructError {
    #[error("invalid group table: {0}")]
    InvalidTable(String),
    #[error("invalid restricted Lie algebra: {0}")]
    InvalidLie(String),
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error("not a Hopf ideal: {0} fails")]
    NotHopfIdeal(String),
    #[error("not a subalgebra: {0}")]
    NotSubalgebra(String),
    #[error("module-algebra law fails: {0}")]
    ModuleAlgebra(String),
    #[error("cocycle condition violated: {0}")]
    Cocycle(String),
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Finite group by multiplication table.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupTable {
    pub labels: Vec<String>,
    pub mult: Vec<Vec<usize>>,
    #[serde(default)]
    pub inverse: Vec<usize>,
    #[serde(default)]
    pub identity: usize,
}

impl GroupTable {
    /// Validates a table and fills identity and inverses.
    pub fn new(labels: Vec<String>, mult: Vec<Vec<usize>>) -> Result<GroupTable, ConstructError> {
        let n = labels.len();
        if n == 0 || mult.len() != n || mult.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(ConstructError::InvalidTable("table must be square with entries in range".into()));
        }
        let identity = (0..n).find(|&e| (0..n).all(|g| mult[e][g] == g && mult[g][e] == g)).ok_or_else(|| ConstructError::InvalidTable("no identity".into()))?;
        let mut inverse = Vec::with_capacity(n);
        for g in 0..n {
            let h = (0..n).find(|&h| mult[g][h] == identity && mult[h][g] == identity).ok_or_else(|| ConstructError::InvalidTable(format!("{} has no inverse", labels[g])))?;
            inverse.push(h);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mult[mult[a][b]][c] != mult[a][mult[b][c]] {
                        return Err(ConstructError::InvalidTable(format!("associativity fails at ({}, {}, {})", labels[a], labels[b], labels[c])));
                    }
                }
            }
        }
        Ok(GroupTable { labels, mult, inverse, identity })
    }

    /// Re-validates a deserialized table.
    pub fn validated(self) -> Result<GroupTable, ConstructError> {
        GroupTable::new(self.labels, self.mult)
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn cyclic(n: usize) -> GroupTable {
        let labels = (0..n).map(|i| if i == 0 { "1".to_string() } else if i == 1 { "g".into() } else { format!("g^{i}") }).collect();
        let mult = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        GroupTable::new(labels, mult).expect("cyclic table")
    }

    /// Dihedral group of order `2n`, elements `r^i s^j` at index `2i + j`.
    pub fn dihedral(n: usize) -> GroupTable {
        let idx = |i: usize, j: usize| 2 * (i % n) + j;
        let mut labels = Vec::new();
        for i in 0..n {
            for j in 0..2 {
                labels.push(match (i, j) {
                    (0, 0) => "1".to_string(),
                    (0, 1) => "s".into(),
                    (i, 0) => format!("r^{i}"),
                    (i, _) => format!("r^{i}s"),
                });
            }
        }
        let mut mult = vec![vec![0; 2 * n]; 2 * n];
        for i in 0..n {
            for j in 0..2 {
                for k in 0..n {
                    for l in 0..2 {
                        // r^i s^j r^k s^l = r^{i ± k} s^{j+l}
                        let rk = if j == 0 { i + k } else { i + n - k };
                        mult[idx(i, j)][idx(k, l)] = idx(rk, (j + l) % 2);
                    }
                }
            }
        }
        GroupTable::new(labels, mult).expect("dihedral table")
    }

    pub fn direct_product(&self, other: &GroupTable) -> GroupTable {
        let (n, m) = (self.order(), other.order());
        let mut labels = Vec::new();
        for a in &self.labels {
            for b in &other.labels {
                labels.push(format!("({a},{b})"));
            }
        }
        let mult = (0..n * m).map(|x| (0..n * m).map(|y| self.mult[x / m][y / m] * m + other.mult[x % m][y % m]).collect()).collect();
        GroupTable::new(labels, mult).expect("product table")
    }
}

pub fn group_algebra(g: &GroupTable, field: FieldDesc) -> Result<FdHopf, ConstructError> {
    let g = g.clone().validated()?;
    let n = g.order();
    let one = field.one();
    let mult = (0..n).map(|a| (0..n).map(|b| vec![(g.mult[a][b], one.clone())]).collect()).collect();
    let mut unit = vec![field.zero(); n];
    unit[g.identity] = one.clone();
    let comult = (0..n).map(|a| vec![(a * n + a, one.clone())]).collect();
    let counit = vec![one.clone(); n];
    let antipode = (0..n)
        .map(|a| {
            let mut v = vec![field.zero(); n];
            v[g.inverse[a]] = one.clone();
            v
        })
        .collect();
    Ok(FdHopf::new(FdAlgebra { field, labels: g.labels.clone(), mult, unit }, comult, counit, Some(antipode))?)
}

/// Nilpotency index of `x` in the Taft algebra with parameters `(n, t, q)`: the order of `q^t`.
pub fn taft_nilpotency(n: usize, t: usize, q: &Scalar) -> Result<usize, ConstructError> {
    let ord = q.root_order().ok_or_else(|| ConstructError::Parameter(format!("{q} is not a root of unity")))?;
    if ord as usize != n {
        return Err(ConstructError::Parameter(format!("q = {q} has order {ord}, expected {n}")));
    }
    if t == 0 {
        return Err(ConstructError::Parameter("t must be positive".into()));
    }
    Ok(q.pow(t as i64).root_order().expect("root of unity") as usize)
}

/// Truncated Taft algebra: `gⁿ = 1`, `xg = q gx`, `Δx = x⊗1 + gᵗ⊗x`, `x^{n'} = 0` with `n' = ord(qᵗ)`.
/// Basis `gⁱxʲ` at index `i·n' + j`.
pub fn taft_fd(n: usize, t: usize, q: &Scalar, field: FieldDesc) -> Result<FdHopf, ConstructError> {
    let q = q.coerce(&field)?;
    let m = taft_nilpotency(n, t, &q)?;
    let d = n * m;
    let idx = |i: usize, j: usize| (i % n) * m + j;
    let mut labels = Vec::with_capacity(d);
    for i in 0..n {
        for j in 0..m {
            labels.push(match (i, j) {
                (0, 0) => "1".to_string(),
                (0, j) => mono("x", j),
                (i, 0) => mono("g", i),
                (i, j) => format!("{}{}", mono("g", i), mono("x", j)),
            });
        }
    }
    let mut mult = vec![vec![SVec::new(); d]; d];
    for i in 0..n {
        for j in 0..m {
            for k in 0..n {
                for l in 0..m {
                    if j + l < m {
                        mult[idx(i, j)][idx(k, l)] = vec![(idx(i + k, j + l), q.pow((j * k) as i64))];
                    }
                }
            }
        }
    }
    let mut unit = vec![field.zero(); d];
    unit[0] = field.one();
    let mut counit = vec![field.zero(); d];
    for i in 0..n {
        counit[idx(i, 0)] = field.one();
    }
    let alg = FdAlgebra { field, labels, mult, unit };
    // Δ(gⁱxʲ) = Δ(g)ⁱ Δ(x)ʲ expanded in H⊗H.
    let skeleton = FdHopf { alg: alg.clone(), comult: vec![SVec::new(); d], counit: counit.clone(), antipode: None };
    let mut dg = TVec::new();
    dg.insert(idx(1, 0) * d + idx(1, 0), field.one());
    let mut dx = TVec::new();
    dx.insert(idx(0, 1) * d + idx(0, 0), field.one());
    dx.insert(idx(t, 0) * d + idx(0, 1), field.one());
    let mut one_t = TVec::new();
    one_t.insert(0, field.one());
    let mut comult = vec![SVec::new(); d];
    let mut gi = one_t.clone();
    for i in 0..n {
        let mut cur = gi.clone();
        for j in 0..m {
            comult[idx(i, j)] = cur.clone().into_iter().collect();
            if m > 1 {
                cur = skeleton.tensor_mul(&cur, &dx);
            }
        }
        gi = skeleton.tensor_mul(&gi, &dg);
    }
    // S(gⁱxʲ) = S(x)ʲ S(g)ⁱ with S(g) = g⁻¹, S(x) = −g^{−t}x.
    let g_inv = alg.basis_vector(idx(n - 1, 0));
    let mut sx = alg.zero_vector();
    sx[idx(n - (t % n), 1 % m)] = if m > 1 { -&field.one() } else { field.zero() };
    let antipode = (0..d)
        .map(|ij| {
            let (i, j) = (ij / m, ij % m);
            let left = alg.pow(&sx, j);
            alg.mul(&left, &alg.pow(&g_inv, i))
        })
        .collect();
    Ok(FdHopf::new(alg, comult, counit, Some(antipode))?)
}

fn mono(v: &str, e: usize) -> String {
    if e == 1 {
        v.to_string()
    } else {
        format!("{v}^{e}")
    }
}

/// Restricted Lie algebra by structure constants.
#[derive(Clone, Debug)]
pub struct RestrictedLie {
    pub p: u64,
    pub labels: Vec<String>,
    /// `[x_i, x_j] = Σ brackets[i][j]_k x_k`.
    pub brackets: Vec<Vec<Vec<Scalar>>>,
    pub p_map: Vec<Vec<Scalar>>,
}

impl RestrictedLie {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn field(&self) -> FieldDesc {
        FieldDesc::PrimeField(self.p)
    }

    /// `sl₂` with basis `e, h, f`, `e^[p] = f^[p] = 0`, `h^[p] = h`.
    pub fn sl2(p: u64) -> Result<RestrictedLie, ConstructError> {
        let f = FieldDesc::prime(p)?;
        let v = |a: i64, b: i64, c: i64| vec![f.from_i64(a), f.from_i64(b), f.from_i64(c)];
        let z = v(0, 0, 0);
        let brackets = vec![vec![z.clone(), v(-2, 0, 0), v(0, 1, 0)], vec![v(2, 0, 0), z.clone(), v(0, 0, -2)], vec![v(0, -1, 0), v(0, 0, 2), z.clone()]];
        let l = RestrictedLie { p, labels: vec!["e".into(), "h".into(), "f".into()], brackets, p_map: vec![z.clone(), v(0, 1, 0), z] };
        l.check()?;
        Ok(l)
    }

    /// Abelian algebra with zero `p`-map.
    pub fn abelian(n: usize, p: u64) -> Result<RestrictedLie, ConstructError> {
        let f = FieldDesc::prime(p)?;
        let z = vec![f.zero(); n];
        Ok(RestrictedLie {
            p,
            labels: (1..=n).map(|i| if n == 1 { "x".to_string() } else { format!("x{i}") }).collect(),
            brackets: vec![vec![z.clone(); n]; n],
            p_map: vec![z; n],
        })
    }

    fn bracket(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let f = self.field();
        let mut out = vec![f.zero(); self.dim()];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                if !x.is_zero() && !y.is_zero() {
                    axpy(&mut out, &(x * y), &self.brackets[i][j]);
                }
            }
        }
        out
    }

    /// Antisymmetry, Jacobi and `ad(x^[p]) = ad(x)^p` on basis elements.
    pub fn check(&self) -> Result<(), ConstructError> {
        let n = self.dim();
        let f = self.field();
        if self.brackets.len() != n || self.p_map.len() != n || !crate::scalars::is_prime(self.p) {
            return Err(ConstructError::InvalidLie("shape mismatch".into()));
        }
        let e = |i: usize| {
            let mut v = vec![f.zero(); n];
            v[i] = f.one();
            v
        };
        for i in 0..n {
            if !is_zero_vec(&self.bracket(&e(i), &e(i))) {
                return Err(ConstructError::InvalidLie(format!("[{0},{0}] ≠ 0", self.labels[i])));
            }
            for j in 0..n {
                let s: Vec<Scalar> = self.bracket(&e(i), &e(j)).iter().zip(self.bracket(&e(j), &e(i))).map(|(a, b)| a + &b).collect();
                if !is_zero_vec(&s) {
                    return Err(ConstructError::InvalidLie(format!("antisymmetry at ({}, {})", self.labels[i], self.labels[j])));
                }
                for k in 0..n {
                    let mut acc = self.bracket(&e(i), &self.bracket(&e(j), &e(k)));
                    axpy(&mut acc, &f.one(), &self.bracket(&e(j), &self.bracket(&e(k), &e(i))));
                    axpy(&mut acc, &f.one(), &self.bracket(&e(k), &self.bracket(&e(i), &e(j))));
                    if !is_zero_vec(&acc) {
                        return Err(ConstructError::InvalidLie(format!("Jacobi at ({}, {}, {})", self.labels[i], self.labels[j], self.labels[k])));
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let mut lhs = e(j);
                for _ in 0..self.p {
                    lhs = self.bracket(&e(i), &lhs);
                }
                if lhs != self.bracket(&self.p_map[i], &e(j)) {
                    return Err(ConstructError::InvalidLie(format!("restrictedness at ({}, {})", self.labels[i], self.labels[j])));
                }
            }
        }
        Ok(())
    }
}

type Mono = Vec<u32>;
type Comb = BTreeMap<Mono, Scalar>;

fn comb_add(acc: &mut Comb, m: Mono, c: Scalar) {
    if c.is_zero() {
        return;
    }
    let zero = acc.get(&m).map(|x| (x + &c).is_zero());
    match zero {
        Some(true) => {
            acc.remove(&m);
        }
        Some(false) => {
            let e = acc.get_mut(&m).expect("present");
            *e = &*e + &c;
        }
        None => {
            acc.insert(m, c);
        }
    }
}

/// PBW normal forms in `u(L)` with the order `x₁ < … < xₙ`.
struct Pbw<'a> {
    l: &'a RestrictedLie,
    memo: HashMap<(usize, Mono), Comb>,
}

impl Pbw<'_> {
    /// Normal form of `x_i · x^a`.
    fn gen_times(&mut self, i: usize, a: &Mono) -> Comb {
        if let Some(c) = self.memo.get(&(i, a.clone())) {
            return c.clone();
        }
        let f = self.l.field();
        let p = self.l.p as u32;
        let mut out = Comb::new();
        match (0..i).find(|&j| a[j] > 0) {
            None => {
                let mut b = a.clone();
                b[i] += 1;
                if b[i] < p {
                    out.insert(b, f.one());
                } else {
                    b[i] = 0;
                    for (k, c) in self.l.p_map[i].clone().iter().enumerate() {
                        if !c.is_zero() {
                            for (m, v) in self.gen_times(k, &b) {
                                comb_add(&mut out, m, c * &v);
                            }
                        }
                    }
                }
            }
            Some(j) => {
                // x_i x_j r = x_j (x_i r) + [x_i, x_j] r with r = x^{a − e_j}.
                let mut r = a.clone();
                r[j] -= 1;
                for (m, v) in self.gen_times(i, &r) {
                    for (m2, v2) in self.gen_times(j, &m) {
                        comb_add(&mut out, m2, &v * &v2);
                    }
                }
                for (k, c) in self.l.brackets[i][j].clone().iter().enumerate() {
                    if !c.is_zero() {
                        for (m, v) in self.gen_times(k, &r) {
                            comb_add(&mut out, m, c * &v);
                        }
                    }
                }
            }
        }
        self.memo.insert((i, a.clone()), out.clone());
        out
    }

    fn times_comb(&mut self, i: usize, c: &Comb) -> Comb {
        let mut out = Comb::new();
        for (m, v) in c {
            for (m2, v2) in self.gen_times(i, m) {
                comb_add(&mut out, m2, v * &v2);
            }
        }
        out
    }
}

/// Restricted enveloping algebra with PBW basis `x^a`, `0 ≤ aᵢ < p`, index `Σ aᵢ p^{n−1−i}`.
pub fn restricted_enveloping(l: &RestrictedLie) -> Result<FdHopf, ConstructError> {
    l.check()?;
    let f = l.field();
    let n = l.dim();
    let p = l.p as u32;
    let d = (p as usize).pow(n as u32);
    let monos: Vec<Mono> = (0..d)
        .map(|mut k| {
            let mut m = vec![0u32; n];
            for i in (0..n).rev() {
                m[i] = (k % p as usize) as u32;
                k /= p as usize;
            }
            m
        })
        .collect();
    let index = |m: &Mono| m.iter().fold(0usize, |acc, &e| acc * p as usize + e as usize);
    let labels: Vec<String> = monos
        .iter()
        .map(|m| {
            let parts: Vec<String> = m.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, &e)| mono(&l.labels[i], e as usize)).collect();
            if parts.is_empty() {
                "1".into()
            } else {
                parts.join("")
            }
        })
        .collect();
    let mut pbw = Pbw { l, memo: HashMap::new() };
    let mut mult = vec![vec![SVec::new(); d]; d];
    for a in &monos {
        for b in &monos {
            let mut c: Comb = Comb::new();
            c.insert(b.clone(), f.one());
            for i in (0..n).rev() {
                for _ in 0..a[i] {
                    c = pbw.times_comb(i, &c);
                }
            }
            mult[index(a)][index(b)] = c.into_iter().map(|(m, v)| (index(&m), v)).collect();
        }
    }
    let mut unit = vec![f.zero(); d];
    unit[0] = f.one();
    let mut counit = vec![f.zero(); d];
    counit[0] = f.one();
    let comult = monos
        .iter()
        .map(|a| {
            let mut out = Vec::new();
            for b in &monos {
                if b.iter().zip(a).all(|(x, y)| x <= y) {
                    let c = b.iter().zip(a).fold(1u64, |acc, (&x, &y)| acc * binom(y as u64, x as u64) % l.p);
                    if c != 0 {
                        let rest: Mono = a.iter().zip(b).map(|(y, x)| y - x).collect();
                        out.push((index(b) * d + index(&rest), f.from_i64(c as i64)));
                    }
                }
            }
            out.sort_by_key(|(k, _)| *k);
            out
        })
        .collect();
    let alg = FdAlgebra { field: f, labels, mult, unit };
    // S(x^a) = (−xₙ)^{aₙ} ⋯ (−x₁)^{a₁}.
    let antipode = monos
        .iter()
        .map(|a| {
            let mut v = alg.unit.clone();
            for i in (0..n).rev() {
                let mut g = vec![0u32; n];
                g[i] = 1;
                let mut xi = alg.zero_vector();
                xi[index(&g)] = -&f.one();
                for _ in 0..a[i] {
                    v = alg.mul(&v, &xi);
                }
            }
            v
        })
        .collect();
    Ok(FdHopf::new(alg, comult, counit, Some(antipode))?)
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

pub fn augmentation_ideal(h: &FdHopf) -> Subspace {
    let m = Matrix { field: h.field(), rows: 1, cols: h.dim(), data: vec![h.counit.clone()] };
    Subspace::span(h.field(), h.dim(), &m.kernel())
}

/// Smallest two-sided ideal containing `gens`.
pub fn two_sided_ideal(alg: &FdAlgebra, gens: &[Vec<Scalar>]) -> Subspace {
    ideal_closure(alg, gens, true, true)
}

/// `gens · alg`.
pub fn right_ideal(alg: &FdAlgebra, gens: &[Vec<Scalar>]) -> Subspace {
    ideal_closure(alg, gens, false, true)
}

fn ideal_closure(alg: &FdAlgebra, gens: &[Vec<Scalar>], left: bool, right: bool) -> Subspace {
    let d = alg.dim();
    let mut ech = crate::exactla::Echelon::new(alg.field, d);
    let mut queue: Vec<Vec<Scalar>> = gens.to_vec();
    let mut found = Vec::new();
    let mults = alg.generators();
    let right = right && !(left && alg.is_commutative());
    while let Some(v) = queue.pop() {
        if ech.insert(&v).is_err() {
            continue;
        }
        for e in &mults {
            if left {
                queue.push(alg.mul(e, &v));
            }
            if right {
                queue.push(alg.mul(&v, e));
            }
        }
        found.push(v);
    }
    Subspace::span(alg.field, d, &found)
}

/// Which side an adjoint action acts from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Action of a Hopf algebra on a finite-dimensional space: `act[h][a] = e_h · e_a`.
#[derive(Clone, Debug)]
pub struct ModAction {
    pub act: Vec<Vec<Vec<Scalar>>>,
}

impl ModAction {
    pub fn apply(&self, h: &[Scalar], a: &[Scalar], f: &FieldDesc) -> Vec<Scalar> {
        let n = self.act.first().map_or(0, |r| r.first().map_or(0, |v| v.len()));
        let mut out = vec![f.zero(); n];
        for (i, x) in h.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in a.iter().enumerate() {
                if !y.is_zero() {
                    axpy(&mut out, &(x * y), &self.act[i][j]);
                }
            }
        }
        out
    }

    /// Action through the counit.
    pub fn trivial(h: &FdHopf, dim: usize) -> ModAction {
        let f = h.field();
        ModAction {
            act: (0..h.dim())
                .map(|i| {
                    (0..dim)
                        .map(|j| {
                            let mut v = vec![f.zero(); dim];
                            v[j] = h.counit[i].clone();
                            v
                        })
                        .collect()
                })
                .collect(),
        }
    }

    /// Group algebra acting through basis permutations/automorphisms given per group element.
    pub fn from_group_images(images: Vec<Vec<Vec<Scalar>>>) -> ModAction {
        ModAction { act: images }
    }
}

pub fn adjoint_action(h: &FdHopf, side: Side) -> Result<ModAction, ConstructError> {
    let s = h.antipode.as_ref().ok_or_else(|| ConstructError::Parameter("adjoint action needs an antipode".into()))?;
    let d = h.dim();
    let alg = &h.alg;
    let act = (0..d)
        .map(|i| {
            (0..d)
                .map(|k| {
                    let ek = alg.basis_vector(k);
                    let mut out = alg.zero_vector();
                    for (idx, c) in &h.comult[i] {
                        let (a, b) = (idx / d, idx % d);
                        let v = match side {
                            Side::Left => alg.mul(&alg.mul(&alg.basis_vector(a), &ek), &s[b]),
                            Side::Right => alg.mul(&alg.mul(&s[a], &ek), &alg.basis_vector(b)),
                        };
                        axpy(&mut out, c, &v);
                    }
                    out
                })
                .collect()
        })
        .collect();
    Ok(ModAction { act })
}

#[derive(Clone, Debug, Serialize)]
pub struct NormalityReport {
    pub normal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<String>,
}

pub fn is_subalgebra(alg: &FdAlgebra, k: &Subspace) -> Result<(), ConstructError> {
    if k.ambient != alg.dim() {
        return Err(ConstructError::NotSubalgebra("ambient dimension differs".into()));
    }
    if !k.contains(&alg.unit) {
        return Err(ConstructError::NotSubalgebra("does not contain 1".into()));
    }
    for a in &k.basis {
        for b in &k.basis {
            if !k.contains(&alg.mul(a, b)) {
                return Err(ConstructError::NotSubalgebra(format!("{} · {} leaves the subspace", alg.label_of(a), alg.label_of(b))));
            }
        }
    }
    Ok(())
}

/// Stability of a subalgebra under both adjoint actions.
pub fn is_normal(h: &FdHopf, k: &Subspace) -> Result<NormalityReport, ConstructError> {
    is_subalgebra(&h.alg, k)?;
    let f = h.field();
    for side in [Side::Left, Side::Right] {
        let ad = adjoint_action(h, side)?;
        for i in 0..h.dim() {
            for v in &k.basis {
                if !k.contains(&ad.apply(&h.alg.basis_vector(i), v, &f)) {
                    return Ok(NormalityReport {
                        normal: false,
                        violation: Some(format!("ad_{}({})({})", if side == Side::Left { "l" } else { "r" }, h.alg.labels[i], h.alg.label_of(v))),
                    });
                }
            }
        }
    }
    Ok(NormalityReport { normal: true, violation: None })
}

/// Quotient by a verified Hopf ideal, on the complement basis of `i`.
pub fn quotient_hopf(h: &FdHopf, ideal: &Subspace) -> Result<FdHopf, ConstructError> {
    let d = h.dim();
    let f = h.field();
    let alg = &h.alg;
    for v in &ideal.basis {
        for j in 0..d {
            let e = alg.basis_vector(j);
            if !ideal.contains(&alg.mul(&e, v)) || !ideal.contains(&alg.mul(v, &e)) {
                return Err(ConstructError::NotHopfIdeal("two-sided ideal".into()));
            }
        }
    }
    let keep = ideal.complement_indices();
    let q = keep.len();
    let project = |v: &[Scalar]| -> Vec<Scalar> {
        let r = ideal.residual(v);
        keep.iter().map(|&i| r[i].clone()).collect()
    };
    // Δ(I) ⊆ I⊗H + H⊗I: project each tensor factor and require zero.
    let project_tensor = |t: &TVec| -> BTreeMap<(usize, usize), Scalar> {
        let mut out: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        let proj_basis: Vec<Vec<Scalar>> = (0..d).map(|i| project(&alg.basis_vector(i))).collect();
        for (k, c) in t {
            let (a, b) = (k / d, k % d);
            for (x, u) in proj_basis[a].iter().enumerate() {
                if u.is_zero() {
                    continue;
                }
                for (y, w) in proj_basis[b].iter().enumerate() {
                    if !w.is_zero() {
                        let e = out.entry((x, y)).or_insert_with(|| f.zero());
                        *e = &*e + &(c * &(u * w));
                    }
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    };
    for v in &ideal.basis {
        if !project_tensor(&h.comult_of(v)).is_empty() {
            return Err(ConstructError::NotHopfIdeal("coideal".into()));
        }
        if !h.counit_of(v).is_zero() {
            return Err(ConstructError::NotHopfIdeal("counit".into()));
        }
        if let Some(sv) = h.antipode_of(v) {
            if !ideal.contains(&sv) {
                return Err(ConstructError::NotHopfIdeal("antipode".into()));
            }
        }
    }
    let mult = keep
        .iter()
        .map(|&a| keep.iter().map(|&b| dense_to_sparse(&project(&crate::hopf::sparse_dense(&alg.mult[a][b], d, &f)))).collect())
        .collect();
    let comult = keep
        .iter()
        .map(|&a| {
            let t: TVec = h.comult[a].iter().cloned().collect();
            project_tensor(&t).into_iter().map(|((x, y), c)| (x * q + y, c)).collect()
        })
        .collect();
    let antipode = h.antipode.as_ref().map(|s| keep.iter().map(|&a| project(&s[a])).collect());
    let quotient = FdHopf::new(
        FdAlgebra { field: f, labels: keep.iter().map(|&i| alg.labels[i].clone()).collect(), mult, unit: project(&alg.unit) },
        comult,
        keep.iter().map(|&i| h.counit[i].clone()).collect(),
        antipode,
    )?;
    Ok(quotient)
}

#[derive(Clone, Debug, Serialize)]
pub struct ModuleAlgebraReport {
    pub module: Check,
    pub multiplicative: Check,
    pub unital: Check,
}

impl ModuleAlgebraReport {
    pub fn passes(&self) -> bool {
        self.module.pass && self.multiplicative.pass && self.unital.pass
    }
}

/// Module-algebra axioms of `act` on basis triples.
pub fn module_algebra_check(t: &FdHopf, r: &FdAlgebra, act: &ModAction) -> ModuleAlgebraReport {
    let f = t.field();
    let (dt, dr) = (t.dim(), r.dim());
    let shape_ok = act.act.len() == dt && act.act.iter().all(|row| row.len() == dr && row.iter().all(|v| v.len() == dr));
    if !shape_ok {
        let bad = Check::fail("action tensor has the wrong shape".into());
        return ModuleAlgebraReport { module: bad.clone(), multiplicative: bad.clone(), unital: bad };
    }
    let mut module = Check::pass();
    'outer: for a in 0..dr {
        let ea = r.basis_vector(a);
        if act.apply(&t.alg.unit, &ea, &f) != ea {
            module = Check::fail(format!("1 · {}", r.labels[a]));
            break;
        }
        for h in 0..dt {
            for k in 0..dt {
                let hk = crate::hopf::sparse_dense(&t.alg.mult[h][k], dt, &f);
                let lhs = act.apply(&hk, &ea, &f);
                let ka = act.apply(&t.alg.basis_vector(k), &ea, &f);
                if lhs != act.apply(&t.alg.basis_vector(h), &ka, &f) {
                    module = Check::fail(format!("({} {}) · {}", t.alg.labels[h], t.alg.labels[k], r.labels[a]));
                    break 'outer;
                }
            }
        }
    }
    let mut multiplicative = Check::pass();
    'outer2: for h in 0..dt {
        for a in 0..dr {
            for b in 0..dr {
                let ab = crate::hopf::sparse_dense(&r.mult[a][b], dr, &f);
                let lhs = act.apply(&t.alg.basis_vector(h), &ab, &f);
                let mut rhs = r.zero_vector();
                for (idx, c) in &t.comult[h] {
                    let (x, y) = (idx / dt, idx % dt);
                    let l = &act.act[x][a];
                    let rr = &act.act[y][b];
                    axpy(&mut rhs, c, &r.mul(l, rr));
                }
                if lhs != rhs {
                    multiplicative = Check::fail(format!("{} · ({} {})", t.alg.labels[h], r.labels[a], r.labels[b]));
                    break 'outer2;
                }
            }
        }
    }
    let mut unital = Check::pass();
    for h in 0..dt {
        let lhs = act.apply(&t.alg.basis_vector(h), &r.unit, &f);
        let rhs: Vec<Scalar> = r.unit.iter().map(|u| u * &t.counit[h]).collect();
        if lhs != rhs {
            unital = Check::fail(format!("{} · 1", t.alg.labels[h]));
            break;
        }
    }
    ModuleAlgebraReport { module, multiplicative, unital }
}

/// Two-cocycle values `σ(t_i, t_j) ∈ R`.
#[derive(Clone, Debug)]
pub struct Cocycle {
    pub values: Vec<Vec<Vec<Scalar>>>,
}

impl Cocycle {
    /// `σ(s, t) = ε(s)ε(t)·1`.
    pub fn trivial(t: &FdHopf, r: &FdAlgebra) -> Cocycle {
        Cocycle {
            values: (0..t.dim()).map(|i| (0..t.dim()).map(|j| r.unit.iter().map(|u| u * &(&t.counit[i] * &t.counit[j])).collect()).collect()).collect(),
        }
    }
}

pub fn smash_product(r: &FdAlgebra, t: &FdHopf, act: &ModAction) -> Result<FdAlgebra, ConstructError> {
    let rep = module_algebra_check(t, r, act);
    for (name, c) in [("module", &rep.module), ("multiplicative", &rep.multiplicative), ("unital", &rep.unital)] {
        if !c.pass {
            return Err(ConstructError::ModuleAlgebra(format!("{name}: {}", c.witness.clone().unwrap_or_default())));
        }
    }
    crossed_product(r, t, act, &Cocycle::trivial(t, r))
}

/// `(r#t)(r'#t') = Σ r(t₁·r')σ(t₂,t'₁) # t₃t'₂` on the basis `r_i # t_j` (index `i·dim T + j`).
pub fn crossed_product(r: &FdAlgebra, t: &FdHopf, act: &ModAction, sigma: &Cocycle) -> Result<FdAlgebra, ConstructError> {
    let f = r.field.join(&t.field())?;
    let (dr, dt) = (r.dim(), t.dim());
    let d = dr * dt;
    let alg_t = &t.alg;
    // Δ²(t_j) as triples.
    let triple: Vec<Vec<(usize, usize, usize, Scalar)>> = (0..dt)
        .map(|j| {
            let mut out = Vec::new();
            for (k, c) in &t.comult[j] {
                let (a, b) = (k / dt, k % dt);
                for (k2, c2) in &t.comult[b] {
                    out.push((a, k2 / dt, k2 % dt, c * c2));
                }
            }
            out
        })
        .collect();
    let mut mult = vec![vec![SVec::new(); d]; d];
    for i in 0..dr {
        for j in 0..dt {
            for i2 in 0..dr {
                for j2 in 0..dt {
                    let mut out = vec![f.zero(); d];
                    for (t1, t2, t3, c) in &triple[j] {
                        let moved = &act.act[*t1][i2];
                        let left = r.mul(&r.basis_vector(i), moved);
                        for (k, c2) in &t.comult[j2] {
                            let (u1, u2) = (k / dt, k % dt);
                            let s = &sigma.values[*t2][u1];
                            let coeff_r = r.mul(&left, s);
                            if is_zero_vec(&coeff_r) {
                                continue;
                            }
                            let tt = &alg_t.mult[*t3][u2];
                            let cc = c * c2;
                            for (ri, rv) in coeff_r.iter().enumerate() {
                                if rv.is_zero() {
                                    continue;
                                }
                                for (ti, tv) in tt {
                                    let x = ri * dt + ti;
                                    out[x] = &out[x] + &(&cc * &(rv * tv));
                                }
                            }
                        }
                    }
                    mult[i * dt + j][i2 * dt + j2] = dense_to_sparse(&out);
                }
            }
        }
    }
    let mut labels = Vec::with_capacity(d);
    for a in &r.labels {
        for b in &alg_t.labels {
            labels.push(format!("{a}#{b}"));
        }
    }
    let mut unit = vec![f.zero(); d];
    for (i, x) in r.unit.iter().enumerate() {
        for (j, y) in alg_t.unit.iter().enumerate() {
            unit[i * dt + j] = x * y;
        }
    }
    let out = FdAlgebra { field: f, labels, mult, unit };
    for a in 0..d {
        let e = out.basis_vector(a);
        if out.mul(&out.unit, &e) != e || out.mul(&e, &out.unit) != e {
            return Err(ConstructError::Cocycle(format!("unit fails at {}", out.labels[a])));
        }
    }
    for a in 0..d {
        let ea = out.basis_vector(a);
        for b in 0..d {
            let ab = out.mul(&ea, &out.basis_vector(b));
            for c in 0..d {
                let ec = out.basis_vector(c);
                let bc = out.mul(&out.basis_vector(b), &ec);
                if out.mul(&ab, &ec) != out.mul(&ea, &bc) {
                    return Err(ConstructError::Cocycle(format!("({}, {}, {})", out.labels[a], out.labels[b], out.labels[c])));
                }
            }
        }
    }
    Ok(out)
}

/// Smash product with the tensor coalgebra structure, reported as a bialgebra candidate.
pub fn smash_bialgebra_candidate(r: &FdHopf, t: &FdHopf, act: &ModAction) -> Result<(FdHopf, HopfReport), ConstructError> {
    let alg = smash_product(&r.alg, t, act)?;
    let tensor = r.tensor_product(t)?;
    let cand = FdHopf { alg, comult: tensor.comult, counit: tensor.counit, antipode: None };
    let cand = FdHopf::new(cand.alg, cand.comult, cand.counit, None)?;
    let report = cand.verify();
    Ok((cand, report))
}

/// Commutative algebra `k[b]/(bⁿ − 1)` on the basis `1, b, …, b^{n−1}`.
pub fn cyclic_group_ring_algebra(n: usize, field: FieldDesc) -> FdAlgebra {
    group_algebra(&GroupTable::cyclic(n), field).expect("cyclic").alg.relabel_powers("b")
}

/// Truncated polynomial algebra `k[x]/(xⁿ)`.
pub fn truncated_polynomial(n: usize, field: FieldDesc, var: &str) -> FdAlgebra {
    let mult = (0..n).map(|i| (0..n).map(|j| if i + j < n { vec![(i + j, field.one())] } else { Vec::new() }).collect()).collect();
    let mut unit = vec![field.zero(); n];
    unit[0] = field.one();
    let labels = (0..n).map(|i| if i == 0 { "1".to_string() } else { mono(var, i) }).collect();
    FdAlgebra { field, labels, mult, unit }
}

/// `k^{⊕n}` with orthogonal idempotents.
pub fn split_semisimple(n: usize, field: FieldDesc) -> FdAlgebra {
    let mult = (0..n).map(|i| (0..n).map(|j| if i == j { vec![(i, field.one())] } else { Vec::new() }).collect()).collect();
    FdAlgebra { field, labels: (1..=n).map(|i| format!("e{i}")).collect(), mult, unit: vec![field.one(); n] }
}

/// Tensor product of algebras.
pub fn tensor_algebra(a: &FdAlgebra, b: &FdAlgebra) -> FdAlgebra {
    let (da, db) = (a.dim(), b.dim());
    let f = a.field;
    let mut mult = vec![vec![SVec::new(); da * db]; da * db];
    for i in 0..da {
        for j in 0..db {
            for k in 0..da {
                for l in 0..db {
                    let mut v = Vec::new();
                    for (p, x) in &a.mult[i][k] {
                        for (q, y) in &b.mult[j][l] {
                            v.push((p * db + q, x * y));
                        }
                    }
                    v.sort_by_key(|(k, _)| *k);
                    mult[i * db + j][k * db + l] = v;
                }
            }
        }
    }
    let mut unit = vec![f.zero(); da * db];
    let mut labels = Vec::new();
    for i in 0..da {
        for j in 0..db {
            unit[i * db + j] = &a.unit[i] * &b.unit[j];
            labels.push(format!("{}⊗{}", a.labels[i], b.labels[j]));
        }
    }
    FdAlgebra { field: f, labels, mult, unit }
}

impl FdAlgebra {
    fn relabel_powers(mut self, var: &str) -> FdAlgebra {
        self.labels = (0..self.dim()).map(|i| if i == 0 { "1".to_string() } else { mono(var, i) }).collect();
        self
    }
}
