use super::FamilyError;
use crate::based::*;
use crate::construct::Side;
use crate::scalars::{FieldDesc, Scalar};
use num_integer::Integer;

/// Subalgebras of `k⟨x^{±1}, y : xy = qyx⟩` generated by `x^{±1}` and skew-primitives
/// `y^{mᵢ}` with `Δ(y^{mᵢ}) = y^{mᵢ}⊗1 + x^{cᵢ}⊗y^{mᵢ}`; words `[i, j]` stand for `yⁱxʲ`.
#[derive(Clone, Debug)]
pub struct SkewPlane {
    pub label: String,
    pub q: Scalar,
    /// `(mᵢ, cᵢ)`.
    pub y_gens: Vec<(i64, i64)>,
    /// `A = k[x^{±ℓ}, y^P]`.
    pub ell: i64,
    pub p: i64,
    /// Representative `y`-exponent of each residue class mod `P`.
    reps: Vec<i64>,
}

impl SkewPlane {
    /// The localized quantum plane `A(ℓ,n,q)` with `Δy = y⊗1 + xⁿ⊗y`.
    pub fn qplane(ell: u64, n: u64, q: Scalar) -> Result<SkewPlane, FamilyError> {
        if ell < 2 || n == 0 {
            return Err(FamilyError::Parameter(format!("qplane needs ℓ ≥ 2 and n ≥ 1, got ℓ={ell}, n={n}")));
        }
        if q.root_order() != Some(ell) {
            return Err(FamilyError::Parameter(format!("q = {q} is not a primitive {ell}-th root of unity")));
        }
        let ell_p = q.pow(n as i64).root_order().expect("root of unity") as i64;
        Ok(SkewPlane {
            label: format!("qplane({ell},{n},{q})"),
            q,
            y_gens: vec![(1, n as i64)],
            ell: ell as i64,
            p: ell_p,
            reps: (0..ell_p).collect(),
        })
    }

    /// `B(n, p₀, p₁, …, p_s, q)` generated by `x^{±1}` and `y^{mᵢ}`, `mᵢ = Π_{j≠i} p_j`.
    pub fn bfam(n: u64, ps: &[u64], q: Option<Scalar>) -> Result<SkewPlane, FamilyError> {
        let bad = |m: String| Err(FamilyError::Parameter(m));
        if ps.len() < 3 {
            return bad("bfam needs p₀ and at least two further pᵢ".into());
        }
        let (p0, rest) = (ps[0], &ps[1..]);
        if p0 == 0 || n == 0 || !n.is_multiple_of(p0) {
            return bad(format!("p₀ = {p0} must divide n = {n}"));
        }
        for w in rest.windows(2) {
            if w[0] >= w[1] {
                return bad("p₁ < … < p_s must be strictly increasing".into());
            }
        }
        for (i, a) in rest.iter().enumerate() {
            if *a < 2 {
                return bad("pᵢ must be at least 2 for i ≥ 1".into());
            }
            for b in &rest[i + 1..] {
                if a.gcd(b) != 1 {
                    return bad(format!("p = {a} and {b} are not coprime"));
                }
            }
        }
        let prod: u64 = rest.iter().product();
        let ell = (n / p0) * prod;
        let field = FieldDesc::cyclotomic(ell as u32).map_err(|e| FamilyError::Parameter(e.to_string()))?;
        let q = match q {
            Some(q) => q,
            None => field.root_of_unity(ell).ok_or_else(|| FamilyError::Parameter(format!("no primitive {ell}-th root")))?,
        };
        if q.root_order() != Some(ell) {
            return bad(format!("q = {q} is not a primitive {ell}-th root of unity"));
        }
        let ms: Vec<i64> = rest.iter().map(|p| (prod / p) as i64).collect();
        let y_gens = ms.iter().map(|&m| (m, m * n as i64)).collect();
        let p = prod as i64;
        let mut reps = vec![0i64; prod as usize];
        let mut idx = vec![0i64; rest.len()];
        loop {
            let e: i64 = idx.iter().zip(&ms).map(|(i, m)| i * m).sum();
            reps[(e % p) as usize] = e;
            let mut k = 0;
            while k < idx.len() {
                idx[k] += 1;
                if idx[k] < rest[k] as i64 {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == idx.len() {
                break;
            }
        }
        let ps_str: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
        Ok(SkewPlane { label: format!("bfam({n},{},{q})", ps_str.join(",")), q, y_gens, ell: ell as i64, p, reps })
    }

    fn f(&self) -> FieldDesc {
        self.q.field()
    }

    /// Writes `i` as a sum of the `mⱼ`, if possible.
    fn decompose(&self, i: i64) -> Option<Vec<usize>> {
        let mut best: Vec<Option<Vec<usize>>> = vec![None; i as usize + 1];
        best[0] = Some(Vec::new());
        for t in 1..=i as usize {
            for (k, (m, _)) in self.y_gens.iter().enumerate() {
                let m = *m as usize;
                if m <= t {
                    if let Some(prev) = &best[t - m] {
                        let mut v = prev.clone();
                        v.push(k);
                        best[t] = Some(v);
                        break;
                    }
                }
            }
        }
        best.pop().flatten()
    }

    fn in_semigroup(&self, i: i64) -> bool {
        i >= 0 && (i >= self.reps[(i % self.p) as usize])
    }
}

impl BasedHopf for SkewPlane {
    fn name(&self) -> String {
        self.label.clone()
    }
    fn field(&self) -> FieldDesc {
        self.f()
    }
    fn words_up_to(&self, d: usize) -> Vec<Word> {
        let d = d as i64;
        let mut out = Vec::new();
        for i in (0..=d).filter(|&i| self.in_semigroup(i)) {
            out.extend((-(d - i)..=(d - i)).map(|j| vec![i, j]));
        }
        out
    }
    fn degree(&self, w: &Word) -> usize {
        (w[0] + w[1].abs()) as usize
    }
    fn show(&self, w: &Word) -> String {
        let part = |s: &str, e: i64| match e {
            0 => String::new(),
            1 => s.to_string(),
            e => format!("{s}^{e}"),
        };
        let s = format!("{}{}", part("y", w[0]), part("x", w[1]));
        if s.is_empty() {
            "1".into()
        } else {
            s
        }
    }
    fn one(&self) -> Word {
        vec![0, 0]
    }
    fn product(&self, a: &Word, b: &Word) -> Elem {
        single(vec![a[0] + b[0], a[1] + b[1]], self.q.pow(a[1] * b[0]))
    }
    fn letters(&self, w: &Word) -> Vec<Word> {
        let parts = self.decompose(w[0]).unwrap_or_else(|| panic!("y^{} is not in the algebra", w[0]));
        let mut out: Vec<Word> = parts.iter().map(|&k| vec![self.y_gens[k].0, 0]).collect();
        let x = if w[1] >= 0 { vec![0, 1] } else { vec![0, -1] };
        out.extend(std::iter::repeat_n(x, w[1].unsigned_abs() as usize));
        out
    }
    fn letter_coproduct(&self, l: &Word) -> Elem2 {
        let one = self.f().one();
        let mut e = Elem2::new();
        if l[0] == 0 {
            add_to2(&mut e, (l.clone(), l.clone()), one);
        } else {
            let c = self.y_gens.iter().find(|(m, _)| *m == l[0]).expect("y-letter").1;
            add_to2(&mut e, (l.clone(), self.one()), one.clone());
            add_to2(&mut e, (vec![0, c], l.clone()), one);
        }
        e
    }
    fn letter_counit(&self, l: &Word) -> Scalar {
        if l[0] == 0 {
            self.f().one()
        } else {
            self.f().zero()
        }
    }
    fn letter_antipode(&self, l: &Word) -> Elem {
        let one = self.f().one();
        if l[0] == 0 {
            single(vec![0, -l[1]], one)
        } else {
            // S(y^m) = −x^{−c} y^m = −q^{−cm}·y^m x^{−c}
            let c = self.y_gens.iter().find(|(m, _)| *m == l[0]).expect("y-letter").1;
            single(vec![l[0], -c], -&self.q.pow(-c * l[0]))
        }
    }
    fn a_gens(&self) -> Vec<AGen> {
        vec![
            AGen { name: format!("x^{}", self.ell), word: vec![0, self.ell], laurent: true },
            AGen { name: format!("y^{}", self.p), word: vec![self.p, 0], laurent: false },
        ]
    }
    fn a_mono(&self, w: &Word) -> Option<Vec<i64>> {
        (w[0] % self.p == 0 && w[1].rem_euclid(self.ell) == 0).then(|| vec![w[1].div_euclid(self.ell), w[0] / self.p])
    }
    fn a_word(&self, e: &[i64]) -> Word {
        vec![e[1] * self.p, e[0] * self.ell]
    }
    fn module_basis(&self) -> Vec<Word> {
        let mut reps: Vec<i64> = self.reps.clone();
        reps.sort();
        reps.iter().flat_map(|&i| (0..self.ell).map(move |j| vec![i, j])).collect()
    }
    fn split_right(&self, w: &Word) -> Vec<(usize, Scalar, Vec<i64>)> {
        let rep = self.reps[(w[0] % self.p) as usize];
        let a = (w[0] - rep) / self.p;
        let j = w[1].rem_euclid(self.ell);
        let b = w[1].div_euclid(self.ell);
        let mut sorted = self.reps.clone();
        sorted.sort();
        let r = sorted.iter().position(|&x| x == rep).expect("representative");
        let k = r * self.ell as usize + j as usize;
        // yⁱxʲ = q^{−j·P·a} (y^rep x^j)(y^{Pa} x^{ℓb})
        vec![(k, self.q.pow(-j * self.p * a), vec![b, a])]
    }
    fn project_to_a(&self, w: &Word) -> Elem {
        // y^{Pa}xʲ ≡ q^{−jPa} y^{Pa} x^{ℓb} modulo (xʲ − 1)A
        if w[0] % self.p != 0 {
            return Elem::new();
        }
        let j = w[1].rem_euclid(self.ell);
        single(vec![w[0], w[1] - j], self.q.pow(-j * w[0]))
    }
    fn x_generators(&self) -> Vec<Elem> {
        let one = self.f().one();
        let mut out: Vec<Elem> = self.module_basis().into_iter().filter(|w| w[0] != 0).map(|w| single(w, one.clone())).collect();
        for j in 1..self.ell {
            let mut x = single(vec![0, j], one.clone());
            add_to(&mut x, self.one(), -&one);
            out.push(x);
        }
        out
    }
    fn x_side(&self) -> Side {
        Side::Right
    }
}
