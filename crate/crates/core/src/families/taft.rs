use super::FamilyError;
use crate::based::*;
use crate::construct::Side;
use crate::scalars::{FieldDesc, Scalar};

/// `T(n,t,q) = k⟨g, x : gⁿ = 1, xg = qgx⟩` with `Δx = x⊗1 + gᵗ⊗x`; words `[i, j]` stand for `gⁱxʲ`.
#[derive(Clone, Debug)]
pub struct Taft {
    pub n: i64,
    pub t: i64,
    pub q: Scalar,
    /// `n′ = ord(qᵗ)`; `A = k[x^{n′}]`.
    pub n_prime: i64,
}

impl Taft {
    pub fn new(n: u64, t: u64, q: Scalar) -> Result<Taft, FamilyError> {
        if n < 2 || t == 0 || t >= n {
            return Err(FamilyError::Parameter(format!("taft needs n ≥ 2 and 0 < t < n, got n={n}, t={t}")));
        }
        if q.root_order() != Some(n) {
            return Err(FamilyError::Parameter(format!("q = {q} is not a primitive {n}-th root of unity")));
        }
        let n_prime = q.pow(t as i64).root_order().expect("root of unity") as i64;
        Ok(Taft { n: n as i64, t: t as i64, q, n_prime })
    }

    fn g(&self, i: i64) -> Word {
        vec![i.rem_euclid(self.n), 0]
    }
}

impl BasedHopf for Taft {
    fn name(&self) -> String {
        format!("taft({},{},{})", self.n, self.t, self.q)
    }
    fn field(&self) -> FieldDesc {
        self.q.field()
    }
    fn words_up_to(&self, d: usize) -> Vec<Word> {
        let d = d as i64;
        (0..self.n).flat_map(|i| (0..=(d - i).max(-1)).map(move |j| vec![i, j])).collect()
    }
    fn degree(&self, w: &Word) -> usize {
        (w[0] + w[1]) as usize
    }
    fn show(&self, w: &Word) -> String {
        let g = match w[0] {
            0 => String::new(),
            1 => "g".into(),
            i => format!("g^{i}"),
        };
        let x = match w[1] {
            0 => String::new(),
            1 => "x".into(),
            j => format!("x^{j}"),
        };
        if g.is_empty() && x.is_empty() {
            "1".into()
        } else {
            format!("{g}{x}")
        }
    }
    fn one(&self) -> Word {
        vec![0, 0]
    }
    fn product(&self, a: &Word, b: &Word) -> Elem {
        single(vec![(a[0] + b[0]) % self.n, a[1] + b[1]], self.q.pow(a[1] * b[0]))
    }
    fn letters(&self, w: &Word) -> Vec<Word> {
        let mut out = vec![vec![1, 0]; w[0] as usize];
        out.extend(std::iter::repeat_n(vec![0, 1], w[1] as usize));
        out
    }
    fn letter_coproduct(&self, l: &Word) -> Elem2 {
        let one = self.q.field().one();
        let mut e = Elem2::new();
        if l[1] == 0 {
            add_to2(&mut e, (l.clone(), l.clone()), one);
        } else {
            add_to2(&mut e, (l.clone(), self.one()), one.clone());
            add_to2(&mut e, (self.g(self.t), l.clone()), one);
        }
        e
    }
    fn letter_counit(&self, l: &Word) -> Scalar {
        let f = self.q.field();
        if l[1] == 0 {
            f.one()
        } else {
            f.zero()
        }
    }
    fn letter_antipode(&self, l: &Word) -> Elem {
        let f = self.q.field();
        if l[1] == 0 {
            single(self.g(-1), f.one())
        } else {
            single(vec![(self.n - self.t) % self.n, 1], -f.one())
        }
    }
    fn a_gens(&self) -> Vec<AGen> {
        vec![AGen { name: format!("x^{}", self.n_prime), word: vec![0, self.n_prime], laurent: false }]
    }
    fn a_mono(&self, w: &Word) -> Option<Vec<i64>> {
        (w[0] == 0 && w[1] % self.n_prime == 0).then(|| vec![w[1] / self.n_prime])
    }
    fn a_word(&self, e: &[i64]) -> Word {
        vec![0, e[0] * self.n_prime]
    }
    fn module_basis(&self) -> Vec<Word> {
        (0..self.n).flat_map(|i| (0..self.n_prime).map(move |j| vec![i, j])).collect()
    }
    fn split_right(&self, w: &Word) -> Vec<(usize, Scalar, Vec<i64>)> {
        let k = (w[0] * self.n_prime + w[1] % self.n_prime) as usize;
        vec![(k, self.q.field().one(), vec![w[1] / self.n_prime])]
    }
    fn project_to_a(&self, w: &Word) -> Elem {
        if w[1] % self.n_prime == 0 {
            single(vec![0, w[1]], self.q.field().one())
        } else {
            Elem::new()
        }
    }
    fn x_generators(&self) -> Vec<Elem> {
        let f = self.q.field();
        let mut out: Vec<Elem> = (0..self.n).flat_map(|i| (1..self.n_prime).map(move |j| vec![i, j])).map(|w| single(w, f.one())).collect();
        for i in 1..self.n {
            let mut x = single(vec![i, 0], f.one());
            add_to(&mut x, self.one(), -f.one());
            out.push(x);
        }
        out
    }
    fn x_side(&self) -> Side {
        Side::Right
    }
}
