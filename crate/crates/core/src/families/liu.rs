use super::FamilyError;
use crate::based::*;
use crate::construct::Side;
use crate::scalars::{FieldDesc, Scalar};

/// `k⟨x^{±1}, g, y : x central, yg = qgy, gⁿ = x^w = 1 − yⁿ⟩`; words `[i, j, l]` stand for `xⁱgʲyˡ`.
#[derive(Clone, Debug)]
pub struct Liu {
    pub n: i64,
    pub w: i64,
    pub q: Scalar,
}

impl Liu {
    pub fn new(n: u64, w: u64, q: Scalar) -> Result<Liu, FamilyError> {
        if n < 2 || w == 0 {
            return Err(FamilyError::Parameter(format!("liu needs n ≥ 2 and w ≥ 1, got n={n}, w={w}")));
        }
        if q.root_order() != Some(n) {
            return Err(FamilyError::Parameter(format!("q = {q} is not a primitive {n}-th root of unity")));
        }
        Ok(Liu { n: n as i64, w: w as i64, q })
    }

    fn f(&self) -> FieldDesc {
        self.q.field()
    }
}

impl BasedHopf for Liu {
    fn name(&self) -> String {
        format!("liu({},{},{})", self.n, self.w, self.q)
    }
    fn field(&self) -> FieldDesc {
        self.f()
    }
    fn words_up_to(&self, d: usize) -> Vec<Word> {
        let d = d as i64;
        let mut out = Vec::new();
        for j in 0..self.n {
            for l in 0..self.n {
                let rest = d - j - l;
                if rest >= 0 {
                    out.extend((-rest..=rest).map(|i| vec![i, j, l]));
                }
            }
        }
        out
    }
    fn degree(&self, w: &Word) -> usize {
        (w[0].abs() + w[1] + w[2]) as usize
    }
    fn show(&self, w: &Word) -> String {
        let part = |s: &str, e: i64| match e {
            0 => String::new(),
            1 => s.to_string(),
            e => format!("{s}^{e}"),
        };
        let s = format!("{}{}{}", part("x", w[0]), part("g", w[1]), part("y", w[2]));
        if s.is_empty() {
            "1".into()
        } else {
            s
        }
    }
    fn one(&self) -> Word {
        vec![0, 0, 0]
    }
    fn product(&self, a: &Word, b: &Word) -> Elem {
        let f = self.f();
        let c = self.q.pow(a[2] * b[1]);
        let mut i = a[0] + b[0];
        let mut j = a[1] + b[1];
        if j >= self.n {
            j -= self.n;
            i += self.w;
        }
        let l = a[2] + b[2];
        if l >= self.n {
            // yⁿ = 1 − x^w
            let mut e = single(vec![i, j, l - self.n], c.clone());
            add_to(&mut e, vec![i + self.w, j, l - self.n], -&c);
            e
        } else {
            let _ = &f;
            single(vec![i, j, l], c)
        }
    }
    fn letters(&self, w: &Word) -> Vec<Word> {
        let x = if w[0] >= 0 { vec![1, 0, 0] } else { vec![-1, 0, 0] };
        let mut out = vec![x; w[0].unsigned_abs() as usize];
        out.extend(std::iter::repeat_n(vec![0, 1, 0], w[1] as usize));
        out.extend(std::iter::repeat_n(vec![0, 0, 1], w[2] as usize));
        out
    }
    fn letter_coproduct(&self, l: &Word) -> Elem2 {
        let one = self.f().one();
        let mut e = Elem2::new();
        if l[2] == 0 {
            add_to2(&mut e, (l.clone(), l.clone()), one);
        } else {
            add_to2(&mut e, (l.clone(), self.one()), one.clone());
            add_to2(&mut e, (vec![0, 1, 0], l.clone()), one);
        }
        e
    }
    fn letter_counit(&self, l: &Word) -> Scalar {
        if l[2] == 0 {
            self.f().one()
        } else {
            self.f().zero()
        }
    }
    fn letter_antipode(&self, l: &Word) -> Elem {
        let one = self.f().one();
        match (l[0], l[1], l[2]) {
            (x, 0, 0) => single(vec![-x, 0, 0], one),
            // g⁻¹ = x^{−w} g^{n−1}
            (0, 1, 0) => single(vec![-self.w, self.n - 1, 0], one),
            _ => single(vec![-self.w, self.n - 1, 1], -one),
        }
    }
    fn a_gens(&self) -> Vec<AGen> {
        vec![AGen { name: "x".into(), word: vec![1, 0, 0], laurent: true }]
    }
    fn a_mono(&self, w: &Word) -> Option<Vec<i64>> {
        (w[1] == 0 && w[2] == 0).then(|| vec![w[0]])
    }
    fn a_word(&self, e: &[i64]) -> Word {
        vec![e[0], 0, 0]
    }
    fn module_basis(&self) -> Vec<Word> {
        (0..self.n).flat_map(|j| (0..self.n).map(move |l| vec![0, j, l])).collect()
    }
    fn split_right(&self, w: &Word) -> Vec<(usize, Scalar, Vec<i64>)> {
        vec![((w[1] * self.n + w[2]) as usize, self.f().one(), vec![w[0]])]
    }
    fn project_to_a(&self, w: &Word) -> Elem {
        if w[2] == 0 {
            single(vec![w[0], 0, 0], self.f().one())
        } else {
            Elem::new()
        }
    }
    fn x_generators(&self) -> Vec<Elem> {
        let one = self.f().one();
        let mut out: Vec<Elem> = (0..self.n).flat_map(|j| (1..self.n).map(move |l| vec![0, j, l])).map(|w| single(w, one.clone())).collect();
        for j in 1..self.n {
            let mut x = single(vec![0, j, 0], one.clone());
            add_to(&mut x, self.one(), -&one);
            out.push(x);
        }
        out
    }
    fn x_side(&self) -> Side {
        Side::Right
    }
}
