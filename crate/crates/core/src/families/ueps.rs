use super::FamilyError;
use crate::based::*;
use crate::construct::Side;
use crate::scalars::{FieldDesc, Scalar};

/// `U_ε(sl₂)` with PBW words `[a, b, c]` standing for `FᵃKᵇEᶜ`.
#[derive(Clone, Debug)]
pub struct UEpsSl2 {
    pub ell: i64,
    pub eps: Scalar,
    delta_inv: Scalar,
}

const E: [i64; 3] = [0, 0, 1];
const F: [i64; 3] = [1, 0, 0];

impl UEpsSl2 {
    pub fn new(ell: u64, eps: Option<Scalar>) -> Result<UEpsSl2, FamilyError> {
        if ell < 3 || ell.is_multiple_of(2) {
            return Err(FamilyError::Parameter(format!("ueps_sl2 needs odd ℓ ≥ 3, got {ell}")));
        }
        let field = FieldDesc::cyclotomic(ell as u32).map_err(|e| FamilyError::Parameter(e.to_string()))?;
        let eps = match eps {
            Some(e) => e,
            None => field.root_of_unity(ell).expect("primitive root"),
        };
        if eps.root_order() != Some(ell) {
            return Err(FamilyError::Parameter(format!("ε = {eps} is not a primitive {ell}-th root of unity")));
        }
        let delta_inv = (&eps - &eps.pow(-1)).inv().map_err(|e| FamilyError::Parameter(e.to_string()))?;
        Ok(UEpsSl2 { ell: ell as i64, eps, delta_inv })
    }

    fn f(&self) -> FieldDesc {
        self.eps.field()
    }

    /// Left multiplication of a normal word by one letter.
    fn letter_times(&self, l: &[i64], w: &Word, c: &Scalar, out: &mut Elem) {
        let (a, b, cc) = (w[0], w[1], w[2]);
        match l {
            [1, 0, 0] => add_to(out, vec![a + 1, b, cc], c.clone()),
            [0, s, 0] => add_to(out, vec![a, b + s, cc], c * &self.eps.pow(-2 * s * a)),
            _ => {
                add_to(out, vec![a, b, cc + 1], c * &self.eps.pow(-2 * b));
                if a > 0 {
                    // [E, Fᵃ] = F^{a−1} Σ_r (ε^{−2r}K − ε^{2r}K⁻¹)/δ
                    let mut up = self.f().zero();
                    let mut down = self.f().zero();
                    for r in 0..a {
                        up = &up + &self.eps.pow(-2 * r);
                        down = &down + &self.eps.pow(2 * r);
                    }
                    let s = c * &self.delta_inv;
                    add_to(out, vec![a - 1, b + 1, cc], &s * &up);
                    add_to(out, vec![a - 1, b - 1, cc], -&(&s * &down));
                }
            }
        }
    }
}

impl BasedHopf for UEpsSl2 {
    fn name(&self) -> String {
        format!("ueps_sl2({},{})", self.ell, self.eps)
    }
    fn field(&self) -> FieldDesc {
        self.f()
    }
    fn words_up_to(&self, d: usize) -> Vec<Word> {
        let d = d as i64;
        let mut out = Vec::new();
        for a in 0..=d {
            for c in 0..=(d - a) {
                let r = d - a - c;
                out.extend((-r..=r).map(|b| vec![a, b, c]));
            }
        }
        out
    }
    fn degree(&self, w: &Word) -> usize {
        (w[0] + w[1].abs() + w[2]) as usize
    }
    fn show(&self, w: &Word) -> String {
        let part = |s: &str, e: i64| match e {
            0 => String::new(),
            1 => s.to_string(),
            e => format!("{s}^{e}"),
        };
        let s = format!("{}{}{}", part("F", w[0]), part("K", w[1]), part("E", w[2]));
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
        let mut cur = single(b.clone(), self.f().one());
        for l in self.letters(a).iter().rev() {
            let mut next = Elem::new();
            for (w, c) in &cur {
                self.letter_times(l, w, c, &mut next);
            }
            cur = next;
        }
        cur
    }
    fn letters(&self, w: &Word) -> Vec<Word> {
        let k = if w[1] >= 0 { vec![0, 1, 0] } else { vec![0, -1, 0] };
        let mut out = vec![F.to_vec(); w[0] as usize];
        out.extend(std::iter::repeat_n(k, w[1].unsigned_abs() as usize));
        out.extend(std::iter::repeat_n(E.to_vec(), w[2] as usize));
        out
    }
    fn letter_coproduct(&self, l: &Word) -> Elem2 {
        let one = self.f().one();
        let mut e = Elem2::new();
        match l.as_slice() {
            [0, _, 0] => add_to2(&mut e, (l.clone(), l.clone()), one),
            [1, 0, 0] => {
                add_to2(&mut e, (l.clone(), vec![0, -1, 0]), one.clone());
                add_to2(&mut e, (self.one(), l.clone()), one);
            }
            _ => {
                add_to2(&mut e, (l.clone(), self.one()), one.clone());
                add_to2(&mut e, (vec![0, 1, 0], l.clone()), one);
            }
        }
        e
    }
    fn letter_counit(&self, l: &Word) -> Scalar {
        if l[0] == 0 && l[2] == 0 {
            self.f().one()
        } else {
            self.f().zero()
        }
    }
    fn letter_antipode(&self, l: &Word) -> Elem {
        let one = self.f().one();
        match l.as_slice() {
            [0, s, 0] => single(vec![0, -s, 0], one),
            // S(F) = −FK
            [1, 0, 0] => single(vec![1, 1, 0], -one),
            // S(E) = −K⁻¹E
            _ => single(vec![0, -1, 1], -one),
        }
    }
    fn a_gens(&self) -> Vec<AGen> {
        let l = self.ell;
        vec![
            AGen { name: format!("E^{l}"), word: vec![0, 0, l], laurent: false },
            AGen { name: format!("F^{l}"), word: vec![l, 0, 0], laurent: false },
            AGen { name: format!("K^{l}"), word: vec![0, l, 0], laurent: true },
        ]
    }
    fn a_mono(&self, w: &Word) -> Option<Vec<i64>> {
        let l = self.ell;
        (w[0] % l == 0 && w[1].rem_euclid(l) == 0 && w[2] % l == 0).then(|| vec![w[2] / l, w[0] / l, w[1].div_euclid(l)])
    }
    fn a_word(&self, e: &[i64]) -> Word {
        vec![e[1] * self.ell, e[2] * self.ell, e[0] * self.ell]
    }
    fn module_basis(&self) -> Vec<Word> {
        let l = self.ell;
        (0..l).flat_map(|r| (0..l).flat_map(move |s| (0..l).map(move |t| vec![r, s, t]))).collect()
    }
    fn split_right(&self, w: &Word) -> Vec<(usize, Scalar, Vec<i64>)> {
        let l = self.ell;
        let (r, s, t) = (w[0] % l, w[1].rem_euclid(l), w[2] % l);
        vec![(((r * l + s) * l + t) as usize, self.f().one(), vec![w[2] / l, w[0] / l, w[1].div_euclid(l)])]
    }
    fn project_to_a(&self, w: &Word) -> Elem {
        let l = self.ell;
        if w[0] % l == 0 && w[2] % l == 0 {
            single(vec![w[0], l * w[1].div_euclid(l), w[2]], self.f().one())
        } else {
            Elem::new()
        }
    }
    fn x_generators(&self) -> Vec<Elem> {
        let one = self.f().one();
        let mut out: Vec<Elem> = self.module_basis().into_iter().filter(|w| w[0] != 0 || w[2] != 0).map(|w| single(w, one.clone())).collect();
        for s in 1..self.ell {
            let mut x = single(vec![0, s, 0], one.clone());
            add_to(&mut x, self.one(), -&one);
            out.push(x);
        }
        out
    }
    fn x_side(&self) -> Side {
        Side::Right
    }
}
