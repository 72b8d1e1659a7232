use crate::based::*;
use crate::construct::Side;
use crate::scalars::{FieldDesc, Scalar};

/// `kD_∞ = k⟨a, b^{±1} : a² = 1, aba = b⁻¹⟩`; words `[i, ε]` stand for `bⁱa^ε`.
#[derive(Clone, Debug)]
pub struct Dihedral {
    pub field: FieldDesc,
}

impl Dihedral {
    pub fn new(field: FieldDesc) -> Dihedral {
        Dihedral { field }
    }

    fn inverse(w: &Word) -> Word {
        if w[1] == 0 {
            vec![-w[0], 0]
        } else {
            w.clone()
        }
    }
}

impl BasedHopf for Dihedral {
    fn name(&self) -> String {
        "dihedral".into()
    }
    fn field(&self) -> FieldDesc {
        self.field
    }
    fn words_up_to(&self, n: usize) -> Vec<Word> {
        let n = n as i64;
        let mut out = Vec::new();
        for e in 0..=1 {
            for i in -(n - e)..=(n - e) {
                out.push(vec![i, e]);
            }
        }
        out
    }
    fn degree(&self, w: &Word) -> usize {
        (w[0].unsigned_abs() + w[1] as u64) as usize
    }
    fn show(&self, w: &Word) -> String {
        let b = match w[0] {
            0 => String::new(),
            1 => "b".into(),
            i => format!("b^{i}"),
        };
        match (b.is_empty(), w[1]) {
            (true, 0) => "1".into(),
            (_, 0) => b,
            _ => format!("{b}a"),
        }
    }
    fn one(&self) -> Word {
        vec![0, 0]
    }
    fn product(&self, a: &Word, b: &Word) -> Elem {
        let sign = if a[1] == 0 { 1 } else { -1 };
        single(vec![a[0] + sign * b[0], (a[1] + b[1]) % 2], self.field.one())
    }
    fn letters(&self, w: &Word) -> Vec<Word> {
        vec![w.clone()]
    }
    fn letter_coproduct(&self, l: &Word) -> Elem2 {
        let mut e = Elem2::new();
        add_to2(&mut e, (l.clone(), l.clone()), self.field.one());
        e
    }
    fn letter_counit(&self, _: &Word) -> Scalar {
        self.field.one()
    }
    fn letter_antipode(&self, l: &Word) -> Elem {
        single(Self::inverse(l), self.field.one())
    }
    fn a_gens(&self) -> Vec<AGen> {
        vec![AGen { name: "b".into(), word: vec![1, 0], laurent: true }]
    }
    fn a_mono(&self, w: &Word) -> Option<Vec<i64>> {
        (w[1] == 0).then(|| vec![w[0]])
    }
    fn a_word(&self, e: &[i64]) -> Word {
        vec![e[0], 0]
    }
    fn module_basis(&self) -> Vec<Word> {
        vec![vec![0, 0], vec![0, 1]]
    }
    fn split_right(&self, w: &Word) -> Vec<(usize, Scalar, Vec<i64>)> {
        // bⁱa = a·b⁻ⁱ
        if w[1] == 0 {
            vec![(0, self.field.one(), vec![w[0]])]
        } else {
            vec![(1, self.field.one(), vec![-w[0]])]
        }
    }
    fn project_to_a(&self, w: &Word) -> Elem {
        single(vec![w[0], 0], self.field.one())
    }
    fn x_generators(&self) -> Vec<Elem> {
        let mut x = single(vec![0, 1], self.field.one());
        add_to(&mut x, vec![0, 0], -self.field.one());
        vec![x]
    }
    fn x_side(&self) -> Side {
        Side::Left
    }
}
