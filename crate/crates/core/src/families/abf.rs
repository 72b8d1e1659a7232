use super::FamilyError;
use crate::based::*;
use crate::construct::{GroupTable, Side};
use crate::scalars::{FieldDesc, Scalar};

type IMat = Vec<Vec<i64>>;

/// Group algebra of `ℤʳ ⋊ F`; words `[v₁, …, v_r, f]` stand for `(v, f)`.
#[derive(Clone, Debug)]
pub struct AbelianByFinite {
    pub field: FieldDesc,
    pub rank: usize,
    pub group: GroupTable,
    pub matrices: Vec<IMat>,
}

fn mat_mul(a: &IMat, b: &IMat) -> IMat {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

fn mat_vec(a: &IMat, v: &[i64]) -> Vec<i64> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

impl AbelianByFinite {
    pub fn new(field: FieldDesc, rank: usize, group: GroupTable, matrices: Vec<IMat>) -> Result<AbelianByFinite, FamilyError> {
        if matrices.len() != group.order() || matrices.iter().any(|m| m.len() != rank || m.iter().any(|r| r.len() != rank)) {
            return Err(FamilyError::Parameter("one rank×rank matrix per group element is required".into()));
        }
        let id: IMat = (0..rank).map(|i| (0..rank).map(|j| i64::from(i == j)).collect()).collect();
        if matrices[group.identity] != id {
            return Err(FamilyError::Parameter("the identity must act trivially".into()));
        }
        for f in 0..group.order() {
            for g in 0..group.order() {
                if mat_mul(&matrices[f], &matrices[g]) != matrices[group.mult[f][g]] {
                    return Err(FamilyError::Parameter(format!("matrices do not define an action at ({}, {})", group.labels[f], group.labels[g])));
                }
            }
        }
        Ok(AbelianByFinite { field, rank, group, matrices })
    }

    /// `F = C_m` generated by one matrix.
    pub fn cyclic(field: FieldDesc, m: usize, generator: IMat) -> Result<AbelianByFinite, FamilyError> {
        let rank = generator.len();
        let mut mats: Vec<IMat> = vec![(0..rank).map(|i| (0..rank).map(|j| i64::from(i == j)).collect()).collect()];
        for k in 1..m {
            mats.push(mat_mul(&generator, &mats[k - 1]));
        }
        AbelianByFinite::new(field, rank, GroupTable::cyclic(m), mats)
    }

    fn f_of(&self, w: &Word) -> usize {
        w[self.rank] as usize
    }
}

impl BasedHopf for AbelianByFinite {
    fn name(&self) -> String {
        format!("abf(rank {}, |F| = {})", self.rank, self.group.order())
    }
    fn field(&self) -> FieldDesc {
        self.field
    }
    fn words_up_to(&self, n: usize) -> Vec<Word> {
        let n = n as i64;
        let mut vs: Vec<Vec<i64>> = vec![Vec::new()];
        for _ in 0..self.rank {
            vs = vs.into_iter().flat_map(|v| (-n..=n).map(move |x| [v.clone(), vec![x]].concat())).collect();
        }
        let mut out = Vec::new();
        for f in 0..self.group.order() {
            for v in &vs {
                let mut w = v.clone();
                w.push(f as i64);
                if self.degree(&w) <= n as usize {
                    out.push(w);
                }
            }
        }
        out
    }
    fn degree(&self, w: &Word) -> usize {
        w[..self.rank].iter().map(|x| x.unsigned_abs() as usize).sum::<usize>() + usize::from(self.f_of(w) != self.group.identity)
    }
    fn show(&self, w: &Word) -> String {
        let v: Vec<String> = w[..self.rank].iter().map(|x| x.to_string()).collect();
        format!("({}; {})", v.join(","), self.group.labels[self.f_of(w)])
    }
    fn one(&self) -> Word {
        let mut w = vec![0; self.rank];
        w.push(self.group.identity as i64);
        w
    }
    fn product(&self, a: &Word, b: &Word) -> Elem {
        let fa = self.f_of(a);
        let moved = mat_vec(&self.matrices[fa], &b[..self.rank]);
        let mut w: Word = a[..self.rank].iter().zip(&moved).map(|(x, y)| x + y).collect();
        w.push(self.group.mult[fa][self.f_of(b)] as i64);
        single(w, self.field.one())
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
        // (v, f)⁻¹ = (−f⁻¹·v, f⁻¹)
        let fi = self.group.inverse[self.f_of(l)];
        let mut w: Word = mat_vec(&self.matrices[fi], &l[..self.rank]).iter().map(|x| -x).collect();
        w.push(fi as i64);
        single(w, self.field.one())
    }
    fn a_gens(&self) -> Vec<AGen> {
        (0..self.rank)
            .map(|j| {
                let mut w = self.one();
                w[j] = 1;
                AGen { name: format!("b{}", j + 1), word: w, laurent: true }
            })
            .collect()
    }
    fn a_mono(&self, w: &Word) -> Option<Vec<i64>> {
        (self.f_of(w) == self.group.identity).then(|| w[..self.rank].to_vec())
    }
    fn a_word(&self, e: &[i64]) -> Word {
        let mut w = e.to_vec();
        w.push(self.group.identity as i64);
        w
    }
    fn module_basis(&self) -> Vec<Word> {
        let id = self.group.identity;
        std::iter::once(id)
            .chain((0..self.group.order()).filter(|&f| f != id))
            .map(|f| {
                let mut w = vec![0; self.rank];
                w.push(f as i64);
                w
            })
            .collect()
    }
    fn split_right(&self, w: &Word) -> Vec<(usize, Scalar, Vec<i64>)> {
        // (v, f) = (0, f)(f⁻¹·v, 1)
        let f = self.f_of(w);
        let k = self.module_basis().iter().position(|b| self.f_of(b) == f).expect("coset");
        let e = mat_vec(&self.matrices[self.group.inverse[f]], &w[..self.rank]);
        vec![(k, self.field.one(), e)]
    }
    fn project_to_a(&self, w: &Word) -> Elem {
        single(self.a_word(&w[..self.rank]), self.field.one())
    }
    fn x_generators(&self) -> Vec<Elem> {
        self.module_basis()
            .into_iter()
            .skip(1)
            .map(|b| {
                let mut x = single(b, self.field.one());
                add_to(&mut x, self.one(), -self.field.one());
                x
            })
            .collect()
    }
    fn x_side(&self) -> Side {
        Side::Left
    }
}
