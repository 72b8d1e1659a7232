//! Exact linear algebra over [`FieldDesc`] fields.
//!
//! Tensor indices are flattened row-major: `i ⊗ j ↦ i·dim + j`.

use crate::scalars::{FieldDesc, Scalar};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("ambient dimensions differ ({0} vs {1})")]
    Ambient(usize, usize),
}

/// Sparse vector as sorted `(index, value)` pairs without zeros.
pub type SVec = Vec<(usize, Scalar)>;

/// Flattened index of `i ⊗ j` in a tensor square of `dim`-dimensional spaces.
#[inline]
pub fn flat(i: usize, j: usize, dim: usize) -> usize {
    i * dim + j
}

pub fn dense_to_sparse(v: &[Scalar]) -> SVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

pub fn sparse_to_dense(v: &SVec, dim: usize, field: &FieldDesc) -> Vec<Scalar> {
    let mut out = vec![field.zero(); dim];
    for (i, x) in v {
        out[*i] = &out[*i] + x;
    }
    out
}

/// `acc += scale · v`.
pub fn axpy(acc: &mut [Scalar], scale: &Scalar, v: &[Scalar]) {
    if scale.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a = &*a + &(scale * x);
        }
    }
}

pub fn axpy_sparse(acc: &mut [Scalar], scale: &Scalar, v: &SVec) {
    if scale.is_zero() {
        return;
    }
    for (i, x) in v {
        acc[*i] = &acc[*i] + &(scale * x);
    }
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn dot(a: &[Scalar], b: &[Scalar], field: &FieldDesc) -> Scalar {
    let mut acc = field.zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = &acc + &(x * y);
        }
    }
    acc
}

/// Dense matrix with entries in a single field.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    pub field: FieldDesc,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<Scalar>>,
}

/// Result of [`Matrix::rref`]: `transform · M = r`.
#[derive(Clone, Debug)]
pub struct Rref {
    pub rank: usize,
    pub r: Matrix,
    pub transform: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: FieldDesc, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![vec![field.zero(); cols]; rows] }
    }

    pub fn identity(field: FieldDesc, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i][i] = field.one();
        }
        m
    }

    pub fn from_rows(field: FieldDesc, cols: usize, data: Vec<Vec<Scalar>>) -> Result<Matrix, LinAlgError> {
        if let Some(bad) = data.iter().find(|r| r.len() != cols) {
            return Err(LinAlgError::Dimension(format!("row of length {} in a {cols}-column matrix", bad.len())));
        }
        let data = data
            .into_iter()
            .map(|r| r.into_iter().map(|x| x.coerce(&field).expect("entry in matrix field")).collect())
            .collect::<Vec<Vec<Scalar>>>();
        Ok(Matrix { field, rows: data.len(), cols, data })
    }

    pub fn from_i64(field: FieldDesc, rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect();
        Matrix { field, rows: rows.len(), cols, data }
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinAlgError> {
        if self.cols != other.rows {
            return Err(LinAlgError::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if !a.is_zero() {
                    axpy(&mut out.data[i], a, &other.data[k]);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>, LinAlgError> {
        if v.len() != self.cols {
            return Err(LinAlgError::Dimension(format!("{} columns, vector of length {}", self.cols, v.len())));
        }
        Ok(self.data.iter().map(|row| dot(row, v, &self.field)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| is_zero_vec(r))
    }

    /// Reduced row echelon form with the transform that produces it.
    pub fn rref(&self) -> Rref {
        let (r, transform, pivots) = match self.field {
            FieldDesc::Rationals => bareiss_rref(self).unwrap_or_else(|| gauss_jordan(self)),
            _ => gauss_jordan(self),
        };
        Rref { rank: pivots.len(), r, transform, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the right kernel `{x : M·x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let rr = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !rr.pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut x = vec![self.field.zero(); self.cols];
                x[fc] = self.field.one();
                for (row, &pc) in rr.pivots.iter().enumerate() {
                    x[pc] = -&rr.r.data[row][fc];
                }
                x
            })
            .collect()
    }

    /// One solution of `M·x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>, LinAlgError> {
        if b.len() != self.rows {
            return Err(LinAlgError::Dimension(format!("{} rows, right side of length {}", self.rows, b.len())));
        }
        let rr = self.rref();
        let tb = rr.transform.mul_vec(b)?;
        if tb[rr.rank..].iter().any(|x| !x.is_zero()) {
            return Ok(None);
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (row, &pc) in rr.pivots.iter().enumerate() {
            x[pc] = tb[row].clone();
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let rr = self.rref();
        (rr.rank == self.rows).then_some(rr.transform)
    }
}

fn gauss_jordan(m: &Matrix) -> (Matrix, Matrix, Vec<usize>) {
    let f = m.field;
    let mut a = m.data.clone();
    let mut t = Matrix::identity(f, m.rows).data;
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let Some(p) = (row..m.rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        t.swap(row, p);
        let inv = a[row][col].inv().expect("nonzero pivot");
        a[row] = a[row].iter().map(|x| x * &inv).collect();
        t[row] = t[row].iter().map(|x| x * &inv).collect();
        for r in 0..m.rows {
            if r != row && !a[r][col].is_zero() {
                let factor = -&a[r][col];
                let (pa, pt) = (a[row].clone(), t[row].clone());
                axpy(&mut a[r], &factor, &pa);
                axpy(&mut t[r], &factor, &pt);
            }
        }
        pivots.push(col);
        row += 1;
    }
    (
        Matrix { field: f, rows: m.rows, cols: m.cols, data: a },
        Matrix { field: f, rows: m.rows, cols: m.rows, data: t },
        pivots,
    )
}

/// Fraction-free forward elimination over ℤ, then exact back substitution.
fn bareiss_rref(m: &Matrix) -> Option<(Matrix, Matrix, Vec<usize>)> {
    let (rows, cols) = (m.rows, m.cols);
    let width = cols + rows;
    let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(rows);
    for (i, row) in m.data.iter().enumerate() {
        let rats: Vec<BigRational> = row.iter().map(|x| x.as_rational().expect("rational entry")).collect();
        let l = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let mut ints: Vec<BigInt> = rats.iter().map(|r| (r * BigRational::from_integer(l.clone())).to_integer()).collect();
        ints.extend((0..rows).map(|j| if j == i { l.clone() } else { BigInt::zero() }));
        a.push(ints);
    }
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in 0..width {
                if j == col {
                    continue;
                }
                let v = &a[r][col] * &a[i][j] - &a[i][col] * &a[r][j];
                let (q, rem) = v.div_rem(&prev);
                if !rem.is_zero() {
                    return None;
                }
                a[i][j] = q;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[r][col].clone();
        pivots.push(col);
        r += 1;
    }
    let mut q: Vec<Vec<BigRational>> =
        a.into_iter().map(|row| row.into_iter().map(BigRational::from_integer).collect()).collect();
    for (pr, &pc) in pivots.iter().enumerate().rev() {
        let inv = q[pr][pc].recip();
        for x in q[pr].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..pr {
            if q[i][pc].is_zero() {
                continue;
            }
            let f = q[i][pc].clone();
            for j in 0..width {
                if !q[pr][j].is_zero() {
                    let t = &f * &q[pr][j];
                    q[i][j] -= t;
                }
            }
        }
    }
    let f = FieldDesc::Rationals;
    let mut rm = Matrix::zeros(f, rows, cols);
    let mut tm = Matrix::zeros(f, rows, rows);
    for i in 0..rows {
        for j in 0..cols {
            rm.data[i][j] = Scalar::Q(q[i][j].clone());
        }
        for j in 0..rows {
            tm.data[i][j] = Scalar::Q(q[i][cols + j].clone());
        }
    }
    Some((rm, tm, pivots))
}

/// Incremental echelon basis recording how each vector decomposes over the inserted ones.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub field: FieldDesc,
    pub ambient: usize,
    rows: Vec<(usize, Vec<Scalar>, Vec<Scalar>)>,
    inserted: usize,
}

impl Echelon {
    pub fn new(field: FieldDesc, ambient: usize) -> Echelon {
        Echelon { field, ambient, rows: Vec::new(), inserted: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Residual of `v` and its coefficients over the inserted vectors.
    pub fn reduce(&self, v: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
        let mut res = v.to_vec();
        let mut expr = vec![self.field.zero(); self.inserted];
        for (p, row, rexpr) in &self.rows {
            if res[*p].is_zero() {
                continue;
            }
            let c = res[*p].clone();
            axpy(&mut res, &-&c, row);
            axpy(&mut expr, &c, rexpr);
        }
        (res, expr)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero_vec(&self.reduce(v).0)
    }

    /// Inserts `v`; returns `Ok(index)` if independent, else `Err(coefficients)`.
    pub fn insert(&mut self, v: &[Scalar]) -> Result<usize, Vec<Scalar>> {
        let (res, expr) = self.reduce(v);
        let Some(p) = res.iter().position(|x| !x.is_zero()) else {
            return Err(expr);
        };
        let inv = res[p].inv().expect("nonzero");
        let k = self.inserted;
        self.inserted += 1;
        for (_, _, e) in self.rows.iter_mut() {
            e.push(self.field.zero());
        }
        let mut e: Vec<Scalar> = expr.iter().map(|x| -&(x * &inv)).collect();
        e.push(inv.clone());
        let row: Vec<Scalar> = res.iter().map(|x| x * &inv).collect();
        self.rows.push((p, row, e));
        Ok(k)
    }
}

/// Subspace stored by its canonical RREF basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace {
    pub field: FieldDesc,
    pub ambient: usize,
    pub basis: Vec<Vec<Scalar>>,
    pub pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(field: FieldDesc, ambient: usize, vectors: &[Vec<Scalar>]) -> Subspace {
        if vectors.is_empty() {
            return Subspace::zero(field, ambient);
        }
        let m = Matrix { field, rows: vectors.len(), cols: ambient, data: vectors.to_vec() };
        let rr = m.rref();
        let basis = rr.r.data.into_iter().take(rr.rank).collect();
        Subspace { field, ambient, basis, pivots: rr.pivots }
    }

    pub fn zero(field: FieldDesc, ambient: usize) -> Subspace {
        Subspace { field, ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: FieldDesc, ambient: usize) -> Subspace {
        Subspace { field, ambient, basis: Matrix::identity(field, ambient).data, pivots: (0..ambient).collect() }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `v` minus its pivot-coordinate combination of basis rows.
    pub fn residual(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut r = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if !r[p].is_zero() {
                let c = -&r[p];
                axpy(&mut r, &c, row);
            }
        }
        r
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero_vec(&self.residual(v))
    }

    /// Coordinates of a member over the RREF basis.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        self.contains(v).then(|| self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    fn check(&self, other: &Subspace) -> Result<(), LinAlgError> {
        if self.ambient != other.ambient {
            return Err(LinAlgError::Ambient(self.ambient, other.ambient));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinAlgError> {
        self.check(other)?;
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Ok(Subspace::span(self.field, self.ambient, &all))
    }

    /// Intersection through the kernel of the stacked bases.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace, LinAlgError> {
        self.check(other)?;
        if self.dim() == 0 || other.dim() == 0 {
            return Ok(Subspace::zero(self.field, self.ambient));
        }
        let (a, b) = (self.dim(), other.dim());
        let mut m = Matrix::zeros(self.field, self.ambient, a + b);
        for i in 0..self.ambient {
            for k in 0..a {
                m.data[i][k] = self.basis[k][i].clone();
            }
            for k in 0..b {
                m.data[i][a + k] = -&other.basis[k][i];
            }
        }
        let vecs: Vec<Vec<Scalar>> = m
            .kernel()
            .into_iter()
            .map(|x| {
                let mut v = vec![self.field.zero(); self.ambient];
                for k in 0..a {
                    axpy(&mut v, &x[k], &self.basis[k]);
                }
                v
            })
            .collect();
        Ok(Subspace::span(self.field, self.ambient, &vecs))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool, LinAlgError> {
        self.check(other)?;
        Ok(self.basis.iter().all(|v| other.contains(v)))
    }

    /// Standard basis vectors completing the RREF basis to the ambient space.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.ambient).filter(|i| !self.pivots.contains(i)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const Q: FieldDesc = FieldDesc::Rationals;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| Q.from_i64(x)).collect()
    }

    #[test]
    fn rref_examples() {
        let id = Matrix::identity(Q, 3);
        let rr = id.rref();
        assert_eq!(rr.rank, 3);
        assert_eq!(rr.r, id);
        assert_eq!(Matrix::zeros(Q, 2, 3).rref().rank, 0);
        let m = Matrix::from_i64(Q, &[&[1, 2], &[2, 4]]);
        let rr = m.rref();
        assert_eq!(rr.rank, 1);
        assert_eq!(rr.r.data[0], v(&[1, 2]));
        assert_eq!(rr.transform.mul(&m).unwrap(), rr.r);
    }

    #[test]
    fn solve_examples() {
        let id = Matrix::identity(Q, 3);
        assert_eq!(id.solve(&v(&[4, -1, 7])).unwrap(), Some(v(&[4, -1, 7])));
        let z = Matrix::zeros(Q, 2, 2);
        assert_eq!(z.solve(&v(&[1, 0])).unwrap(), None);
        let m = Matrix::from_i64(Q, &[&[1, 1], &[0, 1]]);
        assert_eq!(m.solve(&v(&[3, 1])).unwrap(), Some(v(&[2, 1])));
        assert!(m.solve(&v(&[1])).is_err());
    }

    #[test]
    fn subspace_examples() {
        let u = Subspace::span(Q, 3, &[v(&[1, 1, 0]), v(&[0, 1, 1])]);
        let w = Subspace::span(Q, 3, &[v(&[1, 0, 0]), v(&[0, 0, 1])]);
        assert_eq!(u.intersection(&u).unwrap(), u);
        let e1 = Subspace::span(Q, 3, &[v(&[1, 0, 0])]);
        let e2 = Subspace::span(Q, 3, &[v(&[0, 1, 0])]);
        assert_eq!(e1.sum(&e2).unwrap(), Subspace::span(Q, 3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]));
        assert_eq!(u.intersection(&w).unwrap(), Subspace::span(Q, 3, &[v(&[1, 0, -1])]));
        assert!(matches!(u.sum(&Subspace::zero(Q, 2)), Err(LinAlgError::Ambient(3, 2))));
    }

    #[test]
    fn prime_field_elimination() {
        let f = FieldDesc::prime(5).unwrap();
        let m = Matrix::from_i64(f, &[&[1, 2], &[3, 1]]);
        // det = 1 - 6 = -5 ≡ 0 mod 5.
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn echelon_records_relations() {
        let mut e = Echelon::new(Q, 3);
        assert_eq!(e.insert(&v(&[1, 1, 0])), Ok(0));
        assert_eq!(e.insert(&v(&[0, 1, 1])), Ok(1));
        let rel = e.insert(&v(&[2, 3, 1])).unwrap_err();
        assert_eq!(rel, v(&[2, 1]));
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| proptest::collection::vec(proptest::collection::vec(-3i64..4, c), r))
    }

    proptest! {
        #![proptest_config(ProptestConfig { cases: 64, rng_seed: proptest::test_runner::RngSeed::Fixed(7), ..ProptestConfig::default() })]

        #[test]
        fn rref_properties(rows in small_matrix()) {
            let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
            let m = Matrix::from_i64(Q, &refs);
            let rr = m.rref();
            prop_assert_eq!(rr.transform.mul(&m).unwrap(), rr.r.clone());
            prop_assert!(rr.transform.inverse().is_some());
            prop_assert_eq!(rr.r.rref().r, rr.r.clone());
            prop_assert_eq!(m.rank(), m.transpose().rank());
            let (_, _, gp) = gauss_jordan(&m);
            prop_assert_eq!(gp, rr.pivots);
        }

        #[test]
        fn dimension_formula(a in small_matrix(), b in small_matrix()) {
            let n = 4;
            let pad = |rows: &Vec<Vec<i64>>| -> Vec<Vec<Scalar>> {
                rows.iter().map(|r| { let mut x = r.clone(); x.resize(n, 0); v(&x) }).collect()
            };
            let u = Subspace::span(Q, n, &pad(&a));
            let w = Subspace::span(Q, n, &pad(&b));
            let s = u.sum(&w).unwrap();
            let i = u.intersection(&w).unwrap();
            prop_assert_eq!(s.dim() + i.dim(), u.dim() + w.dim());
            prop_assert!(i.is_subspace_of(&u).unwrap() && i.is_subspace_of(&w).unwrap());
            // Modular law with the third space u ∩ s = u.
            let lhs = u.intersection(&w.sum(&u).unwrap()).unwrap();
            prop_assert_eq!(lhs, u);
        }
    }
}
