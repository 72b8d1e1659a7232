//! Module-algebra actions on finite-dimensional commutative algebras: stable ideals, cores and orbits.

use crate::construct::{module_algebra_check, ModAction};
use crate::exactla::{axpy, dot, Echelon, Matrix, Subspace};
use crate::hopf::{characters, is_multiplicative, Character, FdAlgebra, FdHopf};
use crate::scalars::Scalar;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OrbitError {
    #[error("algebra is not commutative")]
    NotCommutative,
    #[error("subspace is not an ideal: {0}")]
    NotIdeal(String),
    #[error("not a character of the algebra")]
    NotCharacter,
    #[error("character list incomplete: the intersection of kernels contains a non-nilpotent element")]
    IncompleteCharacters,
    #[error("action is not a module-algebra action: {0}")]
    BadAction(String),
}

/// Commutative algebra together with its known characters.
#[derive(Clone, Debug)]
pub struct CommAlgFd {
    pub alg: FdAlgebra,
    pub points: Vec<Character>,
    /// The point list is certified to contain every character.
    pub complete: bool,
}

impl CommAlgFd {
    pub fn new(alg: FdAlgebra, candidates: &[Scalar]) -> Result<CommAlgFd, OrbitError> {
        if !alg.is_commutative() {
            return Err(OrbitError::NotCommutative);
        }
        let cs = characters(&alg, candidates);
        Ok(CommAlgFd { alg, points: cs.characters, complete: cs.complete })
    }

    pub fn with_points(alg: FdAlgebra, points: Vec<Character>, complete: bool) -> Result<CommAlgFd, OrbitError> {
        if !alg.is_commutative() {
            return Err(OrbitError::NotCommutative);
        }
        if points.iter().any(|p| !is_multiplicative(&alg, &p.values)) {
            return Err(OrbitError::NotCharacter);
        }
        Ok(CommAlgFd { alg, points, complete })
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn kernel_of(&self, chi: &Character) -> Subspace {
        covector_kernel(&self.alg, std::slice::from_ref(&chi.values))
    }

    pub fn ideal(&self, space: Subspace) -> Result<IdealFd, OrbitError> {
        IdealFd::new(&self.alg, space)
    }

    /// Ideal generated by the given elements.
    pub fn ideal_generated(&self, gens: &[Vec<Scalar>]) -> IdealFd {
        IdealFd { space: crate::construct::two_sided_ideal(&self.alg, gens) }
    }

    pub fn zero_ideal(&self) -> IdealFd {
        IdealFd { space: Subspace::zero(self.alg.field, self.dim()) }
    }
}

/// Common kernel of a family of covectors.
pub fn covector_kernel(alg: &FdAlgebra, covectors: &[Vec<Scalar>]) -> Subspace {
    let d = alg.dim();
    if covectors.is_empty() {
        return Subspace::full(alg.field, d);
    }
    let m = Matrix { field: alg.field, rows: covectors.len(), cols: d, data: covectors.to_vec() };
    Subspace::span(alg.field, d, &m.kernel())
}

/// A subspace closed under multiplication by the algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct IdealFd {
    pub space: Subspace,
}

impl IdealFd {
    pub fn new(alg: &FdAlgebra, space: Subspace) -> Result<IdealFd, OrbitError> {
        for v in &space.basis {
            for i in 0..alg.dim() {
                let p = alg.mul(&alg.basis_vector(i), v);
                if !space.contains(&p) {
                    return Err(OrbitError::NotIdeal(format!("{} · ({}) leaves the subspace", alg.labels[i], alg.label_of(v))));
                }
            }
        }
        Ok(IdealFd { space })
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn codim(&self) -> usize {
        self.space.ambient - self.space.dim()
    }
}

/// Action of a finite-dimensional Hopf algebra on a commutative algebra.
#[derive(Clone, Debug)]
pub struct Action {
    pub hopf: FdHopf,
    pub space: CommAlgFd,
    pub act: ModAction,
    /// Basis indices of an algebra generating set of the acting Hopf algebra.
    gens: Vec<usize>,
}

fn generator_indices(hopf: &FdHopf) -> Vec<usize> {
    hopf.alg.generators().iter().map(|v| v.iter().position(|x| !x.is_zero()).expect("basis vector")).collect()
}

impl Action {
    pub fn new(hopf: FdHopf, space: CommAlgFd, act: ModAction) -> Result<Action, OrbitError> {
        let rep = module_algebra_check(&hopf, &space.alg, &act);
        if !rep.passes() {
            let w = [rep.module, rep.multiplicative, rep.unital].into_iter().find(|c| !c.pass).and_then(|c| c.witness).unwrap_or_default();
            return Err(OrbitError::BadAction(w));
        }
        let gens = generator_indices(&hopf);
        Ok(Action { hopf, space, act, gens })
    }

    pub fn trivial(hopf: FdHopf, space: CommAlgFd) -> Action {
        let act = ModAction::trivial(&hopf, space.dim());
        let gens = generator_indices(&hopf);
        Action { hopf, space, act, gens }
    }

    fn apply_basis(&self, h: usize, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.space.alg.zero_vector();
        for (j, y) in v.iter().enumerate() {
            if !y.is_zero() {
                axpy(&mut out, y, &self.act.act[h][j]);
            }
        }
        out
    }

    /// Induced action on `A / I` for a stable ideal `I`, on the complement basis.
    pub fn quotient(&self, ideal: &IdealFd) -> Result<Action, OrbitError> {
        if !is_stable(self, ideal) {
            return Err(OrbitError::NotIdeal("ideal is not stable".into()));
        }
        let alg = &self.space.alg;
        let keep = ideal.space.complement_indices();
        let d = alg.dim();
        let f = alg.field;
        let project = |v: &[Scalar]| -> Vec<Scalar> {
            let r = ideal.space.residual(v);
            keep.iter().map(|&i| r[i].clone()).collect()
        };
        let mult = keep
            .iter()
            .map(|&a| keep.iter().map(|&b| crate::exactla::dense_to_sparse(&project(&crate::hopf::sparse_dense(&alg.mult[a][b], d, &f)))).collect())
            .collect();
        let qalg = FdAlgebra { field: f, labels: keep.iter().map(|&i| alg.labels[i].clone()).collect(), mult, unit: project(&alg.unit) };
        let points: Vec<Character> = self
            .space
            .points
            .iter()
            .filter(|p| ideal.space.basis.iter().all(|v| crate::exactla::dot(v, &p.values, &f).is_zero()))
            .map(|p| Character { values: keep.iter().map(|&i| p.values[i].clone()).collect() })
            .collect();
        let space = CommAlgFd::with_points(qalg, points, self.space.complete)?;
        let act = ModAction {
            act: (0..self.hopf.dim()).map(|h| keep.iter().map(|&a| project(&self.act.act[h][a])).collect()).collect(),
        };
        Ok(Action { hopf: self.hopf.clone(), space, act, gens: self.gens.clone() })
    }
}

/// `K · I ⊆ I` on basis pairs.
pub fn is_stable(action: &Action, ideal: &IdealFd) -> bool {
    action.gens.iter().all(|&h| ideal.space.basis.iter().all(|v| ideal.space.contains(&action.apply_basis(h, v))))
}

/// Largest stable subspace of `I`, as the common kernel of the submodule of `A*` generated by `I^⊥`.
pub fn core(action: &Action, ideal: &IdealFd) -> IdealFd {
    let alg = &action.space.alg;
    let f = alg.field;
    let d = alg.dim();
    if ideal.space.dim() == 0 {
        return ideal.clone();
    }
    let perp = Matrix { field: f, rows: ideal.space.dim(), cols: d, data: ideal.space.basis.clone() }.kernel();
    let mut ech = Echelon::new(f, d);
    let mut found: Vec<Vec<Scalar>> = Vec::new();
    let mut queue = perp;
    while let Some(phi) = queue.pop() {
        if ech.insert(&phi).is_err() {
            continue;
        }
        for &h in &action.gens {
            queue.push((0..d).map(|j| dot(&action.act.act[h][j], &phi, &f)).collect());
        }
        found.push(phi);
    }
    IdealFd { space: covector_kernel(alg, &found) }
}

fn point_index(action: &Action, chi: &Character) -> Result<usize, OrbitError> {
    action.space.points.iter().position(|p| p == chi).ok_or(OrbitError::NotCharacter)
}

/// Indices of the points whose kernel contains `core(ker χ)`.
pub fn orbit(action: &Action, chi: &Character) -> Result<Vec<usize>, OrbitError> {
    point_index(action, chi)?;
    let c = core(action, &IdealFd { space: action.space.kernel_of(chi) });
    Ok(points_containing(action, &c))
}

fn points_containing(action: &Action, ideal: &IdealFd) -> Vec<usize> {
    let f = action.space.alg.field;
    action
        .space
        .points
        .iter()
        .enumerate()
        .filter(|(_, p)| ideal.space.basis.iter().all(|v| crate::exactla::dot(v, &p.values, &f).is_zero()))
        .map(|(i, _)| i)
        .collect()
}

/// Partition of the points into orbits, in order of first member.
pub fn orbits(action: &Action) -> Vec<Vec<usize>> {
    let mut seen = vec![false; action.space.points.len()];
    let mut out = Vec::new();
    for i in 0..seen.len() {
        if seen[i] {
            continue;
        }
        let o = orbit(action, &action.space.points[i]).expect("point of the algebra");
        for &j in &o {
            seen[j] = true;
        }
        out.push(o);
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitReport {
    pub members: Vec<usize>,
    pub core_codim: usize,
    pub intersection_codim: usize,
    pub core_equals_intersection: bool,
    /// `A/core` is split semisimple: its dimension equals the number of points over it.
    pub quotient_reduced: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbSemiReport {
    pub holds: bool,
    /// The algebra itself has no nonzero nilpotents.
    pub ambient_reduced: bool,
    pub conditional: bool,
    pub orbits: Vec<OrbitReport>,
}

/// Orbital semisimplicity at every point: `core(ker χ) = ⋂_{χ' ∈ orbit} ker χ'`.
pub fn is_orbitally_semisimple(action: &Action) -> OrbSemiReport {
    let alg = &action.space.alg;
    let mut reports = Vec::new();
    for members in orbits(action) {
        let chi = &action.space.points[members[0]];
        let c = core(action, &IdealFd { space: action.space.kernel_of(chi) });
        let kernels: Vec<Vec<Scalar>> = members.iter().map(|&i| action.space.points[i].values.clone()).collect();
        let inter = covector_kernel(alg, &kernels);
        let equal = c.space == inter;
        reports.push(OrbitReport {
            core_codim: c.codim(),
            intersection_codim: inter.ambient - inter.dim(),
            core_equals_intersection: equal,
            quotient_reduced: c.codim() == members.len(),
            members,
        });
    }
    let ambient_reduced = nilradical(&action.space).map(|n| n.ideal.dim() == 0).unwrap_or(false);
    OrbSemiReport {
        holds: ambient_reduced && reports.iter().all(|r| r.core_equals_intersection && r.quotient_reduced),
        ambient_reduced,
        conditional: !action.space.complete,
        orbits: reports,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SimplicityReport {
    pub simple: bool,
    pub conditional: bool,
}

/// No nonzero proper stable ideal: `core(ker χ) = 0` at every point.
pub fn is_h_simple(action: &Action) -> SimplicityReport {
    let simple = action.space.points.iter().all(|p| core(action, &IdealFd { space: action.space.kernel_of(p) }).dim() == 0);
    SimplicityReport { simple, conditional: !action.space.complete }
}

/// Nondegeneracy of `(a, b) ↦ λ(ab)`.
pub fn frobenius_witness(alg: &FdAlgebra, lambda: &[Scalar]) -> bool {
    let d = alg.dim();
    let f = alg.field;
    let mut g = Matrix::zeros(f, d, d);
    for i in 0..d {
        for j in 0..d {
            let mut acc = f.zero();
            for (k, c) in &alg.mult[i][j] {
                acc = &acc + &(c * &lambda[*k]);
            }
            g.data[i][j] = acc;
        }
    }
    g.rank() == d
}

/// Deterministic then seeded search for a Frobenius functional.
pub fn frobenius_search(alg: &FdAlgebra, seed: u64, budget: usize) -> Option<Vec<Scalar>> {
    let d = alg.dim();
    let f = alg.field;
    let mut tried = 0;
    for i in 0..d {
        let mut v = alg.zero_vector();
        v[i] = f.one();
        if frobenius_witness(alg, &v) {
            return Some(v);
        }
        tried += 1;
    }
    if d <= 16 {
        for mask in 1u32..(1 << d) {
            if tried >= budget {
                break;
            }
            let v: Vec<Scalar> = (0..d).map(|i| if mask >> i & 1 == 1 { f.one() } else { f.zero() }).collect();
            if frobenius_witness(alg, &v) {
                return Some(v);
            }
            tried += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..budget.max(16) {
        let v: Vec<Scalar> = (0..d).map(|_| f.from_i64(rng.gen_range(-3..=3))).collect();
        if frobenius_witness(alg, &v) {
            return Some(v);
        }
    }
    None
}

#[derive(Clone, Debug)]
pub struct Nilradical {
    pub ideal: IdealFd,
    pub conditional: bool,
}

/// `⋂ ker χ`, verified nilpotent.
pub fn nilradical(a: &CommAlgFd) -> Result<Nilradical, OrbitError> {
    let kernels: Vec<Vec<Scalar>> = a.points.iter().map(|p| p.values.clone()).collect();
    let space = covector_kernel(&a.alg, &kernels);
    let d = a.dim();
    for v in &space.basis {
        let m = a.alg.left_mult_matrix(v);
        let mut p = m.clone();
        for _ in 1..d {
            p = p.mul(&m).expect("square");
        }
        if !p.is_zero() {
            return Err(OrbitError::IncompleteCharacters);
        }
    }
    Ok(Nilradical { ideal: IdealFd { space }, conditional: !a.complete })
}

/// `⋂_γ γ·I` over elements acting as algebra automorphisms.
pub fn group_translate_intersection(action: &Action, group: &[Vec<Scalar>], ideal: &IdealFd) -> IdealFd {
    let alg = &action.space.alg;
    let f = alg.field;
    let mut acc = Subspace::full(f, alg.dim());
    for g in group {
        let imgs: Vec<Vec<Scalar>> = ideal.space.basis.iter().map(|v| action.act.apply(g, v, &f)).collect();
        let t = Subspace::span(f, alg.dim(), &imgs);
        acc = acc.intersection(&t).expect("same ambient");
    }
    IdealFd { space: acc }
}
