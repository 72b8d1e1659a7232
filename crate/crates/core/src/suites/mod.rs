//! Named end-to-end experiments with machine-readable reports.

mod dual;
mod pointed;
mod shadow;

pub use dual::*;
pub use pointed::*;
pub use shadow::*;

use crate::based::{BasedError, BasedHopf, Point};
use crate::construct::{group_algebra, taft_fd, ConstructError, GroupTable};
use crate::families::{parse_family, Family, FamilyError};
use crate::hopf::{Check, FdHopf, GenKind, GenSpec, HopfError, NcPoly};
use crate::orbits::OrbitError;
use crate::scalars::{FieldDesc, Scalar};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("suite {0} does not apply to {1}")]
    NotApplicable(String, String),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Based(#[from] BasedError),
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error(transparent)]
    Orbit(#[from] OrbitError),
}

pub const SUITES: &[&str] = &["dihedral-dual", "taft-dual", "liu-dual", "qplane-dual", "bfam-dual", "orbits", "cosplit", "w-filtration", "crux"];

#[derive(Clone, Debug, Serialize)]
pub struct SuiteCheck {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub family: String,
    pub degree: usize,
    pub seed: u64,
    /// Some verdict depends on a search that could not be completed.
    pub conditional: bool,
    pub checks: Vec<SuiteCheck>,
}

impl SuiteReport {
    pub fn new(suite: &str, family: String, degree: usize, seed: u64) -> SuiteReport {
        SuiteReport { suite: suite.into(), family, degree, seed, conditional: false, checks: Vec::new() }
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&mut self, name: impl Into<String>, c: Check) {
        self.checks.push(SuiteCheck { name: name.into(), pass: c.pass, witness: c.witness, detail: None });
    }

    pub fn claim(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.checks.push(SuiteCheck { name: name.into(), pass, witness: None, detail: Some(detail.into()) });
    }

    /// Records a fallible step; an error becomes a failing check carrying the message.
    pub fn attempt<T>(&mut self, name: &str, r: Result<T, impl std::fmt::Display>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.checks.push(SuiteCheck { name: name.into(), pass: false, witness: Some(e.to_string()), detail: None });
                None
            }
        }
    }

    /// Records another report's checks under a prefix.
    pub fn absorb(&mut self, prefix: &str, other: SuiteReport) {
        self.conditional |= other.conditional;
        for mut c in other.checks {
            c.name = format!("{prefix}: {}", c.name);
            self.checks.push(c);
        }
    }
}

pub fn default_family(suite: &str) -> &'static str {
    match suite {
        "taft-dual" => "taft:4,2,zeta4",
        "liu-dual" => "liu:2,1,-1",
        "qplane-dual" => "qplane:4,2,zeta4",
        "bfam-dual" => "bfam:1,1,2,3",
        _ => "dihedral",
    }
}

pub fn based_family(r: &str, field: Option<FieldDesc>) -> Result<Box<dyn BasedHopf>, SuiteError> {
    match parse_family(r, field)? {
        Family::Based(h) => Ok(h),
        Family::Restricted(_) => Err(SuiteError::NotApplicable("based-family suite".into(), r.into())),
    }
}

/// Runs a named suite on a family reference (or the suite's default family).
pub fn run_suite(name: &str, family: Option<&str>, field: Option<FieldDesc>, degree: usize, seed: u64) -> Result<SuiteReport, SuiteError> {
    let fam = family.unwrap_or_else(|| default_family(name));
    let expect = |prefix: &str| {
        if fam.split(':').next() == Some(prefix) {
            Ok(())
        } else {
            Err(SuiteError::NotApplicable(name.into(), fam.into()))
        }
    };
    match name {
        "dihedral-dual" => {
            expect("dihedral")?;
            dihedral_dual(field.unwrap_or(FieldDesc::Rationals), degree, seed)
        }
        "taft-dual" | "liu-dual" | "qplane-dual" | "bfam-dual" => {
            expect(name.trim_end_matches("-dual"))?;
            let h = based_family(fam, field)?;
            family_dual(name, fam, h.as_ref(), degree, seed)
        }
        "orbits" => orbit_suite(based_family(fam, field)?.as_ref(), degree, seed),
        "cosplit" => cosplit_suite(based_family(fam, field)?.as_ref(), degree, seed),
        "w-filtration" => w_filtration_suite(based_family(fam, field)?.as_ref(), degree, seed),
        "crux" => crux_suite(based_family(fam, field)?.as_ref(), degree, seed),
        _ => Err(SuiteError::UnknownSuite(name.into())),
    }
}

/// Three deterministic non-counit points, using small integers and roots of unity of the field.
pub fn sample_points<H: BasedHopf + ?Sized>(h: &H) -> Vec<Point> {
    let f = h.field();
    let mut pool = vec![f.from_i64(2), f.from_i64(3), -f.one()];
    if f.roots_of_unity_order() > 2 {
        pool.insert(2, f.root_of_unity_generator());
    }
    pool.push(Scalar::rational(1, 2).coerce(&f).unwrap_or_else(|_| f.from_i64(5)));
    let m = h.a_gens().len();
    let counit = crate::based::counit_point(h);
    let mut out: Vec<Point> = Vec::new();
    let mut k = 0;
    while out.len() < 3 && k < 64 {
        let p: Point = (0..m).map(|j| pool[(k + 2 * j) % pool.len()].clone()).collect();
        if p != counit && !out.contains(&p) {
            out.push(p);
        }
        k += 1;
    }
    out
}

fn word(gens: &[usize]) -> Vec<usize> {
    gens.to_vec()
}

/// Generators `g = e_{n′}` (group-like) and `x = e₁` (`Δx = x⊗1 + gᵗ⊗x`) of `T_f(n,t,q)`.
pub fn taft_model(n: usize, t: usize, q: &Scalar) -> Result<(FdHopf, GenSpec), SuiteError> {
    let f = q.field();
    let t = t % n;
    let h = taft_fd(n, t, q, f)?;
    let m = h.dim() / n;
    let one = f.one();
    let mut relations: Vec<NcPoly> = vec![vec![(one.clone(), vec![0; n]), (-&one, vec![])]];
    if m == 1 {
        return Ok((h.clone(), GenSpec { names: vec!["g".into()], vectors: vec![h.alg.basis_vector(1)], kinds: vec![GenKind::GroupLike], relations }));
    }
    relations.push(vec![(one.clone(), vec![1; m])]);
    relations.push(vec![(one.clone(), vec![1, 0]), (-q, vec![0, 1])]);
    let spec = GenSpec {
        names: vec!["g".into(), "x".into()],
        vectors: vec![h.alg.basis_vector(m), h.alg.basis_vector(1)],
        kinds: vec![GenKind::GroupLike, GenKind::Skew { a: vec![], b: word(&vec![0; t]) }],
        relations,
    };
    Ok((h, spec))
}

/// `kC_d` with generator `g`.
pub fn cyclic_model(d: usize, f: FieldDesc) -> Result<(FdHopf, GenSpec), SuiteError> {
    let h = group_algebra(&GroupTable::cyclic(d), f)?;
    let one = f.one();
    let gens = if d == 1 { vec![] } else { vec![h.alg.basis_vector(1)] };
    let n = gens.len();
    Ok((
        h,
        GenSpec {
            names: (0..n).map(|_| "c".to_string()).collect(),
            vectors: gens,
            kinds: vec![GenKind::GroupLike; n],
            relations: if n == 1 { vec![vec![(one.clone(), vec![0; d]), (-one, vec![])]] } else { vec![] },
        },
    ))
}

/// Generators of `A ⊗ B` from generators of the factors, with cross commutation relations.
pub fn tensor_model(a: &(FdHopf, GenSpec), b: &(FdHopf, GenSpec)) -> Result<(FdHopf, GenSpec), SuiteError> {
    let (ha, sa) = a;
    let (hb, sb) = b;
    let h = ha.tensor_product(hb)?;
    let f = h.field();
    let kron = |x: &[Scalar], y: &[Scalar]| -> Vec<Scalar> { x.iter().flat_map(|u| y.iter().map(move |v| u * v)).collect() };
    let na = sa.vectors.len();
    let mut vectors: Vec<Vec<Scalar>> = sa.vectors.iter().map(|v| kron(v, &hb.alg.unit)).collect();
    vectors.extend(sb.vectors.iter().map(|v| kron(&ha.alg.unit, v)));
    let shift = |w: &Vec<usize>| w.iter().map(|i| i + na).collect::<Vec<_>>();
    let mut kinds = sa.kinds.clone();
    kinds.extend(sb.kinds.iter().map(|k| match k {
        GenKind::GroupLike => GenKind::GroupLike,
        GenKind::Skew { a, b } => GenKind::Skew { a: shift(a), b: shift(b) },
    }));
    let mut relations = sa.relations.clone();
    relations.extend(sb.relations.iter().map(|r| r.iter().map(|(c, w)| (c.clone(), shift(w))).collect()));
    for i in 0..na {
        for j in 0..sb.vectors.len() {
            relations.push(vec![(f.one(), vec![i, na + j]), (-f.one(), vec![na + j, i])]);
        }
    }
    let mut names = sa.names.clone();
    names.extend(sb.names.iter().map(|s| format!("{s}'")));
    Ok((h, GenSpec { names, vectors, kinds, relations }))
}
