//! Benchmark fixtures for the hopfkit kernels.

use hopfkit::based::{finite_shadow, FiniteShadow};
use hopfkit::construct::{restricted_enveloping, taft_fd, RestrictedLie};
use hopfkit::families::Dihedral;
use hopfkit::hopf::FdHopf;
use hopfkit::scalars::{FieldDesc, Scalar};

pub fn cyclotomic_pair(n: u32) -> (Scalar, Scalar) {
    let f = FieldDesc::cyclotomic(n).expect("field");
    let z = f.root_of_unity_generator();
    let a = &(&z * &z) + &f.from_i64(3);
    let b = &z - &Scalar::rational(2, 5).coerce(&f).expect("rational");
    (a, b)
}

pub fn taft(n: usize) -> FdHopf {
    let f = FieldDesc::cyclotomic(n as u32).expect("field");
    taft_fd(n, 1, &f.root_of_unity(n as u64).expect("root"), f).expect("taft")
}

pub fn u_sl2(p: u64) -> FdHopf {
    restricted_enveloping(&RestrictedLie::sl2(p).expect("lie")).expect("u(sl2)")
}

pub fn dihedral_shadow(n: u32) -> FiniteShadow {
    finite_shadow(&Dihedral::new(FieldDesc::cyclotomic(n).expect("field")), n as usize).expect("shadow")
}
