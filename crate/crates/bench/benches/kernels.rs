use criterion::{criterion_group, criterion_main, Criterion};
use hopfkit::orbits::{core, IdealFd};
use hopfkit_bench::*;
use std::hint::black_box;

fn scalars(c: &mut Criterion) {
    let (a, b) = cyclotomic_pair(12);
    c.bench_function("cyclotomic mul Q(zeta12)", |bch| bch.iter(|| black_box(&a) * black_box(&b)));
    c.bench_function("cyclotomic inv Q(zeta12)", |bch| bch.iter(|| black_box(&a).inv()));
}

fn hopf(c: &mut Criterion) {
    let t = taft(4);
    c.bench_function("verify T_f(4,1)", |bch| bch.iter(|| black_box(&t).verify()));
    c.bench_function("dual T_f(4,1)", |bch| bch.iter(|| black_box(&t).dual()));
    let u = u_sl2(3);
    c.bench_function("verify u(sl2) p=3", |bch| bch.iter(|| black_box(&u).verify()));
}

fn orbits(c: &mut Criterion) {
    let s = dihedral_shadow(8);
    let chi = &s.action.space.points[1];
    let ker = IdealFd { space: s.action.space.kernel_of(chi) };
    c.bench_function("core on k[b]/(b^8-1)", |bch| bch.iter(|| core(&s.action, black_box(&ker))));
}

criterion_group!(benches, scalars, hopf, orbits);
criterion_main!(benches);
