//! Coalgebra isomorphisms between pointed coalgebras with monomial bases `g·z₁^{e₁}⋯z_s^{e_s}`.

use crate::hopf::{Check, FdHopf};
use crate::scalars::Scalar;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// A monomial basis indexed by a group element of `Π Z_{orders}` and skew exponents, where
/// `z_k` is nilpotent of index `skews[k].0` and skew-primitive with respect to the shift `skews[k].1`.
#[derive(Clone, Debug)]
pub struct PointedShape {
    pub orders: Vec<usize>,
    pub skews: Vec<(usize, Vec<usize>)>,
    pub index: BTreeMap<(Vec<usize>, Vec<usize>), usize>,
}

fn tuples(bounds: &[usize]) -> Vec<Vec<usize>> {
    bounds.iter().fold(vec![Vec::new()], |acc, &b| acc.into_iter().flat_map(|t| (0..b).map(move |i| [t.clone(), vec![i]].concat())).collect())
}

impl PointedShape {
    pub fn new(orders: Vec<usize>, skews: Vec<(usize, Vec<usize>)>, index: impl Fn(&[usize], &[usize]) -> usize) -> PointedShape {
        let nil: Vec<usize> = skews.iter().map(|s| s.0).collect();
        let mut map = BTreeMap::new();
        for g in tuples(&orders) {
            for e in tuples(&nil) {
                let i = index(&g, &e);
                map.insert((g.clone(), e), i);
            }
        }
        PointedShape { orders, skews, index: map }
    }

    fn shift(&self, g: &[usize], k: usize) -> Vec<usize> {
        g.iter().zip(&self.skews[k].1).zip(&self.orders).map(|((a, b), m)| (a + b) % m).collect()
    }
}

/// A bijection of group-likes intertwining the shifts of corresponding skew generators.
fn equivariant_bijection(s1: &PointedShape, s2: &PointedShape) -> Option<BTreeMap<Vec<usize>, Vec<usize>>> {
    let g1 = tuples(&s1.orders);
    let g2 = tuples(&s2.orders);
    if g1.len() != g2.len() || s1.skews.len() != s2.skews.len() {
        return None;
    }
    let mut phi: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    let mut used: BTreeSet<Vec<usize>> = BTreeSet::new();
    for a in &g1 {
        if phi.contains_key(a) {
            continue;
        }
        let mut placed = false;
        for b in &g2 {
            if used.contains(b) {
                continue;
            }
            if let Some(local) = grow_orbit(s1, s2, a, b, &phi, &used) {
                used.extend(local.values().cloned());
                phi.extend(local);
                placed = true;
                break;
            }
        }
        if !placed {
            return None;
        }
    }
    Some(phi)
}

fn grow_orbit(
    s1: &PointedShape,
    s2: &PointedShape,
    a: &[usize],
    b: &[usize],
    phi: &BTreeMap<Vec<usize>, Vec<usize>>,
    used: &BTreeSet<Vec<usize>>,
) -> Option<BTreeMap<Vec<usize>, Vec<usize>>> {
    let mut local: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    let mut queue = VecDeque::from([(a.to_vec(), b.to_vec())]);
    while let Some((x, y)) = queue.pop_front() {
        if let Some(prev) = local.get(&x).or_else(|| phi.get(&x)) {
            if *prev != y {
                return None;
            }
            continue;
        }
        if used.contains(&y) || local.values().any(|v| *v == y) {
            return None;
        }
        for k in 0..s1.skews.len() {
            queue.push_back((s1.shift(&x, k), s2.shift(&y, k)));
        }
        local.insert(x, y);
    }
    Some(local)
}

/// Searches for a coalgebra isomorphism `e_b ↦ λ_b e_{σ(b)}` between two pointed shapes.
pub fn pointed_coalgebra_iso(h1: &FdHopf, s1: &PointedShape, h2: &FdHopf, s2: &PointedShape) -> Check {
    if h1.dim() != h2.dim() || s1.index.len() != h1.dim() || s2.index.len() != h2.dim() {
        return Check::fail(format!("dimensions differ ({} vs {})", h1.dim(), h2.dim()));
    }
    let Some(phi) = equivariant_bijection(s1, s2) else {
        return Check::fail("no shift-equivariant bijection of group-likes".into());
    };
    let d = h1.dim();
    let mut sigma = vec![0; d];
    for ((g, e), &i) in &s1.index {
        sigma[i] = s2.index[&(phi[g].clone(), e.clone())];
    }
    let f = h1.field();
    let comult2 = |i: usize, j: usize, k: usize| -> Scalar { h2.comult[i].iter().find(|(t, _)| *t == j * d + k).map(|(_, c)| c.clone()).unwrap_or_else(|| f.zero()) };
    let mut lambda: Vec<Option<Scalar>> = vec![None; d];
    for ((_, e), &i) in &s1.index {
        if e.iter().sum::<usize>() <= 1 {
            lambda[i] = Some(f.one());
        }
    }
    loop {
        let mut progress = false;
        for b in 0..d {
            if lambda[b].is_some() {
                continue;
            }
            for (t, c1) in &h1.comult[b] {
                let (j, k) = (t / d, t % d);
                if j == b || k == b {
                    continue;
                }
                let (Some(lj), Some(lk)) = (&lambda[j], &lambda[k]) else { continue };
                let c2 = comult2(sigma[b], sigma[j], sigma[k]);
                if let Ok(inv) = c2.inv() {
                    lambda[b] = Some(&(&(lj * lk) * c1) * &inv);
                    progress = true;
                    break;
                }
            }
        }
        if !progress {
            break;
        }
    }
    let Some(lambda): Option<Vec<Scalar>> = lambda.into_iter().collect() else {
        return Check::fail("scaling not determined on every basis vector".into());
    };
    for b in 0..d {
        let mut want: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (t, c1) in &h1.comult[b] {
            let (j, k) = (t / d, t % d);
            let key = sigma[j] * d + sigma[k];
            let e = want.entry(key).or_insert_with(|| f.zero());
            *e = &*e + &(&(c1 * &lambda[j]) * &lambda[k]);
        }
        want.retain(|_, v| !v.is_zero());
        let mut got: BTreeMap<usize, Scalar> = h2.comult[sigma[b]].iter().map(|(t, c)| (*t, c * &lambda[b])).collect();
        got.retain(|_, v| !v.is_zero());
        if want != got || h1.counit[b] != &h2.counit[sigma[b]] * &lambda[b] {
            return Check::fail(format!("coalgebra map fails at {}", h1.alg.labels[b]));
        }
    }
    Check::pass()
}
