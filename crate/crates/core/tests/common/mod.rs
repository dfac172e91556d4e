#![allow(dead_code)]

use hlcluster::exactalg::{Coef, LaurentPoly, VarSet};
use hlcluster::quiver::Quiver;
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::Rng;

pub fn xyz() -> VarSet {
    VarSet::new(["x", "y", "z"]).unwrap()
}

pub fn small_coef() -> impl Strategy<Value = Coef> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Coef::new(BigInt::from(n), BigInt::from(d)))
}

pub fn nonzero_coef() -> impl Strategy<Value = Coef> {
    small_coef().prop_filter("nonzero", |c| *c != Coef::from_integer(0.into()))
}

/// Up to `max_terms` terms in `x, y, z` with exponents in `-2..=3`.
pub fn laurent(max_terms: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((prop::collection::vec(-2i32..=3, 3), small_coef()), 0..=max_terms)
        .prop_map(|terms| LaurentPoly::from_terms(&xyz(), terms).unwrap())
}

pub fn nonzero_laurent(max_terms: usize) -> impl Strategy<Value = LaurentPoly> {
    laurent(max_terms).prop_filter("nonzero", |p| !p.is_zero())
}

/// Positive rational point, so Laurent monomials never meet zero.
pub fn point() -> impl Strategy<Value = Vec<Coef>> {
    prop::collection::vec(
        (1i64..=9, 1i64..=5).prop_map(|(n, d)| Coef::new(BigInt::from(n), BigInt::from(d))),
        3,
    )
}

pub fn random_coef<R: Rng>(rng: &mut R) -> Coef {
    let n: i64 = rng.gen_range(-6..=6);
    let d: i64 = rng.gen_range(1..=4);
    Coef::new(BigInt::from(n), BigInt::from(d))
}

pub fn random_laurent<R: Rng>(rng: &mut R, vars: &VarSet, max_terms: usize) -> LaurentPoly {
    let k = rng.gen_range(1..=max_terms);
    let terms = (0..k).map(|_| {
        let e: Vec<i32> = (0..vars.len()).map(|_| rng.gen_range(-2..=3)).collect();
        (e, random_coef(rng))
    });
    LaurentPoly::from_terms(vars, terms).unwrap()
}

/// Random quiver: skew-symmetric mutable block, arbitrary frozen rows, entries in `-bound..=bound`.
pub fn random_quiver<R: Rng>(rng: &mut R, n_mut: usize, n_frozen: usize, bound: i64) -> Quiver {
    let n = n_mut + n_frozen;
    let mut b = vec![vec![0i64; n_mut]; n];
    for i in 0..n_mut {
        for k in i + 1..n_mut {
            let v = rng.gen_range(-bound..=bound);
            b[i][k] = v;
            b[k][i] = -v;
        }
    }
    for row in b.iter_mut().skip(n_mut) {
        for e in row.iter_mut() {
            *e = rng.gen_range(-bound..=bound);
        }
    }
    let labels = (0..n).map(|i| format!("v{i}")).collect();
    Quiver::new(n_mut, n_frozen, b, labels).unwrap()
}

/// Brute-force quiver isomorphisms over all vertex permutations.
pub fn brute_force_isomorphisms(q1: &Quiver, q2: &Quiver, frozen_setwise: bool) -> Vec<Vec<usize>> {
    let n = q1.n();
    if q1.n_mut() != q2.n_mut() || q1.n_frozen() != q2.n_frozen() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, &mut |p| {
        let kinds_ok = (0..n).all(|v| q1.is_frozen(v) == q2.is_frozen(p[v]))
            && (frozen_setwise || (0..n).all(|v| !q1.is_frozen(v) || p[v] == v));
        if kinds_ok && (0..n).all(|i| (0..n).all(|j| q2.entry(p[i], p[j]) == q1.entry(i, j))) {
            out.push(p.to_vec());
        }
    });
    out.sort();
    out
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

/// Relabels `q` by `sigma`: vertex `v` of `q` becomes `sigma[v]`.
pub fn relabel(q: &Quiver, sigma: &[usize]) -> Quiver {
    let n = q.n();
    let mut arrows = Vec::new();
    for a in q.arrows() {
        for _ in 0..a.mult {
            arrows.push((sigma[a.src], sigma[a.dst]));
        }
    }
    let labels = (0..n).map(|i| format!("v{i}")).collect();
    Quiver::from_arrows(q.n_mut(), q.n_frozen(), labels, &arrows).unwrap()
}

pub fn catalan(n: u64) -> u64 {
    // C_n = binom(2n, n) / (n + 1)
    let mut c = 1u64;
    for i in 0..n {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c
}
