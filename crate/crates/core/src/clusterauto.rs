//! Cluster automorphisms of finite-type cluster algebras, realised as
//! permutations of the cluster-variable census.
//!
//! A candidate is determined by a seed `S` of the exchange graph and a quiver
//! isomorphism from the initial quiver to `Q_S` (direct) or to its opposite
//! (inverse). It sends the initial variable `x_i` to the variable of `S` at
//! the image vertex, and is kept only if it permutes the census and maps
//! clusters to clusters.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exactalg::{Coef, LaurentPoly, RationalFn};
use crate::invariants::GroupExpr;
use crate::quiver::{isomorphisms, DynkinType, Quiver};
use crate::seeds::{census, exchange_graph, Census, ExchangeGraph, Seed, SeedError};

pub const CLOSURE_BUDGET: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutError {
    #[error("group closure exceeded {0} elements")]
    ClosureBudget(usize),
    #[error("candidate set does not contain the identity")]
    MissingIdentity,
    #[error(transparent)]
    Seed(#[from] SeedError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MapKind {
    Direct,
    Inverse,
}

/// Which of the two characterisations an element admits. A quiver isomorphic
/// to its opposite lets one permutation be both.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Kinds {
    pub direct: bool,
    pub inverse: bool,
}

impl Kinds {
    pub fn of(kind: MapKind) -> Self {
        match kind {
            MapKind::Direct => Kinds { direct: true, inverse: false },
            MapKind::Inverse => Kinds { direct: false, inverse: true },
        }
    }

    pub fn union(self, other: Kinds) -> Kinds {
        Kinds {
            direct: self.direct || other.direct,
            inverse: self.inverse || other.inverse,
        }
    }

    /// Kinds of a composite: two inverse maps compose to a direct one.
    pub fn compose(self, other: Kinds) -> Kinds {
        Kinds {
            direct: (self.direct && other.direct) || (self.inverse && other.inverse),
            inverse: (self.direct && other.inverse) || (self.inverse && other.direct),
        }
    }

    pub fn contains(self, other: Kinds) -> bool {
        (self.direct || !other.direct) && (self.inverse || !other.inverse)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Origin {
    pub node: usize,
    pub iso: Vec<usize>,
    pub kind: MapKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClusterPerm {
    /// `perm[j]` is the census index of the image of variable `j`.
    pub perm: Vec<usize>,
    pub kinds: Kinds,
    pub origin: Option<Origin>,
}

/// `(a ∘ b)[j] = a[b[j]]`.
pub fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&j| a[j]).collect()
}

pub fn inverse(a: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; a.len()];
    for (j, &v) in a.iter().enumerate() {
        inv[v] = j;
    }
    inv
}

fn identity(n: usize) -> Vec<usize> {
    (0..n).collect()
}

fn eval_point(n: usize) -> Vec<Coef> {
    const PRIMES: [i64; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];
    (0..n)
        .map(|i| Coef::new(PRIMES[i % 16].into(), (PRIMES[(i + 5) % 16] + i as i64).into()))
        .collect()
}

struct Matcher<'a> {
    census: &'a Census,
    point: Vec<Coef>,
    by_value: HashMap<Coef, Vec<usize>>,
    targets: Vec<RationalFn>,
    clusters: HashSet<Vec<usize>>,
}

impl<'a> Matcher<'a> {
    fn new(census: &'a Census) -> Self {
        let n_vars = census.variables.first().map_or(0, |v| v.vars().len());
        let point = eval_point(n_vars);
        let mut by_value: HashMap<Coef, Vec<usize>> = HashMap::new();
        for (j, v) in census.variables.iter().enumerate() {
            let value = v.eval(&point).expect("census variables are positive at a positive point");
            by_value.entry(value).or_default().push(j);
        }
        Matcher {
            census,
            point,
            by_value,
            targets: census.variables.iter().cloned().map(RationalFn::from_poly).collect(),
            clusters: census.clusters.iter().cloned().collect(),
        }
    }

    /// Census permutation induced by `x_i -> images[i]`, if it is one and
    /// preserves clusters.
    fn extend(&self, images: &[LaurentPoly]) -> Option<Vec<usize>> {
        let image_values: Vec<Coef> = images
            .iter()
            .map(|p| p.eval(&self.point))
            .collect::<Result<_, _>>()
            .ok()?;
        let vars = images.first()?.vars().clone();
        let image_fns: Vec<RationalFn> = images.iter().cloned().map(RationalFn::from_poly).collect();
        let mut perm = Vec::with_capacity(self.census.variables.len());
        let mut used = vec![false; self.census.variables.len()];
        for v in &self.census.variables {
            let value = v.eval(&image_values).ok()?;
            let candidates = self.by_value.get(&value)?;
            let image = v.substitute(&image_fns, &vars).ok()?;
            let j = *candidates
                .iter()
                .find(|&&j| !used[j] && image.rf_equal(&self.targets[j]))?;
            used[j] = true;
            perm.push(j);
        }
        let preserves = self.census.clusters.iter().all(|c| {
            let mut img: Vec<usize> = c.iter().map(|&j| perm[j]).collect();
            img.sort_unstable();
            self.clusters.contains(&img)
        });
        preserves.then_some(perm)
    }
}

struct Source {
    node: usize,
    iso: Vec<usize>,
    kind: MapKind,
    images: Vec<LaurentPoly>,
}

fn collect_candidates(sources: Vec<Source>, census: &Census) -> Vec<ClusterPerm> {
    let matcher = Matcher::new(census);
    let found: Vec<ClusterPerm> = sources
        .into_par_iter()
        .filter_map(|s| {
            matcher.extend(&s.images).map(|perm| ClusterPerm {
                perm,
                kinds: Kinds::of(s.kind),
                origin: Some(Origin {
                    node: s.node,
                    iso: s.iso,
                    kind: s.kind,
                }),
            })
        })
        .collect();
    let mut merged: BTreeMap<Vec<usize>, ClusterPerm> = BTreeMap::new();
    for c in found {
        match merged.get_mut(&c.perm) {
            Some(existing) => existing.kinds = existing.kinds.union(c.kinds),
            None => {
                merged.insert(c.perm.clone(), c);
            }
        }
    }
    merged.into_values().collect()
}

fn quiver_sources(q0: &Quiver, qs: &Quiver, frozen_setwise: bool) -> Vec<(Vec<usize>, MapKind)> {
    let mut out: Vec<(Vec<usize>, MapKind)> = isomorphisms(q0, qs, frozen_setwise)
        .into_iter()
        .map(|iso| (iso, MapKind::Direct))
        .collect();
    out.extend(
        isomorphisms(q0, &qs.opposite(), frozen_setwise)
            .into_iter()
            .map(|iso| (iso, MapKind::Inverse)),
    );
    out
}

/// Candidates from every (seed, isomorphism) pair of a graph without frozen
/// vertices, deduplicated and sorted by permutation.
pub fn candidate_maps(g: &ExchangeGraph, census: &Census) -> Vec<ClusterPerm> {
    let q0 = g.nodes[g.initial].seed.quiver().clone();
    let sources = g
        .nodes
        .iter()
        .enumerate()
        .flat_map(|(node, n)| {
            quiver_sources(&q0, n.seed.quiver(), false)
                .into_iter()
                .map(move |(iso, kind)| Source {
                    node,
                    images: iso.iter().map(|&v| n.seed.cluster()[v].clone()).collect(),
                    iso,
                    kind,
                })
        })
        .collect();
    collect_candidates(sources, census)
}

/// Candidates whose quiver isomorphism extends over the frozen vertices of
/// the full graph (frozen vertices may be permuted among themselves),
/// expressed on the census of the principal part.
pub fn frozen_aware_candidates(full: &ExchangeGraph, principal: &Census) -> Vec<ClusterPerm> {
    let q0 = full.nodes[full.initial].seed.quiver().clone();
    let n_mut = q0.n_mut();
    let mut sources = Vec::new();
    for (node, n) in full.nodes.iter().enumerate() {
        let special = n.seed.specialize();
        let mut seen = HashSet::new();
        for (iso, kind) in quiver_sources(&q0, n.seed.quiver(), true) {
            let restricted = iso[..n_mut].to_vec();
            if !seen.insert((restricted.clone(), kind)) {
                continue;
            }
            sources.push(Source {
                node,
                images: restricted.iter().map(|&v| special.cluster()[v].clone()).collect(),
                iso: restricted,
                kind,
            });
        }
    }
    collect_candidates(sources, principal)
}

/// A finite permutation group on census indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PermGroup {
    /// Sorted; the identity is first.
    pub elements: Vec<Vec<usize>>,
    pub kinds: Vec<Kinds>,
    pub generators: Vec<Vec<usize>>,
}

impl PermGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.elements.first().map_or(0, Vec::len)
    }

    pub fn index_of(&self, p: &[usize]) -> Option<usize> {
        self.elements.binary_search_by(|e| e.as_slice().cmp(p)).ok()
    }

    pub fn contains(&self, p: &[usize]) -> bool {
        self.index_of(p).is_some()
    }

    pub fn is_closed(&self) -> bool {
        self.elements.iter().all(|a| {
            self.contains(&inverse(a)) && self.elements.iter().all(|b| self.contains(&compose(a, b)))
        })
    }
}

fn generated(gens: &[Vec<usize>], degree: usize, budget: usize) -> Result<Vec<Vec<usize>>, AutError> {
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let id = identity(degree);
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(e) = queue.pop_front() {
        for g in gens {
            let p = compose(g, &e);
            if seen.insert(p.clone()) {
                if seen.len() > budget {
                    return Err(AutError::ClosureBudget(budget));
                }
                queue.push_back(p);
            }
        }
    }
    let mut out: Vec<Vec<usize>> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

pub fn close_group(cands: &[ClusterPerm]) -> Result<PermGroup, AutError> {
    close_group_with_budget(cands, CLOSURE_BUDGET)
}

pub fn close_group_with_budget(cands: &[ClusterPerm], budget: usize) -> Result<PermGroup, AutError> {
    let degree = cands.first().map_or(0, |c| c.perm.len());
    if !cands.iter().any(|c| c.perm == identity(degree)) {
        return Err(AutError::MissingIdentity);
    }
    let all: Vec<Vec<usize>> = cands.iter().map(|c| c.perm.clone()).collect();
    let elements = generated(&all, degree, budget)?;

    let mut kind_of: HashMap<Vec<usize>, Kinds> = HashMap::new();
    for c in cands {
        let k = kind_of.entry(c.perm.clone()).or_default();
        *k = k.union(c.kinds);
    }
    // elements outside the candidate list inherit kinds through composition
    let mut changed = true;
    while changed {
        changed = false;
        let known: Vec<(Vec<usize>, Kinds)> = kind_of.iter().map(|(p, k)| (p.clone(), *k)).collect();
        for (a, ka) in &known {
            for (b, kb) in &known {
                let p = compose(a, b);
                let k = kind_of.entry(p).or_default();
                let merged = k.union(ka.compose(*kb));
                if merged != *k {
                    *k = merged;
                    changed = true;
                }
            }
        }
    }
    let kinds = elements.iter().map(|e| kind_of.get(e).copied().unwrap_or_default()).collect();

    let mut generators: Vec<Vec<usize>> = Vec::new();
    let mut span = vec![identity(degree)];
    for e in &elements {
        if span.binary_search(e).is_err() {
            generators.push(e.clone());
            span = generated(&generators, degree, budget)?;
        }
        if span.len() == elements.len() {
            break;
        }
    }
    Ok(PermGroup {
        elements,
        kinds,
        generators,
    })
}

struct Table<'a> {
    g: &'a PermGroup,
    id: usize,
}

impl<'a> Table<'a> {
    fn new(g: &'a PermGroup) -> Self {
        Table {
            g,
            id: g.index_of(&identity(g.degree())).expect("identity present"),
        }
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.g
            .index_of(&compose(&self.g.elements[a], &self.g.elements[b]))
            .expect("closed")
    }

    fn inv(&self, a: usize) -> usize {
        self.g.index_of(&inverse(&self.g.elements[a])).expect("closed")
    }

    fn order_of(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.id {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    fn span(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.g.order()];
        seen[self.id] = true;
        let mut queue = VecDeque::from([self.id]);
        while let Some(e) = queue.pop_front() {
            for &g in gens {
                let p = self.mul(g, e);
                if !seen[p] {
                    seen[p] = true;
                    queue.push_back(p);
                }
            }
        }
        (0..seen.len()).filter(|&i| seen[i]).collect()
    }

    fn is_abelian(&self) -> bool {
        let n = self.g.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Subgroups `<r, s>` with `ord r = m`, `s` an involution outside `<r>`
    /// and `s r s = r^-1`; these are dihedral of order `2m`.
    fn dihedral_subgroups(&self, m: usize) -> Vec<Vec<usize>> {
        let n = self.g.order();
        let orders: Vec<usize> = (0..n).map(|a| self.order_of(a)).collect();
        let mut found: Vec<Vec<usize>> = Vec::new();
        for r in (0..n).filter(|&r| orders[r] == m) {
            let cyclic = self.span(&[r]);
            let r_inv = self.inv(r);
            for s in (0..n).filter(|&s| orders[s] == 2) {
                if cyclic.contains(&s) || self.mul(self.mul(s, r), s) != r_inv {
                    continue;
                }
                let h = self.span(&[r, s]);
                if !found.contains(&h) {
                    found.push(h);
                }
            }
        }
        found
    }

    fn is_dihedral(&self, m: usize) -> bool {
        self.g.order() == 2 * m && !self.dihedral_subgroups(m).is_empty()
    }

    /// Internal direct product of a dihedral group of order `2a` and one of
    /// order `2b` (`b = 1` is `Z2`).
    fn is_dihedral_product(&self, a: usize, b: usize) -> bool {
        if self.g.order() != 4 * a * b {
            return false;
        }
        let hs = self.dihedral_subgroups(a);
        let ks = self.dihedral_subgroups(b);
        hs.iter().any(|h| {
            ks.iter().any(|k| {
                h.iter().filter(|x| k.contains(x)).count() == 1
                    && h.iter().all(|&x| k.iter().all(|&y| self.mul(x, y) == self.mul(y, x)))
            })
        })
    }
}

/// Structural identification: cyclic, dihedral, then the product probes.
pub fn identify(g: &PermGroup) -> GroupExpr {
    let t = Table::new(g);
    let n = g.order();
    if n == 1 {
        return GroupExpr::Trivial;
    }
    if t.is_abelian() && (0..n).any(|a| t.order_of(a) == n) {
        return GroupExpr::zn(n as u64);
    }
    if n.is_multiple_of(2) && n >= 6 && t.is_dihedral(n / 2) {
        return GroupExpr::dihedral((n / 2) as u64);
    }
    if n == 4 && t.is_dihedral(2) {
        return GroupExpr::product(vec![GroupExpr::zn(2), GroupExpr::zn(2)]);
    }
    if n == 48 && t.is_dihedral_product(4, 3) {
        return GroupExpr::product(vec![GroupExpr::dihedral(4), GroupExpr::sym(3)]);
    }
    if n.is_multiple_of(4) && n >= 12 && t.is_dihedral_product(n / 4, 1) {
        return GroupExpr::product(vec![GroupExpr::dihedral((n / 4) as u64), GroupExpr::zn(2)]);
    }
    GroupExpr::unknown(format!("order {n}"))
}

/// Whether `g` is isomorphic to `expr`, for the shapes `identify` recognises.
pub fn matches_expr(g: &PermGroup, expr: &GroupExpr) -> bool {
    let t = Table::new(g);
    let expr = expr.simplify();
    if expr.finite_order() != Some(g.order() as u128) {
        return false;
    }
    let dihedral_n = |e: &GroupExpr| match e {
        GroupExpr::Dihedral { n } => Some(*n as usize),
        GroupExpr::Sym { n: 3 } => Some(3),
        GroupExpr::Zn { n: 2 } => Some(1),
        _ => None,
    };
    match &expr {
        GroupExpr::Trivial => true,
        GroupExpr::Zn { n } => t.is_abelian() && (0..g.order()).any(|a| t.order_of(a) == *n as usize),
        GroupExpr::Dihedral { n } => t.is_dihedral(*n as usize),
        GroupExpr::Sym { n: 3 } => t.is_dihedral(3),
        GroupExpr::Product { factors } if factors.len() == 2 => {
            match (dihedral_n(&factors[0]), dihedral_n(&factors[1])) {
                (Some(a), Some(b)) => t.is_dihedral_product(a, b),
                _ => false,
            }
        }
        _ => false,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupReport {
    pub order: usize,
    pub identified: String,
    pub generators: Vec<Vec<usize>>,
}

impl GroupReport {
    pub fn new(g: &PermGroup) -> Self {
        GroupReport {
            order: g.order(),
            identified: identify(g).to_string(),
            generators: g.generators.clone(),
        }
    }
}

/// Cluster automorphism group of a seed without frozen vertices.
pub fn automorphism_group(seed: &Seed, budget: usize) -> Result<(PermGroup, Census), AutError> {
    let g = exchange_graph(seed, budget)?;
    let c = census(&g)?;
    let cands = candidate_maps(&g, &c);
    Ok((close_group(&cands)?, c))
}

/// The group for the bipartite Dynkin quiver of type `t`.
pub fn dynkin_automorphism_group(t: DynkinType, budget: usize) -> Result<(PermGroup, Census), AutError> {
    automorphism_group(&Seed::initial(crate::quiver::dynkin_quiver(t)), budget)
}
