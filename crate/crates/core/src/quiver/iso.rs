use super::Quiver;

/// All vertex bijections `σ` with `q2.b[σ(i)][σ(k)] == q1.b[i][k]`.
///
/// Mutable vertices go to mutable ones and frozen to frozen. With
/// `frozen_setwise == false` every frozen vertex must be fixed.
pub fn isomorphisms(q1: &Quiver, q2: &Quiver, frozen_setwise: bool) -> Vec<Vec<usize>> {
    isomorphisms_extending(q1, q2, frozen_setwise, &vec![None; q1.n()])
}

/// Like [`isomorphisms`], restricted to bijections agreeing with `partial`
/// wherever it is `Some`.
pub fn isomorphisms_extending(
    q1: &Quiver,
    q2: &Quiver,
    frozen_setwise: bool,
    partial: &[Option<usize>],
) -> Vec<Vec<usize>> {
    if q1.n_mut() != q2.n_mut() || q1.n_frozen() != q2.n_frozen() || partial.len() != q1.n() {
        return Vec::new();
    }
    let sig1: Vec<Signature> = (0..q1.n()).map(|v| signature(q1, v)).collect();
    let sig2: Vec<Signature> = (0..q2.n()).map(|v| signature(q2, v)).collect();
    let n = q1.n();
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            if let Some(w) = partial[v] {
                return if w < n && q1.is_frozen(v) == q2.is_frozen(w) && sig1[v] == sig2[w] {
                    vec![w]
                } else {
                    Vec::new()
                };
            }
            if q1.is_frozen(v) && !frozen_setwise {
                return if sig1[v] == sig2[v] { vec![v] } else { Vec::new() };
            }
            (0..n)
                .filter(|&w| q1.is_frozen(v) == q2.is_frozen(w) && sig1[v] == sig2[w])
                .collect()
        })
        .collect();
    if candidates.iter().any(Vec::is_empty) {
        return Vec::new();
    }
    let mut search = Search {
        q1,
        q2,
        candidates,
        assignment: vec![usize::MAX; n],
        used: vec![false; n],
        found: Vec::new(),
    };
    search.extend(0);
    search.found
}

// Sorted signed adjacency to mutable and to frozen neighbours.
#[derive(PartialEq, Eq)]
struct Signature {
    to_mutable: Vec<i64>,
    to_frozen: Vec<i64>,
}

fn signature(q: &Quiver, v: usize) -> Signature {
    let mut to_mutable = Vec::new();
    let mut to_frozen = Vec::new();
    for u in 0..q.n() {
        if u == v {
            continue;
        }
        let e = q.entry(v, u);
        if e != 0 {
            if q.is_frozen(u) {
                to_frozen.push(e);
            } else {
                to_mutable.push(e);
            }
        }
    }
    to_mutable.sort_unstable();
    to_frozen.sort_unstable();
    Signature {
        to_mutable,
        to_frozen,
    }
}

struct Search<'a> {
    q1: &'a Quiver,
    q2: &'a Quiver,
    candidates: Vec<Vec<usize>>,
    assignment: Vec<usize>,
    used: Vec<bool>,
    found: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn extend(&mut self, v: usize) {
        if v == self.q1.n() {
            self.found.push(self.assignment.clone());
            return;
        }
        for ci in 0..self.candidates[v].len() {
            let w = self.candidates[v][ci];
            if self.used[w] || !self.consistent(v, w) {
                continue;
            }
            self.used[w] = true;
            self.assignment[v] = w;
            self.extend(v + 1);
            self.used[w] = false;
            self.assignment[v] = usize::MAX;
        }
    }

    fn consistent(&self, v: usize, w: usize) -> bool {
        (0..v).all(|u| {
            let su = self.assignment[u];
            self.q2.entry(su, w) == self.q1.entry(u, v)
        })
    }
}
