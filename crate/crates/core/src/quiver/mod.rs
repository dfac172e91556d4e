//! Quivers with frozen vertices encoded as signed exchange matrices.
//!
//! `b[i][k]` is the number of arrows `i -> k` minus the number `k -> i`, for
//! every vertex `i` and every mutable vertex `k`. Frozen vertices come after
//! the mutable ones. Arrows between two frozen vertices are not tracked, and
//! 2-cycles cancel automatically in this encoding.

mod dynkin;
mod iso;

pub use dynkin::{build_hl_quiver, dynkin_quiver, hl_arrows, DynkinType, Family, HlArrow};
pub use iso::{isomorphisms, isomorphisms_extending};

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("unsupported Dynkin type {0} (only simply-laced A, D, E are accepted)")]
    Type(String),
    #[error("level must be at least 1, got {0}")]
    Level(usize),
    #[error("cannot mutate at vertex {vertex}: {reason}")]
    Mutation { vertex: usize, reason: &'static str },
    #[error("malformed exchange matrix: {0}")]
    Shape(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
}

/// One arrow of the decoded quiver, with multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Arrow {
    pub src: usize,
    pub dst: usize,
    pub mult: i64,
}

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "QuiverJson")]
pub struct Quiver {
    n_mut: usize,
    n_frozen: usize,
    labels: Vec<String>,
    b: Vec<Vec<i64>>,
}

#[derive(Deserialize)]
struct QuiverJson {
    n_mut: usize,
    n_frozen: usize,
    labels: Vec<String>,
    b: Vec<Vec<i64>>,
}

impl TryFrom<QuiverJson> for Quiver {
    type Error = QuiverError;
    fn try_from(j: QuiverJson) -> Result<Self, QuiverError> {
        Quiver::new(j.n_mut, j.n_frozen, j.b, j.labels)
    }
}

impl Quiver {
    /// Validates shape, zero diagonal and skew-symmetry of the mutable block.
    pub fn new(
        n_mut: usize,
        n_frozen: usize,
        b: Vec<Vec<i64>>,
        labels: Vec<String>,
    ) -> Result<Self, QuiverError> {
        let n = n_mut + n_frozen;
        if b.len() != n || labels.len() != n {
            return Err(QuiverError::Shape(format!(
                "expected {n} rows and labels, got {} and {}",
                b.len(),
                labels.len()
            )));
        }
        if let Some(row) = b.iter().position(|r| r.len() != n_mut) {
            return Err(QuiverError::Shape(format!("row {row} has wrong length")));
        }
        for i in 0..n_mut {
            if b[i][i] != 0 {
                return Err(QuiverError::Shape(format!("loop at vertex {i}")));
            }
            for k in 0..n_mut {
                if b[i][k] != -b[k][i] {
                    return Err(QuiverError::Shape(format!(
                        "mutable block not skew-symmetric at ({i}, {k})"
                    )));
                }
            }
        }
        Ok(Quiver {
            n_mut,
            n_frozen,
            labels,
            b,
        })
    }

    /// Builds a quiver from arrows `src -> dst` (multiplicities add up; arrows
    /// between two frozen vertices are dropped).
    pub fn from_arrows(
        n_mut: usize,
        n_frozen: usize,
        labels: Vec<String>,
        arrows: &[(usize, usize)],
    ) -> Result<Self, QuiverError> {
        let n = n_mut + n_frozen;
        let mut b = vec![vec![0i64; n_mut]; n];
        for &(s, d) in arrows {
            if s >= n || d >= n || s == d {
                return Err(QuiverError::Shape(format!("bad arrow {s} -> {d}")));
            }
            if d < n_mut {
                b[s][d] += 1;
            }
            if s < n_mut {
                b[d][s] -= 1;
            }
        }
        Quiver::new(n_mut, n_frozen, b, labels)
    }

    pub fn n(&self) -> usize {
        self.n_mut + self.n_frozen
    }

    pub fn n_mut(&self) -> usize {
        self.n_mut
    }

    pub fn n_frozen(&self) -> usize {
        self.n_frozen
    }

    pub fn is_frozen(&self, v: usize) -> bool {
        v >= self.n_mut
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn vertex(&self, label: &str) -> Result<usize, QuiverError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| QuiverError::UnknownVertex(label.to_string()))
    }

    /// Entry `b[i][k]`; `k` must be mutable.
    pub fn b(&self, i: usize, k: usize) -> i64 {
        self.b[i][k]
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.b
    }

    /// Signed arrow count between any two vertices (0 between frozen ones).
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        if j < self.n_mut {
            self.b[i][j]
        } else if i < self.n_mut {
            -self.b[j][i]
        } else {
            0
        }
    }

    /// Matrix mutation at mutable vertex `k`.
    pub fn mutate(&self, k: usize) -> Result<Quiver, QuiverError> {
        if k >= self.n() {
            return Err(QuiverError::Mutation {
                vertex: k,
                reason: "out of range",
            });
        }
        if self.is_frozen(k) {
            return Err(QuiverError::Mutation {
                vertex: k,
                reason: "vertex is frozen",
            });
        }
        let b = &self.b;
        let mut out = b.clone();
        for (i, row) in out.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                if i == k || j == k {
                    *entry = -b[i][j];
                } else {
                    let bik = b[i][k];
                    let prod = bik * b[k][j];
                    if prod > 0 {
                        *entry = b[i][j] + bik.signum() * prod;
                    }
                }
            }
        }
        let q = Quiver {
            n_mut: self.n_mut,
            n_frozen: self.n_frozen,
            labels: self.labels.clone(),
            b: out,
        };
        debug_assert!(q.mutable_block_is_skew());
        Ok(q)
    }

    pub fn mutable_block_is_skew(&self) -> bool {
        (0..self.n_mut)
            .all(|i| (0..self.n_mut).all(|k| self.b[i][k] == -self.b[k][i]))
    }

    /// The quiver with every arrow reversed.
    pub fn opposite(&self) -> Quiver {
        Quiver {
            n_mut: self.n_mut,
            n_frozen: self.n_frozen,
            labels: self.labels.clone(),
            b: self
                .b
                .iter()
                .map(|r| r.iter().map(|x| -x).collect())
                .collect(),
        }
    }

    /// The full subquiver on the mutable vertices.
    pub fn mutable_part(&self) -> Quiver {
        Quiver {
            n_mut: self.n_mut,
            n_frozen: 0,
            labels: self.labels[..self.n_mut].to_vec(),
            b: self.b[..self.n_mut].to_vec(),
        }
    }

    /// Arrows with positive multiplicity, each unordered pair at most once.
    pub fn arrows(&self) -> Vec<Arrow> {
        let mut out = Vec::new();
        for i in 0..self.n() {
            for k in 0..self.n_mut {
                if i < self.n_mut && i >= k {
                    continue;
                }
                let v = self.b[i][k];
                if v > 0 {
                    out.push(Arrow { src: i, dst: k, mult: v });
                } else if v < 0 {
                    out.push(Arrow { src: k, dst: i, mult: -v });
                }
            }
        }
        out.sort();
        out
    }

    /// Lines of the form `src -> dst xN`.
    pub fn render_arrows(&self) -> String {
        self.arrows()
            .iter()
            .map(|a| format!("{} -> {} x{}", self.labels[a.src], self.labels[a.dst], a.mult))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl fmt::Debug for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Quiver(n_mut={}, n_frozen={}, arrows=[{}])",
            self.n_mut,
            self.n_frozen,
            self.render_arrows().replace('\n', "; ")
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Quiver {
        Quiver::from_arrows(2, 0, vec!["1".into(), "2".into()], &[(0, 1)]).unwrap()
    }

    #[test]
    fn rank_two_mutation_reverses_the_arrow() {
        let q = a2();
        let m = q.mutate(0).unwrap();
        assert_eq!(m.arrows(), vec![Arrow { src: 1, dst: 0, mult: 1 }]);
        assert_eq!(m.mutate(0).unwrap(), q);
    }

    #[test]
    fn opposite_is_involutive() {
        let q = a2();
        assert_eq!(q.opposite().arrows(), vec![Arrow { src: 1, dst: 0, mult: 1 }]);
        assert_eq!(q.opposite().opposite(), q);
    }

    #[test]
    fn mutation_errors() {
        let q = Quiver::from_arrows(1, 1, vec!["x".into(), "w".into()], &[(1, 0)]).unwrap();
        assert!(matches!(q.mutate(1), Err(QuiverError::Mutation { .. })));
        assert!(matches!(q.mutate(5), Err(QuiverError::Mutation { .. })));
    }

    #[test]
    fn oriented_triangle_mutation_cancels_two_cycle() {
        // 0 -> 1 -> 2 -> 0; mutating at 1 adds 0 -> 2 which cancels 2 -> 0.
        let labels = vec!["a".into(), "b".into(), "c".into()];
        let q = Quiver::from_arrows(3, 0, labels, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let m = q.mutate(1).unwrap();
        assert_eq!(
            m.arrows(),
            vec![Arrow { src: 1, dst: 0, mult: 1 }, Arrow { src: 2, dst: 1, mult: 1 }]
        );
    }

    #[test]
    fn rejects_non_skew_input() {
        let err = Quiver::new(2, 0, vec![vec![0, 1], vec![1, 0]], vec!["a".into(), "b".into()]);
        assert!(matches!(err, Err(QuiverError::Shape(_))));
        let json = r#"{"n_mut":2,"n_frozen":0,"labels":["a","b"],"b":[[0,1],[1,0]]}"#;
        assert!(serde_json::from_str::<Quiver>(json).is_err());
    }

    #[test]
    fn json_layout() {
        let q = a2();
        assert_eq!(
            serde_json::to_string(&q).unwrap(),
            r#"{"n_mut":2,"n_frozen":0,"labels":["1","2"],"b":[[0,1],[-1,0]]}"#
        );
        assert_eq!(q.render_arrows(), "1 -> 2 x1");
    }
}
