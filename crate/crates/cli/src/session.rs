//! Exploration session: an initial seed, the mutation history and the seed it
//! leads to.

use hlcluster::invariants::invariant_report;
use hlcluster::invariants::InvariantReport;
use hlcluster::quiver::{build_hl_quiver, dynkin_quiver, DynkinType, Quiver, QuiverError};
use hlcluster::seeds::{ExchangeStep, Seed, SeedError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SessionError {
    #[error("vertex {label} is frozen")]
    Frozen { vertex: usize, label: String },
    #[error("no vertex {0}")]
    UnknownVertex(String),
    #[error("history is empty")]
    EmptyHistory,
    #[error("reports need a Dynkin descriptor")]
    NotDynkin,
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Seed(#[from] SeedError),
}

/// How the initial seed is built. Without `l` the plain Dynkin quiver is used;
/// `principal` sends the frozen variables to 1 and drops their vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Descriptor {
    Dynkin {
        #[serde(rename = "type")]
        family: String,
        rank: usize,
        #[serde(default)]
        l: Option<usize>,
        #[serde(default)]
        principal: bool,
    },
    Quiver { quiver: Quiver },
}

impl Descriptor {
    pub fn dynkin(family: &str, rank: usize, l: Option<usize>, principal: bool) -> Self {
        Descriptor::Dynkin {
            family: family.to_ascii_uppercase(),
            rank,
            l,
            principal,
        }
    }

    pub fn quiver(&self) -> Result<Quiver, SessionError> {
        match self {
            Descriptor::Dynkin {
                family,
                rank,
                l,
                principal,
            } => {
                let t = DynkinType::parse(family, *rank)?;
                let q = match l {
                    Some(l) => build_hl_quiver(t, *l)?,
                    None => dynkin_quiver(t),
                };
                Ok(if *principal { q.mutable_part() } else { q })
            }
            Descriptor::Quiver { quiver } => Ok(quiver.clone()),
        }
    }

    pub fn seed(&self) -> Result<Seed, SessionError> {
        let seed = match self {
            Descriptor::Dynkin {
                family,
                rank,
                l,
                principal: true,
            } => Descriptor::dynkin(family, *rank, *l, false).seed()?.specialize(),
            _ => Seed::initial(self.quiver()?),
        };
        Ok(seed)
    }

    /// `(type, l)` for Dynkin descriptors; `l` defaults to 1.
    pub fn dynkin_level(&self) -> Option<(DynkinType, usize)> {
        match self {
            Descriptor::Dynkin { family, rank, l, .. } => {
                DynkinType::parse(family, *rank).ok().map(|t| (t, l.unwrap_or(1)))
            }
            Descriptor::Quiver { .. } => None,
        }
    }

    pub fn report(&self) -> Result<InvariantReport, SessionError> {
        let (t, l) = self.dynkin_level().ok_or(SessionError::NotDynkin)?;
        Ok(invariant_report(t, l)?)
    }
}

/// A vertex given by 0-based index or by label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VertexRef {
    Index(usize),
    Label(String),
}

impl VertexRef {
    /// Labels win over indices, so `"1"` names the vertex labelled `1`.
    pub fn parse(s: &str) -> Self {
        VertexRef::Label(s.to_string())
    }

    pub fn resolve(&self, q: &Quiver) -> Result<usize, SessionError> {
        let v = match self {
            VertexRef::Index(i) => Some(*i).filter(|&i| i < q.n()),
            VertexRef::Label(s) => q
                .vertex(s)
                .ok()
                .or_else(|| s.parse::<usize>().ok().filter(|&i| i < q.n())),
        };
        let v = v.ok_or_else(|| SessionError::UnknownVertex(self.to_string()))?;
        if q.is_frozen(v) {
            return Err(SessionError::Frozen {
                vertex: v,
                label: q.label(v).to_string(),
            });
        }
        Ok(v)
    }
}

impl std::fmt::Display for VertexRef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            VertexRef::Index(i) => write!(f, "{i}"),
            VertexRef::Label(s) => f.write_str(s),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Change {
    Flipped,
    Inserted,
    Cancelled,
    Changed,
}

/// An arrow whose multiplicity changed under a mutation. For cancelled arrows
/// `src -> dst` is the old direction and `mult` the old multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArrowChange {
    pub src: usize,
    pub dst: usize,
    pub src_label: String,
    pub dst_label: String,
    pub mult: i64,
    pub change: Change,
}

pub fn arrow_changes(before: &Quiver, after: &Quiver, k: usize) -> Vec<ArrowChange> {
    let mut out = Vec::new();
    for i in 0..before.n() {
        for j in i + 1..before.n() {
            let (e0, e1) = (before.entry(i, j), after.entry(i, j));
            if e0 == e1 {
                continue;
            }
            let change = if i == k || j == k {
                Change::Flipped
            } else if e0 == 0 {
                Change::Inserted
            } else if e1 == 0 {
                Change::Cancelled
            } else {
                Change::Changed
            };
            let e = if e1 == 0 { e0 } else { e1 };
            let (src, dst) = if e > 0 { (i, j) } else { (j, i) };
            out.push(ArrowChange {
                src,
                dst,
                src_label: before.label(src).to_string(),
                dst_label: before.label(dst).to_string(),
                mult: e.abs(),
                change,
            });
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct MutationOutcome {
    pub label: String,
    pub step: ExchangeStep,
    pub arrows: Vec<ArrowChange>,
}

/// Portable form of a session; the seed is recomputed on import.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionExport {
    pub initial: Descriptor,
    pub history: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct SessionState {
    initial: Descriptor,
    history: Vec<usize>,
    current: Seed,
}

impl SessionState {
    pub fn new(initial: Descriptor) -> Result<Self, SessionError> {
        let current = initial.seed()?;
        Ok(SessionState {
            initial,
            history: Vec::new(),
            current,
        })
    }

    /// `A_4` at level 1, the default exploration target.
    pub fn default_session() -> Self {
        Self::new(Descriptor::dynkin("A", 4, Some(1), false)).expect("A4 is a valid type")
    }

    pub fn initial(&self) -> &Descriptor {
        &self.initial
    }

    pub fn history(&self) -> &[usize] {
        &self.history
    }

    pub fn current(&self) -> &Seed {
        &self.current
    }

    pub fn mutate(&mut self, v: &VertexRef) -> Result<MutationOutcome, SessionError> {
        let k = v.resolve(self.current.quiver())?;
        let (next, step) = self.current.mutate_detailed(k)?;
        let arrows = arrow_changes(self.current.quiver(), next.quiver(), k);
        let label = self.current.quiver().label(k).to_string();
        self.current = next;
        self.history.push(k);
        Ok(MutationOutcome { label, step, arrows })
    }

    /// Drops the last mutation. Mutation is an involution, so this mutates
    /// at the same vertex again.
    pub fn undo(&mut self) -> Result<(), SessionError> {
        let k = self.history.pop().ok_or(SessionError::EmptyHistory)?;
        self.current = self.current.mutate(k)?;
        Ok(())
    }

    /// The seed obtained by replaying the history from the initial seed.
    pub fn replay(&self) -> Result<Seed, SessionError> {
        Ok(self.initial.seed()?.mutate_path(&self.history)?)
    }

    pub fn export(&self) -> SessionExport {
        SessionExport {
            initial: self.initial.clone(),
            history: self.history.clone(),
        }
    }

    pub fn import(e: SessionExport) -> Result<Self, SessionError> {
        let mut s = SessionState::new(e.initial)?;
        for k in e.history {
            s.mutate(&VertexRef::Index(k))?;
        }
        Ok(s)
    }
}

impl Serialize for SessionState {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let q = self.current.quiver();
        let frozen: Vec<bool> = (0..q.n()).map(|v| q.is_frozen(v)).collect();
        let mut st = s.serialize_struct("SessionState", 5)?;
        st.serialize_field("initial", &self.initial)?;
        st.serialize_field("history", &self.history)?;
        st.serialize_field("frozen", &frozen)?;
        st.serialize_field("arrows", &q.arrows())?;
        st.serialize_field("seed", &self.current)?;
        st.end()
    }
}
