//! Seeds, the exchange relation, exchange-graph enumeration and the
//! cluster-variable census.
//!
//! Every cluster variable is stored as a Laurent polynomial in the initial
//! cluster (its certificate). Mutation computes the new variable by exact
//! division, so a failure to divide is surfaced as a violation of the Laurent
//! phenomenon instead of being silently carried as a rational function.

use std::collections::HashMap;

use num_traits::One;
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exactalg::{Coef, LaurentPoly, PolyJson, RationalFn, VarSet};
use crate::quiver::{Quiver, QuiverError};

pub const DEFAULT_BUDGET: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeedError {
    #[error("Laurent phenomenon violated while mutating at vertex {vertex}: {numerator} is not divisible by {divisor}")]
    LaurentViolation {
        vertex: usize,
        numerator: String,
        divisor: String,
    },
    #[error("exchange graph enumeration stopped at its node budget")]
    Incomplete,
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

/// A quiver together with one Laurent polynomial per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seed {
    quiver: Quiver,
    initial: VarSet,
    cluster: Vec<LaurentPoly>,
}

/// The data of one exchange relation `x_k x_k' = plus + minus`.
#[derive(Clone, Debug, Serialize)]
pub struct ExchangeStep {
    pub vertex: usize,
    pub old: String,
    pub new: String,
    pub incoming: String,
    pub outgoing: String,
}

fn label_suffix(label: &str) -> Option<String> {
    let groups: Vec<String> = label
        .split(|c: char| !c.is_ascii_digit())
        .filter(|g| !g.is_empty())
        .map(str::to_string)
        .collect();
    (!groups.is_empty()).then(|| groups.join("_"))
}

/// Variable names `x_...` for mutable and `w_...` for frozen vertices, built
/// from the digits in the vertex labels (`V_{1,2}` gives `x_1_2`).
pub fn variable_names(q: &Quiver) -> Vec<String> {
    let from_labels: Vec<String> = (0..q.n())
        .map(|v| {
            let prefix = if q.is_frozen(v) { "w" } else { "x" };
            let suffix = label_suffix(q.label(v)).unwrap_or_else(|| (v + 1).to_string());
            format!("{prefix}_{suffix}")
        })
        .collect();
    let unique = from_labels
        .iter()
        .enumerate()
        .all(|(i, n)| !from_labels[..i].contains(n));
    if unique {
        from_labels
    } else {
        (0..q.n())
            .map(|v| format!("{}_{}", if q.is_frozen(v) { "w" } else { "x" }, v + 1))
            .collect()
    }
}

impl Seed {
    /// Each vertex carries its own generator.
    pub fn initial(quiver: Quiver) -> Seed {
        let initial = VarSet::new(variable_names(&quiver)).expect("distinct names");
        let cluster = (0..quiver.n())
            .map(|i| LaurentPoly::var(&initial, i))
            .collect();
        Seed {
            quiver,
            initial,
            cluster,
        }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    /// Variables of the initial cluster (mutable and frozen).
    pub fn initial_vars(&self) -> &VarSet {
        &self.initial
    }

    /// Laurent certificates for every vertex, frozen ones included.
    pub fn cluster(&self) -> &[LaurentPoly] {
        &self.cluster
    }

    pub fn mutable_variables(&self) -> &[LaurentPoly] {
        &self.cluster[..self.quiver.n_mut()]
    }

    pub fn variable(&self, v: usize) -> RationalFn {
        RationalFn::from_poly(self.cluster[v].clone())
    }

    /// Canonical identity of the cluster: sorted text of the mutable variables.
    pub fn cluster_key(&self) -> Vec<String> {
        let mut key: Vec<String> = self.mutable_variables().iter().map(|p| p.to_string()).collect();
        key.sort();
        key
    }

    pub fn mutate(&self, k: usize) -> Result<Seed, SeedError> {
        self.mutate_detailed(k).map(|(s, _)| s)
    }

    /// Mutation at `k` together with the exchange relation used.
    pub fn mutate_detailed(&self, k: usize) -> Result<(Seed, ExchangeStep), SeedError> {
        let quiver = self.quiver.mutate(k)?;
        let one = LaurentPoly::one(&self.initial);
        let mut incoming = one.clone();
        let mut outgoing = one;
        for (i, x) in self.cluster.iter().enumerate() {
            let b = self.quiver.b(i, k);
            if b > 0 {
                incoming = &incoming * &x.pow(b as u32);
            } else if b < 0 {
                outgoing = &outgoing * &x.pow((-b) as u32);
            }
        }
        let numerator = &incoming + &outgoing;
        let new = numerator
            .exact_divide(&self.cluster[k])
            .map_err(|_| SeedError::LaurentViolation {
                vertex: k,
                numerator: numerator.to_string(),
                divisor: self.cluster[k].to_string(),
            })?;
        let step = ExchangeStep {
            vertex: k,
            old: self.cluster[k].to_string(),
            new: new.to_string(),
            incoming: incoming.to_string(),
            outgoing: outgoing.to_string(),
        };
        let mut cluster = self.cluster.clone();
        cluster[k] = new;
        Ok((
            Seed {
                quiver,
                initial: self.initial.clone(),
                cluster,
            },
            step,
        ))
    }

    /// Applies mutations in order.
    pub fn mutate_path(&self, path: &[usize]) -> Result<Seed, SeedError> {
        let mut s = self.clone();
        for &k in path {
            s = s.mutate(k)?;
        }
        Ok(s)
    }

    /// Sends every frozen variable to 1 and drops the frozen vertices.
    pub fn specialize(&self) -> Seed {
        let n_mut = self.quiver.n_mut();
        let target = VarSet::new(self.initial.names()[..n_mut].to_vec()).expect("distinct names");
        let values: Vec<Option<Coef>> = (0..self.quiver.n())
            .map(|i| (i >= n_mut).then(Coef::one))
            .collect();
        let cluster = self.cluster[..n_mut]
            .iter()
            .map(|p| p.specialize(&values, &target).expect("frozen values are nonzero"))
            .collect();
        Seed {
            quiver: self.quiver.mutable_part(),
            initial: target,
            cluster,
        }
    }
}

impl Serialize for Seed {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Seed", 4)?;
        st.serialize_field("quiver", &self.quiver)?;
        st.serialize_field("vars", self.initial.names())?;
        let json: Vec<PolyJson> = self.cluster.iter().map(PolyJson::from).collect();
        st.serialize_field("cluster", &json)?;
        let text: Vec<String> = self.cluster.iter().map(|p| p.to_string()).collect();
        st.serialize_field("cluster_text", &text)?;
        st.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphStatus {
    Complete,
    BudgetExceeded,
}

#[derive(Clone, Debug)]
pub struct Node {
    pub key: Vec<String>,
    pub seed: Seed,
}

/// Clusters reachable by mutation, deduplicated by unordered cluster.
///
/// Nodes are sorted by their canonical key; `adjacency[v]` lists
/// `(mutated vertex, neighbour)` pairs of the representative seed of `v`.
#[derive(Clone, Debug)]
pub struct ExchangeGraph {
    pub nodes: Vec<Node>,
    pub adjacency: Vec<Vec<(usize, usize)>>,
    pub initial: usize,
    pub status: GraphStatus,
}

/// Breadth-first closure of `seed` under mutation at every mutable vertex.
///
/// A frontier is mutated in parallel; insertion into the node table is
/// sequential in frontier order, so the result does not depend on thread
/// scheduling.
pub fn exchange_graph(seed: &Seed, budget: usize) -> Result<ExchangeGraph, SeedError> {
    let budget = budget.max(1);
    let n_mut = seed.quiver().n_mut();
    let mut nodes = vec![Node {
        key: seed.cluster_key(),
        seed: seed.clone(),
    }];
    let mut index: HashMap<Vec<String>, usize> = HashMap::new();
    index.insert(nodes[0].key.clone(), 0);
    let mut adjacency: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
    let mut frontier = vec![0usize];
    let mut status = GraphStatus::Complete;

    'bfs: while !frontier.is_empty() {
        let expanded: Vec<Result<Vec<Seed>, SeedError>> = frontier
            .par_iter()
            .map(|&v| (0..n_mut).map(|k| nodes[v].seed.mutate(k)).collect())
            .collect();
        let mut next = Vec::new();
        for (&v, children) in frontier.iter().zip(expanded) {
            for (k, child) in children?.into_iter().enumerate() {
                let key = child.cluster_key();
                let w = match index.get(&key) {
                    Some(&w) => w,
                    None => {
                        if nodes.len() >= budget {
                            status = GraphStatus::BudgetExceeded;
                            break 'bfs;
                        }
                        let w = nodes.len();
                        index.insert(key.clone(), w);
                        nodes.push(Node { key, seed: child });
                        adjacency.push(Vec::new());
                        next.push(w);
                        w
                    }
                };
                adjacency[v].push((k, w));
            }
        }
        frontier = next;
    }

    // canonical order
    let mut order: Vec<usize> = (0..nodes.len()).collect();
    order.sort_by(|&a, &b| nodes[a].key.cmp(&nodes[b].key));
    let mut rank = vec![0usize; nodes.len()];
    for (new, &old) in order.iter().enumerate() {
        rank[old] = new;
    }
    let mut slots: Vec<Option<Node>> = nodes.into_iter().map(Some).collect();
    let sorted_nodes: Vec<Node> = order
        .iter()
        .map(|&old| slots[old].take().expect("each node once"))
        .collect();
    let sorted_adj: Vec<Vec<(usize, usize)>> = order
        .iter()
        .map(|&old| adjacency[old].iter().map(|&(k, w)| (k, rank[w])).collect())
        .collect();
    Ok(ExchangeGraph {
        nodes: sorted_nodes,
        adjacency: sorted_adj,
        initial: rank[0],
        status,
    })
}

impl ExchangeGraph {
    pub fn is_complete(&self) -> bool {
        self.status == GraphStatus::Complete
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Every node has `n_mut` distinct neighbours, none of them itself.
    pub fn is_regular(&self) -> bool {
        let n_mut = match self.nodes.first() {
            Some(n) => n.seed.quiver().n_mut(),
            None => return true,
        };
        self.adjacency.iter().enumerate().all(|(v, adj)| {
            let mut nb: Vec<usize> = adj.iter().map(|&(_, w)| w).collect();
            nb.sort_unstable();
            nb.dedup();
            adj.len() == n_mut && nb.len() == n_mut && !nb.contains(&v)
        })
    }
}

#[derive(Serialize)]
struct GraphNodeJson<'a> {
    cluster: &'a [String],
}

impl Serialize for ExchangeGraph {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ExchangeGraph", 4)?;
        st.serialize_field("status", &self.status)?;
        st.serialize_field("initial", &self.initial)?;
        let nodes: Vec<GraphNodeJson> = self
            .nodes
            .iter()
            .map(|n| GraphNodeJson { cluster: &n.key })
            .collect();
        st.serialize_field("nodes", &nodes)?;
        st.serialize_field("adjacency", &self.adjacency)?;
        st.end()
    }
}

/// Distinct clusters and cluster variables of a complete exchange graph.
#[derive(Clone, Debug)]
pub struct Census {
    pub cluster_count: usize,
    pub variable_count: usize,
    /// Sorted by canonical text.
    pub variables: Vec<LaurentPoly>,
    /// Each cluster as a sorted list of indices into `variables`, in node order.
    pub clusters: Vec<Vec<usize>>,
}

pub fn census(g: &ExchangeGraph) -> Result<Census, SeedError> {
    if !g.is_complete() {
        return Err(SeedError::Incomplete);
    }
    let mut by_text: HashMap<String, LaurentPoly> = HashMap::new();
    for node in &g.nodes {
        for p in node.seed.mutable_variables() {
            by_text.entry(p.to_string()).or_insert_with(|| p.clone());
        }
    }
    let mut keys: Vec<String> = by_text.keys().cloned().collect();
    keys.sort();
    let position: HashMap<&str, usize> = keys
        .iter()
        .enumerate()
        .map(|(i, k)| (k.as_str(), i))
        .collect();
    let clusters = g
        .nodes
        .iter()
        .map(|n| {
            let mut c: Vec<usize> = n.key.iter().map(|k| position[k.as_str()]).collect();
            c.sort_unstable();
            c
        })
        .collect();
    let variables: Vec<LaurentPoly> = keys.iter().map(|k| by_text[k].clone()).collect();
    Ok(Census {
        cluster_count: g.nodes.len(),
        variable_count: variables.len(),
        variables,
        clusters,
    })
}

impl Census {
    pub fn index_of(&self, p: &LaurentPoly) -> Option<usize> {
        let key = p.to_string();
        self.variables
            .binary_search_by(|v| v.to_string().cmp(&key))
            .ok()
    }
}

impl Serialize for Census {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Census", 3)?;
        st.serialize_field("clusters", &self.cluster_count)?;
        st.serialize_field("variables", &self.variable_count)?;
        let list: Vec<PolyJson> = self.variables.iter().map(PolyJson::from).collect();
        st.serialize_field("variable_list", &list)?;
        st.end()
    }
}

/// True when every variable of every node has positive integer coefficients.
pub fn check_laurent_positive(g: &ExchangeGraph) -> bool {
    g.nodes.iter().all(|n| {
        n.seed
            .mutable_variables()
            .iter()
            .all(LaurentPoly::has_positive_integer_coefficients)
    })
}
