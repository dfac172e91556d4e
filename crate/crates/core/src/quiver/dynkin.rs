use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Quiver, QuiverError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    D,
    E,
}

/// Simply-laced Dynkin type with Bourbaki node numbering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DynkinType {
    pub family: Family,
    pub rank: usize,
}

impl DynkinType {
    pub fn new(family: Family, rank: usize) -> Result<Self, QuiverError> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
        };
        if ok {
            Ok(DynkinType { family, rank })
        } else {
            Err(QuiverError::Type(format!("{family:?}{rank}")))
        }
    }

    pub fn a(rank: usize) -> Self {
        Self::new(Family::A, rank).expect("valid A rank")
    }

    pub fn d(rank: usize) -> Self {
        Self::new(Family::D, rank).expect("valid D rank")
    }

    pub fn e(rank: usize) -> Self {
        Self::new(Family::E, rank).expect("valid E rank")
    }

    /// Parses a family letter (`"A"`, `"d"`, ...) and a rank.
    pub fn parse(family: &str, rank: usize) -> Result<Self, QuiverError> {
        let fam = match family.trim().to_ascii_uppercase().as_str() {
            "A" => Family::A,
            "D" => Family::D,
            "E" => Family::E,
            other => return Err(QuiverError::Type(format!("{other}{rank}"))),
        };
        Self::new(fam, rank)
    }

    /// Edges of the Dynkin diagram, 0-based, Bourbaki numbering.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.rank;
        match self.family {
            Family::A => (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect(),
            Family::D => {
                let mut e: Vec<_> = (0..n - 3).map(|i| (i, i + 1)).collect();
                e.push((n - 3, n - 2));
                e.push((n - 3, n - 1));
                e
            }
            Family::E => {
                // 1-3-4-5-6(-7-8) with 2 attached to 4
                let mut e = vec![(0, 2), (2, 3), (1, 3)];
                for i in 3..n - 1 {
                    e.push((i, i + 1));
                }
                e
            }
        }
    }

    /// Node colors of the bipartition; `true` marks the source side.
    ///
    /// Node 1 is placed on the sink side, so the A4 diagram is oriented
    /// 2 -> 1, 2 -> 3, 4 -> 3.
    pub fn sources(&self) -> Vec<bool> {
        let n = self.rank;
        let edges = self.edges();
        let mut color: Vec<Option<bool>> = vec![None; n];
        color[0] = Some(false);
        let mut stack = vec![0usize];
        while let Some(v) = stack.pop() {
            let c = color[v].expect("colored");
            for &(a, b) in &edges {
                let w = if a == v {
                    b
                } else if b == v {
                    a
                } else {
                    continue;
                };
                if color[w].is_none() {
                    color[w] = Some(!c);
                    stack.push(w);
                }
            }
        }
        color.into_iter().map(|c| c.expect("connected")).collect()
    }

    /// Arrows of the bipartitely oriented diagram, source to sink.
    pub fn oriented_edges(&self) -> Vec<(usize, usize)> {
        let src = self.sources();
        self.edges()
            .into_iter()
            .map(|(a, b)| if src[a] { (a, b) } else { (b, a) })
            .collect()
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

/// The bipartitely oriented Dynkin quiver, no frozen vertices. Labels are the
/// node numbers `"1"`, `"2"`, ...
pub fn dynkin_quiver(t: DynkinType) -> Quiver {
    let labels = (1..=t.rank).map(|i| i.to_string()).collect();
    Quiver::from_arrows(t.rank, 0, labels, &t.oriented_edges()).expect("Dynkin quiver is valid")
}

/// An arrow of `Q_{g,l}` between `(node, level)` pairs (both 1-based), tagged
/// with the family (1 horizontal, 2 diagonal, 3 vertical) that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct HlArrow {
    pub src: (usize, usize),
    pub dst: (usize, usize),
    pub family: u8,
}

/// Every arrow of `Q_{g,l}`, including the ones between frozen vertices.
pub fn hl_arrows(t: DynkinType, l: usize) -> Result<Vec<HlArrow>, QuiverError> {
    if l < 1 {
        return Err(QuiverError::Level(l));
    }
    let oriented = t.oriented_edges();
    let mut out = Vec::new();
    for k in 1..=l + 1 {
        for &(i, j) in &oriented {
            out.push(HlArrow { src: (i + 1, k), dst: (j + 1, k), family: 1 });
        }
    }
    for k in 1..=l {
        for &(i, j) in &oriented {
            out.push(HlArrow { src: (j + 1, k), dst: (i + 1, k + 1), family: 2 });
        }
    }
    for k in 1..=l {
        for i in 1..=t.rank {
            out.push(HlArrow { src: (i, k + 1), dst: (i, k), family: 3 });
        }
    }
    Ok(out)
}

/// Vertex index of `(node, level)` in `Q_{g,l}`: levels `1..=l` are mutable
/// and listed level by level, level `l + 1` is frozen and comes last.
pub(crate) fn hl_index(rank: usize, node: usize, level: usize) -> usize {
    (level - 1) * rank + (node - 1)
}

/// The quiver `Q_{g,l}` with its top level frozen. Mutable vertices are
/// labelled `V_{i,k}`, frozen ones `W_{i,l+1}`.
pub fn build_hl_quiver(t: DynkinType, l: usize) -> Result<Quiver, QuiverError> {
    let arrows = hl_arrows(t, l)?;
    let n = t.rank;
    let mut labels = Vec::with_capacity(n * (l + 1));
    for k in 1..=l + 1 {
        for i in 1..=n {
            let prefix = if k == l + 1 { "W" } else { "V" };
            labels.push(format!("{prefix}_{{{i},{k}}}"));
        }
    }
    let pairs: Vec<(usize, usize)> = arrows
        .iter()
        .filter(|a| a.src.1 <= l || a.dst.1 <= l)
        .map(|a| (hl_index(n, a.src.0, a.src.1), hl_index(n, a.dst.0, a.dst.1)))
        .collect();
    Quiver::from_arrows(n * l, n, labels, &pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Arrow;

    #[test]
    fn only_ade_accepted() {
        assert!(DynkinType::parse("B", 2).is_err());
        assert!(DynkinType::parse("D", 3).is_err());
        assert!(DynkinType::parse("E", 9).is_err());
        assert!(DynkinType::parse("A", 0).is_err());
        assert_eq!(DynkinType::parse("e", 6).unwrap(), DynkinType::e(6));
    }

    #[test]
    fn a1_has_no_arrows() {
        let q = dynkin_quiver(DynkinType::a(1));
        assert_eq!(q.n(), 1);
        assert!(q.arrows().is_empty());
    }

    #[test]
    fn a4_orientation() {
        let q = dynkin_quiver(DynkinType::a(4));
        let arrows: Vec<_> = q.arrows().iter().map(|a| (a.src + 1, a.dst + 1)).collect();
        assert_eq!(arrows, vec![(2, 1), (2, 3), (4, 3)]);
    }

    #[test]
    fn a2_single_arrow() {
        let q = dynkin_quiver(DynkinType::a(2));
        assert_eq!(q.arrows(), vec![Arrow { src: 1, dst: 0, mult: 1 }]);
    }

    #[test]
    fn edge_counts() {
        assert_eq!(DynkinType::d(4).edges().len(), 3);
        assert_eq!(DynkinType::e(6).edges().len(), 5);
        assert_eq!(DynkinType::e(8).edges().len(), 7);
        // E6 branch node is node 4 with degree 3
        let deg4 = DynkinType::e(6)
            .edges()
            .iter()
            .filter(|(a, b)| *a == 3 || *b == 3)
            .count();
        assert_eq!(deg4, 3);
    }

    #[test]
    fn level_zero_rejected() {
        assert_eq!(build_hl_quiver(DynkinType::a(2), 0), Err(QuiverError::Level(0)));
    }

    #[test]
    fn a2_level_one_count() {
        let arrows = hl_arrows(DynkinType::a(2), 1).unwrap();
        assert_eq!(arrows.len(), 2 + 1 + 2);
        let q = build_hl_quiver(DynkinType::a(2), 1).unwrap();
        assert_eq!((q.n_mut(), q.n_frozen()), (2, 2));
        // one frozen-frozen arrow is not representable
        assert_eq!(q.arrows().len(), 4);
    }

    #[test]
    fn a1_is_a_path_with_frozen_end() {
        for l in 1..=5 {
            let q = build_hl_quiver(DynkinType::a(1), l).unwrap();
            assert_eq!(q.n(), l + 1);
            assert_eq!(q.n_frozen(), 1);
            let arrows = q.arrows();
            assert_eq!(arrows.len(), l);
            // (1,k+1) -> (1,k): a directed path ending at V_{1,1}
            for a in &arrows {
                assert_eq!(a.src, a.dst + 1);
                assert_eq!(a.mult, 1);
            }
            assert_eq!(q.label(l), format!("W_{{1,{}}}", l + 1));
        }
    }
}
