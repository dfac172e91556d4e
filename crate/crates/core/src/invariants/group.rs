use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Base {
    Q,
    Z,
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Base::Q => "Q",
            Base::Z => "Z",
        })
    }
}

/// Symbolic group expression. `Dihedral { n }` has order `2n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupExpr {
    Trivial,
    Z,
    Zn { n: u64 },
    Dihedral { n: u64 },
    Sym { n: u64 },
    Product { factors: Vec<GroupExpr> },
    /// `count` copies of `base` as direct factors.
    Power { base: Box<GroupExpr>, count: u64 },
    Semidirect { actor: Box<GroupExpr>, normal: Box<GroupExpr> },
    #[serde(rename = "GA")]
    GA { n: u64, base: Base },
    Af { n: u64, base: Base },
    Jonq { n: u64, base: Base },
    Bf { n: u64, base: Base },
    Amalgam { left: Box<GroupExpr>, right: Box<GroupExpr>, over: Box<GroupExpr> },
    /// A group known only by name, such as an uncomputed Picard summand.
    Named { name: String },
    Unknown { tag: String },
}

impl GroupExpr {
    pub fn zn(n: u64) -> Self {
        GroupExpr::Zn { n }
    }

    pub fn dihedral(n: u64) -> Self {
        GroupExpr::Dihedral { n }
    }

    pub fn sym(n: u64) -> Self {
        GroupExpr::Sym { n }
    }

    pub fn ga(n: u64, base: Base) -> Self {
        GroupExpr::GA { n, base }
    }

    pub fn product(factors: Vec<GroupExpr>) -> Self {
        GroupExpr::Product { factors }
    }

    pub fn semidirect(actor: GroupExpr, normal: GroupExpr) -> Self {
        GroupExpr::Semidirect {
            actor: Box::new(actor),
            normal: Box::new(normal),
        }
    }

    pub fn power(base: GroupExpr, count: u64) -> Self {
        GroupExpr::Power {
            base: Box::new(base),
            count,
        }
    }

    pub fn named(name: impl Into<String>) -> Self {
        GroupExpr::Named { name: name.into() }
    }

    pub fn unknown(tag: impl Into<String>) -> Self {
        GroupExpr::Unknown { tag: tag.into() }
    }

    /// The two-variable amalgam of the affine and triangular subgroups over
    /// their intersection.
    pub fn ga2_amalgam(base: Base) -> Self {
        GroupExpr::Amalgam {
            left: Box::new(GroupExpr::Af { n: 2, base }),
            right: Box::new(GroupExpr::Jonq { n: 2, base }),
            over: Box::new(GroupExpr::Bf { n: 2, base }),
        }
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self, GroupExpr::Trivial)
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, GroupExpr::Unknown { .. })
    }

    /// Order for finite expressions built from cyclic, dihedral, symmetric
    /// groups and their direct products.
    pub fn finite_order(&self) -> Option<u128> {
        match self {
            GroupExpr::Trivial => Some(1),
            GroupExpr::Zn { n } => Some(*n as u128),
            GroupExpr::Dihedral { n } => Some(2 * *n as u128),
            GroupExpr::Sym { n } => (1..=*n as u128).try_fold(1u128, |a, k| a.checked_mul(k)),
            GroupExpr::Product { factors } => factors
                .iter()
                .try_fold(1u128, |a, f| a.checked_mul(f.finite_order()?)),
            GroupExpr::Power { count: 0, .. } => Some(1),
            GroupExpr::Power { base, count } => {
                let b = base.finite_order()?;
                b.checked_pow(u32::try_from(*count).ok()?)
            }
            GroupExpr::Semidirect { actor, normal } => {
                actor.finite_order()?.checked_mul(normal.finite_order()?)
            }
            _ => None,
        }
    }

    /// Removes trivial factors, flattens nested products and collapses
    /// semidirect products with a trivial side. Idempotent.
    pub fn simplify(&self) -> GroupExpr {
        match self {
            GroupExpr::Product { factors } => {
                let mut flat = Vec::new();
                for f in factors {
                    match f.simplify() {
                        GroupExpr::Trivial => {}
                        GroupExpr::Product { factors } => flat.extend(factors),
                        other => flat.push(other),
                    }
                }
                match flat.len() {
                    0 => GroupExpr::Trivial,
                    1 => flat.pop().expect("one factor"),
                    _ => GroupExpr::Product { factors: flat },
                }
            }
            GroupExpr::Power { base, count } => {
                let b = base.simplify();
                match (*count, b) {
                    (0, _) | (_, GroupExpr::Trivial) => GroupExpr::Trivial,
                    (1, b) => b,
                    (count, b) => GroupExpr::Power {
                        base: Box::new(b),
                        count,
                    },
                }
            }
            GroupExpr::Semidirect { actor, normal } => {
                match (actor.simplify(), normal.simplify()) {
                    (a, GroupExpr::Trivial) => a,
                    (GroupExpr::Trivial, n) => n,
                    (a, n) => GroupExpr::semidirect(a, n),
                }
            }
            GroupExpr::Amalgam { left, right, over } => GroupExpr::Amalgam {
                left: Box::new(left.simplify()),
                right: Box::new(right.simplify()),
                over: Box::new(over.simplify()),
            },
            GroupExpr::Zn { n: 1 } | GroupExpr::Sym { n: 0 | 1 } => GroupExpr::Trivial,
            other => other.clone(),
        }
    }

    fn is_compound(&self) -> bool {
        matches!(
            self,
            GroupExpr::Product { .. } | GroupExpr::Semidirect { .. } | GroupExpr::Amalgam { .. }
        )
    }
}

fn wrapped(g: &GroupExpr) -> String {
    if g.is_compound() {
        format!("({g})")
    } else {
        g.to_string()
    }
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpr::Trivial => f.write_str("0"),
            GroupExpr::Z => f.write_str("Z"),
            GroupExpr::Zn { n } => write!(f, "Z{n}"),
            GroupExpr::Dihedral { n } => write!(f, "D{n}"),
            GroupExpr::Sym { n } => write!(f, "S{n}"),
            GroupExpr::Product { factors } => {
                let parts: Vec<String> = factors.iter().map(wrapped).collect();
                f.write_str(&parts.join(" x "))
            }
            GroupExpr::Power { base, count } => write!(f, "{}^{count}", wrapped(base)),
            GroupExpr::Semidirect { actor, normal } => {
                write!(f, "{} ⋉ {}", wrapped(actor), wrapped(normal))
            }
            GroupExpr::GA { n, base } => write!(f, "GA_{n}({base})"),
            GroupExpr::Af { n, base } => write!(f, "Af_{n}({base})"),
            GroupExpr::Jonq { n, base } => write!(f, "J_{n}({base})"),
            GroupExpr::Bf { n, base } => write!(f, "Bf_{n}({base})"),
            GroupExpr::Amalgam { left, right, over } => {
                write!(f, "{} *_{} {}", wrapped(left), wrapped(over), wrapped(right))
            }
            GroupExpr::Named { name } => f.write_str(name),
            GroupExpr::Unknown { tag } => write!(f, "?({tag})"),
        }
    }
}
