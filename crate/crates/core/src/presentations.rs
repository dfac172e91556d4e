//! Explicit presentations of small finite-type cluster algebras by
//! generators and a single relation.
//!
//! Only membership of the relation in the ideal is verified. That the
//! relation generates the whole ideal is taken from the literature.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::exactalg::{AlgError, LaurentPoly, PolyJson, RationalFn, VarSet};
use crate::seeds::Census;

pub const COMPLETENESS_NOTE: &str = "relation verified, completeness per cited literature (Lampe)";

#[derive(Clone, Debug)]
pub struct Presentation {
    pub name: &'static str,
    /// Variables of the initial cluster the generators are written in.
    pub initial: VarSet,
    /// Generator symbols used by the relation.
    pub symbols: VarSet,
    pub generators: Vec<RationalFn>,
    pub relation: LaurentPoly,
    pub projective_degree: i64,
}

fn rf(s: &str, vars: &VarSet) -> RationalFn {
    RationalFn::parse(s, vars).expect("well-formed constant expression")
}

/// `u = x_1`, `v = (1 + x_1)/x_2`, `w = (1 + x_2)/x_1` with `uvw - u - v - 1`.
pub fn a2_presentation() -> Presentation {
    let initial = VarSet::new(["x_1", "x_2"]).expect("distinct");
    let symbols = VarSet::new(["u", "v", "w"]).expect("distinct");
    Presentation {
        name: "A2",
        generators: vec![
            rf("x_1", &initial),
            rf("(1 + x_1) / (x_2)", &initial),
            rf("(1 + x_2) / (x_1)", &initial),
        ],
        relation: LaurentPoly::parse("u*v*w - u - v - 1", &symbols).expect("well-formed"),
        projective_degree: 3,
        initial,
        symbols,
    }
}

/// Generators `x_1, x_3, w = (1 + x_2)/x_1, t = (1 + x_2 + x_1 x_3)/(x_2 x_3)`
/// with `t w x_1 x_3 - t x_3 - w x_1 - x_1 x_3`.
pub fn a3_presentation() -> Presentation {
    let initial = VarSet::new(["x_1", "x_2", "x_3"]).expect("distinct");
    let symbols = VarSet::new(["x_1", "x_3", "w", "t"]).expect("distinct");
    Presentation {
        name: "A3",
        generators: vec![
            rf("x_1", &initial),
            rf("x_3", &initial),
            rf("(1 + x_2) / (x_1)", &initial),
            rf("(1 + x_2 + x_1*x_3) / (x_2*x_3)", &initial),
        ],
        relation: LaurentPoly::parse("t*w*x_1*x_3 - t*x_3 - w*x_1 - x_1*x_3", &symbols)
            .expect("well-formed"),
        projective_degree: 4,
        initial,
        symbols,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Verification {
    pub name: &'static str,
    pub passed: bool,
    pub trace: Vec<String>,
    pub note: &'static str,
}

impl Presentation {
    /// The relation with the generator expressions substituted.
    pub fn substituted(&self) -> Result<RationalFn, AlgError> {
        self.relation.substitute(&self.generators, &self.initial)
    }

    /// Copy with the relation replaced, for negative checks.
    pub fn with_relation(&self, relation: LaurentPoly) -> Presentation {
        Presentation {
            relation,
            ..self.clone()
        }
    }

    pub fn total_degree(&self) -> i64 {
        self.relation.total_degree().unwrap_or(0)
    }
}

pub fn verify_presentation(p: &Presentation) -> Verification {
    let mut trace = vec![format!("relation: {} = 0", p.relation)];
    for (name, g) in p.symbols.names().iter().zip(&p.generators) {
        trace.push(format!("{name} = {g}"));
    }
    let passed = match p.substituted() {
        Ok(r) => {
            trace.push(format!("after substitution: {r}"));
            r.is_zero()
        }
        Err(e) => {
            trace.push(format!("substitution failed: {e}"));
            false
        }
    };
    Verification {
        name: p.name,
        passed,
        trace,
        note: COMPLETENESS_NOTE,
    }
}

/// Multiplies each term by a power of a new variable `z` (appended last) so
/// that every term reaches the total degree of the polynomial.
pub fn homogenize(p: &LaurentPoly, z: &str) -> Result<LaurentPoly, AlgError> {
    let mut names = p.vars().names().to_vec();
    names.push(z.to_string());
    let target = VarSet::new(names)?;
    let d = p.total_degree().unwrap_or(0);
    let terms = p.terms().map(|(m, c)| {
        let mut e = m.exponents().to_vec();
        e.push((d - m.degree()) as i32);
        (e, c.clone())
    });
    LaurentPoly::from_terms(&target, terms)
}

/// For each generator, the index of the census variable equal to it.
pub fn census_membership(p: &Presentation, census: &Census) -> Vec<Option<usize>> {
    p.generators
        .iter()
        .map(|g| {
            census.variables.iter().position(|v| {
                v.vars().names() == p.initial.names()
                    && v.rebase(&p.initial)
                        .map(|v| RationalFn::from_poly(v).rf_equal(g))
                        .unwrap_or(false)
            })
        })
        .collect()
}

impl Serialize for Presentation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Presentation", 5)?;
        st.serialize_field("name", self.name)?;
        let gens: Vec<(String, String)> = self
            .symbols
            .names()
            .iter()
            .cloned()
            .zip(self.generators.iter().map(|g| g.to_string()))
            .collect();
        st.serialize_field("generators", &gens)?;
        st.serialize_field("relation", &PolyJson::from(&self.relation))?;
        st.serialize_field("relation_text", &self.relation.to_string())?;
        st.serialize_field("projective_degree", &self.projective_degree)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{dynkin_quiver, DynkinType};
    use crate::seeds::{census, exchange_graph, Seed, DEFAULT_BUDGET};

    #[test]
    fn shipped_presentations_verify() {
        for p in [a2_presentation(), a3_presentation()] {
            let v = verify_presentation(&p);
            assert!(v.passed, "{:?}", v.trace);
            assert_eq!(p.total_degree(), p.projective_degree);
        }
    }

    #[test]
    fn perturbed_relation_fails() {
        let p = a2_presentation();
        let bad = LaurentPoly::parse("u*v*w - u - v - 2", &p.symbols).unwrap();
        assert!(!verify_presentation(&p.with_relation(bad)).passed);
    }

    #[test]
    fn intermediate_identity() {
        let p = a3_presentation();
        let w = &p.generators[2];
        let x1 = &p.generators[0];
        let one = RationalFn::from_poly(LaurentPoly::one(&p.initial));
        let lhs = w.mul(x1).unwrap().sub(&one).unwrap();
        assert!(lhs.rf_equal(&rf("x_2", &p.initial)));
    }

    #[test]
    fn homogenized_forms() {
        let a2 = a2_presentation();
        let h = homogenize(&a2.relation, "z").unwrap();
        assert_eq!(h, LaurentPoly::parse("u*v*w - u*z^2 - v*z^2 - z^3", h.vars()).unwrap());
        let a3 = a3_presentation();
        let h = homogenize(&a3.relation, "z").unwrap();
        let expected =
            LaurentPoly::parse("t*w*x_1*x_3 - t*x_3*z^2 - w*x_1*z^2 - x_1*x_3*z^2", h.vars()).unwrap();
        assert_eq!(h, expected);
        assert_eq!(h.total_degree(), Some(4));
    }

    #[test]
    fn generators_are_cluster_variables() {
        for (p, n) in [(a2_presentation(), 2), (a3_presentation(), 3)] {
            let s = Seed::initial(dynkin_quiver(DynkinType::a(n)));
            let c = census(&exchange_graph(&s, DEFAULT_BUDGET).unwrap()).unwrap();
            let found = census_membership(&p, &c);
            assert!(found.iter().all(Option::is_some), "{}: {found:?}", p.name);
        }
    }
}
