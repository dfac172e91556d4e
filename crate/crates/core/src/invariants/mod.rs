//! Rule engine for Picard groups, K_0 and automorphism groups of the rings
//! that arise as cluster algebras and their principal parts.
//!
//! Every derived value is returned together with the name of the rule that
//! produced it. A ring with relations never receives a fabricated answer; it
//! gets an `Unknown` leaf instead.

mod group;

pub use group::{Base, GroupExpr};

use num_bigint::BigUint;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::exactalg::{LaurentPoly, PolyJson};
use crate::quiver::{DynkinType, Family, QuiverError};

pub const RULE_POLYNOMIAL_PIC: &str =
    "Weibel 1.6: Pic_com of Q[t_1^±..t_m^±, x_1..x_n] is 0";
pub const RULE_COYKENDALL: &str =
    "Coykendall 2.2: Pic_com R[x_1..x_n] = Pic_com R iff R is seminormal, and Pic_com Z = 0";
pub const RULE_WEIBEL_LAURENT: &str =
    "Weibel: Pic_com A[t^±] splits into Pic_com A, m copies of LPic_com A and 2^k C(m,k) copies of N^k Pic_com A (all read as direct sums)";
pub const RULE_NEEDS_GEOMETRY: &str = "no rule applies to a quotient ring: Pic_com needs geometry";
pub const RULE_POLYNOMIAL_AUT: &str = "Aut of a polynomial ring in n variables over k is GA_n(k)";
pub const RULE_NO_AUT: &str = "no rule: automorphisms of this ring are not tabulated";
pub const RULE_YEKUTIELI: &str = "Yekutieli: Pic_k(A) = Aut_k(A) ⋉ Pic_com(A)";
pub const RULE_QUILLEN_SUSLIN: &str =
    "Quillen-Suslin: projectives over a polynomial ring over a field are free, so K_0 = Z";
pub const RULE_CHWW: &str =
    "CHWW: K_0 of a homogeneous coordinate ring is Z ⊕ Pic ⊕ H^p(X, Ω^p(k)) summands";
pub const RULE_NO_K0: &str = "no rule: K_0 of this ring is not computed";
pub const RULE_CHANG_ZHU: &str =
    "Chang-Zhu: cluster automorphism groups of finite-type principal parts";
pub const RULE_NOT_FINITE_TYPE: &str =
    "no rule: the principal part is not identified with a Dynkin type";
pub const RULE_CLUSTER_VARIETY: &str =
    "no rule: Pic_com of the finite-type cluster variety is not computed";
pub const RULE_SCOTT_UFD: &str =
    "Scott: Grassmannian coordinate ring; Laface: it is a UFD, so Cl = 0";
pub const RULE_GA2_AMALGAM: &str = "Jung-van der Kulk: GA_2(k) = Af_2(k) *_Bf_2(k) J_2(k)";

/// Coarse description of a commutative ring `base[x_1..x_n, t_1^±..t_m^±] / (relations)`.
#[derive(Clone, Debug, Serialize)]
pub struct RingDescriptor {
    pub base: Base,
    pub n_poly: usize,
    pub n_laurent: usize,
    #[serde(serialize_with = "serialize_relations")]
    pub relations: Vec<LaurentPoly>,
    pub flags: RingFlags,
}

/// `None` means unknown.
#[derive(Clone, Debug, Default, Serialize)]
pub struct RingFlags {
    /// Seminormality of the coefficient ring `base[x_1..x_n]`.
    pub seminormal: Option<bool>,
    pub ufd: Option<bool>,
    /// Anodality of the coefficient ring (only meaningful in dimension 1).
    pub anodal: Option<bool>,
    pub finite_type_tag: Option<DynkinType>,
    /// `(k, m)` when the ring is the homogeneous coordinate ring of `Gr(k, m)`.
    pub grassmannian: Option<(usize, usize)>,
}

fn serialize_relations<S: Serializer>(rel: &[LaurentPoly], s: S) -> Result<S::Ok, S::Error> {
    let json: Vec<PolyJson> = rel.iter().map(PolyJson::from).collect();
    json.serialize(s)
}

impl RingDescriptor {
    pub fn polynomial(base: Base, n: usize) -> Self {
        Self::laurent(base, n, 0)
    }

    pub fn laurent(base: Base, n_poly: usize, n_laurent: usize) -> Self {
        RingDescriptor {
            base,
            n_poly,
            n_laurent,
            relations: Vec::new(),
            flags: RingFlags {
                seminormal: Some(true),
                ufd: Some(true),
                ..RingFlags::default()
            },
        }
    }

    pub fn quotient(base: Base, n_poly: usize, relations: Vec<LaurentPoly>) -> Self {
        RingDescriptor {
            base,
            n_poly,
            n_laurent: 0,
            relations,
            flags: RingFlags::default(),
        }
    }

    pub fn is_free(&self) -> bool {
        self.relations.is_empty()
    }

    /// `R ⊗ R` for a free descriptor; `None` when relations are present.
    pub fn tensor_square(&self) -> Option<RingDescriptor> {
        self.is_free().then(|| RingDescriptor {
            n_poly: 2 * self.n_poly,
            n_laurent: 2 * self.n_laurent,
            flags: RingFlags {
                finite_type_tag: None,
                grassmannian: None,
                ..self.flags.clone()
            },
            ..self.clone()
        })
    }
}

/// A derived value with the rule that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Derived {
    pub value: GroupExpr,
    pub rule: &'static str,
}

impl Derived {
    fn new(value: GroupExpr, rule: &'static str) -> Self {
        Derived {
            value: value.simplify(),
            rule,
        }
    }
}

fn binomial(m: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (m - i) / (i + 1))
}

/// First matching rule wins.
pub fn pic_com(r: &RingDescriptor) -> Derived {
    if !r.is_free() {
        return Derived::new(GroupExpr::unknown("needs geometry"), RULE_NEEDS_GEOMETRY);
    }
    match (r.base, r.n_laurent) {
        (Base::Q, _) => Derived::new(GroupExpr::Trivial, RULE_POLYNOMIAL_PIC),
        (Base::Z, 0) => match r.flags.seminormal {
            Some(true) => Derived::new(GroupExpr::Trivial, RULE_COYKENDALL),
            _ => Derived::new(GroupExpr::unknown("seminormality not known"), RULE_COYKENDALL),
        },
        (Base::Z, m) => {
            let coefficient_ring = RingDescriptor {
                n_laurent: 0,
                ..r.clone()
            };
            let mut factors = vec![pic_com(&coefficient_ring).value];
            let lpic = match r.flags.anodal {
                Some(true) => GroupExpr::Trivial,
                _ => GroupExpr::named("LPic_com(A)"),
            };
            factors.push(GroupExpr::power(lpic, m as u64));
            for k in 1..=m as u64 {
                let npic = match r.flags.seminormal {
                    Some(true) => GroupExpr::Trivial,
                    _ => GroupExpr::named(format!("N^{k}Pic_com(A)")),
                };
                factors.push(GroupExpr::power(npic, (1u64 << k) * binomial(m as u64, k)));
            }
            Derived::new(GroupExpr::product(factors), RULE_WEIBEL_LAURENT)
        }
    }
}

pub fn aut(r: &RingDescriptor) -> Derived {
    if !r.is_free() {
        return Derived::new(GroupExpr::unknown("needs geometry"), RULE_NEEDS_GEOMETRY);
    }
    if r.n_laurent > 0 {
        return Derived::new(GroupExpr::unknown("Laurent automorphisms"), RULE_NO_AUT);
    }
    if r.n_poly == 0 {
        return Derived::new(GroupExpr::Trivial, RULE_POLYNOMIAL_AUT);
    }
    Derived::new(GroupExpr::ga(r.n_poly as u64, r.base), RULE_POLYNOMIAL_AUT)
}

/// Invertible bimodules: `Aut ⋉ Pic_com`, collapsed when `Pic_com` is trivial.
pub fn pic_bimodule(r: &RingDescriptor) -> Derived {
    let value = GroupExpr::semidirect(aut(r).value, pic_com(r).value);
    Derived::new(value, RULE_YEKUTIELI)
}

pub fn k0(r: &RingDescriptor) -> Derived {
    if let Some((k, m)) = r.flags.grassmannian {
        let value = GroupExpr::product(vec![
            GroupExpr::Z,
            GroupExpr::unknown(format!("Pic of Gr({k},{m}) coordinate ring")),
            GroupExpr::unknown(format!("sum of H^p(X, Ω^p(k)) for X = Gr({k},{m})")),
        ]);
        return Derived::new(value, RULE_CHWW);
    }
    if r.is_free() && r.n_laurent == 0 && r.base == Base::Q {
        return Derived::new(GroupExpr::Z, RULE_QUILLEN_SUSLIN);
    }
    Derived::new(GroupExpr::unknown("K_0"), RULE_NO_K0)
}

/// Cluster automorphism group of the principal part of finite type `t`.
pub fn aut_cl_table(t: DynkinType) -> GroupExpr {
    let n = t.rank as u64;
    match (t.family, n) {
        (Family::A, 1) => GroupExpr::zn(2),
        (Family::A, n) => GroupExpr::dihedral(n + 3),
        (Family::D, 4) => GroupExpr::product(vec![GroupExpr::dihedral(4), GroupExpr::sym(3)]),
        (Family::D, n) => GroupExpr::product(vec![GroupExpr::dihedral(n), GroupExpr::zn(2)]),
        (Family::E, 6) => GroupExpr::dihedral(14),
        (Family::E, 7) => GroupExpr::dihedral(10),
        (Family::E, _) => GroupExpr::dihedral(16),
    }
}

/// Largest finite subgroup order of `GL_n(Q)` and the group attaining it.
pub fn max_finite_subgroup_order(n: u32) -> (BigUint, &'static str) {
    let exceptional: Option<(u64, &'static str)> = match n {
        2 => Some((12, "W(G2)")),
        4 => Some((1152, "W(F4)")),
        6 => Some((103_680, "W(E6) x Z2")),
        7 => Some((2_903_040, "W(E7)")),
        8 => Some((696_729_600, "W(E8)")),
        9 => Some((1_393_459_200, "W(E8) x W(A1)")),
        10 => Some((8_360_755_200, "W(E8) x W(G2)")),
        _ => None,
    };
    match exceptional {
        Some((order, name)) => (BigUint::from(order), name),
        None => (hyperoctahedral_order(n), "orthogonal"),
    }
}

/// `2^n n!`, the order of the signed permutation matrices.
pub fn hyperoctahedral_order(n: u32) -> BigUint {
    (1..=n).fold(BigUint::from(1u32) << n, |acc, k| acc * k)
}

pub fn grassmannian_for_type(t: DynkinType) -> Option<(usize, usize)> {
    match (t.family, t.rank) {
        (Family::A, n) => Some((2, n + 3)),
        (Family::D, 4) => Some((3, 6)),
        (Family::E, 6) => Some((3, 7)),
        (Family::E, 8) => Some((3, 8)),
        _ => None,
    }
}

/// Dynkin type of the mutable part of `Q_{t,l}` when it is one.
pub fn principal_type(t: DynkinType, l: usize) -> Option<DynkinType> {
    if l == 1 {
        Some(t)
    } else if t == DynkinType::a(1) && l >= 1 {
        Some(DynkinType::a(l))
    } else {
        None
    }
}

#[derive(Clone, Debug)]
pub struct InvariantReport {
    pub dynkin: DynkinType,
    pub level: usize,
    pub pic_com_a: Derived,
    pub aut_a: Derived,
    pub pic_a: Derived,
    pub k0_a: Derived,
    pub k0_tensor_square: Derived,
    pub aut_cl_aex: Derived,
    pub pic_com_aex: Derived,
    pub k0_aex: Derived,
    pub grassmannian: Option<(usize, usize)>,
    pub cl_aex: Option<Derived>,
    pub structural_notes: Vec<String>,
}

pub fn invariant_report(t: DynkinType, l: usize) -> Result<InvariantReport, QuiverError> {
    if l < 1 {
        return Err(QuiverError::Level(l));
    }
    let generators = t.rank * (l + 1);
    let a = RingDescriptor {
        flags: RingFlags {
            seminormal: Some(true),
            ufd: Some(true),
            finite_type_tag: Some(t),
            ..RingFlags::default()
        },
        ..RingDescriptor::polynomial(Base::Q, generators)
    };
    let aa = a.tensor_square().expect("free descriptor");
    let principal = principal_type(t, l);

    let aut_cl_aex = match principal {
        Some(p) => Derived::new(aut_cl_table(p), RULE_CHANG_ZHU),
        None => Derived::new(GroupExpr::unknown("principal part type"), RULE_NOT_FINITE_TYPE),
    };
    let grassmannian = principal.and_then(grassmannian_for_type);
    // A_1 with one level: the principal part is Q[x, 2/x] = Q[x^±].
    let pic_com_aex = if principal == Some(DynkinType::a(1)) {
        pic_com(&RingDescriptor::laurent(Base::Q, 0, 1))
    } else {
        Derived::new(GroupExpr::unknown("cluster variety geometry"), RULE_CLUSTER_VARIETY)
    };
    let k0_aex = match grassmannian {
        Some(g) => {
            let mut d = RingDescriptor::quotient(Base::Q, 0, Vec::new());
            d.flags.grassmannian = Some(g);
            k0(&d)
        }
        None => Derived::new(GroupExpr::unknown("K_0"), RULE_NO_K0),
    };
    let cl_aex = grassmannian.map(|_| Derived::new(GroupExpr::Trivial, RULE_SCOTT_UFD));

    let mut structural_notes = Vec::new();
    if generators == 2 {
        structural_notes.push(format!(
            "GA_2(Q) = {} ({RULE_GA2_AMALGAM})",
            GroupExpr::ga2_amalgam(Base::Q)
        ));
    }
    Ok(InvariantReport {
        dynkin: t,
        level: l,
        pic_com_a: pic_com(&a),
        aut_a: aut(&a),
        pic_a: pic_bimodule(&a),
        k0_a: k0(&a),
        k0_tensor_square: k0(&aa),
        aut_cl_aex,
        pic_com_aex,
        k0_aex,
        grassmannian,
        cl_aex,
        structural_notes,
    })
}

impl InvariantReport {
    fn cells(&self) -> Vec<(&'static str, &Derived)> {
        let mut v = vec![
            ("A.pic_com", &self.pic_com_a),
            ("A.aut", &self.aut_a),
            ("A.pic", &self.pic_a),
            ("A.k0", &self.k0_a),
            ("A.k0_tensor_square", &self.k0_tensor_square),
            ("Aex.aut_cl", &self.aut_cl_aex),
            ("Aex.pic_com", &self.pic_com_aex),
            ("Aex.k0", &self.k0_aex),
        ];
        if let Some(cl) = &self.cl_aex {
            v.push(("Aex.cl", cl));
        }
        v
    }

    /// One `cell: rule` line per entry, followed by structural notes.
    pub fn notes(&self) -> Vec<String> {
        let mut notes: Vec<String> = self
            .cells()
            .into_iter()
            .map(|(cell, d)| format!("{cell}: {}", d.rule))
            .collect();
        notes.extend(self.structural_notes.iter().cloned());
        notes
    }
}

struct Cells<'a>(Vec<(&'static str, Option<&'a GroupExpr>)>);

impl Serialize for Cells<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

impl Serialize for InvariantReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let a = Cells(vec![
            ("pic_com", Some(&self.pic_com_a.value)),
            ("aut", Some(&self.aut_a.value)),
            ("pic", Some(&self.pic_a.value)),
            ("k0", Some(&self.k0_a.value)),
            ("k0_tensor_square", Some(&self.k0_tensor_square.value)),
        ]);
        let gr = self.grassmannian.map(|(k, m)| format!("Gr({k},{m})"));
        let mut m = s.serialize_map(Some(5))?;
        m.serialize_entry("type", &self.dynkin.to_string())?;
        m.serialize_entry("l", &self.level)?;
        m.serialize_entry("A", &a)?;
        m.serialize_entry(
            "Aex",
            &AexCells {
                cells: Cells(vec![
                    ("aut_cl", Some(&self.aut_cl_aex.value)),
                    ("pic_com", Some(&self.pic_com_aex.value)),
                    ("k0", Some(&self.k0_aex.value)),
                    ("cl", self.cl_aex.as_ref().map(|d| &d.value)),
                ]),
                grassmannian: gr,
            },
        )?;
        m.serialize_entry("notes", &self.notes())?;
        m.end()
    }
}

struct AexCells<'a> {
    cells: Cells<'a>,
    grassmannian: Option<String>,
}

impl Serialize for AexCells<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.cells.0.len() + 1))?;
        for (k, v) in &self.cells.0 {
            m.serialize_entry(k, v)?;
        }
        m.serialize_entry("grassmannian", &self.grassmannian)?;
        m.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::VarSet;

    #[test]
    fn pic_com_rules() {
        assert_eq!(pic_com(&RingDescriptor::polynomial(Base::Q, 4)).value, GroupExpr::Trivial);
        let z = pic_com(&RingDescriptor::polynomial(Base::Z, 3));
        assert_eq!((z.value, z.rule), (GroupExpr::Trivial, RULE_COYKENDALL));
        let vars = VarSet::new(["u", "v", "w"]).unwrap();
        let rel = LaurentPoly::parse("u*v*w - u - v - 1", &vars).unwrap();
        let hyper = RingDescriptor::quotient(Base::Q, 3, vec![rel]);
        assert_eq!(pic_com(&hyper).value, GroupExpr::unknown("needs geometry"));
    }

    #[test]
    fn weibel_shape_over_z() {
        let mut r = RingDescriptor::laurent(Base::Z, 1, 2);
        r.flags.seminormal = None;
        let d = pic_com(&r);
        assert_eq!(d.rule, RULE_WEIBEL_LAURENT);
        // m = 2: LPic twice, N^1 Pic 2^1 C(2,1) = 4 times, N^2 Pic 2^2 C(2,2) = 4 times
        assert_eq!(
            d.value.to_string(),
            "?(seminormality not known) x LPic_com(A)^2 x N^1Pic_com(A)^4 x N^2Pic_com(A)^4"
        );
        r.flags.seminormal = Some(true);
        r.flags.anodal = Some(true);
        assert_eq!(pic_com(&r).value, GroupExpr::Trivial);
    }

    #[test]
    fn bimodule_pic() {
        assert_eq!(
            pic_bimodule(&RingDescriptor::polynomial(Base::Q, 2)).value,
            GroupExpr::ga(2, Base::Q)
        );
        let vars = VarSet::new(["u"]).unwrap();
        let odd = RingDescriptor::quotient(Base::Q, 1, vec![LaurentPoly::var(&vars, 0)]);
        assert!(matches!(pic_bimodule(&odd).value, GroupExpr::Semidirect { .. }));
    }

    #[test]
    fn k0_rules() {
        let r = RingDescriptor::polynomial(Base::Q, 5);
        assert_eq!(k0(&r).value, GroupExpr::Z);
        assert_eq!(k0(&r.tensor_square().unwrap()).value, GroupExpr::Z);
        let mut gr = RingDescriptor::quotient(Base::Q, 0, Vec::new());
        gr.flags.grassmannian = Some((2, 5));
        let v = k0(&gr).value;
        assert!(matches!(&v, GroupExpr::Product { factors } if factors[0] == GroupExpr::Z && factors.len() == 3));
    }

    #[test]
    fn table_rows() {
        assert_eq!(aut_cl_table(DynkinType::a(1)), GroupExpr::zn(2));
        assert_eq!(aut_cl_table(DynkinType::a(2)), GroupExpr::dihedral(5));
        assert_eq!(aut_cl_table(DynkinType::d(4)).finite_order(), Some(48));
        assert_eq!(aut_cl_table(DynkinType::d(5)).to_string(), "D5 x Z2");
        assert_eq!(aut_cl_table(DynkinType::e(6)), GroupExpr::dihedral(14));
        assert_eq!(aut_cl_table(DynkinType::e(7)), GroupExpr::dihedral(10));
        assert_eq!(aut_cl_table(DynkinType::e(8)), GroupExpr::dihedral(16));
    }

    #[test]
    fn friedland_values() {
        assert_eq!(max_finite_subgroup_order(3).0, BigUint::from(48u32));
        assert_eq!(hyperoctahedral_order(8), BigUint::from(10_321_920u32));
        for n in [2, 4, 6, 7, 8, 9, 10] {
            let (order, _) = max_finite_subgroup_order(n);
            assert!(order > hyperoctahedral_order(n), "n = {n}");
        }
    }

    #[test]
    fn grassmannians() {
        assert_eq!(grassmannian_for_type(DynkinType::a(2)), Some((2, 5)));
        assert_eq!(grassmannian_for_type(DynkinType::e(6)), Some((3, 7)));
        assert_eq!(grassmannian_for_type(DynkinType::d(5)), None);
        assert_eq!(grassmannian_for_type(DynkinType::e(7)), None);
    }

    #[test]
    fn reports() {
        let r = invariant_report(DynkinType::a(1), 1).unwrap();
        assert_eq!(r.pic_a.value, GroupExpr::ga(2, Base::Q));
        assert_eq!(r.pic_com_a.value, GroupExpr::Trivial);
        assert_eq!(r.k0_a.value, GroupExpr::Z);
        assert_eq!(r.k0_tensor_square.value, GroupExpr::Z);
        assert_eq!(r.aut_cl_aex.value, GroupExpr::zn(2));
        assert_eq!(r.structural_notes.len(), 1);

        let r = invariant_report(DynkinType::a(3), 1).unwrap();
        assert_eq!(r.pic_a.value, GroupExpr::ga(6, Base::Q));
        assert_eq!(r.aut_cl_aex.value, GroupExpr::dihedral(6));

        let r = invariant_report(DynkinType::a(1), 5).unwrap();
        assert_eq!(r.pic_a.value, GroupExpr::ga(6, Base::Q));
        assert_eq!(r.aut_cl_aex.value, GroupExpr::dihedral(8));

        let r = invariant_report(DynkinType::a(2), 2).unwrap();
        assert!(r.aut_cl_aex.value.is_unknown());
        assert!(invariant_report(DynkinType::a(2), 0).is_err());
    }

    #[test]
    fn report_json_layout() {
        let r = invariant_report(DynkinType::a(2), 1).unwrap();
        let j = serde_json::to_value(&r).unwrap();
        assert_eq!(j["A"]["pic"]["kind"], "GA");
        assert_eq!(j["A"]["pic"]["n"], 4);
        assert_eq!(j["Aex"]["aut_cl"]["n"], 5);
        assert_eq!(j["Aex"]["grassmannian"], "Gr(2,5)");
        assert_eq!(j["Aex"]["cl"]["kind"], "trivial");
        assert_eq!(j["notes"].as_array().unwrap().len(), r.notes().len());
    }
}
