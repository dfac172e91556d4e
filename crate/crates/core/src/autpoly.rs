//! Endomorphisms of polynomial rings given by the images of the generators.

use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exactalg::{AlgError, Coef, LaurentPoly, Monomial, PolyJson, VarSet};
use crate::invariants::Base;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutPolyError {
    #[error("image {index} involves a variable of index >= {index}")]
    Triangularity { index: usize },
    #[error("not a unit: {0}")]
    Unit(String),
    #[error("image {0} is not a polynomial")]
    NotPolynomial(usize),
    #[error("endomorphisms live over different variable sets")]
    VarSetMismatch,
    #[error("internal consistency check failed: {0}")]
    Internal(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error(transparent)]
    Alg(#[from] AlgError),
}

type Result<T> = std::result::Result<T, AutPolyError>;

/// What is known about membership in the tame subgroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Tameness {
    /// A word in affine and triangular generators.
    Tame,
    /// Recorded as non-tame over a non-field base; over Q every nonzero
    /// parameter is a unit and the claim does not apply.
    NonTameOverNonFieldBase,
    Unknown,
}

/// `x_i -> images[i]`; every image is a polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyEndo {
    vars: VarSet,
    images: Vec<LaurentPoly>,
    tameness: Tameness,
}

impl PolyEndo {
    pub fn new(vars: &VarSet, images: Vec<LaurentPoly>) -> Result<Self> {
        Self::with_tameness(vars, images, Tameness::Unknown)
    }

    fn with_tameness(vars: &VarSet, images: Vec<LaurentPoly>, tameness: Tameness) -> Result<Self> {
        if images.len() != vars.len() {
            return Err(AutPolyError::Shape(format!(
                "{} images for {} variables",
                images.len(),
                vars.len()
            )));
        }
        for (i, p) in images.iter().enumerate() {
            if p.vars() != vars {
                return Err(AutPolyError::VarSetMismatch);
            }
            if !p.is_polynomial() {
                return Err(AutPolyError::NotPolynomial(i));
            }
        }
        Ok(PolyEndo {
            vars: vars.clone(),
            images,
            tameness,
        })
    }

    pub fn identity(vars: &VarSet) -> Self {
        PolyEndo {
            vars: vars.clone(),
            images: (0..vars.len()).map(|i| LaurentPoly::var(vars, i)).collect(),
            tameness: Tameness::Tame,
        }
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn images(&self) -> &[LaurentPoly] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &LaurentPoly {
        &self.images[i]
    }

    pub fn tameness(&self) -> Tameness {
        self.tameness
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, p)| *p == LaurentPoly::var(&self.vars, i))
    }

    /// Applies the endomorphism to a polynomial.
    pub fn apply(&self, p: &LaurentPoly) -> Result<LaurentPoly> {
        if p.vars() != &self.vars {
            return Err(AutPolyError::VarSetMismatch);
        }
        Ok(p.substitute_laurent(&self.images, &self.vars)?)
    }

    /// The composite `f ∘ g`, sending `x_i` to `g_i(f_1, .., f_n)`.
    pub fn compose(f: &PolyEndo, g: &PolyEndo) -> Result<PolyEndo> {
        if f.vars != g.vars {
            return Err(AutPolyError::VarSetMismatch);
        }
        let images = g
            .images
            .iter()
            .map(|gi| f.apply(gi))
            .collect::<Result<Vec<_>>>()?;
        let tameness = match (f.tameness, g.tameness) {
            (Tameness::Tame, Tameness::Tame) => Tameness::Tame,
            _ => Tameness::Unknown,
        };
        PolyEndo::with_tameness(&f.vars, images, tameness)
            .map_err(|e| AutPolyError::Internal(format!("composite is not polynomial: {e}")))
    }

    /// Values of the images at a point.
    pub fn eval(&self, point: &[Coef]) -> Result<Vec<Coef>> {
        Ok(self
            .images
            .iter()
            .map(|p| p.eval(point))
            .collect::<std::result::Result<_, _>>()?)
    }

    /// `(alpha_i, f_i)` with `image_i = alpha_i x_i + f_i(x_1..x_{i-1})`, if
    /// the endomorphism has that shape.
    pub fn triangular_parts(&self) -> Option<Vec<(Coef, LaurentPoly)>> {
        (0..self.vars.len())
            .map(|i| {
                let xi = LaurentPoly::var(&self.vars, i);
                let (m, _) = xi.leading_term()?;
                let alpha = self.images[i].coefficient(m);
                let rest = &self.images[i] - &xi.scale(&alpha);
                let ok = !alpha.is_zero() && rest.support().iter().all(|&j| j < i);
                ok.then_some((alpha, rest))
            })
            .collect()
    }

    pub fn is_jonquiere(&self) -> bool {
        self.triangular_parts().is_some()
    }

    /// `(A, b)` with images `A x + b`, if every image has degree at most one.
    pub fn affine_parts(&self) -> Option<(Vec<Vec<Coef>>, Vec<Coef>)> {
        let n = self.vars.len();
        let mut a = vec![vec![Coef::zero(); n]; n];
        let mut b = vec![Coef::zero(); n];
        for (i, p) in self.images.iter().enumerate() {
            for (m, c) in p.terms() {
                match m.degree() {
                    0 => b[i] = c.clone(),
                    1 => {
                        let j = m.exponents().iter().position(|&e| e == 1)?;
                        a[i][j] = c.clone();
                    }
                    _ => return None,
                }
            }
        }
        Some((a, b))
    }

    /// Inverse of a triangular or affine endomorphism, verified by composing.
    pub fn inverse(&self) -> Result<PolyEndo> {
        let inv = if let Some(parts) = self.triangular_parts() {
            jonquiere_inverse(&self.vars, &parts)?
        } else if let Some((a, b)) = self.affine_parts() {
            affine_inverse(&self.vars, &a, &b)?
        } else {
            return Err(AutPolyError::Unit(
                "no inverse constructor for this shape".into(),
            ));
        };
        verified_inverse(self, inv)
    }
}

fn verified_inverse(f: &PolyEndo, inv: PolyEndo) -> Result<PolyEndo> {
    if PolyEndo::compose(f, &inv)?.is_identity() && PolyEndo::compose(&inv, f)?.is_identity() {
        Ok(inv)
    } else {
        Err(AutPolyError::Internal("inverse does not compose to the identity".into()))
    }
}

fn jonquiere_inverse(vars: &VarSet, parts: &[(Coef, LaurentPoly)]) -> Result<PolyEndo> {
    // inv_i = (x_i - f_i(inv_1, .., inv_{i-1})) / alpha_i
    let mut images: Vec<LaurentPoly> = Vec::with_capacity(parts.len());
    for (i, (alpha, f)) in parts.iter().enumerate() {
        let mut partial = images.clone();
        partial.extend((i..parts.len()).map(|j| LaurentPoly::var(vars, j)));
        let fi = f.substitute_laurent(&partial, vars)?;
        let xi = LaurentPoly::var(vars, i);
        images.push((&xi - &fi).scale(&(Coef::one() / alpha)));
    }
    PolyEndo::with_tameness(vars, images, Tameness::Tame)
}

fn affine_inverse(vars: &VarSet, a: &[Vec<Coef>], b: &[Coef]) -> Result<PolyEndo> {
    let inv = matrix_inverse(a).ok_or_else(|| AutPolyError::Unit("singular matrix".into()))?;
    let neg_b: Vec<Coef> = b.iter().map(|x| -x.clone()).collect();
    let shift = mat_vec(&inv, &neg_b);
    affine_images(vars, &inv, &shift, Tameness::Tame)
}

fn affine_images(vars: &VarSet, a: &[Vec<Coef>], b: &[Coef], tameness: Tameness) -> Result<PolyEndo> {
    let images = (0..a.len())
        .map(|i| {
            let mut p = LaurentPoly::constant(vars, b[i].clone());
            for (j, c) in a[i].iter().enumerate() {
                p = &p + &LaurentPoly::var(vars, j).scale(c);
            }
            p
        })
        .collect();
    PolyEndo::with_tameness(vars, images, tameness)
}

/// The triangular map `x_i -> alphas[i] x_i + fs[i]` with `fs[i]` a polynomial
/// in `x_1..x_{i-1}`.
pub fn jonquiere(vars: &VarSet, alphas: &[Coef], fs: &[LaurentPoly]) -> Result<PolyEndo> {
    if alphas.len() != vars.len() || fs.len() != vars.len() {
        return Err(AutPolyError::Shape("one alpha and one f per variable".into()));
    }
    let mut images = Vec::with_capacity(vars.len());
    for (i, (alpha, f)) in alphas.iter().zip(fs).enumerate() {
        if alpha.is_zero() {
            return Err(AutPolyError::Unit(format!("alpha_{} = 0", i + 1)));
        }
        if f.vars() != vars {
            return Err(AutPolyError::VarSetMismatch);
        }
        if !f.is_polynomial() {
            return Err(AutPolyError::NotPolynomial(i));
        }
        if f.support().iter().any(|&j| j >= i) {
            return Err(AutPolyError::Triangularity { index: i });
        }
        images.push(&LaurentPoly::var(vars, i).scale(alpha) + f);
    }
    PolyEndo::with_tameness(vars, images, Tameness::Tame)
}

/// `x -> A x + b`. Over `Z` the entries must be integers and `det A = ±1`.
pub fn affine(vars: &VarSet, a: &[Vec<Coef>], b: &[Coef], base: Base) -> Result<PolyEndo> {
    let n = vars.len();
    if a.len() != n || a.iter().any(|r| r.len() != n) || b.len() != n {
        return Err(AutPolyError::Shape(format!("expected an {n}x{n} matrix and {n} shifts")));
    }
    let det = determinant(a);
    let unit = match base {
        Base::Q => !det.is_zero(),
        Base::Z => {
            a.iter().flatten().chain(b).all(|c| c.is_integer()) && det.abs().is_one()
        }
    };
    if !unit {
        return Err(AutPolyError::Unit(format!("determinant {det} over {base}")));
    }
    affine_images(vars, a, b, Tameness::Tame)
}

fn nagata_vars(extra: &[&str]) -> Result<VarSet> {
    let mut names = vec!["X".to_string(), "Y".to_string()];
    names.extend(extra.iter().map(|s| s.to_string()));
    Ok(VarSet::new(names)?)
}

/// `aY - X^2` over the Nagata variable set.
pub fn nagata_delta(vars: &VarSet, a: &Coef) -> LaurentPoly {
    let x = LaurentPoly::var(vars, 0);
    let y = LaurentPoly::var(vars, 1);
    &y.scale(a) - &x.pow(2)
}

fn nagata_images(a: &Coef, extra: &[&str], sign: i64) -> Result<(VarSet, Vec<LaurentPoly>)> {
    if a.is_zero() {
        return Err(AutPolyError::Unit("a = 0".into()));
    }
    let vars = nagata_vars(extra)?;
    let x = LaurentPoly::var(&vars, 0);
    let y = LaurentPoly::var(&vars, 1);
    let s = Coef::from_integer(sign.into());
    let delta = nagata_delta(&vars, a);
    let two = Coef::from_integer(2.into());
    let img_x = &x + &delta.scale(&(a * &s));
    let img_y = &(&y + &(&x * &delta).scale(&(&two * &s))) + &delta.pow(2).scale(a);
    let mut images = vec![img_x, img_y];
    images.extend((2..vars.len()).map(|i| LaurentPoly::var(&vars, i)));
    Ok((vars, images))
}

/// `X -> X + aΔ`, `Y -> Y + 2XΔ + aΔ^2` with `Δ = aY - X^2`; the names in
/// `extra` are adjoined as fixed generators.
pub fn nagata_over(a: &Coef, extra: &[&str]) -> Result<PolyEndo> {
    let (vars, images) = nagata_images(a, extra, 1)?;
    PolyEndo::with_tameness(&vars, images, Tameness::NonTameOverNonFieldBase)
}

pub fn nagata(a: &Coef) -> Result<PolyEndo> {
    nagata_over(a, &[])
}

/// `X -> X - aΔ`, `Y -> Y - 2XΔ + aΔ^2`; checked against `nagata_over` in
/// both orders before it is returned.
pub fn nagata_inverse_over(a: &Coef, extra: &[&str]) -> Result<PolyEndo> {
    let (vars, images) = nagata_images(a, extra, -1)?;
    let inv = PolyEndo::with_tameness(&vars, images, Tameness::NonTameOverNonFieldBase)?;
    verified_inverse(&nagata_over(a, extra)?, inv)
}

pub fn nagata_inverse(a: &Coef) -> Result<PolyEndo> {
    nagata_inverse_over(a, &[])
}

pub fn determinant(a: &[Vec<Coef>]) -> Coef {
    let n = a.len();
    let mut m = a.to_vec();
    let mut det = Coef::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Coef::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            let factor = &m[r][col] / &p;
            if factor.is_zero() {
                continue;
            }
            for c in col..n {
                let sub = &factor * &m[col][c];
                m[r][c] -= sub;
            }
        }
    }
    det
}

/// Gauss-Jordan inverse; `None` for a singular matrix.
pub fn matrix_inverse(a: &[Vec<Coef>]) -> Option<Vec<Vec<Coef>>> {
    let n = a.len();
    let mut m: Vec<Vec<Coef>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Coef::one() } else { Coef::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(pivot, col);
        let p = m[col][col].clone();
        for x in m[col].iter_mut() {
            *x /= &p;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for c in 0..2 * n {
                let sub = &factor * &m[col][c];
                m[r][c] -= sub;
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_mul(a: &[Vec<Coef>], b: &[Vec<Coef>]) -> Vec<Vec<Coef>> {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| row.iter().zip(b).map(|(x, r)| x * &r[j]).sum())
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &[Vec<Coef>], v: &[Coef]) -> Vec<Coef> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

pub fn is_permutation_matrix(a: &[Vec<Coef>]) -> bool {
    let n = a.len();
    let entries_ok = a.iter().flatten().all(|c| c.is_zero() || c.is_one());
    let rows_ok = a.iter().all(|r| r.iter().filter(|c| c.is_one()).count() == 1);
    let cols_ok = (0..n).all(|j| a.iter().filter(|r| r[j].is_one()).count() == 1);
    entries_ok && rows_ok && cols_ok
}

/// Invertible with an inverse whose entries are nonnegative integers.
pub fn has_natural_inverse(a: &[Vec<Coef>]) -> bool {
    matrix_inverse(a).is_some_and(|inv| {
        inv.iter()
            .flatten()
            .all(|c| c.is_integer() && !c.is_negative())
    })
}

impl Serialize for PolyEndo {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("PolyEndo", 3)?;
        st.serialize_field("vars", self.vars.names())?;
        let images: Vec<PolyJson> = self.images.iter().map(PolyJson::from).collect();
        st.serialize_field("images", &images)?;
        st.serialize_field("tameness", &self.tameness)?;
        st.end()
    }
}

/// Monomial helper for building images by hand.
pub fn monomial(vars: &VarSet, exps: &[i32], c: Coef) -> LaurentPoly {
    LaurentPoly::term(vars, Monomial::from_exponents(exps.to_vec()), c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{coef, ratio};

    fn xy() -> VarSet {
        VarSet::new(["x", "y"]).unwrap()
    }

    fn p(s: &str, v: &VarSet) -> LaurentPoly {
        LaurentPoly::parse(s, v).unwrap()
    }

    #[test]
    fn jonquiere_constructor() {
        let v = xy();
        let id = jonquiere(&v, &[coef(1), coef(1)], &[p("0", &v), p("0", &v)]).unwrap();
        assert!(id.is_identity());
        let j = jonquiere(&v, &[coef(2), coef(1)], &[p("3", &v), p("x^2", &v)]).unwrap();
        assert_eq!(j.image(0).to_string(), "2 * x + 3");
        assert!(j.is_jonquiere());
        assert_eq!(
            jonquiere(&v, &[coef(1), coef(1)], &[p("y", &v), p("0", &v)]),
            Err(AutPolyError::Triangularity { index: 0 })
        );
        assert!(matches!(
            jonquiere(&v, &[coef(0), coef(1)], &[p("0", &v), p("0", &v)]),
            Err(AutPolyError::Unit(_))
        ));
        let inv = j.inverse().unwrap();
        assert!(PolyEndo::compose(&j, &inv).unwrap().is_identity());
    }

    #[test]
    fn affine_constructor() {
        let v = xy();
        let swap = vec![vec![coef(0), coef(1)], vec![coef(1), coef(0)]];
        let f = affine(&v, &swap, &[coef(0), coef(0)], Base::Q).unwrap();
        assert_eq!(f.images(), &[p("y", &v), p("x", &v)]);
        let singular = vec![vec![coef(1), coef(2)], vec![coef(2), coef(4)]];
        assert!(matches!(
            affine(&v, &singular, &[coef(0), coef(0)], Base::Q),
            Err(AutPolyError::Unit(_))
        ));
        let scale = vec![vec![coef(2), coef(0)], vec![coef(0), coef(1)]];
        assert!(affine(&v, &scale, &[coef(0), coef(0)], Base::Q).is_ok());
        assert!(affine(&v, &scale, &[coef(0), coef(0)], Base::Z).is_err());
    }

    #[test]
    fn nagata_identities() {
        for a in [coef(1), coef(-1), coef(2), ratio(1, 2)] {
            let n = nagata(&a).unwrap();
            let inv = nagata_inverse(&a).unwrap();
            assert!(PolyEndo::compose(&n, &inv).unwrap().is_identity());
            assert!(PolyEndo::compose(&inv, &n).unwrap().is_identity());
            let delta = nagata_delta(n.vars(), &a);
            assert_eq!(n.apply(&delta).unwrap(), delta);
        }
        assert!(!nagata(&coef(1)).unwrap().is_identity());
        assert!(nagata(&coef(0)).is_err());
    }

    #[test]
    fn nagata_round_trip_at_a_point() {
        let n = nagata(&coef(1)).unwrap();
        let inv = nagata_inverse(&coef(1)).unwrap();
        let there = n.eval(&[coef(3), coef(5)]).unwrap();
        assert_eq!(inv.eval(&there).unwrap(), vec![coef(3), coef(5)]);
    }

    #[test]
    fn nagata_with_fixed_generators() {
        let n = nagata_over(&coef(2), &["z"]).unwrap();
        assert_eq!(n.vars().names(), &["X", "Y", "z"]);
        assert_eq!(n.image(2), &LaurentPoly::var(n.vars(), 2));
        let inv = nagata_inverse_over(&coef(2), &["z"]).unwrap();
        assert!(PolyEndo::compose(&n, &inv).unwrap().is_identity());
    }

    #[test]
    fn matrices() {
        let a = vec![vec![coef(2), coef(1)], vec![coef(1), coef(1)]];
        assert_eq!(determinant(&a), coef(1));
        let inv = matrix_inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv), vec![vec![coef(1), coef(0)], vec![coef(0), coef(1)]]);
        assert!(!has_natural_inverse(&a));
        assert!(is_permutation_matrix(&[vec![coef(0), coef(1)], vec![coef(1), coef(0)]]));
    }

    #[test]
    fn json_shape() {
        let j = serde_json::to_value(PolyEndo::identity(&xy())).unwrap();
        assert_eq!(j["vars"], serde_json::json!(["x", "y"]));
        assert_eq!(j["images"][0]["terms"][0]["exp"], serde_json::json!([1, 0]));
    }
}
