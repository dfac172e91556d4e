use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{AlgError, Coef, Monomial, RationalFn, Result, VarSet};

/// Sparse Laurent polynomial with exact rational coefficients.
///
/// No stored coefficient is zero and every exponent vector has one entry per
/// variable of `vars`.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    vars: VarSet,
    terms: BTreeMap<Monomial, Coef>,
}

impl LaurentPoly {
    pub fn zero(vars: &VarSet) -> Self {
        LaurentPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: &VarSet) -> Self {
        Self::constant(vars, Coef::one())
    }

    pub fn constant(vars: &VarSet, c: Coef) -> Self {
        Self::term(vars, Monomial::one(vars.len()), c)
    }

    pub fn var(vars: &VarSet, i: usize) -> Self {
        Self::term(vars, Monomial::var(vars.len(), i), Coef::one())
    }

    pub fn var_named(vars: &VarSet, name: &str) -> Result<Self> {
        Ok(Self::var(vars, vars.require(name)?))
    }

    pub fn term(vars: &VarSet, m: Monomial, c: Coef) -> Self {
        assert_eq!(m.0.len(), vars.len(), "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly {
            vars: vars.clone(),
            terms,
        }
    }

    /// Collects terms, merging like monomials and dropping zeros.
    pub fn from_terms<I>(vars: &VarSet, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<i32>, Coef)>,
    {
        let mut p = Self::zero(vars);
        for (exps, c) in terms {
            if exps.len() != vars.len() {
                return Err(AlgError::VarSetMismatch);
            }
            p.add_term(Monomial(exps), c);
        }
        Ok(p)
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// True when no exponent is negative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(Monomial::is_nonnegative)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending graded-lex order (leading term first).
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Coef)> + '_ {
        self.terms.iter().rev()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Coef)> {
        self.terms.iter().next_back()
    }

    pub fn coefficient(&self, m: &Monomial) -> Coef {
        self.terms.get(m).cloned().unwrap_or_else(Coef::zero)
    }

    /// Largest total degree among the terms (`None` for zero).
    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Componentwise minimum exponent; the monomial `x^min` divides every term.
    pub fn min_exponents(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(self.vars.len()),
            Some(first) => {
                let mut m = first.clone();
                for k in it {
                    m.min_with(k);
                }
                m
            }
        }
    }

    /// Variables with a nonzero exponent somewhere.
    pub fn support(&self) -> Vec<usize> {
        (0..self.vars.len())
            .filter(|&i| self.terms.keys().any(|m| m.0[i] != 0))
            .collect()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Coef) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(AlgError::VarSetMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Coef) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Multiplies by the monomial `x^m` (exponents may be negative).
    pub fn shift(&self, m: &Monomial) -> Self {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(&self.vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Returns `q` with `q * divisor == self`, if such a Laurent polynomial exists.
    ///
    /// Both operands are shifted by monomials to clear negative exponents, the
    /// shifted numerator is reduced by leading-term elimination under graded-lex
    /// order, and the quotient is shifted back. The shifted divisor has no
    /// monomial factor, so any Laurent quotient of the shifted operands is an
    /// ordinary polynomial and the elimination finds it.
    pub fn exact_divide(&self, divisor: &Self) -> Result<Self> {
        self.check(divisor)?;
        if divisor.is_zero() {
            return Err(AlgError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero(&self.vars));
        }
        let sa = self.min_exponents();
        let sb = divisor.min_exponents();
        let b = divisor.shift(&sb.inverse());
        let mut rem = self.shift(&sa.inverse());
        let (lead_m, lead_c) = {
            let (m, c) = b.leading_term().expect("nonzero divisor");
            (m.clone(), c.clone())
        };
        if b.is_monomial() {
            let inv = Coef::one() / &lead_c;
            let q = rem.scale(&inv).shift(&lead_m.inverse());
            return Ok(q.shift(&sa.mul(&sb.inverse())));
        }
        let mut quotient = Self::zero(&self.vars);
        while let Some((rm, rc)) = rem.leading_term() {
            let qm = rm.checked_div(&lead_m).ok_or(AlgError::NotDivisible)?;
            let qc = rc / &lead_c;
            for (bm, bc) in &b.terms {
                rem.add_term(bm.mul(&qm), -(bc * &qc));
            }
            quotient.add_term(qm, qc);
        }
        Ok(quotient.shift(&sa.mul(&sb.inverse())))
    }

    /// Exact value at a point given in variable order.
    pub fn eval(&self, point: &[Coef]) -> Result<Coef> {
        if point.len() != self.vars.len() {
            return Err(AlgError::VarSetMismatch);
        }
        let mut acc = Coef::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let v = &point[i];
                if e < 0 && v.is_zero() {
                    return Err(AlgError::EvalDomain(self.vars.name(i).to_string()));
                }
                t *= coef_pow(v, e);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Value at a point given by variable name.
    pub fn eval_map(&self, point: &HashMap<String, Coef>) -> Result<Coef> {
        let support = self.support();
        let mut values = vec![Coef::zero(); self.vars.len()];
        for i in support {
            let name = self.vars.name(i);
            values[i] = point
                .get(name)
                .cloned()
                .ok_or_else(|| AlgError::MissingImage(name.to_string()))?;
        }
        self.eval(&values)
    }

    /// Formal substitution `x_i ↦ images[i]`, with denominators cleared term by
    /// term. The result lives over `target` and is sign-normalized.
    pub fn substitute(&self, images: &[RationalFn], target: &VarSet) -> Result<RationalFn> {
        if images.len() != self.vars.len() {
            let missing = self.vars.names().get(images.len()).cloned().unwrap_or_default();
            return Err(AlgError::MissingImage(missing));
        }
        if images.iter().any(|r| r.vars() != target) {
            return Err(AlgError::VarSetMismatch);
        }
        let n = self.vars.len();
        // For each variable: highest positive and negative power that occurs.
        let mut pos = vec![0u32; n];
        let mut neg = vec![0u32; n];
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    pos[i] = pos[i].max(e as u32);
                } else if e < 0 {
                    neg[i] = neg[i].max((-e) as u32);
                }
            }
        }
        for i in 0..n {
            if neg[i] > 0 && images[i].num().is_zero() {
                return Err(AlgError::DivisionByZero);
            }
        }
        let mut num_pows: Vec<PowerCache> = images
            .iter()
            .map(|r| PowerCache::new(r.num().clone()))
            .collect();
        let mut den_pows: Vec<PowerCache> = images
            .iter()
            .map(|r| PowerCache::new(r.den().clone()))
            .collect();

        let mut den = LaurentPoly::one(target);
        for i in 0..n {
            if pos[i] > 0 {
                den = &den * den_pows[i].get(pos[i]);
            }
            if neg[i] > 0 {
                den = &den * num_pows[i].get(neg[i]);
            }
        }
        let mut num = LaurentPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = LaurentPoly::constant(target, c.clone());
            for i in 0..n {
                let e = m.0[i];
                // n^a d^b with a + b = pos + neg fixed across terms
                let (a, b) = if e >= 0 {
                    (e as u32 + neg[i], pos[i] - e as u32)
                } else {
                    (neg[i] - (-e) as u32, pos[i] + (-e) as u32)
                };
                if a > 0 {
                    t = &t * num_pows[i].get(a);
                }
                if b > 0 {
                    t = &t * den_pows[i].get(b);
                }
            }
            num = &num + &t;
        }
        RationalFn::new(num, den)
    }

    /// Substitution by variable name; every variable that occurs must have an image.
    pub fn substitute_map(
        &self,
        images: &HashMap<String, RationalFn>,
        target: &VarSet,
    ) -> Result<RationalFn> {
        let support = self.support();
        let mut list = Vec::with_capacity(self.vars.len());
        for i in 0..self.vars.len() {
            let name = self.vars.name(i);
            match images.get(name) {
                Some(r) => list.push(r.clone()),
                None if !support.contains(&i) => list.push(RationalFn::from_poly(
                    LaurentPoly::one(target),
                )),
                None => return Err(AlgError::MissingImage(name.to_string())),
            }
        }
        self.substitute(&list, target)
    }

    /// Substitution of Laurent polynomials; a negative power is only allowed
    /// when the image is a monomial (hence a unit).
    pub fn substitute_laurent(&self, images: &[LaurentPoly], target: &VarSet) -> Result<Self> {
        if images.len() != self.vars.len() {
            let missing = self.vars.names().get(images.len()).cloned().unwrap_or_default();
            return Err(AlgError::MissingImage(missing));
        }
        if images.iter().any(|p| p.vars() != target) {
            return Err(AlgError::VarSetMismatch);
        }
        let mut caches: Vec<PowerCache> = images.iter().map(|p| PowerCache::new(p.clone())).collect();
        let mut inverses: Vec<Option<LaurentPoly>> = vec![None; images.len()];
        let mut out = LaurentPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = LaurentPoly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = &t * caches[i].get(e as u32);
                } else if e < 0 {
                    if inverses[i].is_none() {
                        let img = &images[i];
                        if !img.is_monomial() {
                            return Err(AlgError::NotLaurent(self.vars.name(i).to_string()));
                        }
                        let (im, ic) = img.leading_term().expect("monomial");
                        inverses[i] = Some(LaurentPoly::term(
                            target,
                            im.inverse(),
                            Coef::one() / ic,
                        ));
                    }
                    let inv = inverses[i].as_ref().expect("filled");
                    t = &t * &inv.pow((-e) as u32);
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Sets some variables to constants and re-expresses the result over
    /// `target`, which must contain every remaining variable by name.
    pub fn specialize(&self, values: &[Option<Coef>], target: &VarSet) -> Result<Self> {
        if values.len() != self.vars.len() {
            return Err(AlgError::VarSetMismatch);
        }
        let mut index = Vec::with_capacity(values.len());
        for (i, v) in values.iter().enumerate() {
            index.push(match v {
                Some(_) => None,
                None => Some(target.require(self.vars.name(i))?),
            });
        }
        let mut out = LaurentPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            let mut exps = vec![0i32; target.len()];
            for (i, &e) in m.0.iter().enumerate() {
                match (&values[i], index[i]) {
                    (Some(v), _) => {
                        if e != 0 {
                            if e < 0 && v.is_zero() {
                                return Err(AlgError::EvalDomain(self.vars.name(i).to_string()));
                            }
                            t *= coef_pow(v, e);
                        }
                    }
                    (None, Some(j)) => exps[j] += e,
                    (None, None) => unreachable!(),
                }
            }
            out.add_term(Monomial(exps), t);
        }
        Ok(out)
    }

    /// Re-expresses the polynomial over a variable set containing all of its
    /// variables by name.
    pub fn rebase(&self, target: &VarSet) -> Result<Self> {
        self.specialize(&vec![None; self.vars.len()], target)
    }

    pub fn coefficients(&self) -> impl Iterator<Item = &Coef> {
        self.terms.values()
    }

    /// True when every coefficient is a positive integer.
    pub fn has_positive_integer_coefficients(&self) -> bool {
        self.terms
            .values()
            .all(|c| c.is_integer() && c.is_positive())
    }
}

pub(crate) fn coef_pow(v: &Coef, e: i32) -> Coef {
    let p = num_traits::pow(v.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

struct PowerCache {
    powers: Vec<LaurentPoly>,
}

impl PowerCache {
    fn new(base: LaurentPoly) -> Self {
        PowerCache {
            powers: vec![LaurentPoly::one(base.vars()), base],
        }
    }

    fn get(&mut self, e: u32) -> &LaurentPoly {
        let e = e as usize;
        while self.powers.len() <= e {
            let next = &self.powers[self.powers.len() - 1] * &self.powers[1];
            self.powers.push(next);
        }
        &self.powers[e]
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs).expect("variable set mismatch in add")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_sub(rhs).expect("variable set mismatch in sub")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("variable set mismatch in mul")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-Coef::one())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({})", self)
    }
}
