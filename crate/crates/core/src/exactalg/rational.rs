use std::fmt;

use num_traits::{Signed, Zero};

use super::{AlgError, Coef, LaurentPoly, Result, VarSet};

/// Unreduced quotient of Laurent polynomials.
///
/// The denominator is nonzero and its leading coefficient is positive.
/// Equality is decided by cross-multiplication; no gcd is ever taken.
#[derive(Clone)]
pub struct RationalFn {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFn {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if num.vars() != den.vars() {
            return Err(AlgError::VarSetMismatch);
        }
        if den.is_zero() {
            return Err(AlgError::DivisionByZero);
        }
        let negative = den.leading_term().is_some_and(|(_, c)| c.is_negative());
        Ok(if negative {
            RationalFn {
                num: -&num,
                den: -&den,
            }
        } else {
            RationalFn { num, den }
        })
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        let den = LaurentPoly::one(p.vars());
        RationalFn { num: p, den }
    }

    pub fn zero(vars: &VarSet) -> Self {
        Self::from_poly(LaurentPoly::zero(vars))
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn vars(&self) -> &VarSet {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `a.num * b.den == b.num * a.den`; false across different variable sets.
    pub fn rf_equal(&self, other: &RationalFn) -> bool {
        if self.vars() != other.vars() {
            return false;
        }
        &self.num * &other.den == &other.num * &self.den
    }

    /// The Laurent polynomial this equals, when the quotient is exact.
    pub fn to_laurent(&self) -> Result<LaurentPoly> {
        self.num.exact_divide(&self.den)
    }

    pub fn mul(&self, other: &RationalFn) -> Result<RationalFn> {
        RationalFn::new(
            self.num.checked_mul(&other.num)?,
            self.den.checked_mul(&other.den)?,
        )
    }

    pub fn add(&self, other: &RationalFn) -> Result<RationalFn> {
        let n = self
            .num
            .checked_mul(&other.den)?
            .checked_add(&other.num.checked_mul(&self.den)?)?;
        RationalFn::new(n, self.den.checked_mul(&other.den)?)
    }

    pub fn sub(&self, other: &RationalFn) -> Result<RationalFn> {
        let neg = RationalFn {
            num: -&other.num,
            den: other.den.clone(),
        };
        self.add(&neg)
    }

    pub fn eval(&self, point: &[Coef]) -> Result<Coef> {
        let d = self.den.eval(point)?;
        if d.is_zero() {
            return Err(AlgError::DivisionByZero);
        }
        Ok(self.num.eval(point)? / d)
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFn({})", self)
    }
}
