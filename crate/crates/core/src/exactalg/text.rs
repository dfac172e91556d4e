//! Canonical text form: `c * v1^e1 * v2^e2 + ...`, leading term first.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{AlgError, Coef, LaurentPoly, Monomial, RationalFn, Result, VarSet};

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let factors = monomial_factors(m, self.vars());
            if factors.is_empty() {
                write!(f, "{}", abs)?;
            } else if abs.is_one() {
                f.write_str(&factors.join(" * "))?;
            } else {
                write!(f, "{} * {}", abs, factors.join(" * "))?;
            }
        }
        Ok(())
    }
}

fn monomial_factors(m: &Monomial, vars: &VarSet) -> Vec<String> {
    m.exponents()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(i, &e)| {
            if e == 1 {
                vars.name(i).to_string()
            } else {
                format!("{}^{}", vars.name(i), e)
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(Coef),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1
            }
            '-' => {
                out.push(Token::Minus);
                i += 1
            }
            '*' => {
                out.push(Token::Star);
                i += 1
            }
            '^' => {
                out.push(Token::Caret);
                i += 1
            }
            '/' => {
                out.push(Token::Slash);
                i += 1
            }
            '(' => {
                out.push(Token::LParen);
                i += 1
            }
            ')' => {
                out.push(Token::RParen);
                i += 1
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                let n: BigInt = digits.parse().map_err(|_| AlgError::Parse(digits.clone()))?;
                out.push(Token::Num(Coef::from_integer(n)));
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(AlgError::Parse(format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    vars: &'a VarSet,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Token) -> Result<()> {
        match self.next() {
            Some(ref got) if *got == t => Ok(()),
            got => Err(AlgError::Parse(format!("expected {t:?}, found {got:?}"))),
        }
    }

    // sum := ['+'|'-'] product (('+'|'-') product)*
    fn sum(&mut self) -> Result<LaurentPoly> {
        let mut acc = LaurentPoly::zero(self.vars);
        let mut sign = match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                -Coef::one()
            }
            Some(Token::Plus) => {
                self.pos += 1;
                Coef::one()
            }
            _ => Coef::one(),
        };
        loop {
            let term = self.product()?;
            acc = &acc + &term.scale(&sign);
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    sign = Coef::one();
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    sign = -Coef::one();
                }
                _ => return Ok(acc),
            }
        }
    }

    // product := factor ('*' factor)*
    fn product(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Token::Star) {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    // factor := number ['/' number] | ident ['^' ['-'] number] | '(' sum ')' ['^' number]
    fn factor(&mut self) -> Result<LaurentPoly> {
        match self.next() {
            Some(Token::Num(n)) => {
                let mut c = n;
                if self.peek() == Some(&Token::Slash) {
                    self.pos += 1;
                    match self.next() {
                        Some(Token::Num(d)) if !d.is_zero() => c /= d,
                        other => {
                            return Err(AlgError::Parse(format!("bad denominator {other:?}")))
                        }
                    }
                }
                Ok(LaurentPoly::constant(self.vars, c))
            }
            Some(Token::Ident(name)) => {
                let i = self.vars.require(&name)?;
                let e = self.exponent()?;
                let mut exps = vec![0; self.vars.len()];
                exps[i] = e;
                Ok(LaurentPoly::term(
                    self.vars,
                    Monomial::from_exponents(exps),
                    Coef::one(),
                ))
            }
            Some(Token::LParen) => {
                let inner = self.sum()?;
                self.expect(Token::RParen)?;
                let e = self.exponent()?;
                if e < 0 {
                    return Err(AlgError::Parse(
                        "negative power of a parenthesized sum".into(),
                    ));
                }
                Ok(inner.pow(e as u32))
            }
            other => Err(AlgError::Parse(format!("unexpected token {other:?}"))),
        }
    }

    fn exponent(&mut self) -> Result<i32> {
        if self.peek() != Some(&Token::Caret) {
            return Ok(1);
        }
        self.pos += 1;
        let negative = if self.peek() == Some(&Token::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        match self.next() {
            Some(Token::Num(n)) if n.is_integer() => {
                let v: i32 = n
                    .to_integer()
                    .try_into()
                    .map_err(|_| AlgError::Parse("exponent out of range".into()))?;
                Ok(if negative { -v } else { v })
            }
            other => Err(AlgError::Parse(format!("bad exponent {other:?}"))),
        }
    }
}

impl LaurentPoly {
    /// Parses the text form over a fixed variable set. Parenthesized sums with
    /// nonnegative integer powers are accepted as a convenience.
    pub fn parse(s: &str, vars: &VarSet) -> Result<Self> {
        let mut parser = Parser {
            tokens: tokenize(s)?,
            pos: 0,
            vars,
        };
        let p = parser.sum()?;
        if parser.pos != parser.tokens.len() {
            return Err(AlgError::Parse(format!(
                "trailing input at token {}",
                parser.pos
            )));
        }
        Ok(p)
    }
}

impl RationalFn {
    /// Parses `num` or `(num) / (den)`.
    pub fn parse(s: &str, vars: &VarSet) -> Result<Self> {
        let t = s.trim();
        if let Some(split) = top_level_slash(t) {
            let num = LaurentPoly::parse(&t[..split], vars)?;
            let den = LaurentPoly::parse(&t[split + 1..], vars)?;
            RationalFn::new(num, den)
        } else {
            Ok(RationalFn::from_poly(LaurentPoly::parse(t, vars)?))
        }
    }
}

// Position of a `/` at parenthesis depth zero that follows a closing paren.
fn top_level_slash(s: &str) -> Option<usize> {
    let mut depth = 0i32;
    let mut last_non_space = ' ';
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '/' if depth == 0 && last_non_space == ')' => return Some(i),
            _ => {}
        }
        if !c.is_whitespace() {
            last_non_space = c;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_is_graded_lex_with_signs() {
        let v = VarSet::new(["x", "y"]).unwrap();
        let p = LaurentPoly::parse("-1 + y^-1*x*2 - 1/3*x^2", &v).unwrap();
        assert_eq!(p.to_string(), "-1/3 * x^2 + 2 * x * y^-1 - 1");
        assert_eq!(LaurentPoly::zero(&v).to_string(), "0");
    }

    #[test]
    fn parenthesized_input() {
        let v = VarSet::new(["x", "y"]).unwrap();
        let p = LaurentPoly::parse("(1 + x)^2 * y^-1", &v).unwrap();
        assert_eq!(p, LaurentPoly::parse("y^-1 + 2*x*y^-1 + x^2*y^-1", &v).unwrap());
        let r = RationalFn::parse("(1 + x) / (y)", &v).unwrap();
        assert_eq!(r.den(), &LaurentPoly::parse("y", &v).unwrap());
    }

    #[test]
    fn parse_errors() {
        let v = VarSet::new(["x"]).unwrap();
        assert!(matches!(
            LaurentPoly::parse("z", &v),
            Err(AlgError::UnknownVariable(_))
        ));
        assert!(LaurentPoly::parse("x +", &v).is_err());
        assert!(LaurentPoly::parse("1/0", &v).is_err());
        assert!(LaurentPoly::parse("x $", &v).is_err());
    }
}
