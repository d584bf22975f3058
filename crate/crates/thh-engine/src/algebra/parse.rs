//! Parser for algebra elements.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! relation := expr [ '=' expr ]
//! expr     := [sign] term ( sign term )*
//! term     := factor ( '*' factor )*
//! factor   := integer | name [ '^' integer | '^[' integer ']' ] | '(' expr ')'
//! ```
//!
//! `name^n` is the honest n-th power; `name^[n]` is the divided power γ_n and
//! only applies to divided-power generators.

use super::{Element, GenKind, Monomial, Presentation};
use crate::error::{EngineError, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(u64),
    Name(String),
    Plus,
    Minus,
    Star,
    Caret,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Eq,
}

fn err(input: &str, reason: impl Into<String>) -> EngineError {
    EngineError::Parse { input: input.to_string(), reason: reason.into() }
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                out.push(Tok::Num(text.parse().map_err(|_| err(s, "integer too large"))?));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                    i += 1;
                }
                out.push(Tok::Name(chars[start..i].iter().collect()));
            }
            _ => {
                out.push(match c {
                    '+' => Tok::Plus,
                    '-' | '−' => Tok::Minus,
                    '*' | '·' => Tok::Star,
                    '^' => Tok::Caret,
                    '[' => Tok::LBracket,
                    ']' => Tok::RBracket,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '=' => Tok::Eq,
                    other => return Err(err(s, format!("unexpected character {other:?}"))),
                });
                i += 1;
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    pres: &'a Presentation,
    input: &'a str,
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        match self.next() {
            Some(ref got) if *got == t => Ok(()),
            got => Err(err(self.input, format!("expected {t:?}, found {got:?}"))),
        }
    }

    fn constant(&self, c: u64) -> Element {
        let f = self.pres.field();
        Element::from_monomial(self.pres.one(), (c % f.p() as u64) as u32)
    }

    fn expr(&mut self) -> Result<Element> {
        let f = self.pres.field();
        let mut acc = Element::zero();
        let mut sign = 1;
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                sign = f.neg(1);
            }
            Some(Tok::Plus) => self.pos += 1,
            _ => {}
        }
        loop {
            let t = self.term()?;
            acc.add_scaled(f, &t, sign);
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    sign = 1;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    sign = f.neg(1);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Element> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            let rhs = self.factor()?;
            acc = self.pres.mul_free(&acc, &rhs);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Element> {
        match self.next() {
            Some(Tok::Num(n)) => Ok(self.constant(n)),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Some(Tok::Name(name)) => {
                let idx = self
                    .pres
                    .index_of(&name)
                    .ok_or_else(|| err(self.input, format!("unknown generator {name:?}")))?;
                if self.peek() != Some(&Tok::Caret) {
                    return Ok(Element::from_monomial(Monomial::single(self.pres.ngens(), idx, 1), 1));
                }
                self.pos += 1;
                if self.peek() == Some(&Tok::LBracket) {
                    self.pos += 1;
                    let Some(Tok::Num(n)) = self.next() else {
                        return Err(err(self.input, "expected an integer inside ^[ ]"));
                    };
                    self.expect(Tok::RBracket)?;
                    if self.pres.generators()[idx].kind != GenKind::DividedPower {
                        return Err(err(self.input, format!("{name}^[{n}] needs a divided-power generator")));
                    }
                    return Ok(Element::from_monomial(Monomial::single(self.pres.ngens(), idx, n as u32), 1));
                }
                let Some(Tok::Num(n)) = self.next() else {
                    return Err(err(self.input, "expected an exponent after ^"));
                };
                let base = Element::from_monomial(Monomial::single(self.pres.ngens(), idx, 1), 1);
                let mut acc = self.constant(1);
                for _ in 0..n {
                    acc = self.pres.mul_free(&acc, &base);
                    if acc.is_zero() {
                        break;
                    }
                }
                Ok(acc)
            }
            other => Err(err(self.input, format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses into the free algebra on the presentation's generators.
pub(crate) fn parse_free(pres: &Presentation, s: &str) -> Result<Element> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(err(s, "empty expression"));
    }
    let mut p = Parser { pres, input: s, toks, pos: 0 };
    let lhs = p.expr()?;
    let out = if p.peek() == Some(&Tok::Eq) {
        p.pos += 1;
        let rhs = p.expr()?;
        let mut e = lhs;
        e.add_scaled(pres.field(), &rhs, pres.field().neg(1));
        e
    } else {
        lhs
    };
    if p.pos != p.toks.len() {
        return Err(err(s, "trailing input"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::PrimeField;

    fn pres() -> Presentation {
        Presentation::builder(PrimeField::new(5).unwrap())
            .ext("x", 7)
            .ext("e", 41)
            .poly("c", 56)
            .poly("d", 90)
            .divided("b", 40)
            .build()
            .unwrap()
    }

    #[test]
    fn relation_with_equals_sign() {
        let p = pres();
        let r = p.parse_free("e*c = -x*d").unwrap();
        let s = p.parse_free("e*c + x*d").unwrap();
        assert_eq!(r, s);
    }

    #[test]
    fn powers_of_divided_generator_pick_up_factorials() {
        let p = pres();
        // b^3 = 3! γ_3(b) = 6 γ_3 ≡ γ_3 mod 5.
        assert_eq!(p.parse_free("b^3").unwrap(), p.parse_free("b^[3]").unwrap());
        assert!(p.parse_free("b^5").unwrap().is_zero());
        assert!(!p.parse_free("b^[5]").unwrap().is_zero());
    }

    #[test]
    fn errors_are_reported() {
        let p = pres();
        assert!(p.parse_free("z").is_err());
        assert!(p.parse_free("x^[2]").is_err());
        assert!(p.parse_free("x +").is_err());
        assert!(p.parse_free("").is_err());
        assert!(p.parse_free("(x").is_err());
    }

    #[test]
    fn parentheses_distribute() {
        let p = pres();
        assert_eq!(p.parse_free("(x + e)*c").unwrap(), p.parse_free("x*c + e*c").unwrap());
        assert!(p.parse_free("x*x").unwrap().is_zero());
    }
}
