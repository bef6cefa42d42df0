//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr    := ['+'|'-'] term (('+'|'-') term)*
//! term    := factor (('*'|'/') factor)*
//! factor  := '-' factor | postfix ('^' uint)?
//! postfix := atom ('[' var ':=' expr (',' var ':=' expr)* ']')*
//! atom    := uint | var | '(' expr ')' | '@' ident
//! ```
//!
//! Division is only by nonzero constants. `@ident` atoms are looked up through a
//! caller-supplied resolver; the plain `FromStr` impl rejects them. Canonical
//! `Display` output is a subset of this grammar, so printing and re-parsing is
//! exact.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{MultiPoly, PolyError, Rational, Var};

pub type Resolver<'a> = dyn Fn(&str) -> Option<MultiPoly> + 'a;

pub fn parse_with(src: &str, resolve: &Resolver<'_>) -> Result<MultiPoly, PolyError> {
    let mut p = Parser { src, pos: 0, resolve };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

struct Parser<'s, 'r> {
    src: &'s str,
    pos: usize,
    resolve: &'r Resolver<'r>,
}

impl<'s, 'r> Parser<'s, 'r> {
    fn err(&self, msg: &str) -> PolyError {
        PolyError::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn rest(&self) -> &'s str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let r = self.rest();
        self.pos += r.len() - r.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MultiPoly, PolyError> {
        let mut acc = if self.eat("-") {
            -self.term()?
        } else {
            self.eat("+");
            self.term()?
        };
        loop {
            if self.eat("+") {
                acc = acc + self.term()?;
            } else if self.eat("-") {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, PolyError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat("*") {
                acc = acc * self.factor()?;
            } else if self.eat("/") {
                let at = self.pos;
                let d = self.factor()?;
                match d.as_constant() {
                    Some(c) if !c.is_zero() => acc = acc.scale(&(Rational::from_integer(1.into()) / c)),
                    _ => {
                        self.pos = at;
                        return Err(PolyError::BadDivision);
                    }
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<MultiPoly, PolyError> {
        if self.eat("-") {
            return Ok(-self.factor()?);
        }
        let base = self.postfix()?;
        if self.eat("^") {
            let k = self.uint()?;
            let k: u32 = k.try_into().map_err(|_| self.err("exponent too large"))?;
            Ok(base.pow(k))
        } else {
            Ok(base)
        }
    }

    fn postfix(&mut self) -> Result<MultiPoly, PolyError> {
        let mut base = self.atom()?;
        while self.eat("[") {
            let mut subs = Vec::new();
            loop {
                let v = self.var()?;
                if !self.eat(":=") {
                    return Err(self.err("expected `:=`"));
                }
                subs.push((v, self.expr()?));
                if self.eat("]") {
                    break;
                }
                if !self.eat(",") {
                    return Err(self.err("expected `,` or `]`"));
                }
            }
            base = base.substitute_many(&subs);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly, PolyError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(")") {
                    return Err(self.err("expected `)`"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.uint()?;
                Ok(MultiPoly::constant(Rational::from_integer(n)))
            }
            Some('@') => {
                self.pos += 1;
                let start = self.pos;
                let name = self.ident();
                if name.is_empty() {
                    return Err(self.err("expected a name after `@`"));
                }
                (self.resolve)(name).ok_or_else(|| {
                    self.pos = start;
                    self.err(&format!("unknown reference @{name}"))
                })
            }
            Some(_) => Ok(MultiPoly::var(self.var()?)),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn ident(&mut self) -> &'s str {
        self.skip_ws();
        let r = self.rest();
        let len = r
            .char_indices()
            .find(|(_, c)| !(c.is_alphanumeric() || *c == '_'))
            .map(|(i, _)| i)
            .unwrap_or(r.len());
        self.pos += len;
        &r[..len]
    }

    fn var(&mut self) -> Result<Var, PolyError> {
        let start = self.pos;
        let name = self.ident();
        if name.is_empty() {
            self.pos = start;
            return Err(self.err("expected a variable"));
        }
        Var::from_name(name).ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }

    fn uint(&mut self) -> Result<BigInt, PolyError> {
        self.skip_ws();
        let r = self.rest();
        let len = r.chars().take_while(|c| c.is_ascii_digit()).count();
        if len == 0 {
            return Err(self.err("expected an integer"));
        }
        self.pos += len;
        Ok(r[..len].parse().expect("digits"))
    }
}

#[cfg(test)]
mod tests {
    use super::super::p;
    use super::*;

    #[test]
    fn rejects_unknown_names() {
        assert_eq!(
            "x + 1".parse::<MultiPoly>(),
            Err(PolyError::UnknownVariable("x".into()))
        );
    }

    #[test]
    fn substitution_suffix() {
        let q = p("(a^2 + tau)[a := N - 1, tau := 0]");
        assert_eq!(q, p("N^2 - 2*N + 1"));
        assert_eq!(p("(lambda*N)[lambda := N + s][N := 2]"), p("2*s + 4"));
    }

    #[test]
    fn references_resolve() {
        let r = |k: &str| (k == "P").then(|| p("a + 1"));
        assert_eq!(parse_with("2*@P[a := 3]", &r).unwrap(), MultiPoly::int(8));
        assert!(parse_with("@Q", &r).is_err());
    }

    #[test]
    fn division_by_polynomial_rejected() {
        assert_eq!("1/lambda".parse::<MultiPoly>(), Err(PolyError::BadDivision));
    }
}
