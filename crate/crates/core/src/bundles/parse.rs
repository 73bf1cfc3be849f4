//! Text syntax for bundle expressions.
//!
//! ```text
//! expr    := term { "*" term }
//! term    := primary { "(" twist ")" | "'" }
//! primary := "O" [ "(" twist ")" ] | "U" | "S"
//!          | "E(" int "," int ")" | "F(" int "," int ")"
//!          | "Sym^" int primary | "[" expr "]"
//! twist   := int "," int | lincomb
//! lincomb := [sign] [int] ("h"|"H") { sign [int] ("h"|"H") } | "0"
//! ```
//!
//! `'` is the dual; `H = (1,0)` and `h = (0,1)`. Whitespace is ignored
//! between tokens.

use thiserror::Error;

use super::BundleExpr;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {pos}: {message}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

pub fn parse_expr(text: &str) -> Result<BundleExpr, ParseError> {
    let mut p = Parser { src: text, pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error(format!("unexpected trailing input '{}'", &p.src[p.pos..])));
    }
    Ok(e)
}

impl<'a> Parser<'a> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            pos: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = self.peek().map(|c| format!("'{c}'")).unwrap_or_else(|| "end of input".into());
            Err(self.error(format!("expected '{c}', found {found}")))
        }
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.peek_raw(), Some('-') | Some('+')) {
            self.pos += 1;
        }
        let digits = self.pos;
        while matches!(self.peek_raw(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits {
            self.pos = start;
            return Err(self.error("expected an integer"));
        }
        self.src[start..self.pos].parse().map_err(|_| ParseError {
            pos: start,
            message: "integer out of range".into(),
        })
    }

    fn expr(&mut self) -> Result<BundleExpr, ParseError> {
        let mut e = self.term()?;
        while self.eat('*') {
            e = e.tensor(self.term()?);
        }
        Ok(e)
    }

    fn term(&mut self) -> Result<BundleExpr, ParseError> {
        let mut e = self.primary()?;
        loop {
            if self.eat('\'') {
                e = e.dual();
            } else if self.eat('(') {
                let (a, b) = self.twist()?;
                self.expect(')')?;
                e = e.twist(a, b);
            } else {
                return Ok(e);
            }
        }
    }

    fn pair(&mut self) -> Result<(i64, i64), ParseError> {
        self.expect('(')?;
        let a = self.int()?;
        self.expect(',')?;
        let b = self.int()?;
        self.expect(')')?;
        Ok((a, b))
    }

    fn primary(&mut self) -> Result<BundleExpr, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.eat('[') {
            let e = self.expr()?;
            self.expect(']')?;
            return Ok(e);
        }
        let ident: String = self.src[self.pos..]
            .chars()
            .take_while(|c| c.is_ascii_alphabetic())
            .collect();
        self.pos += ident.len();
        match ident.as_str() {
            "O" => {
                if self.eat('(') {
                    let (a, b) = self.twist()?;
                    self.expect(')')?;
                    Ok(BundleExpr::Line(a, b))
                } else {
                    Ok(BundleExpr::Line(0, 0))
                }
            }
            "U" => Ok(BundleExpr::AtomU),
            "S" => Ok(BundleExpr::AtomS),
            "E" => {
                let (a, b) = self.pair()?;
                Ok(BundleExpr::IrrP1(a, b))
            }
            "F" => {
                let (a, b) = self.pair()?;
                Ok(BundleExpr::IrrP2(a, b))
            }
            "Sym" => {
                self.expect('^')?;
                self.skip_ws();
                let at = self.pos;
                let m = self.int()?;
                let m = u32::try_from(m).map_err(|_| ParseError {
                    pos: at,
                    message: format!("Sym power must be non-negative, got {m}"),
                })?;
                let inner = self.primary()?;
                Ok(inner.sym(m))
            }
            "" => {
                let found = self.peek_raw().map(|c| format!("'{c}'")).unwrap_or_else(|| "end of input".into());
                Err(self.error(format!("expected a bundle, found {found}")))
            }
            other => Err(ParseError {
                pos: start,
                message: format!("unknown atom '{other}'"),
            }),
        }
    }

    /// `int,int` or a linear combination of `H` and `h`.
    fn twist(&mut self) -> Result<(i64, i64), ParseError> {
        self.skip_ws();
        let save = self.pos;
        if let Ok(a) = self.int() {
            if self.eat(',') {
                let b = self.int()?;
                return Ok((a, b));
            }
        }
        self.pos = save;
        let (mut big, mut small) = (0i64, 0i64);
        let mut first = true;
        loop {
            self.skip_ws();
            let sign = match self.peek_raw() {
                Some('+') if !first => {
                    self.pos += 1;
                    1
                }
                Some('-') => {
                    self.pos += 1;
                    -1
                }
                _ if first => 1,
                _ => break,
            };
            self.skip_ws();
            let mut coeff = 1;
            if matches!(self.peek_raw(), Some(c) if c.is_ascii_digit()) {
                coeff = self.int()?;
            }
            match self.peek() {
                Some('H') => {
                    self.pos += 1;
                    big += sign * coeff;
                }
                Some('h') => {
                    self.pos += 1;
                    small += sign * coeff;
                }
                _ if coeff == 0 && first => {}
                _ => return Err(self.error("expected 'h' or 'H' in twist")),
            }
            first = false;
        }
        Ok((big, small))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_examples() {
        let u = BundleExpr::u();
        assert_eq!(parse_expr("U*U(h)").unwrap(), u.clone().tensor(u.clone().twist(0, 1)));
        assert_eq!(parse_expr("O(H-2h)").unwrap(), BundleExpr::Line(1, -2));
        assert_eq!(parse_expr("Sym^2 E(1,1)").unwrap(), BundleExpr::IrrP1(1, 1).sym(2));
        assert_eq!(parse_expr("O").unwrap(), BundleExpr::Line(0, 0));
        assert_eq!(parse_expr("O(1,-2)").unwrap(), BundleExpr::Line(1, -2));
        assert_eq!(parse_expr("U(h)'").unwrap(), u.clone().twist(0, 1).dual());
        assert_eq!(parse_expr("U'(-h)").unwrap(), u.clone().dual().twist(0, -1));
        assert_eq!(parse_expr(" O( 3h - 2H ) ").unwrap(), BundleExpr::Line(-2, 3));
        assert_eq!(parse_expr("F(1,-3)").unwrap(), BundleExpr::IrrP2(1, -3));
        assert_eq!(parse_expr("U(0)").unwrap(), u.clone().twist(0, 0));
        assert_eq!(parse_expr("[U*U](-H)").unwrap(), u.clone().tensor(u.clone()).twist(-1, 0));
        assert_eq!(parse_expr("Sym^3 [U']").unwrap(), u.clone().dual().sym(3));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_expr("U*X").unwrap_err();
        assert_eq!(e.pos, 2);
        assert!(e.message.contains("unknown atom 'X'"));

        let e = parse_expr("O(H-2q)").unwrap_err();
        assert_eq!(e.pos, 5);

        let e = parse_expr("E(1 1)").unwrap_err();
        assert!(e.message.contains("expected ','"));

        assert!(parse_expr("").is_err());
        assert!(parse_expr("U)").is_err());
        assert!(parse_expr("Sym^-1 U").is_err());
        assert!(parse_expr("[U*U").is_err());
    }
}
