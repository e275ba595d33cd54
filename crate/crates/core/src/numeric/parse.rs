//! A small expression grammar for scalars crossing text boundaries:
//! literals (`3`, `-1/4`, `0.125`, `1e-3`, `mid±rad`), `sqrt(...)`, the four
//! arithmetic operators, integer powers and parentheses.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' integer)?
//! atom   := literal | 'sqrt' '(' expr ')' | '(' expr ')'
//! ```

use super::{NumericError, Scalar};

pub fn parse_scalar(input: &str) -> Result<Scalar, NumericError> {
    let mut p = Parser { src: input, pos: 0 };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error());
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self) -> NumericError {
        NumericError::Parse(self.src.to_string())
    }

    fn skip_ws(&mut self) {
        while self.rest().starts_with(char::is_whitespace) {
            self.pos += self.rest().chars().next().map_or(1, char::len_utf8);
        }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Scalar, NumericError> {
        let mut acc = self.term()?;
        loop {
            if self.eat("+") {
                acc = &acc + &self.term()?;
            } else if self.eat("-") {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Scalar, NumericError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat("*") {
                acc = &acc * &self.unary()?;
            } else if self.eat("/") {
                acc = acc.checked_div(&self.unary()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar, NumericError> {
        if self.eat("-") {
            Ok(-self.unary()?)
        } else if self.eat("+") {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Scalar, NumericError> {
        let base = self.atom()?;
        if self.eat("^") {
            self.skip_ws();
            let start = self.pos;
            while self.rest().starts_with(|c: char| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let k: u32 = self.src[start..self.pos].parse().map_err(|_| self.error())?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Scalar, NumericError> {
        if self.eat("sqrt") {
            if !self.eat("(") {
                return Err(self.error());
            }
            let v = self.expr()?;
            if !self.eat(")") {
                return Err(self.error());
            }
            return v.sqrt();
        }
        if self.eat("(") {
            let v = self.expr()?;
            if !self.eat(")") {
                return Err(self.error());
            }
            return Ok(v);
        }
        self.literal()
    }

    /// Unsigned decimal literal, optionally with an exponent and a `±radius`.
    fn literal(&mut self) -> Result<Scalar, NumericError> {
        self.skip_ws();
        let start = self.pos;
        self.number_chars();
        if self.pos == start {
            return Err(self.error());
        }
        if self.rest().starts_with('±') {
            self.pos += '±'.len_utf8();
            self.number_chars();
        }
        Scalar::parse_literal(&self.src[start..self.pos])
    }

    fn number_chars(&mut self) {
        let bytes = self.src.as_bytes();
        let mut seen_exp = false;
        while self.pos < bytes.len() {
            let c = bytes[self.pos];
            if c.is_ascii_digit() || c == b'.' {
                self.pos += 1;
            } else if (c == b'e' || c == b'E') && !seen_exp {
                seen_exp = true;
                self.pos += 1;
                if self.pos < bytes.len() && (bytes[self.pos] == b'-' || bytes[self.pos] == b'+') {
                    self.pos += 1;
                }
            } else {
                break;
            }
        }
    }
}
