//! Expression front-end.
//!
//! Grammar: variables `z11`/`z_{11}`, `p1..`, `q1..`, `x0..`, the
//! imaginary unit `i`, unsigned integers, operators `+ - * / ^` and
//! parentheses. `/` builds an unreduced quotient; constant quotients
//! fold into coefficients, so `3/5` parses to the scalar 3/5.

use crate::error::ParseError;
use crate::gauss::GaussRat;
use crate::poly::Poly;
use crate::ratfn::RatFn;
use crate::var::Var;

const MAX_EXPONENT: u64 = 512;

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(u64),
    Var(Var),
    ImagUnit,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn next_tok(&mut self) -> Result<Tok, ParseError> {
        self.skip_ws();
        if self.pos >= self.src.len() {
            return Ok(Tok::End);
        }
        let c = self.src[self.pos];
        match c {
            b'+' => {
                self.pos += 1;
                Ok(Tok::Plus)
            }
            b'-' => {
                self.pos += 1;
                Ok(Tok::Minus)
            }
            b'*' => {
                self.pos += 1;
                Ok(Tok::Star)
            }
            b'/' => {
                self.pos += 1;
                Ok(Tok::Slash)
            }
            b'^' => {
                self.pos += 1;
                Ok(Tok::Caret)
            }
            b'(' => {
                self.pos += 1;
                Ok(Tok::LParen)
            }
            b')' => {
                self.pos += 1;
                Ok(Tok::RParen)
            }
            b'0'..=b'9' => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                text.parse::<u64>()
                    .map(Tok::Int)
                    .map_err(|_| self.err("integer literal too large"))
            }
            b'i' => {
                self.pos += 1;
                Ok(Tok::ImagUnit)
            }
            b'z' | b'p' | b'q' | b'x' => self.lex_var(c),
            _ => Err(self.err(format!("unexpected character `{}`", c as char))),
        }
    }

    fn lex_var(&mut self, kind: u8) -> Result<Tok, ParseError> {
        self.pos += 1;
        // optional `_{...}` wrapper
        let braced = self.src.get(self.pos) == Some(&b'_');
        if braced {
            if self.src.get(self.pos + 1) != Some(&b'{') {
                return Err(self.err("expected `{` after `_`"));
            }
            self.pos += 2;
        }
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let digits = &self.src[start..self.pos];
        if digits.is_empty() {
            return Err(self.err("expected variable index digits"));
        }
        if braced {
            if self.src.get(self.pos) != Some(&b'}') {
                return Err(self.err("expected closing `}`"));
            }
            self.pos += 1;
        }
        let var = match kind {
            b'z' => {
                if digits.len() != 2 {
                    return Err(self.err("z-variables take two single-digit indices, e.g. z11"));
                }
                let (i, j) = (digits[0] - b'0', digits[1] - b'0');
                if i == 0 || j == 0 {
                    return Err(self.err("z-variable indices are 1-based"));
                }
                Var::Z(i, j)
            }
            b'p' | b'q' => {
                let idx: u32 = std::str::from_utf8(digits)
                    .unwrap()
                    .parse()
                    .map_err(|_| self.err("index too large"))?;
                if idx == 0 || idx > 99 {
                    return Err(self.err("p/q index must be in 1..=99"));
                }
                if kind == b'p' {
                    Var::P(idx as u8)
                } else {
                    Var::Q(idx as u8)
                }
            }
            b'x' => {
                if digits.len() != 1 {
                    return Err(self.err("x-variables take one digit, x0..x4"));
                }
                let m = digits[0] - b'0';
                if m > 4 {
                    return Err(self.err("x-variable index must be 0..4"));
                }
                Var::X(m)
            }
            _ => unreachable!(),
        };
        Ok(Tok::Var(var))
    }
}

pub struct Parser<'a> {
    lexer: Lexer<'a>,
    tok: Tok,
    tok_pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Self, ParseError> {
        let mut lexer = Lexer::new(src);
        let tok_pos = lexer.pos;
        let tok = lexer.next_tok()?;
        Ok(Parser {
            lexer,
            tok,
            tok_pos,
        })
    }

    fn bump(&mut self) -> Result<(), ParseError> {
        self.tok_pos = self.lexer.pos;
        self.tok = self.lexer.next_tok()?;
        Ok(())
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError {
            pos: self.tok_pos,
            msg: msg.into(),
        }
    }

    // expr := term (('+'|'-') term)*
    fn expr(&mut self) -> Result<RatFn, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.tok {
                Tok::Plus => {
                    self.bump()?;
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.bump()?;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    // term := unary (('*'|'/') unary)*
    fn term(&mut self) -> Result<RatFn, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.tok {
                Tok::Star => {
                    self.bump()?;
                    acc = acc.mul(&self.unary()?);
                }
                Tok::Slash => {
                    self.bump()?;
                    let rhs = self.unary()?;
                    acc = acc
                        .div(&rhs)
                        .map_err(|_| self.err("division by zero"))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RatFn, ParseError> {
        match self.tok {
            Tok::Minus => {
                self.bump()?;
                Ok(self.unary()?.neg())
            }
            Tok::Plus => {
                self.bump()?;
                self.unary()
            }
            _ => self.power(),
        }
    }

    // power := atom ('^' uint)?
    fn power(&mut self) -> Result<RatFn, ParseError> {
        let base = self.atom()?;
        if self.tok == Tok::Caret {
            self.bump()?;
            let e = match self.tok {
                Tok::Int(e) => e,
                _ => return Err(self.err("expected integer exponent after `^`")),
            };
            if e > MAX_EXPONENT {
                return Err(self.err(format!("exponent {e} exceeds limit {MAX_EXPONENT}")));
            }
            self.bump()?;
            return Ok(base.pow(e as u32));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatFn, ParseError> {
        match self.tok.clone() {
            Tok::Int(n) => {
                self.bump()?;
                Ok(RatFn::from_poly(Poly::constant(GaussRat::from_int(
                    n as i64,
                ))))
            }
            Tok::ImagUnit => {
                self.bump()?;
                Ok(RatFn::from_poly(Poly::constant(GaussRat::i())))
            }
            Tok::Var(v) => {
                self.bump()?;
                Ok(RatFn::from_poly(Poly::var(v)))
            }
            Tok::LParen => {
                self.bump()?;
                let inner = self.expr()?;
                if self.tok != Tok::RParen {
                    return Err(self.err("expected `)`"));
                }
                self.bump()?;
                Ok(inner)
            }
            Tok::End => Err(self.err("unexpected end of input")),
            _ => Err(self.err("expected a value")),
        }
    }
}

/// Parses into an unreduced rational function. Constant denominators
/// are folded into the numerator's coefficients.
pub fn parse_ratfn(src: &str) -> Result<RatFn, ParseError> {
    let mut p = Parser::new(src)?;
    let out = p.expr()?;
    if p.tok != Tok::End {
        return Err(p.err("trailing input"));
    }
    if let Some(poly) = out.as_poly() {
        return Ok(RatFn::from_poly(poly));
    }
    Ok(out)
}

/// Parses an expression that must be a polynomial.
pub fn parse_poly(src: &str) -> Result<Poly, ParseError> {
    let f = parse_ratfn(src)?;
    f.as_poly().ok_or(ParseError {
        pos: 0,
        msg: "expression is a quotient, not a polynomial".into(),
    })
}
