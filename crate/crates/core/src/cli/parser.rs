//! Recursive-descent parser for the polynomial expression grammar:
//!
//! ```text
//! expr     := term (("+" | "-") term)*
//! term     := factor ("*" factor)*
//! factor   := rational | generator ("^" natural)? | "(" expr ")" | "-" factor
//! rational := integer ("/" positive-integer)?
//! ```

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::superalgebra::{GeneratorTable, Scalar, SuperElement};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("integer `{n}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Sym(c) => format!("`{c}`"),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push((start, Tok::Int(src[start..i].parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(src[start..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            let found = src[i..].chars().next().expect("in bounds");
            return Err(Error::Syntax {
                position: i,
                expected: "a number, a generator, an operator or a parenthesis".into(),
                found: format!("`{found}`"),
            });
        }
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    table: &'a GeneratorTable,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &str) -> Result<T> {
        Err(Error::Syntax {
            position: self.offset(),
            expected: expected.into(),
            found: self.peek().describe(),
        })
    }

    fn expr(&mut self) -> Result<SuperElement> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Sym('+') => {
                    self.bump();
                    acc += self.term()?;
                }
                Tok::Sym('-') => {
                    self.bump();
                    acc -= &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<SuperElement> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Sym('*') {
            self.bump();
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<SuperElement> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                if *self.peek() == Tok::Sym('/') {
                    self.bump();
                    match self.peek().clone() {
                        Tok::Int(d) if !d.is_zero() => {
                            self.bump();
                            Ok(SuperElement::constant(Scalar::new(n, d)))
                        }
                        _ => self.fail("a positive integer denominator"),
                    }
                } else {
                    Ok(SuperElement::constant(Scalar::from_integer(n)))
                }
            }
            Tok::Ident(name) => {
                let id = self.table.lookup(&name).ok_or(Error::UnknownGenerator(name))?;
                self.bump();
                let g = SuperElement::generator(self.table, id);
                if *self.peek() == Tok::Sym('^') {
                    self.bump();
                    match self.peek().clone() {
                        Tok::Int(k) => {
                            self.bump();
                            let k: u32 = k.try_into().map_err(|_| Error::Syntax {
                                position: self.offset(),
                                expected: "a small exponent".into(),
                                found: "an oversized integer".into(),
                            })?;
                            Ok(g.pow(k))
                        }
                        _ => self.fail("a natural-number exponent"),
                    }
                } else {
                    Ok(g)
                }
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr()?;
                if *self.peek() != Tok::Sym(')') {
                    return self.fail("`)`");
                }
                self.bump();
                Ok(e)
            }
            Tok::Sym('-') => {
                self.bump();
                Ok(-self.factor()?)
            }
            _ => self.fail("a number, a generator, `(` or `-`"),
        }
    }
}

/// Parses `src` into a canonical element over `table`.
pub fn parse_polynomial(src: &str, table: &GeneratorTable) -> Result<SuperElement> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        table,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.fail("`+`, `-`, `*` or end of input");
    }
    Ok(e)
}
