//! Parsers for element expressions and printed normal forms.
//!
//! Expressions:
//!
//! ```text
//! expr := term ("*" term)*
//! term := "1" | gen | "inv(" expr ")" | "comm(" expr "," expr ")" | "(" expr ")"
//! gen  := "x(" label "," label ";" ringliteral ")"
//! ```
//!
//! Normal forms are what [`GroupElement`]'s `Display` prints:
//! `1` or `1 + c*e(i,j) + …`.

use thiserror::Error;

use crate::element::{GroupElement, McLainGroup};
use crate::relation::Pair;
use crate::ring::RingSpec;
use crate::word::{GeneratorWord, WordToken};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at offset {offset}: {message}")]
pub struct ExprError {
    pub offset: usize,
    pub message: String,
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
    ring: RingSpec,
}

fn is_label_char(c: char) -> bool {
    !c.is_whitespace() && !matches!(c, ',' | ';' | '(' | ')' | '*' | '[' | ']' | '+')
}

impl<'a> Cursor<'a> {
    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
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

    fn expect(&mut self, token: &str) -> Result<(), ExprError> {
        if self.eat(token) {
            Ok(())
        } else {
            self.err(format!("expected `{token}`"))
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.text.len()
    }

    fn label(&mut self) -> Result<&'a str, ExprError> {
        self.skip_ws();
        let len: usize = self
            .rest()
            .chars()
            .take_while(|&c| is_label_char(c))
            .map(char::len_utf8)
            .sum();
        if len == 0 {
            return self.err("expected a node label");
        }
        let out = &self.rest()[..len];
        self.pos += len;
        Ok(out)
    }

    /// A ring literal runs to the next `)` outside square brackets.
    fn ring_literal(&mut self) -> Result<crate::ring::RingValue, ExprError> {
        self.skip_ws();
        let start = self.pos;
        let mut depth = 0i32;
        let mut end = None;
        for (off, c) in self.rest().char_indices() {
            match c {
                '[' => depth += 1,
                ']' => depth -= 1,
                ')' if depth == 0 => {
                    end = Some(off);
                    break;
                }
                _ => {}
            }
        }
        let Some(end) = end else {
            return self.err("unterminated ring literal");
        };
        let literal = &self.rest()[..end];
        match self.ring.parse_value(literal) {
            Ok(v) => {
                self.pos += end;
                Ok(v)
            }
            Err(e) => Err(ExprError {
                offset: start,
                message: e.to_string(),
            }),
        }
    }

    fn pair_args(&mut self) -> Result<Pair, ExprError> {
        let i = self.label()?;
        self.expect(",")?;
        let j = self.label()?;
        Ok(Pair::new(i, j))
    }

    fn expr(&mut self) -> Result<GeneratorWord, ExprError> {
        let mut word = self.term()?;
        while self.eat("*") {
            word.extend(self.term()?);
        }
        Ok(word)
    }

    fn term(&mut self) -> Result<GeneratorWord, ExprError> {
        if self.eat("inv(") {
            let inner = self.expr()?;
            self.expect(")")?;
            return Ok(GeneratorWord::inverse_of(inner));
        }
        if self.eat("comm(") {
            let u = self.expr()?;
            self.expect(",")?;
            let v = self.expr()?;
            self.expect(")")?;
            return Ok(GeneratorWord::commutator_of(u, v));
        }
        if self.eat("x(") {
            let pair = self.pair_args()?;
            self.expect(";")?;
            let coeff = self.ring_literal()?;
            self.expect(")")?;
            return Ok(GeneratorWord::generator(pair, coeff));
        }
        if self.eat("(") {
            let inner = self.expr()?;
            self.expect(")")?;
            return Ok(inner);
        }
        if self.eat("1") {
            return Ok(GeneratorWord::from_tokens(vec![WordToken::One]));
        }
        self.err("expected `1`, `x(`, `inv(`, `comm(` or `(`")
    }
}

/// Parses an element expression into a word over `ring`.
pub fn parse_word(text: &str, ring: RingSpec) -> Result<GeneratorWord, ExprError> {
    let mut cur = Cursor { text, pos: 0, ring };
    let word = cur.expr()?;
    if !cur.at_end() {
        return cur.err("unexpected trailing input");
    }
    Ok(word)
}

/// Parses a printed normal form back into an element of `group`.
pub fn parse_normal_form(text: &str, group: &McLainGroup) -> Result<GroupElement, ExprError> {
    let mut cur = Cursor {
        text,
        pos: 0,
        ring: group.ring(),
    };
    cur.expect("1")?;
    let mut terms: Vec<(Pair, crate::ring::RingValue)> = Vec::new();
    while cur.eat("+") {
        cur.skip_ws();
        let Some(star) = cur.rest().find("*e(") else {
            return cur.err("expected `coefficient*e(i,j)`");
        };
        let literal = &cur.rest()[..star];
        let coeff = group.ring().parse_value(literal).map_err(|e| ExprError {
            offset: cur.pos,
            message: e.to_string(),
        })?;
        cur.pos += star + "*e(".len();
        let pair = cur.pair_args()?;
        cur.expect(")")?;
        if coeff.is_zero() {
            return cur.err("zero coefficients do not appear in a normal form");
        }
        if terms.iter().any(|(p, _)| *p == pair) {
            return cur.err(format!("pair {pair} repeated"));
        }
        terms.push((pair, coeff));
    }
    if !cur.at_end() {
        return cur.err("unexpected trailing input");
    }
    let offset = cur.pos;
    group.element(terms).map_err(|e| ExprError {
        offset,
        message: e.to_string(),
    })
}
