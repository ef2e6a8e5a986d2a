//! Words in the generators `x(i,j;a)`.
//!
//! A word is a product of tokens; it is turned into a group element by
//! [`McLainGroup::eval_word`](crate::McLainGroup::eval_word).

use std::fmt;

use crate::relation::Pair;
use crate::ring::RingValue;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WordToken {
    One,
    Gen { pair: Pair, coeff: RingValue },
    Inv(GeneratorWord),
    Comm(GeneratorWord, GeneratorWord),
}

/// A finite product of tokens; the empty word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GeneratorWord {
    tokens: Vec<WordToken>,
}

impl GeneratorWord {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_tokens(tokens: Vec<WordToken>) -> Self {
        GeneratorWord { tokens }
    }

    pub fn generator(pair: Pair, coeff: RingValue) -> Self {
        GeneratorWord {
            tokens: vec![WordToken::Gen { pair, coeff }],
        }
    }

    pub fn inverse_of(word: GeneratorWord) -> Self {
        GeneratorWord {
            tokens: vec![WordToken::Inv(word)],
        }
    }

    pub fn commutator_of(u: GeneratorWord, v: GeneratorWord) -> Self {
        GeneratorWord {
            tokens: vec![WordToken::Comm(u, v)],
        }
    }

    pub fn tokens(&self) -> &[WordToken] {
        &self.tokens
    }

    pub fn push(&mut self, token: WordToken) {
        self.tokens.push(token);
    }

    pub fn extend(&mut self, other: GeneratorWord) {
        self.tokens.extend(other.tokens);
    }

    /// Inserts a token at position `at` of the top-level product.
    pub fn insert(&mut self, at: usize, token: WordToken) {
        self.tokens.insert(at, token);
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// The `(pair, coefficient)` sequence when every token is a generator.
    pub fn as_generators(&self) -> Option<Vec<(&Pair, &RingValue)>> {
        self.tokens
            .iter()
            .map(|t| match t {
                WordToken::Gen { pair, coeff } => Some((pair, coeff)),
                _ => None,
            })
            .collect()
    }
}

impl fmt::Display for WordToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordToken::One => f.write_str("1"),
            WordToken::Gen { pair, coeff } => write!(f, "x({},{};{})", pair.src, pair.dst, coeff),
            WordToken::Inv(w) => write!(f, "inv({w})"),
            WordToken::Comm(u, v) => write!(f, "comm({u},{v})"),
        }
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.tokens.is_empty() {
            return f.write_str("1");
        }
        for (n, t) in self.tokens.iter().enumerate() {
            if n > 0 {
                f.write_str("*")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}
