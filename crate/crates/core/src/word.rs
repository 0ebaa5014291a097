//! Free words over `G = G⁵ ∪ A`.

use std::fmt;

use crate::error::{Error, Result};
use crate::terms::{Anchor, Gen, GenStore, Parser};

/// One letter of a word: a generator (or the unit `1`) or an anchor.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Token {
    Gen(Gen),
    Anchor(Anchor),
}

impl Token {
    pub fn as_gen(&self) -> Option<&Gen> {
        match self {
            Token::Gen(g) => Some(g),
            Token::Anchor(_) => None,
        }
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Gen(g) => write!(f, "{g}"),
            Token::Anchor(a) => write!(f, "{a}"),
        }
    }
}

impl fmt::Debug for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A nonempty word.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GWord(Vec<Token>);

impl GWord {
    pub fn from_tokens(tokens: Vec<Token>) -> Result<Self> {
        if tokens.is_empty() {
            Err(Error::EmptyWord)
        } else {
            Ok(GWord(tokens))
        }
    }

    /// Parses whitespace-separated tokens. A bare `1` is read as the unit letter.
    pub fn parse(store: &GenStore, text: &str) -> Result<Self> {
        let mut p = Parser::new(text);
        let mut tokens = Vec::new();
        p.skip_ws();
        while !p.at_end() {
            tokens.push(p.token(store)?);
            p.skip_ws();
        }
        GWord::from_tokens(tokens)
    }

    pub fn tokens(&self) -> &[Token] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `σ(u)`
    pub fn first(&self) -> &Token {
        &self.0[0]
    }

    /// `τ(u)`
    pub fn last(&self) -> &Token {
        self.0.last().unwrap()
    }

    pub fn concat(&self, other: &GWord) -> GWord {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        GWord(v)
    }

    pub fn is_prefix_of(&self, other: &GWord) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn is_suffix_of(&self, other: &GWord) -> bool {
        other.0.ends_with(&self.0)
    }
}

impl fmt::Display for GWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for GWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}
