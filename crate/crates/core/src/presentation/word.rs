use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// One syllable `symbol^exp` of a word; `exp` is never zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub symbol: String,
    pub exp: i64,
}

/// A freely reduced word in string-named generators.
///
/// Adjacent letters always carry distinct symbols; the empty word is the
/// identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn letter(symbol: &str, exp: i64) -> Self {
        Word::new([(symbol, exp)])
    }

    /// Builds and freely reduces a word from `(symbol, exponent)` pairs.
    pub fn new<'a>(letters: impl IntoIterator<Item = (&'a str, i64)>) -> Self {
        let mut w = Word::identity();
        for (s, e) in letters {
            w.push(s, e);
        }
        w
    }

    fn push(&mut self, symbol: &str, exp: i64) {
        if exp == 0 {
            return;
        }
        if let Some(last) = self.0.last_mut() {
            if last.symbol == symbol {
                last.exp += exp;
                if last.exp == 0 {
                    self.0.pop();
                }
                return;
            }
        }
        self.0.push(Letter {
            symbol: symbol.to_string(),
            exp,
        });
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of syllables.
    pub fn syllables(&self) -> usize {
        self.0.len()
    }

    /// Sum of absolute exponents.
    pub fn length(&self) -> u64 {
        self.0.iter().map(|l| l.exp.unsigned_abs()).sum()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for l in &other.0 {
            w.push(&l.symbol, l.exp);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word::new(self.0.iter().rev().map(|l| (l.symbol.as_str(), -l.exp)))
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(Word::identity(), |acc, _| acc.concat(&base))
    }

    /// `self · other · self⁻¹`.
    pub fn conjugate_by(&self, by: &Word) -> Word {
        by.concat(self).concat(&by.inverse())
    }

    pub fn symbols(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(|l| l.symbol.as_str())
    }

    /// Applies a reduction pass again; reduced words are fixed points.
    pub fn reduced(&self) -> Word {
        Word::new(self.0.iter().map(|l| (l.symbol.as_str(), l.exp)))
    }

    /// Compact rendering without separators, e.g. `yx^5`.
    pub fn compact(&self) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.0
            .iter()
            .map(|l| match l.exp {
                1 => l.symbol.clone(),
                e => format!("{}^{}", l.symbol, e),
            })
            .collect()
    }
}

impl std::ops::Mul for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        self.concat(rhs)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            match l.exp {
                1 => write!(f, "{}", l.symbol)?,
                e => write!(f, "{}^{}", l.symbol, e)?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
#[error("cannot parse word token `{0}`")]
pub struct WordParseError(pub String);

impl FromStr for Word {
    type Err = WordParseError;

    /// Whitespace-separated signed powers: `a^2 b^-1 a b`; `1` is the identity.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut w = Word::identity();
        for tok in s.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (sym, exp) = match tok.split_once('^') {
                Some((sym, e)) => (
                    sym,
                    e.parse::<i64>()
                        .map_err(|_| WordParseError(tok.to_string()))?,
                ),
                None => (tok, 1),
            };
            let valid = !sym.is_empty()
                && sym
                    .chars()
                    .all(|c| c.is_alphanumeric() || c == '_' || c == '\'');
            if !valid {
                return Err(WordParseError(tok.to_string()));
            }
            w.push(sym, exp);
        }
        Ok(w)
    }
}

impl From<Word> for String {
    fn from(w: Word) -> String {
        w.to_string()
    }
}

impl TryFrom<String> for Word {
    type Error = WordParseError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}
