use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Index of a color in its [`Alphabet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(pub usize);

impl Symbol {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Finite word over an alphabet, as symbol indices.
pub type Word = Vec<Symbol>;

/// Ordered, duplicate-free list of color names.
///
/// Declaration order is the total order used by every algorithm in the crate
/// (breadth-first searches, tie-breaking, serialization).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<String>,
    index: HashMap<String, Symbol>,
}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::Invalid("alphabet is empty".into()));
        }
        let mut index = HashMap::with_capacity(symbols.len());
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() {
                return Err(Error::Invalid("empty symbol name".into()));
            }
            if index.insert(s.clone(), Symbol(i)).is_some() {
                return Err(Error::Invalid(format!("duplicate symbol {s}")));
            }
        }
        Ok(Alphabet { symbols, index })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbol(&self, name: &str) -> Option<Symbol> {
        self.index.get(name).copied()
    }

    pub fn name(&self, a: Symbol) -> &str {
        &self.symbols[a.0]
    }

    pub fn names(&self) -> &[String] {
        &self.symbols
    }

    pub fn iter(&self) -> impl Iterator<Item = Symbol> + '_ {
        (0..self.symbols.len()).map(Symbol)
    }

    pub fn contains(&self, a: Symbol) -> bool {
        a.0 < self.symbols.len()
    }

    pub fn parse_word<S: AsRef<str>>(&self, names: &[S]) -> Result<Word> {
        names
            .iter()
            .map(|n| {
                self.symbol(n.as_ref())
                    .ok_or_else(|| Error::UnknownSymbol(n.as_ref().to_string()))
            })
            .collect()
    }

    pub fn format_word(&self, word: &[Symbol]) -> Vec<String> {
        word.iter().map(|&a| self.name(a).to_string()).collect()
    }

    /// Word rendered as `a·b·c`, or `ε` when empty.
    pub fn display_word(&self, word: &[Symbol]) -> String {
        if word.is_empty() {
            return "ε".to_string();
        }
        self.format_word(word).join("·")
    }

    /// A copy of this alphabet extended with a fresh symbol whose name starts
    /// with `base` (primes are appended until the name is unused).
    pub fn with_fresh(&self, base: &str) -> (Alphabet, Symbol) {
        let mut name = base.to_string();
        while self.index.contains_key(&name) {
            name.push('\'');
        }
        let mut symbols = self.symbols.clone();
        symbols.push(name);
        let fresh = Symbol(symbols.len() - 1);
        (Alphabet::new(symbols).expect("fresh symbol keeps the alphabet valid"), fresh)
    }
}
