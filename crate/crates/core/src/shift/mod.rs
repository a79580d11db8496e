//! Shift spaces given by finite window constraints.
//!
//! An [`SftSpec`] is the human-facing description (alphabet, step, allowed
//! words); [`EdgePresentation`] is the graph form every algorithm works on.

pub(crate) mod config;
mod presentation;
mod spec;

pub use config::{EpConfig, PeriodicConfig};
pub(crate) use presentation::essential_vertices;
pub use presentation::{higher_block_recode, language, trim_essential, Edge, EdgePresentation};
pub use spec::{parse_spec, SftSpec};

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Index of a symbol in its [`Alphabet`].
pub type Symbol = usize;

/// A spec together with its trimmed edge presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shift {
    spec: SftSpec,
    presentation: EdgePresentation,
}

impl Shift {
    pub fn new(spec: SftSpec) -> Arc<Shift> {
        let presentation = higher_block_recode(&spec);
        Arc::new(Shift { spec, presentation })
    }

    pub fn parse(text: &str) -> Result<Arc<Shift>> {
        Ok(Shift::new(parse_spec(text)?))
    }

    pub fn spec(&self) -> &SftSpec {
        &self.spec
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.spec.alphabet()
    }

    pub fn presentation(&self) -> &EdgePresentation {
        &self.presentation
    }

    pub fn is_empty(&self) -> bool {
        self.presentation.is_empty()
    }

    /// `L_n`: the words of length `n` occurring in some point of the shift.
    pub fn language(&self, n: usize) -> BTreeSet<Word> {
        language(&self.presentation, n)
    }

    /// Vertex of the presentation that a point occupies at coordinate `i`
    /// (the context word ending at `i`).
    pub fn vertex_at(&self, x: &EpConfig, i: i64) -> Option<usize> {
        let m = self.spec.step() as i64;
        let ctx = x.slice(i - m + 1, i + 1);
        self.presentation.vertex_index(&ctx)
    }
}

/// An ordered set of symbol tokens. The order is the canonical order used
/// for every enumeration in the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<String>,
    index: HashMap<String, Symbol>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(tokens: impl IntoIterator<Item = S>) -> Result<Self> {
        let mut symbols = Vec::new();
        let mut index = HashMap::new();
        for tok in tokens {
            let tok = tok.into();
            if !is_valid_token(&tok) {
                return Err(Error::parse(0, format!("invalid symbol token `{tok}`")));
            }
            if index.insert(tok.clone(), symbols.len()).is_some() {
                return Err(Error::DuplicateSymbol(tok));
            }
            symbols.push(tok);
        }
        if symbols.is_empty() {
            return Err(Error::parse(0, "alphabet is empty"));
        }
        Ok(Alphabet { symbols, index })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn token(&self, s: Symbol) -> &str {
        &self.symbols[s]
    }

    pub fn lookup(&self, tok: &str) -> Result<Symbol> {
        self.index
            .get(tok)
            .copied()
            .ok_or_else(|| Error::UnknownSymbol(tok.to_string()))
    }

    /// Parses a `.`-joined word. The empty string is the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        if text.is_empty() {
            return Ok(Word::empty());
        }
        text.split('.')
            .map(|tok| self.lookup(tok))
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn format_word(&self, w: &[Symbol]) -> String {
        let toks: Vec<&str> = w.iter().map(|&s| self.token(s)).collect();
        toks.join(".")
    }

    /// Every word of length `n`, in lexicographic order.
    pub fn all_words(&self, n: usize) -> impl Iterator<Item = Word> + '_ {
        let k = self.len();
        let total = k.checked_pow(n as u32).unwrap_or(usize::MAX);
        (0..total).map(move |mut idx| {
            let mut w = vec![0; n];
            for slot in w.iter_mut().rev() {
                *slot = idx % k;
                idx /= k;
            }
            Word(w)
        })
    }
}

fn is_valid_token(tok: &str) -> bool {
    !tok.is_empty()
        && !tok
            .chars()
            .any(|c| c.is_whitespace() || c == '.' || c == '#')
}

/// A finite word over an alphabet, stored as symbol indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<Symbol>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn into_inner(self) -> Vec<Symbol> {
        self.0
    }
}

impl Deref for Word {
    type Target = [Symbol];

    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

// Hash, Eq and Ord agree with the slice impls, as `Borrow` requires.
impl std::borrow::Borrow<[Symbol]> for Word {
    fn borrow(&self) -> &[Symbol] {
        &self.0
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

impl From<&[Symbol]> for Word {
    fn from(v: &[Symbol]) -> Self {
        Word(v.to_vec())
    }
}

impl fmt::Display for Word {
    /// Index form, e.g. `0.1.2`. Use [`Alphabet::format_word`] for tokens.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}
