//! Finite binary words and multi-axis addresses.
//!
//! A [`Word`] names a dyadic interval of the unit interval (equivalently a
//! cone of the Cantor set); an [`Address`] is one word per axis and names a
//! dyadic box of the unit cube.

use std::fmt;
use std::str::FromStr;

use crate::error::ParseError;

/// A finite bit string. The empty word is written `e`.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    bits: Vec<u8>,
}

impl Word {
    pub fn empty() -> Self {
        Word { bits: Vec::new() }
    }

    /// Builds a word from an iterator of bits. Any nonzero value counts as 1.
    pub fn from_bits<I: IntoIterator<Item = u8>>(bits: I) -> Self {
        Word {
            bits: bits.into_iter().map(|b| u8::from(b != 0)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn bit(&self, i: usize) -> u8 {
        self.bits[i]
    }

    pub fn last(&self) -> Option<u8> {
        self.bits.last().copied()
    }

    pub fn push(&mut self, bit: u8) {
        self.bits.push(u8::from(bit != 0));
    }

    pub fn pop(&mut self) -> Option<u8> {
        self.bits.pop()
    }

    pub fn child(&self, bit: u8) -> Word {
        let mut w = self.clone();
        w.push(bit);
        w
    }

    /// The word with its final bit removed, or `None` for the empty word.
    pub fn parent(&self) -> Option<Word> {
        if self.is_empty() {
            None
        } else {
            Some(Word {
                bits: self.bits[..self.bits.len() - 1].to_vec(),
            })
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut bits = Vec::with_capacity(self.len() + other.len());
        bits.extend_from_slice(&self.bits);
        bits.extend_from_slice(&other.bits);
        Word { bits }
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.bits.starts_with(&self.bits)
    }

    /// True when one of the two words is a prefix of the other, i.e. the
    /// corresponding intervals intersect.
    pub fn is_comparable(&self, other: &Word) -> bool {
        self.is_prefix_of(other) || other.is_prefix_of(self)
    }

    /// The suffix left after removing `prefix`, if `prefix` is a prefix.
    pub fn strip_prefix(&self, prefix: &Word) -> Option<Word> {
        self.bits.strip_prefix(prefix.bits.as_slice()).map(|rest| Word {
            bits: rest.to_vec(),
        })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bits.is_empty() {
            return f.write_str("e");
        }
        for &b in &self.bits {
            f.write_str(if b == 0 { "0" } else { "1" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Word {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "e" {
            return Ok(Word::empty());
        }
        if s.is_empty() {
            return Err(ParseError::new(0, "empty word must be written `e`"));
        }
        let mut bits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => bits.push(0),
                '1' => bits.push(1),
                _ => return Err(ParseError::new(0, format!("invalid bit `{c}` in word `{s}`"))),
            }
        }
        Ok(Word { bits })
    }
}

/// One word per axis; names the dyadic box (cone) with those prefixes.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Address {
    words: Vec<Word>,
}

impl Address {
    pub fn new(words: Vec<Word>) -> Self {
        assert!(!words.is_empty(), "address must have at least one axis");
        Address { words }
    }

    /// The whole cube: `e` on every axis.
    pub fn root(arity: usize) -> Self {
        Address::new(vec![Word::empty(); arity])
    }

    /// Address with `word` on `axis` (0-based) and `e` elsewhere.
    pub fn on_axis(arity: usize, axis: usize, word: Word) -> Self {
        let mut words = vec![Word::empty(); arity];
        words[axis] = word;
        Address::new(words)
    }

    pub fn arity(&self) -> usize {
        self.words.len()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn word(&self, axis: usize) -> &Word {
        &self.words[axis]
    }

    pub fn depth(&self) -> usize {
        self.words.iter().map(Word::len).sum()
    }

    /// The child box obtained by appending `bit` on `axis`.
    pub fn child(&self, axis: usize, bit: u8) -> Address {
        let mut words = self.words.clone();
        words[axis].push(bit);
        Address { words }
    }

    /// Coordinatewise prefix: `self` contains `other`.
    pub fn contains(&self, other: &Address) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a.is_prefix_of(b))
    }

    /// The box `self ∩ other`, or `None` if they are disjoint.
    pub fn intersect(&self, other: &Address) -> Option<Address> {
        let mut words = Vec::with_capacity(self.arity());
        for (a, b) in self.words.iter().zip(&other.words) {
            if a.is_prefix_of(b) {
                words.push(b.clone());
            } else if b.is_prefix_of(a) {
                words.push(a.clone());
            } else {
                return None;
            }
        }
        Some(Address { words })
    }

    pub fn is_disjoint(&self, other: &Address) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .any(|(a, b)| !a.is_comparable(b))
    }

    /// Per-axis suffixes of `self` below the containing box `outer`.
    pub fn relative_to(&self, outer: &Address) -> Option<Vec<Word>> {
        self.words
            .iter()
            .zip(&outer.words)
            .map(|(w, p)| w.strip_prefix(p))
            .collect()
    }

    /// Appends `suffixes[a]` to the word on axis `a`.
    pub fn extend(&self, suffixes: &[Word]) -> Address {
        Address {
            words: self
                .words
                .iter()
                .zip(suffixes)
                .map(|(w, s)| w.concat(s))
                .collect(),
        }
    }
}

impl fmt::Display for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, w) in self.words.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{w}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Shorthand used throughout the tests: `addr(&["0", "e"])`.
pub fn addr(words: &[&str]) -> Address {
    Address::new(
        words
            .iter()
            .map(|w| w.parse().expect("invalid word literal"))
            .collect(),
    )
}
