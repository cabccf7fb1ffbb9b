//! Pointwise evaluation on eventually periodic points of the Cantor cube.
//!
//! This is deliberately a second route to the semantics of an element: it
//! never looks at refinements or reductions, only at prefixes of streams.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::element::Element;
use crate::error::{Error, ParseError, Result};
use crate::pattern::Pattern;
use crate::word::Word;

/// The infinite stream `prefix · period · period · ...`, kept in canonical
/// form: the period is primitive and the prefix does not end with a copy of
/// the period's last bit (so no rotation can shorten it).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Stream {
    prefix: Word,
    period: Word,
}

impl Stream {
    pub fn new(prefix: Word, period: Word) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidArgument("stream period must be nonempty".into()));
        }
        Ok(Stream::canonical(prefix, period))
    }

    fn canonical(mut prefix: Word, period: Word) -> Self {
        let bits = period.bits();
        let len = bits.len();
        let min = (1..=len)
            .find(|&d| len.is_multiple_of(d) && (d..len).all(|i| bits[i] == bits[i - d]))
            .unwrap_or(len);
        let mut period: Vec<u8> = bits[..min].to_vec();
        while let Some(last) = prefix.last() {
            if last != *period.last().expect("nonempty period") {
                break;
            }
            prefix.pop();
            period.rotate_right(1);
        }
        Stream {
            prefix,
            period: Word::from_bits(period),
        }
    }

    pub fn prefix(&self) -> &Word {
        &self.prefix
    }

    pub fn period(&self) -> &Word {
        &self.period
    }

    pub fn bit(&self, i: usize) -> u8 {
        if i < self.prefix.len() {
            self.prefix.bit(i)
        } else {
            self.period.bit((i - self.prefix.len()) % self.period.len())
        }
    }

    pub fn starts_with(&self, w: &Word) -> bool {
        (0..w.len()).all(|i| self.bit(i) == w.bit(i))
    }

    /// The stream with the first `w.len()` bits removed, if they spell `w`.
    pub fn strip(&self, w: &Word) -> Option<Stream> {
        if !self.starts_with(w) {
            return None;
        }
        let k = w.len();
        if k <= self.prefix.len() {
            let prefix = Word::from_bits(self.prefix.bits()[k..].iter().copied());
            return Some(Stream::canonical(prefix, self.period.clone()));
        }
        let shift = (k - self.prefix.len()) % self.period.len();
        let mut period = self.period.bits().to_vec();
        period.rotate_left(shift);
        Some(Stream::canonical(Word::empty(), Word::from_bits(period)))
    }

    pub fn prepend(&self, w: &Word) -> Stream {
        Stream::canonical(w.concat(&self.prefix), self.period.clone())
    }
}

impl fmt::Display for Stream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.prefix, self.period)
    }
}

impl fmt::Debug for Stream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Stream {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        let (prefix, period) = s
            .split_once(':')
            .ok_or_else(|| ParseError::new(0, format!("stream `{s}` must be prefix:period")))?;
        let prefix: Word = prefix.parse()?;
        let period: Word = period.parse()?;
        if period.is_empty() {
            return Err(ParseError::new(0, format!("stream `{s}` has an empty period")));
        }
        Ok(Stream::canonical(prefix, period))
    }
}

/// A point of the n-fold Cantor cube with eventually periodic coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CantorPoint {
    streams: Vec<Stream>,
}

impl CantorPoint {
    pub fn new(streams: Vec<Stream>) -> Self {
        assert!(!streams.is_empty(), "point needs at least one coordinate");
        CantorPoint { streams }
    }

    pub fn arity(&self) -> usize {
        self.streams.len()
    }

    pub fn streams(&self) -> &[Stream] {
        &self.streams
    }
}

/// Point literal syntax: `prefix:period` per axis, comma separated,
/// e.g. `01:1,e:10`.
impl fmt::Display for CantorPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.streams.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CantorPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for CantorPoint {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        let streams = s
            .split(',')
            .map(|part| part.trim().parse())
            .collect::<std::result::Result<Vec<Stream>, _>>()?;
        Ok(CantorPoint { streams })
    }
}

/// Label of the block of `p` containing `x`.
pub fn locate_block(p: &Pattern, x: &CantorPoint) -> Result<usize> {
    if p.arity() != x.arity() {
        return Err(Error::ArityMismatch(p.arity(), x.arity()));
    }
    let label = p
        .blocks()
        .iter()
        .position(|b| b.words().iter().zip(&x.streams).all(|(w, s)| s.starts_with(w)))
        .expect("a pattern covers every point");
    Ok(label)
}

/// Evaluates `f` at `x` by prefix replacement.
pub fn apply(f: &Element, x: &CantorPoint) -> Result<CantorPoint> {
    let i = locate_block(f.domain(), x)?;
    let from = f.domain().block(i);
    let to = f.range().block(f.sigma()[i]);
    let twist = &f.twists()[i];
    let mut out: Vec<Option<Stream>> = vec![None; x.arity()];
    for (a, s) in x.streams.iter().enumerate() {
        let rest = s.strip(from.word(a)).expect("located block is a prefix");
        let target = twist.apply(a);
        out[target] = Some(rest.prepend(to.word(target)));
    }
    Ok(CantorPoint {
        streams: out.into_iter().map(|s| s.expect("twist is a bijection")).collect(),
    })
}

/// Deterministic pseudo-random points: prefixes of length 0..=8 and
/// periods of length 1..=4 on every axis.
pub fn sample_points(seed: u64, count: usize, arity: usize) -> Vec<CantorPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let streams = (0..arity)
                .map(|_| {
                    let plen = rng.gen_range(0..=8);
                    let qlen = rng.gen_range(1..=4);
                    let prefix = Word::from_bits((0..plen).map(|_| rng.gen_range(0..=1u8)));
                    let period = Word::from_bits((0..qlen).map(|_| rng.gen_range(0..=1u8)));
                    Stream::canonical(prefix, period)
                })
                .collect();
            CantorPoint { streams }
        })
        .collect()
}

/// True iff `f` and `g` agree at every point of `points`.
pub fn agree(f: &Element, g: &Element, points: &[CantorPoint]) -> Result<bool> {
    if f.arity() != g.arity() {
        return Err(Error::ArityMismatch(f.arity(), g.arity()));
    }
    for x in points {
        if apply(f, x)? != apply(g, x)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The first point of `points` where `f` and `g` differ, if any.
pub fn first_disagreement<'a>(f: &Element, g: &Element, points: &'a [CantorPoint]) -> Result<Option<&'a CantorPoint>> {
    if f.arity() != g.arity() {
        return Err(Error::ArityMismatch(f.arity(), g.arity()));
    }
    for x in points {
        if apply(f, x)? != apply(g, x)? {
            return Ok(Some(x));
        }
    }
    Ok(None)
}
