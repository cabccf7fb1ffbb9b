//! Partition segments: the interior boundary of a pattern, cut into maximal
//! collinear dyadic pieces.
//!
//! Segments are derived from the block set alone, so two constructions of
//! the same pattern always produce the same segment set.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::pattern::{measure, Pattern};
use crate::word::{Address, Word};

/// A maximal dyadic piece of interior boundary.
///
/// It lies in the hyperplane orthogonal to `axis` through the midpoint of
/// the interval named by `cut`, and spans the dyadic box `extent` on the
/// remaining axes (in increasing axis order; empty for arity 1).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Segment {
    pub axis: usize,
    pub cut: Word,
    pub extent: Vec<Word>,
}

/// The cut whose hyperplane holds the low end of `word`'s interval, or
/// `None` when that end is the cube boundary.
fn low_end_cut(word: &Word) -> Option<Word> {
    let mut w = word.clone();
    while w.last() == Some(0) {
        w.pop();
    }
    // ends in 1 (or is empty, meaning coordinate 0)
    w.pop().map(|_| w)
}

pub fn segments(p: &Pattern) -> BTreeSet<Segment> {
    let n = p.arity();
    // Low faces of blocks on each cut hyperplane. Blocks on one side of a
    // hyperplane tile exactly the interior boundary lying in it.
    let mut faces: BTreeMap<(usize, Word), Vec<Vec<Word>>> = BTreeMap::new();
    for block in p.blocks() {
        for axis in 0..n {
            if let Some(cut) = low_end_cut(block.word(axis)) {
                let extent: Vec<Word> = (0..n).filter(|&k| k != axis).map(|k| block.word(k).clone()).collect();
                faces.entry((axis, cut)).or_default().push(extent);
            }
        }
    }
    let mut out = BTreeSet::new();
    for ((axis, cut), extents) in faces {
        if n == 1 {
            out.insert(Segment {
                axis,
                cut,
                extent: Vec::new(),
            });
            continue;
        }
        for extent in maximal_boxes(&extents) {
            out.insert(Segment {
                axis,
                cut: cut.clone(),
                extent,
            });
        }
    }
    out
}

/// All maximal dyadic boxes inside the union of the disjoint boxes `faces`.
///
/// A maximal box uses, on every axis, a prefix of some face word on that
/// axis, so the candidates are products of those prefix sets.
fn maximal_boxes(faces: &[Vec<Word>]) -> Vec<Vec<Word>> {
    let dims = faces[0].len();
    let face_boxes: Vec<Address> = faces.iter().map(|f| Address::new(f.clone())).collect();
    let prefixes: Vec<Vec<Word>> = (0..dims)
        .map(|k| {
            let mut set = BTreeSet::new();
            for f in faces {
                let mut w = f[k].clone();
                set.insert(w.clone());
                while w.pop().is_some() {
                    set.insert(w.clone());
                }
            }
            set.into_iter().collect()
        })
        .collect();

    let mut memo: HashMap<Address, bool> = HashMap::new();
    let mut covered = |b: &Address| -> bool {
        if let Some(&c) = memo.get(b) {
            return c;
        }
        let parts: Vec<Address> = face_boxes.iter().filter_map(|f| f.intersect(b)).collect();
        let c = if parts.is_empty() {
            false
        } else {
            let (num, den) = measure(parts.iter());
            // covered iff Σ 2^-depth(part) == 2^-depth(b)
            num << b.depth() == den
        };
        memo.insert(b.clone(), c);
        c
    };

    let mut out = Vec::new();
    let mut idx = vec![0usize; dims];
    'product: loop {
        let candidate = Address::new((0..dims).map(|k| prefixes[k][idx[k]].clone()).collect());
        if covered(&candidate) {
            let maximal = (0..dims).all(|k| {
                let Some(parent) = candidate.word(k).parent() else { return true };
                let mut words = candidate.words().to_vec();
                words[k] = parent;
                !covered(&Address::new(words))
            });
            if maximal {
                out.push(candidate.words().to_vec());
            }
        }
        for k in 0..dims {
            idx[k] += 1;
            if idx[k] < prefixes[k].len() {
                continue 'product;
            }
            idx[k] = 0;
        }
        break;
    }
    out.sort();
    out
}

/// Number of maximal segments: the geometric segment count of a pattern.
pub fn segment_count(p: &Pattern) -> usize {
    segments(p).len()
}

/// Number of segments shared exactly (same axis, cut and extent).
pub fn common_segments(p: &Pattern, q: &Pattern) -> Result<usize> {
    if p.arity() != q.arity() {
        return Err(Error::ArityMismatch(p.arity(), q.arity()));
    }
    let a = segments(p);
    let b = segments(q);
    Ok(a.intersection(&b).count())
}
