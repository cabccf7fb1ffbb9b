//! Patterns: hierarchical partitions of the Cantor cube into labeled
//! dyadic boxes.
//!
//! Blocks are stored by label: `blocks[i]` is the address of block `i`.
//! Set-level comparisons (`same_blocks`, `sorted`) ignore labels.

use std::collections::HashMap;

use num_bigint::BigUint;

use crate::error::{Error, Result, ValidationError};
use crate::word::Address;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Pattern {
    arity: usize,
    blocks: Vec<Address>,
}

impl Pattern {
    /// Validates and builds a pattern. Labels are positions in `blocks`.
    pub fn new(arity: usize, blocks: Vec<Address>) -> Result<Self> {
        validate_blocks(arity, &blocks)?;
        Ok(Pattern { arity, blocks })
    }

    /// Skips validation. Callers guarantee the pattern invariants.
    pub(crate) fn from_blocks_unchecked(arity: usize, blocks: Vec<Address>) -> Self {
        Pattern { arity, blocks }
    }

    /// The one-block pattern `{(e,...,e)}`.
    pub fn trivial(arity: usize) -> Self {
        Pattern {
            arity,
            blocks: vec![Address::root(arity)],
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn blocks(&self) -> &[Address] {
        &self.blocks
    }

    pub fn block(&self, label: usize) -> &Address {
        &self.blocks[label]
    }

    pub fn into_blocks(self) -> Vec<Address> {
        self.blocks
    }

    /// Same pattern with blocks relabeled in lexicographic address order.
    pub fn sorted(&self) -> Pattern {
        let mut blocks = self.blocks.clone();
        blocks.sort();
        Pattern {
            arity: self.arity,
            blocks,
        }
    }

    /// Equality as unordered block sets.
    pub fn same_blocks(&self, other: &Pattern) -> bool {
        if self.arity != other.arity || self.len() != other.len() {
            return false;
        }
        let mut a: Vec<&Address> = self.blocks.iter().collect();
        let mut b: Vec<&Address> = other.blocks.iter().collect();
        a.sort();
        b.sort();
        a == b
    }

    /// Label of the block whose address is exactly `address`.
    pub fn label_of(&self, address: &Address) -> Option<usize> {
        self.blocks.iter().position(|b| b == address)
    }

    /// Label of the block containing the box `address`, if any block does.
    pub fn locate(&self, address: &Address) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(address))
    }

    /// Map from address to label, for repeated exact lookups.
    pub fn index(&self) -> HashMap<&Address, usize> {
        self.blocks.iter().enumerate().map(|(i, b)| (b, i)).collect()
    }

    /// Replaces block `label` by its two children along `axis` (0-based).
    /// Child 0 keeps `label`; child 1 gets the fresh label `len()`.
    pub fn split_block(&self, label: usize, axis: usize) -> Result<Pattern> {
        if label >= self.len() {
            return Err(Error::BadLabel {
                label,
                blocks: self.len(),
            });
        }
        if axis >= self.arity {
            return Err(Error::BadAxis {
                axis,
                arity: self.arity,
            });
        }
        let mut blocks = self.blocks.clone();
        let parent = blocks[label].clone();
        blocks[label] = parent.child(axis, 0);
        blocks.push(parent.child(axis, 1));
        Ok(Pattern {
            arity: self.arity,
            blocks,
        })
    }

    /// The coarsest common expansion: all nonempty pairwise intersections,
    /// in lexicographic order.
    pub fn common_refinement(&self, other: &Pattern) -> Result<Pattern> {
        let mut blocks: Vec<Address> = self.refine_labeled(other)?.into_iter().map(|(_, _, b)| b).collect();
        blocks.sort();
        Ok(Pattern::from_blocks_unchecked(self.arity, blocks))
    }

    /// Every nonempty intersection `self[i] ∩ other[j]` as `(i, j, box)`.
    ///
    /// Descends along the recursive split structure of `self`, so the cost
    /// is proportional to the output times the depth rather than to the
    /// product of the two block counts.
    pub fn refine_labeled(&self, other: &Pattern) -> Result<Vec<(usize, usize, Address)>> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch(self.arity, other.arity));
        }
        let p: Vec<(usize, &Address)> = self.blocks.iter().enumerate().collect();
        let q: Vec<(usize, &Address)> = other.blocks.iter().enumerate().collect();
        let mut out = Vec::with_capacity(self.len().max(other.len()));
        refine_rec(&p, &q, &Address::root(self.arity), &mut out);
        Ok(out)
    }

    /// True when every block of `self` lies inside some block of `coarser`.
    pub fn refines(&self, coarser: &Pattern) -> bool {
        self.blocks.iter().all(|b| coarser.locate(b).is_some())
    }
}

/// Checks disjointness, coverage and the existence of a recursive split
/// decomposition, in that order.
pub fn validate_blocks(arity: usize, blocks: &[Address]) -> std::result::Result<(), ValidationError> {
    if blocks.is_empty() || arity == 0 {
        return Err(ValidationError::Empty);
    }
    for (index, b) in blocks.iter().enumerate() {
        if b.arity() != arity {
            return Err(ValidationError::ArityMismatch {
                index,
                expected: arity,
                found: b.arity(),
            });
        }
    }
    for i in 0..blocks.len() {
        for j in i + 1..blocks.len() {
            if !blocks[i].is_disjoint(&blocks[j]) {
                return Err(ValidationError::Overlap(i, j));
            }
        }
    }
    let (num, den) = measure(blocks.iter());
    if num != den {
        return Err(ValidationError::CoverageDeficit(fraction(num, den)));
    }
    let refs: Vec<&Address> = blocks.iter().collect();
    if !is_hierarchical(&refs, &Address::root(arity)) {
        return Err(ValidationError::NonHierarchical);
    }
    Ok(())
}

/// Total measure `Σ 2^-depth` as an unreduced fraction `num / 2^max_depth`.
pub(crate) fn measure<'a>(blocks: impl Iterator<Item = &'a Address> + Clone) -> (BigUint, BigUint) {
    let max_depth = blocks.clone().map(Address::depth).max().unwrap_or(0);
    let one = BigUint::from(1u32);
    let num = blocks.fold(BigUint::from(0u32), |acc, b| acc + (&one << (max_depth - b.depth())));
    (num, one << max_depth)
}

fn fraction(num: BigUint, den: BigUint) -> String {
    let zero = BigUint::from(0u32);
    if num == zero {
        return "0".to_string();
    }
    let mut n = num;
    let mut d = den;
    let two = BigUint::from(2u32);
    while &n % &two == zero && &d % &two == zero {
        n /= &two;
        d /= &two;
    }
    if d == BigUint::from(1u32) {
        n.to_string()
    } else {
        format!("{n}/{d}")
    }
}

/// `p` is a hierarchical partition of `cone`; `q` holds the blocks of a
/// second partition that meet `cone`.
fn refine_rec(p: &[(usize, &Address)], q: &[(usize, &Address)], cone: &Address, out: &mut Vec<(usize, usize, Address)>) {
    if p.len() == 1 {
        let (i, pb) = p[0];
        for &(j, qb) in q {
            out.push((i, j, pb.intersect(qb).expect("block meets cone")));
        }
        return;
    }
    if q.len() == 1 {
        let (j, qb) = q[0];
        for &(i, pb) in p {
            out.push((i, j, pb.intersect(qb).expect("block meets cone")));
        }
        return;
    }
    let axis = (0..cone.arity())
        .find(|&a| {
            let d = cone.word(a).len();
            p.iter().all(|(_, b)| b.word(a).len() > d)
        })
        .expect("hierarchical pattern has a cut");
    let depth = cone.word(axis).len();
    for bit in [0u8, 1] {
        let ps: Vec<(usize, &Address)> = p.iter().copied().filter(|(_, b)| b.word(axis).bit(depth) == bit).collect();
        let qs: Vec<(usize, &Address)> = q
            .iter()
            .copied()
            .filter(|(_, b)| b.word(axis).len() <= depth || b.word(axis).bit(depth) == bit)
            .collect();
        refine_rec(&ps, &qs, &cone.child(axis, bit), out);
    }
}

/// `blocks` is a disjoint cover of `cone`. A cut along an axis is possible
/// when every block is strictly deeper than the cone on that axis.
fn is_hierarchical(blocks: &[&Address], cone: &Address) -> bool {
    if blocks.len() == 1 {
        return blocks[0] == cone;
    }
    for axis in 0..cone.arity() {
        let depth = cone.word(axis).len();
        if blocks.iter().all(|b| b.word(axis).len() > depth) {
            let (zero, one): (Vec<&Address>, Vec<&Address>) =
                blocks.iter().partition(|b| b.word(axis).bit(depth) == 0);
            if zero.is_empty() || one.is_empty() {
                return false;
            }
            // Any admissible cut works: cuts at the top level commute.
            return is_hierarchical(&zero, &cone.child(axis, 0))
                && is_hierarchical(&one, &cone.child(axis, 1));
        }
    }
    false
}
