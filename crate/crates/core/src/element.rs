//! Elements of nV and of the twisted groups SV_G for a finite coordinate set.
//!
//! An element is a pair of patterns with the same number of blocks, a label
//! bijection `sigma` from domain labels to range labels, and one coordinate
//! twist per domain block. Domain block `i` with address `φ` is sent onto
//! range block `sigma[i]` with address `ψ`: a point `φ·κ` goes to `ψ·κ'`,
//! where the residual stream on input axis `a` lands on output axis
//! `twist[i](a)`.
//!
//! Products compose left to right: `f.compose(&g)` applies `f` first.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::pattern::Pattern;
use crate::perm::Perm;
use crate::word::{Address, Word};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Element {
    domain: Pattern,
    range: Pattern,
    sigma: Vec<usize>,
    twists: Vec<Perm>,
}

/// One block of an element: domain box, range box and twist.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Piece {
    pub domain: Address,
    pub range: Address,
    pub twist: Perm,
}

impl Element {
    pub fn new(domain: Pattern, range: Pattern, sigma: Vec<usize>, twists: Vec<Perm>) -> Result<Self> {
        if domain.arity() != range.arity() {
            return Err(Error::ArityMismatch(domain.arity(), range.arity()));
        }
        if domain.len() != range.len() {
            return Err(Error::SizeMismatch {
                domain: domain.len(),
                range: range.len(),
            });
        }
        let m = domain.len();
        if sigma.len() != m || twists.len() != m {
            return Err(Error::SizeMismatch {
                domain: m,
                range: sigma.len().min(twists.len()),
            });
        }
        let mut hit = vec![false; m];
        for &j in &sigma {
            if j >= m || hit[j] {
                return Err(Error::NotBijective);
            }
            hit[j] = true;
        }
        for t in &twists {
            if t.len() != domain.arity() {
                return Err(Error::BadPermutation(format!(
                    "twist {t} acts on {} axes, expected {}",
                    t.len(),
                    domain.arity()
                )));
            }
        }
        Ok(Element {
            domain,
            range,
            sigma,
            twists,
        })
    }

    /// Untwisted element from a domain, range and label map.
    pub fn untwisted(domain: Pattern, range: Pattern, sigma: Vec<usize>) -> Result<Self> {
        let twists = vec![Perm::identity(domain.arity()); domain.len()];
        Element::new(domain, range, sigma, twists)
    }

    pub fn identity(arity: usize) -> Self {
        Element {
            domain: Pattern::trivial(arity),
            range: Pattern::trivial(arity),
            sigma: vec![0],
            twists: vec![Perm::identity(arity)],
        }
    }

    /// Builds an element whose label `i` is `pieces[i]` on both sides.
    /// Validates both patterns.
    pub fn from_pieces(arity: usize, pieces: Vec<Piece>) -> Result<Self> {
        let domain = Pattern::new(arity, pieces.iter().map(|p| p.domain.clone()).collect())?;
        let range = Pattern::new(arity, pieces.iter().map(|p| p.range.clone()).collect())?;
        let sigma = (0..pieces.len()).collect();
        let twists = pieces.into_iter().map(|p| p.twist).collect();
        Element::new(domain, range, sigma, twists)
    }

    fn from_pieces_unchecked(arity: usize, pieces: Vec<Piece>) -> Self {
        let m = pieces.len();
        let mut d = Vec::with_capacity(m);
        let mut r = Vec::with_capacity(m);
        let mut t = Vec::with_capacity(m);
        for p in pieces {
            d.push(p.domain);
            r.push(p.range);
            t.push(p.twist);
        }
        Element {
            domain: Pattern::from_blocks_unchecked(arity, d),
            range: Pattern::from_blocks_unchecked(arity, r),
            sigma: (0..m).collect(),
            twists: t,
        }
    }

    pub fn arity(&self) -> usize {
        self.domain.arity()
    }

    /// Number of blocks on each side.
    pub fn len(&self) -> usize {
        self.domain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.domain.is_empty()
    }

    pub fn domain(&self) -> &Pattern {
        &self.domain
    }

    pub fn range(&self) -> &Pattern {
        &self.range
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn twists(&self) -> &[Perm] {
        &self.twists
    }

    pub fn is_twisted(&self) -> bool {
        self.twists.iter().any(|t| !t.is_identity())
    }

    pub fn piece(&self, i: usize) -> Piece {
        Piece {
            domain: self.domain.block(i).clone(),
            range: self.range.block(self.sigma[i]).clone(),
            twist: self.twists[i].clone(),
        }
    }

    /// Pieces indexed by domain label.
    pub fn pieces(&self) -> Vec<Piece> {
        (0..self.len()).map(|i| self.piece(i)).collect()
    }

    /// Pieces sorted by domain address.
    pub fn sorted_pieces(&self) -> Vec<Piece> {
        let mut p = self.pieces();
        p.sort();
        p
    }

    /// Syntactically the identity: one block and no twist.
    pub fn is_trivial(&self) -> bool {
        self.len() == 1 && self.twists[0].is_identity()
    }

    /// Domain and range coincide as block sets.
    pub fn is_identical_pair(&self) -> bool {
        self.domain.same_blocks(&self.range)
    }

    /// Relabels both patterns in lexicographic address order.
    pub fn canonical(&self) -> Element {
        let domain = self.domain.sorted();
        let range = self.range.sorted();
        let range_index = range.index();
        let domain_index = self.domain.index();
        let mut sigma = Vec::with_capacity(self.len());
        let mut twists = Vec::with_capacity(self.len());
        for block in domain.blocks() {
            let i = domain_index[block];
            let target = self.range.block(self.sigma[i]);
            sigma.push(range_index[target]);
            twists.push(self.twists[i].clone());
        }
        Element {
            domain,
            range,
            sigma,
            twists,
        }
    }

    /// Image of a box lying inside one domain block, with the twist in force
    /// there. `None` if `cone` does not lie inside a single domain block.
    pub fn image_of_cone(&self, cone: &Address) -> Option<(Address, &Perm)> {
        let i = self.domain.locate(cone)?;
        Some((self.image_in_block(i, cone), &self.twists[i]))
    }

    /// Image of a box known to lie inside domain block `i`.
    pub fn image_in_block(&self, i: usize, cone: &Address) -> Address {
        let from = self.domain.block(i);
        let to = self.range.block(self.sigma[i]);
        let twist = &self.twists[i];
        let mut out = to.words().to_vec();
        for (a, w) in cone.words().iter().enumerate() {
            let suffix = &w.bits()[from.word(a).len()..];
            let target = twist.apply(a);
            out[target] = out[target].concat(&Word::from_bits(suffix.iter().copied()));
        }
        Address::new(out)
    }

    /// Preimage of a box known to lie inside range block `j`, together with
    /// the domain label it comes from.
    fn preimage_in_block(&self, inverse_sigma: &[usize], j: usize, cone: &Address) -> (usize, Address) {
        let i = inverse_sigma[j];
        let from = self.range.block(j);
        let to = self.domain.block(i);
        let twist = &self.twists[i];
        let mut out = to.words().to_vec();
        for (a, w) in out.iter_mut().enumerate() {
            let src = twist.apply(a);
            let suffix = &cone.word(src).bits()[from.word(src).len()..];
            *w = w.concat(&Word::from_bits(suffix.iter().copied()));
        }
        (i, Address::new(out))
    }

    fn inverse_sigma(&self) -> Vec<usize> {
        let mut inv = vec![0; self.sigma.len()];
        for (i, &j) in self.sigma.iter().enumerate() {
            inv[j] = i;
        }
        inv
    }

    pub fn invert(&self) -> Element {
        let m = self.len();
        let mut sigma = vec![0; m];
        let mut twists = vec![Perm::identity(self.arity()); m];
        for (i, &j) in self.sigma.iter().enumerate() {
            sigma[j] = i;
            twists[j] = self.twists[i].inverse();
        }
        Element {
            domain: self.range.clone(),
            range: self.domain.clone(),
            sigma,
            twists,
        }
    }

    /// Splits domain block `label` along `axis` and its image along the
    /// twisted axis. Child bit `b` maps to child bit `b`; the second child
    /// gets fresh label `len()` on both sides.
    pub fn expand(&self, label: usize, axis: usize) -> Result<Element> {
        if label >= self.len() {
            return Err(Error::BadLabel {
                label,
                blocks: self.len(),
            });
        }
        if axis >= self.arity() {
            return Err(Error::BadAxis {
                axis,
                arity: self.arity(),
            });
        }
        let twist = self.twists[label].clone();
        let domain = self.domain.split_block(label, axis)?;
        let range = self.range.split_block(self.sigma[label], twist.apply(axis))?;
        let mut sigma = self.sigma.clone();
        sigma.push(self.len());
        let mut twists = self.twists.clone();
        twists.push(twist);
        Ok(Element {
            domain,
            range,
            sigma,
            twists,
        })
    }

    /// `self` first, then `next`, over the minimal joint expansion of
    /// `self`'s range and `next`'s domain. The result is not reduced; its
    /// labels follow the sorted joint expansion.
    pub fn compose(&self, next: &Element) -> Result<Element> {
        if self.arity() != next.arity() {
            return Err(Error::ArityMismatch(self.arity(), next.arity()));
        }
        if next.is_trivial() {
            return Ok(self.clone());
        }
        if self.is_trivial() {
            return Ok(next.clone());
        }
        let inv = self.inverse_sigma();
        let mut joint = self.range.refine_labeled(&next.domain)?;
        joint.sort_unstable_by(|a, b| a.2.cmp(&b.2));
        let pieces: Vec<Piece> = joint
            .into_iter()
            .map(|(j, l, mid)| {
                let (i, domain) = self.preimage_in_block(&inv, j, &mid);
                let range = next.image_in_block(l, &mid);
                let twist = self.twists[i].then(&next.twists[l]);
                Piece { domain, range, twist }
            })
            .collect();
        Ok(Element::from_pieces_unchecked(self.arity(), pieces))
    }

    /// Repeatedly merges domain sibling pairs whose images are siblings
    /// along the twisted axis, with matching child bits and equal twists,
    /// until no merge applies. Candidates are visited in domain address
    /// order, and each merged parent is revisited.
    pub fn reduce(&self) -> Element {
        let arity = self.arity();
        let mut live: HashMap<Address, (Address, Perm)> = self.piece_map();
        let mut queue: VecDeque<Address> = {
            let mut keys: Vec<Address> = live.keys().cloned().collect();
            keys.sort();
            keys.into()
        };
        while let Some(dom) = queue.pop_front() {
            let Some((ran, twist)) = live.get(&dom) else { continue };
            let mut merged = None;
            for axis in 0..arity {
                let Some(bit) = dom.word(axis).last() else { continue };
                let sib = flip_last(&dom, axis);
                let Some((sib_ran, sib_twist)) = live.get(&sib) else { continue };
                if sib_twist != twist {
                    continue;
                }
                let out_axis = twist.apply(axis);
                if ran.word(out_axis).last() != Some(bit) || *sib_ran != flip_last(ran, out_axis) {
                    continue;
                }
                merged = Some((sib, truncate(&dom, axis), truncate(ran, out_axis), twist.clone()));
                break;
            }
            if let Some((sib, parent, parent_ran, twist)) = merged {
                live.remove(&dom);
                live.remove(&sib);
                live.insert(parent.clone(), (parent_ran, twist));
                queue.push_back(parent);
            }
        }
        let mut pieces: Vec<Piece> = live
            .into_iter()
            .map(|(domain, (range, twist))| Piece { domain, range, twist })
            .collect();
        pieces.sort();
        Element::from_pieces_unchecked(arity, pieces)
    }

    /// Exact equality of the underlying homeomorphisms.
    pub fn equals(&self, other: &Element) -> Result<bool> {
        if self.arity() != other.arity() {
            return Err(Error::ArityMismatch(self.arity(), other.arity()));
        }
        let joint = self.domain.refine_labeled(&other.domain)?;
        Ok(joint.iter().all(|(i, j, cone)| {
            self.twists[*i] == other.twists[*j] && self.image_in_block(*i, cone) == other.image_in_block(*j, cone)
        }))
    }

    pub fn is_identity(&self) -> bool {
        self.equals(&Element::identity(self.arity())).expect("same arity")
    }

    /// `self` composed with itself `k` times. Without `auto_reduce` this is
    /// the raw iterated product; with it, each step is reduced.
    pub fn power(&self, k: u64, auto_reduce: bool) -> Element {
        let mut acc = Element::identity(self.arity());
        for _ in 0..k {
            acc = acc.compose(self).expect("same arity");
            if auto_reduce {
                acc = acc.reduce();
            }
        }
        acc
    }

    /// Places an arity-1 element on `axis` of the `arity`-fold cube.
    pub fn embed(&self, axis: usize, arity: usize) -> Result<Element> {
        if self.arity() != 1 {
            return Err(Error::ArityMismatch(self.arity(), 1));
        }
        if axis >= arity {
            return Err(Error::BadAxis { axis, arity });
        }
        let lift = |p: &Pattern| {
            Pattern::from_blocks_unchecked(
                arity,
                p.blocks()
                    .iter()
                    .map(|b| Address::on_axis(arity, axis, b.word(0).clone()))
                    .collect(),
            )
        };
        Ok(Element {
            domain: lift(&self.domain),
            range: lift(&self.range),
            sigma: self.sigma.clone(),
            twists: vec![Perm::identity(arity); self.len()],
        })
    }

    /// For an identical pair: the permutation of the sorted pattern's labels
    /// and the twist on each (sorted) block.
    pub fn rigid_action(&self) -> Option<(Pattern, Perm, Vec<Perm>)> {
        if !self.is_identical_pair() {
            return None;
        }
        let pattern = self.domain.sorted();
        let index = pattern.index();
        let domain_index = self.domain.index();
        let mut image = Vec::with_capacity(pattern.len());
        let mut twists = Vec::with_capacity(pattern.len());
        for block in pattern.blocks() {
            let i = domain_index[block];
            image.push(index[self.range.block(self.sigma[i])]);
            twists.push(self.twists[i].clone());
        }
        let perm = Perm::new(image).expect("identical pair permutes blocks");
        Some((pattern, perm, twists))
    }

    /// The pattern formed by the images of the blocks of `source`, which
    /// must refine the domain.
    pub fn push_pattern(&self, source: &Pattern) -> Option<Pattern> {
        let parts = source.refine_labeled(&self.domain).ok()?;
        if parts.len() != source.len() {
            return None;
        }
        let mut blocks = vec![None; source.len()];
        for (s, d, cone) in parts {
            if &cone != source.block(s) {
                return None;
            }
            blocks[s] = Some(self.image_in_block(d, &cone));
        }
        let blocks = blocks.into_iter().collect::<Option<Vec<Address>>>()?;
        Some(Pattern::from_blocks_unchecked(self.arity(), blocks))
    }

    /// Range address lookup keyed by domain address.
    pub fn piece_map(&self) -> HashMap<Address, (Address, Perm)> {
        self.pieces()
            .into_iter()
            .map(|p| (p.domain, (p.range, p.twist)))
            .collect()
    }
}

fn flip_last(a: &Address, axis: usize) -> Address {
    let mut words: Vec<Word> = a.words().to_vec();
    let b = words[axis].pop().expect("nonempty word");
    words[axis].push(1 - b);
    Address::new(words)
}

fn truncate(a: &Address, axis: usize) -> Address {
    let mut words: Vec<Word> = a.words().to_vec();
    words[axis].pop();
    Address::new(words)
}
