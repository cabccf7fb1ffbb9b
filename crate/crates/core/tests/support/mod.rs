//! Test-only oracles. Nothing here calls into the refinement, composition or
//! reduction code of the crate: arity-1 elements are handled as plain
//! string maps on leaf words.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use nv_core::{addr, Element, Pattern, Perm};

/// An arity-1 element as a map from domain leaf words to range leaf words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaiveV {
    pub leaves: BTreeMap<String, String>,
}

impl NaiveV {
    pub fn new(pairs: &[(&str, &str)]) -> Self {
        NaiveV {
            leaves: pairs.iter().map(|(d, r)| (d.to_string(), r.to_string())).collect(),
        }
    }

    pub fn identity() -> Self {
        NaiveV::new(&[("", "")])
    }

    pub fn from_element(e: &Element) -> Self {
        assert_eq!(e.arity(), 1);
        let mut leaves = BTreeMap::new();
        for p in e.pieces() {
            leaves.insert(bits(&p.domain.word(0).to_string()), bits(&p.range.word(0).to_string()));
        }
        NaiveV { leaves }
    }

    pub fn apply(&self, x: &str) -> String {
        for (d, r) in &self.leaves {
            if let Some(rest) = x.strip_prefix(d.as_str()) {
                return format!("{r}{rest}");
            }
        }
        panic!("{x} not covered");
    }

    fn max_domain_len(&self) -> usize {
        self.leaves.keys().map(String::len).max().unwrap_or(0)
    }

    /// `self` then `other`, computed on every word of a length long enough
    /// that both maps are determined, then merged back.
    pub fn then(&self, other: &NaiveV) -> NaiveV {
        let len = self.max_domain_len() + other.max_domain_len();
        let mut leaves = BTreeMap::new();
        for x in all_words(len) {
            let y = self.apply(&x);
            leaves.insert(x, other.apply(&y));
        }
        NaiveV { leaves }.reduced()
    }

    pub fn inverse(&self) -> NaiveV {
        NaiveV {
            leaves: self.leaves.iter().map(|(d, r)| (r.clone(), d.clone())).collect(),
        }
    }

    /// Merges `w0 -> u0, w1 -> u1` into `w -> u` until nothing merges.
    pub fn reduced(mut self) -> NaiveV {
        loop {
            let mut found = None;
            for (d, r) in &self.leaves {
                if let (Some(w), Some(u)) = (d.strip_suffix('0'), r.strip_suffix('0')) {
                    if self.leaves.get(&format!("{w}1")) == Some(&format!("{u}1")) {
                        found = Some((w.to_string(), u.to_string()));
                        break;
                    }
                }
            }
            let Some((w, u)) = found else { break };
            self.leaves.remove(&format!("{w}0"));
            self.leaves.remove(&format!("{w}1"));
            self.leaves.insert(w, u);
        }
        self
    }

    pub fn power(&self, k: u64) -> NaiveV {
        let mut acc = NaiveV::identity();
        for _ in 0..k {
            acc = acc.then(self);
        }
        acc
    }

    pub fn to_element(&self) -> Element {
        let dom: Vec<&String> = self.leaves.keys().collect();
        let ran: Vec<&String> = self.leaves.values().collect();
        let lift = |ws: &[&String]| Pattern::new(1, ws.iter().map(|w| addr(&[word(w)])).collect()).unwrap();
        Element::untwisted(lift(&dom), lift(&ran), (0..dom.len()).collect()).unwrap()
    }
}

fn bits(w: &str) -> String {
    if w == "e" {
        String::new()
    } else {
        w.to_string()
    }
}

fn word(w: &str) -> &str {
    if w.is_empty() {
        "e"
    } else {
        w
    }
}

pub fn all_words(len: usize) -> Vec<String> {
    (0..1u64 << len)
        .map(|i| (0..len).rev().map(|k| if i >> k & 1 == 1 { '1' } else { '0' }).collect())
        .collect()
}

/// All arity-1 leaf sets with at most `max_leaves` leaves (binary trees).
pub fn naive_trees(max_leaves: usize) -> Vec<Vec<String>> {
    let mut seen: BTreeSet<Vec<String>> = BTreeSet::new();
    let mut frontier = vec![vec![String::new()]];
    while let Some(t) = frontier.pop() {
        if !seen.insert(t.clone()) || t.len() == max_leaves {
            continue;
        }
        for i in 0..t.len() {
            let mut next = t.clone();
            let leaf = next.remove(i);
            next.push(format!("{leaf}0"));
            next.push(format!("{leaf}1"));
            next.sort();
            frontier.push(next);
        }
    }
    seen.into_iter().collect()
}

pub fn permutations(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(m - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, m - 1);
            out.push(q);
        }
    }
    out
}

/// Brute-force box intersection on word strings.
pub fn naive_intersections(p: &Pattern, q: &Pattern) -> BTreeSet<Vec<String>> {
    let mut out = BTreeSet::new();
    for a in p.blocks() {
        'pair: for b in q.blocks() {
            let mut words = Vec::new();
            for k in 0..p.arity() {
                let x = bits(&a.word(k).to_string());
                let y = bits(&b.word(k).to_string());
                if x.starts_with(&y) {
                    words.push(x);
                } else if y.starts_with(&x) {
                    words.push(y);
                } else {
                    continue 'pair;
                }
            }
            out.insert(words);
        }
    }
    out
}

pub fn block_strings(p: &Pattern) -> BTreeSet<Vec<String>> {
    p.blocks()
        .iter()
        .map(|b| b.words().iter().map(|w| bits(&w.to_string())).collect())
        .collect()
}

/// The infinite-order element `0 -> 00, 10 -> 01, 11 -> 1` of V.
pub fn x0() -> Element {
    NaiveV::new(&[("0", "00"), ("10", "01"), ("11", "1")]).to_element()
}

pub fn x0_naive() -> NaiveV {
    NaiveV::new(&[("0", "00"), ("10", "01"), ("11", "1")])
}

/// The x0 element placed on the first axis of the square.
pub fn x0_in_2v() -> Element {
    x0().embed(0, 2).unwrap()
}

pub fn pattern(blocks: &[&[&str]]) -> Pattern {
    Pattern::new(blocks[0].len(), blocks.iter().map(|b| addr(b)).collect()).unwrap()
}

pub fn line(words: &[&str]) -> Pattern {
    Pattern::new(1, words.iter().map(|w| addr(&[w])).collect()).unwrap()
}

/// Untwisted rigid permutation of the blocks of `p`.
pub fn rigid(p: &Pattern, sigma: Vec<usize>) -> Element {
    Element::untwisted(p.clone(), p.clone(), sigma).unwrap()
}

pub fn transposition(p: &Pattern, a: usize, b: usize) -> Element {
    let mut sigma: Vec<usize> = (0..p.len()).collect();
    sigma.swap(a, b);
    rigid(p, sigma)
}

/// The coordinate swap of the square on the trivial pattern.
pub fn coordinate_swap() -> Element {
    Element::new(Pattern::trivial(2), Pattern::trivial(2), vec![0], vec![Perm::swap(2, 0, 1)]).unwrap()
}

pub fn factorial(n: u64) -> u64 {
    (1..=n).product()
}
