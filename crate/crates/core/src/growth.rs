//! Partition-growth profiles of powers, the three-way step classification,
//! bounded root search and Baumslag–Solitar relation checks.
//!
//! Segment counts are geometric (maximal dyadic boundary pieces). The
//! construction-history count, one less than the block count, is reported
//! alongside.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::pattern::Pattern;
use crate::perm::Perm;
use crate::segments::{common_segments, segment_count};

/// Statistics of the `i`-th power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthRow {
    pub i: u64,
    /// Segments of the unreduced power's domain pattern.
    pub tp: usize,
    /// Segments of the unreduced power's range pattern.
    pub tp_range: usize,
    /// Segments of the reduced power's domain pattern.
    pub tp_reduced: usize,
    /// Segments shared by the unreduced domain and range.
    pub cp: usize,
    /// `tp - cp`.
    pub dp: usize,
    /// `tp - tp` at power 1.
    pub growth: i64,
    /// `tp - tp_reduced`.
    pub reduction: i64,
    /// Blocks of the unreduced power.
    pub blocks: usize,
    /// Blocks of the reduced power.
    pub blocks_reduced: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthProfile {
    pub rows: Vec<GrowthRow>,
}

pub const CSV_HEADER: &str = "i,Tp,Tp_red,Cp,Dp,I,R,m,m_red";

impl GrowthProfile {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Row for power `i` (1-based).
    pub fn row(&self, i: usize) -> Option<&GrowthRow> {
        i.checked_sub(1).and_then(|k| self.rows.get(k))
    }

    /// CSV with header [`CSV_HEADER`], LF line endings.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                r.i, r.tp, r.tp_reduced, r.cp, r.dp, r.growth, r.reduction, r.blocks, r.blocks_reduced
            );
        }
        out
    }
}

/// Profile of the powers `f^1..f^max_power`.
pub fn power_profile(f: &Element, max_power: u64) -> GrowthProfile {
    let mut rows = Vec::new();
    let mut acc = f.clone();
    let mut first_tp = 0i64;
    for i in 1..=max_power {
        if i > 1 {
            acc = acc.compose(f).expect("same arity");
        }
        let reduced = acc.reduce();
        let tp = segment_count(acc.domain());
        let tp_reduced = segment_count(reduced.domain());
        let cp = common_segments(acc.domain(), acc.range()).expect("same arity");
        if i == 1 {
            first_tp = tp as i64;
        }
        rows.push(GrowthRow {
            i,
            tp,
            tp_range: segment_count(acc.range()),
            tp_reduced,
            cp,
            dp: tp - cp,
            growth: tp as i64 - first_tp,
            reduction: tp as i64 - tp_reduced as i64,
            blocks: acc.len(),
            blocks_reduced: reduced.len(),
        });
    }
    GrowthProfile { rows }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepCase {
    /// Reduction removes fewer segments than the power added.
    Growth,
    /// Reduction removes exactly what the power added.
    Balanced,
    /// Reduction removes more than the power added.
    Shrink,
}

/// Compares the reduction count with the growth count at power `i >= 2`.
pub fn classify_step(profile: &GrowthProfile, i: usize) -> Result<StepCase> {
    if i < 2 || i > profile.len() {
        return Err(Error::IndexOutOfRange {
            index: i,
            max: profile.len(),
        });
    }
    let row = &profile.rows[i - 1];
    Ok(match row.reduction.cmp(&row.growth) {
        std::cmp::Ordering::Less => StepCase::Growth,
        std::cmp::Ordering::Equal => StepCase::Balanced,
        std::cmp::Ordering::Greater => StepCase::Shrink,
    })
}

/// Heuristic only: a strictly increasing tail says nothing provable about
/// the order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Monotonicity {
    /// Reduced segment counts increase strictly from this power on.
    EventuallyMonotone(u64),
    Inconclusive(u64),
}

/// Finds the least `j` such that reduced segment counts increase strictly
/// on `j..=max_power` with at least `window` increases.
pub fn monotone_growth_check(f: &Element, max_power: u64, window: u64) -> Result<Monotonicity> {
    if window < 2 || max_power < window {
        return Err(Error::InvalidArgument(format!(
            "need powers >= window >= 2, got powers {max_power}, window {window}"
        )));
    }
    let profile = power_profile(f, max_power);
    let counts: Vec<usize> = profile.rows.iter().map(|r| r.tp_reduced).collect();
    let mut j = counts.len();
    while j > 1 && counts[j - 2] < counts[j - 1] {
        j -= 1;
    }
    let increases = (counts.len() - j) as u64;
    Ok(if increases >= window {
        Monotonicity::EventuallyMonotone(j as u64)
    } else {
        Monotonicity::Inconclusive(max_power)
    })
}

/// `h^t == g`, exactly.
pub fn is_root(h: &Element, g: &Element, t: u64) -> Result<bool> {
    if h.arity() != g.arity() {
        return Err(Error::ArityMismatch(h.arity(), g.arity()));
    }
    h.power(t, true).equals(g)
}

/// All hierarchical patterns of the given arity with at most `max_blocks`
/// blocks, grouped by block count (index `m - 1`), each sorted.
pub fn enumerate_patterns(arity: usize, max_blocks: usize) -> Vec<Vec<Pattern>> {
    let mut levels: Vec<Vec<Pattern>> = Vec::new();
    if max_blocks == 0 {
        return levels;
    }
    levels.push(vec![Pattern::trivial(arity)]);
    while levels.len() < max_blocks {
        let mut next = BTreeSet::new();
        for p in levels.last().expect("nonempty") {
            for label in 0..p.len() {
                for axis in 0..arity {
                    let s = p.split_block(label, axis).expect("in range").sorted();
                    next.insert(s.into_blocks());
                }
            }
        }
        levels.push(
            next.into_iter()
                .map(|blocks| Pattern::new(arity, blocks).expect("splits keep patterns valid"))
                .collect(),
        );
    }
    levels
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(m - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, m - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Default cap on the number of candidates `root_search` will examine.
pub const DEFAULT_CANDIDATE_CAP: u128 = 200_000;

/// Number of untwisted elements with at most `max_blocks` blocks.
pub fn candidate_count(arity: usize, max_blocks: usize) -> u128 {
    enumerate_patterns(arity, max_blocks)
        .iter()
        .enumerate()
        .map(|(k, level)| {
            let m = k + 1;
            let fact = (1..=m as u128).product::<u128>();
            (level.len() as u128).pow(2) * fact
        })
        .sum()
}

/// Every untwisted `h` with at most `max_blocks` blocks and every
/// `2 <= t <= max_t` with `h^t == g`.
pub fn root_search(g: &Element, max_blocks: usize, max_t: u64, cap: u128) -> Result<Vec<(Element, u64)>> {
    let arity = g.arity();
    let estimate = candidate_count(arity, max_blocks);
    if estimate > cap {
        return Err(Error::EnumerationTooLarge(estimate));
    }
    let mut hits = Vec::new();
    for level in enumerate_patterns(arity, max_blocks) {
        let m = level[0].len();
        let perms = permutations(m);
        for domain in &level {
            for range in &level {
                for sigma in &perms {
                    let h = Element::new(domain.clone(), range.clone(), sigma.clone(), vec![Perm::identity(arity); m])?;
                    let mut acc = h.clone();
                    for t in 2..=max_t {
                        acc = acc.compose(&h)?.reduce();
                        if acc.equals(g)? {
                            hits.push((h.clone(), t));
                        }
                    }
                }
            }
        }
    }
    Ok(hits)
}

/// Whether `a b^m a^-1 = b^n`, reading the left side as a map: apply
/// `a^-1`, then `b^m`, then `a`.
pub fn bs_relation_check(a: &Element, b: &Element, m: u64, n: u64) -> Result<bool> {
    if a.arity() != b.arity() {
        return Err(Error::ArityMismatch(a.arity(), b.arity()));
    }
    let lhs = a.invert().compose(&b.power(m, true))?.compose(a)?.reduce();
    lhs.equals(&b.power(n, true))
}
