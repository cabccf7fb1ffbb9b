//! Torsion certificates, exact orders, finite closures and common-pattern
//! witnesses for finite subgroups.
//!
//! Nothing here decides torsion in general: a missing certificate or an
//! `Unknown` order only means the search budget ran out.

use std::collections::HashMap;

use crate::dynamics::{apply, sample_points, CantorPoint};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::pattern::Pattern;
use crate::perm::{lcm, Perm};
use crate::segments::segments;

/// Evidence that an element has finite order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionCertificate {
    /// Least `k` at which the unreduced `k`-th power has identical patterns.
    pub power: u64,
    /// The common pattern of that power, sorted.
    pub pattern: Pattern,
    /// How the `k`-th power permutes the labels of `pattern`.
    pub rigid_perm: Perm,
    /// Twist on each block of `pattern` in the `k`-th power.
    pub rigid_twists: Vec<Perm>,
    /// `power * order(rigid part)`; the element raised to it is the identity.
    pub order_bound: u64,
    /// Whether domain and range also share their segment sets (diagnostic).
    pub segments_equal: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Finite(u64),
    /// No power up to the limit is the identity. Not a claim of infinite
    /// order.
    Unknown(u64),
}

/// Order of the rigid map that permutes blocks by `perm` and applies
/// `twists[x]` on block `x`: the lcm over orbits of the orbit length times
/// the order of the twist accumulated around the orbit.
pub fn rigid_order(perm: &Perm, twists: &[Perm]) -> u64 {
    let m = perm.len();
    let mut seen = vec![false; m];
    let mut order = 1;
    for start in 0..m {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut acc = Perm::identity(twists[start].len());
        let mut x = start;
        loop {
            seen[x] = true;
            acc = acc.then(&twists[x]);
            len += 1;
            x = perm.apply(x);
            if x == start {
                break;
            }
        }
        order = lcm(order, len * acc.order());
    }
    order
}

/// The element that rigidly permutes the blocks of `p`: block `i` goes onto
/// block `sigma[i]` with twist `twists[i]`.
pub fn make_identical_pair_element(p: &Pattern, sigma: Vec<usize>, twists: Vec<Perm>) -> Result<Element> {
    Element::new(p.clone(), p.clone(), sigma, twists)
}

fn certificate_from(f: &Element, k: u64, power: &Element) -> Option<TorsionCertificate> {
    let (pattern, rigid_perm, rigid_twists) = power.rigid_action()?;
    let order_bound = k * rigid_order(&rigid_perm, &rigid_twists);
    debug_assert!(power
        .reduce()
        .power(order_bound / k, true)
        .equals(&Element::identity(f.arity()))
        .unwrap_or(false));
    Some(TorsionCertificate {
        power: k,
        segments_equal: segments(power.domain()) == segments(power.range()),
        pattern,
        rigid_perm,
        rigid_twists,
        order_bound,
    })
}

/// Searches the unreduced powers `f^1..f^max_power` for one whose domain and
/// range patterns coincide.
pub fn torsion_certificate(f: &Element, max_power: u64) -> Option<TorsionCertificate> {
    let mut acc = f.clone();
    for k in 1..=max_power {
        if k > 1 {
            acc = acc.compose(f).expect("same arity");
        }
        if acc.is_identical_pair() {
            return certificate_from(f, k, &acc);
        }
    }
    None
}

/// Checks a certificate independently: the power has the claimed pattern on
/// both sides and `f^order_bound` is the identity.
pub fn verify_certificate(f: &Element, cert: &TorsionCertificate) -> bool {
    let p = f.power(cert.power, false);
    p.domain().same_blocks(&cert.pattern)
        && p.range().same_blocks(&cert.pattern)
        && f.power(cert.order_bound, true).is_identity()
}

/// Least `d <= max` with `f^d` the identity.
pub fn order_up_to(f: &Element, max: u64) -> Order {
    if let Some(cert) = torsion_certificate(f, max) {
        if cert.order_bound <= max {
            let bound = cert.order_bound;
            for d in (1..=bound).filter(|d| bound % d == 0) {
                if f.power(d, true).is_identity() {
                    return Order::Finite(d);
                }
            }
            unreachable!("f^order_bound is the identity");
        }
    }
    let mut acc = Element::identity(f.arity());
    for d in 1..=max {
        acc = acc.compose(f).expect("same arity").reduce();
        if acc.is_identity() {
            return Order::Finite(d);
        }
    }
    Order::Unknown(max)
}

/// A finite group of elements with its multiplication table:
/// `table[i][j]` is the index of `elements[i]` followed by `elements[j]`.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    pub elements: Vec<Element>,
    pub table: Vec<Vec<usize>>,
}

impl FiniteGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Index of the identity (always 0 for groups built by [`closure`]).
    pub fn identity_index(&self) -> Option<usize> {
        self.elements.iter().position(Element::is_identity)
    }

    /// Latin square, two-sided identity, inverses and associativity.
    pub fn satisfies_group_axioms(&self) -> bool {
        let n = self.order();
        let Some(e) = self.identity_index() else { return false };
        for i in 0..n {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for j in 0..n {
                row[self.table[i][j]] = true;
                col[self.table[j][i]] = true;
            }
            if row.contains(&false) || col.contains(&false) {
                return false;
            }
            if self.table[e][i] != i || self.table[i][e] != i {
                return false;
            }
            if !(0..n).any(|j| self.table[i][j] == e && self.table[j][i] == e) {
                return false;
            }
        }
        (0..n).all(|a| {
            (0..n).all(|b| (0..n).all(|c| self.table[self.table[a][b]][c] == self.table[a][self.table[b][c]]))
        })
    }
}

/// Semantic deduplication: a fingerprint of images at fixed points narrows
/// the candidates, `equals` decides.
struct ElementIndex {
    probes: Vec<CantorPoint>,
    buckets: HashMap<Vec<CantorPoint>, Vec<usize>>,
}

impl ElementIndex {
    fn new(arity: usize) -> Self {
        ElementIndex {
            probes: sample_points(0x5eed, 12, arity),
            buckets: HashMap::new(),
        }
    }

    fn fingerprint(&self, e: &Element) -> Vec<CantorPoint> {
        self.probes
            .iter()
            .map(|x| apply(e, x).expect("same arity"))
            .collect()
    }

    fn find(&self, e: &Element, elements: &[Element]) -> (Vec<CantorPoint>, Option<usize>) {
        let key = self.fingerprint(e);
        let hit = self.buckets.get(&key).and_then(|ids| {
            ids.iter()
                .copied()
                .find(|&i| elements[i].equals(e).expect("same arity"))
        });
        (key, hit)
    }

    fn insert(&mut self, key: Vec<CantorPoint>, id: usize) {
        self.buckets.entry(key).or_default().push(id);
    }
}

/// Breadth-first product closure of `generators`, deduplicated up to
/// equality. Fails once more than `budget` distinct elements are found.
pub fn closure(generators: &[Element], budget: usize) -> Result<FiniteGroup> {
    let first = generators
        .first()
        .ok_or_else(|| Error::InvalidArgument("closure needs at least one generator".into()))?;
    let arity = first.arity();
    if let Some(g) = generators.iter().find(|g| g.arity() != arity) {
        return Err(Error::ArityMismatch(arity, g.arity()));
    }
    if budget == 0 {
        return Err(Error::BudgetExceeded(0));
    }
    let gens: Vec<Element> = generators.iter().map(|g| g.reduce().canonical()).collect();
    let mut index = ElementIndex::new(arity);
    let mut elements = vec![Element::identity(arity)];
    let key = index.fingerprint(&elements[0]);
    index.insert(key, 0);

    let mut next = 0;
    while next < elements.len() {
        let current = elements[next].clone();
        for g in &gens {
            let product = current.compose(g)?.reduce().canonical();
            let (key, hit) = index.find(&product, &elements);
            if hit.is_none() {
                if elements.len() >= budget {
                    return Err(Error::BudgetExceeded(elements.len() + 1));
                }
                index.insert(key, elements.len());
                elements.push(product);
            }
        }
        next += 1;
    }

    let table = elements
        .iter()
        .map(|a| {
            elements
                .iter()
                .map(|b| {
                    let product = a.compose(b).expect("same arity").reduce();
                    index.find(&product, &elements).1.expect("closure is closed")
                })
                .collect()
        })
        .collect();
    Ok(FiniteGroup { elements, table })
}

/// `m! * (n!)^m`, the number of rigid maps of an `m`-block pattern in
/// arity `n` (saturating).
pub fn rigid_bound(blocks: usize, arity: usize) -> u128 {
    let fact = |k: usize| (1..=k as u128).fold(1u128, |a, b| a.saturating_mul(b));
    let twists = fact(arity);
    (0..blocks).fold(fact(blocks), |acc, _| acc.saturating_mul(twists))
}

/// A pattern on which every element of the closure of `elements` acts
/// rigidly (maps blocks onto blocks by prefix replacement).
///
/// Every input must carry a torsion certificate within `max_power`. The
/// result is the common refinement of the images, under the whole closure,
/// of the common refinement of all certificate and domain patterns; it is
/// invariant under the closure by construction.
pub fn same_v_witness(elements: &[Element], max_power: u64, budget: usize) -> Result<(Pattern, FiniteGroup)> {
    let mut base: Option<Pattern> = None;
    let mut refine = |p: &Pattern| -> Result<()> {
        base = Some(match base.take() {
            None => p.sorted(),
            Some(b) => b.common_refinement(p)?,
        });
        Ok(())
    };
    for (i, e) in elements.iter().enumerate() {
        let cert = torsion_certificate(e, max_power).ok_or(Error::MissingCertificate(i))?;
        refine(&cert.pattern)?;
    }
    let group = closure(elements, budget)?;
    for g in &group.elements {
        refine(g.domain())?;
    }
    let base = base.expect("closure is nonempty");
    let mut witness = base.clone();
    for g in &group.elements {
        let image = g.push_pattern(&base).expect("base refines every domain");
        witness = witness.common_refinement(&image)?;
    }
    debug_assert!(group.elements.iter().all(|g| is_rigid_on(g, &witness)));
    Ok((witness, group))
}

/// True when `g` maps every block of `p` onto a block of `p`.
pub fn is_rigid_on(g: &Element, p: &Pattern) -> bool {
    match g.push_pattern(p) {
        Some(image) => p.refines(g.domain()) && image.same_blocks(p),
        None => false,
    }
}
