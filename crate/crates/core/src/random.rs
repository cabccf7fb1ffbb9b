//! Seeded random patterns and elements.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::element::Element;
use crate::pattern::Pattern;
use crate::perm::Perm;

/// A pattern with exactly `blocks` blocks, grown by random splits of blocks
/// of depth below `max_depth`. Requires `blocks <= 2^max_depth`.
pub fn random_pattern<R: Rng>(rng: &mut R, arity: usize, max_depth: usize, blocks: usize) -> Pattern {
    let mut p = Pattern::trivial(arity);
    while p.len() < blocks {
        let eligible: Vec<usize> = (0..p.len()).filter(|&i| p.block(i).depth() < max_depth).collect();
        let label = *eligible.choose(rng).expect("fewer than 2^depth blocks leaves a shallow block");
        let axis = rng.gen_range(0..arity);
        p = p.split_block(label, axis).expect("label and axis in range");
    }
    p
}

/// A deterministic random element of `nV`: both patterns have the same
/// random block count in `1..=2^max_split_depth` (capped at 64), the label
/// map is a uniform bijection, and when `twist_generators` is given each
/// block's twist is a product of up to three of them.
pub fn random_element(seed: u64, arity: usize, max_split_depth: usize, twist_generators: Option<&[Perm]>) -> Element {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cap = 1usize.checked_shl(max_split_depth as u32).unwrap_or(usize::MAX).min(64);
    let m = rng.gen_range(1..=cap);
    let domain = random_pattern(&mut rng, arity, max_split_depth, m);
    let range = random_pattern(&mut rng, arity, max_split_depth, m);
    let mut sigma: Vec<usize> = (0..m).collect();
    sigma.shuffle(&mut rng);
    let twists = (0..m)
        .map(|_| match twist_generators {
            Some(gens) if !gens.is_empty() => {
                let len = rng.gen_range(0..=3);
                (0..len).fold(Perm::identity(arity), |acc, _| acc.then(gens.choose(&mut rng).expect("nonempty")))
            }
            _ => Perm::identity(arity),
        })
        .collect();
    Element::new(domain, range, sigma, twists).expect("random construction is valid")
}
