//! Operation-level examples and seeded sweeps, checked against the
//! string-level oracles in `support` and the pointwise evaluator.

mod support;

use nv_core::dynamics::{agree, apply, sample_points};
use nv_core::growth::{classify_step, power_profile, StepCase};
use nv_core::segments::{common_segments, segments};
use nv_core::torsion::{order_up_to, torsion_certificate, verify_certificate, Order};
use nv_core::{addr, parse_element, random_element, serialize_element, Element, Pattern, Perm};

use support::*;

#[test]
fn split_then_validate_measure_is_one() {
    let p = pattern(&[&["0", "e"], &["1", "e"]]).split_block(1, 1).unwrap();
    assert_eq!(block_strings(&p), block_strings(&pattern(&[&["0", "e"], &["1", "0"], &["1", "1"]])));
    let total: f64 = p.blocks().iter().map(|b| 0.5f64.powi(b.depth() as i32)).sum();
    assert_eq!(total, 1.0);
}

#[test]
fn refinement_matches_brute_force_intersections() {
    for seed in 0..300 {
        let f = random_element(seed, 2, 4, None);
        let g = random_element(seed + 10_000, 2, 4, None);
        let r = f.range().common_refinement(g.domain()).unwrap();
        assert_eq!(block_strings(&r), naive_intersections(f.range(), g.domain()), "seed {seed}");
        assert!(r.refines(f.range()) && r.refines(g.domain()));
        assert!(nv_core::validate_blocks(2, r.blocks()).is_ok());
    }
    let v = pattern(&[&["0", "e"], &["1", "e"]]);
    let h = pattern(&[&["e", "0"], &["e", "1"]]);
    assert_eq!(block_strings(&v.common_refinement(&h).unwrap()), naive_intersections(&v, &h));
}

#[test]
fn segments_of_quadrants_and_common_count() {
    let quads = pattern(&[&["0", "0"], &["0", "1"], &["1", "0"], &["1", "1"]]);
    assert_eq!(segments(&quads).len(), 2);
    let halves = pattern(&[&["0", "e"], &["1", "e"]]);
    // both patterns carry the full vertical line through the centre
    assert_eq!(common_segments(&quads, &halves).unwrap(), 1);
}

#[test]
fn segments_ignore_construction_order() {
    let t = Pattern::trivial(2);
    let a = t.split_block(0, 0).unwrap().split_block(0, 1).unwrap().split_block(1, 1).unwrap();
    let b = t.split_block(0, 1).unwrap().split_block(0, 0).unwrap().split_block(1, 0).unwrap();
    assert!(a.same_blocks(&b));
    assert_eq!(segments(&a), segments(&b));
    assert_eq!(segments(&a.sorted()), segments(&b));
}

#[test]
fn invert_gives_identity_on_200_seeds() {
    for seed in 0..200 {
        let f = random_element(seed, 2, 3, None);
        assert!(f.compose(&f.invert()).unwrap().is_identity(), "seed {seed}");
        assert!(f.invert().compose(&f).unwrap().is_identity(), "seed {seed}");
        assert_eq!(f.invert().invert(), f);
    }
    assert_eq!(Element::identity(3).invert(), Element::identity(3));
}

#[test]
fn twisted_expansion_agrees_pointwise() {
    let t = Element::new(
        pattern(&[&["0", "e"], &["1", "e"]]),
        pattern(&[&["e", "0"], &["e", "1"]]),
        vec![1, 0],
        vec![Perm::swap(2, 0, 1), Perm::identity(2)],
    )
    .unwrap();
    let e = t.expand(0, 0).unwrap();
    // block 0 carries the swap, so its range block (e,1) splits on axis 2
    assert_eq!(e.range().block(e.sigma()[0]), &addr(&["e", "10"]));
    assert_eq!(e.range().block(e.sigma()[2]), &addr(&["e", "11"]));
    let points = sample_points(17, 50, 2);
    assert!(agree(&t, &e, &points).unwrap());
    assert!(e.equals(&t).unwrap());
}

#[test]
fn compose_of_x0_with_itself_matches_naive_oracle() {
    let a = x0();
    let sq = a.compose(&a).unwrap();
    assert_eq!(NaiveV::from_element(&sq), x0_naive().then(&x0_naive()));
    let doms: Vec<String> = sq.sorted_pieces().iter().map(|p| p.domain.word(0).to_string()).collect();
    assert_eq!(doms, ["0", "10", "110", "111"]);
    let mut rans: Vec<String> = sq.pieces().iter().map(|p| p.range.word(0).to_string()).collect();
    rans.sort();
    assert_eq!(rans, ["000", "001", "01", "1"]);
}

#[test]
fn random_v_products_match_naive_oracle() {
    for seed in 0..150 {
        let f = random_element(seed, 1, 3, None);
        let g = random_element(seed + 777, 1, 3, None);
        let fg = f.compose(&g).unwrap().reduce();
        let oracle = NaiveV::from_element(&f).then(&NaiveV::from_element(&g));
        assert!(fg.equals(&oracle.to_element()).unwrap(), "seed {seed}");
    }
}

#[test]
fn composition_is_functorial_on_points() {
    for seed in 0..200 {
        let f = random_element(seed, 2, 3, None);
        let g = random_element(seed + 5000, 2, 3, None);
        let fg = f.compose(&g).unwrap();
        assert_eq!(fg.len(), f.range().common_refinement(g.domain()).unwrap().len());
        for x in sample_points(seed, 100, 2) {
            assert_eq!(apply(&fg, &x).unwrap(), apply(&g, &apply(&f, &x).unwrap()).unwrap());
        }
    }
}

#[test]
fn twisted_composition_is_functorial_on_points() {
    let gens = [Perm::swap(3, 0, 1), Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap()];
    for seed in 0..100 {
        let f = random_element(seed, 3, 3, Some(&gens));
        let g = random_element(seed + 9000, 3, 3, Some(&gens));
        let fg = f.compose(&g).unwrap();
        for x in sample_points(seed + 1, 40, 3) {
            let fx = apply(&f, &x).unwrap();
            assert_eq!(apply(&fg, &x).unwrap(), apply(&g, &fx).unwrap());
            assert_eq!(apply(&f.invert(), &fx).unwrap(), x);
        }
        assert!(fg.compose(&g.invert()).unwrap().equals(&f).unwrap());
    }
}

#[test]
fn reduce_examples() {
    let a = x0_in_2v();
    for label in 0..a.len() {
        for axis in 0..2 {
            assert_eq!(a.expand(label, axis).unwrap().reduce().len(), a.len());
        }
    }
    let quads = Element::identity(2).expand(0, 0).unwrap().expand(0, 1).unwrap().expand(1, 1).unwrap();
    assert_eq!(quads.reduce(), Element::identity(2));
    assert_eq!(x0().compose(&x0().invert()).unwrap().reduce(), Element::identity(1));
    assert_eq!(NaiveV::from_element(&x0().compose(&x0().invert()).unwrap()).reduced(), NaiveV::identity());
}

#[test]
fn equals_reduce_on_500_seeds() {
    for seed in 0..500 {
        let f = random_element(seed, 2, 3, None);
        let r = f.reduce();
        assert!(r.len() <= f.len());
        assert!(f.equals(&r).unwrap(), "seed {seed}");
    }
    assert!(!x0().equals(&Element::identity(1)).unwrap());
    assert!(x0().equals(&x0()).unwrap());
}

#[test]
fn power_of_swap_is_identical_pair() {
    let halves = line(&["0", "1"]);
    let swap = transposition(&halves, 0, 1);
    let sq = swap.power(2, false);
    assert!(sq.is_identical_pair());
    let (_, perm, _) = sq.rigid_action().unwrap();
    assert!(perm.is_identity());
    assert_eq!(swap.power(0, true), Element::identity(1));
    assert_eq!(swap.power(1, false), swap);
}

#[test]
fn embedding_is_a_homomorphism() {
    for seed in 0..100 {
        let u = random_element(seed, 1, 3, None);
        let v = random_element(seed + 31, 1, 3, None);
        for axis in 0..3 {
            let lhs = u.compose(&v).unwrap().embed(axis, 3).unwrap();
            let rhs = u.embed(axis, 3).unwrap().compose(&v.embed(axis, 3).unwrap()).unwrap();
            assert!(lhs.equals(&rhs).unwrap());
        }
        // injective: distinct in V stays distinct in 3V
        if !u.equals(&v).unwrap() {
            assert!(!u.embed(1, 3).unwrap().equals(&v.embed(1, 3).unwrap()).unwrap());
        }
    }
}

#[test]
fn certificate_examples() {
    let a = x0_in_2v();
    assert!(torsion_certificate(&a, 16).is_none());
    assert_eq!(order_up_to(&a, 16), Order::Unknown(16));
    let p3 = line(&["0", "10", "11"]);
    let cycle = rigid(&p3, vec![1, 2, 0]);
    assert_eq!(order_up_to(&cycle, 10), Order::Finite(3));
    let cert = torsion_certificate(&cycle, 4).unwrap();
    assert_eq!((cert.power, cert.order_bound), (1, 3));
    assert!(verify_certificate(&cycle, &cert));
}

#[test]
fn non_rigid_torsion_certificate_and_step_case() {
    // domain and range patterns differ, so power 1 is not an identical pair
    let naive = NaiveV::new(&[("0", "1"), ("10", "01"), ("11", "00")]);
    let f = naive.to_element();
    assert!(!f.is_identical_pair());
    let cert = torsion_certificate(&f, 8).unwrap();
    assert!(cert.power > 1);
    assert!(verify_certificate(&f, &cert));
    let Order::Finite(k) = order_up_to(&f, 16) else { panic!("torsion element") };
    assert_eq!(naive.power(k), NaiveV::identity());
    assert!((1..k).all(|j| naive.power(j) != NaiveV::identity()));
    let profile = power_profile(&f, k);
    let row = profile.row(k as usize).unwrap();
    assert_eq!(row.blocks_reduced, 1);
    let expected = match row.reduction.cmp(&row.growth) {
        std::cmp::Ordering::Less => StepCase::Growth,
        std::cmp::Ordering::Equal => StepCase::Balanced,
        std::cmp::Ordering::Greater => StepCase::Shrink,
    };
    assert_eq!(classify_step(&profile, k as usize).unwrap(), expected);
}

#[test]
fn x0_profile_matches_naive_block_counts() {
    let profile = power_profile(&x0_in_2v(), 8);
    let mut naive = NaiveV::identity();
    for row in &profile.rows {
        naive = naive.then(&x0_naive());
        assert_eq!(row.blocks_reduced, naive.leaves.len());
        assert_eq!(row.blocks_reduced as u64, row.i + 2);
    }
    assert_eq!(classify_step(&profile, 2).unwrap(), StepCase::Growth);
}

#[test]
fn serialize_is_injective_on_distinct_reduced_elements() {
    let mut seen: Vec<(Element, String)> = Vec::new();
    for seed in 0..150 {
        let e = random_element(seed, 2, 2, None).reduce();
        let text = serialize_element(&e);
        for (other, other_text) in &seen {
            if !other.equals(&e).unwrap() {
                assert_ne!(&text, other_text);
            }
        }
        seen.push((e, text));
    }
}

#[test]
fn round_trip_twisted_sweep() {
    let gens = [Perm::swap(2, 0, 1)];
    for seed in 0..500 {
        let e = random_element(seed, 2, 3, Some(&gens));
        let text = serialize_element(&e);
        let back = parse_element(&text).unwrap();
        assert_eq!(back, e.canonical());
        assert!(back.equals(&e).unwrap());
    }
}
