//! Exact computation in the Brin–Thompson groups nV and their twisted
//! variants over a finite coordinate set.
//!
//! Elements are pairs of dyadic patterns of the n-fold Cantor cube with a
//! label bijection and per-block coordinate twists. The crate provides the
//! group operations with an exact word-problem decision, torsion
//! certificates and finite-closure enumeration, partition-growth profiles of
//! powers, and an independent pointwise evaluator on eventually periodic
//! points used to cross-check all of the above.

pub mod dynamics;
pub mod element;
pub mod error;
pub mod format;
pub mod growth;
pub mod pattern;
pub mod segments;
pub mod svg;
pub mod torsion;
pub mod perm;
pub mod random;
pub mod word;

pub use dynamics::{agree, apply, locate_block, sample_points, CantorPoint, Stream};
pub use element::{Element, Piece};
pub use format::{parse_element, serialize_element};
pub use error::{Error, ParseError, Result, ValidationError};
pub use pattern::{validate_blocks, Pattern};
pub use perm::Perm;
pub use random::random_element;
pub use growth::{
    bs_relation_check, classify_step, is_root, monotone_growth_check, power_profile, root_search, GrowthProfile,
    GrowthRow, Monotonicity, StepCase,
};
pub use torsion::{
    closure, make_identical_pair_element, order_up_to, same_v_witness, torsion_certificate, FiniteGroup, Order,
    TorsionCertificate,
};
pub use segments::{common_segments, segment_count, segments, Segment};
pub use word::{addr, Address, Word};
