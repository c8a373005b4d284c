//! Jones polynomials of plat closures, two independent ways.
//!
//! The primary route represents each braid as a mapping class of a punctured
//! disk, transports a standard system of forks, and evaluates a homological
//! intersection pairing whose specialization and normalization yield the
//! Jones polynomial of the plat closure. A Temperley-Lieb/Kauffman-bracket
//! oracle provides the same invariant by state summation, so every value can
//! be cross-checked between two unrelated algorithms.

pub mod algebra;
pub mod braid;
pub mod disk;
pub mod oracle;
pub mod pairing;

pub use algebra::{
    divide_by_minus_q_half_sum, kauffman_normalize, normalize_to_jones, specialize_t,
    AlgebraError, LaurentQT,
};
pub use braid::{
    all_orientations, birman_generators, orient_plat, parse_braid, plat_components, writhe,
    BraidError, BraidWord, PlatComponents,
};
pub use disk::{
    artin_act, crossing_dump, events_to_word, standard_fork, transport, transport_word,
    word_to_events, Crossing, Dir, DiskError, DiskModel, Fork, FreeWord,
};
pub use oracle::{bracket_plat_oracle, jones_oracle, LaurentA};
pub use pairing::{
    delta_loop, half_winding, multipoint_sign, pairing, pairing_with_stats, phi, ConfigLoop,
    Multipoint, PairingError, PairingStats, PhiValue,
};
