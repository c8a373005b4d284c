//! Symbolic curve engine for the punctured disk.
//!
//! The disk has `2n` punctures on the real axis at abscissas `1..2n`, and `n`
//! handle basepoints `d_1..d_n` on the lower boundary, ordered left to right.
//! Curves are encoded by their transverse crossings with the axis: the axis
//! splits into intervals ("gaps") numbered `0..=2n`, where gap `m` lies
//! between punctures `m` and `m+1` (gap 0 left of the first puncture, gap
//! `2n` right of the last). A reduced crossing sequence determines the curve
//! up to isotopy, because every arc in a half-disk is isotopically unique rel
//! its axis endpoints.
//!
//! Based loops are also written as free words in the generators `x_m` (a loop
//! from the lower-left basepoint region passing counterclockwise around
//! puncture `m`); the two encodings convert into each other exactly. Braid
//! generators act on based words by the Artin substitution, which is how
//! forks are transported.
//!
//! A fork consists of a handle (an arc from `d_i` into the disk) and a closed
//! figure-eight around two punctures, joined at one attachment point. Both
//! are carried by a single reduced based-loop word: the cyclically reducible
//! prefix/suffix is the handle, the cyclic core is the figure-eight.

use crate::braid::BraidWord;
use num_rational::Ratio;
use std::cmp::Ordering;
use thiserror::Error;

/// Errors from the curve engine and its geometric layer.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiskError {
    /// A fork index outside `1..=n` was requested.
    #[error("fork index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },
    /// A realized curve failed to be transverse to a tine segment.
    #[error("curve not transverse to the tine segment")]
    NotTransverse,
    /// The deterministic realization produced coincident features.
    #[error("degenerate realization: coincident features could not be separated")]
    RealizationDegenerate,
}

/// Vertical direction of an axis crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dir {
    Up,
    Down,
}

impl Dir {
    pub fn flip(self) -> Self {
        match self {
            Dir::Up => Dir::Down,
            Dir::Down => Dir::Up,
        }
    }

    /// +1 for upward, -1 for downward.
    pub fn sign(self) -> i64 {
        match self {
            Dir::Up => 1,
            Dir::Down => -1,
        }
    }
}

/// One transverse crossing of the real axis: which gap, and which way.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub gap: usize,
    pub dir: Dir,
}

impl Crossing {
    pub fn new(gap: usize, dir: Dir) -> Self {
        Self { gap, dir }
    }
}

/// Renders crossings one per line, e.g. `3↑` / `2↓`, the debug dump format.
pub fn crossing_dump(events: &[Crossing]) -> String {
    events
        .iter()
        .map(|c| format!("{}{}", c.gap, if c.dir == Dir::Up { '↑' } else { '↓' }))
        .collect::<Vec<_>>()
        .join("\n")
}

/// A freely reduced word in the generators `x_1..x_2n`; letter `m` stands for
/// `x_m`, letter `-m` for its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FreeWord {
    letters: Vec<i64>,
}

impl FreeWord {
    /// Builds a word, freely reducing it.
    pub fn new<I: IntoIterator<Item = i64>>(letters: I) -> Self {
        let mut out: Vec<i64> = Vec::new();
        for l in letters {
            assert!(l != 0, "letter indices are nonzero");
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Self { letters: out }
    }

    pub fn letters(&self) -> &[i64] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Self {
            letters: self.letters.iter().rev().map(|&l| -l).collect(),
        }
    }

    pub fn concat(&self, other: &Self) -> Self {
        Self::new(self.letters.iter().chain(other.letters.iter()).copied())
    }
}

/// Applies the braid generator to a based word: for the positive half twist,
/// `x_k -> x_k x_{k+1} x_k^{-1}` and `x_{k+1} -> x_k`; `positive = false`
/// applies the inverse automorphism (`x_k -> x_{k+1}`,
/// `x_{k+1} -> x_{k+1}^{-1} x_k x_{k+1}`).
pub fn artin_act(w: &FreeWord, k: usize, positive: bool) -> FreeWord {
    assert!(k >= 1, "generator indices are 1-based");
    let k = k as i64;
    let mut out: Vec<i64> = Vec::new();
    let push = |out: &mut Vec<i64>, l: i64| {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    };
    for &l in &w.letters {
        let m = l.abs();
        let pos = l > 0;
        let subst: &[i64] = match (positive, m == k, m == k + 1, pos) {
            (true, true, _, true) => &[k, k + 1, -k],
            (true, true, _, false) => &[k, -(k + 1), -k],
            (true, false, true, true) => &[k],
            (true, false, true, false) => &[-k],
            (false, true, _, true) => &[k + 1],
            (false, true, _, false) => &[-(k + 1)],
            (false, false, true, true) => &[-(k + 1), k, k + 1],
            (false, false, true, false) => &[-(k + 1), -k, k + 1],
            _ => &[l],
        };
        for &s in subst {
            push(&mut out, s);
        }
    }
    FreeWord { letters: out }
}

/// Half-twist handedness of a positive braid letter acting on curves. The
/// braid relations hold under either choice; the end-to-end trefoil test
/// against the bracket oracle pins this one.
const POSITIVE_LETTER_ACTS_POSITIVELY: bool = true;

/// Transports a based word by a braid word. Letters fold right to left: the
/// last letter of the word (cup side, where the curves live) acts first, the
/// first letter (cap side) acts last.
pub fn transport_word(w: &FreeWord, braid: &BraidWord) -> FreeWord {
    let mut cur = w.clone();
    for &letter in braid.letters.iter().rev() {
        let k = letter.unsigned_abs() as usize;
        let positive = (letter > 0) == POSITIVE_LETTER_ACTS_POSITIVELY;
        cur = artin_act(&cur, k, positive);
    }
    cur
}

/// Converts a based word to its reduced axis-crossing sequence: `x_m` crosses
/// up in gap `m` and down in gap `m-1`; the inverse crosses up in gap `m-1`
/// and down in gap `m`. Adjacent same-gap crossings bound empty bigons (every
/// puncture lies outside an open gap) and cancel.
pub fn word_to_events(w: &FreeWord) -> Vec<Crossing> {
    let mut out: Vec<Crossing> = Vec::new();
    let push = |out: &mut Vec<Crossing>, c: Crossing| {
        if let Some(top) = out.last() {
            if top.gap == c.gap {
                debug_assert!(top.dir != c.dir, "alternation violated");
                out.pop();
                return;
            }
        }
        out.push(c);
    };
    for &l in &w.letters {
        let m = l.unsigned_abs() as usize;
        let (first, second) = if l > 0 {
            (Crossing::new(m, Dir::Up), Crossing::new(m - 1, Dir::Down))
        } else {
            (Crossing::new(m - 1, Dir::Up), Crossing::new(m, Dir::Down))
        };
        push(&mut out, first);
        push(&mut out, second);
    }
    out
}

/// Inverse of `word_to_events` on reduced sequences: consecutive crossing
/// pairs (up in g1, down in g2) decode to a run of generators telescoping
/// between the two gaps.
pub fn events_to_word(events: &[Crossing]) -> FreeWord {
    assert!(events.len() % 2 == 0, "based sequences have even length");
    let mut letters = Vec::new();
    for pair in events.chunks(2) {
        let (up, down) = (pair[0], pair[1]);
        assert!(up.dir == Dir::Up && down.dir == Dir::Down, "alternation");
        let (g1, g2) = (up.gap as i64, down.gap as i64);
        match g1.cmp(&g2) {
            Ordering::Greater => {
                // Leftward over punctures g2+1..g1, counterclockwise.
                for m in (g2 + 1..=g1).rev() {
                    letters.push(m);
                }
            }
            Ordering::Less => {
                // Rightward over punctures g1+1..g2, clockwise.
                for m in g1 + 1..=g2 {
                    letters.push(-m);
                }
            }
            Ordering::Equal => unreachable!("reduced sequences have no empty hop"),
        }
    }
    FreeWord::new(letters)
}

/// The punctured-disk model: `2n` punctures at abscissas `1..=2n` inside a
/// disk of radius `2n + 1`, handle basepoints on the lower boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiskModel {
    pub n: usize,
}

impl DiskModel {
    pub fn new(n: usize) -> Self {
        Self { n }
    }

    /// Puncture abscissas, 1-based positions on the axis.
    pub fn punctures(&self) -> Vec<i64> {
        (1..=2 * self.n as i64).collect()
    }

    /// Number of axis gaps, `2n + 1`.
    pub fn gap_count(&self) -> usize {
        2 * self.n + 1
    }
}

/// A fork: handle arc from `d_index` plus a closed figure-eight, encoded by
/// one reduced based-loop word and its split into handle crossings (linear,
/// basepoint outward) and figure-eight crossings (cyclic, taut).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fork {
    index: usize,
    n: usize,
    based: FreeWord,
    handle: Vec<Crossing>,
    eight: Vec<Crossing>,
}

impl Fork {
    fn from_based(index: usize, n: usize, based: FreeWord) -> Self {
        let events = word_to_events(&based);
        assert!(!events.is_empty(), "a fork loop crosses the axis");
        // Strip conjugating pairs: while the first and last crossings share a
        // gap (their directions are automatically opposite), they bound the
        // handle corridor; what remains is the cyclically reduced eight.
        let mut lo = 0;
        let mut hi = events.len();
        let mut handle = Vec::new();
        while hi - lo > 2 && events[lo].gap == events[hi - 1].gap {
            handle.push(events[lo]);
            lo += 1;
            hi -= 1;
        }
        let eight: Vec<Crossing> = events[lo..hi].to_vec();
        debug_assert!(eight.len() >= 2);
        debug_assert!(eight.first().unwrap().gap != eight.last().unwrap().gap);
        Self { index, n, based, handle, eight }
    }

    /// 1-based handle basepoint index (fixed under transport).
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The reduced based-loop word of handle · eight · handle^(-1).
    pub fn based_word(&self) -> &FreeWord {
        &self.based
    }

    /// Handle axis crossings, ordered from the basepoint toward the
    /// attachment point.
    pub fn handle_events(&self) -> &[Crossing] {
        &self.handle
    }

    /// Figure-eight axis crossings in cyclic order; the attachment point lies
    /// on the chord between the last and the first.
    pub fn eight_events(&self) -> &[Crossing] {
        &self.eight
    }

    /// Transports the fork by a braid word; the basepoint stays fixed.
    pub fn transported(&self, braid: &BraidWord) -> Self {
        Self::from_based(self.index, self.n, transport_word(&self.based, braid))
    }

    /// Winding number of the figure-eight around puncture `m` (1-based):
    /// signed crossings of the rightward ray from the puncture.
    pub fn winding(&self, m: usize) -> i64 {
        self.eight
            .iter()
            .filter(|c| c.gap >= m)
            .map(|c| c.dir.sign())
            .sum()
    }

    /// Crossing count of the figure-eight with the open tine gap `2i - 1`.
    pub fn tine_gap_crossings(&self, i: usize) -> usize {
        let gap = 2 * i - 1;
        self.eight.iter().filter(|c| c.gap == gap).count()
    }
}

/// The standard fork `i`: tine from puncture `2i-1` to `2i`, handle from
/// `d_i` to the tine midpoint, figure-eight around the two tine endpoints
/// with opposite senses. Its based-loop word is `x_{2i} x_{2i-1}^{-1}`.
pub fn standard_fork(model: &DiskModel, i: usize) -> Result<Fork, DiskError> {
    if i < 1 || i > model.n {
        return Err(DiskError::IndexOutOfRange { index: i, n: model.n });
    }
    let based = FreeWord::new([2 * i as i64, -(2 * i as i64 - 1)]);
    Ok(Fork::from_based(i, model.n, based))
}

/// Transports a fork by a braid word (free-function form of
/// [`Fork::transported`]).
pub fn transport(fork: &Fork, braid: &BraidWord) -> Fork {
    fork.transported(braid)
}

// ---------------------------------------------------------------------------
// Same-gap ordering of crossings (the taut-position comparator).
//
// Two crossings in the same gap are ordered by walking both curves in the
// upward-normalized direction and comparing, at each step, where the next
// half-disk chord lands. Within a half-disk, chords from a shared gap to
// distinct boundary targets cannot cross (a foot swap would remove the
// crossing), which forces: the foot whose target lies further along the
// boundary — measured from the current gap, rightward along the axis with the
// basepoints d_n..d_1 between gap 2n and gap 0 — is the LEFT one. Ties mean
// the two strands run in a parallel band whose sides swap with every hop, so
// the first divergence decides, flipped by the hop parity.
// ---------------------------------------------------------------------------

/// Position of a crossing within a fork complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) enum Spot {
    Handle(usize),
    Eight(usize),
}

/// A crossing reference: which fork (by slice position) and where on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) struct EventRef {
    pub fork: usize,
    pub spot: Spot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct WalkState {
    fork: usize,
    spot: Spot,
    /// Traversal in stored order (handle: basepoint to attachment; eight:
    /// increasing index, cyclically).
    along: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum NextStop {
    /// A plain chord to another crossing.
    Event(Spot),
    /// The handle ends at the basepoint.
    Basepoint,
    /// The handle ends at the attachment point on the eight's seam chord.
    Junction,
}

fn crossing_at(fork: &Fork, spot: Spot) -> Crossing {
    match spot {
        Spot::Handle(i) => fork.handle[i],
        Spot::Eight(i) => fork.eight[i],
    }
}

fn next_stop(fork: &Fork, state: WalkState) -> NextStop {
    match (state.spot, state.along) {
        (Spot::Eight(i), true) => NextStop::Event(Spot::Eight((i + 1) % fork.eight.len())),
        (Spot::Eight(i), false) => {
            let l = fork.eight.len();
            NextStop::Event(Spot::Eight((i + l - 1) % l))
        }
        (Spot::Handle(i), true) => {
            if i + 1 < fork.handle.len() {
                NextStop::Event(Spot::Handle(i + 1))
            } else {
                NextStop::Junction
            }
        }
        (Spot::Handle(i), false) => {
            if i >= 1 {
                NextStop::Event(Spot::Handle(i - 1))
            } else {
                NextStop::Basepoint
            }
        }
    }
}

type Value = Ratio<i64>;

/// Boundary rank of target gap `to` as seen from gap `from`: rightward along
/// the axis, wrapping past the basepoint arc.
fn gap_value(n: usize, from: usize, to: usize) -> Value {
    let period = 2 * n as i64 + 1;
    Ratio::from_integer((to as i64 + period - from as i64) % period)
}

/// Boundary rank of basepoint `d_c`: the basepoints sit between gap `2n` and
/// gap 0, ordered d_n first when walking rightward.
fn d_value(n: usize, from: usize, c: usize) -> Value {
    gap_value(n, from, 2 * n) + Ratio::new((n - c + 1) as i64, n as i64 + 1)
}

/// The value interval swept by a walk's next chord: degenerate for a plain
/// chord, two-valued at the handle-attachment junction.
#[derive(Debug, Clone, Copy)]
struct Interval {
    lo: Value,
    hi: Value,
    lo_stop: Option<WalkState>,
    hi_stop: Option<WalkState>,
}

fn advance(fork: &Fork, state: WalkState) -> (Interval, WalkState) {
    // Returned WalkState is a placeholder for degenerate chords; callers use
    // the Interval's stops for junctions.
    let gap = crossing_at(fork, state.spot).gap;
    match next_stop(fork, state) {
        NextStop::Event(spot) => {
            let v = gap_value(fork.n, gap, crossing_at(fork, spot).gap);
            let next = WalkState { spot, ..state };
            (
                Interval { lo: v, hi: v, lo_stop: Some(next), hi_stop: Some(next) },
                next,
            )
        }
        NextStop::Basepoint => {
            let v = d_value(fork.n, gap, fork.index);
            (
                Interval { lo: v, hi: v, lo_stop: None, hi_stop: None },
                state,
            )
        }
        NextStop::Junction => {
            let l = fork.eight.len();
            let back = WalkState { fork: state.fork, spot: Spot::Eight(l - 1), along: false };
            let fwd = WalkState { fork: state.fork, spot: Spot::Eight(0), along: true };
            let vb = gap_value(fork.n, gap, fork.eight[l - 1].gap);
            let vf = gap_value(fork.n, gap, fork.eight[0].gap);
            if vb <= vf {
                (
                    Interval { lo: vb, hi: vf, lo_stop: Some(back), hi_stop: Some(fwd) },
                    state,
                )
            } else {
                (
                    Interval { lo: vf, hi: vb, lo_stop: Some(fwd), hi_stop: Some(back) },
                    state,
                )
            }
        }
    }
}

/// Orders two same-gap crossings left to right (`Less` = first lies left).
pub(crate) fn compare_same_gap(forks: &[&Fork], a: EventRef, b: EventRef) -> Ordering {
    if a == b {
        return Ordering::Equal;
    }
    let fa = forks[a.fork];
    let fb = forks[b.fork];
    let ca = crossing_at(fa, a.spot);
    let cb = crossing_at(fb, b.spot);
    debug_assert_eq!(ca.gap, cb.gap, "comparator needs a shared gap");
    // Normalize both walks to cross their starting event upward.
    let mut wa = WalkState { fork: a.fork, spot: a.spot, along: ca.dir == Dir::Up };
    let mut wb = WalkState { fork: b.fork, spot: b.spot, along: cb.dir == Dir::Up };
    let len = |f: &Fork| f.handle.len() + f.eight.len() + 2;
    let bound = 2 * len(fa) * len(fb) + 4;
    for hop in 0..bound {
        let (ia, na) = advance(fa, wa);
        let (ib, nb) = advance(fb, wb);
        let flip = hop % 2 == 1;
        let decide = |a_left: bool| {
            if a_left != flip {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        };
        if ia.hi < ib.lo {
            // All of a's targets come earlier along the boundary: b is left.
            return decide(false);
        }
        if ib.hi < ia.lo {
            return decide(true);
        }
        // Overlapping target values: both walks continue along the shared
        // value. Junction intervals sharing a single foot value redirect onto
        // that foot; a competitor strictly inside a junction interval would
        // have to cross the seam chord inside the handle corridor, which taut
        // position excludes.
        let shared = if ia.hi == ib.lo || ia.hi == ib.hi {
            ia.hi
        } else if ia.lo == ib.lo || ia.lo == ib.hi {
            ia.lo
        } else {
            unreachable!("chord target strictly inside a junction interval")
        };
        let pick = |iv: &Interval, next: WalkState| -> WalkState {
            if iv.lo == iv.hi {
                next
            } else if shared == iv.lo {
                iv.lo_stop.expect("junction feet are events")
            } else {
                iv.hi_stop.expect("junction feet are events")
            }
        };
        let next_a = pick(&ia, na);
        let next_b = pick(&ib, nb);
        if ia.lo_stop.is_none() && ia.lo == ia.hi {
            // a reached its basepoint while b still ties: distinct basepoint
            // fractions make this impossible across forks; within a fork the
            // walks must have merged first.
            unreachable!("walk terminated while tied");
        }
        if ib.lo_stop.is_none() && ib.lo == ib.hi {
            unreachable!("walk terminated while tied");
        }
        wa = next_a;
        wb = next_b;
        if wa == wb {
            // The walks merged (a handle joining its own eight): the local
            // side of the handle along the seam is a drawing choice; fix it
            // structurally so every ordering question has one answer.
            let key = |r: EventRef| match r.spot {
                Spot::Handle(i) => (0usize, i),
                Spot::Eight(i) => (1usize, i),
            };
            return key(a).cmp(&key(b));
        }
    }
    panic!("comparator walks failed to diverge within the taut bound");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::BraidWord;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn fw(letters: &[i64]) -> FreeWord {
        FreeWord::new(letters.iter().copied())
    }

    fn braid(n: usize, letters: &[i64]) -> BraidWord {
        BraidWord::new(n, letters.to_vec()).unwrap()
    }

    fn random_word(rng: &mut StdRng, n: usize, len: usize) -> FreeWord {
        FreeWord::new((0..len).map(|_| {
            let m = rng.gen_range(1..=2 * n as i64);
            if rng.gen_bool(0.5) {
                m
            } else {
                -m
            }
        }))
    }

    #[test]
    fn artin_substitution_examples() {
        // Defining substitution on x_k, support disjoint elsewhere.
        assert_eq!(artin_act(&fw(&[1]), 1, true), fw(&[1, 2, -1]));
        assert_eq!(artin_act(&fw(&[2]), 1, true), fw(&[1]));
        assert_eq!(artin_act(&fw(&[3]), 1, true), fw(&[3]));
        // Inverse action undoes the positive one.
        let w = fw(&[2, -1, 3]);
        let acted = artin_act(&w, 1, true);
        assert_eq!(artin_act(&acted, 1, false), w);
    }

    #[test]
    fn artin_braid_relations_on_words() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..40 {
            let n = 2;
            let len = rng.gen_range(1..8);
            let w = random_word(&mut rng, n, len);
            // Adjacent relation: 1 2 1 = 2 1 2 (both as automorphism
            // composites, applied left to right here).
            let lhs = artin_act(&artin_act(&artin_act(&w, 1, true), 2, true), 1, true);
            let rhs = artin_act(&artin_act(&artin_act(&w, 2, true), 1, true), 2, true);
            assert_eq!(lhs, rhs);
            // Distant commutation: 1 3 = 3 1.
            let lhs = artin_act(&artin_act(&w, 1, true), 3, true);
            let rhs = artin_act(&artin_act(&w, 3, true), 1, true);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn word_event_round_trips() {
        let mut rng = StdRng::seed_from_u64(9);
        for _ in 0..200 {
            let n = rng.gen_range(1..=3usize);
            let len = rng.gen_range(0..10);
            let w = random_word(&mut rng, n, len);
            let events = word_to_events(&w);
            assert_eq!(events_to_word(&events), w);
            // Alternation: directions strictly alternate starting upward.
            for (i, c) in events.iter().enumerate() {
                let expect = if i % 2 == 0 { Dir::Up } else { Dir::Down };
                assert_eq!(c.dir, expect);
            }
        }
    }

    #[test]
    fn telescoped_events_decode_to_runs() {
        // A single up-down hop over several punctures decodes to a run.
        let events = vec![Crossing::new(2, Dir::Up), Crossing::new(0, Dir::Down)];
        assert_eq!(events_to_word(&events), fw(&[2, 1]));
        let events = vec![Crossing::new(0, Dir::Up), Crossing::new(2, Dir::Down)];
        assert_eq!(events_to_word(&events), fw(&[-1, -2]));
    }

    #[test]
    fn standard_fork_shape() {
        let model = DiskModel::new(1);
        let f = standard_fork(&model, 1).unwrap();
        assert!(f.handle_events().is_empty());
        assert_eq!(
            f.eight_events(),
            &[
                Crossing::new(2, Dir::Up),
                Crossing::new(1, Dir::Down),
                Crossing::new(0, Dir::Up),
                Crossing::new(1, Dir::Down),
            ]
        );
        // Lobes wind oppositely: +1 around the right puncture, -1 around the
        // left, summing to zero.
        assert_eq!(f.winding(2), 1);
        assert_eq!(f.winding(1), -1);
        // Axis crossings per gap for n=1: one in gap 0, two in gap 1, one in
        // gap 2.
        assert_eq!(f.tine_gap_crossings(1), 2);
        assert_eq!(
            standard_fork(&model, 2),
            Err(DiskError::IndexOutOfRange { index: 2, n: 1 })
        );
    }

    #[test]
    fn transport_by_identity_and_inverse_pairs() {
        let model = DiskModel::new(2);
        let f = standard_fork(&model, 1).unwrap();
        assert_eq!(f.transported(&braid(2, &[])), f);
        for k in 1..=3i64 {
            assert_eq!(f.transported(&braid(2, &[k, -k])), f);
            assert_eq!(f.transported(&braid(2, &[-k, k])), f);
        }
    }

    #[test]
    fn transport_moves_tine_endpoints() {
        // sigma_2 sigma_1 sigma_3 sigma_2 carries punctures {1,2} to {3,4}:
        // the transported eight winds around 3 and 4 only.
        let model = DiskModel::new(2);
        let f = standard_fork(&model, 1).unwrap().transported(&braid(2, &[2, 1, 3, 2]));
        assert_eq!(f.winding(1), 0);
        assert_eq!(f.winding(2), 0);
        assert_eq!(f.winding(3) + f.winding(4), 0);
        assert_eq!(f.winding(3).abs(), 1);
        assert_eq!(f.winding(4).abs(), 1);
    }

    #[test]
    fn transport_braid_relations_on_forks() {
        let mut rng = StdRng::seed_from_u64(21);
        let model = DiskModel::new(2);
        for i in 1..=2 {
            let f = standard_fork(&model, i).unwrap();
            assert_eq!(
                f.transported(&braid(2, &[1, 2, 1])),
                f.transported(&braid(2, &[2, 1, 2]))
            );
            assert_eq!(
                f.transported(&braid(2, &[1, 3])),
                f.transported(&braid(2, &[3, 1]))
            );
        }
        // Random inverse round trips.
        for _ in 0..30 {
            let len = rng.gen_range(1..=8usize);
            let letters: Vec<i64> = (0..len)
                .map(|_| {
                    let k = rng.gen_range(1..=3i64);
                    if rng.gen_bool(0.5) {
                        k
                    } else {
                        -k
                    }
                })
                .collect();
            let mut inv: Vec<i64> = letters.iter().rev().map(|&k| -k).collect();
            let mut both = letters.clone();
            both.append(&mut inv);
            let f = standard_fork(&model, rng.gen_range(1..=2)).unwrap();
            assert_eq!(f.transported(&braid(2, &both)), f);
        }
    }

    #[test]
    fn handle_splitting_strips_conjugators() {
        // Conjugating the standard loop by x_1 gives a one-crossing handle:
        // x_1 (x_2 x_1^{-1}) x_1^{-1} has events 1↑ 0↓ 2↑ 1↓ 1↑ 0↓ reduced...
        // build it via the word API and check the split invariants.
        let w = fw(&[1]).concat(&fw(&[2, -1])).concat(&fw(&[1]).inverse());
        let f = Fork::from_based(1, 1, w);
        let total = f.handle_events().len() * 2 + f.eight_events().len();
        assert_eq!(total, word_to_events(f.based_word()).len());
        assert!(f.eight_events().len() >= 2);
        let first = f.eight_events().first().unwrap();
        let last = f.eight_events().last().unwrap();
        assert_ne!(first.gap, last.gap);
    }

    #[test]
    fn comparator_orders_standard_forks() {
        let model = DiskModel::new(2);
        let f1 = standard_fork(&model, 1).unwrap();
        let f2 = standard_fork(&model, 2).unwrap();
        let forks = [&f1, &f2];
        // Shared gap 2: fork 1's right-lobe crossing lies left of fork 2's
        // left-lobe crossing.
        let a = EventRef { fork: 0, spot: Spot::Eight(0) };
        let b = EventRef { fork: 1, spot: Spot::Eight(2) };
        assert_eq!(compare_same_gap(&forks, a, b), Ordering::Less);
        assert_eq!(compare_same_gap(&forks, b, a), Ordering::Greater);
        assert_eq!(compare_same_gap(&forks, a, a), Ordering::Equal);
    }

    #[test]
    fn comparator_orders_waist_crossings() {
        // The standard eight's two crossings of its tine gap: the left-lobe
        // one (index 3) lies left of the right-lobe one (index 1).
        let model = DiskModel::new(1);
        let f = standard_fork(&model, 1).unwrap();
        let forks = [&f];
        let a = EventRef { fork: 0, spot: Spot::Eight(1) };
        let b = EventRef { fork: 0, spot: Spot::Eight(3) };
        assert_eq!(compare_same_gap(&forks, a, b), Ordering::Greater);
        assert_eq!(compare_same_gap(&forks, b, a), Ordering::Less);
    }

    #[test]
    fn dump_format() {
        let events = vec![Crossing::new(3, Dir::Up), Crossing::new(2, Dir::Down)];
        assert_eq!(crossing_dump(&events), "3↑\n2↓");
    }
}
