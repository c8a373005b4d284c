//! The homological intersection pairing of fork surfaces.
//!
//! The braid transports the standard fork system; the pairing is a sum over
//! "multipoints": choices of a permutation matching forks to tines plus one
//! intersection point of each matched figure-eight with its tine. Every
//! multipoint contributes a signed monomial `± q^a t^b` read off a reference
//! loop in the configuration space of `n` unordered points: each strand
//! leaves its handle basepoint, travels along its fork to the chosen
//! intersection point, and returns down the tine to the standard basepoints.
//!
//! The exponents are computed twice, by independent layers:
//!
//! * a **fast symbolic layer** that reads the monomial directly from the
//!   axis-crossing sequences — every interaction of the reference loop with a
//!   puncture or another strand happens at an axis crossing, so `a` and `b`
//!   reduce to signed sums over fork crossing events;
//! * a **geometric layer** ([`delta_loop`] / [`phi`]) that builds the loop as
//!   explicit piecewise-linear strands with rational coordinates and counts
//!   half-turns of strand–puncture and strand–strand differences.
//!
//! The two layers are cross-checked per multipoint in the test suite; the
//! public [`pairing`] entry point uses the fast layer.

use crate::algebra::LaurentQT;
use crate::braid::BraidWord;
use crate::disk::{standard_fork, Crossing, Dir, DiskModel, Fork};
use crate::disk::{compare_same_gap, EventRef, Spot};
use num_rational::Ratio;
use std::cmp::Ordering;
use std::collections::HashMap;
use thiserror::Error;

/// Errors from the pairing engine.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum PairingError {
    /// Two configuration points (or a point and a puncture) coincided while
    /// their relative position was being counted.
    #[error("configuration points collided during winding count")]
    Collision,
    /// A puncture half-winding total came out odd, which a closed loop of
    /// configurations cannot produce.
    #[error("odd puncture half-winding total: reference loop is not closed")]
    ParityViolation,
}

/// One intersection configuration: tine `s` (1-based) meets the figure-eight
/// of fork `tine_forks[s-1]` at eight-crossing index `picks[s-1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multipoint {
    /// Permutation image: which fork covers each tine, 1-based values.
    pub tine_forks: Vec<usize>,
    /// For each tine, the index into the matched fork's eight crossings.
    pub picks: Vec<usize>,
}

/// The monomial exponents of a reference loop: `q^{q_exp} t^{t_exp}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PhiValue {
    pub q_exp: i64,
    pub t_exp: i64,
}

/// A rational point in the disk.
pub type Point = (Ratio<i64>, Ratio<i64>);

/// A reference loop in the configuration space: `n` piecewise-linear strand
/// paths of equal length (parked strands repeat their position), starting and
/// ending on the handle basepoints as a set.
#[derive(Debug, Clone)]
pub struct ConfigLoop {
    pub strands: Vec<Vec<Point>>,
}

/// Enumeration and term statistics of one pairing computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairingStats {
    /// Number of multipoints (geometric intersection configurations).
    pub multipoints: usize,
    /// Number of fork-to-tine permutations with a nonempty pick set.
    pub permutations: usize,
}

fn perm_sign(perm: &[usize]) -> i64 {
    let mut sign = 1i64;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// The intersection sign of a multipoint: each crossing counts `+1` upward
/// and `-1` downward, times the permutation sign.
pub fn multipoint_sign(forks: &[Fork], mp: &Multipoint) -> i64 {
    let mut sign = perm_sign(&mp.tine_forks);
    for (s, &t) in mp.picks.iter().enumerate() {
        let fork = &forks[mp.tine_forks[s] - 1];
        if fork.eight_events()[t].dir == Dir::Down {
            sign = -sign;
        }
    }
    sign
}

// ---------------------------------------------------------------------------
// Fast symbolic layer.
// ---------------------------------------------------------------------------

/// Shared per-braid state: transported forks, pick sets, prefix tables, and
/// the memoized same-gap ordering.
pub(crate) struct Engine {
    n: usize,
    forks: Vec<Fork>,
    /// `picks[c-1][i-1]`: eight indices of fork `c` crossing tine gap `2i-1`,
    /// ordered left to right.
    picks: Vec<Vec<Vec<usize>>>,
    /// `punct_prefix[c-1][t]`: puncture half-winding sum of the leg of fork
    /// `c` up to (handle + first `t` eight crossings).
    punct_prefix: Vec<Vec<i64>>,
    /// Same-gap comparisons resolved so far.
    order_memo: HashMap<(EventRef, EventRef), Ordering>,
    /// `cross_prefix[(mover, pick_ref)][t]`: signed crossings of the mover
    /// fork's leg (up to `t`) against the parked pick.
    cross_prefix: HashMap<(usize, EventRef), Vec<i64>>,
}

impl Engine {
    pub(crate) fn new(braid: &BraidWord) -> Engine {
        let n = braid.n;
        let model = DiskModel::new(n);
        let forks: Vec<Fork> = (1..=n)
            .map(|i| {
                standard_fork(&model, i)
                    .expect("indices 1..=n are in range")
                    .transported(braid)
            })
            .collect();
        let mut engine = Engine {
            n,
            forks,
            picks: Vec::new(),
            punct_prefix: Vec::new(),
            order_memo: HashMap::new(),
            cross_prefix: HashMap::new(),
        };
        engine.build_picks();
        engine.build_punct_prefixes();
        engine
    }

    pub(crate) fn forks(&self) -> &[Fork] {
        &self.forks
    }

    fn build_picks(&mut self) {
        let refs: Vec<&Fork> = self.forks.iter().collect();
        let mut picks = Vec::with_capacity(self.n);
        for c in 0..self.n {
            let mut per_tine = Vec::with_capacity(self.n);
            for i in 1..=self.n {
                let gap = 2 * i - 1;
                let mut at: Vec<usize> = self.forks[c]
                    .eight_events()
                    .iter()
                    .enumerate()
                    .filter(|(_, ev)| ev.gap == gap)
                    .map(|(t, _)| t)
                    .collect();
                at.sort_by(|&a, &b| {
                    compare_same_gap(
                        &refs,
                        EventRef { fork: c, spot: Spot::Eight(a) },
                        EventRef { fork: c, spot: Spot::Eight(b) },
                    )
                });
                per_tine.push(at);
            }
            picks.push(per_tine);
        }
        drop(refs);
        self.picks = picks;
    }

    fn build_punct_prefixes(&mut self) {
        let two_n = 2 * self.n as i64;
        for fork in &self.forks {
            // A crossing in gap g passes to the left of the punctures above g
            // and to the right of the rest: summed over punctures its
            // half-winding contribution is dir * (2g - 2n).
            let weight = |ev: &Crossing| ev.dir.sign() * (2 * ev.gap as i64 - two_n);
            let base: i64 = fork.handle_events().iter().map(weight).sum();
            let mut prefix = Vec::with_capacity(fork.eight_events().len() + 1);
            prefix.push(base);
            let mut acc = base;
            for ev in fork.eight_events() {
                acc += weight(ev);
                prefix.push(acc);
            }
            self.punct_prefix.push(prefix);
        }
    }

    fn order(&mut self, a: EventRef, b: EventRef) -> Ordering {
        if let Some(&o) = self.order_memo.get(&(a, b)) {
            return o;
        }
        let refs: Vec<&Fork> = self.forks.iter().collect();
        let o = compare_same_gap(&refs, a, b);
        self.order_memo.insert((a, b), o);
        self.order_memo.insert((b, a), o.reverse());
        o
    }

    /// Sign of (x of event) - (x of parked pick), across or within gaps.
    fn x_sign(&mut self, ev_gap: usize, ev: EventRef, pick_gap: usize, pick: EventRef) -> i64 {
        match ev_gap.cmp(&pick_gap) {
            Ordering::Less => -1,
            Ordering::Greater => 1,
            Ordering::Equal => match self.order(ev, pick) {
                Ordering::Less => -1,
                Ordering::Greater => 1,
                Ordering::Equal => unreachable!("distinct crossings share a slot"),
            },
        }
    }

    /// Prefix sums of signed crossings of fork `mover`'s leg against the
    /// parked pick: entry `t` covers the handle plus the first `t` eight
    /// crossings.
    fn cross_prefix(&mut self, mover: usize, pick: EventRef, pick_gap: usize) -> &Vec<i64> {
        if !self.cross_prefix.contains_key(&(mover, pick)) {
            let handle_len = self.forks[mover].handle_events().len();
            let eight_len = self.forks[mover].eight_events().len();
            let mut base = 0i64;
            for h in 0..handle_len {
                let ev = self.forks[mover].handle_events()[h];
                let r = EventRef { fork: mover, spot: Spot::Handle(h) };
                base += self.x_sign(ev.gap, r, pick_gap, pick) * ev.dir.sign();
            }
            let mut prefix = Vec::with_capacity(eight_len + 1);
            prefix.push(base);
            let mut acc = base;
            for t in 0..eight_len {
                let ev = self.forks[mover].eight_events()[t];
                let r = EventRef { fork: mover, spot: Spot::Eight(t) };
                acc += self.x_sign(ev.gap, r, pick_gap, pick) * ev.dir.sign();
                prefix.push(acc);
            }
            self.cross_prefix.insert((mover, pick), prefix);
        }
        &self.cross_prefix[&(mover, pick)]
    }

    /// All multipoints, permutations in lexicographic order, picks in tine
    /// order (leftmost first).
    pub(crate) fn multipoints(&self) -> Vec<Multipoint> {
        let mut out = Vec::new();
        let mut perm = Vec::with_capacity(self.n);
        let mut used = vec![false; self.n];
        self.collect_perms(&mut perm, &mut used, &mut out);
        out
    }

    fn collect_perms(&self, perm: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Multipoint>) {
        let s = perm.len();
        if s == self.n {
            let mut picks = vec![0usize; self.n];
            self.collect_picks(perm, &mut picks, 0, out);
            return;
        }
        for c in 1..=self.n {
            if !used[c - 1] && !self.picks[c - 1][s].is_empty() {
                used[c - 1] = true;
                perm.push(c);
                self.collect_perms(perm, used, out);
                perm.pop();
                used[c - 1] = false;
            }
        }
    }

    fn collect_picks(&self, perm: &[usize], picks: &mut Vec<usize>, s: usize, out: &mut Vec<Multipoint>) {
        if s == self.n {
            out.push(Multipoint { tine_forks: perm.to_vec(), picks: picks.clone() });
            return;
        }
        for &t in &self.picks[perm[s] - 1][s] {
            picks[s] = t;
            self.collect_picks(perm, picks, s + 1, out);
        }
    }

    /// The exponents `(a, b)` of a multipoint's monomial, by the fast layer.
    pub(crate) fn exponents(&mut self, mp: &Multipoint) -> Result<(i64, i64), PairingError> {
        let n = self.n as i64;
        // Puncture windings: each strand's leg crossings, plus the stitch
        // where it parks on (and later leaves) the axis, which completes a
        // half-turn around every puncture exactly when the strand arrived
        // from above.
        let mut half_total = 0i64;
        for s in 1..=self.n {
            let c = mp.tine_forks[s - 1];
            let t = mp.picks[s - 1];
            let dir = self.forks[c - 1].eight_events()[t].dir;
            half_total += self.punct_prefix[c - 1][t];
            if dir == Dir::Down {
                half_total += 2 * n - 4 * s as i64 + 2;
            }
        }
        if half_total.rem_euclid(2) != 0 {
            return Err(PairingError::ParityViolation);
        }
        let a = half_total / 2;

        // Strand pair windings. For tines i < j (strand i moves out first and
        // returns first): strand i's initial rise passes the parked basepoint
        // of fork c_j exactly when c_j is shallower; strand j's leg crossings
        // each pass the parked pick of tine i; the shared stay on the axis
        // ends with a half-turn exactly when strand j arrived from below; and
        // strand j's final plunge always passes the parked basepoint d_i.
        let mut b = 0i64;
        for i in 1..=self.n {
            let c_i = mp.tine_forks[i - 1];
            let t_i = mp.picks[i - 1];
            let pick_ref = EventRef { fork: c_i - 1, spot: Spot::Eight(t_i) };
            let pick_gap = 2 * i - 1;
            for j in i + 1..=self.n {
                let c_j = mp.tine_forks[j - 1];
                let t_j = mp.picks[j - 1];
                let dir_j = self.forks[c_j - 1].eight_events()[t_j].dir;
                let cross = self.cross_prefix(c_j - 1, pick_ref, pick_gap)[t_j];
                b += cross
                    + i64::from(c_j < c_i)
                    + i64::from(dir_j == Dir::Up)
                    - 1;
            }
        }
        Ok((a, b))
    }
}

/// Evaluates the intersection pairing of the transported fork surfaces
/// against the standard tine surfaces, as a Laurent polynomial in `q` and
/// `t`.
pub fn pairing(braid: &BraidWord) -> Result<LaurentQT, PairingError> {
    pairing_with_stats(braid).map(|(value, _)| value)
}

/// [`pairing`] plus enumeration statistics.
pub fn pairing_with_stats(braid: &BraidWord) -> Result<(LaurentQT, PairingStats), PairingError> {
    let mut engine = Engine::new(braid);
    let mps = engine.multipoints();
    let mut acc = LaurentQT::zero();
    let mut perms: Vec<Vec<usize>> = Vec::new();
    for mp in &mps {
        let (a, b) = engine.exponents(mp)?;
        let sign = multipoint_sign(engine.forks(), mp);
        acc.add_term(sign, 4 * a, b);
        if !perms.contains(&mp.tine_forks) {
            perms.push(mp.tine_forks.clone());
        }
    }
    let stats = PairingStats { multipoints: mps.len(), permutations: perms.len() };
    Ok((acc, stats))
}

// ---------------------------------------------------------------------------
// Geometric layer: explicit reference loops and half-turn counting.
// ---------------------------------------------------------------------------

fn ratio(num: i64, den: i64) -> Ratio<i64> {
    Ratio::new(num, den)
}

/// Assigns every axis crossing of every fork a distinct abscissa inside its
/// gap, ordered by the taut-position comparator.
fn slot_positions(forks: &[Fork]) -> HashMap<EventRef, Ratio<i64>> {
    let n = forks[0].n();
    let refs: Vec<&Fork> = forks.iter().collect();
    let mut out = HashMap::new();
    for gap in 0..=2 * n {
        let mut here: Vec<EventRef> = Vec::new();
        for (f, fork) in forks.iter().enumerate() {
            for (h, ev) in fork.handle_events().iter().enumerate() {
                if ev.gap == gap {
                    here.push(EventRef { fork: f, spot: Spot::Handle(h) });
                }
            }
            for (t, ev) in fork.eight_events().iter().enumerate() {
                if ev.gap == gap {
                    here.push(EventRef { fork: f, spot: Spot::Eight(t) });
                }
            }
        }
        here.sort_by(|&a, &b| compare_same_gap(&refs, a, b));
        let k = here.len() as i64;
        for (r, ev) in here.into_iter().enumerate() {
            out.insert(ev, Ratio::from_integer(gap as i64) + ratio(r as i64 + 1, k + 1));
        }
    }
    out
}

/// Basepoint `d_c`: below the axis under abscissa `2c - 1/2`, deeper for
/// larger `c`.
fn basepoint(n: usize, c: usize) -> Point {
    (
        ratio(4 * c as i64 - 1, 2),
        -Ratio::from_integer(1) - ratio(c as i64, n as i64 + 1),
    )
}

/// Builds the reference loop of a multipoint: strand `s` rises from the
/// basepoint of its fork, follows the fork's handle and figure-eight through
/// their axis slots to the chosen intersection point, parks there, and after
/// all strands have arrived returns down its tine to basepoint `d_s`. One
/// strand moves at a time; the rest repeat their position.
pub fn delta_loop(forks: &[Fork], mp: &Multipoint) -> ConfigLoop {
    let n = forks[0].n();
    let slots = slot_positions(forks);
    let chord_height = ratio(1, 4);
    let dip = ratio(1, 8);
    let mut strands: Vec<Vec<Point>> = (1..=n)
        .map(|s| vec![basepoint(n, mp.tine_forks[s - 1])])
        .collect();
    let push_move = |strands: &mut Vec<Vec<Point>>, s: usize, p: Point| {
        for (k, strand) in strands.iter_mut().enumerate() {
            let q = if k == s { p } else { *strand.last().expect("nonempty") };
            strand.push(q);
        }
    };

    // Outbound legs, strand by strand.
    for s in 1..=n {
        let c = mp.tine_forks[s - 1];
        let fork = &forks[c - 1];
        let corridor = -ratio(1, 2) - ratio(s as i64, 4 * n as i64 + 4);
        let (bx, _) = basepoint(n, c);
        // Rise above the deeper basepoints, then slide under the curves to
        // the first axis slot.
        push_move(&mut strands, s - 1, (bx, corridor));
        let leg: Vec<EventRef> = (0..fork.handle_events().len())
            .map(|h| EventRef { fork: c - 1, spot: Spot::Handle(h) })
            .chain((0..=mp.picks[s - 1]).map(|t| EventRef { fork: c - 1, spot: Spot::Eight(t) }))
            .collect();
        let first_x = slots[&leg[0]];
        push_move(&mut strands, s - 1, (first_x, corridor));
        push_move(&mut strands, s - 1, (first_x, Ratio::from_integer(0)));
        // Slot-to-slot chords: after an upward crossing the strand arcs over
        // the axis, after a downward one under it, ending parked on the axis
        // at the pick slot.
        for w in leg.windows(2) {
            let prev = match w[0].spot {
                Spot::Handle(h) => fork.handle_events()[h],
                Spot::Eight(t) => fork.eight_events()[t],
            };
            let x0 = slots[&w[0]];
            let x1 = slots[&w[1]];
            let apex_y = match prev.dir {
                Dir::Up => chord_height,
                Dir::Down => -chord_height,
            };
            push_move(&mut strands, s - 1, ((x0 + x1) / 2, apex_y));
            push_move(&mut strands, s - 1, (x1, Ratio::from_integer(0)));
        }
    }

    // Return legs: dip off the axis, slide along the tine gap, plunge to the
    // standard basepoint.
    for s in 1..=n {
        let c = mp.tine_forks[s - 1];
        let pick = EventRef { fork: c - 1, spot: Spot::Eight(mp.picks[s - 1]) };
        let x_pick = slots[&pick];
        let (hx, hy) = basepoint(n, s);
        push_move(&mut strands, s - 1, (x_pick, -dip));
        push_move(&mut strands, s - 1, (hx, -dip));
        push_move(&mut strands, s - 1, (hx, hy));
    }

    ConfigLoop { strands }
}

/// Counts signed half-turns of the difference `a - b` of two equal-length
/// piecewise-linear paths: each time the difference crosses the horizontal
/// axis, it contributes the sign of its abscissa times the crossing
/// direction. Stays exactly on the axis are allowed if the abscissa keeps a
/// constant sign (the paths' order is unambiguous); a vanishing difference is
/// a [`PairingError::Collision`].
pub fn half_winding(a: &[Point], b: &[Point]) -> Result<i64, PairingError> {
    assert_eq!(a.len(), b.len(), "paths must share the time scale");
    assert!(!a.is_empty());
    let d = |k: usize| (a[k].0 - b[k].0, a[k].1 - b[k].1);
    let sgn = |v: Ratio<i64>| -> i64 {
        match v.cmp(&Ratio::from_integer(0)) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    };
    let (x0, y0) = d(0);
    if sgn(y0) == 0 {
        if sgn(x0) == 0 {
            return Err(PairingError::Collision);
        }
        // Loops here start with all points separated vertically.
        panic!("pair difference starts on the axis");
    }
    let mut total = 0i64;
    let mut prev_sign = sgn(y0);
    // While the difference sits on the axis: its constant abscissa sign.
    let mut plateau: Option<i64> = None;
    for k in 1..a.len() {
        let (x1, y1) = d(k);
        let s1 = sgn(y1);
        if s1 == 0 {
            let xs = sgn(x1);
            if xs == 0 {
                return Err(PairingError::Collision);
            }
            match plateau {
                None => plateau = Some(xs),
                Some(p) if p != xs => return Err(PairingError::Collision),
                Some(_) => {}
            }
            continue;
        }
        if let Some(p) = plateau {
            // Leaving the axis: a half-turn completed iff the side changed.
            if s1 != prev_sign {
                total += p * s1;
            }
            plateau = None;
            prev_sign = s1;
            continue;
        }
        if s1 != prev_sign {
            // Transverse crossing strictly inside the segment: interpolate
            // the abscissa at the crossing instant.
            let (px, py) = d(k - 1);
            let lam = -py / (y1 - py);
            let xc = px + (x1 - px) * lam;
            let xs = sgn(xc);
            if xs == 0 {
                return Err(PairingError::Collision);
            }
            total += xs * s1;
            prev_sign = s1;
        }
    }
    assert!(plateau.is_none(), "pair difference ends on the axis");
    Ok(total)
}

/// Reads the monomial of a reference loop: `q` counts strand–puncture
/// windings (half the half-turn total), `t` counts strand–strand half-turns.
pub fn phi(n: usize, cfg: &ConfigLoop) -> Result<PhiValue, PairingError> {
    let len = cfg.strands[0].len();
    let mut q_half = 0i64;
    for strand in &cfg.strands {
        for m in 1..=2 * n as i64 {
            let puncture = vec![(Ratio::from_integer(m), Ratio::from_integer(0)); len];
            q_half += half_winding(strand, &puncture)?;
        }
    }
    if q_half.rem_euclid(2) != 0 {
        return Err(PairingError::ParityViolation);
    }
    let mut t_exp = 0i64;
    for i in 0..cfg.strands.len() {
        for j in i + 1..cfg.strands.len() {
            t_exp += half_winding(&cfg.strands[i], &cfg.strands[j])?;
        }
    }
    Ok(PhiValue { q_exp: q_half / 2, t_exp })
}
