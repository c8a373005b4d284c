//! Braid words on an even number of strands and their plat-closure bookkeeping.
//!
//! A word lives in the braid group on `2n` strands. Letters are nonzero
//! integers: `k` is the positive generator crossing strands `k` and `k+1`
//! (1-based), `-k` its inverse. Words read top to bottom; the first letter is
//! adjacent to the caps. The plat closure caps top endpoints `{2i-1, 2i}` and
//! cups bottom endpoints `{2i-1, 2i}` (1-based).

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors from braid parsing and orientation.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum BraidError {
    /// A token in the word text was not a signed integer.
    #[error("bad token {0:?}: expected a signed integer generator index")]
    BadToken(String),
    /// A generator index was zero or outside `1..=2n-1`.
    #[error("generator {0} out of range for {1} strands (need 1 <= |k| <= {})", .1 - 1)]
    OutOfRange(i64, usize),
    /// The orientation choice vector does not match the component count.
    #[error("expected {expected} orientation choices, got {got}")]
    WrongChoiceCount { expected: usize, got: usize },
}

/// A braid word on `2n` strands.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidWord {
    /// Half the strand count: the plat closure has `n` caps and `n` cups.
    pub n: usize,
    /// Generator letters, top to bottom; `k > 0` positive, `k < 0` inverse.
    pub letters: Vec<i64>,
}

impl BraidWord {
    /// Builds a word after range-checking every letter.
    pub fn new(n: usize, letters: Vec<i64>) -> Result<Self, BraidError> {
        let strands = 2 * n;
        for &k in &letters {
            if k == 0 || k.unsigned_abs() as usize >= strands {
                return Err(BraidError::OutOfRange(k, strands));
            }
        }
        Ok(Self { n, letters })
    }

    /// The identity word on `2n` strands.
    pub fn identity(n: usize) -> Self {
        Self { n, letters: Vec::new() }
    }

    /// Number of strands, `2n`.
    pub fn strands(&self) -> usize {
        2 * self.n
    }

    /// Sum of letter signs; the exponent sum of the word.
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|&k| k.signum()).sum()
    }

    /// The induced permutation: `perm[j]` is the bottom position reached by
    /// the strand entering at top position `j` (0-based). Letters act in word
    /// order, so the first letter swaps first.
    pub fn permutation(&self) -> Vec<usize> {
        let mut pos: Vec<usize> = (0..self.strands()).collect();
        for &k in &self.letters {
            let a = k.unsigned_abs() as usize - 1;
            for p in pos.iter_mut() {
                if *p == a {
                    *p = a + 1;
                } else if *p == a + 1 {
                    *p = a;
                }
            }
        }
        pos
    }

    /// Mirror image: every crossing is reversed.
    pub fn mirror(&self) -> Self {
        Self {
            n: self.n,
            letters: self.letters.iter().map(|&k| -k).collect(),
        }
    }

    /// Prepends a word (cap side); both words must share the strand count.
    pub fn prepend(&self, g: &BraidWord) -> Self {
        assert_eq!(self.n, g.n, "strand counts must match");
        let mut letters = g.letters.clone();
        letters.extend_from_slice(&self.letters);
        Self { n: self.n, letters }
    }

    /// Appends a word (cup side); both words must share the strand count.
    pub fn append(&self, h: &BraidWord) -> Self {
        assert_eq!(self.n, h.n, "strand counts must match");
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&h.letters);
        Self { n: self.n, letters }
    }

    /// Stability move: view the word inside the group on `2n + 2` strands and
    /// prepend the generator crossing strands `2n` and `2n + 1`.
    pub fn stabilize(&self) -> Self {
        let mut letters = vec![2 * self.n as i64];
        letters.extend_from_slice(&self.letters);
        Self { n: self.n + 1, letters }
    }
}

/// Parses a braid word from text: signed integers separated by commas and/or
/// whitespace, with optional surrounding brackets. The empty string is the
/// identity word.
pub fn parse_braid(text: &str, n: usize) -> Result<BraidWord, BraidError> {
    let trimmed = text.trim();
    let inner = trimmed
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .unwrap_or(trimmed);
    let mut letters = Vec::new();
    for tok in inner.split(|c: char| c == ',' || c.is_whitespace()) {
        if tok.is_empty() {
            continue;
        }
        let k: i64 = tok
            .parse()
            .map_err(|_| BraidError::BadToken(tok.to_string()))?;
        letters.push(k);
    }
    BraidWord::new(n, letters)
}

/// Connected components of the plat closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlatComponents {
    /// Number of link components.
    pub count: usize,
    /// Component id of each top endpoint, numbered by first appearance when
    /// scanning top endpoints left to right.
    pub top_component: Vec<usize>,
}

/// Computes the link components of the plat closure of `braid`.
pub fn plat_components(braid: &BraidWord) -> PlatComponents {
    let s = braid.strands();
    let perm = braid.permutation();
    // Union-find over top endpoints: caps join 2i, 2i+1 directly; a cup at the
    // bottom joins the two top endpoints whose strands reach its feet.
    let mut parent: Vec<usize> = (0..s).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let union = |parent: &mut Vec<usize>, a: usize, b: usize| {
        let ra = find(parent, a);
        let rb = find(parent, b);
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    };
    let mut bottom_owner = vec![usize::MAX; s];
    for (top, &bot) in perm.iter().enumerate() {
        bottom_owner[bot] = top;
    }
    for i in 0..braid.n {
        union(&mut parent, 2 * i, 2 * i + 1);
        union(&mut parent, bottom_owner[2 * i], bottom_owner[2 * i + 1]);
    }
    let mut ids = vec![usize::MAX; s];
    let mut count = 0;
    let mut top_component = Vec::with_capacity(s);
    for e in 0..s {
        let r = find(&mut parent, e);
        if ids[r] == usize::MAX {
            ids[r] = count;
            count += 1;
        }
        top_component.push(ids[r]);
    }
    PlatComponents { count, top_component }
}

/// Assigns a direction to every top endpoint from one choice bit per link
/// component: with bit `false` the strand at the component's smallest top
/// endpoint runs toward the bottom. Returns `down[j] = true` when the strand
/// at top endpoint `j` is directed downward.
pub fn orient_plat(braid: &BraidWord, choices: &[bool]) -> Result<Vec<bool>, BraidError> {
    let comps = plat_components(braid);
    if choices.len() != comps.count {
        return Err(BraidError::WrongChoiceCount {
            expected: comps.count,
            got: choices.len(),
        });
    }
    let s = braid.strands();
    let perm = braid.permutation();
    let mut bottom_owner = vec![usize::MAX; s];
    for (top, &bot) in perm.iter().enumerate() {
        bottom_owner[bot] = top;
    }
    // Walk each component cycle, alternating direction through caps and cups.
    let mut down = vec![None::<bool>; s];
    let mut anchor_of = vec![usize::MAX; comps.count];
    for e in 0..s {
        let c = comps.top_component[e];
        if anchor_of[c] == usize::MAX {
            anchor_of[c] = e;
        }
    }
    for (c, &anchor) in anchor_of.iter().enumerate() {
        let mut e = anchor;
        let d = !choices[c];
        loop {
            if down[e].is_some() {
                break;
            }
            down[e] = Some(d);
            // Through the cap the partner strand runs the opposite way.
            let cap_partner = e ^ 1;
            down[cap_partner] = Some(!d);
            // Follow the partner strand to the bottom, through its cup, and
            // back up to the next top endpoint. Direction flips once at the
            // cap and once at the cup, so the entry direction repeats.
            let bot = perm[cap_partner];
            e = bottom_owner[bot ^ 1];
        }
    }
    Ok(down.into_iter().map(|d| d.expect("cycle covers component")).collect())
}

/// Writhe of the oriented plat diagram: sweep top to bottom, tracking the
/// direction occupying each position; a crossing contributes its letter sign
/// when the two strands run the same way and the opposite sign otherwise.
pub fn writhe(braid: &BraidWord, top_down: &[bool]) -> i64 {
    assert_eq!(top_down.len(), braid.strands());
    let mut dir = top_down.to_vec();
    let mut w = 0;
    for &k in &braid.letters {
        let a = k.unsigned_abs() as usize - 1;
        let eta = if dir[a] == dir[a + 1] { 1 } else { -1 };
        w += k.signum() * eta;
        dir.swap(a, a + 1);
    }
    w
}

/// Generating set of the subgroup of braids that extend to the handlebody on
/// either side of the plat: the first-strand twist, the leftmost cap-sliding
/// word when `n >= 2`, and one cap-transposition word per adjacent cap pair.
pub fn birman_generators(n: usize) -> Vec<BraidWord> {
    let mut gens = vec![BraidWord::new(n, vec![1]).expect("in range")];
    if n >= 2 {
        gens.push(BraidWord::new(n, vec![2, 1, 1, 2]).expect("in range"));
    }
    for i in 1..n {
        let k = 2 * i as i64;
        gens.push(BraidWord::new(n, vec![k, k - 1, k + 1, k]).expect("in range"));
    }
    gens
}

/// Enumerates all `2^count` orientation choice vectors.
pub fn all_orientations(count: usize) -> Vec<Vec<bool>> {
    (0..1usize << count)
        .map(|mask| (0..count).map(|c| mask >> c & 1 == 1).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(n: usize, letters: &[i64]) -> BraidWord {
        BraidWord::new(n, letters.to_vec()).unwrap()
    }

    #[test]
    fn parse_accepts_commas_whitespace_brackets() {
        assert_eq!(parse_braid("2, -1 3", 2).unwrap().letters, vec![2, -1, 3]);
        assert_eq!(parse_braid("[2,2,2]", 2).unwrap().letters, vec![2, 2, 2]);
        assert_eq!(parse_braid("", 1).unwrap().letters, Vec::<i64>::new());
    }

    #[test]
    fn parse_rejects_bad_tokens_and_ranges() {
        assert_eq!(
            parse_braid("2,x", 2),
            Err(BraidError::BadToken("x".into()))
        );
        assert_eq!(parse_braid("4", 2), Err(BraidError::OutOfRange(4, 4)));
        assert_eq!(parse_braid("0", 2), Err(BraidError::OutOfRange(0, 4)));
        assert_eq!(parse_braid("-2", 1), Err(BraidError::OutOfRange(-2, 2)));
    }

    #[test]
    fn permutation_composes_in_word_order() {
        // sigma_2 three times on 4 strands is a single swap of positions 1, 2.
        assert_eq!(word(2, &[2, 2, 2]).permutation(), vec![0, 2, 1, 3]);
        // sigma_1 then sigma_2: top 0 -> 1 -> 2.
        assert_eq!(word(2, &[1, 2]).permutation(), vec![2, 0, 1, 3]);
    }

    #[test]
    fn component_counts() {
        assert_eq!(plat_components(&word(1, &[])).count, 1);
        assert_eq!(plat_components(&word(2, &[2, 2, 2])).count, 1);
        assert_eq!(plat_components(&word(2, &[2, 2])).count, 2);
        assert_eq!(plat_components(&word(2, &[])).count, 2);
    }

    #[test]
    fn orientation_propagates_around_components() {
        // Trefoil plat: one component; the default choice points endpoint 0 down.
        let b = word(2, &[2, 2, 2]);
        let down = orient_plat(&b, &[false]).unwrap();
        assert_eq!(down, vec![true, false, false, true]);
        assert_eq!(
            orient_plat(&b, &[false, false]),
            Err(BraidError::WrongChoiceCount { expected: 1, got: 2 })
        );
    }

    #[test]
    fn writhe_frozen_values() {
        // Single positive crossing under the caps: the two strands of one
        // component run opposite ways, so the writhe is -1.
        let b = word(1, &[1]);
        let down = orient_plat(&b, &[false]).unwrap();
        assert_eq!(writhe(&b, &down), -1);

        // Trefoil plat from three parallel crossings: writhe +3.
        let t = word(2, &[2, 2, 2]);
        let down = orient_plat(&t, &[false]).unwrap();
        assert_eq!(writhe(&t, &down), 3);

        // Hopf link plat: -2 with aligned choices, +2 with opposed ones.
        let h = word(2, &[2, 2]);
        let d00 = orient_plat(&h, &[false, false]).unwrap();
        assert_eq!(writhe(&h, &d00), -2);
        let d01 = orient_plat(&h, &[false, true]).unwrap();
        assert_eq!(writhe(&h, &d01), 2);
    }

    #[test]
    fn stabilize_and_mirror() {
        let b = word(2, &[2, -3]);
        let s = b.stabilize();
        assert_eq!(s.n, 3);
        assert_eq!(s.letters, vec![4, 2, -3]);
        assert_eq!(b.mirror().letters, vec![-2, 3]);
        // The added crossing ties the new strand pair into the old link, so
        // stabilization preserves the component count.
        assert_eq!(plat_components(&s).count, plat_components(&b).count);
    }

    #[test]
    fn birman_generator_shapes() {
        let gens = birman_generators(3);
        let words: Vec<Vec<i64>> = gens.iter().map(|g| g.letters.clone()).collect();
        assert!(words.contains(&vec![1]));
        assert!(words.contains(&vec![2, 1, 1, 2]));
        assert!(words.contains(&vec![2, 1, 3, 2]));
        assert!(words.contains(&vec![4, 3, 5, 4]));
    }

    #[test]
    fn exponent_sum_counts_signs() {
        assert_eq!(word(2, &[2, -1, 3, 3]).exponent_sum(), 2);
    }
}
