//! Independent Jones-polynomial computation through the Kauffman bracket.
//!
//! A braid word acts on the Temperley-Lieb module spanned by planar
//! non-crossing perfect matchings of the 2n plat endpoints: each generator
//! resolves as sigma_k = A + A^(-1) U_k, with closed loops contributing
//! delta = -A^2 - A^(-2). Pairing the folded state against the caps gives the
//! bracket of the plat closure; the writhe correction and the substitution
//! A = q^(-1/4) give the Jones polynomial. This route never touches the
//! intersection-pairing engine, so the two can check each other.

use crate::algebra::{divide_by_minus_q_half_sum, LaurentQT};
use crate::braid::{orient_plat, writhe, BraidError, BraidWord};
use std::collections::BTreeMap;

/// Sparse Laurent polynomial in the single Kauffman variable A.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentA {
    terms: BTreeMap<i64, i64>,
}

impl LaurentA {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The monomial `coeff * A^exp`.
    pub fn monomial(coeff: i64, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert(exp, coeff);
        }
        Self { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (coeff, exp) in iter {
            p.add_term(coeff, exp);
        }
        p
    }

    pub fn add_term(&mut self, coeff: i64, exp: i64) {
        if coeff == 0 {
            return;
        }
        let slot = self.terms.entry(exp).or_insert(0);
        *slot += coeff;
        if *slot == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&e, &c) in &other.terms {
            out.add_term(c, e);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&e1, &c1) in &self.terms {
            for (&e2, &c2) in &other.terms {
                out.add_term(c1 * c2, e1 + e2);
            }
        }
        out
    }

    /// Converts to the shared format under A = q^(-1/4): A^e becomes q4 = -e.
    pub fn to_qt(&self) -> LaurentQT {
        LaurentQT::from_terms(self.terms.iter().map(|(&e, &c)| (c, -e, 0)))
    }
}

/// The loop value delta = -A^2 - A^(-2).
fn delta() -> LaurentA {
    LaurentA::from_terms([(-1, 2), (-1, -2)])
}

/// A planar non-crossing perfect matching of points 0..2n-1, as a partner
/// table: `partner[x]` is matched with `x`.
type Matching = Vec<usize>;

fn all_cups(n: usize) -> Matching {
    let mut m = vec![0; 2 * n];
    for i in 0..n {
        m[2 * i] = 2 * i + 1;
        m[2 * i + 1] = 2 * i;
    }
    m
}

/// State of the fold: a sparse linear combination of matchings.
pub type TlState = BTreeMap<Matching, LaurentA>;

fn state_add(state: &mut TlState, m: Matching, coeff: LaurentA) {
    if coeff.is_zero() {
        return;
    }
    let entry = state.entry(m.clone()).or_insert_with(LaurentA::zero);
    *entry = entry.add(&coeff);
    if entry.is_zero() {
        state.remove(&m);
    }
}

/// Applies the cup-cap element U_k (1-based k) to a single matching, returning
/// the image matching and an extra factor of delta when a loop closes.
fn apply_u(m: &Matching, k: usize) -> (Matching, bool) {
    let a = k - 1;
    let b = k;
    if m[a] == b {
        // U_k on a diagram already cupped at (a, b) closes one loop.
        (m.clone(), true)
    } else {
        let x = m[a];
        let y = m[b];
        let mut out = m.clone();
        out[a] = b;
        out[b] = a;
        out[x] = y;
        out[y] = x;
        (out, false)
    }
}

/// Applies one braid letter to the state: sigma_k resolves as
/// A + A^(-1) U_k, its inverse as A^(-1) + A U_k.
pub fn tl_apply_generator(state: &TlState, k: usize, positive: bool) -> TlState {
    let d = delta();
    let (id_coeff, u_coeff) = if positive {
        (LaurentA::monomial(1, 1), LaurentA::monomial(1, -1))
    } else {
        (LaurentA::monomial(1, -1), LaurentA::monomial(1, 1))
    };
    let mut out = TlState::new();
    for (m, c) in state {
        state_add(&mut out, m.clone(), c.mul(&id_coeff));
        let (um, looped) = apply_u(m, k);
        let mut uc = c.mul(&u_coeff);
        if looped {
            uc = uc.mul(&d);
        }
        state_add(&mut out, um, uc);
    }
    out
}

/// Number of closed loops formed by gluing a matching against the caps
/// joining (2i, 2i+1).
fn loops_against_caps(m: &Matching) -> usize {
    let len = m.len();
    let mut seen = vec![false; len];
    let mut loops = 0;
    for start in 0..len {
        if seen[start] {
            continue;
        }
        loops += 1;
        let mut x = start;
        loop {
            seen[x] = true;
            let via_match = m[x];
            seen[via_match] = true;
            let via_cap = via_match ^ 1;
            if via_cap == start {
                break;
            }
            x = via_cap;
        }
    }
    loops
}

/// Kauffman bracket of the plat closure: fold the word over the all-cups
/// state, then close against the caps, one delta factor per loop. The empty
/// diagram counts as 1, so the unknot evaluates to delta.
pub fn bracket_plat_oracle(braid: &BraidWord) -> LaurentA {
    let mut state = TlState::new();
    state.insert(all_cups(braid.n), LaurentA::monomial(1, 0));
    for &letter in &braid.letters {
        state = tl_apply_generator(&state, letter.unsigned_abs() as usize, letter > 0);
    }
    let d = delta();
    let mut total = LaurentA::zero();
    for (m, c) in &state {
        let mut term = c.clone();
        for _ in 0..loops_against_caps(m) {
            term = term.mul(&d);
        }
        total = total.add(&term);
    }
    total
}

/// Jones polynomial of the plat closure via the bracket:
/// V = (-A)^(-3w) * bracket / delta, with A = q^(-1/4).
pub fn jones_oracle(braid: &BraidWord, choices: &[bool]) -> Result<LaurentQT, BraidError> {
    let down = orient_plat(braid, choices)?;
    let w = writhe(braid, &down);
    let bracket = bracket_plat_oracle(braid);
    // (-A)^(-3w) = (-1)^w A^(-3w).
    let sign = if w.rem_euclid(2) == 0 { 1 } else { -1 };
    let corrected = bracket.mul(&LaurentA::monomial(sign, -3 * w));
    // delta maps to -q^(1/2) - q^(-1/2) under A = q^(-1/4); a closed diagram
    // always carries at least one loop factor, so the division is exact.
    let v = divide_by_minus_q_half_sum(&corrected.to_qt())
        .expect("bracket of a closed diagram is divisible by the loop value");
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{all_orientations, plat_components};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn word(n: usize, letters: &[i64]) -> BraidWord {
        BraidWord::new(n, letters.to_vec()).unwrap()
    }

    /// All non-crossing perfect matchings of 2n points: the first point pairs
    /// with an odd-offset partner, splitting the rest into an inside and an
    /// outside matched independently.
    fn matchings(n: usize) -> Vec<Matching> {
        fn pairings(points: &[usize]) -> Vec<Vec<(usize, usize)>> {
            if points.is_empty() {
                return vec![Vec::new()];
            }
            let mut out = Vec::new();
            for idx in (1..points.len()).step_by(2) {
                for inside in pairings(&points[1..idx]) {
                    for outside in pairings(&points[idx + 1..]) {
                        let mut pairs = vec![(points[0], points[idx])];
                        pairs.extend(&inside);
                        pairs.extend(&outside);
                        out.push(pairs);
                    }
                }
            }
            out
        }
        let points: Vec<usize> = (0..2 * n).collect();
        pairings(&points)
            .into_iter()
            .map(|pairs| {
                let mut m = vec![0; 2 * n];
                for (a, b) in pairs {
                    m[a] = b;
                    m[b] = a;
                }
                m
            })
            .collect()
    }

    fn apply_u_state(state: &TlState, k: usize) -> TlState {
        let d = delta();
        let mut out = TlState::new();
        for (m, c) in state {
            let (um, looped) = apply_u(m, k);
            let uc = if looped { c.mul(&d) } else { c.clone() };
            state_add(&mut out, um, uc);
        }
        out
    }

    fn singleton(m: Matching) -> TlState {
        let mut s = TlState::new();
        s.insert(m, LaurentA::monomial(1, 0));
        s
    }

    fn scale(state: &TlState, f: &LaurentA) -> TlState {
        state
            .iter()
            .map(|(m, c)| (m.clone(), c.mul(f)))
            .collect()
    }

    #[test]
    fn catalan_counts() {
        assert_eq!(matchings(1).len(), 1);
        assert_eq!(matchings(2).len(), 2);
        assert_eq!(matchings(3).len(), 5);
    }

    #[test]
    fn tl_relations_on_basis() {
        // U_k^2 = delta U_k and U_k U_{k+-1} U_k = U_k on every basis diagram.
        for n in [2usize, 3] {
            for m in matchings(n) {
                for k in 1..2 * n {
                    let s = singleton(m.clone());
                    let uk = apply_u_state(&s, k);
                    let ukk = apply_u_state(&uk, k);
                    assert_eq!(ukk, scale(&uk, &delta()), "U_{k}^2 = delta U_{k}");
                    for adj in [k.wrapping_sub(1), k + 1] {
                        if adj == 0 || adj >= 2 * n {
                            continue;
                        }
                        let aba = apply_u_state(&apply_u_state(&uk, adj), k);
                        assert_eq!(aba, uk, "U_{k} U_{adj} U_{k} = U_{k}");
                    }
                }
            }
        }
    }

    #[test]
    fn generator_inverse_round_trip() {
        let s = singleton(all_cups(2));
        let forward = tl_apply_generator(&s, 2, true);
        let back = tl_apply_generator(&forward, 2, false);
        assert_eq!(back, s);
    }

    #[test]
    fn bracket_frozen_values() {
        let d = delta();
        // One loop for the 2-strand identity plat.
        assert_eq!(bracket_plat_oracle(&word(1, &[])), d);
        // Two loops for the 4-strand identity plat.
        assert_eq!(bracket_plat_oracle(&word(2, &[])), d.mul(&d));
        // Single crossing resolves to (A + A^(-1) delta) cup = -A^(-3) cup.
        assert_eq!(
            bracket_plat_oracle(&word(1, &[1])),
            LaurentA::monomial(-1, -3).mul(&d)
        );
    }

    #[test]
    fn kauffman_skein_on_random_words() {
        // A<L+> - A^(-1)<L-> = (A^2 - A^(-2))<L0> with the crossing inserted
        // at an arbitrary position; L0 is the word without the letter.
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..40 {
            let n = rng.gen_range(1..=3usize);
            let len = rng.gen_range(0..=6usize);
            let letters: Vec<i64> = (0..len)
                .map(|_| {
                    let k = rng.gen_range(1..=(2 * n - 1)) as i64;
                    if rng.gen_bool(0.5) {
                        k
                    } else {
                        -k
                    }
                })
                .collect();
            let pos = rng.gen_range(0..=len);
            let k = rng.gen_range(1..=(2 * n - 1)) as i64;
            let mut plus = letters.clone();
            plus.insert(pos, k);
            let mut minus = letters.clone();
            minus.insert(pos, -k);
            let b0 = bracket_plat_oracle(&word(n, &letters));
            let bp = bracket_plat_oracle(&word(n, &plus));
            let bm = bracket_plat_oracle(&word(n, &minus));
            let lhs = bp
                .mul(&LaurentA::monomial(1, 1))
                .add(&bm.mul(&LaurentA::monomial(-1, -1)));
            let rhs = b0.mul(&LaurentA::from_terms([(1, 2), (-1, -2)]));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn jones_frozen_values() {
        // Unknot from one crossing: writhe correction cancels the bracket.
        let v = jones_oracle(&word(1, &[1]), &[false]).unwrap();
        assert_eq!(v, LaurentQT::one());
        // Two-component unlink.
        let v = jones_oracle(&word(2, &[]), &[false, false]).unwrap();
        assert_eq!(v, LaurentQT::from_terms([(-1, -2, 0), (-1, 2, 0)]));
        // Trefoil from three parallel crossings. Under the fixed conventions
        // (sigma = A + A^(-1)U, A = q^(-1/4), writhe +3 here) the value is
        // q + q^3 - q^4; the q <-> q^(-1) mirror is the other chirality.
        let v = jones_oracle(&word(2, &[2, 2, 2]), &[false]).unwrap();
        assert_eq!(
            v,
            LaurentQT::from_terms([(1, 4, 0), (1, 12, 0), (-1, 16, 0)])
        );
    }

    #[test]
    fn jones_mirror_symmetry() {
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..20 {
            let n = rng.gen_range(1..=2usize);
            let len = rng.gen_range(0..=6usize);
            let letters: Vec<i64> = (0..len)
                .map(|_| {
                    let k = rng.gen_range(1..=(2 * n - 1)) as i64;
                    if rng.gen_bool(0.5) {
                        k
                    } else {
                        -k
                    }
                })
                .collect();
            let b = word(n, &letters);
            let comps = plat_components(&b).count;
            for choices in all_orientations(comps) {
                let v = jones_oracle(&b, &choices).unwrap();
                let vm = jones_oracle(&b.mirror(), &choices).unwrap();
                let mirrored =
                    LaurentQT::from_terms(v.terms().map(|(c, q4, tb)| (c, -q4, tb)));
                assert_eq!(vm, mirrored);
            }
        }
    }

    #[test]
    fn oracle_orientation_failure_propagates() {
        assert_eq!(
            jones_oracle(&word(1, &[]), &[]),
            Err(BraidError::WrongChoiceCount { expected: 1, got: 0 })
        );
    }
}
