//! Exact Laurent-polynomial arithmetic in the variables `q^(1/4)` and `t`.
//!
//! Every value is a finite integer combination of monomials `c * q^(q4/4) * t^tb`.
//! Quarter powers of `q` are tracked as the integer `q4`, so all arithmetic is
//! exact; no floating point or fraction reduction is ever needed internally.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Errors produced by polynomial normalization.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    /// Division by `-q^(1/2) - q^(-1/2)` left a nonzero remainder.
    #[error("division by -q^(1/2) - q^(-1/2) left a remainder; the input is not a multiple")]
    DivisionFailed,
}

/// A Laurent polynomial in `q^(1/4)` and `t` with integer coefficients.
///
/// Keys are `(q4, tb)`: the monomial `q^(q4/4) * t^tb`. The map never stores
/// zero coefficients, so equality of maps is equality of polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct LaurentQT {
    terms: BTreeMap<(i64, i64), i64>,
}

impl LaurentQT {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Self::default()
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        Self::monomial(1, 0, 0)
    }

    /// The single monomial `coeff * q^(q4/4) * t^tb`.
    pub fn monomial(coeff: i64, q4: i64, tb: i64) -> Self {
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert((q4, tb), coeff);
        }
        Self { terms }
    }

    /// Builds a polynomial from `(coeff, q4, tb)` triples, summing duplicates.
    pub fn from_terms<I: IntoIterator<Item = (i64, i64, i64)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (coeff, q4, tb) in iter {
            p.add_term(coeff, q4, tb);
        }
        p
    }

    /// Adds `coeff * q^(q4/4) * t^tb` in place.
    pub fn add_term(&mut self, coeff: i64, q4: i64, tb: i64) {
        if coeff == 0 {
            return;
        }
        let slot = self.terms.entry((q4, tb)).or_insert(0);
        *slot += coeff;
        if *slot == 0 {
            self.terms.remove(&(q4, tb));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of nonzero monomials.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms as `(coeff, q4, tb)` triples in ascending `(q4, tb)` order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64, i64)> + '_ {
        self.terms.iter().map(|(&(q4, tb), &c)| (c, q4, tb))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (c, q4, tb) in other.terms() {
            out.add_term(c, q4, tb);
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero();
        for (c, q4, tb) in self.terms() {
            out.add_term(-c, q4, tb);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (c1, q1, t1) in self.terms() {
            for (c2, q2, t2) in other.terms() {
                out.add_term(c1 * c2, q1 + q2, t1 + t2);
            }
        }
        out
    }

    /// Multiplies by the monomial `coeff * q^(q4/4) * t^tb`.
    pub fn mul_monomial(&self, coeff: i64, q4: i64, tb: i64) -> Self {
        let mut out = Self::zero();
        for (c, a, b) in self.terms() {
            out.add_term(c * coeff, a + q4, b + tb);
        }
        out
    }

    /// True when no monomial carries a power of `t`.
    pub fn is_t_free(&self) -> bool {
        self.terms.keys().all(|&(_, tb)| tb == 0)
    }
}

/// Substitutes `t = -q^(-1)`: each `c q^(q4/4) t^b` becomes `c (-1)^b q^(q4/4 - b)`.
pub fn specialize_t(p: &LaurentQT) -> LaurentQT {
    let mut out = LaurentQT::zero();
    for (c, q4, tb) in p.terms() {
        let sign = if tb.rem_euclid(2) == 0 { 1 } else { -1 };
        out.add_term(c * sign, q4 - 4 * tb, 0);
    }
    out
}

/// Divides exactly by `-q^(1/2) - q^(-1/2)`, failing if a remainder is left.
pub fn divide_by_minus_q_half_sum(p: &LaurentQT) -> Result<LaurentQT, AlgebraError> {
    // Divisor D = -q^(2/4) - q^(-2/4); leading term (q4 = 2) has coefficient -1,
    // so every quotient coefficient is an exact integer.
    let mut rem = p.clone();
    let mut quot = LaurentQT::zero();
    // Each step strictly lowers the remainder's maximal key, and exact inputs
    // terminate at zero; the cap catches inexact inputs instead of looping.
    let span: i64 = match (rem.terms.keys().next(), rem.terms.keys().last()) {
        (Some(&(lo, _)), Some(&(hi, _))) => hi - lo,
        _ => return Ok(LaurentQT::zero()),
    };
    let cap = (span / 4 + 2) as usize * (p.term_count() + 1) + 16;
    for _ in 0..cap {
        let (&(q4, tb), &c) = match rem.terms.iter().next_back() {
            Some(kv) => kv,
            None => return Ok(quot),
        };
        let qc = -c; // c / (-1)
        quot.add_term(qc, q4 - 2, tb);
        // rem -= qc * (-q^(2/4) - q^(-2/4)) shifted
        rem.add_term(qc, q4, tb);
        rem.add_term(qc, q4 - 4, tb);
    }
    if rem.is_zero() {
        Ok(quot)
    } else {
        Err(AlgebraError::DivisionFailed)
    }
}

/// Applies the full normalization taking a specialized pairing value to the
/// link invariant: multiply by `(-q^(3/4))^writhe * (q^(-1/4))^(exp_sum + 2n)`
/// and divide exactly by `-q^(1/2) - q^(-1/2)`.
pub fn normalize_to_jones(
    p: &LaurentQT,
    writhe: i64,
    exp_sum: i64,
    n: usize,
) -> Result<LaurentQT, AlgebraError> {
    let sign = if writhe.rem_euclid(2) == 0 { 1 } else { -1 };
    let q4 = 3 * writhe - (exp_sum + 2 * n as i64);
    let shifted = p.mul_monomial(sign, q4, 0);
    divide_by_minus_q_half_sum(&shifted)
}

/// Rescales a specialized pairing value to the bracket normalization:
/// multiply by `q^(-(exp_sum + 2n)/4)`.
pub fn kauffman_normalize(p: &LaurentQT, exp_sum: i64, n: usize) -> LaurentQT {
    p.mul_monomial(1, -(exp_sum + 2 * n as i64), 0)
}

fn fmt_exponent(num: i64) -> String {
    // num is in quarter units; renders the reduced fraction num/4.
    let g = num_gcd(num.unsigned_abs(), 4);
    let (n, d) = (num / g as i64, 4 / g as i64);
    if d == 1 {
        format!("{n}")
    } else {
        format!("{n}/{d}")
    }
}

fn num_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a.max(1)
}

fn fmt_var(out: &mut String, printed: &mut bool, var: &str, exp_num: i64, unit: i64) {
    // unit: exponent denominator basis (4 for q, 1 for t).
    if exp_num == 0 {
        return;
    }
    if exp_num == unit {
        out.push_str(var);
    } else {
        out.push_str(var);
        out.push_str("^(");
        out.push_str(&fmt_exponent(exp_num * (4 / unit)));
        out.push(')');
    }
    *printed = true;
}

impl fmt::Display for LaurentQT {
    /// Canonical text form: terms ascending in `(q4, tb)`, exponents as reduced
    /// fractions, e.g. `-q^(-4) + q^(-3) + q^(-1)` or `1 + 2q + q^(2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (c, q4, tb) in self.terms() {
            let mag = c.unsigned_abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut body = String::new();
            let mut printed = false;
            fmt_var(&mut body, &mut printed, "q", q4, 4);
            fmt_var(&mut body, &mut printed, "t", tb, 1);
            if mag != 1 || !printed {
                write!(f, "{mag}")?;
            }
            write!(f, "{body}")?;
        }
        Ok(())
    }
}
