//! Exact counts of unlabelled trees and the growth constant they define.
//!
//! Rooted counts a_k satisfy the Euler-transform recurrence
//!
//! ```text
//! n * a_{n+1} = sum_{k=1..n} s_k * a_{n-k+1},   s_k = sum_{d | k} d * a_d
//! ```
//!
//! and free counts follow from rooted ones by the dissimilarity identity
//!
//! ```text
//! t_n = a_n - (1/2) * ( sum_{i=1..n-1} a_i * a_{n-i} - [n even] * a_{n/2} )
//! ```
//!
//! a_k grows like alpha^k up to polynomial factors; `alpha_estimate` exposes
//! the two standard finite approximations and `choose_k` finds where the
//! k-th root estimate clears a requested threshold.

use num_bigint::{BigInt, BigUint};
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::numeric::{nth_root_decimal, pow10, ratio_decimal, Decimal};

pub type BigRational = Ratio<BigInt>;

/// Default ceiling on table size; the recurrence is quadratic and a_n has
/// ~n/2 digits, so this keeps single calls in the seconds range.
pub const DEFAULT_COUNT_CAP: usize = 100_000;
/// Default ceiling on the threshold search in [`choose_k`].
pub const DEFAULT_CHOOSE_K_CAP: usize = 5_000;
/// Default number of significant decimal digits in growth estimates.
pub const DEFAULT_ALPHA_DIGITS: u32 = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CountError {
    #[error("count table for n = {n} exceeds the configured cap {cap}")]
    ResourceLimit { n: usize, cap: usize },
    #[error("index {n} out of range (counts start at 1)")]
    IndexOutOfRange { n: usize },
    #[error("internal parity violation at n = {n}: dissimilarity sum is odd")]
    ParityViolation { n: usize },
    #[error("no k <= {cap} satisfies the growth threshold for epsilon = {epsilon}")]
    SearchExhausted { epsilon: String, cap: usize },
    #[error("epsilon must satisfy 0 < epsilon < alpha_ref, got {epsilon}")]
    BadEpsilon { epsilon: String },
}

/// Reference values for the tree growth constants, as exact rationals.
/// `alpha_ref` is a 4-digit upper bound on the rooted growth constant
/// (alpha = 2.9557652856...), so certificates stated against `alpha_ref`
/// imply the same statement for alpha itself.
pub struct OtterConstants {
    pub alpha_ref: BigRational,
    pub c_ref: BigRational,
    pub c_prime_ref: BigRational,
}

impl OtterConstants {
    pub fn reference() -> OtterConstants {
        let ratio = |p: i64, q: i64| BigRational::new(BigInt::from(p), BigInt::from(q));
        OtterConstants {
            alpha_ref: ratio(2956, 1000),
            c_ref: ratio(535, 1000),
            c_prime_ref: ratio(44, 100),
        }
    }
}

pub fn alpha_ref() -> BigRational {
    OtterConstants::reference().alpha_ref
}

/// Incrementally extensible table of exact tree counts.
pub struct CountTable {
    /// a[i] = number of rooted trees on i+1 vertices.
    a: Vec<BigUint>,
    /// s[i] = sum of d * a_d over divisors d of i+1.
    s: Vec<BigUint>,
    /// t[i] = number of free trees on i+1 vertices (filled on demand).
    t: Vec<BigUint>,
    cap: usize,
}

impl CountTable {
    pub fn new() -> CountTable {
        CountTable::with_cap(DEFAULT_COUNT_CAP)
    }

    pub fn with_cap(cap: usize) -> CountTable {
        CountTable {
            a: Vec::new(),
            s: Vec::new(),
            t: Vec::new(),
            cap,
        }
    }

    pub fn rooted_len(&self) -> usize {
        self.a.len()
    }

    /// Extend the rooted table to cover a_1..a_n.
    pub fn ensure_rooted(&mut self, n: usize) -> Result<(), CountError> {
        if n > self.cap {
            return Err(CountError::ResourceLimit { n, cap: self.cap });
        }
        if self.a.is_empty() {
            self.a.push(BigUint::one()); // a_1
            self.s.push(BigUint::one()); // s_1 = 1 * a_1
        }
        while self.a.len() < n {
            let m = self.a.len(); // computing a_{m+1}
            let mut acc = BigUint::zero();
            for k in 1..=m {
                acc += &self.s[k - 1] * &self.a[m - k];
            }
            let (q, r) = num_integer::div_rem(acc, BigUint::from(m));
            debug_assert!(r.is_zero(), "recurrence sum must divide evenly");
            self.a.push(q);
            // s_{m+1} = sum over divisors d of m+1 of d * a_d.
            let idx = m + 1;
            let mut s = BigUint::zero();
            let mut d = 1;
            while d * d <= idx {
                if idx.is_multiple_of(d) {
                    s += BigUint::from(d) * &self.a[d - 1];
                    let e = idx / d;
                    if e != d {
                        s += BigUint::from(e) * &self.a[e - 1];
                    }
                }
                d += 1;
            }
            self.s.push(s);
        }
        Ok(())
    }

    /// Extend the free table to cover t_1..t_n.
    pub fn ensure_free(&mut self, n: usize) -> Result<(), CountError> {
        self.ensure_rooted(n)?;
        while self.t.len() < n {
            let m = self.t.len() + 1; // computing t_m
            let mut pair_sum = BigUint::zero();
            for i in 1..m {
                pair_sum += &self.a[i - 1] * &self.a[m - i - 1];
            }
            if m.is_multiple_of(2) {
                pair_sum -= &self.a[m / 2 - 1];
            }
            if pair_sum.bit(0) {
                return Err(CountError::ParityViolation { n: m });
            }
            let t = &self.a[m - 1] - (pair_sum >> 1);
            self.t.push(t);
        }
        Ok(())
    }

    /// a_n, if already computed.
    pub fn rooted(&self, n: usize) -> Option<&BigUint> {
        n.checked_sub(1).and_then(|i| self.a.get(i))
    }

    /// t_n, if already computed.
    pub fn free(&self, n: usize) -> Option<&BigUint> {
        n.checked_sub(1).and_then(|i| self.t.get(i))
    }

    /// Growth estimate from the computed table. `Root` is the k-th root of
    /// a_k, `Ratio` the consecutive quotient a_k / a_{k-1}; both converge to
    /// alpha from below, with `Ratio` far ahead at equal k.
    pub fn alpha_estimate(
        &self,
        k: usize,
        method: AlphaMethod,
        digits: u32,
    ) -> Result<Decimal, CountError> {
        match method {
            AlphaMethod::Root => {
                let ak = self.rooted(k).ok_or(CountError::IndexOutOfRange { n: k })?;
                Ok(nth_root_decimal(ak, k as u32, digits))
            }
            AlphaMethod::Ratio => {
                if k < 2 {
                    return Err(CountError::IndexOutOfRange { n: k });
                }
                let ak = self.rooted(k).ok_or(CountError::IndexOutOfRange { n: k })?;
                let prev = self
                    .rooted(k - 1)
                    .ok_or(CountError::IndexOutOfRange { n: k - 1 })?;
                Ok(ratio_decimal(ak, prev, digits))
            }
        }
    }
}

impl Default for CountTable {
    fn default() -> Self {
        CountTable::new()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlphaMethod {
    Root,
    Ratio,
}

/// Table with a_1..a_n filled in.
pub fn rooted_counts(n: usize) -> Result<CountTable, CountError> {
    let mut table = CountTable::new();
    table.ensure_rooted(n)?;
    Ok(table)
}

/// Table with both a_1..a_n and t_1..t_n filled in.
pub fn free_counts(n: usize) -> Result<CountTable, CountError> {
    let mut table = CountTable::new();
    table.ensure_free(n)?;
    Ok(table)
}

/// One-shot convenience for [`CountTable::alpha_estimate`].
pub fn alpha_estimate(k: usize, method: AlphaMethod, digits: u32) -> Result<Decimal, CountError> {
    let table = rooted_counts(k)?;
    table.alpha_estimate(k, method, digits)
}

/// Smallest k with a_k^(1/k) > alpha_ref - epsilon/3, i.e. the block size
/// whose per-vertex yield already clears a third of the requested slack.
/// Exact arithmetic: the comparison is a_k * q^k > p^k for threshold p/q.
///
/// The search extends `table` as needed, up to `cap`.
pub fn choose_k(
    epsilon: &BigRational,
    table: &mut CountTable,
    cap: usize,
) -> Result<usize, CountError> {
    let alpha = alpha_ref();
    if !epsilon.is_positive() || *epsilon >= alpha {
        return Err(CountError::BadEpsilon {
            epsilon: epsilon.to_string(),
        });
    }
    let threshold = alpha - epsilon / BigInt::from(3);
    let (p, q) = ratio_parts(&threshold);
    for k in 1..=cap {
        table.ensure_rooted(k)?;
        let ak = table.rooted(k).unwrap();
        if ak * q.pow(k as u32) > p.pow(k as u32) {
            return Ok(k);
        }
    }
    Err(CountError::SearchExhausted {
        epsilon: epsilon.to_string(),
        cap,
    })
}

/// Default-capped variant of [`choose_k`].
pub fn choose_k_default(epsilon: &BigRational) -> Result<usize, CountError> {
    let mut table = CountTable::new();
    choose_k(epsilon, &mut table, DEFAULT_CHOOSE_K_CAP)
}

/// Positive rational split into non-negative big-unsigned numerator and
/// denominator.
pub(crate) fn ratio_parts(r: &BigRational) -> (BigUint, BigUint) {
    assert!(!r.is_negative(), "expected a non-negative rational");
    (
        r.numer().magnitude().clone(),
        r.denom().magnitude().clone(),
    )
}

/// Decimal rendering of a non-negative rational, truncated.
pub fn rational_decimal(r: &BigRational, digits: u32) -> Decimal {
    let (p, q) = ratio_parts(r);
    Decimal::new(p * pow10(digits) / q, digits)
}
