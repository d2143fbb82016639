//! Exact scaled-decimal arithmetic and fixed-point transcendentals.
//!
//! Floating point is good enough for eigenvalues but not for certificates:
//! the inequalities we certify compare numbers with thousands of digits.
//! Everything here works on big integers scaled by powers of ten, with
//! truncation error accounted for explicitly.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub fn pow10(exp: u32) -> BigUint {
    BigUint::from(10u32).pow(exp)
}

/// Non-negative decimal `mantissa / 10^scale`, printed without rounding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decimal {
    mantissa: BigUint,
    scale: u32,
}

impl Decimal {
    pub fn new(mantissa: BigUint, scale: u32) -> Self {
        Decimal { mantissa, scale }
    }

    pub fn mantissa(&self) -> &BigUint {
        &self.mantissa
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    /// Lossy conversion for display-level comparisons only.
    pub fn to_f64(&self) -> f64 {
        // Going through the decimal string avoids overflow for mantissas
        // wider than f64 range would allow after division.
        self.to_string().parse().expect("decimal string parses")
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = self.mantissa.to_string();
        let scale = self.scale as usize;
        if scale == 0 {
            return f.write_str(&digits);
        }
        if digits.len() <= scale {
            let frac = format!("{}{}", "0".repeat(scale - digits.len()), digits);
            write!(f, "0.{frac}")
        } else {
            let (int, frac) = digits.split_at(digits.len() - scale);
            write!(f, "{int}.{frac}")
        }
    }
}

/// Signed fixed-point value `v / 10^digits`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Fixed {
    v: BigInt,
    digits: u32,
}

impl Fixed {
    pub fn raw(&self) -> &BigInt {
        &self.v
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn to_f64(&self) -> f64 {
        self.to_string().parse().expect("fixed-point string parses")
    }
}

impl fmt::Display for Fixed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.v.is_negative() {
            f.write_str("-")?;
        }
        let dec = Decimal::new(self.v.abs().to_biguint().unwrap(), self.digits);
        write!(f, "{dec}")
    }
}

// Guard digits carried through intermediate fixed-point computations so the
// final truncation to the requested precision is off by at most one ulp.
const GUARD: u32 = 10;

/// atanh(num/den) * 10^digits, truncated. Requires |num/den| <= 1/3 so the
/// series gains a constant number of digits per term.
fn atanh_fixed(num: &BigInt, den: &BigInt, digits: u32) -> BigInt {
    debug_assert!(den.is_positive());
    debug_assert!(num.abs() * 3u32 <= *den, "atanh argument out of range");
    let unit: BigInt = BigInt::from(pow10(digits));
    let r = (num * &unit).div_floor(den);
    let r2_num = num * num;
    let r2_den = den * den;
    let mut term = r.clone();
    let mut sum = BigInt::zero();
    let mut k = 1u32;
    while !term.is_zero() {
        sum += term.div_floor(&BigInt::from(k));
        term = (&term * &r2_num).div_floor(&r2_den);
        k += 2;
        // |r| <= unit/3 keeps the loop to O(digits) iterations.
        debug_assert!(k < 20 * digits + 100);
    }
    sum
}

/// ln(2) * 10^digits, truncated to within a few ulp.
fn ln2_fixed(digits: u32) -> BigInt {
    // ln 2 = 2 atanh(1/3)
    2 * atanh_fixed(&BigInt::from(1), &BigInt::from(3), digits)
}

/// Natural log of a positive integer to `digits` decimal places.
///
/// Uses ln x = s ln 2 + 2 atanh((x - 2^s)/(x + 2^s)) with s = floor(log2 x),
/// which keeps the atanh argument in [0, 1/3]. The result is exact to within
/// a handful of final-digit ulps; callers that certify inequalities must
/// leave more margin than that.
pub fn ln_big(x: &BigUint, digits: u32) -> Fixed {
    assert!(!x.is_zero(), "ln of zero");
    let work = digits + GUARD;
    let s = x.bits() - 1;
    let x = BigInt::from(x.clone());
    let pow2s = BigInt::from(1) << s;
    let num = &x - &pow2s;
    let den = &x + &pow2s;
    let frac_part = 2 * atanh_fixed(&num, &den, work);
    let total: BigInt = frac_part + BigInt::from(s) * ln2_fixed(work);
    Fixed {
        v: total.div_floor(&BigInt::from(pow10(GUARD))),
        digits,
    }
}

/// ln(num/den) for positive integers, to `digits` decimal places.
pub fn ln_ratio(num: &BigUint, den: &BigUint, digits: u32) -> Fixed {
    let work = digits + GUARD;
    let v = ln_big(num, work).v - ln_big(den, work).v;
    Fixed {
        v: v.div_floor(&BigInt::from(pow10(GUARD))),
        digits,
    }
}

/// e^(num/den) for num >= 0, den > 0, to `digits` decimal places (truncated,
/// error a few ulp). Intended for small exponents such as n/2000.
pub fn exp_ratio(num: u64, den: u64, digits: u32) -> Fixed {
    assert!(den > 0);
    let work = digits + GUARD;
    let unit = BigInt::from(pow10(work));
    let num = BigInt::from(num);
    let den = BigInt::from(den);
    let mut term = unit.clone();
    let mut sum = BigInt::zero();
    let mut k = 1u64;
    while !term.is_zero() {
        sum += &term;
        term = (&term * &num).div_floor(&(&den * BigInt::from(k)));
        k += 1;
    }
    Fixed {
        v: sum.div_floor(&BigInt::from(pow10(GUARD))),
        digits,
    }
}

/// ceil(e^(num/den)) as an exact integer, for num >= 1.
///
/// e^(num/den) is irrational for nonzero rational exponents, so with enough
/// working digits the fractional part stays safely away from 0 and 1 and the
/// ceiling is unambiguous.
pub fn ceil_exp_ratio(num: u64, den: u64) -> BigUint {
    assert!(num >= 1, "exponent must be positive for a certified ceiling");
    let digits = 50;
    let fx = exp_ratio(num, den, digits);
    let unit = BigInt::from(pow10(digits));
    let (q, r) = fx.v.div_rem(&unit);
    // Truncation error is a few ulp; require the fractional part to clear
    // that margin on both sides.
    let margin = BigInt::from(1_000u32);
    assert!(
        r > margin && r < &unit - &margin,
        "fractional part too close to an integer to certify a ceiling"
    );
    (q + 1u32).to_biguint().expect("positive")
}

/// Floor of the k-th root, delegating to the big-integer implementation.
pub fn nth_root_floor(x: &BigUint, k: u32) -> BigUint {
    x.nth_root(k)
}

/// a_k-style root estimate as a decimal: floor((x * 10^(k*digits))^(1/k)) / 10^digits.
pub fn nth_root_decimal(x: &BigUint, k: u32, digits: u32) -> Decimal {
    let scaled = x * pow10(k * digits);
    Decimal::new(nth_root_floor(&scaled, k), digits)
}

/// Ratio of two positive integers as a truncated decimal.
pub fn ratio_decimal(num: &BigUint, den: &BigUint, digits: u32) -> Decimal {
    assert!(!den.is_zero());
    Decimal::new(num * pow10(digits) / den, digits)
}

impl Fixed {
    /// Construct from a raw scaled integer; mostly for tests.
    pub fn from_raw(v: BigInt, digits: u32) -> Self {
        Fixed { v, digits }
    }
}
