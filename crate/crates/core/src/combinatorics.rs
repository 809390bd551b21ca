//! Exact combinatorial primitives: binomials, falling factorials, and their
//! q-deformations.
//!
//! Everything is computed over arbitrary-precision integers and rationals
//! from the `num` crate; no operation here ever rounds. Indices are plain
//! `u64` (the library works on explicit finite windows), values are big.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::Error;

/// The universal scalar: an exact arbitrary-precision rational.
///
/// Canonical form is maintained by `num`: positive denominator, fully
/// reduced. The text format is `-3/4` or `7` (lowest terms, no whitespace);
/// [`parse_rat`] and the `Display` impl round-trip it.
pub type Rat = BigRational;

/// Rational from an integer numerator/denominator pair.
///
/// Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parse the exact text format: optional leading `-`, digits, optional `/`
/// followed by positive digits. No whitespace, no signs after the slash.
pub fn parse_rat(s: &str) -> Result<Rat, Error> {
    let bad = || Error::ParseRational(s.to_string());
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let digits = num_str.strip_prefix('-').unwrap_or(num_str);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let numer: BigInt = num_str.parse().map_err(|_| bad())?;
    let denom = match den_str {
        None => BigInt::one(),
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let den: BigInt = d.parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            den
        }
    };
    Ok(Rat::new(numer, denom))
}

/// `base^exp` by binary exponentiation, exact.
pub fn rat_pow(base: &Rat, exp: u64) -> Rat {
    let mut result = Rat::one();
    let mut square = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result *= &square;
        }
        square = &square * &square;
        e >>= 1;
    }
    result
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// Falling factorial `x(x-1)...(x-n+1)`; 1 for `n = 0`, 0 for `n > x`.
pub fn falling(x: u64, n: u64) -> BigInt {
    if n > x {
        return BigInt::zero();
    }
    ((x - n + 1)..=x).map(BigInt::from).product()
}

/// Binomial coefficient `C(x,n)`, with `C(x,n) = 0` for `n > x`.
///
/// Uses the multiplicative formula with exact intermediate division: the
/// running product after `i` steps is `C(x-n+i, i)`, an integer, so each
/// division is exact.
pub fn binom(x: u64, n: u64) -> BigInt {
    if n > x {
        return BigInt::zero();
    }
    let n = n.min(x - n);
    let mut acc = BigInt::one();
    for i in 1..=n {
        acc = acc * BigInt::from(x - n + i) / BigInt::from(i);
    }
    acc
}

/// Binomial coefficient as a rational, for mixed arithmetic.
pub fn binom_rat(x: u64, n: u64) -> Rat {
    Rat::from_integer(binom(x, n))
}

/// Deformation parameter for the q-binomial family.
///
/// Construction rejects `q = 1` (the defining bracket divides by `q - 1`)
/// and `q = -1` (the only other rational root of unity; it zeroes the
/// bracket factorials the Gaussian coefficient divides by).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QParam(Rat);

impl QParam {
    pub fn new(q: Rat) -> Result<Self, Error> {
        if q == Rat::one() || q == -Rat::one() {
            Err(Error::InvalidQ(q.to_string()))
        } else {
            Ok(QParam(q))
        }
    }

    pub fn value(&self) -> &Rat {
        &self.0
    }
}

/// q-bracket `[x] = (q^x - 1)/(q - 1)`.
pub fn q_bracket(x: u64, q: &QParam) -> Rat {
    let qv = q.value();
    (rat_pow(qv, x) - Rat::one()) / (qv - Rat::one())
}

/// q-falling factorial `[x]_n = [x][x-1]...[x-n+1]`; empty product for `n = 0`.
///
/// For `n > x` the factor `[0] = 0` appears, so the product is zero.
pub fn q_falling(x: u64, n: u64, q: &QParam) -> Rat {
    if n > x {
        return Rat::zero();
    }
    (0..n).map(|i| q_bracket(x - i, q)).product()
}

/// q-factorial `[n]! = [n]_n`, with `[0]! = 1`.
pub fn q_factorial(n: u64, q: &QParam) -> Rat {
    q_falling(n, n, q)
}

/// Gaussian (q-deformed) binomial `[x]_n / [n]!`; 0 for `n > x`.
pub fn q_binom(x: u64, n: u64, q: &QParam) -> Rat {
    if n > x {
        return Rat::zero();
    }
    q_falling(x, n, q) / q_factorial(n, q)
}

/// `(-1)^k` as a big integer, for alternating sums.
pub fn alt_sign(k: u64) -> BigInt {
    if k % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// `(-1)^k` as a rational.
pub fn alt_sign_rat(k: u64) -> Rat {
    Rat::from_integer(alt_sign(k))
}

/// True when the rational is an integer (denominator 1).
pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Exact conversion to `f64`, used only by the one deliberately
/// float-compared diagnostic in the crate.
pub fn rat_to_f64(r: &Rat) -> f64 {
    // num's ToPrimitive on Ratio<BigInt> goes through i64 and fails on big
    // components, so divide numerator magnitudes digit-wise instead.
    let numer = bigint_to_f64(r.numer());
    let denom = bigint_to_f64(r.denom());
    numer / denom
}

fn bigint_to_f64(n: &BigInt) -> f64 {
    let mut acc = 0.0f64;
    for digit in n.abs().to_u32_digits().1.iter().rev() {
        acc = acc * 4294967296.0 + f64::from(*digit);
    }
    if n.is_negative() {
        -acc
    } else {
        acc
    }
}
