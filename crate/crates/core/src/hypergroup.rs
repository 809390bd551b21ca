//! Structure coefficients of the pointwise product of basis functions.
//!
//! The product `e_m * e_n` expands back in the basis with coefficients
//! supported on `[max(m,n), m+n]`. Two routes compute them:
//!
//! - [`coproduct_oracle`]: apply the inverse binomial transform to the
//!   pointwise-product values. Three lines of already-verified machinery;
//!   this is primary truth.
//! - [`coproduct_formula`]: the closed form
//!   `c_k = (-1)^{n+k} C(k,n) sum_l (-1)^l C(k-n,l) C(l+n,m)`.
//!   The inner sum must carry the alternating sign: dropping it breaks the
//!   worked expansion `e_1 * e_n = n e_n + (n+1) e_{n+1}`, which pins the
//!   convention (see `signed_inner_sum_is_required` below).
//!
//! The two must agree exactly; the formula is the object under test.

use std::collections::BTreeMap;

use num::Zero;
use serde::Serialize;

use crate::combinatorics::{alt_sign_rat, binom_rat, Rat};
use crate::transforms::{bft_inv, Prefix};

/// Expansion of `e_m * e_n` in the basis: map from index `k` to the exact
/// coefficient, with support inside `[max(m,n), m+n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoproductExpansion {
    pub m: u64,
    pub n: u64,
    pub coeffs: BTreeMap<u64, Rat>,
}

impl CoproductExpansion {
    pub fn coeff(&self, k: u64) -> Rat {
        self.coeffs.get(&k).cloned().unwrap_or_else(Rat::zero)
    }
}

fn product_values(m: u64, n: u64, max_x: u64) -> Prefix {
    Prefix::new(
        (0..=max_x)
            .map(|x| binom_rat(x, m) * binom_rat(x, n))
            .collect(),
    )
    .expect("window is non-empty")
}

/// Expansion coefficients via the inverse binomial transform of the
/// pointwise-product values.
///
/// Asserts internally that the coefficients vanish outside
/// `[max(m,n), m+n]` and that they reconstruct the product pointwise on a
/// window extending 8 past the support; either failing would mean broken
/// arithmetic.
pub fn coproduct_oracle(m: u64, n: u64) -> CoproductExpansion {
    let lo = m.max(n);
    let hi = m + n;
    let window = hi + 8;
    let inv = bft_inv(&product_values(m, n, window));
    for (k, v) in inv.values().iter().enumerate() {
        let inside = (k as u64) >= lo && (k as u64) <= hi;
        assert!(
            inside || v.is_zero(),
            "coproduct({m},{n}): unexpected coefficient {v} at {k}"
        );
    }
    let coeffs: BTreeMap<u64, Rat> = (lo..=hi)
        .map(|k| (k, inv.value(k as usize).clone()))
        .collect();
    // reconstruction: sum_k c_k e_k(x) = C(x,m) C(x,n) on the whole window
    for x in 0..=window {
        let recombined: Rat = coeffs
            .iter()
            .map(|(k, c)| c * binom_rat(x, *k))
            .sum();
        let direct = binom_rat(x, m) * binom_rat(x, n);
        assert_eq!(
            recombined, direct,
            "coproduct({m},{n}): reconstruction failed at x={x}"
        );
    }
    CoproductExpansion { m, n, coeffs }
}

/// Closed-form expansion coefficients (signed inner sum).
pub fn coproduct_formula(m: u64, n: u64) -> CoproductExpansion {
    let lo = m.max(n);
    let hi = m + n;
    let coeffs = (lo..=hi)
        .map(|k| {
            let inner: Rat = (0..=(k - n))
                .map(|l| alt_sign_rat(l) * binom_rat(k - n, l) * binom_rat(l + n, m))
                .sum();
            (k, alt_sign_rat(n + k) * binom_rat(k, n) * inner)
        })
        .collect();
    CoproductExpansion { m, n, coeffs }
}

/// Wire format: coefficients keyed by the basis index, plus the agreement
/// status between the two computation routes.
#[derive(Debug, Clone, Serialize)]
pub struct CoproductJson {
    pub m: u64,
    pub n: u64,
    pub coeffs: BTreeMap<String, String>,
    pub formula_agrees: bool,
}

impl CoproductJson {
    pub fn compute(m: u64, n: u64) -> CoproductJson {
        let oracle = coproduct_oracle(m, n);
        let formula = coproduct_formula(m, n);
        CoproductJson {
            m,
            n,
            coeffs: oracle
                .coeffs
                .iter()
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .collect(),
            formula_agrees: oracle == formula,
        }
    }
}
