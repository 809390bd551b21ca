//! Elements of the kernel space as basis-coefficient vectors.
//!
//! An element is stored by its coefficients against the orthonormal basis
//! `e_n^(lambda)(x) = lambda^{x-n} C(x,n)` rather than by pointwise values:
//! norms and inner products are then exact finite sums, and pointwise
//! values are recovered by finite evaluation (the basis is triangular, so
//! only `n <= x` contributes).
//!
//! Membership of an arbitrary function, by contrast, depends on its whole
//! tail. Over a finite prefix the question is genuinely undecidable, so
//! [`membership_diagnostic`] commits to a verdict only when the inverse
//! transform is exactly zero within the window and otherwise reports the
//! evidence without a claim.

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{binom, binom_rat, parse_rat, rat_pow, Rat};
use crate::error::Error;
use crate::transforms::{bft_inv, FiniteSupportSeq, Prefix};

/// Basis function `e_n^(lambda)`: zero below its index, `lambda^{x-n} C(x,n)` above.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OnbFunction {
    pub index: u64,
    pub deformation: Rat,
}

impl OnbFunction {
    pub fn new(index: u64, deformation: Rat) -> OnbFunction {
        OnbFunction { index, deformation }
    }

    pub fn eval(&self, x: u64) -> Rat {
        onb_value(self.index, x, &self.deformation)
    }
}

/// `e_n^(lambda)(x)`, the single place the basis formula lives.
pub fn onb_value(n: u64, x: u64, lambda: &Rat) -> Rat {
    if x < n {
        Rat::zero()
    } else {
        rat_pow(lambda, x - n) * binom_rat(x, n)
    }
}

/// Element `g = sum_n a_n e_n^(lambda)` with finitely supported coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RkhsElement {
    coeffs: FiniteSupportSeq,
    deformation: Rat,
}

impl RkhsElement {
    pub fn new(coeffs: FiniteSupportSeq, deformation: Rat) -> RkhsElement {
        RkhsElement {
            coeffs,
            deformation,
        }
    }

    /// Undeformed element (`lambda = 1`).
    pub fn plain(coeffs: FiniteSupportSeq) -> RkhsElement {
        RkhsElement::new(coeffs, Rat::one())
    }

    pub fn coeffs(&self) -> &FiniteSupportSeq {
        &self.coeffs
    }

    pub fn deformation(&self) -> &Rat {
        &self.deformation
    }

    /// Pointwise value `sum_{n<=x} a_n lambda^{x-n} C(x,n)`.
    pub fn eval(&self, x: u64) -> Rat {
        self.coeffs
            .values()
            .iter()
            .enumerate()
            .take_while(|(n, _)| *n as u64 <= x)
            .map(|(n, a)| a * onb_value(n as u64, x, &self.deformation))
            .sum()
    }

    /// Basis-coefficient inner product `sum_n a_n b_n`.
    ///
    /// Both elements must live in the same deformed space.
    pub fn inner(&self, other: &RkhsElement) -> Result<Rat, Error> {
        if self.deformation != other.deformation {
            return Err(Error::DeformationMismatch {
                left: self.deformation.to_string(),
                right: other.deformation.to_string(),
            });
        }
        Ok(self
            .coeffs
            .values()
            .iter()
            .zip(other.coeffs.values())
            .map(|(a, b)| a * b)
            .sum())
    }

    pub fn norm_sq(&self) -> Rat {
        self.coeffs.l2_norm_sq()
    }

    /// Values on `0..=max_x` as a dense prefix.
    pub fn value_prefix(&self, max_x: u64) -> Prefix {
        Prefix::new((0..=max_x).map(|x| self.eval(x)).collect())
            .expect("window is non-empty")
    }
}

/// Kernel section `K_lambda(., y)` as an element: coefficients
/// `a_n = e_n^(lambda)(y)`, supported on `n <= y`.
pub fn kernel_section(y: u64, lambda: &Rat) -> RkhsElement {
    let coeffs = (0..=y).map(|n| onb_value(n, y, lambda)).collect();
    RkhsElement::new(FiniteSupportSeq::new(coeffs), lambda.clone())
}

/// Reproducing property `<g, K_lambda(., x)> = g(x)`, checked exactly.
pub fn reproducing_check(g: &RkhsElement, x: u64) -> Result<(), Error> {
    let section = kernel_section(x, g.deformation());
    let paired = g.inner(&section)?;
    let direct = g.eval(x);
    if paired == direct {
        Ok(())
    } else {
        Err(Error::Identity {
            context: format!("reproducing property at x={x}"),
            lhs: paired.to_string(),
            rhs: direct.to_string(),
        })
    }
}

/// Growth bound `g(x)^2 <= |g|^2 C(2x,x)` for all `x <= max_x`, exact.
pub fn growth_bound_check(g: &RkhsElement, max_x: u64) -> Result<(), Error> {
    let norm_sq = g.norm_sq();
    for x in 0..=max_x {
        let v = g.eval(x);
        let lhs = &v * &v;
        let rhs = &norm_sq * Rat::from_integer(binom(2 * x, x));
        if lhs > rhs {
            return Err(Error::Identity {
                context: format!("growth bound at x={x}"),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
        }
    }
    Ok(())
}

/// Verdict of the membership diagnostic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    /// The inverse transform is exactly zero beyond some index inside the
    /// window, so the window's coefficients are finitely supported.
    #[serde(rename = "member")]
    Member,
    /// Evidence only; a finite window cannot decide an infinite tail.
    #[serde(rename = "advisory-only")]
    AdvisoryOnly,
}

/// Evidence gathered from a value prefix about space membership.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipReport {
    /// Length of the window examined.
    pub prefix_used: u64,
    /// Inverse binomial transform of the window (candidate coefficients).
    pub inv_prefix: Prefix,
    /// Running sums `sum_{n<=k} inv(n)^2`; nondecreasing by construction.
    pub partial_l2_sums: Vec<Rat>,
    /// Whether `f(x)^2 <= M C(2x,x)` holds on the window with `M` taken as
    /// the window's full coefficient mass; necessary for membership.
    pub necessary_bound_ok: bool,
    pub verdict: Verdict,
}

/// Examine a value prefix for membership evidence.
///
/// Requires at least four values; shorter windows say nothing. The verdict
/// is `member` only when the inverse transform ends in exact zeros; the
/// diagnostic never claims non-membership.
pub fn membership_diagnostic(f: &Prefix) -> Result<MembershipReport, Error> {
    if f.len() < 4 {
        return Err(Error::PrefixTooShort {
            len: f.len(),
            min: 4,
        });
    }
    let inv = bft_inv(f);
    let mut partial_l2_sums = Vec::with_capacity(inv.len());
    let mut acc = Rat::zero();
    for v in inv.values() {
        acc += v * v;
        partial_l2_sums.push(acc.clone());
    }
    let mass = partial_l2_sums.last().cloned().unwrap_or_else(Rat::zero);
    let necessary_bound_ok = f.values().iter().enumerate().all(|(x, v)| {
        v * v <= &mass * Rat::from_integer(binom(2 * x as u64, x as u64))
    });
    let verdict = if inv.values().last().is_some_and(Zero::is_zero) {
        Verdict::Member
    } else {
        Verdict::AdvisoryOnly
    };
    Ok(MembershipReport {
        prefix_used: f.len() as u64,
        inv_prefix: inv,
        partial_l2_sums,
        necessary_bound_ok,
        verdict,
    })
}

/// Wire format for elements: rationals in text form.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RkhsElementJson {
    pub lambda: String,
    pub coeffs: Vec<String>,
}

impl RkhsElementJson {
    pub fn from_element(e: &RkhsElement) -> RkhsElementJson {
        RkhsElementJson {
            lambda: e.deformation().to_string(),
            coeffs: e.coeffs().values().iter().map(|v| v.to_string()).collect(),
        }
    }

    pub fn to_element(&self) -> Result<RkhsElement, Error> {
        let lambda = parse_rat(&self.lambda)?;
        let coeffs = self
            .coeffs
            .iter()
            .map(|s| parse_rat(s))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(RkhsElement::new(FiniteSupportSeq::new(coeffs), lambda))
    }
}

/// Wire format for membership reports, mirroring [`MembershipReport`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MembershipReportJson {
    pub prefix_used: u64,
    pub inv_prefix: Vec<String>,
    pub partial_l2_sums: Vec<String>,
    pub necessary_bound_ok: bool,
    pub verdict: Verdict,
}

impl MembershipReportJson {
    pub fn from_report(r: &MembershipReport) -> MembershipReportJson {
        MembershipReportJson {
            prefix_used: r.prefix_used,
            inv_prefix: r.inv_prefix.values().iter().map(|v| v.to_string()).collect(),
            partial_l2_sums: r.partial_l2_sums.iter().map(|v| v.to_string()).collect(),
            necessary_bound_ok: r.necessary_bound_ok,
            verdict: r.verdict,
        }
    }
}
