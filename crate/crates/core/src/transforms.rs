//! The two transform pairs of the space.
//!
//! The first pair is lower-triangular and causal: the forward transform
//! `f -> sum_{j<=x} C(x,j) f(j)` and its alternating inverse both map a
//! prefix `f(0..N)` to a prefix of the same length, so they act on
//! [`Prefix`] values and never need tail information.
//!
//! The second pair is upper-triangular: `f -> sum_{y>=x} (-1)^{x+y} C(y,x) f(y)`
//! and `g -> sum_{x>=n} C(x,n) g(x)` depend on the whole tail, so they are
//! defined only on [`FiniteSupportSeq`] values whose tail is exactly zero.
//! Inputs that are not declared finitely supported are rejected, never
//! silently truncated.

use num::Zero;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{alt_sign_rat, binom_rat, parse_rat, Rat};
use crate::error::Error;
use crate::kernels::pascal_kernel;

/// Dense window `f(0..=N)` of a function on the non-negative integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prefix {
    values: Vec<Rat>,
}

impl Prefix {
    /// Wrap a dense value window; must be non-empty.
    pub fn new(values: Vec<Rat>) -> Result<Prefix, Error> {
        if values.is_empty() {
            return Err(Error::EmptyPrefix);
        }
        Ok(Prefix { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false: construction rejects empty windows.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    pub fn value(&self, x: usize) -> &Rat {
        &self.values[x]
    }
}

/// Sequence with exact zero tail: entries beyond `values` are all zero.
///
/// Canonical form trims trailing zeros, so the zero sequence is the empty
/// list and `support_bound` is one past the last nonzero index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSupportSeq {
    values: Vec<Rat>,
}

impl FiniteSupportSeq {
    pub fn new(mut values: Vec<Rat>) -> FiniteSupportSeq {
        while values.last().is_some_and(Zero::is_zero) {
            values.pop();
        }
        FiniteSupportSeq { values }
    }

    pub fn zero() -> FiniteSupportSeq {
        FiniteSupportSeq { values: Vec::new() }
    }

    /// Kronecker delta at `n`.
    pub fn delta(n: usize) -> FiniteSupportSeq {
        let mut values = vec![Rat::zero(); n + 1];
        values[n] = Rat::from_integer(1.into());
        FiniteSupportSeq { values }
    }

    /// Entries up to the support bound; the tail is exactly zero.
    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    /// One past the last nonzero index (0 for the zero sequence).
    pub fn support_bound(&self) -> usize {
        self.values.len()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Value at any index, zero beyond the stored window.
    pub fn value(&self, x: usize) -> Rat {
        self.values.get(x).cloned().unwrap_or_else(Rat::zero)
    }

    /// Sum of squared entries.
    pub fn l2_norm_sq(&self) -> Rat {
        self.values.iter().map(|v| v * v).sum()
    }

    /// View the first `len` entries as a dense prefix (padding with zeros).
    pub fn to_prefix(&self, len: usize) -> Prefix {
        let mut values = self.values.clone();
        values.resize(len.max(1), Rat::zero());
        Prefix { values }
    }
}

/// Forward binomial transform `g(x) = sum_{j=0}^{x} C(x,j) f(j)`.
///
/// Lower-triangular, so the output window has the input's length.
pub fn bft(f: &Prefix) -> Prefix {
    let values = (0..f.len())
        .map(|x| {
            (0..=x)
                .map(|j| binom_rat(x as u64, j as u64) * f.value(j))
                .sum()
        })
        .collect();
    Prefix { values }
}

/// Inverse binomial transform `f(n) = sum_{l=0}^{n} (-1)^{n-l} C(n,l) g(l)`.
pub fn bft_inv(g: &Prefix) -> Prefix {
    let values = (0..g.len())
        .map(|n| {
            (0..=n)
                .map(|l| {
                    alt_sign_rat((n - l) as u64) * binom_rat(n as u64, l as u64) * g.value(l)
                })
                .sum()
        })
        .collect();
    Prefix { values }
}

/// Second (upper-triangular) forward transform
/// `f^(x) = sum_{y>=x} (-1)^{x+y} C(y,x) f(y)`.
///
/// The support bound is preserved: if `f(y) = 0` for `y >= N` then the
/// image vanishes there too.
pub fn second_fwd(f: &FiniteSupportSeq) -> FiniteSupportSeq {
    let bound = f.support_bound();
    let values = (0..bound)
        .map(|x| {
            (x..bound)
                .map(|y| {
                    alt_sign_rat((x + y) as u64) * binom_rat(y as u64, x as u64) * f.value(y)
                })
                .sum()
        })
        .collect();
    FiniteSupportSeq::new(values)
}

/// Second inverse transform `g(n) = sum_{x>=n} C(x,n) g(x)`.
pub fn second_inv(g: &FiniteSupportSeq) -> FiniteSupportSeq {
    let bound = g.support_bound();
    let values = (0..bound)
        .map(|n| {
            (n..bound)
                .map(|x| binom_rat(x as u64, n as u64) * g.value(x))
                .sum()
        })
        .collect();
    FiniteSupportSeq::new(values)
}

/// Signed kernel bilinear form
/// `<f,g> = sum_{x,y} (-1)^{x+y} f(x) g(y) K(x,y)`.
///
/// This is the form attached to the sign-conjugated kernel; the map
/// `f -> sum_y (-1)^y K(.,y) f(y)` is isometric for it.
pub fn ell2k_inner(f: &FiniteSupportSeq, g: &FiniteSupportSeq) -> Rat {
    pairing(f, g, true)
}

/// Unsigned kernel pairing `sum_{x,y} f(x) g(y) K(x,y)`.
///
/// This is the quadratic form under which the second transform pair is a
/// unitary between finitely supported sequences and little-l2: adjointness
/// and the isometry of the inverse transform hold for this pairing; the
/// signed form satisfies them only after the parity flip `f(x) -> (-1)^x f(x)`.
pub fn kernel_pairing(f: &FiniteSupportSeq, g: &FiniteSupportSeq) -> Rat {
    pairing(f, g, false)
}

fn pairing(f: &FiniteSupportSeq, g: &FiniteSupportSeq, signed: bool) -> Rat {
    let mut acc = Rat::zero();
    for (x, fx) in f.values().iter().enumerate() {
        if fx.is_zero() {
            continue;
        }
        for (y, gy) in g.values().iter().enumerate() {
            if gy.is_zero() {
                continue;
            }
            let mut term = fx * gy * Rat::from_integer(pascal_kernel(x as u64, y as u64));
            if signed {
                term *= alt_sign_rat((x + y) as u64);
            }
            acc += term;
        }
    }
    acc
}

/// Kernel-section synthesis `s(f)(t) = sum_x K(t,x) f(x)`, windowed to `t <= max_t`.
pub fn s_embed(f: &FiniteSupportSeq, max_t: u64) -> Prefix {
    let values = (0..=max_t)
        .map(|t| {
            f.values()
                .iter()
                .enumerate()
                .map(|(x, fx)| Rat::from_integer(pascal_kernel(t, x as u64)) * fx)
                .sum()
        })
        .collect();
    Prefix { values }
}

/// Both sides of the second Plancherel identity:
/// the kernel quadratic form of `f^triangle` and the plain `l2` norm of `f`.
///
/// The two components must be equal; callers assert it.
pub fn plancherel_second(f: &FiniteSupportSeq) -> (Rat, Rat) {
    let fwd = second_fwd(f);
    (kernel_pairing(&fwd, &fwd), f.l2_norm_sq())
}

/// Finite form of the adjoint identity for the section-synthesis operator:
///
/// `sum_t f^(t) K(y0,t) = sum_s f(s) (-1)^s sum_{t<=s} (-1)^t C(s,t) K(y0,t)`.
pub fn adjoint_pairing_check(f: &FiniteSupportSeq, y0: u64) -> Result<(), Error> {
    let fwd = second_fwd(f);
    let lhs: Rat = fwd
        .values()
        .iter()
        .enumerate()
        .map(|(t, v)| v * Rat::from_integer(pascal_kernel(y0, t as u64)))
        .sum();
    let rhs: Rat = f
        .values()
        .iter()
        .enumerate()
        .map(|(s, fs)| {
            let inner: Rat = (0..=s)
                .map(|t| {
                    alt_sign_rat(t as u64)
                        * binom_rat(s as u64, t as u64)
                        * Rat::from_integer(pascal_kernel(y0, t as u64))
                })
                .sum();
            fs * alt_sign_rat(s as u64) * inner
        })
        .sum();
    if lhs == rhs {
        Ok(())
    } else {
        Err(Error::Identity {
            context: format!("adjoint pairing at y0={y0}"),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        })
    }
}

/// Image of a finitely supported sequence under the adjoint of the
/// lower-triangular transform matrix, `(L* f)(n) = sum_{x>=n} C(x,n) f(x)`.
///
/// For finitely supported input the image is again finitely supported,
/// hence square-summable, so the synthesis `sum_x K(.,x) f(x)` lands in the
/// space; `in_l2` records that verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipImage {
    pub image: FiniteSupportSeq,
    pub in_l2: bool,
}

pub fn membership_image(f: &FiniteSupportSeq) -> MembershipImage {
    MembershipImage {
        image: second_inv(f),
        in_l2: true,
    }
}

/// Wire format for sequences: rationals in text form, `offset` fixed at 0.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SequenceJson {
    pub offset: u64,
    pub values: Vec<String>,
    pub finite_support: bool,
}

impl SequenceJson {
    pub fn from_prefix(p: &Prefix) -> SequenceJson {
        SequenceJson {
            offset: 0,
            values: p.values().iter().map(|v| v.to_string()).collect(),
            finite_support: false,
        }
    }

    pub fn from_finite(f: &FiniteSupportSeq) -> SequenceJson {
        SequenceJson {
            offset: 0,
            values: f.values().iter().map(|v| v.to_string()).collect(),
            finite_support: true,
        }
    }

    fn parsed_values(&self) -> Result<Vec<Rat>, Error> {
        if self.offset != 0 {
            return Err(Error::ParseRational(format!(
                "unsupported sequence offset {}",
                self.offset
            )));
        }
        self.values.iter().map(|s| parse_rat(s)).collect()
    }

    /// Read as a dense prefix; the finite-support flag is irrelevant here.
    pub fn to_prefix(&self) -> Result<Prefix, Error> {
        Prefix::new(self.parsed_values()?)
    }

    /// Read as a finitely supported sequence; requires the flag to be set.
    pub fn to_finite(&self) -> Result<FiniteSupportSeq, Error> {
        if !self.finite_support {
            return Err(Error::FiniteSupportRequired);
        }
        Ok(FiniteSupportSeq::new(self.parsed_values()?))
    }
}
