//! The kernel family and its exact positivity certificates.
//!
//! Four positive definite kernels on the non-negative integers share one
//! object-safe [`Kernel`] trait so they can be picked by name at runtime:
//!
//! | name           | value at `(x,y)`                                  |
//! |----------------|---------------------------------------------------|
//! | `pascal`       | `C(x+y,x)`                                        |
//! | `lambda`       | `sum_n lambda^{x+y-2n} C(x,n) C(y,n)`             |
//! | `q`            | `sum_n [x,n]_q [y,n]_q` (Gaussian binomials)      |
//! | `signed-pascal`| `(-1)^{x+y} C(x+y,x)`                             |
//!
//! Positive definiteness is certified exactly: leading principal minors of
//! the Gram matrix are computed by fraction-free elimination, never by
//! floating Cholesky.

use num::bigint::BigInt;
use num::{One, Signed, Zero};
use serde::Serialize;

use crate::combinatorics::{
    alt_sign_rat, binom, binom_rat, factorial, q_binom, rat_pow, QParam, Rat,
};
use crate::error::Error;

/// A symmetric positive definite kernel on `Z_+ x Z_+`, evaluated exactly.
pub trait Kernel {
    /// Registry name of the kernel family.
    fn name(&self) -> &'static str;
    /// Human-readable description including parameters.
    fn describe(&self) -> String;
    /// Exact kernel value.
    fn eval(&self, x: u64, y: u64) -> Rat;
}

/// Tag selecting a kernel variant, with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KernelKind {
    Pascal,
    Lambda(Rat),
    Q(Rat),
    SignedPascal,
}

impl KernelKind {
    /// Instantiate the strategy behind the tag. Rejects `q` in `{1, -1}`.
    pub fn build(&self) -> Result<Box<dyn Kernel>, Error> {
        match self {
            KernelKind::Pascal => Ok(Box::new(PascalKernel)),
            KernelKind::Lambda(l) => Ok(Box::new(LambdaKernel { lambda: l.clone() })),
            KernelKind::Q(q) => Ok(Box::new(QKernel {
                q: QParam::new(q.clone())?,
            })),
            KernelKind::SignedPascal => Ok(Box::new(SignedPascalKernel)),
        }
    }
}

/// Names accepted by [`build_kernel`], in canonical order.
pub const KERNEL_NAMES: &[&str] = &["pascal", "lambda", "q", "signed-pascal"];

/// Runtime registry: look a kernel up by name and wire its parameters.
///
/// `lambda` is required for the `lambda` kernel, `q` for the `q` kernel;
/// both are rejected as spurious elsewhere.
pub fn build_kernel(
    name: &str,
    lambda: Option<Rat>,
    q: Option<Rat>,
) -> Result<Box<dyn Kernel>, Error> {
    let kind = match (name, lambda, q) {
        ("pascal", None, None) => KernelKind::Pascal,
        ("lambda", Some(l), None) => KernelKind::Lambda(l),
        ("q", None, Some(q)) => KernelKind::Q(q),
        ("signed-pascal", None, None) => KernelKind::SignedPascal,
        _ => {
            return Err(Error::UnknownSelection(format!(
                "unknown kernel selection: {name:?} (expected one of {KERNEL_NAMES:?} \
                 with --lambda only for lambda and --q only for q)"
            )))
        }
    };
    kind.build()
}

/// Pascal kernel `K(x,y) = C(x+y,x)`.
///
/// Every evaluation computes both the closed form and the Chu-Vandermonde
/// sum `sum_n C(x,n) C(y,n)` and asserts they agree; a mismatch would mean
/// the underlying arithmetic is broken.
pub fn pascal_kernel(x: u64, y: u64) -> BigInt {
    let closed = binom(x + y, x);
    let summed: BigInt = (0..=x.min(y)).map(|n| binom(x, n) * binom(y, n)).sum();
    assert_eq!(
        closed, summed,
        "Chu-Vandermonde cross-check failed at ({x},{y})"
    );
    closed
}

/// Deformed kernel `K_lambda(x,y) = sum_n lambda^{x+y-2n} C(x,n) C(y,n)`.
pub fn lambda_kernel(x: u64, y: u64, lambda: &Rat) -> Rat {
    (0..=x.min(y))
        .map(|n| rat_pow(lambda, x + y - 2 * n) * binom_rat(x, n) * binom_rat(y, n))
        .sum()
}

/// q-deformed kernel `sum_n [x,n]_q [y,n]_q`.
pub fn q_kernel(x: u64, y: u64, q: &QParam) -> Rat {
    (0..=x.min(y)).map(|n| q_binom(x, n, q) * q_binom(y, n, q)).sum()
}

/// Sign-conjugated Pascal kernel `(-1)^{x+y} K(x,y)`.
pub fn signed_pascal_kernel(x: u64, y: u64) -> Rat {
    alt_sign_rat(x + y) * Rat::from_integer(pascal_kernel(x, y))
}

/// Truncation of the entire-function kernel `sum_n z1^n z2^n / (n!)^2`.
pub fn k2_kernel_truncated(z1: &Rat, z2: &Rat, degree: u64) -> Rat {
    (0..=degree)
        .map(|n| {
            let f = Rat::from_integer(factorial(n));
            rat_pow(z1, n) * rat_pow(z2, n) / (&f * &f)
        })
        .sum()
}

struct PascalKernel;

impl Kernel for PascalKernel {
    fn name(&self) -> &'static str {
        "pascal"
    }
    fn describe(&self) -> String {
        "pascal".to_string()
    }
    fn eval(&self, x: u64, y: u64) -> Rat {
        Rat::from_integer(pascal_kernel(x, y))
    }
}

struct LambdaKernel {
    lambda: Rat,
}

impl Kernel for LambdaKernel {
    fn name(&self) -> &'static str {
        "lambda"
    }
    fn describe(&self) -> String {
        format!("lambda({})", self.lambda)
    }
    fn eval(&self, x: u64, y: u64) -> Rat {
        lambda_kernel(x, y, &self.lambda)
    }
}

struct QKernel {
    q: QParam,
}

impl Kernel for QKernel {
    fn name(&self) -> &'static str {
        "q"
    }
    fn describe(&self) -> String {
        format!("q({})", self.q.value())
    }
    fn eval(&self, x: u64, y: u64) -> Rat {
        q_kernel(x, y, &self.q)
    }
}

struct SignedPascalKernel;

impl Kernel for SignedPascalKernel {
    fn name(&self) -> &'static str {
        "signed-pascal"
    }
    fn describe(&self) -> String {
        "signed-pascal".to_string()
    }
    fn eval(&self, x: u64, y: u64) -> Rat {
        signed_pascal_kernel(x, y)
    }
}

/// Exact symmetric matrix of kernel values on `{0..max_index}^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramMatrix {
    entries: Vec<Vec<Rat>>,
}

impl GramMatrix {
    /// Build the `(max_index+1) x (max_index+1)` Gram matrix of a kernel.
    pub fn build(kernel: &dyn Kernel, max_index: u64) -> GramMatrix {
        let n = (max_index + 1) as usize;
        let mut entries = vec![vec![Rat::zero(); n]; n];
        for x in 0..n {
            for y in 0..=x {
                let v = kernel.eval(x as u64, y as u64);
                entries[x][y] = v.clone();
                entries[y][x] = v;
            }
        }
        GramMatrix { entries }
    }

    /// Construct from explicit rows; rejects non-square or asymmetric input.
    pub fn from_rows(entries: Vec<Vec<Rat>>) -> Result<GramMatrix, Error> {
        let n = entries.len();
        for row in &entries {
            if row.len() != n {
                return Err(Error::SizeMismatch {
                    left: n,
                    right: row.len(),
                });
            }
        }
        for x in 0..n {
            for y in 0..x {
                if entries[x][y] != entries[y][x] {
                    return Err(Error::Identity {
                        context: format!("gram symmetry at ({x},{y})"),
                        lhs: entries[x][y].to_string(),
                        rhs: entries[y][x].to_string(),
                    });
                }
            }
        }
        Ok(GramMatrix { entries })
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, x: usize, y: usize) -> &Rat {
        &self.entries[x][y]
    }

    pub fn rows(&self) -> &[Vec<Rat>] {
        &self.entries
    }

    /// CSV emission: one row per line, comma-separated rationals, no header.
    pub fn to_csv(&self) -> String {
        self.entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join("\n")
            + "\n"
    }
}

/// Exact positive-definiteness certificate: every leading principal minor.
#[derive(Debug, Clone, Serialize)]
pub struct MinorReport {
    /// `minors[k]` is the determinant of the leading `(k+1) x (k+1)` block.
    pub minors: Vec<String>,
    pub positive_definite: bool,
}

/// Determinant by fraction-free elimination with row pivoting.
fn determinant(block: &mut [Vec<Rat>]) -> Rat {
    let n = block.len();
    let mut sign = Rat::one();
    let mut prev_pivot = Rat::one();
    for k in 0..n {
        if block[k][k].is_zero() {
            match (k + 1..n).find(|&i| !block[i][k].is_zero()) {
                Some(i) => {
                    block.swap(k, i);
                    sign = -sign;
                }
                None => return Rat::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &block[i][j] * &block[k][k] - &block[i][k] * &block[k][j];
                block[i][j] = num / &prev_pivot;
            }
            block[i][k] = Rat::zero();
        }
        prev_pivot = block[k][k].clone();
    }
    sign * prev_pivot
}

/// All leading principal minors of a Gram matrix, exactly.
pub fn leading_minors(g: &GramMatrix) -> Vec<Rat> {
    (1..=g.size())
        .map(|k| {
            let mut block: Vec<Vec<Rat>> = (0..k)
                .map(|x| (0..k).map(|y| g.entry(x, y).clone()).collect())
                .collect();
            determinant(&mut block)
        })
        .collect()
}

/// Positive definite iff every leading principal minor is strictly positive.
pub fn is_positive_definite(g: &GramMatrix) -> MinorReport {
    let minors = leading_minors(g);
    let positive_definite = minors.iter().all(|m| m.is_positive());
    MinorReport {
        minors: minors.iter().map(|m| m.to_string()).collect(),
        positive_definite,
    }
}

/// `K(x,y)^2 <= C(2x,x) C(2y,y)`, checked exactly.
pub fn cauchy_schwarz_check(x: u64, y: u64) -> Result<(), Error> {
    let k = pascal_kernel(x, y);
    let lhs = &k * &k;
    let rhs = pascal_kernel(x, x) * pascal_kernel(y, y);
    if lhs <= rhs {
        Ok(())
    } else {
        Err(Error::Identity {
            context: format!("cauchy-schwarz at ({x},{y})"),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        })
    }
}
