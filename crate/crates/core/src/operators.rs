//! Exact truncations of the infinite triangular matrices.
//!
//! The graded Pascal matrix `L(lambda)` with entries `lambda^{x-y} C(x,y)`
//! forms a one-parameter group under multiplication, generated by the
//! strictly sub-diagonal matrix `A` with `A[x][x-1] = x`. All identities
//! here are entrywise and triangular, so finite leading blocks carry full
//! information; truncation size is always explicit and there are no lazy
//! infinite matrices.

use num::{One, Zero};

use crate::combinatorics::{binom_rat, factorial, rat_pow, Rat};
use crate::error::Error;
use crate::kernels::lambda_kernel;
use crate::transforms::{bft, bft_inv, FiniteSupportSeq, Prefix};

/// Shape certificate for a matrix truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Lower,
    Upper,
    Diagonal,
}

/// Dense `(N+1) x (N+1)` leading block of an infinite triangular matrix.
#[derive(Debug, Clone)]
pub struct TriangularMatrix {
    orientation: Orientation,
    entries: Vec<Vec<Rat>>,
}

/// Equality is entrywise; the orientation tag is a shape certificate, and a
/// diagonal matrix is also a valid lower or upper truncation.
impl PartialEq for TriangularMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries
    }
}

impl Eq for TriangularMatrix {}

impl TriangularMatrix {
    /// Build from an entry function, zeroing everything off the declared shape.
    fn build(size: usize, orientation: Orientation, entry: impl Fn(u64, u64) -> Rat) -> Self {
        let keep = |x: usize, y: usize| match orientation {
            Orientation::Lower => y <= x,
            Orientation::Upper => y >= x,
            Orientation::Diagonal => y == x,
        };
        let entries = (0..size)
            .map(|x| {
                (0..size)
                    .map(|y| {
                        if keep(x, y) {
                            entry(x as u64, y as u64)
                        } else {
                            Rat::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        TriangularMatrix {
            orientation,
            entries,
        }
    }

    /// Validate explicit rows against the orientation they claim.
    pub fn from_rows(orientation: Orientation, entries: Vec<Vec<Rat>>) -> Result<Self, Error> {
        let n = entries.len();
        for row in &entries {
            if row.len() != n {
                return Err(Error::SizeMismatch {
                    left: n,
                    right: row.len(),
                });
            }
        }
        let m = TriangularMatrix {
            orientation,
            entries,
        };
        if m.respects_orientation() {
            Ok(m)
        } else {
            Err(Error::NotTriangular)
        }
    }

    fn respects_orientation(&self) -> bool {
        let n = self.size();
        (0..n).all(|x| {
            (0..n).all(|y| {
                let keep = match self.orientation {
                    Orientation::Lower => y <= x,
                    Orientation::Upper => y >= x,
                    Orientation::Diagonal => y == x,
                };
                keep || self.entries[x][y].is_zero()
            })
        })
    }

    pub fn identity(size: usize) -> Self {
        Self::build(size, Orientation::Diagonal, |x, y| {
            if x == y {
                Rat::one()
            } else {
                Rat::zero()
            }
        })
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn entry(&self, x: usize, y: usize) -> &Rat {
        &self.entries[x][y]
    }

    pub fn rows(&self) -> &[Vec<Rat>] {
        &self.entries
    }

    /// Transpose; flips lower and upper.
    pub fn transpose(&self) -> TriangularMatrix {
        let n = self.size();
        let orientation = match self.orientation {
            Orientation::Lower => Orientation::Upper,
            Orientation::Upper => Orientation::Lower,
            Orientation::Diagonal => Orientation::Diagonal,
        };
        let entries = (0..n)
            .map(|x| (0..n).map(|y| self.entries[y][x].clone()).collect())
            .collect();
        TriangularMatrix {
            orientation,
            entries,
        }
    }

    /// Matrix-vector product on a dense window.
    pub fn apply(&self, v: &[Rat]) -> Result<Vec<Rat>, Error> {
        if v.len() != self.size() {
            return Err(Error::SizeMismatch {
                left: self.size(),
                right: v.len(),
            });
        }
        Ok(self
            .entries
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Leading `(m+1) x (m+1)` block.
    pub fn leading_block(&self, m: usize) -> TriangularMatrix {
        let entries = (0..=m)
            .map(|x| self.entries[x][..=m].to_vec())
            .collect();
        TriangularMatrix {
            orientation: self.orientation,
            entries,
        }
    }

    /// CSV emission, same format as the Gram matrix CSV.
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

/// Graded Pascal matrix: entry `(x,y) = lambda^{x-y} C(x,y)` for `y <= x`.
///
/// `lambda = 1` is the plain Pascal matrix; `lambda = 0` the identity.
pub fn build_l(lambda: &Rat, max_index: u64) -> TriangularMatrix {
    TriangularMatrix::build((max_index + 1) as usize, Orientation::Lower, |x, y| {
        rat_pow(lambda, x - y) * binom_rat(x, y)
    })
}

/// Upper-triangular adjoint `M(lambda) = L(lambda)^T`.
pub fn build_m(lambda: &Rat, max_index: u64) -> TriangularMatrix {
    build_l(lambda, max_index).transpose()
}

/// Group generator: `A[x][x-1] = x`, zero elsewhere.
pub fn build_a(max_index: u64) -> TriangularMatrix {
    TriangularMatrix::build((max_index + 1) as usize, Orientation::Lower, |x, y| {
        if y + 1 == x {
            Rat::from_integer(x.into())
        } else {
            Rat::zero()
        }
    })
}

/// Grading diagonal `D(lambda) = diag(lambda^x)`.
pub fn build_d(lambda: &Rat, max_index: u64) -> TriangularMatrix {
    TriangularMatrix::build((max_index + 1) as usize, Orientation::Diagonal, |x, _| {
        rat_pow(lambda, x)
    })
}

/// Exact product of equal-size truncations.
///
/// The dense product is computed and then classified; combinations whose
/// product is not triangular (lower times upper) are rejected. For
/// lower-triangular operands truncation commutes with the infinite product,
/// so the result is the leading block of the infinite one.
pub fn mat_mul(a: &TriangularMatrix, b: &TriangularMatrix) -> Result<TriangularMatrix, Error> {
    let n = a.size();
    if b.size() != n {
        return Err(Error::SizeMismatch {
            left: n,
            right: b.size(),
        });
    }
    let mut entries = vec![vec![Rat::zero(); n]; n];
    for x in 0..n {
        for k in 0..n {
            if a.entries[x][k].is_zero() {
                continue;
            }
            for y in 0..n {
                if b.entries[k][y].is_zero() {
                    continue;
                }
                entries[x][y] += &a.entries[x][k] * &b.entries[k][y];
            }
        }
    }
    let strictly_upper_zero = (0..n).all(|x| (x + 1..n).all(|y| entries[x][y].is_zero()));
    let strictly_lower_zero = (0..n).all(|x| (0..x).all(|y| entries[x][y].is_zero()));
    let orientation = match (strictly_upper_zero, strictly_lower_zero) {
        (true, true) => Orientation::Diagonal,
        (true, false) => Orientation::Lower,
        (false, true) => Orientation::Upper,
        (false, false) => return Err(Error::NotTriangular),
    };
    Ok(TriangularMatrix {
        orientation,
        entries,
    })
}

/// `exp(lambda A)` as the finite sum `sum_{k=0}^{N} (lambda A)^k / k!`.
///
/// `A` truncated at size `N+1` is nilpotent of index at most `N+1`, so the
/// series terminates and the result is exact. It must equal `L(lambda)`.
pub fn exp_nilpotent(lambda: &Rat, max_index: u64) -> TriangularMatrix {
    let n = (max_index + 1) as usize;
    let generator = build_a(max_index);
    let mut acc = TriangularMatrix::identity(n);
    let mut term = TriangularMatrix::identity(n);
    for k in 1..=max_index {
        term = mat_mul(&term, &generator).expect("powers of the generator stay lower");
        let scale = rat_pow(lambda, k) / Rat::from_integer(factorial(k));
        for x in 0..n {
            for y in 0..n {
                if term.entries[x][y].is_zero() {
                    continue;
                }
                acc.entries[x][y] += &term.entries[x][y] * &scale;
            }
        }
    }
    // diagonal identity plus strictly lower terms
    acc.orientation = Orientation::Lower;
    acc
}

/// Group law `L(lambda) L(mu) = L(lambda + mu)`, checked entrywise.
pub fn verify_semigroup(lambda: &Rat, mu: &Rat, max_index: u64) -> Result<(), Error> {
    let product = mat_mul(&build_l(lambda, max_index), &build_l(mu, max_index))?;
    let direct = build_l(&(lambda + mu), max_index);
    first_difference(&product, &direct, &format!("semigroup({lambda},{mu})"))
}

/// Factorization `(L(lambda) L(lambda)^T)_{x,y} = K_lambda(x,y)`, checked
/// entrywise against the kernel module's own evaluation.
pub fn verify_factorization(lambda: &Rat, max_index: u64) -> Result<(), Error> {
    let l = build_l(lambda, max_index);
    let n = l.size();
    for x in 0..n {
        for y in 0..n {
            let product: Rat = (0..n)
                .map(|k| &l.entries[x][k] * &l.entries[y][k])
                .sum();
            let kernel = lambda_kernel(x as u64, y as u64, lambda);
            if product != kernel {
                return Err(Error::Identity {
                    context: format!("factorization lambda={lambda} at ({x},{y})"),
                    lhs: product.to_string(),
                    rhs: kernel.to_string(),
                });
            }
        }
    }
    Ok(())
}

/// Diagonal conjugation identities behind the group law:
/// `L(lambda) = D(lambda) L(1) D(lambda)^{-1}` and the two-factor chain
/// `L(lambda) L(mu) = D(lambda) L(1) D(lambda)^{-1} D(mu) L(1) D(mu)^{-1}`.
///
/// Requires nonzero parameters since the inverses `D(1/lambda)` appear.
pub fn zadeh_conjugation_check(lambda: &Rat, mu: &Rat, max_index: u64) -> Result<(), Error> {
    if lambda.is_zero() || mu.is_zero() {
        return Err(Error::LambdaZero);
    }
    let one = Rat::one();
    let conjugate = |l: &Rat| -> Result<TriangularMatrix, Error> {
        let inv = &one / l;
        mat_mul(
            &mat_mul(&build_d(l, max_index), &build_l(&one, max_index))?,
            &build_d(&inv, max_index),
        )
    };
    let left = conjugate(lambda)?;
    first_difference(
        &left,
        &build_l(lambda, max_index),
        &format!("conjugation lambda={lambda}"),
    )?;
    let chain = mat_mul(&left, &conjugate(mu)?)?;
    let product = mat_mul(&build_l(lambda, max_index), &build_l(mu, max_index))?;
    first_difference(&chain, &product, &format!("conjugation chain ({lambda},{mu})"))
}

fn first_difference(
    a: &TriangularMatrix,
    b: &TriangularMatrix,
    context: &str,
) -> Result<(), Error> {
    if a.size() != b.size() {
        return Err(Error::SizeMismatch {
            left: a.size(),
            right: b.size(),
        });
    }
    for x in 0..a.size() {
        for y in 0..a.size() {
            if a.entries[x][y] != b.entries[x][y] {
                return Err(Error::Identity {
                    context: format!("{context} at ({x},{y})"),
                    lhs: a.entries[x][y].to_string(),
                    rhs: b.entries[x][y].to_string(),
                });
            }
        }
    }
    Ok(())
}

/// Registry of matrix builders selectable by name from the command line.
pub const MATRIX_NAMES: &[&str] = &["l", "a", "m", "d"];

/// Build a matrix kind by name (case-insensitive). `lambda` is required for
/// `l`, `m`, `d` and rejected for `a`.
pub fn build_matrix(
    name: &str,
    lambda: Option<&Rat>,
    max_index: u64,
) -> Result<TriangularMatrix, Error> {
    match (name.to_ascii_lowercase().as_str(), lambda) {
        ("l", Some(l)) => Ok(build_l(l, max_index)),
        ("m", Some(l)) => Ok(build_m(l, max_index)),
        ("d", Some(l)) => Ok(build_d(l, max_index)),
        ("a", None) => Ok(build_a(max_index)),
        _ => Err(Error::UnknownSelection(format!(
            "unknown matrix selection: {name:?} (expected one of {MATRIX_NAMES:?}; \
             --lambda is required for l, m, d and not accepted for a)"
        ))),
    }
}

/// Adjoint action on finitely supported sequences:
/// `(M(lambda) f)(m) = sum_{x>=m} lambda^{x-m} C(x,m) f(x)`.
///
/// This is the graded generalization of the second inverse transform
/// (`lambda = 1` coincides with it). Only finitely supported inputs are
/// accepted; for general space elements the entrywise series diverges when
/// `|lambda| >= 1`, so no extension is attempted.
pub fn adjoint_apply(lambda: &Rat, f: &FiniteSupportSeq) -> FiniteSupportSeq {
    let bound = f.support_bound();
    let values = (0..bound)
        .map(|m| {
            (m..bound)
                .map(|x| {
                    rat_pow(lambda, (x - m) as u64) * binom_rat(x as u64, m as u64) * f.value(x)
                })
                .sum()
        })
        .collect();
    FiniteSupportSeq::new(values)
}

/// `L(1) f = bft(f)` and the companion vector identities, used by tests and
/// the verification harness.
pub fn matrix_vector_transform_check(f: &Prefix) -> Result<(), Error> {
    let max_index = (f.len() - 1) as u64;
    let one = Rat::one();
    let lf = build_l(&one, max_index).apply(f.values())?;
    if lf != f_values(&bft(f)) {
        return Err(Error::Identity {
            context: "L(1) f vs forward transform".into(),
            lhs: format!("{lf:?}"),
            rhs: format!("{:?}", f_values(&bft(f))),
        });
    }
    let linv = build_l(&-&one, max_index).apply(f.values())?;
    if linv != f_values(&bft_inv(f)) {
        return Err(Error::Identity {
            context: "L(-1) f vs inverse transform".into(),
            lhs: format!("{linv:?}"),
            rhs: format!("{:?}", f_values(&bft_inv(f))),
        });
    }
    Ok(())
}

fn f_values(p: &Prefix) -> Vec<Rat> {
    p.values().to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{rat, rat_int};
    use crate::transforms::{second_fwd, FiniteSupportSeq};

    #[test]
    fn pascal_matrix_rows() {
        let l = build_l(&Rat::one(), 3);
        let expected = [
            [1, 0, 0, 0],
            [1, 1, 0, 0],
            [1, 2, 1, 0],
            [1, 3, 3, 1],
        ];
        for (x, row) in expected.iter().enumerate() {
            for (y, v) in row.iter().enumerate() {
                assert_eq!(l.entry(x, y), &rat_int(*v));
            }
        }
    }

    #[test]
    fn graded_entries_and_degenerate_lambda() {
        let l = build_l(&rat(1, 2), 3);
        assert_eq!(l.entry(3, 1), &rat(3, 4));
        assert_eq!(build_l(&Rat::zero(), 5), TriangularMatrix::identity(6));
    }

    #[test]
    fn generator_band() {
        let a = build_a(2);
        assert_eq!(a.rows()[0], vec![rat_int(0), rat_int(0), rat_int(0)]);
        assert_eq!(a.rows()[1], vec![rat_int(1), rat_int(0), rat_int(0)]);
        assert_eq!(a.rows()[2], vec![rat_int(0), rat_int(2), rat_int(0)]);
        assert_eq!(build_a(0).rows()[0], vec![rat_int(0)]);
        let a4 = build_a(4);
        assert_eq!(a4.entry(4, 3), &rat_int(4));
        assert_eq!(a4.entry(4, 2), &rat_int(0));
    }

    #[test]
    fn product_examples() {
        let one = Rat::one();
        let l1 = build_l(&one, 4);
        let sq = mat_mul(&l1, &l1).unwrap();
        assert_eq!(sq.entry(2, 0), &rat_int(4));
        assert_eq!(sq, build_l(&rat_int(2), 4));

        let id = TriangularMatrix::identity(5);
        assert_eq!(mat_mul(&l1, &id).unwrap(), l1);

        let d = mat_mul(&build_d(&rat(1, 2), 4), &build_d(&rat_int(6), 4)).unwrap();
        assert_eq!(d, build_d(&rat_int(3), 4));
        assert_eq!(d.orientation(), Orientation::Diagonal);
    }

    #[test]
    fn product_size_mismatch() {
        let a = build_l(&Rat::one(), 3);
        let b = build_l(&Rat::one(), 4);
        assert!(matches!(
            mat_mul(&a, &b),
            Err(Error::SizeMismatch { left: 4, right: 5 })
        ));
    }

    #[test]
    fn non_triangular_product_rejected() {
        let l = build_l(&Rat::one(), 3);
        let u = l.transpose();
        assert!(matches!(mat_mul(&l, &u), Err(Error::NotTriangular)));
    }

    #[test]
    fn exponential_matches_direct_construction() {
        assert_eq!(exp_nilpotent(&Rat::zero(), 6), TriangularMatrix::identity(7));
        let expected = [[1, 0, 0], [1, 1, 0], [1, 2, 1]];
        let e = exp_nilpotent(&Rat::one(), 2);
        for (x, row) in expected.iter().enumerate() {
            for (y, v) in row.iter().enumerate() {
                assert_eq!(e.entry(x, y), &rat_int(*v));
            }
        }
        for lam in [Rat::one(), -Rat::one(), rat(1, 2), rat(7, 3)] {
            assert_eq!(exp_nilpotent(&lam, 16), build_l(&lam, 16));
        }
    }

    #[test]
    fn semigroup_examples() {
        assert!(verify_semigroup(&Rat::one(), &Rat::one(), 8).is_ok());
        assert!(verify_semigroup(&rat(5, 7), &Rat::zero(), 8).is_ok());
        assert!(verify_semigroup(&rat(1, 2), &rat(-1, 2), 8).is_ok());
        let inv = mat_mul(&build_l(&rat(1, 2), 8), &build_l(&rat(-1, 2), 8)).unwrap();
        assert_eq!(inv, TriangularMatrix::identity(9));
    }

    #[test]
    fn factorization_examples() {
        for lam in [Rat::one(), rat(1, 2), rat_int(2), rat(-1, 3), rat(2, 3)] {
            assert!(verify_factorization(&lam, 8).is_ok());
        }
        assert!(verify_factorization(&Rat::one(), 0).is_ok());
    }

    #[test]
    fn conjugation_examples() {
        assert!(zadeh_conjugation_check(&rat_int(2), &rat_int(3), 6).is_ok());
        assert!(zadeh_conjugation_check(&Rat::one(), &Rat::one(), 5).is_ok());
        assert!(zadeh_conjugation_check(&rat(1, 2), &-Rat::one(), 6).is_ok());
        assert!(matches!(
            zadeh_conjugation_check(&Rat::zero(), &Rat::one(), 4),
            Err(Error::LambdaZero)
        ));
    }

    #[test]
    fn truncation_coherence() {
        let a = build_l(&rat(3, 5), 24);
        let b = build_l(&rat(-2, 7), 24);
        let product = mat_mul(&a, &b).unwrap();
        for m in [0usize, 5, 11, 24] {
            let block = mat_mul(&a.leading_block(m), &b.leading_block(m)).unwrap();
            assert_eq!(product.leading_block(m), block);
        }
    }

    #[test]
    fn vector_identities() {
        let p = Prefix::new(vec![rat_int(3), rat(1, 2), rat_int(-2), rat(5, 4)]).unwrap();
        assert!(matrix_vector_transform_check(&p).is_ok());

        // M(-1) applied to a padded finitely supported vector is the second
        // forward transform on that window.
        let f = FiniteSupportSeq::new(vec![rat_int(2), rat_int(0), rat_int(-1)]);
        let n = 6usize;
        let m = build_m(&-Rat::one(), (n - 1) as u64);
        let padded = f.to_prefix(n);
        let image = m.apply(padded.values()).unwrap();
        let expected = second_fwd(&f);
        for (x, v) in image.iter().enumerate() {
            assert_eq!(v, &expected.value(x), "at {x}");
        }
    }

    #[test]
    fn adjoint_apply_matches_second_inverse_at_one() {
        let f = FiniteSupportSeq::new(vec![rat_int(2), rat(-1, 3), rat_int(0), rat(5, 7)]);
        assert_eq!(
            adjoint_apply(&Rat::one(), &f),
            crate::transforms::second_inv(&f)
        );
    }

    #[test]
    fn adjoint_apply_is_isometric_for_the_deformed_kernel() {
        // <M(l)f, M(l)g>_{l2} = sum f(x) g(y) K_l(x,y), exactly
        use crate::kernels::lambda_kernel;
        for lam in [rat(1, 2), rat_int(2), rat(-1, 3)] {
            let f = FiniteSupportSeq::new(vec![rat_int(1), rat(2, 3), rat_int(-2)]);
            let g = FiniteSupportSeq::new(vec![rat(1, 5), rat_int(0), rat_int(3), rat_int(1)]);
            let mf = adjoint_apply(&lam, &f);
            let mg = adjoint_apply(&lam, &g);
            let bound = mf.support_bound().max(mg.support_bound());
            let lhs: Rat = (0..bound).map(|m| mf.value(m) * mg.value(m)).sum();
            let rhs: Rat = (0..f.support_bound())
                .flat_map(|x| (0..g.support_bound()).map(move |y| (x, y)))
                .map(|(x, y)| {
                    f.value(x) * g.value(y) * lambda_kernel(x as u64, y as u64, &lam)
                })
                .sum();
            assert_eq!(lhs, rhs, "at lambda={lam}");
        }
    }

    #[test]
    fn builder_registry() {
        assert!(build_matrix("l", Some(&rat(1, 2)), 4).is_ok());
        assert!(build_matrix("m", Some(&rat(1, 2)), 4).is_ok());
        assert!(build_matrix("d", Some(&rat_int(3)), 4).is_ok());
        assert!(build_matrix("a", None, 4).is_ok());
        assert!(build_matrix("a", Some(&Rat::one()), 4).is_err());
        assert!(build_matrix("l", None, 4).is_err());
        assert!(build_matrix("x", None, 4).is_err());
    }

    #[test]
    fn from_rows_validates_shape() {
        let good = TriangularMatrix::from_rows(
            Orientation::Lower,
            vec![
                vec![rat_int(1), rat_int(0)],
                vec![rat_int(5), rat_int(1)],
            ],
        );
        assert!(good.is_ok());
        let bad = TriangularMatrix::from_rows(
            Orientation::Lower,
            vec![
                vec![rat_int(1), rat_int(7)],
                vec![rat_int(5), rat_int(1)],
            ],
        );
        assert!(matches!(bad, Err(Error::NotTriangular)));
    }
}
