//! Exponential generating function side of the transform theory.
//!
//! The Hurwitz transform sends a sequence to the series with coefficients
//! `f(x)/x!`. Composing with multiplication by `exp(-z)` turns the basis
//! functions into the monomial family `z^n/n!`, which is the orthonormal
//! basis of the entire-function kernel `sum z1^n z2^n/(n!)^2`; the inverse
//! binomial transform shows up as the intertwining
//! `H(f) = exp(z) H(f_inv)`.
//!
//! Series here are truncated formal objects with an explicit degree and
//! exact rational coefficients. Analytic statements (entirety, radius of
//! convergence) are out of scope; their algebraic shadows are coefficient
//! identities, which are checked exactly. The single deliberately float
//! compared diagnostic in the crate is [`g_a_family_check`], which carries
//! an explicit truncation and reports its deviation.

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{
    alt_sign_rat, binom_rat, factorial, parse_rat, rat_pow, rat_to_f64, Rat,
};
use crate::error::Error;
use crate::rkhs::RkhsElement;
use crate::transforms::{bft_inv, Prefix};

/// Formal power series truncated at an explicit degree.
///
/// `coeffs[n]` is the coefficient of the n-th power; the length is always
/// `degree + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<Rat>,
}

impl PowerSeries {
    /// Wrap explicit coefficients; must be non-empty.
    pub fn new(coeffs: Vec<Rat>) -> Result<PowerSeries, Error> {
        if coeffs.is_empty() {
            return Err(Error::EmptyPrefix);
        }
        Ok(PowerSeries { coeffs })
    }

    /// The constant series `1` at the given degree.
    pub fn one(degree: u64) -> PowerSeries {
        let mut coeffs = vec![Rat::zero(); (degree + 1) as usize];
        coeffs[0] = Rat::one();
        PowerSeries { coeffs }
    }

    pub fn degree(&self) -> u64 {
        (self.coeffs.len() - 1) as u64
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &Rat {
        &self.coeffs[n]
    }

    /// Exact polynomial evaluation of the truncation at a rational point.
    pub fn eval(&self, z: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * z + c)
    }
}

/// Cauchy product truncated at the shared degree; degrees must match.
pub fn mul(p: &PowerSeries, q: &PowerSeries) -> Result<PowerSeries, Error> {
    if p.degree() != q.degree() {
        return Err(Error::SizeMismatch {
            left: p.coeffs.len(),
            right: q.coeffs.len(),
        });
    }
    let n = p.coeffs.len();
    let mut coeffs = vec![Rat::zero(); n];
    for i in 0..n {
        if p.coeffs[i].is_zero() {
            continue;
        }
        for j in 0..n - i {
            if q.coeffs[j].is_zero() {
                continue;
            }
            coeffs[i + j] += &p.coeffs[i] * &q.coeffs[j];
        }
    }
    Ok(PowerSeries { coeffs })
}

/// Hurwitz transform of a prefix: coefficient of the x-th power is `f(x)/x!`.
///
/// Needs `degree < len(f)` so every coefficient is backed by a value.
pub fn hurwitz_series(f: &Prefix, degree: u64) -> Result<PowerSeries, Error> {
    if (degree as usize) >= f.len() {
        return Err(Error::DegreeExceedsPrefix {
            degree: degree as usize,
            len: f.len(),
        });
    }
    let coeffs = (0..=degree as usize)
        .map(|x| f.value(x) / Rat::from_integer(factorial(x as u64)))
        .collect();
    Ok(PowerSeries { coeffs })
}

/// Truncated exponential series, coefficients `1/n!`.
pub fn exp_series(degree: u64) -> PowerSeries {
    PowerSeries {
        coeffs: (0..=degree)
            .map(|n| Rat::new(1.into(), factorial(n)))
            .collect(),
    }
}

/// Truncated series of `exp(-z)`, coefficients `(-1)^n/n!`.
pub fn exp_neg_series(degree: u64) -> PowerSeries {
    PowerSeries {
        coeffs: (0..=degree)
            .map(|n| alt_sign_rat(n) / Rat::from_integer(factorial(n)))
            .collect(),
    }
}

/// Intertwining identity `H(f) = exp(z) H(f_inv)` checked coefficientwise
/// up to the requested degree, exactly.
pub fn verify_intertwining(f: &Prefix, degree: u64) -> Result<(), Error> {
    let direct = hurwitz_series(f, degree)?;
    let inverse_side = mul(&exp_series(degree), &hurwitz_series(&bft_inv(f), degree)?)?;
    for n in 0..=degree as usize {
        if direct.coeff(n) != inverse_side.coeff(n) {
            return Err(Error::Identity {
                context: format!("intertwining coefficient {n}"),
                lhs: direct.coeff(n).to_string(),
                rhs: inverse_side.coeff(n).to_string(),
            });
        }
    }
    Ok(())
}

/// The normalized map `exp(-z) H(f)`; sends the n-th basis function's
/// values to the monomial `z^n/n!` exactly.
pub fn script_h(f: &Prefix, degree: u64) -> Result<PowerSeries, Error> {
    mul(&exp_neg_series(degree), &hurwitz_series(f, degree)?)
}

/// Coefficient map into the disk's square-summable power series: an element
/// with basis coefficients `a_n` goes to `sum a_n z^n`, truncated.
///
/// Only defined on the undeformed space.
pub fn hardy_map(g: &RkhsElement, degree: u64) -> Result<PowerSeries, Error> {
    if g.deformation() != &Rat::one() {
        return Err(Error::DeformationNotOne(g.deformation().to_string()));
    }
    let coeffs = (0..=degree as usize)
        .map(|n| g.coeffs().value(n))
        .collect();
    Ok(PowerSeries { coeffs })
}

/// Result of the float-compared family diagnostic.
#[derive(Debug, Clone, Serialize)]
pub struct GaReport {
    pub a: String,
    pub x_max: u64,
    pub terms: u64,
    /// Per-window absolute deviations, indexed by x.
    pub deviations: Vec<f64>,
    pub max_abs_deviation: f64,
}

/// Check the eigen-relation of the family `g_a(x) = a^x/x!` under the
/// upper-triangular transform: the image is `exp(-a) g_a`.
///
/// The transform of `g_a` is an infinite alternating series, so partial
/// sums `S_T(x) = sum_{y=x}^{T} (-1)^{x+y} C(y,x) a^y/y!` are computed
/// exactly and only the final comparison against `exp(-a) a^x/x!` happens
/// in floating point. Requires `terms >= x_max + 8` so the tail is well
/// past the window.
pub fn g_a_family_check(a: &Rat, x_max: u64, terms: u64) -> Result<GaReport, Error> {
    if terms < x_max + 8 {
        return Err(Error::InsufficientTerms {
            terms: terms as usize,
            min: (x_max + 8) as usize,
        });
    }
    let scale = rat_to_f64(&-a.clone()).exp();
    let mut deviations = Vec::with_capacity((x_max + 1) as usize);
    let mut max_abs_deviation = 0.0f64;
    for x in 0..=x_max {
        let partial: Rat = (x..=terms)
            .map(|y| {
                alt_sign_rat(x + y) * binom_rat(y, x) * rat_pow(a, y)
                    / Rat::from_integer(factorial(y))
            })
            .sum();
        let target = scale * rat_to_f64(&rat_pow(a, x)) / rat_to_f64(&Rat::from_integer(factorial(x)));
        let deviation = (rat_to_f64(&partial) - target).abs();
        max_abs_deviation = max_abs_deviation.max(deviation);
        deviations.push(deviation);
    }
    Ok(GaReport {
        a: a.to_string(),
        x_max,
        terms,
        deviations,
        max_abs_deviation,
    })
}

/// Wire format for series: rationals in text form.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PowerSeriesJson {
    pub degree: u64,
    pub coeffs: Vec<String>,
}

impl PowerSeriesJson {
    pub fn from_series(p: &PowerSeries) -> PowerSeriesJson {
        PowerSeriesJson {
            degree: p.degree(),
            coeffs: p.coeffs().iter().map(|c| c.to_string()).collect(),
        }
    }

    pub fn to_series(&self) -> Result<PowerSeries, Error> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|s| parse_rat(s))
            .collect::<Result<Vec<_>, _>>()?;
        if coeffs.len() as u64 != self.degree + 1 {
            return Err(Error::SizeMismatch {
                left: coeffs.len(),
                right: (self.degree + 1) as usize,
            });
        }
        PowerSeries::new(coeffs)
    }
}

/// Values `e_n(x) = C(x,n)` on `0..=max_x` as a prefix, a convenience used
/// by tests and the verification harness.
pub fn basis_prefix(n: u64, max_x: u64) -> Prefix {
    Prefix::new((0..=max_x).map(|x| binom_rat(x, n)).collect()).expect("window is non-empty")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{rat, rat_int};
    use crate::kernels::k2_kernel_truncated;
    use crate::transforms::FiniteSupportSeq;
    use proptest::prelude::*;

    fn prefix(vals: &[i64]) -> Prefix {
        Prefix::new(vals.iter().map(|&v| rat_int(v)).collect()).unwrap()
    }

    #[test]
    fn hurwitz_series_examples() {
        let one_series = hurwitz_series(&prefix(&[1, 0, 0, 0]), 3).unwrap();
        assert_eq!(one_series.coeff(0), &Rat::one());
        for n in 1..=3 {
            assert_eq!(one_series.coeff(n), &Rat::zero());
        }

        // basis index 1: coefficients x/x! = 1/(x-1)!, the series of z exp(z)
        let e1 = hurwitz_series(&basis_prefix(1, 6), 6).unwrap();
        assert_eq!(e1.coeff(0), &Rat::zero());
        for x in 1..=6usize {
            assert_eq!(
                e1.coeff(x),
                &Rat::new(1.into(), factorial((x - 1) as u64))
            );
        }

        let ones = hurwitz_series(&prefix(&[1, 1, 1, 1, 1]), 4).unwrap();
        assert_eq!(ones, exp_series(4));
    }

    #[test]
    fn hurwitz_series_degree_guard() {
        assert!(matches!(
            hurwitz_series(&prefix(&[1, 2]), 2),
            Err(Error::DegreeExceedsPrefix { degree: 2, len: 2 })
        ));
    }

    #[test]
    fn exp_series_values_and_inverse() {
        assert_eq!(
            exp_series(2).coeffs(),
            &[rat_int(1), rat_int(1), rat(1, 2)]
        );
        assert_eq!(
            exp_neg_series(2).coeffs(),
            &[rat_int(1), rat_int(-1), rat(1, 2)]
        );
        let product = mul(&exp_series(12), &exp_neg_series(12)).unwrap();
        assert_eq!(product, PowerSeries::one(12));
    }

    #[test]
    fn mul_examples() {
        let p = PowerSeries::new(vec![rat_int(1), rat_int(1), rat_int(0)]).unwrap();
        let q = PowerSeries::new(vec![rat_int(1), rat_int(-1), rat_int(0)]).unwrap();
        let product = mul(&p, &q).unwrap();
        assert_eq!(product.coeffs(), &[rat_int(1), rat_int(0), rat_int(-1)]);
        assert_eq!(mul(&p, &PowerSeries::one(2)).unwrap(), p);
        assert!(matches!(
            mul(&p, &PowerSeries::one(5)),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn intertwining_examples() {
        assert!(verify_intertwining(&prefix(&[1, 0, 0, 0, 0]), 4).is_ok());
        assert!(verify_intertwining(&basis_prefix(2, 10), 10).is_ok());
        let mixed = Prefix::new(vec![
            rat(3, 2),
            rat_int(-4),
            rat(7, 5),
            rat_int(0),
            rat(1, 3),
            rat_int(2),
        ])
        .unwrap();
        assert!(verify_intertwining(&mixed, 5).is_ok());
    }

    #[test]
    fn script_h_sends_basis_to_monomials() {
        let s0 = script_h(&basis_prefix(0, 8), 8).unwrap();
        assert_eq!(s0, PowerSeries::one(8));

        let s1 = script_h(&basis_prefix(1, 8), 8).unwrap();
        for (n, c) in s1.coeffs().iter().enumerate() {
            let expected = if n == 1 { Rat::one() } else { Rat::zero() };
            assert_eq!(c, &expected, "monomial coefficient {n}");
        }

        let s3 = script_h(&basis_prefix(3, 16), 16).unwrap();
        for (n, c) in s3.coeffs().iter().enumerate() {
            let expected = if n == 3 { rat(1, 6) } else { Rat::zero() };
            assert_eq!(c, &expected);
        }
    }

    #[test]
    fn hardy_map_examples() {
        for n in 0..=6usize {
            let g = RkhsElement::plain(FiniteSupportSeq::delta(n));
            let image = hardy_map(&g, 8).unwrap();
            for (k, c) in image.coeffs().iter().enumerate() {
                let expected = if k == n { Rat::one() } else { Rat::zero() };
                assert_eq!(c, &expected);
            }
        }

        let a = rat(1, 2);
        let g = RkhsElement::plain(FiniteSupportSeq::new(
            (0..=10u64).map(|n| rat_pow(&a, n)).collect(),
        ));
        let image = hardy_map(&g, 10).unwrap();
        for (n, c) in image.coeffs().iter().enumerate() {
            assert_eq!(c, &rat_pow(&a, n as u64));
        }

        let zero = hardy_map(&RkhsElement::plain(FiniteSupportSeq::zero()), 5).unwrap();
        assert!(zero.coeffs().iter().all(Zero::is_zero));

        let deformed = RkhsElement::new(FiniteSupportSeq::delta(1), rat(1, 2));
        assert!(matches!(
            hardy_map(&deformed, 4),
            Err(Error::DeformationNotOne(_))
        ));
    }

    #[test]
    fn hardy_map_preserves_coefficient_inner_products() {
        let f = RkhsElement::plain(FiniteSupportSeq::new(vec![
            rat(1, 2),
            rat_int(-3),
            rat(2, 7),
        ]));
        let g = RkhsElement::plain(FiniteSupportSeq::new(vec![
            rat_int(4),
            rat(1, 3),
            rat_int(0),
            rat_int(1),
        ]));
        let degree = 6u64;
        let pf = hardy_map(&f, degree).unwrap();
        let pg = hardy_map(&g, degree).unwrap();
        let coefficient_side: Rat = pf
            .coeffs()
            .iter()
            .zip(pg.coeffs())
            .map(|(a, b)| a * b)
            .sum();
        assert_eq!(coefficient_side, f.inner(&g).unwrap());
    }

    #[test]
    fn k2_orthonormal_family_consistency() {
        // sum over monomial images reproduces the truncated kernel
        let degree = 10u64;
        let z1 = rat(2, 3);
        let z2 = rat(-1, 2);
        let synthesized: Rat = (0..=degree)
            .map(|n| {
                let series = script_h(&basis_prefix(n, degree), degree).unwrap();
                series.eval(&z1) * series.eval(&z2)
            })
            .sum();
        assert_eq!(synthesized, k2_kernel_truncated(&z1, &z2, degree));
    }

    #[test]
    fn ga_report_examples() {
        let zero = g_a_family_check(&Rat::zero(), 4, 20).unwrap();
        assert_eq!(zero.max_abs_deviation, 0.0);

        let half = g_a_family_check(&rat(1, 2), 8, 40).unwrap();
        assert!(half.max_abs_deviation <= 1e-12, "{}", half.max_abs_deviation);

        let one = g_a_family_check(&Rat::one(), 0, 40).unwrap();
        assert!(one.max_abs_deviation <= 1e-12);

        assert!(matches!(
            g_a_family_check(&rat(1, 2), 40, 40),
            Err(Error::InsufficientTerms { .. })
        ));
    }

    #[test]
    fn series_json_round_trip() {
        let p = PowerSeries::new(vec![rat(1, 2), rat_int(0), rat_int(-3)]).unwrap();
        let wire = PowerSeriesJson::from_series(&p);
        assert_eq!(wire.degree, 2);
        assert_eq!(wire.to_series().unwrap(), p);
        let inconsistent = PowerSeriesJson {
            degree: 4,
            coeffs: vec!["1".into()],
        };
        assert!(inconsistent.to_series().is_err());
    }

    #[test]
    fn eval_is_exact_polynomial_evaluation() {
        let p = PowerSeries::new(vec![rat_int(1), rat_int(2), rat_int(3)]).unwrap();
        assert_eq!(p.eval(&rat(1, 2)), rat(11, 4));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn intertwining_random(
            vals in prop::collection::vec((-30i64..30, 1i64..9).prop_map(|(n, d)| rat(n, d)), 4..28),
        ) {
            let degree = (vals.len() - 1) as u64;
            let p = Prefix::new(vals).unwrap();
            prop_assert!(verify_intertwining(&p, degree).is_ok());
        }

        #[test]
        fn mul_matches_pointwise_evaluation(
            av in prop::collection::vec(-9i64..9, 1..7),
            bv in prop::collection::vec(-9i64..9, 1..7),
            z_num in -4i64..4,
        ) {
            // truncation cross-check: evaluate the product of full
            // polynomials of equal degree
            let n = av.len().max(bv.len());
            let pad = |v: &[i64]| {
                let mut c: Vec<Rat> = v.iter().map(|&x| rat_int(x)).collect();
                c.resize(n, Rat::zero());
                c
            };
            let a = PowerSeries::new(pad(&av)).unwrap();
            let b = PowerSeries::new(pad(&bv)).unwrap();
            let product = mul(&a, &b).unwrap();
            // the truncated product agrees with the true product on the
            // kept coefficients; compare through a degree-preserving point
            // count: coefficients below n depend only on kept inputs
            let z = rat(z_num, 3);
            let mut full = Rat::zero();
            for i in 0..n {
                for j in 0..n {
                    if i + j < n {
                        full += a.coeff(i) * b.coeff(j) * rat_pow(&z, (i + j) as u64);
                    }
                }
            }
            prop_assert_eq!(product.eval(&z), full);
        }
    }
}
