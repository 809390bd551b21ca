//! Identity verification harness.
//!
//! Every algebraic identity the library rests on is packaged as a named
//! check inside a named suite. Suites implement the [`Suite`] trait and are
//! looked up at runtime through [`run_suite`], so the command line can
//! select them by name; `all` runs the union. Reports are machine-readable
//! and canonically ordered (checks sorted by id) regardless of execution
//! order.
//!
//! Checks draw any randomized inputs from a fixed-seed generator, so output
//! is byte-for-byte deterministic for identical flags. The `scale` knob
//! bounds the grids; expensive checks clamp it to keep the whole `all`
//! suite comfortably under a minute.

use num::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::combinatorics::{
    alt_sign_rat, binom, binom_rat, is_integer, q_binom, rat, rat_int, rat_pow, QParam, Rat,
};
use crate::error::Error;
use crate::hurwitz::{
    basis_prefix, g_a_family_check, hardy_map, script_h, verify_intertwining, PowerSeries,
};
use crate::hypergroup::{coproduct_formula, coproduct_oracle};
use crate::kernels::{
    is_positive_definite, k2_kernel_truncated, lambda_kernel, leading_minors, pascal_kernel,
    q_kernel, GramMatrix, KernelKind,
};
use crate::operators::{
    build_l, exp_nilpotent, mat_mul, matrix_vector_transform_check, verify_factorization,
    verify_semigroup, zadeh_conjugation_check,
};
use crate::rkhs::{
    growth_bound_check, kernel_section, membership_diagnostic, onb_value, reproducing_check,
    RkhsElement, Verdict,
};
use crate::transforms::{
    adjoint_pairing_check, bft, bft_inv, kernel_pairing, plancherel_second, second_fwd,
    second_inv, FiniteSupportSeq, Prefix,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CheckStatus {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
}

/// One verified identity: its id, the identity itself as a readable anchor,
/// the scale it ran at, and a witness when it failed.
#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub id: String,
    #[serde(rename = "paper_anchor")]
    pub anchor: String,
    pub scale: u64,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub total: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub checks: Vec<CheckOutcome>,
    pub summary: Summary,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }
}

/// A named family of identity checks, selectable at runtime.
pub trait Suite {
    fn name(&self) -> &'static str;
    fn run(&self, scale: u64) -> Vec<CheckOutcome>;
}

/// Registry of every suite, in canonical order.
pub fn suites() -> Vec<Box<dyn Suite>> {
    vec![
        Box::new(OrthogonalitySuite),
        Box::new(InversionSuite),
        Box::new(SemigroupSuite),
        Box::new(FactorizationSuite),
        Box::new(CoproductSuite),
        Box::new(HurwitzSuite),
        Box::new(PlancherelSuite),
        Box::new(QKernelSuite),
    ]
}

/// Suite names accepted by [`run_suite`], including the union suite `all`.
pub fn suite_names() -> Vec<&'static str> {
    let mut names = vec!["all"];
    names.extend(suites().iter().map(|s| s.name()).collect::<Vec<_>>());
    names
}

/// Run one suite (or `all`) at the given scale.
pub fn run_suite(name: &str, scale: u64) -> Result<VerifyReport, Error> {
    let registry = suites();
    let mut checks = Vec::new();
    let mut matched = false;
    for suite in &registry {
        if name == "all" || name == suite.name() {
            matched = true;
            checks.extend(suite.run(scale));
        }
    }
    if !matched {
        return Err(Error::UnknownSelection(format!(
            "unknown suite {name:?} (expected one of {:?})",
            suite_names()
        )));
    }
    checks.sort_by(|a, b| a.id.cmp(&b.id));
    let passed = checks.iter().filter(|c| c.status == CheckStatus::Pass).count();
    let failed = checks.len() - passed;
    Ok(VerifyReport {
        suite: name.to_string(),
        summary: Summary {
            passed,
            failed,
            total: checks.len(),
        },
        checks,
    })
}

fn outcome(id: &str, anchor: &str, scale: u64, result: Result<(), Error>) -> CheckOutcome {
    match result {
        Ok(()) => CheckOutcome {
            id: id.to_string(),
            anchor: anchor.to_string(),
            scale,
            status: CheckStatus::Pass,
            witness: None,
        },
        Err(e) => CheckOutcome {
            id: id.to_string(),
            anchor: anchor.to_string(),
            scale,
            status: CheckStatus::Fail,
            witness: Some(e.to_string()),
        },
    }
}

fn mismatch(context: String, lhs: impl ToString, rhs: impl ToString) -> Error {
    Error::Identity {
        context,
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
    }
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(context: &str, lhs: T, rhs: T) -> Result<(), Error> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(Error::Identity {
            context: context.to_string(),
            lhs: format!("{lhs:?}"),
            rhs: format!("{rhs:?}"),
        })
    }
}

fn rng_for(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed_0000 + salt)
}

fn random_rat(rng: &mut ChaCha8Rng) -> Rat {
    let numer = rng.gen_range(-9i64..=9);
    let denom = rng.gen_range(1i64..=9);
    rat(numer, denom)
}

fn random_finite(rng: &mut ChaCha8Rng, max_support: usize) -> FiniteSupportSeq {
    let len = rng.gen_range(1..=max_support.max(1));
    FiniteSupportSeq::new((0..len).map(|_| random_rat(rng)).collect())
}

fn random_prefix(rng: &mut ChaCha8Rng, len: usize) -> Prefix {
    Prefix::new((0..len.max(1)).map(|_| random_rat(rng)).collect()).expect("non-empty")
}

struct OrthogonalitySuite;

impl Suite for OrthogonalitySuite {
    fn name(&self) -> &'static str {
        "orthogonality"
    }

    fn run(&self, scale: u64) -> Vec<CheckOutcome> {
        vec![
            outcome(
                "orthogonality.alternating-binomial",
                "sum_{j=m}^{n} (-1)^{m+j} C(n,j) C(j,m) = delta_{mn}",
                scale,
                alternating_orthogonality(scale),
            ),
            outcome(
                "orthogonality.basis-kronecker",
                "<e_n, e_m> = delta_{nm} on basis coefficients",
                scale.min(32),
                basis_kronecker(scale.min(32)),
            ),
            outcome(
                "orthogonality.kernel-sections",
                "<K(.,n), K(.,m)> = K(n,m) and |K(.,y)|^2 = C(2y,y)",
                scale.min(24),
                kernel_section_inners(scale.min(24)),
            ),
            outcome(
                "orthogonality.reproducing-property",
                "<g, K(.,x)> = g(x) for finitely supported coefficients",
                scale.min(32),
                reproducing_random(scale.min(32)),
            ),
        ]
    }
}

pub fn alternating_orthogonality(max_n: u64) -> Result<(), Error> {
    for n in 0..=max_n {
        for m in 0..=n {
            let sum: Rat = (m..=n)
                .map(|j| alt_sign_rat(m + j) * binom_rat(n, j) * binom_rat(j, m))
                .sum();
            let expected = if m == n { Rat::one() } else { Rat::zero() };
            expect_eq(&format!("orthogonality at (m={m},n={n})"), sum, expected)?;
        }
    }
    Ok(())
}

fn basis_kronecker(max_n: u64) -> Result<(), Error> {
    for n in 0..=max_n as usize {
        for m in 0..=max_n as usize {
            let en = RkhsElement::plain(FiniteSupportSeq::delta(n));
            let em = RkhsElement::plain(FiniteSupportSeq::delta(m));
            let expected = if n == m { Rat::one() } else { Rat::zero() };
            expect_eq(&format!("kronecker at ({n},{m})"), en.inner(&em)?, expected)?;
        }
    }
    Ok(())
}

fn kernel_section_inners(max_n: u64) -> Result<(), Error> {
    let one = Rat::one();
    for n in 0..=max_n {
        for m in 0..=max_n {
            let kn = kernel_section(n, &one);
            let km = kernel_section(m, &one);
            expect_eq(
                &format!("section inner at ({n},{m})"),
                kn.inner(&km)?,
                Rat::from_integer(pascal_kernel(n, m)),
            )?;
        }
        let k = kernel_section(n, &one);
        expect_eq(
            &format!("section norm at {n}"),
            k.norm_sq(),
            Rat::from_integer(binom(2 * n, n)),
        )?;
    }
    Ok(())
}

fn reproducing_random(max_x: u64) -> Result<(), Error> {
    let mut rng = rng_for(1);
    for _ in 0..24 {
        let g = RkhsElement::plain(random_finite(&mut rng, 16));
        let x = rng.gen_range(0..=max_x);
        reproducing_check(&g, x)?;
    }
    reproducing_check(&RkhsElement::plain(FiniteSupportSeq::zero()), 5)?;
    Ok(())
}

struct InversionSuite;

impl Suite for InversionSuite {
    fn name(&self) -> &'static str {
        "inversion"
    }

    fn run(&self, scale: u64) -> Vec<CheckOutcome> {
        vec![
            outcome(
                "inversion.kernel-alternating-sum",
                "sum_{l=0}^{n} (-1)^{n+l} C(n,l) K(l,m) = C(m,n) [m >= n]",
                scale,
                kernel_inversion(scale),
            ),
            outcome(
                "inversion.forward-round-trip",
                "inverse(forward(f)) = f = forward(inverse(f)) on prefixes",
                scale.min(64),
                forward_round_trips(scale.min(64)),
            ),
            outcome(
                "inversion.worked-images",
                "1 -> 2^x, (-1)^j -> delta_0, delta_n -> e_n, \
                 (-1)^{n+m} e_n -> delta_n, a^j -> (1+a)^x",
                scale.min(32),
                worked_images(scale.min(32)),
            ),
            outcome(
                "inversion.membership-shadow",
                "inverse transform of a finitely generated value prefix \
                 recovers the coefficients followed by exact zeros",
                scale.min(16),
                membership_shadow(scale.min(16)),
            ),
            outcome(
                "inversion.diagonal-and-cauchy-schwarz",
                "K(x,x) = C(2x,x) = e_x(2x); K(x,y)^2 <= C(2x,x) C(2y,y)",
                scale,
                diagonal_and_cs(scale),
            ),
        ]
    }
}

pub fn kernel_inversion(max_n: u64) -> Result<(), Error> {
    for n in 0..=max_n {
        for m in 0..=max_n {
            let sum: Rat = (0..=n)
                .map(|l| {
                    alt_sign_rat(n + l)
                        * binom_rat(n, l)
                        * Rat::from_integer(pascal_kernel(l, m))
                })
                .sum();
            let expected = if m >= n { binom_rat(m, n) } else { Rat::zero() };
            expect_eq(&format!("kernel inversion at (n={n},m={m})"), sum, expected)?;
        }
    }
    Ok(())
}

fn forward_round_trips(max_len: u64) -> Result<(), Error> {
    let mut rng = rng_for(2);
    for _ in 0..20 {
        let len = rng.gen_range(1..=max_len.max(1)) as usize;
        let p = random_prefix(&mut rng, len);
        expect_eq("inverse of forward", bft_inv(&bft(&p)), p.clone())?;
        expect_eq("forward of inverse", bft(&bft_inv(&p)), p)?;
    }
    Ok(())
}

fn worked_images(max_x: u64) -> Result<(), Error> {
    let len = (max_x + 1) as usize;
    let two = rat_int(2);

    let ones = Prefix::new(vec![Rat::one(); len])?;
    let doubling = bft(&ones);
    for x in 0..len {
        expect_eq(
            &format!("image of constant one at {x}"),
            doubling.value(x).clone(),
            rat_pow(&two, x as u64),
        )?;
    }

    let alternating = Prefix::new((0..len).map(|j| alt_sign_rat(j as u64)).collect())?;
    let spike = bft(&alternating);
    for x in 0..len {
        let expected = if x == 0 { Rat::one() } else { Rat::zero() };
        expect_eq(
            &format!("image of alternating signs at {x}"),
            spike.value(x).clone(),
            expected,
        )?;
    }

    for n in 0..=8u64.min(max_x) {
        let delta = FiniteSupportSeq::delta(n as usize).to_prefix(len);
        let image = bft(&delta);
        for x in 0..len {
            expect_eq(
                &format!("delta_{n} image at {x}"),
                image.value(x).clone(),
                onb_value(n, x as u64, &Rat::one()),
            )?;
        }

        // parity-twisted basis values map back to the delta
        let twisted = Prefix::new(
            (0..len)
                .map(|m| alt_sign_rat(n + m as u64) * onb_value(n, m as u64, &Rat::one()))
                .collect(),
        )?;
        let image = bft(&twisted);
        for x in 0..len {
            let expected = if x as u64 == n { Rat::one() } else { Rat::zero() };
            expect_eq(
                &format!("twisted basis {n} image at {x}"),
                image.value(x).clone(),
                expected,
            )?;
        }
    }

    for a in [rat(1, 2), rat(-1, 3), rat_int(2)] {
        let geometric = Prefix::new((0..len).map(|j| rat_pow(&a, j as u64)).collect())?;
        let image = bft(&geometric);
        let base = Rat::one() + &a;
        for x in 0..len {
            expect_eq(
                &format!("geometric family a={a} at {x}"),
                image.value(x).clone(),
                rat_pow(&base, x as u64),
            )?;
        }
    }
    Ok(())
}

fn membership_shadow(max_support: u64) -> Result<(), Error> {
    let mut rng = rng_for(3);
    for _ in 0..20 {
        let coeffs = random_finite(&mut rng, max_support as usize);
        let element = RkhsElement::plain(coeffs.clone());
        let window = coeffs.support_bound() as u64 + 8;
        let values = element.value_prefix(window);
        let recovered = bft_inv(&values);
        for n in 0..=window as usize {
            expect_eq(
                &format!("coefficient recovery at {n}"),
                recovered.value(n).clone(),
                coeffs.value(n),
            )?;
        }
        let report = membership_diagnostic(&values)?;
        if report.verdict != Verdict::Member {
            return Err(mismatch(
                "membership verdict for finitely generated prefix".into(),
                "advisory-only",
                "member",
            ));
        }
    }
    Ok(())
}

pub fn diagonal_and_cs(max_n: u64) -> Result<(), Error> {
    for x in 0..=max_n {
        let diag = pascal_kernel(x, x);
        expect_eq(
            &format!("diagonal closed form at {x}"),
            diag.clone(),
            binom(2 * x, x),
        )?;
        expect_eq(
            &format!("diagonal as basis value at {x}"),
            Rat::from_integer(diag),
            onb_value(x, 2 * x, &Rat::one()),
        )?;
    }
    for x in 0..=max_n {
        for y in 0..=max_n {
            let k = pascal_kernel(x, y);
            let lhs = &k * &k;
            let rhs = pascal_kernel(x, x) * pascal_kernel(y, y);
            if lhs > rhs {
                return Err(mismatch(format!("cauchy-schwarz at ({x},{y})"), lhs, rhs));
            }
        }
    }
    Ok(())
}

struct SemigroupSuite;

impl Suite for SemigroupSuite {
    fn name(&self) -> &'static str {
        "semigroup"
    }

    fn run(&self, scale: u64) -> Vec<CheckOutcome> {
        let n = scale.min(32);
        vec![
            outcome(
                "semigroup.group-law",
                "L(a) L(b) = L(a+b) on truncations",
                n,
                group_law(n),
            ),
            outcome(
                "semigroup.exponential",
                "L(a) = exp(a A) with A the sub-diagonal generator",
                n,
                exponential_form(n),
            ),
            outcome(
                "semigroup.diagonal-conjugation",
                "L(a) = D(a) L(1) D(a)^{-1} and the two-factor chain",
                scale.min(16),
                conjugation(scale.min(16)),
            ),
            outcome(
                "semigroup.truncation-coherence",
                "leading blocks of products equal products of leading blocks",
                scale.min(24),
                truncation_coherence(scale.min(24)),
            ),
        ]
    }
}

fn named_lambdas() -> Vec<Rat> {
    vec![
        Rat::zero(),
        Rat::one(),
        -Rat::one(),
        rat(1, 2),
        rat(-1, 2),
    ]
}

fn group_law(max_index: u64) -> Result<(), Error> {
    for a in named_lambdas() {
        for b in named_lambdas() {
            verify_semigroup(&a, &b, max_index)?;
        }
    }
    let mut rng = rng_for(4);
    for _ in 0..50 {
        let a = random_rat(&mut rng);
        let b = random_rat(&mut rng);
        verify_semigroup(&a, &b, max_index)?;
    }
    Ok(())
}

fn exponential_form(max_index: u64) -> Result<(), Error> {
    let mut lambdas = named_lambdas();
    lambdas.push(rat(7, 3));
    let mut rng = rng_for(5);
    for _ in 0..10 {
        lambdas.push(random_rat(&mut rng));
    }
    for lambda in lambdas {
        expect_eq(
            &format!("exponential at lambda={lambda}"),
            exp_nilpotent(&lambda, max_index),
            build_l(&lambda, max_index),
        )?;
    }
    Ok(())
}

fn conjugation(max_index: u64) -> Result<(), Error> {
    for (a, b) in [
        (rat_int(2), rat_int(3)),
        (Rat::one(), Rat::one()),
        (rat(1, 2), -Rat::one()),
        (rat(-3, 7), rat(5, 2)),
    ] {
        zadeh_conjugation_check(&a, &b, max_index)?;
    }
    Ok(())
}

fn truncation_coherence(max_index: u64) -> Result<(), Error> {
    let a = build_l(&rat(3, 5), max_index);
    let b = build_l(&rat(-2, 7), max_index);
    let product = mat_mul(&a, &b)?;
    for m in 0..=max_index as usize {
        let block = mat_mul(&a.leading_block(m), &b.leading_block(m))?;
        expect_eq(
            &format!("leading block {m}"),
            product.leading_block(m),
            block,
        )?;
    }
    Ok(())
}

struct FactorizationSuite;

impl Suite for FactorizationSuite {
    fn name(&self) -> &'static str {
        "factorization"
    }

    fn run(&self, scale: u64) -> Vec<CheckOutcome> {
        let n = scale.min(24);
        vec![
            outcome(
                "factorization.kernel-cholesky",
                "K_a(x,y) = (L(a) L(a)*)_{x,y}; a = 1 is the plain kernel",
                n,
                kernel_cholesky(n),
            ),
            outcome(
                "factorization.pascal-unit-minors",
                "every leading principal minor of the kernel Gram matrix is 1",
                scale.min(32),
                pascal_unit_minors(scale.min(32)),
            ),
            outcome(
                "factorization.deformed-basis-expansion",
                "K_a(x,y) = sum_n a^{x-n} C(x,n) a^{y-n} C(y,n) term by term",
                scale.min(16),
                deformed_expansion(scale.min(16)),
            ),
            outcome(
                "factorization.matrix-vector-transforms",
                "L(1) f = forward(f), L(-1) g = inverse(g), \
                 L(-1)* f = second forward(f)",
                scale.min(24),
                matrix_vector_identities(scale.min(24)),
            ),
        ]
    }
}

fn kernel_cholesky(max_index: u64) -> Result<(), Error> {
    for lambda in [Rat::one(), rat(1, 2), rat_int(2), rat(-1, 3)] {
        verify_factorization(&lambda, max_index)?;
    }
    Ok(())
}

fn pascal_unit_minors(max_index: u64) -> Result<(), Error> {
    let kernel = KernelKind::Pascal.build()?;
    let gram = GramMatrix::build(kernel.as_ref(), max_index);
    for (k, minor) in leading_minors(&gram).into_iter().enumerate() {
        expect_eq(&format!("pascal minor {k}"), minor, Rat::one())?;
    }
    Ok(())
}

fn deformed_expansion(max_index: u64) -> Result<(), Error> {
    for lambda in [rat(1, 2), rat_int(2), rat(-1, 3)] {
        for x in 0..=max_index {
            for y in 0..=max_index {
                let expansion: Rat = (0..=x.min(y))
                    .map(|n| onb_value(n, x, &lambda) * onb_value(n, y, &lambda))
                    .sum();
                expect_eq(
                    &format!("deformed expansion lambda={lambda} at ({x},{y})"),
                    lambda_kernel(x, y, &lambda),
                    expansion,
                )?;
            }
        }
    }
    Ok(())
}

fn matrix_vector_identities(max_len: u64) -> Result<(), Error> {
    let mut rng = rng_for(6);
    for _ in 0..12 {
        let len = rng.gen_range(1..=max_len.max(1)) as usize;
        matrix_vector_transform_check(&random_prefix(&mut rng, len))?;
    }
    // adjoint of L(-1) acts as the second forward transform on padded windows
    for _ in 0..12 {
        let f = random_finite(&mut rng, 10);
        let window = f.support_bound().max(1);
        let m = crate::operators::build_m(&-Rat::one(), (window - 1) as u64);
        let image = m.apply(f.to_prefix(window).values())?;
        let expected = second_fwd(&f);
        for (x, v) in image.iter().enumerate() {
            expect_eq(
                &format!("upper-triangular action at {x}"),
                v.clone(),
                expected.value(x),
            )?;
        }
    }
    Ok(())
}

struct CoproductSuite;

impl Suite for CoproductSuite {
    fn name(&self) -> &'static str {
        "coproduct"
    }

    fn run(&self, scale: u64) -> Vec<CheckOutcome> {
        let n = scale.min(12);
        vec![
            outcome(
                "coproduct.formula-vs-oracle",
                "closed form (signed inner sum) equals inverse-transform expansion",
                n,
                coproduct_agreement(n),
            ),
            outcome(
                "coproduct.first-basis-expansion",
                "e_1 e_n = n e_n + (n+1) e_{n+1}",
                scale.min(16),
                first_basis_expansion(scale.min(16)),
            ),
            outcome(
                "coproduct.support-and-reconstruction",
                "coefficients live in [max(m,n), m+n] and rebuild the product",
                n,
                support_and_reconstruction(n),
            ),
            outcome(
                "coproduct.unit-symmetry-integrality",
                "e_0 is the unit; coefficients symmetric in (m,n) and integral",
                n,
                unit_symmetry_integrality(n),
            ),
        ]
    }
}

fn coproduct_agreement(max_mn: u64) -> Result<(), Error> {
    for m in 0..=max_mn {
        for n in 0..=max_mn {
            expect_eq(
                &format!("coproduct at ({m},{n})"),
                coproduct_formula(m, n).coeffs,
                coproduct_oracle(m, n).coeffs,
            )?;
        }
    }
    Ok(())
}

fn first_basis_expansion(max_n: u64) -> Result<(), Error> {
    for n in 1..=max_n {
        let expansion = coproduct_formula(1, n);
        expect_eq(
            &format!("coefficient of e_{n}"),
            expansion.coeff(n),
            rat_int(n as i64),
        )?;
        expect_eq(
            &format!("coefficient of e_{}", n + 1),
            expansion.coeff(n + 1),
            rat_int((n + 1) as i64),
        )?;
        let spurious = expansion
            .coeffs
            .iter()
            .filter(|(k, v)| **k != n && **k != n + 1 && !v.is_zero())
            .count();
        expect_eq(&format!("spurious terms for e_1 e_{n}"), spurious, 0)?;
    }
    Ok(())
}

fn support_and_reconstruction(max_mn: u64) -> Result<(), Error> {
    for m in 0..=max_mn {
        for n in 0..=max_mn {
            // the oracle asserts support and reconstruction internally; an
            // extended window confirms the zero tail well past the support
            let expansion = coproduct_oracle(m, n);
            let window = m + n + 12;
            let product = Prefix::new(
                (0..=window)
                    .map(|x| binom_rat(x, m) * binom_rat(x, n))
                    .collect(),
            )?;
            let inv = bft_inv(&product);
            for k in (m + n + 1)..=window {
                expect_eq(
                    &format!("zero tail at k={k} for ({m},{n})"),
                    inv.value(k as usize).clone(),
                    Rat::zero(),
                )?;
            }
            for x in 0..=(m + n + 8) {
                let recombined: Rat = expansion
                    .coeffs
                    .iter()
                    .map(|(k, c)| c * binom_rat(x, *k))
                    .sum();
                expect_eq(
                    &format!("reconstruction at x={x} for ({m},{n})"),
                    recombined,
                    binom_rat(x, m) * binom_rat(x, n),
                )?;
            }
        }
    }
    Ok(())
}

fn unit_symmetry_integrality(max_mn: u64) -> Result<(), Error> {
    for n in 0..=max_mn {
        let unit = coproduct_oracle(0, n);
        expect_eq(&format!("unit coefficient at {n}"), unit.coeff(n), Rat::one())?;
        expect_eq(&format!("unit support size at {n}"), unit.coeffs.len(), 1)?;
    }
    for m in 0..=max_mn {
        for n in 0..=m {
            let a = coproduct_oracle(m, n);
            let b = coproduct_oracle(n, m);
            expect_eq(&format!("symmetry at ({m},{n})"), a.coeffs.clone(), b.coeffs)?;
            for (k, v) in &a.coeffs {
                if !is_integer(v) {
                    return Err(mismatch(
                        format!("integrality at ({m},{n}), k={k}"),
                        v,
                        "an integer",
                    ));
                }
            }
        }
    }
    Ok(())
}

struct HurwitzSuite;

impl Suite for HurwitzSuite {
    fn name(&self) -> &'static str {
        "hurwitz"
    }

    fn run(&self, scale: u64) -> Vec<CheckOutcome> {
        let degree = scale.min(32);
        vec![
            outcome(
                "hurwitz.intertwining",
                "H(f) = exp(z) H(f_inverse) coefficientwise",
                degree,
                intertwining_random(degree),
            ),
            outcome(
                "hurwitz.monomial-images",
                "exp(-z) H(e_n) = z^n / n!",
                scale.min(16),
                monomial_images(scale.min(16)),
            ),
            outcome(
                "hurwitz.hardy-coefficients",
                "basis goes to monomials; coefficient inner products preserved",
                scale.min(16),
                hardy_coefficients(scale.min(16)),
            ),
            outcome(
                "hurwitz.entire-kernel-consistency",
                "sum_n (z1^n/n!)(z2^n/n!) matches the truncated entire kernel",
                scale.min(16),
                entire_kernel_consistency(scale.min(16)),
            ),
            outcome(
                "hurwitz.exponential-family-float",
                "partial sums of the transform of a^x/x! approach exp(-a) a^x/x!",
                40,
                exponential_family_float(),
            ),
        ]
    }
}

fn intertwining_random(degree: u64) -> Result<(), Error> {
    let mut rng = rng_for(7);
    for _ in 0..15 {
        let p = random_prefix(&mut rng, (degree + 1) as usize);
        verify_intertwining(&p, degree)?;
    }
    verify_intertwining(&FiniteSupportSeq::delta(0).to_prefix((degree + 1) as usize), degree)?;
    Ok(())
}

fn monomial_images(max_n: u64) -> Result<(), Error> {
    let degree = 32u64.max(max_n);
    for n in 0..=max_n {
        let image = script_h(&basis_prefix(n, degree), degree)?;
        let mut expected = vec![Rat::zero(); (degree + 1) as usize];
        expected[n as usize] =
            Rat::new(1.into(), crate::combinatorics::factorial(n));
        expect_eq(
            &format!("monomial image of basis {n}"),
            image,
            PowerSeries::new(expected)?,
        )?;
    }
    Ok(())
}

fn hardy_coefficients(max_n: u64) -> Result<(), Error> {
    for n in 0..=max_n as usize {
        let image = hardy_map(&RkhsElement::plain(FiniteSupportSeq::delta(n)), max_n)?;
        for (k, c) in image.coeffs().iter().enumerate() {
            let expected = if k == n { Rat::one() } else { Rat::zero() };
            expect_eq(&format!("monomial coefficient ({n},{k})"), c.clone(), expected)?;
        }
    }
    let mut rng = rng_for(8);
    for _ in 0..10 {
        let f = RkhsElement::plain(random_finite(&mut rng, (max_n + 1) as usize));
        let g = RkhsElement::plain(random_finite(&mut rng, (max_n + 1) as usize));
        let degree = max_n;
        let pf = hardy_map(&f, degree)?;
        let pg = hardy_map(&g, degree)?;
        let coefficient_side: Rat = pf
            .coeffs()
            .iter()
            .zip(pg.coeffs())
            .map(|(a, b)| a * b)
            .sum();
        expect_eq("coefficient parseval", coefficient_side, f.inner(&g)?)?;
    }
    Ok(())
}

fn entire_kernel_consistency(degree: u64) -> Result<(), Error> {
    for (z1, z2) in [
        (rat(2, 3), rat(-1, 2)),
        (Rat::one(), Rat::one()),
        (rat(1, 5), rat_int(3)),
    ] {
        let synthesized: Rat = (0..=degree)
            .map(|n| {
                let series = script_h(&basis_prefix(n, degree), degree)
                    .expect("degree within window");
                series.eval(&z1) * series.eval(&z2)
            })
            .sum();
        expect_eq(
            &format!("entire kernel at ({z1},{z2})"),
            synthesized,
            k2_kernel_truncated(&z1, &z2, degree),
        )?;
    }
    Ok(())
}

fn exponential_family_float() -> Result<(), Error> {
    let report = g_a_family_check(&rat(1, 2), 8, 40)?;
    if report.max_abs_deviation > 1e-12 {
        return Err(mismatch(
            "exponential family deviation".into(),
            report.max_abs_deviation,
            "<= 1e-12",
        ));
    }
    let zero = g_a_family_check(&Rat::zero(), 4, 20)?;
    if zero.max_abs_deviation != 0.0 {
        return Err(mismatch(
            "degenerate family deviation".into(),
            zero.max_abs_deviation,
            0.0,
        ));
    }
    Ok(())
}

struct PlancherelSuite;

impl Suite for PlancherelSuite {
    fn name(&self) -> &'static str {
        "plancherel"
    }

    fn run(&self, scale: u64) -> Vec<CheckOutcome> {
        let support = scale.min(16);
        vec![
            outcome(
                "plancherel.second-pair-round-trip",
                "upper-triangular pair inverts itself on finite support",
                scale.min(32),
                second_round_trips(scale.min(32)),
            ),
            outcome(
                "plancherel.adjointness",
                "<g, f^fwd>_K = <g^inv, f> with the unsigned kernel pairing",
                support,
                adjointness(support),
            ),
            outcome(
                "plancherel.isometry",
                "|g^inv|^2 = <g,g>_K with the unsigned kernel pairing",
                support,
                isometry(support),
            ),
            outcome(
                "plancherel.synthesis-norm",
                "|s(f^fwd)|^2 = sum f(j)^2",
                scale.min(12),
                synthesis_norm(scale.min(12)),
            ),
            outcome(
                "plancherel.forward-parseval",
                "forward transform realizes coefficients: values match, \
                 sum f(n)^2 is the squared norm",
                scale.min(32),
                forward_parseval(scale.min(32)),
            ),
            outcome(
                "plancherel.section-images",
                "forward image of the reversed-binomial row is the kernel column",
                scale.min(16),
                section_images(scale.min(16)),
            ),
            outcome(
                "plancherel.adjoint-pairing",
                "synthesis adjoint identity with alternating inner sum",
                scale.min(12),
                adjoint_pairing_random(scale.min(12)),
            ),
            outcome(
                "plancherel.growth-bounds",
                "g(x)^2 <= |g|^2 C(2x,x); factorial ratios peak inside the support horizon",
                scale.min(48),
                growth_bounds(scale.min(48)),
            ),
        ]
    }
}

fn second_round_trips(max_support: u64) -> Result<(), Error> {
    let mut rng = rng_for(9);
    for _ in 0..25 {
        let f = random_finite(&mut rng, max_support as usize);
        expect_eq("inverse of forward", second_inv(&second_fwd(&f)), f.clone())?;
        expect_eq("forward of inverse", second_fwd(&second_inv(&f)), f)?;
    }
    Ok(())
}

fn adjointness(max_support: u64) -> Result<(), Error> {
    let mut rng = rng_for(10);
    for _ in 0..25 {
        let f = random_finite(&mut rng, max_support as usize);
        let g = random_finite(&mut rng, max_support as usize);
        let lhs = kernel_pairing(&g, &second_fwd(&f));
        let rhs: Rat = second_inv(&g)
            .values()
            .iter()
            .enumerate()
            .map(|(n, v)| v * f.value(n))
            .sum();
        expect_eq("adjointness", lhs, rhs)?;
    }
    Ok(())
}

fn isometry(max_support: u64) -> Result<(), Error> {
    let mut rng = rng_for(11);
    for _ in 0..25 {
        let g = random_finite(&mut rng, max_support as usize);
        expect_eq(
            "isometry",
            second_inv(&g).l2_norm_sq(),
            kernel_pairing(&g, &g),
        )?;
    }
    Ok(())
}

fn synthesis_norm(max_support: u64) -> Result<(), Error> {
    let mut rng = rng_for(12);
    for _ in 0..20 {
        let f = random_finite(&mut rng, max_support as usize);
        let (kernel_side, l2_side) = plancherel_second(&f);
        expect_eq("synthesis norm", kernel_side, l2_side)?;
    }
    let (a, b) = plancherel_second(&FiniteSupportSeq::delta(0));
    expect_eq("synthesis norm of delta_0", (a, b), (Rat::one(), Rat::one()))?;
    Ok(())
}

fn forward_parseval(max_support: u64) -> Result<(), Error> {
    let mut rng = rng_for(13);
    for _ in 0..20 {
        let f = random_finite(&mut rng, max_support as usize);
        let window = f.support_bound() + 8;
        let transformed = bft(&f.to_prefix(window));
        let element = RkhsElement::plain(f.clone());
        for x in 0..window {
            expect_eq(
                &format!("pointwise realization at {x}"),
                transformed.value(x).clone(),
                element.eval(x as u64),
            )?;
        }
        expect_eq("coefficient norm", element.norm_sq(), f.l2_norm_sq())?;
    }
    Ok(())
}

fn section_images(max_n: u64) -> Result<(), Error> {
    // row n of the binomial triangle, read as the sequence j -> C(n,j),
    // transforms forward onto the kernel column K(x,n)
    for n in 0..=max_n {
        let row = Prefix::new((0..=(2 * max_n)).map(|j| binom_rat(n, j)).collect())?;
        let image = bft(&row);
        for x in 0..=(2 * max_n) as usize {
            expect_eq(
                &format!("section image at (x={x},n={n})"),
                image.value(x).clone(),
                Rat::from_integer(pascal_kernel(x as u64, n)),
            )?;
        }
    }
    Ok(())
}

fn adjoint_pairing_random(max_support: u64) -> Result<(), Error> {
    let mut rng = rng_for(14);
    for _ in 0..20 {
        let f = random_finite(&mut rng, (max_support as usize).max(1));
        let y0 = rng.gen_range(0..=12u64);
        adjoint_pairing_check(&f, y0)?;
    }
    adjoint_pairing_check(&FiniteSupportSeq::delta(0), 0)?;
    adjoint_pairing_check(&FiniteSupportSeq::delta(2), 3)?;
    Ok(())
}

fn growth_bounds(max_x: u64) -> Result<(), Error> {
    let mut rng = rng_for(15);
    let mut elements: Vec<RkhsElement> = (0..12)
        .map(|_| RkhsElement::plain(random_finite(&mut rng, 12)))
        .collect();
    elements.push(kernel_section(3, &Rat::one()));
    elements.push(RkhsElement::plain(FiniteSupportSeq::delta(0)));
    for g in &elements {
        growth_bound_check(g, max_x)?;
        let ratio = |x: u64| {
            let v = g.eval(x);
            let abs = if v < Rat::zero() { -v } else { v };
            abs / Rat::from_integer(crate::combinatorics::factorial(x))
        };
        let near = (0..=12u64).map(ratio).max().expect("non-empty window");
        let far = (0..=max_x.max(12)).map(ratio).max().expect("non-empty window");
        if far > near {
            return Err(mismatch(
                "factorial domination horizon".into(),
                far.to_string(),
                near.to_string(),
            ));
        }
    }
    Ok(())
}

struct QKernelSuite;

impl Suite for QKernelSuite {
    fn name(&self) -> &'static str {
        "qkernel"
    }

    fn run(&self, scale: u64) -> Vec<CheckOutcome> {
        let n = scale.min(16);
        vec![
            outcome(
                "qkernel.positive-definite",
                "leading minors of the q-kernel Gram matrix are strictly positive",
                n,
                q_positive_definite(n),
            ),
            outcome(
                "qkernel.pascal-recurrence",
                "[x+1,n] = q^n [x,n] + [x,n-1]",
                scale.min(32),
                q_pascal_recurrence(scale.min(32)),
            ),
            outcome(
                "qkernel.symmetry-and-base",
                "q-kernel symmetric, unit against index 0, unit diagonal Gaussian",
                n,
                q_symmetry_and_base(n),
            ),
        ]
    }
}

pub fn q_positive_definite(max_index: u64) -> Result<(), Error> {
    for q in [rat_int(2), rat(1, 2), rat(3, 2), rat(-1, 2)] {
        let kernel = KernelKind::Q(q.clone()).build()?;
        let gram = GramMatrix::build(kernel.as_ref(), max_index);
        let report = is_positive_definite(&gram);
        if !report.positive_definite {
            return Err(mismatch(
                format!("q-kernel minors at q={q}"),
                format!("{:?}", report.minors),
                "all positive",
            ));
        }
    }
    Ok(())
}

fn q_pascal_recurrence(max_x: u64) -> Result<(), Error> {
    for q in [QParam::new(rat_int(2))?, QParam::new(rat(1, 2))?] {
        for x in 0..=max_x {
            for n in 1..=(x + 1) {
                let lhs = q_binom(x + 1, n, &q);
                let rhs = rat_pow(q.value(), n) * q_binom(x, n, &q) + q_binom(x, n - 1, &q);
                expect_eq(&format!("q-pascal at (x={x},n={n})"), lhs, rhs)?;
            }
        }
    }
    Ok(())
}

fn q_symmetry_and_base(max_index: u64) -> Result<(), Error> {
    for q in [QParam::new(rat_int(2))?, QParam::new(rat(-1, 2))?] {
        for x in 0..=max_index {
            expect_eq(
                &format!("unit column at {x}"),
                q_kernel(x, 0, &q),
                Rat::one(),
            )?;
            expect_eq(
                &format!("unit diagonal Gaussian at {x}"),
                q_binom(x, x, &q),
                Rat::one(),
            )?;
            for y in 0..=x {
                expect_eq(
                    &format!("q symmetry at ({x},{y})"),
                    q_kernel(x, y, &q),
                    q_kernel(y, x, &q),
                )?;
            }
        }
    }
    Ok(())
}
