//! Acceptance gate: every identity the library promises, at full scale.
//!
//! Each criterion is one test that prints a single pass/fail line (visible
//! with `cargo test --test acceptance -- --nocapture`). All comparisons are
//! exact rational equality except C08, which is the one deliberately
//! float-compared diagnostic and carries an explicit 1e-12 tolerance.

use num::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pascal_rkhs::combinatorics::{
    alt_sign_rat, binom, binom_rat, factorial, rat, rat_int, rat_pow, Rat,
};
use pascal_rkhs::error::Error;
use pascal_rkhs::hurwitz::{
    basis_prefix, g_a_family_check, script_h, verify_intertwining, PowerSeries,
};
use pascal_rkhs::hypergroup::{coproduct_formula, coproduct_oracle};
use pascal_rkhs::kernels::{
    is_positive_definite, leading_minors, pascal_kernel, GramMatrix, KernelKind,
};
use pascal_rkhs::operators::{build_l, exp_nilpotent, mat_mul, verify_factorization, verify_semigroup};
use pascal_rkhs::rkhs::{membership_diagnostic, onb_value, RkhsElement, Verdict};
use pascal_rkhs::transforms::{
    bft, bft_inv, kernel_pairing, plancherel_second, second_fwd, second_inv, FiniteSupportSeq,
    Prefix,
};

fn criterion(id: &str, title: &str, body: impl FnOnce() -> Result<(), String>) {
    match body() {
        Ok(()) => println!("[PASS] {id} {title}"),
        Err(witness) => {
            println!("[FAIL] {id} {title}: {witness}");
            panic!("{id} failed: {witness}");
        }
    }
}

fn ok(condition: bool, witness: impl FnOnce() -> String) -> Result<(), String> {
    if condition {
        Ok(())
    } else {
        Err(witness())
    }
}

fn lib(result: Result<(), Error>) -> Result<(), String> {
    result.map_err(|e| e.to_string())
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_rat(rng: &mut ChaCha8Rng) -> Rat {
    rat(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=9))
}

fn random_prefix(rng: &mut ChaCha8Rng, len: usize) -> Prefix {
    Prefix::new((0..len).map(|_| random_rat(rng)).collect()).unwrap()
}

fn random_finite(rng: &mut ChaCha8Rng, max_support: usize) -> FiniteSupportSeq {
    let len = rng.gen_range(1..=max_support);
    FiniteSupportSeq::new((0..len).map(|_| random_rat(rng)).collect())
}

#[test]
fn c01_orthogonality() {
    criterion(
        "C01",
        "alternating binomial orthogonality on 0 <= m <= n <= 48",
        || {
            for n in 0..=48u64 {
                for m in 0..=n {
                    let sum: Rat = (m..=n)
                        .map(|j| alt_sign_rat(m + j) * binom_rat(n, j) * binom_rat(j, m))
                        .sum();
                    let expected = if m == n { Rat::one() } else { Rat::zero() };
                    ok(sum == expected, || format!("(m={m},n={n}) gave {sum}"))?;
                }
            }
            Ok(())
        },
    );
}

#[test]
fn c02_kernel_inversion() {
    criterion(
        "C02",
        "alternating kernel sums collapse to binomials for m,n <= 40",
        || {
            for n in 0..=40u64 {
                for m in 0..=40u64 {
                    let sum: Rat = (0..=n)
                        .map(|l| {
                            alt_sign_rat(n + l)
                                * binom_rat(n, l)
                                * Rat::from_integer(pascal_kernel(l, m))
                        })
                        .sum();
                    let expected = if m >= n { binom_rat(m, n) } else { Rat::zero() };
                    ok(sum == expected, || format!("(n={n},m={m}) gave {sum}"))?;
                }
            }
            Ok(())
        },
    );
}

#[test]
fn c03_diagonal_and_cauchy_schwarz() {
    criterion(
        "C03",
        "K(x,x) = C(2x,x) = e_x(2x) and K(x,y)^2 <= C(2x,x) C(2y,y) for x,y <= 64",
        || {
            for x in 0..=64u64 {
                let diag = pascal_kernel(x, x);
                ok(diag == binom(2 * x, x), || format!("diagonal at {x}"))?;
                ok(
                    Rat::from_integer(diag) == onb_value(x, 2 * x, &Rat::one()),
                    || format!("basis form at {x}"),
                )?;
            }
            for x in 0..=64u64 {
                for y in 0..=x {
                    let k = pascal_kernel(x, y);
                    let lhs = &k * &k;
                    let rhs = pascal_kernel(x, x) * pascal_kernel(y, y);
                    ok(lhs <= rhs, || format!("cauchy-schwarz at ({x},{y})"))?;
                }
            }
            Ok(())
        },
    );
}

#[test]
fn c04_forward_pair_unitary() {
    criterion(
        "C04",
        "forward/inverse round trips on 100 random prefixes; coefficient parseval",
        || {
            let mut rng = rng(0xacc0_0004);
            for _ in 0..100 {
                let len = rng.gen_range(1..=64usize);
                let p = random_prefix(&mut rng, len);
                ok(bft_inv(&bft(&p)) == p, || "inverse(forward) != id".into())?;
                ok(bft(&bft_inv(&p)) == p, || "forward(inverse) != id".into())?;
            }
            for _ in 0..40 {
                let f = random_finite(&mut rng, 32);
                let window = f.support_bound() + 8;
                let image = bft(&f.to_prefix(window));
                let element = RkhsElement::plain(f.clone());
                for x in 0..window {
                    ok(image.value(x) == &element.eval(x as u64), || {
                        format!("forward image disagrees with element at {x}")
                    })?;
                }
                ok(element.norm_sq() == f.l2_norm_sq(), || {
                    "norm differs from coefficient mass".into()
                })?;
            }
            Ok(())
        },
    );
}

#[test]
fn c05_worked_images() {
    criterion(
        "C05",
        "named forward images: constants, alternating signs, deltas, twisted basis, geometric",
        || {
            let len = 33usize;
            let two = rat_int(2);

            let image = bft(&Prefix::new(vec![Rat::one(); len]).unwrap());
            for x in 0..len {
                ok(image.value(x) == &rat_pow(&two, x as u64), || {
                    format!("constant-one image at {x}")
                })?;
            }

            let alternating =
                Prefix::new((0..len).map(|j| alt_sign_rat(j as u64)).collect()).unwrap();
            let image = bft(&alternating);
            for x in 0..len {
                let expected = if x == 0 { Rat::one() } else { Rat::zero() };
                ok(image.value(x) == &expected, || {
                    format!("alternating image at {x}")
                })?;
            }

            for n in 0..=10u64 {
                let image = bft(&FiniteSupportSeq::delta(n as usize).to_prefix(len));
                for x in 0..len {
                    ok(
                        image.value(x) == &onb_value(n, x as u64, &Rat::one()),
                        || format!("delta_{n} image at {x}"),
                    )?;
                }

                let twisted = Prefix::new(
                    (0..len)
                        .map(|m| alt_sign_rat(n + m as u64) * onb_value(n, m as u64, &Rat::one()))
                        .collect(),
                )
                .unwrap();
                let image = bft(&twisted);
                for x in 0..len {
                    let expected = if x as u64 == n { Rat::one() } else { Rat::zero() };
                    ok(image.value(x) == &expected, || {
                        format!("twisted basis {n} image at {x}")
                    })?;
                }
            }

            for a in [rat(1, 2), rat(-1, 3), rat_int(2)] {
                let geometric =
                    Prefix::new((0..len).map(|j| rat_pow(&a, j as u64)).collect()).unwrap();
                let image = bft(&geometric);
                let base = Rat::one() + &a;
                for x in 0..len {
                    ok(image.value(x) == &rat_pow(&base, x as u64), || {
                        format!("geometric a={a} image at {x}")
                    })?;
                }
            }
            Ok(())
        },
    );
}

#[test]
fn c06_second_pair_unitary() {
    criterion(
        "C06",
        "second pair: round trips, adjointness, and isometry on 100 random pairs",
        || {
            let mut rng = rng(0xacc0_0006);
            for _ in 0..100 {
                let f = random_finite(&mut rng, 16);
                let g = random_finite(&mut rng, 16);

                ok(second_inv(&second_fwd(&f)) == f, || {
                    "inverse(forward) != id".into()
                })?;
                ok(second_fwd(&second_inv(&f)) == f, || {
                    "forward(inverse) != id".into()
                })?;

                let lhs = kernel_pairing(&g, &second_fwd(&f));
                let rhs: Rat = second_inv(&g)
                    .values()
                    .iter()
                    .enumerate()
                    .map(|(n, v)| v * f.value(n))
                    .sum();
                ok(lhs == rhs, || format!("adjointness: {lhs} vs {rhs}"))?;

                let norm = second_inv(&g).l2_norm_sq();
                let form = kernel_pairing(&g, &g);
                ok(norm == form, || format!("isometry: {norm} vs {form}"))?;
            }
            Ok(())
        },
    );
}

#[test]
fn c07_second_plancherel() {
    criterion(
        "C07",
        "synthesis norm of the second forward transform equals the plain norm",
        || {
            let mut rng = rng(0xacc0_0007);
            for _ in 0..60 {
                let f = random_finite(&mut rng, 12);
                let (kernel_side, l2_side) = plancherel_second(&f);
                ok(kernel_side == l2_side, || {
                    format!("{kernel_side} vs {l2_side}")
                })?;
            }
            Ok(())
        },
    );
}

#[test]
fn c08_exponential_family_float() {
    criterion(
        "C08",
        "transform of a^x/x! at a=1/2, truncated at 40 terms, within 1e-12 of exp(-a) a^x/x!",
        || {
            let report = g_a_family_check(&rat(1, 2), 8, 40).map_err(|e| e.to_string())?;
            ok(report.max_abs_deviation <= 1e-12, || {
                format!("max deviation {}", report.max_abs_deviation)
            })
        },
    );
}

#[test]
fn c09_semigroup_exponential_factorization() {
    criterion(
        "C09",
        "group law and exponential form at N <= 32; kernel factorizations at N <= 24",
        || {
            let mut named = vec![
                Rat::zero(),
                Rat::one(),
                -Rat::one(),
                rat(1, 2),
                rat(-1, 2),
            ];
            let mut rng = rng(0xacc0_0009);
            let mut pairs: Vec<(Rat, Rat)> = Vec::new();
            for a in &named {
                for b in &named {
                    pairs.push((a.clone(), b.clone()));
                }
            }
            for _ in 0..50 {
                pairs.push((random_rat(&mut rng), random_rat(&mut rng)));
            }
            for (a, b) in &pairs {
                lib(verify_semigroup(a, b, 32))?;
            }

            named.push(rat(7, 3));
            for _ in 0..8 {
                named.push(random_rat(&mut rng));
            }
            for lambda in &named {
                ok(exp_nilpotent(lambda, 32) == build_l(lambda, 32), || {
                    format!("exponential form at lambda={lambda}")
                })?;
            }

            for lambda in [Rat::one(), rat(1, 2), rat_int(2), rat(-1, 3)] {
                lib(verify_factorization(&lambda, 24))?;
            }
            // sanity: the group inverse really lands on the identity
            let inv = mat_mul(&build_l(&rat(1, 2), 16), &build_l(&rat(-1, 2), 16))
                .map_err(|e| e.to_string())?;
            ok(
                inv == pascal_rkhs::operators::TriangularMatrix::identity(17),
                || "L(1/2) L(-1/2) != I".into(),
            )
        },
    );
}

#[test]
fn c10_hurwitz_intertwining() {
    criterion(
        "C10",
        "H(f) = exp(z) H(f_inv) to degree 32 on 50 random prefixes; monomial images for n <= 16",
        || {
            let mut rng = rng(0xacc0_000a);
            for _ in 0..50 {
                let p = random_prefix(&mut rng, 33);
                lib(verify_intertwining(&p, 32))?;
            }
            for n in 0..=16u64 {
                let image = script_h(&basis_prefix(n, 32), 32).map_err(|e| e.to_string())?;
                let mut coeffs = vec![Rat::zero(); 33];
                coeffs[n as usize] = Rat::new(1.into(), factorial(n));
                let expected = PowerSeries::new(coeffs).map_err(|e| e.to_string())?;
                ok(image == expected, || format!("monomial image of basis {n}"))?;
            }
            Ok(())
        },
    );
}

#[test]
fn c11_coproduct() {
    criterion(
        "C11",
        "coproduct formula equals oracle for m,n <= 12; reconstruction; e_1 expansion",
        || {
            for m in 0..=12u64 {
                for n in 0..=12u64 {
                    let formula = coproduct_formula(m, n);
                    let oracle = coproduct_oracle(m, n);
                    ok(formula == oracle, || format!("formula vs oracle at ({m},{n})"))?;
                    for x in 0..=(m + n + 8) {
                        let recombined: Rat = oracle
                            .coeffs
                            .iter()
                            .map(|(k, c)| c * binom_rat(x, *k))
                            .sum();
                        ok(
                            recombined == binom_rat(x, m) * binom_rat(x, n),
                            || format!("reconstruction at x={x} for ({m},{n})"),
                        )?;
                    }
                }
            }
            for n in 1..=16u64 {
                let expansion = coproduct_formula(1, n);
                ok(
                    expansion.coeff(n) == rat_int(n as i64)
                        && expansion.coeff(n + 1) == rat_int((n + 1) as i64),
                    || format!("e_1 e_{n} expansion"),
                )?;
            }
            Ok(())
        },
    );
}

#[test]
fn c12_gram_positivity() {
    criterion(
        "C12",
        "q-kernel Gram minors positive for q in {2, 1/2, 3/2, -1/2} at N <= 16; \
         all kernel minors equal 1 at N <= 32",
        || {
            for q in [rat_int(2), rat(1, 2), rat(3, 2), rat(-1, 2)] {
                let kernel = KernelKind::Q(q.clone()).build().map_err(|e| e.to_string())?;
                let gram = GramMatrix::build(kernel.as_ref(), 16);
                let report = is_positive_definite(&gram);
                ok(report.positive_definite, || format!("q={q} minors not positive"))?;
            }
            let pascal = KernelKind::Pascal.build().map_err(|e| e.to_string())?;
            let gram = GramMatrix::build(pascal.as_ref(), 32);
            for (k, minor) in leading_minors(&gram).into_iter().enumerate() {
                ok(minor == Rat::one(), || format!("minor {k} is {minor}"))?;
            }
            Ok(())
        },
    );
}

#[test]
fn c13_membership_shadow() {
    criterion(
        "C13",
        "inverse transform of finitely generated prefixes recovers coefficients then exact zeros",
        || {
            let mut rng = rng(0xacc0_000d);
            for _ in 0..40 {
                let coeffs = random_finite(&mut rng, 16);
                let element = RkhsElement::plain(coeffs.clone());
                let window = coeffs.support_bound() as u64 + 10;
                let values = element.value_prefix(window);
                let recovered = bft_inv(&values);
                for n in 0..=window as usize {
                    ok(recovered.value(n) == &coeffs.value(n), || {
                        format!("recovery at {n}")
                    })?;
                }
                let report = membership_diagnostic(&values).map_err(|e| e.to_string())?;
                ok(report.verdict == Verdict::Member, || {
                    "diagnostic failed to certify a finitely generated prefix".into()
                })?;
            }
            Ok(())
        },
    );
}
