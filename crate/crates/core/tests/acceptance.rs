//! Acceptance criteria. Each criterion prints one PASS/FAIL line; the process
//! exits nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use hpoisson::bivector::Bivector;
use hpoisson::catalog::{self, CoefficientFamily};
use hpoisson::constraints::{bivector_jacobi_constraints, jacobi_constraints};
use hpoisson::heisenberg::{
    generic_invariant_homogeneous, generic_invariant_quadratic, is_sigma_invariant,
    is_tau_invariant,
};
use hpoisson::polyring::{rat, Assignment, Monomial, Poly, Rational, Value, VarSpace};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;

fn ensure(cond: bool, what: impl Into<String>) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

/// Runs every sub-check and reports all failures, not just the first.
fn all(checks: Vec<(&str, Outcome)>) -> Outcome {
    let failed: Vec<String> = checks
        .into_iter()
        .filter_map(|(name, r)| r.err().map(|e| format!("{name}: {e}")))
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(failed.join("; "))
    }
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-12..=12), rng.gen_range(1..=6))
}

fn nonzero_rational(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let r = random_rational(rng);
        if r != rat(0, 1) {
            return r;
        }
    }
}

fn random_assignment(params: &[String], rng: &mut ChaCha8Rng) -> Assignment {
    params
        .iter()
        .map(|p| (p.clone(), Value::from(random_rational(rng))))
        .collect()
}

fn criterion_1() -> Outcome {
    let g = generic_invariant_quadratic(3).map_err(|e| e.to_string())?;
    let system = jacobi_constraints(&g).map_err(|e| e.to_string())?;
    let q3 = catalog::q3(None, None).map_err(|e| e.to_string())?;
    all(vec![
        (
            "system",
            ensure(system.is_empty(), format!("{} constraints", system.len())),
        ),
        (
            "q3 jacobi",
            ensure(q3.is_poisson().passed(), q3.is_poisson().to_string()),
        ),
    ])
}

fn criterion_2() -> Outcome {
    let g = generic_invariant_quadratic(4).map_err(|e| e.to_string())?;
    let system = jacobi_constraints(&g).map_err(|e| e.to_string())?;
    let printed = catalog::n4_system();
    let equivalent = system
        .span_equivalent(&printed)
        .map_err(|e| e.to_string())?;
    let q4 = catalog::q4(None).map_err(|e| e.to_string())?;
    let (q1, q2) = catalog::q4_casimirs(None).map_err(|e| e.to_string())?;
    let jps = Bivector::jps_from_casimirs(q4.vs(), &[q1, q2], &Poly::one(q4.vs()))
        .map_err(|e| e.to_string())?;
    all(vec![
        (
            "relation",
            ensure(
                equivalent,
                format!(
                    "generated {{{}}} is not span-equivalent to {{{}}}",
                    join(system.polys()),
                    join(printed.polys())
                ),
            ),
        ),
        (
            "q4 jacobi",
            ensure(q4.is_poisson().passed(), q4.is_poisson().to_string()),
        ),
        (
            "q4 = jps(q1, q2)",
            ensure(
                jps == q4,
                format!("{{x0,x1}}: q4 {} vs jps {}", q4.get(0, 1), jps.get(0, 1)),
            ),
        ),
    ])
}

fn join(ps: &[Poly]) -> String {
    ps.iter()
        .map(Poly::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

fn families() -> [(&'static str, CoefficientFamily); 3] {
    [
        ("q51", CoefficientFamily::q51()),
        ("q52", CoefficientFamily::q52()),
        ("linear5", CoefficientFamily::linear5()),
    ]
}

fn criterion_3() -> Outcome {
    let g = generic_invariant_quadratic(5).map_err(|e| e.to_string())?;
    let system = jacobi_constraints(&g).map_err(|e| e.to_string())?;
    let printed = catalog::jac5_system();
    let mut checks = vec![(
        "system",
        ensure(
            system
                .span_equivalent(&printed)
                .map_err(|e| e.to_string())?,
            format!("generated {{{}}}", join(system.polys())),
        ),
    )];
    for (name, fam) in families() {
        let r = printed
            .verify_assignment(&fam.assignment())
            .map_err(|e| e.to_string())?;
        checks.push((name, ensure(r.passed(), r.to_string())));
    }
    all(checks)
}

fn criterion_4() -> Outcome {
    let mut checks = Vec::new();
    for (name, fam) in families().into_iter().take(2) {
        let b = catalog::q5(&fam, None).map_err(|e| e.to_string())?;
        let k5 = catalog::k5_casimir(&fam.a, &fam.b)
            .and_then(|k| k.embed(b.vs()))
            .map_err(|e| e.to_string())?;
        let constant = catalog::qr5_constant(&fam.a, &fam.b).map_err(|e| e.to_string())?;
        let (num, den) = (
            constant.num.embed(b.vs()).map_err(|e| e.to_string())?,
            constant.den.embed(b.vs()).map_err(|e| e.to_string())?,
        );
        let mut failures = Vec::new();
        for r in [
            b.is_poisson(),
            is_sigma_invariant(&b),
            is_tau_invariant(&b),
            b.is_unimodular_div(),
            b.is_casimir(&k5).map_err(|e| e.to_string())?,
        ] {
            if !r.passed() {
                failures.push(r.to_string());
            }
        }
        for m in 0..5 {
            let wedge = b.wedge_square_cyclic5(m).map_err(|e| e.to_string())?;
            let dk = k5.partial(m).map_err(|e| e.to_string())?;
            let defect = &(&den * &wedge) - &(&num * &dk);
            if !defect.is_zero() {
                failures.push(format!("wedge identity m={m}: {defect}"));
            }
        }
        checks.push((name, ensure(failures.is_empty(), failures.join(", "))));
    }
    all(checks)
}

fn criterion_5() -> Outcome {
    let fam = CoefficientFamily::q51()
        .at(&rat(1, 1))
        .map_err(|e| e.to_string())?;
    let c = catalog::qr5_constant(&fam.a, &fam.b).map_err(|e| e.to_string())?;
    ensure(
        c.value() == Some(rat(1, 1)),
        format!("constant = ({}) / ({})", c.num, c.den),
    )
}

/// Restriction of a six-dimensional tensor to `x_{offset}, x_{offset+2},
/// x_{offset+4}`, relabelled `x0, x1, x2`.
fn restrict(b: &Bivector, offset: usize) -> Bivector {
    let vs = VarSpace::new(3, b.vs().params()).unwrap();
    let mut out = Bivector::zero(&vs);
    for i in 0..3 {
        for j in i + 1..3 {
            let entry = b.get(2 * i + offset, 2 * j + offset);
            let terms = entry.terms().map(|(m, c)| {
                let coords = (0..3).map(|a| m.coord_exps()[2 * a + offset]).collect();
                (
                    Monomial::from_parts(coords, m.param_exps().to_vec()),
                    c.clone(),
                )
            });
            let moved: Vec<_> = terms.collect();
            let total: u32 = moved.iter().map(|(m, _)| m.coord_degree()).sum();
            assert_eq!(
                total,
                entry.terms().map(|(m, _)| m.coord_degree()).sum::<u32>(),
                "restricted entry leaves the subspace"
            );
            out.set(i, j, Poly::from_terms(&vs, moved)).unwrap();
        }
    }
    out
}

fn criterion_6() -> Outcome {
    let g = generic_invariant_quadratic(6).map_err(|e| e.to_string())?;
    let system = jacobi_constraints(&g).map_err(|e| e.to_string())?;
    let printed = catalog::jac6_system();
    let sum = catalog::q6_direct_sum(None, None).map_err(|e| e.to_string())?;
    let mixed_zero = (0..6)
        .flat_map(|i| (0..6).map(move |j| (i, j)))
        .filter(|(i, j)| (i + j) % 2 == 1)
        .all(|(i, j)| sum.get(i, j).is_zero());

    let vs3 = VarSpace::new(3, sum.vs().params()).unwrap();
    let mut rename = Assignment::new();
    rename.insert("A1".into(), Poly::param(&vs3, "B1").unwrap().into());
    rename.insert("A2".into(), Poly::param(&vs3, "B4").unwrap().into());
    let q3 = catalog::q3(None, None)
        .and_then(|b| b.specialize(&rename))
        .and_then(|b| b.embed(&vs3))
        .map_err(|e| e.to_string())?;

    all(vec![
        (
            "system",
            ensure(
                system
                    .span_equivalent(&printed)
                    .map_err(|e| e.to_string())?,
                format!("generated {{{}}}", join(system.polys())),
            ),
        ),
        (
            "direct sum jacobi",
            ensure(sum.is_poisson().passed(), sum.is_poisson().to_string()),
        ),
        (
            "even-odd brackets",
            ensure(mixed_zero, "nonzero mixed bracket"),
        ),
        (
            "even copy",
            ensure(restrict(&sum, 0) == q3, "differs from q3"),
        ),
        (
            "odd copy",
            ensure(restrict(&sum, 1) == q3, "differs from q3"),
        ),
    ])
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 3..=8 {
        let g = generic_invariant_quadratic(n).map_err(|e| e.to_string())?;
        for sample in 0..50 {
            let a = random_assignment(g.params(), &mut rng);
            let b = g.bivector.substitute(&a).map_err(|e| e.to_string())?;
            let field = b.modular_field();
            if !field.is_zero() {
                return Err(format!("n={n} sample {sample}: {:?}", field.components()));
            }
        }
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    let mut failures = Vec::new();
    for n in 3..=8usize {
        for degree in 1..=2 * n + 2 {
            let g = generic_invariant_homogeneous(n, degree).map_err(|e| e.to_string())?;
            let expect_empty = degree % n != 2 % n;
            if g.params().is_empty() != expect_empty {
                failures.push(format!("n={n} N={degree}: {} parameters", g.params().len()));
            }
        }
    }
    let h3 = catalog::h3_cubic_jps().map_err(|e| e.to_string())?;
    for r in [
        is_sigma_invariant(&h3),
        is_tau_invariant(&h3),
        h3.is_poisson(),
    ] {
        if !r.passed() {
            failures.push(format!("h3 cubic {r}"));
        }
    }
    if !hpoisson::heisenberg::admissible_degree(3, 5) {
        failures.push("degree 5 not admissible for n=3".into());
    }
    ensure(failures.is_empty(), failures.join(", "))
}

/// Known solutions, used for half of the samples so that both verdicts occur.
fn solution(n: usize, rng: &mut ChaCha8Rng) -> Assignment {
    let mut a = Assignment::new();
    match n {
        4 => {
            let (s, t) = (nonzero_rational(rng), random_rational(rng));
            a.insert("A1".into(), s.clone().into());
            a.insert("A2".into(), (-(&t * &t) / s).into());
            a.insert("B".into(), t.into());
        }
        5 => {
            let (_, fam) = families()[rng.gen_range(0..3)].clone();
            let fam = fam.at(&nonzero_rational(rng)).unwrap();
            let names = ["A1", "A2", "A3", "B1", "B2", "B3"];
            for (name, v) in names.iter().zip(fam.a.iter().chain(&fam.b)) {
                a.insert(name.to_string(), v.as_constant().unwrap().into());
            }
        }
        _ => {
            for name in ["A1", "A2", "A3", "B2", "B3", "C"] {
                a.insert(name.into(), 0.into());
            }
            a.insert("B1".into(), random_rational(rng).into());
            a.insert("B4".into(), random_rational(rng).into());
        }
    }
    a
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for n in [4, 5, 6] {
        let g = generic_invariant_quadratic(n).map_err(|e| e.to_string())?;
        let system = jacobi_constraints(&g).map_err(|e| e.to_string())?;
        let mut verdicts = [0usize; 2];
        for sample in 0..100 {
            let a = if sample % 2 == 0 {
                solution(n, &mut rng)
            } else {
                random_assignment(g.params(), &mut rng)
            };
            let by_system = system
                .verify_assignment(&a)
                .map_err(|e| e.to_string())?
                .passed();
            let direct = g
                .bivector
                .substitute(&a)
                .map_err(|e| e.to_string())?
                .is_poisson()
                .passed();
            if by_system != direct {
                return Err(format!(
                    "n={n} sample {sample}: system {by_system}, direct {direct}"
                ));
            }
            verdicts[usize::from(direct)] += 1;
            // the substituted tensor must give no residual constraints either
            let residual =
                bivector_jacobi_constraints(&g.bivector.substitute(&a).unwrap()).unwrap();
            if residual.is_empty() != direct {
                return Err(format!("n={n} sample {sample}: residual system disagrees"));
            }
        }
        if verdicts.contains(&0) {
            return Err(format!("n={n}: only one verdict observed {verdicts:?}"));
        }
    }
    Ok(())
}

struct Criterion {
    id: u32,
    title: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion {
            id: 1,
            title: "n=3 tensors are all Poisson",
            budget: secs(1),
            run: criterion_1,
        },
        Criterion {
            id: 2,
            title: "n=4 relation and q4 as Jacobian structure",
            budget: secs(1),
            run: criterion_2,
        },
        Criterion {
            id: 3,
            title: "n=5 system and coefficient families",
            budget: secs(5),
            run: criterion_3,
        },
        Criterion {
            id: 4,
            title: "elliptic n=5 structures: invariance, Casimir, wedge identity",
            budget: secs(10),
            run: criterion_4,
        },
        Criterion {
            id: 5,
            title: "wedge constant at lam=1",
            budget: secs(1),
            run: criterion_5,
        },
        Criterion {
            id: 6,
            title: "n=6 system and direct sum",
            budget: secs(20),
            run: criterion_6,
        },
        Criterion {
            id: 7,
            title: "invariant quadratic tensors are unimodular",
            budget: secs(30),
            run: criterion_7,
        },
        Criterion {
            id: 8,
            title: "admissible degrees",
            budget: secs(10),
            run: criterion_8,
        },
        Criterion {
            id: 9,
            title: "constraint extraction agrees with direct Jacobi check",
            budget: secs(60),
            run: criterion_9,
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|_| Err("panicked".to_string()));
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            ensure(
                elapsed <= c.budget,
                format!(
                    "took {:.2}s, budget {}s",
                    elapsed.as_secs_f64(),
                    c.budget.as_secs()
                ),
            )
        });
        match outcome {
            Ok(()) => println!(
                "criterion {}: PASS ({:.2}s) {}",
                c.id,
                elapsed.as_secs_f64(),
                c.title
            ),
            Err(e) => {
                failed += 1;
                println!(
                    "criterion {}: FAIL ({:.2}s) {}: {}",
                    c.id,
                    elapsed.as_secs_f64(),
                    c.title,
                    e
                );
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
