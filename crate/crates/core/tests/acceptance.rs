//! One line per acceptance criterion. Every comparison is exact.
//!
//! Runs without the libtest harness so the verdicts are always printed.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use rand_core::RngCore;
use segreta::chow::*;
use segreta::engine::*;
use segreta::kernel::*;

const MONOMIAL: &str = "x1^2*x2^6, x1^3*x2^4, x1^4*x2^3, x1^5*x2, x1^7";
const VERONESE: &str =
    "x0*x3 - x1^2, x0*x4 - x1*x2, x0*x5 - x2^2, x1*x4 - x2*x3, x1*x5 - x2*x4, x3*x5 - x4^2";
const CONIC: &str = "x0*x1 - x2^2";

/// (label, generators, number of variables, d, compare with Q)
///
/// The degree-9 regeneration is compared with a second prime instead of Q:
/// over Q it runs for more than ten minutes.
const FIXTURES: [(&str, &str, usize, u32, bool); 10] = [
    ("monomial d=8", MONOMIAL, 4, 8, true),
    ("monomial d=9", MONOMIAL, 4, 9, false),
    ("veronese", VERONESE, 6, 2, true),
    ("conic", CONIC, 3, 2, true),
    ("embedded point", "x0^2, x0*x1", 3, 2, true),
    ("hyperplane", "x0 + 2*x1 - 3*x3", 4, 1, true),
    ("coordinate points", "x0*x1, x0*x2, x1*x2", 3, 2, true),
    ("twisted cubic", "x0*x2 - x1^2, x0*x3 - x1*x2, x1*x3 - x2^2", 4, 2, true),
    ("nodal cubic jacobian", "3*x0^2 + 2*x0*x2, 2*x1*x2, x1^2 - x0^2", 3, 2, true),
    ("two quadrics", "x0*x1 - x2*x3, x0^2 + x1^2 - x3*x4", 5, 2, true),
];

struct Verdict {
    ok: bool,
    detail: String,
}

fn verdict(ok: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        ok,
        detail: detail.into(),
    }
}

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

fn ideal<K: Field>(field: K, text: &str, nvars: usize) -> Ideal<K> {
    let ring = PolyRing::new(field, nvars).unwrap();
    let gens = parse_polynomial_list(text, &names(nvars))
        .unwrap()
        .into_iter()
        .map(|(_, p)| p.to_ring(&ring))
        .collect();
    Ideal::new(&ring, gens).unwrap()
}

fn run<K: Field>(field: K, text: &str, nvars: usize, d: u32, seed: u64) -> ResidualReport {
    residual_degrees(&SegreJob::new(ideal(field, text, nvars), d, seed).unwrap()).unwrap()
}

fn fp() -> PrimeField {
    PrimeField::default()
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(
        Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    )
}

fn class_strategy() -> impl Strategy<Value = ChowClass> {
    (0usize..7).prop_flat_map(|n| {
        prop::collection::vec(-60i64..60, n + 1).prop_map(ChowClass::from_coeffs)
    })
}

fn property(cases: u32, name: &str, strategy: impl Strategy<Value = (ChowClass, i64, i64)>, f: impl Fn(&ChowClass, i64, i64) -> bool) -> Result<u32, String> {
    let mut r = runner(cases);
    r.run(&strategy, |(c, a, b)| {
        prop_assert!(f(&c, a, b), "{name}: class {:?}, a = {a}, b = {b}", c.coeffs());
        Ok(())
    })
    .map(|_| cases)
    .map_err(|e| e.to_string())
}

fn criterion_1() -> Verdict {
    let t = Instant::now();
    let r = run(fp(), MONOMIAL, 4, 8, 1);
    let elapsed = t.elapsed();
    let tensored = tensored_from_report(&r);
    let ordinary = tensored.to_ordinary();
    let ok = r.counts == [1, 6, 14, 30]
        && tensored.cls.coeffs() == [0, 2, 50, 482]
        && tensored.twist == -8
        && ordinary.coeffs() == [0, 2, 18, -334]
        && elapsed < Duration::from_secs(30);
    verdict(
        ok,
        format!(
            "monomial ideal in P^3, d=8: N={:?} tensored={:?} ordinary={:?} in {elapsed:.2?}",
            r.counts,
            tensored.cls.coeffs(),
            ordinary.coeffs()
        ),
    )
}

fn criterion_2() -> Verdict {
    let t = Instant::now();
    let mut ok = true;
    let mut seen = Vec::new();
    for d in [8i64, 9] {
        let r = run(fp(), MONOMIAL, 4, d as u32, 2);
        let formula = vec![1, d - 2, d * d - 4 * d - 18, d * d * d - 6 * d * d - 54 * d + 334];
        ok &= r.counts == formula;
        seen.push(format!("d={d} N={:?}", r.counts));
    }
    let elapsed = t.elapsed();
    ok &= elapsed < Duration::from_secs(60);
    verdict(ok, format!("regeneration: {} (closed formulas) in {elapsed:.2?}", seen.join(", ")))
}

fn criterion_3() -> Verdict {
    let t = Instant::now();
    let r = run(fp(), VERONESE, 6, 2, 42);
    let elapsed = t.elapsed();
    let tensored = tensored_from_report(&r);
    let ordinary = tensored.to_ordinary();
    let predicted = predicted_counts(&tensored, 2).unwrap();
    let model = segre_regular_embedding(&SubvarietyModel::veronese_surface(), 5, -2).unwrap();
    let ok = tensored.cls.coeffs() == [0, 0, 0, 4, 14, 31]
        && ordinary.coeffs() == [0, 0, 0, 4, -18, 51]
        && predicted == [1, 2, 4, 4, 2, 1]
        && r.counts == predicted
        && model.cls.coeffs() == [0, 0, 0, 4, 14, 31]
        && elapsed < Duration::from_secs(60);
    verdict(
        ok,
        format!(
            "veronese surface: tensored={:?} ordinary={:?} counts={predicted:?}, regular-embedding route={:?}, engine {elapsed:.2?}",
            tensored.cls.coeffs(),
            ordinary.coeffs(),
            model.cls.coeffs()
        ),
    )
}

fn criterion_4() -> Verdict {
    let job = SegreJob::new(ideal(fp(), CONIC, 3), 2, 5).unwrap();
    let (tensored, _) = tensored_segre(&job).unwrap();
    let zeta = zeta_from_segre(&tensored.to_ordinary(), 2).unwrap();
    let mut ok = zeta.numerator == [0, 2, 8, 8];
    ok &= zeta_expand(&zeta, 3).unwrap().coeffs() == [0, 2, -4, 8];
    let mut agree = Vec::new();
    for big in 3..=5 {
        let via_join = join_class(&tensored, big - 3).unwrap();
        let direct = tensored_segre(&job.extended(big).unwrap()).unwrap().0;
        let expanded = zeta_expand(&zeta, big).unwrap();
        let same = via_join == direct
            && direct.to_ordinary() == expanded
            && join_scheme_segre(&job, big).unwrap() == expanded;
        ok &= same;
        agree.push(format!("N={big} {}", if same { "agree" } else { "DIFFER" }));
    }
    verdict(
        ok,
        format!(
            "conic zeta: A={:?}, expansion in P^3 {:?}; join vs direct engine: {}",
            zeta.numerator,
            zeta_expand(&zeta, 3).unwrap().coeffs(),
            agree.join(", ")
        ),
    )
}

fn criterion_5() -> Verdict {
    let t = Instant::now();
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, f, chi) in [
        ("smooth conic", "x0*x1 - x2^2", 2),
        ("nodal cubic", "x1^2*x2 - x0^2*(x0 + x2)", 1),
        ("cuspidal cubic", "x1^2*x2 - x0^3", 2),
    ] {
        let i = ideal(Rationals, f, 3);
        let r = csm_hypersurface(i.ring(), &i.generators()[0], 11).unwrap();
        ok &= r.euler_characteristic == chi && !r.probabilistic;
        if name == "smooth conic" {
            ok &= r.class.coeffs() == [0, 2, 2];
        }
        parts.push(format!("{name} {:?}", r.class.coeffs()));
    }
    let elapsed = t.elapsed();
    ok &= elapsed < Duration::from_secs(30);
    verdict(ok, format!("CSM over Q: {} in {elapsed:.2?}", parts.join(", ")))
}

fn random_form(ring: &PolyRing<PrimeField>, d: u32, rng: &mut impl RngCore) -> Polynomial<u32> {
    let n = ring.nvars();
    let mut terms = Vec::new();
    let mut e = vec![0u32; n];
    fn walk(i: usize, left: u32, e: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == e.len() {
            e[i] = left;
            out.push(e.clone());
            return;
        }
        for a in 0..=left {
            e[i] = a;
            walk(i + 1, left - a, e, out);
        }
    }
    let mut exps = Vec::new();
    walk(0, d, &mut e, &mut exps);
    for x in exps {
        terms.push((x, BigInt::from(rng.next_u64() % 1_000_003)));
    }
    ring.from_integer_terms(&terms)
}

fn criterion_6() -> Verdict {
    let mut failures: Vec<String> = Vec::new();
    let mut counts = Vec::new();
    fn record(counts: &mut Vec<String>, failures: &mut Vec<String>, name: &str, r: Result<u32, String>) {
        match r {
            Ok(c) => counts.push(format!("{name} {c}")),
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }

    let twists = || (class_strategy(), -6i64..7, -6i64..7);

    record(
        &mut counts,
        &mut failures,
        "pic",
        property(256, "pic", twists(), |c, a, b| {
            tensor_twist(&tensor_twist(c, a), b) == tensor_twist(c, a + b)
                && tensor_twist(c, 0) == *c
                && TwistedSegreClass::from_ordinary(c, a, None).to_ordinary() == *c
        }),
    );

    record(
        &mut counts,
        &mut failures,
        "component",
        property(256, "component", twists(), |c, m, _| {
            let t = tensor_twist(c, m);
            (1..=c.ambient_dim() + 1).all(|k| {
                t.cap_linear_power(m, k as i64 - 1).coeff(k - 1) == c.coeff(k - 1)
            })
        }),
    );

    // complete intersections of `m` forms of degree `d` in P^n
    let ci = (1usize..7)
        .prop_flat_map(|n| (Just(n), 1..=n, 1i64..5))
        .prop_map(|(n, m, d)| {
            let base = ChowClass::from_coeffs(
                (0..=n).map(|i| if i == m { d.pow(m as u32) } else { 0 }).collect(),
            );
            (base.cap_linear_power(d, -(m as i64)), m as i64, d)
        });
    record(
        &mut counts,
        &mut failures,
        "twist independence",
        property(256, "twist independence", ci, |s, m, d| {
            let values: Vec<i64> = (-2 * d..=2 * d)
                .map(|t| tensor_twist(s, t).cap_linear_power(d + t, m).coeff(m as usize))
                .collect();
            values.windows(2).all(|w| w[0] == w[1]) && values[0] == d.pow(m as u32)
        }),
    );

    // the same statement on classes computed by the engine from random forms
    let mut engine_ci = 0u32;
    for seed in 0..24u64 {
        let (n, m, d) = [(2usize, 1usize, 3u32), (3, 2, 2), (4, 2, 2), (3, 1, 4)][seed as usize % 4];
        let ring = PolyRing::new(fp(), n + 1).unwrap();
        let mut rng = seed_stream(seed, 99);
        let forms = (0..m).map(|_| random_form(&ring, d, &mut rng)).collect();
        let i = Ideal::new(&ring, forms).unwrap();
        let s = segre_class(&SegreJob::new(i, d, seed).unwrap()).unwrap();
        let d = d as i64;
        let closed = ChowClass::from_coeffs(
            (0..=n).map(|k| if k == m { d.pow(m as u32) } else { 0 }).collect(),
        )
        .cap_linear_power(d, -(m as i64));
        let stable = (-2 * d..=2 * d)
            .map(|t| tensor_twist(&s, t).cap_linear_power(d + t, m as i64).coeff(m))
            .all(|v| v == d.pow(m as u32));
        if s == closed && stable {
            engine_ci += 1;
        } else {
            failures.push(format!("engine complete intersection seed {seed}: {:?}", s.coeffs()));
        }
    }
    counts.push(format!("engine CI {engine_ci}"));

    // effectivity and log-concavity on random equal-degree monomial ideals
    let mut monomial_cases = 0;
    let mut gen = seed_stream(2024, 7);
    for idx in 0..25 {
        let d = 2 + (gen.next_u64() % 3) as u32;
        let k = 2 + (gen.next_u64() % 4) as usize;
        let ring = PolyRing::new(fp(), 4).unwrap();
        let gens: Vec<_> = (0..k)
            .map(|_| {
                let mut e = [0u32; 4];
                for _ in 0..d {
                    e[(gen.next_u64() % 4) as usize] += 1;
                }
                ring.from_integer_terms(&[(e.to_vec(), BigInt::from(1))])
            })
            .collect();
        let i = Ideal::new(&ring, gens).unwrap();
        let text: Vec<String> = i.generators().iter().map(|g| ring.format(g, &names(4))).collect();
        let mut first: Option<Vec<i64>> = None;
        for seed in 0..8 {
            let r = residual_degrees(&SegreJob::new(i.clone(), d, seed).unwrap()).unwrap();
            let t = tensored_from_report(&r);
            let fine = effectivity_check(&t).effective
                && huh_logconcavity_check(&t, d).unwrap()
                && first.as_ref().is_none_or(|f| *f == r.counts);
            if fine {
                monomial_cases += 1;
            } else {
                failures.push(format!("monomial ideal {idx} ({}), seed {seed}: N={:?} class={:?}", text.join(", "), r.counts, t.cls.coeffs()));
            }
            first.get_or_insert(r.counts);
        }
    }
    counts.push(format!("monomial {monomial_cases}"));

    // seed independence over F_p and agreement with Q on every fixture
    let mut fixture_cases = 0;
    for (name, text, nvars, d, over_q) in FIXTURES {
        let reference = if over_q {
            run(Rationals, text, nvars, d, 0).counts
        } else {
            run(PrimeField::new(1_000_003).unwrap(), text, nvars, d, 0).counts
        };
        for seed in 0..20 {
            let r = run(fp(), text, nvars, d, 1000 + seed);
            if r.counts == reference {
                fixture_cases += 1;
            } else {
                failures.push(format!("{name} seed {seed}: {:?} vs reference {:?}", r.counts, reference));
            }
        }
    }
    counts.push(format!("seed/field {fixture_cases}"));

    // c(TP^n) compatibility of the twist, on fixture classes and random ones
    let mut fixture_classes: Vec<ChowClass> = FIXTURES
        .iter()
        .map(|&(_, text, nvars, d, _)| ordinary_from_counts(&run(fp(), text, nvars, d, 3).counts, d))
        .collect();
    fixture_classes.push(segre_regular_embedding(&SubvarietyModel::plane_conic(), 2, 0).unwrap().cls);
    let ful = |s: &ChowClass, m: i64| {
        let n = s.ambient_dim() as i64;
        let lhs = tensor_twist(&fulton_class(s), m).cap_linear_power(m, n);
        let rhs = tensor_twist(s, m)
            .cap_linear_power(1 + m, n + 1)
            .cap_linear_power(m, -1);
        lhs == rhs
    };
    let mut ful_cases = 0;
    for s in &fixture_classes {
        for m in -3..=3 {
            if ful(s, m) {
                ful_cases += 1;
            } else {
                failures.push(format!("fulton identity on {:?}, m = {m}", s.coeffs()));
            }
        }
    }
    counts.push(format!("fulton fixtures {ful_cases}"));
    record(
        &mut counts,
        &mut failures,
        "fulton random",
        property(256, "fulton", (class_strategy(), -3i64..4, Just(0)), |s, m, _| ful(s, m)),
    );

    let ok = failures.is_empty();
    let mut detail = format!("property suites: {}", counts.join(", "));
    if !ok {
        detail.push_str(&format!("; failures: {}", failures.join(" | ")));
    }
    verdict(ok, detail)
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 6] = [
        ("1", criterion_1),
        ("2", criterion_2),
        ("3", criterion_3),
        ("4", criterion_4),
        ("5", criterion_5),
        ("6", criterion_6),
    ];
    let mut all = true;
    for (id, f) in criteria {
        let v = f();
        all &= v.ok;
        println!("criterion {id}: {} | {}", if v.ok { "PASS" } else { "FAIL" }, v.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
