//! Acceptance criteria, one line per criterion.
//!
//! Runs without the libtest harness so the pass/fail lines are always shown.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use itertools::Itertools;
use num_traits::Zero;

use critset::arrangement::{Arrangement, WeightVector};
use critset::critical::{
    logarithmic_ideal_for, origin_membership_check, quotient_identity_check,
    reducible_decomposition_check, universal_minimal_generators, CriticalOneForm,
};
use critset::groebner::{Budget, Codimension};
use critset::logmod::{free_check, minimal_derivation_generators, saito_free_check, Derivation, Freeness};
use critset::os::{aomoto_betti, alternating_sum, resonance_least_p, AomotoComplex, ExteriorModel, OsAlgebra};
use critset::poly::parse_polynomial;
use critset::scalar::{parse_rational, Rational};
use critset::workbench::catalog::{self, Parametrization};
use critset::workbench::{
    critical_count_check, entry_suite, fibre_dimension_check, universal_codimension, verify_theorem, Verdict,
    VerifyOptions, WeightSampler, DEFAULT_SEED,
};
use critset::{Ideal, Poly};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn q(s: &str) -> Rational {
    parse_rational(s).expect("literal")
}

fn params(v: &[&str]) -> Vec<Rational> {
    v.iter().map(|s| q(s)).collect()
}

fn poly(a: &Arrangement, s: &str) -> Poly {
    parse_polynomial(a.ring(), s).expect("literal")
}

fn budget() -> Budget {
    Budget::from_env()
}

/// The stated Saito basis of the `r = 2` monomial-deletion arrangement.
fn deletion_basis(a: &Arrangement) -> Vec<Derivation> {
    [
        ["x1", "x2", "x3"],
        ["x1^3", "x2^3", "x3^3"],
        ["x1*x2^2*x3", "x1^2*x2*x3", "x1^2*x2^2"],
    ]
    .iter()
    .map(|c| Derivation::new(c.iter().map(|s| poly(a, s)).collect()))
    .collect()
}

fn pairings_reproduce_closed_forms() -> Outcome {
    let a = catalog::monomial_deletion(2);
    let basis = deletion_basis(&a);
    for d in &basis {
        ensure!(d.is_logarithmic(&a), "{d} is not logarithmic");
    }
    let e = saito_free_check(&a, &basis).map_err(err)?;
    ensure!(e.exponents == vec![0, 2, 3], "exponents {:?}", e.exponents);
    let samples = [
        ["1", "2", "3"],
        ["1", "-1", "0"],
        ["1/2", "3", "-7/3"],
        ["2", "-2", "1/5"],
        ["0", "1", "-2"],
    ];
    let mut worst = Duration::ZERO;
    for s in samples {
        let t = Instant::now();
        let (al, be, ga) = (q(s[0]), q(s[1]), q(s[2]));
        let w = Parametrization::MonomialDeletion { r: 2 }.weights(&[al.clone(), be.clone(), ga.clone()]).unwrap();
        let omega = CriticalOneForm::specialized(&a, &w).map_err(err)?;
        let r = q("2");
        let expected = [
            format!("{}", &r * (q("2") * &al + q("2") * &be + &ga)),
            format!(
                "({})*(x1^2 + x2^2) + ({})*x3^2",
                &r * (&al + &be + &ga),
                &r * (&al + &be)
            ),
            format!("(({})*x1^2 + ({})*x2^2)*x3", &r * &be, &r * &al),
        ];
        for (d, want) in basis.iter().zip(&expected) {
            let got = omega.pair(d).map_err(err)?;
            ensure!(got == poly(&a, want), "pairing {got} != {want} at {s:?}");
        }
        worst = worst.max(t.elapsed());
        ensure!(worst < Duration::from_secs(1), "sample took {worst:?}");
    }
    Ok(format!("5 samples, slowest {worst:.2?}"))
}

fn deletion_geometry() -> Outcome {
    let a = catalog::monomial_deletion(2);
    let p = Parametrization::MonomialDeletion { r: 2 };
    let w = p.weights(&params(&["1", "-1", "0"])).unwrap();
    let (ideal, _) = logarithmic_ideal_for(&a, &w).map_err(err)?;
    let g = poly(&a, "(x1^2 - x2^2)*x3");
    ensure!(ideal.radical_contains(&g, budget()).map_err(err)?, "g not in the radical");
    for h in ideal.generators() {
        ensure!(h.exact_divide(&g).map_err(err)?.is_some(), "{h} not in (g)");
    }
    let sat = ideal.saturate_by_factors(&a.forms(), budget()).map_err(err)?;
    let x3 = Ideal::new(a.ring(), vec![poly(&a, "x3")]);
    ensure!(sat.same_ideal(&x3, budget()).map_err(err)?, "saturation is not (x3)");
    for s in [["1", "2", "3"], ["1", "-1", "1"], ["1/3", "0", "5"]] {
        let w = p.weights(&params(&s)).unwrap();
        let (ideal, _) = logarithmic_ideal_for(&a, &w).map_err(err)?;
        ensure!(ideal.is_unit_ideal(budget()).map_err(err)?, "V(I) nonempty at {s:?}");
    }
    Ok("V(I) = V((x1^2 - x2^2) x3), saturation (x3), 3 empty samples".into())
}

fn converse_failure_witness() -> Outcome {
    let a = catalog::tame_nonfree(2);
    let w = Parametrization::TameNonfree { r: 2 }.weights(&params(&["1", "-1"])).unwrap();
    let r = resonance_least_p(&a, &w).map_err(err)?;
    ensure!(r.betti[1] == 0, "H^1 = {}", r.betti[1]);
    let (ideal, _) = logarithmic_ideal_for(&a, &w).map_err(err)?;
    let sat = ideal.saturate_by_factors(&a.forms(), budget()).map_err(err)?;
    let x3 = poly(&a, "x3");
    ensure!(sat.radical_contains(&x3, budget()).map_err(err)?, "x3 not in the radical");
    for h in sat.generators() {
        ensure!(h.exact_divide(&x3).map_err(err)?.is_some(), "{h} not in (x3)");
    }
    let c = sat.codimension(budget()).map_err(err)?;
    ensure!(c == Codimension::Codim(1), "codim {c}");
    let report = verify_theorem("tame-nonfree-2", &a, &w, &VerifyOptions::default()).map_err(err)?;
    ensure!(
        report.annotations.iter().any(|s| s.starts_with("converse fails")),
        "no annotation: {:?}",
        report.annotations
    );
    Ok(format!("betti {:?}, sqrt(I : Q^inf) = (x3), codim 1", r.betti))
}

fn x3_not_free() -> Outcome {
    let a = catalog::x3();
    let m = minimal_derivation_generators(&a, None).map_err(err)?;
    ensure!(m.stabilized, "generators not stabilized");
    let gens = m.generating_set();
    ensure!(gens.len() == 4, "{} minimal generators", gens.len());
    for triple in gens.iter().cloned().combinations(3) {
        ensure!(saito_free_check(&a, &triple).is_err(), "a triple passed the Saito check");
    }
    let u = universal_minimal_generators(&a, &m).map_err(err)?;
    ensure!(u.count() == 4 && u.injective, "universal ideal has {} generators", u.count());
    ensure!(matches!(free_check(&a, None).map_err(err)?.freeness, Freeness::NotFree { .. }), "reported free");
    Ok(format!("4 generators in degrees {:?}; all 4 triples fail", m.generator_degrees()))
}

fn pencils() -> Outcome {
    let mut sampler = WeightSampler::new(DEFAULT_SEED);
    let mut worst = Duration::ZERO;
    for n in 3..=6 {
        let t = Instant::now();
        let a = catalog::pencil(n);
        let m = free_check(&a, None).map_err(err)?;
        let Freeness::Free(e) = &m.freeness else {
            return Err(format!("pencil-{n} not certified free"));
        };
        ensure!(e.exponents == vec![0, n as i64 - 2], "pencil-{n} exponents {:?}", e.exponents);
        let u = universal_minimal_generators(&a, &minimal_derivation_generators(&a, None).map_err(err)?).map_err(err)?;
        ensure!(u.degrees == vec![0, n as u32 - 2], "pencil-{n} ideal degrees {:?}", u.degrees);
        for _ in 0..3 {
            let w = sampler.generic_sum_zero(&a);
            let r = verify_theorem("pencil", &a, &w, &VerifyOptions::default()).map_err(err)?;
            ensure!(
                r.least_p == Some(1) && r.codimension == Some(Codimension::Codim(1)) && r.verdict == Verdict::TheoremSatisfied,
                "pencil-{n} at {w}: p {:?}, codim {:?}",
                r.least_p,
                r.codimension
            );
        }
        worst = worst.max(t.elapsed());
    }
    ensure!(worst < Duration::from_secs(5), "slowest pencil {worst:?}");
    Ok(format!("n = 3..6, slowest {worst:.2?}"))
}

fn critical_point_counts() -> Outcome {
    let mut sampler = WeightSampler::new(DEFAULT_SEED);
    let mut counts = Vec::new();
    for k in 3..=5 {
        let a = catalog::generic_lines(k);
        for _ in 0..3 {
            let c = critical_count_check(&a, &mut sampler, budget()).map_err(err)?;
            let expected = (1 + k * (k - 1) / 2 - k) as u64;
            ensure!(c.expected == expected, "|chi| = {} for {k} lines", c.expected);
            ensure!(c.matches(), "{k} lines at {}: counted {:?}, expected {}", c.weights, c.counted, c.expected);
        }
        counts.push(format!("{k} lines: {}", 1 + k * (k - 1) / 2 - k));
    }
    Ok(counts.join(", "))
}

fn quotient_identity() -> Outcome {
    let cases = [
        ("pencil-3", catalog::pencil(3)),
        ("pencil-4", catalog::pencil(4)),
        ("x3", catalog::x3()),
        ("boolean-3", catalog::boolean(3)),
    ];
    let mut sampler = WeightSampler::new(DEFAULT_SEED);
    for (name, a) in cases {
        let gens = minimal_derivation_generators(&a, None).map_err(err)?.generating_set();
        let universal = CriticalOneForm::universal(&a);
        ensure!(quotient_identity_check(&universal, &gens, budget()).map_err(err)?, "{name}: universal (I' : Q) != I");
        // a zero weight deletes its hyperplane from the form, so every entry is nonzero
        let nonzero = |w: &WeightVector| w.entries().iter().all(|v| !v.is_zero());
        let resonant = catalog::lookup(name)
            .and_then(|e| e.resonant_weights.iter().find(|w| nonzero(w)).cloned())
            .unwrap_or_else(|| sampler.generic_sum_zero(&a));
        for w in [sampler.generic(&a), sampler.generic_sum_zero(&a), resonant] {
            let omega = CriticalOneForm::specialized(&a, &w).map_err(err)?;
            ensure!(quotient_identity_check(&omega, &gens, budget()).map_err(err)?, "{name} at {w}: (I' : Q) != I");
        }
    }
    Ok("4 arrangements, universal and 3 weights each".into())
}

fn cone_if_affine(a: &Arrangement) -> Arrangement {
    if a.is_central() {
        a.clone()
    } else {
        a.cone(&WeightVector::zero(a.len())).unwrap().0
    }
}

fn structural_properties() -> Outcome {
    let mut sampler = WeightSampler::new(DEFAULT_SEED);
    let mut checks = 0;
    for e in catalog::catalog() {
        let a = cone_if_affine(&e.arrangement);
        let os = OsAlgebra::new(&a).map_err(err)?;
        let mut weights = vec![sampler.generic(&a), WeightVector::zero(a.len())];
        weights.extend(e.resonant_weights.iter().filter(|w| w.len() == a.len()).cloned());
        let order: Vec<usize> = (0..a.len()).rev().collect();
        let shuffled = a.permuted(&order);
        for w in &weights {
            let complex = AomotoComplex::new(&os, w);
            ensure!(complex.squares_to_zero(), "{}: d^2 != 0", e.name);
            let betti = complex.betti();
            ensure!(alternating_sum(&betti) == 0, "{}: alternating sum of {betti:?}", e.name);
            let permuted = aomoto_betti(&shuffled, &w.permuted(&order)).map_err(err)?;
            ensure!(permuted == betti, "{}: reordering changed {betti:?} to {permuted:?}", e.name);
            checks += 3;
        }
        for _ in 0..3 {
            let x = sampler.point_in_complement(&e.arrangement);
            ensure!(fibre_dimension_check(&e.arrangement, &x).map_err(err)?, "{}: fibre dimension", e.name);
            checks += 1;
        }
        let a = &e.arrangement;
        if a.is_central() && a.is_irreducible().map_err(err)? && !e.reduced_scope {
            for w in [sampler.generic(a), sampler.generic_sum_zero(a)] {
                ensure!(origin_membership_check(a, &w).map_err(err)?, "{}: origin membership at {w}", e.name);
                checks += 1;
            }
        }
    }
    let pairs = [
        (catalog::pencil(3), catalog::boolean(1)),
        (catalog::pencil(3), catalog::pencil(3)),
        (catalog::pencil(4), catalog::boolean(2)),
    ];
    for (a1, a2) in &pairs {
        let mut first = vec![0; a1.len()];
        first[..3].copy_from_slice(&[1, 1, -2]);
        let samples = [
            (WeightVector::from_integers(&first), WeightVector::zero(a2.len())),
            (sampler.generic(a1), sampler.generic(a2)),
        ];
        for (w1, w2) in &samples {
            ensure!(
                reducible_decomposition_check(a1, a2, w1, w2, budget()).map_err(err)?,
                "I(A1 + A2) != I(A1) + I(A2) at {w1}, {w2}"
            );
            checks += 1;
        }
    }
    Ok(format!("{checks} checks"))
}

fn harness_soundness() -> Outcome {
    let mut reports = 0;
    for e in catalog::catalog() {
        let suite = entry_suite(&e, 5, DEFAULT_SEED, budget()).map_err(err)?;
        for r in &suite {
            ensure!(r.verdict != Verdict::Violated, "{} {:?}: violated ({:?})", e.name, r.sample, r.reproduction);
            ensure!(!r.budget_exhausted, "{} {:?}: budget exhausted", e.name, r.sample);
        }
        let a = &e.arrangement;
        let rank = Codimension::Codim(a.rank());
        let generic = suite.iter().filter(|r| r.sample.as_deref().is_some_and(|s| s.ends_with("generic")));
        if a.is_central() {
            // specialized generic weights with nonzero sum have empty fibres
            for r in generic {
                ensure!(r.codimension == Some(Codimension::Empty), "{}: generic fibre {:?}", e.name, r.codimension);
            }
            if e.reduced_scope {
                // over the complement the critical set is a bundle of rank n - l
                let mut sampler = WeightSampler::new(DEFAULT_SEED);
                for _ in 0..3 {
                    let x = sampler.point_in_complement(a);
                    ensure!(fibre_dimension_check(a, &x).map_err(err)?, "{}: fibre dimension", e.name);
                }
            } else {
                let c = universal_codimension(a, e.derivation_bound, budget()).map_err(err)?;
                ensure!(c == rank, "{}: universal codimension {c}, rank {}", e.name, a.rank());
            }
        } else {
            for r in generic {
                ensure!(r.codimension == Some(rank), "{}: generic codimension {:?}", e.name, r.codimension);
            }
        }
        reports += suite.len();
    }
    Ok(format!("{reports} reports, none violated"))
}

fn os_oracle() -> Outcome {
    let mut sampler = WeightSampler::new(DEFAULT_SEED);
    let mut compared = 0;
    for e in catalog::catalog().into_iter().filter(|e| e.arrangement.len() <= 6) {
        let a = cone_if_affine(&e.arrangement);
        let os = OsAlgebra::new(&a).map_err(err)?;
        let brute = ExteriorModel::new(&a);
        let resonant = e
            .resonant_weights
            .iter()
            .find(|w| w.len() == a.len())
            .cloned()
            .unwrap_or_else(|| sampler.generic_sum_zero(&a));
        for w in [sampler.generic(&a), sampler.generic_sum_zero(&a), resonant] {
            let nbc = AomotoComplex::new(&os, &w).betti();
            let other = brute.betti(&w);
            ensure!(nbc == other, "{} at {w}: NBC {nbc:?}, exterior model {other:?}", e.name);
            compared += 1;
        }
    }
    Ok(format!("{compared} weight vectors agree"))
}

struct Criterion {
    title: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { title: "monomial-deletion pairings", limit: Duration::from_secs(5), run: pairings_reproduce_closed_forms },
        Criterion { title: "monomial-deletion critical geometry", limit: Duration::from_secs(10), run: deletion_geometry },
        Criterion { title: "resonance converse fails", limit: Duration::from_secs(10), run: converse_failure_witness },
        Criterion { title: "x3 is not free", limit: Duration::from_secs(5), run: x3_not_free },
        Criterion { title: "pencils", limit: Duration::from_secs(20), run: pencils },
        Criterion { title: "critical point counts", limit: Duration::from_secs(30), run: critical_point_counts },
        Criterion { title: "quotient identity", limit: Duration::from_secs(60), run: quotient_identity },
        Criterion { title: "structural properties", limit: Duration::from_secs(300), run: structural_properties },
        Criterion { title: "harness soundness", limit: Duration::from_secs(600), run: harness_soundness },
        Criterion { title: "Orlik-Solomon oracle", limit: Duration::from_secs(120), run: os_oracle },
    ];
    let mut failed = 0;
    for (i, c) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = t.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > c.limit => Err(format!("took {elapsed:.1?}, limit {:?}", c.limit)),
            o => o,
        };
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {:<36} {:>8.2?}  {detail}", i + 1, c.title, elapsed),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {:<36} {:>8.2?}  {why}", i + 1, c.title, elapsed);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
