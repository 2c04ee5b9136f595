//! Catalog, verification harness and reports.
//!
//! The harness checks: if `H^p(A(A), omega_lambda) != 0` for the least such
//! `p`, then `codim V(I_lambda) <= p`, provided `A` is free, has rank at most
//! three, or `p <= 2`.

pub mod catalog;
mod sampler;

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arrangement::{Arrangement, ArrangementDocument, WeightVector};
use crate::critical::{affine_critical_count, logarithmic_ideal, universal_minimal_generators, CriticalOneForm};
use crate::error::{ArrangementError, CriticalError, GroebnerError};
use crate::groebner::{Budget, Codimension};
use crate::logmod::{free_check, minimal_derivation_generators, Freeness};
use crate::matrix::Matrix;
use crate::os::{aomoto_betti, poincare_and_euler, resonance_least_p, ExteriorModel, OsAlgebra, AomotoComplex};
use crate::scalar::{parse_rational, Rational};

pub use catalog::{catalog, lookup, CatalogEntry, KnownFacts, Parametrization};
pub use sampler::{is_generic, seed_from_env, WeightSampler, DEFAULT_SEED};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    TheoremSatisfied,
    Vacuous,
    Inapplicable,
    Violated,
    Incomplete,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Applicability {
    pub free: bool,
    pub rank_at_most_3: bool,
    pub p_at_most_2: bool,
}

impl Applicability {
    pub fn applies(&self) -> bool {
        self.free || self.rank_at_most_3 || self.p_at_most_2
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Timings {
    pub resonance_ms: f64,
    pub derivations_ms: f64,
    pub ideal_ms: f64,
}

/// Everything needed to rerun a case.
#[derive(Debug, Clone, Serialize)]
pub struct Reproduction {
    pub arrangement: ArrangementDocument,
    pub weights: WeightVector,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub arrangement: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sample: Option<String>,
    pub weights: WeightVector,
    pub seed: Option<u64>,
    /// The input was affine and the cone was checked.
    pub coned: bool,
    pub betti: Vec<usize>,
    /// Least resonant degree; `None` when nonresonant.
    pub least_p: Option<usize>,
    pub codimension: Option<Codimension>,
    /// Codimension of `V(I_lambda : Q^inf)`, the closure of the critical set in the complement.
    pub saturated_codimension: Option<Codimension>,
    pub applicability: Applicability,
    pub verdict: Verdict,
    pub derivations_stabilized: bool,
    pub annotations: Vec<String>,
    pub timings: Timings,
    pub budget_exhausted: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reproduction: Option<Reproduction>,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub budget: Budget,
    pub derivation_bound: Option<u32>,
    pub seed: Option<u64>,
    /// Also compute the saturation by `Q`.
    pub saturate: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            budget: Budget::from_env(),
            derivation_bound: None,
            seed: None,
            saturate: true,
        }
    }
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

/// Runs the resonance-versus-codimension check on one weight vector.
pub fn verify_theorem(
    name: &str,
    a: &Arrangement,
    weights: &WeightVector,
    opts: &VerifyOptions,
) -> Result<VerificationReport, CriticalError> {
    a.check_weights(weights)?;
    let (a, w, coned) = if a.is_central() {
        (a.clone(), weights.clone(), false)
    } else {
        let (c, w) = a.cone(weights)?;
        (c, w, true)
    };
    if !a.is_essential() {
        return Err(ArrangementError::NotEssential.into());
    }
    let mut timings = Timings::default();
    let t = Instant::now();
    let resonance = resonance_least_p(&a, &w)?;
    timings.resonance_ms = ms(t);

    let t = Instant::now();
    let module = minimal_derivation_generators(&a, opts.derivation_bound)?;
    timings.derivations_ms = ms(t);
    let applicability = Applicability {
        free: module.freeness.is_free(),
        rank_at_most_3: a.rank() <= 3,
        p_at_most_2: resonance.least_p.is_some_and(|p| p <= 2),
    };

    let t = Instant::now();
    let omega = CriticalOneForm::specialized(&a, &w)?;
    let ideal = logarithmic_ideal(&omega, &module.generating_set())?;
    let mut budget_exhausted = false;
    let mut annotations = Vec::new();
    if !module.stabilized {
        annotations.push(format!(
            "derivation generators still appearing at degree {}; the ideal may be too small",
            module.bound
        ));
    }
    let budget_hit = |e: &GroebnerError| matches!(e, GroebnerError::BudgetExceeded(_));
    let codimension = match ideal.codimension(opts.budget) {
        Ok(c) => Some(c),
        Err(e) if budget_hit(&e) => {
            budget_exhausted = true;
            None
        }
        Err(e) => return Err(e.into()),
    };
    let mut saturated_codimension = None;
    if opts.saturate && codimension.is_some() {
        match ideal
            .saturate_by_factors(&a.forms(), opts.budget)
            .and_then(|s| s.codimension(opts.budget))
        {
            Ok(c) => saturated_codimension = Some(c),
            Err(e) if budget_hit(&e) => budget_exhausted = true,
            Err(e) => return Err(e.into()),
        }
    }
    timings.ideal_ms = ms(t);

    // a nonempty critical set in the complement below the least resonant degree
    if let Some(Codimension::Codim(c)) = saturated_codimension {
        if c < a.dim() && resonance.least_p.is_none_or(|p| c < p) {
            annotations.push(format!(
                "converse fails: the critical set has codimension {c} but the least resonant degree is {}",
                resonance.least_p.map_or("none".to_string(), |p| p.to_string())
            ));
        }
    }

    let verdict = match (resonance.least_p, codimension) {
        (None, _) => Verdict::Vacuous,
        (Some(_), _) if !applicability.applies() => Verdict::Inapplicable,
        (Some(_), None) => Verdict::Incomplete,
        (Some(p), Some(c)) if c.at_most(p) => Verdict::TheoremSatisfied,
        (Some(_), Some(_)) => Verdict::Violated,
    };
    let reproduction = (verdict == Verdict::Violated).then(|| Reproduction {
        arrangement: a.to_document(),
        weights: w.clone(),
        seed: opts.seed,
    });
    Ok(VerificationReport {
        schema_version: SCHEMA_VERSION,
        arrangement: name.to_string(),
        sample: None,
        weights: weights.clone(),
        seed: opts.seed,
        coned,
        betti: resonance.betti,
        least_p: resonance.least_p,
        codimension,
        saturated_codimension,
        applicability,
        verdict,
        derivations_stabilized: module.stabilized,
        annotations,
        timings,
        budget_exhausted,
        reproduction,
    })
}

/// 0 when every verdict is satisfied, vacuous or inapplicable; 1 on any
/// violation; 2 when some computation ran out of budget.
pub fn exit_code<'a>(reports: impl IntoIterator<Item = &'a VerificationReport>) -> i32 {
    let mut code = 0;
    for r in reports {
        match r.verdict {
            Verdict::Violated => return 1,
            Verdict::Incomplete => code = 2,
            _ if r.budget_exhausted => code = 2,
            _ => {}
        }
    }
    code
}

/// Weight families: a base point moved along lines, explicit samples,
/// parameter tuples for a parametrized catalog entry, and generic draws.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct FamilySpec {
    #[serde(default)]
    pub arrangement: Option<String>,
    #[serde(default)]
    pub base: Option<WeightVector>,
    #[serde(default)]
    pub lines: Vec<LineSpec>,
    #[serde(default)]
    pub samples: Vec<WeightVector>,
    #[serde(default)]
    pub parameters: Vec<Vec<String>>,
    #[serde(default)]
    pub generic: Option<GenericSpec>,
}

/// `base + t * direction` for each listed `t`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LineSpec {
    pub direction: WeightVector,
    pub values: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GenericSpec {
    pub count: usize,
    #[serde(default)]
    pub sum_zero: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub key: String,
    pub weights: WeightVector,
}

pub fn expand_family(
    a: &Arrangement,
    parametrization: Option<Parametrization>,
    spec: &FamilySpec,
    seed: u64,
) -> Result<Vec<Sample>, CriticalError> {
    let mut out: Vec<Sample> = Vec::new();
    let push = |out: &mut Vec<Sample>, kind: &str, w: WeightVector| -> Result<(), CriticalError> {
        a.check_weights(&w)?;
        let key = format!("{:04}-{kind}", out.len());
        out.push(Sample { key, weights: w });
        Ok(())
    };
    let rationals = |v: &[String]| -> Result<Vec<Rational>, CriticalError> {
        v.iter()
            .map(|s| parse_rational(s).map_err(|_| CriticalError::NotApplicable("unparsable rational in family")))
            .collect()
    };
    if let Some(base) = &spec.base {
        push(&mut out, "base", base.clone())?;
    }
    for line in &spec.lines {
        let base = spec.base.clone().unwrap_or_else(|| WeightVector::zero(a.len()));
        for t in rationals(&line.values)? {
            let moved: Vec<Rational> = base
                .entries()
                .iter()
                .zip(line.direction.entries())
                .map(|(b, d)| b + d * &t)
                .collect();
            if line.direction.len() != base.len() {
                return Err(ArrangementError::WeightLength {
                    got: line.direction.len(),
                    expected: base.len(),
                }
                .into());
            }
            push(&mut out, "line", WeightVector::new(moved))?;
        }
    }
    for w in &spec.samples {
        push(&mut out, "sample", w.clone())?;
    }
    if !spec.parameters.is_empty() {
        let p = parametrization.ok_or(CriticalError::NotApplicable("arrangement has no weight parametrization"))?;
        for tuple in &spec.parameters {
            let w = p
                .weights(&rationals(tuple)?)
                .ok_or(CriticalError::NotApplicable("wrong number of parameters"))?;
            push(&mut out, "param", w)?;
        }
    }
    if let Some(g) = &spec.generic {
        let mut sampler = WeightSampler::new(seed);
        for _ in 0..g.count {
            let w = if g.sum_zero {
                sampler.generic_sum_zero(a)
            } else {
                sampler.generic(a)
            };
            push(&mut out, "generic", w)?;
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub sample: String,
    pub least_p: Option<usize>,
    pub codimension: Option<Codimension>,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepResult {
    pub reports: Vec<VerificationReport>,
    pub summary: Vec<SweepRow>,
}

/// One report per sample, computed in parallel and sorted by sample key.
pub fn sweep(name: &str, a: &Arrangement, samples: &[Sample], opts: &VerifyOptions) -> Result<SweepResult, CriticalError> {
    let mut reports: Vec<VerificationReport> = samples
        .par_iter()
        .map(|s| {
            verify_theorem(name, a, &s.weights, opts).map(|mut r| {
                r.sample = Some(s.key.clone());
                r
            })
        })
        .collect::<Result<_, _>>()?;
    reports.sort_by(|x, y| x.sample.cmp(&y.sample));
    let summary = reports
        .iter()
        .map(|r| SweepRow {
            sample: r.sample.clone().unwrap_or_default(),
            least_p: r.least_p,
            codimension: r.codimension,
            verdict: r.verdict,
        })
        .collect();
    Ok(SweepResult { reports, summary })
}

/// `dim { lambda : omega_lambda(x) = 0 }` at a point of the complement.
pub fn fibre_dimension(a: &Arrangement, x: &[Rational]) -> Result<usize, ArrangementError> {
    let values = a.check_point_in_complement(x)?;
    // column i: c_i / f_i(x)
    let rows: Vec<Vec<Rational>> = (0..a.dim())
        .map(|j| (0..a.len()).map(|i| &a.normal(i)[j] / &values[i]).collect())
        .collect();
    Ok(a.len() - Matrix::from_rows(a.len(), rows).rank())
}

/// The fibre over `x` has dimension `n - l`.
pub fn fibre_dimension_check(a: &Arrangement, x: &[Rational]) -> Result<bool, ArrangementError> {
    Ok(fibre_dimension(a, x)? + a.dim() == a.len())
}

#[derive(Debug, Clone, Serialize)]
pub struct CriticalCount {
    pub expected: u64,
    pub counted: Option<usize>,
    pub weights: WeightVector,
    pub seed: u64,
    pub attempts: usize,
}

impl CriticalCount {
    pub fn matches(&self) -> bool {
        self.counted == Some(self.expected as usize)
    }
}

/// Critical points of a generic master function on an affine complement,
/// against `|chi(M)|`. Weights whose saturation is not zero-dimensional are
/// redrawn, up to five attempts.
pub fn critical_count_check(a: &Arrangement, sampler: &mut WeightSampler, budget: Budget) -> Result<CriticalCount, CriticalError> {
    if a.is_central() {
        return Err(CriticalError::NotApplicable("arrangement is central"));
    }
    let expected = poincare_and_euler(a)?.euler_abs;
    let mut last = None;
    for attempt in 1..=5 {
        let w = sampler.generic(a);
        match affine_critical_count(a, &w, budget) {
            Ok(n) => {
                let out = CriticalCount {
                    expected,
                    counted: Some(n),
                    weights: w,
                    seed: sampler.seed(),
                    attempts: attempt,
                };
                if out.matches() {
                    return Ok(out);
                }
                last = Some(out);
            }
            Err(CriticalError::Groebner(GroebnerError::NotZeroDimensional)) => {
                last = Some(CriticalCount {
                    expected,
                    counted: None,
                    weights: w,
                    seed: sampler.seed(),
                    attempts: attempt,
                });
            }
            Err(e) => return Err(e),
        }
    }
    Ok(last.expect("at least one attempt"))
}

/// One re-derived fact.
#[derive(Debug, Clone, Serialize)]
pub struct FactCheck {
    pub entry: String,
    pub fact: String,
    pub expected: String,
    pub computed: String,
    pub ok: bool,
}

fn fact(entry: &str, fact: &str, expected: impl std::fmt::Debug, computed: impl std::fmt::Debug, ok: bool) -> FactCheck {
    FactCheck {
        entry: entry.into(),
        fact: fact.into(),
        expected: format!("{expected:?}"),
        computed: format!("{computed:?}"),
        ok,
    }
}

/// Re-derives the known facts of one catalog entry.
pub fn check_entry(e: &CatalogEntry, seed: u64) -> Result<Vec<FactCheck>, CriticalError> {
    let a = &e.arrangement;
    let mut out = Vec::new();
    if let Some(p) = &e.facts.poincare {
        let got = poincare_and_euler(a)?.coefficients;
        out.push(fact(&e.name, "poincare", p, &got, &got == p));
    }
    if a.is_central() {
        if let Some(free) = e.facts.free {
            let module = free_check(a, e.derivation_bound)?;
            let is_free = module.freeness.is_free();
            out.push(fact(&e.name, "free", free, is_free, is_free == free));
            if let (Some(exps), Freeness::Free(found)) = (&e.facts.exponents, &module.freeness) {
                out.push(fact(&e.name, "exponents", exps, &found.exponents, &found.exponents == exps));
            }
        }
        if let Some(count) = e.facts.minimal_generators {
            let module = minimal_derivation_generators(a, e.derivation_bound)?;
            let got = module.generator_count();
            out.push(fact(&e.name, "minimal generators", count, got, got == count && module.stabilized));
        }
    }
    // NBC Betti numbers against the exterior-algebra model
    if a.len() <= 6 && a.is_central() {
        let w = WeightSampler::new(seed).generic(a);
        let os = OsAlgebra::new(a)?;
        let nbc = AomotoComplex::new(&os, &w).betti();
        let brute = ExteriorModel::new(a).betti(&w);
        out.push(fact(&e.name, "betti oracle", &brute, &nbc, brute == nbc));
    }
    Ok(out)
}

pub fn self_test(seed: u64) -> Result<Vec<FactCheck>, CriticalError> {
    let entries = catalog();
    let results: Vec<Result<Vec<FactCheck>, CriticalError>> = entries.par_iter().map(|e| check_entry(e, seed)).collect();
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

/// Reports for an entry: `generic` generic weights plus the scripted
/// resonant ones.
pub fn entry_suite(e: &CatalogEntry, generic: usize, seed: u64, budget: Budget) -> Result<Vec<VerificationReport>, CriticalError> {
    let mut sampler = WeightSampler::new(seed);
    let mut samples: Vec<Sample> = (0..generic)
        .map(|i| Sample {
            key: format!("{i:04}-generic"),
            weights: sampler.generic(&e.arrangement),
        })
        .collect();
    for (i, w) in e.resonant_weights.iter().enumerate() {
        samples.push(Sample {
            key: format!("{:04}-resonant", generic + i),
            weights: w.clone(),
        });
    }
    let opts = VerifyOptions {
        budget,
        derivation_bound: e.derivation_bound,
        seed: Some(seed),
        saturate: !e.reduced_scope,
    };
    Ok(sweep(&e.name, &e.arrangement, &samples, &opts)?.reports)
}

/// Codimension of the universal critical variety in `x, a` space, the cone
/// of an affine arrangement standing in for it.
pub fn universal_codimension(a: &Arrangement, bound: Option<u32>, budget: Budget) -> Result<Codimension, CriticalError> {
    let a = if a.is_central() {
        a.clone()
    } else {
        a.cone(&WeightVector::zero(a.len()))?.0
    };
    let module = minimal_derivation_generators(&a, bound)?;
    let omega = CriticalOneForm::universal(&a);
    Ok(logarithmic_ideal(&omega, &module.generating_set())?.codimension(budget)?)
}

/// Number of minimal generators of the universal ideal.
pub fn universal_generator_count(a: &Arrangement, bound: Option<u32>) -> Result<usize, CriticalError> {
    let module = minimal_derivation_generators(a, bound)?;
    Ok(universal_minimal_generators(a, &module)?.count())
}

/// Betti numbers from the NBC model and from the exterior-algebra model.
pub fn betti_oracle_pair(a: &Arrangement, w: &WeightVector) -> Result<(Vec<usize>, Vec<usize>), ArrangementError> {
    Ok((aomoto_betti(a, w)?, ExteriorModel::new(a).betti(w)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn pencil_verdicts() {
        let a = catalog::pencil(3);
        let opts = VerifyOptions::default();
        let r = verify_theorem("pencil-3", &a, &WeightVector::from_integers(&[1, 1, -2]), &opts).unwrap();
        assert_eq!((r.least_p, r.codimension), (Some(1), Some(Codimension::Codim(1))));
        assert_eq!(r.verdict, Verdict::TheoremSatisfied);
        let r = verify_theorem("pencil-3", &a, &WeightVector::from_integers(&[1, 1, 1]), &opts).unwrap();
        assert_eq!(r.verdict, Verdict::Vacuous);
        assert_eq!(r.codimension, Some(Codimension::Empty));
        assert!(r.to_json().contains("\"schema_version\": 1"));
    }

    #[test]
    fn fibres() {
        let q = |v: &[i64]| v.iter().map(|&x| int(x)).collect::<Vec<_>>();
        assert_eq!(fibre_dimension(&catalog::pencil(3), &q(&[1, 2])).unwrap(), 1);
        assert_eq!(fibre_dimension(&catalog::x3(), &q(&[1, 2, 4])).unwrap(), 3);
        assert_eq!(fibre_dimension(&catalog::boolean(2), &q(&[1, 1])).unwrap(), 0);
        assert!(fibre_dimension(&catalog::boolean(2), &q(&[0, 1])).is_err());
    }

    #[test]
    fn family_expansion() {
        let a = catalog::monomial_deletion(2);
        let spec: FamilySpec = serde_json::from_str(
            r#"{ "parameters": [["1","2","3"], ["1","-1","0"]], "generic": { "count": 2 },
                 "base": ["1","1","1","1","1","1","1","1"],
                 "lines": [{ "direction": [1,0,0,0,0,0,0,-1], "values": ["1", "1/2"] }] }"#,
        )
        .unwrap();
        let s = expand_family(&a, Some(Parametrization::MonomialDeletion { r: 2 }), &spec, 1).unwrap();
        assert_eq!(s.len(), 1 + 2 + 2 + 2);
        assert!(s.windows(2).all(|w| w[0].key < w[1].key));
        assert_eq!(s[1].weights.get(0), &int(2));
    }

    #[test]
    fn exit_codes() {
        let a = catalog::pencil(3);
        let opts = VerifyOptions::default();
        let ok = verify_theorem("p", &a, &WeightVector::from_integers(&[1, 1, -2]), &opts).unwrap();
        assert_eq!(exit_code([&ok]), 0);
        let mut bad = ok.clone();
        bad.verdict = Verdict::Incomplete;
        assert_eq!(exit_code([&ok, &bad]), 2);
        bad.verdict = Verdict::Violated;
        assert_eq!(exit_code([&bad]), 1);
    }

    #[test]
    fn counts_critical_points() {
        let mut s = WeightSampler::new(11);
        let c = critical_count_check(&catalog::generic_lines(3), &mut s, Budget::default()).unwrap();
        assert!(c.matches(), "{c:?}");
        assert_eq!(c.expected, 1);
    }
}
