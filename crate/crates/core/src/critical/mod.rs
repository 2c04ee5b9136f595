//! Critical one-forms and the ideals cutting out their critical sets.
//!
//! For weights `a`, `omega_a = sum a_i df_i / f_i = sum_j d_j dx_j` with
//! `Q d_j = sum_i a_i c_ij Q / f_i`. The naive ideal is generated by the
//! cleared numerators `Q d_j`; the logarithmic ideal by the pairings
//! `<theta, omega_a>` over generators `theta` of `Der(A)`. Universal weights
//! live in `Q[x_1..x_l, a_1..a_n]` with the `a` block after the `x` block.

use num_traits::Zero;
use serde::Serialize;

use crate::arrangement::{Arrangement, WeightVector};
use crate::error::CriticalError;
use crate::groebner::{Budget, Codimension};
use crate::logmod::{minimal_derivation_generators, Derivation, GradedDerivationModule};
use crate::poly::{Monomial, Polynomial, RingRef};
use crate::scalar::{format_rational, int, Rational};
use crate::{Ideal, Poly};

#[derive(Debug, Clone, PartialEq)]
pub enum WeightMode {
    Specialized(WeightVector),
    Universal,
}

/// `omega` stored through its cleared numerators `Q d_j`.
#[derive(Clone)]
pub struct CriticalOneForm {
    arrangement: Arrangement,
    mode: WeightMode,
    ring: RingRef,
    q: Poly,
    numerators: Vec<Poly>,
}

impl std::fmt::Debug for CriticalOneForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CriticalOneForm")
            .field("mode", &self.mode)
            .field("numerators", &self.numerators)
            .finish()
    }
}

/// `Q / f_i` for every hyperplane.
fn cofactors(a: &Arrangement) -> Vec<Poly> {
    let q = a.defining_polynomial();
    (0..a.len())
        .map(|i| {
            q.exact_divide(&a.form(i))
                .expect("forms are nonzero")
                .expect("f_i divides Q")
        })
        .collect()
}

/// `x_1..x_l, a_1..a_n` with block order `x >> a`.
pub fn universal_ring(a: &Arrangement) -> RingRef {
    let names = a.ring().names();
    let mut prefix = "a".to_string();
    while names.iter().any(|v| v.starts_with(&prefix)) {
        prefix.insert(0, '_');
    }
    let extra: Vec<String> = (1..=a.len()).map(|i| format!("{prefix}{i}")).collect();
    a.ring().with_trailing_block(&extra)
}

impl CriticalOneForm {
    pub fn specialized(a: &Arrangement, weights: &WeightVector) -> Result<Self, CriticalError> {
        a.check_weights(weights)?;
        let cof = cofactors(a);
        let ring = a.ring().clone();
        let numerators = (0..a.dim())
            .map(|j| {
                let mut d = Polynomial::zero(&ring);
                for (i, g) in cof.iter().enumerate() {
                    let c = &a.normal(i)[j] * weights.get(i);
                    if !c.is_zero() {
                        d = d.add_scaled(g, &c);
                    }
                }
                d
            })
            .collect();
        Ok(CriticalOneForm {
            arrangement: a.clone(),
            mode: WeightMode::Specialized(weights.clone()),
            q: a.defining_polynomial(),
            ring,
            numerators,
        })
    }

    pub fn universal(a: &Arrangement) -> Self {
        let ring = universal_ring(a);
        let l = a.dim();
        let embed: Vec<usize> = (0..l).collect();
        let cof: Vec<Poly> = cofactors(a).iter().map(|g| g.map_into(&ring, &embed)).collect();
        let numerators = (0..l)
            .map(|j| {
                let mut d = Polynomial::zero(&ring);
                for (i, g) in cof.iter().enumerate() {
                    let c = &a.normal(i)[j];
                    if !c.is_zero() {
                        let ai = Polynomial::var(&ring, l + i);
                        d = d.add_scaled(&(&ai * g), c);
                    }
                }
                d
            })
            .collect();
        CriticalOneForm {
            arrangement: a.clone(),
            mode: WeightMode::Universal,
            q: a.defining_polynomial().map_into(&ring, &embed),
            ring,
            numerators,
        }
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.arrangement
    }

    pub fn mode(&self) -> &WeightMode {
        &self.mode
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    /// `Q` in the form's ring.
    pub fn defining_polynomial(&self) -> &Poly {
        &self.q
    }

    /// `Q d_j` for `j = 1..l`.
    pub fn numerators(&self) -> &[Poly] {
        &self.numerators
    }

    fn embed(&self, p: &Poly) -> Poly {
        match self.mode {
            WeightMode::Specialized(_) => p.clone(),
            WeightMode::Universal => p.map_into(&self.ring, &(0..self.arrangement.dim()).collect::<Vec<_>>()),
        }
    }

    /// `<theta, omega> = sum_j g_j d_j`, computed as `(sum_j g_j Q d_j) / Q`.
    pub fn pair(&self, theta: &Derivation) -> Result<Poly, CriticalError> {
        self.pair_indexed(theta, 0)
    }

    fn pair_indexed(&self, theta: &Derivation, idx: usize) -> Result<Poly, CriticalError> {
        let mut s = Polynomial::zero(&self.ring);
        for (g, d) in theta.coefficients().iter().zip(&self.numerators) {
            s = s + &(&self.embed(g) * d);
        }
        s.exact_divide(&self.q)
            .expect("Q is nonzero")
            .ok_or(CriticalError::NotDivisible(idx))
    }

    pub fn pair_all(&self, thetas: &[Derivation]) -> Result<Vec<Poly>, CriticalError> {
        thetas
            .iter()
            .enumerate()
            .map(|(i, t)| self.pair_indexed(t, i))
            .collect()
    }

    /// Sends a polynomial of the universal ring to `Q[x]` with `a = weights`.
    pub fn specialize_polynomial(&self, p: &Poly, weights: &WeightVector) -> Poly {
        let l = self.arrangement.dim();
        let assignments: Vec<(usize, Rational)> = (0..self.arrangement.len())
            .map(|i| (l + i, weights.get(i).clone()))
            .collect();
        let mut var_map: Vec<usize> = (0..l).collect();
        var_map.extend(std::iter::repeat_n(0, self.arrangement.len()));
        p.specialize(&assignments).map_into(self.arrangement.ring(), &var_map)
    }
}

/// `I' = (Q d_1, ..., Q d_l)`.
pub fn naive_ideal(omega: &CriticalOneForm) -> Ideal {
    Ideal::new(&omega.ring, omega.numerators.clone())
}

/// Ideal of all pairings of `omega` with a generating set of `Der(A)`.
pub fn logarithmic_ideal(omega: &CriticalOneForm, generators: &[Derivation]) -> Result<Ideal, CriticalError> {
    Ok(Ideal::new(&omega.ring, omega.pair_all(generators)?))
}

/// `I_lambda` together with the module it came from.
pub fn logarithmic_ideal_for(a: &Arrangement, weights: &WeightVector) -> Result<(Ideal, GradedDerivationModule), CriticalError> {
    logarithmic_ideal_bounded(a, weights, None)
}

/// As [`logarithmic_ideal_for`] with an explicit derivation degree bound.
pub fn logarithmic_ideal_bounded(
    a: &Arrangement,
    weights: &WeightVector,
    bound: Option<u32>,
) -> Result<(Ideal, GradedDerivationModule), CriticalError> {
    let module = minimal_derivation_generators(a, bound)?;
    let omega = CriticalOneForm::specialized(a, weights)?;
    Ok((logarithmic_ideal(&omega, &module.generating_set())?, module))
}

/// `(I' : Q)`, one linear factor at a time.
pub fn naive_quotient(omega: &CriticalOneForm, budget: Budget) -> Result<Ideal, CriticalError> {
    let mut cur = naive_ideal(omega);
    for f in omega.arrangement.forms() {
        cur = cur.quotient(&omega.embed(&f), budget)?;
    }
    Ok(cur)
}

/// `(I' : Q) = I` as ideals. For specialized weights this needs every
/// `lambda_i` nonzero: a zero weight drops `f_i` from the form and the
/// quotient becomes the ideal of the deletion.
pub fn quotient_identity_check(omega: &CriticalOneForm, generators: &[Derivation], budget: Budget) -> Result<bool, CriticalError> {
    let log = logarithmic_ideal(omega, generators)?;
    let quot = naive_quotient(omega, budget)?;
    Ok(quot.same_ideal(&log, budget)?)
}

/// For irreducible central `A`: `0 in V(I_lambda)` iff `sum lambda_i = 0`.
/// The ideal is homogeneous, so membership of the origin is read off the
/// generators.
pub fn origin_membership_check(a: &Arrangement, weights: &WeightVector) -> Result<bool, CriticalError> {
    if !a.is_central() {
        return Err(CriticalError::NotApplicable("arrangement is not central"));
    }
    if !a.is_irreducible()? {
        return Err(CriticalError::NotApplicable("arrangement is reducible"));
    }
    let (ideal, _) = logarithmic_ideal_for(a, weights)?;
    let origin = vec![Rational::zero(); a.dim()];
    let in_variety = ideal.generators().iter().all(|g| g.evaluate(&origin).is_zero());
    Ok(in_variety == weights.sum().is_zero())
}

/// `I(A1 + A2) = I(A1) + I(A2)` inside the ring of the direct sum.
pub fn reducible_decomposition_check(
    a1: &Arrangement,
    a2: &Arrangement,
    w1: &WeightVector,
    w2: &WeightVector,
    budget: Budget,
) -> Result<bool, CriticalError> {
    let sum = a1.direct_sum(a2)?;
    let (whole, _) = logarithmic_ideal_for(&sum, &w1.concat(w2))?;
    let (i1, _) = logarithmic_ideal_for(a1, w1)?;
    let (i2, _) = logarithmic_ideal_for(a2, w2)?;
    let (l1, l2) = (a1.dim(), a2.dim());
    let ring = sum.ring();
    let m1: Vec<usize> = (0..l1).collect();
    let m2: Vec<usize> = (l1..l1 + l2).collect();
    let mut gens: Vec<Poly> = i1.generators().iter().map(|g| g.map_into(ring, &m1)).collect();
    gens.extend(i2.generators().iter().map(|g| g.map_into(ring, &m2)));
    Ok(whole.same_ideal(&Ideal::new(ring, gens), budget)?)
}

fn strings(ps: &[Poly]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

/// `V(I_lambda)` and its part off the hyperplanes.
#[derive(Debug, Clone, Serialize)]
pub struct CriticalSetReport {
    pub weights: Vec<String>,
    pub generators: Vec<String>,
    pub codimension: Codimension,
    /// Generators of `(I_lambda : Q^inf)`.
    pub saturation: Vec<String>,
    pub saturated_codimension: Codimension,
    /// Length of the saturation when it is zero-dimensional.
    pub point_count: Option<usize>,
}

pub fn critical_set_report(a: &Arrangement, weights: &WeightVector, budget: Budget) -> Result<CriticalSetReport, CriticalError> {
    let ideal = if a.is_central() {
        logarithmic_ideal_for(a, weights)?.0
    } else {
        affine_chart_ideal(a, weights)?
    };
    let codimension = ideal.codimension(budget)?;
    let sat = ideal.saturate_by_factors(&a.forms(), budget)?;
    let saturated_codimension = sat.codimension(budget)?;
    let point_count = match saturated_codimension {
        Codimension::Codim(c) if c == a.dim() => Some(sat.zero_dim_count(budget)?),
        Codimension::Empty => Some(0),
        _ => None,
    };
    Ok(CriticalSetReport {
        weights: weights.entries().iter().map(format_rational).collect(),
        generators: strings(ideal.generators()),
        codimension,
        saturation: strings(sat.generators()),
        saturated_codimension,
        point_count,
    })
}

/// `I_lambda` of an affine arrangement: the ideal of its cone (weight
/// `-sum lambda_i` on the new hyperplane) restricted to the chart `x0 = 1`.
pub fn affine_chart_ideal(a: &Arrangement, weights: &WeightVector) -> Result<Ideal, CriticalError> {
    let (cone, w) = a.cone(weights)?;
    let (ideal, _) = logarithmic_ideal_for(&cone, &w)?;
    let mut var_map = vec![0];
    var_map.extend(0..a.dim());
    let gens = ideal
        .generators()
        .iter()
        .map(|g| g.specialize(&[(0, int(1))]).map_into(a.ring(), &var_map))
        .collect();
    Ok(Ideal::new(a.ring(), gens))
}

/// Number of critical points in the complement of an affine arrangement,
/// with multiplicity: the length of `(I_lambda : Q^inf)` in the chart.
pub fn affine_critical_count(a: &Arrangement, weights: &WeightVector, budget: Budget) -> Result<usize, CriticalError> {
    if a.is_central() {
        return Err(CriticalError::NotApplicable("arrangement is central"));
    }
    let sat = affine_chart_ideal(a, weights)?.saturate_by_factors(&a.forms(), budget)?;
    Ok(sat.zero_dim_count(budget)?)
}

/// Minimal generators of the universal ideal, by `x`-degree, counted by
/// linear algebra on the `a`-linear part.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UniversalGenerators {
    /// `x`-degree of each minimal generator.
    pub degrees: Vec<u32>,
    /// The pairing `Der(A)_d -> I` was injective in every computed degree.
    pub injective: bool,
}

impl UniversalGenerators {
    pub fn count(&self) -> usize {
        self.degrees.len()
    }
}

/// Every element of `I` of `a`-degree one is an `R`-combination of pairings,
/// so the minimal generators are read degreewise from the image of `Der(A)`.
pub fn universal_minimal_generators(a: &Arrangement, module: &GradedDerivationModule) -> Result<UniversalGenerators, CriticalError> {
    let omega = CriticalOneForm::universal(a);
    let l = a.dim();
    let n = a.len();
    let mut degrees = Vec::new();
    let mut injective = true;
    let mut prev: Vec<Poly> = Vec::new();
    for piece in &module.pieces {
        let d = piece.degree;
        let images = omega.pair_all(&piece.basis)?;
        if d == 0 {
            // constant derivations kill every f_i and pair to zero
            injective &= images.iter().all(|p| p.is_zero());
            prev = images;
            continue;
        }
        let xdeg = d - 1;
        let width = n * crate::poly::monomials_of_degree(l, xdeg).len();
        let coords: Vec<Vec<Rational>> = images.iter().map(|p| a_linear_coordinates(p, l, n, xdeg)).collect();
        let r = crate::matrix::rank_of_vectors(width, &coords);
        injective &= r == images.len();
        let mut products = Vec::new();
        for g in &prev {
            for v in 0..l {
                let h = g * &Polynomial::var(omega.ring(), v);
                products.push(a_linear_coordinates(&h, l, n, xdeg));
            }
        }
        let lower = crate::matrix::rank_of_vectors(width, &products);
        degrees.extend(std::iter::repeat_n(xdeg, r - lower));
        prev = images;
    }
    Ok(UniversalGenerators { degrees, injective })
}

/// Coordinates of an `a`-linear polynomial with `x`-part of degree `xdeg`.
fn a_linear_coordinates(p: &Poly, l: usize, n: usize, xdeg: u32) -> Vec<Rational> {
    let monos = crate::poly::monomials_of_degree(l, xdeg);
    let k = monos.len();
    let index: std::collections::HashMap<Monomial, usize> = monos.into_iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut v = vec![Rational::zero(); n * k];
    for (m, c) in p.terms() {
        let e = m.exponents();
        let ai = (l..l + n).find(|&j| e[j] > 0).expect("a-linear") - l;
        let x = Monomial::new(e[..l].to_vec());
        v[ai * k + index[&x]] = c.clone();
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logmod::minimal_derivation_generators;
    use crate::poly::parse_polynomial;

    fn pencil(n: i64) -> Arrangement {
        let mut rows: Vec<Vec<i64>> = vec![vec![1, 0], vec![0, 1]];
        for k in 1..n - 1 {
            rows.push(vec![1, -k]);
        }
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        Arrangement::central(&refs).unwrap()
    }

    #[test]
    fn numerators_clear_denominators() {
        let b2 = Arrangement::central(&[&[1, 0], &[0, 1]]).unwrap();
        let w = CriticalOneForm::specialized(&b2, &WeightVector::from_integers(&[2, 3])).unwrap();
        let r = b2.ring();
        assert_eq!(w.numerators()[0], parse_polynomial(r, "2*x2").unwrap());
        assert_eq!(w.numerators()[1], parse_polynomial(r, "3*x1").unwrap());
        let u = CriticalOneForm::universal(&pencil(3));
        assert!(u.numerators().iter().all(|p| p.is_homogeneous()));
        assert_eq!(u.ring().nvars(), 5);
    }

    #[test]
    fn euler_pairs_to_weight_sum() {
        let a = pencil(4);
        let w = WeightVector::from_integers(&[1, 2, 5, -3]);
        let omega = CriticalOneForm::specialized(&a, &w).unwrap();
        let e = omega.pair(&Derivation::euler(a.ring())).unwrap();
        assert_eq!(e, Polynomial::constant(a.ring(), w.sum()));
    }

    #[test]
    fn pencil_ideal_degrees() {
        let a = pencil(5);
        let w = WeightVector::from_integers(&[1, 2, 3, 4, -10]);
        let (ideal, module) = logarithmic_ideal_for(&a, &w).unwrap();
        assert!(module.freeness.is_free());
        let mut degs: Vec<u32> = ideal.generators().iter().map(|g| g.degree().unwrap()).collect();
        degs.sort_unstable();
        assert_eq!(degs, vec![3]);
        assert_eq!(ideal.codimension(Budget::default()).unwrap(), Codimension::Codim(1));
    }

    #[test]
    fn quotient_identity_small() {
        let a = pencil(3);
        let module = minimal_derivation_generators(&a, None).unwrap();
        let gens = module.generating_set();
        let omega = CriticalOneForm::specialized(&a, &WeightVector::from_integers(&[1, 2, 5])).unwrap();
        assert!(quotient_identity_check(&omega, &gens, Budget::default()).unwrap());
        let omega = CriticalOneForm::universal(&a);
        assert!(quotient_identity_check(&omega, &gens, Budget::default()).unwrap());
    }

    #[test]
    fn origin_membership() {
        let a = pencil(3);
        assert!(origin_membership_check(&a, &WeightVector::from_integers(&[1, 1, -2])).unwrap());
        assert!(origin_membership_check(&a, &WeightVector::from_integers(&[1, 1, 1])).unwrap());
        let b2 = Arrangement::central(&[&[1, 0], &[0, 1]]).unwrap();
        assert!(matches!(
            origin_membership_check(&b2, &WeightVector::from_integers(&[1, 1])),
            Err(CriticalError::NotApplicable(_))
        ));
    }

    #[test]
    fn decomposition() {
        let x = Arrangement::central(&[&[1]]).unwrap();
        let one = WeightVector::from_integers(&[1]);
        assert!(reducible_decomposition_check(&x, &x, &one, &one, Budget::default()).unwrap());
        let p = pencil(3);
        assert!(reducible_decomposition_check(&p, &x, &WeightVector::from_integers(&[1, 1, -2]), &WeightVector::from_integers(&[5]), Budget::default()).unwrap());
    }

    #[test]
    fn universal_count_matches_derivations() {
        let a = pencil(4);
        let module = minimal_derivation_generators(&a, None).unwrap();
        let u = universal_minimal_generators(&a, &module).unwrap();
        assert!(u.injective);
        assert_eq!(u.degrees, vec![0, 2]);
    }

    #[test]
    fn generic_lines_have_one_critical_point() {
        let a = Arrangement::affine(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, -1]]).unwrap();
        let n = affine_critical_count(&a, &WeightVector::from_integers(&[2, 3, 7]), Budget::default()).unwrap();
        assert_eq!(n, 1);
    }
}
