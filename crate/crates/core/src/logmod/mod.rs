//! Logarithmic derivations and logarithmic forms, degree by degree.
//!
//! Divisibility `f_i | g` is tested by restricting `g` to the hyperplane:
//! the variable with the largest coefficient in `f_i` (lowest index on ties)
//! is eliminated, and `g` is divisible iff the restriction vanishes.

mod derivation;
mod forms;

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::arrangement::{elimination_variable, Arrangement};
use crate::poly::{monomials_of_degree, Monomial, Polynomial};
use crate::scalar::Rational;
use crate::Poly;

pub use derivation::{
    derivations_in_degree, free_check, hilbert_function_if_free, minimal_derivation_generators, saito_free_check,
    terao_factorization, Derivation, DerivationPiece, Exponents, Freeness, GradedDerivationModule,
};
pub use forms::{
    log_complex_cohomology, log_forms_in_degree, omega_wedge, self_duality_check, wedge_forms, Form, GradedLogForms,
    LogCohomology, SelfDuality,
};

/// `<Euler, omega_lambda> = sum lambda_i`.
pub fn euler_pairing(weights: &crate::arrangement::WeightVector) -> Rational {
    weights.sum()
}

/// Monomials of one degree with their positions.
pub(crate) struct MonomialSpace {
    pub monos: Vec<Monomial>,
    pub index: HashMap<Monomial, usize>,
}

impl MonomialSpace {
    pub fn new(nvars: usize, d: u32) -> Self {
        let monos = monomials_of_degree(nvars, d);
        let index = monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        MonomialSpace { monos, index }
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    /// Coordinates of a homogeneous polynomial of this degree.
    pub fn coordinates(&self, p: &Poly) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.len()];
        for (m, c) in p.terms() {
            v[self.index[m]] = c.clone();
        }
        v
    }

    pub fn polynomial(&self, ring: &crate::poly::RingRef, coords: &[Rational]) -> Poly {
        Polynomial::from_terms(
            ring,
            self.monos
                .iter()
                .zip(coords)
                .filter(|(_, c)| !c.is_zero())
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        )
    }
}

/// Restriction to each hyperplane of a central arrangement.
pub(crate) struct Restrictions {
    vars: Vec<usize>,
    subs: Vec<Poly>,
}

impl Restrictions {
    pub fn new(a: &Arrangement) -> Self {
        let mut vars = Vec::new();
        let mut subs = Vec::new();
        for i in 0..a.len() {
            let c = a.normal(i);
            let k = elimination_variable(c);
            // x_k = -(1/c_k) sum_{j != k} c_j x_j
            let mut coeffs: Vec<Rational> = c.iter().map(|v| -(v / &c[k])).collect();
            coeffs[k] = Rational::zero();
            vars.push(k);
            subs.push(Polynomial::linear(a.ring(), &coeffs, Rational::zero()));
        }
        Restrictions { vars, subs }
    }

    #[cfg(test)]
    pub fn restrict(&self, i: usize, p: &Poly) -> Poly {
        p.substitute(self.vars[i], &self.subs[i])
    }

    /// Restrictions of every monomial in `space` to hyperplane `i`.
    pub fn restrict_monomials(&self, i: usize, space: &MonomialSpace) -> Vec<Poly> {
        let k = self.vars[i];
        let ring = self.subs[i].ring().clone();
        let mut powers: Vec<Poly> = vec![Polynomial::one(&ring)];
        space
            .monos
            .iter()
            .map(|m| {
                let e = m.exponent(k) as usize;
                while powers.len() <= e {
                    let next = &powers[powers.len() - 1] * &self.subs[i];
                    powers.push(next);
                }
                powers[e].mul_monomial(&m.with_exponent(k, 0), &Rational::one())
            })
            .collect()
    }
}

/// Sparse linear equations assembled by `(tag, monomial)` row keys.
pub(crate) struct EquationBuilder {
    rows: HashMap<(usize, Monomial), usize>,
    entries: Vec<(usize, usize, Rational)>,
    cols: usize,
}

impl EquationBuilder {
    pub fn new(cols: usize) -> Self {
        EquationBuilder {
            rows: HashMap::new(),
            entries: Vec::new(),
            cols,
        }
    }

    /// Adds `scale * p` to column `col`, one equation per monomial of `p`.
    pub fn add(&mut self, tag: usize, col: usize, p: &Poly, scale: &Rational) {
        for (m, c) in p.terms() {
            let n = self.rows.len();
            let r = *self.rows.entry((tag, m.clone())).or_insert(n);
            self.entries.push((r, col, c * scale));
        }
    }

    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let nrows = self.rows.len();
        if nrows == 0 {
            return (0..self.cols)
                .map(|j| {
                    let mut v = vec![Rational::zero(); self.cols];
                    v[j] = Rational::one();
                    v
                })
                .collect();
        }
        let mut m = crate::RationalMatrix::zeros(nrows, self.cols);
        for (r, c, v) in &self.entries {
            let cur = m.get(*r, *c).clone();
            m.set(*r, *c, cur + v);
        }
        m.nullspace().into_iter().map(primitive).collect()
    }
}

/// Scales a rational vector to coprime integers with positive leading entry.
pub(crate) fn primitive(v: Vec<Rational>) -> Vec<Rational> {
    use crate::scalar::Field;
    let refs: Vec<&Rational> = v.iter().collect();
    let mut v = match Rational::integral_scale(&refs) {
        Some(s) => v.into_iter().map(|x| x * &s).collect(),
        None => v,
    };
    if let Some(first) = v.iter().find(|x| !x.is_zero()) {
        if first < &Rational::zero() {
            v = v.into_iter().map(|x| -x).collect();
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_restrictions_agree() {
        let a = Arrangement::central(&[&[1, 0, 0], &[0, 1, 0], &[1, 2, -3]]).unwrap();
        let r = Restrictions::new(&a);
        let space = MonomialSpace::new(3, 2);
        for i in 0..a.len() {
            let fast = r.restrict_monomials(i, &space);
            for (m, got) in space.monos.iter().zip(&fast) {
                let p = Polynomial::from_terms(a.ring(), vec![(m.clone(), Rational::from_integer(1.into()))]);
                assert_eq!(&r.restrict(i, &p), got);
            }
        }
    }
}
