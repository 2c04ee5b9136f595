use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{GroebnerError, PolyError};
use crate::poly::{Monomial, Polynomial, Ring, RingRef};
use crate::scalar::Field;

use super::buchberger::{buchberger, Budget, GroebnerBasis};

/// Codimension of the zero set of an ideal in affine space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Codimension {
    /// The ideal is the unit ideal: the variety is empty.
    Empty,
    Codim(usize),
}

impl Codimension {
    pub fn value(self) -> Option<usize> {
        match self {
            Codimension::Empty => None,
            Codimension::Codim(c) => Some(c),
        }
    }

    /// Empty counts as larger than any finite codimension.
    pub fn at_most(self, p: usize) -> bool {
        matches!(self, Codimension::Codim(c) if c <= p)
    }
}

impl fmt::Display for Codimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Codimension::Empty => write!(f, "empty"),
            Codimension::Codim(c) => write!(f, "{c}"),
        }
    }
}

/// Finite generating set of an ideal plus a lazily computed Gröbner basis.
pub struct PolyIdeal<F: Field> {
    ring: RingRef,
    generators: Vec<Polynomial<F>>,
    gb: OnceLock<GroebnerBasis<F>>,
}

impl<F: Field> Clone for PolyIdeal<F> {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(g) = self.gb.get() {
            let _ = gb.set(g.clone());
        }
        PolyIdeal {
            ring: self.ring.clone(),
            generators: self.generators.clone(),
            gb,
        }
    }
}

impl<F: Field> fmt::Debug for PolyIdeal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.generators.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", g.join(", "))
    }
}

impl<F: Field> PolyIdeal<F> {
    /// Zero generators are dropped and duplicates (up to scalars) removed.
    pub fn new(ring: &RingRef, generators: Vec<Polynomial<F>>) -> Self {
        let mut out: Vec<Polynomial<F>> = Vec::new();
        for g in generators {
            assert!(Ring::same(g.ring(), ring), "generator outside the ideal's ring");
            if g.is_zero() {
                continue;
            }
            let g = g.normalized();
            if !out.contains(&g) {
                out.push(g);
            }
        }
        PolyIdeal {
            ring: ring.clone(),
            generators: out,
            gb: OnceLock::new(),
        }
    }

    pub fn from_basis(basis: GroebnerBasis<F>) -> Self {
        let ideal = Self::new(basis.ring(), basis.elements().to_vec());
        let _ = ideal.gb.set(basis);
        ideal
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.generators
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn groebner(&self, budget: Budget) -> Result<&GroebnerBasis<F>, GroebnerError> {
        if let Some(g) = self.gb.get() {
            return Ok(g);
        }
        let g = buchberger(&self.ring, &self.generators, budget)?;
        let _ = self.gb.set(g);
        Ok(self.gb.get().expect("just set"))
    }

    pub fn cached_groebner(&self) -> Option<&GroebnerBasis<F>> {
        self.gb.get()
    }

    pub fn contains(&self, f: &Polynomial<F>, budget: Budget) -> Result<bool, GroebnerError> {
        if !Ring::same(f.ring(), &self.ring) {
            return Err(PolyError::RingMismatch.into());
        }
        Ok(self.groebner(budget)?.contains(f))
    }

    pub fn is_unit_ideal(&self, budget: Budget) -> Result<bool, GroebnerError> {
        Ok(self.groebner(budget)?.is_unit_ideal())
    }

    /// Every generator of `self` lies in `other`.
    pub fn is_contained_in(&self, other: &Self, budget: Budget) -> Result<bool, GroebnerError> {
        let gb = other.groebner(budget)?;
        Ok(self.generators.iter().all(|g| gb.contains(g)))
    }

    /// Equality as ideals by mutual generator membership.
    pub fn same_ideal(&self, other: &Self, budget: Budget) -> Result<bool, GroebnerError> {
        Ok(self.is_contained_in(other, budget)? && other.is_contained_in(self, budget)?)
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut g = self.generators.clone();
        g.extend(other.generators.iter().cloned());
        Self::new(&self.ring, g)
    }

    /// Krull codimension of `V(I)` from the leading-monomial ideal: number of
    /// variables minus the largest set of variables containing the support of
    /// no leading monomial.
    pub fn codimension(&self, budget: Budget) -> Result<Codimension, GroebnerError> {
        let gb = self.groebner(budget)?;
        Ok(codimension_of_leading_monomials(self.ring.nvars(), &gb.leading_monomials()))
    }

    /// `(I : f) = (I ∩ (f)) / f`, intersecting via a tag variable `t` and
    /// eliminating it from `t I + (1 - t) (f)`.
    pub fn quotient(&self, f: &Polynomial<F>, budget: Budget) -> Result<Self, GroebnerError> {
        if !Ring::same(f.ring(), &self.ring) {
            return Err(PolyError::RingMismatch.into());
        }
        if f.is_zero() {
            return Err(PolyError::DivisionByZero.into());
        }
        if f.is_constant() {
            return Ok(self.clone());
        }
        let tagged = self.ring.with_leading_block(&["_tag"]);
        let n = self.ring.nvars();
        let shift: Vec<usize> = (1..=n).collect();
        let t = Polynomial::var(&tagged, 0);
        let one_minus_t = Polynomial::one(&tagged).add_scaled(&t, &-F::one());
        let mut gens: Vec<Polynomial<F>> = self
            .generators
            .iter()
            .map(|g| &g.map_into(&tagged, &shift) * &t)
            .collect();
        gens.push(&f.map_into(&tagged, &shift) * &one_minus_t);
        let gb = buchberger(&tagged, &gens, budget)?;
        let mut out = Vec::new();
        for g in gb.elements() {
            if g.degree_in(0) > 0 {
                continue;
            }
            let h = drop_leading_variable(g, &self.ring);
            let q = h
                .exact_divide(f)?
                .expect("elements of I ∩ (f) are divisible by f");
            out.push(q);
        }
        Ok(Self::new(&self.ring, out))
    }

    /// `(I : f^∞)` by iterated quotients until the ideal stops growing.
    pub fn saturate(&self, f: &Polynomial<F>, budget: Budget) -> Result<Self, GroebnerError> {
        let mut cur = self.clone();
        loop {
            let next = cur.quotient(f, budget)?;
            if next.is_contained_in(&cur, budget)? {
                return Ok(cur);
            }
            cur = next;
        }
    }

    /// Saturation by a product, one factor at a time.
    pub fn saturate_by_factors(&self, factors: &[Polynomial<F>], budget: Budget) -> Result<Self, GroebnerError> {
        let mut cur = self.clone();
        for f in factors {
            cur = cur.saturate(f, budget)?;
        }
        Ok(cur)
    }

    /// Rabinowitsch: `f ∈ √I` iff `1 ∈ I + (1 - y f)`.
    pub fn radical_contains(&self, f: &Polynomial<F>, budget: Budget) -> Result<bool, GroebnerError> {
        if !Ring::same(f.ring(), &self.ring) {
            return Err(PolyError::RingMismatch.into());
        }
        if f.is_zero() {
            return Ok(true);
        }
        let ext = self.ring.with_leading_block(&["_rab"]);
        let n = self.ring.nvars();
        let shift: Vec<usize> = (1..=n).collect();
        let y = Polynomial::var(&ext, 0);
        let mut gens: Vec<Polynomial<F>> = self.generators.iter().map(|g| g.map_into(&ext, &shift)).collect();
        let yf = &y * &f.map_into(&ext, &shift);
        gens.push(Polynomial::one(&ext).add_scaled(&yf, &-F::one()));
        Ok(buchberger(&ext, &gens, budget)?.is_unit_ideal())
    }

    /// Dimension of `R/I` as a vector space (points counted with
    /// multiplicity) for zero-dimensional `I`.
    pub fn zero_dim_count(&self, budget: Budget) -> Result<usize, GroebnerError> {
        let gb = self.groebner(budget)?;
        let lms: Vec<&Monomial> = gb.leading_monomials();
        let n = self.ring.nvars();
        if gb.is_unit_ideal() {
            return Ok(0);
        }
        for v in 0..n {
            let pure = lms.iter().any(|m| m.exponent(v) > 0 && m.support().all(|i| i == v));
            if !pure {
                return Err(GroebnerError::NotZeroDimensional);
            }
        }
        Ok(standard_monomials(n, &lms).len())
    }
}

/// Staircase of a zero-dimensional leading-monomial ideal.
pub fn standard_monomials(n: usize, lms: &[&Monomial]) -> Vec<Monomial> {
    let mut seen: HashSet<Monomial> = HashSet::new();
    let mut queue = VecDeque::new();
    let one = Monomial::one(n);
    let in_ideal = |m: &Monomial| lms.iter().any(|l| l.divides(m));
    if in_ideal(&one) {
        return Vec::new();
    }
    seen.insert(one.clone());
    queue.push_back(one);
    let mut out = Vec::new();
    while let Some(m) = queue.pop_front() {
        for v in 0..n {
            let next = m.with_exponent(v, m.exponent(v) + 1);
            if !seen.contains(&next) && !in_ideal(&next) {
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
        out.push(m);
    }
    out
}

pub fn codimension_of_leading_monomials(n: usize, lms: &[&Monomial]) -> Codimension {
    if lms.iter().any(|m| m.is_one()) {
        return Codimension::Empty;
    }
    assert!(n < 63, "too many variables for the independent-set search");
    let supports: Vec<u64> = lms
        .iter()
        .map(|m| m.support().fold(0u64, |acc, i| acc | (1 << i)))
        .collect();
    let mut best = 0usize;
    for mask in 0u64..(1u64 << n) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        if supports.iter().all(|&s| s & !mask != 0) {
            best = size;
        }
    }
    Codimension::Codim(n - best)
}

/// Drop variable 0 of `g` (which must not occur) landing in `target`.
fn drop_leading_variable<F: Field>(g: &Polynomial<F>, target: &RingRef) -> Polynomial<F> {
    let terms = g
        .terms()
        .iter()
        .map(|(m, c)| (Monomial::new(m.exponents()[1..].to_vec()), c.clone()))
        .collect();
    Polynomial::from_terms(target, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;
    use crate::scalar::Rational;

    fn ideal(r: &RingRef, gens: &[&str]) -> PolyIdeal<Rational> {
        PolyIdeal::new(r, gens.iter().map(|s| parse_polynomial(r, s).unwrap()).collect())
    }

    fn p(r: &RingRef, s: &str) -> Polynomial<Rational> {
        parse_polynomial(r, s).unwrap()
    }

    #[test]
    fn codimension_examples() {
        let r = Ring::grevlex(&["x", "y"]);
        let b = Budget::default();
        assert_eq!(ideal(&r, &["x*y"]).codimension(b).unwrap(), Codimension::Codim(1));
        assert_eq!(ideal(&r, &["x", "y"]).codimension(b).unwrap(), Codimension::Codim(2));
        assert_eq!(ideal(&r, &["x", "x - 1"]).codimension(b).unwrap(), Codimension::Empty);
        assert_eq!(ideal(&r, &[]).codimension(b).unwrap(), Codimension::Codim(0));
    }

    #[test]
    fn quotients() {
        let r = Ring::grevlex(&["x", "y"]);
        let b = Budget::default();
        let q = ideal(&r, &["x^2"]).quotient(&p(&r, "x"), b).unwrap();
        assert!(q.same_ideal(&ideal(&r, &["x"]), b).unwrap());
        let q = ideal(&r, &["x*y"]).quotient(&p(&r, "y"), b).unwrap();
        assert!(q.same_ideal(&ideal(&r, &["x"]), b).unwrap());
    }

    #[test]
    fn saturation() {
        let r = Ring::grevlex(&["x", "y"]);
        let b = Budget::default();
        let s = ideal(&r, &["x^2*y"]).saturate(&p(&r, "y"), b).unwrap();
        assert!(s.same_ideal(&ideal(&r, &["x^2"]), b).unwrap());
    }

    #[test]
    fn radical_membership() {
        let r = Ring::grevlex(&["x", "y"]);
        let b = Budget::default();
        let i = ideal(&r, &["x^2"]);
        assert!(i.radical_contains(&p(&r, "x"), b).unwrap());
        assert!(!i.radical_contains(&p(&r, "y"), b).unwrap());
    }

    #[test]
    fn point_counts() {
        let r = Ring::grevlex(&["x", "y"]);
        let b = Budget::default();
        assert_eq!(ideal(&r, &["x", "y"]).zero_dim_count(b).unwrap(), 1);
        assert_eq!(ideal(&r, &["x^2 - 1", "y^2 - 1"]).zero_dim_count(b).unwrap(), 4);
        assert_eq!(
            ideal(&r, &["x*y"]).zero_dim_count(b).unwrap_err(),
            GroebnerError::NotZeroDimensional
        );
    }

    #[test]
    fn two_conics_meet_in_four_points() {
        // resultant of x^2 - y and y^2 - x in y: x^4 - x, degree 4
        let r = Ring::grevlex(&["x", "y"]);
        let i = ideal(&r, &["x^2 - y", "y^2 - x"]);
        assert_eq!(i.zero_dim_count(Budget::default()).unwrap(), 4);
    }
}
