use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::PolyError;
use crate::scalar::Field;

use super::{Monomial, Ring, RingRef};

/// Sparse multivariate polynomial.
///
/// Terms are kept sorted by the ring's term order, largest first, with no
/// zero coefficients; two polynomials in the same ring are equal iff their
/// term lists are equal.
#[derive(Clone)]
pub struct Polynomial<F: Field> {
    ring: RingRef,
    terms: Vec<(Monomial, F)>,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        Ring::same(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl<F: Field> Polynomial<F> {
    pub fn zero(ring: &RingRef) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &RingRef, c: F) -> Self {
        Self::from_terms(ring, vec![(Monomial::one(ring.nvars()), c)])
    }

    pub fn one(ring: &RingRef) -> Self {
        Self::constant(ring, F::one())
    }

    pub fn var(ring: &RingRef, i: usize) -> Self {
        Self::from_terms(ring, vec![(Monomial::var(ring.nvars(), i), F::one())])
    }

    pub fn monomial(ring: &RingRef, m: Monomial, c: F) -> Self {
        Self::from_terms(ring, vec![(m, c)])
    }

    /// Linear form `sum coeffs[i] * x_i + constant`.
    pub fn linear(ring: &RingRef, coeffs: &[F], constant: F) -> Self {
        let n = ring.nvars();
        let mut terms: Vec<(Monomial, F)> = coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (Monomial::var(n, i), c.clone()))
            .collect();
        terms.push((Monomial::one(n), constant));
        Self::from_terms(ring, terms)
    }

    /// Builds a canonical polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms(ring: &RingRef, terms: Vec<(Monomial, F)>) -> Self {
        let mut acc: HashMap<Monomial, F> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), ring.nvars());
            if c.is_zero() {
                continue;
            }
            match acc.get_mut(&m) {
                Some(v) => *v = v.clone() + c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<(Monomial, F)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| ring.compare(&b.0, &a.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Caller guarantees the terms are sorted, distinct and nonzero.
    pub(crate) fn from_sorted_terms(ring: &RingRef, terms: Vec<(Monomial, F)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.compare(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn terms(&self) -> &[(Monomial, F)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, F)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn leading_term(&self) -> Option<&(Monomial, F)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coefficient(&self) -> Option<&F> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn coefficient(&self, m: &Monomial) -> F {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(F::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exponent(var)).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => {
                let d = m0.degree();
                self.terms.iter().all(|(m, _)| m.degree() == d)
            }
        }
    }

    /// Homogeneous with respect to the variables in `range` only.
    pub fn is_homogeneous_in(&self, range: std::ops::Range<usize>) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => {
                let d = m0.partial_degree(range.clone());
                self.terms.iter().all(|(m, _)| m.partial_degree(range.clone()) == d)
            }
        }
    }

    pub fn homogeneous_component(&self, d: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree() == d)
            .cloned()
            .collect();
        Self::from_sorted_terms(&self.ring, terms)
    }

    fn check_ring(&self, other: &Self) -> Result<(), PolyError> {
        if Ring::same(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(PolyError::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        Ok(self.add_scaled(other, &F::one()))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        Ok(self.add_scaled(other, &-F::one()))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    /// `self + c * other` by merging the two sorted term lists.
    pub fn add_scaled(&self, other: &Self, c: &F) -> Self {
        self.add_scaled_shifted(other, c, None)
    }

    /// `self + c * m * other`.
    pub fn add_scaled_shifted(&self, other: &Self, c: &F, m: Option<&Monomial>) -> Self {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut it = other.terms.iter().map(|(om, oc)| {
            let mm = match m {
                Some(s) => om.mul(s),
                None => om.clone(),
            };
            (mm, c.clone() * oc.clone())
        });
        let mut next = it.next();
        while let Some((om, oc)) = next.take() {
            while i < self.terms.len() && ring.compare(&self.terms[i].0, &om) == Ordering::Greater {
                out.push(self.terms[i].clone());
                i += 1;
            }
            if i < self.terms.len() && self.terms[i].0 == om {
                let s = self.terms[i].1.clone() + oc;
                if !s.is_zero() {
                    out.push((om, s));
                }
                i += 1;
            } else {
                out.push((om, oc));
            }
            next = it.next();
        }
        out.extend(self.terms[i..].iter().cloned());
        Self::from_sorted_terms(ring, out)
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ring);
        }
        let mut acc: HashMap<Monomial, F> = HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca.clone() * cb.clone();
                match acc.get_mut(&m) {
                    Some(v) => *v = v.clone() + c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let mut terms: Vec<(Monomial, F)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let ring = &self.ring;
        terms.sort_by(|a, b| ring.compare(&b.0, &a.0));
        Self::from_sorted_terms(ring, terms)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, a)| (m.clone(), a.clone() * c.clone()))
            .collect();
        Self::from_sorted_terms(&self.ring, terms)
    }

    /// Multiplication by a monomial preserves the term order.
    pub fn mul_monomial(&self, m: &Monomial, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|(t, a)| (t.mul(m), a.clone() * c.clone()))
            .collect();
        Self::from_sorted_terms(&self.ring, terms)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..e {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// Scale so the leading coefficient is 1.
    pub fn monic(&self) -> Self {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.inv()),
        }
    }

    /// Scale to a primitive integral polynomial with positive leading
    /// coefficient when the field supports it, otherwise make monic.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        if !F::EXACT {
            return self.monic();
        }
        let coeffs: Vec<&F> = self.terms.iter().map(|(_, c)| c).collect();
        let p = match F::integral_scale(&coeffs) {
            Some(s) => self.scale(&s),
            None => self.clone(),
        };
        if p.terms[0].1.to_f64() < 0.0 {
            -p
        } else {
            p
        }
    }

    /// Division by a single divisor: returns `(quotient, remainder)` with
    /// `self = q * divisor + r` and no term of `r` divisible by `lm(divisor)`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), PolyError> {
        self.check_ring(divisor)?;
        let Some((lm, lc)) = divisor.leading_term().cloned() else {
            return Err(PolyError::DivisionByZero);
        };
        let lc_inv = lc.inv();
        let mut q = Vec::new();
        let mut r = Vec::new();
        let mut p = self.clone();
        while let Some((m, c)) = p.terms.first().cloned() {
            if lm.divides(&m) {
                let t = lm.quotient_of(&m);
                let coef = c * lc_inv.clone();
                p = p.add_scaled_shifted(divisor, &-coef.clone(), Some(&t));
                q.push((t, coef));
            } else {
                r.push((m, c));
                p.terms.remove(0);
            }
        }
        Ok((
            Self::from_sorted_terms(&self.ring, q),
            Self::from_sorted_terms(&self.ring, r),
        ))
    }

    /// Exact division: `Ok(Some(r))` with `self = divisor * r`, `Ok(None)`
    /// when `divisor` does not divide `self`.
    pub fn exact_divide(&self, divisor: &Self) -> Result<Option<Self>, PolyError> {
        let (q, r) = self.div_rem(divisor)?;
        Ok(if r.is_zero() { Some(q) } else { None })
    }

    pub fn partial_derivative(&self, var: usize) -> Result<Self, PolyError> {
        if var >= self.nvars() {
            return Err(PolyError::VariableOutOfRange {
                index: var,
                nvars: self.nvars(),
            });
        }
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exponent(var) > 0)
            .map(|(m, c)| {
                let e = m.exponent(var);
                (m.with_exponent(var, e - 1), c.clone() * F::from_i64(e as i64))
            })
            .collect();
        Ok(Self::from_terms(&self.ring, terms))
    }

    pub fn evaluate(&self, point: &[F]) -> F {
        assert_eq!(point.len(), self.nvars());
        let mut total = F::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    v = v * point[i].clone();
                }
            }
            total = total + v;
        }
        total
    }

    /// Replace `x_var` by `value` (a polynomial in the same ring).
    pub fn substitute(&self, var: usize, value: &Self) -> Self {
        let maxe = self.degree_in(var);
        let mut powers = vec![Self::one(&self.ring)];
        for k in 1..=maxe as usize {
            let next = powers[k - 1].mul_unchecked(value);
            powers.push(next);
        }
        let mut buckets: Vec<Vec<(Monomial, F)>> = vec![Vec::new(); maxe as usize + 1];
        for (m, c) in &self.terms {
            let e = m.exponent(var) as usize;
            buckets[e].push((m.with_exponent(var, 0), c.clone()));
        }
        let mut out = Self::zero(&self.ring);
        for (e, terms) in buckets.into_iter().enumerate() {
            if terms.is_empty() {
                continue;
            }
            let coeff = Self::from_terms(&self.ring, terms);
            out = out.add_scaled(&coeff.mul_unchecked(&powers[e]), &F::one());
        }
        out
    }

    /// Evaluate selected variables at constants, keeping the ring.
    pub fn specialize(&self, assignments: &[(usize, F)]) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut exps = m.exponents().to_vec();
            let mut v = c.clone();
            for (var, val) in assignments {
                for _ in 0..exps[*var] {
                    v = v * val.clone();
                }
                exps[*var] = 0;
            }
            terms.push((Monomial::new(exps), v));
        }
        Self::from_terms(&self.ring, terms)
    }

    /// Move into `target`, sending variable `i` to `var_map[i]`.
    pub fn map_into(&self, target: &RingRef, var_map: &[usize]) -> Self {
        assert_eq!(var_map.len(), self.nvars());
        let n = target.nvars();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u32; n];
                for (i, &x) in m.exponents().iter().enumerate() {
                    e[var_map[i]] += x;
                }
                (Monomial::new(e), c.clone())
            })
            .collect();
        Self::from_terms(target, terms)
    }

    /// Re-sort under another ring with the same variables.
    pub fn reorder(&self, target: &RingRef) -> Self {
        assert_eq!(target.nvars(), self.nvars());
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| target.compare(&b.0, &a.0));
        Self::from_sorted_terms(target, terms)
    }

    pub fn map_coefficients<G: Field>(&self, target: &RingRef, f: impl Fn(&F) -> G) -> Polynomial<G> {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), f(c))).collect();
        Polynomial::from_terms(target, terms)
    }

    /// Variables that occur.
    pub fn variables(&self) -> Vec<usize> {
        let mut seen = vec![false; self.nvars()];
        for (m, _) in &self.terms {
            for i in m.support() {
                seen[i] = true;
            }
        }
        (0..self.nvars()).filter(|&i| seen[i]).collect()
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono: Vec<String> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        self.ring.name(i).to_string()
                    } else {
                        format!("{}^{}", self.ring.name(i), e)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<F: Field> Neg for Polynomial<F> {
    type Output = Self;
    fn neg(self) -> Self {
        let terms = self.terms.into_iter().map(|(m, c)| (m, -c)).collect();
        Polynomial {
            ring: self.ring,
            terms,
        }
    }
}

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        -(self.clone())
    }
}

// Operator forms panic on ring mismatch; use `try_*` to handle it.
macro_rules! binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl<F: Field> $trait<&Polynomial<F>> for &Polynomial<F> {
            type Output = Polynomial<F>;
            fn $method(self, rhs: &Polynomial<F>) -> Polynomial<F> {
                self.$try(rhs).expect("polynomial ring mismatch")
            }
        }
        impl<F: Field> $trait<Polynomial<F>> for Polynomial<F> {
            type Output = Polynomial<F>;
            fn $method(self, rhs: Polynomial<F>) -> Polynomial<F> {
                (&self).$try(&rhs).expect("polynomial ring mismatch")
            }
        }
        impl<F: Field> $trait<&Polynomial<F>> for Polynomial<F> {
            type Output = Polynomial<F>;
            fn $method(self, rhs: &Polynomial<F>) -> Polynomial<F> {
                (&self).$try(rhs).expect("polynomial ring mismatch")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Ring;
    use crate::scalar::{int, Rational};

    type P = Polynomial<Rational>;

    fn xy() -> (RingRef, P, P) {
        let r = Ring::grevlex(&["x", "y"]);
        let x = P::var(&r, 0);
        let y = P::var(&r, 1);
        (r, x, y)
    }

    #[test]
    fn add_cancels() {
        let (_, x, y) = xy();
        let s = (&x + &y) + (&x - &y);
        assert_eq!(s, x.scale(&int(2)));
    }

    #[test]
    fn difference_of_squares() {
        let (_, x, y) = xy();
        let p = (&x + &y) * (&x - &y);
        assert_eq!(p.to_string(), "x^2 - y^2");
    }

    #[test]
    fn pencil3_defining_polynomial() {
        let (_, x, y) = xy();
        let q = &(&x * &y) * &(&x - &y);
        assert_eq!(q.to_string(), "x^2*y - x*y^2");
    }

    #[test]
    fn exact_division() {
        let (r, x, y) = xy();
        let p = &(&x * &x) - &(&y * &y);
        assert_eq!(p.exact_divide(&(&x - &y)).unwrap().unwrap(), &x + &y);
        let q = &(&x * &x) + &P::one(&r);
        assert_eq!(q.exact_divide(&x).unwrap(), None);
        assert_eq!(q.exact_divide(&P::zero(&r)), Err(PolyError::DivisionByZero));
    }

    #[test]
    fn derivative() {
        let (r, x, _) = xy();
        let c = P::constant(&r, int(7));
        assert_eq!(x.pow(3).partial_derivative(0).unwrap(), x.pow(2).scale(&int(3)));
        assert!(c.partial_derivative(0).unwrap().is_zero());
        assert!(x.partial_derivative(2).is_err());
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let (_, x, _) = xy();
        let other = Ring::grevlex(&["u", "v"]);
        let u = P::var(&other, 0);
        assert_eq!(x.try_add(&u), Err(PolyError::RingMismatch));
        assert_eq!(x.try_mul(&u), Err(PolyError::RingMismatch));
    }

    #[test]
    fn substitute_linear() {
        let (_, x, y) = xy();
        // x^2 with x := x - y
        let p = x.pow(2).substitute(0, &(&x - &y));
        assert_eq!(p, (&x - &y).pow(2));
    }
}
