use std::fmt;

use itertools::Itertools;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arrangement::Arrangement;
use crate::error::{ArrangementError, LogModuleError};
use crate::matrix::Matrix;
use crate::os::poincare_and_euler;
use crate::poly::{binomial, Polynomial, RingRef};
use crate::scalar::{format_rational, Rational};
use crate::Poly;

use super::{EquationBuilder, MonomialSpace, Restrictions};

/// A polynomial vector field `sum_j g_j d/dx_j`.
#[derive(Clone, PartialEq)]
pub struct Derivation {
    coefficients: Vec<Poly>,
}

impl Derivation {
    pub fn new(coefficients: Vec<Poly>) -> Self {
        assert!(!coefficients.is_empty(), "derivations need at least one coefficient");
        Derivation { coefficients }
    }

    /// `sum_j x_j d/dx_j`.
    pub fn euler(ring: &RingRef) -> Self {
        Derivation::new((0..ring.nvars()).map(|j| Polynomial::var(ring, j)).collect())
    }

    pub fn ring(&self) -> &RingRef {
        self.coefficients[0].ring()
    }

    pub fn coefficients(&self) -> &[Poly] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(|g| g.is_zero())
    }

    /// Common degree of the coefficients, `None` for zero or inhomogeneous.
    pub fn coefficient_degree(&self) -> Option<u32> {
        let mut deg = None;
        for g in &self.coefficients {
            if g.is_zero() {
                continue;
            }
            if !g.is_homogeneous() {
                return None;
            }
            let d = g.degree();
            if deg.is_some() && deg != d {
                return None;
            }
            deg = d;
        }
        deg
    }

    /// Exponent: coefficient degree minus one (Euler has 0).
    pub fn exponent(&self) -> Option<i64> {
        self.coefficient_degree().map(|d| d as i64 - 1)
    }

    pub fn apply(&self, f: &Poly) -> Poly {
        let mut out = Polynomial::zero(f.ring());
        for (j, g) in self.coefficients.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            let df = f.partial_derivative(j).expect("variable in range");
            out = out.add_scaled(&(g * &df), &Rational::one());
        }
        out
    }

    /// `f_i | theta(f_i)` for every hyperplane.
    pub fn is_logarithmic(&self, a: &Arrangement) -> bool {
        a.forms().iter().all(|f| {
            self.apply(f)
                .exact_divide(f)
                .map(|q| q.is_some())
                .unwrap_or(false)
        })
    }

    pub fn scale_by(&self, p: &Poly) -> Self {
        Derivation::new(self.coefficients.iter().map(|g| g * p).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        Derivation::new(
            self.coefficients
                .iter()
                .zip(&other.coefficients)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Moves coefficients into `target`, placing variable `j` at `var_map[j]`
    /// and coefficient `j` at slot `var_map[j]`.
    pub fn map_into(&self, target: &RingRef, var_map: &[usize]) -> Self {
        let mut coeffs = vec![Polynomial::zero(target); target.nvars()];
        for (j, g) in self.coefficients.iter().enumerate() {
            coeffs[var_map[j]] = g.map_into(target, var_map);
        }
        Derivation::new(coeffs)
    }

    pub(crate) fn coordinates(&self, space: &MonomialSpace) -> Vec<Rational> {
        self.coefficients
            .iter()
            .flat_map(|g| space.coordinates(g))
            .collect()
    }

    pub(crate) fn from_coordinates(ring: &RingRef, space: &MonomialSpace, v: &[Rational]) -> Self {
        let k = space.len();
        Derivation::new(
            (0..ring.nvars())
                .map(|j| space.polynomial(ring, &v[j * k..(j + 1) * k]))
                .collect(),
        )
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = self.ring();
        let parts: Vec<String> = self
            .coefficients
            .iter()
            .enumerate()
            .filter(|(_, g)| !g.is_zero())
            .map(|(j, g)| format!("({g})*d/d{}", ring.name(j)))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Derivation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coefficients.iter().map(|g| g.to_string()).collect();
        v.serialize(s)
    }
}

/// Basis of `Der(A)` in coefficient degree `d`.
pub fn derivations_in_degree(a: &Arrangement, d: u32) -> Result<Vec<Derivation>, ArrangementError> {
    if !a.is_central() {
        return Err(ArrangementError::NotCentral);
    }
    let space = MonomialSpace::new(a.dim(), d);
    Ok(derivation_kernel(a, &Restrictions::new(a), &space))
}

fn derivation_kernel(a: &Arrangement, restrictions: &Restrictions, space: &MonomialSpace) -> Vec<Derivation> {
    let l = a.dim();
    let k = space.len();
    let mut eq = EquationBuilder::new(l * k);
    for i in 0..a.len() {
        let images = restrictions.restrict_monomials(i, space);
        for (j, c) in a.normal(i).iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (m, img) in images.iter().enumerate() {
                eq.add(i, j * k + m, img, c);
            }
        }
    }
    eq.nullspace()
        .into_iter()
        .map(|v| Derivation::from_coordinates(a.ring(), space, &v))
        .collect()
}

/// `Der(A)` in one coefficient degree: a basis and the minimal generators
/// (a complement of `R_1 Der(A)_{d-1}`).
#[derive(Debug, Clone, Serialize)]
pub struct DerivationPiece {
    pub degree: u32,
    pub basis: Vec<Derivation>,
    pub generators: Vec<Derivation>,
}

/// Freeness certificate: exponents (coefficient degree minus one) of a
/// Saito basis and the scalar `c` with `det = c Q`.
#[derive(Debug, Clone, Serialize)]
pub struct Exponents {
    pub exponents: Vec<i64>,
    #[serde(serialize_with = "ser_rational")]
    pub scalar: Rational,
    pub basis: Vec<Derivation>,
}

fn ser_rational<S: serde::Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(q))
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Freeness {
    Free(Exponents),
    NotFree { reason: String },
    Undetermined { bound: u32 },
}

impl Freeness {
    pub fn is_free(&self) -> bool {
        matches!(self, Freeness::Free(_))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GradedDerivationModule {
    pub pieces: Vec<DerivationPiece>,
    pub bound: u32,
    /// No generator appeared in the last computed degree.
    pub stabilized: bool,
    pub freeness: Freeness,
}

impl GradedDerivationModule {
    pub fn generators(&self) -> Vec<&Derivation> {
        self.pieces.iter().flat_map(|p| p.generators.iter()).collect()
    }

    pub fn generator_count(&self) -> usize {
        self.pieces.iter().map(|p| p.generators.len()).sum()
    }

    /// Coefficient degrees of the minimal generators, ascending.
    pub fn generator_degrees(&self) -> Vec<u32> {
        self.pieces
            .iter()
            .flat_map(|p| std::iter::repeat_n(p.degree, p.generators.len()))
            .collect()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.pieces.iter().map(|p| p.basis.len()).collect()
    }

    /// A generating set: the Saito basis when free, else the minimal generators.
    pub fn generating_set(&self) -> Vec<Derivation> {
        match &self.freeness {
            Freeness::Free(e) => e.basis.clone(),
            _ => self.generators().into_iter().cloned().collect(),
        }
    }
}

/// Default search bound `2n - l`.
pub fn default_bound(a: &Arrangement) -> u32 {
    (2 * a.len()).saturating_sub(a.dim()).max(1) as u32
}

fn compute_module(a: &Arrangement, bound: u32, stop_when_decided: bool) -> Result<GradedDerivationModule, ArrangementError> {
    if !a.is_central() {
        return Err(ArrangementError::NotCentral);
    }
    let l = a.dim();
    let restrictions = Restrictions::new(a);
    let ring = a.ring().clone();
    let mut pieces: Vec<DerivationPiece> = Vec::new();
    let mut freeness = Freeness::Undetermined { bound };
    let mut terao_failed = false;
    if let Ok(p) = poincare_and_euler(a) {
        if terao_factorization(&p.coefficients).is_none() {
            terao_failed = true;
            freeness = Freeness::NotFree {
                reason: "Poincare polynomial does not factor into (1 + b t) with integers b >= 0".into(),
            };
        }
    }
    let mut last = 0;
    for d in 0..=bound {
        last = d;
        let space = MonomialSpace::new(l, d);
        let basis = derivation_kernel(a, &restrictions, &space);
        let mut columns: Vec<Vec<Rational>> = Vec::new();
        if let Some(prev) = pieces.last() {
            for theta in &prev.basis {
                for v in 0..l {
                    columns.push(theta.scale_by(&Polynomial::var(&ring, v)).coordinates(&space));
                }
            }
        }
        let products = columns.len();
        let mut generators = Vec::new();
        if !basis.is_empty() {
            let mut candidates: Vec<Derivation> = Vec::new();
            if d == 1 {
                candidates.push(Derivation::euler(&ring));
            }
            candidates.extend(basis.iter().cloned());
            columns.extend(candidates.iter().map(|c| c.coordinates(&space)));
            let chosen = Matrix::from_columns(l * space.len(), &columns).independent_columns();
            generators = chosen
                .into_iter()
                .filter(|&j| j >= products)
                .map(|j| candidates[j - products].clone())
                .collect();
        }
        pieces.push(DerivationPiece {
            degree: d,
            basis,
            generators,
        });
        let count: usize = pieces.iter().map(|p| p.generators.len()).sum();
        if !terao_failed && !freeness.is_free() {
            if count > l {
                freeness = Freeness::NotFree {
                    reason: format!("{count} > {l} minimal generators"),
                };
            } else if count == l {
                let gens: Vec<Derivation> = pieces.iter().flat_map(|p| p.generators.iter().cloned()).collect();
                if let Ok(e) = saito_free_check(a, &gens) {
                    freeness = Freeness::Free(e);
                }
            }
        }
        // a Saito basis generates everything above it
        if freeness.is_free() || (stop_when_decided && !matches!(freeness, Freeness::Undetermined { .. })) {
            break;
        }
    }
    let stabilized = pieces.last().is_none_or(|p| p.generators.is_empty()) || freeness.is_free();
    if !stabilized && !stop_when_decided {
        log::warn!(
            "derivation generators still appearing at degree bound {bound}; the generating set may be incomplete"
        );
    }
    Ok(GradedDerivationModule {
        pieces,
        bound: last,
        stabilized,
        freeness,
    })
}

/// Minimal generators of `Der(A)` degree by degree up to `bound`. Once a
/// Saito basis is found the module is known and the search stops early.
pub fn minimal_derivation_generators(a: &Arrangement, bound: Option<u32>) -> Result<GradedDerivationModule, ArrangementError> {
    compute_module(a, bound.unwrap_or_else(|| default_bound(a)), false)
}

/// Freeness with early exit: Saito basis found, more than `l` minimal
/// generators, or a non-factoring Poincare polynomial.
pub fn free_check(a: &Arrangement, bound: Option<u32>) -> Result<GradedDerivationModule, ArrangementError> {
    compute_module(a, bound.unwrap_or_else(|| default_bound(a)), true)
}

/// Saito's criterion: `l` logarithmic derivations whose coefficient
/// determinant is a nonzero multiple of `Q` form a basis.
pub fn saito_free_check(a: &Arrangement, candidates: &[Derivation]) -> Result<Exponents, LogModuleError> {
    let l = a.dim();
    if candidates.len() != l {
        return Err(LogModuleError::WrongCount {
            expected: l,
            got: candidates.len(),
        });
    }
    for (i, c) in candidates.iter().enumerate() {
        if !c.is_logarithmic(a) {
            return Err(LogModuleError::NotLogarithmic(i));
        }
    }
    let det = polynomial_determinant(a.ring(), candidates);
    if det.is_zero() {
        return Err(LogModuleError::ZeroDeterminant);
    }
    let q = a.defining_polynomial();
    let c = match det.exact_divide(&q).expect("Q is nonzero") {
        Some(c) if c.is_constant() => c.coefficient(&crate::poly::Monomial::one(l)),
        _ => return Err(LogModuleError::NotMultipleOfQ),
    };
    let mut exponents: Vec<i64> = candidates
        .iter()
        .map(|t| t.exponent().ok_or(LogModuleError::NotMultipleOfQ))
        .collect::<Result<_, _>>()?;
    exponents.sort_unstable();
    let mut basis = candidates.to_vec();
    basis.sort_by_key(|t| t.coefficient_degree());
    Ok(Exponents {
        exponents,
        scalar: c,
        basis,
    })
}

/// `det(g_ij)` by the Leibniz formula.
pub fn polynomial_determinant(ring: &RingRef, rows: &[Derivation]) -> Poly {
    let l = rows.len();
    let mut det = Polynomial::zero(ring);
    for perm in (0..l).permutations(l) {
        let inversions = (0..l)
            .flat_map(|i| (i + 1..l).map(move |j| (i, j)))
            .filter(|&(i, j)| perm[i] > perm[j])
            .count();
        let mut term = Polynomial::one(ring);
        for (i, &j) in perm.iter().enumerate() {
            term = &term * &rows[i].coefficients()[j];
            if term.is_zero() {
                break;
            }
        }
        let sign = if inversions % 2 == 0 { Rational::one() } else { -Rational::one() };
        det = det.add_scaled(&term, &sign);
    }
    det
}

/// `dim Der(A)_d` predicted for a free arrangement:
/// `sum_i dim R_{d - m_i - 1}`.
pub fn hilbert_function_if_free(exponents: &[i64], l: usize, d: u32) -> u64 {
    exponents
        .iter()
        .map(|&m| {
            let shift = d as i64 - m - 1;
            if shift < 0 || l == 0 {
                0
            } else {
                binomial(shift as u64 + l as u64 - 1, l as u64 - 1)
            }
        })
        .sum()
}

/// Writes `sum c_p t^p` as `prod (1 + b_i t)` with integers `b_i >= 0` when
/// possible (Terao: necessary for freeness). Returns the `b_i` ascending.
pub fn terao_factorization(coefficients: &[u64]) -> Option<Vec<u64>> {
    let mut poly: Vec<i128> = coefficients.iter().map(|&c| c as i128).collect();
    while poly.len() > 1 && *poly.last().expect("nonempty") == 0 {
        poly.pop();
    }
    if poly.first() != Some(&1) {
        return None;
    }
    let mut roots = Vec::new();
    while poly.len() > 1 {
        let deg = poly.len() - 1;
        let lead = poly[deg];
        // b must divide the leading coefficient
        let b = (1..=lead.unsigned_abs() as i128).find(|&b| {
            lead % b == 0 && {
                // b^deg * pi(-1/b) = sum c_p (-1)^p b^(deg - p)
                let v: i128 = (0..=deg)
                    .map(|p| {
                        let s = if p % 2 == 0 { 1 } else { -1 };
                        s * poly[p] * b.pow((deg - p) as u32)
                    })
                    .sum();
                v == 0
            }
        })?;
        // divide by (1 + b t)
        let mut q = vec![0i128; deg];
        let mut carry = 0i128;
        for p in 0..deg {
            q[p] = poly[p] - carry;
            carry = q[p] * b;
        }
        if poly[deg] != carry {
            return None;
        }
        poly = q;
        roots.push(b as u64);
    }
    roots.sort_unstable();
    Some(roots)
}
