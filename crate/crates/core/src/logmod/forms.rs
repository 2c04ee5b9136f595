use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;
use num_traits::Zero;
use serde::Serialize;

use crate::arrangement::{Arrangement, WeightVector};
use crate::error::ArrangementError;
use crate::matrix::rank_of_vectors;
use crate::os::wedge;
use crate::poly::{Polynomial, RingRef};
use crate::scalar::{int, Rational};
use crate::Poly;

use super::{EquationBuilder, MonomialSpace, Restrictions};

/// Polynomial `p`-form `sum_I g_I dx_I`, coefficients indexed by the
/// `p`-subsets of the variables in lexicographic order.
#[derive(Clone, PartialEq)]
pub struct Form {
    ring: RingRef,
    p: usize,
    coefficients: Vec<Poly>,
}

fn subsets(l: usize, p: usize) -> Vec<Vec<usize>> {
    (0..l).combinations(p).collect()
}

fn subset_index(l: usize, p: usize) -> HashMap<Vec<usize>, usize> {
    subsets(l, p).into_iter().enumerate().map(|(i, s)| (s, i)).collect()
}

impl Form {
    pub fn new(ring: &RingRef, p: usize, coefficients: Vec<Poly>) -> Self {
        assert_eq!(coefficients.len(), subsets(ring.nvars(), p).len(), "wrong number of coefficients");
        Form {
            ring: ring.clone(),
            p,
            coefficients,
        }
    }

    pub fn zero(ring: &RingRef, p: usize) -> Self {
        Form::new(ring, p, vec![Polynomial::zero(ring); subsets(ring.nvars(), p).len()])
    }

    /// `dx_I` for a sorted index set.
    pub fn basic(ring: &RingRef, set: &[usize]) -> Self {
        let mut f = Form::zero(ring, set.len());
        let idx = subset_index(ring.nvars(), set.len())[set];
        f.coefficients[idx] = Polynomial::one(ring);
        f
    }

    pub fn degree(&self) -> usize {
        self.p
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn coefficients(&self) -> &[Poly] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(|g| g.is_zero())
    }

    /// `(sum_j c_j dx_j) ^ self`.
    pub fn wedge_linear(&self, c: &[Rational]) -> Form {
        let ring = self.ring().clone();
        let l = ring.nvars();
        let src = subsets(l, self.p);
        let dst = subset_index(l, self.p + 1);
        let mut out = vec![Polynomial::zero(&ring); dst.len()];
        for (i, set) in src.iter().enumerate() {
            if self.coefficients[i].is_zero() {
                continue;
            }
            for (j, cj) in c.iter().enumerate() {
                if cj.is_zero() {
                    continue;
                }
                if let Some((sign, t)) = wedge(&[j], set) {
                    let k = dst[&t];
                    out[k] = out[k].add_scaled(&self.coefficients[i], &(cj * int(sign as i64)));
                }
            }
        }
        Form::new(&ring, self.p + 1, out)
    }

    pub fn exact_divide(&self, f: &Poly) -> Option<Form> {
        let mut out = Vec::with_capacity(self.coefficients.len());
        for g in &self.coefficients {
            out.push(g.exact_divide(f).ok()??);
        }
        Some(Form::new(&self.ring, self.p, out))
    }

    pub fn add_scaled(&self, other: &Form, c: &Rational) -> Form {
        Form::new(
            &self.ring,
            self.p,
            self.coefficients
                .iter()
                .zip(&other.coefficients)
                .map(|(a, b)| a.add_scaled(b, c))
                .collect(),
        )
    }

    pub(crate) fn coordinates(&self, space: &MonomialSpace) -> Vec<Rational> {
        self.coefficients.iter().flat_map(|g| space.coordinates(g)).collect()
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = self.ring();
        let sets = subsets(ring.nvars(), self.p);
        let parts: Vec<String> = sets
            .iter()
            .zip(&self.coefficients)
            .filter(|(_, g)| !g.is_zero())
            .map(|(s, g)| {
                let dx: Vec<String> = s.iter().map(|&j| format!("d{}", ring.name(j))).collect();
                if dx.is_empty() {
                    format!("{g}")
                } else {
                    format!("({g})*{}", dx.join("^"))
                }
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Exterior product of polynomial forms.
pub fn wedge_forms(a: &Form, b: &Form) -> Form {
    let ring = a.ring().clone();
    let l = ring.nvars();
    let sa = subsets(l, a.p);
    let sb = subsets(l, b.p);
    let dst = subset_index(l, a.p + b.p);
    let mut out = vec![Polynomial::zero(&ring); dst.len()];
    for (i, s) in sa.iter().enumerate() {
        if a.coefficients[i].is_zero() {
            continue;
        }
        for (j, t) in sb.iter().enumerate() {
            if b.coefficients[j].is_zero() {
                continue;
            }
            if let Some((sign, u)) = wedge(s, t) {
                let k = dst[&u];
                let prod = &a.coefficients[i] * &b.coefficients[j];
                out[k] = out[k].add_scaled(&prod, &int(sign as i64));
            }
        }
    }
    Form::new(&ring, a.p + b.p, out)
}

/// Basis of `Omega^p(A)_m`, each element represented by the polynomial
/// form `Q eta` (coefficient degree `m + n - p`).
pub fn log_forms_in_degree(a: &Arrangement, p: usize, m: i64) -> Result<Vec<Form>, ArrangementError> {
    if !a.is_central() {
        return Err(ArrangementError::NotCentral);
    }
    let l = a.dim();
    assert!(p <= l, "form degree above the dimension");
    let k = m + a.len() as i64 - p as i64;
    if k < 0 {
        return Ok(Vec::new());
    }
    let space = MonomialSpace::new(l, k as u32);
    Ok(log_form_kernel(a, &Restrictions::new(a), p, &space))
}

fn log_form_kernel(a: &Arrangement, restrictions: &Restrictions, p: usize, space: &MonomialSpace) -> Vec<Form> {
    let l = a.dim();
    let ring = a.ring();
    let src = subsets(l, p);
    let src_index = subset_index(l, p);
    let dst = subsets(l, p + 1);
    let ks = space.len();
    let mut eq = EquationBuilder::new(src.len() * ks);
    for i in 0..a.len() {
        let c = a.normal(i);
        let images = restrictions.restrict_monomials(i, space);
        for (jdx, set) in dst.iter().enumerate() {
            // coefficient of dx_J in df_i ^ omega: sum over j in J
            for (pos, &j) in set.iter().enumerate() {
                if c[j].is_zero() {
                    continue;
                }
                let mut rest = set.clone();
                rest.remove(pos);
                let sign = if pos % 2 == 0 { int(1) } else { int(-1) };
                let col0 = src_index[&rest] * ks;
                let scale = &c[j] * &sign;
                for (mi, img) in images.iter().enumerate() {
                    eq.add(i * dst.len() + jdx, col0 + mi, img, &scale);
                }
            }
        }
    }
    eq.nullspace()
        .into_iter()
        .map(|v| {
            Form::new(
                ring,
                p,
                (0..src.len())
                    .map(|s| space.polynomial(ring, &v[s * ks..(s + 1) * ks]))
                    .collect(),
            )
        })
        .collect()
}

/// `Q (omega_lambda ^ eta) = sum_i lambda_i (df_i ^ Q eta) / f_i`, for a form
/// given by `Q eta`. `None` if some division is not exact.
pub fn omega_wedge(a: &Arrangement, weights: &WeightVector, cleared: &Form) -> Option<Form> {
    let mut out = Form::zero(a.ring(), cleared.degree() + 1);
    for i in 0..a.len() {
        let w = weights.get(i);
        if w.is_zero() {
            continue;
        }
        let t = cleared.wedge_linear(a.normal(i)).exact_divide(&a.form(i))?;
        out = out.add_scaled(&t, w);
    }
    Some(out)
}

/// Graded pieces of `Omega^p(A)` for a range of total degrees.
#[derive(Debug, Clone)]
pub struct GradedLogForms {
    pub p: usize,
    pub pieces: Vec<(i64, Vec<Form>)>,
}

impl GradedLogForms {
    pub fn compute(a: &Arrangement, p: usize, degrees: std::ops::RangeInclusive<i64>) -> Result<Self, ArrangementError> {
        let pieces = degrees
            .map(|m| log_forms_in_degree(a, p, m).map(|b| (m, b)))
            .collect::<Result<_, _>>()?;
        Ok(GradedLogForms { p, pieces })
    }

    pub fn dims(&self) -> Vec<(i64, usize)> {
        self.pieces.iter().map(|(m, b)| (*m, b.len())).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LogCohomologyRow {
    pub m: i64,
    /// `dim Omega^p(A)_m` for `p = 0..=l`.
    pub dims: Vec<usize>,
    /// `dim H^p(Omega(A)_m, omega_lambda)`.
    pub betti: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LogCohomology {
    pub rows: Vec<LogCohomologyRow>,
    /// Every image landed back in the computed log forms and `d^2 = 0`.
    pub consistent: bool,
}

impl LogCohomology {
    /// Least `p` with some nonzero `H^p` in the computed range.
    pub fn least_nonzero(&self) -> Option<usize> {
        self.rows
            .iter()
            .filter_map(|r| r.betti.iter().position(|&b| b != 0))
            .min()
    }
}

/// Degreewise cohomology of `(Omega(A), omega_lambda ^ -)`; multiplication
/// by `omega_lambda` preserves total degree.
pub fn log_complex_cohomology(
    a: &Arrangement,
    weights: &WeightVector,
    degrees: std::ops::RangeInclusive<i64>,
) -> Result<LogCohomology, ArrangementError> {
    if !a.is_central() {
        return Err(ArrangementError::NotCentral);
    }
    a.check_weights(weights)?;
    let l = a.dim();
    let n = a.len() as i64;
    let restrictions = Restrictions::new(a);
    let mut rows = Vec::new();
    let mut consistent = true;
    for m in degrees {
        let mut bases: Vec<Vec<Form>> = Vec::with_capacity(l + 1);
        for p in 0..=l {
            let k = m + n - p as i64;
            bases.push(if k < 0 {
                Vec::new()
            } else {
                log_form_kernel(a, &restrictions, p, &MonomialSpace::new(l, k as u32))
            });
        }
        let mut ranks = Vec::with_capacity(l);
        for p in 0..l {
            let k = m + n - p as i64 - 1;
            let images: Vec<Form> = bases[p]
                .iter()
                .map(|f| omega_wedge(a, weights, f))
                .collect::<Option<_>>()
                .unwrap_or_else(|| {
                    consistent = false;
                    Vec::new()
                });
            if k < 0 {
                if images.iter().any(|f| !f.is_zero()) {
                    consistent = false;
                }
                ranks.push(0);
                continue;
            }
            let space = MonomialSpace::new(l, k as u32);
            let coords: Vec<Vec<Rational>> = images.iter().map(|f| f.coordinates(&space)).collect();
            let dim = subsets(l, p + 1).len() * space.len();
            let r = rank_of_vectors(dim, &coords);
            // images must lie in Omega^{p+1}(A)_m
            let target: Vec<Vec<Rational>> = bases[p + 1].iter().map(|f| f.coordinates(&space)).collect();
            let mut both = target.clone();
            both.extend(coords.iter().cloned());
            if rank_of_vectors(dim, &both) != rank_of_vectors(dim, &target) {
                consistent = false;
            }
            // d^2 = 0
            for img in &images {
                match omega_wedge(a, weights, img) {
                    Some(f) if f.is_zero() => {}
                    _ => consistent = false,
                }
            }
            ranks.push(r);
        }
        let dims: Vec<usize> = bases.iter().map(|b| b.len()).collect();
        let betti = crate::os::betti_from_ranks(&dims, &ranks);
        rows.push(LogCohomologyRow { m, dims, betti });
    }
    Ok(LogCohomology { rows, consistent })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SelfDuality {
    /// Every product `eta ^ xi` is again logarithmic (`(Q eta ^ Q xi) / Q` polynomial).
    pub products_logarithmic: bool,
    /// No nonzero `eta` pairs to zero with all of `Omega^{l-p}(A)_{m'}`.
    pub left_nondegenerate: bool,
    pub dims: (usize, usize),
}

/// Wedge pairing `Omega^p(A)_m x Omega^{l-p}(A)_{m'} -> Omega^l(A)_{m+m'}`.
pub fn self_duality_check(a: &Arrangement, p: usize, m: i64, m_dual: i64) -> Result<SelfDuality, ArrangementError> {
    let l = a.dim();
    let left = log_forms_in_degree(a, p, m)?;
    let right = log_forms_in_degree(a, l - p, m_dual)?;
    let q = a.defining_polynomial();
    let n = a.len() as i64;
    let k = m + m_dual + n - l as i64;
    let mut logarithmic = true;
    let mut rows = Vec::new();
    let space = (k >= 0).then(|| MonomialSpace::new(l, k as u32));
    for eta in &left {
        let mut row = Vec::new();
        for xi in &right {
            let top = wedge_forms(eta, xi);
            match top.exact_divide(&q) {
                Some(t) => {
                    if let Some(s) = &space {
                        row.extend(t.coordinates(s));
                    } else if !t.is_zero() {
                        logarithmic = false;
                    }
                }
                None => logarithmic = false,
            }
        }
        rows.push(row);
    }
    let width = rows.first().map_or(0, |r| r.len());
    let nondegenerate = left.is_empty() || (width > 0 && rank_of_vectors(width, &rows) == left.len());
    Ok(SelfDuality {
        products_logarithmic: logarithmic,
        left_nondegenerate: nondegenerate,
        dims: (left.len(), right.len()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::binomial;

    fn pencil3() -> Arrangement {
        Arrangement::central(&[&[1, 0], &[0, 1], &[1, -1]]).unwrap()
    }

    #[test]
    fn low_degree_pieces() {
        let a = pencil3();
        let zero = log_forms_in_degree(&a, 0, 0).unwrap();
        assert_eq!(zero.len(), 1);
        // d f_i / f_i lies in Omega^1_0: Q df_i / f_i
        let one = log_forms_in_degree(&a, 1, 0).unwrap();
        let q = a.defining_polynomial();
        let space = MonomialSpace::new(2, 2);
        let coords: Vec<Vec<Rational>> = one.iter().map(|f| f.coordinates(&space)).collect();
        for i in 0..3 {
            let qf = q.exact_divide(&a.form(i)).unwrap().unwrap();
            let df = Form::new(a.ring(), 0, vec![qf]).wedge_linear(a.normal(i));
            let mut both = coords.clone();
            both.push(df.coordinates(&space));
            assert_eq!(rank_of_vectors(2 * 3, &both), rank_of_vectors(2 * 3, &coords));
        }
    }

    #[test]
    fn top_degree_is_free_of_rank_one() {
        let a = pencil3();
        for m in -1..4 {
            let dim = log_forms_in_degree(&a, 2, m).unwrap().len() as u64;
            let k = m + 3 - 2;
            let expect = if k < 0 { 0 } else { binomial(k as u64 + 1, 1) };
            assert_eq!(dim, expect);
        }
    }

    #[test]
    fn pencil_cohomology() {
        let a = pencil3();
        let h = log_complex_cohomology(&a, &WeightVector::from_integers(&[1, 1, -2]), 0..=0).unwrap();
        assert!(h.consistent);
        assert!(h.rows[0].betti[1] > 0);
        let h = log_complex_cohomology(&a, &WeightVector::from_integers(&[1, 1, 1]), 0..=2).unwrap();
        assert_eq!(h.rows[0].betti[0], 0);
    }

    #[test]
    fn duality_spot_check() {
        let a = pencil3();
        let s = self_duality_check(&a, 1, 0, 1).unwrap();
        assert!(s.products_logarithmic);
        assert!(s.left_nondegenerate);
    }
}
