//! Hyperplane arrangements: validated linear forms and their matroid.
//!
//! A central arrangement is given by normal vectors `c_i` with forms
//! `f_i = sum_j c_ij x_j`; an affine one additionally carries constants
//! `b_i` with `f_i = c_i . x + b_i`. Hyperplanes keep their input order,
//! which later fixes broken circuits and NBC bases.

mod json;
mod weights;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};

use crate::error::ArrangementError;
use crate::matrix::Matrix;
use crate::poly::{Polynomial, Ring, RingRef};
use crate::scalar::{int, Rational};
use crate::Poly;

pub use json::ArrangementDocument;
pub use weights::WeightVector;

/// A flat of the intersection lattice, stored as the (closed) set of
/// hyperplanes containing it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flat {
    pub hyperplanes: Vec<usize>,
    pub rank: usize,
}

#[derive(Clone)]
pub struct Arrangement {
    ring: RingRef,
    normals: Vec<Vec<Rational>>,
    constants: Vec<Rational>,
    labels: Vec<String>,
    central: bool,
    circuits: OnceLock<Vec<Vec<usize>>>,
}

impl PartialEq for Arrangement {
    fn eq(&self, other: &Self) -> bool {
        self.ring.names() == other.ring.names()
            && self.normals == other.normals
            && self.constants == other.constants
            && self.labels == other.labels
    }
}

impl fmt::Debug for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Arrangement")
            .field("dim", &self.dim())
            .field("forms", &self.forms().iter().map(|p| p.to_string()).collect::<Vec<_>>())
            .finish()
    }
}

impl fmt::Display for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let forms: Vec<String> = self.forms().iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}} in Q^{}", forms.join(", "), self.dim())
    }
}

fn default_names(dim: usize) -> Vec<String> {
    (1..=dim).map(|i| format!("x{i}")).collect()
}

impl Arrangement {
    /// Validates and builds an arrangement in `dim` variables. `constants`
    /// of `None` (or all zero) gives a central arrangement.
    pub fn new(
        dim: usize,
        normals: Vec<Vec<Rational>>,
        constants: Option<Vec<Rational>>,
    ) -> Result<Self, ArrangementError> {
        Self::with_names(default_names(dim), normals, constants)
    }

    pub fn with_names(
        names: Vec<String>,
        normals: Vec<Vec<Rational>>,
        constants: Option<Vec<Rational>>,
    ) -> Result<Self, ArrangementError> {
        let dim = names.len();
        let n = normals.len();
        let constants = constants.unwrap_or_else(|| vec![Rational::zero(); n]);
        if constants.len() != n {
            return Err(ArrangementError::WrongLength {
                index: n,
                got: constants.len(),
                expected: n,
            });
        }
        for (i, row) in normals.iter().enumerate() {
            if row.len() != dim {
                return Err(ArrangementError::WrongLength {
                    index: i,
                    got: row.len(),
                    expected: dim,
                });
            }
            if row.iter().all(|c| c.is_zero()) {
                return Err(ArrangementError::ZeroForm(i));
            }
        }
        for i in 0..n {
            for j in 0..i {
                if proportional(&normals[i], &constants[i], &normals[j], &constants[j]) {
                    return Err(ArrangementError::DuplicateHyperplane(j, i));
                }
            }
        }
        let central = constants.iter().all(|c| c.is_zero());
        Ok(Arrangement {
            ring: Ring::grevlex(&names),
            normals,
            constants,
            labels: (1..=n).map(|i| format!("H{i}")).collect(),
            central,
            circuits: OnceLock::new(),
        })
    }

    /// Central arrangement from integer normal vectors.
    pub fn central(rows: &[&[i64]]) -> Result<Self, ArrangementError> {
        let dim = rows.first().map_or(0, |r| r.len());
        let normals = rows.iter().map(|r| r.iter().map(|&c| int(c)).collect()).collect();
        Self::new(dim, normals, None)
    }

    /// Affine arrangement from integer rows `[c_1, ..., c_l, b]`.
    pub fn affine(rows: &[&[i64]]) -> Result<Self, ArrangementError> {
        let dim = rows.first().map_or(1, |r| r.len()) - 1;
        let normals = rows.iter().map(|r| r[..dim].iter().map(|&c| int(c)).collect()).collect();
        let constants = rows.iter().map(|r| int(r[dim])).collect();
        Self::new(dim, normals, Some(constants))
    }

    /// Reads the linear forms off polynomials of degree at most one.
    pub fn from_polynomials(ring: &RingRef, forms: &[Poly]) -> Result<Self, ArrangementError> {
        let dim = ring.nvars();
        let mut normals = Vec::new();
        let mut constants = Vec::new();
        for (i, f) in forms.iter().enumerate() {
            let mut row = vec![Rational::zero(); dim];
            let mut b = Rational::zero();
            for (m, c) in f.terms() {
                match m.degree() {
                    0 => b = c.clone(),
                    1 => row[m.support().next().expect("degree one")] = c.clone(),
                    _ => {
                        return Err(ArrangementError::WrongLength {
                            index: i,
                            got: m.degree() as usize,
                            expected: 1,
                        })
                    }
                }
            }
            normals.push(row);
            constants.push(b);
        }
        Self::with_names(ring.names().to_vec(), normals, Some(constants))
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.len(), "one label per hyperplane");
        self.labels = labels;
        self
    }

    pub fn dim(&self) -> usize {
        self.ring.nvars()
    }

    pub fn len(&self) -> usize {
        self.normals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.normals.is_empty()
    }

    pub fn is_central(&self) -> bool {
        self.central
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn normal(&self, i: usize) -> &[Rational] {
        &self.normals[i]
    }

    pub fn normals(&self) -> &[Vec<Rational>] {
        &self.normals
    }

    pub fn constant(&self, i: usize) -> &Rational {
        &self.constants[i]
    }

    pub fn constants(&self) -> &[Rational] {
        &self.constants
    }

    pub fn form(&self, i: usize) -> Poly {
        Polynomial::linear(&self.ring, &self.normals[i], self.constants[i].clone())
    }

    pub fn forms(&self) -> Vec<Poly> {
        (0..self.len()).map(|i| self.form(i)).collect()
    }

    /// `Q = f_1 ... f_n`.
    pub fn defining_polynomial(&self) -> Poly {
        self.forms()
            .iter()
            .fold(Polynomial::one(&self.ring), |acc, f| &acc * f)
    }

    /// Values `f_i(x)`.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Vec<Rational>, ArrangementError> {
        if point.len() != self.dim() {
            return Err(ArrangementError::PointLength {
                got: point.len(),
                expected: self.dim(),
            });
        }
        Ok((0..self.len())
            .map(|i| {
                self.normals[i]
                    .iter()
                    .zip(point)
                    .fold(self.constants[i].clone(), |acc, (c, x)| acc + c * x)
            })
            .collect())
    }

    /// Vectors carrying the matroid: normals for central arrangements,
    /// homogenized `(b_i, c_i)` for affine ones.
    pub fn matroid_vectors(&self) -> Vec<Vec<Rational>> {
        if self.central {
            self.normals.clone()
        } else {
            self.normals
                .iter()
                .zip(&self.constants)
                .map(|(c, b)| {
                    let mut v = vec![b.clone()];
                    v.extend(c.iter().cloned());
                    v
                })
                .collect()
        }
    }

    fn vector_rank(vectors: &[Vec<Rational>], subset: &[usize]) -> usize {
        if subset.is_empty() {
            return 0;
        }
        let cols = vectors[0].len();
        let rows = subset.iter().map(|&i| vectors[i].clone()).collect();
        Matrix::from_rows(cols, rows).rank()
    }

    /// Rank of the normals of `subset`, i.e. the codimension of the
    /// intersection when it is nonempty.
    pub fn rank_of(&self, subset: &[usize]) -> usize {
        Self::vector_rank(&self.normals, subset)
    }

    /// Matroid rank of `subset` (homogenized for affine arrangements).
    pub fn matroid_rank_of(&self, subset: &[usize]) -> usize {
        if self.central {
            self.rank_of(subset)
        } else {
            Self::vector_rank(&self.matroid_vectors(), subset)
        }
    }

    pub fn rank(&self) -> usize {
        self.rank_of(&(0..self.len()).collect::<Vec<_>>())
    }

    pub fn is_essential(&self) -> bool {
        self.rank() == self.dim()
    }

    /// Whether the hyperplanes in `subset` have a common point.
    pub fn intersects(&self, subset: &[usize]) -> bool {
        self.central || self.rank_of(subset) == self.matroid_rank_of(subset)
    }

    /// Minimal dependent subsets of the matroid vectors, each sorted, listed
    /// by size and then lexicographically.
    pub fn circuits(&self) -> &[Vec<usize>] {
        self.circuits.get_or_init(|| {
            let vectors = self.matroid_vectors();
            let n = self.len();
            let r = Self::vector_rank(&vectors, &(0..n).collect::<Vec<_>>());
            let mut out: Vec<Vec<usize>> = Vec::new();
            for size in 2..=(r + 1).min(n) {
                for subset in itertools::Itertools::combinations(0..n, size) {
                    if out.iter().any(|c| c.iter().all(|i| subset.contains(i))) {
                        continue;
                    }
                    if Self::vector_rank(&vectors, &subset) == size - 1 {
                        // every proper subset is independent since no smaller
                        // circuit sits inside
                        out.push(subset);
                    }
                }
            }
            out
        })
    }

    /// Connected matroid (every pair of hyperplanes lies in a common circuit).
    pub fn is_irreducible(&self) -> Result<bool, ArrangementError> {
        if !self.central {
            return Err(ArrangementError::NotCentral);
        }
        Ok(self.components().len() <= 1)
    }

    /// Connected components of the matroid, each sorted.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut Vec<usize>, i: usize) -> usize {
            if p[i] != i {
                let r = find(p, p[i]);
                p[i] = r;
            }
            p[i]
        }
        for c in self.circuits() {
            for w in c.windows(2) {
                let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut root_index = std::collections::HashMap::new();
        for i in 0..n {
            let r = find(&mut parent, i);
            let k = *root_index.entry(r).or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[k].push(i);
        }
        groups
    }

    /// Closure of `subset` in the matroid.
    pub fn closure(&self, subset: &[usize]) -> Vec<usize> {
        let vectors = self.matroid_vectors();
        let r = Self::vector_rank(&vectors, subset);
        let mut out: Vec<usize> = Vec::new();
        for i in 0..self.len() {
            if subset.contains(&i) {
                out.push(i);
                continue;
            }
            let mut s = subset.to_vec();
            s.push(i);
            if Self::vector_rank(&vectors, &s) == r {
                out.push(i);
            }
        }
        out
    }

    pub fn is_flat(&self, subset: &[usize]) -> bool {
        let mut s = subset.to_vec();
        s.sort_unstable();
        s.dedup();
        self.closure(&s) == s
    }

    /// Flats of rank `1..=max_rank` (central arrangements), by rank then
    /// lexicographically.
    pub fn flats(&self, max_rank: usize) -> Vec<Flat> {
        let mut out: Vec<Flat> = Vec::new();
        let mut layer: BTreeSet<Vec<usize>> = BTreeSet::new();
        layer.insert(Vec::new());
        for rank in 1..=max_rank.min(self.rank()) {
            let mut next: BTreeSet<Vec<usize>> = BTreeSet::new();
            for f in &layer {
                for i in 0..self.len() {
                    if f.contains(&i) {
                        continue;
                    }
                    let mut s = f.clone();
                    s.push(i);
                    s.sort_unstable();
                    next.insert(self.closure(&s));
                }
            }
            out.extend(next.iter().map(|h| Flat {
                hyperplanes: h.clone(),
                rank,
            }));
            layer = next;
        }
        out
    }

    /// Hyperplanes in `indices` (kept in the given order), same ambient space.
    pub fn subarrangement(&self, indices: &[usize]) -> Self {
        let normals = indices.iter().map(|&i| self.normals[i].clone()).collect();
        let constants = indices.iter().map(|&i| self.constants[i].clone()).collect();
        let out = Self::with_names(self.ring.names().to_vec(), normals, Some(constants))
            .expect("subsets of a simple arrangement are simple");
        out.with_labels(indices.iter().map(|&i| self.labels[i].clone()).collect())
    }

    /// The arrangement `A_X` of hyperplanes containing the flat `X`.
    pub fn localization(&self, flat: &[usize]) -> Result<Self, ArrangementError> {
        if !self.is_flat(flat) {
            return Err(ArrangementError::NotAFlat);
        }
        let mut s = flat.to_vec();
        s.sort_unstable();
        s.dedup();
        Ok(self.subarrangement(&s))
    }

    /// Reorders hyperplanes: the result's `k`-th form is `self`'s `order[k]`-th.
    pub fn permuted(&self, order: &[usize]) -> Self {
        assert_eq!(order.len(), self.len());
        self.subarrangement(order)
    }

    /// Block-diagonal sum in `Q^{l1 + l2}`; variables of `other` follow.
    pub fn direct_sum(&self, other: &Self) -> Result<Self, ArrangementError> {
        if !self.central || !other.central {
            return Err(ArrangementError::NotCentral);
        }
        let (l1, l2) = (self.dim(), other.dim());
        let mut normals = Vec::new();
        for row in &self.normals {
            let mut v = row.clone();
            v.extend(std::iter::repeat_n(Rational::zero(), l2));
            normals.push(v);
        }
        for row in &other.normals {
            let mut v = vec![Rational::zero(); l1];
            v.extend(row.iter().cloned());
            normals.push(v);
        }
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        Ok(Self::new(l1 + l2, normals, None)?.with_labels(labels))
    }

    /// Homogenizes an affine arrangement: new first variable `x0`, new first
    /// hyperplane `x0 = 0`, and weight `lambda_0 = -sum lambda_i`.
    pub fn cone(&self, weights: &WeightVector) -> Result<(Self, WeightVector), ArrangementError> {
        if self.central {
            return Err(ArrangementError::NotAffine);
        }
        self.check_weights(weights)?;
        let mut normals = Vec::with_capacity(self.len() + 1);
        let mut e0 = vec![Rational::zero(); self.dim() + 1];
        e0[0] = Rational::one();
        normals.push(e0);
        for (c, b) in self.normals.iter().zip(&self.constants) {
            let mut v = vec![b.clone()];
            v.extend(c.iter().cloned());
            normals.push(v);
        }
        let mut names = vec![cone_variable_name(self.ring.names())];
        names.extend(self.ring.names().iter().cloned());
        let mut labels = vec![format!("{}0", label_prefix(&self.labels))];
        labels.extend(self.labels.iter().cloned());
        let coned = Self::with_names(names, normals, None)?.with_labels(labels);
        let mut w = vec![-weights.sum()];
        w.extend(weights.entries().iter().cloned());
        Ok((coned, WeightVector::new(w)))
    }

    /// Deconing with respect to hyperplane `h`: the affine arrangement in the
    /// chart `f_h = 1`, obtained by eliminating the variable with the largest
    /// coefficient in `f_h`.
    pub fn decone(&self, h: usize) -> Result<Self, ArrangementError> {
        if !self.central {
            return Err(ArrangementError::NotCentral);
        }
        let c = &self.normals[h];
        let k = elimination_variable(c);
        let keep: Vec<usize> = (0..self.dim()).filter(|&j| j != k).collect();
        let mut normals = Vec::new();
        let mut constants = Vec::new();
        let mut labels = Vec::new();
        for i in (0..self.len()).filter(|&i| i != h) {
            // x_k = (1 - sum_{j != k} c_j x_j) / c_k
            let a = &self.normals[i];
            let t = &a[k] / &c[k];
            normals.push(keep.iter().map(|&j| &a[j] - &t * &c[j]).collect::<Vec<_>>());
            constants.push(t);
            labels.push(self.labels[i].clone());
        }
        let names = keep.iter().map(|&j| self.ring.name(j).to_string()).collect();
        Ok(Self::with_names(names, normals, Some(constants))?.with_labels(labels))
    }

    pub fn check_weights(&self, weights: &WeightVector) -> Result<(), ArrangementError> {
        if weights.len() != self.len() {
            return Err(ArrangementError::WeightLength {
                got: weights.len(),
                expected: self.len(),
            });
        }
        Ok(())
    }

    /// A point of the complement must avoid every hyperplane.
    pub fn check_point_in_complement(&self, point: &[Rational]) -> Result<Vec<Rational>, ArrangementError> {
        let values = self.evaluate(point)?;
        if let Some(i) = values.iter().position(|v| v.is_zero()) {
            return Err(ArrangementError::PointOnHyperplane(i));
        }
        Ok(values)
    }
}

/// Variable solved for when restricting to `c . x = 0`: largest absolute
/// coefficient, lowest index on ties.
pub fn elimination_variable(c: &[Rational]) -> usize {
    let mut best = 0;
    for (j, v) in c.iter().enumerate() {
        if v.abs() > c[best].abs() {
            best = j;
        }
    }
    best
}

fn cone_variable_name(names: &[String]) -> String {
    let mut candidate = "x0".to_string();
    while names.contains(&candidate) {
        candidate.insert(0, '_');
    }
    candidate
}

fn label_prefix(labels: &[String]) -> String {
    let first = labels.first().map(|s| s.as_str()).unwrap_or("H");
    first.trim_end_matches(|c: char| c.is_ascii_digit()).to_string()
}

fn proportional(a: &[Rational], ca: &Rational, b: &[Rational], cb: &Rational) -> bool {
    let va: Vec<&Rational> = a.iter().chain(std::iter::once(ca)).collect();
    let vb: Vec<&Rational> = b.iter().chain(std::iter::once(cb)).collect();
    let k = match va.iter().position(|x| !x.is_zero()) {
        Some(k) => k,
        None => return false,
    };
    if vb[k].is_zero() {
        return false;
    }
    let t = vb[k] / va[k];
    va.iter().zip(&vb).all(|(x, y)| &(&t * *x) == *y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pencil3() -> Arrangement {
        Arrangement::central(&[&[1, 0], &[0, 1], &[1, -1]]).unwrap()
    }

    fn x3() -> Arrangement {
        Arrangement::central(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 0], &[1, 0, 1], &[0, 1, 1]]).unwrap()
    }

    #[test]
    fn build_and_validate() {
        let a = pencil3();
        assert!(a.is_central());
        assert_eq!(a.rank(), 2);
        assert_eq!(a.defining_polynomial().to_string(), "x1^2*x2 - x1*x2^2");
        assert_eq!(Arrangement::central(&[&[0, 0]]).unwrap_err(), ArrangementError::ZeroForm(0));
        assert_eq!(
            Arrangement::central(&[&[1, 2], &[-2, -4]]).unwrap_err(),
            ArrangementError::DuplicateHyperplane(0, 1)
        );
        // parallel affine lines are distinct hyperplanes
        assert!(Arrangement::affine(&[&[1, 0, 0], &[1, 0, -1]]).is_ok());
        assert!(Arrangement::affine(&[&[1, 0, -1], &[2, 0, -2]]).is_err());
    }

    #[test]
    fn circuits_and_rank() {
        assert_eq!(pencil3().circuits(), &[vec![0, 1, 2]]);
        let b = Arrangement::central(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        assert!(b.circuits().is_empty());
        assert!(b.is_essential());
        assert!(x3().circuits().contains(&vec![0, 1, 3]));
        let ne = Arrangement::central(&[&[1, 0, 0], &[1, 1, 0]]).unwrap();
        assert_eq!(ne.rank(), 2);
        assert!(!ne.is_essential());
    }

    #[test]
    fn irreducibility() {
        assert!(pencil3().is_irreducible().unwrap());
        assert!(x3().is_irreducible().unwrap());
        let b2 = Arrangement::central(&[&[1, 0], &[0, 1]]).unwrap();
        assert!(!b2.is_irreducible().unwrap());
        let aff = Arrangement::affine(&[&[1, -1]]).unwrap();
        assert_eq!(aff.is_irreducible().unwrap_err(), ArrangementError::NotCentral);
    }

    #[test]
    fn coning() {
        let a = Arrangement::affine(&[&[1, -1]]).unwrap();
        let (c, w) = a.cone(&WeightVector::from_integers(&[2])).unwrap();
        assert_eq!(
            c.forms().iter().map(|f| f.to_string()).collect::<Vec<_>>(),
            vec!["x0", "-x0 + x1"]
        );
        assert_eq!(w, WeightVector::from_integers(&[-2, 2]));
        let lines = Arrangement::affine(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, -1]]).unwrap();
        let (c, w) = lines.cone(&WeightVector::from_integers(&[1, 2, 3])).unwrap();
        assert_eq!((c.len(), c.rank()), (4, 3));
        assert!(w.sum().is_zero());
    }

    #[test]
    fn decone_inverts_cone() {
        let lines = Arrangement::affine(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, -1]]).unwrap();
        let (c, _) = lines.cone(&WeightVector::from_integers(&[1, 1, 1])).unwrap();
        let back = c.decone(0).unwrap();
        assert_eq!(back.normals(), lines.normals());
        assert_eq!(back.constants(), lines.constants());
    }

    #[test]
    fn localization_and_flats() {
        let a = x3();
        let loc = a.localization(&[0, 1, 3]).unwrap();
        assert_eq!(loc.len(), 3);
        assert_eq!(loc.rank(), 2);
        assert_eq!(loc.circuits(), &[vec![0, 1, 2]]);
        assert_eq!(a.localization(&[0, 1]).unwrap_err(), ArrangementError::NotAFlat);
        assert_eq!(a.localization(&[2]).unwrap().len(), 1);
        assert_eq!(a.localization(&(0..6).collect::<Vec<_>>()).unwrap(), a);
        let flats = a.flats(3);
        assert_eq!(flats.iter().filter(|f| f.rank == 1).count(), 6);
        // three triple points and six double points
        assert_eq!(flats.iter().filter(|f| f.rank == 2).count(), 9);
        for f in &flats {
            assert_eq!(a.localization(&f.hyperplanes).unwrap().rank(), f.rank);
        }
    }

    #[test]
    fn direct_sums() {
        let x = Arrangement::central(&[&[1]]).unwrap();
        let s = x.direct_sum(&x).unwrap();
        assert_eq!(s.normals(), Arrangement::central(&[&[1, 0], &[0, 1]]).unwrap().normals());
        let p = pencil3().direct_sum(&x).unwrap();
        assert_eq!((p.len(), p.dim()), (4, 3));
        assert!(!p.is_irreducible().unwrap());
        let pp = pencil3().direct_sum(&pencil3()).unwrap();
        assert_eq!(pp.circuits(), &[vec![0, 1, 2], vec![3, 4, 5]]);
    }
}
