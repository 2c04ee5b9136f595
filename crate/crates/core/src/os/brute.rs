use std::collections::HashMap;

use itertools::Itertools;
use num_traits::{One, Zero};

use crate::arrangement::{Arrangement, WeightVector};
use crate::matrix::Matrix;
use crate::scalar::{int, Rational};

use super::exterior::{boundary, wedge};

/// The Orlik-Solomon algebra as the full exterior algebra on `n` generators
/// modulo the ideal generated by `e_S` (empty intersection) and `de_S`
/// (dependent `S` with nonempty intersection). Works for affine and central
/// arrangements; intended for small `n`.
pub struct ExteriorModel {
    subsets: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
    /// Row basis of the ideal in each degree.
    ideal: Vec<Vec<Vec<Rational>>>,
}

impl ExteriorModel {
    pub fn new(a: &Arrangement) -> Self {
        let n = a.len();
        let top = n.min(a.dim() + 1);
        let subsets: Vec<Vec<Vec<usize>>> = (0..=top)
            .map(|p| (0..n).combinations(p).collect())
            .collect();
        let index: Vec<HashMap<Vec<usize>, usize>> = subsets
            .iter()
            .map(|d| d.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        let mut generators: Vec<Vec<(i32, Vec<usize>)>> = Vec::new();
        for size in 1..=n.min(top + 1) {
            for s in (0..n).combinations(size) {
                if !a.intersects(&s) {
                    generators.push(vec![(1, s)]);
                } else if a.rank_of(&s) < s.len() {
                    generators.push(boundary(&s));
                }
            }
        }
        let mut ideal = Vec::with_capacity(top + 1);
        for p in 0..=top {
            let mut rows: Vec<Vec<Rational>> = Vec::new();
            for g in &generators {
                let k = g[0].1.len();
                if k > p {
                    continue;
                }
                for t in (0..n).combinations(p - k) {
                    let mut v = vec![Rational::zero(); subsets[p].len()];
                    let mut nonzero = false;
                    for (sign, u) in g {
                        if let Some((s2, w)) = wedge(u, &t) {
                            v[index[p][&w]] += int((sign * s2) as i64);
                            nonzero = true;
                        }
                    }
                    if nonzero && v.iter().any(|x| !x.is_zero()) {
                        rows.push(v);
                    }
                }
            }
            let basis = if rows.is_empty() {
                rows
            } else {
                Matrix::from_rows(subsets[p].len(), rows).echelon().rows
            };
            ideal.push(basis);
        }
        ExteriorModel {
            subsets,
            index,
            ideal,
        }
    }

    fn raw_dims(&self) -> Vec<usize> {
        self.subsets
            .iter()
            .zip(&self.ideal)
            .map(|(s, i)| s.len() - i.len())
            .collect()
    }

    fn top(&self) -> usize {
        let dims = self.raw_dims();
        dims.iter().rposition(|&d| d != 0).unwrap_or(0)
    }

    /// `dim A^p` for `p = 0..=top`.
    pub fn dims(&self) -> Vec<usize> {
        let mut d = self.raw_dims();
        d.truncate(self.top() + 1);
        d
    }

    /// Rank of `omega ^ -: A^p -> A^{p+1}` computed upstairs in the exterior
    /// algebra: `rank(I^{p+1} + omega E^p) - rank(I^{p+1})`.
    fn image_rank(&self, w: &[Rational], p: usize) -> usize {
        if p + 1 >= self.subsets.len() {
            return 0;
        }
        let cols = self.subsets[p + 1].len();
        let mut rows = self.ideal[p + 1].clone();
        let base = rows.len();
        for s in &self.subsets[p] {
            let mut v = vec![Rational::zero(); cols];
            for (j, wj) in w.iter().enumerate() {
                if wj.is_zero() {
                    continue;
                }
                if let Some((sign, t)) = wedge(&[j], s) {
                    v[self.index[p + 1][&t]] += wj * int(sign as i64);
                }
            }
            rows.push(v);
        }
        Matrix::from_rows(cols, rows).rank() - base
    }

    pub fn betti(&self, weights: &WeightVector) -> Vec<usize> {
        let dims = self.dims();
        let ranks: Vec<usize> = (0..dims.len().saturating_sub(1))
            .map(|p| self.image_rank(weights.entries(), p))
            .collect();
        super::betti_from_ranks(&dims, &ranks)
    }

    /// Whether `e_S` is zero in the quotient.
    pub fn vanishes(&self, s: &[usize]) -> bool {
        let p = s.len();
        let cols = self.subsets[p].len();
        let mut rows = self.ideal[p].clone();
        let base = rows.len();
        let mut v = vec![Rational::zero(); cols];
        v[self.index[p][s]] = Rational::one();
        rows.push(v);
        Matrix::from_rows(cols, rows).rank() == base
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::os::{aomoto_betti, OsAlgebra};

    #[test]
    fn matches_nbc_dims() {
        let x3 = Arrangement::central(&[
            &[1, 0, 0],
            &[0, 1, 0],
            &[0, 0, 1],
            &[1, 1, 0],
            &[1, 0, 1],
            &[0, 1, 1],
        ])
        .unwrap();
        assert_eq!(ExteriorModel::new(&x3).dims(), OsAlgebra::new(&x3).unwrap().basis().dims());
        let w = WeightVector::from_integers(&[1, 2, 3, -1, -2, -3]);
        assert_eq!(ExteriorModel::new(&x3).betti(&w), aomoto_betti(&x3, &w).unwrap());
    }

    #[test]
    fn affine_parallel_lines() {
        // x = 0 and x = 1 do not meet: e_12 = 0
        let a = Arrangement::affine(&[&[1, 0], &[1, -1]]).unwrap();
        let m = ExteriorModel::new(&a);
        assert_eq!(m.dims(), vec![1, 2]);
        assert!(m.vanishes(&[0, 1]));
    }
}
