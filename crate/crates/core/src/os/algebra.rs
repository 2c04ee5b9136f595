use std::collections::HashMap;
use std::sync::Mutex;

use num_traits::{One, Zero};

use crate::arrangement::Arrangement;
use crate::error::ArrangementError;
use crate::scalar::{int, Rational};

use super::exterior::wedge;

/// Sparse combination of basis elements of one degree.
pub type Combination = Vec<(usize, Rational)>;

/// NBC basis of the Orlik-Solomon algebra, by degree. Every set is sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NbcBasis {
    degrees: Vec<Vec<Vec<usize>>>,
}

impl NbcBasis {
    pub fn degree(&self, p: usize) -> &[Vec<usize>] {
        self.degrees.get(p).map_or(&[], |v| v.as_slice())
    }

    /// `dim A^p` for `p = 0..=rank`.
    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.len()).collect()
    }

    pub fn top_degree(&self) -> usize {
        self.degrees.len() - 1
    }
}

/// The Orlik-Solomon algebra of a central arrangement in its NBC model.
/// Products are straightened with the circuit relations `de_C = 0`.
pub struct OsAlgebra {
    n: usize,
    circuits: Vec<Vec<usize>>,
    basis: NbcBasis,
    index: Vec<HashMap<Vec<usize>, usize>>,
    independent: Mutex<HashMap<u64, bool>>,
    vectors: Vec<Vec<Rational>>,
}

impl OsAlgebra {
    pub fn new(a: &Arrangement) -> Result<Self, ArrangementError> {
        if !a.is_central() {
            return Err(ArrangementError::NotCentral);
        }
        let n = a.len();
        let circuits = a.circuits().to_vec();
        let broken: Vec<Vec<usize>> = circuits.iter().map(|c| c[1..].to_vec()).collect();
        let mut alg = OsAlgebra {
            n,
            circuits,
            basis: NbcBasis { degrees: vec![] },
            index: vec![],
            independent: Mutex::new(HashMap::new()),
            vectors: a.normals().to_vec(),
        };
        let rank = a.rank();
        let mut degrees: Vec<Vec<Vec<usize>>> = vec![vec![vec![]]];
        for p in 1..=rank {
            let mut layer = Vec::new();
            for s in &degrees[p - 1] {
                let start = s.last().map_or(0, |&l| l + 1);
                for j in start..n {
                    let mut t = s.clone();
                    t.push(j);
                    if broken.iter().any(|b| contains_all(&t, b)) {
                        continue;
                    }
                    if alg.is_independent(&t) {
                        layer.push(t);
                    }
                }
            }
            degrees.push(layer);
        }
        alg.index = degrees
            .iter()
            .map(|d| d.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        alg.basis = NbcBasis { degrees };
        Ok(alg)
    }

    pub fn basis(&self) -> &NbcBasis {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    fn is_independent(&self, s: &[usize]) -> bool {
        let mask = s.iter().fold(0u64, |m, &i| m | (1 << i));
        if let Some(&v) = self.independent.lock().expect("poisoned").get(&mask) {
            return v;
        }
        let rows = s.iter().map(|&i| self.vectors[i].clone()).collect::<Vec<_>>();
        let cols = self.vectors.first().map_or(0, |v| v.len());
        let v = crate::matrix::Matrix::from_rows(cols, rows).rank() == s.len();
        self.independent.lock().expect("poisoned").insert(mask, v);
        v
    }

    /// Expresses `e_T` (any sorted set) in the NBC basis of degree `|T|`.
    pub fn express(&self, t: &[usize]) -> Combination {
        let mut memo = HashMap::new();
        let map = self.express_memo(t, &mut memo);
        to_combination(&map)
    }

    fn express_memo(
        &self,
        t: &[usize],
        memo: &mut HashMap<Vec<usize>, HashMap<usize, Rational>>,
    ) -> HashMap<usize, Rational> {
        if let Some(v) = memo.get(t) {
            return v.clone();
        }
        let p = t.len();
        let mut out: HashMap<usize, Rational> = HashMap::new();
        if p < self.index.len() && self.is_independent(t) {
            if let Some(&i) = self.index[p].get(t) {
                out.insert(i, Rational::one());
            } else {
                let c = self
                    .circuits
                    .iter()
                    .find(|c| contains_all(t, &c[1..]))
                    .expect("independent non-NBC set contains a broken circuit");
                let b = &c[1..];
                let rest: Vec<usize> = t.iter().copied().filter(|i| !b.contains(i)).collect();
                let (s0, _) = wedge(b, &rest).expect("disjoint");
                // e_B = -sum_{k>=1} (-1)^k e_{C \ c_k}
                for k in 1..c.len() {
                    let mut ck: Vec<usize> = c.clone();
                    ck.remove(k);
                    let Some((s1, u)) = wedge(&ck, &rest) else { continue };
                    let sign = s0 * s1 * if k % 2 == 0 { -1 } else { 1 };
                    let sub = self.express_memo(&u, memo);
                    for (idx, v) in sub {
                        let e = out.entry(idx).or_insert_with(Rational::zero);
                        *e += v * int(sign as i64);
                    }
                }
                out.retain(|_, v| !v.is_zero());
            }
        }
        memo.insert(t.to_vec(), out.clone());
        out
    }

    /// `e_j ^ e_S` for an NBC set `S`, in the NBC basis of degree `|S| + 1`.
    pub fn product_with_generator(&self, j: usize, s: &[usize]) -> Combination {
        match wedge(&[j], s) {
            None => Vec::new(),
            Some((sign, t)) => self
                .express(&t)
                .into_iter()
                .map(|(i, v)| (i, v * int(sign as i64)))
                .collect(),
        }
    }

    /// Matrix of `omega ^ -` from degree `p` to `p + 1` in NBC coordinates,
    /// where `omega = sum_j w_j e_j`.
    pub fn multiplication_matrix(&self, w: &[Rational], p: usize) -> crate::RationalMatrix {
        let src = self.basis.degree(p);
        let dst = self.basis.degree(p + 1);
        let mut m = crate::RationalMatrix::zeros(dst.len(), src.len());
        let mut memo = HashMap::new();
        for (col, s) in src.iter().enumerate() {
            let mut acc: HashMap<usize, Rational> = HashMap::new();
            for (j, wj) in w.iter().enumerate() {
                if wj.is_zero() {
                    continue;
                }
                let Some((sign, t)) = wedge(&[j], s) else { continue };
                for (idx, v) in self.express_memo(&t, &mut memo) {
                    let e = acc.entry(idx).or_insert_with(Rational::zero);
                    *e += v * wj * int(sign as i64);
                }
            }
            for (row, v) in acc {
                m.set(row, col, v);
            }
        }
        m
    }
}

fn contains_all(haystack: &[usize], needles: &[usize]) -> bool {
    needles.iter().all(|x| haystack.binary_search(x).is_ok())
}

fn to_combination(map: &HashMap<usize, Rational>) -> Combination {
    let mut v: Combination = map
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(&i, c)| (i, c.clone()))
        .collect();
    v.sort_by_key(|(i, _)| *i);
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pencil3() -> Arrangement {
        Arrangement::central(&[&[1, 0], &[0, 1], &[1, -1]]).unwrap()
    }

    #[test]
    fn nbc_sizes() {
        assert_eq!(OsAlgebra::new(&pencil3()).unwrap().basis().dims(), vec![1, 3, 2]);
        let b2 = Arrangement::central(&[&[1, 0], &[0, 1]]).unwrap();
        assert_eq!(OsAlgebra::new(&b2).unwrap().basis().dims(), vec![1, 2, 1]);
        let x3 = Arrangement::central(&[
            &[1, 0, 0],
            &[0, 1, 0],
            &[0, 0, 1],
            &[1, 1, 0],
            &[1, 0, 1],
            &[0, 1, 1],
        ])
        .unwrap();
        assert_eq!(OsAlgebra::new(&x3).unwrap().basis().dims(), vec![1, 6, 12, 7]);
    }

    #[test]
    fn products() {
        let b2 = Arrangement::central(&[&[1, 0], &[0, 1]]).unwrap();
        let alg = OsAlgebra::new(&b2).unwrap();
        assert_eq!(alg.product_with_generator(0, &[1]), vec![(0, Rational::one())]);
        assert!(alg.product_with_generator(0, &[0]).is_empty());
        // de_123 = e23 - e13 + e12 = 0 gives e3 ^ e2 = e12 - e13
        let alg = OsAlgebra::new(&pencil3()).unwrap();
        assert_eq!(alg.basis().degree(2), &[vec![0, 1], vec![0, 2]]);
        let prod = alg.product_with_generator(2, &[1]);
        assert_eq!(prod, vec![(0, int(1)), (1, int(-1))]);
    }
}
