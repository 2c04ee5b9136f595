//! Orlik-Solomon algebras, Aomoto complexes and resonance.

mod algebra;
mod brute;
mod exterior;

use num_traits::Zero;
use serde::Serialize;

use crate::arrangement::{Arrangement, WeightVector};
use crate::error::ArrangementError;
use crate::RationalMatrix;

pub use algebra::{Combination, NbcBasis, OsAlgebra};
pub use brute::ExteriorModel;
pub use exterior::{boundary, wedge};

/// `(A(A), omega_lambda ^ -)` in NBC coordinates.
pub struct AomotoComplex {
    weights: WeightVector,
    dims: Vec<usize>,
    matrices: Vec<RationalMatrix>,
}

impl AomotoComplex {
    pub fn new(os: &OsAlgebra, weights: &WeightVector) -> Self {
        let dims = os.basis().dims();
        let top = dims.len() - 1;
        let matrices = (0..top)
            .map(|p| os.multiplication_matrix(weights.entries(), p))
            .collect();
        AomotoComplex {
            weights: weights.clone(),
            dims,
            matrices,
        }
    }

    pub fn weights(&self) -> &WeightVector {
        &self.weights
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Map from degree `p` to `p + 1`.
    pub fn matrix(&self, p: usize) -> &RationalMatrix {
        &self.matrices[p]
    }

    /// `M_{p+1} M_p = 0` for every `p`.
    pub fn squares_to_zero(&self) -> bool {
        self.matrices
            .windows(2)
            .all(|w| w[1].mul(&w[0]).is_zero())
    }

    /// `dim H^p` for `p = 0..=top`.
    pub fn betti(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.matrices.iter().map(|m| m.rank()).collect();
        betti_from_ranks(&self.dims, &ranks)
    }
}

pub fn betti_from_ranks(dims: &[usize], ranks: &[usize]) -> Vec<usize> {
    (0..dims.len())
        .map(|p| {
            let out = ranks.get(p).copied().unwrap_or(0);
            let inc = if p == 0 { 0 } else { ranks[p - 1] };
            dims[p] - out - inc
        })
        .collect()
}

/// Betti numbers of the Aomoto complex of a central arrangement, or of an
/// affine one (through the exterior-algebra model).
pub fn aomoto_betti(a: &Arrangement, weights: &WeightVector) -> Result<Vec<usize>, ArrangementError> {
    a.check_weights(weights)?;
    if a.is_central() {
        let os = OsAlgebra::new(a)?;
        Ok(AomotoComplex::new(&os, weights).betti())
    } else {
        Ok(ExteriorModel::new(a).betti(weights))
    }
}

/// Least resonant degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Resonance {
    pub betti: Vec<usize>,
    /// Least `p < top` with `H^p != 0`; `None` when nonresonant.
    pub least_p: Option<usize>,
    /// `dim H^top`, reported separately.
    pub top_dim: usize,
}

impl Resonance {
    pub fn from_betti(betti: Vec<usize>) -> Self {
        let top = betti.len() - 1;
        let least_p = (0..top).find(|&p| betti[p] != 0);
        let top_dim = betti[top];
        Resonance {
            betti,
            least_p,
            top_dim,
        }
    }

    pub fn is_resonant(&self) -> bool {
        self.least_p.is_some()
    }
}

pub fn resonance_least_p(a: &Arrangement, weights: &WeightVector) -> Result<Resonance, ArrangementError> {
    Ok(Resonance::from_betti(aomoto_betti(a, weights)?))
}

/// Poincare polynomial `sum dim A^p t^p` and `|chi(M)| = |pi(-1)|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Poincare {
    pub coefficients: Vec<u64>,
    pub euler_abs: u64,
}

impl Poincare {
    fn from_coefficients(coefficients: Vec<u64>) -> Self {
        let chi: i128 = coefficients
            .iter()
            .enumerate()
            .map(|(p, &c)| if p % 2 == 0 { c as i128 } else { -(c as i128) })
            .sum();
        Poincare {
            coefficients,
            euler_abs: chi.unsigned_abs() as u64,
        }
    }

    pub fn evaluate(&self, t: i64) -> i128 {
        self.coefficients
            .iter()
            .rev()
            .fold(0i128, |acc, &c| acc * t as i128 + c as i128)
    }
}

/// Poincare polynomial. Affine arrangements go through the cone:
/// `pi(cA, t) = (1 + t) pi(A, t)`.
pub fn poincare_and_euler(a: &Arrangement) -> Result<Poincare, ArrangementError> {
    if a.is_central() {
        let dims = OsAlgebra::new(a)?.basis().dims();
        return Ok(Poincare::from_coefficients(dims.iter().map(|&d| d as u64).collect()));
    }
    let (cone, _) = a.cone(&WeightVector::zero(a.len()))?;
    let pc: Vec<i128> = OsAlgebra::new(&cone)?
        .basis()
        .dims()
        .iter()
        .map(|&d| d as i128)
        .collect();
    // synthetic division by (1 + t)
    let mut q = vec![0i128; pc.len() - 1];
    let mut carry = 0i128;
    for p in 0..q.len() {
        q[p] = pc[p] - carry;
        carry = q[p];
    }
    debug_assert_eq!(pc[pc.len() - 1], carry);
    while q.len() > 1 && *q.last().expect("nonempty") == 0 {
        q.pop();
    }
    Ok(Poincare::from_coefficients(q.into_iter().map(|c| c as u64).collect()))
}

/// For affine `A`: `b_p(cA, lambda') = b_p(A, lambda) + b_{p-1}(A, lambda)`.
pub fn cone_betti_relation_check(a: &Arrangement, weights: &WeightVector) -> Result<bool, ArrangementError> {
    let (cone, w) = a.cone(weights)?;
    let affine = aomoto_betti(a, weights)?;
    let coned = aomoto_betti(&cone, &w)?;
    let get = |p: isize| -> usize {
        if p < 0 {
            0
        } else {
            affine.get(p as usize).copied().unwrap_or(0)
        }
    };
    Ok((0..coned.len().max(affine.len() + 1)).all(|p| {
        coned.get(p).copied().unwrap_or(0) == get(p as isize) + get(p as isize - 1)
    }))
}

/// `sum_p (-1)^p dim H^p`.
pub fn alternating_sum(values: &[usize]) -> i64 {
    values
        .iter()
        .enumerate()
        .map(|(p, &v)| if p % 2 == 0 { v as i64 } else { -(v as i64) })
        .sum()
}

/// Whether `lambda` is zero.
pub fn is_trivial(weights: &WeightVector) -> bool {
    weights.entries().iter().all(|v| v.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pencil3() -> Arrangement {
        Arrangement::central(&[&[1, 0], &[0, 1], &[1, -1]]).unwrap()
    }

    #[test]
    fn pencil_betti() {
        let a = pencil3();
        let b = aomoto_betti(&a, &WeightVector::from_integers(&[1, 1, -2])).unwrap();
        assert_eq!(b, vec![0, 1, 1]);
        assert_eq!(aomoto_betti(&a, &WeightVector::from_integers(&[1, 1, 1])).unwrap(), vec![0, 0, 0]);
        assert_eq!(aomoto_betti(&a, &WeightVector::zero(3)).unwrap(), vec![1, 3, 2]);
        let r = resonance_least_p(&a, &WeightVector::from_integers(&[1, 1, -2])).unwrap();
        assert_eq!(r.least_p, Some(1));
        let r = resonance_least_p(&a, &WeightVector::from_integers(&[1, 1, 1])).unwrap();
        assert_eq!((r.least_p, r.top_dim), (None, 0));
    }

    #[test]
    fn kernel_matches_h1() {
        let os = OsAlgebra::new(&pencil3()).unwrap();
        let c = AomotoComplex::new(&os, &WeightVector::from_integers(&[1, 1, -2]));
        assert!(c.squares_to_zero());
        let kernel = c.matrix(1).nullspace().len();
        let image = c.matrix(0).rank();
        assert_eq!(kernel - image, 1);
    }

    #[test]
    fn poincare_polynomials() {
        let b2 = Arrangement::central(&[&[1, 0], &[0, 1]]).unwrap();
        let p = poincare_and_euler(&b2).unwrap();
        assert_eq!((p.coefficients.clone(), p.euler_abs), (vec![1, 2, 1], 0));
        let lines = Arrangement::affine(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, -1]]).unwrap();
        let p = poincare_and_euler(&lines).unwrap();
        assert_eq!((p.coefficients.clone(), p.euler_abs), (vec![1, 3, 3], 1));
        assert_eq!(poincare_and_euler(&pencil3()).unwrap().evaluate(-1), 0);
    }

    #[test]
    fn cone_relation() {
        let lines = Arrangement::affine(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, -1]]).unwrap();
        let w = WeightVector::from_integers(&[2, 3, 7]);
        assert_eq!(aomoto_betti(&lines, &w).unwrap(), vec![0, 0, 1]);
        assert!(cone_betti_relation_check(&lines, &w).unwrap());
        let one = Arrangement::affine(&[&[1, -1]]).unwrap();
        assert!(cone_betti_relation_check(&one, &WeightVector::from_integers(&[3])).unwrap());
    }
}
