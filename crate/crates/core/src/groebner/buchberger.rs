use std::collections::{BTreeSet, HashSet};

use crate::error::GroebnerError;
use crate::poly::{Monomial, Polynomial, RingRef};
use crate::scalar::Field;

/// Cap on the number of S-pairs reduced in one Gröbner computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_pairs: u64,
}

impl Budget {
    pub const DEFAULT_PAIRS: u64 = 200_000;

    pub fn new(max_pairs: u64) -> Self {
        Budget { max_pairs }
    }

    /// `WORKBENCH_BUDGET` if set and valid, otherwise the default.
    pub fn from_env() -> Self {
        std::env::var("WORKBENCH_BUDGET")
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(Budget::new)
            .unwrap_or_default()
    }

    pub fn unlimited() -> Self {
        Budget { max_pairs: u64::MAX }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(Self::DEFAULT_PAIRS)
    }
}

/// Reduced Gröbner basis with respect to the term order of its ring.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    ring: RingRef,
    basis: Vec<Polynomial<F>>,
    pairs_reduced: u64,
}

impl<F: Field> PartialEq for GroebnerBasis<F> {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis
    }
}

impl<F: Field> GroebnerBasis<F> {
    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    /// Monic elements sorted by increasing leading monomial.
    pub fn elements(&self) -> &[Polynomial<F>] {
        &self.basis
    }

    pub fn into_elements(self) -> Vec<Polynomial<F>> {
        self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn pairs_reduced(&self) -> u64 {
        self.pairs_reduced
    }

    pub fn leading_monomials(&self) -> Vec<&Monomial> {
        self.basis.iter().filter_map(|g| g.leading_monomial()).collect()
    }

    /// The ideal is the whole ring.
    pub fn is_unit_ideal(&self) -> bool {
        self.basis.iter().any(|g| g.is_unit())
    }

    pub fn reduce(&self, p: &Polynomial<F>) -> Polynomial<F> {
        reduce_full(p, &self.basis)
    }

    pub fn contains(&self, p: &Polynomial<F>) -> bool {
        self.reduce(p).is_zero()
    }
}

/// Full reduction of `p` by `divisors` (tail included).
pub fn reduce_full<F: Field>(p: &Polynomial<F>, divisors: &[Polynomial<F>]) -> Polynomial<F> {
    let mut p = p.clone();
    let mut pos = 0;
    while pos < p.len() {
        let (m, c) = p.terms()[pos].clone();
        let hit = divisors
            .iter()
            .find(|g| g.leading_monomial().map(|lm| lm.divides(&m)).unwrap_or(false));
        match hit {
            Some(g) => {
                let (lm, lc) = g.leading_term().expect("nonzero divisor");
                let coef = -(c / lc.clone());
                let shift = lm.quotient_of(&m);
                p = p.add_scaled_shifted(g, &coef, Some(&shift));
            }
            None => pos += 1,
        }
    }
    p
}

/// Reduce only until the leading term is irreducible.
fn reduce_top<F: Field>(p: &Polynomial<F>, divisors: &[Polynomial<F>]) -> Polynomial<F> {
    let mut p = p.clone();
    loop {
        let Some((m, c)) = p.leading_term().cloned() else {
            return p;
        };
        let hit = divisors
            .iter()
            .find(|g| g.leading_monomial().map(|lm| lm.divides(&m)).unwrap_or(false));
        match hit {
            Some(g) => {
                let (lm, lc) = g.leading_term().expect("nonzero divisor");
                let coef = -(c / lc.clone());
                let shift = lm.quotient_of(&m);
                p = p.add_scaled_shifted(g, &coef, Some(&shift));
            }
            None => return p,
        }
    }
}

fn s_polynomial<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>) -> Polynomial<F> {
    let (mf, cf) = f.leading_term().expect("nonzero");
    let (mg, cg) = g.leading_term().expect("nonzero");
    let l = mf.lcm(mg);
    let a = f.mul_monomial(&mf.quotient_of(&l), &cg.clone());
    a.add_scaled_shifted(g, &-cf.clone(), Some(&mg.quotient_of(&l)))
}

#[derive(PartialEq, Eq, PartialOrd, Ord, Clone, Copy, Hash)]
struct PairKey(usize, usize);

/// Buchberger's algorithm with the normal selection strategy and both of
/// Buchberger's criteria. Generators must share a ring; zero generators are
/// ignored. The result is deterministic for a given generator order.
pub fn buchberger<F: Field>(
    ring: &RingRef,
    generators: &[Polynomial<F>],
    budget: Budget,
) -> Result<GroebnerBasis<F>, GroebnerError> {
    for g in generators {
        if !crate::poly::Ring::same(g.ring(), ring) {
            return Err(GroebnerError::Poly(crate::error::PolyError::RingMismatch));
        }
    }
    let mut basis: Vec<Polynomial<F>> = Vec::new();
    let mut pending: BTreeSet<(PairOrder, PairKey)> = BTreeSet::new();
    let mut pending_keys: HashSet<PairKey> = HashSet::new();
    let mut pairs_reduced = 0u64;

    // seed with inter-reduced, monic generators
    let mut seeds: Vec<Polynomial<F>> = generators.iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    seeds.sort_by(|a, b| ring.compare(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    for g in seeds {
        let h = reduce_top(&g, &basis);
        if h.is_zero() {
            continue;
        }
        if h.is_unit() {
            return Ok(unit_basis(ring, pairs_reduced));
        }
        add_element(ring, h.monic(), &mut basis, &mut pending, &mut pending_keys);
    }

    while let Some((_, key)) = pending.pop_first() {
        pending_keys.remove(&key);
        let PairKey(i, j) = key;
        let li = basis[i].leading_monomial().unwrap().clone();
        let lj = basis[j].leading_monomial().unwrap().clone();
        if li.is_coprime(&lj) {
            continue;
        }
        let l = li.lcm(&lj);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].leading_monomial().unwrap().divides(&l)
                && !pending_keys.contains(&ordered(i, k))
                && !pending_keys.contains(&ordered(j, k))
        });
        if chain {
            continue;
        }
        pairs_reduced += 1;
        if pairs_reduced > budget.max_pairs {
            return Err(GroebnerError::BudgetExceeded(budget.max_pairs));
        }
        let s = s_polynomial(&basis[i], &basis[j]);
        let h = reduce_top(&s, &basis);
        if h.is_zero() {
            continue;
        }
        if h.is_unit() {
            return Ok(unit_basis(ring, pairs_reduced));
        }
        add_element(ring, h.monic(), &mut basis, &mut pending, &mut pending_keys);
    }

    Ok(GroebnerBasis {
        ring: ring.clone(),
        basis: interreduce(ring, basis),
        pairs_reduced,
    })
}

fn ordered(a: usize, b: usize) -> PairKey {
    if a < b {
        PairKey(a, b)
    } else {
        PairKey(b, a)
    }
}

/// Sort key for the normal strategy: smallest lcm first, ties by insertion.
#[derive(Clone, PartialEq, Eq)]
struct PairOrder {
    ring: RingRef,
    lcm: Monomial,
}

impl PartialOrd for PairOrder {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PairOrder {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.ring.compare(&self.lcm, &other.lcm)
    }
}

fn add_element<F: Field>(
    ring: &RingRef,
    h: Polynomial<F>,
    basis: &mut Vec<Polynomial<F>>,
    pending: &mut BTreeSet<(PairOrder, PairKey)>,
    pending_keys: &mut HashSet<PairKey>,
) {
    let k = basis.len();
    let lh = h.leading_monomial().unwrap().clone();
    for (i, g) in basis.iter().enumerate() {
        let li = g.leading_monomial().unwrap();
        let key = PairKey(i, k);
        pending.insert((
            PairOrder {
                ring: ring.clone(),
                lcm: li.lcm(&lh),
            },
            key,
        ));
        pending_keys.insert(key);
    }
    basis.push(h);
}

fn unit_basis<F: Field>(ring: &RingRef, pairs_reduced: u64) -> GroebnerBasis<F> {
    GroebnerBasis {
        ring: ring.clone(),
        basis: vec![Polynomial::one(ring)],
        pairs_reduced,
    }
}

fn interreduce<F: Field>(ring: &RingRef, candidates: Vec<Polynomial<F>>) -> Vec<Polynomial<F>> {
    let mut minimal: Vec<Polynomial<F>> = Vec::new();
    for (i, g) in candidates.iter().enumerate() {
        let lg = g.leading_monomial().unwrap();
        let redundant = candidates.iter().enumerate().any(|(j, h)| {
            let lh = h.leading_monomial().unwrap();
            j != i && lh.divides(lg) && (lh != lg || j < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    minimal.sort_by(|a, b| ring.compare(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Polynomial<F>> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let (lm, lc) = minimal[i].leading_term().unwrap().clone();
        // leading term is irreducible by minimality; reduce the tail
        let tail = Polynomial::from_terms(ring, minimal[i].terms()[1..].to_vec());
        let tail = reduce_full(&tail, &others);
        let g = Polynomial::monomial(ring, lm, lc).add_scaled(&tail, &F::one());
        reduced.push(g.monic());
    }
    reduced
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, Ring};
    use crate::scalar::Rational;

    fn gb(names: &[&str], gens: &[&str]) -> GroebnerBasis<Rational> {
        let r = Ring::grevlex(names);
        let g: Vec<_> = gens.iter().map(|s| parse_polynomial(&r, s).unwrap()).collect();
        buchberger(&r, &g, Budget::default()).unwrap()
    }

    #[test]
    fn monomial_generators() {
        let b = gb(&["x", "y"], &["x", "y"]);
        let s: Vec<String> = b.elements().iter().map(|p| p.to_string()).collect();
        assert_eq!(s, vec!["y", "x"]);
    }

    #[test]
    fn idempotent_on_output() {
        let b = gb(&["x", "y"], &["x^2 - y", "y^2 - x"]);
        let again = buchberger(b.ring(), b.elements(), Budget::default()).unwrap();
        assert_eq!(b, again);
    }

    #[test]
    fn inputs_reduce_to_zero() {
        let r = Ring::grevlex(&["x", "y", "z"]);
        let gens: Vec<_> = ["x*y - z^2", "y*z - x^2", "x*z - y^2 + z"]
            .iter()
            .map(|s| parse_polynomial(&r, s).unwrap())
            .collect();
        let b = buchberger(&r, &gens, Budget::default()).unwrap();
        for g in &gens {
            assert!(b.contains(g));
        }
        // every S-polynomial reduces to zero
        for i in 0..b.len() {
            for j in i + 1..b.len() {
                let s = s_polynomial(&b.elements()[i], &b.elements()[j]);
                assert!(b.reduce(&s).is_zero());
            }
        }
    }

    #[test]
    fn unit_ideal_detected() {
        let b = gb(&["x", "y"], &["x*y - 1", "x"]);
        assert!(b.is_unit_ideal());
    }

    #[test]
    fn budget_is_enforced() {
        let r = Ring::grevlex(&["x", "y", "z"]);
        let gens: Vec<_> = ["x^2*y - z^2 + 1", "x*y^2 - x*z", "x*y*z - y + z"]
            .iter()
            .map(|s| parse_polynomial(&r, s).unwrap())
            .collect();
        let res = buchberger(&r, &gens, Budget::new(1));
        assert_eq!(res.unwrap_err(), GroebnerError::BudgetExceeded(1));
    }
}
