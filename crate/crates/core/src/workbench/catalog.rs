use serde::Serialize;

use crate::arrangement::{Arrangement, WeightVector};
use crate::scalar::{int, Rational};

/// Facts about a catalog arrangement that the self test re-derives.
#[derive(Debug, Clone, Default, Serialize)]
pub struct KnownFacts {
    pub free: Option<bool>,
    /// Exponents with the Euler derivation contributing `0`.
    pub exponents: Option<Vec<i64>>,
    /// Poincare polynomial coefficients.
    pub poincare: Option<Vec<u64>>,
    pub minimal_generators: Option<usize>,
    /// Facts carried along without a check.
    pub unverified: Vec<String>,
}

/// Weight parametrization `(alpha, beta, gamma, ...) -> lambda`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Parametrization {
    /// `x1^{r alpha} x2^{r beta} (x1^r - x2^r)^gamma (x1^r - x3^r)^beta (x2^r - x3^r)^alpha`.
    MonomialDeletion { r: u32 },
    /// `x1^{r alpha} x2^{r beta} (x1^r - x3^r)^beta (x2^r - x3^r)^alpha`.
    TameNonfree { r: u32 },
}

impl Parametrization {
    pub fn arity(&self) -> usize {
        match self {
            Parametrization::MonomialDeletion { .. } => 3,
            Parametrization::TameNonfree { .. } => 2,
        }
    }

    pub fn weights(&self, params: &[Rational]) -> Option<WeightVector> {
        if params.len() != self.arity() {
            return None;
        }
        let r = |k: u32| std::iter::repeat_n((), k as usize);
        let mut w = Vec::new();
        match *self {
            Parametrization::MonomialDeletion { r: rr } => {
                let (a, b, g) = (&params[0], &params[1], &params[2]);
                w.push(a * int(rr as i64));
                w.push(b * int(rr as i64));
                w.extend(r(rr).map(|_| g.clone()));
                w.extend(r(rr).map(|_| b.clone()));
                w.extend(r(rr).map(|_| a.clone()));
            }
            Parametrization::TameNonfree { r: rr } => {
                let (a, b) = (&params[0], &params[1]);
                w.push(a * int(rr as i64));
                w.push(b * int(rr as i64));
                w.extend(r(rr).map(|_| b.clone()));
                w.extend(r(rr).map(|_| a.clone()));
            }
        }
        Some(WeightVector::new(w))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub description: String,
    #[serde(skip)]
    pub arrangement: Arrangement,
    pub facts: KnownFacts,
    /// Weights expected to be resonant, checked by the harness.
    pub resonant_weights: Vec<WeightVector>,
    /// Degree bound for derivation searches; `None` uses `2n - l`.
    pub derivation_bound: Option<u32>,
    pub parametrization: Option<Parametrization>,
    /// Only freeness and generic-weight data are computed.
    pub reduced_scope: bool,
}

impl CatalogEntry {
    fn new(name: impl Into<String>, description: impl Into<String>, arrangement: Arrangement) -> Self {
        CatalogEntry {
            name: name.into(),
            description: description.into(),
            arrangement,
            facts: KnownFacts::default(),
            resonant_weights: Vec::new(),
            derivation_bound: None,
            parametrization: None,
            reduced_scope: false,
        }
    }
}

fn ints(rows: &[Vec<i64>]) -> Vec<&[i64]> {
    rows.iter().map(|r| r.as_slice()).collect()
}

/// `x, y` and `x - k y` for `k = 1..n-2`.
pub fn pencil(n: usize) -> Arrangement {
    assert!(n >= 2);
    let mut rows = vec![vec![1, 0], vec![0, 1]];
    for k in 1..n as i64 - 1 {
        rows.push(vec![1, -k]);
    }
    Arrangement::central(&ints(&rows)).expect("distinct lines")
}

pub fn boolean(l: usize) -> Arrangement {
    let rows: Vec<Vec<i64>> = (0..l)
        .map(|i| (0..l).map(|j| i64::from(i == j)).collect())
        .collect();
    Arrangement::central(&ints(&rows)).expect("coordinate hyperplanes")
}

/// `x, y, z, x - y, x - z, y - z`.
pub fn braid3() -> Arrangement {
    Arrangement::central(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, -1, 0], &[1, 0, -1], &[0, 1, -1]])
        .expect("valid")
}

/// `x y z (x + y) (x + z) (y + z)`.
pub fn x3() -> Arrangement {
    Arrangement::central(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 0], &[1, 0, 1], &[0, 1, 1]]).expect("valid")
}

/// Linear factors of `x_i^r - x_j^r` over the rationals, for `r` in {1, 2}.
fn power_difference(i: usize, j: usize, r: u32) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let signs: &[i64] = match r {
        1 => &[-1],
        2 => &[-1, 1],
        _ => panic!("only r = 1, 2 split over the rationals"),
    };
    for &s in signs {
        let mut v = vec![0; 3];
        v[i] = 1;
        v[j] = s;
        out.push(v);
    }
    out
}

/// `x1 x2 (x1^r - x2^r)(x1^r - x3^r)(x2^r - x3^r)`.
pub fn monomial_deletion(r: u32) -> Arrangement {
    let mut rows = vec![vec![1, 0, 0], vec![0, 1, 0]];
    rows.extend(power_difference(0, 1, r));
    rows.extend(power_difference(0, 2, r));
    rows.extend(power_difference(1, 2, r));
    Arrangement::central(&ints(&rows)).expect("valid")
}

/// `x1 x2 (x1^r - x3^r)(x2^r - x3^r)`.
pub fn tame_nonfree(r: u32) -> Arrangement {
    let mut rows = vec![vec![1, 0, 0], vec![0, 1, 0]];
    rows.extend(power_difference(0, 2, r));
    rows.extend(power_difference(1, 2, r));
    Arrangement::central(&ints(&rows)).expect("valid")
}

/// `x1, x2, x3, x_i + x4, x_i + x_j + x4`.
pub fn er9() -> Arrangement {
    Arrangement::central(&[
        &[1, 0, 0, 0],
        &[0, 1, 0, 0],
        &[0, 0, 1, 0],
        &[1, 0, 0, 1],
        &[0, 1, 0, 1],
        &[0, 0, 1, 1],
        &[1, 1, 0, 1],
        &[1, 0, 1, 1],
        &[0, 1, 1, 1],
    ])
    .expect("valid")
}

/// `t_i - z_j` and `t1 - t2` in the variables `t1, t2` for fixed `z1, z2`.
pub fn discriminantal(z: [i64; 2]) -> Arrangement {
    let normals = vec![
        vec![int(1), int(0)],
        vec![int(1), int(0)],
        vec![int(0), int(1)],
        vec![int(0), int(1)],
        vec![int(1), int(-1)],
    ];
    let constants = vec![int(-z[0]), int(-z[1]), int(-z[0]), int(-z[1]), int(0)];
    Arrangement::with_names(vec!["t1".into(), "t2".into()], normals, Some(constants)).expect("valid")
}

/// Lines `x + k y + k^2 = 0`, `k = 1..=count`: no two parallel, no three
/// concurrent.
pub fn generic_lines(count: usize) -> Arrangement {
    let rows: Vec<Vec<i64>> = (1..=count as i64).map(|k| vec![1, k, k * k]).collect();
    Arrangement::affine(&ints(&rows)).expect("valid")
}

fn one_hot_resonance(n: usize, triple: [usize; 3]) -> WeightVector {
    let mut w = vec![0; n];
    w[triple[0]] = 1;
    w[triple[1]] = 1;
    w[triple[2]] = -2;
    WeightVector::from_integers(&w)
}

/// The shipped catalog.
pub fn catalog() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for n in 3..=6usize {
        let mut e = CatalogEntry::new(format!("pencil-{n}"), format!("{n} lines through the origin of the plane"), pencil(n));
        e.facts.free = Some(true);
        e.facts.exponents = Some(vec![0, n as i64 - 2]);
        e.facts.poincare = Some(vec![1, n as u64, n as u64 - 1]);
        e.facts.minimal_generators = Some(2);
        let mut w = vec![1i64; n];
        w[n - 1] = -(n as i64 - 1);
        e.resonant_weights.push(WeightVector::from_integers(&w));
        out.push(e);
    }
    for l in [2usize, 3] {
        let mut e = CatalogEntry::new(format!("boolean-{l}"), format!("coordinate hyperplanes of {l}-space"), boolean(l));
        e.facts.free = Some(true);
        e.facts.exponents = Some(vec![0; l]);
        e.facts.poincare = Some((0..=l).map(|k| crate::poly::binomial(l as u64, k as u64)).collect());
        e.resonant_weights.push(WeightVector::zero(l));
        out.push(e);
    }
    {
        let mut e = CatalogEntry::new("braid-3", "x, y, z, x - y, x - z, y - z (supersolvable)", braid3());
        e.facts.free = Some(true);
        e.facts.exponents = Some(vec![0, 1, 2]);
        e.facts.poincare = Some(vec![1, 6, 11, 6]);
        e.resonant_weights.push(one_hot_resonance(6, [0, 1, 3]));
        e.resonant_weights.push(WeightVector::from_integers(&[1, 1, 1, -1, -1, -1]));
        out.push(e);
    }
    {
        let mut e = CatalogEntry::new("x3", "xyz(x + y)(x + z)(y + z)", x3());
        e.facts.free = Some(false);
        e.facts.poincare = Some(vec![1, 6, 12, 7]);
        e.facts.minimal_generators = Some(4);
        e.resonant_weights.push(one_hot_resonance(6, [0, 1, 3]));
        e.resonant_weights.push(WeightVector::from_integers(&[1, 2, 3, -1, -2, -3]));
        out.push(e);
    }
    for r in [1u32, 2] {
        let mut e = CatalogEntry::new(
            format!("monomial-deletion-{r}"),
            format!("x1 x2 (x1^{r} - x2^{r})(x1^{r} - x3^{r})(x2^{r} - x3^{r})"),
            monomial_deletion(r),
        );
        e.facts.free = Some(true);
        e.facts.exponents = Some(vec![0, r as i64, 2 * r as i64 - 1]);
        let p = Parametrization::MonomialDeletion { r };
        e.parametrization = Some(p);
        // alpha + beta = 0, gamma = 0 and 2 alpha + 2 beta + gamma = 0
        e.resonant_weights.push(p.weights(&[int(1), int(-1), int(0)]).expect("arity"));
        e.resonant_weights.push(p.weights(&[int(1), int(1), int(-4)]).expect("arity"));
        out.push(e);
    }
    {
        let mut e = CatalogEntry::new("tame-nonfree-2", "x1 x2 (x1^2 - x3^2)(x2^2 - x3^2)", tame_nonfree(2));
        e.facts.free = Some(false);
        e.facts.unverified.push("tame (rank 3)".into());
        let p = Parametrization::TameNonfree { r: 2 };
        e.parametrization = Some(p);
        e.resonant_weights.push(p.weights(&[int(1), int(-1)]).expect("arity"));
        out.push(e);
    }
    {
        let mut e = CatalogEntry::new("er9", "x1, x2, x3, x_i + x4, x_i + x_j + x4", er9());
        e.facts.free = Some(false);
        e.facts.poincare = Some(vec![1, 9, 30, 42, 20]);
        e.facts.unverified.push("not tame: pd S/I = 5 while codim = 4".into());
        e.facts.unverified.push("the logarithmic complex is exact".into());
        e.derivation_bound = Some(7);
        e.reduced_scope = true;
        e.resonant_weights.push(one_hot_resonance(9, [0, 4, 6]));
        out.push(e);
    }
    {
        let mut e = CatalogEntry::new(
            "discriminantal",
            "t_i - z_j and t1 - t2 for z = (0, 3) (affine)",
            discriminantal([0, 3]),
        );
        e.facts.poincare = Some(vec![1, 5, 6]);
        e.resonant_weights.push(one_hot_resonance(5, [0, 2, 4]));
        out.push(e);
    }
    for k in [3usize, 4, 5] {
        let mut e = CatalogEntry::new(format!("generic-lines-{k}"), format!("{k} affine lines in general position"), generic_lines(k));
        let kk = k as u64;
        e.facts.poincare = Some(vec![1, kk, kk * (kk - 1) / 2]);
        out.push(e);
    }
    out
}

pub fn lookup(name: &str) -> Option<CatalogEntry> {
    catalog().into_iter().find(|e| e.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique() {
        let c = catalog();
        let mut names: Vec<&str> = c.iter().map(|e| e.name.as_str()).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), c.len());
    }

    #[test]
    fn shapes() {
        assert_eq!(monomial_deletion(2).len(), 8);
        assert_eq!(tame_nonfree(2).len(), 6);
        assert_eq!(er9().len(), 9);
        assert!(!discriminantal([0, 3]).is_central());
        assert_eq!(lookup("pencil-5").unwrap().facts.exponents, Some(vec![0, 3]));
        assert_eq!(lookup("x3").unwrap().facts.free, Some(false));
    }

    #[test]
    fn parametrized_weights() {
        let p = Parametrization::MonomialDeletion { r: 2 };
        let w = p.weights(&[int(1), int(2), int(3)]).unwrap();
        assert_eq!(w, WeightVector::from_integers(&[2, 4, 3, 3, 2, 2, 1, 1]));
        assert_eq!(w.sum(), int(2 * (2 + 4 + 3)));
        assert!(p.weights(&[int(1)]).is_none());
    }
}
