use critset::arrangement::{Arrangement, WeightVector};
use critset::os::{aomoto_betti, ExteriorModel};
use critset::poly::{Monomial, Ring, RingRef};
use critset::scalar::int;
use critset::{Poly, RationalMatrix};
use proptest::prelude::*;

fn ring() -> RingRef {
    Ring::indexed("x", 3)
}

fn poly_strategy() -> impl Strategy<Value = Poly> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), -5i64..=5), 0..5).prop_map(|terms| {
        let r = ring();
        let terms = terms
            .into_iter()
            .map(|((a, b, c), k)| (Monomial::new(vec![a, b, c]), int(k)))
            .collect();
        Poly::from_terms(&r, terms)
    })
}

fn add(a: &Poly, b: &Poly) -> Poly {
    a.try_add(b).unwrap()
}

fn mul(a: &Poly, b: &Poly) -> Poly {
    a.try_mul(b).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(f in poly_strategy(), g in poly_strategy(), h in poly_strategy()) {
        prop_assert_eq!(add(&f, &g), add(&g, &f));
        prop_assert_eq!(mul(&f, &g), mul(&g, &f));
        prop_assert_eq!(mul(&mul(&f, &g), &h), mul(&f, &mul(&g, &h)));
        prop_assert_eq!(mul(&f, &add(&g, &h)), add(&mul(&f, &g), &mul(&f, &h)));
        prop_assert!(f.try_sub(&f).unwrap().is_zero());
    }

    #[test]
    fn leibniz(f in poly_strategy(), g in poly_strategy(), v in 0usize..3) {
        let lhs = mul(&f, &g).partial_derivative(v).unwrap();
        let rhs = add(
            &mul(&f.partial_derivative(v).unwrap(), &g),
            &mul(&f, &g.partial_derivative(v).unwrap()),
        );
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn exact_division_recovers_factor(f in poly_strategy(), g in poly_strategy()) {
        prop_assume!(!g.is_zero());
        let q = mul(&f, &g).exact_divide(&g).unwrap();
        prop_assert_eq!(q, Some(f));
    }

    #[test]
    fn division_identity(f in poly_strategy(), g in poly_strategy()) {
        prop_assume!(!g.is_zero());
        let (q, r) = f.div_rem(&g).unwrap();
        prop_assert_eq!(add(&mul(&q, &g), &r), f);
    }

    #[test]
    fn rank_nullity(entries in prop::collection::vec(-3i64..=3, 20)) {
        let rows: Vec<Vec<_>> = entries.chunks(5).map(|c| c.iter().map(|&k| int(k)).collect()).collect();
        let m = RationalMatrix::from_rows(5, rows);
        let kernel = m.nullspace();
        prop_assert_eq!(m.rank() + kernel.len(), 5);
        for v in &kernel {
            prop_assert!(m.mul_vec(v).iter().all(|x| *x == int(0)));
        }
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn fast_kernel_matches_elimination(seed in prop::collection::vec(-4i64..=4, 24 * 8), mix in prop::collection::vec(-2i64..=2, 24 * 8)) {
        // 24 x 32 matrix of rank at most 24 whose last 8 columns are combinations of the first 24
        let base: Vec<Vec<i64>> = seed.chunks(8).map(|c| c.to_vec()).collect();
        let rows: Vec<Vec<_>> = (0..24)
            .map(|i| {
                let mut row: Vec<i64> = (0..24).map(|j| base[j % 24][i % 8] * (j as i64 % 3 - 1) + i64::from(i == j)).collect();
                for k in 0..8 {
                    row.push((0..24).map(|j| mix[k * 24 + j] * row[j]).sum());
                }
                row.into_iter().map(int).collect()
            })
            .collect();
        let m = RationalMatrix::from_rows(32, rows);
        let slow = m.echelon();
        prop_assert_eq!(m.rank(), slow.rank());
        let kernel = m.nullspace();
        prop_assert_eq!(kernel.len(), slow.nullspace().len());
        for v in &kernel {
            prop_assert!(m.mul_vec(v).iter().all(|x| *x == int(0)));
        }
    }

    #[test]
    fn betti_independent_of_order(w in prop::collection::vec(-4i64..=4, 5), perm in Just((0..5).collect::<Vec<usize>>()).prop_shuffle()) {
        let a = Arrangement::affine(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, -1], &[1, -1, 0], &[0, 1, 2]]).unwrap();
        let w = WeightVector::from_integers(&w);
        let betti = aomoto_betti(&a, &w).unwrap();
        let permuted = aomoto_betti(&a.permuted(&perm), &w.permuted(&perm)).unwrap();
        prop_assert_eq!(&betti, &permuted);
        prop_assert_eq!(betti, ExteriorModel::new(&a).betti(&w));
    }
}
