use bkcomp::delta::{compose, edgewise_map, epi_mono_factor, recompose, OrdinalMap};
use bkcomp::linalg::{Field, Matrix};
use bkcomp::spectral::{random_bicomplex, spectral_sequence};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A monotone map `[n] -> [m]` from sorted draws.
fn ordinal_map(max: usize) -> impl Strategy<Value = OrdinalMap> {
    (0..=max, 0..=max).prop_flat_map(|(n, m)| {
        prop::collection::vec(0..=m, n + 1).prop_map(move |mut v| {
            v.sort_unstable();
            OrdinalMap::new(n, m, v).expect("monotone")
        })
    })
}

fn chain_of_three(max: usize) -> impl Strategy<Value = (OrdinalMap, OrdinalMap, OrdinalMap)> {
    (0..=max, 0..=max, 0..=max, 0..=max).prop_flat_map(|(a, b, c, d)| {
        let sorted = |n: usize, m: usize| {
            prop::collection::vec(0..=m, n + 1).prop_map(move |mut v| {
                v.sort_unstable();
                OrdinalMap::new(n, m, v).expect("monotone")
            })
        };
        (sorted(a, b), sorted(b, c), sorted(c, d))
    })
}

fn matrix(p: u32, max: usize) -> impl Strategy<Value = (Field, Matrix)> {
    (0..=max, 0..=max).prop_flat_map(move |(r, c)| {
        prop::collection::vec(prop::collection::vec(0..i64::from(p), c), r).prop_map(move |rows| {
            let f = Field::prime(p).expect("prime");
            let m = Matrix::from_i64(&f, r, c, &rows).expect("shape");
            (f, m)
        })
    })
}

proptest! {
    #[test]
    fn composition_is_associative((f, g, h) in chain_of_three(5)) {
        let left = compose(&compose(&f, &g).unwrap(), &h).unwrap();
        let right = compose(&f, &compose(&g, &h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn normal_form_recomposes(f in ordinal_map(6)) {
        let word = epi_mono_factor(&f);
        prop_assert!(word.is_normal());
        prop_assert_eq!(recompose(&word, f.source()).unwrap(), f.clone());
        let (e, m) = f.epi_mono();
        prop_assert!(e.is_surjective() && m.is_injective());
    }

    #[test]
    fn elementary_chain_composes_to_the_map(f in ordinal_map(5)) {
        let chain = f.elementary_chain();
        let whole = chain.iter().try_fold(OrdinalMap::identity(f.source()), |acc, g| compose(&acc, g));
        prop_assert_eq!(whole.unwrap(), f);
    }

    #[test]
    fn edgewise_subdivision_is_a_functor((f, g, _) in chain_of_three(3), k in 1usize..=3) {
        let fg = compose(&f, &g).unwrap();
        prop_assert_eq!(edgewise_map(k, &fg), compose(&edgewise_map(k, &f), &edgewise_map(k, &g)).unwrap());
        prop_assert!(edgewise_map(k, &OrdinalMap::identity(f.source())).is_identity());
    }

    #[test]
    fn rank_plus_nullity((_, m) in matrix(5, 7)) {
        let kernel = m.kernel_basis();
        prop_assert_eq!(kernel.cols() + m.rank(), m.cols());
        prop_assert!(m.mul(&kernel).is_zero());
        prop_assert_eq!(m.rank(), m.transpose().rank());
        prop_assert_eq!(m.image_basis().cols(), m.rank());
    }

    #[test]
    fn solve_recovers_a_preimage((f, m) in matrix(3, 6), seed in any::<u64>()) {
        let x = Matrix::from_i64(&f, m.cols(), 1, &(0..m.cols()).map(|i| vec![((seed >> (i % 60)) & 1) as i64]).collect::<Vec<_>>()).unwrap();
        let b = m.mul(&x);
        let y = m.solve(&b);
        prop_assert!(y.is_some());
        prop_assert_eq!(m.mul(&y.unwrap()), b);
    }

    #[test]
    fn spectral_sequence_preserves_the_euler_characteristic(seed in any::<u64>()) {
        let f = Field::f2();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rb = random_bicomplex(&f, 2, 3, 4, &mut rng).unwrap();
        let b = &rb.bicomplex;
        let report = spectral_sequence(b, 4, 3).unwrap();
        prop_assert!(report.pages_consistent);
        let mut chi = 0i64;
        for (s, row) in b.dims.iter().enumerate() {
            for (t, &d) in row.iter().enumerate() {
                chi += if (t + s) % 2 == 0 { d as i64 } else { -(d as i64) };
            }
        }
        let from_homology: i64 = report.total_homology.iter().map(|&(m, d)| if m % 2 == 0 { d as i64 } else { -(d as i64) }).sum();
        prop_assert_eq!(chi, from_homology);
    }
}
