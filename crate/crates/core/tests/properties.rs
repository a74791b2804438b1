mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{brute_coset, brute_rank, brute_spectrum, random_code, random_vec};
use weightforge::construct::{refine_translate, simplex};
use weightforge::spectrum::{coset_profile_with, spectrum_full, spectrum_with, Kernel};
use weightforge::{binary_weight_count_code, coset_profile, spectrum, Error};

fn setup() -> impl Strategy<Value = (u64, usize, usize, u64)> {
    (
        prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9]),
        1usize..4,
        0usize..12,
        any::<u64>(),
    )
        .prop_map(|(q, k, extra, seed)| (q, k, k + 1 + extra, seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn enumeration_routes_agree((q, k, n, seed) in setup()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let code = random_code(&mut rng, q, k, n);
        let brute = brute_spectrum(&code);
        prop_assert_eq!(spectrum(&code).unwrap().entries().to_vec(), brute.clone());
        prop_assert_eq!(spectrum_full(&code, Kernel::Auto).unwrap().entries().to_vec(), brute.clone());
        prop_assert_eq!(spectrum_with(&code, Kernel::Generic).unwrap().entries().to_vec(), brute);
    }

    #[test]
    fn spectrum_invariants((q, k, n, seed) in setup()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let code = random_code(&mut rng, q, k, n);
        let s = spectrum(&code).unwrap();
        prop_assert_eq!(s.entries()[0], (0, 1));
        prop_assert_eq!(s.total_count(), q.pow(k as u32));
        for &(w, c) in s.entries() {
            if w != 0 {
                prop_assert_eq!(c % (q - 1), 0);
            }
        }
    }

    #[test]
    fn coset_profile_matches_brute_force((q, k, n, seed) in setup()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let code = random_code(&mut rng, q, k, n);
        let x = random_vec(&mut rng, code.field(), n);
        match coset_profile(&code, &x) {
            Err(Error::XInCode) => prop_assert!(code.contains(&x).unwrap()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
            Ok(w) => {
                let (dist, pair) = brute_coset(&code, &x);
                prop_assert_eq!(&w.distances, &dist);
                prop_assert_eq!(w.distinct_coset_weights, dist.len() as u64);
                prop_assert_eq!(&w.collision, &pair);
                prop_assert_eq!(w.collision.is_some(), w.distinct_coset_weights < q.pow(k as u32));
                let generic = coset_profile_with(&code, &x, Kernel::Generic).unwrap();
                prop_assert_eq!(generic, w);
            }
        }
    }

    #[test]
    fn coset_count_is_translation_invariant((q, k, n, seed) in setup()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let code = random_code(&mut rng, q, k, n);
        let x = random_vec(&mut rng, code.field(), n);
        prop_assume!(!code.contains(&x).unwrap());
        let m = random_vec(&mut rng, code.field(), k);
        let c = code.gen().combine(m.elems()).unwrap();
        let a = coset_profile(&code, &x).unwrap();
        let b = coset_profile(&code, &x.add(&c).unwrap()).unwrap();
        prop_assert_eq!(a.distinct_coset_weights, b.distinct_coset_weights);
        prop_assert_eq!(a.distances, b.distances);
    }

    #[test]
    fn coset_distances_are_scalar_invariant((q, k, n, seed) in setup(), alpha in 1u8..=255) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let code = random_code(&mut rng, q, k, n);
        let x = random_vec(&mut rng, code.field(), n);
        prop_assume!(!code.contains(&x).unwrap());
        let alpha = 1 + alpha % (q as u8 - 1);
        let a = coset_profile(&code, &x).unwrap();
        let b = coset_profile(&code, &x.scale(alpha)).unwrap();
        prop_assert_eq!(a.distances, b.distances);
    }

    #[test]
    fn tripling_preserves_distinct_weights((q, k, n, seed) in setup()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let code = random_code(&mut rng, q, k, n);
        let x = random_vec(&mut rng, code.field(), n);
        prop_assume!(!code.contains(&x).unwrap());
        let before = coset_profile(&code, &x).unwrap();
        prop_assume!(before.collision.is_some());
        let r = refine_translate(&code, &x).unwrap();
        let s0 = spectrum(&code).unwrap();
        let s1 = spectrum(&r.code).unwrap();
        prop_assert_eq!(s0.distinct_total(), s1.distinct_total());
        let tripled: Vec<usize> = s0.entries().iter().map(|e| 3 * e.0).collect();
        let got: Vec<usize> = s1.entries().iter().map(|e| e.0).collect();
        prop_assert_eq!(got, tripled);
        prop_assert!(!r.code.contains(&r.x).unwrap());
    }
}

#[test]
fn binary_counts_small_dimensions() {
    for k in 1..=5 {
        for s in 1..(1u64 << k) {
            let (code, _) = binary_weight_count_code(k, s, 42).unwrap();
            assert_eq!(code.k(), k);
            assert_eq!(brute_rank(&code), k);
            let nonzero = brute_spectrum(&code).iter().filter(|e| e.0 != 0).count();
            assert_eq!(nonzero as u64, s, "k={k} s={s}");
        }
    }
}

#[test]
fn simplex_columns_are_projective_points() {
    for (q, k) in [(2, 4), (3, 3), (4, 2), (5, 2)] {
        let s = simplex(q, k).unwrap();
        let f = s.field();
        let cols: Vec<Vec<u8>> = (0..s.n())
            .map(|j| s.gen().rows().iter().map(|r| r.elems()[j]).collect())
            .collect();
        for (i, a) in cols.iter().enumerate() {
            assert_eq!(a.iter().find(|&&e| e != 0), Some(&1));
            for b in &cols[i + 1..] {
                assert!(a < b, "columns must be increasing");
                // no nonzero scalar maps one to another
                for alpha in f.elements().skip(1) {
                    let scaled: Vec<u8> = a.iter().map(|&e| f.mul(alpha, e)).collect();
                    assert_ne!(&scaled, b);
                }
            }
        }
    }
}
