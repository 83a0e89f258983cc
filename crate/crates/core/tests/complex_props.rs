use locdual_core::complexes::{homology, koszul, FreeComplex, ModuleInvariants};
use locdual_core::laws::generators::{random_chain_map, random_split_complex};
use locdual_core::pid_model::{split_invariants, tensor_inv};
use locdual_core::rings::{Matrix, Ring};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn z_complex(seed: u64, size: usize) -> FreeComplex {
    random_split_complex(
        &mut ChaCha8Rng::seed_from_u64(seed),
        &Ring::integers(),
        size,
    )
    .unwrap()
}

fn free_rank(x: &FreeComplex, n: i64) -> usize {
    match homology(x).unwrap().get(n) {
        Some(ModuleInvariants::Principal { free_rank, .. }) => *free_rank,
        None => 0,
        Some(other) => panic!("unexpected invariants {other:?}"),
    }
}

fn two_term(v: i64) -> FreeComplex {
    let z = Ring::integers();
    FreeComplex::two_term(&z, -1, Matrix::from_rows(vec![vec![z.from_i64(v)]], 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn euler_characteristic_is_additive(a in any::<u64>(), b in any::<u64>()) {
        let (x, y) = (z_complex(a, 2), z_complex(b, 2));
        prop_assert_eq!(x.direct_sum(&y).unwrap().euler_characteristic(), x.euler_characteristic() + y.euler_characteristic());
        prop_assert_eq!(x.tensor(&y).unwrap().euler_characteristic(), x.euler_characteristic() * y.euler_characteristic());
        let f = random_chain_map(&mut ChaCha8Rng::seed_from_u64(a ^ b), &x, &y, 0).unwrap();
        prop_assert_eq!(f.cone().unwrap().euler_characteristic(), y.euler_characteristic() - x.euler_characteristic());
    }

    #[test]
    fn tensor_is_symmetric_on_homology(a in any::<u64>(), b in any::<u64>()) {
        let (x, y) = (z_complex(a, 2), z_complex(b, 2));
        prop_assert_eq!(homology(&x.tensor(&y).unwrap()).unwrap().degrees, homology(&y.tensor(&x).unwrap()).unwrap().degrees);
    }

    #[test]
    fn kuenneth_for_free_ranks(a in any::<u64>(), b in any::<u64>()) {
        let (x, y) = (z_complex(a, 2), z_complex(b, 2));
        let t = x.tensor(&y).unwrap();
        for n in -6..=6 {
            let expected: usize = (-3..=3).map(|i| free_rank(&x, i) * free_rank(&y, n - i)).sum();
            prop_assert_eq!(free_rank(&t, n), expected, "degree {}", n);
        }
    }

    #[test]
    fn kuenneth_at_five_matches_the_pid_tables(a in any::<u64>(), b in any::<u64>()) {
        let (x, y) = (z_complex(a, 2), z_complex(b, 2));
        let five = Ring::integers().from_i64(5);
        let split = |c: &FreeComplex| split_invariants(c, &five).unwrap();
        let t = x.tensor(&y).unwrap();
        prop_assert_eq!(split(&t), tensor_inv(&split(&x), &split(&y)).unwrap());
    }

    #[test]
    fn tensor_hom_adjunction_on_homology(a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let (x, y, z) = (z_complex(a, 1), z_complex(b, 1), z_complex(c, 1));
        let left = x.tensor(&y).unwrap().hom(&z).unwrap();
        let right = x.hom(&y.hom(&z).unwrap()).unwrap();
        prop_assert_eq!(homology(&left).unwrap().degrees, homology(&right).unwrap().degrees);
    }
}

#[test]
fn tor_of_two_with_itself() {
    let h = homology(&two_term(2).tensor(&two_term(2)).unwrap()).unwrap();
    let z2 = ModuleInvariants::Principal {
        free_rank: 0,
        torsion: vec!["2".into()],
    };
    assert_eq!(h.get(0), Some(&z2));
    assert_eq!(h.get(-1), Some(&z2));
    assert!(h.get(-2).is_none());
}

#[test]
fn hom_from_koszul_into_the_integers() {
    let z = Ring::integers();
    let k = koszul(&z, &[z.from_i64(3)]);
    let h = homology(&k.hom(&FreeComplex::unit(&z)).unwrap()).unwrap();
    // Hom(ℤ/3, ℤ) = 0 and Ext¹(ℤ/3, ℤ) = ℤ/3
    assert_eq!(h.degrees.len(), 1);
    assert_eq!(
        h.get(1),
        Some(&ModuleInvariants::Principal {
            free_rank: 0,
            torsion: vec!["3".into()]
        })
    );
}
