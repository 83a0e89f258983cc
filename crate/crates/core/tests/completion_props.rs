use locdual_core::completion::{
    complete_base_change, hensel_quadratic, series_sqrt, HenselOutcome, SqrtOutcome,
    TruncatedSeries,
};
use locdual_core::complexes::{homology, FreeComplex, ModuleInvariants};
use locdual_core::laws::generators::random_split_complex;
use locdual_core::rings::{Elem, Ring};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const CONSTANTS: [&str; 3] = ["1", "4", "9/4"];

fn poly_string(constant: &str, coeffs: &[i64], shift: u32) -> String {
    let mut s = format!("({constant})");
    for (i, c) in coeffs.iter().enumerate() {
        s.push_str(&format!(" + ({c})*y^{}", i + 1));
    }
    if shift > 0 {
        s = format!("y^{shift}*({s})");
    }
    s
}

/// `a - b` truncated below total degree `n` vanishes.
fn agree_below(ring: &Ring, a: &Elem, b: &Elem, n: u32) -> bool {
    let ctx = ring.poly_ctx().unwrap();
    let d = ring.lift(&ring.sub(a, b)).unwrap();
    TruncatedSeries::from_poly(ctx, &d, n).is_zero()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn unit_series_have_square_roots(k in 0usize..3, coeffs in proptest::collection::vec(-3i64..=3, 0..4), n in 1u32..12) {
        let qy = Ring::polynomial(0, &["y"]).unwrap();
        let u = qy.parse(&poly_string(CONSTANTS[k], &coeffs, 0)).unwrap();
        let ctx = qy.poly_ctx().unwrap();
        let series = TruncatedSeries::from_poly(ctx, &qy.lift(&u).unwrap(), n);
        let SqrtOutcome::Root(s) = series_sqrt(&series, n).unwrap() else {
            panic!("a square constant term has a root")
        };
        let s = Elem::Poly(s.to_poly());
        prop_assert!(agree_below(&qy, &qy.mul(&s, &s), &u, n));
    }

    #[test]
    fn hensel_factors_multiply_back_in_two_variables(k in 0usize..3, coeffs in proptest::collection::vec(-3i64..=3, 0..3), half in 0u32..3, n in 1u32..14) {
        let qy = Ring::polynomial(0, &["y"]).unwrap();
        let c = qy.parse(&poly_string(CONSTANTS[k], &coeffs, 2 * half)).unwrap();
        let HenselOutcome::Factors { g, precision } = hensel_quadratic(&qy, &c, n).unwrap() else {
            panic!("even order with a square leading coefficient factors")
        };
        prop_assert_eq!(precision, n);
        // (x - g)(x + g) against x^2 - c, computed in Q[x, y] from the printed forms
        let qxy = Ring::polynomial(0, &["x", "y"]).unwrap();
        let g = qxy.parse(&qy.format(&Elem::Poly(g.to_poly()))).unwrap();
        let c = qxy.parse(&qy.format(&c)).unwrap();
        let x = qxy.parse("x").unwrap();
        let product = qxy.mul(&qxy.sub(&x, &g), &qxy.add(&x, &g));
        let target = qxy.sub(&qxy.mul(&x, &x), &c);
        prop_assert!(agree_below(&qxy, &product, &target, n));
    }

    #[test]
    fn completion_keeps_the_five_primary_part(seed in any::<u64>()) {
        let z = Ring::integers();
        let x = random_split_complex(&mut ChaCha8Rng::seed_from_u64(seed), &z, 3).unwrap();
        let completed = complete_base_change(&x, &["5"], 6).unwrap();
        let (h, hc) = (homology(&x).unwrap(), homology(&completed).unwrap());
        for n in -3..=3 {
            let (free, valuations) = five_part(h.get(n));
            let (cfree, cvals) = five_part(hc.get(n));
            prop_assert_eq!(free, cfree, "free rank in degree {}", n);
            prop_assert_eq!(valuations, cvals, "5-torsion in degree {}", n);
        }
    }
}

/// Free rank and sorted 5-adic valuations of the torsion, dropping units.
fn five_part(m: Option<&ModuleInvariants>) -> (usize, Vec<u32>) {
    let Some(ModuleInvariants::Principal { free_rank, torsion }) = m else {
        return (0, vec![]);
    };
    let mut v: Vec<u32> = torsion
        .iter()
        .map(|t| {
            let mut t: BigInt = t.parse().unwrap();
            let mut k = 0;
            while &t % 5 == BigInt::from(0) {
                t /= 5;
                k += 1;
            }
            k
        })
        .filter(|k| *k > 0)
        .collect();
    v.sort();
    (*free_rank, v)
}

#[test]
fn completing_the_unit_gives_the_unit() {
    let z = Ring::integers();
    let u = complete_base_change(&FreeComplex::unit(&z), &["5"], 4).unwrap();
    assert_eq!(
        homology(&u).unwrap().get(0),
        Some(&ModuleInvariants::Principal {
            free_rank: 1,
            torsion: vec![]
        })
    );
}
