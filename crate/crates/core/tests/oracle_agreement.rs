mod common;

use std::collections::BTreeSet;

use common::{corpus, field, quot, table_of};
use proptest::prelude::*;
use stone_core::fpalgebra::{enumerate_homs, tensor, Poly};
use stone_core::pearl::pearl;
use stone_core::spectrum::{factor_count_via_pearl, factor_via_pearl, pi_zero};
use stone_core::Limits;
use stone_oracle::{
    distinct_irreducible_factors, galois_tensor_components, irreducible_sieve, Table,
};

fn monic(p: u32) -> impl Strategy<Value = Vec<u32>> {
    (1usize..=10).prop_flat_map(move |d| {
        prop::collection::vec(0..p, d).prop_map(|mut c| {
            c.push(1);
            c
        })
    })
}

fn to_poly(p: u32, c: &[u32]) -> Poly {
    Poly::new(field(p), c.iter().map(|&x| x as u8).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pearl_dim_counts_irreducible_factors((p, f) in prop_oneof![Just(2u32), Just(3), Just(5)].prop_flat_map(|p| (Just(p), monic(p)))) {
        let sieve = irreducible_sieve(p, 5);
        let expected = distinct_irreducible_factors(p, &f, &sieve);
        prop_assert_eq!(factor_count_via_pearl(&to_poly(p, &f)).unwrap(), expected);
    }

    #[test]
    fn pearl_dim_matches_frobenius_fixed_points((p, f) in prop_oneof![Just(2u32), Just(3)].prop_flat_map(|p| (Just(p), monic(p).prop_filter("small", move |f| (p as usize).pow(f.len() as u32 - 1) <= 729)))) {
        let a = stone_core::fpalgebra::univariate_quotient(&to_poly(p, &f), "x").unwrap();
        prop_assert_eq!(pearl(&a).unwrap().dim(), Table::univariate(p, &f).frobenius_fixed_dim());
    }

    #[test]
    fn factorization_of_squarefree_inputs((p, f) in prop_oneof![Just(2u32), Just(3), Just(5)].prop_flat_map(|p| (Just(p), monic(p)))) {
        let poly = to_poly(p, &f);
        let d = poly.derivative();
        prop_assume!(!d.is_zero() && poly.gcd(&d).degree() == Some(0));
        let sieve = irreducible_sieve(p, 5);
        let factors = factor_via_pearl(&poly).unwrap();
        prop_assert_eq!(factors.len(), distinct_irreducible_factors(p, &f, &sieve));
        let recombined = factors.iter().fold(Poly::constant(field(p), 1), |acc, g| acc.mul(g));
        prop_assert_eq!(recombined, poly);
        for g in &factors {
            let coeffs: Vec<u32> = g.coeffs().iter().map(|&c| c as u32).collect();
            prop_assert_eq!(distinct_irreducible_factors(p, &coeffs, &sieve), 1);
        }
    }
}

#[test]
fn corpus_pearl_dims_match_oracle() {
    for (name, a) in corpus() {
        assert_eq!(
            pearl(&a).unwrap().dim(),
            table_of(&a).frobenius_fixed_dim(),
            "{name}"
        );
    }
}

#[test]
fn corpus_components_match_brute_force_primitive_idempotents() {
    for (name, a) in corpus() {
        let ours: BTreeSet<Vec<u32>> = pi_zero(&a)
            .unwrap()
            .components
            .iter()
            .map(|e| e.vector().iter().map(|&c| c as u32).collect())
            .collect();
        let brute: BTreeSet<Vec<u32>> = table_of(&a).primitive_idempotents().into_iter().collect();
        assert_eq!(ours, brute, "{name}");
    }
}

#[test]
fn corpus_hom_counts_match_brute_force() {
    let l = Limits::default();
    let algebras = corpus();
    for (sn, a) in &algebras {
        for (tn, b) in &algebras {
            if a.p() != b.p() || b.cardinality().pow(a.dim() as u32) > 20_000 {
                continue;
            }
            let homs = enumerate_homs(a, b, &l).unwrap();
            assert_eq!(
                homs.len(),
                table_of(a).count_homs(&table_of(b)),
                "Hom({sn}, {tn})"
            );
        }
    }
}

#[test]
fn galois_tensor_pearls_match_component_formula() {
    let l = Limits::default();
    for (p, coeffs, n) in [
        (2, vec![1, 1, 1], 2),
        (2, vec![1, 1, 0, 1], 3),
        (3, vec![1, 0, 1], 2),
        (2, vec![1, 1, 0, 0, 1], 4),
    ] {
        let f = quot(p, &coeffs);
        let ff = tensor(&f, &f, &l).unwrap().algebra;
        assert_eq!(pearl(&ff).unwrap().dim(), galois_tensor_components(n, n));
    }
    let f4 = quot(2, &[1, 1, 1]);
    let f8 = quot(2, &[1, 1, 0, 1]);
    assert_eq!(
        pearl(&tensor(&f4, &f8, &l).unwrap().algebra).unwrap().dim(),
        galois_tensor_components(2, 3)
    );
}
