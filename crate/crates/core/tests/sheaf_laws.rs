mod common;

use common::field;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stone_core::duality::FiniteSetObj;
use stone_core::fpalgebra::{FpMatrix, PrimeField, Scalar};
use stone_core::sheafmod::{
    check_monoidal_equivalence, module_to_sheaf, restrict_to_clopen, sheaf_to_module,
    tensor_modules, CSModule, ModuleHom, SheafOnFiniteSet,
};

fn random_invertible(k: PrimeField, n: usize, rng: &mut ChaCha8Rng) -> FpMatrix {
    loop {
        let rows: Vec<Vec<Scalar>> = (0..n)
            .map(|_| (0..n).map(|_| rng.gen_range(0..k.p()) as Scalar).collect())
            .collect();
        let m = FpMatrix::from_rows(k, n, &rows);
        if m.rank() == n {
            return m;
        }
    }
}

/// A module with the given stalk dimensions, stalks spread by a random change of basis.
fn random_module(k: PrimeField, dims: &[usize], rng: &mut ChaCha8Rng) -> CSModule {
    let total: usize = dims.iter().sum();
    let e = random_invertible(k, total, rng);
    let cols = e.columns();
    let mut offset = 0;
    let stalks = dims
        .iter()
        .map(|&d| {
            let block = FpMatrix::from_columns(k, total, &cols[offset..offset + d]);
            offset += d;
            block
        })
        .collect();
    sheaf_to_module(
        &SheafOnFiniteSet::new(k, FiniteSetObj::standard(dims.len()), total, stalks).unwrap(),
    )
    .unwrap()
}

fn dims() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..=3, 1..=4)
        .prop_filter("total at most 6", |d| d.iter().sum::<usize>() <= 6)
}

fn subsets(n: usize) -> Vec<Vec<usize>> {
    (0..1usize << n)
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
        .collect()
}

proptest! {
    #[test]
    fn module_sheaf_round_trips(d in dims(), p in prop_oneof![Just(2u32), Just(3)], seed in any::<u64>()) {
        let k = field(p);
        let m = random_module(k, &d, &mut ChaCha8Rng::seed_from_u64(seed));
        let sheaf = module_to_sheaf(&m);
        prop_assert_eq!(sheaf.stalk_dims(), d);
        prop_assert_eq!(&sheaf_to_module(&sheaf).unwrap(), &m);
        prop_assert!(module_to_sheaf(&sheaf_to_module(&sheaf).unwrap()).equivalent(&sheaf));
    }

    #[test]
    fn sections_are_additive_on_disjoint_clopens(d in dims(), seed in any::<u64>()) {
        let m = random_module(field(3), &d, &mut ChaCha8Rng::seed_from_u64(seed));
        let n = d.len();
        for u in subsets(n) {
            let v: Vec<usize> = (0..n).filter(|i| !u.contains(i)).collect();
            let whole: Vec<usize> = (0..n).collect();
            prop_assert_eq!(m.sections_dim(&whole).unwrap(), m.sections_dim(&u).unwrap() + m.sections_dim(&v).unwrap());
            prop_assert_eq!(restrict_to_clopen(&m, &u).unwrap().dim(), m.sections_dim(&u).unwrap());
        }
    }

    #[test]
    fn tensor_is_monoidal((d1, d2) in dims().prop_flat_map(|d| {
        let n = d.len();
        (Just(d), prop::collection::vec(0usize..=3, n).prop_filter("total", |e| e.iter().sum::<usize>() <= 6))
    }), p in prop_oneof![Just(2u32), Just(3)], seed in any::<u64>()) {
        let k = field(p);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_module(k, &d1, &mut rng);
        let n = random_module(k, &d2, &mut rng);
        let v = check_monoidal_equivalence(&m, &n, &subsets(d1.len())).unwrap();
        prop_assert!(v.holds, "{:?}", v.counterexamples);
        let t = tensor_modules(&m, &n).unwrap();
        prop_assert_eq!(t.dim(), d1.iter().zip(&d2).map(|(a, b)| a * b).sum::<usize>());
    }

    #[test]
    fn tensoring_preserves_injections((d, extra) in dims().prop_flat_map(|d| {
        let n = d.len();
        let room = 6 - d.iter().sum::<usize>();
        (Just(d), prop::collection::vec(0usize..=2, n).prop_filter("room", move |e| e.iter().sum::<usize>() <= room))
    }), seed in any::<u64>()) {
        let k = field(2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let big_dims: Vec<usize> = d.iter().zip(&extra).map(|(a, b)| a + b).collect();
        let small = random_module(k, &d, &mut rng);
        let big = random_module(k, &big_dims, &mut rng);
        // stalk basis of M at s goes to the first d_s stalk basis vectors of M' at s
        let (ss, bs) = (module_to_sheaf(&small), module_to_sheaf(&big));
        let mut src_cols = Vec::new();
        let mut dst_cols = Vec::new();
        for (s, &ds) in d.iter().enumerate() {
            for c in 0..ds {
                src_cols.push(ss.stalk(s).column(c));
                dst_cols.push(bs.stalk(s).column(c));
            }
        }
        let e = FpMatrix::from_columns(k, small.dim(), &src_cols);
        let f = FpMatrix::from_columns(k, big.dim(), &dst_cols).mul(&e.inverse().unwrap());
        let hom = ModuleHom::new(small, big, f).unwrap();
        prop_assert!(hom.is_injective());
        let n_dims: Vec<usize> = (0..d.len()).map(|_| rng.gen_range(0..=2)).collect();
        let n = random_module(k, &n_dims, &mut rng);
        prop_assert!(hom.tensor_right(&n).unwrap().is_injective());
    }
}
