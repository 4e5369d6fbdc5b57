mod common;

use common::field;
use proptest::prelude::*;
use stone_core::duality::dualize_set_map;
use stone_core::profinite::{
    clopen_to_idempotent, closed_to_quotient_algebra, colimit_element_eq, complement_closed,
    complement_open, tower_function_algebra, ClosedSubtower, OpenCylinderFamily, Tower, TowerMap,
};

fn tower() -> impl Strategy<Value = Tower> {
    (prop_oneof![Just(2usize), Just(3)], 0usize..=4).prop_map(|(b, d)| Tower::tree(b, d))
}

fn closed_subtower() -> impl Strategy<Value = ClosedSubtower> {
    tower().prop_flat_map(|t| {
        let top = t.levels()[t.depth()].len();
        prop::collection::vec(any::<bool>(), top).prop_map(move |mask| {
            let chosen: Vec<usize> = mask
                .iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(i, _)| i)
                .collect();
            ClosedSubtower::from_top(t.clone(), &chosen).unwrap()
        })
    })
}

fn cylinder() -> impl Strategy<Value = (Tower, usize, Vec<u8>)> {
    tower().prop_flat_map(|t| {
        // a cylinder first seen at the top level cannot be seen to stabilize
        (0..t.depth().max(1)).prop_flat_map(move |n| {
            let size = t.levels()[n].len();
            (
                Just(t.clone()),
                Just(n),
                prop::collection::vec(0u8..2, size),
            )
        })
    })
}

proptest! {
    #[test]
    fn double_complement_is_identity(t in closed_subtower()) {
        let open = complement_closed(&t).unwrap();
        prop_assert_eq!(complement_open(&open).unwrap(), t);
    }

    #[test]
    fn clopen_idempotent_regenerates_the_family((t, n, chi) in cylinder()) {
        let u = OpenCylinderFamily::from_idempotent(t.clone(), n, &chi).unwrap();
        let c = clopen_to_idempotent(&u).unwrap();
        prop_assert!(c.level <= n);
        prop_assert!(colimit_element_eq(&t, field(2), (c.level, c.idempotent.vector()), (n, &chi)).unwrap());
        for m in c.level..=t.depth() {
            let pulled = t.pullback(c.level, m, c.idempotent.vector()).unwrap();
            let level: Vec<u8> = (0..t.levels()[m].len()).map(|x| u.contains(m, x) as u8).collect();
            prop_assert_eq!(pulled, level);
        }
    }

    #[test]
    fn top_level_cylinders_are_undetermined(t in tower().prop_filter("positive depth", |t| t.depth() > 0)) {
        let d = t.depth();
        let mut chi = vec![0u8; t.levels()[d].len()];
        chi[0] = 1;
        let u = OpenCylinderFamily::from_idempotent(t, d, &chi).unwrap();
        prop_assert_eq!(clopen_to_idempotent(&u).unwrap_err(), stone_core::Error::NotClopenAtThisDepth(d));
    }

    #[test]
    fn transition_chain_is_dual_to_composite_maps(t in tower(), p in prop_oneof![Just(2u32), Just(3)]) {
        let k = field(p);
        for m in 0..=t.depth() {
            let mut chain = stone_core::fpalgebra::AlgebraHom::identity(&tower_function_algebra(&t, m, k).unwrap().algebra);
            for n in m..=t.depth() {
                let direct = dualize_set_map(k, &t.composite_map(n, m).unwrap());
                prop_assert_eq!(chain.matrix(), direct.matrix());
                if n < t.depth() {
                    let step = tower_function_algebra(&t, n, k).unwrap().transition.unwrap();
                    prop_assert!(step.is_injective());
                    chain = step.compose(&chain).unwrap();
                }
            }
        }
    }

    #[test]
    fn subtower_inclusion_dualizes_to_surjections(t in closed_subtower()) {
        let sub = t.as_tower();
        let maps: Vec<Vec<usize>> = t.levels();
        let inclusion = TowerMap::new(sub, t.ambient().clone(), maps).unwrap();
        for (n, hom) in inclusion.dualize(field(2)).iter().enumerate() {
            prop_assert!(inclusion.level_map(n).is_injective());
            prop_assert!(hom.is_surjective());
            let restriction = closed_to_quotient_algebra(&t, n, field(2)).unwrap();
            prop_assert_eq!(hom.matrix(), restriction.matrix());
        }
    }

    #[test]
    fn collapse_to_a_point_tower_dualizes_to_injections(t in tower()) {
        let point = Tower::tree(1, t.depth());
        let maps = t.levels().iter().map(|l| vec![0; l.len()]).collect();
        let collapse = TowerMap::new(t.clone(), point, maps).unwrap();
        for (n, hom) in collapse.dualize(field(3)).iter().enumerate() {
            prop_assert!(collapse.level_map(n).is_surjective());
            prop_assert!(hom.is_injective());
        }
    }
}
