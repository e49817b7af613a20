mod common;

use std::sync::Arc;

use common::{adjunction_holds, minimal_bases, rat};
use plumbcalc::blowup::{
    blow_down, blow_up, is_contractible, minimal_model, replay, BlowupCenter, BlowupPath,
};
use plumbcalc::canonical::canonical_orders;
use plumbcalc::reptype::representation_type;
use plumbcalc::{Canonical, PlumbingGraph, Rational, VertexId};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn walk(
    base: &PlumbingGraph,
    choices: &[usize],
) -> Vec<(PlumbingGraph, Canonical, BlowupCenter, VertexId)> {
    let mut g = base.clone();
    let mut data = canonical_orders::<Rational>(&g).unwrap();
    let mut out = Vec::new();
    for &k in choices {
        let options = BlowupCenter::all_on(&g);
        let c = options[k % options.len()].clone();
        let (next, next_data, new) = blow_up(&g, &data, &c).unwrap();
        out.push((g, data, c, new));
        g = next;
        data = next_data;
    }
    out.push((
        g,
        data,
        BlowupCenter::free(VertexId::new("unused").unwrap()),
        VertexId::new("unused").unwrap(),
    ));
    out
}

fn arb_path() -> impl Strategy<Value = (PlumbingGraph, Vec<usize>)> {
    let n = minimal_bases().len();
    (0..n, prop::collection::vec(0usize..64, 0..=6))
        .prop_map(|(i, choices)| (minimal_bases().swap_remove(i), choices))
}

/// Contracts arrow-free (−1) curves in a random order until none is left.
fn contract_randomly(g: &PlumbingGraph, seed: u64) -> PlumbingGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = g.clone();
    loop {
        let options: Vec<VertexId> = g
            .vertex_ids()
            .filter(|v| g.arrows(v) == 0 && is_contractible(&g, v))
            .cloned()
            .collect();
        let Some(v) = options.choose(&mut rng) else {
            return g;
        };
        g = blow_down(&g, v).unwrap();
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn tracked_orders_solve_adjunction((base, choices) in arb_path()) {
        for (g, data, _, _) in walk(&base, &choices) {
            prop_assert!(adjunction_holds(&g, data.orders()));
            prop_assert_eq!(&canonical_orders::<Rational>(&g).unwrap(), &data);
        }
    }

    #[test]
    fn free_points_raise_the_order_by_one((base, choices) in arb_path()) {
        let steps = walk(&base, &choices);
        for w in steps.windows(2) {
            let (_, data, c, new) = &w[0];
            let (_, next_data, _, _) = &w[1];
            let expected = match c {
                BlowupCenter::Free(v) => rat(1) + data.order(v).unwrap().clone(),
                BlowupCenter::Satellite(a, b) => {
                    rat(1) + data.order(a).unwrap().clone() + data.order(b).unwrap().clone()
                }
            };
            prop_assert_eq!(next_data.order(new).unwrap(), &expected);
            // Old components keep their orders.
            for (id, q) in data.orders() {
                prop_assert_eq!(next_data.order(id).unwrap(), q);
            }
        }
    }

    #[test]
    fn blow_down_undoes_blow_up((base, choices) in arb_path()) {
        let steps = walk(&base, &choices);
        for w in steps.windows(2) {
            let (g, _, _, new) = &w[0];
            let (next, _, _, _) = &w[1];
            prop_assert!(is_contractible(next, new));
            prop_assert_eq!(&blow_down(next, new).unwrap(), g);
        }
    }

    #[test]
    fn minimal_model_recovers_the_base((base, choices) in arb_path(), seed in any::<u64>()) {
        let (top, _, _, _) = walk(&base, &choices).pop().unwrap();
        let m = minimal_model(&top);
        prop_assert_eq!(&m, &base);
        prop_assert_eq!(&minimal_model(&m), &m);
        prop_assert_eq!(&contract_randomly(&top, seed), &base);
    }

    #[test]
    fn replay_matches_the_walk((base, choices) in arb_path()) {
        let steps = walk(&base, &choices);
        let centers: Vec<BlowupCenter> = steps[..steps.len() - 1].iter().map(|s| s.2.clone()).collect();
        let path = BlowupPath::new(Arc::new(base.clone()), centers.clone()).unwrap();
        let (g, data) = replay::<Rational>(&path).unwrap();
        let (last, last_data, _, _) = steps.last().unwrap();
        prop_assert_eq!(&g, last);
        prop_assert_eq!(&data, last_data);
        let text = path.to_string();
        prop_assert_eq!(plumbcalc::blowup::parse_centers(&text).unwrap(), centers);
    }

    #[test]
    fn representation_type_survives_blow_up((base, choices) in arb_path()) {
        let expected = representation_type::<Rational>(&base).unwrap();
        let (top, _, _, _) = walk(&base, &choices).pop().unwrap();
        prop_assert_eq!(representation_type::<Rational>(&top).unwrap(), expected);
    }
}
