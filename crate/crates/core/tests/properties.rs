use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use proptest::sample::select;

use semibiproducts::enumeration::{act_isomorphism, canonical_key};
use semibiproducts::monoid::{are_isomorphic, pointed_permutations};
use semibiproducts::semibiproduct::{pullback_with_projection, sum_decomposition_failures};
use semibiproducts::{
    add_maps, census_2x2, compose_maps, cyclic_group, enumerate_action_systems, enumerate_monoids, find_isomorphisms,
    functor_p, functor_q, homomorphisms, is_psb_morphism, product_monoid, pullback, roundtrip_witness,
    verify_semibiproduct, ActionSystem, Monoid, PointedMap, Pointedness,
};

fn pool() -> &'static [Monoid] {
    static POOL: OnceLock<Vec<Monoid>> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut v: Vec<Monoid> = (1..=3).flat_map(|n| enumerate_monoids(n).unwrap()).collect();
        let g = cyclic_group(2);
        v.push(cyclic_group(4));
        v.push(product_monoid(&g, &g));
        v
    })
}

/// Valid systems over pairs of monoids of order 2 and 3.
fn systems() -> &'static [ActionSystem] {
    static SYSTEMS: OnceLock<Vec<ActionSystem>> = OnceLock::new();
    SYSTEMS.get_or_init(|| {
        let small: Vec<Monoid> = (2..=3).flat_map(|n| enumerate_monoids(n).unwrap()).collect();
        let mut out = Vec::new();
        for x in &small {
            for b in &small {
                if x.size() + b.size() <= 5 {
                    out.extend(enumerate_action_systems(x, b).unwrap());
                }
            }
        }
        out
    })
}

fn monoid() -> impl Strategy<Value = Monoid> {
    select(pool().to_vec())
}

fn pointed_map(dom: Monoid, cod: Monoid) -> impl Strategy<Value = PointedMap> {
    let n = dom.size();
    proptest::collection::vec(0..cod.size(), n - 1).prop_map(move |tail| {
        PointedMap::new(dom.clone(), cod.clone(), std::iter::once(0).chain(tail).collect()).unwrap()
    })
}

fn three_maps() -> impl Strategy<Value = (PointedMap, PointedMap, PointedMap)> {
    (monoid(), monoid()).prop_flat_map(|(d, c)| {
        (pointed_map(d.clone(), c.clone()), pointed_map(d.clone(), c.clone()), pointed_map(d, c))
    })
}

fn relabeling(n: usize) -> impl Strategy<Value = Vec<usize>> {
    select(pointed_permutations(n))
}

proptest! {
    #[test]
    fn pointwise_sum_is_associative((f, g, h) in three_maps()) {
        let left = add_maps(&add_maps(&f, &g).unwrap(), &h).unwrap();
        let right = add_maps(&f, &add_maps(&g, &h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let zero = PointedMap::zero(f.dom(), f.cod());
        prop_assert_eq!(add_maps(&zero, &f).unwrap(), f.clone());
        prop_assert_eq!(add_maps(&f, &zero).unwrap(), f);
    }

    #[test]
    fn composition_is_associative(
        (f, g, h) in (monoid(), monoid(), monoid(), monoid()).prop_flat_map(|(a, b, c, d)| {
            (pointed_map(a, b.clone()), pointed_map(b, c.clone()), pointed_map(c, d))
        })
    ) {
        let left = compose_maps(&h, &compose_maps(&g, &f).unwrap()).unwrap();
        let right = compose_maps(&compose_maps(&h, &g).unwrap(), &f).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(compose_maps(&PointedMap::identity(f.cod()), &f).unwrap(), f);
    }

    #[test]
    fn homomorphisms_compose((a, b, c) in (monoid(), monoid(), monoid())) {
        for f in homomorphisms(&a, &b).iter().take(6) {
            for g in homomorphisms(&b, &c).iter().take(6) {
                prop_assert!(g.after(f).unwrap().is_homomorphism());
            }
        }
    }

    #[test]
    fn isomorphism_survives_relabeling(
        (m, perm) in monoid().prop_flat_map(|m| { let n = m.size(); (Just(m), relabeling(n)) })
    ) {
        let relabeled = Arc::new(m.relabel(&perm));
        prop_assert!(are_isomorphic(&m, &relabeled));
        prop_assert!(are_isomorphic(&relabeled, &m));
        prop_assert_eq!(find_isomorphisms(&m, &relabeled).len(), find_isomorphisms(&relabeled, &m).len());
    }

    #[test]
    fn isomorphism_is_symmetric((a, b) in (monoid(), monoid())) {
        prop_assert_eq!(are_isomorphic(&a, &b), are_isomorphic(&b, &a));
    }

    #[test]
    fn pullback_square_commutes((a, c, b) in (monoid(), monoid(), monoid())) {
        let ps = homomorphisms(&a, &b);
        let hs = homomorphisms(&c, &b);
        for p in ps.iter().take(4) {
            for h in hs.iter().take(4) {
                let pb = pullback(p, h).unwrap();
                prop_assert!(pb.pi1.is_homomorphism() && pb.pi2.is_homomorphism());
                let expected = a.elements().flat_map(|x| c.elements().map(move |y| (x, y)))
                    .filter(|&(x, y)| p.apply(x) == h.apply(y)).count();
                prop_assert_eq!(pb.monoid.size(), expected);
                for i in pb.monoid.elements() {
                    let (x, y) = pb.pair(i);
                    prop_assert_eq!(p.apply(x), h.apply(y));
                    prop_assert_eq!(pb.pair_index(x, y), Some(i));
                }
            }
        }
    }

    #[test]
    fn canonical_key_ignores_presentation(
        (t, sx, sb) in select(systems().to_vec()).prop_flat_map(|t| {
            let (nx, nb) = (t.x().size(), t.b().size());
            (Just(t), relabeling(nx), relabeling(nb))
        })
    ) {
        let moved = t.relabel(&sx, &sb);
        prop_assert!(moved.verify().passed());
        prop_assert_eq!(canonical_key(&t), canonical_key(&moved));
        let iso = act_isomorphism(&t, &moved);
        prop_assert!(iso.is_some());
    }

    #[test]
    fn pulled_back_realizations_round_trip(
        (entry, c) in (select(census_2x2()), monoid())
    ) {
        let sbp = functor_q(&entry.system).unwrap().semibiproduct();
        for h in homomorphisms(&c, sbp.b()).iter().take(4) {
            let pulled = pullback_with_projection(&sbp, h).unwrap();
            let s = &pulled.semibiproduct;
            prop_assert!(verify_semibiproduct(s, Pointedness::Require).passed());
            prop_assert!(is_psb_morphism(&pulled.projection).passed());
            prop_assert!(sum_decomposition_failures(s).is_empty());
            let w = roundtrip_witness(s).unwrap();
            prop_assert!(w.check().passed());
            prop_assert!(w.beta.after(&w.alpha).unwrap().is_identity());
            prop_assert!(w.alpha.after(&w.beta).unwrap().is_identity());
            // P of the pullback is the system pulled back along h.
            let t = functor_p(s).unwrap();
            for x in t.x().elements() {
                for y in c.elements() {
                    prop_assert_eq!(t.rho(x, y), entry.system.rho(x, h.apply(y)));
                    prop_assert_eq!(t.phi(y, x), entry.system.phi(h.apply(y), x));
                }
            }
        }
    }
}

#[test]
fn derive_after_realize_is_identity_on_small_carriers() {
    let small: Vec<Monoid> = (1..=3).flat_map(|n| enumerate_monoids(n).unwrap()).collect();
    let mut checked = 0;
    for x in &small {
        for b in &small {
            for t in enumerate_action_systems(x, b).unwrap() {
                let real = functor_q(&t).unwrap();
                assert_eq!(functor_p(&real.semibiproduct()).unwrap(), t);
                checked += 1;
            }
        }
    }
    assert!(checked > 100, "{checked}");
}
