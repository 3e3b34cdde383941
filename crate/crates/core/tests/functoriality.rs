use semibiproducts::{
    act_to_psb_morphism, census_2x2, functor_q, homomorphisms, is_act_morphism, is_psb_morphism, psb_to_act_morphism,
    roundtrip_witness, ActMorphism, ActionSystem, PsbMorphism,
};

/// All action-system morphisms between census objects.
fn census_morphisms() -> Vec<ActMorphism> {
    let census: Vec<ActionSystem> = census_2x2().into_iter().map(|e| e.system).collect();
    let mut out = Vec::new();
    for s in &census {
        for t in &census {
            for f in homomorphisms(s.x(), t.x()) {
                for g in homomorphisms(s.b(), t.b()) {
                    let m = ActMorphism::new(s.clone(), t.clone(), f.clone(), g).unwrap();
                    if is_act_morphism(&m).passed() {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

#[test]
fn there_are_morphisms_between_distinct_objects() {
    let ms = census_morphisms();
    assert!(ms.iter().any(|m| m.source != m.target));
    assert!(ms.iter().any(|m| m.source == m.target && !m.f.is_identity()));
}

#[test]
fn realization_preserves_identities() {
    for e in census_2x2() {
        let id = ActMorphism::identity(&e.system);
        let image = act_to_psb_morphism(&id).unwrap();
        let real = functor_q(&e.system).unwrap().semibiproduct();
        assert_eq!(image, PsbMorphism::identity(&real));
    }
}

#[test]
fn realization_preserves_composition() {
    let ms = census_morphisms();
    let mut composed = 0;
    for m1 in &ms {
        for m2 in ms.iter().filter(|m2| m2.source == m1.target) {
            let both = m1.then(m2).unwrap();
            assert!(is_act_morphism(&both).passed());
            let left = act_to_psb_morphism(&both).unwrap();
            let right = act_to_psb_morphism(m1).unwrap().then(&act_to_psb_morphism(m2).unwrap()).unwrap();
            assert_eq!(left, right);
            composed += 1;
        }
    }
    assert!(composed > 0);
}

#[test]
fn derived_pairs_of_realized_morphisms_are_the_originals() {
    for m in census_morphisms() {
        let psb = act_to_psb_morphism(&m).unwrap();
        assert!(is_psb_morphism(&psb).passed());
        let back = psb_to_act_morphism(&psb).unwrap();
        assert_eq!(back.f, m.f);
        assert_eq!(back.g, m.g);
        assert!(is_act_morphism(&back).passed());
    }
}

#[test]
fn round_trip_is_natural_along_census_morphisms() {
    for m in census_morphisms() {
        let psb = act_to_psb_morphism(&m).unwrap();
        let w_source = roundtrip_witness(&psb.source).unwrap();
        let w_target = roundtrip_witness(&psb.target).unwrap();
        let report = w_source.naturality(&w_target, &psb).unwrap();
        assert!(report.passed(), "{report}");
    }
}
