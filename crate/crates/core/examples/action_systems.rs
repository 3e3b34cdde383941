//! Action systems: verification, realization as a monoid, and back.

use std::error::Error;

use semibiproducts::registry::{group_two, idempotent_two};
use semibiproducts::{
    functor_p, functor_q, is_act_morphism, roundtrip_witness, verify_action_system, ActMorphism, ActionSystem,
    Homomorphism,
};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let (m, g) = (idempotent_two(), group_two());

    let t = ActionSystem::new(
        m.clone(),
        m.clone(),
        vec![vec![0, 0], vec![1, 0]],
        vec![vec![0, 1], vec![0, 0]],
        vec![vec![0, 0], vec![0, 0]],
    )?;
    println!("verified: {}", verify_action_system(&t).passed());

    let real = functor_q(&t)?;
    println!("carrier {:?}", real.carrier);
    for row in real.monoid.rows() {
        println!("  {row:?}");
    }

    let back = functor_p(&real.semibiproduct())?;
    println!("recovered the same system: {}", back == t);

    let w = roundtrip_witness(&real.semibiproduct())?;
    println!("alpha {:?}, beta {:?}: {}", w.alpha.values(), w.beta.values(), w.check());

    let bad = ActionSystem::new(
        m.clone(),
        g.clone(),
        vec![vec![0, 0], vec![1, 0]],
        vec![vec![0, 1], vec![0, 0]],
        vec![vec![0, 0], vec![0, 0]],
    )?;
    println!("(M,G,ρ1,φ1,γ0):\n{}", verify_action_system(&bad));

    let z4ish = ActionSystem::new(
        g.clone(),
        g.clone(),
        vec![vec![0, 0], vec![1, 1]],
        vec![vec![0, 1], vec![0, 1]],
        vec![vec![0, 0], vec![0, 1]],
    )?;
    let collapse = ActMorphism::new(z4ish.clone(), z4ish, Homomorphism::zero(&g, &g), Homomorphism::identity(&g))?;
    println!("(0, 1_G):\n{}", is_act_morphism(&collapse));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
