//! Pulling a semibiproduct back along a homomorphism, and composing two of them.

use std::error::Error;

use semibiproducts::registry::{group_two, idempotent_two};
use semibiproducts::semibiproduct::pullback_with_projection;
use semibiproducts::{
    compose_semibiproducts, cyclic_group, from_group_extension, homomorphisms, is_psb_morphism, verify_semibiproduct,
    Composition, Homomorphism, PointedMap, Pointedness, Semibiproduct,
};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let (m, g) = (idempotent_two(), group_two());

    let sbp = Semibiproduct::direct_product(&m, &g);
    for h in homomorphisms(&cyclic_group(4), &g) {
        let pulled = pullback_with_projection(&sbp, &h)?;
        println!(
            "along {:?}: A has {} elements, verified {}, projection is a morphism {}",
            h.values(),
            pulled.semibiproduct.a().size(),
            verify_semibiproduct(&pulled.semibiproduct, Pointedness::Require).passed(),
            is_psb_morphism(&pulled.projection).passed(),
        );
    }

    // Split semibiproducts always compose.
    let first = Semibiproduct::direct_product(&g, &m);
    let second = Semibiproduct::direct_product(&trivial(), &m);
    if let Composition::Composite { semibiproduct, .. } = compose_semibiproducts(&first, &second)? {
        println!(
            "composite kernel has {} elements, verified {}",
            semibiproduct.x().size(),
            verify_semibiproduct(&semibiproduct, Pointedness::Require).passed()
        );
    }

    // Z2 -> Z8 -> Z4 followed by Z2 -> Z4 -> Z2 with a section through 3.
    let (z4, z8) = (cyclic_group(4), cyclic_group(8));
    let outer = from_group_extension(
        &Homomorphism::new(g.clone(), z8.clone(), vec![0, 4])?,
        &Homomorphism::new(z8.clone(), z4.clone(), (0..8).map(|a| a % 4).collect())?,
        &PointedMap::new(z4.clone(), z8.clone(), vec![0, 1, 2, 3])?,
    )?;
    let inner = from_group_extension(
        &Homomorphism::new(g.clone(), z4.clone(), vec![0, 2])?,
        &Homomorphism::new(z4.clone(), g.clone(), vec![0, 1, 0, 1])?,
        &PointedMap::new(g.clone(), z4.clone(), vec![0, 3])?,
    )?;
    if let Composition::Obstruction(obs) = compose_semibiproducts(&outer, &inner)? {
        println!(
            "not composable at b = {}: s(b) = {} but s k'q'(b) + s s'p'(b) = {}",
            obs.witness, obs.section_value, obs.recombined_value
        );
    }
    Ok(())
}

fn trivial() -> semibiproducts::Monoid {
    semibiproducts::MonoidTable::trivial()
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
