//! Validating Cayley tables, checking maps, and listing small monoids.

use std::error::Error;

use semibiproducts::registry::{group_two, idempotent_two};
use semibiproducts::{
    enumerate_monoids, find_isomorphisms, homomorphisms, make_monoid, product_monoid, pullback, Homomorphism,
    PointedMap,
};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let (m, g) = (idempotent_two(), group_two());

    let z3 = make_monoid(vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]], None)?;
    println!("Z3 is a group: {}", z3.is_group());
    let broken = make_monoid(vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 1, 1]], None);
    println!("rejected table: {}", broken.unwrap_err());

    let f = PointedMap::new(g.clone(), m.clone(), vec![0, 1])?;
    println!("G -> M, 1 -> 1 is a homomorphism: {}", f.is_homomorphism());
    println!("homomorphisms G -> M: {}", homomorphisms(&g, &m).len());
    println!("isomorphisms M -> G: {}", find_isomorphisms(&m, &g).len());

    let mg = product_monoid(&m, &g);
    let p = Homomorphism::new(mg.clone(), g.clone(), vec![0, 1, 0, 1])?;
    let pb = pullback(&p, &Homomorphism::identity(&g))?;
    println!("pullback of M×G -> G along 1_G has {} elements", pb.monoid.size());

    for n in 1..=4 {
        println!("monoids of order {n}: {}", enumerate_monoids(n)?.len());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
