//! Z4 as an extension of G by G with a section that is not a homomorphism.

use std::error::Error;

use semibiproducts::registry::group_two;
use semibiproducts::{cyclic_group, from_group_extension, functor_p, roundtrip_witness, Homomorphism, PointedMap};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let (g, z4) = (group_two(), cyclic_group(4));
    let k = Homomorphism::new(g.clone(), z4.clone(), vec![0, 2])?;
    let p = Homomorphism::new(z4.clone(), g.clone(), vec![0, 1, 0, 1])?;
    let s = PointedMap::new(g.clone(), z4.clone(), vec![0, 1])?;
    println!("s is a homomorphism: {}", s.is_homomorphism());

    let sbp = from_group_extension(&k, &p, &s)?;
    println!("q = {:?}", sbp.q().values());

    let t = functor_p(&sbp)?;
    println!("gamma = {:?}", t.gamma_rows());

    let w = roundtrip_witness(&sbp)?;
    println!("alpha = {:?}, beta = {:?}", w.alpha.values(), w.beta.values());
    println!("round trip: {}", w.check());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
