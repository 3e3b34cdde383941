//! The five semibiproduct laws, exactness, and the decomposition of sums.

use std::error::Error;

use semibiproducts::registry::{group_two, idempotent_two};
use semibiproducts::semibiproduct::sum_decomposition_failures;
use semibiproducts::{check_exactness, enumerate_monoids, verify_semibiproduct, Pointedness, Semibiproduct};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let (m, g) = (idempotent_two(), group_two());

    let product = Semibiproduct::direct_product(&g, &m);
    println!("G×M over M: {}", verify_semibiproduct(&product, Pointedness::Require));
    println!("exactness: {}", check_exactness(&product));
    println!("sum decomposition failures: {}", sum_decomposition_failures(&product).len());

    // (A,A,A,1,1,1,1) satisfies the first three laws exactly when A is idempotent.
    for n in 1..=3 {
        for a in enumerate_monoids(n)? {
            let report = verify_semibiproduct(&Semibiproduct::diagonal(&a), Pointedness::Skip);
            println!("order {n}, idempotent {:5}: diagonal passes {}", a.is_idempotent(), report.passed());
        }
    }

    let report = verify_semibiproduct(&Semibiproduct::diagonal(&g), Pointedness::Skip);
    println!("diagonal over G:\n{report}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
