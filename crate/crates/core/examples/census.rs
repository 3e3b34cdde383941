//! All action systems between two-element monoids, classified up to isomorphism.

use std::error::Error;

use semibiproducts::enumeration::{classification_disagreements, render_census_list};
use semibiproducts::registry::Registry;
use semibiproducts::{census_2x2, classify, realization_census, Tag};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let registry = Registry::new();
    let census = census_2x2();
    print!("{}", render_census_list(&registry, &census));

    let split = census.iter().filter(|e| e.has(Tag::Split)).count();
    println!("{split} split, {} classes", classify(&census).len());
    println!("Act and Psb isomorphism disagree on {} pairs", classification_disagreements(&census)?.len());

    for (i, row) in realization_census(&census)?.iter().enumerate() {
        println!(
            "{:>2}: |R| = {}, {}",
            i + 1,
            row.realization.size(),
            row.identified.as_deref().unwrap_or("unidentified")
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
