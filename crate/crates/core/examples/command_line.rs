//! Driving the `sbp` command line in-process.

use std::error::Error;

use clap::Parser;
use semibiproducts::cli::{run, Command};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let fixtures = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");
    let invocations = [
        vec!["census".to_string(), "--format".into(), "table".into()],
        vec!["act-realize".into(), format!("{fixtures}/act_m_m_110.json")],
        vec!["sbp-verify".into(), format!("{fixtures}/sbp_diagonal_g.json")],
        vec!["act-enumerate".into(), "Z3".into(), "M".into(), "--format".into(), "table".into()],
    ];
    for args in invocations {
        let cmd = Command::try_parse_from(std::iter::once("sbp".to_string()).chain(args.iter().cloned()))?;
        let out = run(&cmd, &mut std::io::empty());
        println!("$ sbp {} (exit {})", args.join(" "), out.status);
        print!("{}{}", out.stdout, out.stderr);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
