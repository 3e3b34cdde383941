use std::io::Write;

use clap::Parser;
use semibiproducts::cli::{run, Command};

fn main() {
    let cmd = Command::parse();
    let outcome = run(&cmd, &mut std::io::stdin().lock());
    std::io::stdout().write_all(outcome.stdout.as_bytes()).ok();
    std::io::stderr().write_all(outcome.stderr.as_bytes()).ok();
    std::process::exit(outcome.status);
}
