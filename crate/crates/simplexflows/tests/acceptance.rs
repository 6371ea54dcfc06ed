//! Runs every acceptance criterion at its stated tolerance and prints one
//! line per criterion.

use simplexflows::selfcheck::{run, CRITERIA};

fn main() {
    let seed = std::env::var("SIMPLEXFLOWS_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(1);
    let mut failed = 0;
    for &(id, ..) in CRITERIA.iter() {
        let c = run(id, seed).expect("known criterion");
        println!("{c}");
        failed += !c.passed as usize;
    }
    println!("acceptance: {} passed, {failed} failed", CRITERIA.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
