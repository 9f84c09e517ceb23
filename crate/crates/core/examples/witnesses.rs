//! Verified unrepresented integers for m = 2 (mod 12).
//!
//!     cargo run --release --example witnesses -- 50 10

use polyternary::witnesses::{find_witnesses, DEFAULT_PRIME_CEILING};
use polyternary::WitnessSpec;

fn main() {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse().expect("integer")).collect();
    let ms: Vec<u64> = args.first().map(|&m| vec![m]).unwrap_or_else(|| vec![14, 26, 38, 50]);
    let count = args.get(1).copied().unwrap_or(5) as usize;
    for m in ms {
        let spec = WitnessSpec::new(m).expect("m = 2 (mod 12)");
        println!("m = {m}: r = {}, primes ell = {} (mod 12)", spec.r, spec.target_residue);
        for w in find_witnesses(m, count, DEFAULT_PRIME_CEILING).unwrap() {
            println!(
                "  ell = {:>4}  n = {:>6}  coset count {}  P_m count {}  ell^2 = 1 (mod 8r): {}",
                w.ell, w.n, w.coset_count, w.representation_count, w.ell_sq_is_one_mod_8r
            );
        }
    }
}
