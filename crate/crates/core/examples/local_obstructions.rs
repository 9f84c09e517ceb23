//! Congruence images of P_m at the critical primes.
//!
//!     cargo run --release --example local_obstructions -- 8 12

use polyternary::local::{critical_primes, mod8_obstruction, precision, sum_residues, two_adic_surjective, LocalProfile};
use polyternary::PolygonalFamily;

fn main() {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse().expect("integer")).collect();
    let m = args.first().copied().unwrap_or(8);
    let f = PolygonalFamily::new(m).expect("m >= 3");
    println!("m = {m}, critical primes {:?}", critical_primes(f));
    for p in critical_primes(f) {
        println!("  p = {p}: precision p^{}", precision(f, p));
    }
    println!("mod 8 image of P_m: {:?}", sum_residues(f, 8).iter().collect::<Vec<_>>());
    if let Some(c) = mod8_obstruction(f) {
        println!("misses {c} (mod 8)");
    }
    if m % 4 != 0 {
        println!("p_m onto Z/2^12: {}", two_adic_surjective(f, 12).unwrap());
    }
    let profile = LocalProfile::new(f);
    let ns: Vec<u64> = args.get(1).map(|&n| vec![n]).unwrap_or_else(|| (0..40).collect());
    let bad: Vec<u64> = ns.iter().copied().filter(|&n| !profile.admits(n)).collect();
    println!("locally inadmissible among {:?}..: {bad:?}", &ns[..ns.len().min(3)]);
}
