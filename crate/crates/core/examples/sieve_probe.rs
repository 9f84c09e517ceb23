//! Splits r_3 on 3 (mod 24) into the m = 14 coset sum and a residual.
//!
//!     cargo run --release --example sieve_probe -- 10000

use polyternary::spinor_m14::sieve_identity_probe;

fn main() {
    let bound = std::env::args().nth(1).map(|a| a.parse().expect("integer")).unwrap_or(10_000);
    let rep = sieve_identity_probe(bound);
    println!("residual up to q^{bound}: {} nonzero terms", rep.residual_nonzero_terms);
    for (e, c) in rep.residual_sample.iter().take(6) {
        println!("  q^{e}: {c}");
    }
    for c in &rep.candidates {
        print!("{}: {}", c.form, if c.matches { "matches" } else { "differs" });
        if let Some(d) = &c.first_mismatch {
            print!(" (first at q^{}: {} vs {})", d.exponent, d.lhs, d.rhs);
        }
        println!();
    }
    println!("verdict: {:?}", rep.verdict);
}
