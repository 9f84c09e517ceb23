//! The four-coset genus for m = 14 and its spinor genus identities.
//!
//!     cargo run --release --example siegel_weil_m14

use polyternary::spinor_m14::{
    sturm_index, verify_siegel_weil, weight_three_halves_coefficient_count, GenusThetas, SIEGEL_WEIL_BOUND,
};
use polyternary::{GenusM14, SpinorGenus};

fn main() {
    for g in GenusM14.members() {
        println!("{:<4} {:?} mod 12  weight {}  spinor genus {:?}", g.name(), g.coset().residues(), g.weight(), g.spinor_genus());
    }
    println!("index of Gamma_1(576) = {}, coefficients needed = {}",
        sturm_index(576), weight_three_halves_coefficient_count(576));

    let t = GenusThetas::compute(200);
    for (label, s) in [
        ("gen ", t.genus_theta()),
        ("spn+", t.spinor_theta(SpinorGenus::Plus)),
        ("spn-", t.spinor_theta(SpinorGenus::Minus)),
    ] {
        let terms: Vec<String> = s.terms().take(5).map(|(e, c)| format!("{c} q^{e}")).collect();
        println!("{label} = {} + ...", terms.join(" + "));
    }

    let rep = verify_siegel_weil(SIEGEL_WEIL_BOUND);
    for c in &rep.identities {
        println!("{}: {} ({} mismatches)", c.identity, c.holds, c.discrepancy_count);
    }
    println!("{} coefficients checked, verified = {}", rep.coefficients_checked, rep.verified);
}
