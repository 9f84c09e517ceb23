//! Class numbers, Hurwitz class numbers and r_3 on 3 (mod 8).
//!
//!     cargo run --example class_numbers

use polyternary::class_numbers::{class_number, hurwitz, hurwitz_3ellsq, r3_via_class_number, reduced_forms};
use polyternary::qseries::{format_rational, QSeries};
use polyternary::Discriminant;

fn main() {
    for d in [-3i64, -4, -23, -47, -147] {
        let disc = Discriminant::new(d).unwrap();
        println!("h({d}) = {}  forms {:?}", class_number(disc), reduced_forms(disc));
    }
    for d in [3u64, 4, 75, 507] {
        println!("H({d}) = {}", format_rational(&hurwitz(d).unwrap()));
    }
    for ell in [5u64, 7, 13, 19] {
        println!("H(3*{ell}^2) = {} (closed form {})",
            format_rational(&hurwitz(3 * ell * ell).unwrap()),
            format_rational(&hurwitz_3ellsq(ell).unwrap()));
    }
    let cube = QSeries::theta_cube(200);
    for n in (3..200).step_by(40) {
        println!("r3({n}) = {} = 24 H({n}) = {}", cube.coefficient(n).unwrap(), r3_via_class_number(n).unwrap());
    }
}
