//! Coset theta series and exact q-series arithmetic; dumps a CSV.
//!
//!     cargo run --example theta_series -- 26 2000 > theta.csv

use polyternary::qseries::{format_rational, QSeries};
use polyternary::{CosetZ3, PolygonalFamily};

fn main() {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse().expect("integer")).collect();
    let (m, bound) = match args[..] {
        [m, b] => (m, b),
        _ => (14, 600),
    };
    let f = PolygonalFamily::new(m).expect("m >= 3");
    let coset = CosetZ3::for_family(f);
    let theta = coset.theta_series(bound);
    eprintln!("coset {:?} mod {}", coset.residues(), coset.modulus());

    // coefficient at ell_n counts triples with P_m = n
    for n in 0..6 {
        let ell = f.ell(n);
        if ell <= bound {
            eprintln!("n = {n}: ell = {ell}, r = {}, P_m count = {}",
                format_rational(&theta.coefficient(ell).unwrap()), f.representation_count(n));
        }
    }

    let cube = QSeries::theta_cube(bound);
    let u = QSeries::unary_theta(1, 3, 12, bound).unwrap();
    eprintln!("r3 on 3 (mod 8) has {} terms; unary theta has {}",
        cube.sieve(8, 3).unwrap().support().count(), u.support().count());
    print!("{}", theta.to_csv().unwrap());
}
