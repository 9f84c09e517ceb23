//! Representation counts by brute force, for one family.
//!
//!     cargo run --example represent -- 14 18

use polyternary::PolygonalFamily;

fn main() {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse().expect("integer")).collect();
    let (m, n) = match args[..] {
        [m, n] => (m, n),
        _ => (14, 18),
    };
    let f = PolygonalFamily::new(m).expect("m >= 3");
    println!("p_{m}(x) for x = -3..=3: {:?}", (-3..=3).map(|x| f.value(x)).collect::<Vec<_>>());
    let count = f.representation_count(n);
    println!("P_{m}(x, y, z) = {n}: {count} ordered triples, ell_n = {}", f.ell(n));
    match f.classify_exception(n) {
        Ok(rec) => println!("exception; ell_n = 3r^2: {}", rec.square_class_3),
        Err(e) => println!("{e}"),
    }
}
