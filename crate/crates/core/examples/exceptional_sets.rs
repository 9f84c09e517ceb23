//! Exceptional sets and their square-class classification.
//!
//!     cargo run --release --example exceptional_sets -- 14 100000

use polyternary::witnesses::survey;
use polyternary::PolygonalFamily;

fn main() {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse().expect("integer")).collect();
    let (m, bound) = match args[..] {
        [m, b] => (m, b),
        _ => (14, 100_000),
    };
    let rep = survey(PolygonalFamily::new(m).expect("m >= 3"), bound);
    println!("m = {m}: {} exceptions up to {bound}", rep.exceptions.len());
    println!("  of square class 3: {}", rep.square_class_3_count);
    match rep.largest_non_square_class {
        Some(t) => println!("  largest outside square class 3: {t}"),
        None => println!("  none outside square class 3"),
    }
    let head: Vec<u64> = rep.non_square_class().map(|e| e.n).take(20).collect();
    println!("  first others: {head:?}");

    for m in [5u64, 7, 8, 12] {
        let ex = PolygonalFamily::new(m).unwrap().exceptional_set(10_000);
        println!("m = {m}: {} exceptions up to 10^4, first {:?}", ex.len(), &ex[..ex.len().min(6)]);
    }
}
