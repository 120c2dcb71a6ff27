//! Local Hilbert symbols of a few algebras, with the product formula.

use amlat::symbols::{hilbert_table, ramified_primes};

fn main() -> amlat::error::Result<()> {
    for (a, b) in [(-1, -1), (-1, -3), (-2, -5), (-3, -17), (7, 11)] {
        let table = hilbert_table(a, b)?;
        let product: i8 = table.iter().map(|(_, s)| s).product();
        let places: Vec<String> = table.iter().map(|(v, s)| format!("{v}:{s}")).collect();
        println!("({a},{b})  {}  product {product}", places.join(" "));
        println!("  ramified at finite primes {:?}", ramified_primes(a, b)?);
    }
    Ok(())
}
