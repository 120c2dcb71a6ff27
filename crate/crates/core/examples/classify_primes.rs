//! Which construction each small prime level falls into, and the
//! resulting lattice invariants.

use amlat::classify::plan;

fn main() -> amlat::error::Result<()> {
    println!(
        "{:>4} {:>5} {:>10} {:>12} {:>6} {:>4} {:>7}",
        "ell", "case", "algebra", "order", "det", "min", "kissing"
    );
    for ell in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 73, 97] {
        let p = plan(ell)?;
        let (lattice, cert) = p.realize()?;
        assert!(cert.is_valid());
        let (min, kissing) = lattice.minimum_and_kissing()?;
        let alg = format!("({},{})", p.algebra.a(), p.algebra.b());
        println!(
            "{ell:>4} {:>5} {alg:>10} {:>12} {:>6} {min:>4} {kissing:>7}",
            p.case.to_string(),
            p.order_name,
            lattice.discriminant()?.to_string(),
        );
    }
    Ok(())
}
