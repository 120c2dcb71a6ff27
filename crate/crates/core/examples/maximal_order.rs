//! Grow the standard order `Z<i,j>` of an algebra into a maximal order and
//! look at its prime ideals.

use amlat::ideal::prime_ideal_above;
use amlat::order::Order;
use amlat::quaternion::QuaternionAlgebra;

fn main() -> amlat::error::Result<()> {
    let (a, b) = std::env::args()
        .nth(1)
        .and_then(|s| {
            let (a, b) = s.split_once(',')?;
            Some((a.parse().ok()?, b.parse().ok()?))
        })
        .unwrap_or((-3, -17));
    let alg = QuaternionAlgebra::new(a, b)?;
    let standard = Order::standard(&alg)?;
    println!(
        "Z<i,j> in ({a},{b}): discriminant {}",
        standard.reduced_discriminant()
    );

    let order = standard.maximalize()?;
    println!("maximal order basis:\n{}", order.lattice().basis());
    println!(
        "discriminant {} (ramified at {:?})",
        order.reduced_discriminant(),
        alg.ramified_primes()
    );

    for &p in alg.ramified_primes() {
        let prime = prime_ideal_above(&order, p)?;
        let square = prime.mul(&prime)?;
        println!(
            "P above {p}: nrd {}, P^2 has nrd {}",
            prime.nrd()?,
            square.nrd()?
        );
    }
    Ok(())
}
