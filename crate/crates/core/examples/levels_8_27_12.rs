//! Prime-power and composite levels: the lattice is a power of the prime
//! ideal, scaled by `α = ℓ1`.

use amlat::classify::plan;

fn main() -> amlat::error::Result<()> {
    for ell in [8u64, 27, 12, 30] {
        let p = plan(ell)?;
        let (lattice, cert) = p.realize()?;
        let (min, kissing) = lattice.minimum_and_kissing()?;
        println!("level {ell}");
        println!(
            "  ell1 = {}, ell2 = {}",
            p.factorization.ell1, p.factorization.ell2
        );
        println!(
            "  algebra ({},{}) ramified at {:?}",
            p.algebra.a(),
            p.algebra.b(),
            p.algebra.ramified_primes()
        );
        println!(
            "  alpha = {}, ideal exponents {:?}",
            p.alpha, p.ideal_exponents
        );
        println!("  beta = {}", p.beta);
        println!(
            "  det = {}, min = {min}, kissing = {kissing}",
            lattice.discriminant()?
        );
        println!("  certificate checks failing: {:?}", cert.checks.failures());
    }
    Ok(())
}
