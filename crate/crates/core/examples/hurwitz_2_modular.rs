//! The Hurwitz order with the form `trd(x conj(y))` is the D4 root lattice,
//! and `β = i - j` certifies it as 2-modular.

use amlat::exact::Rat;
use amlat::ideal::TwoSidedIdeal;
use amlat::ideal_lattice::{verify_arakelov_modular, IdealLattice};
use amlat::order::CatalogOrder;
use amlat::quaternion::QElem;

fn main() -> amlat::error::Result<()> {
    let hurwitz = CatalogOrder::Hurwitz;
    let order = hurwitz.order(&hurwitz.default_algebra())?;
    let lattice = IdealLattice::new(TwoSidedIdeal::unit(&order)?, Rat::from_integer(1.into()))?;

    println!("Gram matrix:\n{}", lattice.gram());
    println!("det = {}", lattice.discriminant()?);
    let (min, kissing) = lattice.minimum_and_kissing()?;
    println!("min = {min}, kissing = {kissing}");

    let beta = QElem::from_i64([0, 1, -1, 0]);
    let cert = verify_arakelov_modular(&lattice, &beta, 2)?;
    println!("dual basis:\n{}", lattice.dual()?.basis());
    println!("certificate valid: {}", cert.is_valid());
    Ok(())
}
